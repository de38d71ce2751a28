use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Product of distinct variables; bit `i` set means variable `i` occurs.
/// The empty product is the constant 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(i: usize) -> Monomial {
        assert!(i < 128, "at most 128 variables");
        Monomial(1 << i)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn vars(self) -> impl Iterator<Item = usize> {
        let mut w = self.0;
        core::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(b)
        })
    }
}

/// Lexicographic order with variable 0 most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let d = diff.trailing_zeros();
        if (self.0 >> d) & 1 == 1 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A Boolean function in algebraic normal form: a sum of monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AnfPoly {
    terms: BTreeSet<Monomial>,
}

impl AnfPoly {
    pub fn zero() -> Self {
        AnfPoly::default()
    }

    pub fn one() -> Self {
        Self::from_monomials([Monomial::ONE])
    }

    pub fn constant(bit: bool) -> Self {
        if bit {
            Self::one()
        } else {
            Self::zero()
        }
    }

    pub fn var(i: usize) -> Self {
        Self::from_monomials([Monomial::var(i)])
    }

    /// Sum of the given monomials; repeated ones cancel.
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(ms: I) -> Self {
        let mut p = AnfPoly::zero();
        for m in ms {
            p.toggle(m);
        }
        p
    }

    /// Builds a polynomial from variable-index lists, e.g. `&[&[0, 2], &[1]]`.
    pub fn from_var_lists(lists: &[&[usize]]) -> Self {
        Self::from_monomials(lists.iter().map(|l| Monomial(l.iter().fold(0u128, |acc, &v| acc | (1 << v)))))
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains(&Monomial::ONE)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Monomials in descending lexicographic order.
    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().rev().copied()
    }

    /// Largest monomial size; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.iter().map(|m| m.degree()).max()
    }

    pub fn add(&self, other: &AnfPoly) -> AnfPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &AnfPoly) {
        for &m in &other.terms {
            self.toggle(m);
        }
    }

    pub fn mul(&self, other: &AnfPoly) -> AnfPoly {
        let mut out = AnfPoly::zero();
        for &a in &self.terms {
            for &b in &other.terms {
                out.toggle(Monomial(a.0 | b.0));
            }
        }
        out
    }

    /// Value under an assignment; bit `i` of `x` is variable `i`.
    pub fn eval(&self, x: u128) -> bool {
        self.terms.iter().filter(|m| m.0 & x == m.0).count() % 2 == 1
    }

    /// Renders with variable `i` shown as `x{i+1}`, e.g. `x1 x3 + x2 + 1`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, m) in self.monomials().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            if m == Monomial::ONE {
                s.push('1');
                continue;
            }
            let names: Vec<String> = m.vars().map(|v| alloc::format!("x{}", v + 1)).collect();
            s.push_str(&names.join(" "));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl fmt::Display for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AnfPoly({self})")
    }
}

impl core::str::FromStr for AnfPoly {
    type Err = crate::Error;

    /// Parses the `x1 x3 + x2 + 1` notation (1-based variable names).
    fn from_str(s: &str) -> crate::Result<Self> {
        let bad = |msg: String| crate::Error::Parse { line: 1, msg };
        let s = s.trim();
        if s == "0" {
            return Ok(AnfPoly::zero());
        }
        let mut p = AnfPoly::zero();
        for term in s.split('+') {
            let t = term.trim();
            if t == "1" {
                p.toggle(Monomial::ONE);
                continue;
            }
            let mut m = 0u128;
            for v in t.split_whitespace() {
                let idx: usize = v
                    .strip_prefix('x')
                    .and_then(|n| n.parse().ok())
                    .filter(|&n: &usize| (1..=128).contains(&n))
                    .ok_or_else(|| bad(alloc::format!("bad variable {v:?}")))?;
                m |= 1 << (idx - 1);
            }
            if m == 0 {
                return Err(bad(alloc::format!("empty term in {s:?}")));
            }
            p.toggle(Monomial(m));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn ring_rules() {
        let x1 = AnfPoly::var(0);
        let x2 = AnfPoly::var(1);
        assert!(x1.add(&x1).is_zero());
        assert_eq!(x1.mul(&x1), x1);
        let s = x1.add(&x2);
        assert_eq!(s.mul(&s), s);
    }

    #[test]
    fn degrees() {
        assert_eq!(AnfPoly::zero().degree(), None);
        assert_eq!(AnfPoly::one().degree(), Some(0));
        let p: AnfPoly = "x1 x2 + x3".parse().unwrap();
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn print_order() {
        let p: AnfPoly = "x2 x5 + x1 x4 x6 + x2 x5 x8 + 1 + x1 x3 x5 x8".parse().unwrap();
        assert_eq!(p.to_string(), "x1 x3 x5 x8 + x1 x4 x6 + x2 x5 x8 + x2 x5 + 1");
    }
}
