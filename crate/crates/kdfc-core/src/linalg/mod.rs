//! Linear algebra over GF(2) on bit-packed rows.
//!
//! Vectors are rows and maps act on the right: a state `v` advances to `v·M`.

mod bm;
mod charpoly;
mod matrix;
mod vector;

pub use bm::{berlekamp_massey, linear_complexity};
pub use charpoly::char_poly;
pub use matrix::BitMatrix;
pub use vector::BitVector;

use crate::{Error, Gf2Poly, Result};

/// The companion matrix of a monic `p` of degree `n`: ones on the subdiagonal and
/// the low coefficients of `p` in the last column, so that
/// `(x_0, ..., x_{n-1})·P = (x_1, ..., x_n)` for a sequence obeying `p`.
pub fn companion_matrix(p: &Gf2Poly) -> Result<BitMatrix> {
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::DegreeOutOfRange { degree: 0, min: 1, max: usize::MAX }),
    };
    let mut m = BitMatrix::zeros(n, n);
    for j in 0..n - 1 {
        m.set(j + 1, j, true);
    }
    for i in 0..n {
        if p.coeff(i) {
            m.set(i, n - 1, true);
        }
    }
    Ok(m)
}

/// `v·P` for the companion matrix `P` of `p`, without building `P`.
/// `low` holds the coefficients `c_0..c_{n-1}` of `p` as a vector of length `n`.
pub(crate) fn companion_step(v: &BitVector, low: &BitVector) -> BitVector {
    let n = v.len();
    let fb = v.dot(low);
    let mut out = BitVector::zeros(n);
    {
        let w = out.words_mut();
        let src = v.words();
        for k in 0..w.len() {
            let next = src.get(k + 1).copied().unwrap_or(0);
            w[k] = (src[k] >> 1) | (next << 63);
        }
    }
    out.clear_tail();
    out.set(n - 1, fb);
    out
}

pub(crate) fn low_coeffs(p: &Gf2Poly) -> BitVector {
    let n = p.degree().expect("nonzero polynomial");
    BitVector::from_fn(n, |i| p.coeff(i))
}

/// The `k x n` matrix with rows `c, c·A, ..., c·A^(k-1)`.
pub fn krylov_matrix(c: &BitVector, a: &BitMatrix, k: usize) -> Result<BitMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if c.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: c.len() });
    }
    let mut out = BitMatrix::zeros(k, c.len());
    let mut v = c.clone();
    for r in 0..k {
        out.set_row(r, &v);
        if r + 1 < k {
            v = a.vec_mul(&v)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_examples() {
        let p: Gf2Poly = "x^2 + x + 1".parse().unwrap();
        assert_eq!(companion_matrix(&p).unwrap(), BitMatrix::from_bits(&[&[0, 1], &[1, 1]]));
        let p: Gf2Poly = "x + 1".parse().unwrap();
        assert_eq!(companion_matrix(&p).unwrap(), BitMatrix::from_bits(&[&[1]]));
        let p: Gf2Poly = "x^4 + x + 1".parse().unwrap();
        let m = companion_matrix(&p).unwrap();
        let expect = BitMatrix::from_bits(&[&[0, 0, 0, 1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(m, expect);
        assert!(companion_matrix(&Gf2Poly::one()).is_err());
    }

    #[test]
    fn companion_step_matches_matrix() {
        let p = Gf2Poly::from_exponents(&[130, 77, 64, 3, 0]);
        let m = companion_matrix(&p).unwrap();
        let low = low_coeffs(&p);
        let mut v = BitVector::from_fn(130, |i| (i * 31 + 7) % 11 < 5);
        for _ in 0..200 {
            let a = m.vec_mul(&v).unwrap();
            let b = companion_step(&v, &low);
            assert_eq!(a, b);
            v = a;
        }
    }

    #[test]
    fn krylov_examples() {
        let p: Gf2Poly = "x^2 + x + 1".parse().unwrap();
        let a = companion_matrix(&p).unwrap();
        let c = BitVector::from_bits([true, false]);
        assert_eq!(krylov_matrix(&c, &a, 2).unwrap(), BitMatrix::identity(2));
        assert_eq!(krylov_matrix(&c, &a, 1).unwrap().rows(), 1);
        let e = BitVector::unit_last(3);
        let k = krylov_matrix(&e, &BitMatrix::identity(3), 4).unwrap();
        assert!(k.rows_iter().all(|r| r == e));
    }
}
