use kdfc_core::poly::{euler_phi_mersenne, is_irreducible, is_primitive, mersenne_factors, primitive_poly, PrimitiveTable};
use kdfc_core::snow2::snow2_char_poly;
use kdfc_core::{Error, Gf2Poly};
use proptest::prelude::*;

fn poly(exps: &[usize]) -> Gf2Poly {
    Gf2Poly::from_exponents(exps)
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, n);
        }
        a = mul_mod(a, a, n);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn from_mask(d: usize, low: u64) -> Gf2Poly {
    Gf2Poly::from_u64(low | 1 << d)
}

/// Irreducibility by trial division with every polynomial of degree 1..=d/2.
fn irreducible_by_division(p: &Gf2Poly) -> bool {
    let d = p.degree().unwrap();
    for e in 1..=d / 2 {
        for low in 0..(1u64 << e) {
            if p.rem(&from_mask(e, low)).unwrap().is_zero() {
                return false;
            }
        }
    }
    d >= 1
}

/// Multiplicative order of x modulo p by stepping.
fn order_of_x(p: &Gf2Poly) -> u64 {
    let x = Gf2Poly::x();
    let mut acc = x.rem(p).unwrap();
    let mut k = 1;
    while !acc.is_one() {
        acc = acc.mulmod(&x, p).unwrap();
        k += 1;
    }
    k
}

#[test]
fn irreducibility_examples() {
    assert!(is_irreducible(&poly(&[2, 1, 0])));
    assert!(!is_irreducible(&poly(&[2, 0])));
    assert!(is_irreducible(&poly(&[4, 1, 0])));
    assert!(!is_irreducible(&Gf2Poly::one()));
    assert!(!is_irreducible(&Gf2Poly::zero()));
}

#[test]
fn primitivity_examples() {
    assert!(is_primitive(&poly(&[4, 1, 0])).unwrap());
    assert_eq!(order_of_x(&poly(&[4, 1, 0])), 15);
    assert!(!is_primitive(&poly(&[4, 3, 2, 1, 0])).unwrap());
    assert_eq!(order_of_x(&poly(&[4, 3, 2, 1, 0])), 5);
    assert!(is_primitive(&poly(&[2, 1, 0])).unwrap());
    assert_eq!(is_primitive(&poly(&[100, 37, 0])), Err(Error::DegreeOutOfTable { degree: 100 }));
}

#[test]
fn irreducibility_matches_trial_division() {
    for d in 1..=10 {
        for low in 0..(1u64 << d) {
            let p = from_mask(d, low);
            assert_eq!(is_irreducible(&p), irreducible_by_division(&p), "{p}");
        }
    }
}

#[test]
fn primitivity_matches_order_of_x() {
    for d in 1..=10 {
        let full = (1u64 << d) - 1;
        for low in (1..(1u64 << d)).step_by(2) {
            let p = from_mask(d, low);
            let expected = irreducible_by_division(&p) && order_of_x(&p) == full;
            assert_eq!(is_primitive(&p).unwrap(), expected, "{p}");
        }
    }
}

#[test]
fn primitive_counts_follow_totient() {
    for d in 2..=12usize {
        let count = (0..(1u64 << d)).filter(|&low| is_primitive(&from_mask(d, low)).unwrap()).count();
        let expected = euler_phi_mersenne(d).unwrap() / d as u128;
        assert_eq!(count as u128, expected, "degree {d}");
    }
}

#[test]
fn mersenne_factor_table_is_prime_and_complete() {
    for d in 1..=64usize {
        let n: u128 = (1u128 << d) - 1;
        let mut rest = n;
        let fs = mersenne_factors(d).unwrap();
        assert!(fs.windows(2).all(|w| w[0] < w[1]));
        for &q in fs {
            assert!(is_prime_u64(q), "2^{d}-1: {q} is not prime");
            assert_eq!(rest % q as u128, 0);
            while rest % q as u128 == 0 {
                rest /= q as u128;
            }
        }
        assert_eq!(rest, 1, "2^{d}-1 not fully factored");
    }
    assert!(mersenne_factors(65).is_err());
    assert!(mersenne_factors(0).is_err());
}

#[test]
fn snow2_polynomial_shape() {
    let f = snow2_char_poly();
    assert_eq!(f.degree(), Some(512));
    assert_eq!(f.weight(), 251);
    assert_eq!(&f.exponents()[..4], [512, 510, 504, 502]);
    assert!(is_irreducible(&f));
}

#[test]
fn builtin_table_is_sound() {
    let t = PrimitiveTable::builtin();
    t.verify().unwrap();
    for d in 2..=512 {
        assert_eq!(t.get(d).unwrap().degree(), Some(d));
    }
    assert_eq!(t.get(2).unwrap(), &poly(&[2, 1, 0]));
    assert!(is_primitive(t.get(4).unwrap()).unwrap());
    assert_eq!(t.get(512).unwrap(), &snow2_char_poly());
    assert_eq!(primitive_poly(2).unwrap(), poly(&[2, 1, 0]));
    assert!(matches!(primitive_poly(513), Err(Error::DegreeOutOfRange { .. })));
    assert!(matches!(primitive_poly(1), Err(Error::DegreeOutOfRange { .. })));
}

#[test]
fn table_text_round_trip_and_tamper_detection() {
    let t = PrimitiveTable::builtin();
    let text = t.to_text();
    assert_eq!(PrimitiveTable::parse(&text).unwrap(), t);
    let tampered = text.replacen("2: 2,1,0", "2: 2,0", 1);
    assert!(matches!(PrimitiveTable::parse(&tampered), Err(Error::Checksum { .. })));
    assert!(matches!(PrimitiveTable::parse("3: 3,1,0\n"), Err(Error::Parse { line: 1, .. })));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_laws(a in any::<[u64; 3]>(), b in any::<[u64; 3]>(), c in any::<[u64; 2]>()) {
        let (a, b, c) = (Gf2Poly::from_words(a.to_vec()), Gf2Poly::from_words(b.to_vec()), Gf2Poly::from_words(c.to_vec()));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.square(), a.mul(&a));
    }

    #[test]
    fn division_identity(a in any::<[u64; 4]>(), d in any::<[u64; 2]>()) {
        let (a, d) = (Gf2Poly::from_words(a.to_vec()), Gf2Poly::from_words(d.to_vec()));
        prop_assume!(!d.is_zero());
        let (q, r) = a.div_rem(&d).unwrap();
        prop_assert_eq!(q.mul(&d).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn gcd_divides_both(a in any::<u64>(), b in any::<u64>(), g in 1u64..) {
        let g = Gf2Poly::from_u64(g);
        let (a, b) = (Gf2Poly::from_u64(a).mul(&g), Gf2Poly::from_u64(b).mul(&g));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let h = a.gcd(&b);
        prop_assert!(a.rem(&h).unwrap().is_zero());
        prop_assert!(b.rem(&h).unwrap().is_zero());
        prop_assert!(h.rem(&g).unwrap().is_zero());
    }

    #[test]
    fn powmod_matches_repeated_multiplication(base in any::<u64>(), e in 0u128..300, m in 2u64..) {
        let (base, m) = (Gf2Poly::from_u64(base), Gf2Poly::from_u64(m));
        prop_assume!(m.degree().unwrap_or(0) >= 1);
        let mut acc = Gf2Poly::one().rem(&m).unwrap();
        for _ in 0..e {
            acc = acc.mulmod(&base, &m).unwrap();
        }
        prop_assert_eq!(base.powmod(e, &m).unwrap(), acc);
    }

    #[test]
    fn parse_display_round_trip(w in any::<[u64; 2]>()) {
        let p = Gf2Poly::from_words(w.to_vec());
        prop_assert_eq!(p.to_string().parse::<Gf2Poly>().unwrap(), p.clone());
        let list: Vec<String> = p.exponents().iter().map(|e| e.to_string()).collect();
        if !p.is_zero() {
            prop_assert_eq!(list.join(",").parse::<Gf2Poly>().unwrap(), p);
        }
    }

    #[test]
    fn primitive_implies_irreducible(d in 2usize..=20, low in any::<u64>()) {
        let p = from_mask(d, low & ((1 << d) - 1));
        if is_primitive(&p).unwrap() {
            prop_assert!(is_irreducible(&p));
        }
    }
}
