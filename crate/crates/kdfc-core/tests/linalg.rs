use kdfc_core::linalg::{berlekamp_massey, char_poly, companion_matrix, krylov_matrix, linear_complexity};
use kdfc_core::{BitMatrix, BitVector, Error, Gf2Poly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn m(rows: &[&[u8]]) -> BitMatrix {
    BitMatrix::from_bits(rows)
}

fn poly(exps: &[usize]) -> Gf2Poly {
    Gf2Poly::from_exponents(exps)
}

fn random_matrix(rng: &mut impl Rng, r: usize, c: usize) -> BitMatrix {
    BitMatrix::from_fn(r, c, |_, _| rng.gen())
}

fn random_invertible(rng: &mut impl Rng, n: usize) -> BitMatrix {
    loop {
        let a = random_matrix(rng, n, n);
        if a.rank() == n {
            return a;
        }
    }
}

/// det(xI + A) by cofactor expansion along the first row, entries as polynomials.
fn char_poly_cofactor(a: &BitMatrix) -> Gf2Poly {
    fn det(entries: &[Vec<Gf2Poly>]) -> Gf2Poly {
        let n = entries.len();
        if n == 1 {
            return entries[0][0].clone();
        }
        let mut acc = Gf2Poly::zero();
        for j in 0..n {
            if entries[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Gf2Poly>> = entries[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect())
                .collect();
            acc = acc.add(&entries[0][j].mul(&det(&minor)));
        }
        acc
    }
    let n = a.rows();
    let entries: Vec<Vec<Gf2Poly>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut p = if a.get(r, c) { Gf2Poly::one() } else { Gf2Poly::zero() };
                    if r == c {
                        p = p.add(&Gf2Poly::x());
                    }
                    p
                })
                .collect()
        })
        .collect();
    det(&entries)
}

/// Shortest recurrence by trying every connection polynomial of each length.
fn linear_complexity_brute(s: &[bool]) -> usize {
    let n = s.len();
    if s.iter().all(|&b| !b) {
        return 0;
    }
    for l in 1..=n {
        if l >= n {
            return l;
        }
        for taps in 0u32..(1 << l) {
            let ok = (l..n).all(|t| {
                let mut acc = false;
                for i in 0..l {
                    if taps >> i & 1 == 1 {
                        acc ^= s[t - l + i];
                    }
                }
                acc == s[t]
            });
            if ok {
                return l;
            }
        }
    }
    n
}

#[test]
fn product_examples() {
    assert_eq!(m(&[&[1, 1], &[0, 1]]).mul(&m(&[&[1, 0], &[1, 1]])).unwrap(), m(&[&[0, 1], &[1, 1]]));
    let x = m(&[&[1, 0, 1, 1], &[0, 1, 1, 0], &[1, 1, 1, 1], &[0, 0, 0, 1]]);
    assert_eq!(BitMatrix::identity(4).mul(&x).unwrap(), x);
    assert!(matches!(
        BitMatrix::zeros(2, 3).mul(&BitMatrix::zeros(2, 3)),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn inverse_examples() {
    assert_eq!(BitMatrix::identity(5).inverse().unwrap(), BitMatrix::identity(5));
    assert_eq!(m(&[&[0, 1], &[1, 1]]).inverse().unwrap(), m(&[&[1, 1], &[1, 0]]));
    assert_eq!(BitMatrix::zeros(2, 2).inverse(), Err(Error::Singular));
    assert!(matches!(BitMatrix::zeros(2, 3).inverse(), Err(Error::NotSquare { .. })));
}

#[test]
fn solve_examples() {
    let v = BitVector::from_bits([true, false, true, true]);
    assert_eq!(BitMatrix::identity(4).solve_row(&v).unwrap(), v);
    let e = BitVector::from_bits([false, true]);
    assert_eq!(m(&[&[1, 0], &[0, 1]]).solve_row(&e).unwrap(), e);
    assert_eq!(BitMatrix::zeros(2, 2).solve_row(&BitVector::from_bits([true, false])), Err(Error::NoSolution));
    // underdetermined: the free variable is fixed to 0
    let y = m(&[&[1, 1], &[1, 1]]).solve_row(&BitVector::from_bits([true, true])).unwrap();
    assert_eq!(y, BitVector::from_bits([true, false]));
}

#[test]
fn determinant_and_rank_examples() {
    assert!(BitMatrix::identity(7).determinant().unwrap());
    assert!(!m(&[&[1, 1], &[1, 1]]).determinant().unwrap());
    assert!(companion_matrix(&poly(&[2, 1, 0])).unwrap().determinant().unwrap());
    assert_eq!(BitMatrix::identity(9).rank(), 9);
    assert_eq!(BitMatrix::zeros(3, 5).rank(), 0);
    assert_eq!(m(&[&[1, 1], &[1, 1]]).rank(), 1);
    assert!(BitMatrix::zeros(2, 3).determinant().is_err());
}

#[test]
fn companion_examples() {
    assert_eq!(companion_matrix(&poly(&[2, 1, 0])).unwrap(), m(&[&[0, 1], &[1, 1]]));
    assert_eq!(companion_matrix(&poly(&[1, 0])).unwrap(), m(&[&[1]]));
    let c = companion_matrix(&poly(&[4, 1, 0])).unwrap();
    let expected = m(&[&[0, 0, 0, 1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
    assert_eq!(c, expected);
    assert!(companion_matrix(&Gf2Poly::one()).is_err());
}

#[test]
fn companion_advances_the_sequence() {
    let p = poly(&[5, 2, 0]);
    let mut s = vec![true, false, false, true, true];
    for t in 0..40 {
        let next = s[t] ^ s[t + 2];
        s.push(next);
    }
    let c = companion_matrix(&p).unwrap();
    for t in 0..30 {
        let v = BitVector::from_bits(s[t..t + 5].iter().copied());
        let w = BitVector::from_bits(s[t + 1..t + 6].iter().copied());
        assert_eq!(c.vec_mul(&v).unwrap(), w);
    }
}

#[test]
fn char_poly_examples() {
    assert_eq!(char_poly(&BitMatrix::identity(2)), poly(&[2, 0]));
    assert_eq!(char_poly(&BitMatrix::zeros(3, 3)), poly(&[3]));
    assert_eq!(char_poly(&companion_matrix(&poly(&[8, 4, 3, 2, 0])).unwrap()), poly(&[8, 4, 3, 2, 0]));
}

#[test]
fn char_poly_of_every_small_companion() {
    for d in 1..=16usize {
        let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
        for _ in 0..20 {
            let mut p = Gf2Poly::monomial(d);
            for i in 0..d {
                if rng.gen() {
                    p.flip_coeff(i);
                }
            }
            assert_eq!(char_poly(&companion_matrix(&p).unwrap()), p);
        }
    }
}

#[test]
fn krylov_examples() {
    let e = BitVector::unit_last(3);
    let k = krylov_matrix(&e, &BitMatrix::identity(3), 4).unwrap();
    assert_eq!(k.rows(), 4);
    assert!(k.rows_iter().all(|r| r == e));
    let c = BitVector::from_bits([true, false]);
    let a = companion_matrix(&poly(&[2, 1, 0])).unwrap();
    assert_eq!(krylov_matrix(&c, &a, 2).unwrap(), BitMatrix::identity(2));
    assert_eq!(krylov_matrix(&c, &a, 1).unwrap(), m(&[&[1, 0]]));
    assert!(krylov_matrix(&BitVector::zeros(3), &a, 2).is_err());
}

#[test]
fn berlekamp_massey_examples() {
    assert_eq!(berlekamp_massey(&BitVector::zeros(50)), Gf2Poly::one());
    let p = poly(&[4, 1, 0]);
    let mut s = vec![false, false, false, true];
    while s.len() < 15 {
        let t = s.len() - 4;
        s.push(s[t] ^ s[t + 1]);
    }
    assert_eq!(berlekamp_massey(&BitVector::from_bits(s.iter().copied())), p);
    for n in 1..70 {
        let impulse = BitVector::from_fn(n, |i| i == 0);
        assert_eq!(linear_complexity(&impulse), 1);
        let late = BitVector::from_fn(n, |i| i == n - 1);
        assert_eq!(linear_complexity(&late), n);
    }
}

#[test]
fn hex_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = random_matrix(&mut rng, 5, 37);
    let hex = a.to_hex_rows();
    assert_eq!(hex[0].len(), 10);
    assert_eq!(BitMatrix::from_hex_rows(5, 37, &hex).unwrap(), a);
    let v = BitVector::from_bits([true, true, false, false, true]);
    assert_eq!(v.to_hex(), "31");
    assert!(BitMatrix::from_hex_rows(1, 4, &["g"]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn inverse_is_two_sided(n in 1usize..=64, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_invertible(&mut rng, n);
        let inv = a.inverse().unwrap();
        prop_assert!(a.mul(&inv).unwrap().is_identity());
        prop_assert!(inv.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn det_rank_inverse_agree(n in 1usize..=24, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // low-rank products make singular cases common
        let k = rng.gen_range(1..=n);
        let a = random_matrix(&mut rng, n, k).mul(&random_matrix(&mut rng, k, n)).unwrap();
        let full = a.rank() == n;
        prop_assert_eq!(a.determinant().unwrap(), full);
        prop_assert_eq!(a.inverse().is_ok(), full);
    }

    #[test]
    fn solve_row_solution_is_valid(r in 1usize..=30, c in 1usize..=30, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, r, c);
        let in_span = rng.gen::<bool>();
        let v = if in_span {
            let y = BitVector::from_fn(r, |_| rng.gen());
            a.vec_mul(&y).unwrap()
        } else {
            BitVector::from_fn(c, |_| rng.gen())
        };
        match a.solve_row(&v) {
            Ok(y) => prop_assert_eq!(a.vec_mul(&y).unwrap(), v),
            Err(e) => {
                prop_assert!(!in_span);
                prop_assert_eq!(e, Error::NoSolution);
            }
        }
    }

    #[test]
    fn char_poly_matches_cofactor_expansion(n in 1usize..=7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, n, n);
        prop_assert_eq!(char_poly(&a), char_poly_cofactor(&a));
    }

    #[test]
    fn char_poly_is_similarity_invariant(n in 1usize..=40, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, n, n);
        let s = random_invertible(&mut rng, n);
        let b = s.mul(&a).unwrap().mul(&s.inverse().unwrap()).unwrap();
        prop_assert_eq!(char_poly(&a), char_poly(&b));
    }

    #[test]
    fn berlekamp_massey_matches_brute_force(bits in proptest::collection::vec(any::<bool>(), 1..=14)) {
        let v = BitVector::from_bits(bits.iter().copied());
        prop_assert_eq!(linear_complexity(&v), linear_complexity_brute(&bits));
        let p = berlekamp_massey(&v);
        prop_assert_eq!(p.degree(), Some(linear_complexity(&v)));
    }

    #[test]
    fn berlekamp_massey_recurrence_generates_input(bits in proptest::collection::vec(any::<bool>(), 1..=200)) {
        let v = BitVector::from_bits(bits.iter().copied());
        let p = berlekamp_massey(&v);
        let l = p.degree().unwrap();
        for t in l..bits.len() {
            let mut acc = false;
            for i in 0..l {
                if p.coeff(i) {
                    acc ^= bits[t - l + i];
                }
            }
            prop_assert_eq!(acc, bits[t]);
        }
    }
}
