use alloc::vec;
use alloc::vec::Vec;

use super::BitVector;
use crate::poly::xor_shifted;
use crate::Gf2Poly;

/// Returns `(L, C)` where `C` is the connection polynomial `1 + c_1 D + ... `
/// of the shortest LFSR producing `s`.
fn bm_core(s: &BitVector) -> (usize, Vec<u64>) {
    let n = s.len();
    let rev = BitVector::from_fn(n, |k| s.get(n - 1 - k));
    let cap = n / 64 + 2;
    let mut c = vec![0u64; cap];
    let mut b = vec![0u64; cap];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut m = 1usize;
    for i in 0..n {
        // d = sum_{j <= L} c_j s_{i-j}, and s_{i-j} = rev[n-1-i+j]
        let off = n - 1 - i;
        let mut acc = 0u64;
        for q in 0..=l / 64 {
            acc ^= c[q] & rev.bits_at(off + 64 * q);
        }
        if acc.count_ones() & 1 == 0 {
            m += 1;
        } else if 2 * l <= i {
            let t = c.clone();
            xor_shifted(&mut c, &b, m);
            l = i + 1 - l;
            b = t;
            m = 1;
        } else {
            xor_shifted(&mut c, &b, m);
            m += 1;
        }
    }
    (l, c)
}

/// Length of the shortest LFSR that generates `s`.
pub fn linear_complexity(s: &BitVector) -> usize {
    bm_core(s).0
}

/// The characteristic polynomial (degree = linear complexity) of the shortest
/// LFSR generating `s`; the all-zero sequence gives the constant 1.
pub fn berlekamp_massey(s: &BitVector) -> Gf2Poly {
    let (l, c) = bm_core(s);
    Gf2Poly::from_words(c).reverse(l)
}
