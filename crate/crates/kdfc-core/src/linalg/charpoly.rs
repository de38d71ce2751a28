use alloc::vec::Vec;

use super::BitMatrix;
use crate::Gf2Poly;

/// Characteristic polynomial `det(xI + A)`.
///
/// The matrix is brought to upper Hessenberg form by similarity transforms,
/// then the determinant is expanded along the subdiagonal. O(n^3) bit
/// operations and deterministic.
pub fn char_poly(a: &BitMatrix) -> Gf2Poly {
    assert!(a.is_square(), "char_poly of a non-square matrix");
    let n = a.rows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let Some(p) = (k + 1..n).find(|&i| h.get(i, k)) else {
            continue;
        };
        if p != k + 1 {
            h.swap_rows(p, k + 1);
            swap_cols(&mut h, p, k + 1);
        }
        for i in k + 2..n {
            if h.get(i, k) {
                // E·H·E with E = I + e_i e_{k+1}^T, which is its own inverse.
                h.xor_row(i, k + 1);
                for r in 0..n {
                    if h.get(r, i) {
                        h.flip(r, k + 1);
                    }
                }
            }
        }
    }

    // p_k = (x + h[k-1][k-1]) p_{k-1} + sum_{i<k} h[i-1][k-1] prod_{j=i}^{k-1} h[j][j-1] p_{i-1}
    let mut ps: Vec<Gf2Poly> = Vec::with_capacity(n + 1);
    ps.push(Gf2Poly::one());
    for k in 1..=n {
        let mut lin = Gf2Poly::x();
        if h.get(k - 1, k - 1) {
            lin = lin.add(&Gf2Poly::one());
        }
        let mut pk = lin.mul(&ps[k - 1]);
        for i in (1..k).rev() {
            if !h.get(i, i - 1) {
                break;
            }
            if h.get(i - 1, k - 1) {
                pk = pk.add(&ps[i - 1]);
            }
        }
        ps.push(pk);
    }
    ps.pop().unwrap()
}

fn swap_cols(m: &mut BitMatrix, a: usize, b: usize) {
    for r in 0..m.rows() {
        let (x, y) = (m.get(r, a), m.get(r, b));
        if x != y {
            m.set(r, a, y);
            m.set(r, b, x);
        }
    }
}
