//! Prints, for each degree 2..=511, the first few irreducible trinomials and
//! pentanomials in the order `tools/gen_primitive_table.py` searches them.
//! The script then only has to certify primitivity.
//!
//!     cargo run --release -p kdfc-core --example table_candidates > candidates.txt
//!
//! An optional argument gives the first degree, for resuming a partial run.

use kdfc_core::poly::is_irreducible;
use kdfc_core::Gf2Poly;

const PER_DEGREE: usize = 40;

fn candidates(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..d {
        let e = vec![d, k, 0];
        if is_irreducible(&Gf2Poly::from_exponents(&e)) {
            out.push(e);
            if out.len() == PER_DEGREE {
                return out;
            }
        }
    }
    for a in 3..d {
        for b in 2..a {
            for c in 1..b {
                let e = vec![d, a, b, c, 0];
                if is_irreducible(&Gf2Poly::from_exponents(&e)) {
                    out.push(e);
                    if out.len() == PER_DEGREE {
                        return out;
                    }
                }
            }
        }
    }
    out
}

fn main() {
    let start: usize = std::env::args().nth(1).map_or(2, |a| a.parse().expect("degree"));
    for d in start..512 {
        let line: Vec<String> = candidates(d)
            .iter()
            .map(|e| e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        println!("{d}: {}", line.join(";"));
    }
}
