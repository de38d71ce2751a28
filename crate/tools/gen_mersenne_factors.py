"""Emit the distinct prime factors of 2^d - 1 for d in 1..=64 as a Rust table."""
import sympy

lines = ["// Generated by tools/gen_mersenne_factors.py; do not edit.", "",
         "/// Distinct prime factors of 2^d - 1, indexed by d (index 0 unused).",
         "pub(crate) static MERSENNE_FACTORS: [&[u64]; 65] = ["]
lines.append("    &[],")
for d in range(1, 65):
    n = (1 << d) - 1
    fs = sorted(sympy.factorint(n)) if n > 1 else []
    lines.append("    &[" + ", ".join(str(f) for f in fs) + "],")
lines.append("];")
print("\n".join(lines))
