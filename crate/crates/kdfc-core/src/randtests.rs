//! A subset of the NIST SP 800-22 statistical tests.
//!
//! Parameters are the NIST defaults: block length 128 for block frequency,
//! 32×32 matrices for rank, pattern length 2 for serial and approximate
//! entropy, block length 500 for linear complexity.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{linear_complexity, BitVector};
use crate::{Error, Result};

/// Significance level: a test passes when `p >= ALPHA`.
pub const ALPHA: f64 = 0.01;

pub const BLOCK_FREQUENCY_M: usize = 128;
pub const SERIAL_M: usize = 2;
pub const APEN_M: usize = 2;
pub const LINEAR_COMPLEXITY_M: usize = 500;
pub const RANK_DIM: usize = 32;

#[derive(Clone, Debug, PartialEq)]
pub struct TestResult {
    pub name: &'static str,
    pub p_value: f64,
    pub pass: bool,
    /// The test statistic the p-value was computed from.
    pub statistic: f64,
}

impl TestResult {
    fn new(name: &'static str, p_value: f64, statistic: f64) -> Self {
        let p_value = p_value.clamp(0.0, 1.0);
        TestResult { name, p_value, pass: p_value >= ALPHA, statistic }
    }
}

const MACHEP: f64 = 1.110_223_024_625_156_5e-16;
const BIG: f64 = 4.503_599_627_370_496e15;
const BIG_INV: f64 = 2.220_446_049_250_313e-16;

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Regularized lower incomplete gamma `P(a, x)`.
pub fn igam(a: f64, x: f64) -> f64 {
    if x <= 0.0 || a <= 0.0 {
        return 0.0;
    }
    if x > 1.0 && x > a {
        return 1.0 - igamc(a, x);
    }
    let ax = a * libm::log(x) - x - libm::lgamma(a);
    if ax < -709.78 {
        return 0.0;
    }
    let ax = libm::exp(ax);
    let (mut r, mut c, mut ans) = (a, 1.0, 1.0);
    loop {
        r += 1.0;
        c *= x / r;
        ans += c;
        if c / ans <= MACHEP {
            break;
        }
    }
    ans * ax / a
}

/// Regularized upper incomplete gamma `Q(a, x) = 1 - P(a, x)`.
pub fn igamc(a: f64, x: f64) -> f64 {
    if x <= 0.0 || a <= 0.0 {
        return 1.0;
    }
    if x < 1.0 || x < a {
        return 1.0 - igam(a, x);
    }
    let ax = a * libm::log(x) - x - libm::lgamma(a);
    if ax < -709.78 {
        return 0.0;
    }
    let ax = libm::exp(ax);
    let mut y = 1.0 - a;
    let mut z = x + y + 1.0;
    let mut c = 0.0;
    let (mut pkm2, mut qkm2) = (1.0, x);
    let (mut pkm1, mut qkm1) = (x + 1.0, z * x);
    let mut ans = pkm1 / qkm1;
    loop {
        c += 1.0;
        y += 1.0;
        z += 2.0;
        let yc = y * c;
        let pk = pkm1 * z - pkm2 * yc;
        let qk = qkm1 * z - qkm2 * yc;
        let t = if qk != 0.0 {
            let r = pk / qk;
            let t = libm::fabs((ans - r) / r);
            ans = r;
            t
        } else {
            1.0
        };
        pkm2 = pkm1;
        pkm1 = pk;
        qkm2 = qkm1;
        qkm1 = qk;
        if libm::fabs(pk) > BIG {
            pkm2 *= BIG_INV;
            pkm1 *= BIG_INV;
            qkm2 *= BIG_INV;
            qkm1 *= BIG_INV;
        }
        if t <= MACHEP {
            break;
        }
    }
    ans * ax
}

/// Standard normal CDF.
fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / core::f64::consts::SQRT_2)
}

fn need(test: &'static str, needed: usize, got: usize) -> Result<()> {
    if got < needed {
        return Err(Error::InsufficientData { test, needed, got });
    }
    Ok(())
}

pub fn monobit(bits: &BitVector) -> Result<TestResult> {
    let n = bits.len();
    need("monobit", 100, n)?;
    let s = 2.0 * bits.count_ones() as f64 - n as f64;
    let s_obs = libm::fabs(s) / libm::sqrt(n as f64);
    Ok(TestResult::new("monobit", erfc(s_obs / core::f64::consts::SQRT_2), s_obs))
}

pub fn block_frequency(bits: &BitVector, m: usize) -> Result<TestResult> {
    need("block-frequency", 100, bits.len())?;
    let blocks = bits.len() / m;
    need("block-frequency", m, bits.len())?;
    let mut chi = 0.0;
    for i in 0..blocks {
        let ones = (0..m).filter(|&j| bits.get(i * m + j)).count();
        let pi = ones as f64 / m as f64 - 0.5;
        chi += pi * pi;
    }
    chi *= 4.0 * m as f64;
    Ok(TestResult::new("block-frequency", igamc(blocks as f64 / 2.0, chi / 2.0), chi))
}

pub fn runs(bits: &BitVector) -> Result<TestResult> {
    let n = bits.len();
    need("runs", 100, n)?;
    let nf = n as f64;
    let pi = bits.count_ones() as f64 / nf;
    if libm::fabs(pi - 0.5) >= 2.0 / libm::sqrt(nf) {
        return Ok(TestResult::new("runs", 0.0, pi));
    }
    let v = 1 + (1..n).filter(|&i| bits.get(i) != bits.get(i - 1)).count();
    let v = v as f64;
    let num = libm::fabs(v - 2.0 * nf * pi * (1.0 - pi));
    let den = 2.0 * libm::sqrt(2.0 * nf) * pi * (1.0 - pi);
    Ok(TestResult::new("runs", erfc(num / den), v))
}

pub fn longest_run(bits: &BitVector) -> Result<TestResult> {
    let n = bits.len();
    need("longest-run", 128, n)?;
    let (m, lo, probs): (usize, usize, &[f64]) = if n < 6272 {
        (8, 1, &[0.2148, 0.3672, 0.2305, 0.1875])
    } else if n < 750_000 {
        (128, 4, &[0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124])
    } else {
        (10_000, 10, &[0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727])
    };
    let k = probs.len() - 1;
    let blocks = n / m;
    let mut counts = vec![0usize; k + 1];
    for b in 0..blocks {
        let (mut run, mut best) = (0usize, 0usize);
        for j in 0..m {
            if bits.get(b * m + j) {
                run += 1;
                best = best.max(run);
            } else {
                run = 0;
            }
        }
        counts[best.clamp(lo, lo + k) - lo] += 1;
    }
    let nb = blocks as f64;
    let chi: f64 = counts
        .iter()
        .zip(probs)
        .map(|(&c, &p)| {
            let d = c as f64 - nb * p;
            d * d / (nb * p)
        })
        .sum();
    Ok(TestResult::new("longest-run", igamc(k as f64 / 2.0, chi / 2.0), chi))
}

fn rank_u32(rows: &mut [u32]) -> usize {
    let mut rank = 0;
    for col in 0..32 {
        let bit = 1u32 << col;
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) {
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & bit != 0 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Probability that a random `m×q` GF(2) matrix has rank `r`.
fn rank_probability(r: i32, m: i32, q: i32) -> f64 {
    let mut prod = 1.0;
    for i in 0..r {
        let num = (1.0 - libm::pow(2.0, (i - q) as f64)) * (1.0 - libm::pow(2.0, (i - m) as f64));
        prod *= num / (1.0 - libm::pow(2.0, (i - r) as f64));
    }
    libm::pow(2.0, (r * (q + m - r) - m * q) as f64) * prod
}

pub fn rank(bits: &BitVector) -> Result<TestResult> {
    let per = RANK_DIM * RANK_DIM;
    need("rank", 38 * per, bits.len())?;
    let count = bits.len() / per;
    let (mut full, mut minus1) = (0usize, 0usize);
    for i in 0..count {
        let mut rows: Vec<u32> = (0..RANK_DIM)
            .map(|r| bits.bits_at(i * per + r * RANK_DIM) as u32)
            .collect();
        match rank_u32(&mut rows) {
            32 => full += 1,
            31 => minus1 += 1,
            _ => {}
        }
    }
    let d = RANK_DIM as i32;
    let p32 = rank_probability(d, d, d);
    let p31 = rank_probability(d - 1, d, d);
    let p30 = 1.0 - p32 - p31;
    let nf = count as f64;
    let rest = (count - full - minus1) as f64;
    let sq = |obs: f64, p: f64| (obs - nf * p) * (obs - nf * p) / (nf * p);
    let chi = sq(full as f64, p32) + sq(minus1 as f64, p31) + sq(rest, p30);
    Ok(TestResult::new("rank", libm::exp(-chi / 2.0), chi))
}

fn cusum_p(n: i64, z: i64) -> f64 {
    let nf = n as f64;
    let sq = libm::sqrt(nf);
    let zf = z as f64;
    let mut s1 = 0.0;
    let mut k = (-n / z + 1) / 4;
    while k <= (n / z - 1) / 4 {
        let kf = k as f64;
        s1 += normal_cdf((4.0 * kf + 1.0) * zf / sq) - normal_cdf((4.0 * kf - 1.0) * zf / sq);
        k += 1;
    }
    let mut s2 = 0.0;
    let mut k = (-n / z - 3) / 4;
    while k <= (n / z - 1) / 4 {
        let kf = k as f64;
        s2 += normal_cdf((4.0 * kf + 3.0) * zf / sq) - normal_cdf((4.0 * kf + 1.0) * zf / sq);
        k += 1;
    }
    1.0 - s1 + s2
}

/// Forward and reverse cumulative sums.
pub fn cusum(bits: &BitVector) -> Result<[TestResult; 2]> {
    let n = bits.len();
    need("cusum", 100, n)?;
    let walk = |idx: &mut dyn Iterator<Item = usize>| {
        let (mut s, mut z) = (0i64, 0i64);
        for i in idx {
            s += if bits.get(i) { 1 } else { -1 };
            z = z.max(s.abs());
        }
        z
    };
    let zf = walk(&mut (0..n));
    let zr = walk(&mut (0..n).rev());
    let p = |z: i64| if z == 0 { 1.0 } else { cusum_p(n as i64, z) };
    Ok([
        TestResult::new("cusum-forward", p(zf), zf as f64),
        TestResult::new("cusum-reverse", p(zr), zr as f64),
    ])
}

/// Counts of every overlapping `m`-bit pattern, wrapping around the end.
fn pattern_counts(bits: &BitVector, m: usize) -> Vec<u64> {
    let n = bits.len();
    let mut counts = vec![0u64; 1 << m];
    if m == 0 {
        counts[0] = n as u64;
        return counts;
    }
    let mut w = 0usize;
    for j in 0..m - 1 {
        w = (w << 1) | bits.get(j) as usize;
    }
    let mask = (1usize << m) - 1;
    for i in 0..n {
        w = ((w << 1) | bits.get((i + m - 1) % n) as usize) & mask;
        counts[w] += 1;
    }
    counts
}

fn psi_sq(bits: &BitVector, m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let n = bits.len() as f64;
    let s: f64 = pattern_counts(bits, m).iter().map(|&c| (c as f64) * (c as f64)).sum();
    s * libm::pow(2.0, m as f64) / n - n
}

/// Serial test; returns both p-values.
pub fn serial(bits: &BitVector, m: usize) -> Result<[TestResult; 2]> {
    need("serial", 100, bits.len())?;
    if m < 2 {
        return Err(Error::InsufficientData { test: "serial", needed: 2, got: m });
    }
    let p0 = psi_sq(bits, m);
    let p1 = psi_sq(bits, m - 1);
    let p2 = psi_sq(bits, m - 2);
    let d1 = p0 - p1;
    let d2 = p0 - 2.0 * p1 + p2;
    Ok([
        TestResult::new("serial-1", igamc(libm::pow(2.0, m as f64 - 2.0), d1 / 2.0), d1),
        TestResult::new("serial-2", igamc(libm::pow(2.0, m as f64 - 3.0), d2 / 2.0), d2),
    ])
}

fn phi(bits: &BitVector, m: usize) -> f64 {
    let n = bits.len() as f64;
    pattern_counts(bits, m)
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            p * libm::log(p)
        })
        .sum()
}

pub fn approximate_entropy(bits: &BitVector, m: usize) -> Result<TestResult> {
    need("approximate-entropy", 100, bits.len())?;
    let n = bits.len() as f64;
    let apen = phi(bits, m) - phi(bits, m + 1);
    let chi = 2.0 * n * (core::f64::consts::LN_2 - apen);
    let p = igamc(libm::pow(2.0, m as f64 - 1.0), chi / 2.0);
    Ok(TestResult::new("approximate-entropy", p, chi))
}

/// Minimum number of blocks for the linear complexity test.
pub const LINEAR_COMPLEXITY_MIN_BLOCKS: usize = 100;

pub fn linear_complexity_test(bits: &BitVector, m: usize) -> Result<TestResult> {
    need("linear-complexity", m * LINEAR_COMPLEXITY_MIN_BLOCKS, bits.len())?;
    let blocks = bits.len() / m;
    let mf = m as f64;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let mu = mf / 2.0 + (9.0 - sign) / 36.0 - (mf / 3.0 + 2.0 / 9.0) / libm::pow(2.0, mf);
    const PI: [f64; 7] = [0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833];
    let mut v = [0usize; 7];
    for b in 0..blocks {
        let l = linear_complexity(&bits.slice(b * m, m)) as f64;
        let t = sign * (l - mu) + 2.0 / 9.0;
        let class = if t <= -2.5 {
            0
        } else if t <= -1.5 {
            1
        } else if t <= -0.5 {
            2
        } else if t <= 0.5 {
            3
        } else if t <= 1.5 {
            4
        } else if t <= 2.5 {
            5
        } else {
            6
        };
        v[class] += 1;
    }
    let nb = blocks as f64;
    let chi: f64 = v
        .iter()
        .zip(PI)
        .map(|(&c, p)| (c as f64 - nb * p) * (c as f64 - nb * p) / (nb * p))
        .sum();
    Ok(TestResult::new("linear-complexity", igamc(3.0, chi / 2.0), chi))
}

/// Runs every implemented test in a fixed order.
pub fn run_battery(bits: &BitVector) -> Result<Vec<TestResult>> {
    let mut out = Vec::with_capacity(11);
    out.push(monobit(bits)?);
    out.push(block_frequency(bits, BLOCK_FREQUENCY_M)?);
    out.push(runs(bits)?);
    out.push(longest_run(bits)?);
    out.push(rank(bits)?);
    out.extend(cusum(bits)?);
    out.extend(serial(bits, SERIAL_M)?);
    out.push(approximate_entropy(bits, APEN_M)?);
    out.push(linear_complexity_test(bits, LINEAR_COMPLEXITY_M)?);
    Ok(out)
}

/// Smallest input accepted by [`run_battery`].
pub fn battery_minimum() -> usize {
    (38 * RANK_DIM * RANK_DIM).max(LINEAR_COMPLEXITY_M * LINEAR_COMPLEXITY_MIN_BLOCKS)
}
