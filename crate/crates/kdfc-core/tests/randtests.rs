use kdfc_core::randtests::{
    approximate_entropy, block_frequency, cusum, igamc, linear_complexity_test, longest_run, monobit, rank,
    run_battery, runs, serial, TestResult,
};
use kdfc_core::{BitVector, Error};
use sha2::{Digest, Sha256};

const PI100: &str = "1100100100001111110110101010001000100001011010001100001000110100110001001100011001100010100010111000";
const NIST128: &str = "11001100000101010110110001001100111000000000001001001101010100010001001111010110100000001101011111001100111001101101100010110010";

fn bits(s: &str) -> BitVector {
    BitVector::from_bits(s.bytes().map(|c| c == b'1'))
}

fn sha_bits(n: usize) -> BitVector {
    let mut v = Vec::with_capacity(n);
    let mut ctr = 0u64;
    while v.len() < n {
        for byte in Sha256::digest(ctr.to_le_bytes()) {
            v.extend((0..8).map(|i| (byte >> i) & 1 == 1));
        }
        ctr += 1;
    }
    v.truncate(n);
    BitVector::from_bits(v)
}

fn close(r: &TestResult, want: f64) {
    assert!((r.p_value - want).abs() < 1e-6, "{}: {} vs {}", r.name, r.p_value, want);
    assert_eq!(r.pass, r.p_value >= 0.01);
}

// Values from tools/randtests_oracle.py.
#[test]
fn pi_example() {
    let e = bits(PI100);
    close(&monobit(&e).unwrap(), 0.109598583399116);
    close(&block_frequency(&e, 10).unwrap(), 0.7064384496412808);
    close(&runs(&e).unwrap(), 0.5007979178870903);
    let [f, r] = cusum(&e).unwrap();
    close(&f, 0.21919399348562665);
    close(&r, 0.1148662153025217);
    let [s1, s2] = serial(&e, 2).unwrap();
    close(&s1, 0.25666077695355605);
    close(&s2, 0.689156516779355);
    let [s1, s2] = serial(&e, 3).unwrap();
    close(&s1, 0.3084410411840028);
    close(&s2, 0.3534546819587805);
    close(&approximate_entropy(&e, 2).unwrap(), 0.23530074585898328);
}

#[test]
fn longest_run_example() {
    close(&longest_run(&bits(NIST128)).unwrap(), 0.18059797678555792);
}

#[test]
fn hashed_stream() {
    let e = sha_bits(100_000);
    close(&monobit(&e).unwrap(), 0.09624078522056505);
    close(&block_frequency(&e, 128).unwrap(), 0.8848240955445864);
    close(&runs(&e).unwrap(), 0.5891785148084856);
    close(&longest_run(&e).unwrap(), 0.1178634843644326);
    close(&rank(&e).unwrap(), 0.20204930590824322);
    let [f, r] = cusum(&e).unwrap();
    close(&f, 0.17076296880889744);
    close(&r, 0.09479114390881099);
    let [s1, s2] = serial(&e, 2).unwrap();
    close(&s1, 0.21772989460093328);
    close(&s2, 0.5952367860357748);
    close(&approximate_entropy(&e, 2).unwrap(), 0.4581656325906779);
    close(&linear_complexity_test(&e, 500).unwrap(), 0.5437835650569016);
    let all = run_battery(&e).unwrap();
    assert_eq!(all.len(), 11);
    assert!(all.iter().all(|r| r.pass));
}

#[test]
fn degenerate_inputs() {
    let zeros = BitVector::zeros(100);
    let m = monobit(&zeros).unwrap();
    assert!(m.p_value < 1e-20 && !m.pass);
    let alt = BitVector::from_fn(100, |i| i % 2 == 1);
    assert_eq!(monobit(&alt).unwrap().p_value, 1.0);
    assert!(!runs(&alt).unwrap().pass);
    let z = BitVector::zeros(100_000);
    let failures = run_battery(&z).unwrap().iter().filter(|r| !r.pass).count();
    assert!(failures >= 5, "{failures}");
}

#[test]
fn short_input_rejected() {
    assert!(matches!(monobit(&BitVector::zeros(99)), Err(Error::InsufficientData { needed: 100, .. })));
    assert!(matches!(rank(&BitVector::zeros(1024)), Err(Error::InsufficientData { .. })));
    assert!(run_battery(&BitVector::zeros(1000)).is_err());
}

#[test]
fn incomplete_gamma_values() {
    // Q(1, x) = e^-x, Q(0.5, x) = erfc(sqrt x), Q(3, x) = e^-x (1 + x + x²/2)
    for &x in &[0.01f64, 0.5, 1.0, 2.5, 10.0, 40.0] {
        let q1 = (-x).exp();
        assert!((igamc(1.0, x) - q1).abs() <= 1e-12 * q1.max(1e-300));
        let qh = libm_erfc(f64::sqrt(x));
        assert!((igamc(0.5, x) - qh).abs() <= 1e-12 * qh);
        let q3 = q1 * (1.0 + x + x * x / 2.0);
        assert!((igamc(3.0, x) - q3).abs() <= 1e-12 * q3);
    }
}

fn libm_erfc(x: f64) -> f64 {
    kdfc_core::randtests::erfc(x)
}
