use super::*;
use crate::precision::PrecisionContext;
use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(40).unwrap()
}

// Frozen from the bracketed-bisection refinement, cross-checked by the
// |zeta(1/2 + i gamma)| certificates below.
const GAMMA1: &str = "14.1347251417346937904572519835624702707842571";
const GAMMA2: &str = "21.0220396387715549926284795938969027773343405";
const GAMMA3: &str = "25.0108575801456887632137909925628218186595497";

static TABLE60: Lazy<ZeroTable> = Lazy::new(|| {
    let c = ctx();
    find_zeros(&c.float(60), &c).unwrap()
});

#[test]
fn find_zeros_20_has_one_ordinate() {
    let c = ctx();
    let t = find_zeros(&c.float(20), &c).unwrap();
    assert_eq!(t.len(), 1);
    let g1 = c.parse_float(GAMMA1).unwrap();
    let d = Float::with_val(c.bits(), &t.ordinates()[0] - &g1).abs();
    assert!(d < c.pow10(-35), "gamma_1 off by {d}");
}

#[test]
fn find_zeros_30_matches_frozen_ordinates() {
    let c = ctx();
    let t = find_zeros(&c.float(30), &c).unwrap();
    assert_eq!(t.len(), 3);
    for (g, frozen) in t.ordinates().iter().zip([GAMMA1, GAMMA2, GAMMA3]) {
        let expect = c.parse_float(frozen).unwrap();
        let d = Float::with_val(c.bits(), g - &expect).abs();
        assert!(d < c.pow10(-35), "ordinate off by {d}");
    }
}

#[test]
fn find_zeros_below_first_ordinate_is_empty() {
    let c = ctx();
    let t = find_zeros(&c.float(14.0), &c).unwrap();
    assert!(t.is_empty());
    assert_eq!(t.source(), ZeroSource::Computed);
}

#[test]
fn rvm_counts() {
    let c = ctx();
    assert_eq!(count_zeros_rvm(&c.float(14.0), &c).unwrap(), 0);
    assert_eq!(count_zeros_rvm(&c.float(20), &c).unwrap(), 1);
    assert_eq!(count_zeros_rvm(&c.float(30), &c).unwrap(), 3);
    assert_eq!(count_zeros_rvm(&c.float(50), &c).unwrap(), 10);
}

#[test]
fn completeness_at_random_heights() {
    let c = ctx();
    let table = &*TABLE60;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let t = c.float(rng.gen_range(5.0..59.5));
        let expected = count_zeros_rvm(&t, &c).unwrap();
        assert_eq!(table.count_up_to(&t), expected, "at T = {}", t.to_f64());
    }
}

#[test]
fn ordinates_are_certified_sign_changes() {
    let c = ctx();
    let eps = c.pow10(-6);
    for g in TABLE60.ordinates() {
        let lo = Float::with_val(c.bits(), g - &eps);
        let hi = Float::with_val(c.bits(), g + &eps);
        let a = crate::numkern::hardy_z(&lo, &c).unwrap();
        let b = crate::numkern::hardy_z(&hi, &c).unwrap();
        assert!(
            a.is_sign_negative() != b.is_sign_negative(),
            "at {}",
            g.to_f64()
        );
    }
}

#[test]
fn ordinates_satisfy_zeta_certificate() {
    let c = ctx();
    let tol = c.pow10(-(c.digits() as i32 - 8));
    for g in TABLE60.ordinates() {
        let s = rug::Complex::with_val(c.bits(), (Float::with_val(c.bits(), 0.5), g));
        let z = crate::numkern::cx::cabs(&crate::numkern::zeta_raw(&s, &c).unwrap());
        assert!(z < tol, "|zeta| = {z} at {}", g.to_f64());
    }
}

#[test]
fn deterministic_export() {
    let c = ctx();
    let a = find_zeros(&c.float(30), &c).unwrap();
    let b = find_zeros(&c.float(30), &c).unwrap();
    let mut buf_a = Vec::new();
    let mut buf_b = Vec::new();
    export_zeros(&a, &mut buf_a).unwrap();
    export_zeros(&b, &mut buf_b).unwrap();
    assert_eq!(buf_a, buf_b);
}

#[test]
fn export_import_round_trip() {
    let c = ctx();
    let mut buf = Vec::new();
    export_zeros(&TABLE60, &mut buf).unwrap();
    let back = import_zeros(&buf[..], &c, false).unwrap();
    assert_eq!(back.len(), TABLE60.len());
    for (a, b) in back.ordinates().iter().zip(TABLE60.ordinates()) {
        assert_eq!(a, b);
    }
    // Re-export of the verified import reproduces the ordinate lines.
    let mut buf2 = Vec::new();
    export_zeros(&back, &mut buf2).unwrap();
    let lines = |b: &[u8]| -> Vec<String> {
        String::from_utf8(b.to_vec())
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(str::to_string)
            .collect()
    };
    assert_eq!(lines(&buf), lines(&buf2));
}

#[test]
fn import_empty_stream() {
    let c = ctx();
    let t = import_zeros(&b""[..], &c, false).unwrap();
    assert!(t.is_empty());
    assert!(t.verified_height().is_zero());
}

#[test]
fn import_malformed_line() {
    let c = ctx();
    let data = format!("# header\n{GAMMA1}\nnot-a-number\n");
    match import_zeros(data.as_bytes(), &c, true) {
        Err(Error::MalformedLine(3)) => {}
        other => panic!("expected MalformedLine(3), got {other:?}"),
    }
}

#[test]
fn import_not_ascending() {
    let c = ctx();
    let data = format!("{GAMMA2}\n{GAMMA1}\n");
    match import_zeros(data.as_bytes(), &c, true) {
        Err(Error::NotAscending(2)) => {}
        other => panic!("expected NotAscending(2), got {other:?}"),
    }
}

#[test]
fn import_rejects_non_zero() {
    let c = ctx();
    // A corrupted ordinate fails the |zeta(1/2 + i gamma)| check.
    let data = format!("{GAMMA1}\n21.0320396387715549926284795938969027773343405\n");
    match import_zeros(data.as_bytes(), &c, false) {
        Err(Error::VerificationFailed(_)) => {}
        other => panic!("expected VerificationFailed, got {other:?}"),
    }
    // --trust skips the check.
    assert!(import_zeros(data.as_bytes(), &c, true).is_ok());
}

#[test]
fn import_low_precision_table() {
    // Tables circulated at reduced precision verify against a tolerance
    // inferred from their own digit count.
    let c = ctx();
    let data = "14.134725141734694\n21.022039638771555\n25.010857580145689\n";
    let t = import_zeros(data.as_bytes(), &c, false).unwrap();
    assert_eq!(t.len(), 3);
    assert_eq!(t.precision_digits(), 17);
    assert_eq!(t.source(), ZeroSource::Imported);
    // Completeness probing pushes the verified height past the top entry.
    assert!(*t.verified_height() > 25.3f64);
    assert!(*t.verified_height() < 30.4f64, "must stay below gamma_4");
}

#[test]
fn import_incomplete_table_fails_verification() {
    let c = ctx();
    // gamma_2 missing: N just above gamma_3 is 3 but the list holds 2.
    let data = format!("{GAMMA1}\n{GAMMA3}\n");
    match import_zeros(data.as_bytes(), &c, false) {
        Err(Error::VerificationFailed(msg)) => assert!(msg.contains("N(T)"), "{msg}"),
        other => panic!("expected VerificationFailed, got {other:?}"),
    }
}

#[test]
fn safe_truncation_far_from_zeros() {
    let c = ctx();
    let t = safe_truncation_height(&c.float(23), &TABLE60, &c).unwrap();
    assert_eq!(t, c.float(23));
}

#[test]
fn safe_truncation_at_first_ordinate() {
    let c = ctx();
    let g1 = c.parse_float(GAMMA1).unwrap();
    let adjusted = safe_truncation_height(&g1, &TABLE60, &c).unwrap();
    // Midpoint of the bracketing ordinates (gamma_1 + gamma_2)/2.
    let g2 = c.parse_float(GAMMA2).unwrap();
    let expect = Float::with_val(c.bits(), &g1 + &g2) / 2u32;
    let d = Float::with_val(c.bits(), &adjusted - &expect).abs();
    assert!(d < c.pow10(-38), "midpoint off by {d}");
    let frozen = c.parse_float("17.5783823902531243915428657887").unwrap();
    let d2 = Float::with_val(c.bits(), &adjusted - &frozen).abs();
    assert!(d2 < c.pow10(-27), "frozen midpoint off by {d2}");
}

#[test]
fn safe_truncation_below_first_ordinate() {
    let c = ctx();
    let t = safe_truncation_height(&c.float(10), &TABLE60, &c).unwrap();
    assert_eq!(t, c.float(10));
}

#[test]
fn safe_truncation_needs_margin() {
    let c = ctx();
    match safe_truncation_height(&c.float(59.5), &TABLE60, &c) {
        Err(Error::InsufficientTable(_)) => {}
        other => panic!("expected InsufficientTable, got {other:?}"),
    }
}

#[test]
fn mantissa_digit_inference() {
    assert_eq!(mantissa_digits("14.134725141734693"), 17);
    assert_eq!(mantissa_digits("21.0"), 3);
    assert_eq!(mantissa_digits("0.5"), 1);
    assert_eq!(mantissa_digits("1.41347e1"), 6);
}
