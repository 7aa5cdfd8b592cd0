use hermite_core::hermite::{freeness_certificate, verify_compatibilities};
use hermite_core::multilinear::Mode;
use hermite_core::Field;

#[test]
fn full_range_over_q_and_small_primes() {
    for field in [
        Field::Rational,
        Field::Prime(2),
        Field::Prime(3),
        Field::Prime(5),
        Field::Prime(7),
    ] {
        for m in 1..=4 {
            for n in m..=8 {
                let r = verify_compatibilities(m, n, field).unwrap();
                assert!(r.passed, "{field} m={m} n={n}: {:?}", r.checks);
            }
        }
    }
}

#[test]
fn freeness_both_modes() {
    for m in 1..=4 {
        for mode in [Mode::Wedge, Mode::Divided] {
            assert!(
                freeness_certificate(m, 6, mode, Field::Rational).unwrap().passed,
                "{m} {mode}"
            );
        }
    }
}
