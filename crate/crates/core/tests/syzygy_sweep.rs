use hermite_core::weyman::{bigraded_identification, green_check, weyman_complex};
use hermite_core::Field;

#[test]
fn green_over_q_and_admissible_primes() {
    for g in 3..=9 {
        assert!(green_check(g, Field::Rational).unwrap().passed, "g = {g}");
        for p in [2u64, 3, 5, 7] {
            if 2 * p as usize >= g + 2 {
                let r = green_check(g, Field::Prime(p)).unwrap();
                assert!(r.passed, "g = {g}, p = {p}: {:?}", r.entries);
            }
        }
    }
}

#[test]
fn weyman_sweep_is_a_complex_and_specializes_upward() {
    let t0 = std::time::Instant::now();
    let mut f2_nonzero = false;
    for i in 1..=4 {
        for d in 0..=10 {
            let q = weyman_complex(i, d, Field::Rational).unwrap();
            assert!(q.composite_is_zero());
            let h0 = q.middle_homology();
            for p in [2u64, 3, 5, 7] {
                let c = weyman_complex(i, d, Field::Prime(p)).unwrap();
                assert!(c.composite_is_zero());
                let hp = c.middle_homology();
                assert!(hp >= h0, "i = {i}, d = {d}, p = {p}: {hp} < {h0}");
                f2_nonzero |= p == 2 && i == 1 && hp > 0;
            }
        }
    }
    eprintln!("sweep {:?}", t0.elapsed());
    assert!(f2_nonzero);
}

#[test]
fn bigraded_identification_up_to_genus_eight() {
    let mut count = 0;
    for g in 3..=8 {
        for a in 1..=(g - 1) / 2 {
            for u in 0..=a {
                for v in 0..=g - 1 - a {
                    let r = bigraded_identification(g, a, u, v, Field::Rational).unwrap();
                    assert!(r.passed, "{r:?}");
                    count += 1;
                }
            }
        }
    }
    assert_eq!(count, 144);
}
