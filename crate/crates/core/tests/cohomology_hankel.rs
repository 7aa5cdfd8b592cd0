//! Small cases worked by hand, then the sweeps behind the cohomology and Hankel criteria.

use hermite_core::hankel::{
    eagon_northcott_betti, generalized_hermite_check, hilbert_series, mcm_data, secant_invariants, selfdual_check,
};
use hermite_core::schwarzenberger::{
    h0_sym_power_twist, line_cohomology, root_sequence, supernatural_check, twist_window_kind, wedge_e_cohomology,
    Window,
};
use hermite_core::Error;

#[test]
fn line_bundles_on_projective_space() {
    assert_eq!(line_cohomology(1, 3).unwrap(), (4, 0));
    assert_eq!(line_cohomology(1, -1).unwrap(), (0, 0));
    assert_eq!(line_cohomology(1, -3).unwrap(), (0, 2));
    assert_eq!(line_cohomology(2, 2).unwrap(), (6, 0));
    assert_eq!(line_cohomology(2, -4).unwrap(), (0, 3));
    assert_eq!(line_cohomology(3, -5).unwrap(), (0, 4));
}

#[test]
fn trivial_wedge_is_a_line_bundle() {
    for m in 1..=4 {
        for d in 0..=3 {
            for t in -8..=3 {
                let table = wedge_e_cohomology(m, d, 0, t).unwrap();
                let (h0, hm) = line_cohomology(m, t).unwrap();
                assert_eq!(table.values.get(&0).copied().unwrap_or(0), h0, "m={m} d={d} t={t}");
                assert_eq!(table.values.get(&m).copied().unwrap_or(0), hm, "m={m} d={d} t={t}");
            }
        }
    }
}

#[test]
fn roots_of_small_cases() {
    assert_eq!(root_sequence(1, 0, 1).unwrap(), vec![-2]);
    assert_eq!(root_sequence(2, 1, 1).unwrap(), vec![-1, -4]);
    assert_eq!(root_sequence(2, 0, 0).unwrap(), vec![-1, -2]);
    for t in [-1, -4] {
        assert!(wedge_e_cohomology(2, 1, 1, t).unwrap().is_zero());
    }
    assert!(!wedge_e_cohomology(2, 1, 1, -2).unwrap().is_zero());
}

#[test]
fn supernatural_for_m_up_to_four() {
    for m in 1..=4 {
        for i in 0..=m {
            for d in 0..=4 {
                let r = supernatural_check(m, d, i).unwrap();
                assert!(r.passed, "{r:?}");
                assert_eq!(r.observed_roots, r.roots);
                assert!(r.mixed_twists.is_empty());
            }
        }
    }
}

#[test]
fn eagon_northcott_small_tables() {
    assert_eq!(eagon_northcott_betti(4, 1).unwrap().to_string(), "(1; 6, 8, 3)");
    assert_eq!(eagon_northcott_betti(6, 2).unwrap().totals(), vec![1, 10, 15, 6]);
    // n = 2k: a hypersurface of degree k+1
    let cubic = eagon_northcott_betti(4, 2).unwrap();
    assert_eq!(cubic.totals(), vec![1, 1]);
    assert_eq!(cubic.get(1, 3), 1);
    // n = 2k − 1: the Hankel matrix is square with no room for relations
    assert_eq!(eagon_northcott_betti(5, 3).unwrap().totals(), vec![1]);
}

#[test]
fn hilbert_series_small_cases() {
    let hs = hilbert_series(4, 2).unwrap();
    assert_eq!(hs.numerator, vec![1, 1, 1]);
    assert_eq!(hs.denom_power, 4);
    assert_eq!(hs.to_string(), "(1 + t + t^2)/(1-t)^4");
    // twisted cubic: 1 + 3t + 6t^2 + 10t^3 over four variables
    assert_eq!(hilbert_series(3, 1).unwrap().coefficients(4), vec![1, 4, 7, 10]);
}

#[test]
fn numerator_identity_sweep() {
    for k in 1..=4usize {
        for n in 2 * k - 1..=10 {
            let inv = secant_invariants(n, k).unwrap();
            let hs = hilbert_series(n, k).unwrap();
            assert_eq!(hs.numerator_at_one() as u64, inv.degree, "n={n} k={k}");
            assert_eq!(inv.codim, n + 1 - 2 * k, "n={n} k={k}");
        }
    }
}

#[test]
fn sextic_modules() {
    let inv = secant_invariants(6, 2).unwrap();
    assert_eq!((inv.degree, inv.class_group_order, inv.ulrich_index), (10, 4, 3));
    let mus: Vec<u64> = (0..=3).map(|r| mcm_data(6, 2, r).unwrap().mu).collect();
    assert_eq!(mus, vec![1, 3, 6, 10]);
    assert!(mcm_data(6, 2, 3).unwrap().ulrich);
    assert_eq!(mcm_data(6, 2, -1).unwrap().mu, 10);
    assert!(mcm_data(6, 2, 4).is_err());
}

#[test]
fn ulrich_and_selfdual_sweep() {
    for k in 1..=3usize {
        for n in 2 * k - 1..=8 {
            let top = (n + 1 - 2 * k) as i64;
            assert!(mcm_data(n, k, top).unwrap().ulrich, "n={n} k={k}");
            assert!(selfdual_check(n, k).unwrap(), "n={n} k={k}");
        }
    }
}

#[test]
fn generalized_reciprocity() {
    let r = generalized_hermite_check(8, 3, 2).unwrap();
    assert_eq!((r.lhs_dim, r.rhs_dim), (60, 60));
    assert!(r.passed);
    for k in 0..=3usize {
        for n in k.max(1)..=8 {
            for i in 0..=n - k + 1 {
                assert!(generalized_hermite_check(n, k, i).unwrap().passed, "n={n} k={k} i={i}");
            }
        }
    }
}

#[test]
fn unique_section_at_boundary_twist() {
    for (k, n) in [(1usize, 2usize), (2, 4), (2, 5), (3, 6), (3, 7)] {
        let t = -(n as i64) + 2 * k as i64 - 2;
        assert_eq!(h0_sym_power_twist(k, n, k, t).unwrap(), 1, "k={k} n={n}");
    }
}

#[test]
fn sym_power_windows() {
    assert_eq!(twist_window_kind(2, 4, 2, -2).unwrap(), Window::Top);
    assert_eq!(twist_window_kind(2, 4, 2, 3).unwrap(), Window::Bottom);
    assert!(matches!(
        h0_sym_power_twist(2, 4, 3, 0),
        Err(Error::UnsupportedTwistWindow(_))
    ));
    // E of rank one on P^1 is O(n), so Sym^N is O(nN)
    for n in 1..=5usize {
        for big_n in 0..=4usize {
            let t = big_n.min(n) as i64;
            assert_eq!(
                h0_sym_power_twist(1, n, big_n, t).unwrap(),
                (n * big_n) as u64 + t as u64 + 1,
                "n={n} N={big_n}"
            );
        }
    }
}
