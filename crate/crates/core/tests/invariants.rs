use hermite_core::hankel::{
    eagon_northcott_betti, hankel_rank, hilbert_series, secant_invariants, BettiTable, HilbertSeries,
};
use hermite_core::hermite::{hermite_beta, hermite_gamma, star_action};
use hermite_core::multilinear::combin::{binomial, multiset_count};
use hermite_core::multilinear::{character, preserves_weights, Mode};
use hermite_core::schwarzenberger::{supernatural_check, wedge_e_cohomology};
use hermite_core::{ExactMatrix, Field, SpaceExpr};
use proptest::prelude::*;

const PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Wedge), Just(Mode::Divided)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reciprocity_maps_respect_characters(m in 1usize..4, extra in 0usize..5) {
        let n = m + extra;
        for f in [hermite_beta(m, n, Field::Rational).unwrap(), hermite_gamma(m, n, Field::Rational).unwrap()] {
            let (dom, cod) = (f.domain().unwrap(), f.codomain().unwrap());
            prop_assert_eq!(character(dom), character(cod));
            prop_assert_eq!(dom.dim(), cod.dim());
            prop_assert!(preserves_weights(&f));
            prop_assert_eq!(f.rank(), dom.dim());
        }
    }

    #[test]
    fn reciprocity_characters_over_sym(m in 0usize..5, n in 0usize..5) {
        let sym = SpaceExpr::sym(m, SpaceExpr::sym_u(n));
        let div = SpaceExpr::d(m, SpaceExpr::sym_u(n));
        let swapped = SpaceExpr::sym(n, SpaceExpr::sym_u(m));
        if m >= 1 {
            let wedge = SpaceExpr::wedge(m, SpaceExpr::sym_u(n + m - 1));
            prop_assert_eq!(character(&wedge), character(&sym));
        }
        prop_assert_eq!(character(&div), character(&sym));
        prop_assert_eq!(character(&sym), character(&swapped));
        prop_assert_eq!(sym.dim(), multiset_count(n + 1, m));
    }

    #[test]
    fn star_commutes_with_reduction(m in 1usize..4, d in 0usize..4, mode in mode(), pi in 0usize..5) {
        prop_assume!(mode == Mode::Divided || m <= d + 1);
        let p = PRIMES[pi];
        let q = star_action(m, d, mode, Field::Rational).unwrap();
        prop_assume!(q.is_integral());
        let reduced = q.reduce_mod(p).unwrap();
        prop_assert!(reduced.same_map(&star_action(m, d, mode, Field::Prime(p)).unwrap()));
    }

    #[test]
    fn beta_commutes_with_reduction(m in 1usize..4, extra in 0usize..4, pi in 0usize..5) {
        let (n, p) = (m + extra, PRIMES[pi]);
        let q = hermite_beta(m, n, Field::Rational).unwrap();
        let native = hermite_beta(m, n, Field::Prime(p)).unwrap();
        prop_assert_eq!(native.rank(), native.rows());
        if q.is_integral() {
            prop_assert!(q.reduce_mod(p).unwrap().same_map(&native));
        }
    }

    #[test]
    fn rank_and_transpose(rows in small_matrix(), pi in 0usize..5) {
        let a = ExactMatrix::from_rows(Field::Rational, &rows);
        prop_assert_eq!(a.rank(), a.transpose().rank());
        let kernel = a.kernel_basis();
        prop_assert_eq!(kernel.len(), a.cols() - a.rank());
        let ap = a.reduce_mod(PRIMES[pi]).unwrap();
        prop_assert!(ap.rank() <= a.rank());
        prop_assert_eq!(ap.rank(), ExactMatrix::from_rows(Field::Prime(PRIMES[pi]), &rows).rank());
    }

    #[test]
    fn inverse_is_two_sided(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 4)) {
        let a = ExactMatrix::from_rows(Field::Rational, &rows);
        prop_assume!(a.rank() == 4);
        let inv = a.inverse().unwrap();
        prop_assert!(a.compose(&inv).unwrap().same_map(&ExactMatrix::identity(4, Field::Rational)));
        prop_assert!(inv.compose(&a).unwrap().same_map(&ExactMatrix::identity(4, Field::Rational)));
    }

    #[test]
    fn betti_csv_round_trip(cells in prop::collection::btree_map((0usize..8, 0usize..12), 1u64..1000, 0..20)) {
        let mut t = BettiTable::new();
        for (&(i, j), &b) in &cells {
            t.set(i, j, b);
        }
        let back = BettiTable::from_csv(&t.to_csv()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn supernatural_grid(m in 1usize..6, d in 0usize..6, i in 0usize..6) {
        prop_assume!(i <= m);
        let r = supernatural_check(m, d, i).unwrap();
        prop_assert!(r.passed, "{:?}", r);
    }

    #[test]
    fn wedge_cohomology_sits_in_one_row(m in 1usize..5, d in 0usize..5, i in 0usize..5, t in -12i64..6) {
        prop_assume!(i <= m);
        prop_assert!(wedge_e_cohomology(m, d, i, t).unwrap().nonzero_rows().len() <= 1);
    }

    #[test]
    fn binomial_identities(n in 0i64..30, k in 0i64..30, j in 0i64..10) {
        prop_assert_eq!(binomial(n + 1, k + 1), binomial(n, k) + binomial(n, k + 1));
        if k <= n {
            prop_assert_eq!(binomial(n, k), binomial(n, n - k));
        }
        let vandermonde: u128 = (0..=k).map(|r| binomial(n, r) * binomial(j, k - r)).sum();
        prop_assert_eq!(binomial(n + j, k), vandermonde);
    }

    #[test]
    fn hankel_invariants_agree(k in 1usize..5, extra in 0usize..7) {
        let n = 2 * k - 1 + extra;
        let betti = eagon_northcott_betti(n, k).unwrap();
        let inv = secant_invariants(n, k).unwrap();
        prop_assert_eq!(betti.projective_dimension(), inv.codim);
        let hs = hilbert_series(n, k).unwrap();
        let from_betti = HilbertSeries::from_betti(&betti, n + 1);
        prop_assert_eq!(hs.coefficients(2 * n), from_betti.coefficients(2 * n));
        prop_assert_eq!(hs.numerator_at_one() as u64, inv.degree);
    }

    #[test]
    fn hankel_rank_of_moment_points(k in 1usize..4, extra in 0usize..4, r in 1usize..4,
                                   c in prop::collection::vec(-5i64..=5, 3), s in prop::collection::vec(-4i64..=4, 3)) {
        let n = 2 * k + extra;
        let z: Vec<i64> = (0..=n as u32).map(|j| (0..r).map(|l| c[l] * s[l].pow(j)).sum()).collect();
        prop_assert!(hankel_rank(n, k, &z, Field::Rational).unwrap() <= r);
    }
}
