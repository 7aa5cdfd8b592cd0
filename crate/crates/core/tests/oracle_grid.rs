use hermite_core::hankel::eagon_northcott_betti;
use hermite_core::koszul_oracle::koszul_tor_oracle;

#[test]
fn oracle_matches_closed_form_on_grid() {
    for (n, k) in [(3, 1), (4, 1), (5, 1), (4, 2), (5, 2), (6, 2), (7, 3)] {
        let t0 = std::time::Instant::now();
        let codim = n + 1 - 2 * k;
        let oracle = koszul_tor_oracle(n, k, codim + 1).unwrap();
        let closed = eagon_northcott_betti(n, k).unwrap();
        eprintln!("{n} {k} {oracle} {:?}", t0.elapsed());
        assert_eq!(oracle, closed, "n = {n}, k = {k}");
    }
}
