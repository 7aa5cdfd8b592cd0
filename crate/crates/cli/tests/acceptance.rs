//! One line per acceptance criterion. Runs without the libtest harness so the lines are always
//! printed; exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use hermite_core::hankel::{
    eagon_northcott_betti, generalized_hermite_check, hilbert_series, hilbert_series_cross_check, mcm_data,
    secant_invariants, selfdual_check,
};
use hermite_core::hermite::{freeness_certificate, verify_compatibilities};
use hermite_core::koszul_oracle::koszul_tor_oracle;
use hermite_core::multilinear::combin::binomial;
use hermite_core::multilinear::Mode;
use hermite_core::schwarzenberger::{h0_sym_power_twist, supernatural_check};
use hermite_core::weyman::{bigraded_identification, green_check, weyman_complex};
use hermite_core::Field;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    Outcome {
        ok: failures.is_empty(),
        detail: if failures.is_empty() {
            summary
        } else {
            format!(
                "{summary}; first failures: {}",
                failures.into_iter().take(3).collect::<Vec<_>>().join(" | ")
            )
        },
    }
}

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for field in [
        Field::Rational,
        Field::Prime(2),
        Field::Prime(3),
        Field::Prime(5),
        Field::Prime(7),
    ] {
        for m in 1..=4 {
            for n in m..=8 {
                cases += 1;
                match verify_compatibilities(m, n, field) {
                    Ok(r) if r.passed => {}
                    Ok(r) => failures.push(format!(
                        "{field} m={m} n={n} {:?}",
                        r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
                    )),
                    Err(e) => failures.push(format!("{field} m={m} n={n}: {e}")),
                }
            }
        }
    }
    outcome(
        failures,
        format!("{cases} (field, m, n) cases over QQ, GF(2), GF(3), GF(5), GF(7)"),
    )
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    for m in 1..=4 {
        for mode in [Mode::Wedge, Mode::Divided] {
            match freeness_certificate(m, 6, mode, Field::Rational) {
                Ok(c) if c.passed => {}
                Ok(c) => failures.push(format!("m={m} {mode}: {:?}", c.degrees)),
                Err(e) => failures.push(format!("m={m} {mode}: {e}")),
            }
        }
    }
    outcome(failures, "m <= 4, d <= 6, wedge and divided".into())
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for m in 1..=4 {
        for i in 0..=m {
            for d in 0..=4 {
                cases += 1;
                match supernatural_check(m, d, i) {
                    Ok(r) if r.passed => {}
                    Ok(r) => failures.push(format!("m={m} d={d} i={i}: {r:?}")),
                    Err(e) => failures.push(format!("m={m} d={d} i={i}: {e}")),
                }
            }
        }
    }
    outcome(failures, format!("{cases} (m, i, d) cases, twists -(m+d+2)..=2"))
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    for (n, k) in [(3, 1), (4, 1), (5, 1), (4, 2), (5, 2), (6, 2), (7, 3)] {
        let closed = eagon_northcott_betti(n, k).unwrap();
        match koszul_tor_oracle(n, k, n + 2 - 2 * k) {
            Ok(o) if o == closed => {}
            Ok(o) => failures.push(format!("n={n} k={k}: oracle {o} closed {closed}")),
            Err(e) => failures.push(format!("n={n} k={k}: {e}")),
        }
    }
    let quartic = eagon_northcott_betti(4, 1).unwrap().to_string();
    if quartic != "(1; 6, 8, 3)" {
        failures.push(format!("(4,1) gives {quartic}"));
    }
    outcome(failures, "7 (n, k) pairs; (4,1) is (1; 6, 8, 3)".into())
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for k in 1..=4usize {
        for n in 2 * k - 1..=10 {
            cases += 1;
            let hs = hilbert_series(n, k).unwrap();
            let c = binomial((n - k + 1) as i64, k as i64) as i64;
            // the i = 0 term is 1 even at n = 2k − 1
            let sum: i64 = (0..=k as i64)
                .map(|i| {
                    if i == 0 {
                        1
                    } else {
                        binomial(n as i64 - 2 * k as i64 + i, i) as i64
                    }
                })
                .sum();
            let cross = hilbert_series_cross_check(n, k).unwrap();
            let inv = secant_invariants(n, k).is_ok();
            if !(cross && inv && hs.numerator_at_one() == c && c == sum) {
                failures.push(format!(
                    "n={n} k={k}: cross {cross} numerator(1) {} C {c} sum {sum}",
                    hs.numerator_at_one()
                ));
            }
        }
    }
    outcome(failures, format!("{cases} (n, k) cases, 2n coefficients each"))
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    for k in 1..=3usize {
        for n in 2 * k - 1..=8 {
            let top = (n + 1 - 2 * k) as i64;
            for r in 0..=top {
                let d = mcm_data(n, k, r).unwrap();
                if d.mu != binomial(r + k as i64, k as i64) as u64 {
                    failures.push(format!("mu n={n} k={k} r={r}: {}", d.mu));
                }
            }
            let u = mcm_data(n, k, top).unwrap();
            if !u.ulrich || u.mu != u.degree {
                failures.push(format!("ulrich n={n} k={k}: mu {} degree {}", u.mu, u.degree));
            }
            if !selfdual_check(n, k).unwrap() {
                failures.push(format!("selfdual n={n} k={k}"));
            }
        }
    }
    let mut gh = 0;
    for k in 0..=3usize {
        for n in k.max(1)..=8 {
            for i in 0..=n - k + 1 {
                gh += 1;
                let r = generalized_hermite_check(n, k, i).unwrap();
                if !r.passed {
                    failures.push(format!("generalized n={n} k={k} i={i}: {} vs {}", r.lhs_dim, r.rhs_dim));
                }
            }
        }
    }
    outcome(
        failures,
        format!("mu grid, Ulrich, term dimensions, {gh} generalized checks"),
    )
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    for (k, n) in [(1usize, 2usize), (2, 4), (2, 5), (3, 6), (3, 7)] {
        let t = -(n as i64) + 2 * k as i64 - 2;
        match h0_sym_power_twist(k, n, k, t) {
            Ok(1) => {}
            Ok(h) => failures.push(format!("k={k} n={n}: {h}")),
            Err(e) => failures.push(format!("k={k} n={n}: {e}")),
        }
    }
    outcome(failures, "5 (k, n) pairs".into())
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    for g in 3..=9usize {
        if !green_check(g, Field::Rational).unwrap().passed {
            failures.push(format!("g={g} over QQ"));
        }
        for p in [2u64, 3, 5, 7] {
            if 2 * p as usize >= g + 2 && !green_check(g, Field::Prime(p)).unwrap().passed {
                failures.push(format!("g={g} over GF({p})"));
            }
        }
    }
    for i in 1..=4 {
        for d in 0..=10 {
            let q = weyman_complex(i, d, Field::Rational).unwrap();
            if !q.composite_is_zero() {
                failures.push(format!("d2∘d1 != 0 at i={i} d={d} over QQ"));
            }
            let h0 = q.middle_homology();
            for p in [2u64, 3, 5, 7] {
                let c = weyman_complex(i, d, Field::Prime(p)).unwrap();
                if !c.composite_is_zero() {
                    failures.push(format!("d2∘d1 != 0 at i={i} d={d} over GF({p})"));
                }
                if c.middle_homology() < h0 {
                    failures.push(format!("specialization i={i} d={d} p={p}"));
                }
            }
        }
    }
    outcome(failures, "3 <= g <= 9; sweep i <= 4, d <= 10, p in {2,3,5,7}".into())
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for g in 3..=8usize {
        for a in 1..=(g - 1) / 2 {
            for u in 0..=a {
                for v in 0..=g - 1 - a {
                    cases += 1;
                    let r = bigraded_identification(g, a, u, v, Field::Rational).unwrap();
                    if !r.passed {
                        failures.push(format!("g={g} a={a} u={u} v={v}: {} vs {}", r.homology, r.expected));
                    }
                }
            }
        }
    }
    outcome(failures, format!("{cases} admissible (g, a, u, v)"))
}

fn criterion_10() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hermite"))
            .args(["verify", "all"])
            .output()
            .expect("run hermite verify all")
    };
    let (a, b) = (run(), run());
    let mut failures = Vec::new();
    if a.stdout != b.stdout {
        failures.push("stdout differs between runs".into());
    }
    if !a.status.success() {
        failures.push(format!("verify all exited with {}", a.status));
    }
    outcome(failures, format!("two runs, {} bytes each", a.stdout.len()))
}

/// Number, check, and time budget in seconds.
type Criterion = (u32, fn() -> Outcome, Option<u64>);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, criterion_1, Some(10)),
        (2, criterion_2, Some(10)),
        (3, criterion_3, Some(5)),
        (4, criterion_4, Some(60)),
        (5, criterion_5, Some(1)),
        (6, criterion_6, Some(5)),
        (7, criterion_7, Some(30)),
        (8, criterion_8, Some(300)),
        (9, criterion_9, Some(120)),
        (10, criterion_10, None),
    ];
    let mut all = true;
    for (id, run, budget) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|s| elapsed <= Duration::from_secs(s));
        let ok = out.ok && in_time;
        all &= ok;
        let budget_note = budget.map_or(String::new(), |s| format!(" (budget {s} s)"));
        println!(
            "criterion {id:>2}: {} in {:.2} s{budget_note}: {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            out.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
