//! Invariant suites over fixed parameter grids. Reports contain no timings, and parallel work is
//! collected in grid order, so identical runs give identical reports.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::hankel::{
    eagon_northcott_betti, generalized_hermite_check, hilbert_series, hilbert_series_cross_check, mcm_data,
    secant_invariants, selfdual_check,
};
use crate::hermite::{freeness_certificate, star_associative, verify_compatibilities};
use crate::koszul_oracle::koszul_tor_oracle;
use crate::linalg::Field;
use crate::multilinear::combin::binomial;
use crate::multilinear::{Mode, SpaceExpr};
use crate::schwarzenberger::{h0_sym_power_twist, supernatural_check, wedge_e_cohomology};
use crate::weyman::{bigraded_identification, green_check, weyman_complex};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hermite,
    Supernatural,
    Hankel,
    Selfdual,
    Green,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Hermite,
        Suite::Supernatural,
        Suite::Hankel,
        Suite::Selfdual,
        Suite::Green,
    ];

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::EACH.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Hermite => "hermite",
            Suite::Supernatural => "supernatural",
            Suite::Hankel => "hankel",
            Suite::Selfdual => "selfdual",
            Suite::Green => "green",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::EACH
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.to_string() == s)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

/// One aggregated check of a suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub suite: Suite,
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

impl CheckLine {
    fn new(suite: Suite, name: &str, cases: usize, failures: Vec<String>) -> CheckLine {
        CheckLine {
            suite,
            name: name.into(),
            cases,
            passed: failures.is_empty(),
            failures,
        }
    }

    /// Builds a line from per-case outcomes, `Err` carrying a description of the failure.
    fn from_cases(suite: Suite, name: &str, cases: Vec<std::result::Result<(), String>>) -> CheckLine {
        let n = cases.len();
        CheckLine::new(suite, name, n, cases.into_iter().filter_map(|c| c.err()).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub characteristic: u64,
    pub lines: Vec<CheckLine>,
    pub passed: bool,
}

impl VerifyReport {
    /// Fixed-width summary, one row per check.
    pub fn summary_table(&self) -> String {
        let mut out = format!("suite {} char {}\n", self.suite, self.characteristic);
        for l in &self.lines {
            out.push_str(&format!(
                "{:<5} {:<13} {:<58} {:>5} cases\n",
                if l.passed { "PASS" } else { "FAIL" },
                l.suite.to_string(),
                l.name,
                l.cases
            ));
            for f in &l.failures {
                out.push_str(&format!("      {f}\n"));
            }
        }
        out.push_str(if self.passed {
            "overall PASS\n"
        } else {
            "overall FAIL\n"
        });
        out
    }
}

fn outcome(ok: bool, describe: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(describe())
    }
}

fn flatten(r: Result<std::result::Result<(), String>>) -> std::result::Result<(), String> {
    r.unwrap_or_else(|e| Err(e.to_string()))
}

/// Fields for the characteristic-sensitive checks: `Q` plus small primes, or just `F_p`.
fn fields(characteristic: u64) -> Result<Vec<Field>> {
    if characteristic == 0 {
        Ok(vec![
            Field::Rational,
            Field::Prime(2),
            Field::Prime(3),
            Field::Prime(5),
            Field::Prime(7),
        ])
    } else {
        Ok(vec![Field::prime(characteristic)?])
    }
}

fn hermite_suite(characteristic: u64) -> Result<Vec<CheckLine>> {
    let s = Suite::Hermite;
    let grid: Vec<(Field, usize, usize)> = fields(characteristic)?
        .into_iter()
        .flat_map(|f| (1..=4).flat_map(move |m| (m..=8).map(move |n| (f, m, n))))
        .collect();
    let compat = grid
        .par_iter()
        .map(|&(f, m, n)| {
            flatten(verify_compatibilities(m, n, f).map(|r| {
                outcome(r.passed, || {
                    let bad: Vec<String> = r
                        .checks
                        .iter()
                        .filter(|c| !c.passed)
                        .map(|c| format!("{} {}", c.name, c.witness.clone().unwrap_or_default()))
                        .collect();
                    format!("{f} m={m} n={n}: {}", bad.join("; "))
                })
            }))
        })
        .collect();
    let base = if characteristic == 0 {
        Field::Rational
    } else {
        Field::prime(characteristic)?
    };
    let unimodular = (1..=4)
        .flat_map(|m| (m..=8).map(move |n| (m, n)))
        .map(|(m, n)| {
            flatten(verify_compatibilities(m, n, base).map(|r| {
                let ok = r
                    .determinants
                    .iter()
                    .all(|(_, d)| d == "1" || d == "-1" || (characteristic != 0 && d != "0"));
                outcome(ok, || format!("m={m} n={n}: determinants {:?}", r.determinants))
            }))
        })
        .collect();
    let freeness = (1..=4)
        .flat_map(|m| [Mode::Wedge, Mode::Divided].map(|mode| (m, mode)))
        .map(|(m, mode)| {
            flatten(freeness_certificate(m, 6, mode, base).map(|c| {
                outcome(c.passed, || {
                    format!(
                        "m={m} {mode}: ranks {:?}",
                        c.degrees.iter().map(|d| d.rank).collect::<Vec<_>>()
                    )
                })
            }))
        })
        .collect();
    let assoc = (1..=4)
        .flat_map(|m| [Mode::Wedge, Mode::Divided].map(|mode| (m, mode)))
        .map(|(m, mode)| {
            let d = if mode == Mode::Wedge { m - 1 } else { 0 };
            flatten(star_associative(m, d, 2, mode, base).map(|ok| outcome(ok, || format!("m={m} {mode} d={d}"))))
        })
        .collect();
    Ok(vec![
        CheckLine::from_cases(s, "triangle, square, invertibility, characters (m<=4, n<=8)", compat),
        CheckLine::from_cases(s, "determinants of alpha, beta, gamma are units", unimodular),
        CheckLine::from_cases(s, "freeness from the generator (m<=4, d<=6, both modes)", freeness),
        CheckLine::from_cases(s, "star action associative on degree<=2 monomials", assoc),
    ])
}

fn supernatural_suite() -> Result<Vec<CheckLine>> {
    let s = Suite::Supernatural;
    let grid: Vec<(usize, usize, usize)> = (1..=4)
        .flat_map(|m| (0..=m).flat_map(move |i| (0..=4).map(move |d| (m, d, i))))
        .collect();
    let roots = grid
        .iter()
        .map(|&(m, d, i)| {
            flatten(supernatural_check(m, d, i).map(|r| {
                outcome(r.passed, || {
                    format!(
                        "m={m} d={d} i={i}: roots {:?} observed {:?} mixed {:?} euler {}",
                        r.roots, r.observed_roots, r.mixed_twists, r.euler_polynomial_ok
                    )
                })
            }))
        })
        .collect();
    let top_wedge = (1..=4)
        .flat_map(|m| (m..=8).map(move |n| (m, n)))
        .map(|(m, n)| {
            flatten(wedge_e_cohomology(m, n - m, m, 0).map(|t| {
                let expect = SpaceExpr::sym(n - m + 1, SpaceExpr::d_u(m)).dim() as u64;
                outcome(t.values[&0] == expect, || {
                    format!("m={m} n={n}: h0 {} vs {expect}", t.values[&0])
                })
            }))
        })
        .collect();
    let one_dim = [(1, 2), (2, 4), (2, 5), (3, 6), (3, 7)]
        .into_iter()
        .map(|(k, n)| {
            let t = n as i64 - 2 * k as i64 + 2;
            flatten(h0_sym_power_twist(k, n, k, -t).map(|h| outcome(h == 1, || format!("k={k} n={n}: h0 = {h}"))))
        })
        .collect();
    let mut ring = Vec::new();
    for k in 1..=3usize {
        for n in (2 * k - 1).max(k)..=8 {
            let series = hilbert_series(n, k)?.coefficients(5);
            for (big_n, &expected) in series.iter().enumerate() {
                match h0_sym_power_twist(k, n, big_n, 0) {
                    Ok(h) => ring.push(outcome(h as i128 == expected, || {
                        format!("k={k} n={n} N={big_n}: h0 {h} vs {expected}")
                    })),
                    Err(Error::UnsupportedTwistWindow(_)) => {}
                    Err(e) => ring.push(Err(e.to_string())),
                }
            }
        }
    }
    Ok(vec![
        CheckLine::from_cases(s, "single nonzero row, zeros exactly at roots (m<=4, d<=4)", roots),
        CheckLine::from_cases(s, "h0 of top wedge equals dim Sym^{n-m+1}(D^m U)", top_wedge),
        CheckLine::from_cases(s, "h0(Sym^k E(-n+2k-2)) is one-dimensional", one_dim),
        CheckLine::from_cases(s, "h0(Sym^N E) equals dim B_N (clean windows)", ring),
    ])
}

/// The `(n, k)` pairs on which the brute-force oracle is run.
pub const ORACLE_GRID: [(usize, usize); 7] = [(3, 1), (4, 1), (5, 1), (4, 2), (5, 2), (6, 2), (7, 3)];

fn hankel_suite() -> Result<Vec<CheckLine>> {
    let s = Suite::Hankel;
    let oracle = ORACLE_GRID
        .par_iter()
        .map(|&(n, k)| {
            flatten((|| {
                let closed = eagon_northcott_betti(n, k)?;
                let brute = koszul_tor_oracle(n, k, n + 2 - 2 * k)?;
                Ok(outcome(brute == closed, || {
                    format!("n={n} k={k}: oracle {brute} vs {closed}")
                }))
            })())
        })
        .collect();
    let grid: Vec<(usize, usize)> = (1..=4).flat_map(|k| (2 * k - 1..=10).map(move |n| (n, k))).collect();
    let series = grid
        .iter()
        .map(|&(n, k)| flatten(hilbert_series_cross_check(n, k).map(|ok| outcome(ok, || format!("n={n} k={k}")))))
        .collect();
    let degree = grid
        .iter()
        .map(|&(n, k)| {
            flatten((|| {
                let hs = hilbert_series(n, k)?;
                let inv = secant_invariants(n, k)?;
                let c = binomial((n - k + 1) as i64, k as i64) as u64;
                let ok = hs.numerator_at_one() as u64 == c && inv.degree == c;
                Ok(outcome(ok, || {
                    format!(
                        "n={n} k={k}: numerator(1) {} degree {} C {c}",
                        hs.numerator_at_one(),
                        inv.degree
                    )
                }))
            })())
        })
        .collect();
    let pd = grid
        .iter()
        .map(|&(n, k)| {
            flatten((|| {
                let t = eagon_northcott_betti(n, k)?;
                let codim = n + 1 - 2 * k;
                Ok(outcome(t.projective_dimension() == codim, || {
                    format!("n={n} k={k}: pd {} codim {codim}", t.projective_dimension())
                }))
            })())
        })
        .collect();
    Ok(vec![
        CheckLine::from_cases(s, "Eagon-Northcott table equals Koszul homology oracle", oracle),
        CheckLine::from_cases(s, "Hilbert series closed form equals Betti expansion", series),
        CheckLine::from_cases(s, "numerator(1) = degree = C(n-k+1, k)", degree),
        CheckLine::from_cases(s, "projective dimension equals codimension", pd),
    ])
}

fn selfdual_suite() -> Result<Vec<CheckLine>> {
    let s = Suite::Selfdual;
    let grid: Vec<(usize, usize)> = (1..=3).flat_map(|k| (2 * k - 1..=8).map(move |n| (n, k))).collect();
    let mu = grid
        .iter()
        .flat_map(|&(n, k)| (0..=(n + 1 - 2 * k) as i64).map(move |r| (n, k, r)))
        .map(|(n, k, r)| {
            flatten(mcm_data(n, k, r).map(|d| {
                let expect = binomial(r + k as i64, k as i64) as u64;
                outcome(d.mu == expect, || format!("n={n} k={k} r={r}: mu {} vs {expect}", d.mu))
            }))
        })
        .collect();
    let ulrich = grid
        .iter()
        .map(|&(n, k)| {
            flatten(
                mcm_data(n, k, (n + 1 - 2 * k) as i64)
                    .map(|d| outcome(d.ulrich, || format!("n={n} k={k}: mu {} degree {}", d.mu, d.degree))),
            )
        })
        .collect();
    let dual = grid
        .iter()
        .map(|&(n, k)| flatten(selfdual_check(n, k).map(|ok| outcome(ok, || format!("n={n} k={k}")))))
        .collect();
    let gh = (1..=3usize)
        .flat_map(|k| (k..=8).flat_map(move |n| (0..=n - k + 1).map(move |i| (n, k, i))))
        .map(|(n, k, i)| {
            flatten(generalized_hermite_check(n, k, i).map(|r| {
                outcome(r.passed, || {
                    format!("n={n} k={k} i={i}: {} vs {}", r.lhs_dim, r.rhs_dim)
                })
            }))
        })
        .collect();
    Ok(vec![
        CheckLine::from_cases(s, "mu(M_r) = C(r+k, k)", mu),
        CheckLine::from_cases(s, "M_{n-2k+1} is Ulrich", ulrich),
        CheckLine::from_cases(s, "F^{n-2k+1} and F^{-1} term dimensions agree", dual),
        CheckLine::from_cases(s, "generalized Hermite dimensions and characters", gh),
    ])
}

fn green_suite(characteristic: u64) -> Result<Vec<CheckLine>> {
    let s = Suite::Green;
    let primes: Vec<u64> = if characteristic == 0 {
        vec![2, 3, 5, 7]
    } else {
        vec![characteristic]
    };
    let mut runs: Vec<(usize, Field)> = Vec::new();
    for g in 3..=9usize {
        if characteristic == 0 {
            runs.push((g, Field::Rational));
        }
        for &p in &primes {
            if 2 * p as usize >= g + 2 {
                runs.push((g, Field::prime(p)?));
            }
        }
    }
    let green = runs
        .par_iter()
        .map(|&(g, f)| {
            flatten(green_check(g, f).map(|r| {
                outcome(r.passed, || {
                    let bad: Vec<String> = r
                        .entries
                        .iter()
                        .filter(|e| !e.passed)
                        .map(|e| format!("i={} dim {}", e.i, e.weyman_dim))
                        .collect();
                    format!("g={g} {f}: {}", bad.join(", "))
                })
            }))
        })
        .collect();
    let cells: Vec<(usize, usize)> = (1..=4).flat_map(|i| (0..=10).map(move |d| (i, d))).collect();
    let sweep: Vec<(std::result::Result<(), String>, std::result::Result<(), String>)> = cells
        .par_iter()
        .map(|&(i, d)| {
            let run = || -> Result<(bool, Vec<String>)> {
                let q = weyman_complex(i, d, Field::Rational)?;
                let mut complex = q.composite_is_zero();
                let h0 = q.middle_homology();
                let mut drops = Vec::new();
                for &p in &primes {
                    let c = weyman_complex(i, d, Field::prime(p)?)?;
                    complex &= c.composite_is_zero();
                    let hp = c.middle_homology();
                    if hp < h0 {
                        drops.push(format!("i={i} d={d} p={p}: {hp} < {h0}"));
                    }
                }
                Ok((complex, drops))
            };
            match run() {
                Ok((complex, drops)) => (
                    outcome(complex, || format!("i={i} d={d}")),
                    outcome(drops.is_empty(), || drops.join("; ")),
                ),
                Err(e) => (Err(e.to_string()), Err(e.to_string())),
            }
        })
        .collect();
    let (complex, special): (Vec<_>, Vec<_>) = sweep.into_iter().unzip();
    let mut bigraded = Vec::new();
    for g in 3..=8usize {
        for a in 1..=(g - 1) / 2 {
            for u in 0..=a {
                for v in 0..=g - 1 - a {
                    bigraded.push((g, a, u, v));
                }
            }
        }
    }
    let base = if characteristic == 0 {
        Field::Rational
    } else {
        Field::prime(characteristic)?
    };
    let ident = bigraded
        .par_iter()
        .map(|&(g, a, u, v)| {
            flatten(bigraded_identification(g, a, u, v, base).map(|r| {
                outcome(r.passed, || {
                    format!("g={g} a={a} u={u} v={v}: {} vs {}", r.homology, r.expected)
                })
            }))
        })
        .collect();
    Ok(vec![
        CheckLine::from_cases(s, "Weyman module vanishes in genus degree (3<=g<=9)", green),
        CheckLine::from_cases(s, "d2∘d1 = 0 on the sweep (i<=4, d<=10)", complex),
        CheckLine::from_cases(s, "homology over F_p at least homology over Q", special),
        CheckLine::from_cases(s, "bigraded homology matches closed form (g<=8)", ident),
    ])
}

/// Runs a suite. `characteristic = 0` checks over `Q` and, where relevant, over `F_2..F_7`;
/// a prime reruns the characteristic-sensitive checks over that field only.
pub fn run_suite(suite: Suite, characteristic: u64) -> Result<VerifyReport> {
    if characteristic != 0 {
        Field::prime(characteristic)?;
    }
    let mut lines = Vec::new();
    for s in suite.expand() {
        lines.extend(match s {
            Suite::Hermite => hermite_suite(characteristic)?,
            Suite::Supernatural => supernatural_suite()?,
            Suite::Hankel => hankel_suite()?,
            Suite::Selfdual => selfdual_suite()?,
            Suite::Green => green_suite(characteristic)?,
            Suite::All => unreachable!("expanded above"),
        });
    }
    let passed = lines.iter().all(|l| l.passed);
    Ok(VerifyReport {
        suite,
        characteristic,
        lines,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain([Suite::All].iter()) {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn selfdual_suite_passes() {
        let r = run_suite(Suite::Selfdual, 0).unwrap();
        assert!(r.passed, "{}", r.summary_table());
    }

    #[test]
    fn supernatural_suite_passes() {
        let r = run_suite(Suite::Supernatural, 0).unwrap();
        assert!(r.passed, "{}", r.summary_table());
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(run_suite(Suite::Green, 4).is_err());
    }
}
