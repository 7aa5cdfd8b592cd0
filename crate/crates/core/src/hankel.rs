//! Hankel matrices, the Eagon–Northcott resolution of their maximal minors, Hilbert series and
//! numerical invariants of the secant varieties `Σ_k` of the rational normal curve of degree
//! `n`, and dimension data of the rank one MCM modules `M_r`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::linalg::{ExactMatrix, Field, Scalar};
use crate::multilinear::combin::binomial;
use crate::multilinear::{character, CharPoly, SpaceExpr};
use crate::{require, Error, Result};

fn c(n: i64, k: i64) -> u64 {
    u64::try_from(binomial(n, k)).expect("binomial exceeds u64")
}

/// `C(n−2k+i, i)`, with `i = 0` contributing 1 also at the edge `n = 2k−1`.
fn numerator_coeff(n: i64, k: i64, i: i64) -> u64 {
    if i == 0 {
        1
    } else {
        c(n - 2 * k + i, i)
    }
}

fn check_secant_range(n: usize, k: usize) -> Result<()> {
    require(k >= 1 && 2 * k <= n + 1, || {
        format!("need 1 <= k <= (n+1)/2, got n = {n}, k = {k}")
    })
}

/// The `(n−k+1) × (k+1)` Hankel matrix, entry `(i, j)` holding the index of `z_{i+j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HankelMatrix {
    pub n: usize,
    pub k: usize,
    pub entries: Vec<Vec<usize>>,
}

pub fn hankel_matrix(n: usize, k: usize) -> Result<HankelMatrix> {
    require(k <= n, || format!("need 0 <= k <= n, got n = {n}, k = {k}"))?;
    let entries = (0..=n - k).map(|i| (i..=i + k).collect()).collect();
    Ok(HankelMatrix { n, k, entries })
}

impl HankelMatrix {
    /// The numeric matrix at a point `z` with `n + 1` coordinates.
    pub fn evaluate(&self, z: &[Scalar]) -> Result<ExactMatrix> {
        require(z.len() == self.n + 1, || {
            format!("point needs {} coordinates, got {}", self.n + 1, z.len())
        })?;
        let field = z[0].field();
        let triples = self
            .entries
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, z[v].clone())));
        Ok(ExactMatrix::from_triples(
            self.n - self.k + 1,
            self.k + 1,
            field,
            triples,
        )?)
    }
}

/// Graded Betti numbers `β_{i,j}`, zero entries omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new() -> BettiTable {
        BettiTable::default()
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        if value == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    /// Last homological index with a nonzero entry.
    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Total Betti numbers `Σ_j β_{i,j}` for `i = 0..=pd`.
    pub fn totals(&self) -> Vec<u64> {
        let mut out = vec![0; self.projective_dimension() + 1];
        for (i, _, b) in self.entries() {
            out[i] += b;
        }
        out
    }

    /// Keeps the entries with `i <= max_i`.
    pub fn truncate(&self, max_i: usize) -> BettiTable {
        BettiTable {
            entries: self
                .entries
                .iter()
                .filter(|((i, _), _)| *i <= max_i)
                .map(|(k, v)| (*k, *v))
                .collect(),
        }
    }

    /// `i,j,beta` lines under a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,beta\n");
        for (i, j, b) in self.entries() {
            out.push_str(&format!("{i},{j},{b}\n"));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<BettiTable> {
        let mut lines = text.lines();
        require(lines.next() == Some("i,j,beta"), || "missing header i,j,beta".into())?;
        let mut table = BettiTable::new();
        for line in lines.filter(|l| !l.is_empty()) {
            let parts: Vec<&str> = line.split(',').collect();
            let parse = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::InvalidParameter(format!("{line}: {e}")))
            };
            require(parts.len() == 3, || format!("expected three fields: {line}"))?;
            table.set(parse(parts[0])? as usize, parse(parts[1])? as usize, parse(parts[2])?);
        }
        Ok(table)
    }
}

/// Sorted `[i, j, beta]` triples.
impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (i, j, b) in self.entries() {
            seq.serialize_element(&[i as u64, j as u64, b])?;
        }
        seq.end()
    }
}

/// Totals in the `(1; 6, 8, 3)` style.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.totals();
        write!(f, "({}", t[0])?;
        for (idx, b) in t.iter().enumerate().skip(1) {
            write!(f, "{}{b}", if idx == 1 { "; " } else { ", " })?;
        }
        write!(f, ")")
    }
}

/// Betti table of the coordinate ring of `Σ_k` from the Eagon–Northcott complex:
/// `β_{i,i+k} = C(i−1+k, k)·C(n−k+1, i+k)` for `1 <= i <= n−2k+1`.
pub fn eagon_northcott_betti(n: usize, k: usize) -> Result<BettiTable> {
    check_secant_range(n, k)?;
    let mut t = BettiTable::new();
    t.set(0, 0, 1);
    let (n_, k_) = (n as i64, k as i64);
    for i in 1..=(n_ - 2 * k_ + 1) {
        t.set(
            i as usize,
            (i + k_) as usize,
            c(i - 1 + k_, k_) * c(n_ - k_ + 1, i + k_),
        );
    }
    Ok(t)
}

/// `numerator(t) / (1 − t)^denom_power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub denom_power: usize,
}

impl HilbertSeries {
    /// The first `terms` coefficients of the power series.
    pub fn coefficients(&self, terms: usize) -> Vec<i128> {
        let e = self.denom_power as i64;
        (0..terms as i64)
            .map(|d| {
                self.numerator
                    .iter()
                    .enumerate()
                    .map(|(j, &a)| {
                        let rest = d - j as i64;
                        if rest < 0 {
                            0
                        } else if e == 0 {
                            (rest == 0) as i128 * a as i128
                        } else {
                            a as i128 * binomial(rest + e - 1, e - 1) as i128
                        }
                    })
                    .sum()
            })
            .collect()
    }

    pub fn numerator_at_one(&self) -> i64 {
        self.numerator.iter().sum()
    }

    /// `Σ_{i,j} (−1)^i β_{i,j} t^j / (1 − t)^vars`.
    pub fn from_betti(table: &BettiTable, vars: usize) -> HilbertSeries {
        let top = table.entries().map(|(_, j, _)| j).max().unwrap_or(0);
        let mut numerator = vec![0i64; top + 1];
        for (i, j, b) in table.entries() {
            numerator[j] += if i % 2 == 0 { b as i64 } else { -(b as i64) };
        }
        HilbertSeries {
            numerator,
            denom_power: vars,
        }
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, &a) in self.numerator.iter().enumerate().filter(|(_, a)| **a != 0) {
            terms.push(match (j, a) {
                (0, a) => format!("{a}"),
                (1, 1) => "t".into(),
                (1, a) => format!("{a}t"),
                (j, 1) => format!("t^{j}"),
                (j, a) => format!("{a}t^{j}"),
            });
        }
        write!(f, "({})/(1-t)^{}", terms.join(" + "), self.denom_power)
    }
}

/// `Σ_{i=0}^k C(n−2k+i, i) t^i / (1 − t)^{2k}`.
pub fn hilbert_series(n: usize, k: usize) -> Result<HilbertSeries> {
    check_secant_range(n, k)?;
    let (n_, k_) = (n as i64, k as i64);
    Ok(HilbertSeries {
        numerator: (0..=k_).map(|i| numerator_coeff(n_, k_, i) as i64).collect(),
        denom_power: 2 * k,
    })
}

/// Whether the closed form agrees with the expansion of the Eagon–Northcott table in the first
/// `2n` coefficients.
pub fn hilbert_series_cross_check(n: usize, k: usize) -> Result<bool> {
    let closed = hilbert_series(n, k)?;
    let expanded = HilbertSeries::from_betti(&eagon_northcott_betti(n, k)?, n + 1);
    Ok(closed.coefficients(2 * n) == expanded.coefficients(2 * n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecantInvariants {
    pub n: usize,
    pub k: usize,
    pub dim_proj: usize,
    pub degree: u64,
    pub codim: usize,
    pub class_group_order: usize,
    pub ulrich_index: usize,
}

pub fn secant_invariants(n: usize, k: usize) -> Result<SecantInvariants> {
    check_secant_range(n, k)?;
    let (n_, k_) = (n as i64, k as i64);
    let degree = c(n_ - k_ + 1, k_);
    let monomials: u64 = (0..=k_).map(|i| numerator_coeff(n_, k_, i)).sum();
    if monomials != degree {
        return Err(Error::InvalidParameter(format!(
            "degree identity failed at n = {n}, k = {k}: {monomials} != {degree}"
        )));
    }
    Ok(SecantInvariants {
        n,
        k,
        dim_proj: 2 * k - 1,
        degree,
        codim: n + 1 - 2 * k,
        class_group_order: n + 2 - 2 * k,
        ulrich_index: n + 1 - 2 * k,
    })
}

/// One term `F_i = (dim) ⊗ S(−shift)` of a resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionTerm {
    pub i: usize,
    pub dim: u64,
    pub shift: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McmData {
    pub n: usize,
    pub k: usize,
    pub r: i64,
    /// Minimal number of generators of `M_r`.
    pub mu: u64,
    pub degree: u64,
    pub ulrich: bool,
    /// Present for `r = n−2k+1` and `r = −1`, generators in degree 0.
    pub resolution: Option<Vec<ResolutionTerm>>,
}

/// `F^{n−2k+1}_i = ∧^i(Sym^{n−k}U) ⊗ Sym^{n−2k+1−i}(D^k U) ⊗ S(−i)` and
/// `F^{−1}_i = ∧^{i+k}(Sym^{n−k}U) ⊗ D^i(Sym^k U) ⊗ S(−i)`, for `i = 0..=n−k+1`.
fn mcm_resolution(n: usize, k: usize, r: i64) -> Vec<ResolutionTerm> {
    let (n_, k_) = (n as i64, k as i64);
    (0..=n_ - k_ + 1)
        .map(|i| {
            let dim = if r == -1 {
                c(n_ - k_ + 1, i + k_) * c(i + k_, k_)
            } else {
                let e = n_ - 2 * k_ + 1 - i;
                if e < 0 {
                    0
                } else {
                    c(n_ - k_ + 1, i) * c(e + k_, k_)
                }
            };
            ResolutionTerm {
                i: i as usize,
                dim,
                shift: i as usize,
            }
        })
        .collect()
}

/// `μ(M_r) = C(r+k, k)` for `0 <= r <= n−2k+1`. `M_{−1}` is the dual of the Ulrich module
/// `M_{n−2k+1}` and is generated by `F^{−1}_0`, of dimension `C(n−k+1, k)`.
pub fn mcm_data(n: usize, k: usize, r: i64) -> Result<McmData> {
    let inv = secant_invariants(n, k)?;
    let top = (n + 1 - 2 * k) as i64;
    require(r >= -1 && r <= top, || format!("r must lie in -1..={top}, got {r}"))?;
    let resolution = (r == top || r == -1).then(|| mcm_resolution(n, k, r));
    let mu = if r == -1 {
        resolution.as_ref().unwrap()[0].dim
    } else {
        c(r + k as i64, k as i64)
    };
    Ok(McmData {
        n,
        k,
        r,
        mu,
        degree: inv.degree,
        ulrich: mu == inv.degree,
        resolution,
    })
}

/// Whether `F^{n−2k+1}_•` and `F^{−1}_•` have the same term dimensions.
pub fn selfdual_check(n: usize, k: usize) -> Result<bool> {
    let top = (n + 1 - 2 * k) as i64;
    Ok(mcm_data(n, k, top)?.resolution == mcm_data(n, k, -1)?.resolution)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralizedHermiteReport {
    pub n: usize,
    pub k: usize,
    pub i: usize,
    pub lhs: String,
    pub rhs: String,
    pub lhs_dim: u64,
    pub rhs_dim: u64,
    pub characters_equal: bool,
    pub passed: bool,
}

/// Compares `∧^i(Sym^{n−k}U) ⊗ Sym^{n−2k+1−i}(D^k U)` with `∧^{i+k}(Sym^{n−k}U) ⊗ D^i(Sym^k U)`
/// by dimension and character. A negative symmetric power is the zero space.
pub fn generalized_hermite_check(n: usize, k: usize, i: usize) -> Result<GeneralizedHermiteReport> {
    require(k <= n && i <= n - k + 1, || {
        format!("need k <= n and 0 <= i <= n-k+1, got n = {n}, k = {k}, i = {i}")
    })?;
    let wedge = |p: usize| SpaceExpr::wedge(p, SpaceExpr::sym_u(n - k));
    let e = (n + 1) as i64 - (2 * k + i) as i64;
    let lhs = (e >= 0).then(|| SpaceExpr::tensor(wedge(i), SpaceExpr::sym(e as usize, SpaceExpr::d_u(k))));
    let rhs = SpaceExpr::tensor(wedge(i + k), SpaceExpr::d(i, SpaceExpr::sym_u(k)));
    let lhs_char = lhs.as_ref().map(character).unwrap_or_else(CharPoly::zero);
    let rhs_char = character(&rhs);
    let lhs_dim = lhs.as_ref().map_or(0, |s| s.dim() as u64);
    let rhs_dim = rhs.dim() as u64;
    let characters_equal = lhs_char == rhs_char;
    Ok(GeneralizedHermiteReport {
        n,
        k,
        i,
        lhs: lhs.map_or("0".into(), |s| s.to_string()),
        rhs: rhs.to_string(),
        lhs_dim,
        rhs_dim,
        characters_equal,
        passed: characters_equal && lhs_dim == rhs_dim,
    })
}

/// Rank of the Hankel matrix at a point given by integer coordinates.
pub fn hankel_rank(n: usize, k: usize, z: &[i64], field: Field) -> Result<usize> {
    let point: Vec<Scalar> = z.iter().map(|&v| field.from_i64(v)).collect();
    Ok(hankel_matrix(n, k)?.evaluate(&point)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hankel_shapes() {
        let h = hankel_matrix(4, 1).unwrap();
        assert_eq!(h.entries, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]]);
        assert_eq!(hankel_matrix(3, 3).unwrap().entries, vec![vec![0, 1, 2, 3]]);
        assert_eq!(hankel_rank(4, 2, &[1, 0, 0, 0, 1], Field::Rational).unwrap(), 2);
    }

    #[test]
    fn en_examples() {
        assert_eq!(eagon_northcott_betti(4, 1).unwrap().to_string(), "(1; 6, 8, 3)");
        let t = eagon_northcott_betti(6, 2).unwrap();
        assert_eq!(t.to_string(), "(1; 10, 15, 6)");
        assert_eq!((t.get(1, 3), t.get(3, 5)), (10, 6));
        let edge = eagon_northcott_betti(5, 3).unwrap();
        assert_eq!(edge.to_string(), "(1)");
        let hyper = eagon_northcott_betti(6, 3).unwrap();
        assert_eq!(hyper.get(1, 4), 1);
        assert!(eagon_northcott_betti(4, 3).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let t = eagon_northcott_betti(7, 2).unwrap();
        assert_eq!(BettiTable::from_csv(&t.to_csv()).unwrap(), t);
    }

    #[test]
    fn series_examples() {
        assert_eq!(hilbert_series(4, 2).unwrap().to_string(), "(1 + t + t^2)/(1-t)^4");
        let s = hilbert_series(6, 2).unwrap();
        assert_eq!(s.numerator, vec![1, 3, 6]);
        assert_eq!(s.numerator_at_one(), 10);
        assert_eq!(hilbert_series(5, 1).unwrap().numerator, vec![1, 4]);
        assert_eq!(hilbert_series(3, 2).unwrap().to_string(), "(1)/(1-t)^4");
        assert!(hilbert_series_cross_check(6, 2).unwrap());
    }

    #[test]
    fn invariants_examples() {
        let s = secant_invariants(6, 2).unwrap();
        assert_eq!(
            (s.dim_proj, s.degree, s.class_group_order, s.ulrich_index),
            (3, 10, 4, 3)
        );
        assert_eq!(secant_invariants(3, 2).unwrap().degree, 1);
        let rnc = secant_invariants(7, 1).unwrap();
        assert_eq!((rnc.degree, rnc.class_group_order), (7, 7));
    }

    #[test]
    fn mcm_examples() {
        let u = mcm_data(6, 2, 3).unwrap();
        assert_eq!((u.mu, u.ulrich), (10, true));
        assert_eq!(mcm_data(6, 2, 0).unwrap().mu, 1);
        assert!(selfdual_check(6, 2).unwrap());
        assert!(mcm_data(6, 2, 4).is_err());
        assert!(mcm_data(6, 2, -2).is_err());
    }

    #[test]
    fn generalized_hermite_examples() {
        let r = generalized_hermite_check(6, 2, 1).unwrap();
        assert_eq!((r.lhs_dim, r.rhs_dim), (30, 30));
        assert!(r.passed);
        let r = generalized_hermite_check(8, 3, 2).unwrap();
        assert_eq!((r.lhs_dim, r.rhs_dim), (60, 60));
        assert!(r.passed);
    }
}
