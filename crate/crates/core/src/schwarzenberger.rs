//! Cohomology tables of line bundles on `P^k` and `P^p × P^q`, of twisted exterior powers of
//! the Schwarzenberger bundles `E^m_d`, and `h^0` of twisted symmetric powers of `E^k_{n−k}`
//! through its Koszul-type resolution.
//!
//! `E^m_d` lives on `P^m = P(Sym^m U)`, the cokernel of `Sym^d U(−1) → Sym^{d+m} U ⊗ O` given by
//! multiplication with the binary form of the point. `∧^i E^m_d` is the pushforward of
//! `O(d+m−i+1, 0)` along `P^i × P^{m−i} → P^m`, and `μ^* O(1) = O(1, 1)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::linalg::{ExactMatrix, Field};
use crate::multilinear::combin::{binomial, decreasing_tuples, multisets};
use crate::{require, Error, Result};

fn count(n: i64, k: i64) -> u64 {
    u64::try_from(binomial(n, k)).expect("cohomology dimension exceeds u64")
}

/// `h^j(P^k, O(d))` for `j = 0..=k`. A point (`k = 0`) has `h^0 = 1` in every twist.
fn line_table(k: usize, d: i64) -> Vec<u64> {
    let k_ = k as i64;
    let mut out = vec![0; k + 1];
    if k == 0 {
        out[0] = 1;
        return out;
    }
    if d >= 0 {
        out[0] = count(d + k_, k_);
    }
    if d < -k_ {
        out[k] = count(-d - 1, k_);
    }
    out
}

/// `(h^0, h^k)` of `O(d)` on `P^k`; the intermediate groups vanish.
pub fn line_cohomology(k: usize, d: i64) -> Result<(u64, u64)> {
    require(k >= 1, || format!("line cohomology needs k >= 1, got {k}"))?;
    let t = line_table(k, d);
    Ok((t[0], t[k]))
}

/// `h^j(P^p × P^q, O(a, b))` for `j = 0..=p+q`, by Künneth.
pub fn product_cohomology(p: usize, q: usize, a: i64, b: i64) -> BTreeMap<usize, u64> {
    let x = line_table(p, a);
    let y = line_table(q, b);
    let mut out: BTreeMap<usize, u64> = (0..=p + q).map(|j| (j, 0)).collect();
    for (j1, h1) in x.iter().enumerate() {
        for (j2, h2) in y.iter().enumerate() {
            *out.get_mut(&(j1 + j2)).unwrap() += h1 * h2;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohTable {
    pub m: usize,
    pub d: usize,
    pub i: usize,
    pub t: i64,
    /// `j ↦ h^j` for every `0 <= j <= m`.
    pub values: BTreeMap<usize, u64>,
}

impl CohTable {
    pub fn is_zero(&self) -> bool {
        self.values.values().all(|&h| h == 0)
    }

    pub fn nonzero_rows(&self) -> Vec<usize> {
        self.values.iter().filter(|(_, &h)| h != 0).map(|(&j, _)| j).collect()
    }

    pub fn euler_characteristic(&self) -> i128 {
        self.values
            .iter()
            .map(|(&j, &h)| if j % 2 == 0 { h as i128 } else { -(h as i128) })
            .sum()
    }
}

/// Cohomology of `∧^i E^m_d ⊗ O(t)` on `P^m`.
pub fn wedge_e_cohomology(m: usize, d: usize, i: usize, t: i64) -> Result<CohTable> {
    require(i <= m, || format!("need 0 <= i <= m, got i = {i}, m = {m}"))?;
    let a = (d + m - i + 1) as i64 + t;
    Ok(CohTable {
        m,
        d,
        i,
        t,
        values: product_cohomology(i, m - i, a, t),
    })
}

/// Twists at which `∧^i E^m_d` has no cohomology, in decreasing order.
pub fn root_sequence(m: usize, d: usize, i: usize) -> Result<Vec<i64>> {
    require(i <= m, || format!("need 0 <= i <= m, got i = {i}, m = {m}"))?;
    let (m, d, i) = (m as i64, d as i64, i as i64);
    let mut out: Vec<i64> = (1..=m - i).map(|r| -r).collect();
    out.extend((m - i + d + 2..=m + d + 1).map(|r| -r));
    Ok(out)
}

/// The twist window checked by [`supernatural_check`].
pub fn twist_window(m: usize, d: usize) -> std::ops::RangeInclusive<i64> {
    -((m + d + 2) as i64)..=2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupernaturalReport {
    pub m: usize,
    pub d: usize,
    pub i: usize,
    pub roots: Vec<i64>,
    /// Twists with no cohomology, in decreasing order.
    pub observed_roots: Vec<i64>,
    /// Twists with more than one nonzero row.
    pub mixed_twists: Vec<i64>,
    /// Whether `t ↦ χ(∧^i E(t))` is a polynomial of degree `m` vanishing at the roots.
    pub euler_polynomial_ok: bool,
    pub passed: bool,
}

/// Lagrange interpolation through `(x_j, y_j)`, coefficients in increasing degree.
fn interpolate(points: &[(i64, i128)]) -> Vec<BigRational> {
    let n = points.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for (j, &(xj, yj)) in points.iter().enumerate() {
        // basis polynomial Π_{l≠j} (x − x_l) / (x_j − x_l)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (l, &(xl, _)) in points.iter().enumerate() {
            if l == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (e, c) in basis.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= c * BigRational::from_integer(BigInt::from(xl));
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xj - xl));
        }
        let scale = BigRational::from_integer(BigInt::from(yj)) / denom;
        for (e, c) in basis.into_iter().enumerate() {
            coeffs[e] += c * &scale;
        }
    }
    coeffs
}

fn evaluate(coeffs: &[BigRational], x: i64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(x));
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

/// Coefficients of `t ↦ χ(∧^i E^m_d(t))`, interpolated at `t = 0..=m`.
pub fn euler_polynomial(m: usize, d: usize, i: usize) -> Result<Vec<BigRational>> {
    let points = (0..=m as i64)
        .map(|t| Ok((t, wedge_e_cohomology(m, d, i, t)?.euler_characteristic())))
        .collect::<Result<Vec<_>>>()?;
    Ok(interpolate(&points))
}

/// Compares the cohomology tables over [`twist_window`] against [`root_sequence`].
pub fn supernatural_check(m: usize, d: usize, i: usize) -> Result<SupernaturalReport> {
    let roots = root_sequence(m, d, i)?;
    let mut observed_roots = Vec::new();
    let mut mixed_twists = Vec::new();
    let poly = euler_polynomial(m, d, i)?;
    let mut euler_ok = poly.last().is_some_and(|c| !c.is_zero());
    for t in twist_window(m, d).rev() {
        let table = wedge_e_cohomology(m, d, i, t)?;
        if table.is_zero() {
            observed_roots.push(t);
        }
        if table.nonzero_rows().len() > 1 {
            mixed_twists.push(t);
        }
        if evaluate(&poly, t) != BigRational::from_integer(BigInt::from(table.euler_characteristic())) {
            euler_ok = false;
        }
    }
    euler_ok &= roots.iter().all(|&r| evaluate(&poly, r).is_zero());
    let passed = observed_roots == roots && mixed_twists.is_empty() && euler_ok;
    Ok(SupernaturalReport {
        m,
        d,
        i,
        roots,
        observed_roots,
        mixed_twists,
        euler_polynomial_ok: euler_ok,
        passed,
    })
}

/// Which cohomology row of the resolution `G_•(t)` of `Sym^N E ⊗ O(t)` survives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    /// No term has cohomology.
    Empty,
    /// Only `H^0` of the terms.
    Bottom,
    /// Only `H^k` of the terms.
    Top,
}

/// Range of nonzero terms `G_i = ∧^i(Sym^{n−k} U) ⊗ Sym^{N−i}(Sym^n U) ⊗ O(−i)`.
fn resolution_length(k: usize, n: usize, big_n: usize) -> usize {
    big_n.min(n - k + 1)
}

/// Decides the window, or rejects a twist where both rows survive.
pub fn twist_window_kind(k: usize, n: usize, big_n: usize, t: i64) -> Result<Window> {
    require(k >= 1 && n >= k, || format!("need n >= k >= 1, got k = {k}, n = {n}"))?;
    let len = resolution_length(k, n, big_n) as i64;
    let bottom = (0..=len).any(|i| t - i >= 0);
    let top = (0..=len).any(|i| t - i < -(k as i64));
    match (bottom, top) {
        (true, true) => Err(Error::UnsupportedTwistWindow(format!(
            "k = {k}, n = {n}, N = {big_n}, t = {t}: both H^0 and H^{k} rows of the resolution survive"
        ))),
        (true, false) => Ok(Window::Bottom),
        (false, true) => Ok(Window::Top),
        (false, false) => Ok(Window::Empty),
    }
}

/// Exponent vectors indexing `H^0(O(s))` (entries `>= 0`, sum `s`) or `H^k(O(s))` (entries
/// `>= 1`, sum `−s`) on `P^k`.
fn y_monomials(k: usize, s: i64, window: Window) -> Vec<Vec<i64>> {
    let (total, floor) = match window {
        Window::Bottom => (s, 0),
        Window::Top => (-s, 1),
        Window::Empty => return Vec::new(),
    };
    let spare = total - floor * (k as i64 + 1);
    if spare < 0 {
        return Vec::new();
    }
    multisets(k + 1, spare as usize)
        .into_iter()
        .map(|ms| {
            let mut e = vec![floor; k + 1];
            for j in ms {
                e[j] += 1;
            }
            e
        })
        .collect()
}

/// Wedge factor, symmetric factor, exponent vector of the line bundle section.
type Cell = (Vec<usize>, Vec<usize>, Vec<i64>);

struct ResolutionTerm {
    index: HashMap<Cell, usize>,
    basis: Vec<Cell>,
}

fn resolution_term(k: usize, n: usize, big_n: usize, t: i64, i: usize, window: Window) -> ResolutionTerm {
    let mut basis = Vec::new();
    if i <= resolution_length(k, n, big_n) {
        let ys = y_monomials(k, t - i as i64, window);
        for w in decreasing_tuples(n - k + 1, i) {
            for s in multisets(n + 1, big_n - i) {
                for y in &ys {
                    basis.push((w.clone(), s.clone(), y.clone()));
                }
            }
        }
    }
    let index = basis.iter().cloned().enumerate().map(|(j, b)| (b, j)).collect();
    ResolutionTerm { index, basis }
}

/// The Koszul differential `H^j(G_i(t)) → H^j(G_{i−1}(t))`:
/// `a_1∧⋯∧a_i ⊗ s ⊗ f ↦ Σ_p (−1)^p a_1∧⋯â_p⋯∧a_i ⊗ Σ_b z_{a_p+b} s ⊗ y_b f`.
fn resolution_differential(
    source: &ResolutionTerm,
    target: &ResolutionTerm,
    k: usize,
    window: Window,
) -> Result<ExactMatrix> {
    let mut triples = Vec::new();
    for (col, (w, s, y)) in source.basis.iter().enumerate() {
        for (p, &a) in w.iter().enumerate() {
            let sign = if p % 2 == 0 { 1 } else { -1 };
            let mut rest = w.clone();
            rest.remove(p);
            for b in 0..=k {
                let mut y2 = y.clone();
                match window {
                    Window::Bottom => y2[b] += 1,
                    Window::Top if y2[b] >= 2 => y2[b] -= 1,
                    _ => continue,
                }
                let mut s2 = s.clone();
                let pos = s2.partition_point(|&c| c <= a + b);
                s2.insert(pos, a + b);
                if let Some(&row) = target.index.get(&(rest.clone(), s2, y2)) {
                    triples.push((row, col, sign));
                }
            }
        }
    }
    Ok(ExactMatrix::from_integer_triples(
        target.basis.len(),
        source.basis.len(),
        Field::Rational,
        triples,
    )?)
}

/// `h^0(P^k, Sym^N E^k_{n−k} ⊗ O(t))` from the twisted resolution `G_•(t)`. In the `H^0` window
/// this is the cokernel of `H^0(G_1) → H^0(G_0)`; in the `H^k` window it is the homology at
/// `H^k(G_k)`.
pub fn h0_sym_power_twist(k: usize, n: usize, big_n: usize, t: i64) -> Result<u64> {
    let window = twist_window_kind(k, n, big_n, t)?;
    let at = match window {
        Window::Empty => return Ok(0),
        Window::Bottom => 0,
        Window::Top => k,
    };
    let term = |i: usize| resolution_term(k, n, big_n, t, i, window);
    let mid = term(at);
    let dim = mid.basis.len();
    let out_rank = if at == 0 {
        0
    } else {
        resolution_differential(&mid, &term(at - 1), k, window)?.rank()
    };
    let in_rank = resolution_differential(&term(at + 1), &mid, k, window)?.rank();
    Ok((dim - out_rank - in_rank) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_examples() {
        assert_eq!(line_cohomology(2, 3).unwrap(), (10, 0));
        assert_eq!(line_cohomology(2, -3).unwrap(), (0, 1));
        assert_eq!(line_cohomology(1, -1).unwrap(), (0, 0));
        assert!(line_cohomology(0, 1).is_err());
    }

    #[test]
    fn product_examples() {
        assert_eq!(product_cohomology(1, 1, 3, 0)[&0], 4);
        assert_eq!(product_cohomology(1, 1, 1, -2)[&1], 2);
        for b in -6..6 {
            assert!(product_cohomology(1, 1, -1, b).values().all(|&h| h == 0));
        }
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge_e_cohomology(2, 1, 1, 0).unwrap().values[&0], 4);
        assert!(wedge_e_cohomology(2, 1, 1, -1).unwrap().is_zero());
        assert_eq!(wedge_e_cohomology(2, 1, 1, -5).unwrap().values[&2], 4);
        assert!(wedge_e_cohomology(2, 1, 3, 0).is_err());
    }

    #[test]
    fn roots() {
        assert_eq!(root_sequence(3, 2, 1).unwrap(), vec![-1, -2, -6]);
        assert_eq!(root_sequence(2, 1, 2).unwrap(), vec![-3, -4]);
        assert_eq!(root_sequence(2, 1, 0).unwrap(), vec![-1, -2]);
        assert!(supernatural_check(3, 2, 1).unwrap().passed);
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let pts: Vec<(i64, i128)> = (0..4).map(|x| (x, (x * x * x - 2 * x + 5) as i128)).collect();
        let c = interpolate(&pts);
        for x in -3..6 {
            assert_eq!(
                evaluate(&c, x),
                BigRational::from_integer(BigInt::from(x * x * x - 2 * x + 5))
            );
        }
    }

    #[test]
    fn sym_power_examples() {
        assert_eq!(h0_sym_power_twist(2, 4, 2, -2).unwrap(), 1);
        assert_eq!(h0_sym_power_twist(1, 2, 1, -2).unwrap(), 1);
        assert_eq!(h0_sym_power_twist(2, 5, 2, -3).unwrap(), 1);
        // E^1_{n−1} = O(n) on P^1
        for n in 1..5 {
            for big_n in 0..3 {
                for t in -3..3i64 {
                    let deg = (n * big_n) as i64 + t;
                    let expect = if deg >= 0 { deg as u64 + 1 } else { 0 };
                    match h0_sym_power_twist(1, n, big_n, t) {
                        Ok(h) => assert_eq!(h, expect, "n={n} N={big_n} t={t}"),
                        Err(Error::UnsupportedTwistWindow(_)) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_window_rejected() {
        assert!(matches!(
            h0_sym_power_twist(1, 3, 2, 0),
            Err(Error::UnsupportedTwistWindow(_))
        ));
    }
}
