//! The reciprocity isomorphisms `α`, `β`, `γ` as explicit matrices, the action `∗` of
//! `Sym(D^m U)` on `⊕_d ∧^m(Sym^d U)` and on `⊕_d D^m(Sym^d U)`, and checks of how they fit
//! together.
//!
//! `β` and `γ` are the inverses of multiplication from a fixed generator, `x^{m−1}∧⋯∧1` for the
//! exterior side and `1 ∈ D^m(Sym^0 U)` for the divided side. That fixes their normalization.

use serde::Serialize;

use crate::linalg::{ExactMatrix, Field, Scalar};
use crate::multilinear::{
    canonical_embed, character, divided_power, mult_map, sym_mult_map, wedge_power, Basis, Mode, SpaceExpr,
};
use crate::{require, Result};

/// `D^m U ⊗ T_d → T_{d+1}` where `T_d` is `∧^m(Sym^d U)` or `D^m(Sym^d U)`.
pub fn star_action(m: usize, d: usize, mode: Mode, field: Field) -> Result<ExactMatrix> {
    let u = SpaceExpr::U;
    let sd = SpaceExpr::sym_u(d);
    let mult = mult_map(1, d, field);
    let out = match mode {
        Mode::Wedge => {
            require(m <= d + 1, || {
                format!("wedge action needs m <= d + 1, got m = {m}, d = {d}")
            })?;
            wedge_power(m, &mult).compose(&canonical_embed(m, &u, &sd, mode, field)?)?
        }
        Mode::Divided => divided_power(m, &mult).compose(&canonical_embed(m, &u, &sd, mode, field)?)?,
    };
    Ok(out)
}

fn target_space(m: usize, d: usize, mode: Mode) -> SpaceExpr {
    match mode {
        Mode::Wedge => SpaceExpr::wedge(m, SpaceExpr::sym_u(d)),
        Mode::Divided => SpaceExpr::d(m, SpaceExpr::sym_u(d)),
    }
}

/// Degree of the generator: `m − 1` for the exterior side, `0` for the divided side.
fn base_degree(m: usize, mode: Mode) -> usize {
    match mode {
        Mode::Wedge => m - 1,
        Mode::Divided => 0,
    }
}

/// Action matrices for consecutive degrees, stored by column.
struct StarTower {
    m: usize,
    mode: Mode,
    field: Field,
    base: usize,
    levels: Vec<(usize, Columns)>,
}

type Columns = Vec<Vec<(usize, Scalar)>>;

impl StarTower {
    fn new(m: usize, mode: Mode, field: Field, base: usize) -> StarTower {
        StarTower {
            m,
            mode,
            field,
            base,
            levels: Vec::new(),
        }
    }

    /// Columns of the action in degree `base + j`, and the dimension of that degree.
    fn level(&mut self, j: usize) -> Result<&(usize, Columns)> {
        while self.levels.len() <= j {
            let d = self.base + self.levels.len();
            let s = star_action(self.m, d, self.mode, self.field)?;
            let dim = target_space(self.m, d, self.mode).dim();
            self.levels.push((dim, s.columns()));
        }
        Ok(&self.levels[j])
    }

    /// Applies `x^(k)` to a sparse vector sitting in degree `base + j`.
    fn act(&mut self, k: usize, j: usize, v: &[(usize, Scalar)]) -> Result<Vec<(usize, Scalar)>> {
        let (dim, cols) = self.level(j)?;
        let mut acc: std::collections::BTreeMap<usize, Scalar> = Default::default();
        for (i, c) in v {
            for (r, s) in &cols[k * dim + i] {
                let p = s.mul_same(c);
                acc.entry(*r).and_modify(|x| *x = x.add_same(&p)).or_insert(p);
            }
        }
        Ok(acc.into_iter().filter(|(_, s)| !s.is_zero()).collect())
    }

    /// Applies a monomial of `Sym(D^m U)`, one factor at a time in sorted order.
    fn act_monomial(&mut self, ks: &[usize], j: usize, v: Vec<(usize, Scalar)>) -> Result<Vec<(usize, Scalar)>> {
        let mut v = v;
        for (step, &k) in ks.iter().enumerate() {
            v = self.act(k, j + step, &v)?;
        }
        Ok(v)
    }
}

/// Multiplication from the generator, `Sym^e(D^m U) → ∧^m(Sym^{m−1+e} U)` or
/// `Sym^e(D^m U) → D^m(Sym^e U)`.
pub fn generator_map(m: usize, e: usize, mode: Mode, field: Field) -> Result<ExactMatrix> {
    if mode == Mode::Wedge {
        require(m >= 1, || "the exterior generator needs m >= 1".into())?;
    }
    let base = base_degree(m, mode);
    let source = SpaceExpr::sym(e, SpaceExpr::d_u(m));
    let target = target_space(m, base + e, mode);
    let sb = Basis::new(&source);
    let mut tower = StarTower::new(m, mode, field, base);
    let mut triples = Vec::new();
    for col in 0..sb.len() {
        // the generator spans the one-dimensional degree-`base` piece
        let v = tower.act_monomial(&sb.seq(col), 0, vec![(0, field.one())])?;
        triples.extend(v.into_iter().map(|(r, s)| (r, col, s)));
    }
    let mat = ExactMatrix::from_triples(target.dim(), sb.len(), field, triples)?;
    Ok(mat.with_labels(source, target)?)
}

/// Per-degree ranks of [`generator_map`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRank {
    pub d: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessCertificate {
    pub m: usize,
    pub mode: Mode,
    pub field: Field,
    pub degrees: Vec<DegreeRank>,
    pub passed: bool,
}

/// Checks that multiplication from the generator is bijective in every degree `d <= d_max`.
pub fn freeness_certificate(m: usize, d_max: usize, mode: Mode, field: Field) -> Result<FreenessCertificate> {
    require(m >= 1, || format!("freeness certificate needs m >= 1, got {m}"))?;
    let mut degrees = Vec::new();
    for d in 0..=d_max {
        let g = generator_map(m, d, mode, field)?;
        let rank = g.rank();
        degrees.push(DegreeRank {
            d,
            source_dim: g.cols(),
            target_dim: g.rows(),
            rank,
            bijective: rank == g.rows() && rank == g.cols(),
        });
    }
    let passed = degrees.iter().all(|d| d.bijective);
    Ok(FreenessCertificate {
        m,
        mode,
        field,
        degrees,
        passed,
    })
}

/// Inverts a generator map over `Q` and brings the result to `field`, by reduction when the
/// rational inverse is integral and by inverting mod `p` otherwise.
fn inverse_over(m: usize, e: usize, mode: Mode, field: Field) -> Result<ExactMatrix> {
    let inv_q = generator_map(m, e, mode, Field::Rational)?.inverse()?;
    match field {
        Field::Rational => Ok(inv_q),
        Field::Prime(p) => match inv_q.reduce_mod(p) {
            Ok(r) => Ok(r),
            Err(_) => Ok(generator_map(m, e, mode, field)?.inverse()?),
        },
    }
}

/// `β : ∧^m(Sym^n U) → Sym^{n−m+1}(D^m U)`. Accepts `n >= m − 1`; the case `n = m − 1` is the
/// identification of two trivial lines.
pub fn hermite_beta(m: usize, n: usize, field: Field) -> Result<ExactMatrix> {
    require(m >= 1 && n + 1 >= m, || {
        format!("beta needs 1 <= m <= n + 1, got m = {m}, n = {n}")
    })?;
    inverse_over(m, n + 1 - m, Mode::Wedge, field)
}

/// `γ : D^m(Sym^{n−m} U) → Sym^{n−m}(D^m U)`.
pub fn hermite_gamma(m: usize, n: usize, field: Field) -> Result<ExactMatrix> {
    require(m <= n, || format!("gamma needs 0 <= m <= n, got m = {m}, n = {n}"))?;
    inverse_over(m, n - m, Mode::Divided, field)
}

/// `α : D^m(Sym^{n−m} U) → ∧^m(Sym^{n−1} U)`, the canonical map
/// `D^m(Sym^{n−m}) ⊗ ∧^m(Sym^{m−1}) → ∧^m(Sym^{n−m} ⊗ Sym^{m−1})` followed by `∧^m` of
/// multiplication, evaluated on the generator of `∧^m(Sym^{m−1} U)`.
pub fn hermite_alpha(m: usize, n: usize, field: Field) -> Result<ExactMatrix> {
    require(m >= 1 && m <= n, || {
        format!("alpha needs 1 <= m <= n, got m = {m}, n = {n}")
    })?;
    let a = SpaceExpr::sym_u(n - m);
    let b = SpaceExpr::sym_u(m - 1);
    let embed = canonical_embed(m, &a, &b, Mode::Wedge, field)?;
    let mat = wedge_power(m, &mult_map(n - m, m - 1, field)).compose(&embed)?;
    // the wedge factor of the domain is one-dimensional
    Ok(mat
        .without_labels()
        .with_labels(SpaceExpr::d(m, a), SpaceExpr::wedge(m, SpaceExpr::sym_u(n - 1)))?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteMaps {
    pub m: usize,
    pub n: usize,
    pub alpha: ExactMatrix,
    pub beta: ExactMatrix,
    pub gamma: ExactMatrix,
}

pub fn hermite_maps(m: usize, n: usize, field: Field) -> Result<HermiteMaps> {
    Ok(HermiteMaps {
        m,
        n,
        alpha: hermite_alpha(m, n, field)?,
        beta: hermite_beta(m, n, field)?,
        gamma: hermite_gamma(m, n, field)?,
    })
}

/// Outcome of one matrix identity or property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// First offending entry `(row, col, lhs, rhs)` or a short reason.
    pub witness: Option<String>,
}

impl Check {
    fn new(name: &str, passed: bool, witness: Option<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            witness,
        }
    }

    fn equal(name: &str, lhs: &ExactMatrix, rhs: &ExactMatrix) -> Check {
        if (lhs.rows(), lhs.cols()) != (rhs.rows(), rhs.cols()) {
            return Check::new(
                name,
                false,
                Some(format!(
                    "shape {}x{} vs {}x{}",
                    lhs.rows(),
                    lhs.cols(),
                    rhs.rows(),
                    rhs.cols()
                )),
            );
        }
        match lhs.first_difference(rhs) {
            None => Check::new(name, true, None),
            Some((r, c, a, b)) => Check::new(name, false, Some(format!("({r}, {c}): {a} vs {b}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub m: usize,
    pub n: usize,
    pub field: Field,
    pub checks: Vec<Check>,
    /// Determinants of `α`, `β(m, n)`, `γ` over the working field.
    pub determinants: Vec<(String, String)>,
    pub passed: bool,
}

fn invertibility(name: &str, f: &ExactMatrix) -> Check {
    let ok = f.is_square() && f.rank() == f.rows();
    Check::new(
        name,
        ok,
        (!ok).then(|| format!("{}x{} of rank {}", f.rows(), f.cols(), f.rank())),
    )
}

fn same_character(name: &str, f: &ExactMatrix) -> Check {
    let ok = match (f.domain(), f.codomain()) {
        (Some(d), Some(c)) => character(d) == character(c),
        _ => false,
    };
    Check::new(name, ok, None)
}

/// The triangle `β(m, n−1) ∘ α(m, n) = γ(m, n)`, the square
/// `β(m, n+1) ∘ ∗ = (Sym multiplication) ∘ (id ⊗ β(m, n))`, invertibility of `α, β, γ` and
/// equality of characters on both sides of each.
pub fn verify_compatibilities(m: usize, n: usize, field: Field) -> Result<CompatibilityReport> {
    require(m >= 1 && m <= n, || {
        format!("compatibilities need 1 <= m <= n, got m = {m}, n = {n}")
    })?;
    let maps = hermite_maps(m, n, field)?;
    let mut checks = Vec::new();

    let beta_prev = hermite_beta(m, n - 1, field)?;
    let tri = beta_prev.compose(&maps.alpha)?;
    checks.push(Check::equal(
        "triangle beta(m,n-1)∘alpha(m,n) = gamma(m,n)",
        &tri,
        &maps.gamma,
    ));

    let star = star_action(m, n, Mode::Wedge, field)?;
    let lhs = hermite_beta(m, n + 1, field)?.compose(&star)?;
    let dm = SpaceExpr::d_u(m);
    let id = ExactMatrix::identity_on(&dm, field);
    let rhs = sym_mult_map(&dm, 1, n - m + 1, field).compose(&id.kronecker(&maps.beta)?)?;
    checks.push(Check::equal(
        "square beta(m,n+1)∘star = mult∘(id⊗beta(m,n))",
        &lhs,
        &rhs,
    ));

    checks.push(invertibility("alpha invertible", &maps.alpha));
    checks.push(invertibility("beta invertible", &maps.beta));
    checks.push(invertibility("gamma invertible", &maps.gamma));
    checks.push(same_character("alpha characters agree", &maps.alpha));
    checks.push(same_character("beta characters agree", &maps.beta));
    checks.push(same_character("gamma characters agree", &maps.gamma));

    let det = |f: &ExactMatrix| f.determinant().map(|d| d.to_string()).unwrap_or_else(|e| e.to_string());
    let determinants = vec![
        ("alpha".to_string(), det(&maps.alpha)),
        ("beta".to_string(), det(&maps.beta)),
        ("gamma".to_string(), det(&maps.gamma)),
    ];
    let passed = checks.iter().all(|c| c.passed);
    Ok(CompatibilityReport {
        m,
        n,
        field,
        checks,
        determinants,
        passed,
    })
}

/// Whether `x^(k) ∗ (x^(l) ∗ w) = x^(l) ∗ (x^(k) ∗ w)` for all `k, l` and all `w` of degree
/// `d`. Together with the generator description this makes the iterated action a module
/// structure over `Sym(D^m U)`.
pub fn star_commutes(m: usize, d: usize, mode: Mode, field: Field) -> Result<bool> {
    let first = star_action(m, d, mode, field)?;
    let second = star_action(m, d + 1, mode, field)?;
    let dm = SpaceExpr::d_u(m);
    let id = ExactMatrix::identity_on(&dm, field);
    // D^m ⊗ D^m ⊗ T_d → T_{d+2}
    let both = second.compose(&id.kronecker(&first)?)?;
    let td = first.cols() / (m + 1);
    let k = m + 1;
    let swap = ExactMatrix::from_integer_triples(
        k * k * td,
        k * k * td,
        field,
        (0..k).flat_map(|a| {
            (0..k).flat_map(move |b| (0..td).map(move |w| ((b * k + a) * td + w, (a * k + b) * td + w, 1)))
        }),
    )?;
    let both = both.without_labels();
    let swapped = both.clone().compose(&swap)?;
    Ok(swapped == both)
}

/// Acts by monomials `f` then `g` and compares with acting by `g·f`, for every pair of
/// monomials of degree at most `max_deg` and every basis vector of degree `d`.
pub fn star_associative(m: usize, d: usize, max_deg: usize, mode: Mode, field: Field) -> Result<bool> {
    let base = base_degree(m, mode).min(d);
    let mut tower = StarTower::new(m, mode, field, base);
    let j0 = d - base;
    let dim = target_space(m, d, mode).dim();
    for a in 0..=max_deg {
        for b in 0..=max_deg {
            let fa = crate::multilinear::combin::multisets(m + 1, a);
            let gb = crate::multilinear::combin::multisets(m + 1, b);
            for f in &fa {
                for g in &gb {
                    let prod = crate::multilinear::combin::merge_sorted(f, g);
                    for w in 0..dim {
                        let start = vec![(w, field.one())];
                        let step = tower.act_monomial(f, j0, start.clone())?;
                        let lhs = tower.act_monomial(g, j0 + a, step)?;
                        let rhs = tower.act_monomial(&prod, j0, start)?;
                        if lhs != rhs {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn col(m: &ExactMatrix, c: usize) -> Vec<(usize, i64)> {
        m.column(c).into_iter().map(|(r, s)| (r, s.to_i64().unwrap())).collect()
    }

    #[test]
    fn star_examples() {
        let s = star_action(2, 1, Mode::Wedge, Q).unwrap();
        // columns (k, x∧1) with ∧^2 Sym^1 one-dimensional; rows x∧1, x²∧1, x²∧x
        assert_eq!(col(&s, 1), vec![(1, 1)]);
        assert_eq!(col(&s, 2), vec![(2, 1)]);
        assert_eq!(col(&s, 0), vec![(0, 1)]);
        for d in 0..4 {
            for mode in [Mode::Wedge, Mode::Divided] {
                let s1 = star_action(1, d, mode, Q).unwrap();
                assert_eq!(s1.without_labels(), mult_map(1, d, Q).without_labels());
            }
        }
        assert!(star_action(3, 1, Mode::Wedge, Q).is_err());
    }

    #[test]
    fn freeness_small() {
        let c = freeness_certificate(2, 3, Mode::Wedge, Q).unwrap();
        assert!(c.passed);
        assert_eq!(c.degrees[1].rank, 3);
        let c = freeness_certificate(1, 4, Mode::Divided, Q).unwrap();
        assert!(c.passed);
    }

    #[test]
    fn beta_22_is_a_permutation() {
        let b = hermite_beta(2, 2, Q).unwrap();
        assert_eq!(b.without_labels(), ExactMatrix::identity(3, Q));
    }

    #[test]
    fn gamma_trivial_case() {
        for m in 0..4 {
            let g = hermite_gamma(m, m, Q).unwrap();
            assert_eq!(g.without_labels(), ExactMatrix::identity(1, Q));
        }
    }

    #[test]
    fn alpha_23() {
        let a = hermite_alpha(2, 3, Q).unwrap();
        // e0 ↦ x∧1, e1 ↦ x²∧1, e2 ↦ x²∧x
        assert_eq!(a.without_labels(), ExactMatrix::identity(3, Q));
    }

    #[test]
    fn compatibilities_small() {
        for (m, n) in [(1, 1), (1, 4), (2, 3), (3, 5)] {
            let r = verify_compatibilities(m, n, Q).unwrap();
            assert!(r.passed, "{m} {n}: {:?}", r.checks);
        }
        for p in [2, 3] {
            let r = verify_compatibilities(3, 5, Field::Prime(p)).unwrap();
            assert!(r.passed, "p = {p}: {:?}", r.checks);
        }
    }

    #[test]
    fn action_commutes() {
        for m in 1..=3 {
            for mode in [Mode::Wedge, Mode::Divided] {
                let d0 = base_degree(m, mode);
                assert!(star_commutes(m, d0, mode, Q).unwrap());
                assert!(star_associative(m, d0, 2, mode, Q).unwrap());
            }
        }
    }
}
