//! Three-term complexes over `S̃ = Sym(D^{i+1} U)` and over
//! `S̃ = Sym(D^{u+1} U ⊕ D^{v+1} U)` whose middle homology is a (bigraded) Weyman module, the
//! vanishing checks built on them, and closed-form Tor dimensions.
//!
//! Graded pieces of `Sym(X)` use sorted multisets of basis positions of `X`, as in
//! [`crate::multilinear::Basis`]. All matrices have integer entries and are built directly in the
//! requested field.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::linalg::{ExactMatrix, Field};
use crate::multilinear::combin::{binomial, insert_sorted, multisets};
use crate::multilinear::d_product_coeff;
use crate::{require, Result};

/// One free module of a complex in a fixed (bi)degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Layer {
    pub description: String,
    pub dim: usize,
}

/// `first → middle → last` in a single (bi)degree, with `d1` and `d2` in column convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeymanComplex {
    pub params: String,
    pub field: Field,
    pub layers: [Layer; 3],
    pub d1: ExactMatrix,
    pub d2: ExactMatrix,
}

impl WeymanComplex {
    pub fn composite_is_zero(&self) -> bool {
        self.d2.compose(&self.d1).map(|m| m.is_zero()).unwrap_or(false)
    }

    /// `dim ker d2 − rank d1`.
    pub fn middle_homology(&self) -> usize {
        self.layers[1].dim - self.d2.rank() - self.d1.rank()
    }
}

/// Multisets of a given size with their positions; empty for negative sizes.
struct Graded {
    basis: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Graded {
    fn new(items: usize, degree: i64) -> Graded {
        let basis = if degree < 0 {
            Vec::new()
        } else {
            multisets(items, degree as usize)
        };
        let index = basis.iter().cloned().enumerate().map(|(j, m)| (m, j)).collect();
        Graded { basis, index }
    }

    fn len(&self) -> usize {
        self.basis.len()
    }

    fn times(&self, m: &[usize], x: usize) -> usize {
        self.index[&insert_sorted(m, x)]
    }
}

/// `D^p U ⊗ D^q U → D^{p+q} U` on basis elements, as (coefficient, index).
fn dmul(p: usize, a: usize, q: usize, b: usize) -> (i64, usize) {
    let (c, idx) = d_product_coeff(p, a, q, b);
    (c as i64, idx)
}

/// Comultiplication `x^(k) ↦ Σ x^(k1) ⊗ x^(k2)` of `D^{b+c}` into `D^b ⊗ D^c`.
fn comult(k: usize, b: usize, c: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=b.min(k))
        .filter(move |&k1| k - k1 <= c)
        .map(move |k1| (k1, k - k1))
}

/// `D^{p+q} U → D^{p+1} U ⊗ D^{q+1} U`: comultiplication into `D^p ⊗ D^q`, then the invariant
/// `1 ⊗ x − x ⊗ 1` multiplied into the two factors. Entries keyed by `(a, b)` positions.
fn skew_embedding(p: usize, q: usize, w: usize) -> BTreeMap<(usize, usize), i64> {
    let mut el = BTreeMap::new();
    for (k1, k2) in comult(w, p, q) {
        let (c1, a1) = dmul(p, k1, 1, 0);
        let (c2, a2) = dmul(q, k2, 1, 1);
        *el.entry((a1, a2)).or_insert(0) += c1 * c2;
        let (c1, a1) = dmul(p, k1, 1, 1);
        let (c2, a2) = dmul(q, k2, 1, 0);
        *el.entry((a1, a2)).or_insert(0) -= c1 * c2;
    }
    el.retain(|_, c| *c != 0);
    el
}

/// The slice `D^{2i}U ⊗ S̃_{d−2} → D^{i+1}U ⊗ S̃_{d−1} → S̃_d` with `S̃ = Sym(D^{i+1} U)`.
pub fn weyman_complex(i: usize, d: usize, field: Field) -> Result<WeymanComplex> {
    require(i >= 1, || format!("need i >= 1, got {i}"))?;
    let vars = i + 2;
    let d = d as i64;
    let (s0, s1, s2) = (Graded::new(vars, d - 2), Graded::new(vars, d - 1), Graded::new(vars, d));

    let mut t2 = Vec::new();
    for a in 0..vars {
        for (j, m) in s1.basis.iter().enumerate() {
            t2.push((s2.times(m, a), a * s1.len() + j, 1));
        }
    }
    let mut t1 = Vec::new();
    for w in 0..=2 * i {
        let el = skew_embedding(i, i, w);
        for (j, m) in s0.basis.iter().enumerate() {
            for (&(a, b), &c) in &el {
                t1.push((a * s1.len() + s1.times(m, b), w * s0.len() + j, c));
            }
        }
    }
    let dims = [(2 * i + 1) * s0.len(), vars * s1.len(), s2.len()];
    let layer = |desc: String, dim: usize| Layer { description: desc, dim };
    Ok(WeymanComplex {
        params: format!("i={i},d={d}"),
        field,
        layers: [
            layer(format!("D^{}U ⊗ S~_{}", 2 * i, d - 2), dims[0]),
            layer(format!("D^{}U ⊗ S~_{}", i + 1, d - 1), dims[1]),
            layer(format!("S~_{d}"), dims[2]),
        ],
        d1: ExactMatrix::from_integer_triples(dims[1], dims[0], field, t1)?,
        d2: ExactMatrix::from_integer_triples(dims[2], dims[1], field, t2)?,
    })
}

/// Dimension of the Weyman module `W^{(i+1)}` in degree `d`.
pub fn weyman_dim(i: usize, d: usize, field: Field) -> Result<usize> {
    Ok(weyman_complex(i, d, field)?.middle_homology())
}

/// Degree of `W^{(i+1)}` whose vanishing is equivalent to surjectivity in genus `g`:
/// the target degree `g − i` of the slice whose source sits over `S̃_{g−2−i}`.
pub fn green_degree(g: usize, i: usize) -> usize {
    g - i
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenEntry {
    pub i: usize,
    pub degree: usize,
    pub weyman_dim: usize,
    pub source_dim: u64,
    pub target_dim: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenReport {
    pub g: usize,
    pub field: Field,
    pub entries: Vec<GreenEntry>,
    pub passed: bool,
}

fn c(n: i64, k: i64) -> u64 {
    u64::try_from(binomial(n, k)).expect("binomial exceeds u64")
}

/// Vanishing of `W^{(i+1)}` in degree [`green_degree`] for every `1 <= i <= ⌊(g−1)/2⌋`.
pub fn green_check(g: usize, field: Field) -> Result<GreenReport> {
    require(g >= 3, || format!("need g >= 3, got {g}"))?;
    let profile = tor_profiles(g, None)?;
    let mut entries = Vec::new();
    for i in 1..=(g - 1) / 2 {
        let degree = green_degree(g, i);
        let w = weyman_dim(i, degree, field)?;
        entries.push(GreenEntry {
            i,
            degree,
            weyman_dim: w,
            source_dim: profile.entries[i].source,
            target_dim: profile.entries[i].target,
            passed: w == 0,
        });
    }
    let passed = entries.iter().all(|e| e.passed);
    Ok(GreenReport {
        g,
        field,
        entries,
        passed,
    })
}

/// First layer of the bigraded complex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QPolicy {
    /// `D^{u+v+2} U` by comultiplication.
    #[default]
    Transparent,
    /// `D^{u+v+2} U ⊕ D^{u+v} U`, the second summand through the invariant of `U ⊗ U`.
    Full,
}

impl std::str::FromStr for QPolicy {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<QPolicy> {
        match s {
            "transparent" => Ok(QPolicy::Transparent),
            "full" => Ok(QPolicy::Full),
            other => Err(crate::Error::InvalidParameter(format!("unknown q policy {other:?}"))),
        }
    }
}

/// Bigraded pieces `Sym^{e1}(D^{u+1}) ⊗ Sym^{e2}(D^{v+1})` as pairs of multisets.
struct Bigraded {
    left: Graded,
    right: Graded,
}

impl Bigraded {
    fn new(u: usize, v: usize, e1: i64, e2: i64) -> Bigraded {
        let (left, right) = if e1 < 0 || e2 < 0 {
            (Graded::new(u + 2, -1), Graded::new(v + 2, -1))
        } else {
            (Graded::new(u + 2, e1), Graded::new(v + 2, e2))
        };
        Bigraded { left, right }
    }

    fn len(&self) -> usize {
        self.left.len() * self.right.len()
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.left.len()).flat_map(move |x| (0..self.right.len()).map(move |y| (x, y)))
    }

    fn pos(&self, x: usize, y: usize) -> usize {
        x * self.right.len() + y
    }
}

/// `Q ⊗ S̃(−1,−1) → D^{u+1}U ⊗ S̃(−1,0) ⊕ D^{v+1}U ⊗ S̃(0,−1) → S̃` at bidegree `(d1, d2)`,
/// with `w ↦ Σ a ⊗ b·f ⊕ −Σ b ⊗ a·f` for `w ↦ Σ a ⊗ b` in `D^{u+1} ⊗ D^{v+1}`.
pub fn bigraded_complex(
    u: usize,
    v: usize,
    d1: usize,
    d2: usize,
    field: Field,
    policy: QPolicy,
) -> Result<WeymanComplex> {
    let (v1, v2) = (u + 2, v + 2);
    let (e1, e2) = (d1 as i64, d2 as i64);
    let src = Bigraded::new(u, v, e1 - 1, e2 - 1);
    let m1 = Bigraded::new(u, v, e1 - 1, e2);
    let m2 = Bigraded::new(u, v, e1, e2 - 1);
    let tgt = Bigraded::new(u, v, e1, e2);
    let off = v1 * m1.len();

    let mut t2 = Vec::new();
    for a in 0..v1 {
        for (x, y) in m1.pairs() {
            let xa = tgt.left.times(&m1.left.basis[x], a);
            t2.push((tgt.pos(xa, y), a * m1.len() + m1.pos(x, y), 1));
        }
    }
    for b in 0..v2 {
        for (x, y) in m2.pairs() {
            let yb = tgt.right.times(&m2.right.basis[y], b);
            t2.push((tgt.pos(x, yb), off + b * m2.len() + m2.pos(x, y), 1));
        }
    }

    let mut generators: Vec<BTreeMap<(usize, usize), i64>> = (0..=u + v + 2)
        .map(|w| comult(w, u + 1, v + 1).map(|ab| (ab, 1)).collect())
        .collect();
    if policy == QPolicy::Full {
        generators.extend((0..=u + v).map(|w| skew_embedding(u, v, w)));
    }
    let mut t1 = Vec::new();
    for (g, el) in generators.iter().enumerate() {
        for (x, y) in src.pairs() {
            let col = g * src.len() + src.pos(x, y);
            for (&(a, b), &coef) in el {
                let yb = m1.right.times(&src.right.basis[y], b);
                t1.push((a * m1.len() + m1.pos(x, yb), col, coef));
                let xa = m2.left.times(&src.left.basis[x], a);
                t1.push((off + b * m2.len() + m2.pos(xa, y), col, -coef));
            }
        }
    }
    let q_desc = match policy {
        QPolicy::Transparent => format!("D^{}U", u + v + 2),
        QPolicy::Full => format!("(D^{}U ⊕ D^{}U)", u + v + 2, u + v),
    };
    let dims = [generators.len() * src.len(), v1 * m1.len() + v2 * m2.len(), tgt.len()];
    let layer = |desc: String, dim: usize| Layer { description: desc, dim };
    Ok(WeymanComplex {
        params: format!("u={u},v={v},bidegree=({d1},{d2}),q={policy:?}").to_lowercase(),
        field,
        layers: [
            layer(format!("{q_desc} ⊗ S~_({},{})", e1 - 1, e2 - 1), dims[0]),
            layer(
                format!(
                    "D^{}U ⊗ S~_({},{}) ⊕ D^{}U ⊗ S~_({},{})",
                    u + 1,
                    e1 - 1,
                    e2,
                    v + 1,
                    e1,
                    e2 - 1
                ),
                dims[1],
            ),
            layer(format!("S~_({d1},{d2})"), dims[2]),
        ],
        d1: ExactMatrix::from_integer_triples(dims[1], dims[0], field, t1)?,
        d2: ExactMatrix::from_integer_triples(dims[2], dims[1], field, t2)?,
    })
}

/// Middle homology of [`bigraded_complex`].
pub fn bigraded_weyman(u: usize, v: usize, d1: usize, d2: usize, field: Field, policy: QPolicy) -> Result<usize> {
    Ok(bigraded_complex(u, v, d1, d2, field, policy)?.middle_homology())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentificationCheck {
    pub g: usize,
    pub a: usize,
    pub u: usize,
    pub v: usize,
    pub bidegree: (usize, usize),
    pub homology: usize,
    pub expected: u64,
    pub passed: bool,
}

/// Compares the transparent middle homology at bidegree `(a−u, g−1−a−v)` with
/// `dim Sym^{g−3−u−v}U ⊗ ∧^u(Sym^{a−1}U) ⊗ ∧^v(Sym^{g−2−a}U) = (g−2−u−v)_+ · C(a,u) · C(g−1−a,v)`.
pub fn bigraded_identification(g: usize, a: usize, u: usize, v: usize, field: Field) -> Result<IdentificationCheck> {
    require(a >= 1 && 2 * a < g && u <= a && v + a < g, || {
        format!("need 1 <= a <= (g-1)/2, u <= a, v <= g-1-a; got g = {g}, a = {a}, u = {u}, v = {v}")
    })?;
    let bidegree = (a - u, g - 1 - a - v);
    let homology = bigraded_weyman(u, v, bidegree.0, bidegree.1, field, QPolicy::Transparent)?;
    let top = g as i64 - 2 - (u + v) as i64;
    let expected = if top > 0 {
        top as u64 * c(a as i64, u as i64) * c((g - 1 - a) as i64, v as i64)
    } else {
        0
    };
    Ok(IdentificationCheck {
        g,
        a,
        u,
        v,
        bidegree,
        homology,
        expected,
        passed: homology as u64 == expected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorEntry {
    pub i: usize,
    pub source: u64,
    pub target: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorProfile {
    pub g: usize,
    pub a: Option<usize>,
    pub entries: Vec<TorEntry>,
}

/// Closed-form dimensions for `i = 0..=g−2`. Tangential: `D^{2i}U ⊗ ∧^{i+1}(Sym^{g−2}U)` and
/// `∧^i(Sym^{g−1}U) ⊗ Sym^{g−2−i}U`. Scroll of type `a`: `D^{i−1}U ⊗ ∧^{i+1}(Sym^{a−1}U ⊕ Sym^{g−2−a}U)`
/// and `Sym^{g−3−i}U ⊗ ∧^i(Sym^{a−1}U ⊕ Sym^{g−2−a}U)`.
pub fn tor_profiles(g: usize, a: Option<usize>) -> Result<TorProfile> {
    require(g >= 3, || format!("need g >= 3, got {g}"))?;
    if let Some(a) = a {
        require(a >= 1 && 2 * a < g, || {
            format!("need 1 <= a <= (g-1)/2, got a = {a}, g = {g}")
        })?;
    }
    let g_ = g as i64;
    let entries = (0..=g_ - 2)
        .map(|i| {
            let (source, target) = match a {
                None => ((2 * i + 1) as u64 * c(g_ - 1, i + 1), c(g_, i) * (g_ - 1 - i) as u64),
                Some(_) => (i as u64 * c(g_ - 1, i + 1), (g_ - 2 - i) as u64 * c(g_ - 1, i)),
            };
            TorEntry {
                i: i as usize,
                source,
                target,
            }
        })
        .collect();
    Ok(TorProfile { g, a, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn layer_dimensions() {
        let w = weyman_complex(1, 2, Q).unwrap();
        assert_eq!(w.layers.iter().map(|l| l.dim).collect::<Vec<_>>(), vec![3, 9, 6]);
        assert!(w.composite_is_zero());
        let w = weyman_complex(2, 2, Field::Prime(3)).unwrap();
        assert_eq!(w.layers.iter().map(|l| l.dim).collect::<Vec<_>>(), vec![5, 16, 10]);
        assert!(w.composite_is_zero());
        let w = weyman_complex(3, 0, Q).unwrap();
        assert_eq!((w.layers[0].dim, w.layers[1].dim), (0, 0));
        assert_eq!(weyman_dim(1, 0, Q).unwrap(), 0);
    }

    #[test]
    fn skew_embedding_is_invariant_shaped() {
        // D^0 → U ⊗ U sends 1 to 1 ⊗ x − x ⊗ 1
        let el = skew_embedding(0, 0, 0);
        assert_eq!(el, [((0, 1), 1), ((1, 0), -1)].into_iter().collect());
    }

    #[test]
    fn green_small_genus() {
        for g in 3..=6 {
            let r = green_check(g, Q).unwrap();
            assert!(r.passed, "{g}: {:?}", r.entries);
        }
        let r = green_check(5, Q).unwrap();
        assert_eq!((r.entries[0].source_dim, r.entries[0].target_dim), (18, 15));
    }

    #[test]
    fn profiles() {
        let t = tor_profiles(5, None).unwrap();
        assert_eq!((t.entries[0].source, t.entries[0].target), (4, 4));
        let s = tor_profiles(5, Some(2)).unwrap();
        assert_eq!((s.entries[1].source, s.entries[1].target), (6, 8));
        assert!(tor_profiles(5, Some(3)).is_err());
    }

    #[test]
    fn bigraded_basics() {
        for policy in [QPolicy::Transparent, QPolicy::Full] {
            let w = bigraded_complex(0, 0, 1, 1, Q, policy).unwrap();
            assert!(w.composite_is_zero());
            assert_eq!(w.layers[1].dim, 2 * 2 + 2 * 2);
        }
        assert!(bigraded_identification(5, 2, 1, 1, Q).unwrap().passed);
    }
}
