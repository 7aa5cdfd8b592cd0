//! Matrices of the structural maps between spaces built from `U`.
//!
//! Every builder takes the target field and produces integer entries, so a map over `F_p` is
//! the reduction of the same map over `Q`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::combin::{
    binomial, decreasing_tuples, distinct_permutations, insert_sorted, merge_sorted, multisets, orbit_size,
    sort_decreasing_with_sign,
};
use super::space::{weights, Basis, SpaceExpr};
use super::CharPoly;
use crate::linalg::{ExactMatrix, Field, Scalar};
use crate::{require, Error, Result};

/// Whether a construction lands in an exterior power or a divided power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Wedge,
    Divided,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Wedge => "wedge",
            Mode::Divided => "divided",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "wedge" => Ok(Mode::Wedge),
            "divided" => Ok(Mode::Divided),
            _ => Err(Error::InvalidParameter(format!(
                "mode must be wedge or divided, got {s}"
            ))),
        }
    }
}

fn labelled(m: ExactMatrix, domain: SpaceExpr, codomain: SpaceExpr) -> ExactMatrix {
    m.with_labels(domain, codomain)
        .expect("builder dimensions match labels")
}

fn to_i64(v: u128) -> i64 {
    i64::try_from(v).expect("structure constant fits in i64")
}

/// `Sym^a U ⊗ Sym^b U → Sym^{a+b} U`, `x^i ⊗ x^j ↦ x^{i+j}`.
pub fn mult_map(a: usize, b: usize, field: Field) -> ExactMatrix {
    let triples = (0..=a).flat_map(|i| (0..=b).map(move |j| (i + j, i * (b + 1) + j, 1)));
    let m = ExactMatrix::from_integer_triples(a + b + 1, (a + 1) * (b + 1), field, triples).unwrap();
    labelled(
        m,
        SpaceExpr::tensor(SpaceExpr::sym_u(a), SpaceExpr::sym_u(b)),
        SpaceExpr::sym_u(a + b),
    )
}

/// Multiplication in the symmetric algebra of `x`: `Sym^a X ⊗ Sym^b X → Sym^{a+b} X`.
pub fn sym_mult_map(x: &SpaceExpr, a: usize, b: usize, field: Field) -> ExactMatrix {
    let (sa, sb, sc) = (
        SpaceExpr::sym(a, x.clone()),
        SpaceExpr::sym(b, x.clone()),
        SpaceExpr::sym(a + b, x.clone()),
    );
    let (ba, bb, bc) = (Basis::new(&sa), Basis::new(&sb), Basis::new(&sc));
    let mut triples = Vec::with_capacity(ba.len() * bb.len());
    for i in 0..ba.len() {
        let si = ba.seq(i);
        for j in 0..bb.len() {
            let row = bc.position_of_seq(&merge_sorted(&si, &bb.seq(j))).unwrap();
            triples.push((row, i * bb.len() + j, 1));
        }
    }
    let m = ExactMatrix::from_integer_triples(bc.len(), ba.len() * bb.len(), field, triples).unwrap();
    labelled(m, SpaceExpr::tensor(sa, sb), sc)
}

/// Structure constant of the divided power algebra of `U`:
/// `x^(a) · x^(b) = C(a+b, a) x^(a+b)` in degree `p + q`, with the `1`-parts multiplying alike.
pub fn d_product_coeff(p: usize, a: usize, q: usize, b: usize) -> (u128, usize) {
    let c = binomial((p + q - a - b) as i64, (p - a) as i64) * binomial((a + b) as i64, a as i64);
    (c, a + b)
}

/// `D^a U ⊗ D^b U → D^{a+b} U`.
pub fn d_mult_map(a: usize, b: usize, field: Field) -> ExactMatrix {
    let mut triples = Vec::new();
    for i in 0..=a {
        for j in 0..=b {
            let (c, k) = d_product_coeff(a, i, b, j);
            triples.push((k, i * (b + 1) + j, to_i64(c)));
        }
    }
    let m = ExactMatrix::from_integer_triples(a + b + 1, (a + 1) * (b + 1), field, triples).unwrap();
    labelled(
        m,
        SpaceExpr::tensor(SpaceExpr::d_u(a), SpaceExpr::d_u(b)),
        SpaceExpr::d_u(a + b),
    )
}

/// `D^a U → D^b U ⊗ D^c U`, `x^(k) ↦ Σ_{k1+k2=k} x^(k1) ⊗ x^(k2)`.
pub fn comult_map(a: usize, b: usize, c: usize, field: Field) -> Result<ExactMatrix> {
    require(b + c == a, || {
        format!("comultiplication needs b + c = a, got {b} + {c} != {a}")
    })?;
    let mut triples = Vec::new();
    for k in 0..=a {
        for k1 in 0..=b.min(k) {
            let k2 = k - k1;
            if k2 <= c {
                triples.push((k1 * (c + 1) + k2, k, 1));
            }
        }
    }
    let m = ExactMatrix::from_integer_triples((b + 1) * (c + 1), a + 1, field, triples)?;
    Ok(labelled(
        m,
        SpaceExpr::d_u(a),
        SpaceExpr::tensor(SpaceExpr::d_u(b), SpaceExpr::d_u(c)),
    ))
}

/// `⟨−,−⟩ : D^d U ⊗ Sym^r U → D^{d−r} U`: comultiply to `D^{d−r} ⊗ D^r` and pair the second
/// factor with `Sym^r` by `⟨x^(k), x^j⟩ = δ_kj`.
pub fn contraction(d: usize, r: usize, field: Field) -> Result<ExactMatrix> {
    require(r <= d, || format!("contraction needs r <= d, got r = {r} > d = {d}"))?;
    let mut triples = Vec::new();
    for a in 0..=d {
        for j in 0..=r.min(a) {
            if a - j <= d - r {
                triples.push((a - j, a * (r + 1) + j, 1));
            }
        }
    }
    let m = ExactMatrix::from_integer_triples(d - r + 1, (d + 1) * (r + 1), field, triples)?;
    Ok(labelled(
        m,
        SpaceExpr::tensor(SpaceExpr::d_u(d), SpaceExpr::sym_u(r)),
        SpaceExpr::d_u(d - r),
    ))
}

/// The canonical maps `D^m A ⊗ ∧^m B → ∧^m(A ⊗ B)` and `D^m A ⊗ D^m B → D^m(A ⊗ B)`.
pub fn canonical_embed(m: usize, a: &SpaceExpr, b: &SpaceExpr, mode: Mode, field: Field) -> Result<ExactMatrix> {
    let (da, db) = (a.dim(), b.dim());
    let ab = SpaceExpr::tensor(a.clone(), b.clone());
    let alphas = multisets(da, m);
    match mode {
        Mode::Wedge => {
            require(m <= db, || format!("wedge mode needs m <= dim {b} = {db}, got m = {m}"))?;
            let betas = decreasing_tuples(db, m);
            let target = SpaceExpr::wedge(m, ab);
            let tb = Basis::new(&target);
            let mut triples = Vec::new();
            for (i, alpha) in alphas.iter().enumerate() {
                let perms = distinct_permutations(alpha);
                for (j, beta) in betas.iter().enumerate() {
                    let col = i * betas.len() + j;
                    for pi in &perms {
                        let seq: Vec<usize> = pi.iter().zip(beta).map(|(x, y)| x * db + y).collect();
                        if let Some((sign, sorted)) = sort_decreasing_with_sign(&seq) {
                            triples.push((tb.position_of_seq(&sorted).unwrap(), col, sign));
                        }
                    }
                }
            }
            let domain = SpaceExpr::tensor(SpaceExpr::d(m, a.clone()), SpaceExpr::wedge(m, b.clone()));
            let mat = ExactMatrix::from_integer_triples(tb.len(), alphas.len() * betas.len(), field, triples)?;
            Ok(labelled(mat, domain, target))
        }
        Mode::Divided => {
            let betas = multisets(db, m);
            let target = SpaceExpr::d(m, ab);
            let tb = Basis::new(&target);
            let mut triples = Vec::new();
            for (i, alpha) in alphas.iter().enumerate() {
                let perms = distinct_permutations(alpha);
                for (j, beta) in betas.iter().enumerate() {
                    let col = i * betas.len() + j;
                    // each pair multiset with marginals (alpha, beta) appears with coefficient one
                    let gammas: BTreeSet<Vec<usize>> = perms
                        .iter()
                        .map(|pi| {
                            let mut g: Vec<usize> = pi.iter().zip(beta).map(|(x, y)| x * db + y).collect();
                            g.sort_unstable();
                            g
                        })
                        .collect();
                    for g in gammas {
                        triples.push((tb.position_of_seq(&g).unwrap(), col, 1));
                    }
                }
            }
            let domain = SpaceExpr::tensor(SpaceExpr::d(m, a.clone()), SpaceExpr::d(m, b.clone()));
            let mat = ExactMatrix::from_integer_triples(tb.len(), alphas.len() * betas.len(), field, triples)?;
            Ok(labelled(mat, domain, target))
        }
    }
}

fn power_labels(f: &ExactMatrix, ctor: fn(usize, SpaceExpr) -> SpaceExpr, m: usize, mat: ExactMatrix) -> ExactMatrix {
    match (f.domain(), f.codomain()) {
        (Some(d), Some(c)) => labelled(mat, ctor(m, d.clone()), ctor(m, c.clone())),
        _ => mat,
    }
}

/// `∧^m f`; the entry at `(δ, γ)` is the minor of `f` on rows `δ` and columns `γ`.
pub fn wedge_power(m: usize, f: &ExactMatrix) -> ExactMatrix {
    let field = f.field();
    let cols = f.columns();
    let dom = decreasing_tuples(f.cols(), m);
    let cod = decreasing_tuples(f.rows(), m);
    let cod_pos: HashMap<&Vec<usize>, usize> = cod.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut triples = Vec::new();
    for (j, gamma) in dom.iter().enumerate() {
        // sorted (decreasing) row sets with accumulated coefficients
        let mut state: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        state.insert(Vec::new(), field.one());
        for &g in gamma {
            let mut next: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
            for (set, coeff) in &state {
                for (r, v) in &cols[g] {
                    if set.contains(r) {
                        continue;
                    }
                    // move e_r past the smaller entries at the tail
                    let smaller = set.iter().filter(|&&s| s < *r).count();
                    let mut c = coeff.mul_same(v);
                    if smaller % 2 == 1 {
                        c = c.neg();
                    }
                    let pos = set.len() - smaller;
                    let mut key = set.clone();
                    key.insert(pos, *r);
                    next.entry(key).and_modify(|s| *s = s.add_same(&c)).or_insert(c);
                }
            }
            state = next;
        }
        for (set, coeff) in state {
            if !coeff.is_zero() {
                triples.push((cod_pos[&set], j, coeff));
            }
        }
    }
    let mat = ExactMatrix::from_triples(cod.len(), dom.len(), field, triples).unwrap();
    power_labels(f, SpaceExpr::wedge, m, mat)
}

/// Lifts an entry to `Q`; residues lift to their representative in `0..p`.
fn lift(s: &Scalar) -> BigRational {
    match s {
        Scalar::Rational(q) => q.clone(),
        Scalar::Mod { value, .. } => BigRational::from_integer(BigInt::from(*value)),
    }
}

fn lower(field: Field, q: &BigRational) -> Scalar {
    match field {
        Field::Rational => Scalar::Rational(q.clone()),
        Field::Prime(_) => {
            assert!(q.is_integer(), "functor power of an integral map is integral");
            field.from_bigint(q.numer())
        }
    }
}

type Expansion = BTreeMap<Vec<usize>, BigRational>;

/// For each sorted multiset `γ` of columns, the product `Π_j f(e_{γ_j})` grouped by sorted
/// multisets of rows. This is `Sym^e f` on the monomial basis.
fn symmetric_expansion(e: usize, f: &ExactMatrix) -> Vec<(Vec<usize>, Expansion)> {
    let cols: Vec<Vec<(usize, BigRational)>> = f
        .columns()
        .into_iter()
        .map(|c| c.iter().map(|(r, v)| (*r, lift(v))).collect())
        .collect();
    multisets(f.cols(), e)
        .into_iter()
        .map(|gamma| {
            let mut state: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
            state.insert(Vec::new(), BigRational::one());
            for &g in &gamma {
                let mut next: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
                for (ms, coeff) in &state {
                    for (r, v) in &cols[g] {
                        let key = insert_sorted(ms, *r);
                        *next.entry(key).or_insert_with(BigRational::zero) += coeff * v;
                    }
                }
                state = next;
            }
            state.retain(|_, v| !v.is_zero());
            (gamma, state)
        })
        .collect()
}

/// `Sym^e f` in monomial bases.
pub fn sym_power(e: usize, f: &ExactMatrix) -> ExactMatrix {
    let field = f.field();
    let cod: HashMap<Vec<usize>, usize> = multisets(f.rows(), e)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut triples = Vec::new();
    let expansion = symmetric_expansion(e, f);
    let ncols = expansion.len();
    for (j, (_, terms)) in expansion.into_iter().enumerate() {
        for (delta, v) in terms {
            triples.push((cod[&delta], j, lower(field, &v)));
        }
    }
    let mat = ExactMatrix::from_triples(cod.len(), ncols, field, triples).unwrap();
    power_labels(f, SpaceExpr::sym, e, mat)
}

/// `D^m f` in orbit-sum bases. The coefficient of `orbit(δ)` in the image of `orbit(γ)` is
/// `|orbit γ| · T_δ / |orbit δ|` where `T` is the symmetric expansion above.
pub fn divided_power(m: usize, f: &ExactMatrix) -> ExactMatrix {
    let field = f.field();
    let cod: HashMap<Vec<usize>, usize> = multisets(f.rows(), m)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut triples = Vec::new();
    let expansion = symmetric_expansion(m, f);
    let ncols = expansion.len();
    for (j, (gamma, terms)) in expansion.into_iter().enumerate() {
        let og = BigRational::from_integer(BigInt::from(orbit_size(&gamma)));
        for (delta, v) in terms {
            let od = BigRational::from_integer(BigInt::from(orbit_size(&delta)));
            triples.push((cod[&delta], j, lower(field, &(v * &og / od))));
        }
    }
    let mat = ExactMatrix::from_triples(cod.len(), ncols, field, triples).unwrap();
    power_labels(f, SpaceExpr::d, m, mat)
}

/// Character of the image of a labelled weight-preserving map, from ranks of weight blocks.
pub fn image_character(f: &ExactMatrix) -> Result<CharPoly> {
    let (Some(dom), Some(cod)) = (f.domain(), f.codomain()) else {
        return Err(Error::InvalidParameter("image character needs a labelled map".into()));
    };
    let (wd, wc) = (weights(dom), weights(cod));
    let mut blocks: BTreeMap<i64, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (j, w) in wd.iter().enumerate() {
        blocks.entry(*w).or_default().1.push(j);
    }
    for (i, w) in wc.iter().enumerate() {
        blocks.entry(*w).or_default().0.push(i);
    }
    let mut out = CharPoly::zero();
    for (w, (rows, cols)) in blocks {
        if rows.is_empty() || cols.is_empty() {
            continue;
        }
        let row_pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let block = f.select_columns(&cols);
        let triples: Vec<(usize, usize, Scalar)> = block
            .entries()
            .filter_map(|(r, c, v)| row_pos.get(&r).map(|&rr| (rr, c, v.clone())))
            .collect();
        let sub = ExactMatrix::from_triples(rows.len(), cols.len(), f.field(), triples)?;
        let r = sub.rank() as i64;
        if r > 0 {
            out = out.add(&CharPoly::monomial(w, r));
        }
    }
    Ok(out)
}

/// True when every nonzero entry joins basis vectors of equal weight.
pub fn preserves_weights(f: &ExactMatrix) -> bool {
    match (f.domain(), f.codomain()) {
        (Some(dom), Some(cod)) => {
            let (wd, wc) = (weights(dom), weights(cod));
            f.entries().all(|(r, c, _)| wc[r] == wd[c])
        }
        _ => false,
    }
}

/// Integer value of an entry, for tests and reports.
#[allow(dead_code)]
pub(crate) fn entry_i64(m: &ExactMatrix, r: usize, c: usize) -> Option<i64> {
    m.get(r, c).to_i64().or_else(|| {
        let (n, d) = m.get(r, c).as_fraction();
        if d.is_one() {
            n.to_i64()
        } else {
            None
        }
    })
}
