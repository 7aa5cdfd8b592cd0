use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::elim::{rank_integer, rank_mod_p, Arith, Echelon, PArith, QArith, SparseRow};
use super::{Field, LinalgError, Scalar};
use crate::multilinear::SpaceExpr;

/// A sparse matrix over one field, optionally labelled with the spaces it maps between.
///
/// Column `j` is the image of the `j`-th basis vector of the domain. Entries are kept in a
/// row-major map and zero is never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: BTreeMap<(usize, usize), Scalar>,
    domain: Option<SpaceExpr>,
    codomain: Option<SpaceExpr>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> ExactMatrix {
        ExactMatrix {
            rows,
            cols,
            field,
            entries: BTreeMap::new(),
            domain: None,
            codomain: None,
        }
    }

    pub fn identity(n: usize, field: Field) -> ExactMatrix {
        let mut m = ExactMatrix::zero(n, n, field);
        for i in 0..n {
            m.entries.insert((i, i), field.one());
        }
        m
    }

    /// Identity on a space, labelled.
    pub fn identity_on(space: &SpaceExpr, field: Field) -> ExactMatrix {
        let mut m = ExactMatrix::identity(space.dim(), field);
        m.domain = Some(space.clone());
        m.codomain = Some(space.clone());
        m
    }

    /// Builds a matrix from triples, summing repeated positions.
    pub fn from_triples<I>(rows: usize, cols: usize, field: Field, triples: I) -> Result<ExactMatrix, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut m = ExactMatrix::zero(rows, cols, field);
        for (r, c, v) in triples {
            if !field.contains(&v) {
                return Err(LinalgError::MixedFields(field, v.field()));
            }
            m.accumulate(r, c, v)?;
        }
        Ok(m)
    }

    /// Builds a matrix with integer entries, summing repeated positions.
    pub fn from_integer_triples<I>(
        rows: usize,
        cols: usize,
        field: Field,
        triples: I,
    ) -> Result<ExactMatrix, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut acc: HashMap<(usize, usize), i128> = HashMap::new();
        for (r, c, v) in triples {
            if r >= rows || c >= cols {
                return Err(LinalgError::OutOfBounds {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            *acc.entry((r, c)).or_insert(0) += v as i128;
        }
        let mut m = ExactMatrix::zero(rows, cols, field);
        for ((r, c), v) in acc {
            let s = field.from_bigint(&BigInt::from(v));
            if !s.is_zero() {
                m.entries.insert((r, c), s);
            }
        }
        Ok(m)
    }

    /// Dense constructor, mainly for tests and examples.
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> ExactMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let triples = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, *v)));
        ExactMatrix::from_integer_triples(rows.len(), cols, field, triples).expect("rows have equal length")
    }

    fn accumulate(&mut self, r: usize, c: usize, v: Scalar) -> Result<(), LinalgError> {
        if r >= self.rows || c >= self.cols {
            return Err(LinalgError::OutOfBounds {
                row: r,
                col: c,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let sum = match self.entries.remove(&(r, c)) {
            Some(old) => old.add_same(&v),
            None => v,
        };
        if !sum.is_zero() {
            self.entries.insert((r, c), sum);
        }
        Ok(())
    }

    /// Attaches domain and codomain labels after checking dimensions.
    pub fn with_labels(mut self, domain: SpaceExpr, codomain: SpaceExpr) -> Result<ExactMatrix, LinalgError> {
        if domain.dim() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "label domain",
                left: domain.dim(),
                right: self.cols,
            });
        }
        if codomain.dim() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "label codomain",
                left: codomain.dim(),
                right: self.rows,
            });
        }
        self.domain = Some(domain);
        self.codomain = Some(codomain);
        Ok(self)
    }

    pub fn without_labels(mut self) -> ExactMatrix {
        self.domain = None;
        self.codomain = None;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn domain(&self) -> Option<&SpaceExpr> {
        self.domain.as_ref()
    }

    pub fn codomain(&self) -> Option<&SpaceExpr> {
        self.codomain.as_ref()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|((r, c), v)| (*r, *c, v))
    }

    /// Nonzero entries of column `c`, by row.
    pub fn column(&self, c: usize) -> Vec<(usize, Scalar)> {
        self.entries
            .iter()
            .filter(|((_, cc), _)| *cc == c)
            .map(|((r, _), v)| (*r, v.clone()))
            .collect()
    }

    /// All columns as sparse vectors.
    pub fn columns(&self) -> Vec<Vec<(usize, Scalar)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for ((r, c), v) in &self.entries {
            cols[*c].push((*r, v.clone()));
        }
        cols
    }

    /// All rows as sparse vectors.
    pub fn row_vectors(&self) -> Vec<Vec<(usize, Scalar)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for ((r, c), v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        rows
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![self.field.zero(); self.cols]; self.rows];
        for ((r, c), v) in &self.entries {
            d[*r][*c] = v.clone();
        }
        d
    }

    /// Transpose; labels are dropped since the transpose maps between dual spaces.
    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            entries: self.entries.iter().map(|((r, c), v)| ((*c, *r), v.clone())).collect(),
            domain: None,
            codomain: None,
        }
    }

    fn same_field(&self, other: &ExactMatrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::MixedFields(self.field, other.field));
        }
        Ok(())
    }

    /// The product `self · rhs`, i.e. `rhs` first.
    pub fn compose(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "compose",
                left: self.cols,
                right: rhs.rows,
            });
        }
        if let (Some(a), Some(b)) = (&self.domain, &rhs.codomain) {
            if !a.equivalent(b) {
                return Err(LinalgError::LabelMismatch {
                    op: "compose",
                    left: a.to_string(),
                    right: b.to_string(),
                });
            }
        }
        let left_cols = self.columns();
        let mut acc: HashMap<(usize, usize), Scalar> = HashMap::new();
        for ((k, j), b) in &rhs.entries {
            for (i, a) in &left_cols[*k] {
                let p = a.mul_same(b);
                acc.entry((*i, *j)).and_modify(|s| *s = s.add_same(&p)).or_insert(p);
            }
        }
        let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: rhs.cols,
            field: self.field,
            entries,
            domain: rhs.domain.clone(),
            codomain: self.codomain.clone(),
        })
    }

    /// Kronecker product in the row-major order of tensor bases.
    pub fn kronecker(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.same_field(rhs)?;
        let mut entries = BTreeMap::new();
        for ((r1, c1), a) in &self.entries {
            for ((r2, c2), b) in &rhs.entries {
                entries.insert((r1 * rhs.rows + r2, c1 * rhs.cols + c2), a.mul_same(b));
            }
        }
        let label = |x: &Option<SpaceExpr>, y: &Option<SpaceExpr>| match (x, y) {
            (Some(x), Some(y)) => Some(SpaceExpr::tensor(x.clone(), y.clone())),
            _ => None,
        };
        Ok(ExactMatrix {
            rows: self.rows * rhs.rows,
            cols: self.cols * rhs.cols,
            field: self.field,
            entries,
            domain: label(&self.domain, &rhs.domain),
            codomain: label(&self.codomain, &rhs.codomain),
        })
    }

    pub fn add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.same_field(rhs)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(LinalgError::DimensionMismatch {
                op: "add",
                left: self.rows * self.cols,
                right: rhs.rows * rhs.cols,
            });
        }
        let mut out = self.clone();
        for ((r, c), v) in &rhs.entries {
            out.accumulate(*r, *c, v.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> ExactMatrix {
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            *v = v.neg();
        }
        out
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Result<ExactMatrix, LinalgError> {
        if !self.field.contains(s) {
            return Err(LinalgError::MixedFields(self.field, s.field()));
        }
        let mut out = self.clone();
        out.entries = self
            .entries
            .iter()
            .map(|(k, v)| (*k, v.mul_same(s)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Ok(out)
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> ExactMatrix {
        let pos: HashMap<usize, Vec<usize>> = cols.iter().enumerate().fold(HashMap::new(), |mut m, (i, c)| {
            m.entry(*c).or_default().push(i);
            m
        });
        let mut entries = BTreeMap::new();
        for ((r, c), v) in &self.entries {
            if let Some(targets) = pos.get(c) {
                for t in targets {
                    entries.insert((*r, *t), v.clone());
                }
            }
        }
        ExactMatrix {
            rows: self.rows,
            cols: cols.len(),
            field: self.field,
            entries,
            domain: None,
            codomain: self.codomain.clone(),
        }
    }

    /// Entrywise equality ignoring labels up to [`SpaceExpr::equivalent`].
    pub fn same_map(&self, other: &ExactMatrix) -> bool {
        let labels_ok = |a: &Option<SpaceExpr>, b: &Option<SpaceExpr>| match (a, b) {
            (Some(a), Some(b)) => a.equivalent(b),
            _ => true,
        };
        self.field == other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
            && labels_ok(&self.domain, &other.domain)
            && labels_ok(&self.codomain, &other.codomain)
    }

    /// First position (row-major) where two equally shaped matrices differ.
    pub fn first_difference(&self, other: &ExactMatrix) -> Option<(usize, usize, Scalar, Scalar)> {
        let keys: std::collections::BTreeSet<(usize, usize)> =
            self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.into_iter().find_map(|(r, c)| {
            let (a, b) = (self.get(r, c), other.get(r, c));
            (a != b).then_some((r, c, a, b))
        })
    }

    pub fn rank(&self) -> usize {
        // insert along the shorter side
        let vectors = if self.rows <= self.cols {
            self.row_vectors()
        } else {
            self.columns()
        };
        match self.field {
            Field::Prime(p) => rank_mod_p(
                vectors
                    .into_iter()
                    .map(|v| v.into_iter().map(|(c, s)| (c, residue(&s))).collect())
                    .collect(),
                p,
            ),
            Field::Rational => {
                let rows: Vec<SparseRow<BigInt>> = vectors.into_iter().map(clear_denominators).collect();
                rank_integer(&rows)
            }
        }
    }

    /// Basis of the right kernel. Each vector has leading nonzero coordinate one.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let deps = match self.field {
            Field::Prime(p) => column_dependencies(PArith(p), self, residue)
                .into_iter()
                .map(|v| lift_mod(v, p))
                .collect::<Vec<_>>(),
            Field::Rational => column_dependencies(QArith, self, rational)
                .into_iter()
                .map(lift_q)
                .collect(),
        };
        deps.into_iter()
            .map(|sparse| {
                let mut v = vec![self.field.zero(); self.cols];
                for (i, s) in sparse {
                    v[i] = s;
                }
                let lead = v.iter().find(|s| !s.is_zero()).cloned().expect("nonzero kernel vector");
                let inv = lead.inv().expect("lead is nonzero");
                v.iter().map(|s| s.mul_same(&inv)).collect()
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<ExactMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let inv = match self.field {
            Field::Prime(p) => {
                let rows = row_inverse(PArith(p), self, residue)?;
                triples_of(rows, |v| Scalar::Mod { value: v, modulus: p })
            }
            Field::Rational => triples_of(row_inverse(QArith, self, rational)?, Scalar::Rational),
        };
        let mut m = ExactMatrix::from_triples(self.rows, self.rows, self.field, inv)?;
        m.domain = self.codomain.clone();
        m.codomain = self.domain.clone();
        Ok(m)
    }

    pub fn determinant(&self) -> Result<Scalar, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(match self.field {
            Field::Prime(p) => match square_det(PArith(p), self, residue) {
                Some(v) => Scalar::Mod { value: v, modulus: p },
                None => self.field.zero(),
            },
            Field::Rational => match square_det(QArith, self, rational) {
                Some(v) => Scalar::Rational(v),
                None => self.field.zero(),
            },
        })
    }

    /// Reduction of a rational matrix modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<ExactMatrix, LinalgError> {
        let field = Field::prime(p)?;
        let mut entries = BTreeMap::new();
        for (k, v) in &self.entries {
            let r = v.reduce_mod(p)?;
            if !r.is_zero() {
                entries.insert(*k, r);
            }
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            field,
            entries,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
        })
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(Scalar::is_integral)
    }

    /// Sorted `(row, col, numerator, denominator)` quadruples.
    pub fn quadruples(&self) -> Vec<(usize, usize, BigInt, BigInt)> {
        self.entries
            .iter()
            .map(|((r, c), v)| {
                let (n, d) = v.as_fraction();
                (*r, *c, n, d)
            })
            .collect()
    }
}

fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::Mod { value, .. } => *value,
        Scalar::Rational(_) => unreachable!("field checked"),
    }
}

fn rational(s: &Scalar) -> BigRational {
    match s {
        Scalar::Rational(q) => q.clone(),
        Scalar::Mod { .. } => unreachable!("field checked"),
    }
}

fn lift_mod(v: SparseRow<u64>, p: u64) -> Vec<(usize, Scalar)> {
    v.into_iter()
        .map(|(i, x)| (i, Scalar::Mod { value: x, modulus: p }))
        .collect()
}

fn lift_q(v: SparseRow<BigRational>) -> Vec<(usize, Scalar)> {
    v.into_iter().map(|(i, x)| (i, Scalar::Rational(x))).collect()
}

fn triples_of<E, F: Fn(E) -> Scalar>(rows: Vec<SparseRow<E>>, wrap: F) -> Vec<(usize, usize, Scalar)> {
    let mut out = Vec::new();
    for (r, row) in rows.into_iter().enumerate() {
        for (c, v) in row {
            out.push((r, c, wrap(v)));
        }
    }
    out
}

/// Scales a rational vector to an integer vector with the same span.
fn clear_denominators(v: Vec<(usize, Scalar)>) -> SparseRow<BigInt> {
    let mut lcm = BigInt::one();
    for (_, s) in &v {
        let (_, d) = s.as_fraction();
        lcm = lcm.lcm(&d);
    }
    v.into_iter()
        .map(|(c, s)| {
            let (n, d) = s.as_fraction();
            (c, n * (&lcm / d))
        })
        .collect()
}

/// Linear relations among the columns: one vector per column dependent on earlier columns.
fn column_dependencies<A: Arith, F: Fn(&Scalar) -> A::E>(ar: A, m: &ExactMatrix, conv: F) -> Vec<SparseRow<A::E>> {
    let one = ar.one();
    let mut ech = Echelon::new(ar);
    let mut out = Vec::new();
    for (j, col) in m.columns().into_iter().enumerate() {
        let row: SparseRow<A::E> = col.iter().map(|(r, s)| (*r, conv(s))).collect();
        if let Some(tag) = ech.insert(row, vec![(j, one.clone())]) {
            out.push(tag);
        }
    }
    out
}

fn row_inverse<A: Arith, F: Fn(&Scalar) -> A::E>(
    ar: A,
    m: &ExactMatrix,
    conv: F,
) -> Result<Vec<SparseRow<A::E>>, LinalgError> {
    let one = ar.one();
    let mut ech = Echelon::new(ar);
    for (i, row) in m.row_vectors().into_iter().enumerate() {
        let row: SparseRow<A::E> = row.iter().map(|(c, s)| (*c, conv(s))).collect();
        if ech.insert(row, vec![(i, one.clone())]).is_some() {
            return Err(LinalgError::Singular);
        }
    }
    ech.reduce_fully();
    // pivot row for column c is e_c, so its tag is row c of the inverse
    Ok(ech.pivots().values().map(|(_, tag)| tag.clone()).collect())
}

fn square_det<A: Arith, F: Fn(&Scalar) -> A::E>(ar: A, m: &ExactMatrix, conv: F) -> Option<A::E> {
    let mut ech = Echelon::new(ar);
    for row in m.row_vectors() {
        let row: SparseRow<A::E> = row.iter().map(|(c, s)| (*c, conv(s))).collect();
        if ech.insert(row, Vec::new()).is_some() {
            return None;
        }
    }
    Some(ech.determinant())
}
