//! Elimination kernels on sparse rows.
//!
//! Rows are `Vec<(column, value)>` sorted by column with no stored zeros. Pivoting always
//! takes the leading column of the incoming row, so results depend only on the input order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{inv_mod, mul_mod, sub_mod};

pub(crate) type SparseRow<E> = Vec<(usize, E)>;

/// Field arithmetic used by the generic kernels.
pub(crate) trait Arith {
    type E: Clone;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn one(&self) -> Self::E;
}

pub(crate) struct QArith;

impl Arith for QArith {
    type E = BigRational;
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
}

pub(crate) struct PArith(pub u64);

impl Arith for PArith {
    type E = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.0)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.0)
    }
    fn neg(&self, a: &u64) -> u64 {
        sub_mod(0, *a, self.0)
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
}

/// `a - f * b`, both sorted.
fn axpy<A: Arith>(ar: &A, a: &[(usize, A::E)], f: &A::E, b: &[(usize, A::E)]) -> SparseRow<A::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, ar.neg(&ar.mul(f, &b[j].1))));
            j += 1;
        } else {
            let v = ar.sub(&a[i].1, &ar.mul(f, &b[j].1));
            if !ar.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale<A: Arith>(ar: &A, a: &[(usize, A::E)], f: &A::E) -> SparseRow<A::E> {
    a.iter().map(|(c, v)| (*c, ar.mul(v, f))).collect()
}

/// Incremental row echelon form with optional bookkeeping of row combinations ("tags").
///
/// A pivot row and its tag.
pub(crate) type Pivot<E> = (SparseRow<E>, SparseRow<E>);

/// Each stored pivot row is normalized to leading coefficient one and satisfies
/// `row = tag · (inserted rows)` when tags are tracked.
pub(crate) struct Echelon<A: Arith> {
    ar: A,
    pivots: BTreeMap<usize, Pivot<A::E>>,
    /// Leading coefficient and lead column of every independent insertion, in order.
    leads: Vec<(usize, A::E)>,
}

impl<A: Arith> Echelon<A> {
    pub fn new(ar: A) -> Self {
        Echelon {
            ar,
            pivots: BTreeMap::new(),
            leads: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the pivots. Returns the reduced tag when the row is dependent.
    pub fn insert(&mut self, mut row: SparseRow<A::E>, mut tag: SparseRow<A::E>) -> Option<SparseRow<A::E>> {
        loop {
            let Some((lead, lv)) = row.first().cloned() else {
                return Some(tag);
            };
            match self.pivots.get(&lead) {
                Some((prow, ptag)) => {
                    row = axpy(&self.ar, &row, &lv, prow);
                    if !ptag.is_empty() || !tag.is_empty() {
                        tag = axpy(&self.ar, &tag, &lv, ptag);
                    }
                }
                None => {
                    let inv = self.ar.inv(&lv);
                    let row = scale(&self.ar, &row, &inv);
                    let tag = scale(&self.ar, &tag, &inv);
                    self.leads.push((lead, lv));
                    self.pivots.insert(lead, (row, tag));
                    return None;
                }
            }
        }
    }

    /// Back-substitutes so every pivot column is zero outside its own pivot row.
    pub fn reduce_fully(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for (idx, &c) in cols.iter().enumerate() {
            let (prow, ptag) = self.pivots[&c].clone();
            // rows with smaller lead may have an entry in column c
            for &other in &cols[idx + 1..] {
                let entry = self.pivots[&other]
                    .0
                    .binary_search_by_key(&c, |e| e.0)
                    .ok()
                    .map(|pos| self.pivots[&other].0[pos].1.clone());
                if let Some(f) = entry {
                    let (orow, otag) = self.pivots.remove(&other).unwrap();
                    let nrow = axpy(&self.ar, &orow, &f, &prow);
                    let ntag = axpy(&self.ar, &otag, &f, &ptag);
                    self.pivots.insert(other, (nrow, ntag));
                }
            }
        }
    }

    pub fn pivots(&self) -> &BTreeMap<usize, Pivot<A::E>> {
        &self.pivots
    }

    /// Determinant of the inserted square matrix, assuming every row was independent.
    pub fn determinant(&self) -> A::E {
        let mut det = self.ar.one();
        let order: Vec<usize> = self.leads.iter().map(|l| l.0).collect();
        for (_, v) in &self.leads {
            det = self.ar.mul(&det, v);
        }
        if permutation_is_odd(&order) {
            det = self.ar.neg(&det);
        }
        det
    }
}

/// Parity of the permutation sorting `seq` (distinct entries).
pub(crate) fn permutation_is_odd(seq: &[usize]) -> bool {
    let mut ranked: Vec<usize> = (0..seq.len()).collect();
    ranked.sort_by_key(|&i| seq[i]);
    let mut seen = vec![false; seq.len()];
    let mut odd = false;
    for start in 0..seq.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = ranked[i];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

pub(crate) fn rank_mod_p(rows: Vec<SparseRow<u64>>, p: u64) -> usize {
    let mut ech = Echelon::new(PArith(p));
    for row in rows {
        ech.insert(row, Vec::new());
    }
    ech.rank()
}

/// Integer arithmetic for fraction-free elimination; `None` signals overflow.
pub(crate) trait Ring: Clone {
    fn is_zero(&self) -> bool;
    fn mul(&self, b: &Self) -> Option<Self>;
    /// `self * b - c * d`
    fn mul_sub(&self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn is_one(&self) -> bool;
}

impl Ring for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, b: &i128) -> Option<i128> {
        self.checked_mul(*b)
    }
    fn mul_sub(&self, b: &i128, c: &i128, d: &i128) -> Option<i128> {
        self.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)
    }
    fn gcd(&self, other: &i128) -> i128 {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &i128) -> i128 {
        self / d
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> i128 {
        -self
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Ring for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, b: &BigInt) -> Option<BigInt> {
        Some(self * b)
    }
    fn mul_sub(&self, b: &BigInt, c: &BigInt, d: &BigInt) -> Option<BigInt> {
        Some(self * b - c * d)
    }
    fn gcd(&self, other: &BigInt) -> BigInt {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &BigInt) -> BigInt {
        self / d
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> BigInt {
        -self
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

/// Divides out the content and makes the leading entry positive.
fn primitive<T: Ring>(mut row: SparseRow<T>) -> SparseRow<T> {
    let mut g = row[0].1.clone();
    for (_, v) in &row[1..] {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    let g = if row[0].1.is_negative() { g.neg() } else { g };
    if !g.is_one() {
        for e in &mut row {
            e.1 = e.1.div_exact(&g);
        }
    }
    row
}

/// `(pl/g) * row - (rl/g) * piv`, which cancels the shared leading column.
fn ff_combine<T: Ring>(row: &[(usize, T)], piv: &[(usize, T)]) -> Option<SparseRow<T>> {
    let g = piv[0].1.gcd(&row[0].1);
    let pl = piv[0].1.div_exact(&g);
    let rl = row[0].1.div_exact(&g);
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < piv.len() {
        if j == piv.len() || (i < row.len() && row[i].0 < piv[j].0) {
            out.push((row[i].0, pl.mul(&row[i].1)?));
            i += 1;
        } else if i == row.len() || piv[j].0 < row[i].0 {
            out.push((piv[j].0, rl.mul(&piv[j].1)?.neg()));
            j += 1;
        } else {
            let v = pl.mul_sub(&row[i].1, &rl, &piv[j].1)?;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn ff_rank<T: Ring>(rows: &[SparseRow<T>]) -> Option<usize> {
    let mut pivots: BTreeMap<usize, SparseRow<T>> = BTreeMap::new();
    for row in rows {
        let mut row = row.clone();
        while let Some(lead) = row.first().map(|e| e.0) {
            match pivots.get(&lead) {
                Some(piv) => {
                    row = ff_combine(&row, piv)?;
                    if !row.is_empty() {
                        row = primitive(row);
                    }
                }
                None => {
                    pivots.insert(lead, primitive(row));
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

/// Rank over `Q` of an integer matrix by fraction-free elimination.
///
/// Tries machine integers first and restarts with big integers on overflow.
pub(crate) fn rank_integer(rows: &[SparseRow<BigInt>]) -> usize {
    let small: Option<Vec<SparseRow<i128>>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|(c, v)| i64::try_from(v).ok().map(|x| (*c, x as i128)))
                .collect()
        })
        .collect();
    if let Some(small) = small {
        if let Some(r) = ff_rank(&small) {
            return r;
        }
    }
    ff_rank(rows).expect("big integer arithmetic does not overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<SparseRow<BigInt>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|e| *e.1 != 0)
                    .map(|(c, v)| (c, BigInt::from(*v)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn integer_rank_small() {
        assert_eq!(rank_integer(&big(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_integer(&big(&[&[0, 3, 1], &[2, 0, 0], &[2, 3, 1]])), 2);
        assert_eq!(rank_integer(&big(&[&[], &[]])), 0);
    }

    #[test]
    fn integer_rank_survives_overflow() {
        let h = i64::MAX / 3;
        let rows = big(&[&[h, h - 1, 1], &[h - 1, h, 1], &[1, 1, h]]);
        assert_eq!(rank_integer(&rows), 3);
    }

    #[test]
    fn mod_p_rank_drops_at_bad_primes() {
        let rows = vec![vec![(0, 2u64), (1, 1)], vec![(0, 1), (1, 2)]];
        // det = 3
        assert_eq!(rank_mod_p(rows.clone(), 3), 1);
        assert_eq!(rank_mod_p(rows, 5), 2);
    }

    #[test]
    fn permutation_parity() {
        assert!(!permutation_is_odd(&[0, 1, 2]));
        assert!(permutation_is_odd(&[1, 0, 2]));
        assert!(!permutation_is_odd(&[2, 0, 1]));
        assert!(permutation_is_odd(&[5, 3]));
    }

    #[test]
    fn echelon_determinant_and_tags() {
        let mut e = Echelon::new(PArith(7));
        e.insert(vec![(1, 1)], vec![(0, 1)]);
        e.insert(vec![(0, 2), (1, 3)], vec![(1, 1)]);
        // [[0,1],[2,3]] has determinant -2
        assert_eq!(e.determinant(), 5);
        let dep = e.insert(vec![(0, 4), (1, 6)], vec![(2, 1)]).unwrap();
        // third row is twice the second
        assert_eq!(dep, vec![(1, 5), (2, 1)]);
    }
}
