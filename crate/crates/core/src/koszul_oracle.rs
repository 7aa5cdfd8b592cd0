//! Brute-force graded Betti numbers of the coordinate ring `B` of `Σ_k`, as an independent check
//! of the Eagon–Northcott table.
//!
//! `B_e` is the image of `Sym^e V`, `V = Sym^n U` with basis `z_0..z_n`, under the substitution
//! `z_l ↦ Σ_{j=1}^k c_j s_j^l`, a parametrization of a dense subset of the affine cone over
//! `Σ_k`. Elements of `B` are kept as their images, polynomials in `c, s` over `F_p`, so no
//! normal forms are needed. `Tor_i(k, B)_{i+e}` is the homology of
//! `∧^{i+1}V ⊗ B_{e−1} → ∧^i V ⊗ B_e → ∧^{i−1}V ⊗ B_{e+1}`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::hankel::BettiTable;
use crate::linalg::{is_prime, Echelon, PArith, SparseRow};
use crate::multilinear::combin::{decreasing_tuples, multisets};
use crate::{require, Error, Result};

/// Default characteristic of the oracle.
pub const ORACLE_PRIME: u64 = 1_000_003;

/// Largest number of columns of a single Koszul differential the oracle will build.
pub const ORACLE_COLUMN_LIMIT: usize = 60_000;

type Exponents = Vec<u8>;
type Poly = BTreeMap<Exponents, u64>;

fn poly_mul(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let v = out.entry(e).or_insert(0);
            *v = ((*v as u128 + *ca as u128 * *cb as u128) % p as u128) as u64;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Graded pieces of `B` up to a degree: a basis of standard monomials per degree and the image
/// of every monomial of `Sym V` that the Koszul differentials reach.
struct Coordinates {
    p: u64,
    images: HashMap<Vec<usize>, Poly>,
    standard: Vec<Vec<Vec<usize>>>,
}

impl Coordinates {
    fn new(n: usize, k: usize, top: usize, p: u64) -> Coordinates {
        // z_l = Σ_j c_j s_j^l; exponents ordered (c_1..c_k, s_1..s_k)
        let z: Vec<Poly> = (0..=n)
            .map(|l| {
                (0..k)
                    .map(|j| {
                        let mut e = vec![0u8; 2 * k];
                        e[j] = 1;
                        e[k + j] = l as u8;
                        (e, 1)
                    })
                    .collect()
            })
            .collect();
        let mut images: HashMap<Vec<usize>, Poly> = HashMap::new();
        images.insert(Vec::new(), [(vec![0u8; 2 * k], 1)].into_iter().collect());
        let mut standard = Vec::new();
        for e in 0..=top {
            let mut ids: HashMap<Exponents, usize> = HashMap::new();
            let mut ech = Echelon::new(PArith(p));
            let mut basis = Vec::new();
            for m in multisets(n + 1, e) {
                if e > 0 {
                    let img = poly_mul(&images[&m[..e - 1]], &z[m[e - 1]], p);
                    images.insert(m.clone(), img);
                }
                let row = to_row(&images[&m], &mut ids);
                if ech.insert(row, Vec::new()).is_none() {
                    basis.push(m);
                }
            }
            standard.push(basis);
        }
        Coordinates { p, images, standard }
    }

    fn dim(&self, e: usize) -> usize {
        self.standard[e].len()
    }
}

fn to_row(poly: &Poly, ids: &mut HashMap<Exponents, usize>) -> SparseRow<u64> {
    let mut row: SparseRow<u64> = poly
        .iter()
        .map(|(e, v)| {
            let next = ids.len();
            (*ids.entry(e.clone()).or_insert(next), *v)
        })
        .collect();
    row.sort_unstable_by_key(|x| x.0);
    row
}

/// Rank of `∧^i V ⊗ B_e → ∧^{i−1} V ⊗ B_{e+1}`.
fn koszul_rank(coords: &Coordinates, n: usize, i: usize, e: usize, limit: usize) -> Result<usize> {
    if i == 0 || i > n + 1 {
        return Ok(0);
    }
    let wedges = decreasing_tuples(n + 1, i);
    let cols = wedges.len() * coords.dim(e);
    if cols > limit {
        return Err(Error::ResourceLimit {
            what: format!("Koszul differential ∧^{i}V ⊗ B_{e}"),
            size: cols,
            limit,
        });
    }
    let targets: HashMap<Vec<usize>, usize> = decreasing_tuples(n + 1, i - 1)
        .into_iter()
        .enumerate()
        .map(|(a, w)| (w, a))
        .collect();
    let p = coords.p;
    let mut ids: HashMap<(usize, Exponents), usize> = HashMap::new();
    let mut ech = Echelon::new(PArith(p));
    for w in &wedges {
        for m in &coords.standard[e] {
            let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
            for (pos, &l) in w.iter().enumerate() {
                let mut rest = w.clone();
                rest.remove(pos);
                let t = targets[&rest];
                let mut prod = m.clone();
                let at = prod.partition_point(|&x| x <= l);
                prod.insert(at, l);
                for (ex, v) in &coords.images[&prod] {
                    let next = ids.len();
                    let id = *ids.entry((t, ex.clone())).or_insert(next);
                    let v = if pos % 2 == 0 { *v } else { p - v };
                    let slot = acc.entry(id).or_insert(0);
                    *slot = (*slot + v) % p;
                }
            }
            let row: SparseRow<u64> = acc.into_iter().filter(|(_, v)| *v != 0).collect();
            ech.insert(row, Vec::new());
        }
    }
    Ok(ech.rank())
}

/// `β_{i,i+e}` for `i <= max_i` and `0 <= e <= k+1`, computed over `F_p`.
pub fn koszul_tor_oracle_mod(n: usize, k: usize, max_i: usize, p: u64) -> Result<BettiTable> {
    require(k >= 1 && 2 * k <= n + 1, || {
        format!("need 1 <= k <= (n+1)/2, got n = {n}, k = {k}")
    })?;
    require(is_prime(p), || format!("{p} is not prime"))?;
    let top_e = k + 1;
    // the differential out of ∧^i ⊗ B_e reaches B_{e+1}
    let coords = Coordinates::new(n, k, top_e + 1, p);
    let max_i = max_i.min(n + 1);
    // out of (i, e) for the kernel, into (i, e) from (i + 1, e − 1) for the boundary
    let cells: Vec<(usize, usize)> = (1..=max_i + 1)
        .flat_map(|i| (0..=top_e).map(move |e| (i, e)))
        .filter(|&(i, e)| i <= max_i || e < top_e)
        .collect();
    for &(i, e) in &cells {
        let cols = decreasing_tuples(n + 1, i).len() * coords.dim(e);
        if cols > ORACLE_COLUMN_LIMIT {
            return Err(Error::ResourceLimit {
                what: format!("Koszul differential ∧^{i}V ⊗ B_{e}"),
                size: cols,
                limit: ORACLE_COLUMN_LIMIT,
            });
        }
    }
    let ranks: BTreeMap<(usize, usize), usize> = cells
        .par_iter()
        .map(|&(i, e)| Ok(((i, e), koszul_rank(&coords, n, i, e, ORACLE_COLUMN_LIMIT)?)))
        .collect::<Result<_>>()?;
    let rank = |i: usize, e: usize| ranks.get(&(i, e)).copied().unwrap_or(0);
    let mut table = BettiTable::new();
    for i in 0..=max_i {
        for e in 0..=top_e {
            let wedge = decreasing_tuples(n + 1, i).len();
            let kernel = wedge * coords.dim(e) - rank(i, e);
            let boundary = if e == 0 { 0 } else { rank(i + 1, e - 1) };
            table.set(i, i + e, (kernel - boundary) as u64);
        }
    }
    Ok(table)
}

/// [`koszul_tor_oracle_mod`] at [`ORACLE_PRIME`].
pub fn koszul_tor_oracle(n: usize, k: usize, max_i: usize) -> Result<BettiTable> {
    koszul_tor_oracle_mod(n, k, max_i, ORACLE_PRIME)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hankel::{eagon_northcott_betti, hilbert_series};

    #[test]
    fn twisted_cubic() {
        let t = koszul_tor_oracle(3, 1, 2).unwrap();
        assert_eq!(t.to_string(), "(1; 3, 2)");
        assert_eq!(t, eagon_northcott_betti(3, 1).unwrap());
    }

    #[test]
    fn rational_normal_quartic() {
        assert_eq!(koszul_tor_oracle(4, 1, 3).unwrap().to_string(), "(1; 6, 8, 3)");
    }

    #[test]
    fn graded_pieces_match_series() {
        let coords = Coordinates::new(5, 2, 4, ORACLE_PRIME);
        let hs = hilbert_series(5, 2).unwrap().coefficients(5);
        for (e, &h) in hs.iter().enumerate() {
            assert_eq!(coords.dim(e) as i128, h);
        }
    }

    #[test]
    fn guard_trips() {
        let coords = Coordinates::new(8, 1, 2, ORACLE_PRIME);
        // ∧^2 V ⊗ B_1 has 36 · 9 columns
        assert!(koszul_rank(&coords, 8, 2, 1, 324).is_ok());
        assert!(matches!(
            koszul_rank(&coords, 8, 2, 1, 323),
            Err(Error::ResourceLimit { size: 324, .. })
        ));
        assert!(koszul_tor_oracle(4, 3, 1).is_err());
    }
}
