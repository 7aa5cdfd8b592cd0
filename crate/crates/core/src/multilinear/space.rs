//! Formal representation spaces built from `U` and their enumerated bases.
//!
//! Basis conventions (version [`CONVENTIONS_VERSION`]):
//!
//! * `U` has basis `1, x` (positions 0 and 1) with weights -1 and +1.
//! * `Sym(d, U)` and `D(d, U)` are indexed by the exponent `j` of `x^j` (resp. `x^(j)`),
//!   `j = 0..=d`, weight `2j - d`.
//! * `Sym(n, X)` and `D(n, X)` for other `X` are indexed by sorted multisets of positions of
//!   `X`, in lexicographic order. For `X = U` this order agrees with the exponent order.
//! * `Wedge(m, X)` is indexed by strictly decreasing tuples of positions of `X`, in
//!   lexicographic order, so `Wedge(2, Sym(2, U))` lists `x∧1, x²∧1, x²∧x`.
//! * `Tensor(A, B)` is indexed by pairs `(a, b)` in row-major order, position `a * dim B + b`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::combin::{choose, decreasing_tuples, multiset_count, multisets};
use crate::Error;

pub const CONVENTIONS_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceExpr {
    /// The trivial one-dimensional representation.
    Field,
    U,
    Sym(usize, Box<SpaceExpr>),
    D(usize, Box<SpaceExpr>),
    Wedge(usize, Box<SpaceExpr>),
    Tensor(Box<SpaceExpr>, Box<SpaceExpr>),
}

impl SpaceExpr {
    pub fn sym(n: usize, x: SpaceExpr) -> SpaceExpr {
        SpaceExpr::Sym(n, Box::new(x))
    }

    pub fn d(n: usize, x: SpaceExpr) -> SpaceExpr {
        SpaceExpr::D(n, Box::new(x))
    }

    pub fn wedge(n: usize, x: SpaceExpr) -> SpaceExpr {
        SpaceExpr::Wedge(n, Box::new(x))
    }

    pub fn tensor(a: SpaceExpr, b: SpaceExpr) -> SpaceExpr {
        SpaceExpr::Tensor(Box::new(a), Box::new(b))
    }

    /// `Sym(n, U)`.
    pub fn sym_u(n: usize) -> SpaceExpr {
        SpaceExpr::sym(n, SpaceExpr::U)
    }

    /// `D(n, U)`.
    pub fn d_u(n: usize) -> SpaceExpr {
        SpaceExpr::d(n, SpaceExpr::U)
    }

    pub fn dim(&self) -> usize {
        match self {
            SpaceExpr::Field => 1,
            SpaceExpr::U => 2,
            SpaceExpr::Sym(n, x) | SpaceExpr::D(n, x) => multiset_count(x.dim(), *n),
            SpaceExpr::Wedge(n, x) => choose(x.dim(), *n),
            SpaceExpr::Tensor(a, b) => a.dim() * b.dim(),
        }
    }

    /// Checks that every exterior power is at most the dimension of its argument.
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            SpaceExpr::Field | SpaceExpr::U => Ok(()),
            SpaceExpr::Sym(_, x) | SpaceExpr::D(_, x) => x.validate(),
            SpaceExpr::Wedge(n, x) => {
                x.validate()?;
                if *n > x.dim() {
                    return Err(Error::InvalidParameter(format!(
                        "Wedge({n}, {x}) needs {n} <= dim {x} = {}",
                        x.dim()
                    )));
                }
                Ok(())
            }
            SpaceExpr::Tensor(a, b) => {
                a.validate()?;
                b.validate()
            }
        }
    }

    /// Identifies expressions whose enumerated bases coincide position by position, e.g.
    /// `Sym(1, X)` with `X` and `Tensor(Field, X)` with `X`.
    pub fn normalized(&self) -> SpaceExpr {
        match self {
            SpaceExpr::Field | SpaceExpr::U => self.clone(),
            SpaceExpr::Sym(0, _) | SpaceExpr::D(0, _) | SpaceExpr::Wedge(0, _) => SpaceExpr::Field,
            SpaceExpr::Sym(1, x) | SpaceExpr::D(1, x) | SpaceExpr::Wedge(1, x) => x.normalized(),
            SpaceExpr::Sym(n, x) => SpaceExpr::sym(*n, x.normalized()),
            SpaceExpr::D(n, x) => SpaceExpr::d(*n, x.normalized()),
            SpaceExpr::Wedge(n, x) => SpaceExpr::wedge(*n, x.normalized()),
            SpaceExpr::Tensor(a, b) => match (a.normalized(), b.normalized()) {
                (SpaceExpr::Field, y) | (y, SpaceExpr::Field) => y,
                (a, b) => SpaceExpr::tensor(a, b),
            },
        }
    }

    pub fn equivalent(&self, other: &SpaceExpr) -> bool {
        self.normalized() == other.normalized()
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Field => write!(f, "k"),
            SpaceExpr::U => write!(f, "U"),
            SpaceExpr::Sym(n, x) => write!(f, "Sym({n},{x})"),
            SpaceExpr::D(n, x) => write!(f, "D({n},{x})"),
            SpaceExpr::Wedge(n, x) => write!(f, "Wedge({n},{x})"),
            SpaceExpr::Tensor(a, b) => write!(f, "Tensor({a},{b})"),
        }
    }
}

impl FromStr for SpaceExpr {
    type Err = Error;

    /// Parses the `Display` syntax, e.g. `Wedge(2,Sym(3,U))`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<SpaceExpr, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser {
            src: compact.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        if p.pos != p.src.len() {
            return Err(p.fail("trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn fail(&self, what: &str) -> Error {
        Error::InvalidParameter(format!("cannot parse space expression at byte {}: {what}", self.pos))
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), Error> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.fail(&format!("expected '{tok}'")))
        }
    }

    fn number(&mut self) -> Result<usize, Error> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.fail("expected a number"))
    }

    fn expr(&mut self) -> Result<SpaceExpr, Error> {
        for (name, ctor) in [
            ("Sym(", SpaceExpr::sym as fn(usize, SpaceExpr) -> SpaceExpr),
            ("D(", SpaceExpr::d),
            ("Wedge(", SpaceExpr::wedge),
        ] {
            if self.eat(name) {
                let n = self.number()?;
                self.expect(",")?;
                let x = self.expr()?;
                self.expect(")")?;
                return Ok(ctor(n, x));
            }
        }
        if self.eat("Tensor(") {
            let a = self.expr()?;
            self.expect(",")?;
            let b = self.expr()?;
            self.expect(")")?;
            return Ok(SpaceExpr::tensor(a, b));
        }
        if self.eat("U") {
            return Ok(SpaceExpr::U);
        }
        if self.eat("k") {
            return Ok(SpaceExpr::Field);
        }
        Err(self.fail("expected U, k, Sym, D, Wedge or Tensor"))
    }
}

/// A basis element, expressed through positions in the bases of the argument spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisIndex {
    Unit,
    /// Position in the basis `1, x` of `U`.
    Atom(usize),
    /// Exponent `j` of `x^j` in `Sym(d, U)` or of `x^(j)` in `D(d, U)`.
    Monomial(usize),
    /// Sorted multiset of positions.
    Multiset(Vec<usize>),
    /// Strictly decreasing tuple of positions.
    Wedge(Vec<usize>),
    Pair(usize, usize),
}

pub fn enumerate_basis(s: &SpaceExpr) -> Vec<BasisIndex> {
    match s {
        SpaceExpr::Field => vec![BasisIndex::Unit],
        SpaceExpr::U => vec![BasisIndex::Atom(0), BasisIndex::Atom(1)],
        SpaceExpr::Sym(d, x) | SpaceExpr::D(d, x) if **x == SpaceExpr::U => {
            (0..=*d).map(BasisIndex::Monomial).collect()
        }
        SpaceExpr::Sym(n, x) | SpaceExpr::D(n, x) => {
            multisets(x.dim(), *n).into_iter().map(BasisIndex::Multiset).collect()
        }
        SpaceExpr::Wedge(n, x) => decreasing_tuples(x.dim(), *n)
            .into_iter()
            .map(BasisIndex::Wedge)
            .collect(),
        SpaceExpr::Tensor(a, b) => {
            let (da, db) = (a.dim(), b.dim());
            (0..da)
                .flat_map(|i| (0..db).map(move |j| BasisIndex::Pair(i, j)))
                .collect()
        }
    }
}

/// Weight of every basis element, in enumeration order.
pub fn weights(s: &SpaceExpr) -> Vec<i64> {
    match s {
        SpaceExpr::Field => vec![0],
        SpaceExpr::U => vec![-1, 1],
        SpaceExpr::Sym(d, x) | SpaceExpr::D(d, x) if **x == SpaceExpr::U => {
            (0..=*d as i64).map(|j| 2 * j - *d as i64).collect()
        }
        SpaceExpr::Sym(n, x) | SpaceExpr::D(n, x) => {
            let w = weights(x);
            multisets(x.dim(), *n)
                .iter()
                .map(|ms| ms.iter().map(|&i| w[i]).sum())
                .collect()
        }
        SpaceExpr::Wedge(n, x) => {
            let w = weights(x);
            decreasing_tuples(x.dim(), *n)
                .iter()
                .map(|t| t.iter().map(|&i| w[i]).sum())
                .collect()
        }
        SpaceExpr::Tensor(a, b) => {
            let (wa, wb) = (weights(a), weights(b));
            wa.iter().flat_map(|x| wb.iter().map(move |y| x + y)).collect()
        }
    }
}

/// Human-readable name of a basis element, e.g. `x^2∧x^0` or `x^(1)⊗x^3`.
pub fn basis_label(s: &SpaceExpr, idx: &BasisIndex) -> String {
    match (s, idx) {
        (SpaceExpr::Field, _) => "1".into(),
        (SpaceExpr::U, BasisIndex::Atom(0)) => "1".into(),
        (SpaceExpr::U, BasisIndex::Atom(_)) => "x".into(),
        (SpaceExpr::Sym(_, _), BasisIndex::Monomial(j)) => format!("x^{j}"),
        (SpaceExpr::D(_, _), BasisIndex::Monomial(j)) => format!("x^({j})"),
        (SpaceExpr::Sym(_, x) | SpaceExpr::D(_, x), BasisIndex::Multiset(ms)) => {
            let b = enumerate_basis(x);
            let parts: Vec<String> = ms.iter().map(|&i| basis_label(x, &b[i])).collect();
            let sep = if matches!(s, SpaceExpr::Sym(..)) { "·" } else { "∘" };
            format!("[{}]", parts.join(sep))
        }
        (SpaceExpr::Wedge(_, x), BasisIndex::Wedge(t)) => {
            let b = enumerate_basis(x);
            let parts: Vec<String> = t.iter().map(|&i| basis_label(x, &b[i])).collect();
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("∧")
            }
        }
        (SpaceExpr::Tensor(a, b), BasisIndex::Pair(i, j)) => {
            let (ba, bb) = (enumerate_basis(a), enumerate_basis(b));
            format!("{}⊗{}", basis_label(a, &ba[*i]), basis_label(b, &bb[*j]))
        }
        _ => format!("{idx:?}"),
    }
}

/// An enumerated basis with reverse lookup.
#[derive(Clone, Debug)]
pub struct Basis {
    space: SpaceExpr,
    elements: Vec<BasisIndex>,
    positions: HashMap<BasisIndex, usize>,
}

impl Basis {
    pub fn new(space: &SpaceExpr) -> Basis {
        let elements = enumerate_basis(space);
        let positions = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Basis {
            space: space.clone(),
            elements,
            positions,
        }
    }

    pub fn space(&self) -> &SpaceExpr {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasisIndex] {
        &self.elements
    }

    pub fn position(&self, idx: &BasisIndex) -> Option<usize> {
        self.positions.get(idx).copied()
    }

    /// Position of a sorted multiset or decreasing tuple, whichever this basis uses.
    pub fn position_of_seq(&self, seq: &[usize]) -> Option<usize> {
        let key = match &self.space {
            SpaceExpr::Sym(_, x) | SpaceExpr::D(_, x) if **x == SpaceExpr::U => BasisIndex::Monomial(seq.iter().sum()),
            SpaceExpr::Sym(..) | SpaceExpr::D(..) => BasisIndex::Multiset(seq.to_vec()),
            SpaceExpr::Wedge(..) => BasisIndex::Wedge(seq.to_vec()),
            _ => return None,
        };
        self.position(&key)
    }

    /// Positions in the argument space making up element `i` (multiset or wedge tuple).
    pub fn seq(&self, i: usize) -> Vec<usize> {
        match &self.elements[i] {
            BasisIndex::Monomial(j) => {
                let d = match &self.space {
                    SpaceExpr::Sym(d, _) | SpaceExpr::D(d, _) => *d,
                    _ => unreachable!(),
                };
                let mut v = vec![0; d - j];
                v.extend(std::iter::repeat_n(1, *j));
                v
            }
            BasisIndex::Multiset(v) | BasisIndex::Wedge(v) => v.clone(),
            BasisIndex::Atom(a) => vec![*a],
            BasisIndex::Unit => vec![],
            BasisIndex::Pair(a, b) => vec![*a, *b],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        assert_eq!(
            enumerate_basis(&SpaceExpr::sym_u(2)),
            vec![
                BasisIndex::Monomial(0),
                BasisIndex::Monomial(1),
                BasisIndex::Monomial(2)
            ]
        );
        let w = SpaceExpr::wedge(2, SpaceExpr::sym_u(2));
        assert_eq!(
            enumerate_basis(&w),
            vec![
                BasisIndex::Wedge(vec![1, 0]),
                BasisIndex::Wedge(vec![2, 0]),
                BasisIndex::Wedge(vec![2, 1])
            ]
        );
        let b = Basis::new(&w);
        let labels: Vec<String> = b.elements().iter().map(|e| basis_label(&w, e)).collect();
        assert_eq!(labels, vec!["x^1∧x^0", "x^2∧x^0", "x^2∧x^1"]);
        let d = SpaceExpr::d(2, SpaceExpr::sym_u(1));
        assert_eq!(
            enumerate_basis(&d),
            vec![
                BasisIndex::Multiset(vec![0, 0]),
                BasisIndex::Multiset(vec![0, 1]),
                BasisIndex::Multiset(vec![1, 1])
            ]
        );
    }

    #[test]
    fn dims_match_enumeration() {
        for s in [
            SpaceExpr::wedge(3, SpaceExpr::sym_u(5)),
            SpaceExpr::sym(3, SpaceExpr::d_u(2)),
            SpaceExpr::tensor(SpaceExpr::d_u(3), SpaceExpr::wedge(2, SpaceExpr::sym_u(3))),
            SpaceExpr::d(2, SpaceExpr::tensor(SpaceExpr::U, SpaceExpr::sym_u(2))),
        ] {
            assert_eq!(s.dim(), enumerate_basis(&s).len(), "{s}");
            assert_eq!(s.dim(), weights(&s).len());
        }
    }

    #[test]
    fn parse_round_trip() {
        let s = SpaceExpr::tensor(SpaceExpr::d_u(3), SpaceExpr::wedge(2, SpaceExpr::sym_u(3)));
        assert_eq!(s.to_string().parse::<SpaceExpr>().unwrap(), s);
        assert_eq!(
            " Wedge( 2 , Sym(3,U) )".parse::<SpaceExpr>().unwrap(),
            SpaceExpr::wedge(2, SpaceExpr::sym_u(3))
        );
        assert!("Sym(2,V)".parse::<SpaceExpr>().is_err());
        assert!("U)".parse::<SpaceExpr>().is_err());
    }

    #[test]
    fn normalization() {
        let a = SpaceExpr::tensor(SpaceExpr::sym(1, SpaceExpr::d_u(2)), SpaceExpr::Field);
        assert!(a.equivalent(&SpaceExpr::d_u(2)));
        assert!(!SpaceExpr::sym_u(2).equivalent(&SpaceExpr::d_u(2)));
        assert!(SpaceExpr::wedge(3, SpaceExpr::U).validate().is_err());
    }

    #[test]
    fn monomial_sequences() {
        let b = Basis::new(&SpaceExpr::d_u(3));
        assert_eq!(b.seq(1), vec![0, 0, 1]);
        assert_eq!(b.position_of_seq(&[0, 1, 1]), Some(2));
    }
}
