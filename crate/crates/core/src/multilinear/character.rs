//! Weight characters of `SL_2` representations as Laurent polynomials in `q`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::space::SpaceExpr;

/// Laurent polynomial `Σ c_a q^a` with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl CharPoly {
    pub fn zero() -> CharPoly {
        CharPoly::default()
    }

    pub fn one() -> CharPoly {
        CharPoly::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i64) -> CharPoly {
        let mut c = CharPoly::zero();
        c.add_term(exp, coeff);
        c
    }

    pub fn from_weights(ws: &[i64]) -> CharPoly {
        let mut c = CharPoly::zero();
        for &w in ws {
            c.add_term(w, 1);
        }
        c
    }

    fn add_term(&mut self, exp: i64, coeff: i64) {
        let e = self.coeffs.entry(exp).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at `q = 1`, i.e. the dimension.
    pub fn at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().all(|(e, c)| self.coeff(-e) == *c)
    }

    pub fn add(&self, other: &CharPoly) -> CharPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        let mut out = CharPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// `q^shift · self`
    pub fn shift(&self, shift: i64) -> CharPoly {
        CharPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + shift, *c)).collect(),
        }
    }

    /// Coefficientwise `self <= other`.
    pub fn contained_in(&self, other: &CharPoly) -> bool {
        self.coeffs.iter().all(|(e, c)| *c <= other.coeff(*e))
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let (sign, abs) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (*e, abs) {
                (0, a) => write!(f, "{a}")?,
                (e, 1) => write!(f, "q^{e}")?,
                (e, a) => write!(f, "{a}q^{e}")?,
            }
        }
        Ok(())
    }
}

/// Expands the weight multiset of a character into one weight per basis vector.
fn expand(c: &CharPoly) -> Vec<i64> {
    let mut out = Vec::new();
    for (e, k) in c.terms() {
        assert!(k >= 0, "characters of spaces have nonnegative coefficients");
        out.extend(std::iter::repeat_n(e, k as usize));
    }
    out
}

/// Degree-`n` part of the symmetric (`exterior = false`) or exterior algebra on vectors of the
/// given weights.
fn power_character(ws: &[i64], n: usize, exterior: bool) -> CharPoly {
    let mut dp = vec![CharPoly::zero(); n + 1];
    dp[0] = CharPoly::one();
    for &w in ws {
        if exterior {
            for j in (1..=n).rev() {
                let add = dp[j - 1].shift(w);
                dp[j] = dp[j].add(&add);
            }
        } else {
            for j in 1..=n {
                let add = dp[j - 1].shift(w);
                dp[j] = dp[j].add(&add);
            }
        }
    }
    dp.swap_remove(n)
}

/// The weight character, computed compositionally. `Sym` and `D` share a character.
pub fn character(s: &SpaceExpr) -> CharPoly {
    match s {
        SpaceExpr::Field => CharPoly::one(),
        SpaceExpr::U => CharPoly::from_weights(&[-1, 1]),
        SpaceExpr::Sym(n, x) | SpaceExpr::D(n, x) => power_character(&expand(&character(x)), *n, false),
        SpaceExpr::Wedge(n, x) => power_character(&expand(&character(x)), *n, true),
        SpaceExpr::Tensor(a, b) => character(a).mul(&character(b)),
    }
}

#[cfg(test)]
mod tests {
    use super::super::space::weights;
    use super::*;

    #[test]
    fn character_of_u() {
        assert_eq!(character(&SpaceExpr::U).to_string(), "q^1 + q^-1");
    }

    #[test]
    fn reciprocity_shadow() {
        let a = character(&SpaceExpr::wedge(2, SpaceExpr::sym_u(3)));
        let b = character(&SpaceExpr::sym(2, SpaceExpr::d_u(2)));
        assert_eq!(a.to_string(), "q^4 + q^2 + 2 + q^-2 + q^-4");
        assert_eq!(a, b);
    }

    #[test]
    fn compositional_matches_enumeration() {
        for s in [
            SpaceExpr::wedge(3, SpaceExpr::sym_u(5)),
            SpaceExpr::sym(3, SpaceExpr::d_u(2)),
            SpaceExpr::d(2, SpaceExpr::tensor(SpaceExpr::U, SpaceExpr::sym_u(2))),
            SpaceExpr::wedge(2, SpaceExpr::wedge(2, SpaceExpr::sym_u(3))),
        ] {
            assert_eq!(character(&s), CharPoly::from_weights(&weights(&s)), "{s}");
        }
    }

    #[test]
    fn containment() {
        let small = CharPoly::from_weights(&[0, 2]);
        let big = CharPoly::from_weights(&[-2, 0, 2, 0]);
        assert!(small.contained_in(&big));
        assert!(!big.contained_in(&small));
        assert_eq!(CharPoly::zero().to_string(), "0");
        assert_eq!(CharPoly::monomial(-3, -2).to_string(), "-2q^-3");
    }
}
