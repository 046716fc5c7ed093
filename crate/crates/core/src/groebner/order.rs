use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::ring::Monomial;

/// A monomial order. All variants are total, multiplicative and well-founded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum MonomialOrder {
    Lex,
    DegLex,
    DegRevLex,
    /// Compares the total degree in `elim` first, then falls back to `inner`.
    /// Every element whose leading monomial avoids `elim` lies in the
    /// subring of the remaining variables.
    Block {
        elim: Vec<usize>,
        inner: Box<MonomialOrder>,
    },
    /// Compares `weights · α` first, then `tiebreak`.
    Weighted {
        weights: Vec<u32>,
        tiebreak: Box<MonomialOrder>,
    },
    /// Prefers the larger exponent of `var`, then `tiebreak`. Only a monomial
    /// order when nested inside a grading that bounds `var`; used for
    /// homogenized computations.
    PreferVar {
        var: usize,
        tiebreak: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    pub fn elimination(elim: &[usize]) -> Self {
        MonomialOrder::Block { elim: elim.to_vec(), inner: Box::new(MonomialOrder::DegRevLex) }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegLex => a.grlex_cmp(b),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Block { elim, inner } => {
                a.degree_in(elim).cmp(&b.degree_in(elim)).then_with(|| inner.cmp(a, b))
            }
            MonomialOrder::Weighted { weights, tiebreak } => {
                let w = |m: &Monomial| -> u64 {
                    m.exponents().iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
                };
                w(a).cmp(&w(b)).then_with(|| tiebreak.cmp(a, b))
            }
            MonomialOrder::PreferVar { var, tiebreak } => {
                a.exponents()[*var].cmp(&b.exponents()[*var]).then_with(|| tiebreak.cmp(a, b))
            }
        }
    }
}

impl std::fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegLex => write!(f, "deglex"),
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Block { elim, inner } => write!(f, "block({elim:?}, {inner})"),
            MonomialOrder::Weighted { weights, tiebreak } => write!(f, "weighted({weights:?}, {tiebreak})"),
            MonomialOrder::PreferVar { var, tiebreak } => write!(f, "prefer({var}, {tiebreak})"),
        }
    }
}
