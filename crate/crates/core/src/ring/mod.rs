//! Exact sparse multivariate polynomials over a [`crate::field::Field`].

pub mod monomial;
pub mod morphism;
pub mod parse;
pub mod poly;

pub use monomial::Monomial;
pub use morphism::{apply_morphism, RingMorphism};
pub use parse::{parse_poly, parse_poly_list};
pub use poly::{poly_arith, ArithOp, DerivativeMode, Polynomial, Ring, RingContext, TERM_GUARD};
