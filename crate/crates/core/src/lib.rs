//! Exact blowups of affine space, ideal transforms, local resolution
//! invariants and the polyhedral game, over `Q` and prime fields.

pub mod blowup;
pub mod descent;
pub mod error;
pub mod field;
pub mod game;
pub mod geometry;
pub mod groebner;
pub mod resolve;
pub mod ring;
pub mod transform;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use groebner::{GroebnerBasis, Ideal, MonomialOrder};
pub use ring::{Monomial, Polynomial, Ring, RingContext, RingMorphism};

pub type QPoly = Polynomial<Rationals>;
pub type FpPoly = Polynomial<PrimeField>;
pub type QRing = Ring<Rationals>;
pub type FpRing = Ring<PrimeField>;
pub type QIdeal = Ideal<Rationals>;
pub type FpIdeal = Ideal<PrimeField>;
