//! Buchberger kernel and the ideal operations built on it.

pub mod basis;
pub mod ideal;
pub mod macaulay;
pub mod order;

pub use basis::{groebner_basis, leading_monomial, GroebnerBasis, REDUCTION_GUARD};
pub use ideal::{Ideal, SATURATION_CAP};
pub use macaulay::{macaulay_basis, macaulay_basis_along};
pub use order::MonomialOrder;
