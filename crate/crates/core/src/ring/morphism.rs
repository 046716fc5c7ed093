use std::fmt;

use super::poly::{Polynomial, Ring, RingContext};
use crate::error::{Error, Result};
use crate::field::Field;

/// Ring homomorphism `K[source] → K[target]` given by the images of the
/// source variables.
#[derive(Clone, PartialEq, Eq)]
pub struct RingMorphism<F: Field> {
    source: Ring<F>,
    target: Ring<F>,
    images: Vec<Polynomial<F>>,
}

impl<F: Field> RingMorphism<F> {
    pub fn new(source: &Ring<F>, target: &Ring<F>, images: Vec<Polynomial<F>>) -> Result<Self> {
        if images.len() != source.arity() {
            return Err(Error::Domain(format!("morphism needs {} images, got {}", source.arity(), images.len())));
        }
        if images.iter().any(|p| !RingContext::same(p.ring(), target)) {
            return Err(Error::ContextMismatch);
        }
        Ok(RingMorphism { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(ring: &Ring<F>) -> Self {
        let images = (0..ring.arity()).map(|i| Polynomial::var(ring, i)).collect();
        RingMorphism { source: ring.clone(), target: ring.clone(), images }
    }

    /// Translation `x ↦ x + a` on a single ring.
    pub fn translation(ring: &Ring<F>, a: &[F::Elem]) -> Result<Self> {
        if a.len() != ring.arity() {
            return Err(Error::Domain("translation point has the wrong arity".into()));
        }
        let images =
            (0..ring.arity()).map(|i| Polynomial::var(ring, i) + Polynomial::constant(ring, a[i].clone())).collect();
        Ok(RingMorphism { source: ring.clone(), target: ring.clone(), images })
    }

    pub fn source(&self) -> &Ring<F> {
        &self.source
    }

    pub fn target(&self) -> &Ring<F> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial<F>] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Polynomial<F> {
        &self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        RingContext::same(&self.source, &self.target)
            && self.images.iter().enumerate().all(|(i, p)| *p == Polynomial::var(&self.target, i))
    }

    pub fn apply(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !RingContext::same(f.ring(), &self.source) {
            return Err(Error::ContextMismatch);
        }
        if self.source.arity() == 0 {
            return Ok(Polynomial::constant(&self.target, f.constant_term()));
        }
        f.substitute(&self.images)
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &RingMorphism<F>) -> Result<Self> {
        if !RingContext::same(&self.target, &other.source) {
            return Err(Error::ContextMismatch);
        }
        let images = self.images.iter().map(|p| other.apply(p)).collect::<Result<_>>()?;
        Ok(RingMorphism { source: self.source.clone(), target: other.target.clone(), images })
    }
}

/// `φ(f)` for a morphism `φ`.
pub fn apply_morphism<F: Field>(phi: &RingMorphism<F>, f: &Polynomial<F>) -> Result<Polynomial<F>> {
    phi.apply(f)
}

impl<F: Field> fmt::Display for RingMorphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.source.vars().iter().zip(&self.images).map(|(v, p)| format!("{v} -> {p}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl<F: Field> fmt::Debug for RingMorphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingMorphism({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::ring::parse::{parse_poly, parse_poly_list};

    #[test]
    fn chart_substitution_of_curve() {
        let r = RingContext::new(Rationals, &["x", "y"]).unwrap();
        let phi = RingMorphism::new(&r, &r, parse_poly_list(&r, "x, x*y").unwrap()).unwrap();
        let f = parse_poly(&r, "x^2 + y^17").unwrap();
        assert_eq!(phi.apply(&f).unwrap(), parse_poly(&r, "x^2 + x^17*y^17").unwrap());
    }

    #[test]
    fn camelia_point_chart_factors_x6() {
        let r = RingContext::new(Rationals, &["x", "y", "z"]).unwrap();
        let phi = RingMorphism::new(&r, &r, parse_poly_list(&r, "x, x*y, x*z").unwrap()).unwrap();
        let f = parse_poly(&r, "27*x^2*y^3*z^2 + (x^2 + y^3 - z^2)^3").unwrap();
        let expected = parse_poly(&r, "x^6*(27*x*y^3*z^2 + (1 + x*y^3 - z^2)^3)").unwrap();
        assert_eq!(phi.apply(&f).unwrap(), expected);
    }

    #[test]
    fn identity_and_composition() {
        let r = RingContext::new(Rationals, &["x", "y"]).unwrap();
        let f = parse_poly(&r, "x^3 - 2*x*y + 5").unwrap();
        assert_eq!(RingMorphism::identity(&r).apply(&f).unwrap(), f);
        let a = [Rationals.from_i64(2), Rationals.from_i64(-1)];
        let b = [Rationals.from_i64(-2), Rationals.from_i64(1)];
        let t = RingMorphism::translation(&r, &a).unwrap();
        let u = RingMorphism::translation(&r, &b).unwrap();
        assert!(t.then(&u).unwrap().is_identity());
    }
}
