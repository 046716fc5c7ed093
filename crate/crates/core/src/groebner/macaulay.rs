//! Bases whose lowest-degree initial forms generate the initial ideal.
//!
//! Each generator is homogenized in the center variables with a fresh
//! variable `t`, the result is saturated by `t`, and a basis is computed for
//! the order "center degree, then larger `t`-exponent, then degrevlex". Under
//! that order the leading term of a homogenized `f` comes from the lowest
//! form of `f`, so dehomogenizing the basis yields elements whose initial
//! forms have leading monomials generating those of `in(I)`.

use super::basis::leading_monomial;
use super::ideal::Ideal;
use super::order::MonomialOrder;
use crate::error::Result;
use crate::field::Field;
use crate::ring::{Monomial, Polynomial};

/// Macaulay basis at the origin with respect to all variables.
pub fn macaulay_basis<F: Field>(ideal: &Ideal<F>) -> Result<Vec<Polynomial<F>>> {
    let all: Vec<usize> = (0..ideal.ring().arity()).collect();
    macaulay_basis_along(ideal, &all)
}

/// Macaulay basis with respect to the grading by degree in `center`, i.e.
/// along the coordinate subspace `V(x_i : i ∈ center)`.
pub fn macaulay_basis_along<F: Field>(ideal: &Ideal<F>, center: &[usize]) -> Result<Vec<Polynomial<F>>> {
    let ring = ideal.ring();
    if ideal.is_zero_ideal() {
        return Ok(Vec::new());
    }
    if ideal.is_unit()? {
        return Ok(vec![Polynomial::one(ring)]);
    }
    if ideal.generators().len() == 1 {
        return Ok(vec![ideal.generators()[0].monic()]);
    }
    let n = ring.arity();
    let t_name = ring.fresh_name("t");
    let big = ring.extended(&[t_name])?;
    let mut hom = Vec::new();
    for g in ideal.generators() {
        let top = g.terms().map(|(m, _)| m.degree_in(center)).max().unwrap_or(0);
        hom.push(Polynomial::from_terms(
            &big,
            g.terms().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.push(top - m.degree_in(center));
                (Monomial::new(e), c.clone())
            }),
        ));
    }
    let t = Polynomial::var(&big, n);
    let sat = Ideal::new(&big, hom)?.saturation(&t)?;

    let mut weights = vec![0u32; n + 1];
    for &i in center {
        weights[i] = 1;
    }
    weights[n] = 1;
    let order = MonomialOrder::Weighted {
        weights,
        tiebreak: Box::new(MonomialOrder::PreferVar { var: n, tiebreak: Box::new(MonomialOrder::DegRevLex) }),
    };
    let gb = sat.groebner_with(&order)?;

    let initial_order = MonomialOrder::DegRevLex;
    let mut candidates: Vec<(Monomial, Polynomial<F>)> = Vec::new();
    for g in gb.elements() {
        let de = Polynomial::from_terms(
            ring,
            g.terms().map(|(m, c)| (Monomial::new(m.exponents()[..n].to_vec()), c.clone())),
        );
        if de.is_zero() {
            continue;
        }
        let init = de.lowest_form_in(center)?;
        let lead = leading_monomial(&init, &initial_order).expect("nonzero");
        candidates.push((lead, de.monic()));
    }
    candidates.sort_by(|a, b| {
        a.0.degree_in(center)
            .cmp(&b.0.degree_in(center))
            .then_with(|| initial_order.cmp(&a.0, &b.0))
            .then_with(|| a.1.num_terms().cmp(&b.1.num_terms()))
    });
    let mut kept: Vec<(Monomial, Polynomial<F>)> = Vec::new();
    for (lead, p) in candidates {
        if !kept.iter().any(|(l, _)| l.divides(&lead)) {
            kept.push((lead, p));
        }
    }
    let mut out: Vec<Polynomial<F>> = kept.into_iter().map(|(_, p)| p).collect();
    let span = Ideal::new(ring, out.clone())?;
    for g in ideal.generators() {
        if !span.contains(g)? {
            out.push(g.monic());
        }
    }
    Ok(out)
}
