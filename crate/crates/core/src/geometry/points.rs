//! Rational points of zero-dimensional ideals by triangular solving.

use std::cmp::Ordering;

use super::Point;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{Ideal, MonomialOrder};
use crate::ring::Polynomial;

/// Rational solutions, and whether non-rational solutions were detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet<F: Field> {
    pub points: Vec<Point<F>>,
    pub has_nonrational: bool,
}

/// All points of `V(I)` with coordinates in the ground field, sorted
/// lexicographically.
pub fn rational_points<F: Field>(ideal: &Ideal<F>) -> Result<PointSet<F>> {
    let ring = ideal.ring();
    let field = ring.field().clone();
    if ideal.is_unit()? {
        return Ok(PointSet { points: Vec::new(), has_nonrational: false });
    }
    if ring.arity() == 0 {
        return Ok(PointSet { points: vec![Vec::new()], has_nonrational: false });
    }
    if ideal.krull_dimension()? > 0 {
        return Err(Error::PositiveDimensional(format!("V{ideal} has positive dimension")));
    }
    let gb = ideal.groebner_with(&MonomialOrder::Lex)?;
    let n = ring.arity();
    let mut partial: Vec<Option<F::Elem>> = vec![None; n];
    let mut out = PointSet { points: Vec::new(), has_nonrational: false };
    solve(&field, gb.elements(), n - 1, &mut partial, &mut out)?;
    out.points.sort_by(|a, b| compare_points(&field, a, b));
    Ok(out)
}

pub fn compare_points<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match field.compare(x, y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

fn solve<F: Field>(
    field: &F,
    gb: &[Polynomial<F>],
    level: usize,
    partial: &mut Vec<Option<F::Elem>>,
    out: &mut PointSet<F>,
) -> Result<()> {
    let mut g: Option<Vec<F::Elem>> = None;
    for p in gb {
        if p.terms().any(|(m, _)| m.exponents()[..level].iter().any(|&e| e > 0)) {
            continue;
        }
        let u = specialize(field, p, level, partial);
        if u.is_empty() {
            continue;
        }
        g = Some(match g {
            None => u,
            Some(acc) => uni_gcd(field, acc, u),
        });
    }
    let g = g.ok_or_else(|| Error::PositiveDimensional("a coordinate is unconstrained".into()))?;
    let mut rest = g.clone();
    let mut roots = Vec::new();
    for r in field.root_candidates(&g)? {
        if field.is_zero(&uni_eval(field, &g, &r)) {
            while rest.len() > 1 && field.is_zero(&uni_eval(field, &rest, &r)) {
                rest = uni_div_linear(field, &rest, &r);
            }
            roots.push(r);
        }
    }
    if rest.len() > 1 {
        out.has_nonrational = true;
    }
    roots.sort_by(|a, b| field.compare(a, b));
    for r in roots {
        partial[level] = Some(r);
        if level == 0 {
            out.points.push(partial.iter().map(|c| c.clone().expect("assigned")).collect());
        } else {
            solve(field, gb, level - 1, partial, out)?;
        }
    }
    partial[level] = None;
    Ok(())
}

/// Univariate polynomial in variable `level` after substituting the
/// assigned later coordinates; trailing zeros trimmed.
fn specialize<F: Field>(field: &F, p: &Polynomial<F>, level: usize, partial: &[Option<F::Elem>]) -> Vec<F::Elem> {
    let mut coeffs: Vec<F::Elem> = Vec::new();
    for (m, c) in p.terms() {
        let mut v = c.clone();
        for (j, &e) in m.exponents().iter().enumerate().skip(level + 1) {
            if e > 0 {
                v = field.mul(&v, &field.pow(partial[j].as_ref().expect("assigned"), e as u64));
            }
        }
        let d = m.exponents()[level] as usize;
        if coeffs.len() <= d {
            coeffs.resize(d + 1, field.zero());
        }
        coeffs[d] = field.add(&coeffs[d], &v);
    }
    trim(field, coeffs)
}

fn trim<F: Field>(field: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    while a.last().is_some_and(|c| field.is_zero(c)) {
        a.pop();
    }
    a
}

pub(crate) fn uni_eval<F: Field>(field: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter().rev().fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

fn uni_rem<F: Field>(field: &F, mut a: Vec<F::Elem>, b: &[F::Elem]) -> Vec<F::Elem> {
    let lb = b.last().expect("nonzero divisor");
    let inv = field.inv(lb).expect("nonzero");
    while a.len() >= b.len() {
        let q = field.mul(a.last().expect("nonempty"), &inv);
        let shift = a.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            a[shift + i] = field.sub(&a[shift + i], &field.mul(&q, c));
        }
        a.pop();
        a = trim(field, a);
    }
    a
}

fn uni_gcd<F: Field>(field: &F, mut a: Vec<F::Elem>, mut b: Vec<F::Elem>) -> Vec<F::Elem> {
    while !b.is_empty() {
        let r = uni_rem(field, a, &b);
        a = b;
        b = r;
    }
    let inv = field.inv(a.last().expect("nonzero gcd")).expect("nonzero");
    a.iter().map(|c| field.mul(c, &inv)).collect()
}

/// Quotient of `a` by `x - r`, assuming `r` is a root.
fn uni_div_linear<F: Field>(field: &F, a: &[F::Elem], r: &F::Elem) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); a.len() - 1];
    let mut carry = field.zero();
    for i in (1..a.len()).rev() {
        carry = field.add(&a[i], &field.mul(&carry, r));
        out[i - 1] = carry.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::RingContext;

    #[test]
    fn intersection_points() {
        let r = RingContext::new(Rationals, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, "x^2 - 1, y - x").unwrap();
        let ps = rational_points(&i).unwrap();
        assert_eq!(ps.points.len(), 2);
        assert!(!ps.has_nonrational);
        let i = Ideal::parse(&r, "x^2 - 2, y").unwrap();
        let ps = rational_points(&i).unwrap();
        assert!(ps.points.is_empty());
        assert!(ps.has_nonrational);
    }

    #[test]
    fn finite_field_points() {
        let r = RingContext::new(PrimeField::new(5).unwrap(), &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, "x^2 + 1, y^2 - x").unwrap();
        let ps = rational_points(&i).unwrap();
        // x = 2 or 3; y^2 = 2 has no root mod 5, y^2 = 3 neither
        assert!(ps.points.is_empty());
        assert!(ps.has_nonrational);
    }

    #[test]
    fn positive_dimensional_is_refused() {
        let r = RingContext::new(Rationals, &["x", "y"]).unwrap();
        assert!(matches!(rational_points(&Ideal::parse(&r, "x").unwrap()), Err(Error::PositiveDimensional(_))));
    }
}
