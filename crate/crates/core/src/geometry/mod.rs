//! Local invariants: orders, symbolic powers, singular and top loci,
//! Hilbert–Samuel counts and rational points.

pub mod points;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{macaulay_basis, Ideal};
use crate::ring::{DerivativeMode, Monomial, Polynomial};

pub use points::{compare_points, rational_points, PointSet};

/// A point with coordinates in the ground field.
pub type Point<F> = Vec<<F as Field>::Elem>;

/// Largest symbolic power tried when computing the order along a prime.
pub const SYMBOLIC_POWER_CAP: u32 = 32;

#[derive(Clone, Debug)]
pub enum Site<F: Field> {
    Point(Point<F>),
    Prime(Ideal<F>),
}

/// Order of an ideal at a point or along a prime; `value = None` is infinity.
#[derive(Clone, Debug)]
pub struct OrderReport<F: Field> {
    pub value: Option<u32>,
    pub witness: Option<Polynomial<F>>,
    pub site: Site<F>,
}

#[derive(Clone, Debug)]
pub struct SymbolicMembership<F: Field> {
    pub member: bool,
    /// Element of `(P^k : f)` outside `P` when `member` holds.
    pub witness: Option<Polynomial<F>>,
}

pub fn origin<F: Field>(field: &F, n: usize) -> Point<F> {
    vec![field.zero(); n]
}

pub fn order_at_point<F: Field>(ideal: &Ideal<F>, a: &[F::Elem]) -> Result<OrderReport<F>> {
    if a.len() != ideal.ring().arity() {
        return Err(Error::Domain("point has the wrong number of coordinates".into()));
    }
    let mut best: Option<(u32, &Polynomial<F>)> = None;
    for g in ideal.generators() {
        if let Some(o) = g.translate(a)?.order() {
            if best.is_none_or(|(b, _)| o < b) {
                best = Some((o, g));
            }
        }
    }
    Ok(OrderReport {
        value: best.map(|(o, _)| o),
        witness: best.map(|(_, g)| g.clone()),
        site: Site::Point(a.to_vec()),
    })
}

/// Tests `f ∈ P^(k)` through `(P^k : f) ⊄ P`.
pub fn symbolic_power_membership<F: Field>(
    f: &Polynomial<F>,
    prime: &Ideal<F>,
    k: u32,
) -> Result<SymbolicMembership<F>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("symbolic power membership of 0".into()));
    }
    if k == 0 {
        return Ok(SymbolicMembership { member: true, witness: Some(Polynomial::one(f.ring())) });
    }
    let colon = prime.pow(k)?.colon_poly(f)?.normalized()?;
    let mut gens: Vec<Polynomial<F>> = colon.generators().to_vec();
    gens.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| b.leading_lex().map(|t| t.0).cmp(&a.leading_lex().map(|t| t.0)))
            .then(a.num_terms().cmp(&b.num_terms()))
    });
    for g in gens {
        if !prime.contains(&g)? {
            return Ok(SymbolicMembership { member: true, witness: Some(g) });
        }
    }
    Ok(SymbolicMembership { member: false, witness: None })
}

/// Largest `k` with `I ⊆ P^(k)`, by ascending search.
pub fn order_along_prime<F: Field>(ideal: &Ideal<F>, prime: &Ideal<F>) -> Result<OrderReport<F>> {
    let site = Site::Prime(prime.clone());
    if ideal.is_zero_ideal() {
        return Ok(OrderReport { value: None, witness: None, site });
    }
    if !prime.contains_ideal(ideal)? {
        let w = ideal.generators().iter().find(|g| !prime.contains(g).unwrap_or(true)).cloned();
        return Ok(OrderReport { value: Some(0), witness: w, site });
    }
    let mut best: Option<(u32, Polynomial<F>)> = None;
    for g in ideal.generators() {
        let mut k = 1;
        loop {
            if k > SYMBOLIC_POWER_CAP {
                return Err(Error::Guard(format!("order along the prime exceeds {SYMBOLIC_POWER_CAP}")));
            }
            if best.as_ref().is_some_and(|(b, _)| k > *b) {
                break;
            }
            if !symbolic_power_membership(g, prime, k + 1)?.member {
                break;
            }
            k += 1;
        }
        if best.as_ref().is_none_or(|(b, _)| k < *b) {
            best = Some((k, g.clone()));
        }
    }
    let (v, w) = best.expect("nonzero ideal");
    Ok(OrderReport { value: Some(v), witness: Some(w), site })
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant<F: Field>(m: &[Vec<Polynomial<F>>]) -> Result<Polynomial<F>> {
    let k = m.len();
    if k == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = Polynomial::zero(m[0][0].ring());
    for j in 0..k {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial<F>>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = m[0][j].try_mul(&determinant(&minor)?)?;
        acc = if j % 2 == 0 { acc.try_add(&term)? } else { acc.try_sub(&term)? };
    }
    Ok(acc)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All `k×k` minors of the Jacobian matrix of `gens`.
pub fn jacobian_minors<F: Field>(gens: &[Polynomial<F>], k: usize) -> Result<Vec<Polynomial<F>>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring();
    if k == 0 {
        return Ok(vec![Polynomial::one(ring)]);
    }
    let jac: Vec<Vec<Polynomial<F>>> = gens.iter().map(|g| (0..ring.arity()).map(|i| g.partial(i)).collect()).collect();
    let mut out = Vec::new();
    for rows in subsets(gens.len(), k) {
        for cols in subsets(ring.arity(), k) {
            let sub: Vec<Vec<Polynomial<F>>> =
                rows.iter().map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            let d = determinant(&sub)?;
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// `I` plus the Jacobian minors of size equal to the codimension.
pub fn singular_locus<F: Field>(ideal: &Ideal<F>) -> Result<Ideal<F>> {
    if ideal.is_unit()? {
        return Err(Error::UnitIdeal("singular locus".into()));
    }
    let n = ideal.ring().arity();
    let codim = n - ideal.krull_dimension()?;
    if codim == 0 {
        return Ok(Ideal::unit(ideal.ring()));
    }
    let minors = jacobian_minors(ideal.generators(), codim)?;
    ideal.sum(&Ideal::new(ideal.ring(), minors)?)?.normalized()
}

pub(crate) fn exponents_up_to(n: usize, max: u32) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..=(max - used) {
                let mut v = e.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Monomial::new).collect()
}

/// Ideal of all derivatives of order `< o` of the generators, where `o` is
/// the order at `a`. Characteristic zero only.
pub fn top_locus_ideal<F: Field>(ideal: &Ideal<F>, a: &[F::Elem]) -> Result<Ideal<F>> {
    if ideal.ring().field().characteristic() != 0 {
        return Err(Error::Characteristic("top locus by derivatives needs characteristic zero".into()));
    }
    let Some(o) = order_at_point(ideal, a)?.value else {
        return Ok(Ideal::zero(ideal.ring()));
    };
    if o == 0 {
        return Ok(Ideal::zero(ideal.ring()));
    }
    let alphas = exponents_up_to(ideal.ring().arity(), o - 1);
    let mut gens = Vec::new();
    for g in ideal.generators() {
        for alpha in &alphas {
            let d = g.derivative(alpha, DerivativeMode::Ordinary);
            if !d.is_zero() {
                gens.push(d);
            }
        }
    }
    Ideal::new(ideal.ring(), gens)?.normalized()
}

/// Lowest initial forms of a Macaulay basis of `translate(I, a)`.
pub fn initial_ideal_at<F: Field>(ideal: &Ideal<F>, a: &[F::Elem]) -> Result<Ideal<F>> {
    let moved = ideal.translate(a)?;
    let mb = macaulay_basis(&moved)?;
    let forms = mb.iter().map(|g| g.initial_form_lowest()).collect::<Result<_>>()?;
    Ideal::new(ideal.ring(), forms)
}

/// `dim m^k / m^(k+1)` of the local ring at `a` for `k = 0..=n_max`.
pub fn hilbert_samuel_prefix<F: Field>(ideal: &Ideal<F>, a: &[F::Elem], n_max: u32) -> Result<Vec<u64>> {
    let n = ideal.ring().arity();
    if a.len() != n {
        return Err(Error::Domain("point has the wrong number of coordinates".into()));
    }
    if order_at_point(ideal, a)?.value == Some(0) {
        return Ok(vec![0; n_max as usize + 1]);
    }
    let initial = initial_ideal_at(ideal, a)?;
    let leads = initial.leading_ideal()?;
    let mut out = Vec::new();
    for k in 0..=n_max {
        let count = exponents_up_to(n, k)
            .into_iter()
            .filter(|m| m.degree() == k && !leads.iter().any(|l| l.divides(m)))
            .count();
        out.push(count as u64);
    }
    Ok(out)
}
