//! Hypersurfaces of maximal contact, coefficient ideals, exceptional
//! factorization and the residual order in positive characteristic.

use serde::{Deserialize, Serialize};

use crate::blowup::BlowupChart;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::Point;
use crate::groebner::Ideal;
use crate::ring::{DerivativeMode, Monomial, Polynomial, RingMorphism};
use crate::transform::{controlled_transform, weak_transform};

/// Fixed shear parameters tried when searching for `x_n`-regularity.
pub const REGULARITY_SHEARS: [i64; 6] = [1, 2, 3, -1, 5, 7];

/// The hypersurface `x_var = 0` through `base_point`, for an ideal of
/// order `order` there.
#[derive(Clone, Debug)]
pub struct HypersurfaceFrame<F: Field> {
    pub var: usize,
    pub base_point: Point<F>,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalEntry {
    pub var: usize,
    pub multiplicity: u32,
    pub birth: usize,
}

/// Exceptional divisors present as coordinate hyperplanes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalRecord {
    pub entries: Vec<ExceptionalEntry>,
}

impl ExceptionalRecord {
    pub fn new() -> Self {
        ExceptionalRecord::default()
    }

    /// Record with multiplicity one for each listed variable.
    pub fn from_vars(vars: &[usize]) -> Self {
        ExceptionalRecord {
            entries: vars.iter().map(|&var| ExceptionalEntry { var, multiplicity: 1, birth: 0 }).collect(),
        }
    }

    pub fn vars(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.var).collect()
    }

    pub fn contains(&self, var: usize) -> bool {
        self.entries.iter().any(|e| e.var == var)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds or replaces the entry for `var`; entries stay sorted by variable.
    pub fn insert(&mut self, entry: ExceptionalEntry) {
        self.entries.retain(|e| e.var != entry.var);
        self.entries.push(entry);
        self.entries.sort_by_key(|e| e.var);
    }

    pub fn remove(&mut self, var: usize) {
        self.entries.retain(|e| e.var != var);
    }
}

/// `J = x^monomial · residual`.
#[derive(Clone, Debug)]
pub struct FactoredIdeal<F: Field> {
    pub monomial: Monomial,
    pub residual: Ideal<F>,
}

fn require_char0<F: Field>(field: &F, what: &str) -> Result<()> {
    if field.characteristic() != 0 {
        return Err(Error::Characteristic(format!("{what} needs characteristic zero")));
    }
    Ok(())
}

/// `x_n ↦ x_n − a_(o−1) / (o·a_o)`, removing the `x_n^(o−1)` coefficient.
/// Requires `f` monic-like in `x_n`: degree `o` with constant leading
/// coefficient.
pub fn tschirnhaus<F: Field>(
    f: &Polynomial<F>,
    frame: &HypersurfaceFrame<F>,
) -> Result<(RingMorphism<F>, Polynomial<F>)> {
    let ring = f.ring();
    let field = ring.field();
    require_char0(field, "Tschirnhaus transformation")?;
    let o = frame.order as usize;
    let coeffs = f.expand_in(frame.var);
    if coeffs.len() != o + 1 || !coeffs[o].is_constant() || coeffs[o].is_zero() {
        return Err(Error::Domain(format!(
            "f is not of degree {o} with constant leading coefficient in {}",
            ring.vars()[frame.var]
        )));
    }
    let lead = coeffs[o].constant_term();
    let denom = field.mul(&field.from_i64(o as i64), &lead);
    let inv = field.inv(&denom).expect("nonzero in characteristic zero");
    let shift = if o >= 1 { coeffs[o - 1].scale(&inv) } else { Polynomial::zero(ring) };
    let images = (0..ring.arity())
        .map(|i| {
            let xi = Polynomial::var(ring, i);
            if i == frame.var {
                xi.try_sub(&shift)
            } else {
                Ok(xi)
            }
        })
        .collect::<Result<_>>()?;
    let change = RingMorphism::new(ring, ring, images)?;
    let out = change.apply(f)?;
    Ok((change, out))
}

fn exponents_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur.push(left);
            out.push(Monomial::new(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(i + 1, n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(0, n, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Result of [`osculating_frame`]: the total coordinate change (including
/// the translation of the base point to the origin), the frame at the
/// origin and the transformed polynomial.
#[derive(Clone, Debug)]
pub struct Osculation<F: Field> {
    pub change: RingMorphism<F>,
    pub frame: HypersurfaceFrame<F>,
    pub f: Polynomial<F>,
    /// `false` when the Tschirnhaus step did not apply (degree in the frame
    /// variable exceeds the order).
    pub tschirnhaus_applied: bool,
}

/// Finds an order-one derivative of order `o − 1` and makes it the frame
/// variable.
pub fn osculating_frame<F: Field>(f: &Polynomial<F>, a: &[F::Elem]) -> Result<Osculation<F>> {
    let ring = f.ring();
    let field = ring.field().clone();
    require_char0(&field, "osculating frame")?;
    let n = ring.arity();
    let shift = RingMorphism::translation(ring, a)?;
    let g = shift.apply(f)?;
    let o = g.order().ok_or_else(|| Error::ZeroInput("osculating frame of 0".into()))?;
    if o == 0 {
        return Err(Error::Domain("point does not lie on the hypersurface".into()));
    }
    let mut linear: Option<Vec<F::Elem>> = None;
    for alpha in exponents_of_degree(n, o - 1) {
        let d = g.derivative(&alpha, DerivativeMode::Ordinary);
        if d.order() == Some(1) {
            let lin = (0..n).map(|i| d.coefficient(&Monomial::var(n, i, 1))).collect();
            linear = Some(lin);
            break;
        }
    }
    let lin = linear.ok_or_else(|| Error::Domain("no derivative of order one found".into()))?;
    let k = lin.iter().position(|c| !field.is_zero(c)).expect("order one");
    // new x_k := Σ c_i x_i, i.e. old x_k = (x_k − Σ_{i≠k} c_i x_i) / c_k
    let ck_inv = field.inv(&lin[k]).expect("nonzero");
    let mut old_k = Polynomial::var(ring, k);
    for (i, c) in lin.iter().enumerate() {
        if i != k && !field.is_zero(c) {
            old_k = old_k.try_sub(&Polynomial::var(ring, i).scale(c))?;
        }
    }
    old_k = old_k.scale(&ck_inv);
    let images = (0..n).map(|i| if i == k { old_k.clone() } else { Polynomial::var(ring, i) }).collect();
    let mut change = shift.then(&RingMorphism::new(ring, ring, images)?)?;
    let mut h = change.apply(f)?;

    let pure = Monomial::var(n, k, o);
    if field.is_zero(&h.initial_form_lowest()?.coefficient(&pure)) {
        let mut found = false;
        for t in REGULARITY_SHEARS {
            let tc = field.from_i64(t);
            let images = (0..n)
                .map(|i| {
                    let xi = Polynomial::var(ring, i);
                    if i == k {
                        Ok(xi)
                    } else {
                        xi.try_add(&Polynomial::var(ring, k).scale(&tc))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let shear = RingMorphism::new(ring, ring, images)?;
            let candidate = shear.apply(&h)?;
            if !field.is_zero(&candidate.initial_form_lowest()?.coefficient(&pure)) {
                change = change.then(&shear)?;
                h = candidate;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::Domain("no regular direction found among the fixed shears".into()));
        }
    }

    let frame = HypersurfaceFrame { var: k, base_point: vec![field.zero(); n], order: o };
    match tschirnhaus(&h, &frame) {
        Ok((t, out)) => Ok(Osculation { change: change.then(&t)?, frame, f: out, tschirnhaus_applied: true }),
        Err(Error::Domain(_)) => Ok(Osculation { change, frame, f: h, tschirnhaus_applied: false }),
        Err(e) => Err(e),
    }
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

/// `Σ_{i<o} (a_{g,i} : g)^{o!/(o−i)}` from the generators, in coordinates
/// centered at the frame's base point.
pub fn coefficient_ideal<F: Field>(ideal: &Ideal<F>, frame: &HypersurfaceFrame<F>) -> Result<Ideal<F>> {
    let o = frame.order;
    if o == 0 {
        return Err(Error::Domain("coefficient ideal needs order at least one".into()));
    }
    let moved = ideal.translate(&frame.base_point)?;
    let ring = ideal.ring();
    let of = factorial(o);
    let mut total = Ideal::zero(ring);
    for i in 0..o {
        let mut level = Vec::new();
        for g in moved.generators() {
            let coeffs = g.expand_in(frame.var);
            if let Some(c) = coeffs.get(i as usize) {
                if !c.is_zero() {
                    level.push(c.clone());
                }
            }
        }
        if level.is_empty() {
            continue;
        }
        let weight = (of / (o - i) as u64) as u32;
        let level = Ideal::new(ring, level)?;
        let powered = if level.generators().len() == 1 {
            Ideal::principal(&level.generators()[0].try_pow(weight)?)
        } else {
            level.pow(weight)?
        };
        total = total.sum(&powered)?;
    }
    if total.is_zero_ideal() {
        return Ok(total);
    }
    total.normalized()
}

/// Extracts the largest exceptional monomial dividing every generator.
pub fn factor_exceptional<F: Field>(ideal: &Ideal<F>, exc: &ExceptionalRecord) -> Result<FactoredIdeal<F>> {
    let ring = ideal.ring();
    let n = ring.arity();
    let vars = exc.vars();
    let mut mono: Option<Monomial> = None;
    for g in ideal.generators() {
        let content = g.monomial_content();
        let mut e = vec![0u32; n];
        for &v in &vars {
            e[v] = content.exponents()[v];
        }
        let m = Monomial::new(e);
        mono = Some(match mono {
            None => m,
            Some(prev) => prev.gcd(&m),
        });
    }
    let mono = mono.unwrap_or_else(|| Monomial::one(n));
    let residual = ideal
        .generators()
        .iter()
        .map(|g| {
            let mut q = g.clone();
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e > 0 {
                    q = q.div_var_pow(i, e)?;
                }
            }
            Ok(q)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FactoredIdeal { monomial: mono, residual: Ideal::new(ring, residual)? })
}

/// Splits a purely inseparable `f = c·x_k^q + F(other variables)` with
/// `q` a power of the characteristic; returns `(k, q, F)`.
pub fn purely_inseparable_split<F: Field>(f: &Polynomial<F>) -> Result<(usize, u32, Polynomial<F>)> {
    let ring = f.ring();
    let p = ring.field().characteristic();
    if p == 0 {
        return Err(Error::Characteristic("residual order needs positive characteristic".into()));
    }
    for k in 0..ring.arity() {
        let with_k: Vec<(&Monomial, _)> = f.terms().filter(|(m, _)| m.exponents()[k] > 0).collect();
        if with_k.len() != 1 {
            continue;
        }
        let (m, _) = with_k[0];
        let q = m.exponents()[k];
        if m.degree() != q || !is_power_of(q, p) {
            continue;
        }
        let rest = f.filter_terms(|m| m.exponents()[k] == 0);
        return Ok((k, q, rest));
    }
    Err(Error::Domain(format!("{f} is not of the form x^(p^e) + F(y)")))
}

fn is_power_of(mut q: u32, p: u32) -> bool {
    if q < p {
        return false;
    }
    while q.is_multiple_of(p) {
        q /= p;
    }
    q == 1
}

/// Drops every term whose exponent vector lies in `q·ℕ^n`.
pub fn clean_powers<F: Field>(f: &Polynomial<F>, q: u32) -> Polynomial<F> {
    f.filter_terms(|m| !m.exponents().iter().all(|&e| e % q == 0))
}

/// Residual order of a purely inseparable hypersurface at `a`: translate,
/// clean `q`-th powers from `F`, factor the exceptional monomial and take
/// the order of the rest. `None` when the cleaned `F` vanishes.
pub fn residual_order<F: Field>(f: &Polynomial<F>, exc: &ExceptionalRecord, a: &[F::Elem]) -> Result<Option<u32>> {
    let moved = f.translate(a)?;
    let (_, q, rest) = purely_inseparable_split(&moved)?;
    if rest.order().is_some_and(|o| o < q) {
        return Err(Error::Domain(format!("F has order below {q}")));
    }
    let cleaned = clean_powers(&rest, q);
    if cleaned.is_zero() {
        return Ok(None);
    }
    let fac = factor_exceptional(&Ideal::principal(&cleaned), exc)?;
    Ok(fac.residual.generators()[0].order())
}

/// Both sides of the commutation of coefficient ideals with blowup.
#[derive(Clone, Debug)]
pub struct CommutationReport<F: Field> {
    pub equal: bool,
    /// Coefficient ideal of the weak transform.
    pub left: Ideal<F>,
    /// Controlled transform of the coefficient ideal with `c = o!`.
    pub right: Ideal<F>,
}

pub fn commutation_check<F: Field>(
    ideal: &Ideal<F>,
    frame: &HypersurfaceFrame<F>,
    chart: &BlowupChart<F>,
) -> Result<CommutationReport<F>> {
    let vars =
        chart.center_vars.as_ref().ok_or_else(|| Error::Domain("commutation check needs a coordinate chart".into()))?;
    if !vars.contains(&frame.var) {
        return Err(Error::Domain("center must lie inside the frame hypersurface".into()));
    }
    if chart.chart_var() == Some(frame.var) {
        return Err(Error::Domain("the frame variable chart contains no point of the strict transform of V".into()));
    }
    if frame.base_point.iter().any(|c| !ideal.ring().field().is_zero(c)) {
        return Err(Error::Domain("frame must be centered at the origin".into()));
    }
    let o = frame.order;
    let weak = weak_transform(ideal, chart, o)?;
    let left = coefficient_ideal(&weak.ideal, frame)?;
    let coeff = coefficient_ideal(ideal, frame)?;
    let right = controlled_transform(&coeff, chart, factorial(o) as u32)?.ideal;
    let equal = left.equals(&right)?;
    Ok(CommutationReport { equal, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::{parse_poly, RingContext};

    #[test]
    fn tschirnhaus_cubic() {
        let r = RingContext::new(Rationals, &["x", "y", "z"]).unwrap();
        let f = parse_poly(&r, "x^3 + x^2*y*z + z^5").unwrap();
        let frame = HypersurfaceFrame { var: 0, base_point: vec![Rationals.zero(); 3], order: 3 };
        let (_, g) = tschirnhaus(&f, &frame).unwrap();
        assert_eq!(g.to_string(), "x^3 - 1/3*x*y^2*z^2 + 2/27*y^3*z^3 + z^5");
    }

    #[test]
    fn coefficient_ideals() {
        let r = RingContext::new(PrimeField::new(2).unwrap(), &["x", "y", "z"]).unwrap();
        let i = Ideal::parse(&r, "x^2 + y^7 + y*z^4").unwrap();
        let frame = HypersurfaceFrame { var: 0, base_point: vec![0; 3], order: 2 };
        let j = coefficient_ideal(&i, &frame).unwrap();
        assert!(j.equals(&Ideal::parse(&r, "y^7 + y*z^4").unwrap()).unwrap());
        let pure = Ideal::parse(&r, "x^2").unwrap();
        assert!(coefficient_ideal(&pure, &frame).unwrap().is_zero_ideal());
    }

    #[test]
    fn residual_orders_of_kangaroo_steps() {
        let r = RingContext::new(PrimeField::new(2).unwrap(), &["x", "y", "z"]).unwrap();
        let o = [0u32; 3];
        let f = parse_poly(&r, "x^2 + y^7 + y*z^4").unwrap();
        assert_eq!(residual_order(&f, &ExceptionalRecord::new(), &o).unwrap(), Some(5));
        let f = parse_poly(&r, "x^2 + y*z*(y^2 + z^2)").unwrap();
        assert_eq!(residual_order(&f, &ExceptionalRecord::from_vars(&[1, 2]), &o).unwrap(), Some(2));
        let f = parse_poly(&r, "x^2 + y^3*z^2 + y^2*z^2").unwrap();
        assert_eq!(residual_order(&f, &ExceptionalRecord::from_vars(&[2]), &o).unwrap(), Some(3));
    }

    #[test]
    fn factor_monomial() {
        let r = RingContext::new(PrimeField::new(2).unwrap(), &["x", "y", "z"]).unwrap();
        let j = Ideal::parse(&r, "y^3*(y^2 + z^4)").unwrap();
        let fac = factor_exceptional(&j, &ExceptionalRecord::from_vars(&[1])).unwrap();
        assert_eq!(fac.monomial, Monomial::new(vec![0, 3, 0]));
        assert_eq!(fac.residual.to_string(), "(y^2 + z^4)");
    }
}
