use std::fmt;
use std::sync::{Arc, OnceLock};

use super::basis::{groebner_basis, leading_monomial, GroebnerBasis};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::{parse_poly_list, Monomial, Polynomial, Ring, RingContext, RingMorphism};

/// Colon steps allowed before a saturation is declared unstable.
pub const SATURATION_CAP: usize = 64;

/// Finitely generated ideal with a write-once degrevlex basis cache.
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Polynomial<F>>,
    gb: OnceLock<Arc<GroebnerBasis<F>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb: self.gb.clone() }
    }
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped; no generators means the zero ideal.
    pub fn new(ring: &Ring<F>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        if gens.iter().any(|g| !RingContext::same(g.ring(), ring)) {
            return Err(Error::ContextMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    pub fn parse(ring: &Ring<F>, text: &str) -> Result<Self> {
        Ideal::new(ring, parse_poly_list(ring, text)?)
    }

    pub fn zero(ring: &Ring<F>) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &Ring<F>) -> Self {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)], gb: OnceLock::new() }
    }

    pub fn principal(f: &Polynomial<F>) -> Self {
        Ideal { ring: f.ring().clone(), gens: if f.is_zero() { vec![] } else { vec![f.clone()] }, gb: OnceLock::new() }
    }

    /// Ideal generated by variables with the given indices.
    pub fn of_vars(ring: &Ring<F>, vars: &[usize]) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: vars.iter().map(|&i| Polynomial::var(ring, i)).collect(),
            gb: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced basis for degrevlex, computed at most once per value.
    pub fn groebner(&self) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.clone());
        }
        let gb = Arc::new(groebner_basis(&self.ring, &self.gens, &MonomialOrder::DegRevLex)?);
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("just set").clone())
    }

    pub fn groebner_with(&self, order: &MonomialOrder) -> Result<GroebnerBasis<F>> {
        if *order == MonomialOrder::DegRevLex {
            return Ok((*self.groebner()?).clone());
        }
        groebner_basis(&self.ring, &self.gens, order)
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.groebner()?.normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        if !RingContext::same(f.ring(), &self.ring) {
            return Err(Error::ContextMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        self.groebner()?.contains(f)
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals by two-way membership.
    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.is_empty() {
            return Ok(false);
        }
        Ok(self.groebner()?.is_unit())
    }

    /// Canonical presentation: the reduced degrevlex basis, each element
    /// scaled so its first printed coefficient is one.
    pub fn normalized(&self) -> Result<Ideal<F>> {
        if self.gens.is_empty() {
            return Ok(Ideal::zero(&self.ring));
        }
        let gb = self.groebner()?;
        let gens: Vec<Polynomial<F>> = gb.elements().iter().map(|g| g.monic()).collect();
        Ok(Ideal { ring: self.ring.clone(), gens, gb: OnceLock::from(gb) })
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if !RingContext::same(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generator(&self, f: &Polynomial<F>) -> Result<Ideal<F>> {
        self.sum(&Ideal::principal(f))
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if !RingContext::same(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.try_mul(g)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `I^k` with redundant generators removed along the way.
    pub fn pow(&self, k: u32) -> Result<Ideal<F>> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self)?.minimal_generators()?;
        }
        Ok(acc)
    }

    /// Drops duplicate generators (up to scalars) preserving order.
    fn minimal_generators(&self) -> Result<Ideal<F>> {
        let mut seen: Vec<Polynomial<F>> = Vec::new();
        for g in &self.gens {
            let m = g.monic();
            if !seen.contains(&m) {
                seen.push(m);
            }
        }
        Ideal::new(&self.ring, seen)
    }

    pub fn scale(&self, f: &Polynomial<F>) -> Result<Ideal<F>> {
        let gens = self.gens.iter().map(|g| g.try_mul(f)).collect::<Result<_>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// Ideal generated by the images of the generators.
    pub fn image(&self, phi: &RingMorphism<F>) -> Result<Ideal<F>> {
        if !RingContext::same(phi.source(), &self.ring) {
            return Err(Error::ContextMismatch);
        }
        let gens = self.gens.iter().map(|g| phi.apply(g)).collect::<Result<_>>()?;
        Ideal::new(phi.target(), gens)
    }

    pub fn translate(&self, a: &[F::Elem]) -> Result<Ideal<F>> {
        let gens = self.gens.iter().map(|g| g.translate(a)).collect::<Result<_>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// Same generators, re-expressed in a ring containing every used variable.
    pub fn rename_into(&self, target: &Ring<F>) -> Result<Ideal<F>> {
        let gens = self.gens.iter().map(|g| g.rename_into(target)).collect::<Result<_>>()?;
        Ideal::new(target, gens)
    }

    /// `I ∩ K[vars ∖ drop]`, presented in the same ring.
    pub fn eliminate(&self, drop: &[usize]) -> Result<Ideal<F>> {
        if drop.is_empty() {
            return Ok(self.clone());
        }
        if drop.iter().any(|&i| i >= self.ring.arity()) {
            return Err(Error::Domain("elimination variable out of range".into()));
        }
        let gb = groebner_basis(&self.ring, &self.gens, &MonomialOrder::elimination(drop))?;
        let gens = gb
            .elements()
            .iter()
            .filter(|g| g.terms().all(|(m, _)| m.degree_in(drop) == 0))
            .map(|g| g.monic())
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// Ring extended by one fresh variable (last), with this ideal moved in.
    fn extend_fresh(&self, stem: &str) -> Result<(Ring<F>, usize, Vec<Polynomial<F>>)> {
        let name = self.ring.fresh_name(stem);
        let big = self.ring.extended(&[name])?;
        let n = self.ring.arity();
        let map: Vec<usize> = (0..n).collect();
        let gens = self.gens.iter().map(|g| g.map_vars(&big, &map)).collect();
        Ok((big, n, gens))
    }

    fn lift(&self, f: &Polynomial<F>, big: &Ring<F>) -> Polynomial<F> {
        let map: Vec<usize> = (0..self.ring.arity()).collect();
        f.map_vars(big, &map)
    }

    /// `I ∩ J` via `t·I + (1 − t)·J` and elimination of `t`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if !RingContext::same(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Ideal::zero(&self.ring));
        }
        let (big, t, lifted) = self.extend_fresh("t")?;
        let tv = Polynomial::var(&big, t);
        let one_minus_t = Polynomial::one(&big).try_sub(&tv)?;
        let mut gens = Vec::new();
        for g in lifted {
            gens.push(g.try_mul(&tv)?);
        }
        for g in &other.gens {
            gens.push(self.lift(g, &big).try_mul(&one_minus_t)?);
        }
        let elim = Ideal::new(&big, gens)?.eliminate(&[t])?;
        elim.rename_into(&self.ring)
    }

    /// `I : (f)`.
    pub fn colon_poly(&self, f: &Polynomial<F>) -> Result<Ideal<F>> {
        if f.is_zero() {
            return Err(Error::ZeroInput("colon by the zero polynomial".into()));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        if self.gens.is_empty() {
            return Ok(Ideal::zero(&self.ring));
        }
        let meet = self.intersect(&Ideal::principal(f))?;
        let gens = meet.gens.iter().map(|g| g.exact_div(f)).collect::<Result<_>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `I : J`, the intersection of the colons by each generator of `J`.
    pub fn colon(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if !RingContext::same(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        if other.gens.is_empty() {
            return Err(Error::ZeroInput("colon by the zero ideal".into()));
        }
        let mut acc: Option<Ideal<F>> = None;
        for g in &other.gens {
            let c = self.colon_poly(g)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c)?,
            });
        }
        Ok(acc.expect("nonempty"))
    }

    /// `I : h^∞` via `(I + (1 − s·h)) ∩ K[x]`.
    pub fn saturation(&self, h: &Polynomial<F>) -> Result<Ideal<F>> {
        if h.is_zero() {
            return Err(Error::ZeroInput("saturation by the zero polynomial".into()));
        }
        if h.is_constant() || self.gens.is_empty() {
            return Ok(self.clone());
        }
        let (big, s, mut gens) = self.extend_fresh("s")?;
        let sh = Polynomial::var(&big, s).try_mul(&self.lift(h, &big))?;
        gens.push(Polynomial::one(&big).try_sub(&sh)?);
        let elim = Ideal::new(&big, gens)?.eliminate(&[s])?;
        elim.rename_into(&self.ring)?.normalized()
    }

    /// `(I : h^∞, e)` where `e` is the number of colon steps `I : h^k` needs
    /// to stabilize, i.e. the least `e` with `h^e · (I : h^∞) ⊆ I`.
    pub fn saturate(&self, h: &Polynomial<F>) -> Result<(Ideal<F>, usize)> {
        let sat = self.saturation(h)?;
        if h.is_constant() || self.gens.is_empty() {
            return Ok((sat, 0));
        }
        let mut power = Polynomial::one(&self.ring);
        for e in 0..=SATURATION_CAP {
            let mut inside = true;
            for g in sat.generators() {
                if !self.contains(&g.try_mul(&power)?)? {
                    inside = false;
                    break;
                }
            }
            if inside {
                return Ok((sat, e));
            }
            power = power.try_mul(h)?;
        }
        Err(Error::SaturationCap(SATURATION_CAP))
    }

    /// Rabinowitsch test for `f ∈ √I`.
    pub fn radical_contains(&self, f: &Polynomial<F>) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let (big, s, mut gens) = self.extend_fresh("s")?;
        let sf = Polynomial::var(&big, s).try_mul(&self.lift(f, &big))?;
        gens.push(Polynomial::one(&big).try_sub(&sf)?);
        Ideal::new(&big, gens)?.is_unit()
    }

    /// Dimension of `V(I)` from maximal independent sets of the leading ideal.
    pub fn krull_dimension(&self) -> Result<usize> {
        let n = self.ring.arity();
        if self.gens.is_empty() {
            return Ok(n);
        }
        let gb = self.groebner()?;
        if gb.is_unit() {
            return Err(Error::UnitIdeal("Krull dimension".into()));
        }
        let leads: Vec<&Monomial> = gb.leading_monomials().collect();
        let mut best = 0;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let inside = |m: &Monomial| m.exponents().iter().enumerate().all(|(i, &e)| e == 0 || mask >> i & 1 == 1);
            if !leads.iter().any(|m| inside(m)) {
                best = size;
            }
        }
        Ok(best)
    }

    /// Leading monomials of the degrevlex basis.
    pub fn leading_ideal(&self) -> Result<Vec<Monomial>> {
        if self.gens.is_empty() {
            return Ok(Vec::new());
        }
        let gb = self.groebner()?;
        Ok(gb.leading_monomials().cloned().collect())
    }

    pub fn leading_monomial_of(f: &Polynomial<F>, order: &MonomialOrder) -> Option<Monomial> {
        leading_monomial(f, order)
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::ring::parse_poly;

    fn ring(vars: &[&str]) -> Ring<Rationals> {
        RingContext::new(Rationals, vars).unwrap()
    }

    #[test]
    fn colon_one_step() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, "x^2*y^2, y^3").unwrap();
        let y = parse_poly(&r, "y").unwrap();
        let c = i.colon_poly(&y).unwrap();
        assert!(c.equals(&Ideal::parse(&r, "x^2*y, y^2").unwrap()).unwrap());
        assert!(i.colon(&Ideal::unit(&r)).unwrap().equals(&i).unwrap());
    }

    #[test]
    fn saturation_reaches_unit() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, "x^2*y^2, y^3").unwrap();
        let (s, e) = i.saturate(&parse_poly(&r, "y").unwrap()).unwrap();
        assert!(s.is_unit().unwrap());
        assert_eq!(e, 3);
        let (s, e) = i.saturate(&Polynomial::one(&r)).unwrap();
        assert!(s.equals(&i).unwrap());
        assert_eq!(e, 0);
    }

    #[test]
    fn elimination_gives_rees_relation() {
        let r = ring(&["x", "y", "u", "v", "t"]);
        let i = Ideal::parse(&r, "u - x*t, v - y*t").unwrap();
        let e = i.eliminate(&[4]).unwrap();
        assert!(e.equals(&Ideal::parse(&r, "x*v - y*u").unwrap()).unwrap());
    }

    #[test]
    fn dimensions() {
        let r = ring(&["x", "y", "z"]);
        assert_eq!(Ideal::parse(&r, "x^2 + y^2 - z^2").unwrap().krull_dimension().unwrap(), 2);
        assert_eq!(Ideal::parse(&r, "y^2 - x*z, y*z - x^3, z^2 - x^2*y").unwrap().krull_dimension().unwrap(), 1);
        assert_eq!(Ideal::zero(&r).krull_dimension().unwrap(), 3);
        assert!(Ideal::unit(&r).krull_dimension().is_err());
    }

    #[test]
    fn intersection_of_axes() {
        let r = ring(&["x", "y"]);
        let a = Ideal::parse(&r, "x").unwrap();
        let b = Ideal::parse(&r, "y").unwrap();
        assert!(a.intersect(&b).unwrap().equals(&Ideal::parse(&r, "x*y").unwrap()).unwrap());
    }

    #[test]
    fn radical_membership() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, "x^3, y^2").unwrap();
        assert!(i.radical_contains(&parse_poly(&r, "x + y").unwrap()).unwrap());
        assert!(!i.radical_contains(&parse_poly(&r, "x + 1").unwrap()).unwrap());
    }
}
