//! Blowups of affine space: Rees presentations, affine charts, transition
//! maps between charts and recentering at points of the exceptional divisor.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::ring::{Polynomial, Ring, RingContext, RingMorphism};

/// `K[x, u_1..u_k]` with the kernel of `x ↦ x, u_j ↦ g_j·t`.
#[derive(Clone, Debug)]
pub struct ReesPresentation<F: Field> {
    pub ring: Ring<F>,
    pub ideal: Ideal<F>,
    /// Index of `u_1` in `ring`; the `u` block follows the base variables.
    pub u_offset: usize,
    pub center: Vec<Polynomial<F>>,
}

impl<F: Field> ReesPresentation<F> {
    /// The ideal of the relations `u_i g_j - u_j g_i`.
    pub fn naive_ideal(&self) -> Result<Ideal<F>> {
        let base = self.u_offset;
        let map: Vec<usize> = (0..base).collect();
        let lifted: Vec<Polynomial<F>> = self.center.iter().map(|g| g.map_vars(&self.ring, &map)).collect();
        let mut gens = Vec::new();
        for i in 0..lifted.len() {
            for j in i + 1..lifted.len() {
                let ui = Polynomial::var(&self.ring, base + i);
                let uj = Polynomial::var(&self.ring, base + j);
                gens.push(ui.try_mul(&lifted[j])?.try_sub(&uj.try_mul(&lifted[i])?)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }
}

/// Rees ideal of the center generated by `center` (order preserved).
pub fn rees_ideal<F: Field>(center: &Ideal<F>) -> Result<ReesPresentation<F>> {
    let gens = center.generators().to_vec();
    if gens.is_empty() {
        return Err(Error::ZeroInput("blowup center is the zero ideal".into()));
    }
    let base = center.ring();
    let n = base.arity();
    let mut names: Vec<String> = base.vars().to_vec();
    for j in 1..=gens.len() {
        let probe = RingContext::new(base.field().clone(), &names)?;
        names.push(probe.fresh_name(&format!("u{j}")));
    }
    let ring = RingContext::new(base.field().clone(), &names)?;
    let t_name = ring.fresh_name("t");
    let big = ring.extended(&[t_name])?;
    let t = Polynomial::var(&big, names.len());
    let map: Vec<usize> = (0..n).collect();
    let mut rel = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        let u = Polynomial::var(&big, n + j);
        rel.push(u.try_sub(&g.map_vars(&big, &map).try_mul(&t)?)?);
    }
    let elim = Ideal::new(&big, rel)?.eliminate(&[names.len()])?;
    let ideal = elim.rename_into(&ring)?;
    Ok(ReesPresentation { ring, ideal, u_offset: n, center: gens })
}

/// One affine chart of a blowup.
#[derive(Clone, Debug)]
pub struct BlowupChart<F: Field> {
    /// `chart:<var>` for coordinate charts, `chart:<j>` for general ones.
    pub name: String,
    /// Position of the dehomogenizing generator in the center.
    pub index: usize,
    /// Chart expression of the base coordinates.
    pub map: RingMorphism<F>,
    /// Equation of the exceptional divisor in the chart ring.
    pub exceptional: Polynomial<F>,
    /// Relations of the chart ring; zero for coordinate charts.
    pub chart_ideal: Ideal<F>,
    /// Center variables for coordinate-subspace centers.
    pub center_vars: Option<Vec<usize>>,
}

impl<F: Field> BlowupChart<F> {
    pub fn source(&self) -> &Ring<F> {
        self.map.source()
    }

    pub fn target(&self) -> &Ring<F> {
        self.map.target()
    }

    /// Variable index of `h` for coordinate charts.
    pub fn chart_var(&self) -> Option<usize> {
        self.center_vars.as_ref().map(|vars| vars[self.index])
    }

    /// Composes the translation moving `a` to the origin into the chart map;
    /// `a` must lie on the exceptional divisor.
    pub fn recentered(&self, a: &[F::Elem]) -> Result<BlowupChart<F>> {
        let phi = monomialize_at(self, a)?;
        Ok(BlowupChart { map: phi, ..self.clone() })
    }
}

/// Variables generating `center`, when every generator is a single variable
/// up to a scalar.
pub fn center_variables<F: Field>(center: &Ideal<F>) -> Option<Vec<usize>> {
    let mut vars = Vec::new();
    for g in center.generators() {
        if g.num_terms() != 1 {
            return None;
        }
        let (m, _) = g.terms().next()?;
        if m.degree() != 1 {
            return None;
        }
        let i = m.exponents().iter().position(|&e| e == 1)?;
        if !vars.contains(&i) {
            vars.push(i);
        }
    }
    if vars.is_empty() {
        None
    } else {
        Some(vars)
    }
}

/// Charts of the blowup along `V(x_j : j ∈ vars)`: chart `j` sends
/// `x_i ↦ x_i·x_j` for `i ∈ vars ∖ {j}` and fixes everything else.
pub fn coordinate_charts<F: Field>(ring: &Ring<F>, vars: &[usize]) -> Result<Vec<BlowupChart<F>>> {
    if vars.is_empty() {
        return Err(Error::Domain("empty center".into()));
    }
    for (k, &v) in vars.iter().enumerate() {
        if v >= ring.arity() || vars[..k].contains(&v) {
            return Err(Error::Domain("center variables must be distinct ring variables".into()));
        }
    }
    let mut out = Vec::new();
    for (idx, &j) in vars.iter().enumerate() {
        let xj = Polynomial::var(ring, j);
        let images = (0..ring.arity())
            .map(|i| {
                let xi = Polynomial::var(ring, i);
                if i != j && vars.contains(&i) {
                    xi.try_mul(&xj)
                } else {
                    Ok(xi)
                }
            })
            .collect::<Result<_>>()?;
        out.push(BlowupChart {
            name: format!("chart:{}", ring.vars()[j]),
            index: idx,
            map: RingMorphism::new(ring, ring, images)?,
            exceptional: xj,
            chart_ideal: Ideal::zero(ring),
            center_vars: Some(vars.to_vec()),
        });
    }
    Ok(out)
}

/// Coordinate charts for a center given as an ideal of variables.
pub fn coordinate_charts_of<F: Field>(center: &Ideal<F>) -> Result<Vec<BlowupChart<F>>> {
    let vars = center_variables(center)
        .ok_or_else(|| Error::Domain(format!("center {center} is not generated by variables")))?;
    coordinate_charts(center.ring(), &vars)
}

/// Chart `j` as `K[x, t_k : k ≠ j]` modulo the Rees ideal at `u_j = 1`.
pub fn general_charts<F: Field>(center: &Ideal<F>) -> Result<Vec<BlowupChart<F>>> {
    let rees = rees_ideal(center)?;
    let base = center.ring();
    let n = base.arity();
    let k = rees.center.len();
    let mut out = Vec::new();
    for j in 0..k {
        let mut names: Vec<String> = base.vars().to_vec();
        let mut slot = vec![usize::MAX; k];
        for (i, s) in slot.iter_mut().enumerate() {
            if i != j {
                let probe = RingContext::new(base.field().clone(), &names)?;
                *s = names.len();
                names.push(probe.fresh_name(&format!("t{}", i + 1)));
            }
        }
        let ring = RingContext::new(base.field().clone(), &names)?;
        let mut images: Vec<Polynomial<F>> = (0..n).map(|i| Polynomial::var(&ring, i)).collect();
        for (i, &s) in slot.iter().enumerate() {
            images.push(if i == j { Polynomial::one(&ring) } else { Polynomial::var(&ring, s) });
        }
        let dehom = RingMorphism::new(&rees.ring, &ring, images)?;
        let chart_ideal = rees.ideal.image(&dehom)?.normalized()?;
        let inclusion = RingMorphism::new(base, &ring, (0..n).map(|i| Polynomial::var(&ring, i)).collect())?;
        let exceptional = inclusion.apply(&rees.center[j])?;
        out.push(BlowupChart {
            name: format!("chart:{}", j + 1),
            index: j,
            map: inclusion,
            exceptional,
            chart_ideal,
            center_vars: None,
        });
    }
    Ok(out)
}

/// Transition `π_i⁻¹ ∘ π_j` between coordinate charts, valid where the
/// chart-`j` coordinate `x_i` is invertible. The target ring adjoins a
/// variable `w` standing for `1/x_i`.
#[derive(Clone, Debug)]
pub struct Transition<F: Field> {
    pub morphism: RingMorphism<F>,
    pub inverse_var: usize,
    pub inverted: usize,
}

impl<F: Field> Transition<F> {
    /// `w·x_i − 1`.
    pub fn relation(&self) -> Result<Polynomial<F>> {
        let ring = self.morphism.target();
        Polynomial::var(ring, self.inverse_var)
            .try_mul(&Polynomial::var(ring, self.inverted))?
            .try_sub(&Polynomial::one(ring))
    }

    /// Image of a chart-`j` point; `None` off the domain of validity.
    pub fn evaluate(&self, p: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        let field = self.morphism.source().field();
        let Some(inv) = field.inv(&p[self.inverted]) else {
            return Ok(None);
        };
        let mut full = p.to_vec();
        full.push(inv);
        let out = self.morphism.images().iter().map(|g| g.evaluate(&full)).collect::<Result<_>>()?;
        Ok(Some(out))
    }
}

impl<F: Field> fmt::Display for Transition<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let target = self.morphism.target();
        let mut names: Vec<String> = target.vars().to_vec();
        names[self.inverse_var] = format!("1/{}", target.vars()[self.inverted]);
        let display = RingContext::new(target.field().clone(), &names).map_err(|_| fmt::Error)?;
        let map: Vec<usize> = (0..target.arity()).collect();
        let parts: Vec<String> =
            self.morphism.images().iter().map(|g| g.map_vars(&display, &map).to_string().replace("*1/", "/")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn chart_transition<F: Field>(charts: &[BlowupChart<F>], i: usize, j: usize) -> Result<Transition<F>> {
    if i == j || i >= charts.len() || j >= charts.len() {
        return Err(Error::Domain("transition needs two distinct chart indices".into()));
    }
    let vars = charts[i]
        .center_vars
        .clone()
        .ok_or_else(|| Error::Domain("transitions are defined for coordinate charts".into()))?;
    let ring = charts[i].source().clone();
    let xi = vars[charts[i].index];
    let xj = vars[charts[j].index];
    let w_name = ring.fresh_name("w");
    let target = ring.extended(&[w_name])?;
    let w = Polynomial::var(&target, ring.arity());
    let images = (0..ring.arity())
        .map(|k| {
            let xk = Polynomial::var(&target, k);
            if k == xi {
                xk.try_mul(&Polynomial::var(&target, xj))
            } else if k == xj {
                Ok(w.clone())
            } else if vars.contains(&k) {
                xk.try_mul(&w)
            } else {
                Ok(xk)
            }
        })
        .collect::<Result<_>>()?;
    Ok(Transition { morphism: RingMorphism::new(&ring, &target, images)?, inverse_var: ring.arity(), inverted: xi })
}

/// Chart map followed by `x_i ↦ x_i + a_i`, so that `a` becomes the origin;
/// for center variables this is `x_i ↦ (x_i + a_i)·x_j`.
pub fn monomialize_at<F: Field>(chart: &BlowupChart<F>, a: &[F::Elem]) -> Result<RingMorphism<F>> {
    if chart.center_vars.is_none() {
        return Err(Error::Domain("recentering needs a coordinate chart".into()));
    }
    let target = chart.target();
    if a.len() != target.arity() {
        return Err(Error::Domain("point has the wrong number of coordinates".into()));
    }
    if !target.field().is_zero(&chart.exceptional.evaluate(a)?) {
        return Err(Error::Domain("point is not on the exceptional divisor".into()));
    }
    let shift = RingMorphism::translation(target, a)?;
    chart.map.then(&shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::ring::parse_poly_list;

    fn q(vars: &[&str]) -> Ring<Rationals> {
        RingContext::new(Rationals, vars).unwrap()
    }

    #[test]
    fn point_blowup_chart_maps() {
        let r = q(&["x", "y", "z"]);
        let charts = coordinate_charts_of(&Ideal::parse(&r, "x, y, z").unwrap()).unwrap();
        assert_eq!(charts[0].name, "chart:x");
        assert_eq!(charts[0].map.images(), parse_poly_list(&r, "x, x*y, x*z").unwrap().as_slice());
        let charts = coordinate_charts_of(&Ideal::parse(&r, "x, y").unwrap()).unwrap();
        assert_eq!(charts[1].map.images(), parse_poly_list(&r, "x*y, y, z").unwrap().as_slice());
        let charts = coordinate_charts_of(&Ideal::parse(&r, "x").unwrap()).unwrap();
        assert_eq!(charts.len(), 1);
        assert!(charts[0].map.is_identity());
    }

    #[test]
    fn non_variable_center_refused() {
        let r = q(&["x", "y"]);
        assert!(coordinate_charts_of(&Ideal::parse(&r, "x, y^2").unwrap()).is_err());
    }

    #[test]
    fn transitions_of_axis_blowup() {
        let r = q(&["x", "y", "z"]);
        let charts = coordinate_charts_of(&Ideal::parse(&r, "x, y").unwrap()).unwrap();
        assert_eq!(chart_transition(&charts, 0, 1).unwrap().to_string(), "(x*y, 1/x, z)");
        assert_eq!(chart_transition(&charts, 1, 0).unwrap().to_string(), "(1/y, x*y, z)");
    }

    #[test]
    fn rees_of_origin() {
        let r = q(&["x", "y"]);
        let rees = rees_ideal(&Ideal::parse(&r, "x, y").unwrap()).unwrap();
        assert_eq!(rees.ideal.normalized().unwrap().to_string(), "(x*u2 - y*u1)");
    }
}
