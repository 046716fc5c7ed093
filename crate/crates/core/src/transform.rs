//! Total, strict, weak and controlled transforms under a blowup chart.

use serde::{Deserialize, Serialize};

use crate::blowup::BlowupChart;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{order_along_prime, order_at_point, origin};
use crate::groebner::{macaulay_basis_along, Ideal};
use crate::ring::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "control")]
pub enum TransformKind {
    Total,
    Strict,
    Weak,
    Controlled(u32),
}

impl std::fmt::Display for TransformKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TransformKind::Total => write!(f, "total"),
            TransformKind::Strict => write!(f, "strict"),
            TransformKind::Weak => write!(f, "weak"),
            TransformKind::Controlled(c) => write!(f, "controlled({c})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TransformResult<F: Field> {
    pub kind: TransformKind,
    /// Normalized to the reduced degrevlex basis.
    pub ideal: Ideal<F>,
    /// Order of the ideal along the center, when it was computed.
    pub exceptional_order: Option<u32>,
    /// Power of the exceptional equation removed (colon steps for strict).
    pub h_power: u32,
}

/// Order of `I` along the center of a coordinate chart.
pub fn center_order<F: Field>(ideal: &Ideal<F>, chart: &BlowupChart<F>) -> Result<u32> {
    let vars = chart
        .center_vars
        .as_ref()
        .ok_or_else(|| Error::Domain("center order is computed for coordinate charts".into()))?;
    let ring = chart.source();
    let value = if vars.len() == ring.arity() {
        order_at_point(ideal, &origin(ring.field(), ring.arity()))?.value
    } else {
        order_along_prime(ideal, &Ideal::of_vars(ring, vars))?.value
    };
    value.ok_or_else(|| Error::Domain("the zero ideal has infinite order".into()))
}

fn pullback<F: Field>(ideal: &Ideal<F>, chart: &BlowupChart<F>) -> Result<Vec<Polynomial<F>>> {
    ideal.generators().iter().map(|g| chart.map.apply(g)).collect()
}

pub fn total_transform<F: Field>(ideal: &Ideal<F>, chart: &BlowupChart<F>) -> Result<Ideal<F>> {
    let total = Ideal::new(chart.target(), pullback(ideal, chart)?)?;
    total.sum(&chart.chart_ideal)?.normalized()
}

pub fn strict_transform<F: Field>(ideal: &Ideal<F>, chart: &BlowupChart<F>) -> Result<TransformResult<F>> {
    let total = total_transform(ideal, chart)?;
    let (sat, steps) = total.saturate(&chart.exceptional)?;
    let d =
        if chart.center_vars.is_some() && !ideal.is_zero_ideal() { Some(center_order(ideal, chart)?) } else { None };
    Ok(TransformResult { kind: TransformKind::Strict, ideal: sat, exceptional_order: d, h_power: steps as u32 })
}

fn divide_by_h<F: Field>(g: &Polynomial<F>, chart: &BlowupChart<F>, k: u32) -> Result<Polynomial<F>> {
    if k == 0 {
        return Ok(g.clone());
    }
    match chart.chart_var() {
        Some(j) => g.div_var_pow(j, k),
        None => g.exact_div(&chart.exceptional.try_pow(k)?),
    }
}

fn divided<F: Field>(ideal: &Ideal<F>, chart: &BlowupChart<F>, k: u32) -> Result<Ideal<F>> {
    let gens = pullback(ideal, chart)?.iter().map(|g| divide_by_h(g, chart, k)).collect::<Result<_>>()?;
    Ideal::new(chart.target(), gens)?.sum(&chart.chart_ideal)?.normalized()
}

/// `h^(-d)·I*` for a given `d`.
pub fn weak_transform<F: Field>(ideal: &Ideal<F>, chart: &BlowupChart<F>, d: u32) -> Result<TransformResult<F>> {
    let out = divided(ideal, chart, d)?;
    Ok(TransformResult { kind: TransformKind::Weak, ideal: out, exceptional_order: Some(d), h_power: d })
}

/// Weak transform with `d` computed as the order along the center.
pub fn weak_transform_auto<F: Field>(ideal: &Ideal<F>, chart: &BlowupChart<F>) -> Result<TransformResult<F>> {
    let d = center_order(ideal, chart)?;
    weak_transform(ideal, chart, d)
}

/// `h^(-c)·I*`, defined for `c` at most the order along the center.
pub fn controlled_transform<F: Field>(ideal: &Ideal<F>, chart: &BlowupChart<F>, c: u32) -> Result<TransformResult<F>> {
    let d = if chart.center_vars.is_some() { Some(center_order(ideal, chart)?) } else { None };
    if let Some(d) = d {
        if c > d {
            return Err(Error::Domain(format!("controlled transform with c = {c} exceeds the order {d}")));
        }
    }
    let out = divided(ideal, chart, c)?;
    Ok(TransformResult { kind: TransformKind::Controlled(c), ideal: out, exceptional_order: d, h_power: c })
}

/// Strict transform as the ideal of strict transforms of a Macaulay basis
/// along the center.
pub fn strict_transform_via_macaulay<F: Field>(ideal: &Ideal<F>, chart: &BlowupChart<F>) -> Result<Ideal<F>> {
    let vars = chart
        .center_vars
        .as_ref()
        .ok_or_else(|| Error::Domain("the Macaulay route needs a coordinate chart".into()))?;
    let j = chart.chart_var().expect("coordinate chart");
    let basis = macaulay_basis_along(ideal, vars)?;
    let mut gens = Vec::new();
    for g in &basis {
        let star = chart.map.apply(g)?;
        let k = star.var_power_dividing(j);
        gens.push(star.div_var_pow(j, k)?);
    }
    Ideal::new(chart.target(), gens)?.normalized()
}

pub fn transform<F: Field>(
    ideal: &Ideal<F>,
    chart: &BlowupChart<F>,
    kind: TransformKind,
) -> Result<TransformResult<F>> {
    match kind {
        TransformKind::Total => {
            Ok(TransformResult { kind, ideal: total_transform(ideal, chart)?, exceptional_order: None, h_power: 0 })
        }
        TransformKind::Strict => strict_transform(ideal, chart),
        TransformKind::Weak => weak_transform_auto(ideal, chart),
        TransformKind::Controlled(c) => controlled_transform(ideal, chart, c),
    }
}
