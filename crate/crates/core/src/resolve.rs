//! Resolution drivers at desk scale: embedded resolution of plane curves,
//! the combinatorial monomial stage and a point-center hypersurface driver
//! in characteristic zero. Every driver emits a chart tree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::blowup::{coordinate_charts, monomialize_at, BlowupChart};
use crate::descent::{
    coefficient_ideal, factor_exceptional, osculating_frame, purely_inseparable_split, residual_order,
    ExceptionalEntry, ExceptionalRecord,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{compare_points, exponents_up_to, order_at_point, origin, rational_points, Point, PointSet};
use crate::groebner::Ideal;
use crate::ring::{parse_poly, DerivativeMode, Monomial, Polynomial, Ring, RingMorphism};
use crate::transform::TransformKind;

pub const DEFAULT_MAX_STEPS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeStatus {
    /// Blown up; see the children.
    Blown,
    Resolved,
    StepLimit,
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceStatus {
    Resolved,
    StepLimit,
    Error,
}

/// One node of a chart tree. Polynomials are stored as text in the ring of
/// the trace, so the tree can be serialized and replayed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartNode {
    pub path: Vec<String>,
    /// Images of the parent coordinates; empty at the root.
    pub map: Vec<String>,
    /// Exceptional equation of the chart, when this node comes from a blowup.
    pub exceptional_var: Option<String>,
    /// Transform producing `ideals` from the parent.
    pub transform: Option<TransformKind>,
    pub ideals: BTreeMap<String, String>,
    pub exceptional: ExceptionalRecord,
    /// `(order, residual order, ...)`; `null` where unavailable or infinite.
    pub invariant: Vec<Option<u32>>,
    /// Center blown up at this node.
    pub center: Option<String>,
    /// Whether the center has normal crossings with the exceptional divisor.
    pub transversal: Option<bool>,
    pub status: NodeStatus,
    pub message: Option<String>,
    pub children: Vec<ChartNode>,
}

impl ChartNode {
    fn new(path: Vec<String>) -> Self {
        ChartNode {
            path,
            map: Vec::new(),
            exceptional_var: None,
            transform: None,
            ideals: BTreeMap::new(),
            exceptional: ExceptionalRecord::new(),
            invariant: Vec::new(),
            center: None,
            transversal: None,
            status: NodeStatus::Resolved,
            message: None,
            children: Vec::new(),
        }
    }

    /// Number of blowups on the longest path below this node.
    pub fn depth(&self) -> usize {
        let own = usize::from(self.status == NodeStatus::Blown && self.center.is_some());
        own + self.children.iter().map(ChartNode::depth).max().unwrap_or(0)
    }

    /// Number of blown-up nodes in the subtree.
    pub fn blowup_count(&self) -> usize {
        let own = usize::from(self.status == NodeStatus::Blown && self.center.is_some());
        own + self.children.iter().map(ChartNode::blowup_count).sum::<usize>()
    }

    pub fn leaves(&self) -> Vec<&ChartNode> {
        if self.children.is_empty() {
            return vec![self];
        }
        self.children.iter().flat_map(ChartNode::leaves).collect()
    }

    /// Pre-order traversal.
    pub fn walk(&self) -> Vec<&ChartNode> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.walk());
        }
        out
    }

    fn aggregate(&self) -> TraceStatus {
        match self.status {
            NodeStatus::Error => TraceStatus::Error,
            NodeStatus::StepLimit => TraceStatus::StepLimit,
            NodeStatus::Resolved => TraceStatus::Resolved,
            NodeStatus::Blown => {
                let mut out = TraceStatus::Resolved;
                for c in &self.children {
                    match c.aggregate() {
                        TraceStatus::Error => return TraceStatus::Error,
                        TraceStatus::StepLimit => out = TraceStatus::StepLimit,
                        TraceStatus::Resolved => {}
                    }
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolutionTrace {
    pub driver: String,
    pub root: ChartNode,
    pub status: TraceStatus,
    /// Blowups along the longest path.
    pub step_count: usize,
    pub blowups: usize,
    pub error: Option<String>,
}

impl ResolutionTrace {
    fn finish(driver: &str, root: ChartNode) -> Self {
        let status = root.aggregate();
        let error = root.walk().into_iter().find_map(|n| n.message.clone().filter(|_| n.status == NodeStatus::Error));
        ResolutionTrace {
            driver: driver.to_string(),
            step_count: root.depth(),
            blowups: root.blowup_count(),
            status,
            error,
            root,
        }
    }
}

/// Generators of the locus where `f` has order at least `k`: all divided
/// power derivatives of order below `k`.
pub fn order_locus<F: Field>(f: &Polynomial<F>, k: u32) -> Vec<Polynomial<F>> {
    if k == 0 {
        return Vec::new();
    }
    exponents_up_to(f.ring().arity(), k - 1)
        .iter()
        .map(|a| f.derivative(a, DerivativeMode::DividedPower))
        .filter(|d| !d.is_zero())
        .collect()
}

/// Largest order of `f` at a point of affine space over the algebraic
/// closure, found through the order loci; `None` for `f = 0`.
pub fn max_order<F: Field>(f: &Polynomial<F>) -> Result<Option<u32>> {
    if f.is_zero() {
        return Ok(None);
    }
    let mut k = 1;
    loop {
        let locus = Ideal::new(f.ring(), order_locus(f, k + 1))?;
        if locus.is_unit()? {
            return Ok(Some(k));
        }
        k += 1;
        if k > f.total_degree().unwrap_or(0) + 1 {
            return Err(Error::Guard("order search exceeded the degree".into()));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    CurveEmbedded,
    CurveSmooth,
    Hypersurface(u32),
}

fn var<F: Field>(ring: &Ring<F>, i: usize) -> Polynomial<F> {
    Polynomial::var(ring, i)
}

fn bad_ideals<F: Field>(mode: Mode, f: &Polynomial<F>, exc: &ExceptionalRecord) -> Vec<Vec<Polynomial<F>>> {
    let ring = f.ring();
    match mode {
        Mode::CurveSmooth => vec![vec![f.clone(), f.partial(0), f.partial(1)]],
        Mode::CurveEmbedded => {
            let mut out = vec![vec![f.clone(), f.partial(0), f.partial(1)]];
            let vars = exc.vars();
            for &e in &vars {
                out.push(vec![f.clone(), var(ring, e), f.partial(1 - e)]);
            }
            for (i, &a) in vars.iter().enumerate() {
                for &b in &vars[i + 1..] {
                    out.push(vec![f.clone(), var(ring, a), var(ring, b)]);
                }
            }
            out
        }
        Mode::Hypersurface(c) => vec![order_locus(f, c)],
    }
}

fn vanishes_at_origin<F: Field>(gens: &[Polynomial<F>]) -> bool {
    let field = gens.first().map(|g| g.field().clone());
    match field {
        None => true,
        Some(field) => gens.iter().all(|g| field.is_zero(&g.constant_term())),
    }
}

fn format_point<F: Field>(field: &F, a: &[F::Elem]) -> String {
    let parts: Vec<String> = a.iter().map(|c| field.format(c)).collect();
    format!("({})", parts.join(","))
}

/// Rational points of the union of the given loci inside `extra`.
fn bad_points<F: Field>(ring: &Ring<F>, loci: &[Vec<Polynomial<F>>], extra: &[Polynomial<F>]) -> Result<Vec<Point<F>>> {
    let field = ring.field();
    let mut out: Vec<Point<F>> = Vec::new();
    for gens in loci {
        let mut all = gens.clone();
        all.extend(extra.iter().cloned());
        let ideal = Ideal::new(ring, all)?;
        let PointSet { points, has_nonrational } = rational_points(&ideal)?;
        if has_nonrational {
            return Err(Error::NonRational(format!("candidate locus {ideal} has points outside the ground field")));
        }
        out.extend(points);
    }
    out.sort_by(|a, b| compare_points(field, a, b));
    out.dedup_by(|a, b| compare_points(field, a, b).is_eq());
    Ok(out)
}

/// `(order, residual order)` of `f` at the origin, the second entry taken in
/// an osculating frame in characteristic zero and by cleaning in
/// characteristic `p`.
pub fn germ_invariant<F: Field>(f: &Polynomial<F>, exc: &ExceptionalRecord) -> Vec<Option<u32>> {
    let o = f.order();
    let residual = match o {
        Some(o) if o >= 2 => residual_invariant(f, exc).ok().flatten(),
        _ => None,
    };
    vec![o, residual]
}

fn residual_invariant<F: Field>(f: &Polynomial<F>, exc: &ExceptionalRecord) -> Result<Option<u32>> {
    let ring = f.ring();
    let n = ring.arity();
    let zero = origin(ring.field(), n);
    if ring.field().characteristic() != 0 {
        purely_inseparable_split(f)?;
        return residual_order(f, exc, &zero);
    }
    let osc = osculating_frame(f, &zero)?;
    if exc.vars().iter().any(|&e| *osc.change.image(e) != var(ring, e)) || exc.contains(osc.frame.var) {
        return Ok(None);
    }
    let j = coefficient_ideal(&Ideal::principal(&osc.f), &osc.frame)?;
    if j.is_zero_ideal() {
        return Ok(None);
    }
    let fac = factor_exceptional(&j, exc)?;
    Ok(order_at_point(&fac.residual, &zero)?.value)
}

fn refresh_multiplicities<F: Field>(exc: &mut ExceptionalRecord, total: &Polynomial<F>) {
    for e in &mut exc.entries {
        e.multiplicity = total.var_power_dividing(e.var).max(1);
    }
}

struct Germ<F: Field> {
    strict: Polynomial<F>,
    total: Polynomial<F>,
    exc: ExceptionalRecord,
}

struct Engine<F: Field> {
    ring: Ring<F>,
    mode: Mode,
    max_steps: usize,
}

impl<F: Field> Engine<F> {
    fn describe(&self, node: &mut ChartNode, germ: &Germ<F>) {
        node.ideals.insert("strict".into(), Ideal::principal(&germ.strict.monic()).to_string());
        node.ideals.insert("total".into(), Ideal::principal(&germ.total.monic()).to_string());
        node.exceptional = germ.exc.clone();
    }

    fn root(&self, f: &Polynomial<F>) -> ChartNode {
        let germ = Germ { strict: f.clone(), total: f.clone(), exc: ExceptionalRecord::new() };
        let mut node = ChartNode::new(vec!["root".into()]);
        self.describe(&mut node, &germ);
        let points = match bad_points(&self.ring, &bad_ideals(self.mode, f, &germ.exc), &[]) {
            Ok(p) => p,
            Err(e) => return failed(node, e),
        };
        if points.is_empty() {
            return node;
        }
        node.status = NodeStatus::Blown;
        let field = self.ring.field();
        for a in points {
            let shift = match RingMorphism::translation(&self.ring, &a) {
                Ok(s) => s,
                Err(e) => return failed(node, e),
            };
            let child = Germ {
                strict: shift.apply(f).expect("same ring"),
                total: shift.apply(f).expect("same ring"),
                exc: ExceptionalRecord::new(),
            };
            let mut path = node.path.clone();
            path.push(format!("at{}", format_point(field, &a)));
            let images = shift.images().iter().map(|p| p.to_string()).collect();
            node.children.push(self.germ(child, path, images, None, 0));
        }
        // the root itself is the ambient space, not a blowup
        node.status = NodeStatus::Blown;
        node.center = None;
        node
    }

    fn germ(
        &self,
        germ: Germ<F>,
        path: Vec<String>,
        map: Vec<String>,
        exceptional_var: Option<String>,
        depth: usize,
    ) -> ChartNode {
        let mut node = ChartNode::new(path);
        node.map = map;
        node.exceptional_var = exceptional_var;
        node.transform = Some(TransformKind::Strict);
        self.describe(&mut node, &germ);
        node.invariant = germ_invariant(&germ.strict, &germ.exc);
        let bad = bad_ideals(self.mode, &germ.strict, &germ.exc).iter().any(|g| vanishes_at_origin(g));
        if !bad {
            return node;
        }
        if depth >= self.max_steps {
            node.status = NodeStatus::StepLimit;
            node.message = Some(Error::StepLimit(self.max_steps).to_string());
            return node;
        }
        match self.blow_up(&mut node, &germ, depth) {
            Ok(()) => node,
            Err(e) => failed(node, e),
        }
    }

    fn blow_up(&self, node: &mut ChartNode, germ: &Germ<F>, depth: usize) -> Result<()> {
        let ring = &self.ring;
        let n = ring.arity();
        let all: Vec<usize> = (0..n).collect();
        node.center = Some(Ideal::of_vars(ring, &all).to_string());
        node.transversal = Some(true);
        node.status = NodeStatus::Blown;
        let charts = coordinate_charts(ring, &all)?;
        for (k, chart) in charts.iter().enumerate() {
            let j = chart.chart_var().expect("coordinate chart");
            let pulled = chart.map.apply(&germ.strict)?;
            let strict = pulled.div_var_pow(j, pulled.var_power_dividing(j))?;
            let total = chart.map.apply(&germ.total)?;
            let mut exc = germ.exc.clone();
            exc.insert(ExceptionalEntry { var: j, multiplicity: 1, birth: depth + 1 });
            let mut region = vec![var(ring, j)];
            region.extend(all[..k].iter().map(|&i| var(ring, i)));
            let points = bad_points(ring, &bad_ideals(self.mode, &strict, &exc), &region)?;
            let jname = ring.vars()[j].clone();
            if points.is_empty() {
                let mut path = node.path.clone();
                path.push(chart.name.clone());
                let mut leaf = ChartNode::new(path);
                leaf.map = chart.map.images().iter().map(|p| p.to_string()).collect();
                leaf.exceptional_var = Some(jname.clone());
                leaf.transform = Some(TransformKind::Strict);
                refresh_multiplicities(&mut exc, &total);
                let g = Germ { strict, total, exc };
                self.describe(&mut leaf, &g);
                node.children.push(leaf);
                continue;
            }
            for a in points {
                let phi = monomialize_at(chart, &a)?;
                let shift = RingMorphism::translation(ring, &a)?;
                let mut exc_a = exc.clone();
                for (i, c) in a.iter().enumerate() {
                    if !ring.field().is_zero(c) {
                        exc_a.remove(i);
                    }
                }
                let total_a = shift.apply(&total)?;
                refresh_multiplicities(&mut exc_a, &total_a);
                let child = Germ { strict: shift.apply(&strict)?, total: total_a, exc: exc_a };
                let mut path = node.path.clone();
                path.push(format!("{}@{}", chart.name, format_point(ring.field(), &a)));
                let map = phi.images().iter().map(|p| p.to_string()).collect();
                node.children.push(self.germ(child, path, map, Some(jname.clone()), depth + 1));
            }
        }
        Ok(())
    }
}

fn failed(mut node: ChartNode, e: Error) -> ChartNode {
    node.status = NodeStatus::Error;
    node.message = Some(format!("{}: {e}", e.code()));
    node
}

fn require_plane<F: Field>(f: &Polynomial<F>) -> Result<()> {
    if f.ring().arity() != 2 {
        return Err(Error::Domain("curve drivers need a ring in two variables".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroInput("curve equation".into()));
    }
    Ok(())
}

/// Blows up rational points until the strict transform is smooth and the
/// total transform has simple normal crossings.
pub fn resolve_curve_embedded<F: Field>(f: &Polynomial<F>, max_steps: usize) -> Result<ResolutionTrace> {
    require_plane(f)?;
    let engine = Engine { ring: f.ring().clone(), mode: Mode::CurveEmbedded, max_steps };
    Ok(ResolutionTrace::finish("resolve-curve", engine.root(f)))
}

/// Blows up rational singular points until the strict transform is smooth.
pub fn resolve_curve<F: Field>(f: &Polynomial<F>, max_steps: usize) -> Result<ResolutionTrace> {
    require_plane(f)?;
    let engine = Engine { ring: f.ring().clone(), mode: Mode::CurveSmooth, max_steps };
    Ok(ResolutionTrace::finish("resolve-curve-smooth", engine.root(f)))
}

/// Point blowups at rational points of order at least `c_plus` (default: the
/// maximal order) until the order drops below it everywhere above them.
pub fn resolve_hypersurface_char0<F: Field>(
    f: &Polynomial<F>,
    c_plus: Option<u32>,
    max_steps: usize,
) -> Result<ResolutionTrace> {
    let ring = f.ring();
    if ring.field().characteristic() != 0 {
        return Err(Error::Characteristic("the hypersurface driver runs in characteristic zero".into()));
    }
    if ring.arity() > 3 {
        return Err(Error::Domain("the hypersurface driver handles at most three variables".into()));
    }
    let top = max_order(f)?.ok_or_else(|| Error::ZeroInput("hypersurface equation".into()))?;
    let c = c_plus.unwrap_or(top).max(2);
    let engine = Engine { ring: ring.clone(), mode: Mode::Hypersurface(c), max_steps };
    let mut trace = ResolutionTrace::finish("resolve-h0", engine.root(f));
    trace.root.invariant = vec![Some(top), Some(c)];
    Ok(trace)
}

/// Combinatorial resolution of a monomial `x^α` whose components are
/// flagged exceptional or residual. While the residual components have
/// multiplicity sum `≥ c_plus`, their intersection is blown up; in chart `j`
/// the multiplicity of `x_j` becomes the sum minus `c_plus` and `x_j` turns
/// exceptional.
pub fn resolve_monomial<F: Field>(
    m: &Polynomial<F>,
    exc: &ExceptionalRecord,
    c_plus: u32,
    max_steps: usize,
) -> Result<ResolutionTrace> {
    if c_plus == 0 {
        return Err(Error::Domain("control must be at least 1".into()));
    }
    if m.num_terms() != 1 {
        return Err(Error::Domain(format!("{m} is not a monomial")));
    }
    let (mono, _) = m.terms().next().expect("one term");
    let ring = m.ring();
    let flags: Vec<bool> = (0..ring.arity()).map(|i| exc.contains(i)).collect();
    let root = monomial_node(ring, mono.exponents().to_vec(), flags, c_plus, vec!["root".into()], 0, max_steps);
    Ok(ResolutionTrace::finish("resolve-monomial", root))
}

fn monomial_node<F: Field>(
    ring: &Ring<F>,
    alpha: Vec<u32>,
    exceptional: Vec<bool>,
    c: u32,
    path: Vec<String>,
    depth: usize,
    max_steps: usize,
) -> ChartNode {
    let mut node = ChartNode::new(path);
    let poly = Polynomial::monomial(ring, Monomial::new(alpha.clone()), ring.field().one());
    node.ideals.insert("controlled".into(), Ideal::principal(&poly).to_string());
    for (i, (&a, &e)) in alpha.iter().zip(&exceptional).enumerate() {
        if e && a > 0 {
            node.exceptional.insert(ExceptionalEntry { var: i, multiplicity: a, birth: depth });
        }
    }
    let residual: Vec<usize> = (0..alpha.len()).filter(|&i| alpha[i] > 0 && !exceptional[i]).collect();
    let sum: u32 = residual.iter().map(|&i| alpha[i]).sum();
    node.invariant = vec![Some(sum), Some(alpha.iter().sum())];
    if sum < c {
        return node;
    }
    if depth >= max_steps {
        node.status = NodeStatus::StepLimit;
        node.message = Some(Error::StepLimit(max_steps).to_string());
        return node;
    }
    let charts = match coordinate_charts(ring, &residual) {
        Ok(ch) => ch,
        Err(e) => return failed(node, e),
    };
    node.center = Some(Ideal::of_vars(ring, &residual).to_string());
    node.transversal = Some(true);
    node.status = NodeStatus::Blown;
    for chart in &charts {
        let j = chart.chart_var().expect("coordinate chart");
        let mut next = alpha.clone();
        next[j] = sum - c;
        let mut flags = exceptional.clone();
        flags[j] = true;
        let mut path = node.path.clone();
        path.push(chart.name.clone());
        let mut child = monomial_node(ring, next, flags, c, path, depth + 1, max_steps);
        child.map = chart.map.images().iter().map(|p| p.to_string()).collect();
        child.exceptional_var = Some(ring.vars()[j].clone());
        child.transform = Some(TransformKind::Controlled(c));
        node.children.push(child);
    }
    node
}

/// Recomputes every node below the root from its recorded map and transform
/// and compares the stored ideals textually.
pub fn replay_trace<F: Field>(ring: &Ring<F>, trace: &ResolutionTrace) -> Result<bool> {
    fn principal<F: Field>(ring: &Ring<F>, text: &str) -> Result<Polynomial<F>> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        parse_poly(ring, inner)
    }
    fn check<F: Field>(ring: &Ring<F>, node: &ChartNode) -> Result<bool> {
        for child in &node.children {
            let images = child.map.iter().map(|s| parse_poly(ring, s)).collect::<Result<Vec<_>>>()?;
            let phi = RingMorphism::new(ring, ring, images)?;
            for (kind, text) in &node.ideals {
                let Some(expected) = child.ideals.get(kind) else { continue };
                let parent = principal(ring, text)?;
                let pulled = phi.apply(&parent)?;
                let h = child.exceptional_var.as_ref().map(|v| ring.require_index(v)).transpose()?;
                let got = match (kind.as_str(), child.transform, h) {
                    ("total", _, _) => pulled,
                    ("strict", _, Some(j)) => pulled.div_var_pow(j, pulled.var_power_dividing(j))?,
                    ("controlled", Some(TransformKind::Controlled(c)), Some(j)) => pulled.div_var_pow(j, c)?,
                    _ => pulled,
                };
                let text = if kind == "controlled" {
                    Ideal::principal(&got).to_string()
                } else {
                    Ideal::principal(&got.monic()).to_string()
                };
                if &text != expected {
                    return Ok(false);
                }
            }
            if !check(ring, child)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
    check(ring, &trace.root)
}

/// Points of the exceptional divisor where the strict transform keeps order
/// at least `o`.
#[derive(Clone, Debug)]
pub struct EquiconstantLocus<F: Field> {
    pub ideal: Ideal<F>,
    /// `None` when the locus is positive dimensional.
    pub points: Option<PointSet<F>>,
}

pub fn equiconstant_locus<F: Field>(f: &Polynomial<F>, chart: &BlowupChart<F>, o: u32) -> Result<EquiconstantLocus<F>> {
    let pulled = chart.map.apply(f)?;
    let strict = match chart.chart_var() {
        Some(j) => pulled.div_var_pow(j, pulled.var_power_dividing(j))?,
        None => {
            let (sat, _) = Ideal::principal(&pulled).sum(&chart.chart_ideal)?.saturate(&chart.exceptional)?;
            return locus_of(&sat, chart, o);
        }
    };
    locus_of(&Ideal::principal(&strict), chart, o)
}

fn locus_of<F: Field>(strict: &Ideal<F>, chart: &BlowupChart<F>, o: u32) -> Result<EquiconstantLocus<F>> {
    let mut gens = Vec::new();
    for g in strict.generators() {
        gens.extend(order_locus(g, o));
    }
    gens.push(chart.exceptional.clone());
    let ideal = Ideal::new(chart.target(), gens)?.sum(&chart.chart_ideal)?.normalized()?;
    if ideal.is_unit()? {
        return Ok(EquiconstantLocus { ideal, points: Some(PointSet { points: Vec::new(), has_nonrational: false }) });
    }
    let points = if ideal.krull_dimension()? == 0 { Some(rational_points(&ideal)?) } else { None };
    Ok(EquiconstantLocus { ideal, points })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SncFailure {
    pub point: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SncReport {
    pub snc: bool,
    pub failures: Vec<SncFailure>,
}

/// Simple normal crossings of plane curve components at the given points.
pub fn snc_check_plane<F: Field>(components: &[Polynomial<F>], points: &[Point<F>]) -> Result<SncReport> {
    let mut failures = Vec::new();
    for (idx, a) in points.iter().enumerate() {
        let mut through = Vec::new();
        for c in components {
            if c.ring().arity() != 2 {
                return Err(Error::Domain("snc check is for plane curves".into()));
            }
            let field = c.field();
            if field.is_zero(&c.evaluate(a)?) {
                let grad = [c.partial(0).evaluate(a)?, c.partial(1).evaluate(a)?];
                if grad.iter().all(|g| field.is_zero(g)) {
                    failures.push(SncFailure { point: idx, reason: format!("{c} is singular") });
                }
                through.push(grad);
            }
        }
        if through.len() > 2 {
            failures.push(SncFailure { point: idx, reason: format!("{} components meet", through.len()) });
        } else if through.len() == 2 {
            let field = components[0].field();
            let det = field.sub(&field.mul(&through[0][0], &through[1][1]), &field.mul(&through[0][1], &through[1][0]));
            if field.is_zero(&det) {
                failures.push(SncFailure { point: idx, reason: "components are tangent".into() });
            }
        }
    }
    Ok(SncReport { snc: failures.is_empty(), failures })
}

/// One step of a prescribed local blowup sequence: blow up the coordinate
/// subspace of `center`, take the chart of `chart_var`, move `point` to the
/// origin.
#[derive(Clone, Debug)]
pub struct LocalStep<F: Field> {
    pub center: Vec<usize>,
    pub chart_var: usize,
    pub point: Point<F>,
}

#[derive(Clone, Debug)]
pub struct ReplayStep<F: Field> {
    pub map: Option<RingMorphism<F>>,
    pub strict: Polynomial<F>,
    pub exceptional: ExceptionalRecord,
    pub order: Option<u32>,
    /// Residual order at the origin.
    pub residual_order: Option<u32>,
}

/// Follows a fixed sequence of local blowups of a purely inseparable
/// hypersurface and records strict transforms and residual orders.
pub fn replay_local_sequence<F: Field>(
    f: &Polynomial<F>,
    exc: &ExceptionalRecord,
    steps: &[LocalStep<F>],
) -> Result<Vec<ReplayStep<F>>> {
    let ring = f.ring();
    let zero = origin(ring.field(), ring.arity());
    let mut current = f.clone();
    let mut record = exc.clone();
    let mut out = vec![ReplayStep {
        map: None,
        strict: current.clone(),
        exceptional: record.clone(),
        order: current.order(),
        residual_order: residual_order(&current, &record, &zero)?,
    }];
    for (k, step) in steps.iter().enumerate() {
        let charts = coordinate_charts(ring, &step.center)?;
        let chart = charts
            .iter()
            .find(|c| c.chart_var() == Some(step.chart_var))
            .ok_or_else(|| Error::Domain("chart variable is not a center variable".into()))?;
        let phi = monomialize_at(chart, &step.point)?;
        let pulled = phi.apply(&current)?;
        let j = step.chart_var;
        current = pulled.div_var_pow(j, pulled.var_power_dividing(j))?;
        let d = pulled.var_power_dividing(j);
        record.insert(ExceptionalEntry { var: j, multiplicity: d.max(1), birth: k + 1 });
        for (i, c) in step.point.iter().enumerate() {
            if !ring.field().is_zero(c) {
                record.remove(i);
            }
        }
        out.push(ReplayStep {
            map: Some(phi),
            strict: current.clone(),
            exceptional: record.clone(),
            order: current.order(),
            residual_order: residual_order(&current, &record, &zero)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::RingContext;

    #[test]
    fn cusp_drivers() {
        let r = RingContext::new(Rationals, &["x", "y"]).unwrap();
        let f = parse_poly(&r, "x^2 - y^3").unwrap();
        let smooth = resolve_curve(&f, 32).unwrap();
        assert_eq!(smooth.status, TraceStatus::Resolved);
        assert_eq!(smooth.step_count, 1);
        let emb = resolve_curve_embedded(&f, 32).unwrap();
        assert_eq!(emb.status, TraceStatus::Resolved);
        assert_eq!(emb.step_count, 3);
        assert!(replay_trace(&r, &emb).unwrap());
    }

    #[test]
    fn monomial_stage() {
        let r = RingContext::new(Rationals, &["x", "y"]).unwrap();
        let m = parse_poly(&r, "x^2*y^3").unwrap();
        let t = resolve_monomial(&m, &ExceptionalRecord::new(), 1, 32).unwrap();
        assert_eq!(t.status, TraceStatus::Resolved);
        assert_eq!(t.step_count, 2);
        let first: Vec<&String> = t.root.children.iter().map(|c| &c.ideals["controlled"]).collect();
        assert_eq!(first, ["(x^4*y^3)", "(x^2*y^4)"]);
        assert!(replay_trace(&r, &t).unwrap());
        let one = parse_poly(&r, "1").unwrap();
        assert_eq!(resolve_monomial(&one, &ExceptionalRecord::new(), 1, 32).unwrap().step_count, 0);
    }

    #[test]
    fn cone_resolves_in_one_step() {
        let r = RingContext::new(Rationals, &["x", "y", "z"]).unwrap();
        let f = parse_poly(&r, "x^2 + y*z").unwrap();
        let t = resolve_hypersurface_char0(&f, Some(2), 32).unwrap();
        assert_eq!(t.status, TraceStatus::Resolved);
        assert_eq!(t.step_count, 1);
    }

    #[test]
    fn snc_examples() {
        let r = RingContext::new(Rationals, &["x", "y"]).unwrap();
        let o = vec![origin(&Rationals, 2)];
        let p = |s: &str| parse_poly(&r, s).unwrap();
        assert!(snc_check_plane(&[p("x"), p("y")], &o).unwrap().snc);
        assert!(!snc_check_plane(&[p("y^2 - x^3"), p("x")], &o).unwrap().snc);
        assert!(!snc_check_plane(&[p("y - x^2"), p("y")], &o).unwrap().snc);
    }

    #[test]
    fn char_two_sequence() {
        let r = RingContext::new(PrimeField::new(2).unwrap(), &["x", "y", "z"]).unwrap();
        let f = parse_poly(&r, "x^2 + y^7 + y*z^4").unwrap();
        let steps = vec![
            LocalStep { center: vec![0, 1, 2], chart_var: 1, point: vec![0, 0, 0] },
            LocalStep { center: vec![0, 1], chart_var: 1, point: vec![0, 0, 0] },
            LocalStep { center: vec![0, 1, 2], chart_var: 2, point: vec![0, 0, 0] },
            LocalStep { center: vec![0, 1, 2], chart_var: 2, point: vec![0, 1, 0] },
        ];
        let out = replay_local_sequence(&f, &ExceptionalRecord::new(), &steps).unwrap();
        let orders: Vec<Option<u32>> = out.iter().map(|s| s.residual_order).collect();
        assert_eq!(orders, [Some(5), Some(2), Some(2), Some(2), Some(3)]);
        assert_eq!(out[4].strict.to_string(), "x^2 + y^3*z^2 + y^2*z^2");
    }
}
