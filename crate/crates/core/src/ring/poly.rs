use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::field::Field;

/// Largest number of terms any guarded operation may produce.
pub const TERM_GUARD: usize = 10_000;

/// `K[x_1, ..., x_n]`: ordered variable names over a ground field.
#[derive(Debug, PartialEq, Eq)]
pub struct RingContext<F: Field> {
    vars: Vec<String>,
    field: F,
}

pub type Ring<F> = Arc<RingContext<F>>;

impl<F: Field> RingContext<F> {
    pub fn new<S: AsRef<str>>(field: F, vars: &[S]) -> Result<Ring<F>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::Domain("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::Domain(format!("duplicate variable name `{v}`")));
            }
        }
        Ok(Arc::new(RingContext { vars, field }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn require_index(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::Domain(format!("unknown variable `{name}`")))
    }

    /// Fresh ring with `extra` appended after the existing variables.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ring<F>> {
        let mut names = self.vars.clone();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        RingContext::new(self.field.clone(), &names)
    }

    /// A variable name not yet used in this ring, derived from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.index_of(stem).is_none() {
            return stem.to_string();
        }
        (1..).map(|i| format!("{stem}{i}")).find(|n| self.index_of(n).is_none()).expect("unbounded search")
    }

    pub fn same(a: &Ring<F>, b: &Ring<F>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// Sparse polynomial with exact coefficients. Zero coefficients are never
/// stored.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Ring<F>,
    terms: BTreeMap<Monomial, F::Elem>,
}

/// Which family of differential operators [`Polynomial::derivative`] applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeMode {
    /// `∂^α x^β = β!/(β-α)! x^(β-α)`.
    Ordinary,
    /// Hasse derivatives: `∂_{x^α} x^β = C(β, α) x^(β-α)`.
    DividedPower,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Ring<F>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring<F>, c: F::Elem) -> Self {
        Self::monomial(ring, Monomial::one(ring.arity()), c)
    }

    pub fn from_i64(ring: &Ring<F>, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    pub fn var(ring: &Ring<F>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.arity(), i, 1), ring.field().one())
    }

    pub fn var_named(ring: &Ring<F>, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.require_index(name)?))
    }

    pub fn monomial(ring: &Ring<F>, m: Monomial, c: F::Elem) -> Self {
        assert_eq!(m.arity(), ring.arity(), "monomial arity");
        let mut terms = BTreeMap::new();
        if !ring.field().is_zero(&c) {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms<I>(ring: &Ring<F>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, F::Elem)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && self.field().is_one(c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order: lexicographically descending.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field().zero())
    }

    pub fn constant_term(&self) -> F::Elem {
        self.coefficient(&Monomial::one(self.ring.arity()))
    }

    /// Lex-leading term (first variable heaviest).
    pub fn leading_lex(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Order at the origin: minimal total degree of a term, `None` for the
    /// zero polynomial (order ∞).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Minimal degree in the given variables over all terms.
    pub fn order_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(vars)).min()
    }

    pub fn degree_in_var(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponents()[i]).max()
    }

    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.arity()).filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0)).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &F::Elem) {
        let field = self.ring.field().clone();
        if field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = field.add(existing, c);
                if field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if RingContext::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn check_guard(&self) -> Result<()> {
        if self.terms.len() > TERM_GUARD {
            Err(Error::Guard(format!("polynomial with {} terms exceeds the cap of {TERM_GUARD}", self.terms.len())))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        let field = self.field().clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &field.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let field = self.field();
        let mut out = Self::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &field.mul(c1, c2));
            }
            if out.terms.len() > TERM_GUARD {
                out.check_guard()?;
            }
        }
        out.check_guard()?;
        Ok(out)
    }

    pub fn try_pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), field.mul(a, c))).collect(),
        }
    }

    /// Divides by the lex-leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_lex() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field().inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient `q` with `q * divisor == self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_ring(divisor)?;
        let (lm, lc) =
            divisor.leading_lex().ok_or_else(|| Error::NotDivisible("division by zero polynomial".into()))?;
        let field = self.field().clone();
        let lc_inv = field.inv(lc).expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.ring);
        while let Some((m, c)) = rem.leading_lex().map(|(m, c)| (m.clone(), c.clone())) {
            let Some(qm) = m.div(lm) else {
                return Err(Error::NotDivisible(format!("{divisor} does not divide {self}")));
            };
            let qc = field.mul(&c, &lc_inv);
            rem = rem.try_sub(&divisor.mul_monomial(&qm, &qc))?;
            quot.add_term(qm, &qc);
        }
        Ok(quot)
    }

    /// Divides every term by `x_i^k`.
    pub fn div_var_pow(&self, i: usize, k: u32) -> Result<Self> {
        let d = Monomial::var(self.ring.arity(), i, k);
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let q = m
                .div(&d)
                .ok_or_else(|| Error::NotDivisible(format!("{} does not divide {self}", self.ring.vars()[i])))?;
            out.terms.insert(q, c.clone());
        }
        Ok(out)
    }

    /// Largest power of `x_i` dividing every term (0 for the zero polynomial).
    pub fn var_power_dividing(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[i]).min().unwrap_or(0)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.ring.arity()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// The homogeneous form of lowest degree (the initial form at the origin).
    pub fn initial_form_lowest(&self) -> Result<Self> {
        let o = self.order().ok_or_else(|| Error::ZeroInput("initial form of the zero polynomial".into()))?;
        Ok(self.filter_terms(|m| m.degree() == o))
    }

    /// Lowest-degree part with respect to the degree in `vars` only.
    pub fn lowest_form_in(&self, vars: &[usize]) -> Result<Self> {
        let o = self.order_in(vars).ok_or_else(|| Error::ZeroInput("initial form of the zero polynomial".into()))?;
        Ok(self.filter_terms(|m| m.degree_in(vars) == o))
    }

    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Iterated partial derivative `∂^α`.
    pub fn derivative(&self, alpha: &Monomial, mode: DerivativeMode) -> Self {
        let field = self.field();
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let Some(rest) = m.div(alpha) else { continue };
            let mut factor = BigInt::one();
            for (&b, &a) in m.exponents().iter().zip(alpha.exponents()) {
                factor *= match mode {
                    DerivativeMode::Ordinary => falling_factorial(b, a),
                    DerivativeMode::DividedPower => binomial(b, a),
                };
            }
            let k = field.from_bigint(&factor);
            out.add_term(rest, &field.mul(c, &k));
        }
        out
    }

    /// `∂f/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        self.derivative(&Monomial::var(self.ring.arity(), i, 1), DerivativeMode::Ordinary)
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.ring.arity() {
            return Err(Error::Domain(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.ring.arity()
            )));
        }
        let field = self.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = field.mul(&t, &field.pow(x, e as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for `x_i`; the images may live in another ring.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if images.len() != self.ring.arity() {
            return Err(Error::ContextMismatch);
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        if images.iter().any(|p| !RingContext::same(&p.ring, &target)) {
            return Err(Error::ContextMismatch);
        }
        let mut powers: Vec<Vec<Polynomial<F>>> =
            images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.try_mul(&powers[i][e as usize])?;
            }
            out = out.try_add(&t)?;
            out.check_guard()?;
        }
        Ok(out)
    }

    /// `f(x + a)`.
    pub fn translate(&self, a: &[F::Elem]) -> Result<Self> {
        if a.len() != self.ring.arity() {
            return Err(Error::Domain(format!(
                "translation has {} coordinates, ring has {} variables",
                a.len(),
                self.ring.arity()
            )));
        }
        if a.iter().all(|c| self.field().is_zero(c)) {
            return Ok(self.clone());
        }
        let images: Vec<_> = (0..self.ring.arity())
            .map(|i| {
                Polynomial::var(&self.ring, i)
                    .try_add(&Polynomial::constant(&self.ring, a[i].clone()))
                    .expect("same ring")
            })
            .collect();
        self.substitute(&images)
    }

    /// Coefficients `a_i` with `self = Σ a_i · x_var^i`.
    pub fn expand_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in_var(var).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(&self.ring); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponents()[var] as usize;
            let mut rest = m.clone();
            rest.set(var, 0);
            out[e].terms.insert(rest, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Splits `self = root^p + rest` where `rest` has no term whose exponent
    /// vector lies in `p·ℕ^n`. Coefficients of F_p are their own p-th roots.
    pub fn pth_power_split(&self) -> Result<(Self, Self)> {
        let p = self.field().characteristic();
        if p == 0 {
            return Err(Error::Characteristic("p-th power split needs a prime field".into()));
        }
        let mut root = Self::zero(&self.ring);
        let mut rest = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.exponents().iter().all(|e| e % p == 0) {
                let r = Monomial::new(m.exponents().iter().map(|e| e / p).collect());
                root.terms.insert(r, c.clone());
            } else {
                rest.terms.insert(m.clone(), c.clone());
            }
        }
        Ok((root, rest))
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `index_map[i]`.
    pub fn map_vars(&self, target: &Ring<F>, index_map: &[usize]) -> Self {
        assert_eq!(index_map.len(), self.ring.arity());
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.arity()];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[index_map[i]] += x;
            }
            out.add_term(Monomial::new(e), c);
        }
        out
    }

    /// Moves the polynomial into a ring whose variable names include all the
    /// variables this polynomial actually uses.
    pub fn rename_into(&self, target: &Ring<F>) -> Result<Self> {
        let map: Vec<usize> = self
            .ring
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| match target.index_of(v) {
                Some(j) => Ok(j),
                None if self.degree_in_var(i).unwrap_or(0) == 0 => Ok(usize::MAX),
                None => Err(Error::Domain(format!("variable `{v}` missing in target ring"))),
            })
            .collect::<Result<_>>()?;
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.arity()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    e[map[i]] += x;
                }
            }
            out.add_term(Monomial::new(e), c);
        }
        Ok(out)
    }
}

pub(crate) fn falling_factorial(b: u32, a: u32) -> BigInt {
    if a > b {
        return BigInt::zero();
    }
    ((b - a + 1)..=b).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        RingContext::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = field.is_negative(c);
            let abs = if negative { field.neg(c) } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if m.is_one() || !field.is_one(&abs) {
                factors.push(field.format(&abs));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars()[i].clone()),
                    _ => factors.push(format!("{}^{e}", self.ring.vars()[i])),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<F: Field> $trait<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            /// Panics on operands from different rings.
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$try(rhs).expect(concat!("polynomial ", stringify!($method)))
            }
        }
        impl<F: Field> $trait<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let field = self.field().clone();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

/// The four operations of exact polynomial arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    ExactDiv,
}

pub fn poly_arith<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, op: ArithOp) -> Result<Polynomial<F>> {
    match op {
        ArithOp::Add => f.try_add(g),
        ArithOp::Sub => f.try_sub(g),
        ArithOp::Mul => f.try_mul(g),
        ArithOp::ExactDiv => f.exact_div(g),
    }
}
