use std::cmp::Ordering;

use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::{Monomial, Polynomial, Ring, RingContext, TERM_GUARD};

/// Upper bound on single reduction steps per basis computation.
pub const REDUCTION_GUARD: usize = 2_000_000;

/// Terms sorted ascending by the active order; the leading term is last.
type Terms<F> = Vec<(Monomial, <F as Field>::Elem)>;

/// Reduced Gröbner basis; elements are monic for `order` and sorted by
/// increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Ring<F>,
    order: MonomialOrder,
    elements: Vec<Polynomial<F>>,
    sorted: Vec<Terms<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.sorted.iter().map(|t| &t.last().expect("nonzero").0)
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    /// Remainder of full multivariate division; zero iff `f` is in the ideal.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !RingContext::same(f.ring(), &self.ring) {
            return Err(Error::ContextMismatch);
        }
        let k = Kernel { field: self.ring.field().clone(), order: &self.order };
        let mut steps = 0;
        let refs: Vec<&Terms<F>> = self.sorted.iter().collect();
        let r = k.reduce(k.sort(f), &refs, true, &mut steps)?;
        Ok(k.to_poly(&self.ring, &r))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Leading monomial of `f` for `order`.
pub fn leading_monomial<F: Field>(f: &Polynomial<F>, order: &MonomialOrder) -> Option<Monomial> {
    f.terms().map(|(m, _)| m).max_by(|a, b| order.cmp(a, b)).cloned()
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis<F: Field>(
    ring: &Ring<F>,
    gens: &[Polynomial<F>],
    order: &MonomialOrder,
) -> Result<GroebnerBasis<F>> {
    if gens.iter().any(|g| !RingContext::same(g.ring(), ring)) {
        return Err(Error::ContextMismatch);
    }
    let k = Kernel { field: ring.field().clone(), order };
    let sorted = k.buchberger(gens)?;
    let elements = sorted.iter().map(|t| k.to_poly(ring, t)).collect();
    Ok(GroebnerBasis { ring: ring.clone(), order: order.clone(), elements, sorted })
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Kernel<'a, F: Field> {
    field: F,
    order: &'a MonomialOrder,
}

impl<'a, F: Field> Kernel<'a, F> {
    fn sort(&self, f: &Polynomial<F>) -> Terms<F> {
        let mut t: Terms<F> = f.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        t.sort_by(|a, b| self.order.cmp(&a.0, &b.0));
        t
    }

    fn to_poly(&self, ring: &Ring<F>, t: &Terms<F>) -> Polynomial<F> {
        Polynomial::from_terms(ring, t.iter().cloned())
    }

    fn lead<'t>(&self, t: &'t Terms<F>) -> &'t Monomial {
        &t.last().expect("nonzero").0
    }

    fn make_monic(&self, t: &mut Terms<F>) {
        let lc = t.last().expect("nonzero").1.clone();
        if self.field.is_one(&lc) {
            return;
        }
        let inv = self.field.inv(&lc).expect("nonzero leading coefficient");
        for (_, c) in t.iter_mut() {
            *c = self.field.mul(c, &inv);
        }
    }

    /// `p - c·m·g`, merging two ascending lists.
    fn sub_mul(&self, p: &Terms<F>, c: &F::Elem, m: &Monomial, g: &Terms<F>) -> Result<Terms<F>> {
        let mut out = Vec::with_capacity(p.len() + g.len());
        let mut a = p.iter().peekable();
        let mut b = g.iter().map(|(gm, gc)| (gm.mul(m), self.field.mul(gc, c))).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => self.order.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Less => out.push(a.next().expect("peeked").clone()),
                Ordering::Greater => {
                    let (bm, bc) = b.next().expect("peeked");
                    out.push((bm, self.field.neg(&bc)));
                }
                Ordering::Equal => {
                    let (am, ac) = a.next().expect("peeked");
                    let (_, bc) = b.next().expect("peeked");
                    let s = self.field.sub(ac, &bc);
                    if !self.field.is_zero(&s) {
                        out.push((am.clone(), s));
                    }
                }
            }
        }
        if out.len() > TERM_GUARD {
            return Err(Error::Guard(format!(
                "intermediate polynomial with {} terms exceeds the cap of {TERM_GUARD}",
                out.len()
            )));
        }
        Ok(out)
    }

    /// Reduces `p` by `basis`. With `full`, tail terms are reduced too;
    /// otherwise stops at the first irreducible leading term.
    fn reduce(&self, mut p: Terms<F>, basis: &[&Terms<F>], full: bool, steps: &mut usize) -> Result<Terms<F>> {
        let mut done: Terms<F> = Vec::new();
        while let Some((lm, lc)) = p.last().cloned() {
            let reducer = basis.iter().find(|g| self.lead(g).divides(&lm));
            match reducer {
                Some(g) => {
                    *steps += 1;
                    if *steps > REDUCTION_GUARD {
                        return Err(Error::Guard(format!("more than {REDUCTION_GUARD} reduction steps")));
                    }
                    let glc = &g.last().expect("nonzero").1;
                    let c = self.field.div(&lc, glc).expect("nonzero");
                    let m = lm.div(self.lead(g)).expect("divides");
                    p = self.sub_mul(&p, &c, &m, g)?;
                }
                None => {
                    if !full {
                        break;
                    }
                    done.push(p.pop().expect("nonempty"));
                }
            }
        }
        if full {
            done.reverse();
            Ok(done)
        } else {
            Ok(p)
        }
    }

    fn spoly(&self, f: &Terms<F>, g: &Terms<F>, lcm: &Monomial) -> Result<Terms<F>> {
        let (fm, fc) = f.last().expect("nonzero");
        let (gm, gc) = g.last().expect("nonzero");
        let mf = lcm.div(fm).expect("lcm");
        let mg = lcm.div(gm).expect("lcm");
        let fi = self.field.inv(fc).expect("nonzero");
        let gi = self.field.inv(gc).expect("nonzero");
        let zero: Terms<F> = Vec::new();
        let a = self.sub_mul(&zero, &self.field.neg(&fi), &mf, f)?;
        self.sub_mul(&a, &gi, &mg, g)
    }

    fn buchberger(&self, gens: &[Polynomial<F>]) -> Result<Vec<Terms<F>>> {
        let mut polys: Vec<Terms<F>> = Vec::new();
        let mut active: Vec<bool> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        let mut steps = 0usize;

        let mut input: Vec<Terms<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| self.sort(g)).collect();
        input.sort_by(|a, b| self.order.cmp(self.lead(a), self.lead(b)).then(a.len().cmp(&b.len())));
        for f in input {
            let reducers = active_polys(&polys, &active);
            let mut h = self.reduce(f, &reducers, false, &mut steps)?;
            if h.is_empty() {
                continue;
            }
            self.make_monic(&mut h);
            if self.lead(&h).is_one() {
                return Ok(vec![h]);
            }
            self.update(&mut polys, &mut active, &mut pairs, h);
        }

        while !pairs.is_empty() {
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    self.order
                        .cmp(&pairs[a].lcm, &pairs[b].lcm)
                        .then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
                })
                .expect("nonempty");
            let pair = pairs.swap_remove(best);
            let s = self.spoly(&polys[pair.i], &polys[pair.j], &pair.lcm)?;
            let reducers = active_polys(&polys, &active);
            let mut h = self.reduce(s, &reducers, false, &mut steps)?;
            if h.is_empty() {
                continue;
            }
            self.make_monic(&mut h);
            if self.lead(&h).is_one() {
                return Ok(vec![h]);
            }
            self.update(&mut polys, &mut active, &mut pairs, h);
        }

        let mut minimal: Vec<Terms<F>> = active_polys(&polys, &active).into_iter().cloned().collect();
        minimal.sort_by(|a, b| self.order.cmp(self.lead(a), self.lead(b)));
        let mut reduced = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<&Terms<F>> = minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, t)| t).collect();
            let mut r = self.reduce(minimal[i].clone(), &others, true, &mut steps)?;
            self.make_monic(&mut r);
            reduced.push(r);
        }
        Ok(reduced)
    }

    /// Gebauer–Möller update: adds `h`, prunes redundant pairs and
    /// deactivates basis elements whose leading monomial `h` divides.
    fn update(&self, polys: &mut Vec<Terms<F>>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Terms<F>) {
        let hi = polys.len();
        let lh = self.lead(&h).clone();

        let mut cand: Vec<(usize, Monomial)> =
            (0..hi).filter(|&g| active[g]).map(|g| (g, lh.lcm(self.lead(&polys[g])))).collect();

        // chain criterion among the new pairs
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g, l)) = cand.pop() {
            let coprime = lh.is_coprime(self.lead(&polys[g]));
            let dominated = cand.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !lh.is_coprime(self.lead(&polys[*g])))
            .map(|(g, lcm)| Pair { i: g, j: hi, lcm })
            .collect();

        // chain criterion for old pairs
        pairs.retain(|p| {
            let li = lh.lcm(self.lead(&polys[p.i]));
            let lj = lh.lcm(self.lead(&polys[p.j]));
            !(lh.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
        });
        pairs.extend(new_pairs);

        for g in 0..hi {
            if active[g] && lh.divides(self.lead(&polys[g])) {
                active[g] = false;
            }
        }
        polys.push(h);
        active.push(true);
    }
}

fn active_polys<'p, T>(polys: &'p [T], active: &[bool]) -> Vec<&'p T> {
    polys.iter().zip(active).filter(|(_, &a)| a).map(|(p, _)| p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::{parse_poly, parse_poly_list};

    #[test]
    fn principal_and_unit() {
        let r = RingContext::new(Rationals, &["x", "y"]).unwrap();
        let gb = groebner_basis(&r, &parse_poly_list(&r, "x").unwrap(), &MonomialOrder::Lex).unwrap();
        assert_eq!(gb.elements().len(), 1);
        let gb = groebner_basis(&r, &parse_poly_list(&r, "x, x + 1").unwrap(), &MonomialOrder::Lex).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn twisted_cubic_lex() {
        let r = RingContext::new(Rationals, &["x", "y", "z"]).unwrap();
        let gens = parse_poly_list(&r, "y - x^2, z - x^3").unwrap();
        let gb = groebner_basis(&r, &gens, &MonomialOrder::Lex).unwrap();
        assert!(gb.contains(&parse_poly(&r, "y^3 - z^2").unwrap()).unwrap());
        assert!(!gb.contains(&parse_poly(&r, "y^2 - z").unwrap()).unwrap());
    }

    #[test]
    fn mod_p_basis() {
        let r = RingContext::new(PrimeField::new(2).unwrap(), &["x", "y"]).unwrap();
        let gens = parse_poly_list(&r, "x^2 + y, x*y + 1").unwrap();
        let gb = groebner_basis(&r, &gens, &MonomialOrder::DegRevLex).unwrap();
        assert!(gb.contains(&parse_poly(&r, "y^3 + 1").unwrap()).unwrap());
    }
}
