//! Buchberger's algorithm with the product and chain criteria
//! (Gebauer-Möller installation) and normal-strategy pair selection.

use std::cmp::Ordering;

use num_traits::One;

use crate::algebra::{Monomial, MonomialOrder, Polynomial, Rational, RingRef};
use crate::error::{Error, Result};

/// Reduced Gröbner basis: monic elements sorted ascending by leading monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    ring: RingRef,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
}

/// Counters reported with limit errors and exposed for benchmarking.
#[derive(Clone, Copy, Debug, Default)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
}

impl GroebnerBasis {
    /// Wrap elements already known to form a reduced basis, sorted
    /// ascending by leading monomial.
    pub(crate) fn from_parts(ring: &RingRef, order: MonomialOrder, elements: Vec<Polynomial>) -> Self {
        GroebnerBasis {
            ring: ring.clone(),
            order,
            elements,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.leading_monomial().unwrap().clone()).collect()
    }

    /// Normal form of `f` modulo the basis.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        let f = f.with_order(self.order);
        normal_form(&f, &self.elements)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }
}

/// Divide, with remainder, `f` by `basis` (all in `f`'s order; basis monic).
pub(crate) fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let order = f.order();
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    let mut p = f.clone();
    loop {
        let terms = p.terms();
        let mut hit = None;
        for (idx, (m, _)) in terms.iter().enumerate() {
            if let Some(g) = basis.iter().find(|g| g.leading_monomial().unwrap().divides(m)) {
                hit = Some((idx, g));
                break;
            }
        }
        match hit {
            None => {
                rem.extend(p.into_terms());
                return Polynomial::from_sorted_unchecked(&ring, order, rem);
            }
            Some((idx, g)) => {
                let mut all = p.into_terms();
                let tail = all.split_off(idx);
                rem.extend(all);
                let (m, c) = &tail[0];
                let glm = g.leading_monomial().unwrap();
                let glc = g.leading_coeff().unwrap();
                let q = glm.quotient_of(m);
                let k = -(c / glc);
                let rest = Polynomial::from_sorted_unchecked(&ring, order, tail);
                p = rest.add_scaled(&k, &q, g);
            }
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Buchberger<'a> {
    ring: &'a RingRef,
    order: MonomialOrder,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: GbStats,
}

impl<'a> Buchberger<'a> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn active_basis(&self) -> Vec<Polynomial> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p.clone())
            .collect()
    }

    fn update(&mut self, h: Polynomial) {
        let k = self.polys.len();
        let hl = h.leading_monomial().unwrap().clone();
        self.polys.push(h);
        self.active.push(true);

        let mut c: Vec<Pair> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| Pair {
                i,
                j: k,
                lcm: self.lm(i).lcm(&hl),
            })
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = (!c.is_empty()).then(|| c.remove(0)) {
            let coprime = self.lm(p.i).is_coprime(&hl);
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d.into_iter().filter(|p| !self.lm(p.i).is_coprime(&hl)).collect();

        let polys = &self.polys;
        let lm = |i: usize| polys[i].leading_monomial().unwrap();
        self.pairs.retain(|p| {
            !(hl.divides(&p.lcm) && lm(p.i).lcm(&hl) != p.lcm && lm(p.j).lcm(&hl) != p.lcm)
        });
        self.pairs.extend(e);

        for i in 0..k {
            if self.active[i] && hl.divides(self.lm(i)) {
                self.active[i] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let (ring, order) = (self.ring, self.order);
        let mut best = 0;
        for idx in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[idx], &self.pairs[best]);
            let o = order
                .cmp(ring, &a.lcm, &b.lcm)
                .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if o == Ordering::Less {
                best = idx;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, p: &Pair) -> Polynomial {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let uf = f.leading_monomial().unwrap().quotient_of(&p.lcm);
        let ug = g.leading_monomial().unwrap().quotient_of(&p.lcm);
        let zero = Polynomial::zero(self.ring).with_order(self.order);
        zero.add_scaled(&Rational::one(), &uf, f)
            .add_scaled(&-Rational::one(), &ug, g)
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
/// `max_pairs` bounds the number of S-pair reductions.
pub fn groebner_basis(ring: &RingRef, gens: &[Polynomial], order: MonomialOrder, max_pairs: usize) -> Result<(GroebnerBasis, GbStats)> {
    let mut input: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.with_order(order).make_monic())
        .collect();
    input.sort_by(|a, b| order.cmp(ring, a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut bb = Buchberger {
        ring,
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: GbStats::default(),
    };
    for g in input {
        let h = normal_form(&g, &bb.active_basis());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit_basis(ring, order, bb.stats));
        }
        bb.update(h.make_monic());
    }

    while let Some(pair) = bb.select() {
        if bb.stats.pairs_reduced >= max_pairs {
            bb.stats.basis_size = bb.active.iter().filter(|&&a| a).count();
            return Err(Error::limit(
                "Gröbner basis step limit",
                format!(
                    "{} pairs reduced, {} zero reductions, {} basis elements, {} pairs pending",
                    bb.stats.pairs_reduced,
                    bb.stats.zero_reductions,
                    bb.stats.basis_size,
                    bb.pairs.len() + 1
                ),
            ));
        }
        bb.stats.pairs_reduced += 1;
        let s = bb.s_polynomial(&pair);
        let h = normal_form(&s, &bb.active_basis());
        if h.is_zero() {
            bb.stats.zero_reductions += 1;
            continue;
        }
        if h.is_constant() {
            return Ok(unit_basis(ring, order, bb.stats));
        }
        bb.update(h.make_monic());
    }

    let mut basis = bb.active_basis();
    basis.sort_by(|a, b| order.cmp(ring, a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut reduced = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<Polynomial> = basis
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        reduced.push(normal_form(&basis[i], &others).make_monic());
    }
    let mut stats = bb.stats;
    stats.basis_size = reduced.len();
    Ok((
        GroebnerBasis {
            ring: ring.clone(),
            order,
            elements: reduced,
        },
        stats,
    ))
}

fn unit_basis(ring: &RingRef, order: MonomialOrder, mut stats: GbStats) -> (GroebnerBasis, GbStats) {
    stats.basis_size = 1;
    (
        GroebnerBasis {
            ring: ring.clone(),
            order,
            elements: vec![Polynomial::one(ring).with_order(order)],
        },
        stats,
    )
}
