//! Krull dimension from independent sets of the leading-term ideal and
//! degree from the Hilbert series numerator.

use crate::algebra::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

use super::Ideal;

/// Krull dimension and degree of `R/I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionDegree {
    /// `-1` for the unit ideal.
    pub krull_dimension: i64,
    /// Degree of the projective scheme (or of the homogenization for
    /// inhomogeneous input); `None` for the unit ideal.
    pub degree: Option<u64>,
    /// `true` when the input was inhomogeneous and the degree refers to the
    /// projective closure.
    pub degree_advisory: bool,
}

impl DimensionDegree {
    /// Dimension of the projective scheme for homogeneous input.
    pub fn projective_dimension(&self) -> i64 {
        (self.krull_dimension - 1).max(-1)
    }
}

impl Ideal {
    /// Krull dimension of `R/I`: size of a maximal independent set of the
    /// grevlex leading-term ideal; `-1` for the unit ideal.
    pub fn dimension(&self) -> Result<i64> {
        let gb = self.canonical()?;
        if gb.is_unit() {
            return Ok(-1);
        }
        krull_dimension_of_monomials(self.ring.nvars(), &gb.leading_monomials())
    }

    pub fn dimension_and_degree(&self) -> Result<DimensionDegree> {
        let gb = self.canonical()?;
        if gb.is_unit() {
            return Ok(DimensionDegree {
                krull_dimension: -1,
                degree: None,
                degree_advisory: false,
            });
        }
        let n = self.ring.nvars();
        let lms = gb.leading_monomials();
        let dim = krull_dimension_of_monomials(n, &lms)?;
        let num = hilbert_numerator(&lms);
        let (order_at_one, q) = divide_out_one_minus_t(num);
        if n as i64 - order_at_one as i64 != dim {
            return Err(Error::limit(
                "dimension cross-check",
                format!("independent sets give {dim}, Hilbert series gives {}", n as i64 - order_at_one as i64),
            ));
        }
        let deg: i128 = q.iter().sum();
        if deg <= 0 {
            return Err(Error::limit("degree", format!("non-positive Hilbert degree {deg}")));
        }
        Ok(DimensionDegree {
            krull_dimension: dim,
            degree: Some(deg as u64),
            degree_advisory: !self.is_homogeneous(),
        })
    }

    /// `dim_Q R/I` for a zero-dimensional ideal, `0` for the unit ideal,
    /// `None` when `R/I` is infinite-dimensional.
    pub fn vector_space_dimension(&self) -> Result<Option<u64>> {
        let gb = self.groebner(MonomialOrder::Grevlex)?;
        if gb.is_unit() {
            return Ok(Some(0));
        }
        let n = self.ring.nvars();
        let lms = gb.leading_monomials();
        let mut bounds = vec![u16::MAX; n];
        for m in &lms {
            let supp: Vec<usize> = m.support().collect();
            if supp.len() == 1 {
                let v = supp[0];
                bounds[v] = bounds[v].min(m.exp(v));
            }
        }
        if bounds.contains(&u16::MAX) {
            return Ok(None);
        }
        let num = hilbert_numerator(&lms);
        let (order, q) = divide_out_one_minus_t(num);
        if order != n {
            return Err(Error::limit("zero-dimensional count", "Hilbert series disagrees with pure powers"));
        }
        Ok(Some(q.iter().sum::<i128>() as u64))
    }
}

/// Krull dimension of `k[x_1..x_n]/(monomials)`: `n` minus the size of a
/// minimum set of variables meeting every generator's support.
pub fn krull_dimension_of_monomials(n: usize, gens: &[Monomial]) -> Result<i64> {
    if gens.iter().any(|m| m.is_one()) {
        return Ok(-1);
    }
    if n > 128 {
        return Err(Error::input("dimension supports at most 128 variables"));
    }
    let mut supports: Vec<u128> = gens
        .iter()
        .map(|m| m.support().fold(0u128, |acc, v| acc | (1u128 << v)))
        .collect();
    supports.sort_by_key(|s| s.count_ones());
    supports.dedup();
    let minimal: Vec<u128> = supports
        .iter()
        .enumerate()
        .filter(|&(i, &s)| !supports[..i].iter().any(|&t| t & !s == 0))
        .map(|(_, &s)| s)
        .collect();
    let mut best = n as u32;
    min_hitting_set(&minimal, 0, 0, &mut best);
    Ok(n as i64 - best as i64)
}

fn min_hitting_set(sets: &[u128], chosen: u128, size: u32, best: &mut u32) {
    if size >= *best {
        return;
    }
    match sets.iter().find(|&&s| s & chosen == 0) {
        None => *best = size,
        Some(&s) => {
            if size + 1 >= *best {
                return;
            }
            let mut bits = s;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                min_hitting_set(sets, chosen | (1u128 << v), size + 1, best);
            }
        }
    }
}

/// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^n` of
/// `k[x_1..x_n]/(gens)`, as coefficients of `1, t, t^2, ...`.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<i128> {
    let gens = minimalize(gens.to_vec());
    numerator_rec(gens)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    let pivot_source = gens.iter().find(|m| m.support().count() > 1);
    let pairwise_coprime = pivot_source.is_none()
        && gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![1i128];
        for g in &gens {
            acc = mul_one_minus_t_pow(&acc, g.degree() as usize);
        }
        return acc;
    }
    let m = pivot_source.expect("pure powers of distinct variables are coprime");
    let nvars = m.nvars();
    let var = m
        .support()
        .max_by_key(|&v| (gens.iter().filter(|g| g.exp(v) > 0).count(), std::cmp::Reverse(v)))
        .unwrap();
    let mut exps: Vec<u16> = gens.iter().map(|g| g.exp(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2].min(m.exp(var)).max(1);
    let pivot = Monomial::variable(nvars, var, e);

    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let plus = minimalize(plus);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.gcd(&pivot).quotient_of(g)).collect();
    let colon = minimalize(colon);

    let a = numerator_rec(plus);
    let b = numerator_rec(colon);
    let shift = pivot.degree() as usize;
    let mut out = vec![0i128; a.len().max(b.len() + shift)];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i + shift] += c;
    }
    trim(out)
}

fn mul_one_minus_t_pow(p: &[i128], d: usize) -> Vec<i128> {
    let mut out = vec![0i128; p.len() + d];
    for (i, c) in p.iter().enumerate() {
        out[i] += c;
        out[i + d] -= c;
    }
    trim(out)
}

fn trim(mut v: Vec<i128>) -> Vec<i128> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Write `p = (1-t)^k q` with `q(1) != 0`; returns `(k, q)`.
fn divide_out_one_minus_t(mut p: Vec<i128>) -> (usize, Vec<i128>) {
    let mut k = 0;
    loop {
        let at_one: i128 = p.iter().sum();
        if at_one != 0 || p.iter().all(|&c| c == 0) {
            return (k, p);
        }
        // p(t) = (1 - t) q(t): q_i = sum_{j <= i} p_j
        let mut q = Vec::with_capacity(p.len().saturating_sub(1));
        let mut acc = 0i128;
        for &c in &p[..p.len() - 1] {
            acc += c;
            q.push(acc);
        }
        p = trim(q);
        k += 1;
    }
}
