//! Segre classes by the projective-degrees method.
//!
//! For `Z = W ∩ V(g_1..g_r)` with the `g_i` of common multidegree `L`,
//! blowing up `Z` gives `s(Z, W) = [W] - sum_j (1+L)^{-j-1} ∩ R_j`, where
//! `R_0 = [W]` and `R_j` is the residual to `Z` in `W` cut by `j` generic
//! combinations of the `g_i`.

use crate::algebra::{Monomial, Polynomial};
use crate::chow::ChowClass;
use crate::error::{Error, Result};
use crate::exec::try_par_map;
use crate::ideal::{Ideal, SliceSpec, Slicer};

use super::{ConormalData, ProjectiveVariety, DUAL, PRIMAL};

/// Segre class of `Z = W ∩ V(z)` in `W`, pushed to the product of
/// projective spaces whose coordinate sets are `factors`.
pub fn segre_class(z: &[Polynomial], w: &Ideal, factors: &[Vec<usize>], seed: u64) -> Result<ChowClass> {
    let dims: Vec<usize> = factors.iter().map(|f| f.len() - 1).collect();
    let z: Vec<Polynomial> = z.iter().filter(|g| !g.is_zero()).cloned().collect();
    let degrees = z
        .iter()
        .map(|g| multidegree_of(g, factors))
        .collect::<Result<Vec<_>>>()?;
    let base = Slicer {
        ideal: w,
        spec: SliceSpec::projective(factors.to_vec()),
        seed,
        label: "segre-w",
    };
    let d = base.chart_dimension()?;
    if d < 0 {
        return Ok(ChowClass::zero(&dims));
    }
    let d = d as usize;
    let class_of = |slicer: &Slicer, dim: usize| -> Result<ChowClass> {
        let keys = keys_of_dimension(&dims, dim);
        let counts = try_par_map(&keys, |k| slicer.count(k))?;
        let mut c = ChowClass::zero(&dims);
        for (k, n) in keys.iter().zip(counts) {
            c.add_term(k, n as i64);
        }
        Ok(c)
    };
    let w_class = class_of(&base, d)?;

    let gb = w.canonical()?;
    if z.iter().all(|g| gb.contains(g)) {
        return Ok(w_class);
    }
    let top: Vec<u32> = (0..factors.len())
        .map(|i| degrees.iter().map(|dg| dg[i]).max().unwrap_or(0))
        .collect();
    let mut raised = Vec::new();
    for (g, dg) in z.iter().zip(&degrees) {
        let mut multipliers = vec![Monomial::one(w.ring().nvars())];
        for (i, f) in factors.iter().enumerate() {
            let ms = monomials_of_degree(w.ring().nvars(), f, top[i] - dg[i]);
            multipliers = multipliers.iter().flat_map(|a| ms.iter().map(move |b| a.mul(b))).collect();
        }
        for m in multipliers {
            raised.push(g.try_mul_monomial(&crate::algebra::rat(1), &m)?);
        }
    }
    let l: Vec<i64> = top.iter().map(|&t| t as i64).collect();

    let labels: Vec<String> = (1..=d).map(|j| format!("segre-{j}")).collect();
    let mut s = w_class.sub(&w_class.cap_inverse_power(&l, 1));
    for j in 1..=d {
        let mut spec = SliceSpec::projective(factors.to_vec());
        spec.combinations = vec![(raised.clone(), j)];
        spec.exclude = z.clone();
        let residual = Slicer {
            ideal: w,
            spec,
            seed,
            label: &labels[j - 1],
        };
        let r = class_of(&residual, d - j)?;
        s = s.sub(&r.cap_inverse_power(&l, j as u32 + 1));
    }
    Ok(s)
}

fn multidegree_of(g: &Polynomial, factors: &[Vec<usize>]) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(factors.len());
    for f in factors {
        let mut degs = g.terms().iter().map(|(m, _)| m.degree_in(f));
        let first = degs.next().unwrap_or(0);
        if degs.any(|e| e != first) {
            return Err(Error::input(format!("'{g}' is not multihomogeneous")));
        }
        out.push(first);
    }
    Ok(out)
}

fn monomials_of_degree(nvars: usize, vars: &[usize], deg: u32) -> Vec<Monomial> {
    fn rec(vars: &[usize], deg: u32, exps: &mut [u16], out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => {
                if deg == 0 {
                    out.push(Monomial::from_exponents(exps));
                }
            }
            Some((&v, rest)) => {
                let lo = if rest.is_empty() { deg } else { 0 };
                for e in (lo..=deg).rev() {
                    exps[v] = e as u16;
                    rec(rest, deg - e, exps, out);
                }
                exps[v] = 0;
            }
        }
    }
    let mut out = Vec::new();
    let mut exps = vec![0u16; nvars];
    rec(vars, deg, &mut exps, &mut out);
    out
}

fn keys_of_dimension(dims: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn rec(dims: &[usize], total: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match dims.split_first() {
            None => {
                if total == 0 {
                    out.push(acc.clone());
                }
            }
            Some((&n, rest)) => {
                for a in 0..=n.min(total) {
                    acc.push(a);
                    rec(rest, total - a, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(dims, total, &mut Vec::new(), &mut out);
    out
}

impl ProjectiveVariety {
    /// `s(Z ∩ V, V)` in `A_*(P^n)` for `Z` given by homogeneous generators
    /// in the variety's ring.
    pub fn segre_class(&self, z: &Ideal, seed: u64) -> Result<ChowClass> {
        let w = self.saturated_ideal()?;
        let all: Vec<usize> = (0..w.ring().nvars()).collect();
        segre_class(z.generators(), &w, &[all], seed)
    }
}

impl ConormalData {
    /// `s(Z ∩ ℙCon, ℙCon)` in `A_*(P^n x P^n*)`.
    pub fn segre_class(&self, z: &[Polynomial], seed: u64) -> Result<ChowClass> {
        let factors = vec![
            self.ring.block(PRIMAL).unwrap().vars.clone(),
            self.ring.block(DUAL).unwrap().vars.clone(),
        ];
        segre_class(z, &self.ideal, &factors, seed)
    }
}
