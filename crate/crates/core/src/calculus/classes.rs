//! Chern-Mather classes and local Euler obstructions from the
//! projectivized conormal variety `ℙCon(V) ⊂ P^n x P^n*`.
//!
//! With `ℓ = H + h` the tautological class on `ℙ(T*P^n)`, `k = dim V` and
//! polar degrees `δ_j`, pushing `c(O(1))^{-1} ∩ [ℙCon]` to `P^n` gives
//!
//! `c_Ma(V) = (-1)^{n-k+1} (1+H)^{n+1} ∩ sum_i (-1)^i (sum_j C(i,j) δ_j) [P^{n-1-i}]`,
//!
//! and for the fiber `Λ_p` of `ℙCon(V)` over `p`, writing
//! `s(Λ_p, ℙCon) = sum_i a_i [pt x P^i]`,
//!
//! `Eu_V(p) = (-1)^{n-k+1} sum_i (-1)^i a_i`.

use num_traits::Zero;

use crate::algebra::{Polynomial, Rational};
use crate::chow::{binomial, ChowVector};
use crate::conormal::{conormal_ideal, ConormalData, ProjectiveVariety};
use crate::error::{Error, Result};

use super::{Ambient, ConstructibleFunction, LagrangianCycle};

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `(1+H)^{n+1} ∩ v` in `A_*(P^n)`.
fn cap_tangent(v: &ChowVector, n: usize) -> ChowVector {
    let mut out = ChowVector::zero(n);
    for (a, &c) in v.coeffs.iter().enumerate() {
        for m in 0..=a {
            out.coeffs[a - m] += c * binomial(n as u64 + 1, m as u64) as i64;
        }
    }
    out
}

/// `c_Ma(V)` from already computed conormal data.
pub fn chern_mather_from_conormal(con: &ConormalData) -> Result<ChowVector> {
    let n = con.ambient_dim();
    let k = con.base.dimension()?;
    let delta = &con.polar_degrees;
    let mut pushed = ChowVector::zero(n);
    for i in 0..n {
        let s: i64 = (0..=i).map(|j| binomial(i as u64, j as u64) as i64 * delta[j] as i64).sum();
        pushed.coeffs[n - 1 - i] += sign(i as i64) * s;
    }
    let out = cap_tangent(&pushed, n).scale(sign(n as i64 - k + 1));
    if let Some(j) = (k as usize + 1..=n).find(|&j| out.get(j) != 0) {
        return Err(Error::limit(
            "Chern-Mather class",
            format!("nonzero component in dimension {j} above dim V = {k}"),
        ));
    }
    Ok(out)
}

/// Chern-Mather class of `V ⊆ P^n`, pushed to `A_*(P^n)`.
pub fn chern_mather(v: &ProjectiveVariety, seed: u64) -> Result<ChowVector> {
    let n = v.ambient_dim();
    if v.dimension()? == n as i64 {
        return Ok(ChowVector::chern_projective_space(n));
    }
    chern_mather_from_conormal(&conormal_ideal(v, seed)?)
}

/// `c_*`: `T*_W X ↦ (-1)^{dim W} c_Ma(W)`, extended linearly.
pub fn c_star(lambda: &LagrangianCycle, seed: u64) -> Result<ChowVector> {
    let ambient = match lambda.ambient()? {
        None => return Ok(ChowVector::zero(0)),
        Some(Ambient::Projective(n)) => n,
        Some(a) => return Err(Error::input(format!("c_* needs a projective ambient, got {a}"))),
    };
    let mut out = ChowVector::zero(ambient);
    for (key, m) in lambda.terms() {
        let cma = if key.is_zero_section() {
            ChowVector::chern_projective_space(ambient)
        } else {
            chern_mather(&key.variety()?, seed)?
        };
        out = out.add(&cma.scale(sign(key.dim()) * m));
    }
    Ok(out)
}

/// Generators `x_i p_j - x_j p_i` of the point `p` in the primal block.
fn point_equations(con: &ConormalData, p: &[Rational]) -> Vec<Polynomial> {
    let primal = con.primal_vars();
    let mut out = Vec::new();
    for i in 0..primal.len() {
        for j in i + 1..primal.len() {
            let a = Polynomial::var(&con.ring, primal[i]).scale(&p[j]);
            let b = Polynomial::var(&con.ring, primal[j]).scale(&p[i]);
            let f = &a - &b;
            if !f.is_zero() {
                out.push(f);
            }
        }
    }
    out
}

/// `Eu_V(p)` from already computed conormal data.
pub fn euler_obstruction_from_conormal(con: &ConormalData, p: &[Rational], seed: u64) -> Result<i64> {
    if !con.base.contains_point(p)? {
        return Err(Error::input("point does not lie on the variety"));
    }
    let n = con.ambient_dim() as i64;
    let k = con.base.dimension()?;
    let s = con.segre_class(&point_equations(con, p), seed)?;
    let mut total = 0;
    for (key, a) in s.terms() {
        if key[0] != 0 {
            return Err(Error::limit(
                "Euler obstruction",
                format!("Segre class of the conormal fiber has a component on [P^{} x P^{}]", key[0], key[1]),
            ));
        }
        total += sign(key[1] as i64) * a;
    }
    Ok(sign(n - k + 1) * total)
}

/// Local Euler obstruction of `V` at the rational point `p`.
pub fn euler_obstruction(v: &ProjectiveVariety, p: &[Rational], seed: u64) -> Result<i64> {
    if !v.contains_point(p)? {
        return Err(Error::input("point does not lie on the variety"));
    }
    if v.dimension()? == v.ambient_dim() as i64 {
        return Ok(1);
    }
    euler_obstruction_from_conormal(&conormal_ideal(v, seed)?, p, seed)
}

impl ConstructibleFunction {
    /// Value at a rational point: `sum_W m_W Eu_W(p)` over the keys whose
    /// variety contains `p`.
    pub fn evaluate(&self, p: &[Rational], seed: u64) -> Result<i64> {
        let mut total = 0;
        for (key, m) in self.terms() {
            if key.is_zero_section() {
                if p.iter().all(Zero::is_zero) {
                    return Err(Error::input("the zero vector is not a projective point"));
                }
                total += m;
                continue;
            }
            let v = key.variety()?;
            if v.contains_point(p)? {
                total += m * euler_obstruction(&v, p, seed)?;
            }
        }
        Ok(total)
    }
}
