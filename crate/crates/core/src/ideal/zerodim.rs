//! Zero-dimensional utilities: squarefree reduction and point counts.

use num_traits::{One, Zero};

use crate::algebra::{Monomial, Polynomial, Rational, RingRef};
use crate::error::{Error, Result};

use super::Ideal;

/// Dense coefficients (ascending powers) of a polynomial involving only
/// variable `var`.
pub fn univariate_coefficients(p: &Polynomial, var: usize) -> Result<Vec<Rational>> {
    let mut out: Vec<Rational> = Vec::new();
    for (m, c) in p.terms() {
        if m.support().any(|v| v != var) {
            return Err(Error::input("polynomial is not univariate in the requested variable"));
        }
        let e = m.exp(var) as usize;
        if out.len() <= e {
            out.resize(e + 1, Rational::zero());
        }
        out[e] = c.clone();
    }
    Ok(out)
}

fn from_univariate(ring: &RingRef, var: usize, coeffs: &[Rational]) -> Polynomial {
    let n = ring.nvars();
    let terms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (Monomial::variable(n, var, e as u16), c.clone()))
        .collect();
    Polynomial::from_terms(ring, crate::algebra::MonomialOrder::Grevlex, terms)
}

fn normalize(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rem_univariate(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = normalize(a.to_vec());
    let b = normalize(b.to_vec());
    let lb = b.last().expect("division by zero polynomial").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let k = r.last().unwrap() / &lb;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &k * c;
        }
        r = normalize(r);
    }
    r
}

fn div_univariate(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = normalize(a.to_vec());
    let b = normalize(b.to_vec());
    let lb = b.last().unwrap().clone();
    if r.len() < b.len() {
        return Vec::new();
    }
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let k = r.last().unwrap() / &lb;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &k * c;
        }
        q[shift] = k;
        r = normalize(r);
    }
    q
}

fn gcd_univariate(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut a = normalize(a.to_vec());
    let mut b = normalize(b.to_vec());
    while !b.is_empty() {
        let r = rem_univariate(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// `f / gcd(f, f')`: the squarefree part over a field of characteristic 0.
pub fn squarefree_part(coeffs: &[Rational]) -> Vec<Rational> {
    let f = normalize(coeffs.to_vec());
    if f.len() <= 2 {
        return f;
    }
    let df: Vec<Rational> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(e, c)| c * Rational::from_integer((e as i64).into()))
        .collect();
    let g = gcd_univariate(&f, &df);
    let mut q = div_univariate(&f, &g);
    if let Some(l) = q.last().cloned() {
        if !l.is_one() {
            for c in &mut q {
                *c /= &l;
            }
        }
    }
    q
}

impl Ideal {
    /// Radical of a zero-dimensional ideal (Seidenberg): add the squarefree
    /// part of each variable's eliminant.
    pub fn zero_dim_radical(&self) -> Result<Ideal> {
        let n = self.ring.nvars();
        let mut extra = Vec::new();
        for v in 0..n {
            let others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            let elim = self.eliminate(&others)?;
            let gens = elim.canonical()?;
            let g = match gens.elements() {
                [] => return Err(Error::precondition("ideal is not zero-dimensional")),
                [g] => g.clone(),
                _ => return Err(Error::limit("radical", "eliminant is not principal")),
            };
            if g.is_constant() {
                return Ok(Ideal::unit(&self.ring).with_limits(self.limits));
            }
            let sq = squarefree_part(&univariate_coefficients(&g, v)?);
            extra.push(from_univariate(&self.ring, v, &sq));
        }
        self.with_generators(extra)
    }

    /// Number of distinct points of `V(I)` over the algebraic closure when
    /// `I` is zero-dimensional; `None` otherwise.
    pub fn point_count(&self) -> Result<Option<u64>> {
        match self.vector_space_dimension()? {
            None => Ok(None),
            Some(0) => Ok(Some(0)),
            Some(_) => self.zero_dim_radical()?.vector_space_dimension(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn v(cs: &[i64]) -> Vec<Rational> {
        cs.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn squarefree_of_repeated_roots() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        assert_eq!(squarefree_part(&v(&[2, -3, 0, 1])), v(&[-2, 1, 1]));
        assert_eq!(squarefree_part(&v(&[0, 0, 1])), v(&[0, 1]));
        assert_eq!(squarefree_part(&v(&[-1, 0, 1])), v(&[-1, 0, 1]));
    }
}
