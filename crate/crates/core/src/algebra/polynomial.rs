use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::ring::{Ring, RingRef};
use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse polynomial over the rationals. Terms are kept sorted strictly
/// descending under `order`, with no zero coefficients and no repeated
/// monomials.
#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    order: MonomialOrder,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            order: MonomialOrder::Grevlex,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((Monomial::one(ring.nvars()), c));
        }
        p
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Self::monomial(ring, Monomial::variable(ring.nvars(), i, 1), Rational::one())
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Build from arbitrary terms; sorts, merges duplicates and drops zeros.
    pub fn from_terms(ring: &RingRef, order: MonomialOrder, mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.sort_by(|a, b| order.cmp(ring, &b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial {
            ring: ring.clone(),
            order,
            terms: out,
        }
    }

    pub(crate) fn from_sorted_unchecked(ring: &RingRef, order: MonomialOrder, terms: Vec<(Monomial, Rational)>) -> Self {
        Polynomial {
            ring: ring.clone(),
            order,
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Constant term coefficient when the polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Same polynomial with terms re-sorted under `order`.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&self.ring, &b.0, &a.0));
        Polynomial {
            ring: self.ring.clone(),
            order,
            terms,
        }
    }

    fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn assert_ring(&self, other: &Polynomial) {
        assert!(self.same_ring(other), "polynomials from different rings");
    }

    pub fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::input(format!("mixed rings: {:?} vs {:?}", self.ring, other.ring)))
        }
    }

    fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(&self.ring, a, b)
    }

    /// `self + k * m * other`, merged in one pass.
    pub fn add_scaled(&self, k: &Rational, m: &Monomial, other: &Polynomial) -> Polynomial {
        self.assert_ring(other);
        let other_terms: Vec<(Monomial, Rational)> = if other.order == self.order {
            other.terms.iter().map(|(om, oc)| (om.mul(m), oc * k)).collect()
        } else {
            let o2 = other.with_order(self.order);
            o2.terms.iter().map(|(om, oc)| (om.mul(m), oc * k)).collect()
        };
        let mut out = Vec::with_capacity(self.terms.len() + other_terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other_terms.into_iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match self.cmp_mono(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (xm, xc) = a.next().unwrap();
                        let (_, yc) = b.next().unwrap();
                        let c = xc + yc;
                        if !c.is_zero() {
                            out.push((xm.clone(), c));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            order: self.order,
            terms: out,
        }
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        if k.is_zero() {
            let mut z = Polynomial::zero(&self.ring);
            z.order = self.order;
            return z;
        }
        Polynomial {
            ring: self.ring.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn try_mul_monomial(&self, k: &Rational, m: &Monomial) -> Result<Polynomial> {
        if k.is_zero() {
            return Ok(self.scale(k));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (tm, tc) in &self.terms {
            terms.push((tm.try_mul(m)?, tc * k));
        }
        // multiplication by a monomial preserves a multiplicative order
        Ok(Polynomial {
            ring: self.ring.clone(),
            order: self.order,
            terms,
        })
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        other.check_same_ring(self)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.scale(&Rational::zero()));
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(&self.ring).with_order(self.order);
        let big = big.with_order(self.order);
        for (m, c) in &small.terms {
            let part = big.try_mul_monomial(c, m)?;
            acc = acc.add_scaled(&Rational::one(), &Monomial::one(self.ring.nvars()), &part);
        }
        Ok(acc)
    }

    pub fn try_pow(&self, k: u32) -> Result<Polynomial> {
        let mut result = Polynomial::one(&self.ring).with_order(self.order);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Degree vector with respect to the ring's blocks, when homogeneous in
    /// every block separately.
    pub fn block_degrees(&self) -> Option<Vec<u32>> {
        let blocks = self.ring.blocks();
        let mut it = self.terms.iter().map(|(m, _)| blocks.iter().map(|b| m.degree_in(&b.vars)).collect::<Vec<_>>());
        let first = it.next()?;
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    pub fn involves_any(&self, vars: &[usize]) -> bool {
        vars.iter().any(|&v| self.involves(v))
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                let mut nm = m.clone();
                nm.exps_mut()[var] = e - 1;
                terms.push((nm, c * rat(e as i64)));
            }
        }
        Polynomial::from_terms(&self.ring, self.order, terms)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars(), "point dimension mismatch");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `images[i]` for variable `i`; images live in `target`.
    pub fn compose(&self, target: &RingRef, images: &[Polynomial]) -> Result<Polynomial> {
        assert_eq!(images.len(), self.ring.nvars());
        let one = Polynomial::one(target);
        // cache powers per variable
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![one.clone(), p.clone()]).collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
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
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Move into another ring by variable name. Every variable that occurs
    /// must exist in `target`.
    pub fn map_into(&self, target: &RingRef) -> Result<Polynomial> {
        let mut map = vec![usize::MAX; self.ring.nvars()];
        for (i, name) in self.ring.var_names().iter().enumerate() {
            if let Some(j) = target.var_index(name) {
                map[i] = j;
            }
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            for v in m.support() {
                if map[v] == usize::MAX {
                    return Err(Error::input(format!(
                        "variable '{}' not present in target ring",
                        self.ring.var_name(v)
                    )));
                }
            }
            let safe: Vec<usize> = map.iter().map(|&j| if j == usize::MAX { 0 } else { j }).collect();
            terms.push((m.remap(&safe, target.nvars()), c.clone()));
        }
        Ok(Polynomial::from_terms(target, MonomialOrder::Grevlex, terms))
    }

    /// Move into a ring with the same number of variables, matching by
    /// position.
    pub fn rename_into(&self, target: &RingRef) -> Result<Polynomial> {
        if target.nvars() != self.ring.nvars() {
            return Err(Error::input("positional rename needs equal variable counts"));
        }
        let terms = self.terms.clone();
        Ok(Polynomial::from_terms(target, self.order, terms))
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// Exact quotient `self / divisor` when `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        let d = divisor.with_order(self.order);
        let (dm, dc) = d.terms[0].clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((lm, lc)) = rem.terms.first().cloned() {
            if !dm.divides(&lm) {
                return None;
            }
            let qm = dm.quotient_of(&lm);
            let qc = &lc / &dc;
            rem = rem.add_scaled(&(-qc.clone()), &qm, &d);
            quot.push((qm, qc));
        }
        Some(Polynomial::from_terms(&self.ring, self.order, quot))
    }

    /// Scale to integer coefficients with content one and positive leading
    /// coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        use num_integer::Integer;
        let mut lcm = BigInt::one();
        for (_, c) in &self.terms {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.terms.iter().map(|(_, c)| (c * &lcm).to_integer()).collect();
        let mut g = BigInt::zero();
        for i in &ints {
            g = g.gcd(i);
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        let terms = self
            .terms
            .iter()
            .zip(ints)
            .map(|((m, _), i)| (m.clone(), Rational::from_integer(i / &g)))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            order: self.order,
            terms,
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if !self.same_ring(other) {
            return false;
        }
        if self.order == other.order {
            self.terms == other.terms
        } else {
            self.terms == other.with_order(self.order).terms
        }
    }
}

impl Eq for Polynomial {}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(&Rational::one(), &Monomial::one(self.ring.nvars()), rhs)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(&-Rational::one(), &Monomial::one(self.ring.nvars()), rhs)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    /// Panics on exponent overflow; see [`Polynomial::try_mul`].
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication overflow")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", ring.var_name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, &self.ring, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::ParsePolynomial;
    use crate::algebra::ring::Ring;

    fn ring() -> RingRef {
        Ring::with_vars(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn arithmetic_basics() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let s = &x + &y;
        let d = &x - &y;
        let p = &s * &d;
        assert_eq!(p, &(&x * &x) - &(&y * &y));
        assert!((&p - &p).is_zero());
        assert_eq!(s.try_pow(2).unwrap().len(), 3);
    }

    #[test]
    fn derivative_and_evaluate() {
        let r = ring();
        let p = r.parse("x^3*y - 2*y*z + 5").unwrap();
        assert_eq!(p.derivative(0), r.parse("3*x^2*y").unwrap());
        assert_eq!(p.evaluate(&[rat(1), rat(2), rat(3)]), rat(2 - 12 + 5));
    }

    #[test]
    fn display_roundtrip() {
        let r = ring();
        let p = r.parse("x1_unused_free").err();
        assert!(p.is_some());
        let q = r.parse("-3/4*x^2*y + z - 1").unwrap();
        assert_eq!(r.parse(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let f = r.parse("(x + y)*(x - z^2)").unwrap();
        let g = r.parse("x - z^2").unwrap();
        assert_eq!(f.exact_div(&g).unwrap(), r.parse("x + y").unwrap());
        assert!(r.parse("x*y + 1").unwrap().exact_div(&g).is_none());
    }

    #[test]
    fn compose_substitutes() {
        let r = ring();
        let f = r.parse("x*y - z").unwrap();
        let s = Ring::with_vars(&["t"]).unwrap();
        let t = Polynomial::var(&s, 0);
        let images = vec![t.clone(), &t * &t, Polynomial::constant(&s, rat(3))];
        assert_eq!(f.compose(&s, &images).unwrap(), s.parse("t^3 - 3").unwrap());
    }

    #[test]
    fn primitive_normalizes_content() {
        let r = ring();
        let p = r.parse("-2/3*x + 4/9*y").unwrap();
        assert_eq!(p.primitive(), r.parse("3*x - 2*y").unwrap());
    }
}
