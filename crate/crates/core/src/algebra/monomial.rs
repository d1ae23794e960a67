use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector of a monomial. Exponents are `u16`; any product that would
/// overflow is reported as a computation-limit error.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u16; 16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn variable(nvars: usize, var: usize, exp: u16) -> Self {
        let mut m = Self::one(nvars);
        m.0[var] = exp;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn exp(&self, var: usize) -> u16 {
        self.0[var]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Degree restricted to a subset of variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&v| self.0[v] as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = self.0.clone();
        for (a, &b) in out.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(b).ok_or_else(overflow)?;
        }
        Ok(Monomial(out))
    }

    pub fn try_pow(&self, k: u32) -> Result<Monomial> {
        let mut out = self.0.clone();
        for a in out.iter_mut() {
            let v = (*a as u32).checked_mul(k).ok_or_else(overflow)?;
            *a = u16::try_from(v).map_err(|_| overflow())?;
        }
        Ok(Monomial(out))
    }

    /// Product; panics on exponent overflow. Use [`Monomial::try_mul`] when
    /// exponents are not known to be small.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.try_mul(other).expect("monomial exponent overflow")
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assumes `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(self.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Exponent vector permuted into another variable layout: `map[i]` is the
    /// target index of variable `i`.
    pub fn remap(&self, map: &[usize], target_nvars: usize) -> Monomial {
        let mut out = Self::one(target_nvars);
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                out.0[map[i]] = e;
            }
        }
        out
    }

    pub(crate) fn exps_mut(&mut self) -> &mut [u16] {
        &mut self.0
    }
}

fn overflow() -> Error {
    Error::limit("exponent overflow", "an exponent exceeded 65535")
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_is_reported() {
        let m = Monomial::variable(2, 0, 40000);
        assert!(matches!(m.try_mul(&m), Err(Error::ComputationLimit { .. })));
        assert!(m.try_pow(2).is_err());
    }

    #[test]
    fn lcm_gcd_divides() {
        let a = Monomial::from_exponents(&[2, 0, 1]);
        let b = Monomial::from_exponents(&[1, 3, 0]);
        assert_eq!(a.lcm(&b).exponents(), &[2, 3, 1]);
        assert_eq!(a.gcd(&b).exponents(), &[1, 0, 0]);
        assert!(a.gcd(&b).divides(&a));
        assert_eq!(a.gcd(&b).quotient_of(&a).exponents(), &[1, 0, 1]);
        assert!(!a.is_coprime(&b));
    }
}
