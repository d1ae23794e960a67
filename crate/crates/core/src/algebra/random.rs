//! Seeded generic choices. Every stream is a ChaCha8 generator keyed by the
//! caller's seed and a stream tag, so repeated runs draw identical values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::polynomial::{rat, Polynomial, Rational};
use super::ring::RingRef;
use crate::error::{Error, Result};

/// Coefficients of generic forms are drawn from `[-COEFF_BOUND, COEFF_BOUND]`.
pub const COEFF_BOUND: i64 = 10_000;

pub struct GenericRng(ChaCha8Rng);

impl GenericRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        GenericRng(rng)
    }

    /// Stream tag derived from a label and indices.
    pub fn tagged(seed: u64, label: &str, indices: &[u64]) -> Self {
        // FNV-1a
        let mut h: u64 = 0xcbf29ce484222325;
        for b in label.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        for &i in indices {
            for b in i.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
        Self::new(seed, h)
    }

    pub fn coeff(&mut self) -> i64 {
        self.0.gen_range(-COEFF_BOUND..=COEFF_BOUND)
    }

    pub fn nonzero_coeff(&mut self) -> i64 {
        loop {
            let c = self.coeff();
            if c != 0 {
                return c;
            }
        }
    }

    pub fn coeffs(&mut self, n: usize) -> Vec<i64> {
        loop {
            let v: Vec<i64> = (0..n).map(|_| self.coeff()).collect();
            if n == 0 || v.iter().any(|&c| c != 0) {
                return v;
            }
        }
    }

    pub fn small(&mut self, lo: i64, hi: i64) -> i64 {
        self.0.gen_range(lo..=hi)
    }

    /// Random linear form in the given variables, not identically zero.
    pub fn linear_form(&mut self, ring: &RingRef, vars: &[usize]) -> Polynomial {
        let cs = self.coeffs(vars.len());
        let mut p = Polynomial::zero(ring);
        for (&v, &c) in vars.iter().zip(cs.iter()) {
            if c != 0 {
                p = &p + &Polynomial::var(ring, v).scale(&rat(c));
            }
        }
        p
    }

    /// Random combination of `polys` with coefficients from the same range.
    pub fn combination(&mut self, ring: &RingRef, polys: &[Polynomial]) -> Polynomial {
        let cs = self.coeffs(polys.len());
        let mut p = Polynomial::zero(ring);
        for (q, &c) in polys.iter().zip(cs.iter()) {
            if c != 0 {
                p = &p + &q.scale(&Rational::from_integer(c.into()));
            }
        }
        p
    }
}

/// Linear form in the variables of `block` with coefficients determined by
/// `seed`.
pub fn random_linear_form(ring: &RingRef, block: &str, seed: u64) -> Result<Polynomial> {
    let b = ring
        .block(block)
        .ok_or_else(|| Error::input(format!("no block named '{block}'")))?;
    let mut rng = GenericRng::tagged(seed, "linear-form", &[]);
    Ok(rng.linear_form(ring, &b.vars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Ring;

    fn ring() -> RingRef {
        Ring::with_blocks(&[("x", &["x0", "x1", "x2"]), ("a", &["a0", "a1", "a2"])]).unwrap()
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let r = ring();
        assert_eq!(random_linear_form(&r, "x", 0).unwrap(), random_linear_form(&r, "x", 0).unwrap());
        assert_ne!(random_linear_form(&r, "x", 0).unwrap(), random_linear_form(&r, "x", 1).unwrap());
    }

    #[test]
    fn dual_block_form_uses_dual_variables_only() {
        let r = ring();
        let f = random_linear_form(&r, "a", 7).unwrap();
        assert!(!f.is_zero());
        assert!(!f.involves_any(&[0, 1, 2]));
        for (_, c) in f.terms() {
            assert!(c.numer().magnitude() <= &num_bigint::BigUint::from(COEFF_BOUND as u64));
        }
        assert!(random_linear_form(&r, "missing", 0).is_err());
    }
}
