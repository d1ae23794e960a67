//! Ideals with write-once Gröbner basis caches and the ideal-theoretic
//! toolkit built on them.

mod dimension;
mod groebner;
mod ops;
mod slicing;
mod zerodim;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::algebra::{MonomialOrder, ParsePolynomial, Polynomial, RingRef};
use crate::error::{Error, Result};

pub use dimension::{hilbert_numerator, krull_dimension_of_monomials, DimensionDegree};
pub use groebner::{groebner_basis, GbStats, GroebnerBasis};
pub use slicing::{solve_linear, LinearSolution, SliceFactor, SliceSpec, Slicer, MAX_SLICE_ATTEMPTS};
pub use zerodim::{squarefree_part, univariate_coefficients};

/// Resource limits attached to an ideal and inherited by derived ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of S-pair reductions per Gröbner basis computation.
    pub max_gb_steps: usize,
    /// Maximum number of quotient steps in a saturation.
    pub max_saturation_iters: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_gb_steps: 200_000,
            max_saturation_iters: 50,
        }
    }
}

type Cache = Arc<RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis>>>>;

/// An ideal of a polynomial ring, given by generators.
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    limits: Limits,
    cache: Cache,
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Result<Ideal> {
        let probe = Polynomial::zero(ring);
        for g in &gens {
            probe.check_same_ring(g)?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            limits: Limits::default(),
            cache: Cache::default(),
        })
    }

    /// Parse generators under the polynomial grammar.
    pub fn parse<S: AsRef<str>>(ring: &RingRef, gens: &[S]) -> Result<Ideal> {
        Ideal::new(ring, ring.parse_all(gens)?)
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    pub fn with_limits(mut self, limits: Limits) -> Ideal {
        if limits != self.limits {
            self.limits = limits;
        }
        self
    }

    /// New ideal in the same ring that inherits this ideal's limits.
    pub(crate) fn derived(&self, gens: Vec<Polynomial>) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            limits: self.limits,
            cache: Cache::default(),
        }
    }

    /// Same construction in another ring.
    pub(crate) fn derived_in(&self, ring: &RingRef, gens: Vec<Polynomial>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            limits: self.limits,
            cache: Cache::default(),
        }
    }

    /// Ideal whose generators are already a reduced basis for `order`.
    pub(crate) fn with_known_basis(&self, basis: GroebnerBasis) -> Ideal {
        let ideal = self.derived(basis.elements().to_vec());
        ideal.cache.write().unwrap().insert(basis.order(), Arc::new(basis));
        ideal
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Reduced Gröbner basis under `order`; computed once and cached.
    pub fn groebner(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.read().unwrap().get(&order) {
            return Ok(gb.clone());
        }
        let (gb, _) = groebner_basis(&self.ring, &self.gens, order, self.limits.max_gb_steps)?;
        let mut cache = self.cache.write().unwrap();
        Ok(cache.entry(order).or_insert_with(|| Arc::new(gb)).clone())
    }

    /// Reduced grevlex basis, the canonical form used for equality.
    pub fn canonical(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner(MonomialOrder::Grevlex)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        Ok(self.canonical()?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Polynomial::zero(&self.ring).check_same_ring(f)?;
        Ok(self.canonical()?.contains(f))
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_same_ring(other)?;
        let gb = self.canonical()?;
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    /// Equality of ideals via identical reduced grevlex bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_same_ring(other)?;
        Ok(self.canonical()?.elements() == other.canonical()?.elements())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Homogeneous in each ring block separately.
    pub fn is_multihomogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.block_degrees().is_some())
    }

    pub(crate) fn check_same_ring(&self, other: &Ideal) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::input("ideals live in different rings"))
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
