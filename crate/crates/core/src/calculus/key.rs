use std::fmt;

use serde::Serialize;

use crate::algebra::{ParsePolynomial, Ring, RingRef};
use crate::conormal::ProjectiveVariety;
use crate::error::{Error, Result};
use crate::ideal::Ideal;

/// Ambient space of a conormal cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Ambient {
    Projective(usize),
    Affine(usize),
}

impl Ambient {
    pub fn dim(&self) -> usize {
        match *self {
            Ambient::Projective(n) | Ambient::Affine(n) => n,
        }
    }

    fn nvars(&self) -> usize {
        match *self {
            Ambient::Projective(n) => n + 1,
            Ambient::Affine(n) => n,
        }
    }

    /// Ring in which keys are canonicalized: coordinates `x0, x1, ...`.
    pub fn canonical_ring(&self) -> RingRef {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{i}")).collect();
        Ring::with_vars(&names).unwrap()
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Projective(n) => write!(f, "P^{n}"),
            Ambient::Affine(n) => write!(f, "A^{n}"),
        }
    }
}

/// Canonical name of the conormal cycle `T*_W X`: the zero section, or the
/// reduced grevlex basis of the (saturated) ideal of `W` written in the
/// ambient's canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleKey {
    ambient: Ambient,
    dim: i64,
    basis: Vec<String>,
}

impl CycleKey {
    pub fn zero_section(ambient: Ambient) -> Self {
        CycleKey {
            ambient,
            dim: ambient.dim() as i64,
            basis: Vec::new(),
        }
    }

    /// Key of a subvariety of `P^n`.
    pub fn of_projective(v: &ProjectiveVariety) -> Result<Self> {
        let ambient = Ambient::Projective(v.ambient_dim());
        Self::from_ideal(ambient, &v.saturated_ideal()?)
    }

    /// Key of a subvariety of `A^N` given by an ideal whose ring has `N`
    /// coordinates.
    pub fn of_affine(ideal: &Ideal) -> Result<Self> {
        Self::from_ideal(Ambient::Affine(ideal.ring().nvars()), ideal)
    }

    fn from_ideal(ambient: Ambient, ideal: &Ideal) -> Result<Self> {
        let ring = ambient.canonical_ring();
        let moved = ideal
            .generators()
            .iter()
            .map(|g| g.rename_into(&ring))
            .collect::<Result<Vec<_>>>()?;
        let canon = Ideal::new(&ring, moved)?.with_limits(ideal.limits());
        let gb = canon.canonical()?;
        if gb.is_unit() {
            return Err(Error::input("the empty variety has no conormal cycle"));
        }
        let krull = canon.dimension()?;
        let dim = match ambient {
            Ambient::Projective(_) => krull - 1,
            Ambient::Affine(_) => krull,
        };
        if dim < 0 {
            return Err(Error::input("the empty variety has no conormal cycle"));
        }
        Ok(CycleKey {
            ambient,
            dim,
            basis: gb.elements().iter().map(|g| g.to_string()).collect(),
        })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// `dim W`.
    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn is_zero_section(&self) -> bool {
        self.basis.is_empty()
    }

    /// Basis elements in canonical coordinates.
    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    /// The ideal of `W` in canonical coordinates.
    pub fn ideal(&self) -> Result<Ideal> {
        let ring = self.ambient.canonical_ring();
        Ideal::new(&ring, ring.parse_all(&self.basis)?)
    }

    /// `W` as a projective variety (projective keys only).
    pub fn variety(&self) -> Result<ProjectiveVariety> {
        match self.ambient {
            Ambient::Projective(_) => ProjectiveVariety::new(self.ideal()?),
            Ambient::Affine(_) => Err(Error::input("affine key has no projective variety")),
        }
    }
}

impl fmt::Display for CycleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero_section() {
            write!(f, "T*_X X ({})", self.ambient)
        } else {
            write!(f, "T*_W X, W = V({}) in {} (dim {})", self.basis.join(", "), self.ambient, self.dim)
        }
    }
}
