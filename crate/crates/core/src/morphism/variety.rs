use std::sync::OnceLock;

use crate::algebra::{jacobian_matrix, minors_ideal, Polynomial, RingRef};
use crate::error::{Error, Result};
use crate::ideal::Ideal;

/// Closed subscheme of `A^N`, the ring's variables being the coordinates.
#[derive(Clone, Debug)]
pub struct AffineVariety {
    ideal: Ideal,
    dim: OnceLock<i64>,
}

impl AffineVariety {
    pub fn new(ideal: Ideal) -> Self {
        AffineVariety {
            ideal,
            dim: OnceLock::new(),
        }
    }

    /// All of `A^N`.
    pub fn whole(ring: &RingRef) -> Self {
        Self::new(Ideal::zero(ring))
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ring(&self) -> &RingRef {
        self.ideal.ring()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ring().nvars()
    }

    /// Krull dimension; `-1` when empty.
    pub fn dimension(&self) -> Result<i64> {
        if let Some(d) = self.dim.get() {
            return Ok(*d);
        }
        let d = self.ideal.dimension()?;
        Ok(*self.dim.get_or_init(|| d))
    }

    pub fn codimension(&self) -> Result<i64> {
        Ok(self.ambient_dim() as i64 - self.dimension()?)
    }

    /// `I + (c x c minors of the Jacobian)`, `c` the codimension.
    pub fn singular_locus(&self) -> Result<Ideal> {
        singular_locus_of(&self.ideal, self.codimension()?)
    }

    pub fn is_nonsingular(&self) -> Result<bool> {
        if self.dimension()? < 0 {
            return Ok(true);
        }
        self.singular_locus()?.is_unit()
    }
}

pub(crate) fn singular_locus_of(ideal: &Ideal, codim: i64) -> Result<Ideal> {
    let r = ideal.ring();
    if codim <= 0 || ideal.is_unit()? {
        return Ok(Ideal::unit(r).with_limits(ideal.limits()));
    }
    let vars: Vec<usize> = (0..r.nvars()).collect();
    let jac = jacobian_matrix(ideal.generators(), &vars)?;
    if codim as usize > jac.rows().min(jac.cols()) {
        return Ok(ideal.clone());
    }
    ideal.with_generators(minors_ideal(&jac, codim as usize)?)
}

/// Radical membership `g ∈ √J`: `1 ∈ J + (1 - t g)`.
pub(crate) fn in_radical(j: &Ideal, g: &Polynomial) -> Result<bool> {
    if g.is_zero() {
        return Ok(true);
    }
    let r = j.ring();
    let t = r.fresh_name("t");
    let ext = r.extended(&r.fresh_block_name("aux"), &[t])?;
    let tv = Polynomial::var(&ext, ext.nvars() - 1);
    let mut gens = j.generators().iter().map(|p| p.map_into(&ext)).collect::<Result<Vec<_>>>()?;
    gens.push(&Polynomial::one(&ext) - &tv.try_mul(&g.map_into(&ext)?)?);
    Ideal::new(&ext, gens)?.with_limits(j.limits()).is_unit()
}

/// `V(a) ⊆ V(b)`, i.e. every generator of `b` lies in `√a`.
pub(crate) fn locus_contained(a: &Ideal, b: &Ideal) -> Result<bool> {
    if a.ring().nvars() != b.ring().nvars() {
        return Err(Error::input("ideals live in different rings"));
    }
    for g in b.generators() {
        if !in_radical(a, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}
