use std::sync::OnceLock;

use crate::algebra::{jacobian_matrix, minors_ideal, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::ideal::{DimensionDegree, Ideal};

/// Closed subscheme of `P^n` given by a homogeneous ideal; the ring's
/// variables are the homogeneous coordinates `x_0..x_n`.
#[derive(Clone, Debug)]
pub struct ProjectiveVariety {
    ideal: Ideal,
    dd: OnceLock<DimensionDegree>,
    saturated: OnceLock<Ideal>,
    singular: OnceLock<Ideal>,
}

impl ProjectiveVariety {
    pub fn new(ideal: Ideal) -> Result<Self> {
        if ideal.ring().nvars() == 0 {
            return Err(Error::input("projective space needs at least one coordinate"));
        }
        if !ideal.is_homogeneous() {
            return Err(Error::input("projective variety needs a homogeneous ideal"));
        }
        Ok(ProjectiveVariety {
            ideal,
            dd: OnceLock::new(),
            saturated: OnceLock::new(),
            singular: OnceLock::new(),
        })
    }

    pub fn parse<S: AsRef<str>>(vars: &[S], gens: &[S]) -> Result<Self> {
        let ring = crate::algebra::Ring::with_vars(vars)?;
        Self::new(Ideal::parse(&ring, gens)?)
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ambient_dim(&self) -> usize {
        self.ideal.ring().nvars() - 1
    }

    /// Ideal of all coordinates.
    pub fn irrelevant(&self) -> Ideal {
        let r = self.ideal.ring();
        let vars = (0..r.nvars()).map(|i| Polynomial::var(r, i)).collect();
        Ideal::new(r, vars).unwrap().with_limits(self.ideal.limits())
    }

    pub fn dimension_degree(&self) -> Result<DimensionDegree> {
        if let Some(dd) = self.dd.get() {
            return Ok(*dd);
        }
        let dd = self.ideal.dimension_and_degree()?;
        Ok(*self.dd.get_or_init(|| dd))
    }

    /// Projective dimension; `-1` when empty.
    pub fn dimension(&self) -> Result<i64> {
        Ok(self.dimension_degree()?.projective_dimension())
    }

    pub fn codimension(&self) -> Result<i64> {
        Ok(self.ambient_dim() as i64 - self.dimension()?)
    }

    pub fn degree(&self) -> Result<u64> {
        self.dimension_degree()?
            .degree
            .ok_or_else(|| Error::input("empty variety has no degree"))
    }

    /// `I : (x_0, ..., x_n)^∞`.
    pub fn saturated_ideal(&self) -> Result<Ideal> {
        if let Some(s) = self.saturated.get() {
            return Ok(s.clone());
        }
        let s = self.ideal.saturation(&self.irrelevant())?;
        Ok(self.saturated.get_or_init(|| s).clone())
    }

    /// `I(V)` plus the `c x c` minors of the Jacobian of its generators,
    /// `c` the computed codimension.
    pub fn singular_locus(&self) -> Result<Ideal> {
        if let Some(s) = self.singular.get() {
            return Ok(s.clone());
        }
        let r = self.ideal.ring();
        let c = self.codimension()?;
        let locus = if self.dimension()? < 0 || c == 0 {
            Ideal::unit(r).with_limits(self.ideal.limits())
        } else {
            let vars: Vec<usize> = (0..r.nvars()).collect();
            let jac = jacobian_matrix(self.ideal.generators(), &vars)?;
            if (c as usize) > jac.rows().min(jac.cols()) {
                return Err(Error::precondition(
                    "fewer generators than the codimension: the ideal is not radical or not given by enough equations",
                ));
            }
            let minors = minors_ideal(&jac, c as usize)?;
            self.ideal.with_generators(minors)?
        };
        Ok(self.singular.get_or_init(|| locus).clone())
    }

    /// The singular locus is empty in `P^n`.
    pub fn is_nonsingular(&self) -> Result<bool> {
        Ok(self.singular_locus()?.dimension()? <= 0)
    }

    /// `p` is a nonzero vector on which every generator vanishes.
    pub fn contains_point(&self, p: &[Rational]) -> Result<bool> {
        if p.len() != self.ideal.ring().nvars() {
            return Err(Error::input(format!(
                "point has {} coordinates, expected {}",
                p.len(),
                self.ideal.ring().nvars()
            )));
        }
        if p.iter().all(num_traits::Zero::is_zero) {
            return Err(Error::input("the zero vector is not a projective point"));
        }
        Ok(self.ideal.generators().iter().all(|g| num_traits::Zero::is_zero(&g.evaluate(p))))
    }

    /// Whether `p` lies on the singular locus.
    pub fn is_singular_point(&self, p: &[Rational]) -> Result<bool> {
        if !self.contains_point(p)? {
            return Err(Error::input("point does not lie on the variety"));
        }
        let sing = self.singular_locus()?;
        Ok(sing.generators().iter().all(|g| num_traits::Zero::is_zero(&g.evaluate(p))))
    }

    /// Same subscheme of `P^n` as `other`, comparing coordinates by
    /// position.
    pub fn same_as(&self, other: &ProjectiveVariety) -> Result<bool> {
        if self.ambient_dim() != other.ambient_dim() {
            return Ok(false);
        }
        let a = self.saturated_ideal()?;
        let b = other.saturated_ideal()?;
        let moved = b
            .generators()
            .iter()
            .map(|g| g.rename_into(a.ring()))
            .collect::<Result<Vec<_>>>()?;
        a.equals(&Ideal::new(a.ring(), moved)?.with_limits(a.limits()))
    }
}
