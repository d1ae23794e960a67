use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chow::ChowVector;
use crate::error::{Error, Result};

/// A basis class of `A_*(Y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisClass {
    pub name: String,
    pub dim: usize,
}

/// User-supplied intersection data on a nonsingular `Y` with a map
/// `f: Y -> P^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowRingSpec {
    pub dim_y: usize,
    /// `n` of the target `P^n`.
    pub ambient_n: usize,
    pub basis: Vec<BasisClass>,
    /// Expansion of `c(TY) ∩ [Y]` in the basis.
    pub chern_class: BTreeMap<String, i64>,
    /// Expansion of `f*H` in the basis (classes of dimension `dim_y - 1`).
    #[serde(default)]
    pub hyperplane_pullback: BTreeMap<String, i64>,
    /// `∫_Y b · (f*H)^{dim b}` for basis classes `b`.
    pub pairings: BTreeMap<String, i64>,
}

impl ChowRingSpec {
    fn dim_of(&self, name: &str) -> Result<usize> {
        self.basis
            .iter()
            .find(|b| b.name == name)
            .map(|b| b.dim)
            .ok_or_else(|| Error::input(format!("'{name}' is not a basis class")))
    }

    /// Check names and dimensions.
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for b in &self.basis {
            if !seen.insert(b.name.as_str()) {
                return Err(Error::input(format!("duplicate basis class '{}'", b.name)));
            }
            if b.dim > self.dim_y {
                return Err(Error::input(format!(
                    "basis class '{}' has dimension {} > dim Y = {}",
                    b.name, b.dim, self.dim_y
                )));
            }
        }
        if !self.basis.iter().any(|b| b.dim == self.dim_y) {
            return Err(Error::input("basis has no fundamental class of dimension dim Y"));
        }
        for name in self.chern_class.keys().chain(self.pairings.keys()) {
            self.dim_of(name)?;
        }
        for name in self.hyperplane_pullback.keys() {
            let d = self.dim_of(name)?;
            if d + 1 != self.dim_y {
                return Err(Error::input(format!(
                    "f*H has a term on '{name}' of dimension {d}, expected {}",
                    self.dim_y.saturating_sub(1)
                )));
            }
        }
        if self.dim_y > self.ambient_n {
            return Err(Error::input("dim Y exceeds the dimension of the target"));
        }
        Ok(())
    }
}

/// `γ_d = ∫_Y c_{dim Y - d}(TY) · (f*H)^d`: the pushforward of
/// `c(TY) ∩ [Y]` to `A_*(P^n)`.
pub fn stringy_class(spec: &ChowRingSpec) -> Result<ChowVector> {
    spec.validate()?;
    let missing: Vec<&str> = spec
        .chern_class
        .iter()
        .filter(|(name, &c)| c != 0 && !spec.pairings.contains_key(*name))
        .map(|(name, _)| name.as_str())
        .collect();
    if !missing.is_empty() {
        return Err(Error::input(format!("missing pairings for: {}", missing.join(", "))));
    }
    let mut out = ChowVector::zero(spec.ambient_n);
    for (name, &c) in &spec.chern_class {
        if c == 0 {
            continue;
        }
        let d = spec.dim_of(name)?;
        out.coeffs[d] += c * spec.pairings[name];
    }
    Ok(out)
}
