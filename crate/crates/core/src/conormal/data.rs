use crate::algebra::{fresh_name_avoiding, jacobian_matrix, minors_ideal, PolyMatrix, Polynomial, Ring, RingRef};
use crate::error::{Error, Result};
use crate::ideal::Ideal;

use super::ProjectiveVariety;

/// Name of the primal block of a conormal ring.
pub const PRIMAL: &str = "primal";
/// Name of the dual block of a conormal ring.
pub const DUAL: &str = "dual";

/// Projectivized conormal variety of `V ⊂ P^n` inside `P^n x P^n*`.
#[derive(Clone, Debug)]
pub struct ConormalData {
    pub base: ProjectiveVariety,
    /// Ring with blocks `primal` (the coordinates of `V`'s ring) and `dual`.
    pub ring: RingRef,
    pub ideal: Ideal,
    /// `(δ_0, ..., δ_{n-1})`, `δ_j` counting points on `n-1-j` generic
    /// primal and `j` generic dual hyperplanes.
    pub polar_degrees: Vec<u64>,
}

/// `P^n x P^n*` with the variety's coordinates first and dual coordinates
/// `a0..an` (renamed if they clash).
pub fn conormal_ring(primal: &RingRef) -> Result<RingRef> {
    let names: Vec<String> = primal.var_names().to_vec();
    let mut dual: Vec<String> = Vec::with_capacity(names.len());
    for i in 0..names.len() {
        let n = fresh_name_avoiding(&format!("a{i}"), |s| names.iter().any(|v| v == s) || dual.iter().any(|v| v == s));
        dual.push(n);
    }
    Ring::with_blocks(&[(PRIMAL, &names[..]), (DUAL, &dual[..])])
}

impl ConormalData {
    pub fn primal_vars(&self) -> Vec<usize> {
        self.ring.block(PRIMAL).unwrap().vars.clone()
    }

    pub fn dual_vars(&self) -> Vec<usize> {
        self.ring.block(DUAL).unwrap().vars.clone()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.ambient_dim()
    }

    /// Dual variety: the projection of the conormal variety to `P^n*`,
    /// in a ring whose coordinates carry the dual names.
    pub fn dual_variety(&self) -> Result<ProjectiveVariety> {
        let elim = self.ideal.eliminate(&self.primal_vars())?;
        let names: Vec<String> = self.dual_vars().iter().map(|&v| self.ring.var_name(v).to_string()).collect();
        let target = Ring::with_vars(&names)?;
        ProjectiveVariety::new(elim.map_into(&target)?)
    }
}

/// Ideal of the projectivized conormal variety: `I(V)`, plus the
/// `(c+1)`-minors of the Jacobian stacked on the dual row, saturated by the
/// dual irrelevant ideal, the `c`-minors and the primal irrelevant ideal.
pub fn conormal_ideal(v: &ProjectiveVariety, seed: u64) -> Result<ConormalData> {
    let n = v.ambient_dim();
    let dim = v.dimension()?;
    if dim < 0 {
        return Err(Error::input("conormal of the empty variety"));
    }
    if dim as usize == n {
        return Err(Error::input(
            "the conormal of the whole space is the zero section; use the zero-section cycle key",
        ));
    }
    let c = (n as i64 - dim) as usize;
    let ring = conormal_ring(v.ideal().ring())?;
    let limits = v.ideal().limits();
    let primal: Vec<usize> = ring.block(PRIMAL).unwrap().vars.clone();
    let dual: Vec<usize> = ring.block(DUAL).unwrap().vars.clone();

    let gens = v.ideal().generators().iter().map(|g| g.map_into(&ring)).collect::<Result<Vec<_>>>()?;
    let jac = jacobian_matrix(&gens, &primal)?;
    let dual_row: Vec<Polynomial> = dual.iter().map(|&a| Polynomial::var(&ring, a)).collect();
    let augmented = jac.stacked(&PolyMatrix::from_rows(&ring, vec![dual_row])?)?;
    if c + 1 > augmented.rows().min(augmented.cols()) {
        return Err(Error::precondition("fewer generators than the codimension"));
    }
    let mut all = gens.clone();
    all.extend(minors_ideal(&augmented, c + 1)?);
    let incidence = Ideal::new(&ring, all)?.with_limits(limits);

    let irrelevant = |vars: &[usize]| {
        Ideal::new(&ring, vars.iter().map(|&i| Polynomial::var(&ring, i)).collect())
            .unwrap()
            .with_limits(limits)
    };
    let singular = Ideal::new(&ring, minors_ideal(&jac, c)?)?.with_limits(limits);
    let ideal = incidence
        .saturation(&irrelevant(&dual))?
        .saturation(&singular)?
        .saturation(&irrelevant(&primal))?;
    let canonical = ideal.canonical()?.elements().to_vec();
    let ideal = Ideal::new(&ring, canonical)?.with_limits(limits);

    let polar_degrees = ideal.multidegree(PRIMAL, DUAL, seed)?;
    if polar_degrees.len() != n {
        return Err(Error::limit(
            "conormal dimension",
            format!("projectivized conormal has dimension {} instead of {}", polar_degrees.len() as i64 - 1, n - 1),
        ));
    }
    Ok(ConormalData {
        base: v.clone(),
        ring,
        ideal,
        polar_degrees,
    })
}

/// Dual variety of `V`.
pub fn dual_variety(v: &ProjectiveVariety, seed: u64) -> Result<ProjectiveVariety> {
    conormal_ideal(v, seed)?.dual_variety()
}
