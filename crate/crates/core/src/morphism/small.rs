use serde::Serialize;

use crate::algebra::{fresh_name_avoiding, minors_ideal, GenericRng, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::exec;
use crate::ideal::Ideal;

use super::spec::augmented_jacobian;
use super::variety::singular_locus_of;
use super::{generic_degree, MorphismSpec, StratificationSpec, Stratum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallRow {
    pub stratum: String,
    pub stratum_dim: i64,
    /// Dimension of the inverse image of the open stratum; `-1` when empty.
    pub preimage_dim: i64,
    /// `d(Z) = dim f^{-1}(Z°) - dim Z`, the largest fiber dimension.
    pub fiber_dim: i64,
    /// Fiber dimension over a general point of the stratum.
    pub general_fiber_dim: i64,
    pub codim: i64,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallReport {
    pub is_small: bool,
    pub image_dim: i64,
    pub rows: Vec<SmallRow>,
    pub warnings: Vec<String>,
}

/// `f^{-1}(Z)` with the preimages of the lower strata in `Z̄` removed.
pub(crate) fn open_preimage(f: &MorphismSpec, strat: &StratificationSpec, s: &Stratum) -> Result<Ideal> {
    let mut w = f.preimage(&s.ideal)?;
    for b in strat.boundary(s)? {
        if w.is_unit()? {
            break;
        }
        w = w.saturation(&f.pullback(&b.ideal)?)?;
    }
    Ok(w)
}

/// Remove from `j` the locus over the lower strata of `s`.
fn off_boundary(j: Ideal, f: &MorphismSpec, strat: &StratificationSpec, s: &Stratum) -> Result<Ideal> {
    let mut j = j;
    for b in strat.boundary(s)? {
        if j.is_unit()? {
            break;
        }
        j = j.saturation(&f.pullback(&b.ideal)?)?;
    }
    Ok(j)
}

/// `k` generic affine hyperplanes of the target, pulled back to the source.
fn pulled_back_slices(f: &MorphismSpec, k: usize, seed: u64, label: &str, tag: u64) -> Result<Vec<Polynomial>> {
    let t = f.target();
    let vars: Vec<usize> = (0..t.nvars()).collect();
    let mut rng = GenericRng::tagged(seed, label, &[k as u64, tag]);
    (0..k)
        .map(|_| {
            let c = Polynomial::constant(t, crate::algebra::rat(rng.coeff()));
            let l = &rng.linear_form(t, &vars) + &c;
            l.compose(f.source_ring(), f.components())
        })
        .collect()
}

/// `2 d(Z) < codim Z` for every proper stratum.
pub fn small_check(f: &MorphismSpec, strat: &StratificationSpec, seed: u64) -> Result<SmallReport> {
    for s in strat.strata() {
        if !f.image_contains(&s.ideal)? {
            return Err(Error::input(format!("stratum '{}' is not contained in the image closure", s.name)));
        }
    }
    let image_dim = f.image_closure()?.dimension()?;
    let proper: Vec<&Stratum> = strat.proper().collect();
    let rows = exec::try_par_map(&proper, |s| {
        let z = s.ideal.dimension()?;
        let w = open_preimage(f, strat, s)?;
        let wd = w.dimension()?;
        let general = if wd < 0 {
            -1
        } else {
            let cut = w.with_generators(pulled_back_slices(f, z as usize, seed, "fiber-probe", 0)?)?;
            cut.dimension()?
        };
        let fiber_dim = if wd < 0 { -1 } else { wd - z };
        let codim = image_dim - z;
        Ok(SmallRow {
            stratum: s.name.clone(),
            stratum_dim: z,
            preimage_dim: wd,
            fiber_dim,
            general_fiber_dim: general,
            codim,
            passes: 2 * fiber_dim < codim,
        })
    })?;
    let mut warnings = Vec::new();
    for r in &rows {
        if r.preimage_dim < 0 {
            warnings.push(format!("stratum '{}' has empty preimage; passes vacuously", r.stratum));
        } else if r.general_fiber_dim != r.fiber_dim {
            warnings.push(format!(
                "fibers over '{}' are not equidimensional (general {}, max {}); common fiber dimension unverified",
                r.stratum, r.general_fiber_dim, r.fiber_dim
            ));
        }
    }
    if !f.proper_asserted() {
        warnings.push("properness not asserted".into());
    }
    let is_small = rows.iter().all(|r| r.passes);
    Ok(SmallReport {
        is_small,
        image_dim,
        rows,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberProductReport {
    pub source_dim: i64,
    pub fiber_product_dim: i64,
    /// Dimension of `Y x_S Y` with the diagonal saturated away.
    pub residual_dim: i64,
    pub is_small: bool,
}

/// Smallness via `Y x_S Y`: the diagonal must be its only component of
/// dimension `dim Y`.
pub fn fiber_product_smallness(f: &MorphismSpec, seed: u64) -> Result<FiberProductReport> {
    let deg = generic_degree(f, seed)?;
    if deg.degree != 1 {
        return Err(Error::precondition(format!("map has generic degree {}, not birational", deg.degree)));
    }
    let src = f.source_ring();
    let left: Vec<String> = src.var_names().to_vec();
    let mut right = Vec::new();
    for n in &left {
        let r = fresh_name_avoiding(&format!("{n}_"), |s| {
            left.iter().any(|v| v == s) || right.iter().any(|v: &String| v == s)
        });
        right.push(r);
    }
    let pair = Ring::with_blocks(&[("left", &left[..]), ("right", &right[..])])?;
    let m = left.len();
    let lvars: Vec<Polynomial> = (0..m).map(|i| Polynomial::var(&pair, i)).collect();
    let rvars: Vec<Polynomial> = (0..m).map(|i| Polynomial::var(&pair, m + i)).collect();
    let mut gens = Vec::new();
    for g in f.source().ideal().generators() {
        gens.push(g.compose(&pair, &lvars)?);
        gens.push(g.compose(&pair, &rvars)?);
    }
    for c in f.components() {
        gens.push(&c.compose(&pair, &lvars)? - &c.compose(&pair, &rvars)?);
    }
    let limits = f.source().ideal().limits();
    let fp = Ideal::new(&pair, gens)?.with_limits(limits);
    let diag = Ideal::new(&pair, (0..m).map(|i| &lvars[i] - &rvars[i]).collect())?.with_limits(limits);
    let residual = fp.saturation(&diag)?;
    let source_dim = f.source_dim()?;
    let residual_dim = residual.dimension()?;
    Ok(FiberProductReport {
        source_dim,
        fiber_product_dim: fp.dimension()?,
        residual_dim,
        is_small: residual_dim < source_dim,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothRestrictionRow {
    pub stratum: String,
    pub stratum_dim: i64,
    pub preimage_dim: i64,
    pub general_fiber_dim: i64,
    pub preimage_smooth: bool,
    pub stratum_smooth: bool,
    pub dims_match: bool,
    /// `f` restricted to the preimage has rank `dim Z` everywhere.
    pub submersive: bool,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothRestrictionReport {
    pub rows: Vec<SmoothRestrictionRow>,
    pub all_pass: bool,
    pub is_small: bool,
    /// Smooth restrictions over a small stratification force trimness.
    pub implies_trim: bool,
    pub warnings: Vec<String>,
}

/// Sufficient check that `f^{-1}(Z°) -> Z°` is smooth for every stratum.
pub fn smooth_restriction_check(
    f: &MorphismSpec,
    strat: &StratificationSpec,
    seed: u64,
) -> Result<SmoothRestrictionReport> {
    let small = small_check(f, strat, seed)?;
    let m = f.source_ring().nvars() as i64;
    let n = f.target().nvars() as i64;
    let strata: Vec<&Stratum> = strat.strata().iter().collect();
    let rows = exec::try_par_map(&strata, |s| {
        let z = s.ideal.dimension()?;
        let w = open_preimage(f, strat, s)?;
        let wd = w.dimension()?;
        if wd < 0 {
            return Ok(SmoothRestrictionRow {
                stratum: s.name.clone(),
                stratum_dim: z,
                preimage_dim: wd,
                general_fiber_dim: -1,
                preimage_smooth: true,
                stratum_smooth: true,
                dims_match: true,
                submersive: true,
                passes: true,
            });
        }
        let general = w
            .with_generators(pulled_back_slices(f, z as usize, seed, "fiber-probe", 0)?)?
            .dimension()?;
        let codim_w = m - wd;
        let sing_w = off_boundary(singular_locus_of(&w, codim_w)?, f, strat, s)?;
        let preimage_smooth = sing_w.is_unit()?;
        let mut sing_z = singular_locus_of(&s.ideal, n - z)?;
        for b in strat.boundary(s)? {
            if sing_z.is_unit()? {
                break;
            }
            sing_z = sing_z.saturation(&b.ideal)?;
        }
        let stratum_smooth = sing_z.is_unit()?;
        let dims_match = wd == z + general;
        let k = (codim_w + z) as usize;
        let submersive = if k == 0 {
            true
        } else {
            let top: Vec<Polynomial> = w.generators().to_vec();
            let jac = augmented_jacobian(&top, f.components(), f.source_ring())?;
            if k > jac.rows().min(jac.cols()) {
                false
            } else {
                off_boundary(w.with_generators(minors_ideal(&jac, k)?)?, f, strat, s)?.is_unit()?
            }
        };
        Ok(SmoothRestrictionRow {
            stratum: s.name.clone(),
            stratum_dim: z,
            preimage_dim: wd,
            general_fiber_dim: general,
            preimage_smooth,
            stratum_smooth,
            dims_match,
            submersive,
            passes: preimage_smooth && stratum_smooth && dims_match && submersive,
        })
    })?;
    let all_pass = rows.iter().all(|r| r.passes);
    Ok(SmoothRestrictionReport {
        all_pass,
        is_small: small.is_small,
        implies_trim: all_pass && small.is_small,
        rows,
        warnings: small.warnings,
    })
}
