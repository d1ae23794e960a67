//! Pushforward of the zero section `T*_Y Y` along `f: Y -> X`, tested
//! stratum by stratum through the incidence scheme
//! `ℱ = {(w, ξ) : f(w) ∈ Z°, ξ ⊥ T_{f(w)} Z°, ξ ∘ df_w = 0}`.
//! `T*_Z X` can occur in `f_*(T*_Y Y)` only if `dim ℱ >= dim X`.

use serde::Serialize;

use crate::algebra::{fresh_name_avoiding, jacobian_matrix, minors_ideal, PolyMatrix, Polynomial, Ring, RingRef};
use crate::calculus::{CycleKey, LagrangianCycle};
use crate::error::{Error, Result};
use crate::exec;
use crate::ideal::Ideal;
use crate::morphism::{generic_degree, singular_locus_of, trim_check, MorphismSpec, StratificationSpec, Stratum};

#[derive(Clone, Debug)]
pub struct IncidenceScheme {
    pub stratum: String,
    pub stratum_dim: i64,
    /// Ideal in the source coordinates followed by the covector block.
    pub ideal: Ideal,
    pub dim: i64,
    /// `dim X`, the target dimension.
    pub threshold: i64,
    /// `dim ℱ < dim X`: `T*_Z X` is absent from the pushforward.
    pub passes: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PushforwardMode {
    Trim,
    GenericallyFinite,
    SupportOnly,
}

impl PushforwardMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            PushforwardMode::Trim => "trim",
            PushforwardMode::GenericallyFinite => "generically-finite",
            PushforwardMode::SupportOnly => "support-only",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumVerdict {
    pub stratum: String,
    pub stratum_dim: i64,
    pub incidence_dim: i64,
    pub threshold: i64,
    /// `T*_Z X` may be a component; multiplicity unknown.
    pub possible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushforwardReport {
    pub mode: PushforwardMode,
    pub image: CycleKey,
    pub verdicts: Vec<StratumVerdict>,
    /// Conormal cycles that occur or may occur, image first.
    pub support: Vec<CycleKey>,
    /// The pushforward, when it is determined.
    pub cycle: Option<LagrangianCycle>,
    pub warnings: Vec<String>,
}

fn pull_matrix(m: &PolyMatrix, f: &MorphismSpec, ring: &RingRef) -> Result<Vec<Vec<Polynomial>>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|p| p.compose(f.source_ring(), f.components())?.map_into(ring))
                .collect()
        })
        .collect()
}

/// `k x k` minors of `rows`, or nothing when `k` exceeds the matrix.
fn minors_of(ring: &RingRef, rows: Vec<Vec<Polynomial>>, k: usize) -> Result<Vec<Polynomial>> {
    let m = PolyMatrix::from_rows(ring, rows)?;
    if k > m.rows().min(m.cols()) {
        return Ok(Vec::new());
    }
    minors_ideal(&m, k)
}

fn lift(i: &Ideal, ring: &RingRef) -> Result<Ideal> {
    let gens = i.generators().iter().map(|g| g.map_into(ring)).collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(ring, gens)?.with_limits(i.limits()))
}

/// The incidence scheme of `f` over the proper stratum `z`.
pub fn incidence_scheme(f: &MorphismSpec, strat: &StratificationSpec, z: &Stratum) -> Result<IncidenceScheme> {
    if !f.image_contains(&z.ideal)? {
        return Err(Error::input(format!("stratum '{}' is not contained in the image closure", z.name)));
    }
    let img_dim = f.image_closure()?.dimension()?;
    let z_dim = z.ideal.dimension()?;
    if z_dim >= img_dim {
        return Err(Error::precondition(format!("stratum '{}' is not a proper stratum", z.name)));
    }
    let src = f.source_ring();
    let tgt = f.target();
    let n = tgt.nvars();
    let m = src.nvars();
    let src_names = src.var_names().to_vec();
    let mut cov = Vec::new();
    for i in 0..n {
        let a = fresh_name_avoiding(&format!("a{i}"), |s| {
            src_names.iter().any(|v| v == s) || cov.iter().any(|v: &String| v == s)
        });
        cov.push(a);
    }
    let ring = Ring::with_blocks(&[("source", &src_names[..]), ("covector", &cov[..])])?;
    let xi: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&ring, m + i)).collect();
    let limits = f.source().ideal().limits();

    let mut gens = lift(&f.preimage(&z.ideal)?, &ring)?.generators().to_vec();

    // ξ annihilates T Z°
    let cz = n as i64 - z_dim;
    if !z.ideal.generators().is_empty() {
        let tvars: Vec<usize> = (0..n).collect();
        let jz = jacobian_matrix(z.ideal.generators(), &tvars)?;
        let mut rows = pull_matrix(&jz, f, &ring)?;
        rows.push(xi.clone());
        gens.extend(minors_of(&ring, rows, cz as usize + 1)?);
    }

    // ξ ∘ df vanishes on T_y Y
    let svars: Vec<usize> = (0..m).collect();
    let jf = jacobian_matrix(f.components(), &svars)?;
    let mut pairing = vec![Polynomial::zero(&ring); m];
    for (i, x) in xi.iter().enumerate() {
        for (j, q) in pairing.iter_mut().enumerate() {
            *q = &*q + &x.try_mul(&jf.get(i, j).map_into(&ring)?)?;
        }
    }
    let cy = f.source().codimension()? as usize;
    if cy == 0 {
        gens.extend(pairing.into_iter().filter(|p| !p.is_zero()));
    } else {
        let jy = jacobian_matrix(f.source().ideal().generators(), &svars)?;
        let mut rows: Vec<Vec<Polynomial>> = (0..jy.rows())
            .map(|i| jy.row(i).iter().map(|p| p.map_into(&ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        rows.push(pairing);
        gens.extend(minors_of(&ring, rows, cy + 1)?);
    }

    let mut ideal = Ideal::new(&ring, gens)?.with_limits(limits);
    // stay over the smooth part of Z°
    let mut removed = Vec::new();
    if cz > 0 {
        let sing = singular_locus_of(&z.ideal, cz)?;
        if !sing.is_unit()? {
            removed.push(sing);
        }
    }
    for b in strat.boundary(z)? {
        removed.push(b.ideal.clone());
    }
    for r in removed {
        if ideal.is_unit()? {
            break;
        }
        ideal = ideal.saturation(&lift(&f.pullback(&r)?, &ring)?)?;
    }
    let dim = ideal.dimension()?;
    Ok(IncidenceScheme {
        stratum: z.name.clone(),
        stratum_dim: z_dim,
        ideal,
        dim,
        threshold: n as i64,
        passes: dim < n as i64,
    })
}

fn verdicts(f: &MorphismSpec, strat: &StratificationSpec) -> Result<Vec<StratumVerdict>> {
    let proper: Vec<&Stratum> = strat.proper().collect();
    exec::try_par_map(&proper, |z| {
        let inc = incidence_scheme(f, strat, z)?;
        Ok(StratumVerdict {
            stratum: inc.stratum,
            stratum_dim: inc.stratum_dim,
            incidence_dim: inc.dim,
            threshold: inc.threshold,
            possible: !inc.passes,
        })
    })
}

fn scoping_warnings(f: &MorphismSpec) -> Vec<String> {
    let mut w = vec!["support is relative to the supplied stratification".to_string()];
    if !f.proper_asserted() {
        w.push("properness not asserted".into());
    }
    w
}

/// Candidate components of `f_*(T*_Y Y)` among the supplied strata.
pub fn pushforward_support(f: &MorphismSpec, strat: &StratificationSpec) -> Result<PushforwardReport> {
    let image = CycleKey::of_affine(&f.image_closure()?)?;
    let verdicts = verdicts(f, strat)?;
    let mut support = vec![image.clone()];
    for v in verdicts.iter().filter(|v| v.possible) {
        let z = strat.strata().iter().find(|s| s.name == v.stratum).unwrap();
        support.push(CycleKey::of_affine(&z.ideal)?);
    }
    let mut warnings = scoping_warnings(f);
    for v in verdicts.iter().filter(|v| v.possible) {
        warnings.push(format!("stratum '{}': possible component, multiplicity unknown", v.stratum));
    }
    Ok(PushforwardReport {
        mode: PushforwardMode::SupportOnly,
        image,
        verdicts,
        support,
        cycle: None,
        warnings,
    })
}

fn determined(f: &MorphismSpec, strat: &StratificationSpec, m: u64) -> Result<PushforwardReport> {
    let image = CycleKey::of_affine(&f.image_closure()?)?;
    let verdicts = verdicts(f, strat)?;
    let mut warnings = scoping_warnings(f);
    for v in verdicts.iter().filter(|v| v.possible) {
        warnings.push(format!(
            "stratum '{}' has incidence dimension {} despite the rank condition; genericity suspect",
            v.stratum, v.incidence_dim
        ));
    }
    Ok(PushforwardReport {
        mode: if m == 1 {
            PushforwardMode::Trim
        } else {
            PushforwardMode::GenericallyFinite
        },
        support: vec![image.clone()],
        cycle: Some(LagrangianCycle::single(image.clone(), m as i64)),
        image,
        verdicts,
        warnings,
    })
}

fn require_rank_condition(f: &MorphismSpec) -> Result<()> {
    let t = trim_check(f)?;
    match t.first_failure() {
        Some(row) => Err(Error::precondition(format!(
            "rank condition fails at d = {}: dim Y_{} = {} is not below {}",
            row.d, row.d, row.dim, row.bound
        ))),
        None => Ok(()),
    }
}

/// `f_*(T*_Y Y) = T*_{f(Y)} X` for a trim resolution.
pub fn pushforward_trim(f: &MorphismSpec, strat: &StratificationSpec, seed: u64) -> Result<PushforwardReport> {
    require_rank_condition(f)?;
    let m = generic_degree(f, seed)?.degree;
    if m != 1 {
        return Err(Error::precondition(format!("map has generic degree {m}, not birational")));
    }
    determined(f, strat, 1)
}

/// `f_*(T*_Y Y) = m T*_{f(Y)} X` for a map of generic degree `m` with
/// `dim Y_d < d` for all `d < dim Y`.
pub fn pushforward_generically_finite(
    f: &MorphismSpec,
    strat: &StratificationSpec,
    seed: u64,
) -> Result<PushforwardReport> {
    let m = generic_degree(f, seed)?.degree;
    require_rank_condition(f)?;
    determined(f, strat, m)
}
