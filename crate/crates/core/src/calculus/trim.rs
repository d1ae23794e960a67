use serde::Serialize;

use crate::algebra::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::morphism::{locus_contained, trim_check, MorphismSpec};

use super::{CycleKey, LagrangianCycle};

/// How the Euler characteristic of a fiber was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FiberShape {
    /// Finitely many points, counted without multiplicity.
    Points(u64),
    /// A linear space of dimension `k` in the chart, read as a chart of `P^k`.
    Linear(usize),
    /// Taken from the caller.
    Asserted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberEuler {
    pub chi: i64,
    pub shape: FiberShape,
}

/// `I(Y) + (f_i - s_i)`.
fn fiber_ideal(f: &MorphismSpec, s: &[Rational]) -> Result<Ideal> {
    if s.len() != f.target().nvars() {
        return Err(Error::input(format!(
            "point has {} coordinates, target has {}",
            s.len(),
            f.target().nvars()
        )));
    }
    let src = f.source_ring();
    let eqs = f
        .components()
        .iter()
        .zip(s)
        .map(|(c, v)| c - &Polynomial::constant(src, v.clone()))
        .collect::<Vec<_>>();
    f.source().ideal().with_generators(eqs)
}

/// Euler characteristic of `f^{-1}(s)` for the fiber shapes we can read off.
pub fn fiber_euler(f: &MorphismSpec, s: &[Rational], asserted: Option<i64>) -> Result<FiberEuler> {
    try_fiber_euler(f, s, asserted)?.ok_or_else(|| Error::input("point lies outside the image of this chart"))
}

/// As [`fiber_euler`], with `None` for an empty fiber.
pub fn try_fiber_euler(f: &MorphismSpec, s: &[Rational], asserted: Option<i64>) -> Result<Option<FiberEuler>> {
    let fib = fiber_ideal(f, s)?;
    let dim = fib.dimension()?;
    if dim < 0 {
        return Ok(None);
    }
    if dim == 0 {
        let n = fib
            .point_count()?
            .ok_or_else(|| Error::UnsupportedFiber("finite fiber without a point count".into()))?;
        return Ok(Some(FiberEuler {
            chi: n as i64,
            shape: FiberShape::Points(n),
        }));
    }
    let gb = fib.canonical()?;
    if gb.elements().iter().all(|g| g.total_degree().is_some_and(|d| d <= 1)) {
        let k = dim as usize;
        return Ok(Some(FiberEuler {
            chi: k as i64 + 1,
            shape: FiberShape::Linear(k),
        }));
    }
    match asserted {
        Some(chi) => Ok(Some(FiberEuler {
            chi,
            shape: FiberShape::Asserted,
        })),
        None => Err(Error::UnsupportedFiber(format!(
            "fiber of dimension {dim} is neither finite nor linear; supply its Euler characteristic"
        ))),
    }
}

fn require_trim(f: &MorphismSpec) -> Result<()> {
    let trim = trim_check(f)?;
    if let Some(row) = trim.first_failure() {
        let chart = f.chart().map(|c| format!(" (chart {c})")).unwrap_or_default();
        return Err(Error::precondition(format!(
            "map{chart} is not trim: dim Y_{} = {} is not below {}",
            row.d, row.dim, row.bound
        )));
    }
    Ok(())
}

/// `Eu_S(s) = χ(π^{-1}(s))` for a trim resolution `π` of `S`.
pub fn euler_obstruction_via_trim(f: &MorphismSpec, s: &[Rational], asserted: Option<i64>) -> Result<FiberEuler> {
    require_trim(f)?;
    fiber_euler(f, s, asserted)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StalkRow {
    pub point: Vec<String>,
    pub fiber: FiberEuler,
    /// `(-1)^{dim S} χ(π^{-1}(z))`.
    pub stalk_chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IcReport {
    pub dim: i64,
    pub cc: LagrangianCycle,
    pub is_irreducible: bool,
    pub stalks: Vec<StalkRow>,
    pub warnings: Vec<String>,
}

/// Characteristic cycle and stalk Euler characteristics of the IC sheaf of
/// `s`, assuming the charts form a trim resolution of it. Each probe is read
/// in the first chart whose fiber over it is nonempty.
pub fn ic_report(s: &Ideal, charts: &[MorphismSpec], probes: &[(Vec<Rational>, Option<i64>)]) -> Result<IcReport> {
    if charts.is_empty() {
        return Err(Error::input("no charts given"));
    }
    for f in charts {
        if s.ring().nvars() != f.target().nvars() {
            return Err(Error::input("variety and map target have different ambient dimensions"));
        }
        let img = f.image_closure()?;
        let moved = Ideal::new(
            f.target(),
            s.generators().iter().map(|g| g.rename_into(f.target())).collect::<Result<Vec<_>>>()?,
        )?
        .with_limits(s.limits());
        if !(locus_contained(&moved, &img)? && locus_contained(&img, &moved)?) {
            return Err(Error::input("map is not onto the given variety"));
        }
        require_trim(f)?;
    }
    let key = CycleKey::of_affine(s)?;
    let dim = key.dim();
    let sign = if dim % 2 == 0 { 1 } else { -1 };
    let mut stalks = Vec::new();
    for (p, a) in probes {
        let mut found = None;
        for f in charts {
            if let Some(fe) = try_fiber_euler(f, p, *a)? {
                found = Some(fe);
                break;
            }
        }
        let fiber = found.ok_or_else(|| Error::input("probe lies outside the image of every chart"))?;
        stalks.push(StalkRow {
            point: p.iter().map(|c| c.to_string()).collect(),
            stalk_chi: sign * fiber.chi,
            fiber,
        });
    }
    let mut warnings = Vec::new();
    if charts.iter().any(|f| !f.proper_asserted()) {
        warnings.push("properness not asserted".into());
    }
    if stalks.iter().any(|r| r.fiber.shape == FiberShape::Asserted) {
        warnings.push("some fiber Euler characteristics are user-asserted".into());
    }
    Ok(IcReport {
        dim,
        cc: LagrangianCycle::single(key, 1),
        is_irreducible: true,
        stalks,
        warnings,
    })
}
