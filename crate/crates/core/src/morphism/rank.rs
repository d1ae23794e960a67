use serde::Serialize;

use crate::algebra::{minors_ideal, PolyMatrix};
use crate::error::Result;
use crate::exec;
use crate::ideal::Ideal;

use super::MorphismSpec;

/// Closure of one rank stratum `Y_d`.
#[derive(Clone, Debug)]
pub struct RankStratum {
    pub d: usize,
    /// Ideal of the closure of `{y in Y : rank df_y = d}`.
    pub closure: Ideal,
    /// Ideal of the locus `rank <= d`.
    pub at_most: Ideal,
    /// `-1` when the stratum is empty.
    pub dim: i64,
}

#[derive(Clone, Debug)]
pub struct RankStratification {
    pub source_dim: i64,
    pub strata: Vec<RankStratum>,
}

impl RankStratification {
    pub fn dim_of(&self, d: usize) -> i64 {
        self.strata.get(d).map_or(-1, |s| s.dim)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrimRow {
    pub d: usize,
    pub dim: i64,
    pub bound: i64,
    /// Rows with `d < dim Y` are required; the top row is informational.
    pub required: bool,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrimReport {
    pub is_trim: bool,
    pub rows: Vec<TrimRow>,
}

impl TrimReport {
    fn from_dims(source_dim: i64, dims: &[i64]) -> Self {
        let rows: Vec<TrimRow> = dims
            .iter()
            .enumerate()
            .map(|(d, &dim)| TrimRow {
                d,
                dim,
                bound: d as i64,
                required: (d as i64) < source_dim,
                passes: dim < d as i64,
            })
            .collect();
        let is_trim = rows.iter().filter(|r| r.required).all(|r| r.passes);
        TrimReport { is_trim, rows }
    }

    /// First required row that fails.
    pub fn first_failure(&self) -> Option<&TrimRow> {
        self.rows.iter().find(|r| r.required && !r.passes)
    }
}

/// `I + (k x k minors of m)`; `I` alone when `k` exceeds the matrix.
fn with_minors(base: &Ideal, m: &PolyMatrix, k: usize) -> Result<Ideal> {
    if k == 0 {
        return Ok(Ideal::unit(base.ring()).with_limits(base.limits()));
    }
    if k > m.rows().min(m.cols()) {
        return Ok(base.clone());
    }
    base.with_generators(minors_ideal(m, k)?)
}

/// Closure of `V(upper) \ V(lower)` where `lower = base + minors`.
fn stratum_closure(upper: &Ideal, base: &Ideal, m: &PolyMatrix, k: usize) -> Result<Ideal> {
    if k == 0 {
        return Ok(upper.clone());
    }
    if k > m.rows().min(m.cols()) {
        // lower == base contains upper's locus
        return Ok(Ideal::unit(base.ring()).with_limits(base.limits()));
    }
    let minors = Ideal::new(base.ring(), minors_ideal(m, k)?)?.with_limits(base.limits());
    upper.saturation(&minors)
}

/// Rank of `df` on `T_yY` is the rank of the augmented Jacobian of
/// `(I(Y), f)` minus the codimension of `Y`.
pub fn rank_strata(f: &MorphismSpec) -> Result<RankStratification> {
    let dim_y = f.source_dim()?;
    let c = f.source().codimension()? as usize;
    let jac = f.augmented_jacobian()?;
    let base = f.source().ideal().clone();
    let ds: Vec<usize> = (0..=dim_y.max(0) as usize).collect();
    let strata = exec::try_par_map(&ds, |&d| {
        let at_most = with_minors(&base, &jac, c + d + 1)?;
        let closure = stratum_closure(&at_most, &base, &jac, c + d)?;
        let dim = closure.dimension()?;
        Ok(RankStratum { d, closure, at_most, dim })
    })?;
    Ok(RankStratification { source_dim: dim_y, strata })
}

/// `dim Y_d < d` for all `d < dim Y`.
pub fn trim_check(f: &MorphismSpec) -> Result<TrimReport> {
    let rs = rank_strata(f)?;
    let dims: Vec<i64> = rs.strata.iter().map(|s| s.dim).collect();
    Ok(TrimReport::from_dims(rs.source_dim, &dims))
}

/// The trim table recomputed from the Fitting ideals of the relative
/// differentials: `Ω_{Y|X}` is presented by the transpose of the augmented
/// Jacobian, its fiber has dimension `>= e` on `V(Fitt_{e-1})`, and
/// `e = dim Y - rank df`.
pub fn omega_trim_check(f: &MorphismSpec) -> Result<TrimReport> {
    let dim_y = f.source_dim()?;
    let m = f.source_ring().nvars();
    let rel = transpose(&f.augmented_jacobian()?)?;
    let base = f.source().ideal().clone();
    let es: Vec<usize> = (0..=dim_y.max(0) as usize).collect();
    // fitting(i) = (m - i) x (m - i) minors
    let locus_fiber_at_least = |e: usize| -> Result<Ideal> {
        with_minors(&base, &rel, m - e + 1)
    };
    let dims_by_e = exec::try_par_map(&es, |&e| {
        let ge = locus_fiber_at_least(e)?;
        stratum_closure(&ge, &base, &rel, m - e)?.dimension()
    })?;
    let top = dim_y.max(0) as usize;
    let dims: Vec<i64> = (0..=top).map(|d| dims_by_e[top - d]).collect();
    Ok(TrimReport::from_dims(dim_y, &dims))
}

fn transpose(m: &PolyMatrix) -> Result<PolyMatrix> {
    let rows = (0..m.cols()).map(|j| (0..m.rows()).map(|i| m.get(i, j).clone()).collect()).collect();
    PolyMatrix::from_rows(m.ring(), rows)
}
