//! Polynomial maps of affine charts: rank strata, trim and small tests.

mod degree;
mod rank;
mod small;
mod spec;
mod variety;

pub use degree::{generic_degree, GenericDegree};
pub use rank::{omega_trim_check, rank_strata, trim_check, RankStratification, RankStratum, TrimReport, TrimRow};
pub use small::{
    fiber_product_smallness, small_check, smooth_restriction_check, FiberProductReport, SmallReport, SmallRow,
    SmoothRestrictionReport, SmoothRestrictionRow,
};
pub use spec::{MorphismSpec, StratificationSpec, Stratum};
pub use variety::AffineVariety;

pub(crate) use variety::{locus_contained, singular_locus_of};
