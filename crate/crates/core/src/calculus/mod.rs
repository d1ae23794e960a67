//! Conormal cycles, constructible functions and the characteristic
//! classes attached to them.

mod classes;
mod cycles;
mod key;
mod stringy;
mod trim;

pub use classes::{c_star, chern_mather, chern_mather_from_conormal, euler_obstruction, euler_obstruction_from_conormal};
pub use cycles::{cc_inverse, cc_transform, ConstructibleFunction, LagrangianCycle};
pub use key::{Ambient, CycleKey};
pub use stringy::{stringy_class, BasisClass, ChowRingSpec};
pub use trim::{euler_obstruction_via_trim, fiber_euler, ic_report, try_fiber_euler, FiberEuler, FiberShape, IcReport, StalkRow};
