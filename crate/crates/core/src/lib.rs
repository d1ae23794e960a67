//! Exact characteristic-cycle calculus for polynomially presented varieties
//! and resolutions.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: rationals, sparse polynomials, monomial orders, Jacobians
//!   and minors.
//! * [`ideal`]: Buchberger Gröbner bases, saturation, elimination, dimension,
//!   degree and multidegrees by generic slicing.
//! * [`conormal`]: singular loci, projectivized conormal varieties in
//!   `P^n x P^n*`, polar degrees, dual varieties and Segre classes.
//! * [`calculus`]: conormal cycle keys, the CC isomorphism, local Euler
//!   obstructions, Chern-Mather classes, `c_*`, stringy classes and the IC
//!   report.
//! * [`morphism`]: rank stratification of polynomial maps and the trim,
//!   small, fiber-product, differential-sheaf and smooth-restriction checks.
//! * [`pushforward`]: incidence schemes and the pushforward of the zero
//!   section for trim and generically finite maps.
//!
//! Generic choices are always driven by an explicit `seed`; identical inputs
//! and seeds produce identical results whether or not the `parallel`
//! feature is enabled.

pub mod algebra;
pub mod calculus;
pub mod chow;
pub mod conormal;
pub mod error;
pub mod exec;
pub mod ideal;
pub mod morphism;
pub mod pushforward;

pub use error::{Error, Result};
