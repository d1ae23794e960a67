//! Exact rational and sparse multivariate polynomial arithmetic.

pub mod matrix;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod polynomial;
pub mod random;
pub mod ring;

pub use matrix::{jacobian_matrix, minors_ideal, PolyMatrix};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::{parse_polynomial, ParsePolynomial};
pub use polynomial::{rat, rat_frac, Polynomial, Rational};
pub use random::{random_linear_form, GenericRng};
pub use ring::{Block, Ring, RingRef};
pub(crate) use ring::fresh_name_avoiding;
