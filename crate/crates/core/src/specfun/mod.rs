//! Scalar special functions: log-gamma, Bessel functions of the first kind
//! of real order, and quadrature rules.

pub mod bessel;
pub mod gamma;
pub mod quadrature;

pub use bessel::bessel_j;
pub use gamma::log_gamma;
pub use quadrature::{gauss_legendre, integrate_adaptive, CosThetaRule, QuadratureRule};
