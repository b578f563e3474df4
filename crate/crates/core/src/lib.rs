//! Stable evaluation of normalized ultraspherical functions on the sphere,
//! their envelope bounds, and a numerical verification harness.
//!
//! The functions are
//! `Y_{ell,m}(x) = c_{ell m} (1-x^2)^{m/2} P_{ell-m-1/2}^{(m,m)}(x)` for
//! `(ell, m)` in the half-integer index set `I`, and
//! `X~^d_{ell,m}(x) = (1-x^2)^{-(d-2)/4} Y_{ell,m}(x)`.

pub mod asymptotics;
pub mod envelopes;
pub mod error;
pub mod eval;
pub mod harness;
pub mod index;
pub mod scaled;
pub mod specfun;

pub use asymptotics::{claim_ratio, l_function, ode_residual, sign_check, titchmarsh_check, zeta_solve, ZetaSolution};
pub use envelopes::{
    bessel_envelope, exp_small_y_bound, hermite_envelope, universal_bound, DecayForm, Regime, RegimeParams,
};
pub use error::{Error, Result};
pub use eval::{eval_x, eval_y, jacobi_symmetric, norm_const, EvalPoint, YColumn};
pub use index::{HalfInt, IndexPair, TransitionData};
pub use scaled::ScaledReal;
