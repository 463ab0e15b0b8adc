//! Quadrature rules, Bessel functions, log-domain arithmetic, and named
//! constants used by every other module.

pub mod bessel;
pub mod constants;
pub mod gamma;
pub mod logsigned;
pub mod quad;
pub mod sinint;

pub use bessel::{bessel_i0, bessel_j, j0, j1};
pub use constants::{widom_constant, ZETA_PRIME_NEG_ONE};
pub use gamma::{ln_binomial, ln_gamma};
pub use logsigned::{log_product, LogSigned};
pub use quad::{gauss_legendre, make_rule, QuadKind, QuadratureRule};
pub use sinint::si;
