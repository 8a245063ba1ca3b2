//! Exact computation of the polynomials `k_ℓ`, `K_ℓ`, `r_ℓ/(2ℓ+1)` and `p_ℓ`
//! that appear in the Titchmarsh-Weyl m-function of the radial hydrogen
//! problem on the half line, by two independent routes, plus numerical
//! evaluation of `m_ℓ(λ)` itself.

pub mod cli;
pub mod combinat;
pub mod direct;
pub mod eval;
pub mod exactnum;
pub mod laurent;
pub mod realform;
pub mod verify;

pub use exactnum::{ArithError, Gaussian, Rational};
pub use laurent::{Format, LambdaPoly, LaurentPoly, Monomial, PolyError};
