//! Exact computation of rational equivariant cohomology of configuration spaces of
//! Euclidean space, plus a filtered-complex spectral-sequence kernel.
//!
//! - [`exactalg`]: rationals, graded polynomials, linear algebra over ℚ.
//! - [`confring`]: the Arnold presentation of `H*(Conf_k(ℝⁿ))`.
//! - [`charclasses`]: `H*(BG)` for tori, `SO`, `O`, `U`, Weyl groups and restrictions.
//! - [`equiodd`]: the torus-equivariant graph calculus for `Conf_ℓ(ℝ^{2n+1})`.
//! - [`equieven`]: the page model for `Conf_ℓ(ℝ^{2n})`.
//! - [`specseq`]: filtered complexes, pages, décalage, purity and formality witnesses.

pub mod charclasses;
pub mod confring;
pub mod equieven;
pub mod equiodd;
mod error;
pub mod exactalg;
pub mod specseq;

pub use error::{Error, Result};
pub use exactalg::{Matrix, Polynomial, Scalar, VarSet};
