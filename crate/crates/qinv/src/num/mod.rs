//! Complex dense linear algebra, special functions, and the deterministic
//! PRNG the rest of the crate builds on.
//!
//! Everything here is written with a fixed serial evaluation order so that
//! results are bit-identical regardless of how many worker threads the grid
//! sweep uses.

mod matrix;
mod rng;
mod special;
mod svd;

pub use matrix::{projector_complement, ComplexMatrix, ComplexVector};
pub use rng::Prng;
pub use special::{bessel_j0, bessel_j1, bessel_y0, bessel_y1, dirichlet_kernel, hankel1_0};
pub use svd::{lstsq_min_norm, svd, SvdResult};
