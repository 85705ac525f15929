//! Numerical toolkit for fractional-order relaxation and the Riemann zeta
//! function.
//!
//! * [`numeric`]: principal-branch powers, complex log-gamma, accelerated
//!   alternating sums.
//! * [`transfer`]: Cole-Cole transfer function, arc geometry, distance classes.
//! * [`fracdiff`]: Grünwald-Letnikov operators and the relaxation solver.
//! * [`zeta`]: Möbius, eta, zeta, Euler product, critical-line zeros.
//! * [`primes`]: sieve, Mandelbrot gauge, θ′ roots, the ϖ product.

// `!(x < y)` is used on purpose so NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fracdiff;
pub mod numeric;
pub mod primes;
pub mod transfer;
pub mod zeta;

pub use error::{Error, Result};
pub use fracdiff::{FracOrder, SampledSignal, SolverConfig};
pub use numeric::{ComplexValue, ToleranceConfig};
pub use primes::{PrimeSet, Sign, SignConvention, ThetaPrimeSolution, VarpiConfig};
pub use transfer::{ArcGeometry, ColeColeParams, DistanceQuad};
pub use zeta::{ChartParams, ChartPartials, SPoint, ZeroBracket};
