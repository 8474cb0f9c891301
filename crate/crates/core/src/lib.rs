//! Cross-checked determinant and tau-function identities for integrable
//! lattice models.
//!
//! Everything here is organized around one habit: compute the same
//! quantity along two independent routes and compare. A partition
//! function is summed over lattice states and evaluated as an NxN
//! determinant; a Schur polynomial is built from an alternant quotient
//! and from a Jacobi-Trudi minor; a scalar product is contracted through
//! operator algebra and read off a determinant formula. Exact rational
//! arithmetic (over the field of exponential coordinates, where every
//! hyperbolic weight is rational) settles identities with no tolerance
//! at all; complex floating point covers the points exact arithmetic
//! cannot reach, such as roots of transcendental equations.
//!
//! The crate splits into:
//!
//! - [`scalar`]: the two-field scalar (exact rationals, complex floats).
//! - [`matrix`]: dense matrices, exact and pivoted determinants.
//! - [`symfunc`]: partitions, complete homogeneous functions, Schur
//!   polynomials along both classical routes.
//! - [`taufn`]: Grassmannian tau functions for the KP, two-component KP
//!   and Toda families, with their coefficient extraction.
//! - [`sixvertex`]: the six-vertex model with domain walls, brute-force
//!   partition sums against determinant evaluations.
//! - [`bethe`]: finite XXZ chains, algebraic constructions on the full
//!   tensor space, root finding, and scalar-product determinants.
//! - [`qzero`]: the crystal-point degeneration and boxed Schur sums
//!   counted by plane partitions.
//! - [`suite`] and [`report`]: the named check registry behind the
//!   `taubethe` binary, with JSON and CSV reporting.

// Kernel-building loops index several alphabets in lockstep with skip
// conditions; iterator rewrites obscure which rapidity is which.
#![allow(clippy::needless_range_loop)]

pub mod bethe;
pub mod error;
pub mod exec;
pub mod fit;
pub mod matrix;
pub(crate) mod poly;
pub mod qzero;
pub mod report;
pub mod scalar;
pub mod sixvertex;
pub mod suite;
pub mod symfunc;
pub mod taufn;

pub use error::{Error, Result};
