//! Star-product calculus of quadratic (circle-Radon) tomography.
//!
//! The crate evaluates closed-form star-product kernels of circular
//! tomograms as functions of the deformation parameter `h` (the commutator
//! scale `[q, p] = i h`), the forward and inverse circle transforms between
//! phase-space and tomographic symbols, the classical (`h -> 0`) contraction,
//! the `h = 1` singular kernel and a delta-deformed kernel. Every closed form
//! is paired with an independent quadrature route in [`kernels`] and the
//! comparisons are packaged as runnable suites in [`verify`].

pub mod cli;
pub mod error;
pub mod kernels;
pub mod phase_space;
pub mod specfun;
pub mod tomo_transform;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
