//! Spectral analysis of two-dimensional Dirac operators with a general
//! hermitian δ-shell interaction supported on the line `x = 0`.
//!
//! The operator is translation invariant along the line, so after a partial
//! Fourier transform it splits into one-dimensional fiber operators `H[k]`
//! with a point interaction at the origin. This crate solves the fibers in
//! closed form, cross-checks them against an independent matching-determinant
//! root finder, assembles the spectrum of the full operator from the energy
//! bands, and studies approximations by scaled regular potentials.
//!
//! Module map:
//!
//! * [`mat2`]: complex 2×2 matrices in the Pauli basis, closed-form exponential.
//! * [`coupling`]: interaction parameters, regime classification, gauge reductions.
//! * [`fiber`]: transmission matrix, energy bands, bound states, Green kernel,
//!   Krein resolvent, matching oracle.
//! * [`spectrum`]: interval sets, spectrum assembly, special families, wave packets.
//! * [`approx`]: coupling renormalization and square-profile regularized models.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod approx;
pub mod coupling;
mod error;
pub mod fiber;
pub mod mat2;
pub mod quad;
pub mod roots;
pub mod spectrum;

pub use error::{Error, Result};

pub use num_complex::Complex64;
