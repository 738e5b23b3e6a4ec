//! The one-dimensional fiber operators
//! `H[k] = σ1(−i∂x) + σ2 k + σ3 m` with a point interaction at `x = 0`.
//!
//! The interaction enters only through the transmission condition
//! `ψ(0+) = Λ ψ(0−)`. Inside the gap `(−E, E)`, `E = sqrt(m² + k²)`, the
//! operator has at most two simple eigenvalues, given in closed form by the
//! energy bands of [`bands`]. [`matching_oracle`] finds the same eigenvalues
//! independently by scanning the matching determinant.

mod bands;
mod eigen;
mod green;
mod krein;
mod oracle;
mod transmission;

pub use bands::{bands, char_eq_residual, Band, BandLaw, BranchId, OpenInterval};
pub use eigen::{fiber_eigenvalues, BoundState};
pub use green::{green_kernel, xi, GreenKernel};
pub use krein::{
    free_resolvent_apply, krein_resolvent_apply, krein_residual, KreinOptions, KreinOutput,
    SampledSpinor,
};
pub use oracle::{decaying_spinors, matching_oracle, matching_roots, ORACLE_GRID};
pub use transmission::{transmission_matrix, TransmissionMatrix};


use crate::coupling::Coupling;
use crate::{Error, Result};

/// A coupling together with the transverse momentum `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberContext {
    pub coupling: Coupling,
    pub k: f64,
}

impl FiberContext {
    pub fn new(coupling: Coupling, k: f64) -> Self {
        FiberContext { coupling, k }
    }

    /// `sqrt(m² + k²)`, the edge of the essential spectrum.
    pub fn gap_edge(&self) -> f64 {
        self.coupling.mass.hypot(self.k)
    }

    pub fn mass(&self) -> f64 {
        self.coupling.mass
    }

    /// Fails for `m = k = 0`, where the gap is empty.
    pub fn check_gap(&self) -> Result<f64> {
        let e = self.gap_edge();
        if e > 0.0 && e.is_finite() {
            Ok(e)
        } else {
            Err(Error::DegenerateContext)
        }
    }

    /// Decay rate `μ = sqrt(m² + k² − z²)` of bound states at energy `z`.
    pub fn mu(&self, z: f64) -> f64 {
        // (E − z)(E + z) loses less precision near the edges than E² − z².
        let e = self.gap_edge();
        ((e - z) * (e + z)).max(0.0).sqrt()
    }
}
