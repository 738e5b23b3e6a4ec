use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is numerically singular (|det| = {det:e}, scale = {scale:e})")]
    SingularMatrix { det: f64, scale: f64 },

    #[error("non-finite matrix entry")]
    NonFinite,

    /// `ω = 0` and `d = -4`: the interaction decouples the two half-planes.
    #[error("confining regime (omega = 0, d = -4): the interaction decouples the half-lines")]
    ConfiningRegime,

    #[error("invalid regime: {0}")]
    InvalidRegime(&'static str),

    /// Renormalization requires `d > -4`. Couplings with `d < -4` can be
    /// mapped to `d > -4` first with [`crate::coupling::minus_four_over_d_partner`].
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(&'static str),

    /// `z` lies outside the admissible range bounded by `edge`: the fiber
    /// gap `(-edge, edge)` for energies, a band domain end for momenta.
    #[error("{z} lies outside the admissible range (bound {edge})")]
    DomainError { z: f64, edge: f64 },

    #[error("degenerate fiber: mass = k = 0 leaves no spectral gap")]
    DegenerateContext,

    #[error("spectral parameter lies in the spectrum of the fiber operator")]
    SpectralPoint,

    #[error("band is not linear")]
    NotLinear,

    #[error("the delta model has no bound state at this k")]
    NoBoundState,

    #[error("invalid input: {0}")]
    InvalidInput(&'static str),

    #[error("identity check failed: {what} (residual {residual:e})")]
    CheckFailed { what: &'static str, residual: f64 },
}
