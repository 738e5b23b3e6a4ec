//! Wave packets built from the bound states along one energy band,
//! `ψ(x, y, t) = (2π)^{-1/2} ∫ g(k) ψ_k(x) e^{i(ky − z(k)t)} dk`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::coupling::Coupling;
use crate::fiber::{fiber_eigenvalues, Band, BoundState, FiberContext};
use crate::mat2::{spinor_add, spinor_scale, Spinor};
use crate::quad::gauss_legendre_on;
use crate::{Error, Result};

/// Minimum number of quadrature nodes.
pub const MIN_PACKET_NODES: usize = 256;
/// The envelope is truncated at this many widths from its center.
pub const ENVELOPE_CUTOFF: f64 = 6.0;

/// `g(k) = amplitude·exp(−(k − k0)² / 2σ_k²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianEnvelope {
    pub k0: f64,
    pub sigma_k: f64,
    pub amplitude: f64,
}

impl GaussianEnvelope {
    pub fn new(k0: f64, sigma_k: f64) -> Self {
        GaussianEnvelope { k0, sigma_k, amplitude: 1.0 }
    }

    pub fn eval(&self, k: f64) -> f64 {
        let u = (k - self.k0) / self.sigma_k;
        self.amplitude * (-0.5 * u * u).exp()
    }

    /// `[k0 − 6σ_k, k0 + 6σ_k]`.
    pub fn support(&self) -> (f64, f64) {
        let w = ENVELOPE_CUTOFF * self.sigma_k;
        (self.k0 - w, self.k0 + w)
    }
}

#[derive(Debug, Clone, PartialEq)]
struct PacketNode {
    k: f64,
    /// Quadrature weight times `g(k) / sqrt(2π)`.
    weight: f64,
    energy: f64,
    state: BoundState,
}

/// A packet on one band with its quadrature nodes and bound states
/// precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct WavePacket {
    pub coupling: Coupling,
    pub band: Band,
    pub envelope: GaussianEnvelope,
    nodes: Vec<PacketNode>,
}

impl WavePacket {
    pub fn new(coupling: Coupling, band: Band, envelope: GaussianEnvelope, n_nodes: usize) -> Result<Self> {
        if n_nodes < MIN_PACKET_NODES {
            return Err(Error::InvalidInput("a packet needs at least 256 quadrature nodes"));
        }
        if !(envelope.sigma_k > 0.0) || !envelope.k0.is_finite() {
            return Err(Error::InvalidInput("envelope width must be positive"));
        }
        let (a, b) = envelope.support();
        if !band.domain.iter().any(|iv| iv.lo <= a && b <= iv.hi) {
            // report the end that leaves the component containing k0
            let (z, edge) = match band.domain.iter().find(|iv| iv.contains(envelope.k0)) {
                Some(iv) if a < iv.lo => (a, iv.lo),
                Some(iv) => (b, iv.hi),
                None => (envelope.k0, f64::NAN),
            };
            return Err(Error::DomainError { z, edge });
        }

        let (ks, ws) = gauss_legendre_on(n_nodes, a, b);
        let norm = 1.0 / (2.0 * core::f64::consts::PI).sqrt();
        let mut nodes = Vec::with_capacity(n_nodes);
        for (k, w) in ks.into_iter().zip(ws) {
            let energy = band.eval(k);
            let states = fiber_eigenvalues(&FiberContext::new(coupling, k))?;
            let (_, state) = states
                .into_iter()
                .min_by(|x, y| (x.0 - energy).abs().partial_cmp(&(y.0 - energy).abs()).unwrap())
                .ok_or(Error::NoBoundState)?;
            let residual = (state.energy - energy).abs();
            if residual > 1e-8 * energy.abs().max(1.0) {
                return Err(Error::CheckFailed { what: "band value matches a fiber eigenvalue", residual });
            }
            nodes.push(PacketNode { k, weight: w * envelope.eval(k) * norm, energy, state });
        }
        Ok(WavePacket { coupling, band, envelope, nodes })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn k_range(&self) -> (f64, f64) {
        self.envelope.support()
    }
}

/// `ψ(x, y, t)` by Gauss–Legendre quadrature over the envelope support.
pub fn propagate_packet(p: &WavePacket, x: f64, y: f64, t: f64) -> Spinor {
    let mut acc = [Complex64::new(0.0, 0.0); 2];
    for n in &p.nodes {
        let phase = Complex64::from_polar(n.weight, n.k * y - n.energy * t);
        acc = spinor_add(acc, spinor_scale(n.state.eval(x), phase));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::bands;

    #[test]
    fn rejects_envelope_leaving_the_domain() {
        let c = Coupling::reduced(0.0, 0.0, 1.0, 1.0);
        let b = bands(&c).unwrap().remove(0);
        let err = WavePacket::new(c, b, GaussianEnvelope::new(-1.0, 0.3), 256).unwrap_err();
        assert!(matches!(err, Error::DomainError { .. }));
    }

    #[test]
    fn too_few_nodes() {
        let c = Coupling::reduced(3.0, 2.0, 1.0, 1.0);
        let b = bands(&c).unwrap().remove(0);
        assert!(WavePacket::new(c, b, GaussianEnvelope::new(0.0, 0.3), 64).is_err());
    }

    #[test]
    fn flat_band_packet_is_stationary() {
        let c = Coupling::reduced(2.0, 0.0, 0.0, 1.0);
        let b = bands(&c).unwrap().remove(0);
        let p = WavePacket::new(c, b, GaussianEnvelope::new(0.5, 0.3), 256).unwrap();
        for (x, y) in [(0.1, 0.0), (-0.4, 1.5), (0.8, -2.0)] {
            let a = propagate_packet(&p, x, y, 0.0);
            let b = propagate_packet(&p, x, y, 3.0);
            let na = (a[0].norm_sqr() + a[1].norm_sqr()).sqrt();
            let nb = (b[0].norm_sqr() + b[1].norm_sqr()).sqrt();
            assert!((na - nb).abs() < 1e-12);
        }
    }
}
