//! Spectrum of the full two-dimensional operator assembled from the energy
//! bands of its fibers.
//!
//! Non-constant analytic bands contribute absolutely continuous spectrum,
//! constant bands contribute eigenvalues of infinite multiplicity, and the
//! singular continuous part is empty.

mod assemble;
mod intervals;
mod packet;
mod special;

pub use assemble::{
    assemble_spectrum, band_range, group_velocity, predicted_point_spectrum, CaseTag,
    PointEigenvalue, SpectrumDescription,
};
pub use intervals::{Interval, IntervalSet, MERGE_TOL};
pub use packet::{propagate_packet, GaussianEnvelope, WavePacket, ENVELOPE_CUTOFF, MIN_PACKET_NODES};
pub use special::{special_case_bands, special_case_table, SpecialFamily};
