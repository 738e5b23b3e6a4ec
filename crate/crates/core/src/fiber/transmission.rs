use num_complex::Complex64;

use crate::coupling::Coupling;
use crate::mat2::{Mat2, SIGMA1};
use crate::{Error, Result};

/// `Λ = (2iσ1 − M)⁻¹(2iσ1 + M)` and the interaction matrix `M` it comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionMatrix {
    pub lambda_matrix: Mat2,
    pub m_matrix: Mat2,
}

impl TransmissionMatrix {
    pub fn det_modulus(&self) -> f64 {
        self.lambda_matrix.det().norm()
    }
}

pub fn transmission_matrix(c: &Coupling) -> Result<TransmissionMatrix> {
    if c.classify().is_confining {
        return Err(Error::ConfiningRegime);
    }
    let m = c.interaction_matrix();
    let two_i_sigma1 = SIGMA1 * Complex64::new(0.0, 2.0);
    let lambda_matrix = (two_i_sigma1 - m).inverse()? * (two_i_sigma1 + m);
    Ok(TransmissionMatrix { lambda_matrix, m_matrix: m })
}
