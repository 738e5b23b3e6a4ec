use alloc::vec::Vec;

use num_complex::Complex64;

use super::renormalize::RenormalizedCoupling;
use crate::coupling::Coupling;
use crate::fiber::{matching_roots, FiberContext};
use crate::mat2::{Mat2, SIGMA1};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Shape `h` of the regular potential, scaled as `h_ε(x) = h(x/ε)/ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Profile {
    /// Indicator of `(−1/2, 1/2)`.
    #[default]
    UnitSquare,
}

impl Profile {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            Profile::UnitSquare => {
                if x.abs() < 0.5 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// `∫h`, equal to 1.
    pub fn integral(self) -> f64 {
        match self {
            Profile::UnitSquare => 1.0,
        }
    }
}

/// The fiber operator `H[k] + A·h_ε` with a regular potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizedModel {
    pub renorm: RenormalizedCoupling,
    pub k: f64,
    pub mass: f64,
    pub epsilon: f64,
    pub profile: Profile,
}

/// `B0(z) = iσ1(zσ0 − kσ2 − mσ3) = [[k, i(z + m)], [i(z − m), −k]]`, the
/// generator of the free equation `ψ' = B0 ψ`.
pub fn free_generator(z: Complex64, k: f64, m: f64) -> Mat2 {
    Mat2::new(
        Complex64::new(k, 0.0),
        I * (z + m),
        I * (z - m),
        Complex64::new(-k, 0.0),
    )
}

impl RegularizedModel {
    pub fn new(renorm: RenormalizedCoupling, k: f64, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidInput("epsilon must be positive"));
        }
        Ok(RegularizedModel {
            renorm,
            k,
            mass: renorm.original.mass,
            epsilon,
            profile: Profile::UnitSquare,
        })
    }

    /// Context of the unperturbed fiber, used for the decaying solutions
    /// outside the support of the potential.
    pub fn context(&self) -> FiberContext {
        FiberContext::new(Coupling::reduced(0.0, 0.0, 0.0, self.mass), self.k)
    }

    /// `ε·B0(z) − iσ1A`, the generator across the support of the potential.
    pub fn strip_generator(&self, z: Complex64) -> Mat2 {
        free_generator(z, self.k, self.mass) * self.epsilon - SIGMA1 * self.renorm.a_matrix * I
    }

    /// Transfer matrix `T(z) = exp(ε·B0(z) − iσ1A)` from `x = −ε/2` to `x = ε/2`.
    pub fn transfer_matrix(&self, z: f64) -> Mat2 {
        self.strip_generator(Complex64::new(z, 0.0)).exp_closed()
    }
}

/// Eigenvalues of the regularized fiber operator in the gap, from the
/// matching determinant with connection matrix `T(z)`.
pub fn epsilon_bound_states(model: &RegularizedModel) -> Result<Vec<f64>> {
    matching_roots(&model.context(), |z| model.transfer_matrix(z))
}

/// Eigenvalues of the narrow limit of `H[k] + A·h_ε`: the δ-model whose
/// transmission matrix is `exp(−iσ1A)`.
pub fn limit_eigenvalues(renorm: &RenormalizedCoupling, k: f64) -> Result<Vec<f64>> {
    let lambda = renorm.limit_transmission();
    let ctx = FiberContext::new(Coupling::reduced(0.0, 0.0, 0.0, renorm.original.mass), k);
    matching_roots(&ctx, |_| lambda)
}
