//! Numerical special-function layer: complex gamma, the G-function family
//! and its residues, the kernel constants (K_wl, J_I, C*, k_adj,
//! |c3|^{-2}), the completed Whittaker function by Mellin-Barnes
//! quadrature, and Stade's identity as a verifiable check.

mod checks;
mod gamma;
mod gfun;
mod kernels;
mod whittaker;

pub use checks::{
    beta_integral_check, stade_check, whittaker_mellin_roundtrip, GridSpec, IdentityCheck,
    StadeQuad,
};
pub use gamma::{gamma_c, lgamma_c, recip_gamma};
pub use gfun::{
    big_lambda, g_fn, g_star, g_star_residue_double, g_star_residue_left, g_star_residue_right,
};
pub use kernels::{c3_inv_sq, c_star, j_i, k_adj, k_wl};
pub use whittaker::{whittaker, ContourSpec, WhittakerEvaluator};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticError {
    #[error("gamma pole in factor `{factor}` at argument {at}")]
    GammaPole { at: Complex64, factor: String },
    #[error("contour Re(u) = {real_part} too close to a pole: need Re(u) > {required_gt}")]
    ContourTooClose { real_part: f64, required_gt: f64 },
    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

/// Langlands parameters (mu1, mu2, mu3) with mu3 = -mu1 - mu2 derived,
/// never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    mu1: Complex64,
    mu2: Complex64,
}

impl SpectralPoint {
    pub fn new(mu1: Complex64, mu2: Complex64) -> Self {
        SpectralPoint { mu1, mu2 }
    }

    /// Tempered point (i t1, i t2, -i(t1 + t2)).
    pub fn tempered(t1: f64, t2: f64) -> Self {
        SpectralPoint::new(Complex64::new(0.0, t1), Complex64::new(0.0, t2))
    }

    pub fn zero() -> Self {
        SpectralPoint::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn mu1(&self) -> Complex64 {
        self.mu1
    }

    pub fn mu2(&self) -> Complex64 {
        self.mu2
    }

    pub fn mu3(&self) -> Complex64 {
        -self.mu1 - self.mu2
    }

    pub fn triple(&self) -> [Complex64; 3] {
        [self.mu1, self.mu2, self.mu3()]
    }

    /// All six coordinate permutations.
    pub fn permutations(&self) -> [SpectralPoint; 6] {
        let [a, b, c] = self.triple();
        [
            SpectralPoint::new(a, b),
            SpectralPoint::new(a, c),
            SpectralPoint::new(b, a),
            SpectralPoint::new(b, c),
            SpectralPoint::new(c, a),
            SpectralPoint::new(c, b),
        ]
    }

    /// Pairwise differences (mu1 - mu2, mu1 - mu3, mu2 - mu3).
    pub fn diffs(&self) -> [Complex64; 3] {
        let [a, b, c] = self.triple();
        [a - b, a - c, b - c]
    }

    pub fn max_re(&self) -> f64 {
        self.triple().iter().map(|m| m.re).fold(f64::MIN, f64::max)
    }

    pub fn min_re(&self) -> f64 {
        self.triple().iter().map(|m| m.re).fold(f64::MAX, f64::min)
    }
}

/// The Mellin variables (u1, u2) of the G-function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinPoint {
    pub u1: Complex64,
    pub u2: Complex64,
}

impl MellinPoint {
    pub fn new(u1: Complex64, u2: Complex64) -> Self {
        MellinPoint { u1, u2 }
    }

    pub fn real(u1: f64, u2: f64) -> Self {
        MellinPoint::new(Complex64::new(u1, 0.0), Complex64::new(u2, 0.0))
    }
}

/// The shift parameter Delta > 0 (applied at s = 1 + Delta in Stade's
/// formula); constrained to (0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaParam {
    delta: f64,
}

impl DeltaParam {
    pub fn new(delta: f64) -> Result<Self, AnalyticError> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(AnalyticError::InvalidParam(format!(
                "delta must lie in (0, 1], got {delta}"
            )));
        }
        Ok(DeltaParam { delta })
    }

    pub fn get(&self) -> f64 {
        self.delta
    }
}

impl Default for DeltaParam {
    /// Default Delta = 0.1; the theory only requires Delta > 0.
    fn default() -> Self {
        DeltaParam { delta: 0.1 }
    }
}
