//! Dressed frequencies and effective couplings.
//!
//! The coupled Hamiltonian only ever sees four numbers: the dressed photon
//! frequency `ω̄ₖ`, the dressed matter frequency `ω̃ₘ`, the effective
//! coupling `g̃` and the effective chirality `ξ̃`. This module reduces an
//! [`Emitter`] in a [`CavityMode`] to those numbers.
//!
//! With `P = μ·ε̃ + Σ_ab Q_ab ∂_a ε̃_b` and the ensemble of `N` identical
//! emitters:
//!
//! ```text
//! ω̄ₖ² = ωₖ² + 2N (ε̃ᵀχᵐε̃) k_z² η²
//! ω̃ₘ² = ωₘ² + 2N ωₘ η² (ε̃·μ)²
//! g̃   = √(ω̄ₖ ωₘ η² / 2ω̃ₘ) · P
//! ξ̃   = (ω̃ₘ ωₖ / ωₘ ω̄ₖ) · (ε̃·ξ̿μ) / P
//! ```
//!
//! The speed of light cancels: the self-magnetization term is usually
//! written `ωₖ²·2Nχ/(c²ε₀V)`, which is `2Nχ k² η²`.

use nalgebra::Vector3;
use thiserror::Error;

use crate::emitter::{chiral_tdm_vector, Emitter, EmitterError};
use crate::fields::{polarization_gradient, standing_wave_polarization, CavityMode, FieldError, Handedness};

/// Relative size below which `P` counts as zero.
const DECOUPLED_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Emitter(#[from] EmitterError),
    #[error("magnetic instability: ω̄ₖ² = {radicand:e} ≤ 0 (ε̃ᵀχᵐε̃ = {contraction:e})")]
    MagneticInstability { radicand: f64, contraction: f64 },
    #[error("ensemble must contain at least one emitter")]
    NoEmitters,
    #[error("invalid coupling parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
}

/// How the transverse self-polarization dresses the matter frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelfPolarization {
    /// Collective dressing, `ω̃ₘ² = ωₘ² + 2Nωₘη²(ε̃·μ)²`.
    #[default]
    Collective,
    /// Each emitter sees only its own self-polarization, so the factor `N`
    /// is missing. This variant becomes unstable at large `N`.
    Local,
}

/// Effective parameters of the collective light-matter Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedCouplings {
    pub omega_k_bar: f64,
    pub omega_m_tilde: f64,
    pub g_tilde: f64,
    pub xi_tilde: f64,
    pub g_bar: f64,
    pub xi_bar: f64,
    pub n_emitters: u64,
    pub lambda: Handedness,
    /// `P` vanished, so `g̃ = ḡ = 0` and the chirality factors are set to 0.
    pub decoupled: bool,
}

impl DerivedCouplings {
    /// Couplings given directly in effective form. The TC pair `(ḡ, ξ̄)` is
    /// set equal to `(g̃, ξ̃)`; use [`DerivedCouplings::with_tc`] to change it.
    pub fn effective(
        omega_k_bar: f64,
        omega_m_tilde: f64,
        g_tilde: f64,
        xi_tilde: f64,
        n_emitters: u64,
        lambda: Handedness,
    ) -> Result<Self, ModelError> {
        for (name, value) in [("omega_k_bar", omega_k_bar), ("omega_m_tilde", omega_m_tilde)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(ModelError::InvalidParameter { name, value });
            }
        }
        for (name, value) in [("g_tilde", g_tilde), ("xi_tilde", xi_tilde)] {
            if !value.is_finite() {
                return Err(ModelError::InvalidParameter { name, value });
            }
        }
        if n_emitters == 0 {
            return Err(ModelError::NoEmitters);
        }
        Ok(Self {
            omega_k_bar,
            omega_m_tilde,
            g_tilde,
            xi_tilde,
            g_bar: g_tilde,
            xi_bar: xi_tilde,
            n_emitters,
            lambda,
            decoupled: g_tilde == 0.0,
        })
    }

    /// Single-emitter couplings parameterized by the collective coupling
    /// `√N g̃` and the product `ξ̃λ`.
    pub fn collective(omega_k_bar: f64, omega_m_tilde: f64, collective_g: f64, xi_lambda: f64) -> Result<Self, ModelError> {
        Self::effective(omega_k_bar, omega_m_tilde, collective_g, xi_lambda, 1, Handedness::Left)
    }

    pub fn with_tc(mut self, g_bar: f64, xi_bar: f64) -> Self {
        self.g_bar = g_bar;
        self.xi_bar = xi_bar;
        self
    }

    /// `√N g̃`.
    pub fn collective_coupling(&self) -> f64 {
        (self.n_emitters as f64).sqrt() * self.g_tilde
    }

    /// `ξ̃λ`, the only combination of chirality and helicity the Hopfield
    /// spectrum depends on.
    pub fn xi_lambda(&self) -> f64 {
        self.xi_tilde * self.lambda.sign()
    }

    /// `ξ̄λ` for the Tavis-Cummings model.
    pub fn xi_bar_lambda(&self) -> f64 {
        self.xi_bar * self.lambda.sign()
    }

    /// Mirror partner: flips `ξ̃` and `ξ̄`.
    pub fn enantiomer(&self) -> Self {
        Self { xi_tilde: -self.xi_tilde, xi_bar: -self.xi_bar, ..*self }
    }
}

/// `ω̄ₖ = √(ωₖ² + 2N (ε̃ᵀχᵐε̃) k_z² η²)`.
pub fn dressed_photon_frequency(chi_m: &nalgebra::Matrix3<f64>, mode: &CavityMode, n: u64) -> Result<f64, ModelError> {
    let eps = standing_wave_polarization(mode)?;
    dressed_photon_from_eps(chi_m, &eps, mode, n)
}

fn dressed_photon_from_eps(
    chi_m: &nalgebra::Matrix3<f64>,
    eps: &Vector3<f64>,
    mode: &CavityMode,
    n: u64,
) -> Result<f64, ModelError> {
    let contraction = eps.dot(&(chi_m * eps));
    if contraction == 0.0 {
        return Ok(mode.omega_k);
    }
    let radicand = mode.omega_k * mode.omega_k + 2.0 * n as f64 * contraction * (mode.k_z * mode.eta).powi(2);
    if radicand <= 0.0 || !radicand.is_finite() {
        return Err(ModelError::MagneticInstability { radicand, contraction });
    }
    Ok(radicand.sqrt())
}

pub fn derive_couplings(e: &Emitter, mode: &CavityMode, n: u64) -> Result<DerivedCouplings, ModelError> {
    derive_couplings_with(e, mode, n, SelfPolarization::Collective)
}

pub fn derive_couplings_with(
    e: &Emitter,
    mode: &CavityMode,
    n: u64,
    selfpol: SelfPolarization,
) -> Result<DerivedCouplings, ModelError> {
    if n == 0 {
        return Err(ModelError::NoEmitters);
    }
    e.validate()?;
    let eps = standing_wave_polarization(mode)?;
    let grad = polarization_gradient(mode)?;
    let eta2 = mode.eta * mode.eta;
    let nf = n as f64;

    let omega_k_bar = dressed_photon_from_eps(&e.chi_m, &eps, mode, n)?;

    let mu_eps = e.mu.dot(&eps);
    let dressing = match selfpol {
        SelfPolarization::Collective => nf,
        SelfPolarization::Local => 1.0,
    };
    let omega_m_tilde_sq = e.omega_m * e.omega_m + 2.0 * dressing * e.omega_m * eta2 * mu_eps * mu_eps;
    assert!(omega_m_tilde_sq > 0.0, "dressed matter frequency is a sum of squares");
    let omega_m_tilde = omega_m_tilde_sq.sqrt();

    let quad = e.quadrupole.component_mul(&grad).sum();
    let p = mu_eps + quad;
    let scale = e.mu.norm() + e.quadrupole.norm() * mode.k_z.abs();
    let decoupled = p.abs() <= DECOUPLED_TOL * scale || scale == 0.0;

    let (g_tilde, xi_tilde, g_bar, xi_bar) = if decoupled {
        (0.0, 0.0, 0.0, 0.0)
    } else {
        let chiral = eps.dot(&chiral_tdm_vector(e)?) / p;
        let g_tilde = (omega_k_bar * e.omega_m * eta2 / (2.0 * omega_m_tilde)).sqrt() * p;
        let xi_tilde = omega_m_tilde * mode.omega_k / (e.omega_m * omega_k_bar) * chiral;
        let g_bar = (omega_k_bar * eta2 / 2.0).sqrt() * p;
        let xi_bar = mode.omega_k / omega_k_bar * chiral;
        (g_tilde, xi_tilde, g_bar, xi_bar)
    };

    Ok(DerivedCouplings {
        omega_k_bar,
        omega_m_tilde,
        g_tilde,
        xi_tilde,
        g_bar,
        xi_bar,
        n_emitters: n,
        lambda: mode.lambda,
        decoupled,
    })
}
