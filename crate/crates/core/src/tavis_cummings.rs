//! Chiral Tavis-Cummings model in the single-excitation subspace.
//!
//! Within the rotating-wave approximation and without self-polarization,
//! each emitter couples to the mode with strength `ḡ(1 + ξ̄λ)`. Only the
//! symmetric collective excitation is bright; it couples with
//! `G = √N ḡ(1 + ξ̄λ)` and the remaining `N − 1` states stay dark at `ωₘ`.

use nalgebra::{DMatrix, Vector3};
use num_complex::Complex64;
use thiserror::Error;

use crate::emitter::{chiral_tdm_vector, Emitter};
use crate::fields::{oblique_polarization, CavityMode, SPEED_OF_LIGHT_AU};
use crate::model::{DerivedCouplings, ModelError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TcError {
    #[error("ensemble must contain at least one emitter")]
    NoEmitters,
    #[error("mode wavenumber k_z = {k_z} does not match ω_k/c for ω_k = {omega_k}")]
    DispersionMismatch { k_z: f64, omega_k: f64 },
    #[error("in-plane wavenumber {0} must be finite")]
    NonFiniteWavenumber(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TcSpectrum {
    pub polariton_upper: f64,
    pub polariton_lower: f64,
    pub dark_energy: f64,
    pub dark_count: u64,
    /// `√N ḡ(1 + ξ̄λ)`.
    pub effective_coupling: f64,
}

impl TcSpectrum {
    pub fn splitting(&self) -> f64 {
        self.polariton_upper - self.polariton_lower
    }

    /// All `N + 1` single-excitation energies in ascending order.
    pub fn energies(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dark_count as usize + 2);
        out.push(self.polariton_lower);
        out.extend(std::iter::repeat_n(self.dark_energy, self.dark_count as usize));
        out.push(self.polariton_upper);
        out.sort_by(f64::total_cmp);
        out
    }
}

fn bright_pair(omega_m: f64, omega_photon: f64, g: f64) -> (f64, f64) {
    let mean = 0.5 * (omega_m + omega_photon);
    let half = (0.5 * (omega_m - omega_photon)).hypot(g);
    (mean + half, mean - half)
}

/// Bright polaritons `(ωₘ + ω̄ₖ)/2 ± √(Δ²/4 + G²)` and `N − 1` dark states.
pub fn single_excitation_spectrum(c: &DerivedCouplings, omega_m: f64, n: u64) -> Result<TcSpectrum, TcError> {
    if n == 0 {
        return Err(TcError::NoEmitters);
    }
    let g = (n as f64).sqrt() * c.g_bar * (1.0 + c.xi_bar_lambda());
    let (upper, lower) = bright_pair(omega_m, c.omega_k_bar, g);
    Ok(TcSpectrum {
        polariton_upper: upper,
        polariton_lower: lower,
        dark_energy: omega_m,
        dark_count: n - 1,
        effective_coupling: g,
    })
}

/// Full `(N + 1) × (N + 1)` single-excitation Hamiltonian. Index 0 is the
/// one-photon state, index `j ≥ 1` has emitter `j` excited; the couplings
/// are `H[j][0] = −iḡ(1 + ξ̄λ)`.
pub fn single_excitation_matrix(c: &DerivedCouplings, omega_m: f64, n: u64) -> DMatrix<Complex64> {
    let n = n as usize;
    let g = Complex64::new(0.0, -c.g_bar * (1.0 + c.xi_bar_lambda()));
    let mut h = DMatrix::from_diagonal_element(n + 1, n + 1, Complex64::new(omega_m, 0.0));
    h[(0, 0)] = Complex64::new(c.omega_k_bar, 0.0);
    for j in 1..=n {
        h[(j, 0)] = g;
        h[(0, j)] = g.conj();
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionRow {
    pub k_parallel: f64,
    /// Photon frequency `c√(k_z² + k∥²)`.
    pub omega_photon: f64,
    pub theta: f64,
    /// Magnitude of the complex collective coupling of this sector.
    pub coupling: f64,
    pub polariton_upper: f64,
    pub polariton_lower: f64,
    pub dark_energy: f64,
}

/// One bright-sector spectrum per in-plane wavenumber.
///
/// Emitters sit on a regular lattice in the plane at height `mode.z`, so
/// momentum conservation keeps the sectors independent. Each sector uses
/// the oblique polarization at the emitter plane, the same fundamental
/// coupling `η` and the bare emitter frequency; the quadrupole and
/// self-magnetization are not included.
pub fn dispersion_scan(e: &Emitter, mode: &CavityMode, n: u64, k_par_list: &[f64]) -> Result<Vec<DispersionRow>, TcError> {
    if n == 0 {
        return Err(TcError::NoEmitters);
    }
    e.validate().map_err(ModelError::from)?;
    let k_z = mode.k_z;
    if (SPEED_OF_LIGHT_AU * k_z - mode.omega_k).abs() > 1e-9 * mode.omega_k {
        return Err(TcError::DispersionMismatch { k_z, omega_k: mode.omega_k });
    }
    let lambda = mode.lambda.sign();
    let moment: Vector3<Complex64> = (e.mu + chiral_tdm_vector(e).map_err(ModelError::from)? * lambda).map(|v| v.into());
    let prefactor = (n as f64).sqrt() * mode.eta;

    k_par_list
        .iter()
        .map(|&k_par| {
            if !k_par.is_finite() {
                return Err(TcError::NonFiniteWavenumber(k_par));
            }
            let k = k_z.hypot(k_par);
            let omega = SPEED_OF_LIGHT_AU * k;
            let theta = k_par.atan2(k_z);
            let eps = oblique_polarization(mode.lambda, k, theta, mode.z, 0.0);
            let g = prefactor * (omega / 2.0).sqrt() * eps.dot(&moment).norm();
            let (upper, lower) = bright_pair(e.omega_m, omega, g);
            Ok(DispersionRow {
                k_parallel: k_par,
                omega_photon: omega,
                theta,
                coupling: g,
                polariton_upper: upper,
                polariton_lower: lower,
                dark_energy: e.omega_m,
            })
        })
        .collect()
}
