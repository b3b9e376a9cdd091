//! Chiral emitters: transition moments, the electric to magnetic moment
//! mapping `m = −ic ξ̿ μ`, reciprocity and isotropic orientation averages.
//!
//! The chirality tensor is written `ξ̿ = s·U` with a real scale `s` and an
//! orthogonal matrix `U`. A further roll by `δ` about the transition moment
//! axis leaves `μ` untouched but rotates the magnetic moment, so the vector
//! that enters all couplings is
//!
//! ```text
//! m / (−ic) = R_μ(δ) · s · U · μ
//! ```

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::fields::{standing_wave_polarization, CavityMode};
use crate::model::{derive_couplings, ModelError};

const STRUCTURE_TOL: f64 = 1e-12;
const RECIPROCITY_TOL: f64 = 1e-10;
const MC_CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmitterError {
    #[error("matter frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),
    #[error("chirality rotation is not orthogonal (|UᵀU − I| = {0:e})")]
    NonOrthogonalRotation(f64),
    #[error("{name} tensor is not symmetric (|A − Aᵀ| = {asymmetry:e})")]
    NonSymmetric { name: &'static str, asymmetry: f64 },
    #[error("roll angle {0} needs a non-zero transition moment as rotation axis")]
    UndefinedRollAxis(f64),
    #[error("at least 100 samples are required, got {0}")]
    TooFewSamples(usize),
    #[error("{0} must be finite")]
    NonFinite(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ReciprocityViolation {
    #[error("chirality scale has imaginary part {0:e}")]
    ImaginaryScale(f64),
    #[error("chirality rotation is not orthogonal (|UᵀU − I| = {0:e})")]
    NonOrthogonal(f64),
}

/// A single two-level chiral emitter. Every emitter of an ensemble is
/// assumed identical.
#[derive(Debug, Clone, PartialEq)]
pub struct Emitter {
    pub omega_m: f64,
    pub mu: Vector3<f64>,
    pub quadrupole: Matrix3<f64>,
    pub xi_scale: f64,
    pub xi_rotation: Matrix3<f64>,
    pub roll_delta: f64,
    pub chi_m: Matrix3<f64>,
}

impl Emitter {
    pub fn builder(omega_m: f64, mu: Vector3<f64>) -> EmitterBuilder {
        EmitterBuilder {
            inner: Emitter {
                omega_m,
                mu,
                quadrupole: Matrix3::zeros(),
                xi_scale: 0.0,
                xi_rotation: Matrix3::identity(),
                roll_delta: 0.0,
                chi_m: Matrix3::zeros(),
            },
        }
    }

    /// Scalar chirality `m = −ic ξ μ`: `U = I`, no roll, `s = ξ`.
    pub fn collinear(omega_m: f64, mu: Vector3<f64>, xi: f64) -> Result<Self, EmitterError> {
        Self::builder(omega_m, mu).xi_scale(xi).build()
    }

    pub fn validate(&self) -> Result<(), EmitterError> {
        if !self.omega_m.is_finite() {
            return Err(EmitterError::NonFinite("omega_m"));
        }
        if self.omega_m <= 0.0 {
            return Err(EmitterError::NonPositiveFrequency(self.omega_m));
        }
        if !self.xi_scale.is_finite() {
            return Err(EmitterError::NonFinite("xi_scale"));
        }
        if !self.roll_delta.is_finite() {
            return Err(EmitterError::NonFinite("roll_delta"));
        }
        for (name, ok) in [
            ("mu", self.mu.iter().all(|v| v.is_finite())),
            ("quadrupole", self.quadrupole.iter().all(|v| v.is_finite())),
            ("xi_rotation", self.xi_rotation.iter().all(|v| v.is_finite())),
            ("chi_m", self.chi_m.iter().all(|v| v.is_finite())),
        ] {
            if !ok {
                return Err(EmitterError::NonFinite(name));
            }
        }
        let defect = orthogonality_defect(&self.xi_rotation);
        if defect > STRUCTURE_TOL {
            return Err(EmitterError::NonOrthogonalRotation(defect));
        }
        for (name, t) in [("quadrupole", &self.quadrupole), ("chi_m", &self.chi_m)] {
            let asymmetry = (t - t.transpose()).norm();
            if asymmetry > STRUCTURE_TOL {
                return Err(EmitterError::NonSymmetric { name, asymmetry });
            }
        }
        if self.roll_delta != 0.0 && self.mu.norm() == 0.0 {
            return Err(EmitterError::UndefinedRollAxis(self.roll_delta));
        }
        Ok(())
    }

    /// Mirror image: the chirality scale changes sign, everything else is
    /// shared by both enantiomers.
    pub fn enantiomer(&self) -> Self {
        Self { xi_scale: -self.xi_scale, ..self.clone() }
    }

    /// The same emitter with chirality scale `s`.
    pub fn with_xi_scale(&self, s: f64) -> Self {
        Self { xi_scale: s, ..self.clone() }
    }

    /// Effective chirality tensor `R_μ(δ)·s·U`.
    pub fn effective_xi_tensor(&self) -> Matrix3<f64> {
        let roll = if self.roll_delta == 0.0 {
            Matrix3::identity()
        } else {
            rotation_about(&self.mu.normalize(), self.roll_delta)
        };
        roll * self.xi_rotation * self.xi_scale
    }
}

pub struct EmitterBuilder {
    inner: Emitter,
}

impl EmitterBuilder {
    pub fn quadrupole(mut self, q: Matrix3<f64>) -> Self {
        self.inner.quadrupole = q;
        self
    }

    pub fn xi_scale(mut self, s: f64) -> Self {
        self.inner.xi_scale = s;
        self
    }

    pub fn xi_rotation(mut self, u: Matrix3<f64>) -> Self {
        self.inner.xi_rotation = u;
        self
    }

    pub fn roll_delta(mut self, delta: f64) -> Self {
        self.inner.roll_delta = delta;
        self
    }

    pub fn chi_m(mut self, chi: Matrix3<f64>) -> Self {
        self.inner.chi_m = chi;
        self
    }

    pub fn build(self) -> Result<Emitter, EmitterError> {
        self.inner.validate()?;
        Ok(self.inner)
    }
}

fn orthogonality_defect(u: &Matrix3<f64>) -> f64 {
    (u.transpose() * u - Matrix3::identity()).norm()
}

/// Rodrigues rotation by `angle` about the unit vector `axis`.
pub fn rotation_about(axis: &Vector3<f64>, angle: f64) -> Matrix3<f64> {
    let (s, c) = angle.sin_cos();
    let k = axis.cross_matrix();
    Matrix3::identity() + k * s + k * k * (1.0 - c)
}

/// `m / (−ic) = R_μ(δ)·s·U·μ`.
pub fn chiral_tdm_vector(e: &Emitter) -> Result<Vector3<f64>, EmitterError> {
    if e.roll_delta != 0.0 && e.mu.norm() == 0.0 {
        return Err(EmitterError::UndefinedRollAxis(e.roll_delta));
    }
    Ok(e.effective_xi_tensor() * e.mu)
}

/// Reciprocal emitters need a real chirality scale and an orthogonal `U`.
pub fn check_reciprocity(xi_scale: Complex64, u: &Matrix3<f64>) -> Result<(), ReciprocityViolation> {
    if xi_scale.im.abs() > RECIPROCITY_TOL {
        return Err(ReciprocityViolation::ImaginaryScale(xi_scale.im.abs()));
    }
    let defect = orthogonality_defect(u);
    if defect > RECIPROCITY_TOL {
        return Err(ReciprocityViolation::NonOrthogonal(defect));
    }
    Ok(())
}

/// `(1 + s²)|μ|² + 2λs μ·Uμ`, the orientation-independent part of the
/// averaged squared coupling. The roll drops out because it rotates about
/// `μ` itself.
pub fn orientation_bracket(e: &Emitter, lambda_sign: f64) -> f64 {
    let s = e.xi_scale;
    let mu2 = e.mu.norm_squared();
    (1.0 + s * s) * mu2 + 2.0 * lambda_sign * s * e.mu.dot(&(e.xi_rotation * e.mu))
}

fn orientation_prefactor(e: &Emitter, mode: &CavityMode, n: u64) -> Result<f64, ModelError> {
    let c = derive_couplings(e, mode, n)?;
    Ok(mode.eta * mode.eta * c.omega_m_tilde * mode.omega_k * mode.omega_k
        / (2.0 * c.omega_k_bar * e.omega_m))
}

/// Isotropic average of the squared collective coupling,
/// `(N/3)·η²ω̃ₘωₖ²/(2ω̄ₖωₘ)·[(1+s²)|μ|² + 2λs μ·Uμ]`.
///
/// The dressed frequencies are those of the emitter in its configured
/// orientation.
pub fn orientation_averaged_coupling_sq(e: &Emitter, mode: &CavityMode, n: u64) -> Result<f64, ModelError> {
    let pre = orientation_prefactor(e, mode, n)?;
    Ok(n as f64 / 3.0 * pre * orientation_bracket(e, mode.lambda.sign()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientationEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: usize,
}

/// Monte-Carlo estimate of [`orientation_averaged_coupling_sq`] over
/// uniformly random rigid rotations of the emitter.
///
/// Draws come in fixed-size chunks, each from its own ChaCha stream keyed by
/// `seed`, so the result is bit-identical for a given seed regardless of
/// how many threads run.
pub fn sample_orientation_coupling(
    e: &Emitter,
    mode: &CavityMode,
    n: u64,
    seed: u64,
    n_samples: usize,
) -> Result<OrientationEstimate, ModelError> {
    if n_samples < 100 {
        return Err(EmitterError::TooFewSamples(n_samples).into());
    }
    let pre = orientation_prefactor(e, mode, n)? * n as f64;
    let eps = standing_wave_polarization(mode)?;
    let lambda = mode.lambda.sign();
    let a = e.mu + chiral_tdm_vector(e)? * lambda;

    let n_chunks = n_samples.div_ceil(MC_CHUNK);
    let partial: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk as u64);
            let len = MC_CHUNK.min(n_samples - chunk * MC_CHUNK);
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for _ in 0..len {
                let q = random_rotation(&mut rng);
                let v = eps.dot(&(q * a));
                let x = pre * v * v;
                sum += x;
                sum_sq += x * x;
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = partial.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));

    let m = n_samples as f64;
    let mean = sum / m;
    let var = ((sum_sq - m * mean * mean) / (m - 1.0)).max(0.0);
    Ok(OrientationEstimate { mean, std_error: (var / m).sqrt(), n_samples })
}

/// Haar-random rotation: polar axis with `cos θ` uniform, azimuth `φ` and a
/// roll `δ` about the new axis, both uniform.
fn random_rotation<R: Rng>(rng: &mut R) -> Matrix3<f64> {
    let cos_t: f64 = rng.random_range(-1.0..1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let delta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
    let (sp, cp) = phi.sin_cos();
    let rz = Matrix3::new(cp, -sp, 0.0, sp, cp, 0.0, 0.0, 0.0, 1.0);
    let ry = Matrix3::new(cos_t, 0.0, sin_t, 0.0, 1.0, 0.0, -sin_t, 0.0, cos_t);
    let q0 = rz * ry;
    let axis = q0 * Vector3::z();
    rotation_about(&axis, delta) * q0
}
