//! Mode functions of a single-handedness chiral standing wave.
//!
//! A chiral standing wave is the superposition of two counter-propagating
//! circularly polarized plane waves of the same helicity `λ`. For a vertical
//! mode (`k ∥ ẑ`) the electric polarization at height `z` is
//!
//! ```text
//! ε̃(z) = (cos k_z z, −λ sin k_z z, 0)
//! ```
//!
//! which has unit length everywhere and satisfies `∇ × ε̃ = λ k_z ε̃`. The
//! left- and right-handed profiles are orthogonal only after averaging over
//! a wavelength.
//!
//! Everything here is in atomic units with `ħ = 1`. The mode volume never
//! appears on its own: it enters only through the fundamental coupling
//! `η = √(1/ε₀V)`.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use thiserror::Error;

/// Speed of light in atomic units.
///
/// Only the dispersion of oblique modes needs it; the coupled light-matter
/// formulas are written in terms of `ω_k`, `k_z` and `η` and are free of `c`.
pub const SPEED_OF_LIGHT_AU: f64 = 137.035999;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("handedness must be +1 or -1, got {0}")]
    InvalidHandedness(f64),
    #[error("photon frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),
    #[error("fundamental coupling must be non-negative, got {0}")]
    NegativeCoupling(f64),
    #[error("incidence angle must lie in [0, π/2), got {0}")]
    InvalidIncidence(f64),
    #[error("mode has non-zero incidence angle {0}; use the oblique variant")]
    ObliqueMode(f64),
    #[error("{0} must be finite")]
    NonFinite(&'static str),
}

/// Helicity of the cavity field; `Left` is `λ = +1`, `Right` is `λ = −1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Handedness {
    Left,
    Right,
}

impl Handedness {
    pub fn from_sign(sign: f64) -> Result<Self, FieldError> {
        if sign == 1.0 {
            Ok(Handedness::Left)
        } else if sign == -1.0 {
            Ok(Handedness::Right)
        } else {
            Err(FieldError::InvalidHandedness(sign))
        }
    }

    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Handedness::Left => 1.0,
            Handedness::Right => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Handedness::Left => Handedness::Right,
            Handedness::Right => Handedness::Left,
        }
    }
}

/// A single chiral standing-wave mode of the cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityMode {
    pub lambda: Handedness,
    /// Bare photon frequency `ω_k`.
    pub omega_k: f64,
    /// Fundamental coupling `η = √(1/ε₀V)`.
    pub eta: f64,
    /// Vertical wavenumber of the standing wave. For a vertical mode this is
    /// `ω_k / c`; for an oblique mode the total wavenumber is
    /// `k_z / cos θ`.
    pub k_z: f64,
    /// Emitter height inside the cavity.
    pub z: f64,
    /// Incidence angle `θ` of an oblique mode, zero for the vertical mode.
    pub theta_inc: f64,
}

impl CavityMode {
    pub fn new(
        lambda: Handedness,
        omega_k: f64,
        eta: f64,
        k_z: f64,
        z: f64,
        theta_inc: f64,
    ) -> Result<Self, FieldError> {
        for (name, v) in [
            ("omega_k", omega_k),
            ("eta", eta),
            ("k_z", k_z),
            ("z", z),
            ("theta_inc", theta_inc),
        ] {
            if !v.is_finite() {
                return Err(FieldError::NonFinite(name));
            }
        }
        if omega_k <= 0.0 {
            return Err(FieldError::NonPositiveFrequency(omega_k));
        }
        if eta < 0.0 {
            return Err(FieldError::NegativeCoupling(eta));
        }
        if !(0.0..std::f64::consts::FRAC_PI_2).contains(&theta_inc) {
            return Err(FieldError::InvalidIncidence(theta_inc));
        }
        Ok(Self { lambda, omega_k, eta, k_z, z, theta_inc })
    }

    /// Vertical mode whose wavenumber follows from the vacuum dispersion,
    /// `k_z = ω_k / c`.
    pub fn vertical(lambda: Handedness, omega_k: f64, eta: f64, z: f64) -> Result<Self, FieldError> {
        Self::new(lambda, omega_k, eta, omega_k / SPEED_OF_LIGHT_AU, z, 0.0)
    }

    pub fn is_vertical(&self) -> bool {
        self.theta_inc == 0.0
    }

    /// Total wavenumber `|k|`.
    pub fn wavenumber(&self) -> f64 {
        self.k_z / self.theta_inc.cos()
    }

    /// In-plane wavenumber `k_x = |k| sin θ`.
    pub fn k_parallel(&self) -> f64 {
        self.wavenumber() * self.theta_inc.sin()
    }

    /// Same mode with the opposite helicity.
    pub fn with_handedness(mut self, lambda: Handedness) -> Self {
        self.lambda = lambda;
        self
    }

    fn require_vertical(&self) -> Result<(), FieldError> {
        if self.is_vertical() {
            Ok(())
        } else {
            Err(FieldError::ObliqueMode(self.theta_inc))
        }
    }
}

/// `ε̃(z) = (cos k_z z, −λ sin k_z z, 0)` for the vertical mode.
pub fn standing_wave_polarization(mode: &CavityMode) -> Result<Vector3<f64>, FieldError> {
    mode.require_vertical()?;
    Ok(vertical_polarization(mode.lambda, mode.k_z, mode.z))
}

pub(crate) fn vertical_polarization(lambda: Handedness, k_z: f64, z: f64) -> Vector3<f64> {
    let (s, c) = (k_z * z).sin_cos();
    Vector3::new(c, -lambda.sign() * s, 0.0)
}

/// Polarization of the standing wave with in-plane momentum along `x`.
///
/// `k` is the total wavenumber and `theta` the incidence angle, so that
/// `k_x = k sin θ` and `k_z = k cos θ`:
///
/// ```text
/// ε̃(x, z) = (cos θ cos k_z z, −λ sin k_z z, −i sin θ sin k_z z) · e^{i k_x x}
/// ```
///
/// No range check is applied to `theta`; see
/// [`standing_wave_polarization_oblique`] for the validated mode version.
pub fn oblique_polarization(
    lambda: Handedness,
    k: f64,
    theta: f64,
    z: f64,
    x: f64,
) -> Vector3<Complex64> {
    let (sin_t, cos_t) = theta.sin_cos();
    let k_z = k * cos_t;
    let k_x = k * sin_t;
    let (s, c) = (k_z * z).sin_cos();
    let phase = Complex64::from_polar(1.0, k_x * x);
    Vector3::new(
        Complex64::new(cos_t * c, 0.0) * phase,
        Complex64::new(-lambda.sign() * s, 0.0) * phase,
        Complex64::new(0.0, -sin_t * s) * phase,
    )
}

/// Oblique polarization of `mode` at in-plane position `x`.
pub fn standing_wave_polarization_oblique(mode: &CavityMode, x: f64) -> Vector3<Complex64> {
    oblique_polarization(mode.lambda, mode.wavenumber(), mode.theta_inc, mode.z, x)
}

/// Gradient `G[a][b] = ∂_a ε̃_b` of the vertical polarization. Only the
/// `a = z` row is populated:
/// `k_z · (−sin k_z z, −λ cos k_z z, 0)`.
///
/// The quadrupole coupling is the contraction `Σ_ab Q_ab G[a][b]`.
pub fn polarization_gradient(mode: &CavityMode) -> Result<Matrix3<f64>, FieldError> {
    mode.require_vertical()?;
    let (s, c) = (mode.k_z * mode.z).sin_cos();
    let mut grad = Matrix3::zeros();
    grad[(2, 0)] = -mode.k_z * s;
    grad[(2, 1)] = -mode.lambda.sign() * mode.k_z * c;
    Ok(grad)
}

/// Optical chirality density of the empty chiral mode, `λ ω_k k η² / 4`.
///
/// The physical density is `λ ħ ω_k k / 4V`; since only `η² = 1/ε₀V` is
/// carried around, the value returned is that density multiplied by `ε₀`
/// (equivalently, expressed per unit `1/ε₀V`). It is a pseudoscalar: the
/// sign follows the helicity and it vanishes as `η → 0`.
pub fn optical_chirality_density(mode: &CavityMode) -> f64 {
    mode.lambda.sign() * mode.omega_k * mode.wavenumber() * mode.eta * mode.eta / 4.0
}
