//! Exact diagonalization of the collective chiral Hopfield Hamiltonian in a
//! truncated Fock basis.
//!
//! Basis states are `|n_photon, n_matter⟩` with both occupations in
//! `0..=cutoff`, stored row-major: index `n_photon·(cutoff + 1) + n_matter`.
//!
//! Nothing here uses the closed-form frequencies except as the quantity
//! being checked. The eigenvalues of a quadratic bosonic Hamiltonian form a
//! ladder `E₀ + nΩ₋ + mΩ₊`, and the normal-mode frequencies are read off
//! the lowest gaps.

use faer::{c64, Mat, Side};
use thiserror::Error;

use crate::hopfield::{polariton_frequencies, PolaritonError};
use crate::model::DerivedCouplings;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("Fock cutoff must be at least 4, got {0}")]
    CutoffTooSmall(usize),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("convergence factor must be at least 1, got {0}")]
    InvalidFactor(usize),
    #[error("eigensolver did not converge")]
    EigenSolver,
    #[error(transparent)]
    Analytic(#[from] PolaritonError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockConfig {
    pub cutoff: usize,
    /// Relative tolerance on `Ω±`.
    pub tol: f64,
    /// The convergence check repeats the run at `cutoff · factor`; 1 skips it.
    pub convergence_factor: usize,
}

impl Default for FockConfig {
    fn default() -> Self {
        Self { cutoff: 40, tol: 1e-8, convergence_factor: 2 }
    }
}

impl FockConfig {
    pub fn new(cutoff: usize, tol: f64, convergence_factor: usize) -> Result<Self, OracleError> {
        let c = Self { cutoff, tol, convergence_factor };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if self.cutoff < 4 {
            return Err(OracleError::CutoffTooSmall(self.cutoff));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(OracleError::InvalidTolerance(self.tol));
        }
        if self.convergence_factor < 1 {
            return Err(OracleError::InvalidFactor(self.convergence_factor));
        }
        Ok(())
    }
}

/// Matrix elements `(row, col, value)` of `H` with the coupling written as
///
/// ```text
/// −iG[(1 + r)(B†a − Ba†) + (1 − r)(Ba − B†a†)]
/// ```
fn hamiltonian_terms(c: &DerivedCouplings, cutoff: usize) -> (Vec<f64>, Vec<(usize, usize, c64)>) {
    let dim = cutoff + 1;
    let wk = c.omega_k_bar;
    let wm = c.omega_m_tilde;
    let g = c.collective_coupling();
    let r = c.xi_lambda();
    let idx = |p: usize, m: usize| p * dim + m;
    let sq = |n: usize| (n as f64).sqrt();

    let mut diag = vec![0.0; dim * dim];
    let mut off = Vec::with_capacity(4 * dim * dim);
    for p in 0..dim {
        for m in 0..dim {
            diag[idx(p, m)] = wk * (p as f64 + 0.5) + wm * (m as f64 + 0.5);
            // B†a: |p, m⟩ → √p √(m+1) |p−1, m+1⟩
            if p >= 1 && m < cutoff {
                let v = c64::new(0.0, -g * (1.0 + r) * sq(p) * sq(m + 1));
                off.push((idx(p - 1, m + 1), idx(p, m), v));
                off.push((idx(p, m), idx(p - 1, m + 1), v.conj()));
            }
            // B a: |p, m⟩ → √p √m |p−1, m−1⟩, weight −iG(1 − r)
            if p >= 1 && m >= 1 {
                let v = c64::new(0.0, -g * (1.0 - r) * sq(p) * sq(m));
                off.push((idx(p - 1, m - 1), idx(p, m), v));
                off.push((idx(p, m), idx(p - 1, m - 1), v.conj()));
            }
        }
    }
    (diag, off)
}

/// Dense Hermitian Hamiltonian of dimension `(cutoff + 1)²`.
pub fn build_fock_hamiltonian(c: &DerivedCouplings, config: &FockConfig) -> Mat<c64> {
    let n = (config.cutoff + 1).pow(2);
    let (diag, off) = hamiltonian_terms(c, config.cutoff);
    let mut h = Mat::<c64>::zeros(n, n);
    for (i, d) in diag.into_iter().enumerate() {
        h[(i, i)] = c64::new(d, 0.0);
    }
    for (i, j, v) in off {
        h[(i, j)] += v;
    }
    h
}

/// Sorted real eigenvalues of a Hermitian matrix.
pub fn oracle_spectrum(h: &Mat<c64>) -> Result<Vec<f64>, OracleError> {
    h.self_adjoint_eigenvalues(Side::Lower).map_err(|_| OracleError::EigenSolver)
}

/// Fast path for [`build_fock_hamiltonian`] spectra.
///
/// The coupling only connects states whose total occupation differs by 0 or
/// 2, so parity of `n_photon + n_matter` splits `H` into two blocks. Rephasing
/// each state by `i^{n_photon}` makes both blocks real symmetric.
pub fn fock_spectrum(c: &DerivedCouplings, cutoff: usize) -> Result<Vec<f64>, OracleError> {
    let dim = cutoff + 1;
    let (diag, off) = hamiltonian_terms(c, cutoff);
    let parity = |i: usize| (i / dim + i % dim) % 2;
    let photons = |i: usize| (i / dim) as i64;
    let mut local = vec![0usize; dim * dim];
    let mut sizes = [0usize; 2];
    for (i, slot) in local.iter_mut().enumerate() {
        let p = parity(i);
        *slot = sizes[p];
        sizes[p] += 1;
    }
    let mut blocks = [Mat::<f64>::zeros(sizes[0], sizes[0]), Mat::<f64>::zeros(sizes[1], sizes[1])];
    for (i, d) in diag.iter().enumerate() {
        blocks[parity(i)][(local[i], local[i])] = *d;
    }
    for (i, j, v) in off {
        // H'_ij = i^{n_j − n_i} H_ij
        let phased = match (photons(j) - photons(i)).rem_euclid(4) {
            0 => v,
            1 => v * c64::new(0.0, 1.0),
            2 => -v,
            _ => v * c64::new(0.0, -1.0),
        };
        debug_assert!(phased.im.abs() <= 1e-14 * phased.re.abs().max(1.0));
        debug_assert_eq!(parity(i), parity(j));
        blocks[parity(i)][(local[i], local[j])] += phased.re;
    }
    let mut out = Vec::with_capacity(dim * dim);
    for b in &blocks {
        out.extend(b.self_adjoint_eigenvalues(Side::Lower).map_err(|_| OracleError::EigenSolver)?);
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderFit {
    pub e0: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
    /// Gaps commensurate with `Ω₋` left `Ω₊` undetermined.
    pub ambiguous: bool,
    /// The first two excited levels coincide.
    pub degenerate: bool,
    /// Largest distance of the lowest six levels from the fitted ladder.
    pub residual: f64,
}

/// Reads `Ω±` off the lowest eigenvalues of a quadratic bosonic spectrum.
///
/// `Ω₋ = E₁ − E₀`. Walking up the spectrum, the first gap that is not
/// `nΩ₋` for an integer `n` is `Ω₊`; a multiple of `Ω₋` that shows up twice
/// also has to be `Ω₊`, and is flagged ambiguous.
pub fn identify_ladder(levels: &[f64], tol: f64) -> LadderFit {
    let e0 = levels[0];
    let gaps: Vec<f64> = levels.iter().skip(1).map(|e| e - e0).collect();
    let omega_minus = gaps[0];
    let scale = omega_minus.abs().max(1e-300);
    let close = |a: f64, b: f64| (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-12);

    let degenerate = close(gaps[0], gaps[1]);
    let mut omega_plus = f64::NAN;
    let mut ambiguous = false;
    if degenerate {
        omega_plus = gaps[1];
    } else {
        let mut seen: Vec<u64> = vec![1];
        for &gap in &gaps[1..] {
            let n = (gap / scale).round();
            let commensurate = n >= 1.0 && close(gap, n * omega_minus);
            if !commensurate {
                omega_plus = gap;
                break;
            }
            let n = n as u64;
            if seen.contains(&n) {
                omega_plus = gap;
                ambiguous = true;
                break;
            }
            seen.push(n);
        }
    }

    let residual = if omega_plus.is_finite() {
        levels
            .iter()
            .take(6)
            .map(|&e| {
                let mut best = f64::INFINITY;
                for n in 0..6 {
                    for m in 0..6 {
                        let fit = e0 + n as f64 * omega_minus + m as f64 * omega_plus;
                        best = best.min((e - fit).abs());
                    }
                }
                best
            })
            .fold(0.0, f64::max)
    } else {
        f64::NAN
    };

    LadderFit { e0, omega_plus, omega_minus, ambiguous, degenerate, residual }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub e0: f64,
    pub analytic_omega_plus: f64,
    pub analytic_omega_minus: f64,
    /// `(Ω₊ + Ω₋)/2` from the closed form.
    pub analytic_e_vac: f64,
    /// Relative deviations of the oracle gaps from the closed form.
    pub deviation_plus: f64,
    pub deviation_minus: f64,
    /// `E₀ − (Ω₊ + Ω₋)/2`.
    pub e0_offset: f64,
    /// `None` when the doubling check was skipped.
    pub converged: Option<bool>,
    pub ambiguous: bool,
    pub degenerate: bool,
    pub ladder_residual: f64,
}

impl OracleReport {
    pub fn max_deviation(&self) -> f64 {
        self.deviation_plus.max(self.deviation_minus)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation() <= tol && self.converged != Some(false)
    }
}

/// Diagonalize at `config.cutoff`, identify the ladder and compare with the
/// closed-form frequencies.
pub fn oracle_check(c: &DerivedCouplings, config: &FockConfig) -> Result<OracleReport, OracleError> {
    config.validate()?;
    let (ap, am) = polariton_frequencies(c)?;
    let fit = identify_ladder(&fock_spectrum(c, config.cutoff)?, config.tol);

    let converged = if config.convergence_factor > 1 {
        let refined = identify_ladder(&fock_spectrum(c, config.cutoff * config.convergence_factor)?, config.tol);
        let stable = |a: f64, b: f64| (a - b).abs() <= config.tol * b.abs();
        Some(stable(fit.omega_plus, refined.omega_plus) && stable(fit.omega_minus, refined.omega_minus))
    } else {
        None
    };

    let rel = |x: f64, y: f64| if x.is_finite() { (x - y).abs() / y } else { f64::INFINITY };
    Ok(OracleReport {
        omega_plus: fit.omega_plus,
        omega_minus: fit.omega_minus,
        e0: fit.e0,
        analytic_omega_plus: ap,
        analytic_omega_minus: am,
        analytic_e_vac: 0.5 * (ap + am),
        deviation_plus: rel(fit.omega_plus, ap),
        deviation_minus: rel(fit.omega_minus, am),
        e0_offset: fit.e0 - 0.5 * (ap + am),
        converged,
        ambiguous: fit.ambiguous,
        degenerate: fit.degenerate,
        ladder_residual: fit.residual,
    })
}
