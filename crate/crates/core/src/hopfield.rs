//! Analytic chiral Hopfield solver.
//!
//! With the collective coupling `G = √N g̃` and `r = ξ̃λ` the bright
//! sector is the quadratic Hamiltonian
//!
//! ```text
//! H = ω̃ₘ(B†B + ½) + ω̄ₖ(a†a + ½) − iG[(B† + B)(a − a†) + r(B† − B)(a + a†)]
//! ```
//!
//! whose normal-mode frequencies satisfy
//!
//! ```text
//! Ω±² = ½{ω̄ₖ² + ω̃ₘ² + 8rG² ± √[(ω̄ₖ² − ω̃ₘ²)² + 16G²(ω̄ₖ + ω̃ₘr)(ω̄ₖr + ω̃ₘ)]}
//! Ω₊²Ω₋² = (ω̄ₖω̃ₘ − 4G²)(ω̄ₖω̃ₘ − 4r²G²)
//! ```
//!
//! `H` is bounded below exactly when both factors of the product are
//! positive; otherwise the solver reports an instability.
//!
//! Polariton operators `Π = x a + y a† + z B + u B†` obey `[H, Π] = −ΩΠ`,
//! normalized so that `[Π, Π†] = |x|² − |y|² + |z|² − |u|² = 1`.

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use thiserror::Error;

use crate::emitter::Emitter;
use crate::fields::CavityMode;
use crate::model::{derive_couplings, derive_couplings_with, DerivedCouplings, ModelError, SelfPolarization};

const ROOT_TOL: f64 = 1e-9;
const DEGENERACY_TOL: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolaritonError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("complex polariton frequencies: radicand {0:e} < 0")]
    NegativeRadicand(f64),
    #[error("lower polariton branch unstable: Ω₋² = {0:e}")]
    LowerBranchUnstable(f64),
    #[error("Hamiltonian unbounded below (ω̄ω̃ − 4G² = {f1:e}, ω̄ω̃ − 4r²G² = {f2:e})")]
    Unbounded { f1: f64, f2: f64 },
    #[error("Ω = {omega} is not a polariton frequency (nearest {nearest})")]
    NotARoot { omega: f64, nearest: f64 },
    #[error("Hopfield coefficient solve failed (residual {residual:e})")]
    NumericalFailure { residual: f64 },
}

impl PolaritonError {
    pub fn is_instability(&self) -> bool {
        matches!(
            self,
            PolaritonError::NegativeRadicand(_)
                | PolaritonError::LowerBranchUnstable(_)
                | PolaritonError::Unbounded { .. }
                | PolaritonError::Model(ModelError::MagneticInstability { .. })
        )
    }
}

/// Coefficients of `Π = x a + y a† + z B + u B†`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopfieldVector {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
    pub u: Complex64,
}

impl HopfieldVector {
    fn from_vector(v: &Vector4<Complex64>) -> Self {
        Self { x: v[0], y: v[1], z: v[2], u: v[3] }
    }

    pub fn as_vector(&self) -> Vector4<Complex64> {
        Vector4::new(self.x, self.y, self.z, self.u)
    }

    /// `|x|² − |y|²`.
    pub fn photon_fraction(&self) -> f64 {
        self.x.norm_sqr() - self.y.norm_sqr()
    }

    /// `|z|² − |u|²`.
    pub fn matter_fraction(&self) -> f64 {
        self.z.norm_sqr() - self.u.norm_sqr()
    }

    /// `|x|² − |y|² + |z|² − |u|²`, equal to 1 for a normalized vector.
    pub fn symplectic_norm(&self) -> f64 {
        self.photon_fraction() + self.matter_fraction()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coefficients {
    Single(HopfieldVector),
    /// `Ω₊ = Ω₋`: a normalized pair spanning the two-dimensional solution
    /// space, chosen so that the photon fractions are extremal.
    Degenerate([HopfieldVector; 2]),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolaritonSolution {
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub coeffs_plus: HopfieldVector,
    pub coeffs_minus: HopfieldVector,
    pub degenerate: bool,
    pub e_vac: f64,
}

impl PolaritonSolution {
    pub fn photon_fraction_plus(&self) -> f64 {
        self.coeffs_plus.photon_fraction()
    }

    pub fn photon_fraction_minus(&self) -> f64 {
        self.coeffs_minus.photon_fraction()
    }

    pub fn matter_fraction_plus(&self) -> f64 {
        self.coeffs_plus.matter_fraction()
    }

    pub fn matter_fraction_minus(&self) -> f64 {
        self.coeffs_minus.matter_fraction()
    }

    pub fn splitting(&self) -> f64 {
        self.omega_plus - self.omega_minus
    }
}

/// Enantio-discrimination: differences between the `ξ > 0` and `ξ < 0`
/// partners with everything else fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discrimination {
    pub delta_omega_plus: f64,
    pub delta_omega_minus: f64,
    pub delta_e_vac: f64,
}

struct Invariants {
    wk: f64,
    wm: f64,
    g2: f64,
    r: f64,
}

impl Invariants {
    fn of(c: &DerivedCouplings) -> Self {
        let g = c.collective_coupling();
        Self { wk: c.omega_k_bar, wm: c.omega_m_tilde, g2: g * g, r: c.xi_lambda() }
    }

    fn radicand(&self, r: f64) -> f64 {
        let Self { wk, wm, g2, .. } = *self;
        let d = wk * wk - wm * wm;
        d * d + 16.0 * g2 * (wk + wm * r) * (wk * r + wm)
    }

    fn product_factors(&self) -> (f64, f64) {
        let Self { wk, wm, g2, r } = *self;
        (wk * wm - 4.0 * g2, wk * wm - 4.0 * r * r * g2)
    }

    /// `(Ω₊, Ω₋, √D)` at chirality `r`.
    fn frequencies(&self, r: f64) -> Result<(f64, f64, f64), PolaritonError> {
        let (f1, f2) = self.product_factors();
        let product = f1 * f2;
        let s = self.wk * self.wk + self.wm * self.wm + 8.0 * r * self.g2;
        let rad = self.radicand(r);
        if f1 <= 0.0 && f2 <= 0.0 {
            return Err(PolaritonError::Unbounded { f1, f2 });
        }
        if rad < 0.0 {
            // rounding noise around an exact degeneracy
            if rad >= -1e-14 * s * s {
                return self.finish(s, 0.0, product);
            }
            return Err(PolaritonError::NegativeRadicand(rad));
        }
        let sqrt_d = rad.sqrt();
        if product <= 0.0 {
            let plus_sq = 0.5 * (s + sqrt_d);
            let minus_sq = if plus_sq > 0.0 { product / plus_sq } else { 0.5 * (s - sqrt_d) };
            return Err(PolaritonError::LowerBranchUnstable(minus_sq));
        }
        self.finish(s, sqrt_d, product)
    }

    fn finish(&self, s: f64, sqrt_d: f64, product: f64) -> Result<(f64, f64, f64), PolaritonError> {
        let plus_sq = 0.5 * (s + sqrt_d);
        if plus_sq <= 0.0 {
            return Err(PolaritonError::LowerBranchUnstable(plus_sq));
        }
        let minus_sq = product / plus_sq;
        Ok((plus_sq.sqrt(), minus_sq.sqrt().min(plus_sq.sqrt()), sqrt_d))
    }
}

/// `(Ω₊, Ω₋)` with `Ω₊ ≥ Ω₋ > 0`.
///
/// `Ω₋` comes from the product `Ω₊²Ω₋²` rather than the difference of
/// the two terms, which keeps it accurate deep in the ultrastrong regime.
pub fn polariton_frequencies(c: &DerivedCouplings) -> Result<(f64, f64), PolaritonError> {
    let (p, m, _) = Invariants::of(c).frequencies(c.xi_lambda())?;
    Ok((p, m))
}

/// The matrix `M(Ω) = D − Ω·I`, where `D` represents `[H, ·]` on
/// `(x, y, z, u)`.
///
/// Annihilation-type polariton operators satisfy `M(−Ω)·v = 0`; the
/// positive roots of `det M` give creation-type partners with negative
/// symplectic norm.
pub fn hopfield_matrix(c: &DerivedCouplings, omega: f64) -> Matrix4<Complex64> {
    let Invariants { wk, wm, g2, r } = Invariants::of(c);
    let g = g2.sqrt();
    let i = Complex64::i();
    let a = i * g * (1.0 + r);
    let b = i * g * (1.0 - r);
    let re = |v: f64| Complex64::new(v, 0.0);
    Matrix4::new(
        re(-wk - omega), re(0.0), a, -b,
        re(0.0), re(wk - omega), -b, a,
        -a, -b, re(-wm - omega), re(0.0),
        -b, -a, re(0.0), re(wm - omega),
    )
}

const METRIC: [f64; 4] = [1.0, -1.0, 1.0, -1.0];

fn metric_product(a: &Vector4<Complex64>, b: &Vector4<Complex64>) -> Complex64 {
    (0..4).map(|k| a[k].conj() * b[k] * METRIC[k]).sum()
}

/// Rotate the global phase so the first non-negligible coefficient (in the
/// order x, y, z, u) is real and positive.
fn fix_phase(v: &mut Vector4<Complex64>) {
    let scale = v.norm();
    if let Some(k) = (0..4).find(|&k| v[k].norm() > 1e-12 * scale) {
        let phase = v[k].conj() / v[k].norm();
        *v *= phase;
        v[k] = Complex64::new(v[k].re, 0.0);
    }
}

fn residual(m: &Matrix4<Complex64>, v: &Vector4<Complex64>) -> Result<f64, PolaritonError> {
    let res = (m * v).norm();
    if res.is_nan() || res > RESIDUAL_TOL * (1.0 + m.norm() * v.norm()) {
        return Err(PolaritonError::NumericalFailure { residual: res });
    }
    Ok(res)
}

/// Right singular vectors of `m`, ordered by ascending singular value.
fn null_directions(m: &Matrix4<Complex64>) -> Result<Vec<Vector4<Complex64>>, PolaritonError> {
    let svd = m.svd(false, true);
    let v_t = svd.v_t.ok_or(PolaritonError::NumericalFailure { residual: f64::NAN })?;
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    Ok(order.into_iter().map(|i| v_t.row(i).adjoint()).collect())
}

fn single_vector(m: &Matrix4<Complex64>) -> Result<HopfieldVector, PolaritonError> {
    let mut v = null_directions(m)?[0];
    let n = metric_product(&v, &v).re;
    if n.is_nan() || n <= 0.0 {
        return Err(PolaritonError::NumericalFailure { residual: n });
    }
    v /= Complex64::new(n.sqrt(), 0.0);
    fix_phase(&mut v);
    residual(m, &v)?;
    Ok(HopfieldVector::from_vector(&v))
}

fn degenerate_pair(m: &Matrix4<Complex64>) -> Result<[HopfieldVector; 2], PolaritonError> {
    let dirs = null_directions(m)?;
    let basis = [dirs[0], dirs[1]];
    let photon = |a: &Vector4<Complex64>, b: &Vector4<Complex64>| a[0].conj() * b[0] - a[1].conj() * b[1];
    let gram = Matrix2::from_fn(|i, j| metric_product(&basis[i], &basis[j]));
    let proj = Matrix2::from_fn(|i, j| photon(&basis[i], &basis[j]));
    let chol = gram.cholesky().ok_or(PolaritonError::NumericalFailure { residual: f64::NAN })?;
    let l_inv = chol.l().try_inverse().ok_or(PolaritonError::NumericalFailure { residual: f64::NAN })?;
    let reduced = l_inv * proj * l_inv.adjoint();
    let reduced = (reduced + reduced.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = reduced.symmetric_eigen();
    let mut order = [0usize, 1];
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let mut out = [HopfieldVector::from_vector(&Vector4::zeros()); 2];
    for (slot, &k) in order.iter().enumerate() {
        let coef = l_inv.adjoint() * eig.eigenvectors.column(k);
        let mut v = basis[0] * coef[0] + basis[1] * coef[1];
        let n = metric_product(&v, &v).re;
        v /= Complex64::new(n.sqrt(), 0.0);
        fix_phase(&mut v);
        residual(m, &v)?;
        out[slot] = HopfieldVector::from_vector(&v);
    }
    Ok(out)
}

/// Hopfield coefficients of the polariton at frequency `omega`, which must
/// be one of the roots returned by [`polariton_frequencies`] (within a
/// relative `1e−9`).
///
/// The coefficient vector is the smallest singular direction of
/// `M(−Ω)`, normalized to unit symplectic norm, with the phase fixed so that
/// `x` is real and non-negative (falling back to `y`, `z`, `u` when `x`
/// vanishes).
pub fn hopfield_coefficients(c: &DerivedCouplings, omega: f64) -> Result<Coefficients, PolaritonError> {
    let (plus, minus) = polariton_frequencies(c)?;
    let nearest = if (omega - plus).abs() <= (omega - minus).abs() { plus } else { minus };
    if (omega - nearest).abs() > ROOT_TOL * nearest.max(1.0) {
        return Err(PolaritonError::NotARoot { omega, nearest });
    }
    let m = hopfield_matrix(c, -nearest);
    if is_degenerate(plus, minus) {
        Ok(Coefficients::Degenerate(degenerate_pair(&m)?))
    } else {
        Ok(Coefficients::Single(single_vector(&m)?))
    }
}

fn is_degenerate(plus: f64, minus: f64) -> bool {
    plus - minus <= DEGENERACY_TOL * plus
}

/// Frequencies, coefficients and vacuum energy in one go.
///
/// At an exact degeneracy the pair from the two-dimensional solution space
/// is split by photon fraction: the more photon-like vector is reported as
/// the upper branch.
pub fn solve(c: &DerivedCouplings) -> Result<PolaritonSolution, PolaritonError> {
    let (plus, minus) = polariton_frequencies(c)?;
    let degenerate = is_degenerate(plus, minus);
    let (coeffs_plus, coeffs_minus) = if degenerate {
        let [a, b] = degenerate_pair(&hopfield_matrix(c, -plus))?;
        (a, b)
    } else {
        (
            single_vector(&hopfield_matrix(c, -plus))?,
            single_vector(&hopfield_matrix(c, -minus))?,
        )
    };
    Ok(PolaritonSolution {
        omega_plus: plus,
        omega_minus: minus,
        coeffs_plus,
        coeffs_minus,
        degenerate,
        e_vac: 0.5 * (plus + minus),
    })
}

/// `E_vac = (Ω₊ + Ω₋)/2`, the zero-point energy of the two polariton modes.
pub fn vacuum_energy(solution: &PolaritonSolution) -> f64 {
    0.5 * (solution.omega_plus + solution.omega_minus)
}

/// Discrimination between the couplings `c` and their mirror partner:
/// `δX = X(ξ̃λ) − X(−ξ̃λ)`.
///
/// The differences are evaluated in closed form, without subtracting two
/// nearly equal frequencies, so they stay accurate when `ξ̃` is tiny.
pub fn discrimination_from_couplings(c: &DerivedCouplings) -> Result<Discrimination, PolaritonError> {
    let inv = Invariants::of(c);
    let r = inv.r;
    let (pp, pm, dp) = inv.frequencies(r)?;
    let (mp, mm, dm) = inv.frequencies(-r)?;
    let Invariants { wk, wm, g2, .. } = inv;

    let (f1, f2) = inv.product_factors();
    let a = wk * wk + wm * wm + 2.0 * (f1 * f2).sqrt();
    let chiral = 8.0 * r * g2;
    let delta_e_vac = chiral / ((a + chiral).sqrt() + (a - chiral).max(0.0).sqrt());

    let sqrt_d_diff = if dp + dm > 0.0 { 32.0 * g2 * r * (wk * wk + wm * wm) / (dp + dm) } else { 0.0 };
    let delta_omega_plus = 0.5 * (16.0 * r * g2 + sqrt_d_diff) / (pp + mp);
    let delta_omega_minus = 0.5 * (16.0 * r * g2 - sqrt_d_diff) / (pm + mm);

    Ok(Discrimination { delta_omega_plus, delta_omega_minus, delta_e_vac })
}

/// Discrimination of an emitter against its enantiomer, `ξ = +|s|` minus
/// `ξ = −|s|`.
pub fn discrimination(e: &Emitter, mode: &CavityMode, n: u64) -> Result<Discrimination, PolaritonError> {
    let c = derive_couplings(&e.with_xi_scale(e.xi_scale.abs()), mode, n)?;
    discrimination_from_couplings(&c)
}

/// Polariton frequencies when each emitter is dressed only by its own
/// self-polarization.
pub fn polariton_frequencies_local_selfpol(e: &Emitter, mode: &CavityMode, n: u64) -> Result<(f64, f64), PolaritonError> {
    let c = derive_couplings_with(e, mode, n, SelfPolarization::Local)?;
    polariton_frequencies(&c)
}

/// Smallest `N ≤ n_max` at which the locally dressed model turns unstable,
/// or `None` if it is stable up to `n_max`.
///
/// The search bisects on the stability boundary and therefore assumes a
/// single crossing, which holds whenever `χᵐ = 0`.
pub fn critical_n_local_selfpol(e: &Emitter, mode: &CavityMode, n_max: u64) -> Result<Option<u64>, PolaritonError> {
    let unstable = |n: u64| -> Result<bool, PolaritonError> {
        match polariton_frequencies_local_selfpol(e, mode, n) {
            Ok(_) => Ok(false),
            Err(err) if err.is_instability() => Ok(true),
            Err(err) => Err(err),
        }
    };
    if !unstable(n_max)? {
        return Ok(None);
    }
    if unstable(1)? {
        return Ok(Some(1));
    }
    let (mut lo, mut hi) = (1u64, n_max);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if unstable(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn coll(wk: f64, wm: f64, g: f64, r: f64) -> DerivedCouplings {
        DerivedCouplings::collective(wk, wm, g, r).unwrap()
    }

    #[test]
    fn uncoupled_limit() {
        let (p, m) = polariton_frequencies(&coll(1.3, 0.7, 0.0, 0.4)).unwrap();
        assert_eq!((p, m), (1.3, 0.7));
        let (p, m) = polariton_frequencies(&coll(0.6, 0.9, 0.0, -1.0)).unwrap();
        assert_abs_diff_eq!(p, 0.9, epsilon = 1e-15);
        assert_abs_diff_eq!(m, 0.6, epsilon = 1e-15);
    }

    #[test]
    fn chiral_resonance() {
        let (p, m) = polariton_frequencies(&coll(1.0, 1.0, 0.1, 1.0)).unwrap();
        assert_abs_diff_eq!(p, 1.2, epsilon = 1e-12);
        assert_abs_diff_eq!(m, 0.8, epsilon = 1e-12);
    }

    #[test]
    fn achiral_resonance() {
        let (p, m) = polariton_frequencies(&coll(1.0, 1.0, 0.1, 0.0)).unwrap();
        assert_abs_diff_eq!(p, 1.095_445_115_010_332_2, epsilon = 1e-14);
        assert_abs_diff_eq!(m, 0.894_427_190_999_915_9, epsilon = 1e-14);
    }

    #[test]
    fn mismatched_resonance_closes_gap() {
        let (p, m) = polariton_frequencies(&coll(1.0, 1.0, 0.1, -1.0)).unwrap();
        assert_abs_diff_eq!(p, 0.979_795_897_113_271_2, epsilon = 1e-14);
        assert!((p - m).abs() <= 1e-12);
    }

    #[test]
    fn instability_is_reported() {
        let err = polariton_frequencies(&coll(1.0, 1.0, 0.6, 0.0)).unwrap_err();
        assert!(matches!(err, PolaritonError::LowerBranchUnstable(v) if v < 0.0), "{err:?}");
        let err = polariton_frequencies(&coll(1.0, 1.0, 0.6, 1.0)).unwrap_err();
        assert!(matches!(err, PolaritonError::Unbounded { .. }), "{err:?}");
        assert!(err.is_instability());
    }

    #[test]
    fn bare_coefficients() {
        let c = coll(1.3, 0.7, 0.0, 0.0);
        let Coefficients::Single(v) = hopfield_coefficients(&c, 1.3).unwrap() else { panic!() };
        assert_abs_diff_eq!(v.x.re, 1.0, epsilon = 1e-14);
        assert!(v.y.norm() + v.z.norm() + v.u.norm() < 1e-14);
        let Coefficients::Single(v) = hopfield_coefficients(&c, 0.7).unwrap() else { panic!() };
        assert_abs_diff_eq!(v.z.re, 1.0, epsilon = 1e-14);
        assert!(v.x.norm() + v.y.norm() + v.u.norm() < 1e-14);
    }

    #[test]
    fn not_a_root() {
        let c = coll(1.0, 1.0, 0.1, 0.3);
        assert!(matches!(hopfield_coefficients(&c, 1.0), Err(PolaritonError::NotARoot { .. })));
    }

    #[test]
    fn weak_resonant_mixing_is_even() {
        let s = solve(&coll(1.0, 1.0, 0.01, 0.0)).unwrap();
        assert!((s.photon_fraction_plus() - 0.5).abs() < 1e-3);
        assert!((s.photon_fraction_minus() - 0.5).abs() < 1e-3);
    }

    #[test]
    fn rwa_exact_at_matched_chirality() {
        let s = solve(&coll(1.0, 1.0, 0.1, 1.0)).unwrap();
        assert_abs_diff_eq!(s.photon_fraction_plus(), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(s.photon_fraction_minus(), 0.5, epsilon = 1e-14);
        assert!(s.coeffs_plus.y.norm() < 1e-14 && s.coeffs_plus.u.norm() < 1e-14);
    }

    #[test]
    fn degenerate_pair_is_normalized() {
        let c = coll(1.0, 1.0, 0.1, -1.0);
        let Coefficients::Degenerate(pair) = hopfield_coefficients(&c, 0.979_795_897_113_271_2).unwrap() else {
            panic!("expected degeneracy")
        };
        for v in pair {
            assert_abs_diff_eq!(v.symplectic_norm(), 1.0, epsilon = 1e-10);
        }
        let cross = metric_product(&pair[0].as_vector(), &pair[1].as_vector());
        assert!(cross.norm() < 1e-10);
        let s = solve(&c).unwrap();
        assert!(s.degenerate);
        assert!(s.photon_fraction_plus() >= s.photon_fraction_minus());
    }

    #[test]
    fn residual_and_normalization() {
        let c = coll(1.2, 0.8, 0.15, -0.4);
        let s = solve(&c).unwrap();
        for (w, v) in [(s.omega_plus, s.coeffs_plus), (s.omega_minus, s.coeffs_minus)] {
            let res = (hopfield_matrix(&c, -w) * v.as_vector()).norm();
            assert!(res < 1e-12, "{res}");
            assert_abs_diff_eq!(v.symplectic_norm(), 1.0, epsilon = 1e-12);
            assert!(v.x.im == 0.0 && v.x.re >= 0.0);
        }
    }

    #[test]
    fn discrimination_matches_direct_difference() {
        let c = coll(1.1, 0.9, 0.2, 0.35);
        let d = discrimination_from_couplings(&c).unwrap();
        let (pp, pm) = polariton_frequencies(&c).unwrap();
        let (mp, mm) = polariton_frequencies(&c.enantiomer()).unwrap();
        assert_abs_diff_eq!(d.delta_omega_plus, pp - mp, epsilon = 1e-14);
        assert_abs_diff_eq!(d.delta_omega_minus, pm - mm, epsilon = 1e-14);
        assert_abs_diff_eq!(d.delta_e_vac, 0.5 * (pp + pm - mp - mm), epsilon = 1e-14);
    }

    #[test]
    fn discrimination_vanishes_without_chirality() {
        let d = discrimination_from_couplings(&coll(1.0, 0.9, 0.1, 0.0)).unwrap();
        assert_eq!((d.delta_omega_plus, d.delta_omega_minus, d.delta_e_vac), (0.0, 0.0, 0.0));
    }
}
