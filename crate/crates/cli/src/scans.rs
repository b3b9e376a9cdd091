//! Parameter sweeps. Every scan is a pure function of its [`Config`] and
//! emits rows in grid order.

use chiralpol::hopfield::{discrimination_from_couplings, polariton_frequencies, solve};
use chiralpol::model::{derive_couplings, derive_couplings_with, SelfPolarization};
use chiralpol::oracle::oracle_check;
use chiralpol::tavis_cummings::dispersion_scan;
use chiralpol::{DerivedCouplings, FockConfig, ModelError, OracleError, PolaritonError, TcError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::config::{linspace, Command, Config, ConfigError};
use crate::table::{Cell, ScanTable};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScanError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{context}: {source}")]
    Solver { context: String, source: PolaritonError },
    #[error("{context}: {source}")]
    Oracle { context: String, source: OracleError },
}

fn check_command(config: &Config, expected: Command) {
    assert_eq!(config.command, expected, "configuration resolved for another command");
}

fn model_to_config(err: ModelError) -> ScanError {
    match err {
        ModelError::MagneticInstability { .. } => unreachable!("instabilities are handled per row"),
        other => ConfigError::invalid("emitter", "", other).into(),
    }
}

/// How the chirality axis of the cavity scan is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XiAxis {
    /// Grid values are `ξ̃`, so `ξ̃λ = −1` is exact decoupling.
    Effective,
    /// Grid values are the emitter scale `s`.
    Bare,
}

impl XiAxis {
    fn from_config(config: &Config) -> Result<Self, ConfigError> {
        match config.str("xi_axis") {
            "effective" => Ok(XiAxis::Effective),
            "bare" => Ok(XiAxis::Bare),
            other => Err(ConfigError::invalid("xi_axis", other, "expected `effective` or `bare`")),
        }
    }
}

/// One grid point of the cavity scan.
#[derive(Debug, Clone, PartialEq)]
pub struct CavityPoint {
    pub omega_ratio: f64,
    pub omega_k: f64,
    pub xi: f64,
    pub couplings: Result<DerivedCouplings, ModelError>,
}

/// Grid of the cavity scan: `xi` outer, `omega_k` inner.
pub fn cavity_points(config: &Config) -> Result<Vec<CavityPoint>, ScanError> {
    check_command(config, Command::ScanCavity);
    let axis = XiAxis::from_config(config)?;
    let omega_m = config.f64("omega_m")?;
    let n = config.n_emitters()?;
    let ratios = linspace(config.f64("omega_ratio_min")?, config.f64("omega_ratio_max")?, config.points("omega_ratio_points")?);
    let xis = linspace(config.f64("xi_min")?, config.f64("xi_max")?, config.points("xi_points")?);
    // validates the emitter keys once, before the grid
    config.emitter(0.0)?;

    let mut points = Vec::with_capacity(ratios.len() * xis.len());
    for &xi in &xis {
        let emitter = config.emitter(match axis {
            XiAxis::Effective => 1.0,
            XiAxis::Bare => xi,
        })?;
        for &ratio in &ratios {
            let omega_k = ratio * omega_m;
            let mode = config.mode(omega_k)?;
            let couplings = match derive_couplings(&emitter, &mode, n) {
                Ok(c) if axis == XiAxis::Effective => {
                    Ok(DerivedCouplings { xi_tilde: xi, xi_bar: xi * omega_m / c.omega_m_tilde, ..c })
                }
                Ok(c) => Ok(c),
                Err(e @ ModelError::MagneticInstability { .. }) => Err(e),
                Err(e) => return Err(model_to_config(e)),
            };
            points.push(CavityPoint { omega_ratio: ratio, omega_k, xi, couplings });
        }
    }
    Ok(points)
}

pub const CAVITY_COLUMNS: &[&str] = &[
    "omega_ratio",
    "omega_k",
    "xi",
    "xi_lambda",
    "omega_k_bar",
    "omega_m_tilde",
    "collective_coupling",
    "omega_plus",
    "omega_minus",
    "splitting",
    "photon_fraction_plus",
    "photon_fraction_minus",
    "matter_fraction_plus",
    "matter_fraction_minus",
    "e_vac",
    "degenerate",
    "unstable",
];

/// Polariton map over cavity frequency and chirality.
pub fn scan_cavity(config: &Config) -> Result<ScanTable, ScanError> {
    let mut table = ScanTable::new(config, CAVITY_COLUMNS);
    for p in cavity_points(config)? {
        let head = [Cell::Num(p.omega_ratio), Cell::Num(p.omega_k), Cell::Num(p.xi)];
        let solved = p.couplings.map_err(PolaritonError::from).and_then(|c| solve(&c).map(|s| (c, s)));
        let row = match solved {
            Ok((c, s)) => {
                let mut row = head.to_vec();
                row.extend([
                    Cell::Num(c.xi_lambda()),
                    Cell::Num(c.omega_k_bar),
                    Cell::Num(c.omega_m_tilde),
                    Cell::Num(c.collective_coupling()),
                    Cell::Num(s.omega_plus),
                    Cell::Num(s.omega_minus),
                    Cell::Num(s.splitting()),
                    Cell::Num(s.photon_fraction_plus()),
                    Cell::Num(s.photon_fraction_minus()),
                    Cell::Num(s.matter_fraction_plus()),
                    Cell::Num(s.matter_fraction_minus()),
                    Cell::Num(s.e_vac),
                    Cell::Flag(s.degenerate),
                    Cell::Flag(false),
                ]);
                row
            }
            Err(e) if e.is_instability() => unstable_row(&head, CAVITY_COLUMNS.len()),
            Err(source) => {
                let context = format!("omega_k = {}, xi = {}", p.omega_k, p.xi);
                return Err(ScanError::Solver { context, source });
            }
        };
        table.push(row);
    }
    Ok(table)
}

fn unstable_row(head: &[Cell], width: usize) -> Vec<Cell> {
    let mut row = head.to_vec();
    row.resize(width - 1, Cell::Empty);
    row.push(Cell::Flag(true));
    row
}

pub const N_COLUMNS: &[&str] = &[
    "n",
    "omega_plus",
    "omega_minus",
    "delta_omega_plus",
    "delta_omega_minus",
    "delta_e_vac",
    "slope_omega_plus",
    "slope_omega_minus",
    "slope_e_vac",
    "unstable",
];

/// Ensemble sizes `n_base^k` of the N scan.
pub fn n_grid(config: &Config) -> Result<Vec<u64>, ConfigError> {
    let base = config.u64("n_base")?;
    if base < 2 {
        return Err(ConfigError::invalid("n_base", base, "must be at least 2"));
    }
    let lo: u32 = config.parse("n_exponent_min")?;
    let hi: u32 = config.parse("n_exponent_max")?;
    if hi < lo {
        return Err(ConfigError::invalid("n_exponent_max", hi, "smaller than n_exponent_min"));
    }
    (lo..=hi)
        .map(|k| base.checked_pow(k).ok_or_else(|| ConfigError::invalid("n_exponent_max", hi, "N overflows")))
        .collect()
}

fn self_polarization(config: &Config) -> Result<SelfPolarization, ConfigError> {
    match config.str("model") {
        "full" => Ok(SelfPolarization::Collective),
        "local" => Ok(SelfPolarization::Local),
        other => Err(ConfigError::invalid("model", other, "expected `full` or `local`")),
    }
}

/// Stable couplings at one `N`, or why there are none.
pub type NPoint = Result<DerivedCouplings, PolaritonError>;

/// Couplings of the `+|s|` enantiomer at every `N`; instabilities are kept
/// as errors.
pub fn n_points(config: &Config) -> Result<Vec<(u64, NPoint)>, ScanError> {
    check_command(config, Command::ScanN);
    let selfpol = self_polarization(config)?;
    let emitter = config.emitter(config.f64("xi_scale")?.abs())?;
    let mode = config.mode(config.f64("omega_k")?)?;
    let mut out = Vec::new();
    for n in n_grid(config)? {
        let c = match derive_couplings_with(&emitter, &mode, n, selfpol) {
            Ok(c) => polariton_frequencies(&c).map(|_| c),
            Err(e @ ModelError::MagneticInstability { .. }) => Err(e.into()),
            Err(e) => return Err(model_to_config(e)),
        };
        out.push((n, c));
    }
    Ok(out)
}

fn local_slope(prev: Option<(u64, f64)>, n: u64, value: f64) -> Cell {
    match prev {
        Some((pn, pv)) if pv != 0.0 && value != 0.0 && pn != n => {
            Cell::Num((value.abs() / pv.abs()).ln() / (n as f64 / pn as f64).ln())
        }
        _ => Cell::Empty,
    }
}

/// Enantio-discrimination against ensemble size.
///
/// The slope columns are backward differences of `ln|δ|` against `ln N`
/// between neighbouring rows.
pub fn scan_n(config: &Config) -> Result<ScanTable, ScanError> {
    let mut table = ScanTable::new(config, N_COLUMNS);
    let mut prev: Option<(u64, [f64; 3])> = None;
    for (n, c) in n_points(config)? {
        let solved = c.and_then(|c| {
            let (p, m) = polariton_frequencies(&c)?;
            Ok((p, m, discrimination_from_couplings(&c)?))
        });
        match solved {
            Ok((p, m, d)) => {
                let deltas = [d.delta_omega_plus, d.delta_omega_minus, d.delta_e_vac];
                let mut row = vec![Cell::Int(n), Cell::Num(p), Cell::Num(m)];
                row.extend(deltas.iter().map(|&x| Cell::Num(x)));
                for (i, &x) in deltas.iter().enumerate() {
                    row.push(local_slope(prev.map(|(pn, pd)| (pn, pd[i])), n, x));
                }
                row.push(Cell::Flag(false));
                table.push(row);
                prev = Some((n, deltas));
            }
            Err(e) if e.is_instability() => {
                table.push(unstable_row(&[Cell::Int(n)], N_COLUMNS.len()));
                prev = None;
            }
            Err(source) => return Err(ScanError::Solver { context: format!("n = {n}"), source }),
        }
    }
    Ok(table)
}

/// Least-squares slope of `ln y` against `ln x`. Needs two points with
/// distinct `x`; non-positive values are rejected.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub const DISPERSION_COLUMNS: &[&str] = &[
    "k_parallel",
    "theta",
    "omega_photon",
    "coupling",
    "polariton_upper",
    "polariton_lower",
    "splitting",
    "dark_energy",
];

/// Bright-sector Tavis-Cummings spectrum against in-plane wavenumber.
pub fn scan_dispersion(config: &Config) -> Result<ScanTable, ScanError> {
    check_command(config, Command::ScanDispersion);
    let emitter = config.emitter(config.f64("xi_scale")?)?;
    let mode = config.mode(config.f64("omega_k")?)?;
    let n = config.n_emitters()?;
    let ks = linspace(config.f64("k_par_min")?, config.f64("k_par_max")?, config.points("k_par_points")?);
    let rows = dispersion_scan(&emitter, &mode, n, &ks).map_err(|e| match e {
        TcError::NonFiniteWavenumber(k) => ConfigError::invalid("k_par_max", k, "must be finite"),
        other => ConfigError::invalid("omega_k", mode.omega_k, other),
    })?;
    let mut table = ScanTable::new(config, DISPERSION_COLUMNS);
    for r in rows {
        table.push(vec![
            Cell::Num(r.k_parallel),
            Cell::Num(r.theta),
            Cell::Num(r.omega_photon),
            Cell::Num(r.coupling),
            Cell::Num(r.polariton_upper),
            Cell::Num(r.polariton_lower),
            Cell::Num(r.polariton_upper - r.polariton_lower),
            Cell::Num(r.dark_energy),
        ]);
    }
    Ok(table)
}

pub const ORACLE_COLUMNS: &[&str] = &[
    "index",
    "omega_k_bar",
    "omega_m_tilde",
    "collective_coupling",
    "xi_lambda",
    "analytic_omega_plus",
    "analytic_omega_minus",
    "oracle_omega_plus",
    "oracle_omega_minus",
    "deviation_plus",
    "deviation_minus",
    "e0_offset",
    "ladder_residual",
    "ambiguous",
    "degenerate",
    "converged",
    "pass",
];

/// Random stable parameter sets for the oracle suite, drawn from the
/// configured ranges. Unstable draws are rejected.
pub fn oracle_parameter_sets(config: &Config) -> Result<Vec<DerivedCouplings>, ConfigError> {
    check_command(config, Command::Oracle);
    let sets = config.u64("oracle_sets")? as usize;
    let (w_lo, w_hi) = (config.f64("omega_min")?, config.f64("omega_max")?);
    let frac = config.f64("coupling_max_fraction")?;
    let (r_lo, r_hi) = (config.f64("xi_lambda_min")?, config.f64("xi_lambda_max")?);
    if !(0.0 < w_lo && w_lo < w_hi) {
        return Err(ConfigError::invalid("omega_min", w_lo, "need 0 < omega_min < omega_max"));
    }
    if frac.is_nan() || frac < 0.0 {
        return Err(ConfigError::invalid("coupling_max_fraction", frac, "must be non-negative"));
    }
    if r_hi < r_lo {
        return Err(ConfigError::invalid("xi_lambda_max", r_hi, "smaller than xi_lambda_min"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.u64("seed")?);
    let mut out = Vec::with_capacity(sets);
    let mut attempts = 0usize;
    while out.len() < sets {
        attempts += 1;
        if attempts > 1000 * sets.max(1) {
            return Err(ConfigError::invalid("coupling_max_fraction", frac, "almost every draw is unstable"));
        }
        let wk = rng.random_range(w_lo..=w_hi);
        let wm = rng.random_range(w_lo..=w_hi);
        let g = rng.random_range(0.0..=frac) * wm;
        let r = rng.random_range(r_lo..=r_hi);
        let c = DerivedCouplings::collective(wk, wm, g, r).expect("ranges validated above");
        if polariton_frequencies(&c).is_ok() {
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSuite {
    pub table: ScanTable,
    pub failures: usize,
    pub max_deviation: f64,
}

/// Exact diagonalization of every parameter set from
/// [`oracle_parameter_sets`], compared with the closed form.
pub fn run_oracle_suite(config: &Config) -> Result<OracleSuite, ScanError> {
    let fock = FockConfig::new(config.parse("cutoff")?, config.f64("tol")?, config.parse("convergence_factor")?)
        .map_err(|e| ConfigError::invalid("cutoff", config.str("cutoff"), e))?;
    let mut table = ScanTable::new(config, ORACLE_COLUMNS);
    let mut failures = 0;
    let mut max_deviation: f64 = 0.0;
    let sets = oracle_parameter_sets(config)?;
    let reports: Vec<_> = sets.par_iter().map(|c| oracle_check(c, &fock)).collect();
    for (i, (c, report)) in sets.iter().zip(reports).enumerate() {
        let report = report.map_err(|source| ScanError::Oracle { context: format!("oracle set {i}"), source })?;
        let pass = report.passes(fock.tol);
        failures += usize::from(!pass);
        max_deviation = max_deviation.max(report.max_deviation());
        table.push(vec![
            Cell::Int(i as u64),
            Cell::Num(c.omega_k_bar),
            Cell::Num(c.omega_m_tilde),
            Cell::Num(c.collective_coupling()),
            Cell::Num(c.xi_lambda()),
            Cell::Num(report.analytic_omega_plus),
            Cell::Num(report.analytic_omega_minus),
            Cell::Num(report.omega_plus),
            Cell::Num(report.omega_minus),
            Cell::Num(report.deviation_plus),
            Cell::Num(report.deviation_minus),
            Cell::Num(report.e0_offset),
            Cell::Num(report.ladder_residual),
            Cell::Flag(report.ambiguous),
            Cell::Flag(report.degenerate),
            report.converged.map_or(Cell::Empty, Cell::Flag),
            Cell::Flag(pass),
        ]);
    }
    Ok(OracleSuite { table, failures, max_deviation })
}
