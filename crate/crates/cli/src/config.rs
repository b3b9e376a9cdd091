//! Flat `key = value` configuration.
//!
//! One key per line, `#` starts a comment, lists are comma separated. A CSV
//! written by this tool is also a valid configuration: when the first line
//! is the `# chiralpol <command>` banner, the `# key = value` metadata lines
//! are read back and the data rows are ignored.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use chiralpol::{CavityMode, Emitter, EmitterError, FieldError, Handedness};
use nalgebra::{Matrix3, Vector3};
use thiserror::Error;

pub const BANNER: &str = "# chiralpol";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{0}` given twice")]
    Duplicate(String),
    #[error("invalid value for `{key}`: {value:?} ({reason})")]
    InvalidValue { key: String, value: String, reason: String },
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
}

impl ConfigError {
    pub fn invalid(key: &str, value: impl fmt::Display, reason: impl fmt::Display) -> Self {
        ConfigError::InvalidValue { key: key.to_string(), value: value.to_string(), reason: reason.to_string() }
    }
}

/// A documented configuration key with its default value.
#[derive(Debug, Clone, Copy)]
pub struct KeySpec {
    pub name: &'static str,
    pub default: &'static str,
    pub doc: &'static str,
}

const fn key(name: &'static str, default: &'static str, doc: &'static str) -> KeySpec {
    KeySpec { name, default, doc }
}

/// Emitter and cavity keys shared by the scan commands.
///
/// The default emitter (`omega_m = 0.1`, `|mu| = 4`) is a placeholder dye,
/// not a measured molecule.
pub const COMMON_KEYS: &[KeySpec] = &[
    key("lambda", "1", "cavity helicity, +1 or -1"),
    key("omega_m", "0.1", "matter transition frequency (hartree)"),
    key("mu", "4, 0, 0", "electric transition dipole (e·bohr)"),
    key("quadrupole", "0, 0, 0, 0, 0, 0, 0, 0, 0", "symmetric quadrupole tensor, row-major (e·bohr²)"),
    key("xi_rotation", "1, 0, 0, 0, 1, 0, 0, 0, 1", "orthogonal chirality rotation U, row-major"),
    key("roll_delta", "0", "roll of the magnetic moment about mu (rad)"),
    key("chi_m", "0, 0, 0, 0, 0, 0, 0, 0, 0", "symmetric self-magnetization tensor, row-major (a.u.)"),
    key("eta", "0.001", "fundamental coupling sqrt(1/eps0 V) (a.u.)"),
    key("n", "100", "number of emitters"),
    key("z", "0", "emitter height in the cavity (bohr)"),
];

pub const SEED_KEY: &[KeySpec] = &[key("seed", "1", "random seed; only the oracle command draws random numbers")];

pub const CAVITY_KEYS: &[KeySpec] = &[
    key("omega_ratio_min", "0.8", "smallest omega_k / omega_m"),
    key("omega_ratio_max", "1.2", "largest omega_k / omega_m"),
    key("omega_ratio_points", "401", "number of cavity frequencies"),
    key("xi_min", "-1", "smallest chirality factor"),
    key("xi_max", "1", "largest chirality factor"),
    key("xi_points", "41", "number of chirality factors"),
    key("xi_axis", "effective", "`effective`: grid values are the dressed chirality; `bare`: the emitter scale s"),
];

pub const N_KEYS: &[KeySpec] = &[
    key("omega_k", "0.1", "cavity frequency (hartree)"),
    key("xi_scale", "3.712e-5", "chirality scale s; discrimination compares +|s| with -|s|"),
    key("n_base", "2", "N grid is n_base^k"),
    key("n_exponent_min", "0", "smallest exponent k"),
    key("n_exponent_max", "20", "largest exponent k"),
    key("model", "full", "`full` (collective self-polarization) or `local`"),
];

pub const DISPERSION_KEYS: &[KeySpec] = &[
    key("omega_k", "0.1", "frequency of the normal-incidence mode (hartree)"),
    key("xi_scale", "1", "chirality scale s"),
    key("k_par_min", "0", "smallest in-plane wavenumber (1/bohr)"),
    key("k_par_max", "0.0015", "largest in-plane wavenumber (1/bohr)"),
    key("k_par_points", "101", "number of in-plane wavenumbers"),
];

pub const ORACLE_KEYS: &[KeySpec] = &[
    key("oracle_sets", "200", "number of random parameter sets"),
    key("cutoff", "40", "Fock cutoff per mode"),
    key("tol", "1e-7", "relative tolerance on the polariton frequencies"),
    key("convergence_factor", "1", "repeat each run at cutoff × factor; 1 skips the check"),
    key("omega_min", "0.5", "smallest dressed frequency drawn"),
    key("omega_max", "2", "largest dressed frequency drawn"),
    key("coupling_max_fraction", "0.3", "collective coupling is drawn below this fraction of omega_m_tilde"),
    key("xi_lambda_min", "-1", "smallest xi_tilde·lambda drawn"),
    key("xi_lambda_max", "1", "largest xi_tilde·lambda drawn"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    ScanCavity,
    ScanN,
    ScanDispersion,
    Oracle,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::ScanCavity => "scan-cavity",
            Command::ScanN => "scan-n",
            Command::ScanDispersion => "scan-dispersion",
            Command::Oracle => "oracle",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Command::ScanCavity, Command::ScanN, Command::ScanDispersion, Command::Oracle]
            .into_iter()
            .find(|c| c.name() == name)
    }

    pub fn keys(self) -> impl Iterator<Item = &'static KeySpec> {
        let (shared, own) = match self {
            Command::ScanCavity => (COMMON_KEYS, CAVITY_KEYS),
            Command::ScanN => (COMMON_KEYS, N_KEYS),
            Command::ScanDispersion => (COMMON_KEYS, DISPERSION_KEYS),
            Command::Oracle => (&[][..], ORACLE_KEYS),
        };
        shared.iter().chain(SEED_KEY).chain(own)
    }
}

/// Raw key/value pairs in file order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    pub entries: Vec<(String, String)>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let metadata = text.lines().next().is_some_and(|l| l.starts_with(BANNER));
        let mut entries: Vec<(String, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = if metadata {
                if i == 0 {
                    continue;
                }
                match raw.strip_prefix('#') {
                    Some(rest) => rest,
                    None => continue,
                }
            } else {
                raw.split('#').next().unwrap_or("")
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = parse_pair(line).ok_or_else(|| ConfigError::Syntax { line: i + 1, text: raw.to_string() })?;
            if entries.iter().any(|(e, _)| *e == k) {
                return Err(ConfigError::Duplicate(k));
            }
            entries.push((k, v));
        }
        Ok(Self { entries })
    }

    pub fn read(path: &str) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io { path: path.to_string(), reason: e.to_string() })?;
        Self::parse(&text)
    }

    /// Apply a `key=value` override; later settings win.
    pub fn set(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let (k, v) = parse_pair(assignment).ok_or_else(|| ConfigError::Syntax { line: 0, text: assignment.to_string() })?;
        self.insert(k, v);
        Ok(())
    }

    pub fn insert(&mut self, k: String, v: String) {
        match self.entries.iter_mut().find(|(e, _)| *e == k) {
            Some(slot) => slot.1 = v,
            None => self.entries.push((k, v)),
        }
    }
}

fn parse_pair(line: &str) -> Option<(String, String)> {
    let (k, v) = line.split_once('=')?;
    let k = k.trim();
    if k.is_empty() || k.contains(char::is_whitespace) {
        return None;
    }
    Some((k.to_string(), v.trim().to_string()))
}

/// Every key of a command with defaults filled in, in documented order.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub command: Command,
    values: BTreeMap<&'static str, String>,
}

impl Config {
    pub fn resolve(command: Command, raw: &RawConfig) -> Result<Self, ConfigError> {
        let mut values: BTreeMap<&'static str, String> = command.keys().map(|k| (k.name, k.default.to_string())).collect();
        for (k, v) in &raw.entries {
            let spec = command.keys().find(|s| s.name == k).ok_or_else(|| ConfigError::UnknownKey(k.clone()))?;
            values.insert(spec.name, v.clone());
        }
        Ok(Self { command, values })
    }

    pub fn defaults(command: Command) -> Self {
        Self::resolve(command, &RawConfig::default()).expect("defaults are valid keys")
    }

    /// Same configuration with one value replaced.
    pub fn with(&self, key: &str, value: impl fmt::Display) -> Result<Self, ConfigError> {
        let mut raw = self.to_raw();
        raw.insert(key.to_string(), value.to_string());
        Self::resolve(self.command, &raw)
    }

    pub fn to_raw(&self) -> RawConfig {
        RawConfig { entries: self.pairs().map(|(k, v)| (k.to_string(), v.to_string())).collect() }
    }

    /// Key/value pairs in documented order.
    pub fn pairs(&self) -> impl Iterator<Item = (&'static str, &str)> {
        self.command.keys().map(|s| (s.name, self.values[s.name].as_str()))
    }

    pub fn str(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).unwrap_or_else(|| panic!("`{key}` is not a key of {}", self.command.name()))
    }

    pub fn parse<T: FromStr>(&self, key: &str) -> Result<T, ConfigError>
    where
        T::Err: fmt::Display,
    {
        let v = self.str(key);
        v.parse::<T>().map_err(|e| ConfigError::invalid(key, v, e))
    }

    pub fn f64(&self, key: &str) -> Result<f64, ConfigError> {
        let v: f64 = self.parse(key)?;
        if !v.is_finite() {
            return Err(ConfigError::invalid(key, v, "must be finite"));
        }
        Ok(v)
    }

    pub fn u64(&self, key: &str) -> Result<u64, ConfigError> {
        self.parse(key)
    }

    pub fn list(&self, key: &str) -> Result<Vec<f64>, ConfigError> {
        let v = self.str(key);
        v.split(',')
            .map(|item| {
                let item = item.trim();
                match item.parse::<f64>() {
                    Ok(x) if x.is_finite() => Ok(x),
                    Ok(_) => Err(ConfigError::invalid(key, v, "entries must be finite")),
                    Err(e) => Err(ConfigError::invalid(key, v, e)),
                }
            })
            .collect()
    }

    pub fn vec3(&self, key: &str) -> Result<Vector3<f64>, ConfigError> {
        let l = self.list(key)?;
        if l.len() != 3 {
            return Err(ConfigError::invalid(key, self.str(key), "expected 3 comma-separated numbers"));
        }
        Ok(Vector3::from_column_slice(&l))
    }

    pub fn matrix3(&self, key: &str) -> Result<Matrix3<f64>, ConfigError> {
        let l = self.list(key)?;
        if l.len() != 9 {
            return Err(ConfigError::invalid(key, self.str(key), "expected 9 comma-separated numbers (row-major)"));
        }
        Ok(Matrix3::from_row_slice(&l))
    }

    pub fn handedness(&self) -> Result<Handedness, ConfigError> {
        Handedness::from_sign(self.f64("lambda")?).map_err(|e| ConfigError::invalid("lambda", self.str("lambda"), e))
    }

    /// Number of grid points, at least 1 (and at least 2 if the range is
    /// not a single value).
    pub fn points(&self, key: &str) -> Result<usize, ConfigError> {
        let n: usize = self.parse(key)?;
        if n == 0 {
            return Err(ConfigError::invalid(key, n, "must be at least 1"));
        }
        Ok(n)
    }

    /// Emitter with chirality scale `xi_scale`.
    pub fn emitter(&self, xi_scale: f64) -> Result<Emitter, ConfigError> {
        let e = Emitter::builder(self.f64("omega_m")?, self.vec3("mu")?)
            .quadrupole(self.matrix3("quadrupole")?)
            .xi_rotation(self.matrix3("xi_rotation")?)
            .roll_delta(self.f64("roll_delta")?)
            .chi_m(self.matrix3("chi_m")?)
            .xi_scale(xi_scale)
            .build();
        e.map_err(|err| {
            let key = match &err {
                EmitterError::NonPositiveFrequency(_) => "omega_m",
                EmitterError::NonOrthogonalRotation(_) => "xi_rotation",
                EmitterError::NonSymmetric { name, .. } => name,
                EmitterError::UndefinedRollAxis(_) => "roll_delta",
                EmitterError::NonFinite(name) => name,
                EmitterError::TooFewSamples(_) => "samples",
            };
            ConfigError::invalid(key, self.values.get(key).map(String::as_str).unwrap_or(""), err)
        })
    }

    /// Vertical mode at `omega_k` with `k_z = omega_k / c`.
    pub fn mode(&self, omega_k: f64) -> Result<CavityMode, ConfigError> {
        let lambda = self.handedness()?;
        let eta = self.f64("eta")?;
        let z = self.f64("z")?;
        CavityMode::vertical(lambda, omega_k, eta, z).map_err(|err| match err {
            FieldError::NegativeCoupling(_) => ConfigError::invalid("eta", eta, err),
            FieldError::NonFinite("z") => ConfigError::invalid("z", z, err),
            other => ConfigError::invalid("omega_k", omega_k, other),
        })
    }

    pub fn n_emitters(&self) -> Result<u64, ConfigError> {
        let n = self.u64("n")?;
        if n == 0 {
            return Err(ConfigError::invalid("n", n, "must be at least 1"));
        }
        Ok(n)
    }
}

/// `points` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(|i| if i == points - 1 { hi } else { lo + i as f64 * step }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_lists() {
        let raw = RawConfig::parse("# header\nmu = 1, 2 ,3  # trailing\n\n eta=0.002\n").unwrap();
        let c = Config::resolve(Command::ScanCavity, &raw).unwrap();
        assert_eq!(c.vec3("mu").unwrap(), Vector3::new(1.0, 2.0, 3.0));
        assert_eq!(c.f64("eta").unwrap(), 0.002);
        assert_eq!(c.f64("omega_m").unwrap(), 0.1);
    }

    #[test]
    fn errors_name_the_key() {
        let raw = RawConfig::parse("bogus = 1").unwrap();
        assert_eq!(Config::resolve(Command::ScanN, &raw), Err(ConfigError::UnknownKey("bogus".into())));

        let raw = RawConfig::parse("eta = abc").unwrap();
        let err = Config::resolve(Command::ScanN, &raw).unwrap().f64("eta").unwrap_err();
        assert!(matches!(&err, ConfigError::InvalidValue { key, .. } if key == "eta"));

        let raw = RawConfig::parse("mu = 1, 2").unwrap();
        let err = Config::resolve(Command::ScanN, &raw).unwrap().vec3("mu").unwrap_err();
        assert!(err.to_string().contains("`mu`"));

        let raw = RawConfig::parse("omega_m = -1").unwrap();
        let err = Config::resolve(Command::ScanN, &raw).unwrap().emitter(0.0).unwrap_err();
        assert!(err.to_string().contains("`omega_m`"));

        assert!(matches!(RawConfig::parse("no equals sign"), Err(ConfigError::Syntax { line: 1, .. })));
        assert!(matches!(RawConfig::parse("a = 1\na = 2"), Err(ConfigError::Duplicate(_))));
    }

    #[test]
    fn overrides_win() {
        let mut raw = RawConfig::parse("n = 5").unwrap();
        raw.set("n=7").unwrap();
        let c = Config::resolve(Command::ScanN, &raw).unwrap();
        assert_eq!(c.u64("n").unwrap(), 7);
    }

    #[test]
    fn metadata_block_is_a_config() {
        let text = "# chiralpol scan-n\n# eta = 0.003\n# model = local\nn,delta\n1,2\n";
        let raw = RawConfig::parse(text).unwrap();
        let c = Config::resolve(Command::ScanN, &raw).unwrap();
        assert_eq!(c.str("model"), "local");
        assert_eq!(c.f64("eta").unwrap(), 0.003);
    }

    #[test]
    fn linspace_hits_endpoints() {
        let v = linspace(0.8, 1.2, 401);
        assert_eq!(v[0], 0.8);
        assert_eq!(v[400], 1.2);
        assert_eq!(linspace(3.0, 4.0, 1), vec![3.0]);
    }
}
