//! JSON sweep configuration: schema, defaults, and validation.
//!
//! A config names one sweep axis and its values; everything else is
//! optional and falls back to the baseline scenario (two antennas, 30 dBm,
//! η = 0.5, −80 dBm noise, 2 bits/s/Hz, τ = 0.5, a 10 m link with
//! path-loss exponent 2). Unknown keys are rejected by name so a typo
//! cannot silently fall back to a default.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use wpcn_core::model::{LinkBudget, SystemParams, TransmissionMode};

/// Failure modes of the front end, ordered by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable, unparsable, or invalid configuration; also covers file
    /// system failures. Exit code 2.
    Config(String),
    /// An evaluation that the run could not route around. Exit code 3.
    Numeric(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Numeric(msg) => write!(f, "numeric error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

/// The swept parameter. Antenna counts are carried as JSON numbers and
/// checked for integrality at load time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    TxPowerDbm,
    NAntennas,
    Tau,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::TxPowerDbm => write!(f, "tx_power_dbm"),
            Axis::NAntennas => write!(f, "n_antennas"),
            Axis::Tau => write!(f, "tau"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    DelayLimited,
    DelayTolerant,
}

impl Mode {
    pub fn to_core(self) -> TransmissionMode {
        match self {
            Mode::DelayLimited => TransmissionMode::DelayLimited,
            Mode::DelayTolerant => TransmissionMode::DelayTolerant,
        }
    }
}

/// Estimator menu. Variant order is the canonical CSV emission order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    Exact,
    Approx,
    Asymptotic,
    MonteCarlo,
    OptimalTauClosed,
    OptimalTauSearch,
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Estimator::Exact => "exact",
            Estimator::Approx => "approx",
            Estimator::Asymptotic => "asymptotic",
            Estimator::MonteCarlo => "monte_carlo",
            Estimator::OptimalTauClosed => "optimal_tau_closed",
            Estimator::OptimalTauSearch => "optimal_tau_search",
        };
        write!(f, "{name}")
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLink {
    distance_m: Option<f64>,
    path_loss_exponent: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBase {
    n_antennas: Option<u32>,
    tx_power_dbm: Option<f64>,
    efficiency: Option<f64>,
    noise_power_dbm: Option<f64>,
    rate: Option<f64>,
    tau: Option<f64>,
    link: Option<RawLink>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMc {
    trials: Option<u64>,
    seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    axis: Axis,
    values: Vec<f64>,
    base: Option<RawBase>,
    modes: Option<Vec<Mode>>,
    estimators: Option<Vec<Estimator>>,
    mc: Option<RawMc>,
}

/// A validated sweep: the axis with its values, the fully defaulted base
/// scenario, mode and estimator selections in canonical order, and the
/// Monte Carlo run size.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub axis: Axis,
    pub values: Vec<f64>,
    pub base: SystemParams,
    pub modes: Vec<Mode>,
    pub estimators: Vec<Estimator>,
    pub mc_trials: u64,
    pub mc_seed: u64,
}

impl SweepSpec {
    pub fn load(path: &Path) -> Result<SweepSpec, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let raw: RawSpec = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        SweepSpec::from_raw(raw)
    }

    fn from_raw(raw: RawSpec) -> Result<SweepSpec, CliError> {
        if raw.values.is_empty() {
            return Err(CliError::Config("\"values\" must be non-empty".into()));
        }
        if raw.values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(CliError::Config(
                "\"values\" must be strictly increasing".into(),
            ));
        }

        let base = raw.base.unwrap_or_default();
        let link_raw = base.link;
        let link = LinkBudget {
            distance_m: link_raw.as_ref().and_then(|l| l.distance_m).unwrap_or(10.0),
            path_loss_exponent: link_raw
                .as_ref()
                .and_then(|l| l.path_loss_exponent)
                .unwrap_or(2.0),
        };
        let omega = link
            .omega()
            .map_err(|e| CliError::Config(format!("\"link\": {e}")))?;

        let tau = base.tau.unwrap_or(0.5);
        if !(0.0..=1.0).contains(&tau) {
            return Err(CliError::Config("\"tau\" must lie in [0, 1]".into()));
        }
        let params = SystemParams {
            n_antennas: base.n_antennas.unwrap_or(2),
            tx_power_dbm: base.tx_power_dbm.unwrap_or(30.0),
            efficiency: base.efficiency.unwrap_or(0.5),
            noise_power_dbm: base.noise_power_dbm.unwrap_or(-80.0),
            rate: base.rate.unwrap_or(2.0),
            tau,
            omega,
        };
        params
            .validate()
            .map_err(|e| CliError::Config(format!("\"base\": {e}")))?;

        match raw.axis {
            Axis::Tau => {
                if raw.values.iter().any(|v| !(0.0..=1.0).contains(v)) {
                    return Err(CliError::Config(
                        "\"values\" on the tau axis must lie in [0, 1]".into(),
                    ));
                }
            }
            Axis::NAntennas => {
                if raw
                    .values
                    .iter()
                    .any(|v| v.fract() != 0.0 || *v < 1.0 || *v > 1024.0)
                {
                    return Err(CliError::Config(
                        "\"values\" on the n_antennas axis must be integers in [1, 1024]".into(),
                    ));
                }
            }
            Axis::TxPowerDbm => {
                if raw.values.iter().any(|v| !v.is_finite()) {
                    return Err(CliError::Config(
                        "\"values\" on the tx_power_dbm axis must be finite".into(),
                    ));
                }
            }
        }

        let modes = canonical_modes(raw.modes)?;
        let estimators = canonical_estimators(raw.estimators)?;

        let mc = raw.mc;
        let mc_trials = mc.as_ref().and_then(|m| m.trials).unwrap_or(1_000_000);
        let mc_seed = mc.as_ref().and_then(|m| m.seed).unwrap_or(0);
        if mc_trials == 0 {
            return Err(CliError::Config("\"mc.trials\" must be at least 1".into()));
        }

        Ok(SweepSpec {
            axis: raw.axis,
            values: raw.values,
            base: params,
            modes,
            estimators,
            mc_trials,
            mc_seed,
        })
    }

    /// The base scenario with the axis value substituted in.
    pub fn params_at(&self, value: f64) -> SystemParams {
        let mut p = self.base;
        match self.axis {
            Axis::TxPowerDbm => p.tx_power_dbm = value,
            // Integrality was checked at load time.
            Axis::NAntennas => p.n_antennas = value as u32,
            Axis::Tau => p.tau = value,
        }
        p
    }
}

/// Deduplicates into declaration order, which is the emission order.
fn canonical_modes(selected: Option<Vec<Mode>>) -> Result<Vec<Mode>, CliError> {
    let all = [Mode::DelayLimited, Mode::DelayTolerant];
    let out = match selected {
        None => all.to_vec(),
        Some(list) => {
            if list.is_empty() {
                return Err(CliError::Config("\"modes\" must be non-empty".into()));
            }
            all.iter().copied().filter(|m| list.contains(m)).collect()
        }
    };
    Ok(out)
}

fn canonical_estimators(selected: Option<Vec<Estimator>>) -> Result<Vec<Estimator>, CliError> {
    let all = [
        Estimator::Exact,
        Estimator::Approx,
        Estimator::Asymptotic,
        Estimator::MonteCarlo,
        Estimator::OptimalTauClosed,
        Estimator::OptimalTauSearch,
    ];
    let out = match selected {
        None => vec![Estimator::Exact],
        Some(list) => {
            if list.is_empty() {
                return Err(CliError::Config("\"estimators\" must be non-empty".into()));
            }
            all.iter().copied().filter(|e| list.contains(e)).collect()
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(json: &str) -> Result<SweepSpec, CliError> {
        SweepSpec::from_raw(serde_json::from_str(json).map_err(|e| {
            CliError::Config(e.to_string())
        })?)
    }

    #[test]
    fn minimal_config_takes_defaults() {
        let spec = parse(r#"{"axis":"tau","values":[0.1,0.5,0.9]}"#).unwrap();
        assert_eq!(spec.base.n_antennas, 2);
        assert_eq!(spec.base.tx_power_dbm, 30.0);
        assert_eq!(spec.base.noise_power_dbm, -80.0);
        assert_eq!(spec.base.rate, 2.0);
        assert!((spec.base.omega - 1e-5).abs() < 1e-20);
        assert_eq!(spec.modes, vec![Mode::DelayLimited, Mode::DelayTolerant]);
        assert_eq!(spec.estimators, vec![Estimator::Exact]);
        assert_eq!(spec.mc_trials, 1_000_000);
        assert_eq!(spec.mc_seed, 0);
    }

    #[test]
    fn empty_values_is_rejected_by_name() {
        let err = parse(r#"{"axis":"tau","values":[]}"#).unwrap_err();
        assert!(err.to_string().contains("\"values\""), "{err}");
    }

    #[test]
    fn unsorted_values_are_rejected() {
        let err = parse(r#"{"axis":"tau","values":[0.5,0.2]}"#).unwrap_err();
        assert!(err.to_string().contains("strictly increasing"), "{err}");
    }

    #[test]
    fn out_of_range_tau_is_rejected_by_name() {
        let err = parse(r#"{"axis":"tx_power_dbm","values":[30],"base":{"tau":1.5}}"#).unwrap_err();
        assert!(err.to_string().contains("\"tau\""), "{err}");
    }

    #[test]
    fn unknown_key_is_named() {
        let err: Result<RawSpec, _> =
            serde_json::from_str(r#"{"axis":"tau","values":[0.5],"trials":10}"#);
        let msg = err.unwrap_err().to_string();
        assert!(msg.contains("trials"), "{msg}");
    }

    #[test]
    fn fractional_antenna_count_is_rejected() {
        let err = parse(r#"{"axis":"n_antennas","values":[1,2.5]}"#).unwrap_err();
        assert!(err.to_string().contains("integers"), "{err}");
    }

    #[test]
    fn estimators_come_out_in_canonical_order() {
        let spec = parse(
            r#"{"axis":"tau","values":[0.5],
                "estimators":["monte_carlo","exact","approx"]}"#,
        )
        .unwrap();
        assert_eq!(
            spec.estimators,
            vec![Estimator::Exact, Estimator::Approx, Estimator::MonteCarlo]
        );
    }

    #[test]
    fn axis_substitution_hits_the_right_field() {
        let spec = parse(r#"{"axis":"n_antennas","values":[1,4]}"#).unwrap();
        assert_eq!(spec.params_at(4.0).n_antennas, 4);
        assert_eq!(spec.params_at(4.0).tx_power_dbm, 30.0);
    }
}
