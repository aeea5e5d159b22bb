//! Independent Monte Carlo estimators for outage, ergodic capacity, and the
//! two throughput measures. These draw raw channel vectors and apply the
//! system equations directly, sharing no distribution code with the
//! closed-form layer, so agreement between the two is meaningful evidence.
//!
//! # Reproducibility
//!
//! Every trial gets its own counter-based RNG stream: the generator for
//! trial i is the seeded base generator switched to stream i. Trial values
//! therefore depend only on (seed, trial index), and the running sums are
//! accumulated strictly in trial order with compensated summation. Estimates
//! are pure functions of (parameters, trials, seed); batch size and caller
//! threading cannot change them.

use crate::accum::CompensatedSum;
use crate::model::{ChannelDraw, ModelError, SystemParams, TransmissionMode};

use core::f64::consts::LN_2;
use core::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Size and seeding of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    /// Scheduling hint for callers that process trials in chunks. Results
    /// never depend on it; per-trial RNG streams and ordered accumulation
    /// make the estimate a pure function of (parameters, trials, seed).
    pub batch_size: u32,
}

impl McConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        McConfig {
            trials,
            seed,
            batch_size: 8192,
        }
    }

    fn validate(&self) -> Result<(), McError> {
        if self.trials == 0 {
            return Err(McError::Config("trials must be at least 1"));
        }
        Ok(())
    }
}

/// A Monte Carlo estimate with its standard error, tagged with the run size
/// and seed that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum McError {
    Config(&'static str),
    Model(ModelError),
}

impl fmt::Display for McError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            McError::Config(what) => write!(f, "invalid Monte Carlo config: {what}"),
            McError::Model(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for McError {}

impl From<ModelError> for McError {
    fn from(e: ModelError) -> Self {
        McError::Model(e)
    }
}

/// Draws one channel realization: squared norms of the downlink and uplink
/// vectors, each with `n_antennas` independent complex Gaussian entries of
/// total variance `omega` (so real and imaginary parts are N(0, omega/2)).
pub fn sample_channel<R: Rng + ?Sized>(n_antennas: u32, omega: f64, rng: &mut R) -> ChannelDraw {
    let sd = (omega / 2.0).sqrt();
    let norm_sq = |rng: &mut R| {
        let mut acc = 0.0;
        for _ in 0..n_antennas {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            acc += (sd * re) * (sd * re) + (sd * im) * (sd * im);
        }
        acc
    };
    let h_norm_sq = norm_sq(rng);
    let g_norm_sq = norm_sq(rng);
    ChannelDraw {
        h_norm_sq,
        g_norm_sq,
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn check_open_tau(params: &SystemParams) -> Result<(), McError> {
    if params.tau <= 0.0 || params.tau >= 1.0 {
        return Err(McError::Model(ModelError::DegenerateTime));
    }
    Ok(())
}

/// Estimates the outage probability P(log₂(1+γ) < R) by direct simulation.
///
/// Each trial draws both channel vectors, forms the uplink SNR, and checks
/// the rate inequality literally. A zero rate short-circuits to an exact 0
/// without drawing. The standard error is the Bernoulli form
/// √(p̂(1−p̂)/trials).
pub fn estimate_outage(params: &SystemParams, config: &McConfig) -> Result<McEstimate, McError> {
    params.validate()?;
    config.validate()?;
    check_open_tau(params)?;
    if params.rate == 0.0 {
        return Ok(McEstimate {
            mean: 0.0,
            stderr: 0.0,
            trials: config.trials,
            seed: config.seed,
        });
    }
    let mut failures: u64 = 0;
    for trial in 0..config.trials {
        let mut rng = trial_rng(config.seed, trial);
        let draw = sample_channel(params.n_antennas, params.omega, &mut rng);
        let snr = params.uplink_snr(&draw)?;
        if snr.ln_1p() / LN_2 < params.rate {
            failures += 1;
        }
    }
    let p = failures as f64 / config.trials as f64;
    Ok(McEstimate {
        mean: p,
        stderr: (p * (1.0 - p) / config.trials as f64).sqrt(),
        trials: config.trials,
        seed: config.seed,
    })
}

/// Estimates the ergodic capacity E[log₂(1+γ)] by direct simulation, with
/// the sample standard error of the mean.
pub fn estimate_ergodic_capacity(
    params: &SystemParams,
    config: &McConfig,
) -> Result<McEstimate, McError> {
    params.validate()?;
    config.validate()?;
    check_open_tau(params)?;
    let mut sum = CompensatedSum::new();
    let mut sum_sq = CompensatedSum::new();
    for trial in 0..config.trials {
        let mut rng = trial_rng(config.seed, trial);
        let draw = sample_channel(params.n_antennas, params.omega, &mut rng);
        let snr = params.uplink_snr(&draw)?;
        let x = snr.ln_1p() / LN_2;
        sum.add(x);
        sum_sq.add(x * x);
    }
    let n = config.trials as f64;
    let mean = sum.value() / n;
    let stderr = if config.trials > 1 {
        let var = ((sum_sq.value() - n * mean * mean) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        stderr,
        trials: config.trials,
        seed: config.seed,
    })
}

/// Estimates the average throughput of either transmission mode.
///
/// Both modes scale a simulated quantity by known constants, so the standard
/// error propagates linearly: delay-limited throughput is R(1−τ)(1−P_out)
/// from the outage estimate, delay-tolerant is (1−τ)·C from the capacity
/// estimate. At τ ∈ {0, 1} the throughput is identically zero and is
/// returned exactly, without sampling.
pub fn estimate_throughput(
    mode: TransmissionMode,
    params: &SystemParams,
    config: &McConfig,
) -> Result<McEstimate, McError> {
    params.validate()?;
    config.validate()?;
    if params.tau == 0.0 || params.tau == 1.0 {
        return Ok(McEstimate {
            mean: 0.0,
            stderr: 0.0,
            trials: config.trials,
            seed: config.seed,
        });
    }
    let scale = 1.0 - params.tau;
    match mode {
        TransmissionMode::DelayLimited => {
            let outage = estimate_outage(params, config)?;
            Ok(McEstimate {
                mean: params.rate * scale * (1.0 - outage.mean),
                stderr: params.rate * scale * outage.stderr,
                ..outage
            })
        }
        TransmissionMode::DelayTolerant => {
            let cap = estimate_ergodic_capacity(params, config)?;
            Ok(McEstimate {
                mean: scale * cap.mean,
                stderr: scale * cap.stderr,
                ..cap
            })
        }
    }
}
