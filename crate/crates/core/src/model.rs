//! Scenario parameters and the physical quantities of one
//! harvest-then-transmit block: harvested energy, uplink SNR, and the derived
//! scales every closed form is written in.
//!
//! Each block of normalized unit duration splits into a downlink
//! energy-transfer phase of fraction `tau` and an uplink data phase of
//! fraction `1 - tau`. The access point has `n_antennas` maximum-ratio
//! beamforming antennas; every channel entry is circularly symmetric complex
//! Gaussian with mean power gain `omega`, and channels stay fixed within a
//! block.

use core::fmt;

#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Uplink operating mode: fixed-rate decoding per block, or buffered decoding
/// across many blocks at the ergodic rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransmissionMode {
    DelayLimited,
    DelayTolerant,
}

impl fmt::Display for TransmissionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransmissionMode::DelayLimited => write!(f, "delay_limited"),
            TransmissionMode::DelayTolerant => write!(f, "delay_tolerant"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelError {
    /// A field violates its documented range; the message names the field.
    InvalidParameter(&'static str),
    /// tau ∈ {0, 1} leaves either no energy or no transmission time, so the
    /// requested quantity is undefined.
    DegenerateTime,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            ModelError::DegenerateTime => {
                write!(f, "tau at an endpoint leaves no harvesting or no transmission time")
            }
        }
    }
}

impl core::error::Error for ModelError {}

/// Converts a power level in dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Distance/path-loss description of the access-point-to-user link.
///
/// The mean channel power gain follows a truncated power law anchored at
/// [`LinkBudget::REFERENCE_GAIN`] (30 dB attenuation) at unit distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub distance_m: f64,
    pub path_loss_exponent: f64,
}

impl LinkBudget {
    /// Mean power gain at 1 m.
    pub const REFERENCE_GAIN: f64 = 1e-3;

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.distance_m > 0.0 && self.distance_m.is_finite()) {
            return Err(ModelError::InvalidParameter("distance_m must be positive"));
        }
        if !(self.path_loss_exponent >= 2.0 && self.path_loss_exponent <= 5.0) {
            return Err(ModelError::InvalidParameter(
                "path_loss_exponent must lie in [2, 5]",
            ));
        }
        Ok(())
    }

    /// Mean channel power gain Ω = 10⁻³·d^(−α).
    pub fn omega(&self) -> Result<f64, ModelError> {
        self.validate()?;
        Ok(Self::REFERENCE_GAIN * self.distance_m.powf(-self.path_loss_exponent))
    }
}

/// Full scenario description. Powers are accepted in dBm and converted to
/// watts once; all derived math runs in linear units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Access-point antennas, N ≥ 1.
    pub n_antennas: u32,
    /// Downlink transmit power in dBm.
    pub tx_power_dbm: f64,
    /// Energy-harvesting conversion efficiency, in (0, 1].
    pub efficiency: f64,
    /// Receiver noise power in dBm.
    pub noise_power_dbm: f64,
    /// Fixed uplink rate target in bits/s/Hz, ≥ 0.
    pub rate: f64,
    /// Harvesting fraction of the block, in [0, 1].
    pub tau: f64,
    /// Mean channel power gain per antenna entry, > 0.
    pub omega: f64,
}

/// Scale factors shared by every closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    /// Mean SNR scale γ̄ = η·P/σ².
    pub gamma_bar: f64,
    /// SNR threshold γ₀ = 2^R − 1 of the fixed-rate mode.
    pub gamma_0: f64,
    /// Distribution scale c = τ·γ̄·Ω²/(1−τ); `None` at tau = 1 where no
    /// transmission time remains.
    pub snr_scale: Option<f64>,
}

/// One channel realization: squared norms of the downlink and uplink channel
/// vectors. Each is a sum of `n_antennas` independent exponentials of mean
/// `omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelDraw {
    pub h_norm_sq: f64,
    pub g_norm_sq: f64,
}

impl SystemParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.n_antennas < 1 {
            return Err(ModelError::InvalidParameter("n_antennas must be at least 1"));
        }
        if !self.tx_power_dbm.is_finite() {
            return Err(ModelError::InvalidParameter("tx_power_dbm must be finite"));
        }
        if !(self.efficiency > 0.0 && self.efficiency <= 1.0) {
            return Err(ModelError::InvalidParameter("efficiency must lie in (0, 1]"));
        }
        if !self.noise_power_dbm.is_finite() {
            return Err(ModelError::InvalidParameter("noise_power_dbm must be finite"));
        }
        if !(self.rate >= 0.0 && self.rate.is_finite()) {
            return Err(ModelError::InvalidParameter("rate must be finite and >= 0"));
        }
        if !(self.tau >= 0.0 && self.tau <= 1.0) {
            return Err(ModelError::InvalidParameter("tau must lie in [0, 1]"));
        }
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(ModelError::InvalidParameter("omega must be positive"));
        }
        let gamma_bar = self.efficiency * self.tx_power_watts() / self.noise_power_watts();
        if !(gamma_bar > 0.0 && gamma_bar.is_finite()) {
            return Err(ModelError::InvalidParameter(
                "tx_power_dbm and noise_power_dbm combine to a non-finite mean SNR",
            ));
        }
        Ok(())
    }

    /// Copy with a different harvesting fraction; the sweep and optimizer
    /// workhorse.
    pub fn with_tau(&self, tau: f64) -> Self {
        SystemParams { tau, ..*self }
    }

    pub fn tx_power_watts(&self) -> f64 {
        dbm_to_watts(self.tx_power_dbm)
    }

    pub fn noise_power_watts(&self) -> f64 {
        dbm_to_watts(self.noise_power_dbm)
    }

    /// γ̄, γ₀, and the distribution scale c.
    ///
    /// γ₀ is computed as expm1(R·ln 2), which keeps full precision for small
    /// rates where 2^R − 1 would cancel.
    pub fn derived(&self) -> DerivedQuantities {
        let gamma_bar = self.efficiency * self.tx_power_watts() / self.noise_power_watts();
        let gamma_0 = (self.rate * core::f64::consts::LN_2).exp_m1();
        let snr_scale = if self.tau < 1.0 {
            Some(self.tau / (1.0 - self.tau) * gamma_bar * self.omega * self.omega)
        } else {
            None
        };
        DerivedQuantities {
            gamma_bar,
            gamma_0,
            snr_scale,
        }
    }

    /// The distribution scale c, or an error at tau = 1.
    pub fn snr_scale(&self) -> Result<f64, ModelError> {
        self.derived().snr_scale.ok_or(ModelError::DegenerateTime)
    }

    /// Energy harvested over the downlink phase: E = η·τ·P·‖h‖² (joules, for
    /// the normalized unit block).
    pub fn harvested_energy(&self, draw: &ChannelDraw) -> f64 {
        self.efficiency * self.tau * self.tx_power_watts() * draw.h_norm_sq
    }

    /// Uplink SNR γ = (τ/(1−τ))·γ̄·‖h‖²·‖g‖² for tau strictly inside (0, 1).
    pub fn uplink_snr(&self, draw: &ChannelDraw) -> Result<f64, ModelError> {
        if self.tau <= 0.0 || self.tau >= 1.0 {
            return Err(ModelError::DegenerateTime);
        }
        let d = self.derived();
        Ok(self.tau / (1.0 - self.tau) * d.gamma_bar * draw.h_norm_sq * draw.g_norm_sq)
    }
}
