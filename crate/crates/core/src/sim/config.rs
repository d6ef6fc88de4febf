//! Scenario configuration.
//!
//! `ScenarioConfig` mirrors the structured config file one-to-one; every
//! field has a default so sparse files work, and validation reports the
//! offending field path.

use serde::{Deserialize, Serialize};

use crate::channel::{ChannelSpec, EnergyRef};
use crate::error::{Error, Result};
use crate::mapping::Scheme;
use crate::ofdm::OfdmParams;

/// Chain variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Source -> map -> AWGN -> phase noise -> demap -> count.
    Uncoded,
    /// Full concatenated chain with interleaving and OFDM.
    Coded,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Uncoded => "uncoded",
            Mode::Coded => "coded",
        })
    }
}

/// One scenario (or one sweep of scenarios over Eb/N0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScenarioConfig {
    pub mode: Mode,
    pub scheme: Scheme,
    pub channel: ChannelSpec,
    /// Uncoded mode: number of source symbols to draw.
    pub n_symbols: u64,
    /// Coded mode: payload size in bytes.
    pub payload_bytes: usize,
    /// Coded mode OFDM geometry; defaults to the 2k mode.
    pub ofdm: Option<OfdmParams>,
    /// Eb/N0 grid for sweep campaigns (uncoded mode).
    pub sweep: Option<Vec<f64>>,
    /// Master seed; per-point and per-stage seeds derive from it.
    pub seed: u64,
    /// How Es entering the AWGN model is established.
    pub energy_ref: EnergyRef,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            mode: Mode::Uncoded,
            scheme: Scheme::Qam16,
            channel: ChannelSpec::default(),
            n_symbols: 10_500,
            payload_bytes: 223,
            ofdm: None,
            sweep: None,
            seed: 0,
            energy_ref: EnergyRef::Measured,
        }
    }
}

/// Net code rate of the concatenated chain: RS(255,223) times the
/// punctured rate 3/4.
pub fn concatenated_code_rate() -> f64 {
    (223.0 / 255.0) * (3.0 / 4.0)
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        self.channel.validate().map_err(|e| match e {
            Error::InvalidParam { name, reason } => {
                Error::config(format!("channel.{name}"), reason)
            }
            other => other,
        })?;

        if let Some(k) = self.channel.bits_per_symbol {
            if usize::from(k) != self.scheme.bits_per_symbol() {
                return Err(Error::config(
                    "channel.bits_per_symbol",
                    format!(
                        "{k} contradicts scheme {} ({} bits/symbol)",
                        self.scheme,
                        self.scheme.bits_per_symbol()
                    ),
                ));
            }
        }

        match self.mode {
            Mode::Uncoded => {
                if self.n_symbols == 0 {
                    return Err(Error::config("n_symbols", "must be >= 1"));
                }
                if self.ofdm.is_some() {
                    return Err(Error::config(
                        "ofdm",
                        "the uncoded chain has no OFDM stage",
                    ));
                }
                if self.channel.echo.is_some() {
                    return Err(Error::config(
                        "channel.echo",
                        "echoes apply to the coded OFDM chain only",
                    ));
                }
            }
            Mode::Coded => {
                if self.payload_bytes == 0 {
                    return Err(Error::config("payload_bytes", "must be >= 1"));
                }
                let ofdm = self.ofdm.unwrap_or_default();
                ofdm.validate().map_err(|e| match e {
                    Error::InvalidParam { name, reason } => {
                        Error::config(format!("ofdm.{name}"), reason)
                    }
                    other => other,
                })?;
                if let Some(echo) = &self.channel.echo {
                    if echo.delay_samples > ofdm.guard_samples() {
                        return Err(Error::config(
                            "channel.echo.delay_samples",
                            format!(
                                "{} exceeds the guard interval ({} samples)",
                                echo.delay_samples,
                                ofdm.guard_samples()
                            ),
                        ));
                    }
                }
                if self.sweep.is_some() {
                    return Err(Error::config(
                        "sweep",
                        "sweep campaigns run the uncoded chain",
                    ));
                }
            }
        }

        if let Some(sweep) = &self.sweep {
            if sweep.is_empty() {
                return Err(Error::config("sweep", "list must be nonempty"));
            }
            if sweep.iter().any(|v| !v.is_finite()) {
                return Err(Error::config("sweep", "values must be finite"));
            }
        }
        Ok(())
    }

    /// Channel spec with bits-per-symbol and code rate filled in from the
    /// scenario, ready for noise resolution.
    pub fn resolved_channel(&self) -> ChannelSpec {
        let mut ch = self.channel.clone();
        ch.bits_per_symbol
            .get_or_insert(self.scheme.bits_per_symbol() as u8);
        ch.code_rate.get_or_insert(match self.mode {
            Mode::Uncoded => 1.0,
            Mode::Coded => concatenated_code_rate(),
        });
        ch
    }

    /// OFDM geometry for coded scenarios.
    pub fn ofdm_params(&self) -> OfdmParams {
        self.ofdm.unwrap_or_default()
    }
}
