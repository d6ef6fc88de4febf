//! Channel impairments: AWGN, oscillator phase noise and a static echo.
//!
//! All operations are pure functions of (input, spec, seed); the RNG is a
//! seeded ChaCha8 stream, so identical seeds give bit-identical output.
//!
//! Noise levels can be specified three equivalent ways and are resolved to a
//! per-sample SNR:
//!
//! - `snr_per_sample_db` is used as-is,
//! - `esn0_db` minus 10*log10(samples_per_symbol),
//! - `ebn0_db` plus 10*log10(bits_per_symbol * code_rate), then the
//!   samples-per-symbol correction.
//!
//! Phase noise is a colored Gaussian phase process: white noise shaped by a
//! one-pole low-pass filter (corner at one tenth of the specified offset)
//! and scaled so the one-sided PSD of the phase at `offset_hz` equals
//! `level_dbc_hz`. The process starts from its stationary distribution.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which ratio `noise_value_db` expresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseRef {
    SnrPerSampleDb,
    Esn0Db,
    Ebn0Db,
}

/// Oscillator phase-noise specification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PhaseNoiseSpec {
    /// One-sided phase PSD at the offset, dBc/Hz.
    pub level_dbc_hz: f64,
    /// Offset frequency the level is specified at, Hz.
    pub offset_hz: f64,
    /// Simulation sample rate, Hz.
    pub sample_rate_hz: f64,
}

impl Default for PhaseNoiseSpec {
    fn default() -> Self {
        PhaseNoiseSpec {
            level_dbc_hz: -76.0,
            offset_hz: 100.0,
            // DVB-T elementary rate for 8 MHz channels, 64/7 MHz.
            sample_rate_hz: 64.0e6 / 7.0,
        }
    }
}

impl PhaseNoiseSpec {
    pub fn validate(&self) -> Result<()> {
        if self.level_dbc_hz >= 0.0 {
            return Err(Error::param(
                "phase_noise.level_dbc_hz",
                format!("{} must be negative", self.level_dbc_hz),
            ));
        }
        if self.offset_hz.is_nan() || self.offset_hz <= 0.0 {
            return Err(Error::param(
                "phase_noise.offset_hz",
                format!("{} must be positive", self.offset_hz),
            ));
        }
        if self.offset_hz >= self.sample_rate_hz / 2.0 {
            return Err(Error::param(
                "phase_noise.offset_hz",
                format!(
                    "{} must stay below half the sample rate {}",
                    self.offset_hz, self.sample_rate_hz
                ),
            ));
        }
        Ok(())
    }
}

/// Static single-echo specification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EchoSpec {
    pub delay_samples: usize,
    pub gain_re: f64,
    pub gain_im: f64,
}

impl EchoSpec {
    pub fn gain(&self) -> Complex64 {
        Complex64::new(self.gain_re, self.gain_im)
    }
}

/// Full channel parameterization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ChannelSpec {
    pub noise_ref: NoiseRef,
    /// Noise level in dB; `None` disables AWGN (the noiseless sentinel).
    pub noise_value_db: Option<f64>,
    /// Bits per constellation symbol for Eb/N0 conversions; filled from the
    /// scenario's scheme when absent.
    pub bits_per_symbol: Option<u8>,
    /// Net FEC rate for Eb/N0 conversions; 1 when uncoded.
    pub code_rate: Option<f64>,
    pub samples_per_symbol: u32,
    pub phase_noise: Option<PhaseNoiseSpec>,
    pub echo: Option<EchoSpec>,
}

impl Default for ChannelSpec {
    fn default() -> Self {
        ChannelSpec {
            noise_ref: NoiseRef::Ebn0Db,
            noise_value_db: None,
            bits_per_symbol: None,
            code_rate: None,
            samples_per_symbol: 1,
            phase_noise: None,
            echo: None,
        }
    }
}

impl ChannelSpec {
    pub fn validate(&self) -> Result<()> {
        if let Some(v) = self.noise_value_db {
            if v.is_nan() {
                return Err(Error::param("noise_value_db", "must not be NaN"));
            }
        }
        if let Some(k) = self.bits_per_symbol {
            if ![2, 4, 6].contains(&k) {
                return Err(Error::param(
                    "bits_per_symbol",
                    format!("{k} not one of 2, 4, 6"),
                ));
            }
        }
        if let Some(r) = self.code_rate {
            if !(r > 0.0 && r <= 1.0) {
                return Err(Error::param("code_rate", format!("{r} not in (0, 1]")));
            }
        }
        if self.samples_per_symbol == 0 {
            return Err(Error::param("samples_per_symbol", "must be >= 1"));
        }
        if let Some(pn) = &self.phase_noise {
            pn.validate()?;
        }
        Ok(())
    }

    /// Resolves the configured level to a per-sample SNR in dB.
    /// `None` means the noiseless sentinel (absent level or +inf).
    pub fn per_sample_snr_db(&self) -> Result<Option<f64>> {
        self.validate()?;
        let Some(value) = self.noise_value_db else {
            return Ok(None);
        };
        if value == f64::INFINITY {
            return Ok(None);
        }
        let sps_db = 10.0 * f64::from(self.samples_per_symbol).log10();
        let snr = match self.noise_ref {
            NoiseRef::SnrPerSampleDb => value,
            NoiseRef::Esn0Db => value - sps_db,
            NoiseRef::Ebn0Db => {
                let k = self.bits_per_symbol.ok_or_else(|| {
                    Error::param("bits_per_symbol", "required to resolve Eb/N0")
                })?;
                let rate = self.code_rate.unwrap_or(1.0);
                ebn0_to_esn0(value, k, rate)? - sps_db
            }
        };
        Ok(Some(snr))
    }

    /// The configured level expressed as Eb/N0 in dB, when resolvable.
    pub fn ebn0_db(&self) -> Option<f64> {
        let value = self.noise_value_db?;
        if value == f64::INFINITY {
            return Some(f64::INFINITY);
        }
        let k = self.bits_per_symbol?;
        let rate = self.code_rate.unwrap_or(1.0);
        let conv = 10.0 * (f64::from(k) * rate).log10();
        let sps_db = 10.0 * f64::from(self.samples_per_symbol).log10();
        match self.noise_ref {
            NoiseRef::Ebn0Db => Some(value),
            NoiseRef::Esn0Db => Some(value - conv),
            NoiseRef::SnrPerSampleDb => Some(value + sps_db - conv),
        }
    }
}

/// Es/N0 = Eb/N0 + 10*log10(k * code_rate).
pub fn ebn0_to_esn0(ebn0_db: f64, bits_per_symbol: u8, code_rate: f64) -> Result<f64> {
    if bits_per_symbol == 0 {
        return Err(Error::param("bits_per_symbol", "must be >= 1"));
    }
    if !(code_rate > 0.0 && code_rate <= 1.0) {
        return Err(Error::param(
            "code_rate",
            format!("{code_rate} not in (0, 1]"),
        ));
    }
    Ok(ebn0_db + 10.0 * (f64::from(bits_per_symbol) * code_rate).log10())
}

/// How the signal energy entering the AWGN model is established.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyRef {
    /// Es measured from the actual input block (mean |x|^2).
    Measured,
    /// Assume unit per-sample energy, for analytic comparisons.
    Nominal,
}

/// Mean per-sample energy of a block.
pub fn measured_energy(iq: &[Complex64]) -> f64 {
    if iq.is_empty() {
        return 0.0;
    }
    iq.iter().map(|z| z.norm_sqr()).sum::<f64>() / iq.len() as f64
}

/// AWGN output: the noisy block plus the noise density that was applied
/// (`None` when the channel ran noiseless).
#[derive(Debug, Clone, PartialEq)]
pub struct AwgnOutput {
    pub samples: Vec<Complex64>,
    pub n0: Option<f64>,
}

/// Adds complex white Gaussian noise at the resolved per-sample SNR,
/// variance N0/2 per real dimension. Deterministic given the seed.
pub fn apply_awgn(
    iq: &[Complex64],
    spec: &ChannelSpec,
    energy: EnergyRef,
    seed: u64,
) -> Result<AwgnOutput> {
    let Some(snr_db) = spec.per_sample_snr_db()? else {
        return Ok(AwgnOutput {
            samples: iq.to_vec(),
            n0: None,
        });
    };
    let es = match energy {
        EnergyRef::Measured => measured_energy(iq),
        EnergyRef::Nominal => 1.0,
    };
    let n0 = es / 10f64.powf(snr_db / 10.0);
    let sigma = (n0 / 2.0).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = iq
        .iter()
        .map(|&z| {
            let nr: f64 = rng.sample(StandardNormal);
            let ni: f64 = rng.sample(StandardNormal);
            z + Complex64::new(sigma * nr, sigma * ni)
        })
        .collect();
    Ok(AwgnOutput {
        samples,
        n0: Some(n0),
    })
}

/// Corner frequency of the phase-noise shaping filter as a fraction of the
/// specified offset. Frozen so reports stay reproducible.
pub const PHASE_NOISE_CORNER_RATIO: f64 = 0.1;

/// Rotates each sample by a colored Gaussian phase process whose one-sided
/// PSD at `offset_hz` equals `level_dbc_hz`. Magnitudes are preserved.
pub fn apply_phase_noise(iq: &[Complex64], spec: &PhaseNoiseSpec, seed: u64) -> Vec<Complex64> {
    if spec.level_dbc_hz == f64::NEG_INFINITY || iq.is_empty() {
        return iq.to_vec();
    }
    let fs = spec.sample_rate_hz;
    let corner = spec.offset_hz * PHASE_NOISE_CORNER_RATIO;
    let pole = (-2.0 * std::f64::consts::PI * corner / fs).exp();
    // |1 - pole * e^{-j theta}|^2 at the specified offset
    let theta = 2.0 * std::f64::consts::PI * spec.offset_hz / fs;
    let h_denom = (1.0 - pole * theta.cos()).powi(2) + (pole * theta.sin()).powi(2);
    // One-sided PSD of the filtered process: S(f) = 2 sigma_w^2 / (fs |1-p e^{-j2pi f/fs}|^2)
    let target = 10f64.powf(spec.level_dbc_hz / 10.0);
    let sigma_w2 = target * fs * h_denom / 2.0;
    let sigma_w = sigma_w2.sqrt();
    let stationary_sigma = (sigma_w2 / (1.0 - pole * pole)).sqrt();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let init: f64 = rng.sample(StandardNormal);
    let mut phi = stationary_sigma * init;
    iq.iter()
        .map(|&z| {
            let w: f64 = rng.sample(StandardNormal);
            let rotated = z * Complex64::from_polar(1.0, phi);
            phi = pole * phi + sigma_w * w;
            rotated
        })
        .collect()
}

/// Static echo: `out[n] = in[n] + gain * in[n - delay]` with zero history.
pub fn apply_echo(iq: &[Complex64], delay: usize, gain: Complex64) -> Vec<Complex64> {
    iq.iter()
        .enumerate()
        .map(|(n, &z)| {
            if n >= delay {
                z + gain * iq[n - delay]
            } else {
                z
            }
        })
        .collect()
}
