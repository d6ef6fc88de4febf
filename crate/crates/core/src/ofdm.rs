//! OFDM modulation, cyclic-prefix guard interval and one-tap equalization.
//!
//! Defaults follow the 2k mode of the DVB-T family: 2048-point transform
//! with 1705 active carriers. Active carriers sit symmetrically around DC
//! (DC itself unused): offsets -ceil(K/2) .. -1 and +1 .. +floor(K/2),
//! loaded in ascending offset order. Transforms are unitary (1/sqrt(N) both
//! directions) so energies stay comparable across FFT sizes.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Guard interval as a fraction of the useful symbol length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GuardFraction {
    #[serde(rename = "1/4")]
    Quarter,
    #[serde(rename = "1/8")]
    Eighth,
    #[serde(rename = "1/16")]
    Sixteenth,
    #[serde(rename = "1/32")]
    ThirtySecond,
}

impl GuardFraction {
    pub const ALL: [GuardFraction; 4] = [
        GuardFraction::Quarter,
        GuardFraction::Eighth,
        GuardFraction::Sixteenth,
        GuardFraction::ThirtySecond,
    ];

    pub fn denominator(self) -> usize {
        match self {
            GuardFraction::Quarter => 4,
            GuardFraction::Eighth => 8,
            GuardFraction::Sixteenth => 16,
            GuardFraction::ThirtySecond => 32,
        }
    }

    pub fn samples(self, fft_size: usize) -> usize {
        fft_size / self.denominator()
    }
}

impl std::fmt::Display for GuardFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "1/{}", self.denominator())
    }
}

impl std::str::FromStr for GuardFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1/4" => Ok(GuardFraction::Quarter),
            "1/8" => Ok(GuardFraction::Eighth),
            "1/16" => Ok(GuardFraction::Sixteenth),
            "1/32" => Ok(GuardFraction::ThirtySecond),
            other => Err(Error::param(
                "guard_fraction",
                format!("`{other}` not one of 1/4, 1/8, 1/16, 1/32"),
            )),
        }
    }
}

/// OFDM geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OfdmParams {
    /// Transform size; power of two.
    pub fft_size: usize,
    /// Active (loaded) carrier count; DC stays unused.
    pub active_carriers: usize,
    pub guard_fraction: GuardFraction,
    /// Nominal RF bandwidth, informational only.
    pub channel_bandwidth_hz: f64,
}

impl Default for OfdmParams {
    fn default() -> Self {
        OfdmParams {
            fft_size: 2048,
            active_carriers: 1705,
            guard_fraction: GuardFraction::Quarter,
            channel_bandwidth_hz: 8.0e6,
        }
    }
}

impl OfdmParams {
    pub fn guard_samples(&self) -> usize {
        self.guard_fraction.samples(self.fft_size)
    }

    /// Samples per OFDM symbol including the cyclic prefix.
    pub fn symbol_len(&self) -> usize {
        self.fft_size + self.guard_samples()
    }

    pub fn validate(&self) -> Result<()> {
        if !self.fft_size.is_power_of_two() || self.fft_size < 8 {
            return Err(Error::param(
                "fft_size",
                format!("{} must be a power of two >= 8", self.fft_size),
            ));
        }
        if self.active_carriers == 0 || self.active_carriers >= self.fft_size {
            return Err(Error::param(
                "active_carriers",
                format!(
                    "{} must be in 1..fft_size (DC is unused)",
                    self.active_carriers
                ),
            ));
        }
        if !self.fft_size.is_multiple_of(self.guard_fraction.denominator()) {
            return Err(Error::param(
                "guard_fraction",
                "guard samples must divide the FFT size evenly",
            ));
        }
        Ok(())
    }

    /// Carrier offsets from DC in loading order (ascending, DC skipped).
    pub fn carrier_offsets(&self) -> Vec<i64> {
        let neg = self.active_carriers.div_ceil(2) as i64;
        let pos = (self.active_carriers / 2) as i64;
        (-neg..0).chain(1..=pos).collect()
    }

    /// Physical FFT bin for a carrier offset.
    pub fn bin_for_offset(&self, offset: i64) -> usize {
        let n = self.fft_size as i64;
        ((offset % n + n) % n) as usize
    }
}

/// One or more OFDM symbols in the time domain, cyclic prefix included.
#[derive(Debug, Clone, PartialEq)]
pub struct OfdmFrame {
    pub samples: Vec<Complex64>,
    pub n_symbols: usize,
}

/// OFDM modulator/demodulator with cached transform plans. The plans are
/// `Arc`s and safe to share across workers.
pub struct Ofdm {
    params: OfdmParams,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    bins: Vec<usize>,
}

impl Ofdm {
    pub fn new(params: OfdmParams) -> Result<Self> {
        params.validate()?;
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(params.fft_size);
        let inverse = planner.plan_fft_inverse(params.fft_size);
        let bins = params
            .carrier_offsets()
            .iter()
            .map(|&o| params.bin_for_offset(o))
            .collect();
        Ok(Ofdm {
            params,
            forward,
            inverse,
            bins,
        })
    }

    pub fn params(&self) -> &OfdmParams {
        &self.params
    }

    /// Loads cells onto the active carriers, applies the unitary inverse
    /// transform and prepends the cyclic prefix per symbol.
    pub fn modulate(&self, cells: &[Complex64]) -> Result<OfdmFrame> {
        let k = self.params.active_carriers;
        if cells.is_empty() || !cells.len().is_multiple_of(k) {
            return Err(Error::NotMultipleOf {
                what: "ofdm cells",
                len: cells.len(),
                multiple: k,
            });
        }
        let n = self.params.fft_size;
        let guard = self.params.guard_samples();
        let scale = 1.0 / (n as f64).sqrt();
        let n_symbols = cells.len() / k;
        let mut samples = Vec::with_capacity(n_symbols * self.params.symbol_len());
        let mut spectrum = vec![Complex64::default(); n];
        for sym_cells in cells.chunks_exact(k) {
            spectrum.fill(Complex64::default());
            for (&bin, &cell) in self.bins.iter().zip(sym_cells) {
                spectrum[bin] = cell;
            }
            self.inverse.process(&mut spectrum);
            for z in spectrum.iter_mut() {
                *z *= scale;
            }
            samples.extend_from_slice(&spectrum[n - guard..]);
            samples.extend_from_slice(&spectrum);
        }
        Ok(OfdmFrame { samples, n_symbols })
    }

    /// Strips the guard, applies the unitary forward transform and extracts
    /// active-carrier cells in loading order.
    pub fn demodulate(&self, frame: &[Complex64]) -> Result<Vec<Complex64>> {
        let sym_len = self.params.symbol_len();
        if frame.is_empty() || !frame.len().is_multiple_of(sym_len) {
            return Err(Error::NotMultipleOf {
                what: "ofdm frame samples",
                len: frame.len(),
                multiple: sym_len,
            });
        }
        let n = self.params.fft_size;
        let guard = self.params.guard_samples();
        let scale = 1.0 / (n as f64).sqrt();
        let mut cells = Vec::with_capacity(frame.len() / sym_len * self.params.active_carriers);
        let mut buf = vec![Complex64::default(); n];
        for sym in frame.chunks_exact(sym_len) {
            buf.copy_from_slice(&sym[guard..]);
            self.forward.process(&mut buf);
            cells.extend(self.bins.iter().map(|&bin| buf[bin] * scale));
        }
        Ok(cells)
    }
}

/// Response of `1 + gain * z^-delay` at one FFT bin.
pub fn echo_response_at(bin: usize, fft_size: usize, delay: usize, gain: Complex64) -> Complex64 {
    let phase = -2.0 * std::f64::consts::PI * (bin as f64) * (delay as f64) / (fft_size as f64);
    Complex64::new(1.0, 0.0) + gain * Complex64::from_polar(1.0, phase)
}

/// Per-active-carrier response of a single echo, in loading order. The
/// delay must stay within the guard interval, where the one-tap model is
/// exact (no inter-symbol or inter-carrier leakage).
pub fn channel_freq_response(
    delay: usize,
    gain: Complex64,
    p: &OfdmParams,
) -> Result<Vec<Complex64>> {
    p.validate()?;
    if delay > p.guard_samples() {
        return Err(Error::param(
            "delay",
            format!(
                "echo delay {delay} exceeds the guard interval ({} samples)",
                p.guard_samples()
            ),
        ));
    }
    Ok(p.carrier_offsets()
        .iter()
        .map(|&o| echo_response_at(p.bin_for_offset(o), p.fft_size, delay, gain))
        .collect())
}

/// Result of one-tap equalization.
#[derive(Debug, Clone, PartialEq)]
pub struct Equalized {
    pub cells: Vec<Complex64>,
    /// Cell indices whose channel response fell below the magnitude floor;
    /// those cells pass through unscaled and should be treated as erasures.
    pub erased: Vec<usize>,
}

/// Divides cells by the per-carrier response, cycling `h` when the cell
/// block spans several OFDM symbols.
pub fn equalize_one_tap(cells: &[Complex64], h: &[Complex64], floor: f64) -> Result<Equalized> {
    if h.is_empty() || !cells.len().is_multiple_of(h.len()) {
        return Err(Error::NotMultipleOf {
            what: "equalizer cells",
            len: cells.len(),
            multiple: h.len().max(1),
        });
    }
    let mut out = Vec::with_capacity(cells.len());
    let mut erased = Vec::new();
    for (idx, (&cell, &resp)) in cells.iter().zip(h.iter().cycle()).enumerate() {
        if resp.norm() <= floor {
            erased.push(idx);
            out.push(cell);
        } else {
            out.push(cell / resp);
        }
    }
    Ok(Equalized { cells: out, erased })
}

/// Default magnitude floor below which a carrier is flagged erased.
pub const EQUALIZER_FLOOR: f64 = 1e-6;
