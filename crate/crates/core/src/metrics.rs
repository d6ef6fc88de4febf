//! Error counting, Wilson confidence intervals and analytic SER/BER curves.
//!
//! The analytic symbol error rate for square M-QAM (QPSK treated as 4-QAM)
//! is the exact double-counting-corrected expression
//!
//! ```text
//! SER = 1 - (1 - p)^2,  p = 2 (1 - 1/sqrt(M)) Q( sqrt(3 Es/N0 / (M-1)) )
//! ```
//!
//! and the bit error rate is the standard exact per-bit expansion for
//! Gray-mapped square QAM:
//!
//! ```text
//! BER = 1/log2(sqrt(M)) * sum_{k=1}^{log2(sqrt(M))} P_b(k)
//! P_b(k) = 1/sqrt(M) * sum_{i=0}^{(1-2^-k) sqrt(M) - 1}
//!          (-1)^floor(i 2^(k-1) / sqrt(M))
//!          * (2^(k-1) - floor(i 2^(k-1)/sqrt(M) + 1/2))
//!          * 2 Q( (2i+1) sqrt(3 Es/N0 / (M-1)) )
//! ```
//!
//! which reduces to BER = Q(sqrt(2 Eb/N0)) exactly for QPSK.

use serde::{Deserialize, Serialize};

use crate::channel::ebn0_to_esn0;
use crate::error::{Error, Result};
use crate::mapping::Scheme;

/// z for a central 95% interval.
const Z95: f64 = 1.959963984540054;

/// Counts of compared units with a rate estimate and Wilson 95% interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorStats {
    pub total_units: u64,
    pub error_units: u64,
    pub rate: f64,
    pub ci95: (f64, f64),
}

impl ErrorStats {
    pub fn from_counts(error_units: u64, total_units: u64) -> Self {
        assert!(error_units <= total_units, "more errors than units");
        if total_units == 0 {
            return ErrorStats {
                total_units,
                error_units,
                rate: 0.0,
                ci95: (0.0, 1.0),
            };
        }
        let n = total_units as f64;
        let p = error_units as f64 / n;
        let z2 = Z95 * Z95;
        let denom = 1.0 + z2 / n;
        let center = (p + z2 / (2.0 * n)) / denom;
        let half = (Z95 / denom) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
        // The exact Wilson bounds are 0/1 at the boundary counts; pin them so
        // rounding never pushes the estimate outside its own interval.
        let lo = if error_units == 0 {
            0.0
        } else {
            (center - half).max(0.0)
        };
        let hi = if error_units == total_units {
            1.0
        } else {
            (center + half).min(1.0)
        };
        ErrorStats {
            total_units,
            error_units,
            rate: p,
            ci95: (lo, hi),
        }
    }

    /// Half-width of the Wilson interval.
    pub fn ci_half_width(&self) -> f64 {
        (self.ci95.1 - self.ci95.0) / 2.0
    }
}

fn count_errors<T: PartialEq>(tx: &[T], rx: &[T], what: &'static str) -> Result<ErrorStats> {
    if tx.len() != rx.len() {
        return Err(Error::SizeMismatch {
            what,
            expected: tx.len(),
            got: rx.len(),
        });
    }
    let errors = tx.iter().zip(rx).filter(|(a, b)| a != b).count() as u64;
    Ok(ErrorStats::from_counts(errors, tx.len() as u64))
}

/// Positional comparison of integer symbol streams.
pub fn count_symbol_errors(tx: &[u32], rx: &[u32]) -> Result<ErrorStats> {
    count_errors(tx, rx, "symbol streams")
}

/// Positional comparison of bit streams.
pub fn count_bit_errors(tx: &[u8], rx: &[u8]) -> Result<ErrorStats> {
    count_errors(tx, rx, "bit streams")
}

/// Positional comparison of byte streams.
pub fn count_byte_errors(tx: &[u8], rx: &[u8]) -> Result<ErrorStats> {
    count_errors(tx, rx, "byte streams")
}

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// Exact SER of Gray-mapped square M-QAM at the given Eb/N0 (AWGN only).
pub fn analytic_ser(s: Scheme, ebn0_db: f64) -> f64 {
    let m = s.points() as f64;
    let k = s.bits_per_symbol() as u8;
    let esn0_db = ebn0_to_esn0(ebn0_db, k, 1.0).expect("valid scheme");
    let esn0 = 10f64.powf(esn0_db / 10.0);
    let p = 2.0 * (1.0 - 1.0 / m.sqrt()) * q_function((3.0 * esn0 / (m - 1.0)).sqrt());
    1.0 - (1.0 - p) * (1.0 - p)
}

/// Exact BER of Gray-mapped square M-QAM at the given Eb/N0 (AWGN only).
pub fn analytic_ber(s: Scheme, ebn0_db: f64) -> f64 {
    let m = s.points() as f64;
    let sqm = m.sqrt();
    let l = (sqm as usize).ilog2() as usize; // bits per axis
    let k = s.bits_per_symbol() as u8;
    let esn0_db = ebn0_to_esn0(ebn0_db, k, 1.0).expect("valid scheme");
    let esn0 = 10f64.powf(esn0_db / 10.0);
    let arg_base = (3.0 * esn0 / (m - 1.0)).sqrt();

    let mut total = 0.0;
    for kk in 1..=l {
        let two_km1 = (1u64 << (kk - 1)) as f64;
        let upper = ((1.0 - 2f64.powi(-(kk as i32))) * sqm) as usize;
        let mut pbk = 0.0;
        for i in 0..upper {
            let frac = (i as f64) * two_km1 / sqm;
            let sign = if (frac.floor() as i64) % 2 == 0 { 1.0 } else { -1.0 };
            let weight = two_km1 - (frac + 0.5).floor();
            pbk += sign * weight * 2.0 * q_function((2 * i + 1) as f64 * arg_base);
        }
        total += pbk / sqm;
    }
    total / l as f64
}
