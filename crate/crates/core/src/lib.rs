//! Baseband building blocks for a DVB-T-style COFDM simulation lab.
//!
//! The crate covers the full concatenated transmission chain and the
//! channel/measurement machinery needed to run deterministic Monte Carlo
//! error-rate campaigns:
//!
//! - [`gf256`] / [`rs`] — GF(2^8) arithmetic and the Reed-Solomon (255,223)
//!   outer codec
//! - [`conv`] / [`viterbi`] — rate-1/2 convolutional mother code, rate-3/4
//!   puncturing and soft-decision Viterbi decoding
//! - [`interleave`] — the 12x12 block frequency interleaver
//! - [`mapping`] — Gray-coded QPSK/16-QAM/64-QAM mapping and demapping
//! - [`ofdm`] — OFDM modulation with cyclic prefix and one-tap equalization
//! - [`channel`] — AWGN, oscillator phase noise and static echo models
//! - [`metrics`] — error counting, Wilson intervals and analytic SER/BER
//! - [`sim`] — scenario configs, seed derivation, runners and reports
//!
//! Everything is a pure function of its inputs plus an explicit 64-bit seed,
//! so any scenario reruns bit-identically regardless of parallelism.
//!
//! ```
//! use cofdm_core::channel::{ChannelSpec, NoiseRef};
//! use cofdm_core::sim::{run_uncoded_scenario, Mode, ScenarioConfig};
//! use cofdm_core::Scheme;
//!
//! let cfg = ScenarioConfig {
//!     mode: Mode::Uncoded,
//!     scheme: Scheme::Qam64,
//!     n_symbols: 10_500,
//!     channel: ChannelSpec {
//!         noise_ref: NoiseRef::Ebn0Db,
//!         noise_value_db: Some(12.0),
//!         ..ChannelSpec::default()
//!     },
//!     seed: 1,
//!     ..ScenarioConfig::default()
//! };
//! let report = run_uncoded_scenario(&cfg).unwrap();
//! let ser = report.results[0].symbol_stats.rate;
//! assert!(ser > 0.0 && ser < 0.1);
//! ```

pub mod bits;
pub mod channel;
pub mod conv;
pub mod error;
pub mod gf256;
pub mod interleave;
pub mod mapping;
pub mod metrics;
pub mod ofdm;
pub mod rs;
pub mod sim;
pub mod viterbi;

pub use error::{Error, Result};
pub use mapping::Scheme;

/// Complex baseband sample type used throughout the crate.
pub type Iq = num_complex::Complex64;
