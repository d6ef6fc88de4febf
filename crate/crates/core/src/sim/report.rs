//! Machine-readable scenario reports.
//!
//! Reports embed the full config and every derived seed, so rerunning the
//! serialized config reproduces them byte-for-byte. Wall-clock time is kept
//! out of the serialized forms (it would break that guarantee) and only
//! appears in the human-readable rendering.

use serde::{Deserialize, Serialize};

use crate::metrics::ErrorStats;
use crate::sim::config::ScenarioConfig;

/// Pinned column set of sweep CSV output.
pub const SWEEP_CSV_HEADER: &str = "ebn0_db,scheme,n_symbols,symbol_errors,ser,ser_ci_lo,\
ser_ci_hi,bit_errors,ber,analytic_ser,analytic_ber,seed";

/// Header of scatter CSV dumps.
pub const SCATTER_CSV_HEADER: &str = "index,i,q";

/// Post-FEC accounting for coded scenarios.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodedStats {
    pub payload_bytes: usize,
    pub rs_blocks: u64,
    pub rs_decode_failures: u64,
    pub rs_symbols_corrected: u64,
    pub post_fec_bit_stats: ErrorStats,
    pub post_fec_byte_stats: ErrorStats,
    pub payload_recovered_exactly: bool,
    /// Carriers flagged erased by the equalizer.
    pub erased_carriers: u64,
}

/// Outcome of one scenario (one sweep point).
///
/// For uncoded runs `symbol_stats`/`bit_stats` compare source symbols and
/// their bits. For coded runs they compare transmitted constellation cells
/// and punctured-stream bits before FEC; `coded` carries the post-FEC side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    /// Eb/N0 this point resolves to; `None` when the channel is noiseless.
    pub ebn0_db: Option<f64>,
    pub seed: u64,
    pub n_symbols: u64,
    pub symbol_stats: ErrorStats,
    pub bit_stats: ErrorStats,
    pub analytic_ser: Option<f64>,
    pub analytic_ber: Option<f64>,
    pub coded: Option<CodedStats>,
}

/// A full scenario or sweep report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub config: ScenarioConfig,
    pub results: Vec<ScenarioResult>,
    #[serde(skip)]
    pub elapsed: std::time::Duration,
}

impl Report {
    pub fn new(config: ScenarioConfig, results: Vec<ScenarioResult>) -> Self {
        Report {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            results,
            elapsed: std::time::Duration::ZERO,
        }
    }

    /// Deterministic JSON rendering.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Deterministic CSV rendering with the pinned sweep header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SWEEP_CSV_HEADER);
        out.push('\n');
        for r in &self.results {
            let ebn0 = r.ebn0_db.map_or("inf".to_string(), fmt_f64);
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                ebn0,
                self.config.scheme,
                r.n_symbols,
                r.symbol_stats.error_units,
                fmt_f64(r.symbol_stats.rate),
                fmt_f64(r.symbol_stats.ci95.0),
                fmt_f64(r.symbol_stats.ci95.1),
                r.bit_stats.error_units,
                fmt_f64(r.bit_stats.rate),
                r.analytic_ser.map_or("nan".to_string(), fmt_f64),
                r.analytic_ber.map_or("nan".to_string(), fmt_f64),
                r.seed,
            ));
        }
        out
    }

    /// Human-readable summary (the only place elapsed time appears).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "scenario: mode={} scheme={} seed={}\n",
            self.config.mode, self.config.scheme, self.config.seed
        ));
        out.push_str(&format!(
            "{:>8}  {:>10}  {:>12}  {:>12}  {:>12}  {:>12}\n",
            "ebn0_db", "sym_errors", "ser", "ber", "analytic_ser", "analytic_ber"
        ));
        for r in &self.results {
            out.push_str(&format!(
                "{:>8}  {:>10}  {:>12.6e}  {:>12.6e}  {:>12}  {:>12}\n",
                r.ebn0_db.map_or("inf".into(), |v| format!("{v}")),
                r.symbol_stats.error_units,
                r.symbol_stats.rate,
                r.bit_stats.rate,
                r.analytic_ser
                    .map_or("-".into(), |v| format!("{v:.6e}")),
                r.analytic_ber
                    .map_or("-".into(), |v| format!("{v:.6e}")),
            ));
            if let Some(coded) = &r.coded {
                out.push_str(&format!(
                    "          post-FEC: ber={:.6e} byte_err={} rs_failures={} corrected={} exact={}\n",
                    coded.post_fec_bit_stats.rate,
                    coded.post_fec_byte_stats.error_units,
                    coded.rs_decode_failures,
                    coded.rs_symbols_corrected,
                    coded.payload_recovered_exactly,
                ));
            }
        }
        out.push_str(&format!("elapsed: {:.3}s\n", self.elapsed.as_secs_f64()));
        out
    }
}

/// Scatter CSV: `index,i,q` rows of post-channel samples.
pub fn render_scatter_csv(points: &[crate::Iq]) -> String {
    let mut out = String::from(SCATTER_CSV_HEADER);
    out.push('\n');
    for (i, z) in points.iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", i, fmt_f64(z.re), fmt_f64(z.im)));
    }
    out
}

/// Shortest round-trippable float formatting (Rust's default Display).
fn fmt_f64(v: f64) -> String {
    format!("{v}")
}
