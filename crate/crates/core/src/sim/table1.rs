//! Canned modulator-comparison campaign.
//!
//! Six uncoded scenarios (QAM-16, QAM-64 and QPSK at Eb/N0 = 12 and 15 dB),
//! 10500 symbols each, phase noise at -76 dBc/Hz by default, repeated over a
//! set of master seeds. Per-run seeds derive from (master, row, seed index),
//! so the campaign is reproducible and order-independent.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{ChannelSpec, NoiseRef, PhaseNoiseSpec};
use crate::error::Result;
use crate::mapping::Scheme;
use crate::metrics::analytic_ser;
use crate::sim::config::{Mode, ScenarioConfig};
use crate::sim::run::uncoded_point;
use crate::sim::seed::derive_seed;

pub const TABLE1_SYMBOLS: u64 = 10_500;
pub const TABLE1_PHASE_LEVEL_DBC_HZ: f64 = -76.0;

/// The six campaign rows: (scheme, Eb/N0 dB).
pub const TABLE1_ROWS: [(Scheme, f64); 6] = [
    (Scheme::Qam16, 12.0),
    (Scheme::Qam64, 12.0),
    (Scheme::Qpsk, 12.0),
    (Scheme::Qam16, 15.0),
    (Scheme::Qam64, 15.0),
    (Scheme::Qpsk, 15.0),
];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Table1Row {
    pub scheme: Scheme,
    pub ebn0_db: f64,
    pub phase_level_dbc_hz: Option<f64>,
    pub n_symbols: u64,
    pub seeds: Vec<u64>,
    pub errors_per_seed: Vec<u64>,
    pub mean_errors: f64,
    pub mean_ser: f64,
    pub analytic_ser: f64,
    pub analytic_expected_errors: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Table1Campaign {
    pub tool_version: String,
    pub master_seed: u64,
    pub n_seeds: usize,
    pub with_phase_noise: bool,
    pub rows: Vec<Table1Row>,
}

/// Runs the campaign over `n_seeds` master seeds.
pub fn run_table1(master_seed: u64, n_seeds: usize, with_phase_noise: bool) -> Result<Table1Campaign> {
    let rows: Result<Vec<Table1Row>> = TABLE1_ROWS
        .par_iter()
        .enumerate()
        .map(|(row_idx, &(scheme, ebn0))| {
            let phase = with_phase_noise.then(|| PhaseNoiseSpec {
                level_dbc_hz: TABLE1_PHASE_LEVEL_DBC_HZ,
                ..PhaseNoiseSpec::default()
            });
            let cfg = ScenarioConfig {
                mode: Mode::Uncoded,
                scheme,
                n_symbols: TABLE1_SYMBOLS,
                channel: ChannelSpec {
                    noise_ref: NoiseRef::Ebn0Db,
                    noise_value_db: Some(ebn0),
                    phase_noise: phase,
                    ..ChannelSpec::default()
                },
                ..ScenarioConfig::default()
            };
            let seeds: Vec<u64> = (0..n_seeds)
                .map(|s| derive_seed(master_seed, row_idx as u64, s as u64))
                .collect();
            let errors: Result<Vec<u64>> = seeds
                .par_iter()
                .map(|&seed| Ok(uncoded_point(&cfg, seed)?.symbol_stats.error_units))
                .collect();
            let errors = errors?;
            let mean_errors = errors.iter().sum::<u64>() as f64 / errors.len() as f64;
            let ser = analytic_ser(scheme, ebn0);
            Ok(Table1Row {
                scheme,
                ebn0_db: ebn0,
                phase_level_dbc_hz: with_phase_noise.then_some(TABLE1_PHASE_LEVEL_DBC_HZ),
                n_symbols: TABLE1_SYMBOLS,
                seeds,
                errors_per_seed: errors,
                mean_errors,
                mean_ser: mean_errors / TABLE1_SYMBOLS as f64,
                analytic_ser: ser,
                analytic_expected_errors: ser * TABLE1_SYMBOLS as f64,
            })
        })
        .collect();
    Ok(Table1Campaign {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        master_seed,
        n_seeds,
        with_phase_noise,
        rows: rows?,
    })
}

impl Table1Campaign {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "modulator comparison: {} seeds, master seed {}, phase noise {}\n",
            self.n_seeds,
            self.master_seed,
            if self.with_phase_noise { "on" } else { "off" },
        ));
        out.push_str(&format!(
            "{:>7} {:>5} {:>8} {:>8} {:>12} {:>12} {:>14} {:>14}\n",
            "scheme", "bits", "ebn0_db", "symbols", "mean_errors", "mean_ser", "analytic_ser", "expected_err"
        ));
        for r in &self.rows {
            out.push_str(&format!(
                "{:>7} {:>5} {:>8} {:>8} {:>12.2} {:>12.6e} {:>14.6e} {:>14.2}\n",
                r.scheme.to_string(),
                r.scheme.bits_per_symbol(),
                r.ebn0_db,
                r.n_symbols,
                r.mean_errors,
                r.mean_ser,
                r.analytic_ser,
                r.analytic_expected_errors,
            ));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("scheme,ebn0_db,phase_noise_dbc_hz,n_symbols,seed_index,seed,symbol_errors,ser\n");
        for r in &self.rows {
            for (i, (&seed, &err)) in r.seeds.iter().zip(&r.errors_per_seed).enumerate() {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.scheme,
                    r.ebn0_db,
                    r.phase_level_dbc_hz
                        .map_or("off".to_string(), |v| format!("{v}")),
                    r.n_symbols,
                    i,
                    seed,
                    err,
                    err as f64 / r.n_symbols as f64,
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("campaign serializes");
        s.push('\n');
        s
    }
}
