//! Scenario runners.
//!
//! The uncoded chain mirrors the plain modulator benchmark: draw random
//! source symbols, map, add AWGN then phase noise, hard-demap and count.
//! The coded chain runs the full concatenated transmitter and receiver:
//!
//! ```text
//! payload -> RS(255,223) -> conv 1/2 + rate-3/4 puncture -> cells
//!         -> 12x12 interleave -> QAM map -> OFDM + cyclic prefix
//!         -> echo -> AWGN -> phase noise
//!         -> OFDM demod -> one-tap equalize -> soft demap
//!         -> deinterleave -> depuncture -> Viterbi -> RS decode
//! ```
//!
//! Framing: punctured bits are zero-padded up to a whole number of cells,
//! cells are padded to whole 144-cell interleaver blocks, and after
//! interleaving more pad cells fill the last OFDM symbol. All pad counts
//! are implied by the config, so the receiver strips them by position.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::{bits_to_bytes, bits_to_uint, bytes_to_bits, uint_to_bits};
use crate::channel::{apply_awgn, apply_echo, apply_phase_noise, ChannelSpec, NoiseRef};
use crate::conv::{conv_encode, depuncture, puncture, ConvParams, PunctureConfig};
use crate::error::{Error, Result};
use crate::interleave::{deinterleave_block, interleave_block, InterleaverParams};
use crate::mapping::{demap_hard_symbols, demap_soft, map_symbols};
use crate::metrics::{
    analytic_ber, analytic_ser, count_bit_errors, count_byte_errors, count_symbol_errors,
};
use crate::ofdm::{channel_freq_response, equalize_one_tap, Ofdm, EQUALIZER_FLOOR};
use crate::rs::{RsCode, RsParams};
use crate::sim::config::{Mode, ScenarioConfig};
use crate::sim::report::{CodedStats, Report, ScenarioResult};
use crate::sim::seed::{derive_seed, substream, Lane};
use crate::viterbi::viterbi_decode;

/// Runs an uncoded scenario with the seed taken from the config.
pub fn run_uncoded_scenario(cfg: &ScenarioConfig) -> Result<Report> {
    cfg.validate()?;
    if cfg.mode != Mode::Uncoded {
        return Err(Error::config("mode", "run_uncoded_scenario needs uncoded mode"));
    }
    let start = std::time::Instant::now();
    let result = uncoded_point(cfg, cfg.seed)?;
    let mut report = Report::new(cfg.clone(), vec![result]);
    report.elapsed = start.elapsed();
    Ok(report)
}

/// One uncoded trial with an explicit trial seed (sweeps and campaigns
/// derive these from their master seed).
pub(crate) fn uncoded_point(cfg: &ScenarioConfig, trial_seed: u64) -> Result<ScenarioResult> {
    let scheme = cfg.scheme;
    let m = scheme.points() as u32;
    let channel = cfg.resolved_channel();

    let mut src = ChaCha8Rng::seed_from_u64(substream(trial_seed, Lane::Source));
    let tx_syms: Vec<u32> = (0..cfg.n_symbols).map(|_| src.random_range(0..m)).collect();
    let iq = map_symbols(&tx_syms, scheme);

    let rx = push_through_channel(iq, &channel, cfg.energy_ref, trial_seed)?.0;

    let rx_syms = demap_hard_symbols(&rx, scheme);
    let symbol_stats = count_symbol_errors(&tx_syms, &rx_syms)?;

    let k = scheme.bits_per_symbol();
    let tx_bits: Vec<u8> = tx_syms.iter().flat_map(|&s| uint_to_bits(s, k)).collect();
    let rx_bits: Vec<u8> = rx_syms.iter().flat_map(|&s| uint_to_bits(s, k)).collect();
    let bit_stats = count_bit_errors(&tx_bits, &rx_bits)?;

    let ebn0 = channel.ebn0_db().filter(|v| v.is_finite());
    Ok(ScenarioResult {
        ebn0_db: ebn0,
        seed: trial_seed,
        n_symbols: cfg.n_symbols,
        symbol_stats,
        bit_stats,
        analytic_ser: ebn0.map(|e| analytic_ser(scheme, e)),
        analytic_ber: ebn0.map(|e| analytic_ber(scheme, e)),
        coded: None,
    })
}

/// Applies the channel impairment stack in the frozen order: echo (coded
/// chains only), AWGN, then phase noise. Returns samples and the noise
/// density used.
fn push_through_channel(
    iq: Vec<Complex64>,
    channel: &ChannelSpec,
    energy_ref: crate::channel::EnergyRef,
    trial_seed: u64,
) -> Result<(Vec<Complex64>, Option<f64>)> {
    let after_echo = match &channel.echo {
        Some(echo) => apply_echo(&iq, echo.delay_samples, echo.gain()),
        None => iq,
    };
    let awgn = apply_awgn(
        &after_echo,
        channel,
        energy_ref,
        substream(trial_seed, Lane::Awgn),
    )?;
    let samples = match &channel.phase_noise {
        Some(pn) => apply_phase_noise(&awgn.samples, pn, substream(trial_seed, Lane::PhaseNoise)),
        None => awgn.samples,
    };
    Ok((samples, awgn.n0))
}

/// Fixed pad-cell bit pattern (alternating, MSB first).
fn pad_cell_value(cell_bits: usize) -> u32 {
    // 10, 1010, 101010
    let mut v = 0u32;
    for i in 0..cell_bits {
        v = (v << 1) | ((i as u32 + 1) & 1);
    }
    v
}

/// Runs the full concatenated chain once.
pub fn run_coded_scenario(cfg: &ScenarioConfig) -> Result<Report> {
    cfg.validate()?;
    if cfg.mode != Mode::Coded {
        return Err(Error::config("mode", "run_coded_scenario needs coded mode"));
    }
    let start = std::time::Instant::now();
    let result = coded_point(cfg, cfg.seed)?;
    let mut report = Report::new(cfg.clone(), vec![result]);
    report.elapsed = start.elapsed();
    Ok(report)
}

pub(crate) fn coded_point(cfg: &ScenarioConfig, trial_seed: u64) -> Result<ScenarioResult> {
    let scheme = cfg.scheme;
    let cell_bits = scheme.bits_per_symbol();
    let channel = cfg.resolved_channel();
    let ofdm_params = cfg.ofdm_params();
    let ofdm = Ofdm::new(ofdm_params)?;
    let rs = RsCode::new(RsParams::default())?;
    let conv_params = ConvParams::default();
    let punct = PunctureConfig::rate_3_4();
    let il = InterleaverParams::new(cell_bits)?;

    // --- transmitter ---
    let mut src = ChaCha8Rng::seed_from_u64(substream(trial_seed, Lane::Source));
    let payload: Vec<u8> = (0..cfg.payload_bytes).map(|_| src.random()).collect();

    let rs_k = rs.params().k;
    let n_blocks = payload.len().div_ceil(rs_k);
    let mut message = payload.clone();
    message.resize(n_blocks * rs_k, 0);
    let mut coded_bytes = Vec::with_capacity(n_blocks * rs.params().n);
    for block in message.chunks_exact(rs_k) {
        coded_bytes.extend(rs.encode(block)?);
    }

    let coded_bits = bytes_to_bits(&coded_bytes);
    let mother = conv_encode(&coded_bits, &conv_params)?;
    let punctured = puncture(&mother, &punct)?;

    // bit padding up to a whole number of cells
    let mut cell_bits_stream = punctured.clone();
    let bit_pad = (cell_bits - cell_bits_stream.len() % cell_bits) % cell_bits;
    cell_bits_stream.extend(std::iter::repeat_n(0, bit_pad));

    let mut tx_cells: Vec<u32> = cell_bits_stream
        .chunks_exact(cell_bits)
        .map(bits_to_uint)
        .collect();
    let data_cells = tx_cells.len();

    // pad to whole interleaver blocks
    let block = il.block_cells();
    let il_pad = (block - data_cells % block) % block;
    tx_cells.extend(std::iter::repeat_n(pad_cell_value(cell_bits), il_pad));
    let interleaved = interleave_block(&tx_cells, &il)?;

    // pad to whole OFDM symbols
    let carriers = ofdm_params.active_carriers;
    let ofdm_pad = (carriers - interleaved.len() % carriers) % carriers;
    let mut frame_cells = interleaved;
    frame_cells.extend(std::iter::repeat_n(pad_cell_value(cell_bits), ofdm_pad));
    let n_frame_cells = frame_cells.len();

    let tx_iq = map_symbols(&frame_cells, scheme);
    let frame = ofdm.modulate(&tx_iq)?;

    // --- channel ---
    let (rx_samples, n0) =
        push_through_channel(frame.samples, &channel, cfg.energy_ref, trial_seed)?;

    // --- receiver ---
    let rx_cells_iq = ofdm.demodulate(&rx_samples)?;
    let (rx_cells_iq, erased) = match &channel.echo {
        Some(echo) => {
            let h = channel_freq_response(echo.delay_samples, echo.gain(), &ofdm_params)?;
            let eq = equalize_one_tap(&rx_cells_iq, &h, EQUALIZER_FLOOR)?;
            (eq.cells, eq.erased)
        }
        None => (rx_cells_iq, Vec::new()),
    };

    // Noiseless chains still need a positive LLR scale; any constant works.
    let noise_var = n0.unwrap_or(1.0);
    let mut llrs = demap_soft(&rx_cells_iq, scheme, noise_var)?;
    for &cell_idx in &erased {
        for b in 0..cell_bits {
            llrs[cell_idx * cell_bits + b] = 0.0;
        }
    }

    debug_assert_eq!(llrs.len(), n_frame_cells * cell_bits);
    let rx_soft_cells: Vec<Vec<f64>> = llrs
        .chunks_exact(cell_bits)
        .take(data_cells + il_pad) // strip OFDM pad cells
        .map(|c| c.to_vec())
        .collect();
    let deinterleaved = deinterleave_block(&rx_soft_cells, &il)?;
    let mut soft_stream: Vec<f64> = deinterleaved.into_iter().flatten().collect();
    soft_stream.truncate(punctured.len()); // strip pad cells and bit padding

    // pre-FEC stats against the transmitted punctured stream
    let hard_stream: Vec<u8> = soft_stream.iter().map(|&l| u8::from(l < 0.0)).collect();
    let bit_stats = count_bit_errors(&punctured, &hard_stream)?;
    let tx_data_cells = &tx_cells[..data_cells];
    let rx_data_cells: Vec<u32> = {
        let mut padded = hard_stream.clone();
        padded.extend(std::iter::repeat_n(0, bit_pad));
        padded.chunks_exact(cell_bits).map(bits_to_uint).collect()
    };
    let symbol_stats = count_symbol_errors(tx_data_cells, &rx_data_cells)?;

    // FEC decoding
    let mother_soft = depuncture(&soft_stream, &punct)?;
    let decoded_bits = viterbi_decode(&mother_soft, &conv_params)?;
    let decoded_bytes = bits_to_bytes(&decoded_bits);

    let mut recovered = Vec::with_capacity(n_blocks * rs_k);
    let mut rs_decode_failures = 0u64;
    let mut rs_symbols_corrected = 0u64;
    for block in decoded_bytes.chunks_exact(rs.params().n) {
        match rs.decode(block) {
            Ok(decoded) => {
                rs_symbols_corrected += decoded.corrected as u64;
                recovered.extend(decoded.message);
            }
            Err(Error::RsDecodeFailure(_)) => {
                rs_decode_failures += 1;
                // best effort: systematic part as-is
                recovered.extend_from_slice(&block[..rs_k]);
            }
            Err(e) => return Err(e),
        }
    }
    recovered.truncate(payload.len());

    let post_fec_byte_stats = count_byte_errors(&payload, &recovered)?;
    let post_fec_bit_stats = count_bit_errors(&bytes_to_bits(&payload), &bytes_to_bits(&recovered))?;

    let ebn0 = channel.ebn0_db().filter(|v| v.is_finite());
    Ok(ScenarioResult {
        ebn0_db: ebn0,
        seed: trial_seed,
        n_symbols: data_cells as u64,
        symbol_stats,
        bit_stats,
        analytic_ser: None,
        analytic_ber: None,
        coded: Some(CodedStats {
            payload_bytes: payload.len(),
            rs_blocks: n_blocks as u64,
            rs_decode_failures,
            rs_symbols_corrected,
            post_fec_bit_stats,
            post_fec_byte_stats,
            payload_recovered_exactly: recovered == payload,
            erased_carriers: erased.len() as u64,
        }),
    })
}

/// Runs one uncoded scenario per sweep Eb/N0 value. Point seeds derive from
/// (master seed, point index); points may run in parallel without changing
/// any result.
pub fn sweep_curve(cfg: &ScenarioConfig) -> Result<Report> {
    cfg.validate()?;
    let Some(sweep) = cfg.sweep.clone() else {
        return Err(Error::config("sweep", "sweep list required"));
    };
    if cfg.mode != Mode::Uncoded {
        return Err(Error::config("mode", "sweep campaigns run the uncoded chain"));
    }
    let start = std::time::Instant::now();
    let results: Result<Vec<ScenarioResult>> = sweep
        .par_iter()
        .enumerate()
        .map(|(idx, &ebn0)| {
            let point_cfg = ScenarioConfig {
                channel: ChannelSpec {
                    noise_ref: NoiseRef::Ebn0Db,
                    noise_value_db: Some(ebn0),
                    ..cfg.channel.clone()
                },
                sweep: None,
                ..cfg.clone()
            };
            uncoded_point(&point_cfg, derive_seed(cfg.seed, idx as u64, 0))
        })
        .collect();
    let mut report = Report::new(cfg.clone(), results?);
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Post-channel samples of an uncoded scenario, for scatter dumps.
pub fn scatter_points(cfg: &ScenarioConfig, n_points: usize) -> Result<Vec<Complex64>> {
    cfg.validate()?;
    if cfg.mode != Mode::Uncoded {
        return Err(Error::config("mode", "scatter dumps run the uncoded chain"));
    }
    if n_points == 0 {
        return Err(Error::config("n_points", "must be >= 1"));
    }
    let scheme = cfg.scheme;
    let m = scheme.points() as u32;
    let channel = cfg.resolved_channel();
    let mut src = ChaCha8Rng::seed_from_u64(substream(cfg.seed, Lane::Source));
    let tx_syms: Vec<u32> = (0..n_points).map(|_| src.random_range(0..m)).collect();
    let iq = map_symbols(&tx_syms, scheme);
    Ok(push_through_channel(iq, &channel, cfg.energy_ref, cfg.seed)?.0)
}
