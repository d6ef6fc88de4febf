//! Soft-decision Viterbi decoder for the mother code.
//!
//! Full traceback over the whole trellis, so the output is the exact
//! maximum-likelihood message under the additive LLR metric (positive LLR
//! means bit 0, zero is an erasure and contributes nothing). With
//! termination enabled the path is constrained to start and end in the
//! all-zero state; otherwise the best end state wins. Metric ties keep the
//! first-examined branch (lower predecessor state, then input 0), which
//! makes decoding deterministic.

use crate::conv::{ConvParams, SoftBit};
use crate::error::{Error, Result};

/// Decodes a mother-rate soft stream (two LLRs per trellis step) into the
/// original message bits. For a terminated stream of length 2*(k + K - 1)
/// the result has length k.
pub fn viterbi_decode(soft: &[SoftBit], params: &ConvParams) -> Result<Vec<u8>> {
    params.validate()?;
    if !soft.len().is_multiple_of(2) {
        return Err(Error::NotMultipleOf {
            what: "viterbi input",
            len: soft.len(),
            multiple: 2,
        });
    }
    let n_steps = soft.len() / 2;
    let tail = params.tail_bits();
    if n_steps < tail {
        return Err(Error::SizeMismatch {
            what: "viterbi input steps",
            expected: tail,
            got: n_steps,
        });
    }

    let n_states = params.n_states();
    let top_shift = params.constraint_length - 2;

    // Precomputed branch table: (next_state, bipolar X, bipolar Y) per
    // (state, input).
    let mut next = vec![0usize; n_states * 2];
    let mut out_x = vec![0.0f64; n_states * 2];
    let mut out_y = vec![0.0f64; n_states * 2];
    for s in 0..n_states {
        for u in 0..2usize {
            let (x, y) = params.output_pair(s, u as u8);
            next[s * 2 + u] = params.next_state(s, u as u8);
            out_x[s * 2 + u] = 1.0 - 2.0 * f64::from(x);
            out_y[s * 2 + u] = 1.0 - 2.0 * f64::from(y);
        }
    }

    let mut metrics = vec![f64::NEG_INFINITY; n_states];
    metrics[0] = 0.0;
    let mut new_metrics = vec![f64::NEG_INFINITY; n_states];
    // Predecessor state per (step, state); u8 is enough for K <= 9, use u16
    // to keep the K knob honest.
    let mut survivors = vec![0u16; n_steps * n_states];

    for step in 0..n_steps {
        let lx = soft[2 * step];
        let ly = soft[2 * step + 1];
        new_metrics.fill(f64::NEG_INFINITY);
        let row = &mut survivors[step * n_states..(step + 1) * n_states];
        for (s, &m) in metrics.iter().enumerate() {
            if m == f64::NEG_INFINITY {
                continue;
            }
            for u in 0..2usize {
                let idx = s * 2 + u;
                let cand = m + lx * out_x[idx] + ly * out_y[idx];
                let ns = next[idx];
                if cand > new_metrics[ns] {
                    new_metrics[ns] = cand;
                    row[ns] = s as u16;
                }
            }
        }
        std::mem::swap(&mut metrics, &mut new_metrics);
    }

    // Terminated paths must end in state 0; otherwise take the best state.
    let mut state = if params.terminate {
        if metrics[0] == f64::NEG_INFINITY {
            return Err(Error::SizeMismatch {
                what: "viterbi terminated path",
                expected: tail,
                got: n_steps,
            });
        }
        0usize
    } else {
        metrics
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite metrics"))
            .map(|(s, _)| s)
            .unwrap_or(0)
    };

    // The input consumed at each step is the top bit of the state after it.
    let mut decoded = vec![0u8; n_steps];
    for step in (0..n_steps).rev() {
        decoded[step] = (state >> top_shift) as u8 & 1;
        state = survivors[step * n_states + state] as usize;
    }
    decoded.truncate(n_steps - tail);
    Ok(decoded)
}
