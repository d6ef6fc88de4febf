//! Rate-1/2 convolutional mother code and rate-3/4 puncturing.
//!
//! The mother code is the constraint-length-7 code with generators
//! (171, 133) octal. Generator bit 6 (MSB of the 7-bit mask) taps the
//! current input bit, bit 0 the oldest. Each input bit produces the output
//! pair (X, Y) = (parity(reg & 171), parity(reg & 133)), serialized X first.
//!
//! Rate 3/4 is obtained by deleting mother-stream positions 2 and 5 of every
//! 6 (keep masks X: 101, Y: 110), i.e. every third serialized value is
//! removed, so n info bits come out as 4n/3 transmitted bits. The receiver
//! reinserts zero-LLR erasures at the deleted positions before Viterbi
//! decoding.

use crate::error::{Error, Result};

/// Soft bit: sign is the hard decision (positive means bit 0), magnitude is
/// reliability, exact zero is an erasure.
pub type SoftBit = f64;

/// Mother-code parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvParams {
    /// Constraint length K (register holds K-1 previous bits).
    pub constraint_length: usize,
    /// Tap masks, MSB = current input bit. Defaults are 171/133 octal.
    pub generators: [u16; 2],
    /// Append K-1 zero flush bits so the encoder ends in the all-zero state.
    pub terminate: bool,
}

impl Default for ConvParams {
    fn default() -> Self {
        ConvParams {
            constraint_length: 7,
            generators: [0o171, 0o133],
            terminate: true,
        }
    }
}

impl ConvParams {
    pub fn tail_bits(&self) -> usize {
        if self.terminate {
            self.constraint_length - 1
        } else {
            0
        }
    }

    pub fn n_states(&self) -> usize {
        1 << (self.constraint_length - 1)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let k = self.constraint_length;
        if !(2..=16).contains(&k) {
            return Err(Error::param(
                "constraint_length",
                format!("{k} not in 2..=16"),
            ));
        }
        let mask = (1u16 << k) - 1;
        let top = 1u16 << (k - 1);
        if self.generators.iter().any(|&g| g == 0 || g & !mask != 0) {
            return Err(Error::param(
                "generators",
                "each tap mask must be nonzero and fit the constraint length",
            ));
        }
        if self.generators.iter().all(|&g| g & top == 0) {
            return Err(Error::param(
                "generators",
                "at least one generator must tap the current input bit",
            ));
        }
        Ok(())
    }

    /// Output pair for one step: register = (input << (K-1)) | state.
    #[inline]
    pub(crate) fn output_pair(&self, state: usize, input: u8) -> (u8, u8) {
        let reg = ((input as usize) << (self.constraint_length - 1)) | state;
        let x = (reg & self.generators[0] as usize).count_ones() as u8 & 1;
        let y = (reg & self.generators[1] as usize).count_ones() as u8 & 1;
        (x, y)
    }

    /// State after consuming `input`: drop the oldest bit, newest on top.
    #[inline]
    pub(crate) fn next_state(&self, state: usize, input: u8) -> usize {
        let reg = ((input as usize) << (self.constraint_length - 1)) | state;
        reg >> 1
    }
}

/// Encodes `bits` with the mother code, flushing the register when
/// termination is enabled. Output length is 2*(len + tail).
pub fn conv_encode(bits: &[u8], params: &ConvParams) -> Result<Vec<u8>> {
    params.validate()?;
    let tail = params.tail_bits();
    let mut out = Vec::with_capacity(2 * (bits.len() + tail));
    let mut state = 0usize;
    for &b in bits.iter().chain(std::iter::repeat_n(&0u8, tail)) {
        let (x, y) = params.output_pair(state, b & 1);
        out.push(x);
        out.push(y);
        state = params.next_state(state, b & 1);
    }
    Ok(out)
}

/// Puncture keep-mask, applied periodically over the serialized mother
/// stream (X1 Y1 X2 Y2 ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PunctureConfig {
    pattern: Vec<bool>,
}

impl PunctureConfig {
    /// Arbitrary keep-mask; must be nonempty with at least one kept position.
    pub fn new(pattern: &[bool]) -> Result<Self> {
        if pattern.is_empty() || !pattern.iter().any(|&p| p) {
            return Err(Error::param(
                "pattern",
                "keep-mask must be nonempty and keep at least one position",
            ));
        }
        Ok(PunctureConfig {
            pattern: pattern.to_vec(),
        })
    }

    /// The rate-3/4 mask (X: 101, Y: 110): serialized keep-mask 110110,
    /// deleting every third value of the mother stream.
    pub fn rate_3_4() -> Self {
        PunctureConfig {
            pattern: vec![true, true, false, true, true, false],
        }
    }

    /// Degenerate all-kept mask of the given period.
    pub fn all_kept(period: usize) -> Self {
        PunctureConfig {
            pattern: vec![true; period.max(1)],
        }
    }

    pub fn period(&self) -> usize {
        self.pattern.len()
    }

    pub fn kept_per_period(&self) -> usize {
        self.pattern.iter().filter(|&&p| p).count()
    }

    pub fn pattern(&self) -> &[bool] {
        &self.pattern
    }

    /// Punctured length for a mother-stream length (must be period-aligned).
    pub fn punctured_len(&self, mother_len: usize) -> usize {
        mother_len / self.period() * self.kept_per_period()
    }
}

/// Deletes masked positions from the mother stream.
pub fn puncture(bits: &[u8], cfg: &PunctureConfig) -> Result<Vec<u8>> {
    if !bits.len().is_multiple_of(cfg.period()) {
        return Err(Error::NotMultipleOf {
            what: "puncture input",
            len: bits.len(),
            multiple: cfg.period(),
        });
    }
    Ok(bits
        .iter()
        .zip(cfg.pattern.iter().cycle())
        .filter_map(|(&b, &keep)| keep.then_some(b))
        .collect())
}

/// Reinserts erasures (zero LLRs) at punctured positions, restoring the
/// mother-stream length.
pub fn depuncture(soft: &[SoftBit], cfg: &PunctureConfig) -> Result<Vec<SoftBit>> {
    let kept = cfg.kept_per_period();
    if !soft.len().is_multiple_of(kept) {
        return Err(Error::NotMultipleOf {
            what: "depuncture input",
            len: soft.len(),
            multiple: kept,
        });
    }
    let mut out = Vec::with_capacity(soft.len() / kept * cfg.period());
    let mut it = soft.iter();
    while out.len() < soft.len() / kept * cfg.period() {
        for &keep in &cfg.pattern {
            if keep {
                out.push(*it.next().expect("length checked"));
            } else {
                out.push(0.0);
            }
        }
    }
    Ok(out)
}
