//! Deterministic seed derivation.
//!
//! Per-trial seeds are a pure function of (master seed, scenario index,
//! trial index), and every stochastic stage inside a trial draws from its
//! own substream lane. The mixing function is the SplitMix64 finalizer; the
//! whole scheme is frozen by test vectors so reports stay reproducible
//! across releases.

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Trial seed for (master, scenario index, trial index).
pub fn derive_seed(master: u64, scenario_index: u64, trial_index: u64) -> u64 {
    let a = mix64(master.wrapping_add(0x9E37_79B9_7F4A_7C15));
    let b = mix64(a ^ scenario_index.wrapping_add(0xBF58_476D_1CE4_E5B9));
    mix64(b ^ trial_index.wrapping_add(0x94D0_49BB_1331_11EB))
}

/// Substream lanes inside one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lane {
    Source = 0,
    Awgn = 1,
    PhaseNoise = 2,
}

/// Seed for one stochastic stage of a trial.
pub fn substream(trial_seed: u64, lane: Lane) -> u64 {
    mix64(trial_seed ^ (lane as u64).wrapping_mul(0xD6E8_FEB8_6659_FD93).wrapping_add(1))
}
