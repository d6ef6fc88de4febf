//! Gray-coded square-constellation mapping and demapping.
//!
//! Bit-to-point labeling follows the DVB convention: within each symbol the
//! even-indexed bits (MSB first) select the I coordinate and the odd-indexed
//! bits the Q coordinate. On each axis the first bit is the sign (0 =
//! positive) and the remaining bits Gray-code the magnitude, outermost level
//! first:
//!
//! - QPSK   axis: 0 -> +1, 1 -> -1
//! - 16-QAM axis: sign, then 0 -> 3, 1 -> 1
//! - 64-QAM axis: sign, then 00 -> 7, 01 -> 5, 11 -> 3, 10 -> 1
//!
//! Constellations are normalized to unit average symbol energy (1/sqrt(2),
//! 1/sqrt(10), 1/sqrt(42)). Horizontally or vertically adjacent points
//! always differ in exactly one bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conv::SoftBit;
use crate::error::{Error, Result};

/// Constellation scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Qpsk,
    Qam16,
    Qam64,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Qpsk, Scheme::Qam16, Scheme::Qam64];

    pub fn bits_per_symbol(self) -> usize {
        match self {
            Scheme::Qpsk => 2,
            Scheme::Qam16 => 4,
            Scheme::Qam64 => 6,
        }
    }

    /// Constellation size M.
    pub fn points(self) -> usize {
        1 << self.bits_per_symbol()
    }

    /// Bits per axis (I or Q).
    fn axis_bits(self) -> usize {
        self.bits_per_symbol() / 2
    }

    /// Amplitude scale giving unit average symbol energy.
    pub fn norm(self) -> f64 {
        match self {
            Scheme::Qpsk => 1.0 / 2f64.sqrt(),
            Scheme::Qam16 => 1.0 / 10f64.sqrt(),
            Scheme::Qam64 => 1.0 / 42f64.sqrt(),
        }
    }

    /// Unnormalized axis level for an axis label (MSB = sign bit).
    fn axis_level(self, label: u32) -> f64 {
        let h = self.axis_bits();
        let sign = if label >> (h - 1) & 1 == 0 { 1.0 } else { -1.0 };
        let magnitude = match self {
            Scheme::Qpsk => 1.0,
            Scheme::Qam16 => {
                if label & 1 == 0 {
                    3.0
                } else {
                    1.0
                }
            }
            Scheme::Qam64 => match label & 0b11 {
                0b00 => 7.0,
                0b01 => 5.0,
                0b11 => 3.0,
                _ => 1.0,
            },
        };
        sign * magnitude
    }

    /// (label, unnormalized level) for every axis label, ordered by
    /// ascending |level| with the positive level first. Ties in the
    /// nearest-level search therefore resolve toward the smaller magnitude.
    fn axis_table(self) -> Vec<(u32, f64)> {
        let h = self.axis_bits();
        let mut table: Vec<(u32, f64)> = (0..(1u32 << h))
            .map(|label| (label, self.axis_level(label)))
            .collect();
        table.sort_by(|a, b| {
            (a.1.abs(), -a.1.signum())
                .partial_cmp(&(b.1.abs(), -b.1.signum()))
                .unwrap()
        });
        table
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Scheme::Qpsk => "qpsk",
            Scheme::Qam16 => "qam16",
            Scheme::Qam64 => "qam64",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qpsk" => Ok(Scheme::Qpsk),
            "qam16" | "16qam" | "qam-16" => Ok(Scheme::Qam16),
            "qam64" | "64qam" | "qam-64" => Ok(Scheme::Qam64),
            other => Err(Error::param(
                "scheme",
                format!("unknown scheme `{other}` (expected qpsk, qam16 or qam64)"),
            )),
        }
    }
}

/// Splits a symbol label into (I bits, Q bits): even positions go to I.
fn split_label(label: u32, s: Scheme) -> (u32, u32) {
    let mut i_label = 0u32;
    let mut q_label = 0u32;
    for pos in 0..s.bits_per_symbol() {
        let bit = (label >> (s.bits_per_symbol() - 1 - pos)) & 1;
        if pos % 2 == 0 {
            i_label = (i_label << 1) | bit;
        } else {
            q_label = (q_label << 1) | bit;
        }
    }
    (i_label, q_label)
}

fn join_label(i_label: u32, q_label: u32, s: Scheme) -> u32 {
    let h = s.axis_bits();
    let mut label = 0u32;
    for pos in 0..h {
        let i_bit = (i_label >> (h - 1 - pos)) & 1;
        let q_bit = (q_label >> (h - 1 - pos)) & 1;
        label = (label << 2) | (i_bit << 1) | q_bit;
    }
    label
}

/// Constellation point for a symbol label in `0..M`.
pub fn map_symbol(label: u32, s: Scheme) -> Complex64 {
    debug_assert!((label as usize) < s.points());
    let (i_label, q_label) = split_label(label, s);
    Complex64::new(s.axis_level(i_label), s.axis_level(q_label)) * s.norm()
}

/// Maps integer symbols in `0..M` onto constellation points.
pub fn map_symbols(symbols: &[u32], s: Scheme) -> Vec<Complex64> {
    symbols.iter().map(|&sym| map_symbol(sym, s)).collect()
}

/// Maps a bit stream (length divisible by bits_per_symbol) onto points.
pub fn map_bits(bits: &[u8], s: Scheme) -> Result<Vec<Complex64>> {
    let k = s.bits_per_symbol();
    if !bits.len().is_multiple_of(k) {
        return Err(Error::NotMultipleOf {
            what: "mapper input bits",
            len: bits.len(),
            multiple: k,
        });
    }
    Ok(bits
        .chunks_exact(k)
        .map(|chunk| map_symbol(crate::bits::bits_to_uint(chunk), s))
        .collect())
}

fn slice_axis(coord: f64, table: &[(u32, f64)], norm: f64) -> u32 {
    let mut best = (f64::INFINITY, 0u32);
    for &(label, level) in table {
        let d = (coord - level * norm).abs();
        if d < best.0 {
            best = (d, label);
        }
    }
    best.1
}

/// Minimum-distance hard decision, one symbol label per sample.
pub fn demap_hard_symbols(iq: &[Complex64], s: Scheme) -> Vec<u32> {
    let table = s.axis_table();
    let norm = s.norm();
    iq.iter()
        .map(|z| {
            let i_label = slice_axis(z.re, &table, norm);
            let q_label = slice_axis(z.im, &table, norm);
            join_label(i_label, q_label, s)
        })
        .collect()
}

/// Minimum-distance hard decision, bits_per_symbol bits per sample.
pub fn demap_hard(iq: &[Complex64], s: Scheme) -> Vec<u8> {
    let k = s.bits_per_symbol();
    let mut out = Vec::with_capacity(iq.len() * k);
    for label in demap_hard_symbols(iq, s) {
        out.extend(crate::bits::uint_to_bits(label, k));
    }
    out
}

/// Per-bit max-log LLRs: (min distance^2 over points with bit = 1 minus min
/// over bit = 0) / noise_var, so positive means bit 0. `noise_var` is the
/// total complex noise variance N0.
pub fn demap_soft(iq: &[Complex64], s: Scheme, noise_var: f64) -> Result<Vec<SoftBit>> {
    if noise_var.is_nan() || noise_var <= 0.0 {
        return Err(Error::param(
            "noise_var",
            format!("{noise_var} must be positive"),
        ));
    }
    let table = s.axis_table();
    let norm = s.norm();
    let h = s.axis_bits();
    let k = s.bits_per_symbol();
    let mut out = Vec::with_capacity(iq.len() * k);
    let mut sym_llrs = vec![0.0f64; k];
    for z in iq {
        // Square-QAM distances separate per axis, so each bit's 2-D max-log
        // LLR reduces to a 1-D search over its own axis levels.
        for axis in 0..2 {
            let coord = if axis == 0 { z.re } else { z.im };
            for bit_idx in 0..h {
                let mut min0 = f64::INFINITY;
                let mut min1 = f64::INFINITY;
                for &(label, level) in &table {
                    let d = coord - level * norm;
                    let d2 = d * d;
                    if (label >> (h - 1 - bit_idx)) & 1 == 0 {
                        min0 = min0.min(d2);
                    } else {
                        min1 = min1.min(d2);
                    }
                }
                sym_llrs[2 * bit_idx + axis] = (min1 - min0) / noise_var;
            }
        }
        out.extend_from_slice(&sym_llrs);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    /// All constellation points with their labels, built through the public
    /// mapper. Used by the exhaustive checks below.
    fn constellation(s: Scheme) -> Vec<(u32, Complex64)> {
        (0..s.points() as u32).map(|l| (l, map_symbol(l, s))).collect()
    }

    #[test]
    fn qpsk_points_are_unit_diagonal() {
        let a = 1.0 / 2f64.sqrt();
        for (label, z) in constellation(Scheme::Qpsk) {
            assert!((z.re.abs() - a).abs() < 1e-15);
            assert!((z.im.abs() - a).abs() < 1e-15);
            // sign bits: 0 positive
            assert_eq!(z.re > 0.0, label & 0b10 == 0);
            assert_eq!(z.im > 0.0, label & 0b01 == 0);
        }
    }

    #[test]
    fn normalization_matches_direct_energy_sums() {
        // Direct sums over the unnormalized grids.
        let grid16: f64 = {
            let levels = [-3.0f64, -1.0, 1.0, 3.0];
            let sum: f64 = levels
                .iter()
                .flat_map(|i| levels.iter().map(move |q| i * i + q * q))
                .sum();
            sum / 16.0
        };
        assert!((grid16 - 10.0).abs() < 1e-12);
        assert!((Scheme::Qam16.norm() - 1.0 / 10f64.sqrt()).abs() < 1e-15);

        let grid64: f64 = {
            let levels = [-7.0f64, -5.0, -3.0, -1.0, 1.0, 3.0, 5.0, 7.0];
            let sum: f64 = levels
                .iter()
                .flat_map(|i| levels.iter().map(move |q| i * i + q * q))
                .sum();
            sum / 64.0
        };
        assert!((grid64 - 42.0).abs() < 1e-12);
        assert!((Scheme::Qam64.norm() - 1.0 / 42f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn constellation_energy_is_exactly_unit() {
        for s in Scheme::ALL {
            let mean: f64 = constellation(s).iter().map(|(_, z)| z.norm_sqr()).sum::<f64>()
                / s.points() as f64;
            assert!((mean - 1.0).abs() < 1e-12, "{s}: {mean}");
        }
    }

    #[test]
    fn gray_property_holds_exhaustively() {
        for s in Scheme::ALL {
            let points = constellation(s);
            let step = 2.0 * s.norm();
            for (la, za) in &points {
                for (lb, zb) in &points {
                    let dx = (za.re - zb.re).abs();
                    let dy = (za.im - zb.im).abs();
                    let adjacent = (dx < 1e-9 && (dy - step).abs() < 1e-9)
                        || (dy < 1e-9 && (dx - step).abs() < 1e-9);
                    if adjacent {
                        assert_eq!(
                            (la ^ lb).count_ones(),
                            1,
                            "{s}: labels {la:#b} and {lb:#b} are neighbors"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn hard_demap_roundtrip_on_all_labels() {
        for s in Scheme::ALL {
            for (label, z) in constellation(s) {
                assert_eq!(demap_hard_symbols(&[z], s)[0], label, "{s}");
            }
        }
    }

    #[test]
    fn qpsk_sign_decision() {
        let z = Complex64::new(0.9, -1.1) / 2f64.sqrt();
        // I positive -> first bit 0, Q negative -> second bit 1
        assert_eq!(demap_hard(&[z], Scheme::Qpsk), vec![0, 1]);
    }

    #[test]
    fn hard_decisions_match_nearest_point_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for s in Scheme::ALL {
            let points = constellation(s);
            for _ in 0..2000 {
                let z = Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
                let got = demap_hard_symbols(&[z], s)[0];
                let best = points
                    .iter()
                    .min_by(|a, b| {
                        (a.1 - z).norm_sqr().partial_cmp(&(b.1 - z).norm_sqr()).unwrap()
                    })
                    .unwrap()
                    .0;
                assert_eq!(got, best, "{s} at {z}");
            }
        }
    }

    #[test]
    fn soft_sign_agrees_with_hard_decision() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for s in Scheme::ALL {
            for _ in 0..500 {
                let z = Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
                let hard = demap_hard(&[z], s);
                let soft = demap_soft(&[z], s, 0.1).unwrap();
                for (bit_idx, (&h, &l)) in hard.iter().zip(soft.iter()).enumerate() {
                    if l != 0.0 {
                        assert_eq!(h, u8::from(l < 0.0), "{s} bit {bit_idx} at {z}");
                    }
                }
            }
        }
    }

    #[test]
    fn qpsk_llr_is_linear_in_coordinate() {
        // Two-point max-log closed form: llr = 4*a*coord / noise_var with
        // a = 1/sqrt(2).
        let a = 1.0 / 2f64.sqrt();
        let noise_var = 0.3;
        for coord in [-1.2, -0.4, 0.0, 0.05, 0.8] {
            let z = Complex64::new(coord, -coord);
            let soft = demap_soft(&[z], Scheme::Qpsk, noise_var).unwrap();
            let expect_i = 4.0 * a * coord / noise_var;
            let expect_q = 4.0 * a * (-coord) / noise_var;
            assert!((soft[0] - expect_i).abs() < 1e-12, "{coord}");
            assert!((soft[1] - expect_q).abs() < 1e-12, "{coord}");
        }
    }

    #[test]
    fn boundary_sample_gives_zero_llr() {
        // Exactly on the I decision boundary of QPSK.
        let soft = demap_soft(&[Complex64::new(0.0, 0.5)], Scheme::Qpsk, 1.0).unwrap();
        assert_eq!(soft[0], 0.0);
        assert!(soft[1] > 0.0);
        // 16-QAM magnitude boundary between levels 1 and 3 sits at 2*norm
        // (up to rounding of the level products).
        let b = 2.0 * Scheme::Qam16.norm();
        let soft = demap_soft(&[Complex64::new(b, b)], Scheme::Qam16, 1.0).unwrap();
        assert!(soft[2].abs() < 1e-12, "I magnitude bit: {}", soft[2]);
        assert!(soft[3].abs() < 1e-12, "Q magnitude bit: {}", soft[3]);
    }

    #[test]
    fn non_positive_noise_var_rejected() {
        let z = [Complex64::new(0.1, 0.1)];
        assert!(demap_soft(&z, Scheme::Qpsk, 0.0).is_err());
        assert!(demap_soft(&z, Scheme::Qpsk, -1.0).is_err());
        assert!(demap_soft(&z, Scheme::Qpsk, f64::NAN).is_err());
    }

    #[test]
    fn non_divisible_bit_count_rejected() {
        assert!(matches!(
            map_bits(&[1, 0, 1], Scheme::Qam16),
            Err(Error::NotMultipleOf { .. })
        ));
    }

    #[test]
    fn empirical_energy_of_random_bits_is_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for s in Scheme::ALL {
            let n = 60_000;
            let bits: Vec<u8> = (0..n * s.bits_per_symbol())
                .map(|_| rng.random_range(0..2u8))
                .collect();
            let iq = map_bits(&bits, s).unwrap();
            let mean: f64 = iq.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
            // 3 sigma of the sample estimator; var(|s|^2) < 0.4 for all three
            let sigma = (0.4f64 / n as f64).sqrt();
            assert!((mean - 1.0).abs() < 3.0 * sigma, "{s}: {mean}");
        }
    }

    proptest! {
        #[test]
        fn prop_roundtrip_bits(seed in any::<u64>(), n in 1usize..200) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for s in Scheme::ALL {
                let bits: Vec<u8> = (0..n * s.bits_per_symbol())
                    .map(|_| rng.random_range(0..2u8))
                    .collect();
                let iq = map_bits(&bits, s).unwrap();
                prop_assert_eq!(&demap_hard(&iq, s), &bits);
            }
        }
    }
}

#[cfg(test)]
mod soft_oracle_tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    /// Full two-dimensional max-log LLR: min squared distance over every
    /// constellation point with the bit set vs cleared. Independent of the
    /// per-axis shortcut inside `demap_soft`.
    fn llr_2d_oracle(z: Complex64, s: Scheme, bit: usize, noise_var: f64) -> f64 {
        let k = s.bits_per_symbol();
        let mut min0 = f64::INFINITY;
        let mut min1 = f64::INFINITY;
        for label in 0..s.points() as u32 {
            let d2 = (z - map_symbol(label, s)).norm_sqr();
            if (label >> (k - 1 - bit)) & 1 == 0 {
                min0 = min0.min(d2);
            } else {
                min1 = min1.min(d2);
            }
        }
        (min1 - min0) / noise_var
    }

    #[test]
    fn soft_demap_matches_two_dimensional_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let noise_var = 0.05;
        for s in Scheme::ALL {
            let k = s.bits_per_symbol();
            for _ in 0..300 {
                let z = Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
                let got = demap_soft(&[z], s, noise_var).unwrap();
                for bit in 0..k {
                    let expect = llr_2d_oracle(z, s, bit, noise_var);
                    assert!(
                        (got[bit] - expect).abs() < 1e-9 * expect.abs().max(1.0),
                        "{s} bit {bit} at {z}: {} vs {expect}",
                        got[bit]
                    );
                }
            }
        }
    }
}
