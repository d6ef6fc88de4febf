//! Reed-Solomon (255,223) outer codec over GF(2^8).
//!
//! Systematic encoding (message first, 32 parity octets after), syndrome
//! decoding via Berlekamp-Massey, Chien search and Forney's formula. The
//! generator polynomial is prod_{i=0}^{2t-1} (x - alpha^(b+i)) with root
//! base b = 0 by default, so codewords are bit-reproducible across
//! implementations that follow the same convention.
//!
//! Codeword bytes map onto the codeword polynomial high power first:
//! `codeword[i]` is the coefficient of x^(n-1-i).

use crate::error::{Error, Result};
use crate::gf256::GfField;

/// Code geometry and field construction parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RsParams {
    /// Codeword length in symbols.
    pub n: usize,
    /// Message length in symbols.
    pub k: usize,
    /// Degree-8 primitive field polynomial.
    pub field_poly: u16,
    /// First power of alpha used as a generator root.
    pub generator_root_base: usize,
}

impl Default for RsParams {
    fn default() -> Self {
        RsParams {
            n: 255,
            k: 223,
            field_poly: crate::gf256::DEFAULT_FIELD_POLY,
            generator_root_base: 0,
        }
    }
}

impl RsParams {
    /// Correctable symbol count t = (n - k) / 2.
    pub fn t(&self) -> usize {
        (self.n - self.k) / 2
    }

    /// Parity symbol count 2t.
    pub fn parity_len(&self) -> usize {
        self.n - self.k
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > 255 {
            return Err(Error::param("n", format!("{} not in 1..=255", self.n)));
        }
        if self.k == 0 || self.k >= self.n {
            return Err(Error::param("k", format!("{} not in 1..n", self.k)));
        }
        if !(self.n - self.k).is_multiple_of(2) {
            return Err(Error::param("k", "n - k must be even (2t parity symbols)"));
        }
        Ok(())
    }
}

/// Result of a successful decode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsDecoded {
    /// Recovered k-symbol message.
    pub message: Vec<u8>,
    /// Number of symbol positions corrected.
    pub corrected: usize,
}

/// A Reed-Solomon code with precomputed field tables and generator.
#[derive(Clone)]
pub struct RsCode {
    params: RsParams,
    field: GfField,
    /// Generator polynomial, index = power of x, monic of degree 2t.
    generator: Vec<u8>,
}

impl RsCode {
    pub fn new(params: RsParams) -> Result<Self> {
        params.validate()?;
        let field = GfField::new(params.field_poly)?;
        let nsym = params.parity_len();
        // g(x) = prod (x - alpha^(b+i)), generator[i] = coefficient of x^i.
        let mut generator = vec![0u8; nsym + 1];
        generator[0] = 1;
        let mut deg = 0;
        for i in 0..nsym {
            let root = field.alpha_pow(params.generator_root_base + i);
            // multiply by (x + root); in GF(2) subtraction is addition
            deg += 1;
            for j in (1..=deg).rev() {
                generator[j] = generator[j - 1] ^ field.mul(generator[j], root);
            }
            generator[0] = field.mul(generator[0], root);
        }
        Ok(RsCode {
            params,
            field,
            generator,
        })
    }

    pub fn params(&self) -> &RsParams {
        &self.params
    }

    /// Generator polynomial coefficients, index = power of x.
    pub fn generator(&self) -> &[u8] {
        &self.generator
    }

    /// Systematic encode: returns the n-symbol codeword `[msg | parity]`.
    pub fn encode(&self, msg: &[u8]) -> Result<Vec<u8>> {
        let (n, k) = (self.params.n, self.params.k);
        if msg.len() != k {
            return Err(Error::SizeMismatch {
                what: "rs message",
                expected: k,
                got: msg.len(),
            });
        }
        let nsym = n - k;
        // Remainder of msg(x) * x^nsym by g(x) via LFSR division.
        // rem[i] is the coefficient of x^i.
        let mut rem = vec![0u8; nsym];
        for &m in msg {
            let factor = m ^ rem[nsym - 1];
            for i in (1..nsym).rev() {
                rem[i] = rem[i - 1] ^ self.field.mul(self.generator[i], factor);
            }
            rem[0] = self.field.mul(self.generator[0], factor);
        }
        let mut cw = Vec::with_capacity(n);
        cw.extend_from_slice(msg);
        cw.extend(rem.iter().rev()); // parity high power first
        Ok(cw)
    }

    fn syndromes(&self, cw: &[u8]) -> Vec<u8> {
        let nsym = self.params.parity_len();
        let base = self.params.generator_root_base;
        (0..nsym)
            .map(|j| {
                let x = self.field.alpha_pow(base + j);
                // Horner over coefficients high power first.
                cw.iter().fold(0u8, |acc, &c| self.field.mul(acc, x) ^ c)
            })
            .collect()
    }

    /// Decodes a received word, correcting up to t symbol errors.
    ///
    /// Returns the recovered message and how many symbols were corrected, or
    /// [`Error::RsDecodeFailure`] when the word is detected uncorrectable.
    pub fn decode(&self, received: &[u8]) -> Result<RsDecoded> {
        let (n, k) = (self.params.n, self.params.k);
        if received.len() != n {
            return Err(Error::SizeMismatch {
                what: "rs codeword",
                expected: n,
                got: received.len(),
            });
        }
        let synd = self.syndromes(received);
        if synd.iter().all(|&s| s == 0) {
            return Ok(RsDecoded {
                message: received[..k].to_vec(),
                corrected: 0,
            });
        }

        let lambda = self.berlekamp_massey(&synd);
        let n_errors = lambda.len() - 1;
        if n_errors > self.params.t() {
            return Err(Error::RsDecodeFailure("error locator degree exceeds t"));
        }

        let positions = self.chien_search(&lambda);
        if positions.len() != n_errors {
            return Err(Error::RsDecodeFailure(
                "error locator roots do not match its degree",
            ));
        }

        let mut corrected = received.to_vec();
        self.forney_correct(&synd, &lambda, &positions, &mut corrected)?;

        if self.syndromes(&corrected).iter().any(|&s| s != 0) {
            return Err(Error::RsDecodeFailure("syndromes nonzero after correction"));
        }
        Ok(RsDecoded {
            message: corrected[..k].to_vec(),
            corrected: positions.len(),
        })
    }

    /// Berlekamp-Massey: shortest LFSR (error locator polynomial, index =
    /// power of x, lambda[0] = 1) generating the syndrome sequence.
    fn berlekamp_massey(&self, synd: &[u8]) -> Vec<u8> {
        let f = &self.field;
        let mut lambda = vec![1u8];
        let mut prev = vec![1u8];
        let mut l = 0usize;
        let mut m = 1usize;
        let mut b = 1u8;
        for r in 0..synd.len() {
            let mut delta = synd[r];
            for i in 1..=l.min(lambda.len() - 1) {
                delta ^= f.mul(lambda[i], synd[r - i]);
            }
            if delta == 0 {
                m += 1;
            } else if 2 * l <= r {
                let t = lambda.clone();
                let scale = f.div(delta, b);
                lambda.resize(lambda.len().max(prev.len() + m), 0);
                for (i, &p) in prev.iter().enumerate() {
                    lambda[i + m] ^= f.mul(scale, p);
                }
                prev = t;
                l = r + 1 - l;
                b = delta;
                m = 1;
            } else {
                let scale = f.div(delta, b);
                lambda.resize(lambda.len().max(prev.len() + m), 0);
                for (i, &p) in prev.iter().enumerate() {
                    lambda[i + m] ^= f.mul(scale, p);
                }
                m += 1;
            }
        }
        while lambda.len() > 1 && *lambda.last().unwrap() == 0 {
            lambda.pop();
        }
        lambda
    }

    /// Finds codeword indices whose locators X = alpha^(n-1-i) have
    /// lambda(X^-1) = 0.
    fn chien_search(&self, lambda: &[u8]) -> Vec<usize> {
        let f = &self.field;
        let n = self.params.n;
        let mut positions = Vec::new();
        for i in 0..n {
            let p = n - 1 - i; // power of x this byte occupies
            let x_inv = f.alpha_pow((255 - (p % 255)) % 255);
            let mut acc = 0u8;
            let mut xp = 1u8;
            for &c in lambda {
                acc ^= f.mul(c, xp);
                xp = f.mul(xp, x_inv);
            }
            if acc == 0 {
                positions.push(i);
            }
        }
        positions
    }

    /// Forney error evaluation; corrects `word` in place.
    fn forney_correct(
        &self,
        synd: &[u8],
        lambda: &[u8],
        positions: &[usize],
        word: &mut [u8],
    ) -> Result<()> {
        let f = &self.field;
        let n = self.params.n;
        let nsym = self.params.parity_len();
        let base = self.params.generator_root_base;

        // Omega(x) = S(x) * lambda(x) mod x^nsym
        let mut omega = vec![0u8; nsym];
        for (i, &s) in synd.iter().enumerate() {
            for (j, &c) in lambda.iter().enumerate() {
                if i + j < nsym {
                    omega[i + j] ^= f.mul(s, c);
                }
            }
        }
        // Formal derivative of lambda: odd-power terms only.
        let lambda_deriv: Vec<u8> = lambda
            .iter()
            .enumerate()
            .skip(1)
            .step_by(2)
            .map(|(_, &c)| c)
            .collect();

        for &pos in positions {
            let p = n - 1 - pos;
            let x = f.alpha_pow(p % 255);
            let x_inv = f.inv(x);
            let omega_val = poly_eval(f, &omega, x_inv);
            // lambda'(x_inv): coefficients of even powers of x_inv after the
            // derivative, i.e. sum lambda_deriv[i] * x_inv^(2i).
            let x_inv2 = f.mul(x_inv, x_inv);
            let deriv_val = {
                let mut acc = 0u8;
                let mut xp = 1u8;
                for &c in &lambda_deriv {
                    acc ^= f.mul(c, xp);
                    xp = f.mul(xp, x_inv2);
                }
                acc
            };
            if deriv_val == 0 {
                return Err(Error::RsDecodeFailure("Forney derivative vanished"));
            }
            // e = X^(1-base) * Omega(X^-1) / lambda'(X^-1)
            let mut magnitude = f.div(omega_val, deriv_val);
            if base == 0 {
                magnitude = f.mul(magnitude, x);
            } else if base > 1 {
                let x_pow = f.pow(x_inv, base - 1);
                magnitude = f.mul(magnitude, x_pow);
            }
            word[pos] ^= magnitude;
        }
        Ok(())
    }
}

fn poly_eval(f: &GfField, coeffs: &[u8], x: u8) -> u8 {
    let mut acc = 0u8;
    let mut xp = 1u8;
    for &c in coeffs {
        acc ^= f.mul(c, xp);
        xp = f.mul(xp, x);
    }
    acc
}

/// Encodes with the default RS(255,223) code.
pub fn rs_encode(msg: &[u8], params: &RsParams) -> Result<Vec<u8>> {
    RsCode::new(*params)?.encode(msg)
}

/// Decodes with the given parameters.
pub fn rs_decode(cw: &[u8], params: &RsParams) -> Result<RsDecoded> {
    RsCode::new(*params)?.decode(cw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn default_code() -> RsCode {
        RsCode::new(RsParams::default()).unwrap()
    }

    /// Schoolbook polynomial long division over GF(2^8), independent of the
    /// encoder's LFSR path. Returns the remainder of msg(x)*x^nsym by g(x).
    fn long_division_oracle(code: &RsCode, msg: &[u8]) -> Vec<u8> {
        let f = GfField::new(code.params().field_poly).unwrap();
        let nsym = code.params().parity_len();
        // dividend coefficients, high power first
        let mut dividend: Vec<u8> = msg.to_vec();
        dividend.extend(std::iter::repeat_n(0, nsym));
        let gen_high_first: Vec<u8> = code.generator().iter().rev().cloned().collect();
        for i in 0..msg.len() {
            let coef = dividend[i];
            if coef != 0 {
                for (j, &g) in gen_high_first.iter().enumerate() {
                    dividend[i + j] ^= f.mul(g, coef);
                }
            }
        }
        dividend[msg.len()..].to_vec()
    }

    #[test]
    fn all_zero_message_gives_all_zero_codeword() {
        let code = default_code();
        let cw = code.encode(&[0u8; 223]).unwrap();
        assert_eq!(cw, vec![0u8; 255]);
    }

    #[test]
    fn encoding_is_systematic() {
        let code = default_code();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let msg: Vec<u8> = (0..223).map(|_| rng.random()).collect();
        let cw = code.encode(&msg).unwrap();
        assert_eq!(&cw[..223], &msg[..]);
        assert_eq!(cw.len(), 255);
    }

    #[test]
    fn parity_matches_long_division_oracle() {
        let code = default_code();
        let mut msg = vec![0u8; 223];
        msg[0] = 0x01;
        let cw = code.encode(&msg).unwrap();
        assert_eq!(&cw[223..], &long_division_oracle(&code, &msg)[..]);

        // and on a handful of random messages
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let msg: Vec<u8> = (0..223).map(|_| rng.random()).collect();
            let cw = code.encode(&msg).unwrap();
            assert_eq!(&cw[223..], &long_division_oracle(&code, &msg)[..]);
        }
    }

    #[test]
    fn codeword_divisible_by_generator() {
        // Remainder of the full codeword polynomial by g(x) must be zero,
        // i.e. all generator roots are codeword roots.
        let code = default_code();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let msg: Vec<u8> = (0..223).map(|_| rng.random()).collect();
        let cw = code.encode(&msg).unwrap();
        let f = GfField::default_field();
        for i in 0..32 {
            let root = f.alpha_pow(i);
            let val = cw.iter().fold(0u8, |acc, &c| f.mul(acc, root) ^ c);
            assert_eq!(val, 0, "alpha^{i} is not a root");
        }
    }

    #[test]
    fn encoding_is_linear() {
        let code = default_code();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let m1: Vec<u8> = (0..223).map(|_| rng.random()).collect();
        let m2: Vec<u8> = (0..223).map(|_| rng.random()).collect();
        let xor: Vec<u8> = m1.iter().zip(&m2).map(|(a, b)| a ^ b).collect();
        let c1 = code.encode(&m1).unwrap();
        let c2 = code.encode(&m2).unwrap();
        let cx = code.encode(&xor).unwrap();
        let c12: Vec<u8> = c1.iter().zip(&c2).map(|(a, b)| a ^ b).collect();
        assert_eq!(cx, c12);
    }

    #[test]
    fn wrong_length_rejected() {
        let code = default_code();
        assert!(matches!(
            code.encode(&[0u8; 100]),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(matches!(
            code.decode(&[0u8; 100]),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn clean_roundtrip_corrects_nothing() {
        let code = default_code();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let msg: Vec<u8> = (0..223).map(|_| rng.random()).collect();
        let cw = code.encode(&msg).unwrap();
        let out = code.decode(&cw).unwrap();
        assert_eq!(out.message, msg);
        assert_eq!(out.corrected, 0);
    }

    #[test]
    fn corrects_up_to_t_errors() {
        let code = default_code();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n_errors in [1usize, 2, 8, 15, 16] {
            for _ in 0..20 {
                let msg: Vec<u8> = (0..223).map(|_| rng.random()).collect();
                let mut cw = code.encode(&msg).unwrap();
                let mut positions: Vec<usize> = (0..255).collect();
                positions.shuffle(&mut rng);
                for &p in positions.iter().take(n_errors) {
                    let e: u8 = rng.random_range(1..=255);
                    cw[p] ^= e;
                }
                let out = code.decode(&cw).unwrap();
                assert_eq!(out.message, msg, "{n_errors} errors");
                assert_eq!(out.corrected, n_errors);
            }
        }
    }

    #[test]
    fn seventeen_errors_usually_flagged() {
        let code = default_code();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut failures = 0;
        let trials = 200;
        for _ in 0..trials {
            let msg: Vec<u8> = (0..223).map(|_| rng.random()).collect();
            let mut cw = code.encode(&msg).unwrap();
            let mut positions: Vec<usize> = (0..255).collect();
            positions.shuffle(&mut rng);
            for &p in positions.iter().take(17) {
                cw[p] ^= rng.random_range(1..=255u8);
            }
            match code.decode(&cw) {
                Err(Error::RsDecodeFailure(_)) => failures += 1,
                Ok(decoded) => assert_ne!(decoded.message, msg, "silent wrong answer"),
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        assert!(
            failures as f64 >= 0.99 * trials as f64,
            "only {failures}/{trials} flagged"
        );
    }

    #[test]
    fn shortened_code_roundtrip() {
        // The (n, k) knob admits shortened variants; default stays (255,223).
        let params = RsParams {
            n: 204,
            k: 188,
            ..RsParams::default()
        };
        let code = RsCode::new(params).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let msg: Vec<u8> = (0..188).map(|_| rng.random()).collect();
        let mut cw = code.encode(&msg).unwrap();
        for p in [3usize, 50, 100, 190] {
            cw[p] ^= 0x55;
        }
        let out = code.decode(&cw).unwrap();
        assert_eq!(out.message, msg);
        assert_eq!(out.corrected, 4);
    }
}
