//! GF(2^8) arithmetic backing the Reed-Solomon outer codec.
//!
//! Field elements are `u8` values interpreted as polynomials over GF(2).
//! Addition is XOR; multiplication uses log/antilog tables built from a
//! degree-8 primitive polynomial. The default polynomial is
//! x^8 + x^4 + x^3 + x^2 + 1 (0x11D), for which x (= 0x02) generates the
//! multiplicative group of order 255.

use std::sync::LazyLock;

use crate::error::{Error, Result};

/// Default field polynomial, 0x11D.
pub const DEFAULT_FIELD_POLY: u16 = 0x11D;

/// Log/antilog tables for a concrete GF(2^8) construction.
#[derive(Clone)]
pub struct GfField {
    poly: u16,
    // exp holds two periods of the 255-cycle so products can index
    // log[a] + log[b] without a modulo.
    exp: [u8; 512],
    log: [u8; 256],
}

static DEFAULT_FIELD: LazyLock<GfField> =
    LazyLock::new(|| GfField::new(DEFAULT_FIELD_POLY).expect("default field polynomial"));

impl GfField {
    /// Builds tables for `poly`, which must be a degree-8 primitive
    /// polynomial (bit 8 set, x generating all 255 nonzero elements).
    pub fn new(poly: u16) -> Result<Self> {
        if poly & 0x100 == 0 || poly > 0x1FF {
            return Err(Error::param(
                "field_poly",
                format!("0x{poly:X} is not a degree-8 polynomial"),
            ));
        }
        let mut exp = [0u8; 512];
        let mut log = [0u8; 256];
        let mut x: u16 = 1;
        for (i, slot) in exp.iter_mut().take(255).enumerate() {
            if i > 0 && x == 1 {
                return Err(Error::param(
                    "field_poly",
                    format!("0x{poly:X} is not primitive (cycle shorter than 255)"),
                ));
            }
            *slot = x as u8;
            log[x as usize] = i as u8;
            x <<= 1;
            if x & 0x100 != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::param(
                "field_poly",
                format!("0x{poly:X} is not primitive"),
            ));
        }
        let (head, tail) = exp.split_at_mut(255);
        tail[..255].copy_from_slice(head);
        tail[255] = head[0];
        tail[256] = head[1];
        Ok(GfField { poly, exp, log })
    }

    /// The field tables for the default polynomial 0x11D.
    pub fn default_field() -> &'static GfField {
        &DEFAULT_FIELD
    }

    pub fn poly(&self) -> u16 {
        self.poly
    }

    /// alpha^i for 0 <= i < 255.
    #[inline]
    pub fn alpha_pow(&self, i: usize) -> u8 {
        self.exp[i % 255]
    }

    /// Discrete log of a nonzero element.
    #[inline]
    pub fn log(&self, a: u8) -> u8 {
        debug_assert!(a != 0, "log of zero");
        self.log[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    /// Multiplicative inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0, "inverse of zero");
        self.exp[255 - self.log[a as usize] as usize]
    }

    #[inline]
    pub fn div(&self, a: u8, b: u8) -> u8 {
        debug_assert!(b != 0, "division by zero");
        if a == 0 {
            0
        } else {
            self.exp[255 + self.log[a as usize] as usize - self.log[b as usize] as usize]
        }
    }

    /// a^e with a in the field and e a plain integer exponent.
    pub fn pow(&self, a: u8, e: usize) -> u8 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let l = (self.log[a as usize] as usize * e) % 255;
        self.exp[l]
    }
}

/// Product in GF(2^8) under the default polynomial 0x11D.
#[inline]
pub fn gf256_mul(a: u8, b: u8) -> u8 {
    GfField::default_field().mul(a, b)
}

/// Sum in GF(2^8) (XOR); provided for chain readability.
#[inline]
pub fn gf256_add(a: u8, b: u8) -> u8 {
    a ^ b
}
