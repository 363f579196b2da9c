//! Bit sources with consumption accounting, and exact uniform integers drawn
//! from them by rejection.

use num_traits::{One, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::Natural;

/// Supplier of fair random bits. `bits_consumed` grows by exactly one per
/// successful `next_bit`.
pub trait BitSource {
    fn next_bit(&mut self) -> Result<bool>;
    fn bits_consumed(&self) -> u64;
}

impl<B: BitSource + ?Sized> BitSource for &mut B {
    fn next_bit(&mut self) -> Result<bool> {
        (**self).next_bit()
    }
    fn bits_consumed(&self) -> u64 {
        (**self).bits_consumed()
    }
}

/// Deterministic pseudorandom bits.
///
/// The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`;
/// each 64-bit output word is handed out most significant bit first. Both
/// steps are platform independent, so a seed pins the stream forever.
#[derive(Debug, Clone)]
pub struct SeededBitSource {
    rng: ChaCha8Rng,
    word: u64,
    left: u32,
    consumed: u64,
}

impl SeededBitSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            word: 0,
            left: 0,
            consumed: 0,
        }
    }
}

impl BitSource for SeededBitSource {
    fn next_bit(&mut self) -> Result<bool> {
        if self.left == 0 {
            self.word = self.rng.next_u64();
            self.left = 64;
        }
        self.left -= 1;
        self.consumed += 1;
        Ok((self.word >> self.left) & 1 == 1)
    }

    fn bits_consumed(&self) -> u64 {
        self.consumed
    }
}

/// A finite, explicit bit string; errors once exhausted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayBitSource {
    bits: Vec<bool>,
    pos: usize,
}

impl ReplayBitSource {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits, pos: 0 }
    }

    /// Parses a string of `0`/`1`; spaces and underscores are ignored.
    pub fn from_binary(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .filter(|c| !matches!(c, ' ' | '_'))
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::BadBits(format!(
                    "unexpected {other:?} in binary string"
                ))),
            })
            .collect::<Result<_>>()?;
        Ok(Self::new(bits))
    }

    /// Parses hex digits, four bits per digit, most significant first.
    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.strip_prefix("0x").unwrap_or(s);
        let mut bits = Vec::with_capacity(4 * s.len());
        for c in s.chars() {
            let d = c
                .to_digit(16)
                .ok_or_else(|| Error::BadBits(format!("unexpected {c:?} in hex string")))?;
            bits.extend((0..4).rev().map(|k| (d >> k) & 1 == 1));
        }
        Ok(Self::new(bits))
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }
}

impl BitSource for ReplayBitSource {
    fn next_bit(&mut self) -> Result<bool> {
        let bit = *self.bits.get(self.pos).ok_or(Error::BitSourceExhausted {
            consumed: self.pos as u64,
        })?;
        self.pos += 1;
        Ok(bit)
    }

    fn bits_consumed(&self) -> u64 {
        self.pos as u64
    }
}

/// `ceil(log2 k)` for `k >= 1`: the width of one rejection attempt.
pub fn draw_width(k: &Natural) -> u64 {
    if k.is_zero() {
        return 0;
    }
    (k - 1u32).bits()
}

/// Exactly uniform value in `[0, k)`.
///
/// Each attempt reads `ceil(log2 k)` bits MSB-first and is accepted when the
/// value is below `k`; the acceptance probability exceeds 1/2, so fewer than
/// two attempts are needed on average. `k = 1` reads nothing.
pub fn uniform_below<S: BitSource + ?Sized>(k: &Natural, src: &mut S) -> Result<Natural> {
    assert!(!k.is_zero(), "uniform_below needs k >= 1");
    if k.is_one() {
        return Ok(Natural::zero());
    }
    let width = draw_width(k);
    loop {
        let mut v = Natural::zero();
        for _ in 0..width {
            v <<= 1u32;
            if src.next_bit()? {
                v |= Natural::one();
            }
        }
        if &v < k {
            return Ok(v);
        }
    }
}
