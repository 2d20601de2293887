//! Marsaglia's 32-bit XORshift with the (13, 17, 5) triple.

use std::num::NonZeroU32;
use std::time::{SystemTime, UNIX_EPOCH};

use crate::{Error, Result};

/// Seed used when a time-derived seed would be zero.
pub const FALLBACK_SEED: u32 = 0x9E37_79B9;

/// Generator state. Zero is excluded since it is a fixed point of the map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Xorshift32 {
    z: NonZeroU32,
}

impl Xorshift32 {
    pub fn new(seed: u32) -> Result<Self> {
        NonZeroU32::new(seed)
            .map(|z| Self { z })
            .ok_or(Error::ZeroSeed)
    }

    pub fn state(&self) -> u32 {
        self.z.get()
    }

    /// One round: returns the output word and the successor state (the two
    /// are the same word).
    #[inline]
    #[must_use]
    pub fn next(self) -> (u32, Self) {
        let mut z = self.z.get();
        z ^= z << 13;
        z ^= z >> 17;
        z ^= z << 5;
        // the map is a bijection of the nonzero words
        let z = NonZeroU32::new(z).expect("xorshift maps nonzero words to nonzero words");
        (z.get(), Self { z })
    }

    /// Seeds from a sub-second fraction (e.g. the microsecond part of the
    /// clock). Zero maps to [`FALLBACK_SEED`].
    pub fn from_fraction(fraction: u32) -> Self {
        Self::new(fraction).unwrap_or(Self::new(FALLBACK_SEED).unwrap())
    }

    /// Seeds from the microsecond fraction of the wall clock.
    pub fn from_time() -> Self {
        Self::from_fraction(time_fraction())
    }
}

/// Microsecond part of the current time, `0..1_000_000`.
pub fn time_fraction() -> u32 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.subsec_micros())
        .unwrap_or(0)
}

/// A source of 32-bit words driving the generators.
///
/// Implemented by [`Xorshift32`] and by [`ScriptedWords`], which replays a
/// fixed sequence so that rounds can be driven deterministically.
pub trait WordSource {
    fn next_word(&mut self) -> u32;

    /// Uniform draw in `0..bound` by rejection of the biased low zone.
    fn below(&mut self, bound: u32) -> u32 {
        assert!(bound > 0, "empty range");
        let zone = bound.wrapping_neg() % bound;
        loop {
            let w = self.next_word();
            if w >= zone {
                return w % bound;
            }
        }
    }
}

impl WordSource for Xorshift32 {
    #[inline]
    fn next_word(&mut self) -> u32 {
        let (w, next) = self.next();
        *self = next;
        w
    }
}

/// Replays a fixed word sequence, cycling when exhausted.
#[derive(Debug, Clone)]
pub struct ScriptedWords {
    words: Vec<u32>,
    pos: usize,
}

impl ScriptedWords {
    pub fn new(words: Vec<u32>) -> Self {
        assert!(!words.is_empty(), "script must contain at least one word");
        Self { words, pos: 0 }
    }

    /// Number of words consumed so far.
    pub fn consumed(&self) -> usize {
        self.pos
    }
}

impl WordSource for ScriptedWords {
    fn next_word(&mut self) -> u32 {
        let w = self.words[self.pos % self.words.len()];
        self.pos += 1;
        w
    }
}

/// SplitMix64 finaliser, used to derive independent seeds from a master seed.
pub fn mix_seed(master: u32, index: u64) -> u32 {
    let mut z = (u64::from(master) << 32 | index).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    match (z ^ (z >> 32)) as u32 {
        0 => FALLBACK_SEED,
        s => s,
    }
}
