//! The two chaotic iteration generators and bit-stream assembly.
//!
//! - [`LegacyGenerator`]: each round draws a flip count `k` through
//!   [`reallocate`], picks `k` distinct components with [`sample`] and
//!   iterates `f` (by default `¬`) along them.
//! - [`CiGenerator`]: each round performs `b` or `b + 1` single-component
//!   updates with components drawn from the word source, for any `f` whose
//!   iteration graph is strongly connected.
//!
//! Both draw every random word from one [`WordSource`].

use serde::Serialize;

use crate::bitcore::{check_components, component_mask};
use crate::graphgen::IterationGraph;
use crate::{BooleanFunction, Configuration, Error, Result, Strategy, WordSource, Xorshift32};

/// Maps `k` in `0..2^n` to the `j` with `Σ_{i<j} C(n,i) <= k < Σ_{i<=j} C(n,i)`.
///
/// Under a uniform `k`, `j` follows the binomial law `C(n, j) / 2^n`.
pub fn reallocate(k: u32, n: usize) -> Result<usize> {
    check_components(n)?;
    if u64::from(k) >= 1u64 << n {
        return Err(Error::ConfigurationRange { value: k, n });
    }
    let mut cumulative = 0u64;
    let mut binomial = 1u64;
    for j in 0..=n {
        cumulative += binomial;
        if u64::from(k) < cumulative {
            return Ok(j);
        }
        binomial = binomial * (n - j) as u64 / (j + 1) as u64;
    }
    unreachable!("cumulative binomials reach 2^n")
}

/// `k` distinct components of `1..=n` in random order (partial Fisher-Yates).
pub fn sample<R: WordSource + ?Sized>(rng: &mut R, k: usize, n: usize) -> Result<Vec<usize>> {
    if k > n {
        return Err(Error::parameter(format!(
            "cannot sample {k} of {n} components"
        )));
    }
    let mut pool: Vec<usize> = (1..=n).collect();
    for i in 0..k {
        let j = i + rng.below((n - i) as u32) as usize;
        pool.swap(i, j);
    }
    pool.truncate(k);
    Ok(pool)
}

/// Anything producing one `n`-bit configuration per round.
pub trait Generator {
    fn n(&self) -> usize;
    fn round(&mut self) -> Configuration;
}

impl<G: Generator + ?Sized> Generator for &mut G {
    fn n(&self) -> usize {
        (**self).n()
    }
    fn round(&mut self) -> Configuration {
        (**self).round()
    }
}

impl<G: Generator + ?Sized> Generator for Box<G> {
    fn n(&self) -> usize {
        (**self).n()
    }
    fn round(&mut self) -> Configuration {
        (**self).round()
    }
}

/// How the legacy generator reduces the raw word before [`reallocate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlipCountModulus {
    /// `word mod 2^n`: every cell of the binomial partition is reachable.
    #[default]
    Full,
    /// `word mod (2^n - 1)`: the literal variant, which never yields `k = n`.
    Strict,
}

#[derive(Debug, Clone)]
pub struct LegacyGenerator<R = Xorshift32> {
    f: BooleanFunction,
    rng: R,
    x: Configuration,
    modulus: FlipCountModulus,
    last_flips: usize,
}

impl<R: WordSource> LegacyGenerator<R> {
    pub fn new(
        f: BooleanFunction,
        rng: R,
        x0: Configuration,
        modulus: FlipCountModulus,
    ) -> Result<Self> {
        if x0.n() != f.n() {
            return Err(Error::ComponentMismatch {
                left: f.n(),
                right: x0.n(),
            });
        }
        Ok(Self {
            f,
            rng,
            x: x0,
            modulus,
            last_flips: 0,
        })
    }

    /// Legacy generator over `¬`.
    pub fn negation(rng: R, x0: Configuration) -> Result<Self> {
        Self::new(
            BooleanFunction::negation(x0.n())?,
            rng,
            x0,
            FlipCountModulus::Full,
        )
    }

    pub fn state(&self) -> Configuration {
        self.x
    }

    /// `k` drawn by the most recent round.
    pub fn last_flips(&self) -> usize {
        self.last_flips
    }
}

impl<R: WordSource> Generator for LegacyGenerator<R> {
    fn n(&self) -> usize {
        self.f.n()
    }

    fn round(&mut self) -> Configuration {
        let n = self.f.n();
        let word = u64::from(self.rng.next_word());
        let modulus = match self.modulus {
            FlipCountModulus::Full => 1u64 << n,
            FlipCountModulus::Strict => (1u64 << n) - 1,
        };
        let k = reallocate((word % modulus) as u32, n).expect("reduced word is in range");
        let terms = sample(&mut self.rng, k, n).expect("k <= n");
        let strategy = Strategy::new(n, terms).expect("sampled components are in range");
        self.x = self
            .f
            .iterate(&strategy, self.x, k)
            .expect("strategy has k terms");
        self.last_flips = k;
        self.x
    }
}

#[derive(Debug, Clone)]
pub struct CiGenerator<R = Xorshift32> {
    f: BooleanFunction,
    b: usize,
    rng: R,
    x: u32,
    masks: Vec<u32>,
    last_steps: usize,
}

impl<R: WordSource> CiGenerator<R> {
    /// Fails unless `Γ(f)` is strongly connected and `b >= 1`.
    pub fn new(f: BooleanFunction, b: usize, rng: R, x0: Configuration) -> Result<Self> {
        if x0.n() != f.n() {
            return Err(Error::ComponentMismatch {
                left: f.n(),
                right: x0.n(),
            });
        }
        if b == 0 {
            return Err(Error::parameter(
                "minimal iteration count b must be at least 1",
            ));
        }
        if !IterationGraph::from_function(&f).is_strongly_connected() {
            return Err(Error::NotStronglyConnected);
        }
        let masks = (1..=f.n()).map(|i| component_mask(f.n(), i)).collect();
        Ok(Self {
            f,
            b,
            rng,
            x: x0.value(),
            masks,
            last_steps: 0,
        })
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn function(&self) -> &BooleanFunction {
        &self.f
    }

    pub fn state(&self) -> Configuration {
        Configuration::new(self.f.n(), self.x).expect("state stays in range")
    }

    /// Number of component updates in the most recent round.
    pub fn last_steps(&self) -> usize {
        self.last_steps
    }

    #[inline]
    fn next_value(&mut self) -> u32 {
        let k = self.b + (self.rng.next_word() % 2) as usize;
        let n = self.masks.len() as u32;
        let mut x = self.x;
        for _ in 0..k {
            let s = (self.rng.next_word() % n) as usize;
            x = self.f.step_masked(self.masks[s], x);
        }
        self.x = x;
        self.last_steps = k;
        x
    }
}

impl<R: WordSource> Generator for CiGenerator<R> {
    fn n(&self) -> usize {
        self.f.n()
    }

    fn round(&mut self) -> Configuration {
        let x = self.next_value();
        Configuration::new(self.f.n(), x).expect("state stays in range")
    }
}

/// A packed bit sequence, first bit in the most significant position of the
/// first word.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BitStream {
    words: Vec<u64>,
    len: usize,
}

impl BitStream {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i >> 6] >> (63 - (i & 63))) & 1 == 1
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        if self.len & 63 == 0 {
            self.words.push(0);
        }
        if bit {
            *self.words.last_mut().unwrap() |= 1 << (63 - (self.len & 63));
        }
        self.len += 1;
    }

    /// Appends the low `width` bits of `value`, most significant first.
    #[inline]
    pub fn push_bits(&mut self, value: u32, width: usize) {
        for b in (0..width).rev() {
            self.push((value >> b) & 1 == 1);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parses a string of `0` and `1`; whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Self::new();
        for c in text.chars().filter(|c| !c.is_whitespace()) {
            match c {
                '0' => s.push(false),
                '1' => s.push(true),
                other => {
                    return Err(Error::Input(format!(
                        "unexpected character {other:?} in bit string"
                    )))
                }
            }
        }
        Ok(s)
    }

    /// Packs 8 bits per byte, first bit in the most significant position; a
    /// trailing partial byte is zero-padded.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.words
            .iter()
            .flat_map(|w| w.to_be_bytes())
            .take(self.len.div_ceil(8))
            .collect()
    }

    pub fn reversed(&self) -> BitStream {
        let mut out = Self::with_capacity(self.len);
        for i in (0..self.len).rev() {
            out.push(self.get(i));
        }
        out
    }
}

impl std::fmt::Display for BitStream {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromIterator<bool> for BitStream {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut s = Self::new();
        for b in iter {
            s.push(b);
        }
        s
    }
}

/// `rounds` successive outputs, each spelled as `n` bits, component 1 first.
pub fn bitstream<G: Generator>(g: &mut G, rounds: usize) -> Result<BitStream> {
    if rounds == 0 {
        return Err(Error::parameter("rounds must be at least 1"));
    }
    let n = g.n();
    let mut s = BitStream::with_capacity(rounds * n);
    for _ in 0..rounds {
        s.push_bits(g.round().value(), n);
    }
    Ok(s)
}

/// Cuts one continuous output stream into `count` consecutive sequences of
/// `length` bits. Round outputs may straddle two sequences.
pub fn split_streams<G: Generator>(
    g: &mut G,
    count: usize,
    length: usize,
) -> Result<Vec<BitStream>> {
    if count == 0 || length == 0 {
        return Err(Error::parameter("stream count and length must be positive"));
    }
    let n = g.n();
    let mut streams = Vec::with_capacity(count);
    let mut current = BitStream::with_capacity(length);
    let mut pending = 0u32;
    let mut pending_bits = 0usize;
    while streams.len() < count {
        if pending_bits == 0 {
            pending = g.round().value();
            pending_bits = n;
        }
        pending_bits -= 1;
        current.push((pending >> pending_bits) & 1 == 1);
        if current.len() == length {
            streams.push(std::mem::replace(
                &mut current,
                BitStream::with_capacity(length),
            ));
        }
    }
    Ok(streams)
}

/// Integer outputs of `rounds` successive rounds.
pub fn outputs<G: Generator>(g: &mut G, rounds: usize) -> Vec<u32> {
    (0..rounds).map(|_| g.round().value()).collect()
}
