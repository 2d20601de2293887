//! Configurations, Boolean functions and single-component chaotic iterations.
//!
//! Components are numbered `1..=n`, component 1 being the most significant
//! bit of the integer encoding of a configuration. Under this convention
//! `0100` is the integer 4 and component 2 is the set bit.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const MIN_COMPONENTS: usize = 2;
pub const MAX_COMPONENTS: usize = 16;

pub(crate) fn check_components(n: usize) -> Result<()> {
    if (MIN_COMPONENTS..=MAX_COMPONENTS).contains(&n) {
        Ok(())
    } else {
        Err(Error::ComponentCount(n))
    }
}

pub(crate) fn check_index(index: usize, n: usize) -> Result<()> {
    if (1..=n).contains(&index) {
        Ok(())
    } else {
        Err(Error::ComponentIndex { index, n })
    }
}

/// Mask selecting component `index` (1-based, MSB first) of an `n`-bit word.
#[inline]
pub fn component_mask(n: usize, index: usize) -> u32 {
    debug_assert!((1..=n).contains(&index));
    1 << (n - index)
}

/// A point of `B^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Configuration {
    n: usize,
    value: u32,
}

impl Configuration {
    pub fn new(n: usize, value: u32) -> Result<Self> {
        check_components(n)?;
        if u64::from(value) >= 1u64 << n {
            return Err(Error::ConfigurationRange { value, n });
        }
        Ok(Self { n, value })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    /// Builds a configuration from its components, component 1 first.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let value = bits.iter().fold(0u32, |acc, &b| (acc << 1) | u32::from(b));
        Self::new(bits.len(), value)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Integer encoding.
    pub fn value(&self) -> u32 {
        self.value
    }

    /// Value of component `index` (1-based).
    pub fn bit(&self, index: usize) -> Result<bool> {
        check_index(index, self.n)?;
        Ok(self.value & component_mask(self.n, index) != 0)
    }

    /// All components, component 1 first.
    pub fn bits(&self) -> Vec<bool> {
        (1..=self.n)
            .map(|i| self.value & component_mask(self.n, i) != 0)
            .collect()
    }

    /// `N(i, x)`: the configuration with component `index` complemented.
    pub fn neighbor(&self, index: usize) -> Result<Self> {
        check_index(index, self.n)?;
        Ok(Self {
            n: self.n,
            value: self.value ^ component_mask(self.n, index),
        })
    }

    pub fn hamming(&self, other: &Configuration) -> u32 {
        (self.value ^ other.value).count_ones()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.n)
    }
}

/// A map `B^n -> B^n` stored as the list of its `2^n` images.
///
/// Serialises as `{ "n": .., "images": [..], "name": .. }`; deserialisation
/// validates the table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FunctionDocument")]
pub struct BooleanFunction {
    n: usize,
    images: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

#[derive(Deserialize)]
struct FunctionDocument {
    n: usize,
    images: Vec<u32>,
    #[serde(default)]
    name: Option<String>,
}

impl TryFrom<FunctionDocument> for BooleanFunction {
    type Error = Error;

    fn try_from(doc: FunctionDocument) -> Result<Self> {
        let mut f = BooleanFunction::new(doc.n, doc.images)?;
        f.name = doc.name;
        Ok(f)
    }
}

impl BooleanFunction {
    pub fn new(n: usize, images: Vec<u32>) -> Result<Self> {
        check_components(n)?;
        let size = 1usize << n;
        if images.len() != size {
            return Err(Error::TableLength {
                got: images.len(),
                expected: size,
            });
        }
        let bound = size as u32;
        if let Some((position, &image)) = images.iter().enumerate().find(|(_, &v)| v >= bound) {
            return Err(Error::ImageRange {
                position,
                image,
                bound,
            });
        }
        Ok(Self {
            n,
            images,
            name: None,
        })
    }

    /// Vectorial Boolean negation `¬`.
    pub fn negation(n: usize) -> Result<Self> {
        check_components(n)?;
        let full = (1u32 << n) - 1;
        Ok(Self::new(n, (0..=full).map(|x| x ^ full).collect())?.with_name("neg"))
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_components(n)?;
        Ok(Self::new(n, (0..1u32 << n).collect())?.with_name("id"))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `f(x)` on integer encodings. Panics if `x` is out of range.
    #[inline]
    pub fn image(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn apply(&self, x: Configuration) -> Result<Configuration> {
        self.check_same_n(x.n())?;
        Ok(Configuration {
            n: self.n,
            value: self.image(x.value()),
        })
    }

    /// Components that `f` switches at `x`, as a mask over the encoding.
    #[inline]
    pub fn switching_mask(&self, x: u32) -> u32 {
        self.image(x) ^ x
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.size()];
        self.images
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }

    /// `F_f(s, x)`: component `s` takes `f_s(x)`, the others keep their value.
    pub fn step(&self, s: usize, x: Configuration) -> Result<Configuration> {
        self.check_same_n(x.n())?;
        check_index(s, self.n)?;
        Ok(Configuration {
            n: self.n,
            value: self.step_masked(component_mask(self.n, s), x.value()),
        })
    }

    /// Unchecked `F_f` on encodings, with the component given as a mask.
    #[inline(always)]
    pub fn step_masked(&self, mask: u32, x: u32) -> u32 {
        (x & !mask) | (self.images[x as usize] & mask)
    }

    /// `x^k` of the system `x^{t+1} = F_f(S^t, x^t)` started at `x0`.
    pub fn iterate(
        &self,
        strategy: &Strategy,
        x0: Configuration,
        k: usize,
    ) -> Result<Configuration> {
        Ok(*self.trajectory(strategy, x0, k)?.last().unwrap_or(&x0))
    }

    /// The states `x^1, ..., x^k` visited by [`iterate`](Self::iterate).
    pub fn trajectory(
        &self,
        strategy: &Strategy,
        x0: Configuration,
        k: usize,
    ) -> Result<Vec<Configuration>> {
        self.check_same_n(x0.n())?;
        if strategy.len() < k {
            return Err(Error::StrategyTooShort {
                available: strategy.len(),
                requested: k,
            });
        }
        let mut x = x0;
        let mut states = Vec::with_capacity(k);
        for &s in &strategy.terms()[..k] {
            x = self.step(s, x)?;
            states.push(x);
        }
        Ok(states)
    }

    fn check_same_n(&self, other: usize) -> Result<()> {
        if other == self.n {
            Ok(())
        } else {
            Err(Error::ComponentMismatch {
                left: self.n,
                right: other,
            })
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("function serialisation cannot fail")
    }
}

/// A finite prefix of a strategy: the components updated at `t = 0, 1, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    n: usize,
    terms: Vec<usize>,
}

impl Strategy {
    pub fn new(n: usize, terms: Vec<usize>) -> Result<Self> {
        check_components(n)?;
        for &t in &terms {
            check_index(t, n)?;
        }
        Ok(Self { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[usize] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `σ^count`: drops the first `count` terms.
    pub fn shift(&self, count: usize) -> Strategy {
        Strategy {
            n: self.n,
            terms: self.terms[count.min(self.terms.len())..].to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, v: u32) -> Configuration {
        Configuration::new(n, v).unwrap()
    }

    fn table_b() -> BooleanFunction {
        BooleanFunction::new(
            4,
            vec![14, 15, 13, 12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0],
        )
        .unwrap()
    }

    #[test]
    fn neighbor_flips_one_component() {
        assert_eq!(cfg(4, 0b0100).neighbor(3).unwrap(), cfg(4, 0b0110));
        assert_eq!(cfg(4, 0b1111).neighbor(1).unwrap(), cfg(4, 0b0111));
        assert!(matches!(
            cfg(4, 0).neighbor(5),
            Err(Error::ComponentIndex { index: 5, n: 4 })
        ));
        assert!(cfg(4, 0).neighbor(0).is_err());
    }

    #[test]
    fn neighbor_is_an_involution() {
        for n in 2..=5 {
            for v in 0..1u32 << n {
                for i in 1..=n {
                    let x = cfg(n, v);
                    assert_eq!(x.neighbor(i).unwrap().neighbor(i).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn configuration_encoding() {
        let x = Configuration::from_bits(&[false, true, true, false]).unwrap();
        assert_eq!(x.value(), 6);
        assert_eq!(x.to_string(), "0110");
        assert!(x.bit(2).unwrap() && !x.bit(1).unwrap());
        assert!(Configuration::new(4, 16).is_err());
        assert!(Configuration::new(1, 0).is_err());
        assert!(Configuration::new(17, 0).is_err());
        for v in 0..16 {
            assert_eq!(
                Configuration::from_bits(&cfg(4, v).bits()).unwrap().value(),
                v
            );
        }
    }

    #[test]
    fn function_validation() {
        assert!(matches!(
            BooleanFunction::new(2, vec![0, 1, 2]),
            Err(Error::TableLength {
                got: 3,
                expected: 4
            })
        ));
        assert!(matches!(
            BooleanFunction::new(2, vec![0, 1, 2, 4]),
            Err(Error::ImageRange { position: 3, .. })
        ));
        let doc = r#"{"n": 2, "images": [1, 3, 0, 2], "name": "fig1"}"#;
        let f: BooleanFunction = serde_json::from_str(doc).unwrap();
        assert_eq!(f.images(), &[1, 3, 0, 2]);
        assert_eq!(f.name(), Some("fig1"));
        assert!(
            serde_json::from_str::<BooleanFunction>(r#"{"n": 2, "images": [1, 3, 0]}"#).is_err()
        );
        let back: BooleanFunction = serde_json::from_str(&f.to_json()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn step_examples() {
        let b = table_b();
        assert_eq!(b.step(2, cfg(4, 0b0100)).unwrap(), cfg(4, 0));
        let neg = BooleanFunction::negation(4).unwrap();
        assert_eq!(neg.step(1, cfg(4, 0)).unwrap(), cfg(4, 0b1000));
        let id = BooleanFunction::identity(4).unwrap();
        for s in 1..=4 {
            assert_eq!(id.step(s, cfg(4, 9)).unwrap(), cfg(4, 9));
        }
        assert!(b.step(0, cfg(4, 0)).is_err());
        assert!(b.step(5, cfg(4, 0)).is_err());
        assert!(b.step(1, cfg(3, 0)).is_err());
    }

    #[test]
    fn step_changes_at_most_one_component_exhaustively() {
        // every function on n = 2 and a pseudo-random sample for n = 3..=5
        for code in 0..256u32 {
            let images = (0..4).map(|x| (code >> (2 * x)) & 3).collect();
            let f = BooleanFunction::new(2, images).unwrap();
            for v in 0..4 {
                for s in 1..=2 {
                    let x = cfg(2, v);
                    let y = f.step(s, x).unwrap();
                    assert!(x.hamming(&y) <= 1);
                    assert_eq!(y.bit(s).unwrap(), f.apply(x).unwrap().bit(s).unwrap());
                }
            }
        }
        let mut state = 0x1234_5678u32;
        for n in 3..=5 {
            for _ in 0..50 {
                let images = (0..1u32 << n)
                    .map(|_| {
                        state ^= state << 13;
                        state ^= state >> 17;
                        state ^= state << 5;
                        state % (1 << n)
                    })
                    .collect();
                let f = BooleanFunction::new(n, images).unwrap();
                for v in 0..1u32 << n {
                    for s in 1..=n {
                        let x = cfg(n, v);
                        let y = f.step(s, x).unwrap();
                        assert!(x.hamming(&y) <= 1);
                        for j in (1..=n).filter(|&j| j != s) {
                            assert_eq!(y.bit(j).unwrap(), x.bit(j).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn iterate_examples() {
        let b = table_b();
        let strategy = Strategy::new(4, vec![2, 4, 2, 3]).unwrap();
        let states: Vec<u32> = b
            .trajectory(&strategy, cfg(4, 4), 4)
            .unwrap()
            .iter()
            .map(Configuration::value)
            .collect();
        assert_eq!(states, vec![0, 0, 4, 6]);
        assert_eq!(b.iterate(&strategy, cfg(4, 4), 4).unwrap(), cfg(4, 6));

        let next = Strategy::new(4, vec![4, 1, 1]).unwrap();
        let states: Vec<u32> = b
            .trajectory(&next, cfg(4, 6), 3)
            .unwrap()
            .iter()
            .map(Configuration::value)
            .collect();
        assert_eq!(states, vec![7, 15, 7]);

        assert_eq!(b.iterate(&strategy, cfg(4, 9), 0).unwrap(), cfg(4, 9));
        assert!(matches!(
            b.iterate(&strategy, cfg(4, 4), 5),
            Err(Error::StrategyTooShort {
                available: 4,
                requested: 5
            })
        ));
    }

    #[test]
    fn strategy_rejects_out_of_range_terms() {
        assert!(Strategy::new(4, vec![1, 2, 5]).is_err());
        assert!(Strategy::new(4, vec![0]).is_err());
        let s = Strategy::new(4, vec![1, 2, 3]).unwrap();
        assert_eq!(s.shift(2).terms(), &[3]);
        assert!(s.shift(7).is_empty());
    }

    #[test]
    fn permutation_check() {
        assert!(table_b().is_permutation());
        let a = BooleanFunction::new(
            4,
            vec![15, 14, 13, 12, 11, 10, 9, 8, 7, 6, 7, 4, 3, 2, 1, 0],
        )
        .unwrap();
        assert!(!a.is_permutation());
    }
}
