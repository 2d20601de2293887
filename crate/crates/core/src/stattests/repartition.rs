//! Successor repartition: how often output `x` is immediately followed by
//! output `y`.

use std::fmt::Write as _;

use crate::bitcore::check_components;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepartitionMatrix {
    n: usize,
    counts: Vec<u64>,
}

impl RepartitionMatrix {
    /// Tally successor pairs of `outputs`, each an `n`-bit value.
    pub fn from_outputs(n: usize, outputs: &[u32]) -> Result<Self> {
        check_components(n)?;
        if outputs.len() < 2 {
            return Err(Error::Input(format!(
                "repartition needs at least 2 outputs, got {}",
                outputs.len()
            )));
        }
        let size = 1usize << n;
        if let Some((position, &image)) = outputs
            .iter()
            .enumerate()
            .find(|(_, &v)| v as usize >= size)
        {
            return Err(Error::ImageRange {
                position,
                image,
                bound: size as u32,
            });
        }
        let mut counts = vec![0u64; size * size];
        for pair in outputs.windows(2) {
            counts[pair[0] as usize * size + pair[1] as usize] += 1;
        }
        Ok(Self { n, counts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn get(&self, x: u32, y: u32) -> u64 {
        self.counts[x as usize * self.size() + y as usize]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn min(&self) -> u64 {
        self.counts.iter().copied().min().unwrap_or(0)
    }

    pub fn max(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    /// Fraction of cells whose count lies in `lo..=hi`.
    pub fn fraction_within(&self, lo: u64, hi: u64) -> f64 {
        let inside = self
            .counts
            .iter()
            .filter(|&&c| (lo..=hi).contains(&c))
            .count();
        inside as f64 / self.counts.len() as f64
    }

    /// Long-format CSV with header `x,y,count`.
    pub fn to_csv(&self) -> String {
        let size = self.size() as u32;
        let mut out = String::from("x,y,count\n");
        for x in 0..size {
            for y in 0..size {
                let _ = writeln!(out, "{x},{y},{}", self.get(x, y));
            }
        }
        out
    }
}
