//! NIST SP 800-22 tests: frequency, block frequency, runs, longest run of
//! ones, cumulative sums, serial and approximate entropy.
//!
//! The checked entry points enforce the NIST input-size recommendations.
//! [`unchecked`] exposes the same statistics for any non-degenerate input,
//! which is what the short worked examples of the NIST documentation need.

use serde::{Deserialize, Serialize};

use super::special::{erfc, igamc, normal_cdf};
use crate::prng::BitStream;
use crate::{Error, Result};

/// Minimum lengths recommended by NIST.
pub const MONOBIT_MIN_BITS: usize = 100;
pub const CUSUM_MIN_BITS: usize = 100;
pub const LONGEST_RUN_MIN_BITS: usize = 128;

/// A p-value, or the marker for a test whose precondition failed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PValue {
    Value(f64),
    NotApplicable,
}

impl PValue {
    pub fn value(self) -> Option<f64> {
        match self {
            PValue::Value(p) => Some(p),
            PValue::NotApplicable => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CusumMode {
    Forward,
    Backward,
}

fn require_len(bits: &BitStream, min: usize) -> Result<()> {
    if bits.len() < min {
        Err(Error::SequenceTooShort {
            len: bits.len(),
            min,
        })
    } else {
        Ok(())
    }
}

/// Frequency (monobit) test.
pub fn monobit(bits: &BitStream) -> Result<f64> {
    require_len(bits, MONOBIT_MIN_BITS)?;
    Ok(unchecked::monobit(bits))
}

/// Frequency test within blocks of `block_len` bits.
pub fn block_frequency(bits: &BitStream, block_len: usize) -> Result<f64> {
    if block_len == 0 {
        return Err(Error::parameter("block length must be positive"));
    }
    require_len(bits, block_len)?;
    Ok(unchecked::block_frequency(bits, block_len))
}

/// Runs test. Not applicable when the ones proportion is `2/sqrt(n)` or
/// further from one half.
pub fn runs(bits: &BitStream) -> Result<PValue> {
    require_len(bits, 2)?;
    Ok(unchecked::runs(bits))
}

/// Longest run of ones in a block.
pub fn longest_run_of_ones(bits: &BitStream) -> Result<f64> {
    require_len(bits, LONGEST_RUN_MIN_BITS)?;
    Ok(unchecked::longest_run_of_ones(bits))
}

/// Cumulative sums test, forward or backward.
pub fn cumulative_sums(bits: &BitStream, mode: CusumMode) -> Result<f64> {
    require_len(bits, CUSUM_MIN_BITS)?;
    Ok(unchecked::cumulative_sums(bits, mode))
}

/// Serial test with pattern length `m`; returns `(p1, p2)`.
///
/// Requires `2 <= m < floor(log2 n) - 2`.
pub fn serial(bits: &BitStream, m: usize) -> Result<(f64, f64)> {
    let log2 = bits.len().max(1).ilog2() as usize;
    if m < 2 || m + 2 >= log2 {
        return Err(Error::parameter(format!(
            "serial pattern length {m} needs 2 <= m < floor(log2 {}) - 2",
            bits.len()
        )));
    }
    Ok(unchecked::serial(bits, m))
}

/// Approximate entropy test with block length `m`.
///
/// Requires `1 <= m` and `m + 1 < log2 n`.
pub fn approximate_entropy(bits: &BitStream, m: usize) -> Result<f64> {
    if m < 1 || (m + 1) as f64 >= (bits.len().max(1) as f64).log2() {
        return Err(Error::parameter(format!(
            "approximate entropy block length {m} needs m + 1 < log2 {}",
            bits.len()
        )));
    }
    Ok(unchecked::approximate_entropy(bits, m))
}

/// Occurrence counts of the overlapping `m`-bit patterns, the sequence
/// being read cyclically.
pub fn cyclic_pattern_counts(bits: &BitStream, m: usize) -> Vec<u64> {
    let n = bits.len();
    let mut counts = vec![0u64; 1 << m];
    if m == 0 {
        counts[0] = n as u64;
        return counts;
    }
    let mask = (1usize << m) - 1;
    let mut window = 0usize;
    for i in 0..m - 1 {
        window = (window << 1) | usize::from(bits.get(i % n));
    }
    for i in 0..n {
        window = ((window << 1) | usize::from(bits.get((i + m - 1) % n))) & mask;
        counts[window] += 1;
    }
    counts
}

/// Statistics without the input-size recommendations. Inputs must still be
/// non-empty and parameters meaningful.
pub mod unchecked {
    use super::*;

    pub fn monobit(bits: &BitStream) -> f64 {
        let n = bits.len() as f64;
        let s = 2.0 * bits.count_ones() as f64 - n;
        erfc(s.abs() / n.sqrt() / std::f64::consts::SQRT_2)
    }

    pub fn block_frequency(bits: &BitStream, block_len: usize) -> f64 {
        let blocks = bits.len() / block_len;
        let mut chi2 = 0.0;
        for b in 0..blocks {
            let ones = (b * block_len..(b + 1) * block_len)
                .filter(|&i| bits.get(i))
                .count();
            let pi = ones as f64 / block_len as f64;
            chi2 += (pi - 0.5) * (pi - 0.5);
        }
        chi2 *= 4.0 * block_len as f64;
        igamc(blocks as f64 / 2.0, chi2 / 2.0)
    }

    pub fn runs(bits: &BitStream) -> PValue {
        let n = bits.len() as f64;
        let pi = bits.count_ones() as f64 / n;
        if (pi - 0.5).abs() >= 2.0 / n.sqrt() {
            return PValue::NotApplicable;
        }
        let transitions = (1..bits.len())
            .filter(|&i| bits.get(i) != bits.get(i - 1))
            .count();
        let v = 1.0 + transitions as f64;
        let spread = pi * (1.0 - pi);
        PValue::Value(erfc(
            (v - 2.0 * n * spread).abs() / (2.0 * (2.0 * n).sqrt() * spread),
        ))
    }

    /// Block length, category bounds and category probabilities by input
    /// length.
    pub(crate) fn longest_run_parameters(len: usize) -> (usize, usize, &'static [f64]) {
        const SHORT: [f64; 4] = [0.21484375, 0.3671875, 0.23046875, 0.1875];
        const MEDIUM: [f64; 6] = [
            0.117_403_578_8,
            0.242_955_959,
            0.249_363_483,
            0.175_177_06,
            0.102_701_071,
            0.112_398_847,
        ];
        const LONG: [f64; 7] = [0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727];
        if len < 6272 {
            (8, 1, &SHORT)
        } else if len < 750_000 {
            (128, 4, &MEDIUM)
        } else {
            (10_000, 10, &LONG)
        }
    }

    pub fn longest_run_of_ones(bits: &BitStream) -> f64 {
        let (block_len, lowest, probs) = longest_run_parameters(bits.len());
        let k = probs.len() - 1;
        let blocks = bits.len() / block_len;
        let mut freq = vec![0u64; probs.len()];
        for b in 0..blocks {
            let (mut run, mut longest) = (0usize, 0usize);
            for i in b * block_len..(b + 1) * block_len {
                if bits.get(i) {
                    run += 1;
                    longest = longest.max(run);
                } else {
                    run = 0;
                }
            }
            let category = longest.clamp(lowest, lowest + k) - lowest;
            freq[category] += 1;
        }
        let total = blocks as f64;
        let chi2: f64 = freq
            .iter()
            .zip(probs)
            .map(|(&f, &p)| {
                let expected = total * p;
                (f as f64 - expected).powi(2) / expected
            })
            .sum();
        igamc(k as f64 / 2.0, chi2 / 2.0)
    }

    pub fn cumulative_sums(bits: &BitStream, mode: CusumMode) -> f64 {
        let n = bits.len() as i64;
        let mut sum = 0i64;
        let mut z = 0i64;
        let step = |i: usize| if bits.get(i) { 1 } else { -1 };
        match mode {
            CusumMode::Forward => {
                for i in 0..bits.len() {
                    sum += step(i);
                    z = z.max(sum.abs());
                }
            }
            CusumMode::Backward => {
                for i in (0..bits.len()).rev() {
                    sum += step(i);
                    z = z.max(sum.abs());
                }
            }
        }
        let sqrt_n = (n as f64).sqrt();
        let zf = z as f64;
        // integer bounds truncate toward zero, as in the NIST reference code
        let mut sum1 = 0.0;
        for k in (-n / z + 1) / 4..=(n / z - 1) / 4 {
            let k = k as f64;
            sum1 += normal_cdf((4.0 * k + 1.0) * zf / sqrt_n);
            sum1 -= normal_cdf((4.0 * k - 1.0) * zf / sqrt_n);
        }
        let mut sum2 = 0.0;
        for k in (-n / z - 3) / 4..=(n / z - 1) / 4 {
            let k = k as f64;
            sum2 += normal_cdf((4.0 * k + 3.0) * zf / sqrt_n);
            sum2 -= normal_cdf((4.0 * k + 1.0) * zf / sqrt_n);
        }
        (1.0 - sum1 + sum2).clamp(0.0, 1.0)
    }

    fn psi_squared(bits: &BitStream, m: usize) -> f64 {
        if m == 0 {
            return 0.0;
        }
        let n = bits.len() as f64;
        let sum: f64 = cyclic_pattern_counts(bits, m)
            .iter()
            .map(|&c| (c as f64) * (c as f64))
            .sum();
        sum * (1u64 << m) as f64 / n - n
    }

    pub fn serial(bits: &BitStream, m: usize) -> (f64, f64) {
        let psi_m = psi_squared(bits, m);
        let psi_m1 = psi_squared(bits, m - 1);
        let psi_m2 = if m >= 2 {
            psi_squared(bits, m - 2)
        } else {
            0.0
        };
        let del1 = psi_m - psi_m1;
        let del2 = psi_m - 2.0 * psi_m1 + psi_m2;
        let p1 = igamc(2f64.powi(m as i32 - 2), del1 / 2.0);
        let p2 = igamc(2f64.powi(m as i32 - 3), del2 / 2.0);
        (p1, p2)
    }

    fn phi(bits: &BitStream, m: usize) -> f64 {
        let n = bits.len() as f64;
        cyclic_pattern_counts(bits, m)
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / n;
                p * p.ln()
            })
            .sum()
    }

    pub fn approximate_entropy(bits: &BitStream, m: usize) -> f64 {
        let n = bits.len() as f64;
        let apen = phi(bits, m) - phi(bits, m + 1);
        let chi2 = 2.0 * n * (std::f64::consts::LN_2 - apen);
        igamc(2f64.powi(m as i32 - 1), chi2 / 2.0)
    }
}
