//! Running the implemented tests over a collection of sequences and
//! aggregating per-test p-values into P_T.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::nist::{self, CusumMode, PValue};
use super::special::igamc;
use crate::prng::BitStream;
use crate::{Error, Result};

/// NIST's minimum sample size for the uniformity check.
pub const MIN_PVALUES: usize = 55;
const BINS: usize = 10;

/// The p-values one test produced over a set of sequences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PValueSet {
    pub test: String,
    pub pvalues: Vec<f64>,
    pub sequence_length: usize,
    pub sequence_count: usize,
}

impl PValueSet {
    pub fn new(test: impl Into<String>, pvalues: Vec<f64>, sequence_length: usize) -> Result<Self> {
        if let Some(p) = pvalues.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::Input(format!("p-value {p} is outside [0, 1]")));
        }
        let sequence_count = pvalues.len();
        Ok(Self {
            test: test.into(),
            pvalues,
            sequence_length,
            sequence_count,
        })
    }

    /// Share of p-values at or above `alpha`.
    pub fn proportion(&self, alpha: f64) -> f64 {
        if self.pvalues.is_empty() {
            return 0.0;
        }
        self.pvalues.iter().filter(|&&p| p >= alpha).count() as f64 / self.pvalues.len() as f64
    }

    /// Counts over ten equal bins of `[0, 1)`, with 1.0 in the last bin.
    pub fn histogram(&self) -> [usize; BINS] {
        let mut bins = [0usize; BINS];
        for &p in &self.pvalues {
            bins[((p * BINS as f64) as usize).min(BINS - 1)] += 1;
        }
        bins
    }
}

/// Chi-square uniformity of a p-value collection over ten bins.
pub fn pt_meta(set: &PValueSet) -> Result<f64> {
    let count = set.pvalues.len();
    if count < MIN_PVALUES {
        return Err(Error::TooFewPValues {
            got: count,
            min: MIN_PVALUES,
        });
    }
    let expected = count as f64 / BINS as f64;
    let chi2: f64 = set
        .histogram()
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    Ok(igamc((BINS - 1) as f64 / 2.0, chi2 / 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatteryConfig {
    pub alpha: f64,
    pub threshold: f64,
    pub block_length: usize,
    pub serial_m: usize,
    pub apen_m: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self {
            alpha: 0.01,
            threshold: 1e-4,
            block_length: 128,
            serial_m: 10,
            apen_m: 10,
        }
    }
}

/// The fifteen NIST SP 800-22 tests in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestId {
    Monobit,
    BlockFrequency,
    CumulativeSums,
    Runs,
    LongestRun,
    BinaryMatrixRank,
    Spectral,
    NonOverlappingTemplate,
    OverlappingTemplate,
    Universal,
    ApproximateEntropy,
    RandomExcursions,
    RandomExcursionsVariant,
    Serial,
    LinearComplexity,
}

impl TestId {
    pub const ALL: [TestId; 15] = [
        TestId::Monobit,
        TestId::BlockFrequency,
        TestId::CumulativeSums,
        TestId::Runs,
        TestId::LongestRun,
        TestId::BinaryMatrixRank,
        TestId::Spectral,
        TestId::NonOverlappingTemplate,
        TestId::OverlappingTemplate,
        TestId::Universal,
        TestId::ApproximateEntropy,
        TestId::RandomExcursions,
        TestId::RandomExcursionsVariant,
        TestId::Serial,
        TestId::LinearComplexity,
    ];

    pub fn is_implemented(self) -> bool {
        matches!(
            self,
            TestId::Monobit
                | TestId::BlockFrequency
                | TestId::CumulativeSums
                | TestId::Runs
                | TestId::LongestRun
                | TestId::ApproximateEntropy
                | TestId::Serial
        )
    }

    /// Whether the test yields several statistics whose P_T is averaged.
    pub fn is_multi(self) -> bool {
        matches!(
            self,
            TestId::CumulativeSums
                | TestId::NonOverlappingTemplate
                | TestId::RandomExcursions
                | TestId::RandomExcursionsVariant
                | TestId::Serial
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            TestId::Monobit => "Frequency (Monobit) Test",
            TestId::BlockFrequency => "Frequency Test within a Block",
            TestId::CumulativeSums => "Cumulative Sums (Cusum) Test*",
            TestId::Runs => "Runs Test",
            TestId::LongestRun => "Test for the Longest Run of Ones in a Block",
            TestId::BinaryMatrixRank => "Binary Matrix Rank Test",
            TestId::Spectral => "Discrete Fourier Transform (Spectral) Test",
            TestId::NonOverlappingTemplate => "Non-overlapping Template Matching Test*",
            TestId::OverlappingTemplate => "Overlapping Template Matching Test",
            TestId::Universal => "Maurer's \"Universal Statistical\" Test",
            TestId::ApproximateEntropy => "Approximate Entropy Test",
            TestId::RandomExcursions => "Random Excursions Test*",
            TestId::RandomExcursionsVariant => "Random Excursions Variant Test*",
            TestId::Serial => "Serial Test*",
            TestId::LinearComplexity => "Linear Complexity Test",
        }
    }
}

/// Where a report row's figures come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowSource {
    Computed,
    External,
    Absent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestRow {
    pub test: TestId,
    pub source: RowSource,
    /// `None` when absent or not applicable.
    pub p_t: Option<f64>,
    /// P_T of each sub-statistic, averaged into `p_t` for multi-statistic tests.
    pub components: Vec<f64>,
    /// Share of sequences with p >= alpha, averaged over sub-statistics.
    pub proportion: Option<f64>,
    /// Sequences for which the test was not applicable.
    pub not_applicable: usize,
    pub passed: Option<bool>,
}

impl TestRow {
    fn absent(test: TestId) -> Self {
        Self {
            test,
            source: RowSource::Absent,
            p_t: None,
            components: Vec::new(),
            proportion: None,
            not_applicable: 0,
            passed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub config: BatteryConfig,
    pub sequence_count: usize,
    pub sequence_length: usize,
    pub rows: Vec<TestRow>,
    /// Wall-clock time of the battery; kept out of the JSON so that reruns
    /// produce identical reports.
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl TestReport {
    pub fn row(&self, test: TestId) -> &TestRow {
        self.rows
            .iter()
            .find(|r| r.test == test)
            .expect("every test has a row")
    }

    pub fn p_t(&self, test: TestId) -> Option<f64> {
        self.row(test).p_t
    }

    pub fn passed(&self, test: TestId) -> Option<bool> {
        self.row(test).passed
    }

    /// `(passed, evaluated)` over rows that carry a verdict.
    pub fn successes(&self) -> (usize, usize) {
        let verdicts: Vec<bool> = self.rows.iter().filter_map(|r| r.passed).collect();
        (verdicts.iter().filter(|&&v| v).count(), verdicts.len())
    }

    pub fn all_passed(&self) -> bool {
        let (passed, evaluated) = self.successes();
        passed == evaluated
    }

    /// Merge P_T values for tests run by an external suite, keyed by the
    /// snake_case test name; `null` marks not applicable. Rows already
    /// computed here are left alone.
    pub fn import_external(&mut self, values: &BTreeMap<TestId, Option<f64>>) -> Result<()> {
        for (&test, &p_t) in values {
            if let Some(p) = p_t {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Input(format!(
                        "external P_T {p} for {test:?} is outside [0, 1]"
                    )));
                }
            }
            let threshold = self.config.threshold;
            let row = self
                .rows
                .iter_mut()
                .find(|r| r.test == test)
                .expect("every test has a row");
            if row.source == RowSource::Computed {
                continue;
            }
            row.source = RowSource::External;
            row.p_t = p_t;
            row.components = p_t.into_iter().collect();
            row.passed = p_t.map(|p| p >= threshold);
        }
        Ok(())
    }

    /// Human-readable table in report row order.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} sequences of {} bits, alpha = {}, pass iff P_T >= {}",
            self.sequence_count, self.sequence_length, self.config.alpha, self.config.threshold
        );
        let _ = writeln!(
            out,
            "{:<46} {:>9} {:>10}  verdict",
            "test", "P_T", "proportion"
        );
        for row in &self.rows {
            let p_t = match (row.source, row.p_t) {
                (RowSource::Absent, _) => "-".to_string(),
                (_, None) => "NaN".to_string(),
                (_, Some(p)) => format!("{p:.5}"),
            };
            let proportion = row
                .proportion
                .map_or("-".to_string(), |p| format!("{p:.4}"));
            let verdict = match (row.source, row.passed) {
                (RowSource::Absent, _) => "not run",
                (_, None) => "n/a",
                (_, Some(true)) => "pass",
                (_, Some(false)) => "FAIL",
            };
            let _ = writeln!(
                out,
                "{:<46} {p_t:>9} {proportion:>10}  {verdict}",
                row.test.label()
            );
        }
        let (passed, evaluated) = self.successes();
        let _ = writeln!(
            out,
            "{:<46} {:>9}",
            "Success",
            format!("{passed}/{evaluated}")
        );
        if let Some(elapsed) = self.elapsed {
            let _ = writeln!(
                out,
                "{:<46} {:>9.3}s",
                "Computational time",
                elapsed.as_secs_f64()
            );
        }
        out
    }
}

/// Per-sequence results of the implemented tests.
#[derive(Debug, Clone, Copy)]
struct SequenceResults {
    monobit: f64,
    block_frequency: f64,
    cusum_forward: f64,
    cusum_backward: f64,
    runs: PValue,
    longest_run: f64,
    serial: (f64, f64),
    apen: f64,
}

fn evaluate(bits: &BitStream, config: &BatteryConfig) -> Result<SequenceResults> {
    Ok(SequenceResults {
        monobit: nist::monobit(bits)?,
        block_frequency: nist::block_frequency(bits, config.block_length)?,
        cusum_forward: nist::cumulative_sums(bits, CusumMode::Forward)?,
        cusum_backward: nist::cumulative_sums(bits, CusumMode::Backward)?,
        runs: nist::runs(bits)?,
        longest_run: nist::longest_run_of_ones(bits)?,
        serial: nist::serial(bits, config.serial_m)?,
        apen: nist::approximate_entropy(bits, config.apen_m)?,
    })
}

/// Run every implemented test on every stream and aggregate.
///
/// Streams are evaluated in parallel; results are collected in input order
/// so the report does not depend on the worker count.
pub fn run_battery(streams: &[BitStream], config: &BatteryConfig) -> Result<TestReport> {
    let started = std::time::Instant::now();
    let Some(first) = streams.first() else {
        return Err(Error::Input("no streams to test".into()));
    };
    let length = first.len();
    if let Some((i, s)) = streams.iter().enumerate().find(|(_, s)| s.len() != length) {
        return Err(Error::Input(format!(
            "stream {i} has {} bits, stream 0 has {length}",
            s.len()
        )));
    }
    if streams.len() < MIN_PVALUES {
        return Err(Error::TooFewPValues {
            got: streams.len(),
            min: MIN_PVALUES,
        });
    }
    if !(config.alpha > 0.0 && config.alpha < 1.0) {
        return Err(Error::parameter(format!(
            "alpha {} is outside (0, 1)",
            config.alpha
        )));
    }

    let results: Vec<SequenceResults> = streams
        .par_iter()
        .map(|s| evaluate(s, config))
        .collect::<Result<_>>()?;

    let column = |name: &str, f: &dyn Fn(&SequenceResults) -> Option<f64>| -> Result<PValueSet> {
        PValueSet::new(name, results.iter().filter_map(f).collect(), length)
    };

    let mut rows = Vec::with_capacity(TestId::ALL.len());
    for test in TestId::ALL {
        let sets = match test {
            TestId::Monobit => vec![column("monobit", &|r| Some(r.monobit))?],
            TestId::BlockFrequency => {
                vec![column("block_frequency", &|r| Some(r.block_frequency))?]
            }
            TestId::CumulativeSums => vec![
                column("cusum_forward", &|r| Some(r.cusum_forward))?,
                column("cusum_backward", &|r| Some(r.cusum_backward))?,
            ],
            TestId::Runs => vec![column("runs", &|r| r.runs.value())?],
            TestId::LongestRun => vec![column("longest_run", &|r| Some(r.longest_run))?],
            TestId::ApproximateEntropy => vec![column("approximate_entropy", &|r| Some(r.apen))?],
            TestId::Serial => vec![
                column("serial_p1", &|r| Some(r.serial.0))?,
                column("serial_p2", &|r| Some(r.serial.1))?,
            ],
            _ => {
                rows.push(TestRow::absent(test));
                continue;
            }
        };
        rows.push(aggregate(test, &sets, streams.len(), config)?);
    }

    Ok(TestReport {
        config: *config,
        sequence_count: streams.len(),
        sequence_length: length,
        rows,
        elapsed: Some(started.elapsed()),
    })
}

fn aggregate(
    test: TestId,
    sets: &[PValueSet],
    total: usize,
    config: &BatteryConfig,
) -> Result<TestRow> {
    let not_applicable = total - sets.iter().map(|s| s.sequence_count).min().unwrap_or(0);
    let mut components = Vec::with_capacity(sets.len());
    for set in sets {
        match pt_meta(set) {
            Ok(p) => components.push(p),
            // too few applicable sequences: the test as a whole is not applicable
            Err(Error::TooFewPValues { .. }) => {
                return Ok(TestRow {
                    test,
                    source: RowSource::Computed,
                    p_t: None,
                    components: Vec::new(),
                    proportion: None,
                    not_applicable,
                    passed: None,
                })
            }
            Err(e) => return Err(e),
        }
    }
    let p_t = components.iter().sum::<f64>() / components.len() as f64;
    let proportion =
        sets.iter().map(|s| s.proportion(config.alpha)).sum::<f64>() / sets.len() as f64;
    Ok(TestRow {
        test,
        source: RowSource::Computed,
        p_t: Some(p_t),
        components,
        proportion: Some(proportion),
        not_applicable,
        passed: Some(p_t >= config.threshold),
    })
}
