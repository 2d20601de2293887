//! Distribution evolution of the chaotic iteration chain under a uniformly
//! random strategy.
//!
//! One iteration picks a component uniformly in `1..=n` and applies `F_f`,
//! so `M[x][y] = #{i : F_f(i, x) = y} / n`. Starting from a point mass, the
//! reach distribution after `t` steps is `e_start M^t`.
//!
//! Two scales of deviation from uniform are used:
//!
//! - the mean absolute deviation `R^t = Σ_x |P^t(x) - 2^-n| / 2^n`
//!   ([`deviation_rate`]);
//! - the same quantity relative to the uniform mass, `2^n R^t`
//!   ([`relative_deviation`]). Thresholds such as "below 1%" and the
//!   profile floors are expressed on this scale: for `[1, 3, 0, 2]` it
//!   first drops below 0.01 at `t = 14`.

use serde::Serialize;

use crate::bitcore::check_components;
use crate::{BooleanFunction, Configuration, Error, Result};

/// Largest component count handled by the dense representation.
pub const MAX_DENSE_COMPONENTS: usize = 12;

/// Tolerance on the total mass of a probability vector.
pub const MASS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    n: usize,
    size: usize,
    entries: Vec<f64>,
}

impl TransitionMatrix {
    pub fn new(f: &BooleanFunction) -> Result<Self> {
        let n = f.n();
        check_components(n)?;
        if n > MAX_DENSE_COMPONENTS {
            return Err(Error::parameter(format!(
                "dense transition matrix supports n <= {MAX_DENSE_COMPONENTS}, got {n}"
            )));
        }
        let size = f.size();
        let share = 1.0 / n as f64;
        let mut entries = vec![0.0; size * size];
        for x in 0..size as u32 {
            let switching = f.switching_mask(x);
            for b in 0..n {
                let y = x ^ (switching & (1 << b));
                entries[x as usize * size + y as usize] += share;
            }
        }
        Ok(Self { n, size, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.entries[x * self.size + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.entries[x * self.size..(x + 1) * self.size]
    }

    /// `p M`. Only the Hamming-1 neighbourhood of each state carries mass,
    /// so the product visits `n + 1` entries per row.
    pub fn propagate(&self, p: &[f64]) -> Vec<f64> {
        assert_eq!(p.len(), self.size);
        let mut next = vec![0.0; self.size];
        for (x, &mass) in p.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            let row = self.row(x);
            next[x] += mass * row[x];
            for b in 0..self.n {
                let y = x ^ (1 << b);
                next[y] += mass * row[y];
            }
        }
        next
    }
}

pub fn transition_matrix(f: &BooleanFunction) -> Result<TransitionMatrix> {
    TransitionMatrix::new(f)
}

fn point_mass(m: &TransitionMatrix, start: Configuration) -> Result<Vec<f64>> {
    if start.n() != m.n() {
        return Err(Error::ComponentMismatch {
            left: m.n(),
            right: start.n(),
        });
    }
    let mut p = vec![0.0; m.size()];
    p[start.value() as usize] = 1.0;
    Ok(p)
}

/// `P^t` from a point mass at `start`.
pub fn reach_distribution(
    m: &TransitionMatrix,
    start: Configuration,
    t: usize,
) -> Result<Vec<f64>> {
    let mut p = point_mass(m, start)?;
    for _ in 0..t {
        p = m.propagate(&p);
    }
    Ok(p)
}

/// The successive distributions `P^1, P^2, ...` from `start`.
pub fn reach_sequence(
    m: &TransitionMatrix,
    start: Configuration,
) -> Result<impl Iterator<Item = Vec<f64>> + '_> {
    let p0 = point_mass(m, start)?;
    Ok(std::iter::successors(Some(p0), move |p| Some(m.propagate(p))).skip(1))
}

fn check_distribution(p: &[f64]) -> Result<()> {
    if p.is_empty() || !p.len().is_power_of_two() {
        return Err(Error::Input(format!(
            "probability vector length {} is not a power of two",
            p.len()
        )));
    }
    let mass: f64 = p.iter().sum();
    if (mass - 1.0).abs() > 1e-9 || p.iter().any(|&v| v < -MASS_TOLERANCE) {
        return Err(Error::NotNormalized(mass));
    }
    Ok(())
}

/// `R^t`: mean absolute deviation of `p` from the uniform distribution.
pub fn deviation_rate(p: &[f64]) -> Result<f64> {
    check_distribution(p)?;
    let uniform = 1.0 / p.len() as f64;
    Ok(p.iter().map(|&v| (v - uniform).abs()).sum::<f64>() / p.len() as f64)
}

/// `2^n R^t`: the deviation measured in units of the uniform mass.
pub fn relative_deviation(p: &[f64]) -> Result<f64> {
    Ok(deviation_rate(p)? * p.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "value")]
pub enum StartMode {
    Node(u32),
    /// Per-step maximum over every start node.
    WorstCase,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Convergence {
    /// Successive distributions agree within the stabilisation tolerance.
    Converged,
    /// The chain cycles with the given period; `pattern` holds the relative
    /// deviations over the last period.
    Periodic { period: usize, pattern: Vec<f64> },
    /// Still moving at the horizon.
    Unsettled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviationProfile {
    pub name: Option<String>,
    pub n: usize,
    pub start: StartMode,
    pub epsilon: f64,
    /// `R^t` for `t = 1..=t_max`.
    pub deviations: Vec<f64>,
    /// Smallest relative deviation over the horizon.
    pub floor_deviation: f64,
    /// Smallest `t` whose relative deviation is within `epsilon` of the floor.
    pub sufficient_iterations: usize,
    pub convergence: Convergence,
}

impl DeviationProfile {
    pub fn t_max(&self) -> usize {
        self.deviations.len()
    }

    /// `2^n R^t` for `t = 1..=t_max`.
    pub fn relative_deviations(&self) -> Vec<f64> {
        let scale = (1u64 << self.n) as f64;
        self.deviations.iter().map(|r| r * scale).collect()
    }

    /// Smallest `t` with relative deviation strictly below `threshold`.
    pub fn first_below(&self, threshold: f64) -> Option<usize> {
        self.relative_deviations()
            .iter()
            .position(|&d| d < threshold)
            .map(|i| i + 1)
    }

    pub fn is_convergent(&self) -> bool {
        self.convergence == Convergence::Converged
    }

    /// `t,R^t,relative` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,deviation,relative_deviation\n");
        for (i, (r, d)) in self
            .deviations
            .iter()
            .zip(self.relative_deviations())
            .enumerate()
        {
            out.push_str(&format!("{},{:e},{:e}\n", i + 1, r, d));
        }
        out
    }
}

fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

fn check_profile_args(epsilon: f64, t_max: usize) -> Result<()> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::parameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if t_max == 0 {
        return Err(Error::parameter("t_max must be at least 1"));
    }
    Ok(())
}

/// Longest period looked for when the chain has not settled.
const MAX_PERIOD: usize = 16;

/// Computes `R^t` for `t = 1..=t_max` from `start` and summarises it.
///
/// The floor is the smallest relative deviation seen, and the sufficient
/// iteration count is the first `t` within `epsilon` of it. The chain is
/// classified as converged when the last two distributions differ by at
/// most `epsilon / 100` in L1, periodic when some earlier distribution
/// within [`MAX_PERIOD`] steps matches instead.
pub fn sufficient_iterations(
    f: &BooleanFunction,
    start: Configuration,
    epsilon: f64,
    t_max: usize,
) -> Result<DeviationProfile> {
    check_profile_args(epsilon, t_max)?;
    let m = TransitionMatrix::new(f)?;
    let history: Vec<Vec<f64>> = std::iter::once(point_mass(&m, start)?)
        .chain(reach_sequence(&m, start)?.take(t_max))
        .collect();
    let deviations = history[1..]
        .iter()
        .map(|p| deviation_rate(p))
        .collect::<Result<Vec<_>>>()?;
    let convergence = classify(&history, f.n(), epsilon);
    Ok(summarise(
        f,
        StartMode::Node(start.value()),
        epsilon,
        deviations,
        convergence,
    ))
}

/// Like [`sufficient_iterations`] with `R^t` replaced by its maximum over
/// all start nodes; the chain is classified converged only if every start
/// converges.
pub fn worst_case_profile(
    f: &BooleanFunction,
    epsilon: f64,
    t_max: usize,
) -> Result<DeviationProfile> {
    check_profile_args(epsilon, t_max)?;
    let mut worst = vec![0.0f64; t_max];
    let mut convergence = Convergence::Converged;
    for x in 0..f.size() as u32 {
        let profile = sufficient_iterations(f, Configuration::new(f.n(), x)?, epsilon, t_max)?;
        for (w, d) in worst.iter_mut().zip(&profile.deviations) {
            *w = w.max(*d);
        }
        if convergence == Convergence::Converged {
            convergence = profile.convergence;
        }
    }
    Ok(summarise(
        f,
        StartMode::WorstCase,
        epsilon,
        worst,
        convergence,
    ))
}

fn classify(history: &[Vec<f64>], n: usize, epsilon: f64) -> Convergence {
    let tolerance = epsilon / 100.0;
    let last = history.len() - 1;
    if last >= 1 && l1(&history[last], &history[last - 1]) <= tolerance {
        return Convergence::Converged;
    }
    let scale = (1u64 << n) as f64;
    for period in 2..=MAX_PERIOD.min(last) {
        if l1(&history[last], &history[last - period]) <= tolerance {
            let pattern = history[last + 1 - period..=last]
                .iter()
                .map(|p| deviation_rate(p).map(|r| r * scale).unwrap_or(f64::NAN))
                .collect();
            return Convergence::Periodic { period, pattern };
        }
    }
    Convergence::Unsettled
}

fn summarise(
    f: &BooleanFunction,
    start: StartMode,
    epsilon: f64,
    deviations: Vec<f64>,
    convergence: Convergence,
) -> DeviationProfile {
    let scale = f.size() as f64;
    let floor = deviations.iter().copied().fold(f64::INFINITY, f64::min) * scale;
    let sufficient = deviations
        .iter()
        .position(|&r| r * scale - floor <= epsilon)
        .map(|i| i + 1)
        .expect("the floor itself is within epsilon");
    DeviationProfile {
        name: f.name().map(str::to_owned),
        n: f.n(),
        start,
        epsilon,
        deviations,
        floor_deviation: floor,
        sufficient_iterations: sufficient,
        convergence,
    }
}
