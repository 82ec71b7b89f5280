//! Constructors for the standard relative probability functions, and the
//! bridge from ordinary (absolute) categorical distributions.

use crate::error::{Result, RpfError};
use crate::magnitude::Magnitude;
use crate::rpf::DenseRpf;
use crate::table::MagnitudeTable;

/// Tolerance on the total mass of an absolute distribution.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// A categorical distribution: nonnegative probabilities summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsoluteDistribution(Vec<f64>);

impl AbsoluteDistribution {
    pub fn new(probs: Vec<f64>) -> Result<AbsoluteDistribution> {
        if probs.is_empty() {
            return Err(RpfError::EmptySpace);
        }
        if let Some(&bad) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(RpfError::InvalidParameter(format!(
                "probability {bad} outside [0, 1]"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(RpfError::NotNormalized(total));
        }
        Ok(AbsoluteDistribution(probs))
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

pub fn uniform(k: usize) -> DenseRpf {
    DenseRpf::from_table_unchecked(MagnitudeTable::from_fn(k, |_, _| Magnitude::ONE))
}

/// Every distinct pair incomparable. The diagonal stays at 1 as the identity
/// axiom requires.
pub fn indeterminate(k: usize) -> DenseRpf {
    DenseRpf::from_table_unchecked(MagnitudeTable::from_fn(k, |i, j| {
        if i == j {
            Magnitude::ONE
        } else {
            Magnitude::Wildcard
        }
    }))
}

/// Outcome `c` is infinitely more probable than every other outcome; the
/// remaining outcomes are equally likely among themselves.
pub fn certain(k: usize, c: usize) -> Result<DenseRpf> {
    if c >= k {
        return Err(RpfError::OutOfRange { index: c, k });
    }
    Ok(DenseRpf::from_table_unchecked(MagnitudeTable::from_fn(
        k,
        |i, j| {
            if i == j {
                Magnitude::ONE
            } else if i == c {
                Magnitude::Infinity
            } else if j == c {
                Magnitude::Zero
            } else {
                Magnitude::ONE
            }
        },
    )))
}

pub fn empty() -> DenseRpf {
    uniform(0)
}

pub fn unit() -> DenseRpf {
    uniform(1)
}

/// `P(h_{i+1}, h_i) = ratio` for every neighbour pair, hence
/// `P(h_i, h_j) = ratio^(i - j)`. A ratio of `0` or `inf` gives the limit
/// chain where every outcome dominates all higher (or lower) indices.
pub fn finite_geometric(k: usize, ratio: Magnitude) -> Result<DenseRpf> {
    let step = match ratio {
        Magnitude::Wildcard => {
            return Err(RpfError::InvalidParameter(
                "geometric ratio cannot be the wildcard".into(),
            ))
        }
        other => other,
    };
    Ok(DenseRpf::from_table_unchecked(MagnitudeTable::from_fn(
        k,
        |i, j| {
            let exponent = i as f64 - j as f64;
            match (step, i.cmp(&j)) {
                (_, std::cmp::Ordering::Equal) => Magnitude::ONE,
                (Magnitude::Finite(l), _) => Magnitude::Finite(l * exponent),
                (_, std::cmp::Ordering::Greater) => step,
                (_, std::cmp::Ordering::Less) => step.inverse(),
            }
        },
    )))
}

/// Binomial RPF over `0..=n` successes:
/// `P(a, b) = b!(n-b)! / (a!(n-a)!) * (p / (1-p))^(a-b)`, evaluated with
/// additive log-factorials.
pub fn binomial(n: usize, p: f64) -> Result<DenseRpf> {
    if !(p > 0.0 && p < 1.0) {
        return Err(RpfError::InvalidParameter(format!(
            "success probability {p} outside (0, 1)"
        )));
    }
    let mut log_fact = vec![0.0; n + 1];
    for i in 1..=n {
        log_fact[i] = log_fact[i - 1] + (i as f64).ln();
    }
    let log_odds = p.ln() - (-p).ln_1p();
    let weight = |h: usize| -log_fact[h] - log_fact[n - h] + h as f64 * log_odds;
    Ok(DenseRpf::from_table_unchecked(MagnitudeTable::from_fn(
        n + 1,
        |a, b| {
            if a == b {
                Magnitude::ONE
            } else {
                Magnitude::Finite(weight(a) - weight(b))
            }
        },
    )))
}

/// Entrywise ratios of nonnegative weights: `0/0` off the diagonal is `*`,
/// the diagonal is always 1.
pub(crate) fn ratio_table(weights: &[f64]) -> DenseRpf {
    let logs: Vec<f64> = weights.iter().map(|w| w.ln()).collect();
    DenseRpf::from_table_unchecked(MagnitudeTable::from_fn(logs.len(), |i, j| {
        if i == j {
            Magnitude::ONE
        } else {
            match (weights[i] == 0.0, weights[j] == 0.0) {
                (true, true) => Magnitude::Wildcard,
                (true, false) => Magnitude::Zero,
                (false, true) => Magnitude::Infinity,
                (false, false) => Magnitude::Finite(logs[i] - logs[j]),
            }
        }
    }))
}

/// `P(i, j) = P(i) / P(j)` for an absolute distribution.
pub fn from_distribution(d: &AbsoluteDistribution) -> DenseRpf {
    ratio_table(d.probs())
}

/// Validates `probs` as a distribution and converts it.
pub fn from_absolute(probs: &[f64]) -> Result<DenseRpf> {
    Ok(from_distribution(&AbsoluteDistribution::new(
        probs.to_vec(),
    )?))
}
