//! Relative Bayesian inference: the posterior RPF is the entrywise product of
//! the prior RPF and the likelihood-ratio RPF.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::catalog::ratio_table;
use crate::error::{Result, RpfError};
use crate::magnitude::Magnitude;
use crate::rpf::DenseRpf;
use crate::table::MagnitudeTable;

/// Entrywise product. The product of two RPFs is again an RPF.
pub fn pointwise_product(a: &DenseRpf, b: &DenseRpf) -> Result<DenseRpf> {
    if a.k() != b.k() {
        return Err(RpfError::Dimension {
            expected: a.k(),
            found: b.k(),
        });
    }
    let k = a.k();
    let (x, y) = (a.table().entries(), b.table().entries());
    #[cfg(feature = "parallel")]
    let entries: Vec<Magnitude> = if k >= 64 {
        x.par_iter().zip(y).map(|(&p, &q)| p * q).collect()
    } else {
        x.iter().zip(y).map(|(&p, &q)| p * q).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let entries: Vec<Magnitude> = x.iter().zip(y).map(|(&p, &q)| p * q).collect();
    Ok(DenseRpf::from_table_unchecked(
        MagnitudeTable::from_entries(k, entries)?,
    ))
}

/// `P(h1, h2 | D) = P_D(h1, h2) * P(h1, h2)`.
pub fn bayes_update(prior: &DenseRpf, likelihood: &DenseRpf) -> Result<DenseRpf> {
    pointwise_product(prior, likelihood)
}

/// Folds [`bayes_update`] over a stream of likelihoods.
pub fn sequential_update(prior: &DenseRpf, likelihoods: &[DenseRpf]) -> Result<DenseRpf> {
    likelihoods
        .iter()
        .try_fold(prior.clone(), |post, l| bayes_update(&post, l))
}

/// Likelihood-ratio RPF from per-hypothesis likelihoods `P(D | h)`.
/// Zero likelihoods are allowed; two zeros are incomparable.
pub fn likelihood_from_density(density: &[f64]) -> Result<DenseRpf> {
    if let Some(&bad) = density.iter().find(|d| !(**d >= 0.0 && d.is_finite())) {
        return Err(RpfError::InvalidParameter(format!(
            "likelihood {bad} is not a finite nonnegative number"
        )));
    }
    Ok(ratio_table(density))
}

/// Per-hypothesis message counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVector(pub Vec<u64>);

/// Likelihood RPF of a K-ary symmetric channel that delivers the sent
/// message with probability `p` and otherwise a uniformly random one:
/// `P_c(h1, h2) = (1 + pK / (1 - p))^(c[h1] - c[h2])`.
pub fn noisy_channel_likelihood(k: usize, p: f64, counts: &CountVector) -> Result<DenseRpf> {
    if counts.0.len() != k {
        return Err(RpfError::Dimension {
            expected: k,
            found: counts.0.len(),
        });
    }
    if !(0.0..1.0).contains(&p) {
        return Err(RpfError::InvalidParameter(format!(
            "channel fidelity {p} outside [0, 1)"
        )));
    }
    let log_base = (p * k as f64 / (1.0 - p)).ln_1p();
    let c = &counts.0;
    Ok(DenseRpf::from_table_unchecked(MagnitudeTable::from_fn(
        k,
        |i, j| {
            if i == j {
                Magnitude::ONE
            } else {
                Magnitude::Finite((c[i] as f64 - c[j] as f64) * log_base)
            }
        },
    )))
}
