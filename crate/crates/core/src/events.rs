//! Relative probability of events (sets of outcomes) over totally comparable
//! RPFs, and conversion back to absolute probabilities.

use std::collections::BTreeSet;

use crate::catalog::AbsoluteDistribution;
use crate::error::{Result, RpfError};
use crate::magnitude::{log_add_exp, Magnitude};
use crate::rpf::DenseRpf;

/// A set of outcome indices. Order and duplicates in the input are ignored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Event(BTreeSet<usize>);

impl Event {
    pub fn empty() -> Event {
        Event::default()
    }

    pub fn universal(k: usize) -> Event {
        Event((0..k).collect())
    }

    pub fn singleton(h: usize) -> Event {
        Event(BTreeSet::from([h]))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.0.contains(&h)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// The event whose members are the set bits of `mask`.
    pub fn from_mask(mask: u64) -> Event {
        Event((0..64).filter(|b| mask >> b & 1 == 1).collect())
    }

    fn check_range(&self, k: usize) -> Result<()> {
        match self.0.iter().next_back() {
            Some(&index) if index >= k => Err(RpfError::OutOfRange { index, k }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for Event {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Event {
        Event(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[usize; N]> for Event {
    fn from(members: [usize; N]) -> Event {
        members.into_iter().collect()
    }
}

/// Lowest-indexed member of `e` that is possible with respect to every other
/// member of `e`.
pub fn internal_anchor(p: &DenseRpf, e: &Event) -> Result<usize> {
    p.require_totally_comparable()?;
    e.check_range(p.k())?;
    if e.is_empty() {
        return Err(RpfError::EmptyEvent);
    }
    Ok(e.iter()
        .find(|&a| e.iter().all(|h| p[(a, h)].is_positive()))
        .expect("every non-empty event of a totally comparable RPF has an internal anchor"))
}

/// `sum_{h in e} P(h, r)`.
pub fn mass_relative_to(p: &DenseRpf, e: &Event, reference: usize) -> Magnitude {
    e.iter().map(|h| p[(h, reference)]).sum()
}

/// Probability of `e1` relative to `e2`.
///
/// Uses the ratio `sum_{e1} P(h, r) / sum_{e2} P(h, r)` with `r` the internal
/// anchor of `e1` (or of `e2` when `e1` is empty); that reference always makes
/// the numerator finite and positive, so the result is never `*`. Both events
/// empty gives 1.
pub fn event_rel_prob(p: &DenseRpf, e1: &Event, e2: &Event) -> Result<Magnitude> {
    p.require_totally_comparable()?;
    e1.check_range(p.k())?;
    e2.check_range(p.k())?;
    let reference = match (e1.is_empty(), e2.is_empty()) {
        (true, true) => return Ok(Magnitude::ONE),
        (false, _) => internal_anchor(p, e1)?,
        (true, false) => internal_anchor(p, e2)?,
    };
    let num = mass_relative_to(p, e1, reference);
    let den = mass_relative_to(p, e2, reference);
    Ok(num.ratio(den))
}

/// `P(h) = P(h, a) / sum_h' P(h', a)` for the lowest anchor `a`.
pub fn to_absolute(p: &DenseRpf) -> Result<AbsoluteDistribution> {
    if p.k() == 0 {
        return Err(RpfError::EmptySpace);
    }
    let anchor = (0..p.k())
        .find(|&a| p.is_anchor(a))
        .ok_or(RpfError::NotAnchored)?;
    let logs: Vec<f64> = (0..p.k())
        .map(|h| {
            p[(h, anchor)]
                .log_value()
                .expect("entries towards an anchor are comparable")
        })
        .collect();
    let total = logs.iter().copied().fold(f64::NEG_INFINITY, |acc, l| {
        if l == f64::NEG_INFINITY {
            acc
        } else if acc == f64::NEG_INFINITY {
            l
        } else {
            log_add_exp(acc, l)
        }
    });
    let probs = logs.iter().map(|l| (l - total).exp()).collect();
    AbsoluteDistribution::new(probs)
}

/// `P(e) = P(e, Omega)` as a real number.
pub fn absolute_event_prob(p: &DenseRpf, e: &Event) -> Result<f64> {
    if p.k() == 0 {
        return Err(RpfError::EmptySpace);
    }
    let rel = event_rel_prob(p, e, &Event::universal(p.k()))?;
    Ok(rel
        .linear()
        .expect("event probabilities are never the wildcard"))
}
