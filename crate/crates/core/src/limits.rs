//! Limits of sequences of totally comparable RPFs.
//!
//! Each RPF is embedded entrywise into `[0, 1]^(k*k)` by `x / (x + 1)`, where
//! `0` and `inf` sit at the ends of the interval. Sequences converge in that
//! cube; entries that approach an end are snapped onto it so the limit
//! carries exact `0` / `inf` entries.

use thiserror::Error;

use crate::catalog;
use crate::error::{Result, RpfError};
use crate::magnitude::Magnitude;
use crate::rpf::DenseRpf;
use crate::table::{validate, MagnitudeTable, ValidationReport};

/// Max-norm step size below which a sequence counts as settled.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-9;
/// Number of trailing steps that must all be settled.
pub const SETTLED_STEPS: usize = 3;
/// Distance from 0 or 1 at which an embedded coordinate is snapped.
pub const SNAP_TOLERANCE: f64 = 1e-9;
/// Default length of an `eps = 2^-n` schedule.
pub const DEFAULT_STEPS: usize = 40;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LimitError {
    #[error(transparent)]
    Rpf(#[from] RpfError),
    #[error("no convergence: entry ({row}, {col}) moved {distance:e} at step {step}")]
    NotConverged {
        row: usize,
        col: usize,
        distance: f64,
        step: usize,
    },
    #[error("no convergence: snapped limit violates the axioms ({0})")]
    Inconsistent(ValidationReport),
}

impl LimitError {
    /// Both failure modes of the limit itself, as opposed to bad input.
    pub fn is_non_convergence(&self) -> bool {
        !matches!(self, LimitError::Rpf(_))
    }
}

/// Row-major inverse-odds image of a totally comparable RPF.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedRpf {
    k: usize,
    coords: Vec<f64>,
}

impl EmbeddedRpf {
    pub fn new(k: usize, coords: Vec<f64>) -> Result<EmbeddedRpf> {
        if coords.len() != k * k {
            return Err(RpfError::Dimension {
                expected: k * k,
                found: coords.len(),
            });
        }
        if let Some(&bad) = coords.iter().find(|u| !(0.0..=1.0).contains(*u)) {
            return Err(RpfError::InvalidParameter(format!(
                "coordinate {bad} outside [0, 1]"
            )));
        }
        Ok(EmbeddedRpf { k, coords })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn coord(&self, i: usize, j: usize) -> f64 {
        self.coords[i * self.k + j]
    }

    /// Max-norm distance.
    pub fn distance(&self, other: &EmbeddedRpf) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn embed(p: &DenseRpf) -> Result<EmbeddedRpf> {
    p.require_totally_comparable()?;
    let coords = p
        .table()
        .entries()
        .iter()
        .map(|m| m.inverse_odds())
        .collect::<Result<Vec<f64>, _>>()?;
    Ok(EmbeddedRpf { k: p.k(), coords })
}

/// Maps coordinates back through `u / (1 - u)` and checks the axioms.
pub fn unembed(e: &EmbeddedRpf) -> Result<DenseRpf> {
    let entries = e
        .coords
        .iter()
        .map(|&u| Magnitude::odds(u))
        .collect::<Result<Vec<_>, _>>()?;
    DenseRpf::new(MagnitudeTable::from_entries(e.k, entries)?)
}

/// Elementwise limit of `seq`.
///
/// The last `min(SETTLED_STEPS, len - 1)` embedded steps must each be within
/// [`CONVERGENCE_TOLERANCE`]. The limit takes the final element's entries,
/// except that an entry within [`SNAP_TOLERANCE`] of 0 or 1 in the cube, and
/// still moving towards that end, becomes exactly `0` or `inf`. The result is
/// re-validated; a snap that breaks the axioms is reported, not repaired.
pub fn sequence_limit(seq: &[DenseRpf]) -> Result<DenseRpf, LimitError> {
    if seq.len() < 2 {
        return Err(RpfError::InvalidParameter(format!(
            "a limit needs at least 2 elements, got {}",
            seq.len()
        ))
        .into());
    }
    let k = seq[0].k();
    if let Some(bad) = seq.iter().find(|p| p.k() != k) {
        return Err(RpfError::Dimension {
            expected: k,
            found: bad.k(),
        }
        .into());
    }
    let embedded = seq.iter().map(embed).collect::<Result<Vec<_>>>()?;

    let steps = embedded.len() - 1;
    for step in steps + 1 - SETTLED_STEPS.min(steps)..=steps {
        let (prev, cur) = (&embedded[step - 1], &embedded[step]);
        if cur.distance(prev) > CONVERGENCE_TOLERANCE {
            let (idx, distance) = cur
                .coords
                .iter()
                .zip(&prev.coords)
                .map(|(a, b)| (a - b).abs())
                .enumerate()
                .fold(
                    (0, 0.0),
                    |best, (i, d)| if d > best.1 { (i, d) } else { best },
                );
            return Err(LimitError::NotConverged {
                row: idx / k,
                col: idx % k,
                distance,
                step,
            });
        }
    }

    // Direction is read off the log values: near the ends of the cube the
    // embedded coordinates round to exactly 0 or 1 long before the entries
    // themselves stop moving.
    let last = &embedded[steps];
    let (source, before) = (seq[steps].table(), seq[steps - 1].table());
    let table = MagnitudeTable::from_fn(k, |i, j| {
        let (u, m) = (last.coord(i, j), source[(i, j)]);
        if !m.is_finite_positive() {
            return m;
        }
        let (now, then) = (extended_log(m), extended_log(before[(i, j)]));
        if u <= SNAP_TOLERANCE && now < then {
            Magnitude::Zero
        } else if u >= 1.0 - SNAP_TOLERANCE && now > then {
            Magnitude::Infinity
        } else {
            m
        }
    });
    let report = validate(&table);
    if !report.is_valid() {
        return Err(LimitError::Inconsistent(report));
    }
    Ok(DenseRpf::new(table).expect("validated above"))
}

// Entries of a totally comparable RPF are never the wildcard.
fn extended_log(m: Magnitude) -> f64 {
    match m {
        Magnitude::Zero => f64::NEG_INFINITY,
        Magnitude::Infinity => f64::INFINITY,
        Magnitude::Finite(l) => l,
        Magnitude::Wildcard => f64::NAN,
    }
}

/// Samples `family` at `eps = 2^-n` for `n = 1..=steps` and takes the limit.
pub fn family_limit<F>(family: F, steps: usize) -> Result<DenseRpf, LimitError>
where
    F: Fn(f64) -> Result<DenseRpf>,
{
    let seq = (1..=steps)
        .map(|n| family(0.5f64.powi(n as i32)))
        .collect::<Result<Vec<_>>>()?;
    sequence_limit(&seq)
}

/// Built-in one-parameter families for the CLI and tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedFamily {
    /// `(1 - eps, 2 eps / 3, eps / 3)`: the two vanishing outcomes keep a 2:1
    /// ratio that the absolute limit `(1, 0, 0)` forgets.
    AbsLoseInfo,
    /// `(eps, 1 - 2 eps, eps)`: two outcomes vanish at the same rate.
    EqualZeros,
    /// `(1/2 + eps, 1/2 - eps)`: converges to the uniform pair.
    HalfSplit,
}

impl NamedFamily {
    pub const ALL: [NamedFamily; 3] = [
        NamedFamily::AbsLoseInfo,
        NamedFamily::EqualZeros,
        NamedFamily::HalfSplit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedFamily::AbsLoseInfo => "abs-lose-info",
            NamedFamily::EqualZeros => "equal-zeros",
            NamedFamily::HalfSplit => "half-split",
        }
    }

    pub fn from_name(name: &str) -> Option<NamedFamily> {
        NamedFamily::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn sample(self, eps: f64) -> Result<DenseRpf> {
        match self {
            NamedFamily::AbsLoseInfo => {
                catalog::from_absolute(&[1.0 - eps, 2.0 * eps / 3.0, eps / 3.0])
            }
            NamedFamily::EqualZeros => catalog::from_absolute(&[eps, 1.0 - 2.0 * eps, eps]),
            NamedFamily::HalfSplit => catalog::from_absolute(&[0.5 + eps, 0.5 - eps]),
        }
    }

    pub fn limit(self, steps: usize) -> Result<DenseRpf, LimitError> {
        family_limit(|eps| self.sample(eps), steps)
    }
}
