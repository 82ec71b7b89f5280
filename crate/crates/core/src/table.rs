//! Square tables of magnitudes and the axiom checker that decides whether a
//! table is a relative probability function.

use std::fmt;
use std::ops::Index;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Result, RpfError};
use crate::magnitude::Magnitude;

/// A `k x k` row-major table; entry `(i, j)` is the probability of outcome
/// `i` relative to outcome `j`. No axioms are enforced.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnitudeTable {
    k: usize,
    entries: Vec<Magnitude>,
}

impl MagnitudeTable {
    pub fn from_fn(k: usize, mut f: impl FnMut(usize, usize) -> Magnitude) -> MagnitudeTable {
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                entries.push(f(i, j));
            }
        }
        MagnitudeTable { k, entries }
    }

    /// Row-major entries; `entries.len()` must be `k * k`.
    pub fn from_entries(k: usize, entries: Vec<Magnitude>) -> Result<MagnitudeTable> {
        if entries.len() != k * k {
            return Err(RpfError::Dimension {
                expected: k * k,
                found: entries.len(),
            });
        }
        Ok(MagnitudeTable { k, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Magnitude>>) -> Result<MagnitudeTable> {
        let k = rows.len();
        let mut entries = Vec::with_capacity(k * k);
        for row in rows {
            if row.len() != k {
                return Err(RpfError::Dimension {
                    expected: k,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(MagnitudeTable { k, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> Magnitude {
        assert!(
            i < self.k && j < self.k,
            "({i}, {j}) outside {0}x{0} table",
            self.k
        );
        self.entries[i * self.k + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Magnitude) {
        assert!(
            i < self.k && j < self.k,
            "({i}, {j}) outside {0}x{0} table",
            self.k
        );
        self.entries[i * self.k + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Magnitude] {
        &self.entries[i * self.k..(i + 1) * self.k]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Magnitude]> {
        (0..self.k).map(move |i| self.row(i))
    }

    pub fn entries(&self) -> &[Magnitude] {
        &self.entries
    }

    /// Entrywise tolerance-aware equality (variant identity for non-finite
    /// entries).
    pub fn approx_eq(&self, other: &MagnitudeTable) -> bool {
        self.k == other.k && self.entries.iter().zip(&other.entries).all(|(a, b)| a == b)
    }
}

impl Index<(usize, usize)> for MagnitudeTable {
    type Output = Magnitude;

    fn index(&self, (i, j): (usize, usize)) -> &Magnitude {
        assert!(
            i < self.k && j < self.k,
            "({i}, {j}) outside {0}x{0} table",
            self.k
        );
        &self.entries[i * self.k + j]
    }
}

/// One failed axiom instance with its witness outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// `P(h, h) != 1`.
    Identity { outcome: usize },
    /// `P(i, j) != P(j, i)^-1`, reported once per unordered pair with `i < j`.
    Inverse { i: usize, j: usize },
    /// `P(i, l)` is not matched by `P(i, j) * P(j, l)`.
    Composition { i: usize, j: usize, l: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Identity { outcome } => write!(f, "identity at ({outcome})"),
            Violation::Inverse { i, j } => write!(f, "inverse at ({i}, {j})"),
            Violation::Composition { i, j, l } => write!(f, "composition at ({i}, {j}, {l})"),
        }
    }
}

/// Violations ordered identity first, then inverse, then composition, each
/// group in index order. Empty means the table is a valid RPF.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.violations.as_slice() {
            [] => f.write_str("no violations"),
            [only] => write!(f, "{only}"),
            [first, rest @ ..] => write!(f, "{first} (+{} more)", rest.len()),
        }
    }
}

/// Checks the identity, inverse and composition axioms. Composition is
/// checked over all `k^3` ordered triples; rows are split across threads when
/// the `parallel` feature is on and the table is large enough to benefit.
pub fn validate(table: &MagnitudeTable) -> ValidationReport {
    #[cfg(feature = "parallel")]
    if table.k() >= PARALLEL_MIN_K {
        return validate_parallel(table);
    }
    validate_sequential(table)
}

/// Below this size the thread hand-off costs more than the triple loop.
#[cfg(feature = "parallel")]
const PARALLEL_MIN_K: usize = 24;

pub fn validate_sequential(table: &MagnitudeTable) -> ValidationReport {
    let mut violations = pairwise_violations(table);
    for i in 0..table.k() {
        violations.extend(composition_row(table, i));
    }
    ValidationReport { violations }
}

/// Same result as [`validate_sequential`], with the composition rows
/// evaluated on the rayon pool. Without the `parallel` feature this is the
/// sequential check.
pub fn validate_parallel(table: &MagnitudeTable) -> ValidationReport {
    #[cfg(feature = "parallel")]
    {
        let mut violations = pairwise_violations(table);
        let rows: Vec<Vec<Violation>> = (0..table.k())
            .into_par_iter()
            .map(|i| composition_row(table, i))
            .collect();
        violations.extend(rows.into_iter().flatten());
        ValidationReport { violations }
    }
    #[cfg(not(feature = "parallel"))]
    validate_sequential(table)
}

fn pairwise_violations(table: &MagnitudeTable) -> Vec<Violation> {
    let k = table.k();
    let mut out: Vec<Violation> = (0..k)
        .filter(|&h| table[(h, h)] != Magnitude::ONE)
        .map(|outcome| Violation::Identity { outcome })
        .collect();
    for i in 0..k {
        for j in i + 1..k {
            if table[(i, j)] != table[(j, i)].inverse() {
                out.push(Violation::Inverse { i, j });
            }
        }
    }
    out
}

fn composition_row(table: &MagnitudeTable, i: usize) -> Vec<Violation> {
    let k = table.k();
    let row = table.row(i);
    let mut out = Vec::new();
    for j in 0..k {
        let first = row[j];
        let via = table.row(j);
        for l in 0..k {
            if !row[l].matches(first * via[l]) {
                out.push(Violation::Composition { i, j, l });
            }
        }
    }
    out
}

/// Validates a whole batch, one table per task when `parallel` is enabled.
pub fn validate_batch(tables: &[MagnitudeTable]) -> Vec<ValidationReport> {
    #[cfg(feature = "parallel")]
    {
        tables.par_iter().map(validate_sequential).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        tables.iter().map(validate_sequential).collect()
    }
}
