//! Validated relative probability functions and the comparability,
//! possibility and anchor analysis built on them.

use std::ops::Index;

use crate::error::{Result, RpfError};
use crate::magnitude::Magnitude;
use crate::table::{validate, MagnitudeTable};

/// A table that satisfies the identity, inverse and composition axioms.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseRpf {
    table: MagnitudeTable,
}

impl DenseRpf {
    /// Validates `table`; the error carries the full violation report.
    pub fn new(table: MagnitudeTable) -> Result<DenseRpf> {
        let report = validate(&table);
        if report.is_valid() {
            Ok(DenseRpf { table })
        } else {
            Err(RpfError::Axioms(report))
        }
    }

    pub fn from_rows(rows: Vec<Vec<Magnitude>>) -> Result<DenseRpf> {
        DenseRpf::new(MagnitudeTable::from_rows(rows)?)
    }

    /// For constructors whose output is valid by construction. Tests check
    /// every such path with [`validate`].
    pub(crate) fn from_table_unchecked(table: MagnitudeTable) -> DenseRpf {
        debug_assert!(table.k() > 48 || validate(&table).is_valid());
        DenseRpf { table }
    }

    pub fn k(&self) -> usize {
        self.table.k()
    }

    pub fn table(&self) -> &MagnitudeTable {
        &self.table
    }

    pub fn into_table(self) -> MagnitudeTable {
        self.table
    }

    pub fn get(&self, i: usize, j: usize) -> Magnitude {
        self.table.get(i, j)
    }

    pub fn approx_eq(&self, other: &DenseRpf) -> bool {
        self.table.approx_eq(&other.table)
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.k() {
            Ok(())
        } else {
            Err(RpfError::OutOfRange { index, k: self.k() })
        }
    }

    fn entry(&self, i: usize, j: usize) -> Result<Magnitude> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.table[(i, j)])
    }

    pub fn comparable(&self, i: usize, j: usize) -> Result<bool> {
        Ok(self.entry(i, j)?.is_comparable())
    }

    /// `i` is possible with respect to `j`: comparable and `P(i, j) > 0`.
    pub fn possible(&self, i: usize, j: usize) -> Result<bool> {
        Ok(self.entry(i, j)?.is_positive())
    }

    pub fn mutually_possible(&self, i: usize, j: usize) -> Result<bool> {
        Ok(self.entry(i, j)?.is_finite_positive())
    }

    /// First incomparable pair in row-major order, if any.
    pub fn incomparable_pair(&self) -> Option<(usize, usize)> {
        let k = self.k();
        (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .find(|&(i, j)| self.table[(i, j)].is_wildcard())
    }

    pub fn is_totally_comparable(&self) -> bool {
        self.incomparable_pair().is_none()
    }

    pub(crate) fn require_totally_comparable(&self) -> Result<()> {
        match self.incomparable_pair() {
            None => Ok(()),
            Some((i, j)) => Err(RpfError::NotTotallyComparable(i, j)),
        }
    }

    pub fn is_anchor(&self, a: usize) -> bool {
        self.table.row(a).iter().all(|m| m.is_positive())
    }

    /// Outcomes possible with respect to every outcome, ascending.
    pub fn find_anchors(&self) -> Vec<usize> {
        (0..self.k()).filter(|&a| self.is_anchor(a)).collect()
    }

    pub fn is_totally_mutually_possible(&self) -> bool {
        self.table.entries().iter().all(|m| m.is_finite_positive())
    }

    /// Mutual-possibility classes and the possibility order between them.
    pub fn possibility_classes(&self) -> PossibilityClasses {
        let k = self.k();
        let mut assignment = vec![usize::MAX; k];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for h in 0..k {
            if assignment[h] != usize::MAX {
                continue;
            }
            let id = members.len();
            let block: Vec<usize> = (h..k)
                .filter(|&g| self.table[(g, h)].is_finite_positive())
                .collect();
            for &g in &block {
                assignment[g] = id;
            }
            members.push(block);
        }
        let reps: Vec<usize> = members.iter().map(|b| b[0]).collect();
        let mut dag = Vec::new();
        for (c1, &r1) in reps.iter().enumerate() {
            for (c2, &r2) in reps.iter().enumerate() {
                if c1 != c2 && self.table[(r1, r2)].is_positive() {
                    dag.push((c1, c2));
                }
            }
        }
        PossibilityClasses {
            assignment,
            members,
            dag,
        }
    }

    pub fn classify(&self) -> ClassificationReport {
        let anchors = self.find_anchors();
        let classes = self.possibility_classes();
        ClassificationReport {
            totally_comparable: self.is_totally_comparable(),
            anchored: !anchors.is_empty(),
            anchors,
            totally_mutually_possible: self.is_totally_mutually_possible(),
            classes: classes.members,
            class_dag: classes.dag,
        }
    }

    /// Every entry of `self` is matched by the corresponding entry of `other`.
    pub fn matched_by(&self, other: &DenseRpf) -> Result<bool> {
        if self.k() != other.k() {
            return Err(RpfError::Dimension {
                expected: self.k(),
                found: other.k(),
            });
        }
        Ok(self
            .table
            .entries()
            .iter()
            .zip(other.table.entries())
            .all(|(&a, &b)| a.matches(b)))
    }

    /// `P(first, last)` is matched by the product of successive entries along
    /// `path`. A single-outcome path compares `P(h, h)` with the empty product.
    pub fn check_path_composition(&self, path: &[usize]) -> Result<bool> {
        let (&first, &last) = match (path.first(), path.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(RpfError::EmptyPath),
        };
        for &h in path {
            self.check_index(h)?;
        }
        let product: Magnitude = path.windows(2).map(|w| self.table[(w[0], w[1])]).product();
        Ok(self.table[(first, last)].matches(product))
    }
}

impl Index<(usize, usize)> for DenseRpf {
    type Output = Magnitude;

    fn index(&self, idx: (usize, usize)) -> &Magnitude {
        &self.table[idx]
    }
}

/// Partition of the outcomes into mutual-possibility classes.
///
/// Class ids are assigned in order of each class's lowest member. `dag`
/// holds `(c1, c2)` whenever `c1 != c2` and class `c1` is possible with
/// respect to class `c2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PossibilityClasses {
    pub assignment: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    pub dag: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub totally_comparable: bool,
    pub anchors: Vec<usize>,
    pub anchored: bool,
    pub totally_mutually_possible: bool,
    pub classes: Vec<Vec<usize>>,
    pub class_dag: Vec<(usize, usize)>,
}
