//! Class-based representation: each outcome belongs to a mutual-possibility
//! class, carries a log-value within that class, and a small class-by-class
//! table records how whole classes compare.
//!
//! `P(h1, h2) = Q(class(h1), class(h2)) * exp(log(h1) - log(h2))`

use crate::error::{Result, RpfError};
use crate::magnitude::Magnitude;
use crate::rpf::DenseRpf;
use crate::table::{validate, MagnitudeTable};

#[derive(Debug, Clone, PartialEq)]
pub struct ClassedRpf {
    assignment: Vec<usize>,
    log_values: Vec<f64>,
    class_order: MagnitudeTable,
}

impl ClassedRpf {
    /// Checks the canonical-form invariants:
    /// - class ids are dense and first appear in increasing order,
    /// - the lowest member of every class has log-value 0,
    /// - the class table is itself an RPF over `{0, 1, inf, *}` with `1`
    ///   only on the diagonal.
    pub fn new(
        assignment: Vec<usize>,
        log_values: Vec<f64>,
        class_order: MagnitudeTable,
    ) -> Result<ClassedRpf> {
        let invalid = |msg: String| Err(RpfError::InvalidClassed(msg));
        if assignment.len() != log_values.len() {
            return invalid(format!(
                "{} class assignments but {} log-values",
                assignment.len(),
                log_values.len()
            ));
        }
        let mut next_class = 0;
        for (h, (&class, &log)) in assignment.iter().zip(&log_values).enumerate() {
            if !log.is_finite() {
                return invalid(format!("log-value of outcome {h} is not finite"));
            }
            if class > next_class {
                return invalid(format!(
                    "outcome {h} has class {class}; expected at most {next_class}"
                ));
            }
            if class == next_class {
                if log != 0.0 {
                    return invalid(format!(
                        "outcome {h} is the lowest member of class {class} but has log-value {log}"
                    ));
                }
                next_class += 1;
            }
        }
        if class_order.k() != next_class {
            return invalid(format!(
                "class table is {0}x{0} for {next_class} classes",
                class_order.k()
            ));
        }
        for c1 in 0..next_class {
            for c2 in 0..next_class {
                let q = class_order[(c1, c2)];
                let allowed = match q {
                    Magnitude::Finite(_) => c1 == c2 && q == Magnitude::ONE,
                    _ => c1 != c2,
                };
                if !allowed {
                    return invalid(format!("class table entry ({c1}, {c2}) = {q}"));
                }
            }
        }
        let report = validate(&class_order);
        if !report.is_valid() {
            return invalid(format!("class table: {report}"));
        }
        Ok(ClassedRpf {
            assignment,
            log_values,
            class_order,
        })
    }

    pub fn k(&self) -> usize {
        self.assignment.len()
    }

    pub fn class_count(&self) -> usize {
        self.class_order.k()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn log_values(&self) -> &[f64] {
        &self.log_values
    }

    pub fn class_order(&self) -> &MagnitudeTable {
        &self.class_order
    }

    /// Entry `(h1, h2)` straight from the class form.
    pub fn get(&self, h1: usize, h2: usize) -> Magnitude {
        let q = self.class_order[(self.assignment[h1], self.assignment[h2])];
        q * Magnitude::Finite(self.log_values[h1] - self.log_values[h2])
    }

    pub fn to_dense(&self) -> DenseRpf {
        DenseRpf::from_table_unchecked(MagnitudeTable::from_fn(self.k(), |i, j| self.get(i, j)))
    }

    pub fn from_dense(p: &DenseRpf) -> ClassedRpf {
        let classes = p.possibility_classes();
        let base: Vec<usize> = classes.members.iter().map(|m| m[0]).collect();
        let log_values = (0..p.k())
            .map(|h| {
                let b = base[classes.assignment[h]];
                if b == h {
                    0.0
                } else {
                    p[(h, b)]
                        .log_value()
                        .expect("mutually possible entries are finite")
                }
            })
            .collect();
        let class_order = MagnitudeTable::from_fn(base.len(), |c1, c2| {
            if c1 == c2 {
                Magnitude::ONE
            } else {
                p[(base[c1], base[c2])]
            }
        });
        ClassedRpf {
            assignment: classes.assignment,
            log_values,
            class_order,
        }
    }
}

impl From<&DenseRpf> for ClassedRpf {
    fn from(p: &DenseRpf) -> ClassedRpf {
        ClassedRpf::from_dense(p)
    }
}
