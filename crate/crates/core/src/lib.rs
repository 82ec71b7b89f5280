//! Relative probability functions (RPFs) on finite outcome spaces.
//!
//! An RPF assigns every ordered pair of outcomes `(h1, h2)` the probability
//! of `h1` relative to `h2`, a value in `[0, +inf]` or the wildcard `*` when
//! the two cannot be compared. Valid RPFs obey three axioms: `P(h, h) = 1`,
//! `P(h1, h2) = P(h2, h1)^-1`, and `P(h1, h3)` is matched by
//! `P(h1, h2) * P(h2, h3)`.
//!
//! The crate covers the magnitude algebra, validation, the standard catalog,
//! event-level probabilities, hierarchical composition, relative Bayesian
//! updates, a class-based representation and limits of RPF sequences.
//!
//! The `parallel` feature (on by default) spreads the cubic axiom check and
//! large entrywise products over the rayon pool.

pub mod bayes;
pub mod catalog;
pub mod classed;
pub mod compose;
pub mod error;
pub mod events;
pub mod limits;
pub mod magnitude;
pub mod rpf;
pub mod sample;
pub mod table;

pub use classed::ClassedRpf;
pub use error::{Result, RpfError};
pub use events::Event;
pub use magnitude::{Magnitude, LOG_TOLERANCE};
pub use rpf::{ClassificationReport, DenseRpf, PossibilityClasses};
pub use table::{validate, MagnitudeTable, ValidationReport, Violation};
