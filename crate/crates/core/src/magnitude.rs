//! The extended nonnegative magnitude line `[0, +inf]` with an adjoined
//! wildcard element `*` that stands for "any value / no information".
//!
//! Finite positive magnitudes are stored by their natural logarithm so that
//! long products of extreme ratios only accumulate exponents.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use thiserror::Error;

/// Absolute tolerance on log-values used for every equality test in the crate.
pub const LOG_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MagnitudeError {
    #[error("magnitude must be nonnegative, got {0}")]
    Negative(f64),
    #[error("magnitude is not a number")]
    NotANumber,
    #[error("the wildcard has no position on the unit interval")]
    WildcardEmbedding,
    #[error("odds input {0} is outside [0, 1]")]
    OddsOutOfRange(f64),
    #[error("cannot parse magnitude from {0:?}")]
    Syntax(String),
}

/// A value of `[0, +inf] ∪ {*}`.
///
/// `Finite` holds the natural log of a strictly positive, finite magnitude.
/// Equality between two `Finite` values is tolerance-aware (see
/// [`LOG_TOLERANCE`]), so `PartialEq` on this type is not transitive in the
/// strict sense.
#[derive(Debug, Clone, Copy)]
pub enum Magnitude {
    Zero,
    Finite(f64),
    Infinity,
    Wildcard,
}

impl Magnitude {
    pub const ONE: Magnitude = Magnitude::Finite(0.0);

    /// Builds a magnitude from its natural log. `-inf` and `+inf` land on
    /// `Zero` and `Infinity`; NaN (the log of an undefined ratio) becomes the
    /// wildcard.
    pub fn from_log(log: f64) -> Magnitude {
        if log.is_nan() {
            Magnitude::Wildcard
        } else if log == f64::INFINITY {
            Magnitude::Infinity
        } else if log == f64::NEG_INFINITY {
            Magnitude::Zero
        } else {
            Magnitude::Finite(log)
        }
    }

    pub fn from_linear(value: f64) -> Result<Magnitude, MagnitudeError> {
        if value.is_nan() {
            return Err(MagnitudeError::NotANumber);
        }
        if value < 0.0 {
            return Err(MagnitudeError::Negative(value));
        }
        Ok(if value == 0.0 {
            Magnitude::Zero
        } else if value.is_infinite() {
            Magnitude::Infinity
        } else {
            Magnitude::Finite(value.ln())
        })
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Magnitude::Zero)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Magnitude::Infinity)
    }

    pub fn is_wildcard(self) -> bool {
        matches!(self, Magnitude::Wildcard)
    }

    /// Finite and strictly positive.
    pub fn is_finite_positive(self) -> bool {
        matches!(self, Magnitude::Finite(_))
    }

    /// Anything but the wildcard.
    pub fn is_comparable(self) -> bool {
        !self.is_wildcard()
    }

    /// Strictly greater than zero (finite or infinite).
    pub fn is_positive(self) -> bool {
        matches!(self, Magnitude::Finite(_) | Magnitude::Infinity)
    }

    /// Natural log, with `Zero -> -inf` and `Infinity -> +inf`; `None` for `*`.
    pub fn log_value(self) -> Option<f64> {
        match self {
            Magnitude::Zero => Some(f64::NEG_INFINITY),
            Magnitude::Finite(l) => Some(l),
            Magnitude::Infinity => Some(f64::INFINITY),
            Magnitude::Wildcard => None,
        }
    }

    /// Linear value; `None` for `*`. Very large finite magnitudes overflow to
    /// `f64::INFINITY` here, the log-value stays exact.
    pub fn linear(self) -> Option<f64> {
        self.log_value().map(f64::exp)
    }

    pub fn inverse(self) -> Magnitude {
        match self {
            Magnitude::Zero => Magnitude::Infinity,
            Magnitude::Infinity => Magnitude::Zero,
            Magnitude::Finite(l) => Magnitude::Finite(-l),
            Magnitude::Wildcard => Magnitude::Wildcard,
        }
    }

    /// `self` is matched by `constraint`: equal, or the constraint is `*`.
    pub fn matches(self, constraint: Magnitude) -> bool {
        constraint.is_wildcard() || self == constraint
    }

    /// `x / (x + 1)`, the homeomorphism from the magnitude line onto `[0, 1]`.
    pub fn inverse_odds(self) -> Result<f64, MagnitudeError> {
        match self {
            Magnitude::Zero => Ok(0.0),
            Magnitude::Infinity => Ok(1.0),
            Magnitude::Finite(l) => Ok(logistic(l)),
            Magnitude::Wildcard => Err(MagnitudeError::WildcardEmbedding),
        }
    }

    /// Inverse of [`Magnitude::inverse_odds`]: `u / (1 - u)`.
    pub fn odds(u: f64) -> Result<Magnitude, MagnitudeError> {
        if !(0.0..=1.0).contains(&u) {
            return Err(MagnitudeError::OddsOutOfRange(u));
        }
        Ok(if u == 0.0 {
            Magnitude::Zero
        } else if u == 1.0 {
            Magnitude::Infinity
        } else {
            Magnitude::Finite(u.ln() - (-u).ln_1p())
        })
    }

    /// `self / other`, i.e. `self * other^-1`.
    pub fn ratio(self, other: Magnitude) -> Magnitude {
        self * other.inverse()
    }

    /// Same variant, ignoring any finite payload.
    pub fn same_variant(self, other: Magnitude) -> bool {
        std::mem::discriminant(&self) == std::mem::discriminant(&other)
    }
}

fn logistic(l: f64) -> f64 {
    if l >= 0.0 {
        1.0 / (1.0 + (-l).exp())
    } else {
        let e = l.exp();
        e / (1.0 + e)
    }
}

/// `ln(e^a + e^b)` without overflow.
pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

impl PartialEq for Magnitude {
    fn eq(&self, other: &Magnitude) -> bool {
        match (*self, *other) {
            (Magnitude::Finite(a), Magnitude::Finite(b)) => (a - b).abs() <= LOG_TOLERANCE,
            (a, b) => a.same_variant(b),
        }
    }
}

impl Mul for Magnitude {
    type Output = Magnitude;

    // finite values multiply by adding logs
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Magnitude) -> Magnitude {
        use Magnitude::*;
        match (self, rhs) {
            (Wildcard, _) | (_, Wildcard) => Wildcard,
            (Zero, Infinity) | (Infinity, Zero) => Wildcard,
            (Zero, _) | (_, Zero) => Zero,
            (Infinity, _) | (_, Infinity) => Infinity,
            (Finite(a), Finite(b)) => Magnitude::from_log(a + b),
        }
    }
}

impl Add for Magnitude {
    type Output = Magnitude;

    /// `*` absorbs everything, `Infinity` absorbs the remaining magnitudes and
    /// `Zero` is the identity.
    fn add(self, rhs: Magnitude) -> Magnitude {
        use Magnitude::*;
        match (self, rhs) {
            (Wildcard, _) | (_, Wildcard) => Wildcard,
            (Infinity, _) | (_, Infinity) => Infinity,
            (Zero, x) | (x, Zero) => x,
            (Finite(a), Finite(b)) => Magnitude::from_log(log_add_exp(a, b)),
        }
    }
}

impl std::iter::Sum for Magnitude {
    fn sum<I: Iterator<Item = Magnitude>>(iter: I) -> Magnitude {
        iter.fold(Magnitude::Zero, Add::add)
    }
}

impl std::iter::Product for Magnitude {
    fn product<I: Iterator<Item = Magnitude>>(iter: I) -> Magnitude {
        iter.fold(Magnitude::ONE, Mul::mul)
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Magnitude::Zero => f.write_str("0"),
            Magnitude::Infinity => f.write_str("inf"),
            Magnitude::Wildcard => f.write_str("*"),
            Magnitude::Finite(l) => f.write_str(&render_log(l)),
        }
    }
}

// Plain decimal in [1e-6, 1e16), shortest scientific notation otherwise, and
// a log-derived mantissa/exponent pair once the linear value leaves the
// normal f64 range.
// Rendering a parsed rendering must give the same text back, so the one-shot
// rendering is iterated through the parser until it settles. Outside the
// normal range the 10-decimal mantissa keeps parsed values mid-cell.
fn render_log(log: f64) -> String {
    let mut text = render_once(log);
    for _ in 0..8 {
        let Ok(Magnitude::Finite(back)) = text.parse::<Magnitude>() else {
            break;
        };
        let again = render_once(back);
        if again == text {
            break;
        }
        text = again;
    }
    text
}

fn render_once(log: f64) -> String {
    let v = log.exp();
    if v.is_normal() {
        let v = shortest_nearby(v, log);
        if (1e-6..1e16).contains(&v) {
            format!("{v}")
        } else {
            format!("{v:e}")
        }
    } else {
        let log10 = log / std::f64::consts::LN_10;
        let exponent = log10.floor();
        let mantissa = 10f64.powf(log10 - exponent);
        let digits = format!("{mantissa:.10}");
        let digits = digits.trim_end_matches('0').trim_end_matches('.');
        format!("{digits}e{exponent}")
    }
}

// `exp` of a logarithm often lands an ulp or two off the value it came from
// (exp(ln 1369) = 1368.9999999999998); prefer the shortest decimal within a
// few ulps of either.
fn shortest_nearby(v: f64, log: f64) -> f64 {
    let log_ulp = log.abs().next_up() - log.abs();
    let slack = v * (f64::EPSILON + log_ulp);
    for digits in 1..17 {
        let candidate: f64 = format!("{:.*e}", digits - 1, v).parse().unwrap_or(v);
        if (candidate - v).abs() <= slack {
            return candidate;
        }
    }
    v
}

impl FromStr for Magnitude {
    type Err = MagnitudeError;

    fn from_str(s: &str) -> Result<Magnitude, MagnitudeError> {
        let s = s.trim();
        match s {
            "*" => return Ok(Magnitude::Wildcard),
            "inf" => return Ok(Magnitude::Infinity),
            _ => {}
        }
        if s.is_empty()
            || !s
                .chars()
                .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'))
        {
            return Err(MagnitudeError::Syntax(s.to_string()));
        }
        let v: f64 = s
            .parse()
            .map_err(|_| MagnitudeError::Syntax(s.to_string()))?;
        if v < 0.0 || (v == 0.0 && s.starts_with('-')) {
            return Err(MagnitudeError::Negative(v));
        }
        if v.is_normal() {
            return Ok(Magnitude::Finite(exact_log(v)));
        }
        let has_nonzero_digit = s
            .split(['e', 'E'])
            .next()
            .is_some_and(|m| m.chars().any(|c| matches!(c, '1'..='9')));
        if v == 0.0 && !has_nonzero_digit {
            return Ok(Magnitude::Zero);
        }
        parse_extended(s).ok_or_else(|| MagnitudeError::Syntax(s.to_string()))
    }
}

// A log `l` with `exp(l) == v` when one exists near `ln(v)`, so that a
// rendered value parses back to a magnitude that renders identically.
fn exact_log(v: f64) -> f64 {
    let base = v.ln();
    if base.exp() == v {
        return base;
    }
    let (mut up, mut down) = (base, base);
    for _ in 0..32 {
        up = up.next_up();
        if up.exp() == v {
            return up;
        }
        down = down.next_down();
        if down.exp() == v {
            return down;
        }
    }
    base
}

// Decimal strings whose value overflows or underflows f64.
fn parse_extended(s: &str) -> Option<Magnitude> {
    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<f64>().ok()?),
        None => (s, 0.0),
    };
    let m: f64 = mantissa.parse().ok()?;
    if m <= 0.0 || !m.is_finite() {
        return None;
    }
    Some(Magnitude::from_log(
        m.ln() + exponent * std::f64::consts::LN_10,
    ))
}
