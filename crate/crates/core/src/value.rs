//! Exactly ordered weight values.
//!
//! A tower is driven by assigning each variable a strictly positive value in
//! a totally ordered abelian group and repeatedly subtracting the unique
//! minimum. Two scales are supported:
//!
//! * **Lex**: tuples of rationals of a fixed arity, ordered lexicographically.
//!   Earlier components dominate; a value whose leading components vanish is
//!   infinitesimally small against one with an earlier nonzero component.
//! * **Algebraic**: real numbers of the form `Σ qᵢ·√nᵢ` with rational `qᵢ`
//!   over a fixed basis of distinct squarefree integers `1 = n₁ < n₂ < …`.
//!   Square roots of distinct squarefree integers are linearly independent
//!   over the rationals, so such a value is zero exactly when every
//!   coefficient is zero, and its sign is decided exactly by refining dyadic
//!   interval enclosures.
//!
//! Mixed scales (lexicographic products of algebraic scales) are not
//! supported; a tower fixes one mode for all of its weights.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// Errors from constructing or combining weight values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("values use different scales and cannot be combined")]
    ModeMismatch,
    #[error("expected {expected} coefficients, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("invalid algebraic basis: {0}")]
    InvalidBasis(String),
    #[error("operation requires strictly positive values")]
    NotPositive,
    #[error("coefficient count must match value count in a linear combination")]
    CombinationShape,
}

/// The ordered scale a tower's weights live in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueMode {
    /// Tuples of `length` rationals under lexicographic order.
    Lex { length: usize },
    /// Rational combinations of square roots of the basis entries. The basis
    /// must start with 1 and be strictly increasing and squarefree.
    Algebraic { basis: Arc<[u64]> },
}

impl ValueMode {
    /// Build the lexicographic mode of the given arity.
    pub fn lex(length: usize) -> Result<ValueMode, ValueError> {
        if length == 0 || length > MAX_ARITY {
            return Err(ValueError::InvalidBasis(format!(
                "lex arity must be between 1 and {MAX_ARITY}"
            )));
        }
        Ok(ValueMode::Lex { length })
    }

    /// Build the algebraic mode over `basis`, validating its shape.
    pub fn algebraic(basis: &[u64]) -> Result<ValueMode, ValueError> {
        if basis.is_empty() || basis.len() > MAX_ARITY {
            return Err(ValueError::InvalidBasis(format!(
                "basis length must be between 1 and {MAX_ARITY}"
            )));
        }
        if basis[0] != 1 {
            return Err(ValueError::InvalidBasis(
                "basis must start with 1".to_string(),
            ));
        }
        for pair in basis.windows(2) {
            if pair[0] >= pair[1] {
                return Err(ValueError::InvalidBasis(
                    "basis must be strictly increasing".to_string(),
                ));
            }
        }
        for &n in basis {
            if !is_squarefree(n) {
                return Err(ValueError::InvalidBasis(format!(
                    "basis entry {n} is not squarefree"
                )));
            }
        }
        Ok(ValueMode::Algebraic {
            basis: Arc::from(basis),
        })
    }

    /// Number of rational coefficients a value of this mode carries.
    pub fn arity(&self) -> usize {
        match self {
            ValueMode::Lex { length } => *length,
            ValueMode::Algebraic { basis } => basis.len(),
        }
    }

    /// True when the scale embeds in the reals (no infinitesimals exist).
    pub fn is_archimedean(&self) -> bool {
        match self {
            ValueMode::Lex { length } => *length == 1,
            ValueMode::Algebraic { .. } => true,
        }
    }
}

const MAX_ARITY: usize = 8;

fn is_squarefree(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Exact sign of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueSign {
    Negative,
    Zero,
    Positive,
}

impl ValueSign {
    /// The sign as `-1`, `0` or `1`.
    pub fn as_i8(self) -> i8 {
        match self {
            ValueSign::Negative => -1,
            ValueSign::Zero => 0,
            ValueSign::Positive => 1,
        }
    }
}

/// One element of the ordered scale: a coefficient vector in its mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightValue {
    mode: ValueMode,
    coeffs: Vec<Rational>,
}

impl WeightValue {
    /// Build a value, checking that the coefficient count matches the mode.
    pub fn new(mode: ValueMode, coeffs: Vec<Rational>) -> Result<WeightValue, ValueError> {
        if coeffs.len() != mode.arity() {
            return Err(ValueError::WrongArity {
                expected: mode.arity(),
                got: coeffs.len(),
            });
        }
        Ok(WeightValue { mode, coeffs })
    }

    /// The additive zero of `mode`.
    pub fn zero(mode: ValueMode) -> WeightValue {
        let coeffs = vec![Rational::zero(); mode.arity()];
        WeightValue { mode, coeffs }
    }

    /// The scale this value lives in.
    pub fn mode(&self) -> &ValueMode {
        &self.mode
    }

    /// The raw coefficient vector.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn check_same_mode(&self, other: &WeightValue) -> Result<(), ValueError> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(ValueError::ModeMismatch)
        }
    }

    /// Exact sum.
    pub fn add(&self, other: &WeightValue) -> Result<WeightValue, ValueError> {
        self.check_same_mode(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(WeightValue {
            mode: self.mode.clone(),
            coeffs,
        })
    }

    /// Exact difference.
    pub fn sub(&self, other: &WeightValue) -> Result<WeightValue, ValueError> {
        self.check_same_mode(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(WeightValue {
            mode: self.mode.clone(),
            coeffs,
        })
    }

    /// Exact integer scaling.
    pub fn scale(&self, factor: &BigInt) -> WeightValue {
        let f = Rational::from(factor.clone());
        WeightValue {
            mode: self.mode.clone(),
            coeffs: self.coeffs.iter().map(|c| c * &f).collect(),
        }
    }

    /// Exact sign of the value.
    pub fn sign(&self) -> ValueSign {
        match &self.mode {
            ValueMode::Lex { .. } => {
                for c in &self.coeffs {
                    if c.is_positive() {
                        return ValueSign::Positive;
                    }
                    if c.is_negative() {
                        return ValueSign::Negative;
                    }
                }
                ValueSign::Zero
            }
            ValueMode::Algebraic { basis } => algebraic_sign(basis, &self.coeffs),
        }
    }

    /// True when the value is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.sign() == ValueSign::Positive
    }

    /// Exact total-order comparison within one mode.
    pub fn compare(&self, other: &WeightValue) -> Result<Ordering, ValueError> {
        let diff = self.sub(other)?;
        Ok(match diff.sign() {
            ValueSign::Negative => Ordering::Less,
            ValueSign::Zero => Ordering::Equal,
            ValueSign::Positive => Ordering::Greater,
        })
    }

    /// Whether `n·self < other` for every positive integer `n`.
    ///
    /// Both inputs must be strictly positive. On an archimedean scale this is
    /// always false; on the lex scale it holds exactly when the first nonzero
    /// component of `self` sits strictly later than that of `other`.
    pub fn is_infinitesimal_against(&self, other: &WeightValue) -> Result<bool, ValueError> {
        self.check_same_mode(other)?;
        if !self.is_positive() || !other.is_positive() {
            return Err(ValueError::NotPositive);
        }
        match &self.mode {
            ValueMode::Algebraic { .. } => Ok(false),
            ValueMode::Lex { .. } => {
                let lead_self = self.coeffs.iter().position(|c| !c.is_zero());
                let lead_other = other.coeffs.iter().position(|c| !c.is_zero());
                match (lead_self, lead_other) {
                    (Some(a), Some(b)) => Ok(a > b),
                    // Both values are positive, so both leads exist.
                    _ => unreachable!("positive lex values have a nonzero component"),
                }
            }
        }
    }

    /// Approximate numeric magnitude, for rendering and evidence only.
    pub fn to_f64(&self) -> f64 {
        match &self.mode {
            ValueMode::Lex { .. } => self
                .coeffs
                .first()
                .and_then(|c| c.to_f64())
                .unwrap_or(f64::NAN),
            ValueMode::Algebraic { basis } => self
                .coeffs
                .iter()
                .zip(basis.iter())
                .map(|(q, &n)| q.to_f64().unwrap_or(f64::NAN) * (n as f64).sqrt())
                .sum(),
        }
    }
}

/// Exact integer-coefficient combination `Σ coeffs[i] · values[i]`.
///
/// All values must share one mode and there must be at least one value.
pub fn linear_combine(
    coeffs: &[BigInt],
    values: &[WeightValue],
) -> Result<WeightValue, ValueError> {
    if coeffs.len() != values.len() || values.is_empty() {
        return Err(ValueError::CombinationShape);
    }
    let mut acc = WeightValue::zero(values[0].mode().clone());
    for (c, v) in coeffs.iter().zip(values) {
        if c.is_zero() {
            acc.check_same_mode(v)?;
            continue;
        }
        acc = acc.add(&v.scale(c))?;
    }
    Ok(acc)
}

/// Exact sign of `Σ qᵢ·√nᵢ` for distinct squarefree `nᵢ`.
///
/// The value is zero exactly when all coefficients vanish; otherwise interval
/// enclosures of the square roots are refined (doubling the number of
/// fractional bits, starting at 64) until the sign is resolved.
fn algebraic_sign(basis: &[u64], coeffs: &[Rational]) -> ValueSign {
    if coeffs.iter().all(Rational::is_zero) {
        return ValueSign::Zero;
    }
    // Fast path: a purely rational value (only the √1 coefficient nonzero).
    if coeffs.iter().skip(1).all(Rational::is_zero) {
        return if coeffs[0].is_positive() {
            ValueSign::Positive
        } else {
            ValueSign::Negative
        };
    }
    let mut bits = 64u32;
    // Nonzero values are bounded away from zero, so refinement terminates; the
    // cap only guards against an internal inconsistency.
    while bits <= 1 << 24 {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        let scale = BigInt::one() << bits;
        let scale_sq = &scale * &scale;
        for (q, &n) in coeffs.iter().zip(basis) {
            if q.is_zero() {
                continue;
            }
            // s ≤ √n · 2^bits < s + 1, with equality exactly for n = 1.
            let s = (BigInt::from(n) * &scale_sq).sqrt();
            let exact = (&s * &s) == BigInt::from(n) * &scale_sq;
            let root_lo = Rational::new(s.clone(), scale.clone());
            let root_hi = if exact {
                root_lo.clone()
            } else {
                Rational::new(s + BigInt::one(), scale.clone())
            };
            if q.is_positive() {
                lo += q * &root_lo;
                hi += q * &root_hi;
            } else {
                lo += q * &root_hi;
                hi += q * &root_lo;
            }
        }
        if lo.is_positive() {
            return ValueSign::Positive;
        }
        if hi.is_negative() {
            return ValueSign::Negative;
        }
        if lo.is_zero() && hi.is_zero() {
            return ValueSign::Zero;
        }
        bits *= 2;
    }
    unreachable!("sign refinement failed to converge; basis validation is broken")
}

impl fmt::Display for WeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mode {
            ValueMode::Lex { .. } => {
                write!(f, "(")?;
                for (i, c) in self.coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            ValueMode::Algebraic { basis } => {
                let mut wrote = false;
                for (q, &n) in self.coeffs.iter().zip(basis.iter()) {
                    if q.is_zero() {
                        continue;
                    }
                    if wrote {
                        write!(f, " {} ", if q.is_negative() { "-" } else { "+" })?;
                    } else if q.is_negative() {
                        write!(f, "-")?;
                    }
                    let mag = q.abs();
                    if n == 1 {
                        write!(f, "{mag}")?;
                    } else if mag.is_one() {
                        write!(f, "sqrt({n})")?;
                    } else {
                        write!(f, "{mag}*sqrt({n})")?;
                    }
                    wrote = true;
                }
                if !wrote {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}
