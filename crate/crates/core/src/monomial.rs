//! Exponent vectors and monomial ideals.
//!
//! A Laurent monomial in `d` variables is identified with its integer
//! exponent vector. The same representation serves two roles: exponents over
//! the original variables of the base ring, and exponents over the regular
//! parameters of any later tower stage ("frame exponents"). A monomial ideal
//! of a stage is a finite set of componentwise-nonnegative frame exponents
//! kept in canonical form: a minimal generating antichain, sorted.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// Errors from monomial-ideal construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("a monomial ideal needs at least one generator")]
    NoGenerators,
    #[error("ideal generators must have nonnegative exponents")]
    NegativeGenerator,
    #[error("expected exponent vectors of length {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
}

/// An integer exponent vector (a Laurent monomial in fixed coordinates).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<BigInt>);

impl ExponentVector {
    /// Wrap a raw exponent vector.
    pub fn new(coords: Vec<BigInt>) -> ExponentVector {
        ExponentVector(coords)
    }

    /// Build from machine integers.
    pub fn from_i64s(coords: &[i64]) -> ExponentVector {
        ExponentVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The zero vector (the monomial 1).
    pub fn zeros(dim: usize) -> ExponentVector {
        ExponentVector(vec![BigInt::zero(); dim])
    }

    /// The `slot`-th unit vector (the `slot`-th coordinate variable).
    pub fn unit(dim: usize, slot: usize) -> ExponentVector {
        let mut v = Self::zeros(dim);
        v.0[slot] = BigInt::from(1);
        v
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinate access.
    pub fn coord(&self, i: usize) -> &BigInt {
        &self.0[i]
    }

    /// The coordinates as a slice.
    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    /// Sum of all coordinates (the total degree).
    pub fn coord_sum(&self) -> BigInt {
        self.0.iter().sum()
    }

    /// True when every coordinate is `≥ 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// True when this is the zero vector.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Slots with a nonzero coordinate.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    /// Componentwise sum (product of monomials).
    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.dim(), other.dim());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference (quotient of monomials).
    pub fn sub(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.dim(), other.dim());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Negation (the inverse monomial).
    pub fn neg(&self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }

    /// Integer scaling (the `k`-th power for `k ≥ 0`).
    pub fn scale(&self, k: &BigInt) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Whether `self` divides `other` componentwise (`other − self ≥ 0`).
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise minimum.
    pub fn min_with(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.min(b).clone())
                .collect(),
        )
    }

    /// Render with variable names: `x`, `y`, `z` for up to three coordinates,
    /// `x1…xd` beyond that. The unit monomial renders as `1`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&variable_name(self.dim(), i));
            if *c != BigInt::from(1) {
                out.push('^');
                out.push_str(&c.to_string());
            }
        }
        out
    }
}

/// Human-readable name of coordinate `i` in dimension `dim`.
pub fn variable_name(dim: usize, i: usize) -> String {
    const NAMES: [&str; 3] = ["x", "y", "z"];
    if dim <= 3 {
        NAMES[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A monomial ideal of one tower stage, in frame exponents, in canonical
/// form: generators form the unique minimal antichain under divisibility and
/// are sorted. The unit ideal is generated by the zero vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    frame: usize,
    gens: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Build the ideal at stage `frame` generated by `gens`, reducing to the
    /// minimal antichain. Generators must be nonnegative and nonempty.
    pub fn new(frame: usize, gens: Vec<ExponentVector>) -> Result<MonomialIdeal, MonomialError> {
        if gens.is_empty() {
            return Err(MonomialError::NoGenerators);
        }
        let dim = gens[0].dim();
        for g in &gens {
            if g.dim() != dim {
                return Err(MonomialError::WrongDimension {
                    expected: dim,
                    got: g.dim(),
                });
            }
            if !g.is_nonnegative() {
                return Err(MonomialError::NegativeGenerator);
            }
        }
        Ok(MonomialIdeal {
            frame,
            gens: minimalize(gens),
        })
    }

    /// The whole stage ring as an ideal.
    pub fn unit(frame: usize, dim: usize) -> MonomialIdeal {
        MonomialIdeal {
            frame,
            gens: vec![ExponentVector::zeros(dim)],
        }
    }

    /// The maximal ideal of the stage (all coordinate variables).
    pub fn maximal(frame: usize, dim: usize) -> MonomialIdeal {
        MonomialIdeal {
            frame,
            gens: (0..dim).map(|s| ExponentVector::unit(dim, s)).collect(),
        }
    }

    /// Stage index this ideal lives at.
    pub fn frame(&self) -> usize {
        self.frame
    }

    /// Coordinate dimension.
    pub fn dim(&self) -> usize {
        self.gens[0].dim()
    }

    /// The canonical minimal generating antichain.
    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    /// True when this is the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_zero()
    }

    /// Order of the ideal: the minimal total degree of a generator.
    pub fn ord(&self) -> BigInt {
        self.gens
            .iter()
            .map(ExponentVector::coord_sum)
            .min()
            .expect("canonical ideals have at least one generator")
    }

    /// Whether the (Laurent) monomial `v` lies in the ideal, i.e. some
    /// generator divides it.
    pub fn contains(&self, v: &ExponentVector) -> bool {
        self.gens.iter().any(|g| g.divides(v))
    }

    /// Product ideal (pairwise sums of generators, re-minimalized).
    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        debug_assert_eq!(self.frame, other.frame);
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.add(b));
            }
        }
        MonomialIdeal {
            frame: self.frame,
            gens: minimalize(gens),
        }
    }

    /// `k`-th power.
    pub fn pow(&self, k: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.frame, self.dim());
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// Shift every generator by `v` (multiply the ideal by the monomial
    /// `x^v`). The result must stay nonnegative to be a stage ideal.
    pub fn shift(&self, v: &ExponentVector) -> Result<MonomialIdeal, MonomialError> {
        MonomialIdeal::new(self.frame, self.gens.iter().map(|g| g.add(v)).collect())
    }

    /// The same generators viewed at a different stage index.
    pub fn at_frame(&self, frame: usize) -> MonomialIdeal {
        MonomialIdeal {
            frame,
            gens: self.gens.clone(),
        }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Reduce a generating set to the unique minimal antichain, sorted.
pub fn minimalize(mut gens: Vec<ExponentVector>) -> Vec<ExponentVector> {
    gens.sort();
    gens.dedup();
    // After dedup all generators are distinct, so strict divisibility is the
    // only way one can make another redundant.
    let keep: Vec<bool> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| !gens.iter().enumerate().any(|(j, h)| j != i && h.divides(g)))
        .collect();
    gens.iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then(|| g.clone()))
        .collect()
}

/// Deterministic total order for reporting (delegates to the derived order).
pub fn compare_vectors(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    a.cmp(b)
}
