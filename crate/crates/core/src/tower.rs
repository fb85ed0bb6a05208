//! The tower engine: an infinite sequence of local quadratic transforms of a
//! regular local base ring, driven by a monomial valuation.
//!
//! Stage `i` is described by a *frame*: a unimodular integer matrix whose
//! columns are the exponent vectors (over the original variables) of the
//! stage's regular parameters, together with the exact weight of each
//! parameter under the driving valuation. One step picks the slot of unique
//! minimal weight (the *center*), divides every other parameter by it, and
//! subtracts its weight from the others. A weight tie stops the tower: the
//! valuation is then centered outside the monomial locus and no further
//! monomial stage exists.
//!
//! All arithmetic is exact; frame entries are arbitrary-precision integers,
//! so overflow is impossible by construction.

use crate::monomial::{ExponentVector, MonomialError, MonomialIdeal};
use crate::value::{linear_combine, ValueError, ValueMode, WeightValue};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Errors from tower construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("a tower needs at least two slots, got {0}")]
    TooFewSlots(usize),
    #[error("weight values must all use the tower's scale")]
    MixedModes,
    #[error("initial weights must be strictly positive")]
    NonPositiveWeight,
    #[error("stage {frame} is not available (computed through stage {available})")]
    FrameUnavailable { frame: usize, available: usize },
    #[error("no step out of stage {frame}: the tower terminated there")]
    NoStep { frame: usize },
    #[error("exponent vector has {got} coordinates, tower has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ideal lives at stage {got}, expected stage {expected}")]
    WrongFrame { expected: usize, got: usize },
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

/// Whether the tower can still be extended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TowerStatus {
    /// Every computed stage had a unique minimal weight.
    Active,
    /// The weights tied at `step`; the tied slots are recorded. Stages
    /// `0..=step` exist, and no stage beyond them does.
    TerminatedTie { step: usize, tied: Vec<usize> },
}

/// One tower stage: parameter exponents, the inverse frame, and weights.
#[derive(Debug, Clone)]
pub struct Frame {
    columns: Vec<ExponentVector>,
    inverse_rows: Vec<Vec<BigInt>>,
    weights: Vec<WeightValue>,
}

impl Frame {
    /// Exponent vectors of the stage parameters over the original variables.
    pub fn columns(&self) -> &[ExponentVector] {
        &self.columns
    }

    /// Exact weights of the stage parameters.
    pub fn weights(&self) -> &[WeightValue] {
        &self.weights
    }

    /// Express an original-variable Laurent monomial in stage parameters.
    pub fn frame_exponent(&self, v: &ExponentVector) -> ExponentVector {
        let coords = self
            .inverse_rows
            .iter()
            .map(|row| dot(row, v.coords()))
            .collect();
        ExponentVector::new(coords)
    }

    /// Stage order of a Laurent monomial: the coordinate sum of its frame
    /// exponent.
    pub fn ord(&self, v: &ExponentVector) -> BigInt {
        self.frame_exponent(v).coord_sum()
    }

    fn dim(&self) -> usize {
        self.columns.len()
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The result of attempting one step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    /// A new stage was appended; the center slot is reported.
    Stepped { center: usize },
    /// The minimal weight was attained in several slots; the tower is now
    /// terminated.
    Tie { step: usize, tied: Vec<usize> },
}

/// A lazily extended tower of local quadratic transforms.
#[derive(Debug, Clone)]
pub struct Tower {
    mode: ValueMode,
    dim: usize,
    initial_weights: Vec<WeightValue>,
    frames: Vec<Frame>,
    centers: Vec<usize>,
    cum_center: Vec<ExponentVector>,
    status: TowerStatus,
}

impl Tower {
    /// Start a tower from strictly positive weights for the base variables.
    pub fn new(weights: Vec<WeightValue>) -> Result<Tower, TowerError> {
        let dim = weights.len();
        if dim < 2 {
            return Err(TowerError::TooFewSlots(dim));
        }
        let mode = weights[0].mode().clone();
        for w in &weights {
            if w.mode() != &mode {
                return Err(TowerError::MixedModes);
            }
            if !w.is_positive() {
                return Err(TowerError::NonPositiveWeight);
            }
        }
        let columns = (0..dim).map(|s| ExponentVector::unit(dim, s)).collect();
        let inverse_rows = (0..dim)
            .map(|r| {
                (0..dim)
                    .map(|c| if r == c { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        let base = Frame {
            columns,
            inverse_rows,
            weights: weights.clone(),
        };
        Ok(Tower {
            mode,
            dim,
            initial_weights: weights,
            frames: vec![base],
            centers: Vec::new(),
            cum_center: Vec::new(),
            status: TowerStatus::Active,
        })
    }

    /// Number of variable slots.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The ordered scale the weights live in.
    pub fn mode(&self) -> &ValueMode {
        &self.mode
    }

    /// Weights assigned to the original variables.
    pub fn initial_weights(&self) -> &[WeightValue] {
        &self.initial_weights
    }

    /// Current status (active or terminated by a tie).
    pub fn status(&self) -> &TowerStatus {
        &self.status
    }

    /// True while the tower can still be extended.
    pub fn is_active(&self) -> bool {
        matches!(self.status, TowerStatus::Active)
    }

    /// Index of the last computed stage.
    pub fn last_frame(&self) -> usize {
        self.frames.len() - 1
    }

    /// Access a computed stage.
    pub fn frame(&self, i: usize) -> Result<&Frame, TowerError> {
        self.frames.get(i).ok_or(TowerError::FrameUnavailable {
            frame: i,
            available: self.last_frame(),
        })
    }

    /// Center slots of the steps taken so far; entry `i` steps stage `i` to
    /// stage `i + 1`.
    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    /// The center parameter of step `k`, as an original-variable monomial.
    pub fn center_parameter(&self, k: usize) -> Result<&ExponentVector, TowerError> {
        let center = *self
            .centers
            .get(k)
            .ok_or(TowerError::NoStep { frame: k })?;
        Ok(&self.frames[k].columns()[center])
    }

    /// Exponent (over original variables) of the product of the first
    /// `k + 1` center parameters — the monomial generating
    /// `m_0 m_1 ⋯ m_k` in stage `k + 1`.
    pub fn cumulative_center_exponent(&self, k: usize) -> Result<&ExponentVector, TowerError> {
        self.cum_center
            .get(k)
            .ok_or(TowerError::NoStep { frame: k })
    }

    /// Attempt one step from the newest stage.
    pub fn try_step(&mut self) -> Result<StepOutcome, TowerError> {
        if let TowerStatus::TerminatedTie { step, ref tied } = self.status {
            return Ok(StepOutcome::Tie {
                step,
                tied: tied.clone(),
            });
        }
        let frame = self.frames.last().expect("towers always have stage 0");
        let mut min_slot = 0usize;
        for k in 1..self.dim {
            if frame.weights[k].compare(&frame.weights[min_slot])? == std::cmp::Ordering::Less {
                min_slot = k;
            }
        }
        let tied: Vec<usize> = (0..self.dim)
            .filter(|&k| {
                frame.weights[k].compare(&frame.weights[min_slot]).unwrap()
                    == std::cmp::Ordering::Equal
            })
            .collect();
        if tied.len() > 1 {
            let step = self.last_frame();
            self.status = TowerStatus::TerminatedTie {
                step,
                tied: tied.clone(),
            };
            return Ok(StepOutcome::Tie { step, tied });
        }
        let j = min_slot;
        let columns: Vec<ExponentVector> = (0..self.dim)
            .map(|k| {
                if k == j {
                    frame.columns[k].clone()
                } else {
                    frame.columns[k].sub(&frame.columns[j])
                }
            })
            .collect();
        let row_sum: Vec<BigInt> = (0..self.dim)
            .map(|c| frame.inverse_rows.iter().map(|row| &row[c]).sum())
            .collect();
        let inverse_rows: Vec<Vec<BigInt>> = (0..self.dim)
            .map(|r| {
                if r == j {
                    row_sum.clone()
                } else {
                    frame.inverse_rows[r].clone()
                }
            })
            .collect();
        let weights: Vec<WeightValue> = (0..self.dim)
            .map(|k| {
                if k == j {
                    frame.weights[k].clone()
                } else {
                    frame.weights[k].sub(&frame.weights[j]).expect("same mode")
                }
            })
            .collect();
        debug_assert!(weights.iter().all(WeightValue::is_positive));
        let center_column = frame.columns[j].clone();
        let cum = match self.cum_center.last() {
            Some(prev) => prev.add(&center_column),
            None => center_column,
        };
        self.centers.push(j);
        self.cum_center.push(cum);
        self.frames.push(Frame {
            columns,
            inverse_rows,
            weights,
        });
        Ok(StepOutcome::Stepped { center: j })
    }

    /// Extend the tower until stage `frame` exists or a tie stops it.
    /// Returns the resulting status.
    pub fn extend_to(&mut self, frame: usize) -> Result<&TowerStatus, TowerError> {
        while self.last_frame() < frame && self.is_active() {
            self.try_step()?;
        }
        Ok(&self.status)
    }

    fn check_dim(&self, v: &ExponentVector) -> Result<(), TowerError> {
        if v.dim() == self.dim {
            Ok(())
        } else {
            Err(TowerError::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            })
        }
    }

    /// Frame exponent of an original-variable Laurent monomial at stage `i`.
    pub fn frame_exponent(&self, i: usize, v: &ExponentVector) -> Result<ExponentVector, TowerError> {
        self.check_dim(v)?;
        Ok(self.frame(i)?.frame_exponent(v))
    }

    /// Stage order of a Laurent monomial at stage `i`.
    pub fn ord(&self, i: usize, v: &ExponentVector) -> Result<BigInt, TowerError> {
        self.check_dim(v)?;
        Ok(self.frame(i)?.ord(v))
    }

    /// Whether the monomial lies in stage `i` (all frame exponents `≥ 0`).
    pub fn member_stage(&self, i: usize, v: &ExponentVector) -> Result<bool, TowerError> {
        Ok(self.frame_exponent(i, v)?.is_nonnegative())
    }

    /// Rewrite a frame exponent of the stage a step leaves into the stage it
    /// enters: the center coordinate becomes the old coordinate sum, all
    /// other coordinates are unchanged.
    pub fn step_exponent(center: usize, u: &ExponentVector) -> ExponentVector {
        let mut coords: Vec<BigInt> = u.coords().to_vec();
        coords[center] = u.coord_sum();
        ExponentVector::new(coords)
    }

    /// Stage orders of a monomial at stages `0..=through` (clamped to the
    /// computed stages), walked incrementally.
    pub fn ord_sequence(&self, v: &ExponentVector, through: usize) -> Result<Vec<BigInt>, TowerError> {
        self.check_dim(v)?;
        let last = through.min(self.last_frame());
        let mut u = v.clone();
        let mut out = Vec::with_capacity(last + 1);
        out.push(u.coord_sum());
        for i in 0..last {
            u = Self::step_exponent(self.centers[i], &u);
            out.push(u.coord_sum());
        }
        Ok(out)
    }

    /// First computed stage containing the monomial, if any. Stage
    /// membership is monotone along the tower, so this is a genuine entry
    /// point.
    pub fn first_membership(&self, v: &ExponentVector, through: usize) -> Result<Option<usize>, TowerError> {
        self.check_dim(v)?;
        let last = through.min(self.last_frame());
        let mut u = v.clone();
        for i in 0..=last {
            if u.is_nonnegative() {
                return Ok(Some(i));
            }
            if i < last {
                u = Self::step_exponent(self.centers[i], &u);
            }
        }
        Ok(None)
    }

    /// Transform of a stage-`i` monomial ideal into stage `i + 1`: rewrite
    /// the generators, divide out `ord(I)` powers of the center parameter,
    /// and reduce to the minimal antichain.
    pub fn transform_step(&self, ideal: &MonomialIdeal) -> Result<MonomialIdeal, TowerError> {
        let i = ideal.frame();
        let center = *self.centers.get(i).ok_or(TowerError::NoStep { frame: i })?;
        if ideal.dim() != self.dim {
            return Err(TowerError::DimensionMismatch {
                expected: self.dim,
                got: ideal.dim(),
            });
        }
        let e = ideal.ord();
        let gens = ideal
            .generators()
            .iter()
            .map(|g| {
                let mut stepped = Self::step_exponent(center, g);
                let mut coords = stepped.coords().to_vec();
                coords[center] -= &e;
                stepped = ExponentVector::new(coords);
                stepped
            })
            .collect();
        Ok(MonomialIdeal::new(i + 1, gens)?)
    }

    /// Iterated transforms of `ideal` through stage `through`.
    pub fn transform_trail(&self, ideal: MonomialIdeal, through: usize) -> Result<TransformTrail, TowerError> {
        let mut ideals = vec![ideal];
        while ideals.last().unwrap().frame() < through.min(self.last_frame()) {
            let next = self.transform_step(ideals.last().unwrap())?;
            ideals.push(next);
        }
        Ok(TransformTrail { ideals })
    }

    /// Membership in the contracted product ideal
    /// `R ∩ m_0 m_1 ⋯ m_k R_{k+1}` for an original-variable monomial.
    /// Requires stage `k + 1`.
    pub fn contracted_product_member(&self, k: usize, v: &ExponentVector) -> Result<bool, TowerError> {
        self.check_dim(v)?;
        if !v.is_nonnegative() {
            return Ok(false);
        }
        let g = self.cumulative_center_exponent(k)?.clone();
        Ok(self.frame_exponent(k + 1, &v.sub(&g))?.is_nonnegative())
    }

    /// Whether the maximal ideal of stage `i` is contained in the square of
    /// the maximal ideal of stage `n` (a "direction change" between the two
    /// stages), for `i < n`.
    pub fn direction_change(&self, i: usize, n: usize) -> Result<bool, TowerError> {
        let early = self.frame(i)?;
        let late = self.frame(n)?;
        Ok(early.columns().iter().all(|c| {
            let u = late.frame_exponent(c);
            u.is_nonnegative() && u.coord_sum() >= BigInt::from(2)
        }))
    }

    /// Smallest `n ≤ through` with a direction change between stage 0 and
    /// stage `n`.
    pub fn first_direction_change(&self, through: usize) -> Option<usize> {
        (1..=through.min(self.last_frame()))
            .find(|&n| matches!(self.direction_change(0, n), Ok(true)))
    }

    /// Value of an original-variable monomial under the driving valuation.
    pub fn monomial_weight(&self, v: &ExponentVector) -> Result<WeightValue, TowerError> {
        self.check_dim(v)?;
        Ok(linear_combine(v.coords(), &self.initial_weights)?)
    }

    /// Exhaustive integrity check of one stage: the frame is unimodular, the
    /// stored inverse is exact, and every stored weight re-derives from the
    /// initial weights through the frame columns.
    pub fn verify_frame(&self, i: usize) -> Result<(), String> {
        let frame = self.frame(i).map_err(|e| e.to_string())?;
        let d = frame.dim();
        for r in 0..d {
            for c in 0..d {
                let entry: BigInt = (0..d)
                    .map(|k| &frame.inverse_rows[r][k] * frame.columns[c].coord(k))
                    .sum();
                let expected = if r == c { BigInt::one() } else { BigInt::zero() };
                if entry != expected {
                    return Err(format!("stage {i}: inverse check failed at ({r}, {c})"));
                }
            }
        }
        let det = determinant(&frame.columns);
        if det != BigInt::one() {
            return Err(format!("stage {i}: determinant is {det}, expected 1"));
        }
        for (k, w) in frame.weights.iter().enumerate() {
            if !w.is_positive() {
                return Err(format!("stage {i}: weight of slot {k} is not positive"));
            }
            let derived = linear_combine(frame.columns[k].coords(), &self.initial_weights)
                .map_err(|e| e.to_string())?;
            if &derived != w {
                return Err(format!(
                    "stage {i}: stored weight of slot {k} disagrees with the frame column"
                ));
            }
        }
        Ok(())
    }
}

/// Determinant of a square integer matrix given by columns (Bareiss
/// fraction-free elimination; exact).
pub fn determinant(columns: &[ExponentVector]) -> BigInt {
    let d = columns.len();
    let mut m: Vec<Vec<BigInt>> = (0..d)
        .map(|r| (0..d).map(|c| columns[c].coord(r).clone()).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..d {
        if m[k][k].is_zero() {
            let swap = (k + 1..d).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in k + 1..d {
            for c in k + 1..d {
                let num = &m[r][c] * &m[k][k] - &m[r][k] * &m[k][c];
                m[r][c] = num / &prev;
            }
            m[r][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[d - 1][d - 1].clone()
}

/// The iterated transforms of one monomial ideal along consecutive stages.
#[derive(Debug, Clone)]
pub struct TransformTrail {
    ideals: Vec<MonomialIdeal>,
}

impl TransformTrail {
    /// The transforms, starting with the seed ideal.
    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    /// Stage the trail starts at.
    pub fn start_frame(&self) -> usize {
        self.ideals[0].frame()
    }

    /// The ideal orders along the trail.
    pub fn orders(&self) -> Vec<BigInt> {
        self.ideals.iter().map(MonomialIdeal::ord).collect()
    }

    /// First stage at which the trail reaches the unit ideal, if any.
    pub fn unit_frame(&self) -> Option<usize> {
        self.ideals.iter().find(|i| i.is_unit()).map(|i| i.frame())
    }

    /// The final ideal of the trail.
    pub fn last(&self) -> &MonomialIdeal {
        self.ideals.last().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{Rational, ValueMode};
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn rat(n: i64) -> Rational {
        Rational::from(BigInt::from(n))
    }

    /// Lex tower with weights x = (0,1), y = (1,0), z = (1,1): the center is
    /// always the x slot and the stage parameters are x, y/x^i, z/x^i.
    pub fn lex_nested_tower() -> Tower {
        let mode = ValueMode::lex(2).unwrap();
        let w = |a: i64, b: i64| WeightValue::new(mode.clone(), vec![rat(a), rat(b)]).unwrap();
        Tower::new(vec![w(0, 1), w(1, 0), w(1, 1)]).unwrap()
    }

    /// Algebraic tower with weights 1, √2, 2 + √3.
    pub fn sqrt_tower() -> Tower {
        let mode = ValueMode::algebraic(&[1, 2, 3]).unwrap();
        let w = |c: [i64; 3]| {
            WeightValue::new(mode.clone(), c.iter().map(|&q| rat(q)).collect()).unwrap()
        };
        Tower::new(vec![w([1, 0, 0]), w([0, 1, 0]), w([2, 0, 1])]).unwrap()
    }

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::from_i64s(v)
    }

    #[test]
    fn lex_tower_steps_through_constant_center() {
        let mut t = lex_nested_tower();
        t.extend_to(6).unwrap();
        assert!(t.is_active());
        assert_eq!(t.centers(), &[0, 0, 0, 0, 0, 0]);
        // Stage i parameters are x, y/x^i, z/x^i.
        let f = t.frame(4).unwrap();
        assert_eq!(f.columns()[0], ev(&[1, 0, 0]));
        assert_eq!(f.columns()[1], ev(&[-4, 1, 0]));
        assert_eq!(f.columns()[2], ev(&[-4, 0, 1]));
        // ord_i(y) = i + 1.
        for i in 0..=6 {
            assert_eq!(t.ord(i, &ev(&[0, 1, 0])).unwrap(), BigInt::from(i + 1));
        }
        assert_eq!(
            t.frame_exponent(3, &ev(&[0, 1, 0])).unwrap(),
            ev(&[3, 1, 0])
        );
    }

    #[test]
    fn sqrt_tower_center_prefix_and_orders() {
        let mut t = sqrt_tower();
        t.extend_to(5).unwrap();
        assert_eq!(t.centers(), &[0, 1, 1, 0, 0]);
        // Orders of x, y, z at stage 2 after the first direction change.
        assert_eq!(t.ord(2, &ev(&[1, 0, 0])).unwrap(), BigInt::from(2));
        assert_eq!(t.ord(2, &ev(&[0, 1, 0])).unwrap(), BigInt::from(3));
        assert_eq!(t.ord(2, &ev(&[0, 0, 1])).unwrap(), BigInt::from(4));
        assert_eq!(
            t.frame_exponent(2, &ev(&[0, 0, 1])).unwrap(),
            ev(&[1, 2, 1])
        );
        assert_eq!(t.first_direction_change(5), Some(2));
        // The quotient z/(x y) keeps frame exponent (−1, −1, 1) forever.
        for i in 0..=5 {
            assert_eq!(
                t.frame_exponent(i, &ev(&[-1, -1, 1])).unwrap(),
                ev(&[-1, -1, 1])
            );
        }
    }

    #[test]
    fn rational_euclidean_pair_ties() {
        let mode = ValueMode::algebraic(&[1]).unwrap();
        let w = |a: i64| WeightValue::new(mode.clone(), vec![rat(a)]).unwrap();
        let mut t = Tower::new(vec![w(2), w(3)]).unwrap();
        t.extend_to(10).unwrap();
        assert_eq!(
            t.status(),
            &TowerStatus::TerminatedTie {
                step: 2,
                tied: vec![0, 1]
            }
        );
        assert_eq!(t.last_frame(), 2);
        assert!(matches!(
            t.frame(3).unwrap_err(),
            TowerError::FrameUnavailable { .. }
        ));
    }

    #[test]
    fn transform_step_matches_hand_computations() {
        let mut t = lex_nested_tower();
        t.extend_to(2).unwrap();
        // The maximal ideal transforms to the unit ideal.
        let m0 = MonomialIdeal::maximal(0, 3);
        let tr = t.transform_step(&m0).unwrap();
        assert!(tr.is_unit());
        // (x², y) transforms to (x, y/x) written in stage-1 parameters.
        let i = MonomialIdeal::new(0, vec![ev(&[2, 0, 0]), ev(&[0, 1, 0])]).unwrap();
        let tr = t.transform_step(&i).unwrap();
        assert_eq!(tr.generators(), &[ev(&[0, 1, 0]), ev(&[1, 0, 0])]);
        // A never-centered variable stays itself; the centered one dies.
        let y = MonomialIdeal::new(0, vec![ev(&[0, 1, 0])]).unwrap();
        assert_eq!(t.transform_step(&y).unwrap().generators(), &[ev(&[0, 1, 0])]);
        let x = MonomialIdeal::new(0, vec![ev(&[1, 0, 0])]).unwrap();
        assert!(t.transform_step(&x).unwrap().is_unit());
    }

    #[test]
    fn contracted_product_membership() {
        let mut t = lex_nested_tower();
        t.extend_to(3).unwrap();
        // m_0 m_1 R_2 = x² R_2: y is in it (y = x² · y/x²), x is not.
        assert!(t.contracted_product_member(1, &ev(&[0, 1, 0])).unwrap());
        assert!(!t.contracted_product_member(1, &ev(&[1, 0, 0])).unwrap());
        assert!(t.contracted_product_member(0, &ev(&[1, 0, 0])).unwrap());
        // Laurent monomials outside the base ring are never members.
        assert!(!t.contracted_product_member(1, &ev(&[-1, 1, 0])).unwrap());
    }

    #[test]
    fn frame_integrity_holds_along_fixtures() {
        for mut t in [lex_nested_tower(), sqrt_tower()] {
            t.extend_to(40).unwrap();
            for i in 0..=t.last_frame() {
                t.verify_frame(i).unwrap();
            }
        }
    }

    #[test]
    fn membership_entry_point_is_monotone() {
        let mut t = lex_nested_tower();
        t.extend_to(10).unwrap();
        // y/x^5 enters at stage 5.
        let q = ev(&[-5, 1, 0]);
        assert_eq!(t.first_membership(&q, 10).unwrap(), Some(5));
        assert!(!t.member_stage(4, &q).unwrap());
        assert!(t.member_stage(5, &q).unwrap());
        assert!(t.member_stage(9, &q).unwrap());
    }

    fn arb_weights(dim: usize) -> impl Strategy<Value = Vec<WeightValue>> {
        proptest::collection::vec((1i64..40, 0i64..40, 0i64..40), dim).prop_map(|rows| {
            let mode = ValueMode::algebraic(&[1, 2, 3]).unwrap();
            rows.into_iter()
                .map(|(a, b, c)| {
                    WeightValue::new(mode.clone(), vec![rat(a), rat(b), rat(c)]).unwrap()
                })
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn step_identity_for_orders(
            weights in arb_weights(3),
            v in proptest::collection::vec(-6i64..6, 3),
            depth in 1usize..8,
        ) {
            let mut t = Tower::new(weights).unwrap();
            t.extend_to(depth).unwrap();
            let v = ev(&v);
            let last = t.last_frame();
            for i in 0..last {
                let u = t.frame_exponent(i, &v).unwrap();
                let lhs = t.ord(i + 1, &v).unwrap();
                let rhs = BigInt::from(2) * t.ord(i, &v).unwrap()
                    - u.coord(t.centers()[i]).clone();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn incremental_exponents_match_inverse_frames(
            weights in arb_weights(3),
            v in proptest::collection::vec(-5i64..5, 3),
            depth in 1usize..8,
        ) {
            let mut t = Tower::new(weights).unwrap();
            t.extend_to(depth).unwrap();
            let v = ev(&v);
            let mut u = v.clone();
            for i in 0..=t.last_frame() {
                prop_assert_eq!(&t.frame_exponent(i, &v).unwrap(), &u);
                if i < t.last_frame() {
                    u = Tower::step_exponent(t.centers()[i], &u);
                }
            }
        }

        #[test]
        fn weights_track_column_values(weights in arb_weights(3), depth in 1usize..10) {
            let mut t = Tower::new(weights).unwrap();
            t.extend_to(depth).unwrap();
            for i in 0..=t.last_frame() {
                prop_assert!(t.verify_frame(i).is_ok());
            }
            // The weight of each stage parameter equals the valuation of its
            // column monomial, and ord_i of a parameter is 1.
            let i = t.last_frame();
            let f = t.frame(i).unwrap();
            for (k, c) in f.columns().iter().enumerate() {
                prop_assert_eq!(&t.monomial_weight(c).unwrap(), &f.weights()[k]);
                prop_assert_eq!(t.ord(i, c).unwrap(), BigInt::one());
            }
        }

        #[test]
        fn ord_sequence_matches_pointwise(
            weights in arb_weights(3),
            v in proptest::collection::vec(-4i64..4, 3),
            depth in 1usize..8,
        ) {
            let mut t = Tower::new(weights).unwrap();
            t.extend_to(depth).unwrap();
            let v = ev(&v);
            let seq = t.ord_sequence(&v, depth).unwrap();
            for (i, val) in seq.iter().enumerate() {
                prop_assert_eq!(val, &t.ord(i, &v).unwrap());
            }
            prop_assert_eq!(seq.len(), t.last_frame() + 1);
        }
    }

    #[test]
    fn determinant_is_exact() {
        let cols = vec![ev(&[2, -1, 0]), ev(&[-1, 1, 0]), ev(&[0, -1, 1])];
        assert_eq!(determinant(&cols), BigInt::one());
        let singular = vec![ev(&[1, 2]), ev(&[2, 4])];
        assert_eq!(determinant(&singular), BigInt::zero());
        let tofloat = determinant(&[ev(&[3, 1]), ev(&[1, 2])]).to_i64().unwrap();
        assert_eq!(tofloat, 5);
    }
}
