//! Independent reference implementations used to cross-validate the engine.
//!
//! Everything here recomputes facts the engine derives quickly, but by a
//! different route: stage membership by solving against the frame columns
//! with Gaussian elimination (never the stored inverse), ideal-power
//! membership by enumerating generator multisets, transforms by re-solving
//! each generator in the next stage's columns, and signs by floating-point
//! probes. Tests compare the two routes; production code must never call
//! into this module.

use crate::cone::solve_columns;
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::tower::Tower;
use crate::value::{Rational, ValueSign};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

fn columns_as_rationals(columns: &[ExponentVector]) -> Vec<Vec<Rational>> {
    columns
        .iter()
        .map(|c| c.coords().iter().map(|n| Rational::from(n.clone())).collect())
        .collect()
}

fn as_rationals(v: &ExponentVector) -> Vec<Rational> {
    v.coords().iter().map(|n| Rational::from(n.clone())).collect()
}

/// Solve for the stage exponent of `v` against the frame columns by Gaussian
/// elimination. Returns `None` only for singular columns, which a valid
/// frame never has.
pub fn stage_exponent_oracle(
    columns: &[ExponentVector],
    v: &ExponentVector,
) -> Option<Vec<Rational>> {
    solve_columns(&columns_as_rationals(columns), &as_rationals(v))
}

/// Does the monomial lie in the stage ring? Decided by the Gaussian route.
pub fn stage_member_oracle(columns: &[ExponentVector], v: &ExponentVector) -> bool {
    stage_exponent_oracle(columns, v)
        .map(|u| u.iter().all(|c| !c.is_negative()))
        .unwrap_or(false)
}

/// Original-variable exponents of the generators of the `k`-th power of the
/// stage maximal ideal: all sums of `k` columns with repetition.
pub fn power_generators(columns: &[ExponentVector], k: usize) -> Vec<ExponentVector> {
    let d = columns.len();
    let dim = columns[0].dim();
    let mut out = Vec::new();
    // Multisets of size k over d slots, encoded as counts.
    fn recurse(
        columns: &[ExponentVector],
        slot: usize,
        remaining: usize,
        acc: &ExponentVector,
        out: &mut Vec<ExponentVector>,
    ) {
        if slot + 1 == columns.len() {
            let mut total = acc.clone();
            for _ in 0..remaining {
                total = total.add(&columns[slot]);
            }
            out.push(total);
            return;
        }
        for here in 0..=remaining {
            let mut acc2 = acc.clone();
            for _ in 0..here {
                acc2 = acc2.add(&columns[slot]);
            }
            recurse(columns, slot + 1, remaining - here, &acc2, out);
        }
    }
    if d == 0 {
        return out;
    }
    recurse(columns, 0, k, &ExponentVector::zeros(dim), &mut out);
    out
}

/// Membership of a monomial in the `k`-th power of the stage maximal ideal,
/// decided by enumerating power generators and dividing.
pub fn power_member_oracle(columns: &[ExponentVector], v: &ExponentVector, k: usize) -> bool {
    if k == 0 {
        return stage_member_oracle(columns, v);
    }
    power_generators(columns, k)
        .iter()
        .any(|g| stage_member_oracle(columns, &v.sub(g)))
}

/// Stage order of a monomial by the power-table route: the largest `k ≤ cap`
/// with the monomial in the `k`-th power. Returns `None` when the monomial
/// is not even in the stage ring. Exact whenever the result is below `cap`.
pub fn ord_by_powers(columns: &[ExponentVector], v: &ExponentVector, cap: usize) -> Option<usize> {
    if !stage_member_oracle(columns, v) {
        return None;
    }
    let mut ord = 0;
    while ord < cap && power_member_oracle(columns, v, ord + 1) {
        ord += 1;
    }
    Some(ord)
}

/// Transform of a stage ideal into the next stage, recomputed from scratch:
/// push every generator to original variables through the stage columns,
/// re-solve it against the next stage's columns, and divide out the minimal
/// power of the center parameter (the minimum next-stage center coordinate
/// across generators).
pub fn transform_step_oracle(
    tower: &Tower,
    ideal: &MonomialIdeal,
) -> Option<MonomialIdeal> {
    let i = ideal.frame();
    let center = *tower.centers().get(i)?;
    let cols_here = tower.frame(i).ok()?.columns();
    let cols_next = columns_as_rationals(tower.frame(i + 1).ok()?.columns());
    let mut solved: Vec<Vec<Rational>> = Vec::new();
    for g in ideal.generators() {
        // Original-variable exponent of the generator: an integer matrix
        // product, no inverse involved.
        let dim = cols_here[0].dim();
        let mut v = ExponentVector::zeros(dim);
        for (slot, col) in cols_here.iter().enumerate() {
            v = v.add(&col.scale(g.coord(slot)));
        }
        solved.push(solve_columns(&cols_next, &as_rationals(&v))?);
    }
    let min_center = solved
        .iter()
        .map(|u| u[center].clone())
        .min()
        .expect("ideals have generators");
    let gens: Option<Vec<ExponentVector>> = solved
        .iter()
        .map(|u| {
            let coords: Option<Vec<BigInt>> = u
                .iter()
                .enumerate()
                .map(|(slot, c)| {
                    let adjusted = if slot == center {
                        c - &min_center
                    } else {
                        c.clone()
                    };
                    adjusted.is_integer().then(|| adjusted.to_integer())
                })
                .collect();
            coords.map(ExponentVector::new)
        })
        .collect();
    MonomialIdeal::new(i + 1, gens?).ok()
}

/// Whether the principal trail started at a nonnegative stage exponent hits
/// the unit ideal, decided combinatorially: each step zeroes the center
/// coordinate and touches nothing else, so the trail reaches a unit exactly
/// when every support slot gets centered along the way.
pub fn principal_trail_unit_oracle(u: &ExponentVector, centers: &[usize]) -> bool {
    u.support().iter().all(|slot| centers.contains(slot))
}

/// Floating-point sign probe for a combination `Σ coeffs[i] · √basis[i]`.
/// Returns `None` when the float magnitude is too small to trust.
pub fn algebraic_sign_probe(coeffs: &[Rational], basis: &[u32]) -> Option<ValueSign> {
    let mut total = 0f64;
    let mut magnitude = 0f64;
    for (c, &n) in coeffs.iter().zip(basis) {
        let cf = c.to_f64()?;
        let term = cf * (n as f64).sqrt();
        total += term;
        magnitude += term.abs();
    }
    let tolerance = 1e-9 * (magnitude + 1.0);
    if total > tolerance {
        Some(ValueSign::Positive)
    } else if total < -tolerance {
        Some(ValueSign::Negative)
    } else if magnitude == 0.0 {
        Some(ValueSign::Zero)
    } else {
        None
    }
}
