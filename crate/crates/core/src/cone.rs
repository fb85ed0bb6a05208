//! Exact rational cone membership.
//!
//! Decides whether a target vector is a nonnegative rational combination of
//! finitely many generator vectors, and if so produces the combination. The
//! decision runs a phase-one simplex with Bland's pivoting rule over
//! arbitrary-precision rationals, so it always terminates and never rounds.
//! Callers that need an audit trail keep the returned coefficients; checking
//! them later is plain linear arithmetic and does not repeat the search.

use crate::value::Rational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors from malformed cone queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("generator {index} has {got} coordinates, expected {expected}")]
    GeneratorDimension {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("the simplex search exceeded its pivot budget; the query is malformed")]
    PivotBudget,
}

/// Decide `target ∈ cone(generators)` and return nonnegative coefficients
/// witnessing membership, or `None` when the target lies outside the cone.
pub fn nonneg_combination(
    generators: &[Vec<Rational>],
    target: &[Rational],
) -> Result<Option<Vec<Rational>>, ConeError> {
    let d = target.len();
    for (index, g) in generators.iter().enumerate() {
        if g.len() != d {
            return Err(ConeError::GeneratorDimension {
                index,
                expected: d,
                got: g.len(),
            });
        }
    }
    let m = generators.len();
    if d == 0 {
        return Ok(Some(vec![Rational::zero(); m]));
    }

    // Tableau rows: one per coordinate, sign-normalized so the right-hand
    // side is nonnegative. Columns: `m` generator variables, then `d`
    // artificial variables, then the right-hand side.
    let width = m + d;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(d);
    let mut rhs: Vec<Rational> = Vec::with_capacity(d);
    for r in 0..d {
        let flip = target[r].is_negative();
        let mut row = Vec::with_capacity(width);
        for g in generators {
            row.push(if flip { -g[r].clone() } else { g[r].clone() });
        }
        for k in 0..d {
            row.push(if k == r {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        rows.push(row);
        rhs.push(if flip {
            -target[r].clone()
        } else {
            target[r].clone()
        });
    }
    let mut basis: Vec<usize> = (m..m + d).collect();

    // Reduced costs for minimizing the sum of artificial variables: the
    // artificial columns start basic, so their cost folds into the row.
    let mut cost: Vec<Rational> = (0..width)
        .map(|j| -rows.iter().map(|row| row[j].clone()).sum::<Rational>())
        .collect();
    for c in cost.iter_mut().skip(m) {
        *c += Rational::one();
    }
    let mut objective: Rational = -rhs.iter().cloned().sum::<Rational>();

    // Bland's rule terminates after finitely many pivots; the budget is a
    // defensive bound far above the number of bases.
    let budget = 64 + 16 * (width + 1) * (d + 1) * (width + 1);
    for _ in 0..budget {
        let entering = match (0..width).find(|&j| cost[j].is_negative()) {
            Some(j) => j,
            None => {
                if !objective.is_zero() {
                    return Ok(None);
                }
                let mut witness = vec![Rational::zero(); m];
                for (r, &b) in basis.iter().enumerate() {
                    if b < m {
                        witness[b] = rhs[r].clone();
                    }
                }
                debug_assert!(verify_nonneg_combination(generators, &witness, target));
                return Ok(Some(witness));
            }
        };
        let mut leaving: Option<usize> = None;
        let mut best_ratio: Option<Rational> = None;
        for r in 0..d {
            if rows[r][entering].is_positive() {
                let ratio = &rhs[r] / &rows[r][entering];
                let better = match &best_ratio {
                    None => true,
                    Some(best) => {
                        ratio < *best || (ratio == *best && basis[r] < basis[leaving.unwrap()])
                    }
                };
                if better {
                    best_ratio = Some(ratio);
                    leaving = Some(r);
                }
            }
        }
        let Some(pivot_row) = leaving else {
            // The phase-one objective is bounded below by zero, so an
            // unbounded ray cannot occur; treat it as infeasible defensively.
            return Ok(None);
        };
        let pivot = rows[pivot_row][entering].clone();
        for entry in rows[pivot_row].iter_mut() {
            *entry /= &pivot;
        }
        rhs[pivot_row] /= &pivot;
        for r in 0..d {
            if r != pivot_row && !rows[r][entering].is_zero() {
                let factor = rows[r][entering].clone();
                for j in 0..width {
                    let delta = &factor * &rows[pivot_row][j];
                    rows[r][j] -= delta;
                }
                let delta = &factor * &rhs[pivot_row];
                rhs[r] -= delta;
            }
        }
        if !cost[entering].is_zero() {
            let factor = cost[entering].clone();
            for j in 0..width {
                let delta = &factor * &rows[pivot_row][j];
                cost[j] -= delta;
            }
            let delta = &factor * &rhs[pivot_row];
            objective -= delta;
        }
        basis[pivot_row] = entering;
    }
    Err(ConeError::PivotBudget)
}

/// Check that `coefficients` are nonnegative and recombine the generators
/// exactly into the target. Pure arithmetic; no search.
pub fn verify_nonneg_combination(
    generators: &[Vec<Rational>],
    coefficients: &[Rational],
    target: &[Rational],
) -> bool {
    if coefficients.len() != generators.len() {
        return false;
    }
    if coefficients.iter().any(Rational::is_negative) {
        return false;
    }
    if generators.iter().any(|g| g.len() != target.len()) {
        return false;
    }
    for r in 0..target.len() {
        let sum: Rational = generators
            .iter()
            .zip(coefficients)
            .map(|(g, c)| &g[r] * c)
            .sum();
        if sum != target[r] {
            return false;
        }
    }
    true
}

/// Solve `columns · u = v` exactly by Gaussian elimination, independent of
/// any stored inverse. Returns `None` when the columns are singular.
pub fn solve_columns(columns: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let d = v.len();
    if columns.len() != d || columns.iter().any(|c| c.len() != d) {
        return None;
    }
    // Augmented matrix rows: entry (r, c) is columns[c][r].
    let mut m: Vec<Vec<Rational>> = (0..d)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|col| col[r].clone()).collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    for k in 0..d {
        let pivot_row = (k..d).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, pivot_row);
        let pivot = m[k][k].clone();
        for entry in m[k].iter_mut() {
            *entry /= &pivot;
        }
        for r in 0..d {
            if r != k && !m[r][k].is_zero() {
                let factor = m[r][k].clone();
                for j in 0..=d {
                    let delta = &factor * &m[k][j];
                    m[r][j] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[d].clone()).collect())
}

/// Rank of a set of rational vectors (row rank by Gaussian elimination).
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let width = vectors[0].len();
    let mut m: Vec<Vec<Rational>> = vectors.to_vec();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot_row) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        for entry in m[rank].iter_mut() {
            *entry /= &pivot;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in 0..width {
                    let delta = &factor * &m[rank][j];
                    m[r][j] -= delta;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
