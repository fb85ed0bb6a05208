//! Seeded random constructions shared by the integration suites.
//!
//! Every helper draws from a caller-supplied `ChaCha8Rng`, so each test owns
//! a fixed seed and replays byte-identically.

#![allow(dead_code)]

use lqt_core::{ExponentVector, MonomialIdeal, Rational, Tower, ValueMode, WeightValue};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A reproducible generator for one test.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Small nonnegative rational coefficients with at least one nonzero entry.
/// Against a basis of positive reals (or under the lexicographic order) such
/// a combination is strictly positive, so it is always a legal weight.
fn positive_coeffs(rng: &mut ChaCha8Rng, arity: usize) -> Vec<Rational> {
    loop {
        let coeffs: Vec<Rational> = (0..arity)
            .map(|_| {
                let numer = rng.gen_range(0..=6i64);
                let denom = rng.gen_range(1..=3i64);
                Rational::new(BigInt::from(numer), BigInt::from(denom))
            })
            .collect();
        if coeffs.iter().any(|c| !c.numer().eq(&BigInt::from(0))) {
            return coeffs;
        }
    }
}

fn weights(rng: &mut ChaCha8Rng, mode: &ValueMode, dim: usize) -> Vec<WeightValue> {
    (0..dim)
        .map(|_| WeightValue::new(mode.clone(), positive_coeffs(rng, mode.arity())).unwrap())
        .collect()
}

/// A tower over an archimedean scale `q₀·√1 + q₁·√2 (+ q₂·√3)`.
pub fn random_algebraic_tower(rng: &mut ChaCha8Rng, dim: usize) -> Tower {
    let basis: &[u64] = if rng.gen_bool(0.5) { &[1, 2] } else { &[1, 2, 3] };
    let mode = ValueMode::algebraic(basis).unwrap();
    Tower::new(weights(rng, &mode, dim)).unwrap()
}

/// A tower over a lexicographic scale of two or three infinitesimal levels.
pub fn random_lex_tower(rng: &mut ChaCha8Rng, dim: usize) -> Tower {
    let mode = ValueMode::lex(rng.gen_range(2..=3)).unwrap();
    Tower::new(weights(rng, &mode, dim)).unwrap()
}

/// A tower over a random scale of either kind.
pub fn random_tower(rng: &mut ChaCha8Rng, dim: usize) -> Tower {
    if rng.gen_bool(0.5) {
        random_algebraic_tower(rng, dim)
    } else {
        random_lex_tower(rng, dim)
    }
}

/// A random monomial ideal at the given stage: up to `max_gens` generators
/// with coordinates in `0..=max_exp`.
pub fn random_ideal(
    rng: &mut ChaCha8Rng,
    frame: usize,
    dim: usize,
    max_gens: usize,
    max_exp: i64,
) -> MonomialIdeal {
    let count = rng.gen_range(1..=max_gens);
    let gens = (0..count)
        .map(|_| {
            let coords: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=max_exp)).collect();
            ExponentVector::from_i64s(&coords)
        })
        .collect();
    MonomialIdeal::new(frame, gens).unwrap()
}

/// A random Laurent exponent vector with coordinates in `lo..=hi`.
pub fn random_laurent(rng: &mut ChaCha8Rng, dim: usize, lo: i64, hi: i64) -> ExponentVector {
    let coords: Vec<i64> = (0..dim).map(|_| rng.gen_range(lo..=hi)).collect();
    ExponentVector::from_i64s(&coords)
}
