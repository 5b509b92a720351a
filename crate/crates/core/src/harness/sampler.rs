//! Seeded input samplers.
//!
//! All randomness in the crate flows through these functions with a
//! counter-based scheme: trial `t` of a run with base seed `s` uses a
//! ChaCha8 generator seeded with `s + t`. Sequential and fanned-out
//! execution therefore see identical streams, and any single trial can be
//! replayed from its `(seed, trial)` pair alone.

use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{RealVector, SquareMatrix};
use crate::norms::{Exponent, NormSpec};
use crate::operators::Laplacian;
use crate::probability::DiscreteMeasure;
use crate::{Error, Result};

/// Weights for random measures are drawn from `[MIN_WEIGHT, 1]` before
/// normalization, keeping the weighted Laplacians well-conditioned.
pub const MIN_WEIGHT: f64 = 1e-3;

/// The per-trial generator: ChaCha8 seeded with `seed + trial`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial))
}

/// Entries uniform on `[lo, hi)`.
pub fn uniform_vector(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> RealVector {
    RealVector::from_raw((0..n).map(|_| rng.gen_range(lo..hi)).collect())
}

/// Entries uniform on `[-1, 1)` re-centered to zero sum.
pub fn centered_vector(rng: &mut ChaCha8Rng, n: usize) -> RealVector {
    uniform_vector(rng, n, -1.0, 1.0).centered()
}

/// Entries uniform on `[-1, 1)` with any entry of modulus below `min_abs`
/// redrawn, so the vector is safely invertible.
pub fn invertible_vector(rng: &mut ChaCha8Rng, n: usize, min_abs: f64) -> RealVector {
    RealVector::from_raw(
        (0..n)
            .map(|_| loop {
                let e: f64 = rng.gen_range(-1.0..1.0);
                if e.abs() >= min_abs {
                    break e;
                }
            })
            .collect(),
    )
}

/// Entries `+1` or `-1` with equal probability.
pub fn sign_vector(rng: &mut ChaCha8Rng, n: usize) -> RealVector {
    RealVector::from_raw(
        (0..n)
            .map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
            .collect(),
    )
}

/// Each entry zero with probability 1/2, otherwise uniform on `[-1, 1)`.
pub fn sparse_vector(rng: &mut ChaCha8Rng, n: usize) -> RealVector {
    RealVector::from_raw(
        (0..n)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    0.0
                } else {
                    rng.gen_range(-1.0..1.0)
                }
            })
            .collect(),
    )
}

/// Strictly positive weights: uniform on `[MIN_WEIGHT, 1]`, normalized.
pub fn positive_measure(rng: &mut ChaCha8Rng, n: usize) -> DiscreteMeasure {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(MIN_WEIGHT..1.0)).collect();
    let sum: f64 = raw.iter().sum();
    DiscreteMeasure::new(raw.iter().map(|w| w / sum).collect())
        .expect("normalized positive weights form a measure")
}

/// One of the exponents `{1, 1.5, 2, 3, inf}` uniformly.
pub fn exponent_choice(rng: &mut ChaCha8Rng) -> Exponent {
    match rng.gen_range(0..5u32) {
        0 => Exponent::Finite(1.0),
        1 => Exponent::Finite(1.5),
        2 => Exponent::Finite(2.0),
        3 => Exponent::Finite(3.0),
        _ => Exponent::Infinity,
    }
}

/// Random entries uniform on `[-1, 1)` rescaled until substochastic: the
/// matrix is divided by the largest row or column absolute sum when that
/// exceeds 1.
pub fn substochastic_matrix(rng: &mut ChaCha8Rng, n: usize) -> SquareMatrix {
    let m = SquareMatrix::from_fn(n, |_, _| rng.gen_range(-1.0..1.0)).expect("finite entries");
    let worst = (0..n)
        .map(|i| m.row_abs_sum(i).max(m.col_abs_sum(i)))
        .fold(1.0f64, f64::max);
    m.scale(1.0 / worst)
}

/// Laplacian of a random connected weighted graph: each edge present with
/// probability 1/2 carrying a uniform `[0,1)` weight, resampled until the
/// graph is connected; the diagonal is forced by zero row sums and the
/// overall sign matches the non-positive-definite convention.
pub fn connected_laplacian(rng: &mut ChaCha8Rng, n: usize) -> Result<Laplacian> {
    for _ in 0..1000 {
        let mut weights = SquareMatrix::zeros(n)?;
        let mut dsu: Vec<usize> = (0..n).collect();
        fn find(dsu: &mut [usize], mut i: usize) -> usize {
            while dsu[i] != i {
                dsu[i] = dsu[dsu[i]];
                i = dsu[i];
            }
            i
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(0.5) {
                    let w: f64 = rng.gen_range(0.0..1.0);
                    weights.set(i, j, w);
                    weights.set(j, i, w);
                    let (ri, rj) = (find(&mut dsu, i), find(&mut dsu, j));
                    dsu[ri] = rj;
                }
            }
        }
        let root = find(&mut dsu, 0);
        let connected = (1..n).all(|i| find(&mut dsu, i) == root);
        if !connected {
            continue;
        }
        let m = SquareMatrix::from_fn(n, |i, j| {
            if i == j {
                -weights.row_sum(i)
            } else {
                weights.get(i, j)
            }
        })?;
        // Near-zero edge weights can push the spectral gap below the
        // validation threshold; resample in that case.
        if let Ok(delta) = Laplacian::new(m) {
            return Ok(delta);
        }
    }
    Err(Error::IterationLimit {
        op: "connected Laplacian sampling",
    })
}

/// The norm specs exercised by the acceptance suites:
/// `p in {1, 1.5, 2, 3, inf}` plus every Ky Fan index for the dimension.
pub fn spec_pool(n: usize) -> Vec<NormSpec> {
    let mut pool = alloc::vec![
        NormSpec::P(Exponent::Finite(1.0)),
        NormSpec::P(Exponent::Finite(1.5)),
        NormSpec::P(Exponent::Finite(2.0)),
        NormSpec::P(Exponent::Finite(3.0)),
        NormSpec::P(Exponent::Infinity),
    ];
    for k in 1..=n {
        pool.push(NormSpec::KyFan(k));
    }
    pool
}
