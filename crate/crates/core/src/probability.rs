//! Finite discrete probability spaces: expectations, absolute central
//! moments, and the weighted Leibniz check.

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::harness::{SlackRecord, TrialInputs, DEFAULT_TOLERANCE};
use crate::linalg::{check_dims, RealVector};
use crate::norms::Exponent;
use crate::{Error, Result};

const SUM_TOL: f64 = 1e-12;
/// Weight sums this close to 1 may be renormalized by [`DiscreteMeasure::normalized`].
pub const NORMALIZE_TOL: f64 = 1e-9;

/// Nonnegative weights on `{1..n}` summing to 1.
///
/// Serializes as a plain JSON array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct DiscreteMeasure(Vec<f64>);

impl DiscreteMeasure {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyVector);
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::NonFinite { what: "measure" });
        }
        for (i, &w) in weights.iter().enumerate() {
            if w < 0.0 {
                return Err(Error::BadWeight {
                    index: i,
                    weight: w,
                });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::WeightSum { sum });
        }
        Ok(Self(weights))
    }

    /// Accept weights whose sum is within `1e-9` of 1 and rescale them to
    /// sum to 1 exactly; anything further off is rejected.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyVector);
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::NonFinite { what: "measure" });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > NORMALIZE_TOL {
            return Err(Error::WeightSum { sum });
        }
        Self::new(weights.iter().map(|w| w / sum).collect())
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        Self::new(alloc::vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    /// Indices with strictly positive weight.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, w)| **w > 0.0)
            .map(|(i, _)| i)
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|w| *w > 0.0)
    }
}

impl TryFrom<Vec<f64>> for DiscreteMeasure {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DiscreteMeasure> for Vec<f64> {
    fn from(m: DiscreteMeasure) -> Vec<f64> {
        m.0
    }
}

/// `E f = sum mu_i f_i`.
pub fn expectation(f: &RealVector, mu: &DiscreteMeasure) -> Result<f64> {
    check_dims(mu.len(), f.len())?;
    Ok(f.iter().zip(mu.weights()).map(|(x, w)| x * w).sum())
}

/// Essential supremum of `|f|`: the maximum over indices of positive weight.
pub fn ess_sup_abs(f: &RealVector, mu: &DiscreteMeasure) -> Result<f64> {
    check_dims(mu.len(), f.len())?;
    Ok(mu.support().fold(0.0f64, |acc, i| acc.max(f[i].abs())))
}

/// The `p`-th absolute central moment
/// `sigma_p(f; mu) = (sum mu_i |f_i - Ef|^p)^(1/p)`,
/// with the essential supremum of `|f - Ef|` at `p = inf`.
///
/// Zero exactly when `f` is constant on the support of `mu`.
pub fn sigma_p(f: &RealVector, mu: &DiscreteMeasure, p: Exponent) -> Result<f64> {
    check_dims(mu.len(), f.len())?;
    let mean = expectation(f, mu)?;
    match p {
        Exponent::Infinity => Ok(mu
            .support()
            .fold(0.0f64, |acc, i| acc.max((f[i] - mean).abs()))),
        Exponent::Finite(p) => {
            if !(p.is_finite() && p >= 1.0) {
                return Err(Error::BadExponent { p });
            }
            let moment: f64 = if p == 1.0 {
                f.iter()
                    .zip(mu.weights())
                    .map(|(x, w)| w * (x - mean).abs())
                    .sum()
            } else if p == 2.0 {
                f.iter()
                    .zip(mu.weights())
                    .map(|(x, w)| w * (x - mean) * (x - mean))
                    .sum()
            } else {
                f.iter()
                    .zip(mu.weights())
                    .map(|(x, w)| w * libm::pow((x - mean).abs(), p))
                    .sum()
            };
            Ok(if p == 2.0 {
                libm::sqrt(moment)
            } else if p == 1.0 {
                moment
            } else {
                libm::pow(moment, 1.0 / p)
            })
        }
    }
}

/// Leibniz slack of the `p`-th central moment on a weighted space:
/// `||g||_inf sigma_p(f) + ||f||_inf sigma_p(g) - sigma_p(fg)`,
/// with sup norms taken as essential suprema over the support of `mu`.
pub fn weighted_leibniz_slack(
    f: &RealVector,
    g: &RealVector,
    mu: &DiscreteMeasure,
    p: Exponent,
) -> Result<SlackRecord> {
    check_dims(mu.len(), f.len())?;
    check_dims(mu.len(), g.len())?;
    let fg = f.pointwise_mul(g)?;
    let lhs = sigma_p(&fg, mu, p)?;
    let rhs = ess_sup_abs(g, mu)? * sigma_p(f, mu, p)? + ess_sup_abs(f, mu)? * sigma_p(g, mu, p)?;
    let inputs = TrialInputs {
        f: Some(f.clone()),
        g: Some(g.clone()),
        mu: Some(mu.clone()),
        p: Some(p),
        ..TrialInputs::default()
    };
    Ok(SlackRecord::new("weighted-leibniz", lhs, rhs, DEFAULT_TOLERANCE).with_inputs(inputs))
}
