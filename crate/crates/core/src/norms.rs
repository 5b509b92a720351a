//! Symmetric and permutation-invariant norms on `R^n`.
//!
//! The three families are the `p`-norms (`1 <= p <= inf`), the Ky Fan
//! `k`-norms (sum of the `k` largest moduli), and a sum-augmented norm
//! `N(x) = ||x||_2 + |sum x_i|` which is permutation-invariant but not
//! sign-invariant. The module also carries the machinery around the Ky Fan
//! dual ball: its extreme points, a constructive convex decomposition, weak
//! majorization, and the (sub/doubly) stochasticity predicates.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use serde::{Deserialize, Serialize};

use crate::linalg::{check_dims, RealVector, SquareMatrix};
use crate::{Error, Result};

/// Default cap on `C(n,k) * 2^k` for extreme-point enumeration.
pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

const MEMBERSHIP_TOL: f64 = 1e-12;
const SNAP_ZERO: f64 = 1e-14;

/// A `p`-norm exponent: a finite real `>= 1` or infinity.
///
/// Infinity is a distinguished variant rather than an `f64` limit, so the
/// endpoint norms dispatch exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::BadExponent { p })
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Exponent::Finite(p) if !(p.is_finite() && *p >= 1.0) => {
                Err(Error::BadExponent { p: *p })
            }
            _ => Ok(()),
        }
    }

    /// Hölder conjugate: `1/p + 1/q = 1`.
    pub fn conjugate(&self) -> Result<Exponent> {
        self.validate()?;
        Ok(match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) if *p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        })
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Exponent::Infinity);
        }
        let p: f64 = t.parse().map_err(|_| Error::Parse {
            input: s.to_string(),
        })?;
        Exponent::finite(p)
    }
}

impl TryFrom<String> for Exponent {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Exponent> for String {
    fn from(e: Exponent) -> String {
        e.to_string()
    }
}

/// Tagged description of a norm; evaluation dispatches on it.
///
/// Text syntax (used by the CLI and in JSON): `p=2`, `p=inf`, `kfan=3`,
/// `sumaug`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum NormSpec {
    /// `(sum |x_i|^p)^(1/p)`, with the max norm at `p = inf`.
    P(Exponent),
    /// Sum of the `k` largest moduli.
    KyFan(usize),
    /// `||x||_2 + |sum x_i|`: permutation-invariant, not sign-invariant.
    SumAugmented,
}

impl NormSpec {
    /// Invariant under sign changes and permutations of the coordinates.
    pub fn is_symmetric(&self) -> bool {
        !matches!(self, NormSpec::SumAugmented)
    }

    pub fn is_permutation_invariant(&self) -> bool {
        true
    }

    pub fn validate_for_dim(&self, n: usize) -> Result<()> {
        match self {
            NormSpec::P(e) => e.validate(),
            NormSpec::KyFan(k) => {
                if *k >= 1 && *k <= n {
                    Ok(())
                } else {
                    Err(Error::KyFanOutOfRange { k: *k, n })
                }
            }
            NormSpec::SumAugmented => Ok(()),
        }
    }

    /// Evaluate the norm.
    pub fn eval(&self, x: &RealVector) -> Result<f64> {
        self.validate_for_dim(x.len())?;
        Ok(match self {
            NormSpec::P(Exponent::Infinity) => x.max_abs(),
            NormSpec::P(Exponent::Finite(p)) => p_norm(x.as_slice(), *p),
            NormSpec::KyFan(k) => {
                let sorted = sort_abs_desc(x);
                sorted[..*k].iter().sum()
            }
            NormSpec::SumAugmented => {
                let l2: f64 = libm::sqrt(x.iter().map(|e| e * e).sum());
                l2 + x.sum().abs()
            }
        })
    }

    /// Evaluate the dual norm.
    ///
    /// For Ky Fan this is `max(||x||_inf, ||x||_1 / k)`; for `p`-norms it is
    /// the conjugate `q`-norm. The sum-augmented dual is not provided.
    pub fn dual_eval(&self, x: &RealVector) -> Result<f64> {
        match self {
            NormSpec::P(e) => NormSpec::P(e.conjugate()?).eval(x),
            NormSpec::KyFan(k) => {
                self.validate_for_dim(x.len())?;
                let l1: f64 = x.iter().map(|e| e.abs()).sum();
                Ok(x.max_abs().max(l1 / *k as f64))
            }
            NormSpec::SumAugmented => Err(Error::UnsupportedSpec {
                spec: self.to_string(),
                op: "dual_eval",
            }),
        }
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::P(e) => write!(f, "p={e}"),
            NormSpec::KyFan(k) => write!(f, "kfan={k}"),
            NormSpec::SumAugmented => write!(f, "sumaug"),
        }
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("sumaug") {
            return Ok(NormSpec::SumAugmented);
        }
        let bad = || Error::Parse {
            input: s.to_string(),
        };
        let (head, tail) = t.split_once('=').ok_or_else(bad)?;
        match head.trim() {
            "p" => Ok(NormSpec::P(tail.parse()?)),
            "kfan" => {
                let k: usize = tail.trim().parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(bad());
                }
                Ok(NormSpec::KyFan(k))
            }
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for NormSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<NormSpec> for String {
    fn from(spec: NormSpec) -> String {
        spec.to_string()
    }
}

fn p_norm(x: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        x.iter().map(|e| e.abs()).sum()
    } else if p == 2.0 {
        libm::sqrt(x.iter().map(|e| e * e).sum())
    } else {
        let s: f64 = x.iter().map(|e| libm::pow(e.abs(), p)).sum();
        libm::pow(s, 1.0 / p)
    }
}

/// Non-increasing rearrangement of the moduli, `|x|` sorted descending.
///
/// Ties keep their original order (stable sort); downstream code only uses
/// the sorted values.
pub fn sort_abs_desc(x: &RealVector) -> RealVector {
    let mut v: Vec<f64> = x.iter().map(|e| e.abs()).collect();
    v.sort_by(|a, b| b.partial_cmp(a).expect("entries are finite"));
    RealVector::from_raw(v)
}

/// All partial sums of `|x|` sorted descending are dominated by those of
/// `|y|` (within `1e-12`).
pub fn is_weakly_majorized(x: &RealVector, y: &RealVector) -> Result<bool> {
    check_dims(x.len(), y.len())?;
    let sx = sort_abs_desc(x);
    let sy = sort_abs_desc(y);
    let mut px = 0.0;
    let mut py = 0.0;
    for (a, b) in sx.iter().zip(sy.iter()) {
        px += a;
        py += b;
        if px > py + MEMBERSHIP_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every row and column absolute sum is at most `1` (within `1e-12`).
pub fn is_substochastic(a: &SquareMatrix) -> bool {
    let n = a.dim();
    (0..n).all(|i| a.row_abs_sum(i) <= 1.0 + MEMBERSHIP_TOL)
        && (0..n).all(|j| a.col_abs_sum(j) <= 1.0 + MEMBERSHIP_TOL)
}

/// Entries nonnegative and every row and column sums to `1` (within `1e-12`).
pub fn is_doubly_stochastic(a: &SquareMatrix) -> bool {
    let n = a.dim();
    a.entries().iter().all(|&e| e >= -MEMBERSHIP_TOL)
        && (0..n).all(|i| (a.row_sum(i) - 1.0).abs() <= MEMBERSHIP_TOL)
        && (0..n).all(|j| (a.col_sum(j) - 1.0).abs() <= MEMBERSHIP_TOL)
}

fn binomial_checked(n: u64, k: u64) -> Option<u128> {
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 1..=k {
        c = c.checked_mul((n - k + i) as u128)?;
        c /= i as u128;
    }
    Some(c)
}

/// Number of extreme points of the Ky Fan dual ball, `C(n,k) * 2^k`.
pub fn kfan_dual_extreme_point_count(n: usize, k: usize) -> Option<u128> {
    let c = binomial_checked(n as u64, k as u64)?;
    if k >= 128 {
        return None;
    }
    c.checked_mul(1u128 << k)
}

/// Extreme points of the Ky Fan `k`-norm dual ball: every `sum_{i in S} ±e_i`
/// with `|S| = k`, enumerated with the default cap.
pub fn kfan_dual_extreme_points(n: usize, k: usize) -> Result<Vec<RealVector>> {
    kfan_dual_extreme_points_with_cap(n, k, DEFAULT_ENUM_CAP)
}

/// Same as [`kfan_dual_extreme_points`] with an explicit enumeration cap.
pub fn kfan_dual_extreme_points_with_cap(n: usize, k: usize, cap: u64) -> Result<Vec<RealVector>> {
    if k < 1 || k > n {
        return Err(Error::KyFanOutOfRange { k, n });
    }
    let count = kfan_dual_extreme_point_count(n, k).ok_or(Error::EnumerationCapExceeded {
        required: u128::MAX,
        cap,
    })?;
    if count > cap as u128 {
        return Err(Error::EnumerationCapExceeded {
            required: count,
            cap,
        });
    }

    let mut points = Vec::with_capacity(count as usize);
    // Lexicographic k-subsets of {0..n-1}.
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        for mask in 0..(1u64 << k) {
            let mut v = vec![0.0f64; n];
            for (b, &i) in subset.iter().enumerate() {
                v[i] = if (mask >> b) & 1 == 1 { -1.0 } else { 1.0 };
            }
            points.push(RealVector::from_raw(v));
        }
        // Advance the subset.
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if subset[pos] != pos + n - k {
                subset[pos] += 1;
                for q in (pos + 1)..k {
                    subset[q] = subset[q - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                return Ok(points);
            }
        }
    }
}

/// Convex decomposition of a point of the Ky Fan `k`-norm dual ball into
/// sign-pattern extreme points.
///
/// While more than `k` coordinates are nonzero, a sign-matched direction
/// supported on the `k-1` largest moduli plus the smallest nonzero modulus
/// is peeled off; the coefficient is the largest one keeping the rescaled
/// remainder inside the ball. Once at most `k` nonzeros remain the point
/// lies in a sign cube on a fixed support of size `k` and is decomposed by
/// repeatedly subtracting the largest feasible coefficient of its
/// sign-pattern vertex; that phase takes at most `k` peels.
///
/// The returned weights lie in `[0,1]`, sum to 1, and the weighted sum of
/// the points reconstructs the input to `1e-10` per entry.
pub fn decompose_in_dual_ball(v: &RealVector, k: usize) -> Result<Vec<(f64, RealVector)>> {
    let n = v.len();
    if k < 1 || k > n {
        return Err(Error::KyFanOutOfRange { k, n });
    }
    let dual = NormSpec::KyFan(k).dual_eval(v)?;
    if dual > 1.0 + MEMBERSHIP_TOL {
        return Err(Error::NotInDualBall { dual_norm: dual });
    }
    // Inputs may overshoot the exact ball by up to the membership
    // tolerance; project them radially so the peel invariants hold with
    // true-roundoff residues only. The perturbation stays within the
    // reconstruction budget.
    let excess = if dual > 1.0 { dual } else { 1.0 };

    let mut w: Vec<f64> = v
        .iter()
        .map(|&e| {
            let e = e / excess;
            if e.abs() < SNAP_ZERO {
                0.0
            } else {
                e
            }
        })
        .collect();
    let mut terms: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut scale = 1.0f64;

    // Support-reduction phase.
    let mut guard = 0usize;
    loop {
        guard += 1;
        if guard > 4 * (n + k) + 16 {
            return Err(Error::IterationLimit {
                op: "dual-ball decomposition",
            });
        }
        let mut idx: Vec<usize> = (0..n).filter(|&i| w[i] != 0.0).collect();
        if idx.len() <= k {
            break;
        }
        idx.sort_by(|&a, &b| w[b].abs().partial_cmp(&w[a].abs()).expect("finite"));
        let small = *idx.last().expect("support nonempty");

        // Largest modulus left outside the peel support; it caps the
        // coefficient because the remainder is rescaled by 1/(1-alpha).
        let m_out = idx[k - 1..]
            .iter()
            .filter(|&&j| j != small)
            .map(|&j| w[j].abs())
            .fold(0.0f64, f64::max);
        if 1.0 - m_out < MEMBERSHIP_TOL && 1.0 - m_out < w[small].abs() {
            // Numerically saturated coordinate outside the support; snap it.
            let j_out = idx[k - 1..]
                .iter()
                .copied()
                .filter(|&j| j != small)
                .max_by(|&a, &b| w[a].abs().partial_cmp(&w[b].abs()).expect("finite"))
                .expect("outside coordinate exists");
            w[j_out] = w[j_out].signum();
            continue;
        }
        let alpha = w[small].abs().min(1.0 - m_out);
        let denom = 1.0 - alpha;
        if denom <= 1e-15 {
            return Err(Error::IterationLimit {
                op: "dual-ball decomposition",
            });
        }

        let mut c = vec![0.0f64; n];
        for &j in &idx[..k - 1] {
            c[j] = w[j].signum();
        }
        c[small] = w[small].signum();

        for j in 0..n {
            let mut nw = (w[j] - alpha * c[j]) / denom;
            if nw.abs() < SNAP_ZERO {
                nw = 0.0;
            } else if nw.abs() > 1.0 {
                debug_assert!(nw.abs() < 1.0 + 1e-9, "remainder left the ball: {nw}");
                nw = nw.signum();
            }
            w[j] = nw;
        }
        terms.push((scale * alpha, c));
        scale *= denom;
    }

    // Cube phase on a fixed support of size k.
    let mut support: Vec<usize> = (0..n).filter(|&i| w[i] != 0.0).collect();
    for (i, &e) in w.iter().enumerate() {
        if support.len() == k {
            break;
        }
        if e == 0.0 {
            support.push(i);
        }
    }
    support.sort_unstable();

    let mut guard = 0usize;
    loop {
        guard += 1;
        if guard > k + 8 {
            return Err(Error::IterationLimit {
                op: "sign-cube decomposition",
            });
        }
        let mut u = vec![0.0f64; n];
        for &j in &support {
            u[j] = if w[j] == 0.0 { 1.0 } else { w[j].signum() };
        }
        let lambda = support
            .iter()
            .map(|&j| (1.0 + w[j].abs()) / 2.0)
            .fold(1.0f64, f64::min);
        if lambda >= 1.0 - 1e-12 {
            terms.push((scale, u));
            break;
        }
        let denom = 1.0 - lambda;
        for &j in &support {
            let mut nw = (w[j] - lambda * u[j]) / denom;
            if (nw.abs() - 1.0).abs() < 1e-12 {
                nw = nw.signum();
            } else if nw.abs() < SNAP_ZERO {
                nw = 0.0;
            }
            w[j] = nw;
        }
        terms.push((scale * lambda, u));
        scale *= denom;
    }

    Ok(terms
        .into_iter()
        .filter(|(weight, _)| *weight > 0.0)
        .map(|(weight, point)| (weight, RealVector::from_raw(point)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(entries: &[f64]) -> RealVector {
        RealVector::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn rearrangement_examples() {
        assert_eq!(
            sort_abs_desc(&rv(&[3.0, -1.0, 2.0])).as_slice(),
            &[3.0, 2.0, 1.0]
        );
        assert_eq!(sort_abs_desc(&rv(&[0.0, 0.0])).as_slice(), &[0.0, 0.0]);
        assert_eq!(sort_abs_desc(&rv(&[-5.0])).as_slice(), &[5.0]);
    }

    #[test]
    fn norm_eval_examples() {
        let x = rv(&[3.0, -1.0, 2.0]);
        assert_eq!(NormSpec::KyFan(2).eval(&x).unwrap(), 5.0);
        // k = n recovers l1, k = 1 recovers sup.
        assert_eq!(NormSpec::KyFan(3).eval(&x).unwrap(), 6.0);
        assert_eq!(NormSpec::KyFan(1).eval(&x).unwrap(), 3.0);
        let y = rv(&[1.0, -1.0]);
        let sa = NormSpec::SumAugmented.eval(&y).unwrap();
        assert!((sa - core::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(
            NormSpec::P(Exponent::Finite(2.0))
                .eval(&rv(&[3.0, 4.0]))
                .unwrap(),
            5.0
        );
        assert_eq!(NormSpec::P(Exponent::Infinity).eval(&x).unwrap(), 3.0);
    }

    #[test]
    fn norm_eval_errors() {
        let x = rv(&[1.0, 2.0]);
        assert!(matches!(
            NormSpec::KyFan(0).eval(&x),
            Err(Error::KyFanOutOfRange { .. })
        ));
        assert!(matches!(
            NormSpec::KyFan(3).eval(&x),
            Err(Error::KyFanOutOfRange { .. })
        ));
        assert!(matches!(
            NormSpec::P(Exponent::Finite(0.5)).eval(&x),
            Err(Error::BadExponent { .. })
        ));
        assert!(matches!(
            Exponent::finite(f64::NAN),
            Err(Error::BadExponent { .. })
        ));
    }

    #[test]
    fn dual_eval_examples() {
        assert_eq!(
            NormSpec::KyFan(2)
                .dual_eval(&rv(&[1.0, 1.0, 1.0, 1.0]))
                .unwrap(),
            2.0
        );
        let x = rv(&[1.0, -2.0, 0.5]);
        assert_eq!(
            NormSpec::KyFan(1).dual_eval(&x).unwrap(),
            NormSpec::P(Exponent::Finite(1.0)).eval(&x).unwrap()
        );
        let p2 = NormSpec::P(Exponent::Finite(2.0));
        assert!((p2.dual_eval(&x).unwrap() - p2.eval(&x).unwrap()).abs() < 1e-15);
        assert!(matches!(
            NormSpec::SumAugmented.dual_eval(&x),
            Err(Error::UnsupportedSpec { .. })
        ));
    }

    #[test]
    fn conjugate_pairs() {
        assert_eq!(
            Exponent::Finite(1.5).conjugate().unwrap(),
            Exponent::Finite(3.0)
        );
        assert_eq!(
            Exponent::Finite(1.0).conjugate().unwrap(),
            Exponent::Infinity
        );
        assert_eq!(
            Exponent::Infinity.conjugate().unwrap(),
            Exponent::Finite(1.0)
        );
    }

    #[test]
    fn weak_majorization_examples() {
        let x = rv(&[1.0, 1.0]);
        let y = rv(&[2.0, 0.0]);
        assert!(is_weakly_majorized(&x, &x).unwrap());
        assert!(is_weakly_majorized(&x, &y).unwrap());
        assert!(!is_weakly_majorized(&y, &x).unwrap());
        assert!(is_weakly_majorized(&x, &rv(&[1.0])).is_err());
    }

    #[test]
    fn stochasticity_predicates() {
        let id = SquareMatrix::identity(3).unwrap();
        assert!(is_substochastic(&id));
        assert!(is_doubly_stochastic(&id));
        let double = id.scale(2.0);
        assert!(!is_substochastic(&double));
        assert!(!is_doubly_stochastic(&double));
    }

    #[test]
    fn extreme_point_counts() {
        let pts = kfan_dual_extreme_points(2, 1).unwrap();
        assert_eq!(pts.len(), 4);
        let expected = [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]];
        for e in expected {
            assert!(pts.iter().any(|p| p.as_slice() == e));
        }
        assert_eq!(kfan_dual_extreme_points(2, 2).unwrap().len(), 4);
        assert_eq!(kfan_dual_extreme_points(3, 2).unwrap().len(), 12);
    }

    #[test]
    fn extreme_point_cap() {
        assert!(matches!(
            kfan_dual_extreme_points(30, 15),
            Err(Error::EnumerationCapExceeded { .. })
        ));
        assert!(matches!(
            kfan_dual_extreme_points_with_cap(3, 2, 5),
            Err(Error::EnumerationCapExceeded {
                required: 12,
                cap: 5
            })
        ));
    }

    fn check_decomposition(v: &RealVector, k: usize) {
        let terms = decompose_in_dual_ball(v, k).unwrap();
        let mut weight_sum = 0.0;
        let mut recon = vec![0.0f64; v.len()];
        for (weight, point) in &terms {
            assert!((0.0..=1.0 + 1e-12).contains(weight), "weight {weight}");
            // Each point is a sign pattern on exactly k coordinates.
            let nonzero = point.iter().filter(|e| **e != 0.0).count();
            assert_eq!(nonzero, k);
            assert!(point.iter().all(|e| *e == 0.0 || e.abs() == 1.0));
            weight_sum += weight;
            for (r, p) in recon.iter_mut().zip(point.iter()) {
                *r += weight * p;
            }
        }
        assert!(
            (weight_sum - 1.0).abs() < 1e-12,
            "weights sum to {weight_sum}"
        );
        for (r, e) in recon.iter().zip(v.iter()) {
            assert!((r - e).abs() < 1e-10, "reconstruction {r} vs {e}");
        }
    }

    #[test]
    fn decompose_extreme_point_is_fixed() {
        let v = rv(&[1.0, -1.0, 0.0]);
        let terms = decompose_in_dual_ball(&v, 2).unwrap();
        assert_eq!(terms.len(), 1);
        assert!((terms[0].0 - 1.0).abs() < 1e-15);
        assert_eq!(terms[0].1, v);
    }

    #[test]
    fn decompose_zero_vector() {
        let v = rv(&[0.0, 0.0, 0.0]);
        let terms = decompose_in_dual_ball(&v, 2).unwrap();
        assert_eq!(terms.len(), 2);
        assert!((terms[0].0 - 0.5).abs() < 1e-15);
        assert!((terms[1].0 - 0.5).abs() < 1e-15);
        check_decomposition(&v, 2);
    }

    #[test]
    fn decompose_worked_examples() {
        check_decomposition(&rv(&[1.0, 0.5, 0.5]), 2);
        // Boundary case where the full-modulus peel would leave the ball.
        check_decomposition(&rv(&[0.9, 0.9, 0.2]), 2);
        check_decomposition(&rv(&[0.3, -0.2, 0.1, 0.05]), 2);
        check_decomposition(&rv(&[0.5, -0.5, 0.5, -0.5]), 4);
    }


    #[test]
    fn decompose_tolerates_boundary_roundoff() {
        // Points sitting a hair outside the exact ball (within the 1e-12
        // acceptance) still decompose and reconstruct.
        let bump = 1.0 + 9e-13;
        let scaled_vertex = rv(&[bump, -bump, 0.0]);
        check_decomposition_loose(&scaled_vertex, 2);
        let scaled_mix = rv(&[bump, 0.5 * bump, 0.5 * bump]);
        check_decomposition_loose(&scaled_mix, 2);
    }

    fn check_decomposition_loose(v: &RealVector, k: usize) {
        let terms = decompose_in_dual_ball(v, k).unwrap();
        let mut recon = vec![0.0f64; v.len()];
        let mut weight_sum = 0.0;
        for (w, p) in &terms {
            assert!((0.0..=1.0 + 1e-12).contains(w));
            weight_sum += w;
            for (acc, e) in recon.iter_mut().zip(p.iter()) {
                *acc += w * e;
            }
        }
        assert!((weight_sum - 1.0).abs() < 1e-12);
        for (r, e) in recon.iter().zip(v.iter()) {
            assert!((r - e).abs() < 1e-10, "{r} vs {e}");
        }
    }

    #[test]
    fn decompose_rejects_outside_ball() {
        assert!(matches!(
            decompose_in_dual_ball(&rv(&[2.0, 0.0]), 1),
            Err(Error::NotInDualBall { .. })
        ));
        assert!(matches!(
            decompose_in_dual_ball(&rv(&[1.0, 1.0]), 3),
            Err(Error::KyFanOutOfRange { .. })
        ));
    }

    #[test]
    fn spec_text_syntax_roundtrip() {
        for text in ["p=2", "p=inf", "p=1.5", "kfan=3", "sumaug"] {
            let spec: NormSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!("q=2".parse::<NormSpec>().is_err());
        assert!("p=0.3".parse::<NormSpec>().is_err());
        assert!("kfan=0".parse::<NormSpec>().is_err());
        assert!("kfan=x".parse::<NormSpec>().is_err());
    }

    #[test]
    fn sum_augmented_is_not_sign_invariant() {
        let plus = rv(&[1.0, 1.0]);
        let mixed = rv(&[1.0, -1.0]);
        let n_plus = NormSpec::SumAugmented.eval(&plus).unwrap();
        let n_mixed = NormSpec::SumAugmented.eval(&mixed).unwrap();
        assert!((n_plus - n_mixed).abs() > 1.0);
    }
}
