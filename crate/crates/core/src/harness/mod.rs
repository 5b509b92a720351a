//! Inequality verifiers, counterexample reproduction and randomized search.
//!
//! Every verifier evaluates one inequality instance into a [`SlackRecord`]
//! with `slack = rhs - lhs`, so nonnegative slack means the inequality
//! holds. [`search`](crate::harness::search()) runs seeded trials of a
//! verifier and aggregates them into a [`Report`]; trial `t` draws its
//! inputs from a generator seeded with `seed + t`, which makes every trial
//! individually replayable.

mod identities;
mod record;
mod reproduce;
pub mod sampler;
mod search;

pub use identities::identities_suite;
pub use record::{Report, ReportParams, SlackRecord, TrialInputs};
pub use reproduce::{reproduce, REPRODUCE_CASES};
pub use search::{
    finish_search, run_trial, search, search_range, SearchConfig, SearchPartial, SearchTarget,
};

use alloc::string::ToString;

use crate::calculus::{act, grad, partial_seminorm};
use crate::linalg::{check_dims, RealVector};
use crate::norms::NormSpec;
use crate::operators::{i_matrix, Laplacian};
use crate::{Error, Result};

/// Default slack tolerance: slacks above `-1e-9` count as holding.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Default lower bound on |entries| for inputs that get inverted.
pub const DEFAULT_MIN_ABS: f64 = 1e-3;

/// Leibniz slack of a symmetric norm on centered vectors:
/// `||g||_inf ||f - Ef|| + ||f||_inf ||g - Eg|| - ||fg - E(fg)||`
/// with the uniform-measure mean.
pub fn leibniz_slack(spec: &NormSpec, f: &RealVector, g: &RealVector) -> Result<SlackRecord> {
    if !spec.is_symmetric() {
        return Err(Error::UnsupportedSpec {
            spec: spec.to_string(),
            op: "leibniz_slack",
        });
    }
    leibniz_slack_any(spec, f, g, "leibniz")
}

/// Same slack for a permutation-invariant (possibly sign-sensitive) norm on
/// entrywise-nonnegative inputs.
pub fn perm_inv_leibniz_slack(
    spec: &NormSpec,
    f: &RealVector,
    g: &RealVector,
) -> Result<SlackRecord> {
    for (i, &e) in f.iter().enumerate() {
        if e < 0.0 {
            return Err(Error::NegativeEntry { index: i, value: e });
        }
    }
    for (i, &e) in g.iter().enumerate() {
        if e < 0.0 {
            return Err(Error::NegativeEntry { index: i, value: e });
        }
    }
    leibniz_slack_any(spec, f, g, "perm-inv-leibniz")
}

fn leibniz_slack_any(
    spec: &NormSpec,
    f: &RealVector,
    g: &RealVector,
    case: &str,
) -> Result<SlackRecord> {
    check_dims(f.len(), g.len())?;
    let fg = f.pointwise_mul(g)?;
    let lhs = spec.eval(&fg.centered())?;
    let rhs = g.max_abs() * spec.eval(&f.centered())? + f.max_abs() * spec.eval(&g.centered())?;
    let inputs = TrialInputs {
        f: Some(f.clone()),
        g: Some(g.clone()),
        spec: Some(*spec),
        ..TrialInputs::default()
    };
    Ok(SlackRecord::new(case, lhs, rhs, DEFAULT_TOLERANCE).with_inputs(inputs))
}

/// Contraction slack of `I_{f+1}` on a mean-zero vector:
/// `||x|| - ||I_{f+1} x||` for `f` in `[-1,1]^n`.
pub fn contraction_slack(spec: &NormSpec, f: &RealVector, x: &RealVector) -> Result<SlackRecord> {
    if !spec.is_symmetric() {
        return Err(Error::UnsupportedSpec {
            spec: spec.to_string(),
            op: "contraction_slack",
        });
    }
    check_dims(f.len(), x.len())?;
    if f.max_abs() > 1.0 + 1e-12 {
        return Err(Error::Precondition {
            what: "f must lie in [-1,1]^n",
        });
    }
    if x.sum().abs() >= 1e-10 {
        return Err(Error::Precondition {
            what: "x must have zero sum",
        });
    }
    let ones = RealVector::ones(f.len())?;
    let mat = i_matrix(&f.add(&ones)?);
    let lhs = spec.eval(&mat.mul_vec(x)?)?;
    let rhs = spec.eval(x)?;
    let inputs = TrialInputs {
        f: Some(f.clone()),
        x: Some(x.clone()),
        spec: Some(*spec),
        ..TrialInputs::default()
    };
    Ok(SlackRecord::new("contraction", lhs, rhs, DEFAULT_TOLERANCE).with_inputs(inputs))
}

/// Module-property slack of the gradient seminorm: the bound
/// `||g||_inf ||grad f||` against the seminorm of the worse of the two
/// one-sided products `grad(f) . g` and `g . grad(f)`.
pub fn module_slack(spec: &NormSpec, f: &RealVector, g: &RealVector) -> Result<SlackRecord> {
    check_dims(f.len(), g.len())?;
    let ones = RealVector::ones(f.len())?;
    let gf = grad(f);
    let base = partial_seminorm(&gf, spec)?;
    let right = partial_seminorm(&act(&ones, &gf, g)?, spec)?;
    let left = partial_seminorm(&act(g, &gf, &ones)?, spec)?;
    let lhs = right.max(left);
    let rhs = g.max_abs() * base;
    let inputs = TrialInputs {
        f: Some(f.clone()),
        g: Some(g.clone()),
        spec: Some(*spec),
        ..TrialInputs::default()
    };
    Ok(SlackRecord::new("module", lhs, rhs, DEFAULT_TOLERANCE).with_inputs(inputs))
}

/// Bimodule slack: `||f||_inf ||h||_inf ||grad g|| - ||f (grad g) h||`.
///
/// May be negative; the seminorm is not a normed-bimodule norm in general.
pub fn bimodule_slack(
    spec: &NormSpec,
    f: &RealVector,
    g: &RealVector,
    h: &RealVector,
) -> Result<SlackRecord> {
    check_dims(f.len(), g.len())?;
    check_dims(f.len(), h.len())?;
    let gg = grad(g);
    let lhs = partial_seminorm(&act(f, &gg, h)?, spec)?;
    let rhs = f.max_abs() * h.max_abs() * partial_seminorm(&gg, spec)?;
    let inputs = TrialInputs {
        f: Some(f.clone()),
        g: Some(g.clone()),
        h: Some(h.clone()),
        spec: Some(*spec),
        ..TrialInputs::default()
    };
    Ok(SlackRecord::new("bimodule", lhs, rhs, DEFAULT_TOLERANCE).with_inputs(inputs))
}

/// Variant of [`bimodule_slack`] that bounds by the sup norms of `f` and
/// the differentiated argument `g` instead of the acting pair `(f, h)`.
/// Recorded for comparison; no sign is asserted anywhere.
pub fn bimodule_alt_slack(
    spec: &NormSpec,
    f: &RealVector,
    g: &RealVector,
    h: &RealVector,
) -> Result<SlackRecord> {
    check_dims(f.len(), g.len())?;
    check_dims(f.len(), h.len())?;
    let gg = grad(g);
    let lhs = partial_seminorm(&act(f, &gg, h)?, spec)?;
    let rhs = f.max_abs() * g.max_abs() * partial_seminorm(&gg, spec)?;
    let inputs = TrialInputs {
        f: Some(f.clone()),
        g: Some(g.clone()),
        h: Some(h.clone()),
        spec: Some(*spec),
        ..TrialInputs::default()
    };
    Ok(SlackRecord::new("bimodule-alt", lhs, rhs, DEFAULT_TOLERANCE).with_inputs(inputs))
}

/// The seminorm whose strong-Leibniz property is being probed.
#[derive(Debug, Clone, Copy)]
pub enum StrongLeibnizSeminorm<'a> {
    /// `L(f) = ||f - Ef||` in the given norm.
    Centered(&'a NormSpec),
    /// `L(f) = ||delta f||` in the given norm.
    LaplacianNorm(&'a Laplacian, &'a NormSpec),
}

impl StrongLeibnizSeminorm<'_> {
    fn eval(&self, f: &RealVector) -> Result<f64> {
        match self {
            StrongLeibnizSeminorm::Centered(spec) => spec.eval(&f.centered()),
            StrongLeibnizSeminorm::LaplacianNorm(delta, spec) => spec.eval(&delta.apply(f)?),
        }
    }
}

/// Strong-Leibniz slack `||1/f||_inf^2 L(f) - L(1/f)` for invertible `f`.
///
/// Entries with modulus below `min_abs` are rejected so `1/f` stays
/// well-conditioned.
pub fn strong_leibniz_slack(
    seminorm: &StrongLeibnizSeminorm<'_>,
    f: &RealVector,
    min_abs: f64,
) -> Result<SlackRecord> {
    let inv = f.try_reciprocal(min_abs)?;
    let lf = seminorm.eval(f)?;
    let linv = seminorm.eval(&inv)?;
    let sup_inv = inv.max_abs();
    let lhs = linv;
    let rhs = sup_inv * sup_inv * lf;
    let spec = match seminorm {
        StrongLeibnizSeminorm::Centered(spec) => **spec,
        StrongLeibnizSeminorm::LaplacianNorm(_, spec) => **spec,
    };
    let inputs = TrialInputs {
        f: Some(f.clone()),
        spec: Some(spec),
        laplacian: match seminorm {
            StrongLeibnizSeminorm::LaplacianNorm(delta, _) => Some(delta.matrix().clone()),
            StrongLeibnizSeminorm::Centered(_) => None,
        },
        ..TrialInputs::default()
    };
    Ok(SlackRecord::new("strong-leibniz", lhs, rhs, DEFAULT_TOLERANCE).with_inputs(inputs))
}

/// Leibniz-type slack for the seminorm `f -> ||delta f||`:
/// `||f||_inf ||delta g|| + ||g||_inf ||delta f|| - ||delta(fg)||`.
///
/// Whether this is nonnegative for every Laplacian is open; the record is
/// reported, never asserted.
pub fn kato_ponce_slack(
    delta: &Laplacian,
    spec: &NormSpec,
    f: &RealVector,
    g: &RealVector,
) -> Result<SlackRecord> {
    check_dims(delta.dim(), f.len())?;
    check_dims(delta.dim(), g.len())?;
    let fg = f.pointwise_mul(g)?;
    let lhs = spec.eval(&delta.apply(&fg)?)?;
    let rhs =
        f.max_abs() * spec.eval(&delta.apply(g)?)? + g.max_abs() * spec.eval(&delta.apply(f)?)?;
    let inputs = TrialInputs {
        f: Some(f.clone()),
        g: Some(g.clone()),
        spec: Some(*spec),
        laplacian: Some(delta.matrix().clone()),
        ..TrialInputs::default()
    };
    Ok(SlackRecord::new("kato-ponce", lhs, rhs, DEFAULT_TOLERANCE).with_inputs(inputs))
}
