use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::linalg::{RealVector, SquareMatrix};
use crate::norms::{Exponent, NormSpec};
use crate::probability::DiscreteMeasure;

/// The inputs of one inequality evaluation, kept so the slack can be
/// recomputed and any trial replayed.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrialInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<RealVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<RealVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<RealVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<RealVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<DiscreteMeasure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Exponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<NormSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub laplacian: Option<SquareMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial_seed: Option<u64>,
}

/// Outcome of one inequality evaluation; `slack = rhs - lhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlackRecord {
    pub case_name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inputs: Option<TrialInputs>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
}

impl SlackRecord {
    /// Record for a one-sided inequality `lhs <= rhs`; holds when the slack
    /// is above `-tolerance`.
    pub fn new(case_name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let slack = rhs - lhs;
        Self {
            case_name: case_name.into(),
            lhs,
            rhs,
            slack,
            holds: slack >= -tolerance,
            inputs: None,
            seed: None,
            trial: None,
        }
    }

    /// Record for a two-sided match of a computed value (`lhs`) against a
    /// stored expected value (`rhs`); holds when they agree within
    /// `tolerance`.
    pub fn exact_match(
        case_name: impl Into<String>,
        computed: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        let slack = expected - computed;
        Self {
            case_name: case_name.into(),
            lhs: computed,
            rhs: expected,
            slack,
            holds: slack.abs() <= tolerance,
            inputs: None,
            seed: None,
            trial: None,
        }
    }

    pub fn with_inputs(mut self, inputs: TrialInputs) -> Self {
        self.inputs = Some(inputs);
        self
    }

    /// Copy without the (potentially large) inputs payload.
    pub fn without_inputs(&self) -> Self {
        Self {
            inputs: None,
            ..self.clone()
        }
    }
}

/// Parameters a report was produced with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub target: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Exponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_abs: Option<f64>,
}

/// Aggregated outcome of a suite, search or reproduction run.
///
/// `violations` counts trials with `slack < -tolerance`; `marginal` counts
/// slacks in `[-tolerance, 0)`, separating roundoff from discovery. Any
/// trial can be replayed by seeding the sampler with `seed + trial`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub case: String,
    pub params: ReportParams,
    pub trials: u64,
    pub violations: u64,
    pub marginal: u64,
    pub min_slack: f64,
    pub argmin_inputs: Option<TrialInputs>,
    pub seed: u64,
    pub tolerance: f64,
    pub runtime_ms: u64,
    pub tool_version: String,
    /// Present on reproduction reports: whether every computed value
    /// matched its stored expectation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    /// Per-trial records (light, without inputs); not part of the JSON
    /// schema, used for CSV emission.
    #[serde(skip)]
    pub records: Vec<SlackRecord>,
}

impl Report {
    /// The seed that replays a given trial of this report.
    pub fn replay_seed(&self, trial: u64) -> u64 {
        self.seed.wrapping_add(trial)
    }

    /// True when no violation was recorded.
    pub fn clean(&self) -> bool {
        self.violations == 0 && self.holds.unwrap_or(true)
    }
}
