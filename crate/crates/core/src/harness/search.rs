use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::str::FromStr;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::record::{Report, ReportParams, SlackRecord, TrialInputs};
use super::sampler;
use super::{
    bimodule_slack, contraction_slack, kato_ponce_slack, leibniz_slack, module_slack,
    perm_inv_leibniz_slack, strong_leibniz_slack, StrongLeibnizSeminorm, DEFAULT_MIN_ABS,
    DEFAULT_TOLERANCE,
};
use crate::norms::{Exponent, NormSpec};
use crate::probability::weighted_leibniz_slack;
use crate::{Error, Result};

/// Which inequality a randomized run draws inputs for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SearchTarget {
    Leibniz,
    PermInvLeibniz,
    Contraction,
    Module,
    Bimodule,
    StrongLeibniz,
    KatoPonce,
    WeightedLeibniz,
}

impl SearchTarget {
    pub const ALL: [SearchTarget; 8] = [
        SearchTarget::Leibniz,
        SearchTarget::PermInvLeibniz,
        SearchTarget::Contraction,
        SearchTarget::Module,
        SearchTarget::Bimodule,
        SearchTarget::StrongLeibniz,
        SearchTarget::KatoPonce,
        SearchTarget::WeightedLeibniz,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SearchTarget::Leibniz => "leibniz",
            SearchTarget::PermInvLeibniz => "perm-inv-leibniz",
            SearchTarget::Contraction => "contraction",
            SearchTarget::Module => "module",
            SearchTarget::Bimodule => "bimodule",
            SearchTarget::StrongLeibniz => "strong-leibniz",
            SearchTarget::KatoPonce => "kato-ponce",
            SearchTarget::WeightedLeibniz => "weighted-leibniz",
        }
    }
}

impl fmt::Display for SearchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SearchTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        SearchTarget::ALL
            .iter()
            .find(|target| target.name() == t)
            .copied()
            .ok_or(Error::UnknownCase {
                name: t.to_string(),
            })
    }
}

impl TryFrom<String> for SearchTarget {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SearchTarget> for String {
    fn from(t: SearchTarget) -> String {
        t.name().to_string()
    }
}

/// Configuration of a randomized run; fully determines its outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub target: SearchTarget,
    /// Dimension of the sampled vectors.
    pub n: usize,
    /// Norm the slack is evaluated in (ignored by `weighted-leibniz`).
    pub spec: NormSpec,
    /// Fixed moment exponent for `weighted-leibniz`; when absent each trial
    /// draws one from `{1, 1.5, 2, 3, inf}`.
    pub p: Option<Exponent>,
    /// Lower bound on |entries| for inputs that get inverted.
    pub min_abs: f64,
    /// Fixed Laplacian for `kato-ponce`; when absent each trial samples a
    /// random connected-graph Laplacian.
    pub laplacian: Option<crate::operators::Laplacian>,
    pub trials: u64,
    pub seed: u64,
    /// Slacks below `-tolerance` count as violations.
    pub tolerance: f64,
}

impl SearchConfig {
    pub fn new(target: SearchTarget, n: usize) -> Self {
        Self {
            target,
            n,
            spec: NormSpec::P(Exponent::Finite(2.0)),
            p: None,
            min_abs: DEFAULT_MIN_ABS,
            laplacian: None,
            trials: 1000,
            seed: 0,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_spec(mut self, spec: NormSpec) -> Self {
        self.spec = spec;
        self
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::ZeroTrials);
        }
        if self.n < 2 {
            return Err(Error::DegenerateDimension { n: self.n, min: 2 });
        }
        self.spec.validate_for_dim(self.n)?;
        if let Some(Exponent::Finite(p)) = self.p {
            if !(p.is_finite() && p >= 1.0) {
                return Err(Error::BadExponent { p });
            }
        }
        if let Some(delta) = &self.laplacian {
            if delta.dim() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    got: delta.dim(),
                });
            }
        }
        Ok(())
    }

    fn params(&self) -> ReportParams {
        ReportParams {
            target: self.target.to_string(),
            n: self.n,
            norm: match self.target {
                SearchTarget::WeightedLeibniz => None,
                _ => Some(self.spec),
            },
            p: match self.target {
                SearchTarget::WeightedLeibniz => self.p,
                _ => None,
            },
            min_abs: match self.target {
                SearchTarget::StrongLeibniz => Some(self.min_abs),
                _ => None,
            },
        }
    }
}

/// Run a single trial: draw inputs from the generator seeded with
/// `seed + trial` and evaluate the target slack.
pub fn run_trial(config: &SearchConfig, trial: u64) -> Result<SlackRecord> {
    let n = config.n;
    let spec = &config.spec;
    let mut rng = sampler::trial_rng(config.seed, trial);
    let mut record = match config.target {
        SearchTarget::Leibniz => {
            let f = sampler::uniform_vector(&mut rng, n, -1.0, 1.0);
            let g = sampler::uniform_vector(&mut rng, n, -1.0, 1.0);
            leibniz_slack(spec, &f, &g)?
        }
        SearchTarget::PermInvLeibniz => {
            let f = sampler::uniform_vector(&mut rng, n, 0.0, 1.0);
            let g = sampler::uniform_vector(&mut rng, n, 0.0, 1.0);
            perm_inv_leibniz_slack(spec, &f, &g)?
        }
        SearchTarget::Contraction => {
            let f = sampler::uniform_vector(&mut rng, n, -1.0, 1.0);
            let x = sampler::centered_vector(&mut rng, n);
            contraction_slack(spec, &f, &x)?
        }
        SearchTarget::Module => {
            let f = sampler::uniform_vector(&mut rng, n, -1.0, 1.0);
            let g = sampler::uniform_vector(&mut rng, n, -1.0, 1.0);
            module_slack(spec, &f, &g)?
        }
        SearchTarget::Bimodule => {
            // Uniform draws essentially never hit the thin failure cone of
            // the bimodule bound, so half the trials draw sign-pattern
            // actors and a sparse middle argument instead.
            let (f, g, h) = if rng.gen_bool(0.5) {
                (
                    sampler::sign_vector(&mut rng, n),
                    sampler::sparse_vector(&mut rng, n),
                    sampler::sign_vector(&mut rng, n),
                )
            } else {
                (
                    sampler::uniform_vector(&mut rng, n, -1.0, 1.0),
                    sampler::uniform_vector(&mut rng, n, -1.0, 1.0),
                    sampler::uniform_vector(&mut rng, n, -1.0, 1.0),
                )
            };
            bimodule_slack(spec, &f, &g, &h)?
        }
        SearchTarget::StrongLeibniz => {
            let f = sampler::invertible_vector(&mut rng, n, config.min_abs);
            strong_leibniz_slack(&StrongLeibnizSeminorm::Centered(spec), &f, config.min_abs)?
        }
        SearchTarget::KatoPonce => {
            let delta = match &config.laplacian {
                Some(delta) => delta.clone(),
                None => sampler::connected_laplacian(&mut rng, n)?,
            };
            let f = sampler::uniform_vector(&mut rng, n, -1.0, 1.0);
            let g = sampler::uniform_vector(&mut rng, n, -1.0, 1.0);
            kato_ponce_slack(&delta, spec, &f, &g)?
        }
        SearchTarget::WeightedLeibniz => {
            let f = sampler::uniform_vector(&mut rng, n, -1.0, 1.0);
            let g = sampler::uniform_vector(&mut rng, n, -1.0, 1.0);
            let mu = sampler::positive_measure(&mut rng, n);
            let p = config
                .p
                .unwrap_or_else(|| sampler::exponent_choice(&mut rng));
            weighted_leibniz_slack(&f, &g, &mu, p)?
        }
    };
    record.holds = record.slack >= -config.tolerance;
    record.trial = Some(trial);
    record.seed = Some(config.seed.wrapping_add(trial));
    if let Some(inputs) = record.inputs.as_mut() {
        inputs.trial = Some(trial);
        inputs.trial_seed = Some(config.seed.wrapping_add(trial));
    }
    Ok(record)
}

/// Partial aggregation of a contiguous range of trials.
///
/// Merging partials in trial order reproduces the sequential result
/// exactly: the min/argmin reduction is associative and ties break toward
/// the lower trial index.
#[derive(Debug, Clone)]
pub struct SearchPartial {
    pub records: Vec<SlackRecord>,
    pub violations: u64,
    pub marginal: u64,
    pub min_slack: f64,
    pub argmin: Option<(u64, TrialInputs)>,
}

impl SearchPartial {
    fn empty() -> Self {
        Self {
            records: Vec::new(),
            violations: 0,
            marginal: 0,
            min_slack: f64::INFINITY,
            argmin: None,
        }
    }

    /// Merge two partials, `self` covering the lower trial range.
    pub fn merge(mut self, mut later: SearchPartial) -> SearchPartial {
        self.records.append(&mut later.records);
        self.violations += later.violations;
        self.marginal += later.marginal;
        // Strict comparison keeps the earlier trial on ties.
        if later.min_slack < self.min_slack {
            self.min_slack = later.min_slack;
            self.argmin = later.argmin;
        }
        self
    }
}

/// Run a contiguous range of trials of the configured search.
pub fn search_range(config: &SearchConfig, range: Range<u64>) -> Result<SearchPartial> {
    config.validate()?;
    let mut partial = SearchPartial::empty();
    partial
        .records
        .reserve(range.end.saturating_sub(range.start) as usize);
    for trial in range {
        let record = run_trial(config, trial)?;
        if record.slack < -config.tolerance {
            partial.violations += 1;
        } else if record.slack < 0.0 {
            partial.marginal += 1;
        }
        if record.slack < partial.min_slack {
            partial.min_slack = record.slack;
            partial.argmin = record.inputs.clone().map(|inputs| (trial, inputs));
        }
        partial.records.push(record.without_inputs());
    }
    Ok(partial)
}

/// Assemble a report from partials covering `0..trials` in order.
pub fn finish_search(config: &SearchConfig, partial: SearchPartial) -> Report {
    Report {
        case: config.target.to_string(),
        params: config.params(),
        trials: config.trials,
        violations: partial.violations,
        marginal: partial.marginal,
        min_slack: partial.min_slack,
        argmin_inputs: partial.argmin.map(|(_, inputs)| inputs),
        seed: config.seed,
        tolerance: config.tolerance,
        runtime_ms: 0,
        tool_version: String::new(),
        holds: None,
        records: partial.records,
    }
}

/// Run `config.trials` seeded trials and aggregate them.
///
/// Deterministic given the configuration: rerunning reproduces bit-equal
/// minima and argmin inputs.
pub fn search(config: &SearchConfig) -> Result<Report> {
    let partial = search_range(config, 0..config.trials)?;
    Ok(finish_search(config, partial))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn search_is_replay_deterministic() {
        let config = SearchConfig::new(SearchTarget::Leibniz, 5)
            .with_spec(NormSpec::P(Exponent::Finite(3.0)))
            .with_trials(500)
            .with_seed(424242);
        let a = search(&config).unwrap();
        let b = search(&config).unwrap();
        assert_eq!(a.min_slack.to_bits(), b.min_slack.to_bits());
        assert_eq!(a.argmin_inputs, b.argmin_inputs);
        assert_eq!(a.violations, b.violations);
        assert_eq!(a.records.len(), 500);
    }

    #[test]
    fn chunked_matches_sequential() {
        let config = SearchConfig::new(SearchTarget::Bimodule, 4)
            .with_spec(NormSpec::KyFan(2))
            .with_trials(300)
            .with_seed(7);
        let sequential = search(&config).unwrap();
        let chunks = [0..100u64, 100..250, 250..300];
        let merged = chunks
            .into_iter()
            .map(|r| search_range(&config, r).unwrap())
            .fold(None::<SearchPartial>, |acc, p| {
                Some(match acc {
                    None => p,
                    Some(prev) => prev.merge(p),
                })
            })
            .unwrap();
        let report = finish_search(&config, merged);
        assert_eq!(report.min_slack.to_bits(), sequential.min_slack.to_bits());
        assert_eq!(report.argmin_inputs, sequential.argmin_inputs);
        assert_eq!(report.violations, sequential.violations);
        assert_eq!(report.records, sequential.records);
    }

    #[test]
    fn argmin_trial_is_replayable() {
        let config = SearchConfig::new(SearchTarget::StrongLeibniz, 4)
            .with_spec(NormSpec::P(Exponent::Finite(2.0)))
            .with_trials(200)
            .with_seed(99);
        let report = search(&config).unwrap();
        let inputs = report.argmin_inputs.as_ref().unwrap();
        let trial = inputs.trial.unwrap();
        let replayed = run_trial(&config, trial).unwrap();
        assert_eq!(replayed.slack, report.min_slack);
        assert_eq!(replayed.inputs.as_ref().unwrap().f, inputs.f);
    }

    #[test]
    fn config_validation() {
        let mut config = SearchConfig::new(SearchTarget::Leibniz, 4);
        config.trials = 0;
        assert!(matches!(config.validate(), Err(Error::ZeroTrials)));
        let mut config = SearchConfig::new(SearchTarget::Leibniz, 1);
        config.trials = 10;
        assert!(matches!(
            config.validate(),
            Err(Error::DegenerateDimension { .. })
        ));
        let config = SearchConfig::new(SearchTarget::Leibniz, 3).with_spec(NormSpec::KyFan(9));
        assert!(matches!(
            config.validate(),
            Err(Error::KyFanOutOfRange { .. })
        ));
    }

    #[test]
    fn target_names_roundtrip() {
        for target in SearchTarget::ALL {
            let parsed: SearchTarget = target.name().parse().unwrap();
            assert_eq!(parsed, target);
        }
        assert!(matches!(
            "no-such-target".parse::<SearchTarget>(),
            Err(Error::UnknownCase { .. })
        ));
    }
}
