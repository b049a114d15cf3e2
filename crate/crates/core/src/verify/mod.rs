//! Randomized identity checking.
//!
//! Each checkable identity implements [`Identity`] and is registered by name
//! in an [`IdentityRegistry`]. [`run_identity`] runs the trials in parallel
//! and folds them into a [`VerifyReport`] in trial order, so reports are a
//! pure function of the configuration.

mod identities;
pub mod sampling;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactdet::LAPLACE_DEFAULT_MAX;
use crate::sympoly::NodeSet;

pub use identities::builtin_identities;
pub use sampling::{SampleError, Sampler};

/// Largest node count a verification run may request.
pub const MAX_NODES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("invalid verification settings: {0}")]
    InvalidConfig(String),
    #[error("{identity}: {source}")]
    Sample {
        identity: String,
        #[source]
        source: SampleError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    pub n_min: usize,
    pub n_max: usize,
    /// Coefficient bound `B` for random rationals.
    pub bound: i64,
    pub laplace_limit: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            trials: 100,
            seed: 0,
            n_min: 1,
            n_max: 8,
            bound: 50,
            laplace_limit: LAPLACE_DEFAULT_MAX,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.trials == 0 {
            return Err(VerifyError::InvalidConfig("trials must be at least 1".into()));
        }
        if self.n_min < 1 || self.n_max > MAX_NODES || self.n_min > self.n_max {
            return Err(VerifyError::InvalidConfig(format!(
                "node range {}..{} must lie within 1..{MAX_NODES}",
                self.n_min, self.n_max
            )));
        }
        if self.bound < 1 {
            return Err(VerifyError::InvalidConfig("coefficient bound must be at least 1".into()));
        }
        Ok(())
    }

    /// Intersects the requested range with what an identity supports. When
    /// they do not overlap, the identity's nearest supported size is used.
    pub fn window(&self, (lo, hi): (usize, usize)) -> (usize, usize) {
        let a = self.n_min.clamp(lo, hi);
        let b = self.n_max.clamp(a, hi);
        (a, b)
    }
}

pub enum Outcome {
    Pass,
    /// The offending input, as canonical rational strings.
    Fail(Vec<String>),
}

impl Outcome {
    pub fn check(holds: bool, input: &NodeSet) -> Outcome {
        if holds {
            Outcome::Pass
        } else {
            Outcome::Fail(input.to_strings())
        }
    }
}

pub struct TrialContext {
    pub sampler: Sampler,
    pub trial: u64,
    pub n_min: usize,
    pub n_max: usize,
    pub laplace_limit: usize,
}

impl TrialContext {
    pub fn size(&mut self) -> usize {
        self.sampler.size(self.n_min, self.n_max)
    }
}

pub trait Identity: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Inclusive range of node counts the identity is checked on.
    fn sizes(&self) -> (usize, usize) {
        (1, MAX_NODES)
    }

    fn run_trial(&self, ctx: &mut TrialContext) -> Result<Outcome, SampleError>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub identity: String,
    pub trials: usize,
    pub failures: usize,
    pub seed: u64,
    pub first_counterexample: Option<Vec<String>>,
    #[serde(skip)]
    pub elapsed_ms: u64,
}

#[derive(Serialize)]
struct ReportLine<'a> {
    #[serde(flatten)]
    report: &'a VerifyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// One JSON object on a single line. Timing is left out unless asked for,
    /// so that identical runs print identical bytes.
    pub fn to_json_line(&self, with_timing: bool) -> String {
        let line = ReportLine {
            report: self,
            elapsed_ms: with_timing.then_some(self.elapsed_ms),
        };
        serde_json::to_string(&line).expect("report serializes")
    }
}

pub struct IdentityRegistry {
    identities: Vec<Box<dyn Identity>>,
}

impl IdentityRegistry {
    pub fn empty() -> Self {
        IdentityRegistry { identities: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut registry = IdentityRegistry::empty();
        for identity in builtin_identities() {
            registry.register(identity);
        }
        registry
    }

    pub fn register(&mut self, identity: Box<dyn Identity>) {
        self.identities.retain(|i| i.name() != identity.name());
        self.identities.push(identity);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Identity> {
        self.identities.iter().find(|i| i.name() == name).map(|i| i.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.identities.iter().map(|i| i.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Identity> {
        self.identities.iter().map(|i| i.as_ref())
    }

    /// `"all"` or a comma-separated list of identity names.
    pub fn resolve(&self, suite: &str) -> Result<Vec<&dyn Identity>, VerifyError> {
        if suite.trim() == "all" {
            return Ok(self.iter().collect());
        }
        suite
            .split(',')
            .map(str::trim)
            .map(|name| self.get(name).ok_or_else(|| VerifyError::UnknownIdentity(name.to_string())))
            .collect()
    }
}

impl Default for IdentityRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

pub fn run_identity(identity: &dyn Identity, cfg: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    cfg.validate()?;
    let (n_min, n_max) = cfg.window(identity.sizes());
    let started = Instant::now();
    let outcomes: Vec<Result<Outcome, SampleError>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mut ctx = TrialContext {
                sampler: Sampler::for_trial(cfg.seed, identity.name(), trial, cfg.bound),
                trial,
                n_min,
                n_max,
                laplace_limit: cfg.laplace_limit,
            };
            identity.run_trial(&mut ctx)
        })
        .collect();

    let mut failures = 0;
    let mut first_counterexample = None;
    for outcome in outcomes {
        let outcome = outcome.map_err(|source| VerifyError::Sample {
            identity: identity.name().to_string(),
            source,
        })?;
        if let Outcome::Fail(input) = outcome {
            failures += 1;
            first_counterexample.get_or_insert(input);
        }
    }
    Ok(VerifyReport {
        identity: identity.name().to_string(),
        trials: cfg.trials,
        failures,
        seed: cfg.seed,
        first_counterexample,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

pub fn run_suite(registry: &IdentityRegistry, suite: &str, cfg: &VerifyConfig) -> Result<Vec<VerifyReport>, VerifyError> {
    cfg.validate()?;
    registry
        .resolve(suite)?
        .into_iter()
        .map(|identity| run_identity(identity, cfg))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    struct AlwaysFailsOnOddTrials;

    impl Identity for AlwaysFailsOnOddTrials {
        fn name(&self) -> &'static str {
            "odd"
        }

        fn description(&self) -> &'static str {
            "fails on odd trials"
        }

        fn run_trial(&self, ctx: &mut TrialContext) -> Result<Outcome, SampleError> {
            let ns = NodeSet::new(vec![Rational::from_integer(ctx.trial as i64)]).unwrap();
            Ok(Outcome::check(ctx.trial.is_multiple_of(2), &ns))
        }
    }

    #[test]
    fn first_counterexample_is_lowest_failing_trial() {
        let cfg = VerifyConfig { trials: 9, ..VerifyConfig::default() };
        let report = run_identity(&AlwaysFailsOnOddTrials, &cfg).unwrap();
        assert_eq!(report.failures, 4);
        assert_eq!(report.first_counterexample, Some(vec!["1".to_string()]));
        assert!(!report.passed());
    }

    #[test]
    fn json_line_shape() {
        let report = VerifyReport {
            identity: "theorem1".into(),
            trials: 3,
            failures: 0,
            seed: 42,
            first_counterexample: None,
            elapsed_ms: 17,
        };
        assert_eq!(
            report.to_json_line(false),
            r#"{"identity":"theorem1","trials":3,"failures":0,"seed":42,"first_counterexample":null}"#
        );
        assert!(report.to_json_line(true).ends_with(r#","elapsed_ms":17}"#));
    }

    #[test]
    fn config_validation() {
        let bad = [
            VerifyConfig { trials: 0, ..Default::default() },
            VerifyConfig { n_min: 0, ..Default::default() },
            VerifyConfig { n_max: 11, ..Default::default() },
            VerifyConfig { n_min: 5, n_max: 4, ..Default::default() },
            VerifyConfig { bound: 0, ..Default::default() },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(VerifyError::InvalidConfig(_))), "{cfg:?}");
        }
        assert!(VerifyConfig::default().validate().is_ok());
    }

    #[test]
    fn window_clamps_to_identity_sizes() {
        let cfg = VerifyConfig { n_min: 1, n_max: 10, ..Default::default() };
        assert_eq!(cfg.window((1, 6)), (1, 6));
        assert_eq!(cfg.window((2, 10)), (2, 10));
        let tiny = VerifyConfig { n_min: 1, n_max: 1, ..Default::default() };
        assert_eq!(tiny.window((2, 10)), (2, 2));
        let big = VerifyConfig { n_min: 9, n_max: 10, ..Default::default() };
        assert_eq!(big.window((1, 6)), (6, 6));
    }

    #[test]
    fn resolve_names() {
        let reg = IdentityRegistry::builtin();
        assert_eq!(reg.resolve("all").unwrap().len(), reg.names().len());
        let picked = reg.resolve("theorem1, corollary1").unwrap();
        assert_eq!(picked.iter().map(|i| i.name()).collect::<Vec<_>>(), vec!["theorem1", "corollary1"]);
        assert_eq!(
            reg.resolve("theorem1,nope").err(),
            Some(VerifyError::UnknownIdentity("nope".into()))
        );
    }

    #[test]
    fn every_builtin_identity_passes_small_runs() {
        let reg = IdentityRegistry::builtin();
        let cfg = VerifyConfig { trials: 12, seed: 3, n_max: 6, ..Default::default() };
        for report in run_suite(&reg, "all", &cfg).unwrap() {
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn distinct_sampling_failure_surfaces() {
        let reg = IdentityRegistry::builtin();
        let cfg = VerifyConfig { trials: 5, bound: 1, n_min: 5, n_max: 6, ..Default::default() };
        assert!(matches!(
            run_identity(reg.get("extension").unwrap(), &cfg),
            Err(VerifyError::Sample { .. })
        ));
    }
}
