//! Experiment configuration: a TOML document with an experiment kind, a seed,
//! and a parameter table. Unused parameters are ignored by each experiment;
//! missing ones fall back to the experiment's defaults.

use gaudin_core::fuchs::FuchsOp;
use gaudin_core::rings::Rat;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    DiagramSelftest,
    Commute,
    NewtonVsCdet,
    DeligneVsMatrix,
    MonodromyEquivalence,
    StabilizedIdeal,
    RatioCheck,
    BetheSpectrum,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::DiagramSelftest => "diagram-selftest",
            ExperimentKind::Commute => "commute",
            ExperimentKind::NewtonVsCdet => "newton-vs-cdet",
            ExperimentKind::DeligneVsMatrix => "deligne-vs-matrix",
            ExperimentKind::MonodromyEquivalence => "monodromy-equivalence",
            ExperimentKind::StabilizedIdeal => "stabilized-ideal",
            ExperimentKind::RatioCheck => "ratio-check",
            ExperimentKind::BetheSpectrum => "bethe-spectrum",
        }
    }
}

/// One side of a bipartition in the TOML form `{ left = [2,1] }` or
/// `{ right = [1] }`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct BipartitionSpec {
    #[serde(default)]
    pub left: Vec<u32>,
    #[serde(default)]
    pub right: Vec<u32>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Pole positions as rational strings.
    #[serde(default)]
    pub z: Vec<Rat>,
    /// Ranks to exercise.
    #[serde(default)]
    pub ranks: Vec<usize>,
    /// Highest trace power.
    #[serde(default)]
    pub k_max: Option<usize>,
    /// Sample count for randomized experiments.
    #[serde(default)]
    pub count: Option<usize>,
    /// Truncation depth for the pseudo-differential calculus.
    #[serde(default)]
    pub depth: Option<usize>,
    /// Strand bound for the diagram selftest.
    #[serde(default)]
    pub max_strands: Option<usize>,
    /// Per-point weights (matrix-side experiments).
    #[serde(default)]
    pub weights: Vec<Vec<i64>>,
    /// Per-point one-sided bipartitions (diagram-side experiments).
    #[serde(default)]
    pub bipartitions: Vec<BipartitionSpec>,
    /// Ratio data: weights of the two factors.
    #[serde(default)]
    pub nu: Vec<Vec<i64>>,
    #[serde(default)]
    pub eta: Vec<Vec<i64>>,
    /// Explicit operators (otherwise built-in constructions are used).
    #[serde(default)]
    pub numerator: Option<FuchsOp<Rat>>,
    #[serde(default)]
    pub denominator: Option<FuchsOp<Rat>>,
    /// Decimal digits for reported spectra and residuals.
    #[serde(default)]
    pub precision_digits: Option<usize>,
    /// Tolerance exponent: residuals must be below `10^-tolerance_exp`.
    #[serde(default)]
    pub tolerance_exp: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub params: Params,
}

fn default_seed() -> u64 {
    42
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        let cfg: ExperimentConfig = toml::from_str(text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        for (i, a) in self.params.z.iter().enumerate() {
            for b in self.params.z.iter().skip(i + 1) {
                if a == b {
                    return Err(format!("pole positions must be distinct, found {a} twice"));
                }
            }
        }
        Ok(())
    }

    /// Built-in defaults, so every experiment runs without a config file.
    pub fn default_for(kind: ExperimentKind) -> Self {
        let mut params = Params::default();
        let z01 = vec![Rat::from(0), Rat::from(1)];
        match kind {
            ExperimentKind::DiagramSelftest => {
                params.max_strands = Some(4);
                params.count = Some(200);
                params.ranks = vec![2, 3];
            }
            ExperimentKind::Commute => {
                params.z = z01;
                params.k_max = Some(3);
                params.weights = vec![vec![1, 0], vec![1, 0]];
            }
            ExperimentKind::NewtonVsCdet => {
                params.z = z01;
                params.weights = vec![vec![1, 0], vec![1, 0]];
            }
            ExperimentKind::DeligneVsMatrix => {
                params.z = z01;
                params.k_max = Some(2);
                params.ranks = vec![2, 3];
                params.bipartitions = vec![
                    BipartitionSpec {
                        left: vec![1],
                        right: vec![],
                    },
                    BipartitionSpec {
                        left: vec![],
                        right: vec![1],
                    },
                ];
            }
            ExperimentKind::MonodromyEquivalence => {
                params.count = Some(100);
            }
            ExperimentKind::StabilizedIdeal => {
                params.z = z01;
                params.ranks = vec![2, 3];
                params.bipartitions = vec![
                    BipartitionSpec {
                        left: vec![1],
                        right: vec![],
                    },
                    BipartitionSpec {
                        left: vec![],
                        right: vec![1],
                    },
                ];
            }
            ExperimentKind::RatioCheck => {
                params.z = z01;
                params.depth = Some(8);
                params.nu = vec![vec![2, 1], vec![1, 0]];
                params.eta = vec![vec![-1], vec![0]];
                params.count = Some(25);
            }
            ExperimentKind::BetheSpectrum => {
                params.z = z01;
                params.weights = vec![vec![1, 0], vec![1, 0]];
                params.precision_digits = Some(50);
                params.tolerance_exp = Some(9);
            }
        }
        ExperimentConfig {
            experiment: kind,
            seed: default_seed(),
            params,
        }
    }
}

pub fn bipartitions_from_specs(
    specs: &[BipartitionSpec],
) -> Result<Vec<gaudin_core::diagram::Bipartition>, String> {
    use gaudin_core::diagram::{Bipartition, Partition};
    specs
        .iter()
        .map(|s| {
            Bipartition::new(
                Partition::new(s.left.clone()),
                Partition::new(s.right.clone()),
            )
            .map_err(|e| e.to_string())
        })
        .collect()
}
