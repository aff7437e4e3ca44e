use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::discretization::Strategy;
use crate::error::{Error, Result};
use crate::problems::ProblemId;

/// Experiment classes of the parameter table, plus `custom` for anything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentClass {
    Standard,
    LargeScale,
    ManyObjective,
    LargeScaleManyObjective,
    Custom,
}

impl ExperimentClass {
    pub const NAMED: [ExperimentClass; 4] = [
        ExperimentClass::Standard,
        ExperimentClass::LargeScale,
        ExperimentClass::ManyObjective,
        ExperimentClass::LargeScaleManyObjective,
    ];

    pub fn token(self) -> &'static str {
        match self {
            ExperimentClass::Standard => "standard",
            ExperimentClass::LargeScale => "large_scale",
            ExperimentClass::ManyObjective => "many_objective",
            ExperimentClass::LargeScaleManyObjective => "large_scale_many_objective",
            ExperimentClass::Custom => "custom",
        }
    }

    /// `(M, n)` pairs allowed by the class; empty for `custom`.
    pub fn instances(self) -> Vec<(usize, usize)> {
        match self {
            ExperimentClass::Standard => vec![(3, 7)],
            ExperimentClass::LargeScale => vec![(3, 1000)],
            ExperimentClass::ManyObjective => vec![(5, 9), (10, 14), (15, 19)],
            ExperimentClass::LargeScaleManyObjective => vec![(5, 1000), (10, 1000), (15, 1000)],
            ExperimentClass::Custom => Vec::new(),
        }
    }
}

impl fmt::Display for ExperimentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for ExperimentClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_lowercase().replace('-', "_");
        ExperimentClass::NAMED
            .into_iter()
            .chain([ExperimentClass::Custom])
            .find(|c| c.token() == wanted)
            .ok_or_else(|| Error::config("class", format!("unknown experiment class `{s}`")))
    }
}

/// One objective count with its variable count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Instance {
    pub objectives: usize,
    pub variables: usize,
}

/// A fully resolved batch: every `(problem, instance, algorithm, run)` is one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub class: ExperimentClass,
    pub problems: Vec<ProblemId>,
    pub instances: Vec<Instance>,
    pub algorithms: Vec<Strategy>,
    pub runs: usize,
    pub base_seed: u64,
    pub population_size: usize,
    pub max_generations: usize,
    pub output: PathBuf,
    /// Directory of cached reference sets (`<problem>_M<M>.csv`).
    #[serde(default)]
    pub refset_path: Option<PathBuf>,
    #[serde(default = "default_refset_size")]
    pub refset_size: usize,
}

fn default_refset_size() -> usize {
    10_000
}

impl ExperimentConfig {
    /// Defaults for a named class: all ten problems, all four algorithms,
    /// 30 runs, population 100, 200 generations.
    pub fn for_class(class: ExperimentClass) -> Self {
        Self {
            class,
            problems: ProblemId::ALL.to_vec(),
            instances: class
                .instances()
                .into_iter()
                .map(|(objectives, variables)| Instance {
                    objectives,
                    variables,
                })
                .collect(),
            algorithms: Strategy::ALL.to_vec(),
            runs: 30,
            base_seed: 0,
            population_size: 100,
            max_generations: 200,
            output: PathBuf::from("results"),
            refset_path: None,
            refset_size: default_refset_size(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.problems.is_empty() {
            return Err(Error::config("problems", "at least one problem is required"));
        }
        if self.algorithms.is_empty() {
            return Err(Error::config("algorithms", "at least one algorithm is required"));
        }
        if self.instances.is_empty() {
            return Err(Error::config("instances", "at least one (M, n) pair is required"));
        }
        if self.runs == 0 {
            return Err(Error::config("runs", "must be positive"));
        }
        if self.population_size < 2 || self.population_size % 2 != 0 {
            return Err(Error::config(
                "population_size",
                format!("{} must be a positive even number", self.population_size),
            ));
        }
        if self.refset_size == 0 {
            return Err(Error::config("refset_size", "must be positive"));
        }
        let allowed = self.class.instances();
        for inst in &self.instances {
            if self.class != ExperimentClass::Custom
                && !allowed.contains(&(inst.objectives, inst.variables))
            {
                return Err(Error::config(
                    "instances",
                    format!(
                        "M={} n={} is not part of class `{}` (use class `custom`)",
                        inst.objectives, inst.variables, self.class
                    ),
                ));
            }
            if inst.objectives < 2 {
                return Err(Error::config("objectives", "need at least two objectives"));
            }
            // Surface problem-level shape errors (n too small, ...) up front.
            for &p in &self.problems {
                crate::problems::ProblemSpec::new(p, inst.objectives, inst.variables)
                    .map_err(|e| Error::config("variables", e.to_string()))?;
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::config("config", e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }
}

/// Command-line style overrides. `None` / empty leaves the base value alone.
#[derive(Debug, Clone, Default)]
pub struct ConfigOverrides {
    pub class: Option<ExperimentClass>,
    pub problems: Vec<ProblemId>,
    pub objectives: Vec<usize>,
    pub variables: Vec<usize>,
    pub algorithms: Vec<Strategy>,
    pub runs: Option<usize>,
    pub base_seed: Option<u64>,
    pub population_size: Option<usize>,
    pub max_generations: Option<usize>,
    pub output: Option<PathBuf>,
    pub refset_path: Option<PathBuf>,
}

/// Resolves a config from an optional file plus overrides.
///
/// Without a file the class defaults apply (class `large_scale` if none is
/// given). Objective counts pick pairs out of the class table; explicit
/// variable counts must then agree with it unless the class is `custom`.
pub fn load_config(path: Option<&Path>, overrides: &ConfigOverrides) -> Result<ExperimentConfig> {
    let mut cfg = match (path, overrides.class) {
        (Some(p), _) => ExperimentConfig::load(p)?,
        (None, Some(class)) => ExperimentConfig::for_class(class),
        (None, None) => ExperimentConfig::for_class(ExperimentClass::LargeScale),
    };
    if let Some(class) = overrides.class {
        cfg.class = class;
    }
    if !overrides.problems.is_empty() {
        cfg.problems = overrides.problems.clone();
    }
    if !overrides.algorithms.is_empty() {
        cfg.algorithms = overrides.algorithms.clone();
    }
    cfg.instances = resolve_instances(&cfg, &overrides.objectives, &overrides.variables)?;
    if let Some(v) = overrides.runs {
        cfg.runs = v;
    }
    if let Some(v) = overrides.base_seed {
        cfg.base_seed = v;
    }
    if let Some(v) = overrides.population_size {
        cfg.population_size = v;
    }
    if let Some(v) = overrides.max_generations {
        cfg.max_generations = v;
    }
    if let Some(v) = &overrides.output {
        cfg.output = v.clone();
    }
    if let Some(v) = &overrides.refset_path {
        cfg.refset_path = Some(v.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn resolve_instances(
    cfg: &ExperimentConfig,
    objectives: &[usize],
    variables: &[usize],
) -> Result<Vec<Instance>> {
    if objectives.is_empty() && variables.is_empty() {
        return Ok(cfg.instances.clone());
    }
    let table = cfg.class.instances();
    let ms: Vec<usize> = if objectives.is_empty() {
        cfg.instances.iter().map(|i| i.objectives).collect()
    } else {
        objectives.to_vec()
    };
    let ns: Vec<usize> = match variables.len() {
        0 if cfg.class == ExperimentClass::Custom => {
            return Err(Error::config("variables", "class `custom` needs explicit variable counts"))
        }
        0 => ms
            .iter()
            .map(|&m| {
                table
                    .iter()
                    .find(|&&(tm, _)| tm == m)
                    .map(|&(_, n)| n)
                    .ok_or_else(|| {
                        Error::config(
                            "objectives",
                            format!("M={m} is not part of class `{}` (use class `custom`)", cfg.class),
                        )
                    })
            })
            .collect::<Result<_>>()?,
        1 => vec![variables[0]; ms.len()],
        k if k == ms.len() => variables.to_vec(),
        k => {
            return Err(Error::config(
                "variables",
                format!("{k} variable counts for {} objective counts", ms.len()),
            ))
        }
    };
    Ok(ms
        .into_iter()
        .zip(ns)
        .map(|(objectives, variables)| Instance {
            objectives,
            variables,
        })
        .collect())
}
