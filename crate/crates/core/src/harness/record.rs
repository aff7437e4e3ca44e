use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::discretization::Strategy;
use crate::error::{Error, Result};
use crate::nsga2::GenerationTrace;
use crate::problems::ProblemId;
use crate::types::{DecisionVector, ObjectiveVector};

/// Bumped whenever the JSON layout of [`RunRecord`] changes.
pub const SCHEMA_VERSION: u32 = 1;

/// A member of the final population as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalMember {
    pub decision: DecisionVector,
    pub objectives: ObjectiveVector,
}

/// Everything one seeded run produced.
///
/// `duration` is deliberately not serialized: the JSON document of a cell must
/// be bit-identical across reruns, so timings go to a separate file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub problem: ProblemId,
    pub objectives: usize,
    pub variables: usize,
    pub algorithm: Strategy,
    pub run_index: usize,
    pub seed: u64,
    pub population_size: usize,
    pub max_generations: usize,
    pub traces: Vec<GenerationTrace>,
    pub final_population: Vec<FinalMember>,
    pub final_igd: f64,
    pub final_gd: f64,
    #[serde(skip)]
    pub duration: Option<Duration>,
}

impl PartialEq for RunRecord {
    /// Equality ignores the wall-clock duration.
    fn eq(&self, other: &Self) -> bool {
        self.schema_version == other.schema_version
            && self.problem == other.problem
            && self.objectives == other.objectives
            && self.variables == other.variables
            && self.algorithm == other.algorithm
            && self.run_index == other.run_index
            && self.seed == other.seed
            && self.population_size == other.population_size
            && self.max_generations == other.max_generations
            && self.traces == other.traces
            && self.final_population == other.final_population
            && self.final_igd.to_bits() == other.final_igd.to_bits()
            && self.final_gd.to_bits() == other.final_gd.to_bits()
    }
}

impl RunRecord {
    /// `<problem>_M<M>_<algorithm>_seed<seed>.json`
    pub fn file_name(&self) -> String {
        format!(
            "{}_M{}_{}_seed{}.json",
            self.problem, self.objectives, self.algorithm, self.seed
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("record serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: RunRecord = serde_json::from_str(text)?;
        if record.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "run record schema {} is not supported (expected {SCHEMA_VERSION})",
                record.schema_version
            )));
        }
        Ok(record)
    }

    /// Writes the record into `dir` and returns the file path.
    pub fn save(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(self.file_name());
        std::fs::write(&path, self.to_json()).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

/// Loads every `*.json` run record in `dir`, sorted by cell.
///
/// Files that are not run records (a saved config, say) are skipped.
pub fn load_records(dir: &Path) -> Result<Vec<RunRecord>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut records = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.extension().is_some_and(|e| e == "json") {
            let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            if !text.contains("\"schema_version\"") {
                continue;
            }
            records.push(RunRecord::from_json(&text)?);
        }
    }
    sort_records(&mut records);
    Ok(records)
}

/// Canonical order: problem, M, algorithm, run index.
pub fn sort_records(records: &mut [RunRecord]) {
    records.sort_by_key(|r| (r.problem, r.objectives, r.variables, r.algorithm, r.run_index));
}
