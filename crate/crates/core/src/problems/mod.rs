//! Scalable benchmark problems: DTLZ1-5 and WFG1-5.

mod dtlz;
mod wfg;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::random::RandomSource;
use crate::types::{Bounds, DecisionVector, ObjectiveVector};

/// Benchmark problem identifier. Serialized as its lowercase token (`"dtlz1"` ... `"wfg5"`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemId {
    Dtlz1,
    Dtlz2,
    Dtlz3,
    Dtlz4,
    Dtlz5,
    Wfg1,
    Wfg2,
    Wfg3,
    Wfg4,
    Wfg5,
}

impl ProblemId {
    pub const ALL: [ProblemId; 10] = [
        ProblemId::Dtlz1,
        ProblemId::Dtlz2,
        ProblemId::Dtlz3,
        ProblemId::Dtlz4,
        ProblemId::Dtlz5,
        ProblemId::Wfg1,
        ProblemId::Wfg2,
        ProblemId::Wfg3,
        ProblemId::Wfg4,
        ProblemId::Wfg5,
    ];

    pub fn token(self) -> &'static str {
        match self {
            ProblemId::Dtlz1 => "dtlz1",
            ProblemId::Dtlz2 => "dtlz2",
            ProblemId::Dtlz3 => "dtlz3",
            ProblemId::Dtlz4 => "dtlz4",
            ProblemId::Dtlz5 => "dtlz5",
            ProblemId::Wfg1 => "wfg1",
            ProblemId::Wfg2 => "wfg2",
            ProblemId::Wfg3 => "wfg3",
            ProblemId::Wfg4 => "wfg4",
            ProblemId::Wfg5 => "wfg5",
        }
    }

    pub fn is_dtlz(self) -> bool {
        matches!(
            self,
            ProblemId::Dtlz1
                | ProblemId::Dtlz2
                | ProblemId::Dtlz3
                | ProblemId::Dtlz4
                | ProblemId::Dtlz5
        )
    }

    pub fn is_wfg(self) -> bool {
        !self.is_dtlz()
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        ProblemId::ALL
            .into_iter()
            .find(|p| p.token() == lower)
            .ok_or_else(|| Error::config("problem", format!("unknown problem `{s}`")))
    }
}

/// A concrete problem instance: family, objective count `M`, variable count `n`
/// and bounds. For WFG problems, `position_count` is the number of
/// position-related parameters `k`; the remaining `n - k` are distance-related.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    id: ProblemId,
    objectives: usize,
    variables: usize,
    position_count: usize,
    bounds: Bounds,
}

impl ProblemSpec {
    /// Builds an instance with the default position-parameter rule.
    ///
    /// DTLZ uses `M - 1` position variables and `n - M + 1` distance variables.
    /// WFG uses `k = M - 1`; for WFG2/WFG3 with an odd distance count, one
    /// parameter moves from distance to position when `k + 1` stays a multiple
    /// of `M - 1`, otherwise the odd count is kept.
    pub fn new(id: ProblemId, objectives: usize, variables: usize) -> Result<Self> {
        if objectives < 2 {
            return Err(Error::config("objectives", "need at least 2 objectives"));
        }
        if variables < objectives {
            return Err(Error::config(
                "variables",
                format!("n = {variables} must be at least M = {objectives}"),
            ));
        }
        let mut k = objectives - 1;
        if matches!(id, ProblemId::Wfg2 | ProblemId::Wfg3)
            && (variables - k) % 2 == 1
            && (k + 1) % (objectives - 1) == 0
            && k + 1 < variables
        {
            k += 1;
        }
        Self::with_position_count(id, objectives, variables, k)
    }

    /// Builds an instance with an explicit position-parameter count.
    /// For DTLZ problems `position_count` must be `M - 1`.
    pub fn with_position_count(
        id: ProblemId,
        objectives: usize,
        variables: usize,
        position_count: usize,
    ) -> Result<Self> {
        if objectives < 2 {
            return Err(Error::config("objectives", "need at least 2 objectives"));
        }
        if variables < objectives {
            return Err(Error::config(
                "variables",
                format!("n = {variables} must be at least M = {objectives}"),
            ));
        }
        if id.is_dtlz() && position_count != objectives - 1 {
            return Err(Error::config(
                "position_count",
                "DTLZ problems use exactly M - 1 position variables",
            ));
        }
        if id.is_wfg()
            && (position_count == 0
                || position_count % (objectives - 1) != 0
                || position_count >= variables)
        {
            return Err(Error::config(
                "position_count",
                format!(
                    "WFG position count {position_count} must be a positive multiple of M - 1 = {} and below n = {variables}",
                    objectives - 1
                ),
            ));
        }
        let bounds = if id.is_dtlz() {
            Bounds::unit(variables)
        } else {
            Bounds::new(
                vec![0.0; variables],
                (1..=variables).map(|i| 2.0 * i as f64).collect(),
            )?
        };
        Ok(Self {
            id,
            objectives,
            variables,
            position_count,
            bounds,
        })
    }

    pub fn id(&self) -> ProblemId {
        self.id
    }

    pub fn objectives(&self) -> usize {
        self.objectives
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn position_count(&self) -> usize {
        self.position_count
    }

    pub fn distance_count(&self) -> usize {
        self.variables - self.position_count
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    /// Objective values of `x`. Out-of-bounds input is rejected, never clamped.
    pub fn evaluate(&self, x: &[f64]) -> Result<ObjectiveVector> {
        self.bounds.check(x)?;
        let f = match self.id {
            ProblemId::Dtlz1 => dtlz::dtlz1(x, self.objectives),
            ProblemId::Dtlz2 => dtlz::dtlz2(x, self.objectives),
            ProblemId::Dtlz3 => dtlz::dtlz3(x, self.objectives),
            ProblemId::Dtlz4 => dtlz::dtlz4(x, self.objectives),
            ProblemId::Dtlz5 => dtlz::dtlz5(x, self.objectives),
            ProblemId::Wfg1 => wfg::wfg1(x, self.objectives, self.position_count),
            ProblemId::Wfg2 => wfg::wfg2(x, self.objectives, self.position_count),
            ProblemId::Wfg3 => wfg::wfg3(x, self.objectives, self.position_count),
            ProblemId::Wfg4 => wfg::wfg4(x, self.objectives, self.position_count),
            ProblemId::Wfg5 => wfg::wfg5(x, self.objectives, self.position_count),
        };
        Ok(ObjectiveVector(f))
    }

    /// Pareto-optimal decision vectors: distance variables at their optimum,
    /// position variables uniform over their range.
    pub fn sample_pareto_set(
        &self,
        count: usize,
        rng: &mut RandomSource,
    ) -> Result<Vec<DecisionVector>> {
        if count == 0 {
            return Err(Error::usage("sample count must be positive"));
        }
        let k = self.position_count;
        let samples = (0..count)
            .map(|_| {
                let x = (0..self.variables)
                    .map(|i| {
                        let (lo, hi) = (self.bounds.lower()[i], self.bounds.upper()[i]);
                        if i < k {
                            rng.uniform_in(lo, hi)
                        } else if self.id.is_dtlz() {
                            0.5
                        } else {
                            hi * 0.35
                        }
                    })
                    .collect();
                DecisionVector(x)
            })
            .collect();
        Ok(samples)
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (M={}, n={})", self.id, self.objectives, self.variables)
    }
}
