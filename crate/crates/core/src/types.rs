//! Value types shared by every module: decision and objective vectors,
//! individuals, populations and variable bounds.

use std::ops::{Deref, DerefMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in decision space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DecisionVector(pub Vec<f64>);

/// A point in objective space, minimization convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectiveVector(pub Vec<f64>);

macro_rules! vector_newtype {
    ($name:ident) => {
        impl $name {
            pub fn new(values: Vec<f64>) -> Self {
                Self(values)
            }

            pub fn into_inner(self) -> Vec<f64> {
                self.0
            }
        }

        impl Deref for $name {
            type Target = [f64];

            fn deref(&self) -> &[f64] {
                &self.0
            }
        }

        impl DerefMut for $name {
            fn deref_mut(&mut self) -> &mut [f64] {
                &mut self.0
            }
        }

        impl From<Vec<f64>> for $name {
            fn from(values: Vec<f64>) -> Self {
                Self(values)
            }
        }

        impl AsRef<[f64]> for $name {
            fn as_ref(&self) -> &[f64] {
                &self.0
            }
        }
    };
}

vector_newtype!(DecisionVector);
vector_newtype!(ObjectiveVector);

impl ObjectiveVector {
    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

/// Closed box bounds `[lower_i, upper_i]` for each decision variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::usage(format!(
                "bounds length mismatch: {} lower vs {} upper",
                lower.len(),
                upper.len()
            )));
        }
        if let Some(i) = lower
            .iter()
            .zip(&upper)
            .position(|(l, u)| !(l.is_finite() && u.is_finite() && l < u))
        {
            return Err(Error::usage(format!(
                "bounds of variable {i} are not a proper interval: [{}, {}]",
                lower[i], upper[i]
            )));
        }
        Ok(Self { lower, upper })
    }

    /// `[0, 1]^n`
    pub fn unit(n: usize) -> Self {
        Self {
            lower: vec![0.0; n],
            upper: vec![1.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.len()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| *v >= *l && *v <= *u)
    }

    /// Checks length and bounds; never clamps.
    pub fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.len() {
            return Err(Error::usage(format!(
                "decision vector has {} components, expected {}",
                x.len(),
                self.len()
            )));
        }
        for (i, v) in x.iter().enumerate() {
            if !(*v >= self.lower[i] && *v <= self.upper[i]) {
                return Err(Error::usage(format!(
                    "variable {i} = {v} outside [{}, {}]",
                    self.lower[i], self.upper[i]
                )));
            }
        }
        Ok(())
    }

    pub fn clamp(&self, i: usize, v: f64) -> f64 {
        v.clamp(self.lower[i], self.upper[i])
    }
}

/// One member of a population.
///
/// `sort_objectives` is the vector non-dominated sorting looks at. It equals
/// `objectives` unless objective-space discretization is active, in which case
/// it holds the normalized, rounded objective vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub decision: DecisionVector,
    pub objectives: ObjectiveVector,
    pub sort_objectives: ObjectiveVector,
    /// 0-based front index. Only meaningful after environmental selection.
    pub rank: usize,
    /// Only meaningful after environmental selection.
    pub crowding: f64,
}

impl Individual {
    /// Wraps an evaluated decision vector; `sort_objectives` starts as a copy of the raw objectives.
    pub fn new(decision: DecisionVector, objectives: ObjectiveVector) -> Self {
        let sort_objectives = objectives.clone();
        Self {
            decision,
            objectives,
            sort_objectives,
            rank: 0,
            crowding: 0.0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Population {
    pub members: Vec<Individual>,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        Self { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Individual> {
        self.members.iter()
    }

    /// Raw objective vectors of every member, in order.
    pub fn objectives(&self) -> Vec<ObjectiveVector> {
        self.members.iter().map(|m| m.objectives.clone()).collect()
    }

    /// Verifies that all members agree on decision and objective dimensions.
    pub fn check_shape(&self) -> Result<()> {
        let Some(first) = self.members.first() else {
            return Ok(());
        };
        let (n, m) = (first.decision.len(), first.objectives.len());
        for (i, ind) in self.members.iter().enumerate() {
            if ind.decision.len() != n
                || ind.objectives.len() != m
                || ind.sort_objectives.len() != m
            {
                return Err(Error::usage(format!(
                    "member {i} has shape (n={}, M={}), expected (n={n}, M={m})",
                    ind.decision.len(),
                    ind.objectives.len()
                )));
            }
        }
        Ok(())
    }
}

impl FromIterator<Individual> for Population {
    fn from_iter<I: IntoIterator<Item = Individual>>(iter: I) -> Self {
        Self {
            members: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a Population {
    type Item = &'a Individual;
    type IntoIter = std::slice::Iter<'a, Individual>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
