//! IGD and GD indicators and analytic reference sets.
//!
//! Both indicators are means of nearest-neighbour Euclidean distances in raw
//! objective space: IGD averages over reference points, GD over solutions.

use std::fmt::Write as _;

use crate::dominance::{compare, Dominance};
use crate::error::{Error, Result};
use crate::problems::{ProblemId, ProblemSpec};
use crate::random::RandomSource;
use crate::types::ObjectiveVector;

/// Points on (or sampled from) a problem's Pareto front.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSet {
    problem: Option<ProblemId>,
    objectives: usize,
    points: Vec<ObjectiveVector>,
}

impl ReferenceSet {
    pub fn new(problem: Option<ProblemId>, points: Vec<ObjectiveVector>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::usage("reference set must not be empty"))?;
        let objectives = first.len();
        if objectives == 0 {
            return Err(Error::usage("reference points need at least one objective"));
        }
        if let Some(i) = points
            .iter()
            .position(|p| p.len() != objectives || !p.is_finite())
        {
            return Err(Error::usage(format!(
                "reference point {i} has the wrong dimension or non-finite values"
            )));
        }
        Ok(Self {
            problem,
            objectives,
            points,
        })
    }

    pub fn problem(&self) -> Option<ProblemId> {
        self.problem
    }

    pub fn objectives(&self) -> usize {
        self.objectives
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    /// One point per line, comma separated, no header.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.points.len() * self.objectives * 20);
        for p in &self.points {
            for (j, v) in p.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{v}").expect("writing to a String cannot fail");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(problem: Option<ProblemId>, text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let values = line
                .split(',')
                .map(|s| {
                    s.trim().parse::<f64>().map_err(|e| {
                        Error::Parse(format!("line {}: `{}`: {e}", line_no + 1, s.trim()))
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            points.push(ObjectiveVector(values));
        }
        Self::new(problem, points)
    }
}

fn check_dimensions<V: AsRef<[f64]>>(solutions: &[V], reference: &ReferenceSet) -> Result<()> {
    if solutions.is_empty() {
        return Err(Error::usage("indicator of an empty solution set"));
    }
    if solutions
        .iter()
        .any(|s| s.as_ref().len() != reference.objectives())
    {
        return Err(Error::usage(format!(
            "solution dimension does not match the reference set ({} objectives)",
            reference.objectives()
        )));
    }
    Ok(())
}

#[inline]
fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Mean over `from` of the distance to the nearest point of `to`.
fn mean_min_distance<A: AsRef<[f64]>, B: AsRef<[f64]>>(from: &[A], to: &[B]) -> f64 {
    let total: f64 = from
        .iter()
        .map(|p| {
            to.iter()
                .map(|q| squared_distance(p.as_ref(), q.as_ref()))
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .sum();
    total / from.len() as f64
}

/// Inverted generational distance.
pub fn igd<V: AsRef<[f64]>>(solutions: &[V], reference: &ReferenceSet) -> Result<f64> {
    check_dimensions(solutions, reference)?;
    Ok(mean_min_distance(&reference.points, solutions))
}

/// Generational distance (mean form).
pub fn gd<V: AsRef<[f64]>>(solutions: &[V], reference: &ReferenceSet) -> Result<f64> {
    check_dimensions(solutions, reference)?;
    Ok(mean_min_distance(solutions, &reference.points))
}

/// IGD and GD together from one pass over the distance matrix. Bit-identical
/// to calling [`igd`] and [`gd`] separately.
pub fn igd_gd<V: AsRef<[f64]>>(solutions: &[V], reference: &ReferenceSet) -> Result<(f64, f64)> {
    check_dimensions(solutions, reference)?;
    let mut nearest = vec![f64::INFINITY; solutions.len()];
    let mut igd_total = 0.0;
    for r in &reference.points {
        let mut best = f64::INFINITY;
        for (s, near) in solutions.iter().zip(nearest.iter_mut()) {
            let d = squared_distance(r, s.as_ref());
            best = best.min(d);
            *near = near.min(d);
        }
        igd_total += best.sqrt();
    }
    let gd_total: f64 = nearest.iter().map(|d| d.sqrt()).sum();
    Ok((
        igd_total / reference.points.len() as f64,
        gd_total / solutions.len() as f64,
    ))
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of simplex-lattice points with `divisions` steps in `m` dimensions.
pub fn simplex_lattice_size(m: usize, divisions: usize) -> usize {
    binomial(divisions + m - 1, m - 1)
}

/// All weight vectors in `m` dimensions whose components are multiples of
/// `1/divisions` and sum to one.
pub fn simplex_lattice(m: usize, divisions: usize) -> Vec<Vec<f64>> {
    fn recurse(
        m: usize,
        left: usize,
        divisions: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<f64>>,
    ) {
        if prefix.len() == m - 1 {
            prefix.push(left);
            out.push(
                prefix
                    .iter()
                    .map(|&c| c as f64 / divisions as f64)
                    .collect(),
            );
            prefix.pop();
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            recurse(m, left - c, divisions, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(simplex_lattice_size(m, divisions));
    if divisions == 0 {
        out.push(vec![1.0 / m as f64; m]);
        return out;
    }
    recurse(m, divisions, divisions, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Up to `target` points on the unit simplex: the densest lattice that fits,
/// then inner lattices shrunk toward the centroid (by 1/2, 1/4, ...) to use
/// the remaining budget.
pub fn layered_simplex(m: usize, target: usize) -> Vec<Vec<f64>> {
    let mut points = Vec::with_capacity(target);
    let mut shrink = 1.0;
    let centroid = 1.0 / m as f64;
    loop {
        let budget = target - points.len();
        if budget < m {
            break;
        }
        let mut h = 1;
        while simplex_lattice_size(m, h + 1) <= budget {
            h += 1;
        }
        for w in simplex_lattice(m, h) {
            points.push(
                w.into_iter()
                    .map(|v| shrink * v + (1.0 - shrink) * centroid)
                    .collect(),
            );
        }
        shrink *= 0.5;
        if points.len() == target {
            break;
        }
    }
    points
}

/// Removes every point dominated by another; equal points are kept once.
pub fn nondominated_filter(points: Vec<ObjectiveVector>) -> Vec<ObjectiveVector> {
    let mut kept: Vec<ObjectiveVector> = Vec::new();
    'outer: for p in points {
        let mut i = 0;
        while i < kept.len() {
            match compare(&p, &kept[i]) {
                Dominance::Dominated => continue 'outer,
                Dominance::Dominates => {
                    kept.swap_remove(i);
                }
                Dominance::NonDominated => {
                    if kept[i] == p {
                        continue 'outer;
                    }
                    i += 1;
                }
            }
        }
        kept.push(p);
    }
    kept
}

/// Builds a reference set of roughly `target_count` points.
///
/// DTLZ1 uses a layered simplex lattice scaled by 0.5; DTLZ2-4 project it
/// onto the unit sphere. DTLZ5 and the WFG problems evaluate Pareto-optimal
/// samples and keep the non-dominated ones.
pub fn build_reference_set(
    spec: &ProblemSpec,
    target_count: usize,
    rng: &mut RandomSource,
) -> Result<ReferenceSet> {
    let m = spec.objectives();
    if target_count < m {
        return Err(Error::usage(format!(
            "reference set needs at least M = {m} points, asked for {target_count}"
        )));
    }
    let points: Vec<ObjectiveVector> = match spec.id() {
        ProblemId::Dtlz1 => layered_simplex(m, target_count)
            .into_iter()
            .map(|w| ObjectiveVector(w.into_iter().map(|v| 0.5 * v).collect()))
            .collect(),
        ProblemId::Dtlz2 | ProblemId::Dtlz3 | ProblemId::Dtlz4 => layered_simplex(m, target_count)
            .into_iter()
            .map(|w| {
                let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
                ObjectiveVector(w.into_iter().map(|v| v / norm).collect())
            })
            .collect(),
        id => {
            // The disconnected WFG2 front discards many samples.
            let oversample = if id == ProblemId::Wfg2 { 2 } else { 1 };
            let samples = spec.sample_pareto_set(target_count * oversample, rng)?;
            let evaluated = samples
                .iter()
                .map(|x| spec.evaluate(x))
                .collect::<Result<Vec<_>>>()?;
            let mut front = nondominated_filter(evaluated);
            if front.len() > target_count {
                rng.shuffle(&mut front);
                front.truncate(target_count);
            }
            front
        }
    };
    ReferenceSet::new(Some(spec.id()), points)
}
