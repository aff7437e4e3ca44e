//! Simulated binary crossover, polynomial mutation and binary tournament selection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::random::RandomSource;
use crate::types::{Bounds, DecisionVector, Individual, Population};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariationConfig {
    /// Probability that a parent pair is recombined at all.
    pub crossover_rate: f64,
    /// Per-variable mutation probability.
    pub mutation_rate: f64,
    pub eta_crossover: f64,
    pub eta_mutation: f64,
}

impl VariationConfig {
    /// Crossover rate 1.0, mutation rate `1/n`, both distribution indices 20.
    pub fn for_dimension(n: usize) -> Self {
        Self {
            crossover_rate: 1.0,
            mutation_rate: 1.0 / n.max(1) as f64,
            eta_crossover: 20.0,
            eta_mutation: 20.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, rate) in [
            ("crossover_rate", self.crossover_rate),
            ("mutation_rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::config(name, format!("{rate} is not a probability")));
            }
        }
        for (name, eta) in [
            ("eta_crossover", self.eta_crossover),
            ("eta_mutation", self.eta_mutation),
        ] {
            if !(eta > 0.0 && eta.is_finite()) {
                return Err(Error::config(name, format!("{eta} must be positive")));
            }
        }
        Ok(())
    }
}

/// SBX spread factor for a uniform draw `u` in `[0, 1)`.
#[inline]
pub fn sbx_beta(u: f64, eta: f64) -> f64 {
    let e = 1.0 / (eta + 1.0);
    if u <= 0.5 {
        (2.0 * u).powf(e)
    } else {
        (2.0 - 2.0 * u).powf(-e)
    }
}

/// Recombines one variable with spread factor `beta`. The children keep the
/// parents' midpoint; `beta = 1` reproduces the parents and `beta = -1` swaps them.
#[inline]
pub fn sbx_variable(p1: f64, p2: f64, beta: f64) -> (f64, f64) {
    if beta == 1.0 {
        return (p1, p2);
    }
    if beta == -1.0 {
        return (p2, p1);
    }
    let mid = 0.5 * (p1 + p2);
    let half = 0.5 * (p1 - p2);
    (mid + beta * half, mid - beta * half)
}

fn check_parent(x: &[f64], bounds: &Bounds) -> Result<()> {
    bounds.check(x)
}

/// Simulated binary crossover. Each variable is recombined with probability
/// 0.5 and the resulting pair is swapped with probability 0.5. Components
/// pushed out of bounds are clamped.
pub fn sbx_crossover(
    p1: &DecisionVector,
    p2: &DecisionVector,
    cfg: &VariationConfig,
    bounds: &Bounds,
    rng: &mut RandomSource,
) -> Result<(DecisionVector, DecisionVector)> {
    if p1.len() != p2.len() {
        return Err(Error::usage(format!(
            "parents differ in length: {} vs {}",
            p1.len(),
            p2.len()
        )));
    }
    check_parent(p1, bounds)?;
    check_parent(p2, bounds)?;

    let mut c1 = p1.clone();
    let mut c2 = p2.clone();
    if rng.uniform() >= cfg.crossover_rate {
        return Ok((c1, c2));
    }
    for i in 0..p1.len() {
        if rng.coin() {
            continue;
        }
        let mut beta = sbx_beta(rng.uniform(), cfg.eta_crossover);
        if rng.coin() {
            beta = -beta;
        }
        let (a, b) = sbx_variable(p1[i], p2[i], beta);
        c1[i] = bounds.clamp(i, a);
        c2[i] = bounds.clamp(i, b);
    }
    Ok((c1, c2))
}

/// Bounded polynomial perturbation of a single value given the uniform draw `mu`.
#[inline]
pub fn polynomial_step(x: f64, lower: f64, upper: f64, mu: f64, eta: f64) -> f64 {
    let width = upper - lower;
    let e = eta + 1.0;
    let delta_q = if mu <= 0.5 {
        let d1 = (x - lower) / width;
        let v = 2.0 * mu + (1.0 - 2.0 * mu) * (1.0 - d1).powf(e);
        v.powf(1.0 / e) - 1.0
    } else {
        let d2 = (upper - x) / width;
        let v = 2.0 * (1.0 - mu) + 2.0 * (mu - 0.5) * (1.0 - d2).powf(e);
        1.0 - v.powf(1.0 / e)
    };
    (x + delta_q * width).clamp(lower, upper)
}

/// Polynomial mutation; each variable mutates independently with `cfg.mutation_rate`.
pub fn polynomial_mutation(
    x: &DecisionVector,
    cfg: &VariationConfig,
    bounds: &Bounds,
    rng: &mut RandomSource,
) -> Result<DecisionVector> {
    bounds.check(x)?;
    let mut out = x.clone();
    let rate = cfg.mutation_rate;
    if rate <= 0.0 {
        return Ok(out);
    }
    let mutate = |i: usize, v: &mut f64, mu: f64| {
        *v = polynomial_step(*v, bounds.lower()[i], bounds.upper()[i], mu, cfg.eta_mutation);
    };
    if rate >= 1.0 {
        for (i, v) in out.iter_mut().enumerate() {
            mutate(i, v, rng.uniform());
        }
        return Ok(out);
    }
    // Jump straight to the next mutated variable; the gaps between
    // independent Bernoulli(rate) successes are geometric.
    let mut i = rng.geometric(rate);
    while i < out.len() {
        let mu = rng.uniform();
        mutate(i, &mut out[i], mu);
        i = i.saturating_add(1).saturating_add(rng.geometric(rate));
    }
    Ok(out)
}

/// Crowded comparison between two members: lower rank wins, then larger
/// crowding; `a` wins remaining ties.
#[inline]
pub fn crowded_winner(a: &Individual, b: &Individual) -> bool {
    if a.rank != b.rank {
        return a.rank < b.rank;
    }
    // NaN crowding never occurs after selection; treat it as a tie.
    !(b.crowding > a.crowding)
}

/// Index of the binary-tournament winner; two draws with replacement.
pub fn tournament_index(pop: &Population, rng: &mut RandomSource) -> Result<usize> {
    if pop.is_empty() {
        return Err(Error::usage("tournament on an empty population"));
    }
    let a = rng.below(pop.len());
    let b = rng.below(pop.len());
    Ok(if crowded_winner(&pop.members[a], &pop.members[b]) {
        a
    } else {
        b
    })
}

pub fn binary_tournament<'a>(pop: &'a Population, rng: &mut RandomSource) -> Result<&'a Individual> {
    let i = tournament_index(pop, rng)?;
    Ok(&pop.members[i])
}
