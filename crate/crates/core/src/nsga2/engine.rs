use serde::{Deserialize, Serialize};

use crate::discretization::{
    compute_resolution, discretize_decision, grid_objectives, DiscretizationConfig, Strategy,
};
use crate::error::{Error, Result};
use crate::metrics::{igd_gd, ReferenceSet};
use crate::problems::ProblemSpec;
use crate::random::RandomSource;
use crate::types::{DecisionVector, Individual, Population};
use crate::variation::{polynomial_mutation, sbx_crossover, tournament_index, VariationConfig};

use super::selection::environmental_selection;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmConfig {
    pub population_size: usize,
    pub max_generations: usize,
    pub discretization: DiscretizationConfig,
    pub variation: VariationConfig,
}

impl AlgorithmConfig {
    /// Population 100, 200 generations, default variation for `n` variables.
    pub fn new(strategy: Strategy, variables: usize) -> Self {
        Self {
            population_size: 100,
            max_generations: 200,
            discretization: DiscretizationConfig::new(strategy),
            variation: VariationConfig::for_dimension(variables),
        }
    }

    pub fn strategy(&self) -> Strategy {
        self.discretization.strategy
    }

    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 || self.population_size % 2 != 0 {
            return Err(Error::config(
                "population_size",
                format!("{} must be a positive even number", self.population_size),
            ));
        }
        self.discretization.validate()?;
        self.variation.validate()
    }
}

/// Indicator values of the parent population after one generation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenerationTrace {
    pub generation: usize,
    pub igd: Option<f64>,
    pub gd: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub population: Population,
    /// One entry per generation, starting with the initial population.
    pub traces: Vec<GenerationTrace>,
}

/// Runs NSGA-II (or one of its discretized variants) on `problem`.
pub fn run(
    problem: &ProblemSpec,
    cfg: &AlgorithmConfig,
    rng: &mut RandomSource,
    reference: Option<&ReferenceSet>,
) -> Result<RunOutput> {
    run_observed(problem, cfg, rng, reference, |_, _| {})
}

/// Like [`run`], calling `observer(generation, &population)` after every
/// environmental selection, including the one on the initial population.
pub fn run_observed<F>(
    problem: &ProblemSpec,
    cfg: &AlgorithmConfig,
    rng: &mut RandomSource,
    reference: Option<&ReferenceSet>,
    mut observer: F,
) -> Result<RunOutput>
where
    F: FnMut(usize, &Population),
{
    cfg.validate()?;
    if let Some(r) = reference {
        if r.objectives() != problem.objectives() {
            return Err(Error::usage(format!(
                "reference set has {} objectives, problem has {}",
                r.objectives(),
                problem.objectives()
            )));
        }
    }
    let bounds = problem.bounds();
    let size = cfg.population_size;
    let disc = cfg.discretization;

    let discretize = |decisions: Vec<DecisionVector>| -> Result<Vec<DecisionVector>> {
        if !disc.strategy.discretizes_decisions() {
            return Ok(decisions);
        }
        let profile = compute_resolution(&decisions, bounds, &disc)?;
        decisions
            .iter()
            .map(|x| discretize_decision(x, &profile, bounds))
            .collect()
    };
    let evaluate = |decisions: Vec<DecisionVector>| -> Result<Vec<Individual>> {
        decisions
            .into_iter()
            .map(|x| {
                let f = problem.evaluate(&x)?;
                if !f.is_finite() {
                    return Err(Error::usage(format!("{problem} produced non-finite objectives")));
                }
                Ok(Individual::new(x, f))
            })
            .collect()
    };
    let select = |mut members: Vec<Individual>| -> Result<Population> {
        if disc.strategy.discretizes_objectives() {
            let raw: Vec<_> = members.iter().map(|m| m.objectives.clone()).collect();
            for (m, g) in members.iter_mut().zip(grid_objectives(&raw, disc.objective_decimals)?) {
                m.sort_objectives = g;
            }
        }
        environmental_selection(Population::new(members), size)
    };
    let trace = |generation: usize, pop: &Population| -> Result<GenerationTrace> {
        let (igd, gd) = match reference {
            Some(r) => {
                let objs: Vec<&[f64]> = pop.iter().map(|m| &m.objectives[..]).collect();
                let (i, g) = igd_gd(&objs, r)?;
                (Some(i), Some(g))
            }
            None => (None, None),
        };
        Ok(GenerationTrace {
            generation,
            igd,
            gd,
        })
    };

    let initial: Vec<DecisionVector> = (0..size)
        .map(|_| {
            DecisionVector(
                (0..bounds.len())
                    .map(|i| rng.uniform_in(bounds.lower()[i], bounds.upper()[i]))
                    .collect(),
            )
        })
        .collect();
    let mut pop = select(evaluate(discretize(initial)?)?)?;
    observer(0, &pop);
    let mut traces = Vec::with_capacity(cfg.max_generations + 1);
    traces.push(trace(0, &pop)?);

    for generation in 1..=cfg.max_generations {
        let mating: Vec<usize> = (0..size)
            .map(|_| tournament_index(&pop, rng))
            .collect::<Result<_>>()?;
        let mut offspring = Vec::with_capacity(size);
        for pair in mating.chunks_exact(2) {
            let (a, b) = (&pop.members[pair[0]].decision, &pop.members[pair[1]].decision);
            let (c1, c2) = sbx_crossover(a, b, &cfg.variation, bounds, rng)?;
            offspring.push(polynomial_mutation(&c1, &cfg.variation, bounds, rng)?);
            offspring.push(polynomial_mutation(&c2, &cfg.variation, bounds, rng)?);
        }
        let offspring = evaluate(discretize(offspring)?)?;

        let mut combined = pop.members;
        combined.extend(offspring);
        pop = select(combined)?;
        observer(generation, &pop);
        traces.push(trace(generation, &pop)?);
    }

    Ok(RunOutput {
        population: pop,
        traces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::ProblemId;

    fn small(strategy: Strategy, generations: usize) -> AlgorithmConfig {
        AlgorithmConfig {
            population_size: 20,
            max_generations: generations,
            ..AlgorithmConfig::new(strategy, 7)
        }
    }

    #[test]
    fn zero_generations_returns_initial_population() {
        let p = ProblemSpec::new(ProblemId::Dtlz2, 3, 7).unwrap();
        let out = run(&p, &small(Strategy::None, 0), &mut RandomSource::new(1), None).unwrap();
        assert_eq!(out.population.len(), 20);
        assert_eq!(out.traces.len(), 1);
        assert_eq!(out.traces[0].generation, 0);
        assert!(out.traces[0].igd.is_none());
    }

    #[test]
    fn same_seed_same_run() {
        let p = ProblemSpec::new(ProblemId::Wfg4, 3, 7).unwrap();
        for s in Strategy::ALL {
            let a = run(&p, &small(s, 10), &mut RandomSource::new(77), None).unwrap();
            let b = run(&p, &small(s, 10), &mut RandomSource::new(77), None).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn population_size_is_kept() {
        let p = ProblemSpec::new(ProblemId::Dtlz1, 3, 7).unwrap();
        let mut sizes = Vec::new();
        run_observed(&p, &small(Strategy::Bd, 5), &mut RandomSource::new(3), None, |_, pop| {
            sizes.push(pop.len())
        })
        .unwrap();
        assert_eq!(sizes, vec![20; 6]);
    }

    #[test]
    fn odd_population_is_rejected() {
        let p = ProblemSpec::new(ProblemId::Dtlz1, 3, 7).unwrap();
        let mut cfg = small(Strategy::None, 1);
        cfg.population_size = 21;
        assert!(matches!(
            run(&p, &cfg, &mut RandomSource::new(0), None),
            Err(Error::Config { .. })
        ));
    }

    #[test]
    fn dd_keeps_decisions_on_their_grid() {
        // With DD active, every evaluated decision vector is a multiple of 10^-8 in normalized space.
        let p = ProblemSpec::new(ProblemId::Dtlz2, 3, 7).unwrap();
        let out = run(&p, &small(Strategy::Dd, 3), &mut RandomSource::new(5), None).unwrap();
        for m in out.population.iter() {
            for v in m.decision.iter() {
                let scaled = v * 1e8;
                assert!((scaled - scaled.round()).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn od_sort_objectives_are_gridded() {
        let p = ProblemSpec::new(ProblemId::Dtlz2, 3, 7).unwrap();
        let out = run(&p, &small(Strategy::Od, 3), &mut RandomSource::new(5), None).unwrap();
        for m in out.population.iter() {
            for v in m.sort_objectives.iter() {
                assert!((0.0..=1.0).contains(v));
                assert!((v * 100.0 - (v * 100.0).round()).abs() < 1e-9);
            }
        }
    }
}
