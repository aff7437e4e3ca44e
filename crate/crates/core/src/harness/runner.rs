use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::panic::AssertUnwindSafe;
use std::path::Path;
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;

use crate::discretization::Strategy;
use crate::error::{Error, Result};
use crate::metrics::{build_reference_set, ReferenceSet};
use crate::nsga2::{self, AlgorithmConfig};
use crate::problems::{ProblemId, ProblemSpec};
use crate::random::RandomSource;

use super::config::{ExperimentConfig, Instance};
use super::record::{sort_records, FinalMember, RunRecord, SCHEMA_VERSION};

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(mut h: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of one cell. Stable across platforms and invocations: FNV-1a over the
/// cell key, finished with a splitmix64 mix.
pub fn cell_seed(
    base_seed: u64,
    problem: ProblemId,
    objectives: usize,
    algorithm: Strategy,
    run_index: usize,
) -> u64 {
    let mut h = fnv1a(FNV_OFFSET, &base_seed.to_le_bytes());
    h = fnv1a(h, problem.token().as_bytes());
    h = fnv1a(h, &[0]);
    h = fnv1a(h, &(objectives as u64).to_le_bytes());
    h = fnv1a(h, algorithm.token().as_bytes());
    h = fnv1a(h, &[0]);
    h = fnv1a(h, &(run_index as u64).to_le_bytes());
    splitmix64(h)
}

/// One `(problem, instance, algorithm, run)` unit of work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub problem: ProblemId,
    pub instance: Instance,
    pub algorithm: Strategy,
    pub run_index: usize,
    pub seed: u64,
}

/// All cells of `cfg` in canonical order.
pub fn cells(cfg: &ExperimentConfig) -> Vec<Cell> {
    let mut out = Vec::new();
    for &problem in &cfg.problems {
        for &instance in &cfg.instances {
            for &algorithm in &cfg.algorithms {
                for run_index in 0..cfg.runs {
                    out.push(Cell {
                        problem,
                        instance,
                        algorithm,
                        run_index,
                        seed: cell_seed(
                            cfg.base_seed,
                            problem,
                            instance.objectives,
                            algorithm,
                            run_index,
                        ),
                    });
                }
            }
        }
    }
    out
}

/// File name of a cached reference set.
pub fn refset_file_name(problem: ProblemId, objectives: usize) -> String {
    format!("{problem}_M{objectives}.csv")
}

/// Builds the reference set of `spec`, or loads it from `cache` when a file
/// is there. Freshly built sets are written back to the cache directory.
///
/// Generation is seeded from the problem and M only, so every experiment
/// sees the same set.
pub fn reference_set(spec: &ProblemSpec, size: usize, cache: Option<&Path>) -> Result<ReferenceSet> {
    let name = refset_file_name(spec.id(), spec.objectives());
    if let Some(dir) = cache {
        let path = dir.join(&name);
        if path.exists() {
            let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            let set = ReferenceSet::from_csv(Some(spec.id()), &text)?;
            if set.objectives() != spec.objectives() {
                return Err(Error::Parse(format!(
                    "{} holds {}-objective points, expected {}",
                    path.display(),
                    set.objectives(),
                    spec.objectives()
                )));
            }
            return Ok(set);
        }
    }
    let seed = splitmix64(fnv1a(fnv1a(FNV_OFFSET, name.as_bytes()), &(size as u64).to_le_bytes()));
    let set = build_reference_set(spec, size, &mut RandomSource::new(seed))?;
    if let Some(dir) = cache {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(&name);
        std::fs::write(&path, set.to_csv()).map_err(|e| Error::io(&path, e))?;
    }
    Ok(set)
}

/// Executes one cell.
pub fn run_cell(cell: &Cell, cfg: &ExperimentConfig, reference: &ReferenceSet) -> Result<RunRecord> {
    let started = Instant::now();
    let spec = ProblemSpec::new(cell.problem, cell.instance.objectives, cell.instance.variables)?;
    let algo = AlgorithmConfig {
        population_size: cfg.population_size,
        max_generations: cfg.max_generations,
        ..AlgorithmConfig::new(cell.algorithm, cell.instance.variables)
    };
    let out = nsga2::run(&spec, &algo, &mut RandomSource::new(cell.seed), Some(reference))?;
    let last = out.traces.last().expect("traces include generation 0");
    let (final_igd, final_gd) = match (last.igd, last.gd) {
        (Some(i), Some(g)) => (i, g),
        _ => unreachable!("a reference set was supplied"),
    };
    Ok(RunRecord {
        schema_version: SCHEMA_VERSION,
        problem: cell.problem,
        objectives: cell.instance.objectives,
        variables: cell.instance.variables,
        algorithm: cell.algorithm,
        run_index: cell.run_index,
        seed: cell.seed,
        population_size: cfg.population_size,
        max_generations: cfg.max_generations,
        traces: out.traces,
        final_population: out
            .population
            .members
            .into_iter()
            .map(|m| FinalMember {
                decision: m.decision,
                objectives: m.objectives,
            })
            .collect(),
        final_igd,
        final_gd,
        duration: Some(started.elapsed()),
    })
}

/// A cell that did not produce a record.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub cell: Cell,
    pub message: String,
}

#[derive(Debug, Default)]
pub struct BatchOutcome {
    /// Successful records in canonical order.
    pub records: Vec<RunRecord>,
    pub failures: Vec<CellFailure>,
}

impl BatchOutcome {
    pub fn is_success(&self) -> bool {
        self.failures.is_empty()
    }
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "cell panicked".to_string())
}

/// Runs every cell of `cfg` on `jobs` worker threads.
///
/// Records are written to `cfg.output` by a single writer thread as cells
/// finish; a failing cell is reported and the batch carries on. Wall-clock
/// timings go to `timings.csv` rather than into the records.
pub fn run_experiment(cfg: &ExperimentConfig, jobs: usize) -> Result<BatchOutcome> {
    cfg.validate()?;
    if jobs == 0 {
        return Err(Error::config("jobs", "must be positive"));
    }
    let out_dir = cfg.output.as_path();
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;

    let mut refsets = BTreeMap::new();
    for &problem in &cfg.problems {
        for inst in &cfg.instances {
            if refsets.contains_key(&(problem, inst.objectives)) {
                continue;
            }
            let spec = ProblemSpec::new(problem, inst.objectives, inst.variables)?;
            let set = reference_set(&spec, cfg.refset_size, cfg.refset_path.as_deref())?;
            refsets.insert((problem, inst.objectives), set);
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::config("jobs", e.to_string()))?;
    let all = cells(cfg);
    log::info!("running {} cells on {jobs} worker(s)", all.len());

    let (tx, rx) = mpsc::channel::<std::result::Result<RunRecord, CellFailure>>();
    let writer_dir = out_dir.to_path_buf();
    let writer = std::thread::spawn(move || {
        let mut outcome = BatchOutcome::default();
        for msg in rx {
            match msg {
                Ok(record) => match record.save(&writer_dir) {
                    Ok(path) => {
                        log::info!("wrote {}", path.display());
                        outcome.records.push(record);
                    }
                    Err(e) => outcome.failures.push(CellFailure {
                        cell: Cell {
                            problem: record.problem,
                            instance: Instance {
                                objectives: record.objectives,
                                variables: record.variables,
                            },
                            algorithm: record.algorithm,
                            run_index: record.run_index,
                            seed: record.seed,
                        },
                        message: e.to_string(),
                    }),
                },
                Err(failure) => {
                    log::error!("{:?} failed: {}", failure.cell, failure.message);
                    outcome.failures.push(failure);
                }
            }
        }
        outcome
    });

    pool.install(|| {
        all.par_iter().for_each_with(tx, |tx, cell| {
            let reference = &refsets[&(cell.problem, cell.instance.objectives)];
            let result = std::panic::catch_unwind(AssertUnwindSafe(|| run_cell(cell, cfg, reference)))
                .map_err(panic_message)
                .and_then(|r| r.map_err(|e| e.to_string()))
                .map_err(|message| CellFailure {
                    cell: *cell,
                    message,
                });
            // The receiver lives until every sender is dropped.
            let _ = tx.send(result);
        });
    });

    let mut outcome = writer.join().expect("writer thread panicked");
    sort_records(&mut outcome.records);
    outcome.failures.sort_by_key(|f| f.cell);

    let timings = timings_csv(&outcome.records);
    let path = out_dir.join("timings.csv");
    std::fs::write(&path, timings).map_err(|e| Error::io(&path, e))?;
    if !outcome.failures.is_empty() {
        let mut text = String::from("problem,M,algorithm,seed,error\n");
        for f in &outcome.failures {
            let _ = writeln!(
                text,
                "{},{},{},{},\"{}\"",
                f.cell.problem,
                f.cell.instance.objectives,
                f.cell.algorithm,
                f.cell.seed,
                f.message.replace('"', "'")
            );
        }
        let path = out_dir.join("failures.csv");
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    }
    Ok(outcome)
}

fn timings_csv(records: &[RunRecord]) -> String {
    let mut out = String::from("problem,M,algorithm,seed,seconds\n");
    for r in records {
        let secs = r.duration.map_or(f64::NAN, |d| d.as_secs_f64());
        let _ = writeln!(out, "{},{},{},{},{secs:.3}", r.problem, r.objectives, r.algorithm, r.seed);
    }
    out
}
