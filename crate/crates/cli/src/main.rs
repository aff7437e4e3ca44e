//! `moea-disc`: run discretized NSGA-II experiments and render their results.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use moea_disc::harness::{
    emit_trajectories, infer_class, load_config, load_records, reference_set, refset_file_name,
    render_table, run_experiment, table_file_name, trajectory_file_name, ConfigOverrides,
    ExperimentClass, RunRecord,
};
use moea_disc::{Error, ProblemId, ProblemSpec, ReferenceSet, Strategy};

#[derive(Debug, Parser)]
#[command(name = "moea-disc", version, about = "NSGA-II with decision/objective space discretization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Execute an experiment and write run records, tables and trajectories.
    Run(RunArgs),
    /// Render the comparison table from stored run records.
    Table(TableArgs),
    /// Emit per-generation IGD/GD trajectories from stored run records.
    Trajectories(TrajectoryArgs),
    /// Export a generated reference set, or import one into the cache.
    Refset(RefsetArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// JSON experiment config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    class: Option<ExperimentClass>,
    /// Comma-separated problem tokens (dtlz1 ... wfg5).
    #[arg(long, value_delimiter = ',')]
    problem: Vec<ProblemId>,
    #[arg(long, value_delimiter = ',')]
    objectives: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    variables: Vec<usize>,
    /// Comma-separated algorithm tokens (none, dd, od, bd).
    #[arg(long, value_delimiter = ',')]
    algorithm: Vec<Strategy>,
    #[arg(long)]
    runs: Option<usize>,
    /// Base seed of the experiment.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    pop_size: Option<usize>,
    #[arg(long)]
    generations: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory of cached reference sets.
    #[arg(long)]
    refset_path: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Directory holding the run records; the table is written there too.
    #[arg(long)]
    out: PathBuf,
    /// Names the output file; inferred from the records when omitted.
    #[arg(long)]
    class: Option<ExperimentClass>,
    #[arg(long, default_value = "none")]
    baseline: Strategy,
}

#[derive(Debug, Args)]
struct TrajectoryArgs {
    #[arg(long)]
    out: PathBuf,
    /// Restrict to these problems (default: every problem with records).
    #[arg(long, value_delimiter = ',')]
    problem: Vec<ProblemId>,
    #[arg(long, value_delimiter = ',')]
    objectives: Vec<usize>,
}

#[derive(Debug, Args)]
struct RefsetArgs {
    #[command(subcommand)]
    action: RefsetAction,
}

#[derive(Debug, Subcommand)]
enum RefsetAction {
    /// Generate (or load from the cache) and write a reference set as CSV.
    Export {
        #[arg(long)]
        problem: ProblemId,
        #[arg(long)]
        objectives: usize,
        /// Defaults to M + 4.
        #[arg(long)]
        variables: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        size: usize,
        #[arg(long)]
        refset_path: Option<PathBuf>,
        /// Output CSV file; defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a CSV reference set and store it in the cache directory.
    Import {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        problem: ProblemId,
        #[arg(long)]
        objectives: usize,
        #[arg(long)]
        refset_path: PathBuf,
    },
}

/// 1 for bad input, 2 for failures while doing the work.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::Config { .. } | Error::Parse(_) => 1,
        Error::Io { .. } | Error::Json(_) | Error::Unimplemented(_) => 2,
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_outputs(records: &[RunRecord], dir: &Path, class: ExperimentClass) -> Result<(), Error> {
    let pairs: BTreeSet<(ProblemId, usize)> =
        records.iter().map(|r| (r.problem, r.objectives)).collect();
    for &(p, m) in &pairs {
        write_file(&dir.join(trajectory_file_name(p, m)), &emit_trajectories(records, p, m))?;
    }
    if records.iter().any(|r| r.algorithm == Strategy::None) {
        match render_table(records, Strategy::None) {
            Ok(table) => {
                print!("{}", table.to_text());
                write_file(&dir.join(table_file_name(class)), &table.to_csv())?;
            }
            Err(e) => log::warn!("no comparison table: {e}"),
        }
    }
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<u8, Error> {
    let overrides = ConfigOverrides {
        class: args.class,
        problems: args.problem,
        objectives: args.objectives,
        variables: args.variables,
        algorithms: args.algorithm,
        runs: args.runs,
        base_seed: args.seed,
        population_size: args.pop_size,
        max_generations: args.generations,
        output: args.out,
        refset_path: args.refset_path,
    };
    let cfg = load_config(args.config.as_deref(), &overrides)?;
    if args.jobs == 0 {
        return Err(Error::Config {
            field: "jobs".into(),
            message: "must be positive".into(),
        });
    }
    std::fs::create_dir_all(&cfg.output).map_err(|source| Error::Io {
        path: cfg.output.clone(),
        source,
    })?;
    cfg.save(&cfg.output.join("experiment.json"))?;
    let outcome = run_experiment(&cfg, args.jobs)?;
    write_outputs(&outcome.records, &cfg.output, cfg.class)?;
    for f in &outcome.failures {
        eprintln!(
            "failed: {} M={} {} seed {}: {}",
            f.cell.problem, f.cell.instance.objectives, f.cell.algorithm, f.cell.seed, f.message
        );
    }
    Ok(if outcome.is_success() { 0 } else { 2 })
}

fn cmd_table(args: TableArgs) -> Result<u8, Error> {
    let records = load_records(&args.out)?;
    let table = render_table(&records, args.baseline)?;
    let class = args.class.unwrap_or_else(|| infer_class(&records));
    write_file(&args.out.join(table_file_name(class)), &table.to_csv())?;
    print!("{}", table.to_text());
    Ok(0)
}

fn cmd_trajectories(args: TrajectoryArgs) -> Result<u8, Error> {
    let records = load_records(&args.out)?;
    let pairs: BTreeSet<(ProblemId, usize)> = records
        .iter()
        .map(|r| (r.problem, r.objectives))
        .filter(|(p, m)| {
            (args.problem.is_empty() || args.problem.contains(p))
                && (args.objectives.is_empty() || args.objectives.contains(m))
        })
        .collect();
    for (p, m) in pairs {
        let path = args.out.join(trajectory_file_name(p, m));
        write_file(&path, &emit_trajectories(&records, p, m))?;
        println!("{}", path.display());
    }
    Ok(0)
}

fn cmd_refset(args: RefsetArgs) -> Result<u8, Error> {
    match args.action {
        RefsetAction::Export {
            problem,
            objectives,
            variables,
            size,
            refset_path,
            out,
        } => {
            let spec = ProblemSpec::new(problem, objectives, variables.unwrap_or(objectives + 4))?;
            let set = reference_set(&spec, size, refset_path.as_deref())?;
            match out {
                Some(path) => write_file(&path, &set.to_csv())?,
                None => print!("{}", set.to_csv()),
            }
        }
        RefsetAction::Import {
            file,
            problem,
            objectives,
            refset_path,
        } => {
            let text = std::fs::read_to_string(&file).map_err(|source| Error::Io {
                path: file.clone(),
                source,
            })?;
            let set = ReferenceSet::from_csv(Some(problem), &text)?;
            if set.objectives() != objectives {
                return Err(Error::Parse(format!(
                    "{} holds {}-objective points, expected {objectives}",
                    file.display(),
                    set.objectives()
                )));
            }
            std::fs::create_dir_all(&refset_path).map_err(|source| Error::Io {
                path: refset_path.clone(),
                source,
            })?;
            let dest = refset_path.join(refset_file_name(problem, objectives));
            write_file(&dest, &set.to_csv())?;
            println!("{} ({} points)", dest.display(), set.len());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Table(a) => cmd_table(a),
        Command::Trajectories(a) => cmd_trajectories(a),
        Command::Refset(a) => cmd_refset(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
