use std::collections::HashSet;

use moea_disc::harness::{
    cell_seed, cells, emit_trajectories, format_mean_std, infer_class, load_config, load_records,
    render_table, run_experiment, ConfigOverrides, ExperimentClass, ExperimentConfig, FinalMember,
    RunRecord, SCHEMA_VERSION,
};
use moea_disc::{
    DecisionVector, GenerationTrace, ObjectiveVector, ProblemId, Significance, Strategy,
};

fn small_config(out: &std::path::Path) -> ExperimentConfig {
    load_config(
        None,
        &ConfigOverrides {
            class: Some(ExperimentClass::Standard),
            problems: vec![ProblemId::Dtlz2, ProblemId::Wfg4],
            algorithms: vec![Strategy::None, Strategy::Bd],
            runs: Some(3),
            population_size: Some(20),
            max_generations: Some(10),
            output: Some(out.to_path_buf()),
            ..Default::default()
        },
    )
    .unwrap()
}

fn fake_record(problem: ProblemId, algorithm: Strategy, run_index: usize, igd: f64) -> RunRecord {
    RunRecord {
        schema_version: SCHEMA_VERSION,
        problem,
        objectives: 3,
        variables: 7,
        algorithm,
        run_index,
        seed: cell_seed(0, problem, 3, algorithm, run_index),
        population_size: 4,
        max_generations: 2,
        traces: (0..=2)
            .map(|g| GenerationTrace {
                generation: g,
                igd: Some(igd + g as f64),
                gd: Some(igd / 2.0),
            })
            .collect(),
        final_population: vec![FinalMember {
            decision: DecisionVector(vec![0.5; 7]),
            objectives: ObjectiveVector(vec![igd, 1.0, 2.0]),
        }],
        final_igd: igd,
        final_gd: igd / 2.0,
        duration: None,
    }
}

#[test]
fn config_round_trips_through_json() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let path = dir.path().join("cfg.json");
    cfg.save(&path).unwrap();
    assert_eq!(ExperimentConfig::load(&path).unwrap(), cfg);
    let reloaded = load_config(Some(&path), &ConfigOverrides::default()).unwrap();
    assert_eq!(reloaded, cfg);
}

#[test]
fn cell_seeds_are_distinct_and_stable() {
    let mut cfg = ExperimentConfig::for_class(ExperimentClass::ManyObjective);
    cfg.runs = 30;
    let all = cells(&cfg);
    assert_eq!(all.len(), 10 * 3 * 4 * 30);
    let seeds: HashSet<u64> = all.iter().map(|c| c.seed).collect();
    assert_eq!(seeds.len(), all.len());
    assert_eq!(cells(&cfg), all);
    // FNV-1a over the cell key then splitmix64, computed independently.
    assert_eq!(cell_seed(0, ProblemId::Dtlz1, 3, Strategy::None, 0), 15297420865448680967);
    assert_ne!(
        cell_seed(0, ProblemId::Dtlz1, 3, Strategy::None, 0),
        cell_seed(1, ProblemId::Dtlz1, 3, Strategy::None, 0)
    );
}

#[test]
fn batch_writes_one_record_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path());
    cfg.problems = vec![ProblemId::Dtlz2];
    cfg.algorithms = vec![Strategy::Od];
    let outcome = run_experiment(&cfg, 2).unwrap();
    assert!(outcome.is_success());
    assert_eq!(outcome.records.len(), 3);
    let seeds: HashSet<u64> = outcome.records.iter().map(|r| r.seed).collect();
    assert_eq!(seeds.len(), 3);
    for r in &outcome.records {
        assert_eq!(r.traces.len(), cfg.max_generations + 1);
        assert_eq!(r.final_population.len(), cfg.population_size);
        assert_eq!(r.final_igd, r.traces.last().unwrap().igd.unwrap());
        let path = dir.path().join(format!("dtlz2_M3_od_seed{}.json", r.seed));
        assert!(path.exists(), "{}", path.display());
        assert_eq!(&RunRecord::load(&path).unwrap(), r);
    }
    assert!(dir.path().join("timings.csv").exists());
    assert_eq!(load_records(dir.path()).unwrap(), outcome.records);
}

#[test]
fn outputs_do_not_depend_on_job_count() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let ra = run_experiment(&small_config(a.path()), 1).unwrap();
    let rb = run_experiment(&small_config(b.path()), 3).unwrap();
    assert_eq!(ra.records, rb.records);
    for r in &ra.records {
        let fa = std::fs::read(a.path().join(r.file_name())).unwrap();
        let fb = std::fs::read(b.path().join(r.file_name())).unwrap();
        assert_eq!(fa, fb);
    }
    let ta = render_table(&ra.records, Strategy::None).unwrap().to_csv();
    let tb = render_table(&rb.records, Strategy::None).unwrap().to_csv();
    assert_eq!(ta, tb);
}

#[test]
fn record_round_trip_is_exact() {
    let r = fake_record(ProblemId::Wfg2, Strategy::Dd, 4, 0.1 + 0.2);
    let back = RunRecord::from_json(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.to_json(), r.to_json());
    assert_eq!(r.file_name(), format!("wfg2_M3_dd_seed{}.json", r.seed));
    let stale = r.to_json().replace("\"schema_version\":1", "\"schema_version\":99");
    assert!(RunRecord::from_json(&stale).is_err());
}

#[test]
fn baseline_against_itself_is_a_tie() {
    let recs: Vec<RunRecord> = (0..5)
        .map(|i| fake_record(ProblemId::Dtlz1, Strategy::None, i, 1.0 + i as f64))
        .collect();
    let table = render_table(&recs, Strategy::None).unwrap();
    assert_eq!(table.rows.len(), 1);
    assert_eq!(table.rows[0].cells[0].mark.mark, Significance::Equal);
    assert_eq!(table.footer[0].to_string(), "0/0/1");
}

#[test]
fn decisive_variant_gets_plus_and_best() {
    let mut recs = Vec::new();
    for i in 0..10 {
        recs.push(fake_record(ProblemId::Dtlz1, Strategy::None, i, 10.0 + i as f64));
        recs.push(fake_record(ProblemId::Dtlz1, Strategy::Dd, i, 1.0 + i as f64 * 0.1));
    }
    let table = render_table(&recs, Strategy::None).unwrap();
    let dd = &table.rows[0].cells[1];
    assert_eq!(dd.mark.mark, Significance::Better);
    assert!(dd.best);
    assert!(!table.rows[0].cells[0].best);
    assert_eq!(table.footer[1].to_string(), "1/0/0");
    for t in &table.footer {
        assert_eq!(t.total(), table.rows.len());
    }
    let csv = table.to_csv();
    assert!(csv.starts_with("problem,M,none_mean,none_std,none_mark,dd_mean,dd_std,dd_mark,best\n"));
    assert!(csv.contains("dtlz1,3,1.4500e+1,3.03e+0,=,1.4500e+0,3.03e-1,+,dd\n"), "{csv}");
}

#[test]
fn table_needs_a_baseline_and_two_runs() {
    let recs = vec![
        fake_record(ProblemId::Dtlz1, Strategy::Dd, 0, 1.0),
        fake_record(ProblemId::Dtlz1, Strategy::Dd, 1, 2.0),
    ];
    assert!(render_table(&recs, Strategy::None).is_err());
    let single = vec![fake_record(ProblemId::Dtlz1, Strategy::None, 0, 1.0)];
    assert!(render_table(&single, Strategy::None).is_err());
}

#[test]
fn mean_std_format() {
    assert_eq!(format_mean_std(23397.4, 546.2), "2.3397e+4 (5.46e+2)");
}

#[test]
fn trajectory_rows() {
    let mut recs = Vec::new();
    for algo in Strategy::ALL {
        let mut r = fake_record(ProblemId::Dtlz4, algo, 0, 1.0);
        r.objectives = 10;
        r.traces = (0..=200)
            .map(|g| GenerationTrace {
                generation: g,
                igd: Some(1.0),
                gd: Some(0.5),
            })
            .collect();
        recs.push(r);
    }
    let csv = emit_trajectories(&recs, ProblemId::Dtlz4, 10);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "generation,algorithm,seed,igd,gd");
    assert_eq!(lines.len(), 1 + 804);
    assert_eq!(emit_trajectories(&[], ProblemId::Dtlz4, 10), "generation,algorithm,seed,igd,gd\n");
}

#[test]
fn class_inference() {
    let recs = vec![fake_record(ProblemId::Dtlz1, Strategy::None, 0, 1.0)];
    assert_eq!(infer_class(&recs), ExperimentClass::Standard);
    assert_eq!(infer_class(&[]), ExperimentClass::Custom);
}

#[test]
fn mismatched_reference_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path());
    cfg.problems = vec![ProblemId::Dtlz2];
    let cache = dir.path().join("refs");
    std::fs::create_dir_all(&cache).unwrap();
    std::fs::write(cache.join("dtlz2_M3.csv"), "0,1\n1,0\n").unwrap();
    cfg.refset_path = Some(cache);
    assert!(run_experiment(&cfg, 1).is_err());
}

#[test]
fn failing_cell_is_reported_and_the_batch_continues() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path());
    cfg.problems = vec![ProblemId::Dtlz2];
    cfg.algorithms = vec![Strategy::None];
    // A directory squatting on one record's file name makes that write fail.
    let victim = cells(&cfg)[1];
    std::fs::create_dir_all(dir.path().join(format!("dtlz2_M3_none_seed{}.json", victim.seed))).unwrap();
    let outcome = run_experiment(&cfg, 2).unwrap();
    assert_eq!(outcome.records.len(), 2);
    assert_eq!(outcome.failures.len(), 1);
    assert_eq!(outcome.failures[0].cell, victim);
    assert!(dir.path().join("failures.csv").exists());
}
