use std::fmt::Write as _;

use crate::problems::ProblemId;

use super::record::RunRecord;

pub const TRAJECTORY_HEADER: &str = "generation,algorithm,seed,igd,gd";

/// `traj_<problem>_M<M>.csv`
pub fn trajectory_file_name(problem: ProblemId, objectives: usize) -> String {
    format!("traj_{problem}_M{objectives}.csv")
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

/// Long-format CSV of every trace point of the records for `(problem, M)`.
///
/// Rows follow record order (callers pass canonically sorted records), then
/// generation. Indicator values are written in shortest round-trip form;
/// a missing value is an empty field.
pub fn emit_trajectories(records: &[RunRecord], problem: ProblemId, objectives: usize) -> String {
    let mut out = String::from(TRAJECTORY_HEADER);
    out.push('\n');
    for r in records
        .iter()
        .filter(|r| r.problem == problem && r.objectives == objectives)
    {
        for t in &r.traces {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                t.generation,
                r.algorithm,
                r.seed,
                cell(t.igd),
                cell(t.gd)
            );
        }
    }
    out
}
