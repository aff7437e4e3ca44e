use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::discretization::Strategy;
use crate::error::{Error, Result};
use crate::problems::ProblemId;
use crate::stats::{mark, SampleSummary, Significance, SignificanceMark};

use super::config::ExperimentClass;
use super::record::RunRecord;

/// Significance level of the table marks.
pub const ALPHA: f64 = 0.05;

/// Scientific notation with an explicit exponent sign: `2.3397e+4`.
pub fn format_sci(v: f64, decimals: usize) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let s = format!("{v:.decimals$e}");
    let (mantissa, exp) = s.split_once('e').expect("`e` format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{}", exp.abs())
}

/// `mean (std)` in scientific notation: `2.3397e+4 (5.46e+2)`.
pub fn format_mean_std(mean: f64, std: f64) -> String {
    format!("{} ({})", format_sci(mean, 4), format_sci(std, 2))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableCell {
    pub summary: SampleSummary,
    /// Against the baseline column (the baseline is compared with itself).
    pub mark: SignificanceMark,
    pub best: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub problem: ProblemId,
    pub objectives: usize,
    /// One cell per entry of [`ComparisonTable::algorithms`].
    pub cells: Vec<TableCell>,
}

/// `+ / - / =` counts of one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Tally {
    pub better: usize,
    pub worse: usize,
    pub equal: usize,
}

impl Tally {
    pub fn total(&self) -> usize {
        self.better + self.worse + self.equal
    }
}

impl std::fmt::Display for Tally {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}/{}", self.better, self.worse, self.equal)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    pub baseline: Strategy,
    pub algorithms: Vec<Strategy>,
    pub rows: Vec<TableRow>,
    pub footer: Vec<Tally>,
}

/// Aggregates final IGD values per `(problem, M)` row and algorithm column.
///
/// Every row needs at least two runs of every algorithm, and the baseline
/// must be among the algorithms.
pub fn render_table(records: &[RunRecord], baseline: Strategy) -> Result<ComparisonTable> {
    let mut grid: BTreeMap<(ProblemId, usize), BTreeMap<Strategy, Vec<(usize, f64)>>> =
        BTreeMap::new();
    for r in records {
        grid.entry((r.problem, r.objectives))
            .or_default()
            .entry(r.algorithm)
            .or_default()
            .push((r.run_index, r.final_igd));
    }
    let mut algorithms: Vec<Strategy> = grid
        .values()
        .flat_map(|row| row.keys().copied())
        .collect();
    algorithms.sort();
    algorithms.dedup();
    if !algorithms.contains(&baseline) {
        return Err(Error::usage(format!("no records for the baseline `{baseline}`")));
    }

    let mut rows = Vec::with_capacity(grid.len());
    for ((problem, objectives), by_algo) in grid {
        let mut summaries = Vec::with_capacity(algorithms.len());
        for algo in &algorithms {
            let mut runs = by_algo.get(algo).cloned().unwrap_or_default();
            if runs.len() < 2 {
                return Err(Error::usage(format!(
                    "{problem} M={objectives} {algo}: need at least two runs, found {}",
                    runs.len()
                )));
            }
            // Record order must not leak into the statistics.
            runs.sort_by_key(|&(i, _)| i);
            summaries.push(SampleSummary::new(runs.into_iter().map(|(_, v)| v).collect())?);
        }
        let base = &summaries[algorithms.iter().position(|&a| a == baseline).unwrap()];
        let marks = summaries
            .iter()
            .map(|s| mark(base, s, ALPHA))
            .collect::<Result<Vec<_>>>()?;
        let best = summaries
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.mean.total_cmp(&b.1.mean))
            .map(|(i, _)| i)
            .unwrap();
        let cells = summaries
            .into_iter()
            .zip(marks)
            .enumerate()
            .map(|(i, (summary, mark))| TableCell {
                summary,
                mark,
                best: i == best,
            })
            .collect();
        rows.push(TableRow {
            problem,
            objectives,
            cells,
        });
    }

    let mut footer = vec![Tally::default(); algorithms.len()];
    for row in &rows {
        for (tally, cell) in footer.iter_mut().zip(&row.cells) {
            match cell.mark.mark {
                Significance::Better => tally.better += 1,
                Significance::Worse => tally.worse += 1,
                Significance::Equal => tally.equal += 1,
            }
        }
    }
    Ok(ComparisonTable {
        baseline,
        algorithms,
        rows,
        footer,
    })
}

impl ComparisonTable {
    /// `problem,M,<algo>_mean,<algo>_std,<algo>_mark,...,best`, one line per
    /// row, then a `+/-/=` tally line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("problem,M");
        for a in &self.algorithms {
            let _ = write!(out, ",{a}_mean,{a}_std,{a}_mark");
        }
        out.push_str(",best\n");
        for row in &self.rows {
            let _ = write!(out, "{},{}", row.problem, row.objectives);
            let mut best = "";
            for (a, cell) in self.algorithms.iter().zip(&row.cells) {
                let _ = write!(
                    out,
                    ",{},{},{}",
                    format_sci(cell.summary.mean, 4),
                    format_sci(cell.summary.std, 2),
                    cell.mark.mark.symbol()
                );
                if cell.best {
                    best = a.token();
                }
            }
            let _ = writeln!(out, ",{best}");
        }
        out.push_str("+/-/=,");
        for tally in &self.footer {
            let _ = write!(out, ",,,{tally}");
        }
        out.push_str(",\n");
        out
    }

    /// Fixed-width text rendering; the best cell of each row carries a `*`.
    pub fn to_text(&self) -> String {
        let mut header = vec!["Problem".to_string(), "M".to_string()];
        header.extend(self.algorithms.iter().map(|a| a.algorithm_name().to_string()));
        let mut lines = vec![header];
        for row in &self.rows {
            let mut line = vec![row.problem.to_string().to_uppercase(), row.objectives.to_string()];
            for cell in &row.cells {
                line.push(format!(
                    "{} {}{}",
                    format_mean_std(cell.summary.mean, cell.summary.std),
                    cell.mark.mark.symbol(),
                    if cell.best { " *" } else { "" }
                ));
            }
            lines.push(line);
        }
        let mut footer = vec!["+/-/=".to_string(), String::new()];
        footer.extend(self.footer.iter().map(|t| t.to_string()));
        lines.push(footer);

        let widths: Vec<usize> = (0..lines[0].len())
            .map(|c| lines.iter().map(|l| l[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for line in &lines {
            let cols: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:<w$}"))
                .collect();
            out.push_str(cols.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// The named class whose `(M, n)` pairs cover every record, else `custom`.
pub fn infer_class(records: &[RunRecord]) -> ExperimentClass {
    ExperimentClass::NAMED
        .into_iter()
        .find(|c| {
            let allowed = c.instances();
            !records.is_empty()
                && records
                    .iter()
                    .all(|r| allowed.contains(&(r.objectives, r.variables)))
        })
        .unwrap_or(ExperimentClass::Custom)
}

/// `table_<class>.csv`
pub fn table_file_name(class: ExperimentClass) -> String {
    format!("table_{class}.csv")
}
