//! Wilcoxon rank-sum test and the `+ / - / =` marks used in comparison tables.

use std::fmt;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Combined sample sizes below this use the exact permutation distribution.
pub const EXACT_LIMIT: usize = 20;

/// Mean and sample standard deviation of one cell's final indicator values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub values: Vec<f64>,
    pub mean: f64,
    pub std: f64,
}

impl SampleSummary {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::usage("summary of an empty sample"));
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Ok(Self { values, mean, std })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Significance {
    Better,
    Worse,
    Equal,
}

impl Significance {
    pub fn symbol(self) -> &'static str {
        match self {
            Significance::Better => "+",
            Significance::Worse => "-",
            Significance::Equal => "=",
        }
    }
}

impl fmt::Display for Significance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignificanceMark {
    pub mark: Significance,
    pub p_value: f64,
}

/// Midranks of the pooled sample, 1-based.
fn midranks(pooled: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&a, &b| pooled[a].total_cmp(&pooled[b]));
    let mut ranks = vec![0.0; pooled.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && pooled[order[j + 1]] == pooled[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Sizes of the tie groups in the pooled sample.
fn tie_groups(pooled: &[f64]) -> Vec<usize> {
    let mut sorted = pooled.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted
        .chunk_by(|a, b| a == b)
        .map(|g| g.len())
        .collect()
}

/// Rank sum of `a` within the pooled sample `a ++ b`.
pub fn rank_sum(a: &[f64], b: &[f64]) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    midranks(&pooled)[..a.len()].iter().sum()
}

/// Two-sided p-value from the exact permutation distribution of the rank
/// sum, computed by dynamic programming over doubled (integer) midranks.
fn exact_p_value(a: &[f64], b: &[f64]) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let doubled: Vec<usize> = midranks(&pooled)
        .iter()
        .map(|r| (2.0 * r).round() as usize)
        .collect();
    let n_a = a.len();
    let observed: usize = doubled[..n_a].iter().sum();
    let max_sum: usize = doubled.iter().sum();

    // ways[k][s]: subsets of size k with doubled rank sum s.
    let mut ways = vec![vec![0.0f64; max_sum + 1]; n_a + 1];
    ways[0][0] = 1.0;
    for &r in &doubled {
        for k in (1..=n_a).rev() {
            let (lower, upper) = ways.split_at_mut(k);
            let (src, dst) = (&lower[k - 1], &mut upper[0]);
            for s in (r..=max_sum).rev() {
                dst[s] += src[s - r];
            }
        }
    }
    let dist = &ways[n_a];
    let total: f64 = dist.iter().sum();
    let lower: f64 = dist[..=observed].iter().sum();
    let upper: f64 = dist[observed..].iter().sum();
    (2.0 * lower.min(upper) / total).min(1.0)
}

/// Normal approximation with tie and continuity corrections.
fn normal_p_value(a: &[f64], b: &[f64]) -> f64 {
    let (n_a, n_b) = (a.len() as f64, b.len() as f64);
    let n = n_a + n_b;
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let u = rank_sum(a, b) - n_a * (n_a + 1.0) / 2.0;
    let mean = n_a * n_b / 2.0;
    let tie_term: f64 = tie_groups(&pooled)
        .into_iter()
        .map(|t| {
            let t = t as f64;
            t * t * t - t
        })
        .sum();
    let variance = n_a * n_b / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if variance <= 0.0 {
        return 1.0;
    }
    let z = ((u - mean).abs() - 0.5).max(0.0) / variance.sqrt();
    let normal = Normal::standard();
    (2.0 * normal.sf(z)).min(1.0)
}

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) p-value.
///
/// Exact below a combined size of [`EXACT_LIMIT`], normal approximation otherwise.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::usage(format!(
            "rank-sum test needs at least two values per sample, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::usage("rank-sum test on NaN values"));
    }
    let first = a[0];
    if a.iter().chain(b).all(|v| *v == first) {
        return Ok(1.0);
    }
    Ok(if a.len() + b.len() < EXACT_LIMIT {
        exact_p_value(a, b)
    } else {
        normal_p_value(a, b)
    })
}

/// Marks `variant` against `baseline` for a minimized indicator. Direction
/// comes from the mean ranks: a significantly lower-ranked variant is `+`.
pub fn mark(baseline: &SampleSummary, variant: &SampleSummary, alpha: f64) -> Result<SignificanceMark> {
    let p_value = wilcoxon_rank_sum(&variant.values, &baseline.values)?;
    let mark = if p_value < alpha {
        let n_v = variant.values.len() as f64;
        let n_b = baseline.values.len() as f64;
        let u_variant = rank_sum(&variant.values, &baseline.values) - n_v * (n_v + 1.0) / 2.0;
        if u_variant < n_v * n_b / 2.0 {
            Significance::Better
        } else {
            Significance::Worse
        }
    } else {
        Significance::Equal
    };
    Ok(SignificanceMark { mark, p_value })
}
