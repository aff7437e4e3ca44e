//! Pareto dominance predicates (minimization).

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Outcome of comparing two objective vectors under Pareto dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// The left vector dominates the right one.
    Dominates,
    /// The left vector is dominated by the right one.
    Dominated,
    /// Equal vectors or an incomparable pair.
    NonDominated,
}

/// Single-pass dominance comparison. Lengths must match; this is only checked in debug builds.
#[inline]
pub fn compare(a: &[f64], b: &[f64]) -> Dominance {
    debug_assert_eq!(a.len(), b.len());
    let mut a_better = false;
    let mut b_better = false;
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(Ordering::Less) => a_better = true,
            Some(Ordering::Greater) => b_better = true,
            _ => {}
        }
        if a_better && b_better {
            return Dominance::NonDominated;
        }
    }
    match (a_better, b_better) {
        (true, false) => Dominance::Dominates,
        (false, true) => Dominance::Dominated,
        _ => Dominance::NonDominated,
    }
}

fn check_lengths(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::usage(format!(
            "objective vectors differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// `a` dominates `b`: no worse in every objective and strictly better in one.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    check_lengths(a, b)?;
    Ok(compare(a, b) == Dominance::Dominates)
}

/// `a` is no worse than `b` in every objective.
pub fn weakly_dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    check_lengths(a, b)?;
    Ok(a.iter().zip(b).all(|(x, y)| x <= y))
}
