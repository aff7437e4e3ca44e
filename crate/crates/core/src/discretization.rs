//! Decision-space and objective-space discretization.
//!
//! Decision variables are rounded to an adaptive number of decimal places
//! chosen from the per-variable standard deviation of the population: a
//! population spread like a uniform sample keeps `d_min` places, a collapsed
//! one keeps `d_max`. Objective vectors are min-max normalized and rounded to
//! a fixed number of places before non-dominated sorting.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{Bounds, DecisionVector, ObjectiveVector};

/// Standard deviation of the uniform distribution on `[0, 1]`.
pub const SIGMA_MAX: f64 = 0.288_675_134_594_812_9; // 1 / sqrt(12)

/// Tolerance on normalized objective components before rounding.
const UNIT_TOLERANCE: f64 = 1e-12;

/// Which spaces are discretized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    None,
    Dd,
    Od,
    Bd,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::None, Strategy::Dd, Strategy::Od, Strategy::Bd];

    pub fn token(self) -> &'static str {
        match self {
            Strategy::None => "none",
            Strategy::Dd => "dd",
            Strategy::Od => "od",
            Strategy::Bd => "bd",
        }
    }

    /// Display name, e.g. `NSGA-II-DD`.
    pub fn algorithm_name(self) -> &'static str {
        match self {
            Strategy::None => "NSGA-II",
            Strategy::Dd => "NSGA-II-DD",
            Strategy::Od => "NSGA-II-OD",
            Strategy::Bd => "NSGA-II-BD",
        }
    }

    pub fn discretizes_decisions(self) -> bool {
        matches!(self, Strategy::Dd | Strategy::Bd)
    }

    pub fn discretizes_objectives(self) -> bool {
        matches!(self, Strategy::Od | Strategy::Bd)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Strategy::ALL
            .into_iter()
            .find(|a| a.token() == lower || a.algorithm_name().eq_ignore_ascii_case(&lower))
            .ok_or_else(|| Error::config("algorithm", format!("unknown algorithm `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscretizationConfig {
    pub strategy: Strategy,
    pub d_min: u32,
    pub d_max: u32,
    pub objective_decimals: u32,
}

impl DiscretizationConfig {
    /// `d_min = 2`, `d_max = 8`, two objective decimals.
    pub fn new(strategy: Strategy) -> Self {
        Self {
            strategy,
            d_min: 2,
            d_max: 8,
            objective_decimals: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d_min > self.d_max || self.d_max > 15 {
            return Err(Error::config(
                "d_min/d_max",
                format!(
                    "need 0 <= d_min <= d_max <= 15, got {} and {}",
                    self.d_min, self.d_max
                ),
            ));
        }
        if !(1..=15).contains(&self.objective_decimals) {
            return Err(Error::config(
                "objective_decimals",
                format!("{} is outside 1..=15", self.objective_decimals),
            ));
        }
        Ok(())
    }
}

impl Default for DiscretizationConfig {
    fn default() -> Self {
        Self::new(Strategy::None)
    }
}

/// Per-variable decimal places together with the standard deviations they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionProfile {
    pub decimals: Vec<u32>,
    pub sigmas: Vec<f64>,
}

/// Rounds half away from zero to `decimals` places.
#[inline]
pub fn round_to_decimals(v: f64, decimals: u32) -> f64 {
    let scale = POWERS_OF_TEN[decimals as usize];
    (v * scale).round() / scale
}

const POWERS_OF_TEN: [f64; 16] = [
    1e0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10, 1e11, 1e12, 1e13, 1e14, 1e15,
];

/// Decimal places for one variable given its normalized standard deviation.
pub fn decimals_for_sigma(sigma: f64, d_min: u32, d_max: u32) -> u32 {
    let span = f64::from(d_max - d_min);
    let d = ((1.0 - sigma / SIGMA_MAX) * span + f64::from(d_min)).round();
    d.clamp(f64::from(d_min), f64::from(d_max)) as u32
}

/// Adaptive resolution from the spread of `decisions` in normalized coordinates
/// (population standard deviation, divisor `N`).
pub fn compute_resolution<V: AsRef<[f64]>>(
    decisions: &[V],
    bounds: &Bounds,
    cfg: &DiscretizationConfig,
) -> Result<ResolutionProfile> {
    if decisions.is_empty() {
        return Err(Error::usage("cannot compute a resolution profile of an empty population"));
    }
    let n = bounds.len();
    if let Some(bad) = decisions.iter().find(|x| x.as_ref().len() != n) {
        return Err(Error::usage(format!(
            "decision vector has {} components, expected {n}",
            bad.as_ref().len()
        )));
    }
    let count = decisions.len() as f64;
    let mut mean = vec![0.0; n];
    for x in decisions {
        for (i, v) in x.as_ref().iter().enumerate() {
            mean[i] += (v - bounds.lower()[i]) / bounds.width(i);
        }
    }
    for m in &mut mean {
        *m /= count;
    }
    let mut var = vec![0.0; n];
    for x in decisions {
        for (i, v) in x.as_ref().iter().enumerate() {
            let d = (v - bounds.lower()[i]) / bounds.width(i) - mean[i];
            var[i] += d * d;
        }
    }
    let sigmas: Vec<f64> = var.into_iter().map(|s| (s / count).sqrt()).collect();
    let decimals = sigmas
        .iter()
        .map(|&s| decimals_for_sigma(s, cfg.d_min, cfg.d_max))
        .collect();
    Ok(ResolutionProfile { decimals, sigmas })
}

/// Rounds each normalized component to its profile's decimal places and maps back into bounds.
pub fn discretize_decision(
    x: &[f64],
    profile: &ResolutionProfile,
    bounds: &Bounds,
) -> Result<DecisionVector> {
    bounds.check(x)?;
    if profile.decimals.len() != x.len() {
        return Err(Error::usage(format!(
            "profile covers {} variables, vector has {}",
            profile.decimals.len(),
            x.len()
        )));
    }
    let out = x
        .iter()
        .zip(&profile.decimals)
        .enumerate()
        .map(|(i, (&v, &d))| {
            let lo = bounds.lower()[i];
            let width = bounds.width(i);
            let unit = round_to_decimals((v - lo) / width, d);
            bounds.clamp(i, lo + unit * width)
        })
        .collect();
    Ok(DecisionVector(out))
}

fn check_same_length(raw: &[ObjectiveVector]) -> Result<usize> {
    let first = raw
        .first()
        .ok_or_else(|| Error::usage("cannot normalize an empty set of objective vectors"))?;
    let m = first.len();
    if raw.iter().any(|f| f.len() != m) {
        return Err(Error::usage("objective vectors differ in length"));
    }
    Ok(m)
}

/// Maps each objective through `(f - lower) / (upper - lower)`; a zero-width
/// range maps to 0.
pub fn normalize_objectives_with(
    raw: &[ObjectiveVector],
    lower: &[f64],
    upper: &[f64],
) -> Result<Vec<ObjectiveVector>> {
    let m = check_same_length(raw)?;
    if lower.len() != m || upper.len() != m {
        return Err(Error::usage("normalization bounds do not match the objective count"));
    }
    Ok(raw
        .iter()
        .map(|f| {
            ObjectiveVector(
                f.iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let range = upper[j] - lower[j];
                        if range > 0.0 {
                            (v - lower[j]) / range
                        } else {
                            0.0
                        }
                    })
                    .collect(),
            )
        })
        .collect())
}

/// Per-objective min-max normalization over the supplied set.
pub fn normalize_objectives(raw: &[ObjectiveVector]) -> Result<Vec<ObjectiveVector>> {
    let m = check_same_length(raw)?;
    let mut lower = vec![f64::INFINITY; m];
    let mut upper = vec![f64::NEG_INFINITY; m];
    for f in raw {
        for (j, v) in f.iter().enumerate() {
            lower[j] = lower[j].min(*v);
            upper[j] = upper[j].max(*v);
        }
    }
    normalize_objectives_with(raw, &lower, &upper)
}

/// Rounds a normalized objective vector onto the `10^-decimals` grid.
pub fn discretize_objectives(normalized: &[f64], decimals: u32) -> Result<ObjectiveVector> {
    if let Some(v) = normalized
        .iter()
        .find(|v| !(**v >= -UNIT_TOLERANCE && **v <= 1.0 + UNIT_TOLERANCE))
    {
        return Err(Error::usage(format!(
            "normalized objective {v} lies outside [0, 1]"
        )));
    }
    Ok(ObjectiveVector(
        normalized
            .iter()
            .map(|&v| round_to_decimals(v, decimals).clamp(0.0, 1.0))
            .collect(),
    ))
}

/// Normalizes `raw` over itself and rounds every vector onto the grid.
pub fn grid_objectives(raw: &[ObjectiveVector], decimals: u32) -> Result<Vec<ObjectiveVector>> {
    normalize_objectives(raw)?
        .iter()
        .map(|f| discretize_objectives(f, decimals))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ov(v: &[f64]) -> ObjectiveVector {
        ObjectiveVector(v.to_vec())
    }

    #[test]
    fn sigma_max_value() {
        assert_eq!(SIGMA_MAX, 1.0 / 12f64.sqrt());
    }

    #[test]
    fn decimals_formula() {
        assert_eq!(decimals_for_sigma(SIGMA_MAX, 2, 8), 2);
        assert_eq!(decimals_for_sigma(0.0, 2, 8), 8);
        assert_eq!(decimals_for_sigma(0.5 * SIGMA_MAX, 2, 8), 5);
        // Above sigma_max the formula would undershoot d_min.
        assert_eq!(decimals_for_sigma(0.5, 2, 8), 2);
    }

    #[test]
    fn resolution_from_population() {
        let bounds = Bounds::new(vec![0.0, 0.0, 10.0], vec![1.0, 4.0, 20.0]).unwrap();
        // Variable 0 constant, variable 1 at both ends (sigma = 0.5), variable 2 spread.
        let pop = vec![
            vec![0.3, 0.0, 10.0],
            vec![0.3, 4.0, 20.0],
            vec![0.3, 0.0, 15.0],
            vec![0.3, 4.0, 15.0],
        ];
        let cfg = DiscretizationConfig::new(Strategy::Dd);
        let p = compute_resolution(&pop, &bounds, &cfg).unwrap();
        assert_eq!(p.sigmas[0], 0.0);
        assert!((p.sigmas[1] - 0.5).abs() < 1e-15);
        assert!((p.sigmas[2] - (0.125f64).sqrt()).abs() < 1e-15);
        assert_eq!(p.decimals, vec![8, 2, 2]);
        let empty: Vec<Vec<f64>> = vec![];
        assert!(compute_resolution(&empty, &bounds, &cfg).is_err());
    }

    #[test]
    fn rounding_examples() {
        let bounds = Bounds::unit(1);
        let profile = ResolutionProfile {
            decimals: vec![2],
            sigmas: vec![SIGMA_MAX],
        };
        let x = discretize_decision(&[0.123456], &profile, &bounds).unwrap();
        assert_eq!(x[0], 0.12);
        let x = discretize_decision(&[0.125], &profile, &bounds).unwrap();
        assert_eq!(x[0], 0.13);
        let x = discretize_decision(&[0.37], &profile, &bounds).unwrap();
        assert_eq!(x[0], 0.37);
    }

    #[test]
    fn decision_rounding_respects_scaled_bounds() {
        let bounds = Bounds::new(vec![0.0], vec![4.0]).unwrap();
        let profile = ResolutionProfile {
            decimals: vec![2],
            sigmas: vec![0.0],
        };
        // 1.0 / 4 = 0.25 is on the grid; 3.999 normalizes to 0.99975 -> 1.0.
        assert_eq!(discretize_decision(&[1.0], &profile, &bounds).unwrap()[0], 1.0);
        assert_eq!(discretize_decision(&[3.999], &profile, &bounds).unwrap()[0], 4.0);
        assert!(discretize_decision(&[4.5], &profile, &bounds).is_err());
    }

    #[test]
    fn normalization_examples() {
        let n = normalize_objectives(&[ov(&[450.0, 869.0]), ov(&[453.0, 870.0])]).unwrap();
        assert_eq!(n, vec![ov(&[0.0, 0.0]), ov(&[1.0, 1.0])]);
        let n = normalize_objectives(&[ov(&[3.0, -2.0])]).unwrap();
        assert_eq!(n, vec![ov(&[0.0, 0.0])]);
        let n = normalize_objectives(&[ov(&[1.0, 5.0]), ov(&[2.0, 5.0]), ov(&[3.0, 5.0])]).unwrap();
        assert!(n.iter().all(|f| f[1] == 0.0));
        assert_eq!(n[1][0], 0.5);
        assert!(normalize_objectives(&[]).is_err());
        assert!(normalize_objectives(&[ov(&[1.0]), ov(&[1.0, 2.0])]).is_err());
    }

    #[test]
    fn worked_example_with_fixed_divisor() {
        let raw = [ov(&[450.0, 523.0, 651.0, 733.0, 869.0])];
        let n = normalize_objectives_with(&raw, &[0.0; 5], &[1000.0; 5]).unwrap();
        assert_eq!(n[0], ov(&[0.450, 0.523, 0.651, 0.733, 0.869]));
        let d = discretize_objectives(&n[0], 2).unwrap();
        assert_eq!(d, ov(&[0.45, 0.52, 0.65, 0.73, 0.87]));
    }

    #[test]
    fn objective_rounding_rules() {
        let d = discretize_objectives(&[0.455, 0.2], 2).unwrap();
        assert_eq!(d[0], 0.46);
        let on_grid = [0.0, 0.01, 0.37, 1.0];
        assert_eq!(discretize_objectives(&on_grid, 2).unwrap().0, on_grid.to_vec());
        assert!(discretize_objectives(&[1.1], 2).is_err());
        assert!(discretize_objectives(&[-0.01], 2).is_err());
        assert!(discretize_objectives(&[1.0 + 1e-13], 2).is_ok());
    }

    #[test]
    fn config_validation_and_tokens() {
        assert!(DiscretizationConfig::new(Strategy::Bd).validate().is_ok());
        let mut c = DiscretizationConfig::new(Strategy::Dd);
        c.d_min = 9;
        assert!(c.validate().is_err());
        c.d_min = 2;
        c.d_max = 16;
        assert!(c.validate().is_err());
        c.d_max = 8;
        c.objective_decimals = 0;
        assert!(c.validate().is_err());
        for s in Strategy::ALL {
            assert_eq!(s.token().parse::<Strategy>().unwrap(), s);
        }
        assert!("xd".parse::<Strategy>().is_err());
        assert!(Strategy::Bd.discretizes_decisions() && Strategy::Bd.discretizes_objectives());
        assert!(!Strategy::Od.discretizes_decisions());
    }
}
