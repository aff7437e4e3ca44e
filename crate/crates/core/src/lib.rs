//! NSGA-II with adaptive decision-space discretization, objective-space
//! gridding, or both, together with the DTLZ/WFG benchmark problems, IGD/GD
//! indicators, Wilcoxon rank-sum comparisons and a batch experiment harness.
//!
//! The four algorithm variants share one generational loop and differ only in
//! the [`Strategy`] of their [`DiscretizationConfig`]:
//!
//! | strategy | decision variables rounded | objectives gridded for sorting |
//! |----------|----------------------------|--------------------------------|
//! | `none`   | no                         | no                             |
//! | `dd`     | yes                        | no                             |
//! | `od`     | no                         | yes                            |
//! | `bd`     | yes                        | yes                            |

pub mod discretization;
pub mod dominance;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod nsga2;
pub mod problems;
pub mod random;
pub mod stats;
pub mod types;
pub mod variation;

pub use discretization::{DiscretizationConfig, ResolutionProfile, Strategy};
pub use dominance::{dominates, weakly_dominates, Dominance};
pub use error::{Error, Result};
pub use harness::{ComparisonTable, ExperimentConfig, RunRecord};
pub use metrics::{gd, igd, igd_gd, ReferenceSet};
pub use nsga2::{AlgorithmConfig, GenerationTrace, RunOutput};
pub use problems::{ProblemId, ProblemSpec};
pub use random::RandomSource;
pub use stats::{SampleSummary, Significance, SignificanceMark};
pub use types::{Bounds, DecisionVector, Individual, ObjectiveVector, Population};
pub use variation::VariationConfig;
