//! The NSGA-II engine: non-dominated sorting, crowding distance,
//! environmental selection and the generational loop.

mod crowding;
mod engine;
mod selection;
mod sort;

pub use crowding::crowding_distance;
pub use engine::{run, run_observed, AlgorithmConfig, GenerationTrace, RunOutput};
pub use selection::environmental_selection;
pub use sort::{fast_nondominated_sort, nondominated_fronts};
