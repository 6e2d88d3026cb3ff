//! Brute-force oracles, seeded generators and the search driver.

mod brute;
mod generate;
mod search;

pub use brute::{brute_max_convex_subset, brute_max_convolution, CONVEX_SUBSET_CAP, CONVOLUTION_CAP};
pub use generate::{
    random_dyadic, random_kurtz_polynomial, random_point_set, random_real_rooted, random_sps,
    random_two_factor_kurtz, trial_rng, ExperimentConfig, SpsMode,
};
pub use search::{search_extremal_kurtz, SearchRecord, SearchReport};
