//! Constructive procedures: 3-AP-free bases, random local sets, additive
//! statistics of finite sets and equal-sum cubes.

mod ap_free;
mod cubes;
mod local_set;
mod sums;

pub use ap_free::{behrend_set, is_three_ap_free, three_ap_free_base, ApFreeBase, BaseMethod, EXACT_LIMIT};
pub use cubes::{
    cube_difference_bound, cube_hypothesis_holds, cube_point_set, find_equal_sum_cubes, CubeMode, CubeStructure,
};
pub use local_set::{
    ceil_power, check_local_set, exhaustive_heavy_subsets, random_local_set, ConstructionTrace, HeavyDeletion,
    LocalSetChecks, DEFAULT_HEAVY_BUDGET,
};
pub use sums::{additive_energy, check_repeated_sums, max_sum_multiplicity, RepeatedSumsCheck};

pub use crate::configuration::{c_sum as c_sum_configuration, c_sum_plus as c_sum_plus_configuration};
