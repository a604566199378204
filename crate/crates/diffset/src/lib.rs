//! Difference equalities and local distinct-difference properties.
//!
//! A finite set `A` of rationals has the `(k, l)`-local property when every
//! `k`-subset determines at least `l` distinct positive differences. This crate
//! provides exact tools for studying such sets:
//!
//! * [`equality`] and [`configuration`]: canonical difference equalities and
//!   configurations with exact rank, projection dimension and goodness tests.
//! * [`solution`]: generic solutions, distinct-difference counts, occurrences
//!   and local-property checks.
//! * [`implication`]: alignment, certification, boxes, blobs and minimal
//!   implications of anchored collections, plus a randomized verifier of
//!   their structural invariants in [`verify`].
//! * [`constructions`]: 3-AP-free bases, random local sets, repeated sums and
//!   equal-sum cubes.
//! * [`oracle`] and [`thresholds`]: a brute-force search for the minimum number
//!   of distinct differences and closed-form threshold formulas.
//!
//! Data-parallel loops use rayon when the `parallel` feature is on (default)
//! and plain iteration otherwise. Results never depend on the thread count.

pub mod combinatorics;
pub mod configuration;
pub mod constructions;
pub mod equality;
pub mod error;
pub mod implication;
pub mod linalg;
pub mod oracle;
pub mod par;
pub mod pointset;
pub mod solution;
pub mod thresholds;
pub mod verify;

pub use configuration::{Configuration, ConfigurationFile, Goodness};
pub use equality::DifferenceEquality;
pub use error::{Error, Result};
pub use pointset::PointSet;
