// SPDX-License-Identifier: Apache-2.0

//! Exact occurrence counting and packing maximization for permutation
//! patterns, with closed forms for the layered patterns `(1^a, a)` and
//! `(1, 1, b)`.
//!
//! Counts are exact (`BigUint`), densities are exact rationals, and every
//! search is deterministic regardless of parallelism.

pub mod arith;
pub mod blocks;
pub mod cli;
pub mod count;
pub mod enumerate;
pub mod error;
pub mod formulas;
pub mod pattern;
pub mod perm;
pub mod search;
pub mod transforms;
pub mod verify;

pub use arith::{binomial, Count};
pub use blocks::{
    build_from_blocks, decompose_blocks, parse_blocks, Block, BlockKind, BlockStructure,
};
pub use count::{count_occurrences, count_occurrences_layered};
pub use enumerate::{compositions, enumerate_all, enumerate_layered, DEFAULT_MAX_EXHAUSTIVE_N};
pub use error::{Error, Result};
pub use formulas::{
    binom_inequality_check, density_2beta, density_alpha_alpha, g_formula_2beta,
    g_formula_alpha_alpha, DensityReport,
};
pub use pattern::{PatternFamily, PatternSpec};
pub use perm::{parse_permutation, Permutation};
pub use search::{
    g_k, galvin_ratios, max_over_all, max_over_layered, RatioMode, RatioTable, Restriction,
    SearchConfig, SearchResult,
};
pub use transforms::{
    absorb_isolated_points, merge_antilayer_with_first_layer, move_point_to_last_layer,
    push_antilayers_left, sort_layers, NormalForm, RewriteOutcome,
};
