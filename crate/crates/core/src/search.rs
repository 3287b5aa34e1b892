// SPDX-License-Identifier: Apache-2.0

//! Exact maximization of occurrence counts.
//!
//! The search spaces are split into fixed, deterministic chunks that are
//! scored independently (in parallel when a pool is available) and combined
//! by keeping the larger count and, on ties, the lexicographically smallest
//! witnesses. That reduction is associative and commutative, so results do
//! not depend on the worker count or the schedule.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial, decimal_string, factorial, ratio, serialize_uint, Count};
use crate::blocks::{decompose_blocks, layered_from_sizes};
use crate::count::{
    count_layered_u128, count_occurrences, count_occurrences_layered, PatternCounter,
};
use crate::enumerate::{composition_from_mask, DEFAULT_MAX_EXHAUSTIVE_N};
use crate::error::{Error, Result};
use crate::formulas::{g_formula_2beta, g_formula_alpha_alpha};
use crate::pattern::PatternSpec;
use crate::perm::{next_permutation, Permutation};

pub const DEFAULT_MAX_LAYERED_N: usize = 24;
pub const DEFAULT_WITNESS_CAP: usize = 10;
const MAX_LAYERED_HARD_LIMIT: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest `n` searched over all of `S_n`.
    pub max_exhaustive_n: usize,
    /// Largest `n` searched over all `2^(n-1)` layered permutations.
    pub max_layered_n: usize,
    pub witness_cap: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_exhaustive_n: DEFAULT_MAX_EXHAUSTIVE_N,
            max_layered_n: DEFAULT_MAX_LAYERED_N,
            witness_cap: DEFAULT_WITNESS_CAP,
            workers: None,
        }
    }
}

impl SearchConfig {
    fn install<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        match self.workers {
            None => Ok(job()),
            Some(w) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(w.max(1))
                    .build()
                    .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
                Ok(pool.install(job))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Restriction {
    All,
    Layered,
    /// `A L_1 .. L_k` with every `|L_i| >= 2` and `|L_k| >= |A|`.
    AntilayerThenLayers(usize),
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Restriction::All => f.write_str("all"),
            Restriction::Layered => f.write_str("layered"),
            Restriction::AntilayerThenLayers(k) => write!(f, "antilayer_then_layers({k})"),
        }
    }
}

/// Extra facts about the optimum of a `g_k` search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GkFlags {
    /// `n >= 2 + k * beta`, so a structure with nonzero count can exist.
    pub feasible: bool,
    /// Every reported witness has `|A| >= 2` and `|L_k| >= beta`.
    pub witnesses_satisfy_sizes: bool,
    /// Some reported witness has an empty antilayer.
    pub empty_antilayer_attains_max: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub pattern: PatternSpec,
    pub n: usize,
    pub restriction: Restriction,
    pub max_count: Count,
    /// Lexicographically smallest maximizers, at most `witness_cap`.
    pub witnesses: Vec<Permutation>,
    pub witness_cap: usize,
    pub space_size: Count,
    pub gk_flags: Option<GkFlags>,
}

impl SearchResult {
    /// Recounts every witness with the general counting engine.
    pub fn new(
        pattern: PatternSpec,
        n: usize,
        restriction: Restriction,
        max_count: Count,
        witnesses: Vec<Permutation>,
        witness_cap: usize,
        space_size: Count,
    ) -> Result<Self> {
        for w in &witnesses {
            let recount = count_occurrences(pattern.permutation(), w);
            if recount != max_count {
                return Err(Error::WitnessMismatch {
                    witness: w.to_string(),
                    recount: recount.to_string(),
                    expected: max_count.to_string(),
                });
            }
        }
        debug_assert!(witnesses.windows(2).all(|p| p[0] < p[1]));
        Ok(Self {
            pattern,
            n,
            restriction,
            max_count,
            witnesses,
            witness_cap,
            space_size,
            gk_flags: None,
        })
    }

    pub fn witness_blocks(&self) -> Vec<Option<String>> {
        self.witnesses
            .iter()
            .map(|w| decompose_blocks(w).map(|b| b.to_string()))
            .collect()
    }

    pub fn record(&self) -> SearchRecord {
        SearchRecord {
            pattern: self.pattern.to_string(),
            n: self.n,
            restriction: self.restriction.to_string(),
            max_count: self.max_count.clone(),
            space_size: self.space_size.clone(),
            witness_cap: self.witness_cap,
            witnesses: self.witnesses.iter().map(ToString::to_string).collect(),
            witness_blocks: self.witness_blocks(),
            gk_flags: self.gk_flags.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchRecord {
    pub pattern: String,
    pub n: usize,
    pub restriction: String,
    #[serde(serialize_with = "serialize_uint")]
    pub max_count: Count,
    #[serde(serialize_with = "serialize_uint")]
    pub space_size: Count,
    pub witness_cap: usize,
    pub witnesses: Vec<String>,
    pub witness_blocks: Vec<Option<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gk_flags: Option<GkFlags>,
}

impl SearchRecord {
    pub const CSV_HEADER: [&'static str; 7] = [
        "pattern",
        "n",
        "restriction",
        "max_count",
        "space_size",
        "witness",
        "blocks",
    ];

    /// One row per witness (a single row with empty witness columns if none).
    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        let head = [
            self.pattern.clone(),
            self.n.to_string(),
            self.restriction.clone(),
            self.max_count.to_string(),
            self.space_size.to_string(),
        ];
        if self.witnesses.is_empty() {
            let mut row = head.to_vec();
            row.extend([String::new(), String::new()]);
            return vec![row];
        }
        self.witnesses
            .iter()
            .zip(&self.witness_blocks)
            .map(|(w, b)| {
                let mut row = head.to_vec();
                row.push(w.clone());
                row.push(b.clone().unwrap_or_default());
                row
            })
            .collect()
    }
}

/// Running maximum with a capped, sorted list of smallest witnesses.
#[derive(Debug, Clone, Default)]
struct Best {
    max: u128,
    witnesses: Vec<Vec<u32>>,
    seen_any: bool,
}

impl Best {
    fn offer(&mut self, count: u128, cap: usize, values: impl FnOnce() -> Vec<u32>) {
        if !self.seen_any || count > self.max {
            self.seen_any = true;
            self.max = count;
            self.witnesses.clear();
        } else if count < self.max {
            return;
        }
        if cap == 0 {
            return;
        }
        let v = values();
        if self.witnesses.len() == cap && self.witnesses.last().is_some_and(|last| &v >= last) {
            return;
        }
        if let Err(pos) = self.witnesses.binary_search(&v) {
            self.witnesses.insert(pos, v);
            self.witnesses.truncate(cap);
        }
    }

    fn merge(mut self, other: Best, cap: usize) -> Best {
        if !other.seen_any {
            return self;
        }
        if !self.seen_any || other.max > self.max {
            return other;
        }
        if other.max == self.max {
            self.witnesses.extend(other.witnesses);
            self.witnesses.sort();
            self.witnesses.dedup();
            self.witnesses.truncate(cap);
        }
        self
    }
}

fn finish(
    best: Best,
    pattern: &PatternSpec,
    n: usize,
    restriction: Restriction,
    cap: usize,
    space_size: Count,
) -> Result<SearchResult> {
    let witnesses = best
        .witnesses
        .into_iter()
        .map(Permutation::from_vec_unchecked)
        .collect();
    SearchResult::new(
        pattern.clone(),
        n,
        restriction,
        Count::from(best.max),
        witnesses,
        cap,
        space_size,
    )
}

/// `max` of the occurrence count over all of `S_n`.
pub fn max_over_all(tau: &PatternSpec, n: usize, config: &SearchConfig) -> Result<SearchResult> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if n > config.max_exhaustive_n {
        return Err(Error::ExhaustiveBound {
            n,
            bound: config.max_exhaustive_n,
            hint: "; use restriction=layered for layered patterns",
        });
    }
    let cap = config.witness_cap;
    let pattern = tau.permutation().as_slice();
    // Chunks are the ordered choices of the first two values.
    let prefixes: Vec<Vec<u32>> = if n == 1 {
        vec![vec![1]]
    } else {
        let n32 = n as u32;
        (1..=n32)
            .flat_map(|a| (1..=n32).filter(move |&b| b != a).map(move |b| vec![a, b]))
            .collect()
    };
    let fixed = prefixes[0].len();
    let best = config.install(|| {
        prefixes
            .par_iter()
            .map(|prefix| {
                let mut values = prefix.clone();
                values.extend((1..=n as u32).filter(|v| !prefix.contains(v)));
                let mut counter = PatternCounter::new(pattern);
                let mut best = Best::default();
                loop {
                    let c = counter.count(&values);
                    best.offer(c, cap, || values.clone());
                    if !next_permutation(&mut values[fixed..]) {
                        break;
                    }
                }
                best
            })
            .reduce(Best::default, |a, b| a.merge(b, cap))
    })?;
    finish(best, tau, n, Restriction::All, cap, factorial(n))
}

fn layered_count(tau: &[usize], sigma: &[usize]) -> u128 {
    count_layered_u128(tau, sigma).unwrap_or_else(|| {
        count_occurrences_layered(tau, sigma)
            .to_u128()
            .expect("counts for n <= 60 fit in u128")
    })
}

/// `max` of the occurrence count over the `2^(n-1)` layered permutations of
/// size `n`. Requires a layered pattern.
pub fn max_over_layered(
    tau: &PatternSpec,
    n: usize,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let Some(tau_layers) = tau.layers() else {
        return Err(Error::NotLayered(format!(
            "{tau}; the layered restriction only preserves the maximum for layered patterns"
        )));
    };
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let bound = config.max_layered_n.min(MAX_LAYERED_HARD_LIMIT);
    if n > bound {
        return Err(Error::ExhaustiveBound {
            n,
            bound,
            hint: " for layered enumeration",
        });
    }
    let cap = config.witness_cap;
    let total: u64 = 1 << (n - 1);
    let chunk = (total / 256).max(1);
    let chunks: Vec<(u64, u64)> = (0..total)
        .step_by(chunk as usize)
        .map(|start| (start, (start + chunk).min(total)))
        .collect();
    let best = config.install(|| {
        chunks
            .par_iter()
            .map(|&(lo, hi)| {
                let mut best = Best::default();
                for mask in lo..hi {
                    let parts = composition_from_mask(n, mask);
                    let c = layered_count(tau_layers, &parts);
                    best.offer(c, cap, || layered_from_sizes(&parts).into_vec());
                }
                best
            })
            .reduce(Best::default, |a, b| a.merge(b, cap))
    })?;
    finish(best, tau, n, Restriction::Layered, cap, Count::from(total))
}

/// Compositions of `total` into `k` parts, each `>= 2`, with the last part
/// `>= last_min`.
fn layer_splits(
    total: usize,
    k: usize,
    last_min: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if k == 1 {
        if total >= 2 && total >= last_min {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    for first in 2..=total.saturating_sub(2 * (k - 1)) {
        prefix.push(first);
        layer_splits(total - first, k - 1, last_min, prefix, out);
        prefix.pop();
    }
}

/// Candidate structures for `g_k`: `(antilayer size, layer sizes)`.
pub fn gk_candidates(n: usize, k: usize) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for a in 0..=n {
        let mut splits = Vec::new();
        layer_splits(n - a, k, a, &mut Vec::new(), &mut splits);
        out.extend(splits.into_iter().map(|l| (a, l)));
    }
    out
}

/// Maximum count of `(1, 1, beta)` over structures `A L_1 .. L_k` with every
/// `|L_i| >= 2` and `|L_k| >= |A|`. The antilayer may be empty.
pub fn g_k(tau: &PatternSpec, n: usize, k: usize, config: &SearchConfig) -> Result<SearchResult> {
    let Some(beta) = tau.as_two_beta() else {
        return Err(Error::InvalidParameter(format!(
            "g_k is defined here for layers (1, 1, beta) only, got {tau}"
        )));
    };
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let cap = config.witness_cap;
    let candidates = gk_candidates(n, k);
    let tau_layers = tau.layers().expect("two_beta is layered");
    let best = config.install(|| {
        candidates
            .par_iter()
            .map(|(a, layers)| {
                let mut parts = vec![1; *a];
                parts.extend_from_slice(layers);
                let mut best = Best::default();
                best.offer(layered_count(tau_layers, &parts), cap, || {
                    layered_from_sizes(&parts).into_vec()
                });
                best
            })
            .reduce(Best::default, |a, b| a.merge(b, cap))
    })?;
    let space = Count::from(candidates.len());
    let mut result = finish(
        best,
        tau,
        n,
        Restriction::AntilayerThenLayers(k),
        cap,
        space,
    )?;

    let shapes: Vec<(usize, usize)> = result
        .witnesses
        .iter()
        .map(|w| {
            let parts = crate::blocks::layer_composition(w.as_slice()).expect("layered witness");
            let a = parts.iter().take_while(|&&p| p == 1).count();
            (a, *parts.last().unwrap_or(&0))
        })
        .collect();
    result.gk_flags = Some(GkFlags {
        feasible: n >= 2 + k * beta,
        witnesses_satisfy_sizes: shapes.iter().all(|&(a, last)| a >= 2 && last >= beta),
        empty_antilayer_attains_max: shapes.iter().any(|&(a, _)| a == 0),
    });
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioMode {
    Exhaustive,
    Layered,
    Formula,
}

impl fmt::Display for RatioMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RatioMode::Exhaustive => "exhaustive",
            RatioMode::Layered => "layered",
            RatioMode::Formula => "formula",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioRow {
    pub n: usize,
    pub count: Count,
    pub binom: Count,
    pub ratio: BigRational,
}

impl RatioRow {
    fn new(n: usize, m: usize, count: Count) -> Self {
        let binom = binomial(n, m);
        let ratio = ratio(&count, &binom);
        Self {
            n,
            count,
            binom,
            ratio,
        }
    }
}

/// An adjacent pair of rows where the ratio went up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityFailure {
    pub n: usize,
    pub previous: BigRational,
    pub current: BigRational,
}

/// Rows of `g(tau, n) / C(n, m)` for increasing `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioTable {
    pub pattern: PatternSpec,
    pub mode: RatioMode,
    pub rows: Vec<RatioRow>,
    pub failures: Vec<MonotonicityFailure>,
}

impl RatioTable {
    pub fn from_rows(pattern: PatternSpec, mode: RatioMode, rows: Vec<RatioRow>) -> Self {
        let failures = rows
            .windows(2)
            .filter(|w| w[1].ratio > w[0].ratio)
            .map(|w| MonotonicityFailure {
                n: w[1].n,
                previous: w[0].ratio.clone(),
                current: w[1].ratio.clone(),
            })
            .collect();
        Self {
            pattern,
            mode,
            rows,
            failures,
        }
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn records(&self) -> Vec<RatioRecord> {
        self.rows
            .iter()
            .map(|r| RatioRecord {
                n: r.n,
                count: r.count.clone(),
                binom: r.binom.clone(),
                ratio_num: r.ratio.numer().clone(),
                ratio_den: r.ratio.denom().clone(),
                ratio_float: decimal_string(&r.ratio, 12),
            })
            .collect()
    }
}

/// One CSV/JSON row; columns `n,count,binom,ratio_num,ratio_den,ratio_float`.
#[derive(Debug, Clone, Serialize)]
pub struct RatioRecord {
    pub n: usize,
    #[serde(serialize_with = "serialize_uint")]
    pub count: Count,
    #[serde(serialize_with = "serialize_uint")]
    pub binom: Count,
    #[serde(serialize_with = "crate::arith::serialize_int")]
    pub ratio_num: BigInt,
    #[serde(serialize_with = "crate::arith::serialize_int")]
    pub ratio_den: BigInt,
    pub ratio_float: String,
}

impl RatioRecord {
    pub const CSV_HEADER: [&'static str; 6] = [
        "n",
        "count",
        "binom",
        "ratio_num",
        "ratio_den",
        "ratio_float",
    ];

    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.count.to_string(),
            self.binom.to_string(),
            self.ratio_num.to_string(),
            self.ratio_den.to_string(),
            self.ratio_float.clone(),
        ]
    }
}

/// Galvin ratios for `n = m ..= n_max`.
///
/// Formula mode needs a closed form: layers `(1, 1, b)` for every `n`, or
/// `(1^a, a)` for even `n` only.
pub fn galvin_ratios(
    tau: &PatternSpec,
    n_max: usize,
    mode: RatioMode,
    config: &SearchConfig,
) -> Result<RatioTable> {
    let m = tau.len();
    let mut rows = Vec::new();
    match mode {
        RatioMode::Exhaustive => {
            if n_max > config.max_exhaustive_n {
                return Err(Error::ExhaustiveBound {
                    n: n_max,
                    bound: config.max_exhaustive_n,
                    hint: "; use mode=layered or mode=formula",
                });
            }
            for n in m..=n_max {
                rows.push(RatioRow::new(n, m, max_over_all(tau, n, config)?.max_count));
            }
        }
        RatioMode::Layered => {
            for n in m..=n_max {
                rows.push(RatioRow::new(
                    n,
                    m,
                    max_over_layered(tau, n, config)?.max_count,
                ));
            }
        }
        RatioMode::Formula => {
            if let Some(beta) = tau.as_two_beta() {
                for n in m..=n_max {
                    rows.push(RatioRow::new(n, m, g_formula_2beta(n, beta)?.count));
                }
            } else if let Some(alpha) = tau.as_alpha_alpha() {
                for n in (m..=n_max).filter(|n| n % 2 == 0) {
                    rows.push(RatioRow::new(n, m, g_formula_alpha_alpha(n, alpha)?));
                }
            } else {
                return Err(Error::InvalidParameter(format!(
                    "no closed form for pattern {tau}; use mode=exhaustive or mode=layered"
                )));
            }
        }
    }
    Ok(RatioTable::from_rows(tau.clone(), mode, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::parse_blocks;

    fn pat(s: &str) -> PatternSpec {
        PatternSpec::explicit(s.parse().unwrap()).unwrap()
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn pairs_in_identity() {
        let r = max_over_all(&pat("1 2"), 3, &cfg()).unwrap();
        assert_eq!(r.max_count, Count::from(3u32));
        assert_eq!(r.witnesses, vec![Permutation::identity(3)]);
        assert_eq!(r.space_size, Count::from(6u32));
    }

    #[test]
    fn decreasing_triples_layered() {
        let r = max_over_layered(&pat("3 2 1"), 5, &cfg()).unwrap();
        assert_eq!(r.max_count, Count::from(10u32));
        assert_eq!(r.witness_blocks(), vec![Some("L5".to_string())]);
    }

    #[test]
    fn two_three_at_eight() {
        let tau = PatternSpec::two_beta(3).unwrap();
        let all = max_over_all(&tau, 8, &cfg()).unwrap();
        let lay = max_over_layered(&tau, 8, &cfg()).unwrap();
        assert_eq!(all.max_count, Count::from(30u32));
        assert_eq!(lay.max_count, Count::from(30u32));
        assert!(lay.witness_blocks().contains(&Some("A3,L5".to_string())));
    }

    #[test]
    fn layered_rejects_non_layered_pattern() {
        assert!(matches!(
            max_over_layered(&pat("2 3 1"), 5, &cfg()),
            Err(Error::NotLayered(_))
        ));
    }

    #[test]
    fn bounds_are_configuration() {
        let tau = pat("1 2");
        assert!(matches!(
            max_over_all(&tau, 12, &cfg()),
            Err(Error::ExhaustiveBound { .. })
        ));
        let tight = SearchConfig {
            max_exhaustive_n: 4,
            max_layered_n: 5,
            ..cfg()
        };
        assert!(max_over_all(&tau, 5, &tight).is_err());
        assert!(max_over_layered(&tau, 6, &tight).is_err());
        assert!(max_over_layered(&tau, 5, &tight).is_ok());
    }

    #[test]
    fn gk_examples() {
        let tau = PatternSpec::two_beta(3).unwrap();
        let g1 = g_k(&tau, 10, 1, &cfg()).unwrap();
        assert_eq!(g1.max_count, Count::from(120u32));
        assert_eq!(g1.witness_blocks(), vec![Some("A4,L6".to_string())]);
        let flags = g1.gk_flags.clone().unwrap();
        assert!(
            flags.feasible && flags.witnesses_satisfy_sizes && !flags.empty_antilayer_attains_max
        );

        let g2 = g_k(&tau, 10, 2, &cfg()).unwrap();
        assert!(g2.max_count <= g1.max_count);
        let candidate = parse_blocks("A2,L3,L5").unwrap().layer_sizes();
        assert_eq!(
            count_occurrences_layered(&[1, 1, 3], &candidate),
            Count::from(71u32)
        );
        assert!(Count::from(71u32) <= g2.max_count);
    }

    #[test]
    fn gk_infeasible_is_zero_without_witnesses() {
        let tau = PatternSpec::two_beta(3).unwrap();
        let r = g_k(&tau, 5, 3, &cfg()).unwrap();
        assert_eq!(r.max_count, Count::from(0u32));
        assert!(r.witnesses.is_empty());
        assert!(g_k(&pat("1 2 3"), 5, 1, &cfg()).is_err());
    }

    #[test]
    fn gk_candidates_respect_constraints() {
        for n in 0..=12 {
            for k in 1..=4 {
                for (a, layers) in gk_candidates(n, k) {
                    assert_eq!(layers.len(), k);
                    assert_eq!(a + layers.iter().sum::<usize>(), n);
                    assert!(layers.iter().all(|&l| l >= 2));
                    assert!(*layers.last().unwrap() >= a);
                }
            }
        }
        // a = 0: (5); a = 1: (4); a = 2: (3).
        assert_eq!(gk_candidates(5, 1).len(), 3);
    }

    #[test]
    fn results_do_not_depend_on_workers() {
        let tau = pat("1243");
        let one = SearchConfig {
            workers: Some(1),
            ..cfg()
        };
        let three = SearchConfig {
            workers: Some(3),
            ..cfg()
        };
        assert_eq!(
            max_over_all(&tau, 7, &one).unwrap(),
            max_over_all(&tau, 7, &three).unwrap()
        );
        assert_eq!(
            max_over_layered(&tau, 12, &one).unwrap(),
            max_over_layered(&tau, 12, &three).unwrap()
        );
    }

    #[test]
    fn witness_cap_and_order() {
        let capped = SearchConfig {
            witness_cap: 3,
            ..cfg()
        };
        // A pattern longer than n ties every permutation at zero.
        let r = max_over_all(&pat("1 2 3 4"), 3, &capped).unwrap();
        assert_eq!(r.max_count, Count::from(0u32));
        assert_eq!(r.witnesses.len(), 3);
        assert_eq!(r.witnesses[0], Permutation::identity(3));
        assert!(r.witnesses.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn ratio_tables() {
        let t = galvin_ratios(&pat("1 2"), 6, RatioMode::Exhaustive, &cfg()).unwrap();
        assert_eq!(t.rows.len(), 5);
        assert!(t
            .rows
            .iter()
            .all(|r| r.ratio == BigRational::from_integer(1.into())));
        assert!(t.is_nonincreasing());

        let t = galvin_ratios(&pat("1243"), 8, RatioMode::Exhaustive, &cfg()).unwrap();
        let last = t.rows.last().unwrap();
        assert_eq!(
            (last.n, last.count.clone(), last.binom.clone()),
            (8, Count::from(36u32), Count::from(70u32))
        );
        assert!(t.is_nonincreasing());

        let aa = galvin_ratios(
            &PatternSpec::alpha_alpha(3).unwrap(),
            14,
            RatioMode::Formula,
            &cfg(),
        )
        .unwrap();
        assert!(aa.rows.iter().all(|r| r.n % 2 == 0));
        assert!(aa.is_nonincreasing());
        assert!(galvin_ratios(&pat("2 1 3"), 8, RatioMode::Formula, &cfg()).is_err());
        assert!(galvin_ratios(&pat("1 2"), 12, RatioMode::Exhaustive, &cfg()).is_err());
    }

    #[test]
    fn failures_are_recorded() {
        let tau = pat("1 2");
        let rows = vec![
            RatioRow::new(2, 2, Count::from(1u32)),
            RatioRow {
                n: 3,
                count: Count::from(2u32),
                binom: Count::from(1u32),
                ratio: BigRational::from_integer(2.into()),
            },
        ];
        let t = RatioTable::from_rows(tau, RatioMode::Exhaustive, rows);
        assert_eq!(t.failures.len(), 1);
        assert_eq!(t.failures[0].n, 3);
    }
}
