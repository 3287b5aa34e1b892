// SPDX-License-Identifier: Apache-2.0

//! Exhaustive verification sweeps: each produces one record per case and a
//! pass/fail flag, for the `verify` command and for CI gating.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{decimal_string, serialize_int, serialize_opt_int, serialize_uint, Count};
use crate::blocks::BlockStructure;
use crate::enumerate::compositions;
use crate::error::{Error, Result};
use crate::formulas::{binom_inequality_check, density_2beta};
use crate::pattern::PatternSpec;
use crate::search::{galvin_ratios, max_over_all, max_over_layered, RatioMode, SearchConfig};
use crate::transforms::{
    absorb_isolated_points, merge_antilayer_with_first_layer, move_point_to_last_layer,
    push_antilayers_left, sort_layers, NormalForm, RewriteOutcome,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma {
    /// Binomial inequality `C(n,k) C(m,l) <= C(n,l) C(m,k)`.
    Tech,
    Isolated,
    Push,
    Sort,
    Move,
    Merge,
    /// Layered maximum equals the maximum over all permutations.
    Restriction,
    /// Closed-form ratio table is nonincreasing and stays above the density.
    Galvin,
}

impl Lemma {
    pub const ALL: [Lemma; 8] = [
        Lemma::Tech,
        Lemma::Isolated,
        Lemma::Push,
        Lemma::Sort,
        Lemma::Move,
        Lemma::Merge,
        Lemma::Restriction,
        Lemma::Galvin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::Tech => "tech",
            Lemma::Isolated => "isolated",
            Lemma::Push => "push",
            Lemma::Sort => "sort",
            Lemma::Move => "move",
            Lemma::Merge => "merge",
            Lemma::Restriction => "restriction",
            Lemma::Galvin => "galvin",
        }
    }

    pub fn default_n_max(self) -> usize {
        match self {
            Lemma::Tech => 30,
            Lemma::Isolated | Lemma::Push | Lemma::Sort => 12,
            Lemma::Move | Lemma::Merge => 18,
            Lemma::Restriction => 9,
            Lemma::Galvin => 2000,
        }
    }

    pub fn default_betas(self) -> Vec<usize> {
        match self {
            Lemma::Isolated | Lemma::Push | Lemma::Sort => vec![2, 3],
            Lemma::Move | Lemma::Merge => vec![3, 4, 5],
            Lemma::Galvin => vec![3],
            Lemma::Tech | Lemma::Restriction => vec![],
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::BadToken {
                token: s.to_string(),
                reason:
                    "expected one of tech, isolated, push, sort, move, merge, restriction, galvin"
                        .into(),
            })
    }
}

#[derive(Debug, Clone)]
pub struct CaseRecord {
    pub ok: bool,
    pub json: String,
    pub csv: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub lemma: Lemma,
    pub csv_header: Vec<&'static str>,
    pub cases: Vec<CaseRecord>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.ok).count()
    }

    pub fn failing(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| !c.ok)
    }
}

fn case<T: Serialize>(ok: bool, record: &T, csv: Vec<String>) -> Result<CaseRecord> {
    let json = serde_json::to_string(record).map_err(|e| Error::Output(e.to_string()))?;
    Ok(CaseRecord { ok, json, csv })
}

/// Every normal form `A L_1 .. L_k` (antilayer possibly empty, layers of size
/// >= 2) with total size at most `n_max`.
pub fn normal_forms(n_max: usize) -> Vec<NormalForm> {
    fn layer_lists(total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if total == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in 2..=total {
            if total - first == 1 {
                continue;
            }
            prefix.push(first);
            layer_lists(total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for n in 0..=n_max {
        for a in 0..=n {
            let mut lists = Vec::new();
            layer_lists(n - a, &mut Vec::new(), &mut lists);
            out.extend(lists.into_iter().map(|layers| NormalForm {
                antilayer: a,
                layers,
            }));
        }
    }
    out
}

#[derive(Serialize)]
struct InequalityRecord {
    k: usize,
    l: usize,
    m: usize,
    n: usize,
    #[serde(serialize_with = "serialize_uint")]
    lhs: Count,
    #[serde(serialize_with = "serialize_uint")]
    rhs: Count,
    holds: bool,
}

pub fn sweep_inequality(n_max: usize) -> Result<VerifyReport> {
    let mut cases = Vec::new();
    for n in 1..=n_max {
        for m in 1..=n {
            for l in 1..=m {
                for k in 0..l {
                    let c = binom_inequality_check(k, l, m, n)?;
                    let rec = InequalityRecord {
                        k,
                        l,
                        m,
                        n,
                        lhs: c.lhs,
                        rhs: c.rhs,
                        holds: c.holds,
                    };
                    let csv = vec![
                        k.to_string(),
                        l.to_string(),
                        m.to_string(),
                        n.to_string(),
                        rec.lhs.to_string(),
                        rec.rhs.to_string(),
                        rec.holds.to_string(),
                    ];
                    cases.push(case(c.holds, &rec, csv)?);
                }
            }
        }
    }
    Ok(VerifyReport {
        lemma: Lemma::Tech,
        csv_header: vec!["k", "l", "m", "n", "lhs", "rhs", "holds"],
        cases,
    })
}

#[derive(Serialize)]
struct RewriteCase<'a> {
    op: &'a str,
    beta: usize,
    before: String,
    after: String,
    #[serde(serialize_with = "serialize_uint")]
    count_before: Count,
    #[serde(serialize_with = "serialize_uint")]
    count_after: Count,
    #[serde(serialize_with = "serialize_opt_int")]
    formula_delta: Option<BigInt>,
    #[serde(serialize_with = "serialize_int")]
    recount_delta: BigInt,
    hypothesis_satisfied: bool,
    formula_matches: bool,
    ok: bool,
}

/// Pass/fail rule for one rewrite outcome.
pub fn rewrite_ok(lemma: Lemma, o: &RewriteOutcome) -> bool {
    if !o.formula_matches() {
        return false;
    }
    let delta = o.recount_delta();
    match lemma {
        Lemma::Isolated | Lemma::Push | Lemma::Sort => delta >= BigInt::zero(),
        Lemma::Move => !o.hypothesis_satisfied || delta > BigInt::zero(),
        Lemma::Merge => !o.hypothesis_satisfied || delta >= BigInt::zero(),
        _ => true,
    }
}

fn rewrite_case(lemma: Lemma, o: &RewriteOutcome) -> Result<CaseRecord> {
    let r = o.record();
    let ok = rewrite_ok(lemma, o);
    let rec = RewriteCase {
        op: r.op,
        beta: r.beta,
        before: r.before.clone(),
        after: r.after.clone(),
        count_before: r.count_before.clone(),
        count_after: r.count_after.clone(),
        formula_delta: r.formula_delta.clone(),
        recount_delta: r.recount_delta.clone(),
        hypothesis_satisfied: r.hypothesis_satisfied,
        formula_matches: o.formula_matches(),
        ok,
    };
    let mut csv = r.csv_row();
    csv.push(rec.formula_matches.to_string());
    csv.push(ok.to_string());
    case(ok, &rec, csv)
}

/// Inputs the sweep applies a rewrite to.
///
/// `isolated` and `push` take every layered permutation; `sort` every normal
/// form; `move` normal forms with `|A| >= 2` and at least one layer; `merge`
/// normal forms with at least two layers.
pub fn rewrite_inputs(lemma: Lemma, n_max: usize) -> Vec<BlockStructure> {
    match lemma {
        Lemma::Isolated | Lemma::Push => (1..=n_max)
            .flat_map(compositions)
            .map(|c| BlockStructure::from_layer_sizes(&c))
            .collect(),
        Lemma::Sort => normal_forms(n_max)
            .iter()
            .map(NormalForm::to_blocks)
            .collect(),
        Lemma::Move => normal_forms(n_max)
            .into_iter()
            .filter(|f| f.antilayer >= 2 && !f.layers.is_empty())
            .map(|f| f.to_blocks())
            .collect(),
        Lemma::Merge => normal_forms(n_max)
            .into_iter()
            .filter(|f| f.layers.len() >= 2)
            .map(|f| f.to_blocks())
            .collect(),
        _ => Vec::new(),
    }
}

pub fn apply_rewrite(lemma: Lemma, b: &BlockStructure, beta: usize) -> Result<RewriteOutcome> {
    match lemma {
        Lemma::Isolated => absorb_isolated_points(b, beta),
        Lemma::Push => push_antilayers_left(b, beta),
        Lemma::Sort => sort_layers(b, beta),
        Lemma::Move => move_point_to_last_layer(b, beta),
        Lemma::Merge => merge_antilayer_with_first_layer(b, beta),
        other => Err(Error::InvalidParameter(format!("{other} is not a rewrite"))),
    }
}

pub fn sweep_rewrite(lemma: Lemma, n_max: usize, betas: &[usize]) -> Result<VerifyReport> {
    let inputs = rewrite_inputs(lemma, n_max);
    let mut cases = Vec::new();
    for &beta in betas {
        for b in &inputs {
            let o = apply_rewrite(lemma, b, beta)?;
            cases.push(rewrite_case(lemma, &o)?);
        }
    }
    let mut header = crate::transforms::RewriteRecord::CSV_HEADER.to_vec();
    header.extend(["formula_matches", "ok"]);
    Ok(VerifyReport {
        lemma,
        csv_header: header,
        cases,
    })
}

#[derive(Serialize)]
struct RestrictionRecord {
    pattern: String,
    n: usize,
    #[serde(serialize_with = "serialize_uint")]
    max_all: Count,
    #[serde(serialize_with = "serialize_uint")]
    max_layered: Count,
    ok: bool,
}

/// Every layered pattern of size `1..=m_max` against every `n` in
/// `1..=n_max`.
pub fn sweep_restriction(
    m_max: usize,
    n_max: usize,
    config: &SearchConfig,
) -> Result<VerifyReport> {
    let mut cases = Vec::new();
    for m in 1..=m_max {
        for parts in compositions(m) {
            let tau = PatternSpec::from_layers(&parts)?;
            for n in 1..=n_max {
                let all = max_over_all(&tau, n, config)?.max_count;
                let lay = max_over_layered(&tau, n, config)?.max_count;
                let ok = all == lay;
                let rec = RestrictionRecord {
                    pattern: tau.to_string(),
                    n,
                    max_all: all,
                    max_layered: lay,
                    ok,
                };
                let csv = vec![
                    rec.pattern.clone(),
                    n.to_string(),
                    rec.max_all.to_string(),
                    rec.max_layered.to_string(),
                    ok.to_string(),
                ];
                cases.push(case(ok, &rec, csv)?);
            }
        }
    }
    Ok(VerifyReport {
        lemma: Lemma::Restriction,
        csv_header: vec!["pattern", "n", "max_all", "max_layered", "ok"],
        cases,
    })
}

#[derive(Serialize)]
struct GalvinRecord {
    beta: usize,
    n: usize,
    #[serde(serialize_with = "serialize_uint")]
    count: Count,
    #[serde(serialize_with = "serialize_uint")]
    binom: Count,
    ratio_float: String,
    nonincreasing: bool,
    above_density: bool,
    ok: bool,
}

pub fn sweep_galvin(n_max: usize, betas: &[usize]) -> Result<VerifyReport> {
    let mut cases = Vec::new();
    for &beta in betas {
        let density = density_2beta(beta)?.value();
        let table = galvin_ratios(
            &PatternSpec::two_beta(beta)?,
            n_max,
            RatioMode::Formula,
            &SearchConfig::default(),
        )?;
        let mut prev: Option<&num_rational::BigRational> = None;
        for row in &table.rows {
            let nonincreasing = prev.is_none_or(|p| row.ratio <= *p);
            let above_density = row.ratio >= density;
            let ok = nonincreasing && above_density;
            let rec = GalvinRecord {
                beta,
                n: row.n,
                count: row.count.clone(),
                binom: row.binom.clone(),
                ratio_float: decimal_string(&row.ratio, 12),
                nonincreasing,
                above_density,
                ok,
            };
            let csv = vec![
                beta.to_string(),
                row.n.to_string(),
                rec.count.to_string(),
                rec.binom.to_string(),
                rec.ratio_float.clone(),
                nonincreasing.to_string(),
                above_density.to_string(),
                ok.to_string(),
            ];
            cases.push(case(ok, &rec, csv)?);
            prev = Some(&row.ratio);
        }
    }
    Ok(VerifyReport {
        lemma: Lemma::Galvin,
        csv_header: vec![
            "beta",
            "n",
            "count",
            "binom",
            "ratio_float",
            "nonincreasing",
            "above_density",
            "ok",
        ],
        cases,
    })
}

/// Runs one sweep. `betas` empty means the lemma's defaults.
pub fn run_sweep(
    lemma: Lemma,
    n_max: usize,
    betas: &[usize],
    config: &SearchConfig,
) -> Result<VerifyReport> {
    let defaults = lemma.default_betas();
    let betas = if betas.is_empty() {
        &defaults[..]
    } else {
        betas
    };
    match lemma {
        Lemma::Tech => sweep_inequality(n_max),
        Lemma::Restriction => sweep_restriction(5, n_max, config),
        Lemma::Galvin => sweep_galvin(n_max, betas),
        _ => sweep_rewrite(lemma, n_max, betas),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_forms_are_well_formed_and_distinct() {
        let forms = normal_forms(10);
        let mut seen = std::collections::HashSet::new();
        for f in &forms {
            assert!(f.layers.iter().all(|&l| l >= 2));
            assert!(f.len() <= 10);
            assert!(seen.insert(f.clone()));
        }
        // Size 4: A4; A2 L2; L1 L3; L4; L2 L2.
        assert_eq!(forms.iter().filter(|f| f.len() == 4).count(), 5);
    }

    #[test]
    fn small_sweeps_pass() {
        let cfg = SearchConfig::default();
        for lemma in Lemma::ALL {
            let n_max = match lemma {
                Lemma::Restriction => 6,
                Lemma::Galvin => 60,
                _ => 9,
            };
            let r = run_sweep(lemma, n_max, &[], &cfg).unwrap();
            assert!(!r.cases.is_empty(), "{lemma}");
            assert_eq!(r.failures(), 0, "{lemma}");
            assert!(r.cases.iter().all(|c| c.csv.len() == r.csv_header.len()));
        }
    }

    #[test]
    fn lemma_names_parse() {
        for lemma in Lemma::ALL {
            assert_eq!(lemma.name().parse::<Lemma>().unwrap(), lemma);
        }
        assert!("bogus".parse::<Lemma>().is_err());
    }
}
