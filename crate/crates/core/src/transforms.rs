// SPDX-License-Identifier: Apache-2.0

//! Structural rewrites on layered permutations for the pattern `1 2 (b..1)`
//! with layers `(1, 1, b)`.
//!
//! Every rewrite recounts occurrences on both sides with the layered counting
//! engine. Rewrites that come with closed-form gain/loss bookkeeping also
//! report the symbolic delta, so the algebra can be checked against the
//! recount exactly.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{binomial, serialize_int, serialize_opt_int, serialize_uint, Count};
use crate::blocks::BlockStructure;
use crate::count::count_occurrences_layered;
use crate::error::{Error, Result};

/// Leading antilayer (a run of `antilayer` singletons, possibly empty)
/// followed by nontrivial layers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub antilayer: usize,
    pub layers: Vec<usize>,
}

impl NormalForm {
    pub fn new(antilayer: usize, layers: Vec<usize>) -> Result<Self> {
        if layers.iter().any(|&l| l < 2) {
            return Err(Error::InvalidParameter(format!(
                "normal-form layers must have size >= 2: {layers:?}"
            )));
        }
        Ok(Self { antilayer, layers })
    }

    pub fn from_blocks(b: &BlockStructure) -> Option<Self> {
        let parts = b.layer_sizes();
        let antilayer = parts.iter().take_while(|&&p| p == 1).count();
        let layers = parts[antilayer..].to_vec();
        if layers.iter().all(|&l| l >= 2) {
            Some(Self { antilayer, layers })
        } else {
            None
        }
    }

    pub fn composition(&self) -> Vec<usize> {
        let mut parts = vec![1; self.antilayer];
        parts.extend_from_slice(&self.layers);
        parts
    }

    pub fn to_blocks(&self) -> BlockStructure {
        BlockStructure::from_layer_sizes(&self.composition())
    }

    pub fn len(&self) -> usize {
        self.antilayer + self.layers.iter().sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_sorted(&self) -> bool {
        self.layers.windows(2).all(|w| w[0] <= w[1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rewrite {
    AbsorbIsolatedPoints,
    PushAntilayersLeft,
    SortLayers,
    MovePointToLastLayer,
    MergeAntilayerWithFirstLayer,
}

impl Rewrite {
    pub fn name(self) -> &'static str {
        match self {
            Rewrite::AbsorbIsolatedPoints => "absorb_isolated_points",
            Rewrite::PushAntilayersLeft => "push_antilayers_left",
            Rewrite::SortLayers => "sort_layers",
            Rewrite::MovePointToLastLayer => "move_point_to_last_layer",
            Rewrite::MergeAntilayerWithFirstLayer => "merge_antilayer_with_first_layer",
        }
    }
}

/// One adjacent swap performed while sorting layers.
///
/// `prefix_len` is the number of elements left of the larger layer and
/// `asc2` the number of ascending pairs among them. Only occurrences whose
/// `b`-layer sits in one of the two swapped layers change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapStep {
    pub index: usize,
    pub larger: usize,
    pub smaller: usize,
    pub prefix_len: usize,
    pub asc2: Count,
    pub affected_before: Count,
    pub affected_after: Count,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Breakdown {
    None,
    Sort {
        swaps: Vec<SwapStep>,
    },
    /// Loss and gain from moving the last antilayer point onto the last layer.
    Move {
        /// `(a-1) sum_{i<k} C(L_i,b)`, `(a-1) C(L_k,b)`,
        /// `sum_{i<j<k} L_i C(L_j,b)`, `sum_{i<k} L_i C(L_k,b)`.
        loss_terms: [Count; 4],
        /// `(a-1) sum_{i<k} L_i C(L_k,b-1)`, `C(a-1,2) C(L_k,b-1)`,
        /// `sum_{i<j<k} L_i L_j C(L_k,b-1)`.
        gain_terms: [Count; 3],
        loss: Count,
        gain: Count,
    },
    /// Occurrences lost by deleting `A L1` and gained by inserting one
    /// antilayer of size `|A| + |L1|` in front of the rest.
    Merge {
        /// Occurrences of `(b)` in the rest.
        rest_layer_count: Count,
        /// Occurrences of `(1, b)` in the rest.
        rest_point_layer_count: Count,
        lost: Count,
        gained: Count,
        /// `C(L1,2) * rest_layer_count - C(a,2) * C(L1,b)`.
        simplified_net: BigInt,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteOutcome {
    pub rewrite: Rewrite,
    pub beta: usize,
    pub before: BlockStructure,
    pub after: BlockStructure,
    pub count_before: Count,
    pub count_after: Count,
    pub formula_delta: Option<BigInt>,
    pub hypothesis_satisfied: bool,
    pub breakdown: Breakdown,
}

impl RewriteOutcome {
    pub fn recount_delta(&self) -> BigInt {
        BigInt::from(self.count_after.clone()) - BigInt::from(self.count_before.clone())
    }

    /// The symbolic delta (if any) equals the recount, and any internal
    /// bookkeeping agrees with it.
    pub fn formula_matches(&self) -> bool {
        let recount = self.recount_delta();
        let delta_ok = self.formula_delta.as_ref().is_none_or(|d| *d == recount);
        let breakdown_ok = match &self.breakdown {
            Breakdown::None | Breakdown::Sort { .. } => true,
            Breakdown::Move { loss, gain, .. } => {
                BigInt::from(gain.clone()) - BigInt::from(loss.clone()) == recount
            }
            Breakdown::Merge {
                lost,
                gained,
                simplified_net,
                ..
            } => {
                let full = BigInt::from(gained.clone()) - BigInt::from(lost.clone());
                full == *simplified_net && full == recount
            }
        };
        delta_ok && breakdown_ok
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.count_after >= self.count_before
    }

    pub fn record(&self) -> RewriteRecord {
        RewriteRecord {
            op: self.rewrite.name(),
            beta: self.beta,
            before: self.before.to_string(),
            after: self.after.to_string(),
            count_before: self.count_before.clone(),
            count_after: self.count_after.clone(),
            formula_delta: self.formula_delta.clone(),
            recount_delta: self.recount_delta(),
            hypothesis_satisfied: self.hypothesis_satisfied,
        }
    }
}

/// Flat, serializable view of a [`RewriteOutcome`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteRecord {
    pub op: &'static str,
    pub beta: usize,
    pub before: String,
    pub after: String,
    #[serde(serialize_with = "serialize_uint")]
    pub count_before: Count,
    #[serde(serialize_with = "serialize_uint")]
    pub count_after: Count,
    #[serde(serialize_with = "serialize_opt_int")]
    pub formula_delta: Option<BigInt>,
    #[serde(serialize_with = "serialize_int")]
    pub recount_delta: BigInt,
    pub hypothesis_satisfied: bool,
}

impl RewriteRecord {
    pub const CSV_HEADER: [&'static str; 9] = [
        "op",
        "beta",
        "before",
        "after",
        "count_before",
        "count_after",
        "formula_delta",
        "recount_delta",
        "hypothesis_satisfied",
    ];

    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.op.to_string(),
            self.beta.to_string(),
            self.before.clone(),
            self.after.clone(),
            self.count_before.to_string(),
            self.count_after.to_string(),
            self.formula_delta
                .as_ref()
                .map(ToString::to_string)
                .unwrap_or_default(),
            self.recount_delta.to_string(),
            self.hypothesis_satisfied.to_string(),
        ]
    }
}

fn check_beta(beta: usize) -> Result<()> {
    if beta < 2 {
        return Err(Error::InvalidParameter(format!(
            "beta must be >= 2, got {beta}"
        )));
    }
    Ok(())
}

/// Occurrences of the `(1, 1, beta)` pattern in the layered permutation with
/// composition `parts`.
pub fn count_two_beta(parts: &[usize], beta: usize) -> Count {
    count_occurrences_layered(&[1, 1, beta], parts)
}

fn outcome(
    rewrite: Rewrite,
    beta: usize,
    before: &BlockStructure,
    after_parts: &[usize],
    formula_delta: Option<BigInt>,
    hypothesis_satisfied: bool,
    breakdown: Breakdown,
) -> RewriteOutcome {
    RewriteOutcome {
        rewrite,
        beta,
        before: before.clone(),
        after: BlockStructure::from_layer_sizes(after_parts),
        count_before: count_two_beta(&before.layer_sizes(), beta),
        count_after: count_two_beta(after_parts, beta),
        formula_delta,
        hypothesis_satisfied,
        breakdown,
    }
}

fn require_normal_form(b: &BlockStructure, op: &str) -> Result<NormalForm> {
    NormalForm::from_blocks(b).ok_or_else(|| {
        Error::Precondition(format!(
            "{op} needs a leading antilayer followed by layers of size >= 2, got {b}; \
             apply push_antilayers_left first"
        ))
    })
}

fn is_isolated(parts: &[usize], i: usize) -> bool {
    parts[i] == 1 && i > 0 && i + 1 < parts.len() && parts[i - 1] >= 2 && parts[i + 1] >= 2
}

/// Moves every isolated point (a singleton between two layers of size >= 2)
/// leftwards past the layers before it until it joins an antilayer or
/// reaches the front.
pub fn absorb_isolated_points(b: &BlockStructure, beta: usize) -> Result<RewriteOutcome> {
    check_beta(beta)?;
    let mut parts = b.layer_sizes();
    while let Some(i) = (0..parts.len()).find(|&i| is_isolated(&parts, i)) {
        let mut j = i;
        while j > 0 && parts[j - 1] >= 2 {
            parts.swap(j - 1, j);
            j -= 1;
        }
    }
    Ok(outcome(
        Rewrite::AbsorbIsolatedPoints,
        beta,
        b,
        &parts,
        None,
        true,
        Breakdown::None,
    ))
}

/// Swaps antilayers (singleton runs) with the layers on their left until all
/// singletons form one leading antilayer. Layer order is preserved.
pub fn push_antilayers_left(b: &BlockStructure, beta: usize) -> Result<RewriteOutcome> {
    check_beta(beta)?;
    let parts = b.layer_sizes();
    let singles = parts.iter().filter(|&&p| p == 1).count();
    let mut after = vec![1; singles];
    after.extend(parts.iter().copied().filter(|&p| p >= 2));
    Ok(outcome(
        Rewrite::PushAntilayersLeft,
        beta,
        b,
        &after,
        None,
        true,
        Breakdown::None,
    ))
}

/// Stable sort of the layers into nondecreasing size via adjacent swaps,
/// tracking the change in occurrences each swap causes.
pub fn sort_layers(b: &BlockStructure, beta: usize) -> Result<RewriteOutcome> {
    check_beta(beta)?;
    let nf = require_normal_form(b, "sort_layers")?;
    let mut layers = nf.layers.clone();
    let mut swaps = Vec::new();
    let mut delta = BigInt::zero();
    let k = layers.len();
    for pass in 0..k {
        for i in 0..k.saturating_sub(pass + 1) {
            if layers[i] <= layers[i + 1] {
                continue;
            }
            let prefix_len = nf.antilayer + layers[..i].iter().sum::<usize>();
            let asc2 = binomial(prefix_len, 2)
                - layers[..i].iter().map(|&l| binomial(l, 2)).sum::<Count>();
            let (big, small) = (layers[i], layers[i + 1]);
            let shared = &asc2 * (binomial(big, beta) + binomial(small, beta));
            let affected_before = &shared + Count::from(prefix_len * big) * binomial(small, beta);
            let affected_after = &shared + Count::from(prefix_len * small) * binomial(big, beta);
            delta += BigInt::from(affected_after.clone()) - BigInt::from(affected_before.clone());
            swaps.push(SwapStep {
                index: i,
                larger: big,
                smaller: small,
                prefix_len,
                asc2,
                affected_before,
                affected_after,
            });
            layers.swap(i, i + 1);
        }
    }
    let after = NormalForm {
        antilayer: nf.antilayer,
        layers,
    };
    Ok(outcome(
        Rewrite::SortLayers,
        beta,
        b,
        &after.composition(),
        Some(delta),
        true,
        Breakdown::Sort { swaps },
    ))
}

/// Removes the last antilayer point and makes it the new top of the last
/// layer: `A_a L_1 .. L_k -> A_(a-1) L_1 .. L_(k-1) L_(k+1)`.
///
/// The hypothesis flag is set when the layers are sorted,
/// `a > |L_k| >= beta >= 3`; under it the net change is strictly positive.
pub fn move_point_to_last_layer(b: &BlockStructure, beta: usize) -> Result<RewriteOutcome> {
    check_beta(beta)?;
    let nf = require_normal_form(b, "move_point_to_last_layer")?;
    let a = nf.antilayer;
    if a < 2 {
        return Err(Error::Precondition(format!(
            "antilayer has size {a}; moving a point needs at least 2"
        )));
    }
    let Some((&last, head)) = nf.layers.split_last() else {
        return Err(Error::Precondition("no layer to receive the point".into()));
    };

    let head_sum: usize = head.iter().sum();
    let head_layer_count: Count = head.iter().map(|&l| binomial(l, beta)).sum();
    let mut head_point_layer = Count::zero();
    let mut head_pairs = Count::zero();
    let mut seen = 0usize;
    for &l in head {
        head_point_layer += Count::from(seen) * binomial(l, beta);
        head_pairs += Count::from(seen * l);
        seen += l;
    }
    let last_b = binomial(last, beta);
    let last_b1 = binomial(last, beta - 1);

    let loss_terms = [
        Count::from(a - 1) * &head_layer_count,
        Count::from(a - 1) * &last_b,
        head_point_layer,
        Count::from(head_sum) * &last_b,
    ];
    let gain_terms = [
        Count::from((a - 1) * head_sum) * &last_b1,
        binomial(a - 1, 2) * &last_b1,
        head_pairs * &last_b1,
    ];
    let loss: Count = loss_terms.iter().sum();
    let gain: Count = gain_terms.iter().sum();
    let net = BigInt::from(gain.clone()) - BigInt::from(loss.clone());

    let mut after = NormalForm {
        antilayer: a - 1,
        layers: nf.layers.clone(),
    };
    *after.layers.last_mut().expect("nonempty") += 1;

    let hypothesis = nf.is_sorted() && a > last && last >= beta && beta >= 3;
    Ok(outcome(
        Rewrite::MovePointToLastLayer,
        beta,
        b,
        &after.composition(),
        Some(net),
        hypothesis,
        Breakdown::Move {
            loss_terms,
            gain_terms,
            loss,
            gain,
        },
    ))
}

/// Replaces the leading antilayer and first layer by one antilayer of their
/// combined size: `A_a L_1 S -> A_(a+|L_1|) S` with `S` nonempty.
///
/// The hypothesis flag is set when the layers are sorted,
/// `|L_k| >= a` and `beta >= 3`; under it the net change is nonnegative.
pub fn merge_antilayer_with_first_layer(b: &BlockStructure, beta: usize) -> Result<RewriteOutcome> {
    check_beta(beta)?;
    let nf = require_normal_form(b, "merge_antilayer_with_first_layer")?;
    if nf.layers.len() < 2 {
        return Err(Error::Precondition(format!(
            "merge needs at least one layer after the first, got {b}"
        )));
    }
    let a = nf.antilayer;
    let first = nf.layers[0];
    let rest = &nf.layers[1..];

    let rest_layer_count: Count = rest.iter().map(|&l| binomial(l, beta)).sum();
    let mut rest_point_layer_count = Count::zero();
    let mut seen = 0usize;
    for &l in rest {
        rest_point_layer_count += Count::from(seen) * binomial(l, beta);
        seen += l;
    }

    let pairs_a = binomial(a, 2);
    let lost = &pairs_a * binomial(first, beta)
        + &rest_layer_count * (&pairs_a + Count::from(a * first))
        + &rest_point_layer_count * Count::from(a + first);
    let gained = &rest_layer_count * binomial(a + first, 2)
        + &rest_point_layer_count * Count::from(a + first);
    let simplified_net = BigInt::from(&rest_layer_count * binomial(first, 2))
        - BigInt::from(pairs_a * binomial(first, beta));

    let mut after = vec![1; a + first];
    after.extend_from_slice(rest);

    let hypothesis = nf.is_sorted() && *nf.layers.last().expect("nonempty") >= a && beta >= 3;
    Ok(outcome(
        Rewrite::MergeAntilayerWithFirstLayer,
        beta,
        b,
        &after,
        Some(simplified_net.clone()),
        hypothesis,
        Breakdown::Merge {
            rest_layer_count,
            rest_point_layer_count,
            lost,
            gained,
            simplified_net,
        },
    ))
}
