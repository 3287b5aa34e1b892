// SPDX-License-Identifier: Apache-2.0

mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use permpack::blocks::layered_from_sizes;
use permpack::transforms::count_two_beta;
use permpack::{
    absorb_isolated_points, binomial, build_from_blocks, count_occurrences,
    count_occurrences_layered, decompose_blocks, g_formula_2beta, g_k,
    merge_antilayer_with_first_layer, move_point_to_last_layer, parse_blocks, parse_permutation,
    push_antilayers_left, sort_layers, BlockStructure, Count, NormalForm, PatternSpec, Permutation,
    SearchConfig,
};

use common::{layered, naive_count};

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_n)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn composition(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=6usize, 0..=max_n).prop_map(move |mut parts| {
        let mut total = 0;
        parts.retain(|&p| {
            total += p;
            total <= max_n
        });
        parts
    })
}

/// Normal forms `A L_1 .. L_k` of total size at most `max_n`.
fn normal_form(max_n: usize) -> impl Strategy<Value = NormalForm> {
    (0..=10usize, prop::collection::vec(2..=9usize, 0..=6)).prop_map(move |(a, layers)| {
        let mut total = a;
        let layers: Vec<usize> = layers
            .into_iter()
            .filter(|&l| {
                let keep = total + l <= max_n;
                total += if keep { l } else { 0 };
                keep
            })
            .collect();
        NormalForm::new(a, layers).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn blocks_round_trip(parts in composition(30)) {
        let b = BlockStructure::from_layer_sizes(&parts);
        prop_assert!(b.is_canonical());
        let p = build_from_blocks(&b);
        prop_assert_eq!(p.as_slice().to_vec(), layered(&parts));
        prop_assert_eq!(decompose_blocks(&p), Some(b.clone()));
        prop_assert_eq!(parse_blocks(&b.to_string()).unwrap(), b);
    }

    #[test]
    fn permutation_text_round_trip(p in permutation(14)) {
        prop_assert_eq!(parse_permutation(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn self_count_is_one(p in permutation(12)) {
        prop_assert_eq!(count_occurrences(&p, &p), Count::from(1u32));
    }

    #[test]
    fn count_bounded_by_binomial(tau in permutation(5), sigma in permutation(12)) {
        let c = count_occurrences(&tau, &sigma);
        prop_assert!(c <= binomial(sigma.len(), tau.len()));
        prop_assert_eq!(c, Count::from(naive_count(tau.as_slice(), sigma.as_slice())));
    }

    #[test]
    fn layered_engine_matches_general(tau in composition(5), sigma in composition(14)) {
        let general = count_occurrences(&layered_from_sizes(&tau), &layered_from_sizes(&sigma));
        prop_assert_eq!(count_occurrences_layered(&tau, &sigma), general);
    }

    #[test]
    fn cleanup_rewrites_are_idempotent(parts in composition(20), beta in 2..=5usize) {
        let b = BlockStructure::from_layer_sizes(&parts);
        for rewrite in [absorb_isolated_points, push_antilayers_left] {
            let once = rewrite(&b, beta).unwrap();
            let twice = rewrite(&once.after, beta).unwrap();
            prop_assert_eq!(&twice.after, &once.after);
            prop_assert!(once.count_after >= once.count_before);
        }
    }

    #[test]
    fn sort_is_idempotent(f in normal_form(24), beta in 2..=5usize) {
        let once = sort_layers(&f.to_blocks(), beta).unwrap();
        let twice = sort_layers(&once.after, beta).unwrap();
        prop_assert_eq!(&twice.after, &once.after);
        prop_assert_eq!(twice.count_after, twice.count_before);
        prop_assert!(NormalForm::from_blocks(&once.after).unwrap().is_sorted());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(240))]

    /// Symbolic deltas of the structural rewrites agree with a recount by the
    /// general engine.
    #[test]
    fn rewrite_formulas_match_recount(f in normal_form(30), beta in 3..=5usize) {
        let tau = layered_from_sizes(&[1, 1, beta]);
        let recount = |b: &BlockStructure| BigInt::from(count_occurrences(&tau, &build_from_blocks(b)));
        let b = f.to_blocks();
        prop_assert_eq!(count_two_beta(&f.composition(), beta), count_occurrences(&tau, &build_from_blocks(&b)));
        let mut outcomes = vec![sort_layers(&b, beta).unwrap()];
        if f.antilayer >= 2 && !f.layers.is_empty() {
            outcomes.push(move_point_to_last_layer(&b, beta).unwrap());
        }
        if f.layers.len() >= 2 {
            outcomes.push(merge_antilayer_with_first_layer(&b, beta).unwrap());
        }
        for o in outcomes {
            let delta = o.formula_delta.clone().unwrap();
            prop_assert_eq!(&delta, &(recount(&o.after) - recount(&o.before)), "{} on {}", o.rewrite.name(), o.before);
            prop_assert!(o.formula_matches());
        }
    }

    #[test]
    fn search_is_independent_of_worker_count(beta in 2..=3usize, n in 5..=8usize, workers in 1..=4usize) {
        let tau = PatternSpec::two_beta(beta).unwrap();
        let one = SearchConfig { workers: Some(1), ..SearchConfig::default() };
        let many = SearchConfig { workers: Some(workers), ..SearchConfig::default() };
        prop_assert_eq!(
            permpack::max_over_all(&tau, n, &one).unwrap(),
            permpack::max_over_all(&tau, n, &many).unwrap()
        );
    }
}

#[test]
fn argmax_tracks_optimal_fraction() {
    for n in 5..=5000usize {
        let x = g_formula_2beta(n, 3).unwrap().argmax as f64;
        let n_f = n as f64;
        assert!((x / n_f - 0.4).abs() <= 2.0 / n_f, "n = {n}: argmax {x}");
    }
}

#[test]
fn one_layer_after_antilayer_is_best() {
    let config = SearchConfig::default();
    for beta in [3usize, 4] {
        let tau = PatternSpec::two_beta(beta).unwrap();
        for n in beta + 2..=20 {
            let g1 = g_k(&tau, n, 1, &config).unwrap().max_count;
            for k in 2..=n / 2 {
                let gk = g_k(&tau, n, k, &config).unwrap().max_count;
                assert!(gk <= g1, "beta {beta} n {n} k {k}: {gk} > {g1}");
            }
        }
    }
}
