// SPDX-License-Identifier: Apache-2.0

//! Independent oracles shared by the integration tests. Nothing here calls
//! into the counting or formula code under test.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

/// Counts occurrences by testing every position subset.
pub fn naive_count(tau: &[u32], sigma: &[u32]) -> u64 {
    let m = tau.len();
    let n = sigma.len();
    if m > n {
        return 0;
    }
    if m == 0 {
        return 1;
    }
    let mut idx: Vec<usize> = (0..m).collect();
    let mut total = 0;
    loop {
        let ok = (0..m)
            .all(|a| (a + 1..m).all(|b| (tau[a] < tau[b]) == (sigma[idx[a]] < sigma[idx[b]])));
        total += u64::from(ok);
        let mut k = m;
        loop {
            if k == 0 {
                return total;
            }
            k -= 1;
            if idx[k] < n - m + k {
                idx[k] += 1;
                for r in k + 1..m {
                    idx[r] = idx[r - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Pascal's triangle up to row `n` in `u128`.
pub fn pascal(n: usize) -> Vec<Vec<u128>> {
    let mut rows: Vec<Vec<u128>> = Vec::with_capacity(n + 1);
    for r in 0..=n {
        let mut row = vec![1u128; r + 1];
        for c in 1..r {
            row[c] = rows[r - 1][c - 1] + rows[r - 1][c];
        }
        rows.push(row);
    }
    rows
}

pub fn choose(table: &[Vec<u128>], n: usize, k: usize) -> u128 {
    if k > n {
        0
    } else {
        table[n][k]
    }
}

/// The layered permutation with the given layer sizes, built directly.
pub fn layered(parts: &[usize]) -> Vec<u32> {
    let mut out = Vec::new();
    let mut base = 0u32;
    for &p in parts {
        let p = p as u32;
        out.extend((1..=p).rev().map(|v| base + v));
        base += p;
    }
    out
}

/// Every composition of `n` as a list of parts.
pub fn all_compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    (0u64..1 << (n - 1))
        .map(|mask| {
            let mut parts = vec![];
            let mut run = 1;
            for bit in 0..n - 1 {
                if mask >> bit & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            parts
        })
        .collect()
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    v.shuffle(rng);
    v
}

/// `max_x C(x,2) C(n-x,b)` with binomials from Pascal's triangle.
pub fn two_beta_max(table: &[Vec<u128>], n: usize, beta: usize) -> (u128, usize) {
    let mut best = (0u128, 0usize);
    for x in 0..=n {
        let v = choose(table, x, 2) * choose(table, n - x, beta);
        if v > best.0 {
            best = (v, x);
        }
    }
    best
}
