// SPDX-License-Identifier: Apache-2.0

//! Deterministic generators over compositions and over all of `S_n`.

use crate::blocks::BlockStructure;
use crate::error::{Error, Result};
use crate::perm::{next_permutation, Permutation};

/// Default largest `n` for which all `n!` permutations may be enumerated.
pub const DEFAULT_MAX_EXHAUSTIVE_N: usize = 11;

/// Compositions of `n` in reverse lexicographic order: `(n)` first, `(1, ..., 1)`
/// last. `n = 0` yields the empty composition once.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<usize>>,
}

impl Compositions {
    pub fn new(n: usize) -> Self {
        let first = if n == 0 { vec![] } else { vec![n] };
        Self {
            current: Some(first),
        }
    }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        // Successor: shrink the rightmost part above 1 and fold the trailing
        // ones (plus the removed unit) into a single part after it.
        if let Some(i) = out.iter().rposition(|&p| p > 1) {
            let tail: usize = out[i + 1..].iter().sum();
            let mut next = out[..=i].to_vec();
            next[i] -= 1;
            next.push(tail + 1);
            self.current = Some(next);
        }
        Some(out)
    }
}

pub fn compositions(n: usize) -> Compositions {
    Compositions::new(n)
}

/// Composition of `n >= 1` encoded by a cut mask: bit `b` set means a cut
/// after position `b`.
pub(crate) fn composition_from_mask(n: usize, mask: u64) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut run = 1;
    for bit in 0..n.saturating_sub(1) {
        if mask >> bit & 1 == 1 {
            parts.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    if n > 0 {
        parts.push(run);
    }
    parts
}

/// Every layered permutation of size `n`, as canonical block structures, in
/// reverse lexicographic order of layer sizes. There are `2^(n-1)` of them.
pub fn enumerate_layered(n: usize) -> impl Iterator<Item = BlockStructure> {
    compositions(n).map(|parts| BlockStructure::from_layer_sizes(&parts))
}

/// All permutations of `1..=n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct AllPermutations {
    current: Option<Vec<u32>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.current = Some(succ);
        }
        Some(Permutation::from_vec_unchecked(cur))
    }
}

/// Refuses `n > bound`.
pub fn enumerate_all(n: usize, bound: usize) -> Result<AllPermutations> {
    if n > bound {
        return Err(Error::ExhaustiveBound { n, bound, hint: "" });
    }
    Ok(AllPermutations {
        current: Some((1..=n as u32).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_of_three() {
        let got: Vec<_> = enumerate_layered(3).map(|b| b.layer_sizes()).collect();
        assert_eq!(got, vec![vec![3], vec![2, 1], vec![1, 2], vec![1, 1, 1]]);
        assert_eq!(
            enumerate_layered(1)
                .map(|b| b.to_string())
                .collect::<Vec<_>>(),
            vec!["L1"]
        );
        assert_eq!(enumerate_layered(5).count(), 16);
        let empty: Vec<_> = enumerate_layered(0).collect();
        assert_eq!(empty, vec![BlockStructure::default()]);
    }

    #[test]
    fn compositions_are_distinct_and_complete() {
        for n in 1..=12 {
            let all: Vec<_> = compositions(n).collect();
            assert_eq!(all.len(), 1 << (n - 1));
            assert!(all.iter().all(|c| c.iter().sum::<usize>() == n));
            assert!(all.windows(2).all(|w| w[0] > w[1]));
            let mut from_masks: Vec<_> = (0..1u64 << (n - 1))
                .map(|m| composition_from_mask(n, m))
                .collect();
            from_masks.sort();
            from_masks.reverse();
            assert_eq!(from_masks, all);
        }
    }

    #[test]
    fn all_permutations_in_order() {
        let all: Vec<_> = enumerate_all(3, DEFAULT_MAX_EXHAUSTIVE_N)
            .unwrap()
            .collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0].as_slice(), &[1, 2, 3]);
        assert_eq!(all[5].as_slice(), &[3, 2, 1]);
        assert_eq!(enumerate_all(1, 11).unwrap().count(), 1);
        assert_eq!(enumerate_all(6, 11).unwrap().count(), 720);
    }

    #[test]
    fn refuses_above_bound() {
        assert!(matches!(
            enumerate_all(12, DEFAULT_MAX_EXHAUSTIVE_N),
            Err(Error::ExhaustiveBound {
                n: 12,
                bound: 11,
                ..
            })
        ));
    }
}
