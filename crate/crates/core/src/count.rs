// SPDX-License-Identifier: Apache-2.0

//! Occurrence counting.
//!
//! [`count_occurrences`] works for arbitrary pattern and text permutations by
//! extending partial embeddings left to right. Each new pattern entry only has
//! to land strictly between the images of its nearest smaller and nearest
//! larger predecessors (by value), which prunes most branches early.
//!
//! [`count_occurrences_layered`] handles the layered-in-layered case with a
//! dynamic program over layer compositions: a pattern layer lives inside a
//! single text layer, and distinct pattern layers use distinct text layers in
//! increasing order, so
//!
//! ```text
//! f(i, j) = f(i-1, j) + f(i-1, j-1) * C(s_i, t_j),   f(0, 0) = 1
//! ```

use num_traits::{One, Zero};

use crate::arith::{binomial, binomial_u128, Count};
use crate::perm::Permutation;

/// Reusable left-to-right embedding counter for one pattern.
pub(crate) struct PatternCounter {
    /// Index of the nearest smaller earlier pattern value, per pattern entry.
    below: Vec<Option<usize>>,
    /// Index of the nearest larger earlier pattern value, per pattern entry.
    above: Vec<Option<usize>>,
    images: Vec<u32>,
}

impl PatternCounter {
    pub(crate) fn new(pattern: &[u32]) -> Self {
        let m = pattern.len();
        let mut below = Vec::with_capacity(m);
        let mut above = Vec::with_capacity(m);
        for (j, &t) in pattern.iter().enumerate() {
            let prior = pattern[..j].iter().copied().enumerate();
            below.push(
                prior
                    .clone()
                    .filter(|&(_, v)| v < t)
                    .max_by_key(|&(_, v)| v)
                    .map(|(k, _)| k),
            );
            above.push(
                prior
                    .filter(|&(_, v)| v > t)
                    .min_by_key(|&(_, v)| v)
                    .map(|(k, _)| k),
            );
        }
        Self {
            below,
            above,
            images: vec![0; m],
        }
    }

    pub(crate) fn count(&mut self, text: &[u32]) -> u128 {
        let m = self.images.len();
        if m == 0 {
            return 1;
        }
        if m > text.len() {
            return 0;
        }
        self.extend(text, 0, 0)
    }

    fn extend(&mut self, text: &[u32], j: usize, start: usize) -> u128 {
        let m = self.images.len();
        if j == m {
            return 1;
        }
        let lo = self.below[j].map_or(0, |k| self.images[k]);
        let hi = self.above[j].map_or(u32::MAX, |k| self.images[k]);
        let mut total = 0u128;
        for i in start..=text.len() - (m - j) {
            let v = text[i];
            if v > lo && v < hi {
                self.images[j] = v;
                total += self.extend(text, j + 1, i + 1);
            }
        }
        total
    }
}

/// Number of position subsets of `sigma` whose values are order-isomorphic
/// to `tau`. The empty pattern occurs exactly once.
pub fn count_occurrences(tau: &Permutation, sigma: &Permutation) -> Count {
    Count::from(PatternCounter::new(tau.as_slice()).count(sigma.as_slice()))
}

pub(crate) fn count_layered_u128(tau: &[usize], sigma: &[usize]) -> Option<u128> {
    let p = tau.len();
    let mut f = vec![0u128; p + 1];
    f[0] = 1;
    for &s in sigma {
        for j in (1..=p).rev() {
            if f[j - 1] != 0 {
                let c = binomial_u128(s, tau[j - 1])?;
                f[j] = f[j].checked_add(f[j - 1].checked_mul(c)?)?;
            }
        }
    }
    Some(f[p])
}

fn count_layered_big(tau: &[usize], sigma: &[usize]) -> Count {
    let p = tau.len();
    let mut f = vec![Count::zero(); p + 1];
    f[0] = Count::one();
    for &s in sigma {
        for j in (1..=p).rev() {
            if !f[j - 1].is_zero() {
                let add = &f[j - 1] * binomial(s, tau[j - 1]);
                f[j] += add;
            }
        }
    }
    f.swap_remove(p)
}

/// Occurrences of the layered pattern with layer sizes `tau_layers` in the
/// layered permutation with layer sizes `sigma_layers`. All parts must be
/// positive.
pub fn count_occurrences_layered(tau_layers: &[usize], sigma_layers: &[usize]) -> Count {
    debug_assert!(tau_layers.iter().chain(sigma_layers).all(|&p| p > 0));
    match count_layered_u128(tau_layers, sigma_layers) {
        Some(v) => Count::from(v),
        None => count_layered_big(tau_layers, sigma_layers),
    }
}
