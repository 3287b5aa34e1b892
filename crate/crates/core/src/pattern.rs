// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use serde::{Serialize, Serializer};

use crate::blocks::{layer_composition, layered_from_sizes};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// How a pattern was specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternFamily {
    Explicit(Permutation),
    /// Layers `(1^a, a)`, `a >= 2`.
    AlphaAlpha(usize),
    /// Layers `(1, 1, b)`, `b >= 2`.
    TwoBeta(usize),
    /// Layers `(1^a, b)`.
    AlphaBeta(usize, usize),
}

/// A pattern together with its one-line form and, when layered, its layer
/// composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSpec {
    family: PatternFamily,
    permutation: Permutation,
    layers: Option<Vec<usize>>,
}

fn singles_then_layer(singles: usize, layer: usize) -> Vec<usize> {
    let mut parts = vec![1; singles];
    if layer > 0 {
        parts.push(layer);
    }
    parts
}

impl PatternSpec {
    pub fn explicit(permutation: Permutation) -> Result<Self> {
        if permutation.is_empty() {
            return Err(Error::InvalidParameter("pattern must be nonempty".into()));
        }
        let layers = layer_composition(permutation.as_slice());
        Ok(Self {
            family: PatternFamily::Explicit(permutation.clone()),
            permutation,
            layers,
        })
    }

    pub fn alpha_alpha(alpha: usize) -> Result<Self> {
        if alpha < 2 {
            return Err(Error::InvalidParameter(format!(
                "tau_(alpha,alpha) needs alpha >= 2, got {alpha}"
            )));
        }
        Ok(Self::from_parts(
            PatternFamily::AlphaAlpha(alpha),
            singles_then_layer(alpha, alpha),
        ))
    }

    pub fn two_beta(beta: usize) -> Result<Self> {
        if beta < 2 {
            return Err(Error::InvalidParameter(format!(
                "tau_(2,beta) needs beta >= 2, got {beta}"
            )));
        }
        Ok(Self::from_parts(
            PatternFamily::TwoBeta(beta),
            singles_then_layer(2, beta),
        ))
    }

    /// `tau_(alpha,beta)` with layers `(1^alpha, beta)`; `beta = 0` means no
    /// trailing layer.
    pub fn alpha_beta(alpha: usize, beta: usize) -> Result<Self> {
        if alpha + beta == 0 {
            return Err(Error::InvalidParameter("pattern must be nonempty".into()));
        }
        Ok(Self::from_parts(
            PatternFamily::AlphaBeta(alpha, beta),
            singles_then_layer(alpha, beta),
        ))
    }

    pub fn from_layers(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "layer sizes must be positive and nonempty: {parts:?}"
            )));
        }
        Self::explicit(layered_from_sizes(parts))
    }

    fn from_parts(family: PatternFamily, parts: Vec<usize>) -> Self {
        Self {
            family,
            permutation: layered_from_sizes(&parts),
            layers: Some(parts),
        }
    }

    pub fn family(&self) -> &PatternFamily {
        &self.family
    }

    pub fn permutation(&self) -> &Permutation {
        &self.permutation
    }

    pub fn len(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.permutation.is_empty()
    }

    pub fn layers(&self) -> Option<&[usize]> {
        self.layers.as_deref()
    }

    pub fn is_layered(&self) -> bool {
        self.layers.is_some()
    }

    /// `Some(beta)` when the layers are `(1, 1, beta)` with `beta >= 2`.
    pub fn as_two_beta(&self) -> Option<usize> {
        match self.layers.as_deref() {
            Some([1, 1, b]) if *b >= 2 => Some(*b),
            _ => None,
        }
    }

    /// `Some(alpha)` when the layers are `(1^alpha, alpha)` with `alpha >= 2`.
    pub fn as_alpha_alpha(&self) -> Option<usize> {
        let parts = self.layers.as_deref()?;
        let alpha = *parts.last()?;
        if alpha >= 2 && parts.len() == alpha + 1 && parts[..alpha].iter().all(|&p| p == 1) {
            Some(alpha)
        } else {
            None
        }
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.permutation)
    }
}

impl Serialize for PatternSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.permutation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_resolve_to_layers() {
        let t = PatternSpec::two_beta(3).unwrap();
        assert_eq!(t.permutation().as_slice(), &[1, 2, 5, 4, 3]);
        assert_eq!(t.layers(), Some(&[1, 1, 3][..]));
        assert_eq!(t.as_two_beta(), Some(3));

        let a = PatternSpec::alpha_alpha(3).unwrap();
        assert_eq!(a.permutation().as_slice(), &[1, 2, 3, 6, 5, 4]);
        assert_eq!(a.as_alpha_alpha(), Some(3));
        assert_eq!(a.as_two_beta(), None);

        let ab = PatternSpec::alpha_beta(3, 2).unwrap();
        assert_eq!(ab.len(), 5);
        assert_eq!(ab.layers(), Some(&[1, 1, 1, 2][..]));
    }

    #[test]
    fn explicit_1243_is_both_families() {
        let p = PatternSpec::explicit("1243".parse().unwrap()).unwrap();
        assert_eq!(p.as_two_beta(), Some(2));
        assert_eq!(p.as_alpha_alpha(), Some(2));
        let q = PatternSpec::explicit("2 3 1".parse().unwrap()).unwrap();
        assert!(!q.is_layered());
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(PatternSpec::alpha_alpha(1).is_err());
        assert!(PatternSpec::two_beta(1).is_err());
        assert!(PatternSpec::alpha_beta(0, 0).is_err());
        assert!(PatternSpec::explicit(Permutation::identity(0)).is_err());
    }
}
