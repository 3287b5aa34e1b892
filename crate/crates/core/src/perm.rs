// SPDX-License-Identifier: Apache-2.0

//! Permutations in one-line notation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A bijection on `1..=n`, stored as its one-line notation.
///
/// Both the universe permutation and the pattern use this type. Ordering is
/// lexicographic on the one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![0usize; n + 1];
        let mut out_of_range = Vec::new();
        for &v in &values {
            if v == 0 || v as usize > n {
                out_of_range.push(i64::from(v));
            } else {
                seen[v as usize] += 1;
            }
        }
        let missing: Vec<u32> = (1..=n)
            .filter(|&v| seen[v] == 0)
            .map(|v| v as u32)
            .collect();
        let repeated: Vec<u32> = (1..=n).filter(|&v| seen[v] > 1).map(|v| v as u32).collect();
        if missing.is_empty() && repeated.is_empty() && out_of_range.is_empty() {
            Ok(Self { values })
        } else {
            Err(Error::NotABijection {
                n,
                missing,
                repeated,
                out_of_range,
            })
        }
    }

    /// Caller guarantees `values` is a bijection on `1..=len`.
    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self { values }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.values
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Parses one-line notation.
///
/// Accepts whitespace-separated values (`"3 2 1 5 4"`) or, for `n <= 9`, a
/// single run of digits (`"1243"`).
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() == 1 && tokens[0].len() > 1 && tokens[0].bytes().all(|b| b.is_ascii_digit()) {
        let digits = tokens[0];
        if digits.len() > 9 {
            return Err(Error::BadToken {
                token: digits.to_string(),
                reason: "compact digit form only supports n <= 9".into(),
            });
        }
        let values = digits.bytes().map(|b| u32::from(b - b'0')).collect();
        return Permutation::new(values);
    }

    let mut values = Vec::with_capacity(tokens.len());
    for tok in &tokens {
        let v: u32 = tok.parse().map_err(|_| Error::BadToken {
            token: tok.to_string(),
            reason: "expected a positive integer".into(),
        })?;
        values.push(v);
    }
    if tokens.len() < 10 && tokens.len() > 1 && tokens.iter().any(|t| t.len() > 1) {
        return Err(Error::MixedFormats(text.to_string()));
    }
    Permutation::new(values)
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s)
    }
}

/// Advances `values` to its lexicographic successor; returns `false` at the
/// last arrangement.
pub(crate) fn next_permutation(values: &mut [u32]) -> bool {
    if values.len() < 2 {
        return false;
    }
    let mut i = values.len() - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = values.len() - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_whitespace_and_compact() {
        let p = parse_permutation("3 2 1 5 4 9 8 7 6").unwrap();
        assert_eq!(p.as_slice(), &[3, 2, 1, 5, 4, 9, 8, 7, 6]);
        assert_eq!(parse_permutation("1243").unwrap().as_slice(), &[1, 2, 4, 3]);
        assert_eq!(parse_permutation("1").unwrap().as_slice(), &[1]);
        let big = parse_permutation("10 9 8 7 6 5 4 3 2 1").unwrap();
        assert_eq!(big.len(), 10);
    }

    #[test]
    fn rejects_non_bijection() {
        match parse_permutation("1 3") {
            Err(Error::NotABijection {
                n,
                missing,
                out_of_range,
                ..
            }) => {
                assert_eq!(n, 2);
                assert_eq!(missing, vec![2]);
                assert_eq!(out_of_range, vec![3]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_permutation("1 1 2"),
            Err(Error::NotABijection { .. })
        ));
        assert!(matches!(
            parse_permutation("12 3"),
            Err(Error::MixedFormats(_))
        ));
        assert!(matches!(
            parse_permutation("1 x"),
            Err(Error::BadToken { .. })
        ));
        assert!(matches!(
            parse_permutation("1224"),
            Err(Error::NotABijection { .. })
        ));
    }

    #[test]
    fn display_round_trips() {
        let p = Permutation::new(vec![2, 1, 4, 3, 6, 5, 10, 9, 8, 7]).unwrap();
        assert_eq!(p.to_string(), "2 1 4 3 6 5 10 9 8 7");
        assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn successor_walks_lexicographically() {
        let mut v = vec![1, 2, 3];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![3, 2, 1]);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }
}
