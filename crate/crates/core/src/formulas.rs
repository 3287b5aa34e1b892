// SPDX-License-Identifier: Apache-2.0

//! Closed-form maxima and packing densities for the two-block patterns
//! `(1^a, a)` and `(1, 1, b)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{binomial, binomial_u128, decimal_string, pow, ratio, Count};
use crate::error::{Error, Result};
use crate::pattern::PatternSpec;
use crate::search::{galvin_ratios, RatioMode, RatioTable, SearchConfig};

pub const DEFAULT_DECIMAL_DIGITS: usize = 12;

/// Both sides of `C(n,k) C(m,l) <= C(n,l) C(m,k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityCheck {
    pub lhs: Count,
    pub rhs: Count,
    pub holds: bool,
}

/// Larger sets choosing larger subsets: for `k < l <= m <= n`,
/// `C(n,k) C(m,l) <= C(n,l) C(m,k)`.
pub fn binom_inequality_check(k: usize, l: usize, m: usize, n: usize) -> Result<InequalityCheck> {
    let mut broken = Vec::new();
    if k >= l {
        broken.push(format!("k < l ({k} >= {l})"));
    }
    if l > m {
        broken.push(format!("l <= m ({l} > {m})"));
    }
    if m > n {
        broken.push(format!("m <= n ({m} > {n})"));
    }
    if !broken.is_empty() {
        return Err(Error::Precondition(format!(
            "need k < l <= m <= n; violated: {}",
            broken.join(", ")
        )));
    }
    let lhs = binomial(n, k) * binomial(m, l);
    let rhs = binomial(n, l) * binomial(m, k);
    let holds = lhs <= rhs;
    Ok(InequalityCheck { lhs, rhs, holds })
}

/// Maximum number of `(1^a, a)` occurrences over permutations of even
/// length `total_length = 2h`, attained by `1 2 .. h 2h .. h+1`:
/// `C(h, a)^2`.
pub fn g_formula_alpha_alpha(total_length: usize, alpha: usize) -> Result<Count> {
    if alpha < 2 {
        return Err(Error::InvalidParameter(format!(
            "alpha must be >= 2 (alpha = 1 is the pattern 12 with density 1), got {alpha}"
        )));
    }
    if !total_length.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "the closed form covers even lengths only, got {total_length}"
        )));
    }
    let half = binomial(total_length / 2, alpha);
    Ok(&half * &half)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoBetaMax {
    pub count: Count,
    /// Smallest antilayer size attaining the maximum.
    pub argmax: usize,
}

fn two_beta_scan_u128(n: usize, beta: usize) -> Option<(u128, usize)> {
    let mut best = (0u128, 0usize);
    for x in 0..=n {
        let pairs = (x as u128 * x.saturating_sub(1) as u128) / 2;
        let v = pairs.checked_mul(binomial_u128(n - x, beta)?)?;
        if v > best.0 {
            best = (v, x);
        }
    }
    Some(best)
}

fn two_beta_scan_big(n: usize, beta: usize) -> (Count, usize) {
    let mut best = (Count::zero(), 0usize);
    for x in 0..=n {
        let v = binomial(x, 2) * binomial(n - x, beta);
        if v > best.0 {
            best = (v, x);
        }
    }
    best
}

/// `max_x C(x, 2) C(n - x, beta)` by scanning every split.
pub fn g_formula_2beta(n: usize, beta: usize) -> Result<TwoBetaMax> {
    if beta < 2 {
        return Err(Error::InvalidParameter(format!(
            "beta must be >= 2, got {beta}"
        )));
    }
    let (count, argmax) = match two_beta_scan_u128(n, beta) {
        Some((v, x)) => (Count::from(v), x),
        None => two_beta_scan_big(n, beta),
    };
    Ok(TwoBetaMax { count, argmax })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityFamily {
    AlphaAlpha(usize),
    TwoBeta(usize),
}

/// Exact packing density.
///
/// `numerator / denominator` is the closed form as evaluated, before
/// reduction (`1080 / 3125` for `b = 3`); use [`DensityReport::value`] for
/// the reduced rational.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub family: DensityFamily,
    pub numerator: Count,
    pub denominator: Count,
    /// Optimal fraction of elements in the leading antilayer.
    pub xi: BigRational,
    pub convergence: Option<RatioTable>,
}

impl DensityReport {
    pub fn value(&self) -> BigRational {
        ratio(&self.numerator, &self.denominator)
    }

    pub fn decimal(&self, digits: usize) -> String {
        decimal_string(&self.value(), digits)
    }

    pub fn pattern(&self) -> PatternSpec {
        match self.family {
            DensityFamily::AlphaAlpha(a) => PatternSpec::alpha_alpha(a),
            DensityFamily::TwoBeta(b) => PatternSpec::two_beta(b),
        }
        .expect("validated on construction")
    }
}

/// `C(2a, a) / 4^a`.
pub fn density_alpha_alpha(alpha: usize) -> Result<DensityReport> {
    if alpha < 2 {
        return Err(Error::InvalidParameter(format!(
            "alpha must be >= 2 (the pattern 12 has density 1), got {alpha}"
        )));
    }
    Ok(DensityReport {
        family: DensityFamily::AlphaAlpha(alpha),
        numerator: binomial(2 * alpha, alpha),
        denominator: pow(4, alpha),
        xi: BigRational::new(BigInt::from(1), BigInt::from(2)),
        convergence: None,
    })
}

/// `2 / (b + 2)`.
pub fn xi_2beta(beta: usize) -> BigRational {
    BigRational::new(BigInt::from(2), BigInt::from(beta + 2))
}

/// `C(b+2, 2) (2/(b+2))^2 (b/(b+2))^b`.
pub fn density_2beta(beta: usize) -> Result<DensityReport> {
    if beta < 2 {
        return Err(Error::InvalidParameter(format!(
            "beta must be >= 2, got {beta}"
        )));
    }
    Ok(DensityReport {
        family: DensityFamily::TwoBeta(beta),
        numerator: binomial(beta + 2, 2) * Count::from(4u32) * pow(beta, beta),
        denominator: pow(beta + 2, beta + 2),
        xi: xi_2beta(beta),
        convergence: None,
    })
}

/// [`density_2beta`] plus the closed-form Galvin ratio table up to `n_max`.
pub fn density_2beta_with_convergence(beta: usize, n_max: usize) -> Result<DensityReport> {
    let mut report = density_2beta(beta)?;
    let table = galvin_ratios(
        &PatternSpec::two_beta(beta)?,
        n_max,
        RatioMode::Formula,
        &SearchConfig::default(),
    )?;
    report.convergence = Some(table);
    Ok(report)
}

pub fn density_alpha_alpha_with_convergence(alpha: usize, n_max: usize) -> Result<DensityReport> {
    let mut report = density_alpha_alpha(alpha)?;
    let table = galvin_ratios(
        &PatternSpec::alpha_alpha(alpha)?,
        n_max,
        RatioMode::Formula,
        &SearchConfig::default(),
    )?;
    report.convergence = Some(table);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn inequality_examples() {
        let c = binom_inequality_check(1, 2, 3, 4).unwrap();
        assert_eq!(
            (c.lhs, c.rhs, c.holds),
            (Count::from(12u32), Count::from(18u32), true)
        );
        let c = binom_inequality_check(1, 2, 4, 4).unwrap();
        assert_eq!(
            (c.lhs, c.rhs, c.holds),
            (Count::from(24u32), Count::from(24u32), true)
        );
        let c = binom_inequality_check(2, 3, 5, 9).unwrap();
        assert_eq!(
            (c.lhs, c.rhs, c.holds),
            (Count::from(360u32), Count::from(840u32), true)
        );
    }

    #[test]
    fn inequality_precondition_names_violation() {
        let err = binom_inequality_check(3, 2, 4, 5).unwrap_err().to_string();
        assert!(err.contains("k < l"), "{err}");
        let err = binom_inequality_check(1, 2, 6, 5).unwrap_err().to_string();
        assert!(err.contains("m <= n"), "{err}");
    }

    #[test]
    fn alpha_alpha_values() {
        assert_eq!(g_formula_alpha_alpha(8, 2).unwrap(), Count::from(36u32));
        assert_eq!(g_formula_alpha_alpha(6, 3).unwrap(), Count::from(1u32));
        assert_eq!(g_formula_alpha_alpha(10, 3).unwrap(), Count::from(100u32));
        assert!(g_formula_alpha_alpha(7, 2).is_err());
        assert!(g_formula_alpha_alpha(8, 1).is_err());
    }

    #[test]
    fn two_beta_values() {
        let r = g_formula_2beta(8, 3).unwrap();
        assert_eq!((r.count, r.argmax), (Count::from(30u32), 3));
        let r = g_formula_2beta(5, 3).unwrap();
        assert_eq!((r.count, r.argmax), (Count::from(1u32), 2));
        let r = g_formula_2beta(8, 2).unwrap();
        assert_eq!((r.count, r.argmax), (Count::from(36u32), 4));
        let r = g_formula_2beta(4, 3).unwrap();
        assert_eq!(r.count, Count::zero());
        assert!(g_formula_2beta(8, 1).is_err());
    }

    #[test]
    fn two_beta_big_path_matches() {
        for (n, beta) in [(40, 7), (200, 3), (61, 20)] {
            let (v, x) = two_beta_scan_u128(n, beta).unwrap();
            assert_eq!((Count::from(v), x), two_beta_scan_big(n, beta));
        }
        assert!(two_beta_scan_u128(400, 60).is_none());
        let r = g_formula_2beta(400, 60).unwrap();
        assert_eq!((r.count, r.argmax), two_beta_scan_big(400, 60));
    }

    #[test]
    fn densities() {
        let d = density_alpha_alpha(2).unwrap();
        assert_eq!(
            (d.numerator.clone(), d.denominator.clone()),
            (Count::from(6u32), Count::from(16u32))
        );
        assert_eq!(d.value(), q(3, 8));
        assert_eq!(d.decimal(12), "0.375000000000");
        assert_eq!(density_alpha_alpha(3).unwrap().value(), q(20, 64));
        assert!(density_alpha_alpha(1).is_err());

        let d = density_2beta(3).unwrap();
        assert_eq!(d.numerator, Count::from(1080u32));
        assert_eq!(d.denominator, Count::from(3125u32));
        assert_eq!(d.xi, q(2, 5));
        let d2 = density_2beta(2).unwrap();
        assert_eq!(d2.value(), q(3, 8));
        assert_eq!(d2.xi, q(1, 2));
        assert_eq!(d2.value(), density_alpha_alpha(2).unwrap().value());
    }
}
