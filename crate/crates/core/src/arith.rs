// SPDX-License-Identifier: Apache-2.0

//! Exact integer helpers: binomials, decimal rendering of rationals, and
//! JSON encoding of unbounded integers.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serializer;

/// Exact occurrence count or binomial coefficient.
pub type Count = BigUint;

pub fn binomial(n: usize, k: usize) -> Count {
    if k > n {
        return Count::zero();
    }
    let k = k.min(n - k);
    let mut acc = Count::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` in `u128`, or `None` if any intermediate product overflows.
pub fn binomial_u128(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

pub fn factorial(n: usize) -> Count {
    (1..=n).fold(Count::one(), |acc, i| acc * i)
}

pub fn pow(base: usize, exp: usize) -> Count {
    num_traits::pow(Count::from(base), exp)
}

pub fn ratio(num: &Count, den: &Count) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// Fixed-point decimal string of `value`, rounded half away from zero to
/// `digits` places after the point.
pub fn decimal_string(value: &BigRational, digits: usize) -> String {
    let negative = value.is_negative();
    let abs = value.abs();
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = abs.numer() * &scale;
    let (mut q, r) = scaled.div_rem(abs.denom());
    if r * 2u32 >= *abs.denom() {
        q += 1u32;
    }
    let (int_part, frac_part) = q.div_rem(&scale);
    let mut out = String::new();
    if negative && !(int_part.is_zero() && frac_part.is_zero()) {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        out.push('.');
        out.push_str(&format!(
            "{:0>width$}",
            frac_part.to_string(),
            width = digits
        ));
    }
    out
}

pub fn to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Writes an unbounded integer as a bare JSON number.
pub fn serialize_uint<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    let number =
        serde_json::Number::from_str(&value.to_string()).map_err(serde::ser::Error::custom)?;
    serde::Serialize::serialize(&number, s)
}

pub fn serialize_int<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    let number =
        serde_json::Number::from_str(&value.to_string()).map_err(serde::ser::Error::custom)?;
    serde::Serialize::serialize(&number, s)
}

pub fn serialize_opt_int<S: Serializer>(value: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => serialize_int(v, s),
        None => s.serialize_none(),
    }
}
