// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a bijection on 1..{n}: missing {missing:?}, repeated {repeated:?}, out of range {out_of_range:?}")]
    NotABijection {
        n: usize,
        missing: Vec<u32>,
        repeated: Vec<u32>,
        out_of_range: Vec<i64>,
    },
    #[error("invalid token `{token}`: {reason}")]
    BadToken { token: String, reason: String },
    #[error("mixed permutation formats in `{0}`: use either compact digits or whitespace-separated values")]
    MixedFormats(String),
    #[error("block sizes must be positive (block {index} has size 0)")]
    EmptyBlock { index: usize },
    #[error("pattern is not layered: {0}")]
    NotLayered(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("refusing exhaustive search at n = {n}: the configured bound is {bound}{hint}")]
    ExhaustiveBound {
        n: usize,
        bound: usize,
        hint: &'static str,
    },
    #[error("{0}")]
    Precondition(String),
    #[error("witness {witness} recounts to {recount}, expected {expected}")]
    WitnessMismatch {
        witness: String,
        recount: String,
        expected: String,
    },
    #[error("output error: {0}")]
    Output(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
