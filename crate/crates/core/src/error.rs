// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sequence `{sequence}` is not admissible at index {index}: value {value} (need >= 1)")]
    NotAdmissible {
        sequence: String,
        index: u64,
        value: BigInt,
    },

    #[error(
        "F-binomial ({n} choose {k}) for sequence `{sequence}` is not integral: \
         remainder {remainder} at step {step}"
    )]
    NonIntegral {
        sequence: String,
        n: u64,
        k: u64,
        step: u64,
        remainder: BigUint,
    },

    #[error("invalid grid poset: need 0 <= k < n, got k = {k}, n = {n}")]
    InvalidGrid { k: u64, n: u64 },

    #[error("invalid layer index: need l < m, got ({l},{m})")]
    InvalidLayer { l: u64, m: u64 },

    #[error("scale limit exceeded: {what} is {actual}, limit {limit} (set COBWEB_SCALE_LIMIT to override)")]
    ScaleLimit {
        what: &'static str,
        actual: String,
        limit: u64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
