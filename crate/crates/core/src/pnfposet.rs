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

//! The F-dependent poset `P(n, F)`.
//!
//! `P(n, F)` is modeled as an ordinal sum of antichains: level `k` holds
//! `(n-k choose k)_F` mutually incomparable copies of rank `k`, and every
//! element of a lower level lies below every element of a higher one.
//! Level `k` is nonempty while `n - 2k > 0`. For even `n` the boundary level
//! `k = n/2` (a single copy) is governed by [`DegeneratePolicy`]; keeping it
//! makes `B_n(naturals)` the Fibonacci number `Fib(n+1)`.

use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gridposet::WhitneyVector;
use crate::sequences::FSequence;

/// Whether the even-`n` boundary level `k = n/2` belongs to `P(n, F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum DegeneratePolicy {
    #[default]
    Include,
    Exclude,
}

impl DegeneratePolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            DegeneratePolicy::Include => "include",
            DegeneratePolicy::Exclude => "exclude",
        }
    }
}

impl FromStr for DegeneratePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "include" => Ok(DegeneratePolicy::Include),
            "exclude" => Ok(DegeneratePolicy::Exclude),
            other => Err(Error::InvalidParameter(format!(
                "degenerate policy must be include or exclude, got `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PnFPoset {
    n: u64,
    seq: FSequence,
    policy: DegeneratePolicy,
}

impl PnFPoset {
    pub fn new(n: u64, seq: FSequence, policy: DegeneratePolicy) -> Self {
        PnFPoset { n, seq, policy }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn sequence(&self) -> &FSequence {
        &self.seq
    }

    pub fn policy(&self) -> DegeneratePolicy {
        self.policy
    }

    /// Highest nonempty rank, or `None` when there are no levels at all
    /// (only `n = 0` under [`DegeneratePolicy::Exclude`]).
    pub fn max_rank(&self) -> Option<u64> {
        match self.policy {
            DegeneratePolicy::Include => Some(self.n / 2),
            DegeneratePolicy::Exclude => self.n.div_ceil(2).checked_sub(1),
        }
    }

    pub fn level_count(&self) -> u64 {
        self.max_rank().map_or(0, |r| r + 1)
    }

    /// `W_k = (n-k choose k)_F` on existing levels, zero above them.
    pub fn whitney(&self, k: u64) -> Result<BigUint> {
        match self.max_rank() {
            Some(top) if k <= top => self.seq.binomial(self.n - k, k as i64),
            _ => Ok(BigUint::zero()),
        }
    }

    pub fn whitney_vector(&self) -> Result<WhitneyVector> {
        (0..self.level_count())
            .map(|k| self.whitney(k))
            .collect::<Result<Vec<_>>>()
            .map(WhitneyVector::new)
    }

    /// Stirling-like number of the second kind `S(n, j, F) = W_{n-j}`.
    pub fn stirling2(&self, j: i64) -> Result<BigUint> {
        let k = self.n as i64 - j;
        if k < 0 {
            return Ok(BigUint::zero());
        }
        self.whitney(k as u64)
    }

    /// Bell-like number `B_n(F)`, the sum of all Whitney numbers.
    pub fn bell(&self) -> Result<BigUint> {
        if self.n == 0 {
            return Ok(BigUint::one());
        }
        Ok(self.whitney_vector()?.total())
    }
}

/// `W_k(P(n, F))` under the default policy.
pub fn pnf_whitney(n: u64, seq: &FSequence, k: u64) -> Result<BigUint> {
    PnFPoset::new(n, seq.clone(), DegeneratePolicy::Include).whitney(k)
}

/// `S(n, j, F)` under the default policy.
pub fn pnf_stirling2(n: u64, j: i64, seq: &FSequence) -> Result<BigUint> {
    PnFPoset::new(n, seq.clone(), DegeneratePolicy::Include).stirling2(j)
}

pub fn pnf_bell(n: u64, seq: &FSequence, policy: DegeneratePolicy) -> Result<BigUint> {
    PnFPoset::new(n, seq.clone(), policy).bell()
}

/// `[B_1(F), ..., B_count(F)]`
pub fn pnf_bell_sequence(
    seq: &FSequence,
    count: u64,
    policy: DegeneratePolicy,
) -> Result<Vec<BigUint>> {
    (1..=count).map(|n| pnf_bell(n, seq, policy)).collect()
}
