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

//! Exact combinatorics of cobweb layer posets.
//!
//! Two graded families are modeled:
//!
//! * [`gridposet`]: the interval poset `P_{k,n}` of layer index pairs
//!   `(l, m)` with `0 <= l <= k`, `l < m <= n`, ordered componentwise.
//! * [`pnfposet`]: the poset `P(n, F)` built over an admissible sequence `F`,
//!   an ordinal sum of antichains whose level `k` has `(n-k choose k)_F`
//!   elements.
//!
//! [`oracle`] builds explicit Hasse diagrams of both families and counts
//! their maximal chains by exhaustive search, so every closed form here can
//! be checked against brute force. All arithmetic is exact.

pub mod cli;
pub mod error;
pub mod gridposet;
pub mod oracle;
pub mod pnfposet;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
pub use gridposet::{GridPoset, LayerIndex, WhitneyVector};
pub use oracle::{ChainReport, HasseDiagram, ScaleLimit};
pub use pnfposet::{DegeneratePolicy, PnFPoset};
pub use sequences::{FSequence, GcdMorphicReport};
