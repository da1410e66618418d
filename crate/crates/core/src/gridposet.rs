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

//! The interval poset `P_{k,n}` of layer index pairs.
//!
//! Elements are pairs `(l, m)` with `0 <= l <= k` and `l < m <= n`, ordered
//! componentwise. The poset is graded by `r(l, m) = l + m - 1`, has bottom
//! `(0, 1)` and top `(k, n)`, and its maximal chains are the monotone
//! lattice paths from `(0, 1)` to `(k, n)` that stay inside `l < m`. Those
//! paths are counted by the ballot numbers `((n-k)/n) * C(n+k-1, k)`.
//!
//! An older closed form, `((n+1-k)/n) * C(k+n, n)`, is kept as
//! [`printed_chain_formula`] so the verifier can show where it breaks: it
//! is not even an integer at `(k, n) = (0, 2)` and gives 3 instead of 1 at
//! `(1, 2)`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A layer `<Phi_l -> Phi_m>`, written `p_{l,m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LayerIndex {
    l: u64,
    m: u64,
}

impl LayerIndex {
    pub fn new(l: u64, m: u64) -> Result<Self> {
        if l < m {
            Ok(LayerIndex { l, m })
        } else {
            Err(Error::InvalidLayer { l, m })
        }
    }

    pub fn l(self) -> u64 {
        self.l
    }

    pub fn m(self) -> u64 {
        self.m
    }

    /// Componentwise order.
    pub fn leq(self, other: LayerIndex) -> bool {
        self.l <= other.l && self.m <= other.m
    }

    pub fn rank(self) -> u64 {
        self.l + self.m - 1
    }
}

impl fmt::Display for LayerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l, self.m)
    }
}

/// Element counts per rank, from rank 0 up to the top rank.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WhitneyVector(Vec<BigUint>);

impl WhitneyVector {
    pub fn new(counts: Vec<BigUint>) -> Self {
        WhitneyVector(counts)
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry at `rank`, zero past the end.
    pub fn get(&self, rank: usize) -> BigUint {
        self.0.get(rank).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }

    pub fn into_inner(self) -> Vec<BigUint> {
        self.0
    }
}

impl fmt::Display for WhitneyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `P_{k,n} = [p_{0,1}, p_{k,n}]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridPoset {
    k: u64,
    n: u64,
}

impl GridPoset {
    pub fn new(k: u64, n: u64) -> Result<Self> {
        if k < n {
            Ok(GridPoset { k, n })
        } else {
            Err(Error::InvalidGrid { k, n })
        }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn bottom(&self) -> LayerIndex {
        LayerIndex { l: 0, m: 1 }
    }

    pub fn top(&self) -> LayerIndex {
        LayerIndex {
            l: self.k,
            m: self.n,
        }
    }

    pub fn contains(&self, p: LayerIndex) -> bool {
        p.l <= self.k && p.m <= self.n
    }

    /// Rank of the poset, i.e. the rank of its top element.
    pub fn rank(&self) -> u64 {
        self.k + self.n - 1
    }

    /// `(n-k)(k+1) + k(k+1)/2`
    pub fn size(&self) -> BigUint {
        let (k, n) = (BigUint::from(self.k), BigUint::from(self.n));
        let k1 = &k + 1u32;
        (&n - &k) * &k1 + (&k * &k1) / 2u32
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<LayerIndex> {
        (0..=self.k)
            .flat_map(|l| (l + 1..=self.n).map(move |m| LayerIndex { l, m }))
            .collect()
    }

    /// Number of elements at rank `j`.
    ///
    /// `(l, j+1-l)` is an element iff `j+1-n <= l <= min(k, j/2)`.
    pub fn whitney_at(&self, j: u64) -> u64 {
        let lo = (j + 1).saturating_sub(self.n);
        let hi = self.k.min(j / 2);
        if hi >= lo {
            hi - lo + 1
        } else {
            0
        }
    }

    /// Whitney numbers of the second kind, ranks `0..=k+n-1`.
    pub fn whitney(&self) -> WhitneyVector {
        WhitneyVector(
            (0..=self.rank())
                .map(|j| BigUint::from(self.whitney_at(j)))
                .collect(),
        )
    }

    /// Bell-like number: the sum of the Whitney numbers.
    pub fn bell(&self) -> BigUint {
        self.whitney().total()
    }

    /// Number of maximal chains, `((n-k)/n) * C(n+k-1, k)`.
    pub fn chain_count(&self) -> BigUint {
        let numer = BigUint::from(self.n - self.k) * binomial(self.n + self.k - 1, self.k);
        let (q, r) = numer.div_rem(&BigUint::from(self.n));
        debug_assert!(r.is_zero(), "ballot number must be integral");
        q
    }
}

/// Ordinary binomial coefficient, zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(2i, i) / (i + 1)`
pub fn catalan(i: u64) -> BigUint {
    binomial(2 * i, i) / (i + 1)
}

/// The value `((n+1-k)/n) * C(k+n, n)` as a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedChainValue {
    pub numerator: BigUint,
    pub denominator: BigUint,
}

impl PrintedChainValue {
    pub fn as_integer(&self) -> Option<&BigUint> {
        self.denominator.is_one().then_some(&self.numerator)
    }
}

impl fmt::Display for PrintedChainValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}/{}", self.numerator, self.denominator),
        }
    }
}

/// The erroneous chain-count formula `((n+1-k)/n) * C(k+n, n)`. Only used
/// to demonstrate that it disagrees with exhaustive counts.
pub fn printed_chain_formula(k: u64, n: u64) -> Result<PrintedChainValue> {
    GridPoset::new(k, n)?;
    let numer = BigUint::from(n + 1 - k) * binomial(k + n, n);
    let den = BigUint::from(n);
    let g = numer.gcd(&den);
    Ok(PrintedChainValue {
        numerator: numer / &g,
        denominator: den / g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(k: u64, n: u64) -> GridPoset {
        GridPoset::new(k, n).unwrap()
    }

    fn ints(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn size_examples() {
        assert_eq!(grid(1, 2).size(), BigUint::from(3u32));
        assert_eq!(grid(0, 7).size(), BigUint::from(7u32));
        assert_eq!(grid(2, 3).size(), BigUint::from(6u32));
        assert!(matches!(
            GridPoset::new(3, 3),
            Err(Error::InvalidGrid { k: 3, n: 3 })
        ));
        assert!(GridPoset::new(3, 2).is_err());
    }

    #[test]
    fn element_examples() {
        let pairs = |g: GridPoset| -> Vec<(u64, u64)> {
            g.elements().iter().map(|p| (p.l(), p.m())).collect()
        };
        assert_eq!(pairs(grid(1, 2)), [(0, 1), (0, 2), (1, 2)]);
        assert_eq!(pairs(grid(0, 2)), [(0, 1), (0, 2)]);
        assert_eq!(
            pairs(grid(2, 3)),
            [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        );
    }

    #[test]
    fn order_and_rank_examples() {
        let p = |l, m| LayerIndex::new(l, m).unwrap();
        assert!(p(0, 1).leq(p(1, 2)));
        assert!(!p(1, 2).leq(p(0, 3)));
        assert!(!p(0, 3).leq(p(1, 2)));
        assert!(p(2, 3).leq(p(2, 3)));
        assert_eq!(p(0, 1).rank(), 0);
        assert_eq!(p(1, 2).rank(), 2);
        assert_eq!(p(2, 3).rank(), 4);
        assert!(LayerIndex::new(2, 2).is_err());
        assert_eq!(grid(2, 3).bottom(), p(0, 1));
        assert_eq!(grid(2, 3).top(), p(2, 3));
    }

    #[test]
    fn whitney_and_bell_examples() {
        assert_eq!(grid(2, 3).whitney().counts(), ints(&[1, 1, 2, 1, 1]));
        assert_eq!(grid(1, 2).whitney().counts(), ints(&[1, 1, 1]));
        assert_eq!(grid(0, 3).whitney().counts(), ints(&[1, 1, 1]));
        assert_eq!(grid(2, 3).bell(), BigUint::from(6u32));
        assert_eq!(grid(1, 2).bell(), BigUint::from(3u32));
        assert_eq!(grid(0, 9).bell(), BigUint::from(9u32));
        assert_eq!(grid(2, 3).whitney().to_string(), "1 1 2 1 1");
    }

    #[test]
    fn chain_count_examples() {
        assert_eq!(grid(1, 2).chain_count(), BigUint::from(1u32));
        assert_eq!(grid(2, 3).chain_count(), BigUint::from(2u32));
        assert_eq!(grid(0, 5).chain_count(), BigUint::from(1u32));
        assert_eq!(grid(3, 4).chain_count(), BigUint::from(5u32));
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(3), BigUint::from(5u32));
        assert_eq!(catalan(9), BigUint::from(4862u32));
    }

    #[test]
    fn printed_formula_breaks_early() {
        let v = printed_chain_formula(0, 2).unwrap();
        assert_eq!(v.as_integer(), None);
        assert_eq!(v.to_string(), "3/2");
        let v = printed_chain_formula(1, 2).unwrap();
        assert_eq!(v.as_integer(), Some(&BigUint::from(3u32)));
        assert_ne!(v.as_integer(), Some(&grid(1, 2).chain_count()));
    }
}
