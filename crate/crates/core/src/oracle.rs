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

//! Brute-force ground truth for both poset families.
//!
//! Diagrams are built from the order relation itself (the grid family) or
//! from factorial ratios (the `P(n, F)` family), never from the closed forms
//! they are meant to check. Maximal chains are counted by walking every
//! chain.

use std::fmt;
use std::io::{self, Write};
use std::ops::Range;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gridposet::{LayerIndex, WhitneyVector};
use crate::pnfposet::DegeneratePolicy;
use crate::sequences::FSequence;

pub const SCALE_LIMIT_ENV: &str = "COBWEB_SCALE_LIMIT";

/// Enumeration guards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaleLimit {
    /// Largest `n` accepted by the diagram builders.
    pub max_n: u64,
    /// Chain enumeration aborts past this many maximal chains.
    pub max_chains: u64,
    /// Largest vertex count a diagram may have.
    pub max_vertices: u64,
}

impl Default for ScaleLimit {
    fn default() -> Self {
        ScaleLimit {
            max_n: 12,
            max_chains: 100_000,
            max_vertices: 5_000_000,
        }
    }
}

impl ScaleLimit {
    /// Parses `MAX_N[,MAX_CHAINS[,MAX_VERTICES]]`; omitted fields keep their
    /// defaults.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut limit = ScaleLimit::default();
        let fields: Vec<&str> = spec.split(',').map(str::trim).collect();
        if fields.len() > 3 {
            return Err(Error::InvalidParameter(format!(
                "{SCALE_LIMIT_ENV}: expected at most three fields, got `{spec}`"
            )));
        }
        let slots = [
            &mut limit.max_n,
            &mut limit.max_chains,
            &mut limit.max_vertices,
        ];
        for (slot, field) in slots.into_iter().zip(&fields) {
            *slot = field.parse().map_err(|_| {
                Error::InvalidParameter(format!("{SCALE_LIMIT_ENV}: bad number `{field}`"))
            })?;
        }
        Ok(limit)
    }

    /// Defaults, overridden by `COBWEB_SCALE_LIMIT` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(SCALE_LIMIT_ENV) {
            Ok(s) if !s.trim().is_empty() => Self::parse(&s),
            _ => Ok(Self::default()),
        }
    }

    pub fn with_max_chains(mut self, max_chains: u64) -> Self {
        self.max_chains = max_chains;
        self
    }

    fn check_n(&self, n: u64) -> Result<()> {
        if n > self.max_n {
            return Err(Error::ScaleLimit {
                what: "n",
                actual: n.to_string(),
                limit: self.max_n,
            });
        }
        Ok(())
    }
}

/// Vertex label: a grid element `(l,m)` or copy `i` on level `k` of
/// `P(n, F)`, rendered `(k#i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Layer(LayerIndex),
    Copy { level: u64, copy: u64 },
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Layer(p) => write!(f, "{p}"),
            Vertex::Copy { level, copy } => write!(f, "({level}#{copy})"),
        }
    }
}

#[derive(Debug, Clone)]
enum Covers {
    /// Upper covers of each vertex, ascending.
    Listed(Vec<Vec<usize>>),
    /// Contiguous vertex ranges, one per level; every vertex of a level is
    /// covered by every vertex of the next.
    Levels(Vec<Range<usize>>),
}

#[derive(Debug, Clone)]
pub struct HasseDiagram {
    vertices: Vec<Vertex>,
    rank: Vec<u64>,
    covers: Covers,
    limit: ScaleLimit,
}

/// Hasse diagram of `P_{k,n}` by transitive reduction of the componentwise
/// order.
pub fn build_grid_hasse(k: u64, n: u64, limit: ScaleLimit) -> Result<HasseDiagram> {
    if k >= n {
        return Err(Error::InvalidGrid { k, n });
    }
    limit.check_n(n)?;

    let mut vertices = Vec::new();
    for l in 0..=k {
        for m in 0..=n {
            if l < m {
                vertices.push(LayerIndex::new(l, m)?);
            }
        }
    }
    vertices.sort();
    if vertices.len() as u64 > limit.max_vertices {
        return Err(Error::ScaleLimit {
            what: "vertex count",
            actual: vertices.len().to_string(),
            limit: limit.max_vertices,
        });
    }

    let strictly_below = |a: LayerIndex, b: LayerIndex| a != b && a.leq(b);
    let uppers: Vec<Vec<usize>> = vertices
        .iter()
        .map(|&a| {
            let above: Vec<usize> = (0..vertices.len())
                .filter(|&j| strictly_below(a, vertices[j]))
                .collect();
            above
                .iter()
                .copied()
                .filter(|&b| {
                    !above
                        .iter()
                        .any(|&c| strictly_below(vertices[c], vertices[b]))
                })
                .collect()
        })
        .collect();

    Ok(HasseDiagram {
        rank: vertices.iter().map(|p| p.rank()).collect(),
        vertices: vertices.into_iter().map(Vertex::Layer).collect(),
        covers: Covers::Listed(uppers),
        limit,
    })
}

/// Size of level `k` of `P(n, F)` as a ratio of explicit F-factorials,
/// `F_{n-k}! / (F_k! F_{n-2k}!)`.
fn level_size_by_factorials(seq: &FSequence, n: u64, k: u64) -> Result<BigUint> {
    let top = n - k;
    let num = seq.factorial(top)?;
    let den = seq.factorial(k)? * seq.factorial(top - k)?;
    let (q, r) = (&num / &den, &num % &den);
    if r != BigUint::default() {
        return Err(Error::NonIntegral {
            sequence: seq.name().to_string(),
            n: top,
            k,
            step: k,
            remainder: r,
        });
    }
    Ok(q)
}

/// Hasse diagram of `P(n, F)`: an ordinal sum of antichains.
pub fn build_pnf_hasse(
    n: u64,
    seq: &FSequence,
    policy: DegeneratePolicy,
    limit: ScaleLimit,
) -> Result<HasseDiagram> {
    limit.check_n(n)?;

    let mut sizes = Vec::new();
    for k in 0.. {
        let nonempty = match (n as i64 - 2 * k as i64).signum() {
            1 => true,
            0 => policy == DegeneratePolicy::Include,
            _ => false,
        };
        if !nonempty {
            break;
        }
        sizes.push(level_size_by_factorials(seq, n, k)?);
    }

    let total: BigUint = sizes.iter().sum();
    let too_big = || Error::ScaleLimit {
        what: "vertex count",
        actual: total.to_string(),
        limit: limit.max_vertices,
    };
    let total_u64 = u64::try_from(&total).map_err(|_| too_big())?;
    if total_u64 > limit.max_vertices {
        return Err(too_big());
    }

    let mut vertices = Vec::with_capacity(total_u64 as usize);
    let mut rank = Vec::with_capacity(total_u64 as usize);
    let mut levels = Vec::with_capacity(sizes.len());
    for (level, size) in sizes.iter().enumerate() {
        let size = u64::try_from(size).expect("bounded by total");
        let start = vertices.len();
        for copy in 1..=size {
            vertices.push(Vertex::Copy {
                level: level as u64,
                copy,
            });
            rank.push(level as u64);
        }
        levels.push(start..vertices.len());
    }

    Ok(HasseDiagram {
        vertices,
        rank,
        covers: Covers::Levels(levels),
        limit,
    })
}

impl HasseDiagram {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn rank_of(&self, v: usize) -> u64 {
        self.rank[v]
    }

    pub fn limit(&self) -> ScaleLimit {
        self.limit
    }

    fn next_level(levels: &[Range<usize>], v: usize) -> Range<usize> {
        let i = levels.partition_point(|r| r.end <= v);
        levels.get(i + 1).cloned().unwrap_or(0..0)
    }

    fn for_each_upper(&self, v: usize, mut f: impl FnMut(usize)) {
        match &self.covers {
            Covers::Listed(up) => up[v].iter().copied().for_each(f),
            Covers::Levels(levels) => Self::next_level(levels, v).for_each(&mut f),
        }
    }

    fn upper_len(&self, v: usize) -> usize {
        match &self.covers {
            Covers::Listed(up) => up[v].len(),
            Covers::Levels(levels) => Self::next_level(levels, v).len(),
        }
    }

    pub fn cover_edge_count(&self) -> u128 {
        match &self.covers {
            Covers::Listed(up) => up.iter().map(|u| u.len() as u128).sum(),
            Covers::Levels(levels) => levels
                .windows(2)
                .map(|w| w[0].len() as u128 * w[1].len() as u128)
                .sum(),
        }
    }

    /// All cover edges `(lower, upper)`, lower vertex first, then upper.
    pub fn cover_edges(&self) -> Box<dyn Iterator<Item = (usize, usize)> + '_> {
        match &self.covers {
            Covers::Listed(up) => Box::new(
                up.iter()
                    .enumerate()
                    .flat_map(|(a, us)| us.iter().map(move |&b| (a, b))),
            ),
            Covers::Levels(levels) => Box::new(levels.windows(2).flat_map(|w| {
                let upper = w[1].clone();
                w[0].clone()
                    .flat_map(move |a| upper.clone().map(move |b| (a, b)))
            })),
        }
    }

    fn minimal_elements(&self) -> Vec<usize> {
        match &self.covers {
            Covers::Listed(up) => {
                let mut has_lower = vec![false; self.vertices.len()];
                for us in up {
                    for &b in us {
                        has_lower[b] = true;
                    }
                }
                (0..self.vertices.len())
                    .filter(|&v| !has_lower[v])
                    .collect()
            }
            Covers::Levels(levels) => levels.first().cloned().unwrap_or(0..0).collect(),
        }
    }

    /// Whether every cover edge goes from rank `r` to rank `r + 1`.
    pub fn covers_raise_rank_by_one(&self) -> bool {
        match &self.covers {
            Covers::Listed(_) => self
                .cover_edges()
                .all(|(a, b)| self.rank[b] == self.rank[a] + 1),
            // a level's vertices share one rank, so checking one edge per
            // pair of levels is exhaustive
            Covers::Levels(levels) => {
                levels
                    .iter()
                    .all(|r| r.clone().all(|v| self.rank[v] == self.rank[r.start]))
                    && levels
                        .windows(2)
                        .all(|w| self.rank[w[1].start] == self.rank[w[0].start] + 1)
            }
        }
    }

    /// Reachability over cover edges, including the reflexive pairs.
    /// Quadratic in memory; meant for small diagrams.
    pub fn transitive_closure(&self) -> Vec<Vec<bool>> {
        let count = self.vertices.len();
        let mut reach = vec![vec![false; count]; count];
        // vertices with larger rank are processed first
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.rank[v]));
        for v in order {
            reach[v][v] = true;
            let mut row = reach[v].clone();
            self.for_each_upper(v, |u| {
                for (slot, &r) in row.iter_mut().zip(&reach[u]) {
                    *slot |= r;
                }
            });
            reach[v] = row;
        }
        reach
    }

    /// Whether the cover relation's reflexive-transitive closure equals
    /// `leq` on every pair of vertices.
    pub fn closure_matches(&self, leq: impl Fn(&Vertex, &Vertex) -> bool) -> bool {
        let reach = self.transitive_closure();
        self.vertices.iter().enumerate().all(|(i, a)| {
            self.vertices
                .iter()
                .enumerate()
                .all(|(j, b)| reach[i][j] == leq(a, b))
        })
    }

    /// Writes one `lower upper` line per cover edge.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (a, b) in self.cover_edges() {
            writeln!(out, "{} {}", self.vertices[a], self.vertices[b])?;
        }
        Ok(())
    }
}

/// Summary of a maximal-chain enumeration. Lengths count elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub chain_count: BigUint,
    pub min_length: usize,
    pub max_length: usize,
}

impl ChainReport {
    /// All maximal chains have the same length.
    pub fn graded(&self) -> bool {
        self.min_length == self.max_length
    }
}

/// Visits every maximal chain in lexicographic vertex order, starting from
/// each minimal element. Fails once more than `limit.max_chains` chains have
/// been seen.
pub fn for_each_maximal_chain(h: &HasseDiagram, mut visit: impl FnMut(&[usize])) -> Result<u64> {
    let max_chains = h.limit.max_chains;
    let mut count: u64 = 0;
    let mut path: Vec<usize> = Vec::new();
    let mut stack: Vec<(usize, usize)> = h
        .minimal_elements()
        .into_iter()
        .rev()
        .map(|v| (v, 0))
        .collect();
    let mut scratch = Vec::new();
    while let Some((v, depth)) = stack.pop() {
        path.truncate(depth);
        path.push(v);
        if h.upper_len(v) == 0 {
            count += 1;
            if count > max_chains {
                return Err(Error::ScaleLimit {
                    what: "maximal chain count",
                    actual: format!("more than {max_chains}"),
                    limit: max_chains,
                });
            }
            visit(&path);
            continue;
        }
        scratch.clear();
        h.for_each_upper(v, |u| scratch.push(u));
        stack.extend(scratch.iter().rev().map(|&u| (u, depth + 1)));
    }
    Ok(count)
}

pub fn enumerate_maximal_chains(h: &HasseDiagram) -> Result<ChainReport> {
    let mut min_length = usize::MAX;
    let mut max_length = 0;
    let count = for_each_maximal_chain(h, |chain| {
        min_length = min_length.min(chain.len());
        max_length = max_length.max(chain.len());
    })?;
    if count == 0 {
        min_length = 0;
    }
    Ok(ChainReport {
        chain_count: BigUint::from(count),
        min_length,
        max_length,
    })
}

/// Maximal chains as vertex labels, in enumeration order.
pub fn list_maximal_chains(h: &HasseDiagram) -> Result<Vec<Vec<Vertex>>> {
    let mut out = Vec::new();
    for_each_maximal_chain(h, |chain| {
        out.push(chain.iter().map(|&v| h.vertices[v]).collect())
    })?;
    Ok(out)
}

/// Number of vertices at each rank.
pub fn rank_level_counts(h: &HasseDiagram) -> WhitneyVector {
    let Some(&top) = h.rank.iter().max() else {
        return WhitneyVector::default();
    };
    let mut counts = vec![0u64; top as usize + 1];
    for &r in &h.rank {
        counts[r as usize] += 1;
    }
    WhitneyVector::new(counts.into_iter().map(BigUint::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn grid(k: u64, n: u64) -> HasseDiagram {
        build_grid_hasse(k, n, ScaleLimit::default()).unwrap()
    }

    fn edges_of(h: &HasseDiagram) -> Vec<String> {
        let mut buf = Vec::new();
        h.write_edge_list(&mut buf).unwrap();
        String::from_utf8(buf)
            .unwrap()
            .lines()
            .map(String::from)
            .collect()
    }

    #[test]
    fn grid_hasse_examples() {
        let h = grid(1, 2);
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.cover_edge_count(), 2);

        let h = grid(0, 3);
        assert_eq!(edges_of(&h), ["(0,1) (0,2)", "(0,2) (0,3)"]);

        let h = grid(2, 3);
        assert_eq!(h.vertex_count(), 6);
        let mut edges = edges_of(&h);
        edges.sort();
        assert_eq!(
            edges,
            [
                "(0,1) (0,2)",
                "(0,2) (0,3)",
                "(0,2) (1,2)",
                "(0,3) (1,3)",
                "(1,2) (1,3)",
                "(1,3) (2,3)",
            ]
        );
        assert!(h.covers_raise_rank_by_one());
    }

    #[test]
    fn grid_closure_recovers_order() {
        for n in 1..=6 {
            for k in 0..n {
                let h = grid(k, n);
                assert!(h.closure_matches(|a, b| match (a, b) {
                    (Vertex::Layer(a), Vertex::Layer(b)) => a.leq(*b),
                    _ => false,
                }));
            }
        }
    }

    #[test]
    fn grid_chain_examples() {
        let r = enumerate_maximal_chains(&grid(1, 2)).unwrap();
        assert_eq!(r.chain_count, BigUint::from(1u32));
        assert_eq!((r.min_length, r.max_length), (3, 3));
        assert!(r.graded());

        let r = enumerate_maximal_chains(&grid(2, 3)).unwrap();
        assert_eq!(r.chain_count, BigUint::from(2u32));
        assert_eq!((r.min_length, r.max_length), (5, 5));

        let chains = list_maximal_chains(&grid(2, 3)).unwrap();
        let rendered: Vec<String> = chains
            .iter()
            .map(|c| {
                c.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("->")
            })
            .collect();
        assert_eq!(
            rendered,
            [
                "(0,1)->(0,2)->(0,3)->(1,3)->(2,3)",
                "(0,1)->(0,2)->(1,2)->(1,3)->(2,3)",
            ]
        );
    }

    #[test]
    fn census_examples() {
        assert_eq!(
            rank_level_counts(&grid(2, 3)).counts(),
            ints(&[1, 1, 2, 1, 1])
        );
        assert_eq!(rank_level_counts(&grid(0, 3)).counts(), ints(&[1, 1, 1]));
        let h = build_pnf_hasse(
            4,
            &FSequence::naturals(),
            DegeneratePolicy::Include,
            ScaleLimit::default(),
        )
        .unwrap();
        assert_eq!(rank_level_counts(&h).counts(), ints(&[1, 3, 1]));
    }

    #[test]
    fn pnf_hasse_examples() {
        let lim = ScaleLimit::default();
        let h =
            build_pnf_hasse(1, &FSequence::fibonacci(), DegeneratePolicy::Include, lim).unwrap();
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(h.cover_edge_count(), 0);

        let h =
            build_pnf_hasse(6, &FSequence::fibonacci(), DegeneratePolicy::Include, lim).unwrap();
        assert_eq!(rank_level_counts(&h).counts(), ints(&[1, 5, 6, 1]));
        assert_eq!(h.cover_edge_count(), 5 + 30 + 6);
        assert!(h.covers_raise_rank_by_one());

        let h = build_pnf_hasse(4, &FSequence::naturals(), DegeneratePolicy::Include, lim).unwrap();
        let r = enumerate_maximal_chains(&h).unwrap();
        assert_eq!(r.chain_count, BigUint::from(3u32));
        assert!(r.graded());
        assert_eq!(
            edges_of(&h),
            [
                "(0#1) (1#1)",
                "(0#1) (1#2)",
                "(0#1) (1#3)",
                "(1#1) (2#1)",
                "(1#2) (2#1)",
                "(1#3) (2#1)"
            ]
        );

        let h = build_pnf_hasse(4, &FSequence::naturals(), DegeneratePolicy::Exclude, lim).unwrap();
        assert_eq!(rank_level_counts(&h).counts(), ints(&[1, 3]));
    }

    #[test]
    fn pnf_closure_is_ordinal_sum() {
        let h = build_pnf_hasse(
            6,
            &FSequence::naturals(),
            DegeneratePolicy::Include,
            ScaleLimit::default(),
        )
        .unwrap();
        assert!(h.closure_matches(|a, b| match (a, b) {
            (Vertex::Copy { level: la, .. }, Vertex::Copy { level: lb, .. }) => {
                la < lb || a == b
            }
            _ => false,
        }));
    }

    #[test]
    fn scale_guards() {
        let lim = ScaleLimit::default();
        assert!(matches!(
            build_grid_hasse(3, 13, lim),
            Err(Error::ScaleLimit { what: "n", .. })
        ));
        assert!(matches!(
            build_grid_hasse(3, 3, lim),
            Err(Error::InvalidGrid { .. })
        ));
        let h = build_grid_hasse(6, 12, lim.with_max_chains(10)).unwrap();
        assert!(matches!(
            enumerate_maximal_chains(&h),
            Err(Error::ScaleLimit { .. })
        ));
        let tight = ScaleLimit {
            max_vertices: 10,
            ..lim
        };
        assert!(
            build_pnf_hasse(6, &FSequence::fibonacci(), DegeneratePolicy::Include, tight).is_err()
        );
    }

    #[test]
    fn scale_limit_parsing() {
        assert_eq!(ScaleLimit::parse("20").unwrap().max_n, 20);
        let l = ScaleLimit::parse("14, 500").unwrap();
        assert_eq!(
            (l.max_n, l.max_chains, l.max_vertices),
            (14, 500, 5_000_000)
        );
        assert_eq!(ScaleLimit::parse("1,2,3").unwrap().max_vertices, 3);
        assert!(ScaleLimit::parse("x").is_err());
        assert!(ScaleLimit::parse("1,2,3,4").is_err());
    }
}
