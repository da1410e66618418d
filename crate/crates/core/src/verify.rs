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

//! Oracle-equivalence and identity suites behind `cobweb verify`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::gridposet::{self, GridPoset};
use crate::oracle::{self, ScaleLimit};
use crate::pnfposet::{DegeneratePolicy, PnFPoset};
use crate::sequences::FSequence;

/// Which closed form the chain-count suites compare the oracle against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChainFormula {
    #[default]
    Ballot,
    /// `((n+1-k)/n) * C(k+n, n)`, known to be wrong; used to confirm the
    /// verifier catches it.
    Printed,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub max_n: u64,
    pub sequences: Vec<FSequence>,
    pub chain_formula: ChainFormula,
    pub limit: ScaleLimit,
}

impl VerifyConfig {
    pub fn new(max_n: u64) -> Self {
        VerifyConfig {
            max_n,
            sequences: FSequence::gcd_morphic_catalog(),
            chain_formula: ChainFormula::Ballot,
            limit: ScaleLimit::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub identity: &'static str,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: expected {}, actual {}",
            self.identity, self.inputs, self.expected, self.actual
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checks: u64,
    pub skipped: u64,
    pub failures: Vec<Failure>,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> Self {
        SuiteOutcome {
            name,
            ..Default::default()
        }
    }

    fn check<T: PartialEq + fmt::Display>(
        &mut self,
        identity: &'static str,
        inputs: impl FnOnce() -> String,
        expected: T,
        actual: T,
    ) {
        self.checks += 1;
        if expected != actual {
            self.failures.push(Failure {
                identity,
                inputs: inputs(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn error(&mut self, identity: &'static str, inputs: String, err: Error) {
        self.checks += 1;
        self.failures.push(Failure {
            identity,
            inputs,
            expected: "a value".into(),
            actual: format!("error: {err}"),
        });
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub suites: Vec<SuiteOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Failure> {
        self.suites.iter().flat_map(|s| s.failures.iter())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            let status = if s.passed() { "PASS" } else { "FAIL" };
            write!(f, "{status} {:<24} {} checks", s.name, s.checks)?;
            if s.skipped > 0 {
                write!(f, ", {} skipped (scale limit)", s.skipped)?;
            }
            writeln!(f)?;
            for failure in &s.failures {
                writeln!(f, "  FAIL {failure}")?;
            }
        }
        Ok(())
    }
}

fn kn(k: u64, n: u64) -> impl FnOnce() -> String {
    move || format!("(k,n)=({k},{n})")
}

fn chain_value(formula: ChainFormula, g: &GridPoset) -> String {
    match formula {
        ChainFormula::Ballot => g.chain_count().to_string(),
        ChainFormula::Printed => gridposet::printed_chain_formula(g.k(), g.n())
            .expect("valid grid")
            .to_string(),
    }
}

fn grid_suites(cfg: &VerifyConfig, out: &mut Vec<SuiteOutcome>) {
    let mut size = SuiteOutcome::new("grid-size");
    let mut bell = SuiteOutcome::new("grid-whitney-bell");
    for n in 1..=cfg.max_n {
        for k in 0..n {
            let g = GridPoset::new(k, n).expect("k < n");
            let mut brute = 0u64;
            let mut census = vec![0u64; (k + n) as usize];
            for l in 0..=k {
                for m in 0..=n {
                    if l < m {
                        brute += 1;
                        census[(l + m - 1) as usize] += 1;
                    }
                }
            }
            size.check("size", kn(k, n), BigUint::from(brute), g.size());
            size.check("elements", kn(k, n), brute, g.elements().len() as u64);
            let w = g.whitney();
            let census =
                gridposet::WhitneyVector::new(census.into_iter().map(BigUint::from).collect());
            bell.check("whitney-census", kn(k, n), census, w.clone());
            bell.check("bell=size", kn(k, n), g.size(), w.total());
        }
    }
    out.push(size);
    out.push(bell);

    let mut chains = SuiteOutcome::new("grid-oracle");
    let mut catalan = SuiteOutcome::new("catalan-diagonal");
    for n in 1..=cfg.max_n.min(cfg.limit.max_n) {
        for k in 0..n {
            let g = GridPoset::new(k, n).expect("k < n");
            let h = match oracle::build_grid_hasse(k, n, cfg.limit) {
                Ok(h) => h,
                Err(e) => {
                    chains.error("hasse", kn(k, n)(), e);
                    continue;
                }
            };
            chains.check(
                "vertex-count",
                kn(k, n),
                g.size(),
                BigUint::from(h.vertex_count()),
            );
            chains.check(
                "census",
                kn(k, n),
                oracle::rank_level_counts(&h),
                g.whitney(),
            );
            chains.check(
                "covers-raise-rank",
                kn(k, n),
                true,
                h.covers_raise_rank_by_one(),
            );
            match oracle::enumerate_maximal_chains(&h) {
                Ok(r) => {
                    chains.check(
                        "chain-count",
                        kn(k, n),
                        r.chain_count.to_string(),
                        chain_value(cfg.chain_formula, &g),
                    );
                    chains.check("chain-length-min", kn(k, n), (k + n) as usize, r.min_length);
                    chains.check("chain-length-max", kn(k, n), (k + n) as usize, r.max_length);
                }
                Err(Error::ScaleLimit { .. }) => chains.skipped += 1,
                Err(e) => chains.error("chain-count", kn(k, n)(), e),
            }
        }
        let g = GridPoset::new(n - 1, n).expect("n - 1 < n");
        catalan.check(
            "catalan",
            kn(n - 1, n),
            gridposet::catalan(n - 1).to_string(),
            chain_value(cfg.chain_formula, &g),
        );
    }
    out.push(chains);
    out.push(catalan);
}

fn sequence_suites(cfg: &VerifyConfig, out: &mut Vec<SuiteOutcome>) {
    let mut gcd = SuiteOutcome::new("gcd-morphic");
    let mut algebra = SuiteOutcome::new("f-binomial-algebra");
    for seq in &cfg.sequences {
        let name = seq.name().to_string();
        match seq.gcd_morphic_check(cfg.max_n) {
            Ok(report) if seq.claims_gcd_morphic() => {
                let actual = match &report.counterexample {
                    None => "holds".to_string(),
                    Some(cx) => cx.to_string(),
                };
                gcd.check(
                    "gcd-morphic",
                    || format!("F={name} N={}", cfg.max_n),
                    "holds".to_string(),
                    actual,
                );
            }
            Ok(_) => gcd.skipped += 1,
            Err(e) => gcd.error("gcd-morphic", format!("F={name}"), e),
        }
        if !seq.claims_gcd_morphic() {
            continue;
        }

        let mut prev_fact = BigUint::one();
        for n in 0..=cfg.max_n {
            let fact = match seq.factorial(n) {
                Ok(f) => f,
                Err(e) => {
                    algebra.error("factorial", format!("F={name} n={n}"), e);
                    break;
                }
            };
            if n > 0 {
                let term = seq.eval(n).expect("factorial succeeded");
                algebra.check(
                    "factorial-recurrence",
                    || format!("F={name} n={n}"),
                    &prev_fact * term,
                    fact.clone(),
                );
            }
            prev_fact = fact.clone();
            for k in 0..=n {
                let inputs = || format!("F={name} n={n} k={k}");
                let (a, b) = match (seq.binomial(n, k as i64), seq.binomial(n, (n - k) as i64)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) | (_, Err(e)) => {
                        algebra.error("integrality", inputs(), e);
                        continue;
                    }
                };
                algebra.check("symmetry", inputs, a.clone(), b);
                let ratio = &fact
                    / (seq.factorial(k).expect("k <= n") * seq.factorial(n - k).expect("n-k <= n"));
                algebra.check("factorial-ratio", inputs, ratio, a.clone());
                if k == 0 || k == n {
                    algebra.check("edge-row", inputs, BigUint::one(), a);
                }
            }
            for k in [-1, n as i64 + 1] {
                let actual = seq.binomial(n, k).unwrap_or_else(|_| BigUint::one());
                algebra.check(
                    "out-of-range",
                    || format!("F={name} n={n} k={k}"),
                    BigUint::zero(),
                    actual,
                );
            }
        }
    }
    if cfg.sequences.iter().any(|s| s.name() == "naturals") {
        let nat = FSequence::naturals();
        let mut row = vec![BigUint::one()];
        for n in 0..=cfg.max_n {
            if n > 0 {
                let mut next = vec![BigUint::one(); n as usize + 1];
                for k in 1..n as usize {
                    next[k] = &row[k - 1] + &row[k];
                }
                row = next;
            }
            for (k, expected) in row.iter().enumerate() {
                let actual = nat.binomial(n, k as i64).unwrap_or_default();
                algebra.check(
                    "pascal",
                    || format!("n={n} k={k}"),
                    expected.clone(),
                    actual,
                );
            }
            let sum: BigUint = row.iter().sum();
            algebra.check(
                "row-sum",
                || format!("n={n}"),
                BigUint::one() << n as usize,
                sum,
            );
        }
    }
    out.push(gcd);
    out.push(algebra);
}

fn pnf_suites(cfg: &VerifyConfig, out: &mut Vec<SuiteOutcome>) {
    let mut census = SuiteOutcome::new("pnf-oracle");
    let mut identities = SuiteOutcome::new("pnf-identities");
    let mut chains = SuiteOutcome::new("pnf-chain-product");
    let policies = [DegeneratePolicy::Include, DegeneratePolicy::Exclude];

    for seq in cfg.sequences.iter().filter(|s| s.claims_gcd_morphic()) {
        let name = seq.name().to_string();
        for n in 1..=cfg.max_n {
            let ctx = |p: DegeneratePolicy| format!("F={name} n={n} policy={}", p.as_str());
            let mut bells = Vec::new();
            for policy in policies {
                let poset = PnFPoset::new(n, seq.clone(), policy);
                let whitney = match poset.whitney_vector() {
                    Ok(w) => w,
                    Err(e) => {
                        identities.error("whitney", ctx(policy), e);
                        continue;
                    }
                };
                let bell = poset.bell().expect("whitney succeeded");
                identities.check(
                    "bell=whitney-sum",
                    || ctx(policy),
                    whitney.total(),
                    bell.clone(),
                );
                bells.push(bell);
                for j in -1..=(n as i64 + 1) {
                    let k = n as i64 - j;
                    let expected = if k < 0 {
                        BigUint::zero()
                    } else {
                        whitney.get(k as usize)
                    };
                    let actual = poset.stirling2(j).unwrap_or_default();
                    identities.check(
                        "stirling-duality",
                        || format!("{} j={j}", ctx(policy)),
                        expected,
                        actual,
                    );
                }

                if n > cfg.limit.max_n {
                    continue;
                }
                let h = match oracle::build_pnf_hasse(n, seq, policy, cfg.limit) {
                    Ok(h) => h,
                    Err(Error::ScaleLimit { .. }) => {
                        census.skipped += 1;
                        continue;
                    }
                    Err(e) => {
                        census.error("hasse", ctx(policy), e);
                        continue;
                    }
                };
                census.check(
                    "census",
                    || ctx(policy),
                    whitney.clone(),
                    oracle::rank_level_counts(&h),
                );
                census.check(
                    "covers-raise-rank",
                    || ctx(policy),
                    true,
                    h.covers_raise_rank_by_one(),
                );

                let product: BigUint = whitney.counts().iter().product();
                if n > 10 || product > BigUint::from(cfg.limit.max_chains) {
                    chains.skipped += 1;
                    continue;
                }
                match oracle::enumerate_maximal_chains(&h) {
                    Ok(r) => {
                        chains.check("graded", || ctx(policy), true, r.graded());
                        chains.check("chain-product", || ctx(policy), product, r.chain_count);
                    }
                    Err(Error::ScaleLimit { .. }) => chains.skipped += 1,
                    Err(e) => chains.error("chain-product", ctx(policy), e),
                }
            }
            if let [inc, exc] = bells.as_slice() {
                let gap = if n % 2 == 0 {
                    BigUint::one()
                } else {
                    BigUint::zero()
                };
                identities.check(
                    "policy-gap",
                    || format!("F={name} n={n}"),
                    &gap + exc,
                    inc.clone(),
                );
            }
        }
    }

    if cfg.sequences.iter().any(|s| s.name() == "naturals") {
        let nat = FSequence::naturals();
        let (mut a, mut b) = (BigUint::one(), BigUint::one()); // Fib(1), Fib(2)
        let mut prev: Vec<BigUint> = Vec::new();
        for n in 1..=cfg.max_n {
            // b = Fib(n+1)
            let bell = PnFPoset::new(n, nat.clone(), DegeneratePolicy::Include)
                .bell()
                .unwrap_or_default();
            identities.check(
                "bell=fib(n+1)",
                || format!("n={n}"),
                b.clone(),
                bell.clone(),
            );
            if let [.., p2, p1] = prev.as_slice() {
                identities.check(
                    "bell-recurrence",
                    || format!("n={n}"),
                    p1 + p2,
                    bell.clone(),
                );
            }
            prev.push(bell);
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
        }
    }

    out.push(census);
    out.push(identities);
    out.push(chains);
}

/// Runs every suite up to `cfg.max_n`.
pub fn run(cfg: &VerifyConfig) -> VerifyReport {
    let mut suites = Vec::new();
    grid_suites(cfg, &mut suites);
    sequence_suites(cfg, &mut suites);
    pnf_suites(cfg, &mut suites);
    VerifyReport { suites }
}
