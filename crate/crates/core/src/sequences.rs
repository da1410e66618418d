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

//! Admissible integer sequences `F`, their F-factorials and F-binomials.
//!
//! Sequences are indexed from 0. `F_0` may be 0; every `F_n` with `n >= 1`
//! must be at least 1, which is checked whenever a term is read.

use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

type TermFn = dyn Fn(u64) -> BigInt + Send + Sync;

#[derive(Clone)]
enum Kind {
    Fibonacci,
    Naturals,
    ConstantOne,
    Gaussian(u32),
    Lucas,
    Custom(Arc<TermFn>),
}

/// A named integer sequence `F_0, F_1, ...` with memoized exact terms.
///
/// Cloning is cheap and clones share the memo table.
#[derive(Clone)]
pub struct FSequence {
    name: String,
    kind: Kind,
    claims_gcd_morphic: bool,
    // Prefix F_0..F_{len-1} for the recurrence-defined kinds.
    memo: Arc<RwLock<Vec<BigInt>>>,
}

impl fmt::Debug for FSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FSequence")
            .field("name", &self.name)
            .field("claims_gcd_morphic", &self.claims_gcd_morphic)
            .finish()
    }
}

impl fmt::Display for FSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FSequence {
    fn with_kind(name: impl Into<String>, kind: Kind, claims_gcd_morphic: bool) -> Self {
        FSequence {
            name: name.into(),
            kind,
            claims_gcd_morphic,
            memo: Arc::new(RwLock::new(Vec::new())),
        }
    }

    /// `0, 1, 1, 2, 3, 5, ...`
    pub fn fibonacci() -> Self {
        Self::with_kind("fibonacci", Kind::Fibonacci, true)
    }

    /// `F_n = n`; its F-binomials are the ordinary binomials.
    pub fn naturals() -> Self {
        Self::with_kind("naturals", Kind::Naturals, true)
    }

    /// `F_n = 1` for every `n`.
    pub fn constant_one() -> Self {
        Self::with_kind("constant-one", Kind::ConstantOne, true)
    }

    /// Gaussian integers `F_n = (q^n - 1) / (q - 1)`; F-binomials are the
    /// q-binomial coefficients evaluated at `q`.
    pub fn gaussian(q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!(
                "gaussian sequence needs q >= 2, got {q}"
            )));
        }
        Ok(Self::with_kind(
            format!("gaussian(q={q})"),
            Kind::Gaussian(q),
            true,
        ))
    }

    /// Lucas numbers `2, 1, 3, 4, 7, ...`. Not GCD-morphic.
    pub fn lucas() -> Self {
        Self::with_kind("lucas", Kind::Lucas, false)
    }

    /// A caller-supplied sequence. Terms are not memoized.
    pub fn custom<F>(name: impl Into<String>, claims_gcd_morphic: bool, term: F) -> Self
    where
        F: Fn(u64) -> BigInt + Send + Sync + 'static,
    {
        Self::with_kind(name, Kind::Custom(Arc::new(term)), claims_gcd_morphic)
    }

    /// Resolves the command-line names `fib`, `naturals`, `ones`, `gauss`
    /// and `lucas` (plus a few long aliases). `q` is required for `gauss`
    /// and rejected otherwise.
    pub fn from_name(name: &str, q: Option<u32>) -> Result<Self> {
        let seq = match name {
            "fib" | "fibonacci" => Self::fibonacci(),
            "naturals" | "nat" => Self::naturals(),
            "ones" | "constant-one" => Self::constant_one(),
            "lucas" => Self::lucas(),
            "gauss" | "gaussian" => {
                let q = q.ok_or_else(|| {
                    Error::InvalidParameter("sequence `gauss` requires --q".into())
                })?;
                return Self::gaussian(q);
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown sequence `{other}` (expected fib, naturals, ones, gauss, lucas)"
                )))
            }
        };
        if q.is_some() {
            return Err(Error::InvalidParameter(format!(
                "--q only applies to `gauss`, not `{name}`"
            )));
        }
        Ok(seq)
    }

    /// The GCD-morphic sequences shipped with the crate, with `q = 2, 3`
    /// for the Gaussian family.
    pub fn gcd_morphic_catalog() -> Vec<Self> {
        vec![
            Self::fibonacci(),
            Self::naturals(),
            Self::constant_one(),
            Self::gaussian(2).expect("q = 2 is valid"),
            Self::gaussian(3).expect("q = 3 is valid"),
        ]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Whether the sequence is expected to be GCD-morphic. Tests compare
    /// this against [`FSequence::gcd_morphic_check`]; nothing trusts it.
    pub fn claims_gcd_morphic(&self) -> bool {
        self.claims_gcd_morphic
    }

    fn raw_term(&self, n: u64) -> BigInt {
        match &self.kind {
            Kind::Naturals => BigInt::from(n),
            Kind::ConstantOne => BigInt::one(),
            Kind::Gaussian(q) => {
                let q = BigInt::from(*q);
                let exp = u32::try_from(n).expect("gaussian index exceeds u32");
                (num_traits::pow(q.clone(), exp as usize) - 1) / (q - 1)
            }
            Kind::Custom(term) => term(n),
            Kind::Fibonacci | Kind::Lucas => self.memoized(n),
        }
    }

    fn memoized(&self, n: u64) -> BigInt {
        let idx = usize::try_from(n).expect("index exceeds address space");
        {
            let memo = self.memo.read().unwrap_or_else(|e| e.into_inner());
            if let Some(v) = memo.get(idx) {
                return v.clone();
            }
        }
        let mut memo = self.memo.write().unwrap_or_else(|e| e.into_inner());
        while memo.len() <= idx {
            let next = match (&self.kind, memo.len()) {
                (Kind::Fibonacci, 0) => BigInt::zero(),
                (Kind::Fibonacci, 1) => BigInt::one(),
                (Kind::Lucas, 0) => BigInt::from(2),
                (Kind::Lucas, 1) => BigInt::one(),
                (_, len) => &memo[len - 1] + &memo[len - 2],
            };
            memo.push(next);
        }
        memo[idx].clone()
    }

    /// `F_n`, rejecting terms that break admissibility.
    pub fn eval(&self, n: u64) -> Result<BigUint> {
        let value = self.raw_term(n);
        let admissible = if n == 0 {
            !value.is_negative()
        } else {
            value >= BigInt::one()
        };
        match value.to_biguint() {
            Some(v) if admissible => Ok(v),
            _ => Err(Error::NotAdmissible {
                sequence: self.name.clone(),
                index: n,
                value,
            }),
        }
    }

    /// `F_1 * F_2 * ... * F_n`, equal to 1 for `n = 0`.
    pub fn factorial(&self, n: u64) -> Result<BigUint> {
        let mut acc = BigUint::one();
        for i in 1..=n {
            acc *= self.eval(i)?;
        }
        Ok(acc)
    }

    /// The F-binomial `(n choose k)_F = F_n! / (F_k! F_{n-k}!)`.
    ///
    /// Evaluated as `prod_{i<k} F_{n-i} / F_{i+1}` with an exact division
    /// after every factor; a non-zero remainder is reported as
    /// [`Error::NonIntegral`] rather than truncated.
    pub fn binomial(&self, n: u64, k: i64) -> Result<BigUint> {
        if k < 0 || k as u64 > n {
            return Ok(BigUint::zero());
        }
        let k = k as u64;
        if k == 0 || k == n {
            return Ok(BigUint::one());
        }
        let mut acc = BigUint::one();
        for i in 0..k {
            acc *= self.eval(n - i)?;
            let (quot, rem) = acc.div_rem(&self.eval(i + 1)?);
            if !rem.is_zero() {
                return Err(Error::NonIntegral {
                    sequence: self.name.clone(),
                    n,
                    k,
                    step: i,
                    remainder: rem,
                });
            }
            acc = quot;
        }
        Ok(acc)
    }

    /// Row `n` of the F-binomial triangle: `(n choose 0)_F ..= (n choose n)_F`.
    pub fn binomial_row(&self, n: u64) -> Result<Vec<BigUint>> {
        (0..=n).map(|k| self.binomial(n, k as i64)).collect()
    }

    /// Tests `gcd(F_n, F_m) = F_{gcd(n, m)}` for every `1 <= n <= m <= bound`
    /// and reports the first failure in lexicographic order.
    pub fn gcd_morphic_check(&self, bound: u64) -> Result<GcdMorphicReport> {
        let values = (0..=bound)
            .map(|i| self.eval(i))
            .collect::<Result<Vec<_>>>()?;
        for n in 1..=bound {
            for m in n..=bound {
                let lhs = values[n as usize].gcd(&values[m as usize]);
                let g = n.gcd(&m);
                let rhs = &values[g as usize];
                if &lhs != rhs {
                    return Ok(GcdMorphicReport {
                        checked_bound: bound,
                        counterexample: Some(GcdCounterexample {
                            n,
                            m,
                            value_n: values[n as usize].clone(),
                            value_m: values[m as usize].clone(),
                            gcd_of_values: lhs,
                            value_at_gcd: rhs.clone(),
                        }),
                    });
                }
            }
        }
        Ok(GcdMorphicReport {
            checked_bound: bound,
            counterexample: None,
        })
    }
}

/// Outcome of an exhaustive GCD-morphism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdMorphicReport {
    pub checked_bound: u64,
    pub counterexample: Option<GcdCounterexample>,
}

impl GcdMorphicReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdCounterexample {
    pub n: u64,
    pub m: u64,
    pub value_n: BigUint,
    pub value_m: BigUint,
    /// `gcd(F_n, F_m)`
    pub gcd_of_values: BigUint,
    /// `F_{gcd(n, m)}`
    pub value_at_gcd: BigUint,
}

impl fmt::Display for GcdCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(n,m)=({},{}): gcd({},{}) = {} but F_{} = {}",
            self.n,
            self.m,
            self.value_n,
            self.value_m,
            self.gcd_of_values,
            self.n.gcd(&self.m),
            self.value_at_gcd
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(FSequence::fibonacci().eval(6).unwrap(), big(8));
        assert_eq!(FSequence::naturals().eval(7).unwrap(), big(7));
        assert_eq!(FSequence::gaussian(2).unwrap().eval(4).unwrap(), big(15));
        assert_eq!(FSequence::fibonacci().eval(0).unwrap(), big(0));
        let lucas: Vec<_> = (0..6)
            .map(|i| FSequence::lucas().eval(i).unwrap())
            .collect();
        assert_eq!(lucas, [2u64, 1, 3, 4, 7, 11].map(big));
    }

    #[test]
    fn gaussian_direct_evaluation() {
        // (q^n - 1)/(q - 1) evaluated by summing powers of q
        for q in 2u32..6 {
            let seq = FSequence::gaussian(q).unwrap();
            for n in 0..20u32 {
                let expected: BigUint = (0..n).map(|i| BigUint::from(q).pow(i)).sum();
                assert_eq!(seq.eval(n as u64).unwrap(), expected, "q={q} n={n}");
            }
        }
        assert!(FSequence::gaussian(1).is_err());
    }

    #[test]
    fn inadmissible_term_names_index() {
        let seq = FSequence::custom("countdown", false, |n| BigInt::from(3) - BigInt::from(n));
        assert_eq!(seq.eval(2).unwrap(), big(1));
        let err = seq.eval(3).unwrap_err();
        assert!(matches!(err, Error::NotAdmissible { index: 3, .. }));
        assert!(err.to_string().contains("index 3"));
        // the factorial stops at the first bad term
        assert!(matches!(
            seq.factorial(5),
            Err(Error::NotAdmissible { index: 3, .. })
        ));
        let neg_zero = FSequence::custom("neg", false, |n| {
            if n == 0 {
                BigInt::from(-1)
            } else {
                BigInt::one()
            }
        });
        assert!(neg_zero.eval(0).is_err());
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(FSequence::fibonacci().factorial(5).unwrap(), big(30));
        assert_eq!(FSequence::lucas().factorial(0).unwrap(), big(1));
        assert_eq!(FSequence::naturals().factorial(4).unwrap(), big(24));
    }

    #[test]
    fn binomial_examples() {
        let fib = FSequence::fibonacci();
        assert_eq!(fib.binomial(5, 2).unwrap(), big(15));
        assert_eq!(FSequence::naturals().binomial(7, 3).unwrap(), big(35));
        assert_eq!(fib.binomial(9, 0).unwrap(), big(1));
        assert_eq!(fib.binomial(4, 7).unwrap(), big(0));
        assert_eq!(fib.binomial(4, -1).unwrap(), big(0));
        assert_eq!(
            fib.binomial_row(5).unwrap(),
            [1u64, 5, 15, 15, 5, 1].map(big)
        );
    }

    #[test]
    fn lucas_binomial_is_not_integral() {
        // (4 choose 2)_L: 7 after the first step, then 7 * 4 / 3
        let err = FSequence::lucas().binomial(4, 2).unwrap_err();
        match err {
            Error::NonIntegral {
                ref sequence,
                n,
                k,
                ref remainder,
                ..
            } => {
                assert_eq!(sequence, "lucas");
                assert_eq!((n, k), (4, 2));
                assert_eq!(remainder, &big(1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gcd_check_examples() {
        assert!(FSequence::fibonacci()
            .gcd_morphic_check(30)
            .unwrap()
            .holds());
        assert!(FSequence::constant_one()
            .gcd_morphic_check(10)
            .unwrap()
            .holds());
        let report = FSequence::lucas().gcd_morphic_check(10).unwrap();
        let cx = report.counterexample.expect("lucas is not gcd-morphic");
        assert_eq!((cx.n, cx.m), (2, 4));
        assert_eq!(cx.gcd_of_values, big(1));
        assert_eq!(cx.value_at_gcd, big(3));
        assert_eq!((cx.value_n, cx.value_m), (big(3), big(7)));
    }

    #[test]
    fn from_name_rules() {
        assert_eq!(
            FSequence::from_name("fib", None).unwrap().name(),
            "fibonacci"
        );
        assert_eq!(
            FSequence::from_name("gauss", Some(3)).unwrap().name(),
            "gaussian(q=3)"
        );
        assert!(FSequence::from_name("gauss", None).is_err());
        assert!(FSequence::from_name("fib", Some(2)).is_err());
        assert!(FSequence::from_name("primes", None).is_err());
    }

    #[test]
    fn memo_is_shared_and_thread_safe() {
        let fib = FSequence::fibonacci();
        let expected: Vec<BigUint> = {
            let (mut a, mut b) = (big(0), big(1));
            (0..200)
                .map(|_| {
                    let out = a.clone();
                    let next = &a + &b;
                    a = std::mem::replace(&mut b, next);
                    out
                })
                .collect()
        };
        std::thread::scope(|s| {
            for t in 0..8u64 {
                let fib = fib.clone();
                let expected = &expected;
                s.spawn(move || {
                    for i in (0..200u64).rev().skip(t as usize) {
                        assert_eq!(fib.eval(i).unwrap(), expected[i as usize]);
                    }
                });
            }
        });
    }
}
