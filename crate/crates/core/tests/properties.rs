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

use cobweb::gridposet::{binomial, GridPoset};
use cobweb::pnfposet::{pnf_bell, pnf_stirling2, pnf_whitney};
use cobweb::{DegeneratePolicy, Error, FSequence, PnFPoset};
use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;

fn shipped(i: usize) -> FSequence {
    FSequence::gcd_morphic_catalog().swap_remove(i)
}

fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
    let mut tri = vec![vec![BigUint::one()]];
    for n in 1..=rows {
        let prev = &tri[n - 1];
        let mut row = vec![BigUint::one(); n + 1];
        for k in 1..n {
            row[k] = &prev[k - 1] + &prev[k];
        }
        tri.push(row);
    }
    tri
}

proptest! {
    #[test]
    fn f_binomial_symmetry(i in 0usize..5, n in 0u64..=40, frac in 0.0f64..=1.0) {
        let seq = shipped(i);
        let k = (n as f64 * frac).round() as u64;
        prop_assert_eq!(seq.binomial(n, k as i64).unwrap(), seq.binomial(n, (n - k) as i64).unwrap());
    }

    #[test]
    fn f_binomial_is_factorial_ratio(i in 0usize..5, n in 0u64..=40, frac in 0.0f64..=1.0) {
        let seq = shipped(i);
        let k = (n as f64 * frac).round() as u64;
        let ratio = seq.factorial(n).unwrap() / (seq.factorial(k).unwrap() * seq.factorial(n - k).unwrap());
        prop_assert_eq!(seq.binomial(n, k as i64).unwrap(), ratio);
    }

    #[test]
    fn grid_size_and_bell(n in 1u64..=30, frac in 0.0f64..1.0) {
        let k = ((n as f64) * frac) as u64;
        let g = GridPoset::new(k, n).unwrap();
        let brute = (0..=k).map(|l| n - l).sum::<u64>();
        prop_assert_eq!(g.size(), BigUint::from(brute));
        prop_assert_eq!(g.elements().len() as u64, brute);
        prop_assert_eq!(g.bell(), g.size());
        prop_assert_eq!(g.whitney().len() as u64, k + n);
    }

    #[test]
    fn pnf_identities(i in 0usize..5, n in 1u64..=30) {
        let seq = shipped(i);
        let inc = PnFPoset::new(n, seq.clone(), DegeneratePolicy::Include);
        let sum: BigUint = (0..=n).map(|k| inc.whitney(k).unwrap()).sum();
        prop_assert_eq!(inc.bell().unwrap(), sum);
        for j in 0..=n as i64 {
            prop_assert_eq!(pnf_stirling2(n, j, &seq).unwrap(), pnf_whitney(n, &seq, n - j as u64).unwrap());
        }
        let exc = pnf_bell(n, &seq, DegeneratePolicy::Exclude).unwrap();
        let gap = if n % 2 == 0 { BigUint::one() } else { BigUint::default() };
        prop_assert_eq!(inc.bell().unwrap(), exc + gap);
    }
}

#[test]
fn edge_rows_and_factorial_recurrence() {
    for seq in FSequence::gcd_morphic_catalog() {
        for n in 0..=40u64 {
            assert_eq!(seq.binomial(n, 0).unwrap(), BigUint::one());
            assert_eq!(seq.binomial(n, n as i64).unwrap(), BigUint::one());
            if n > 0 {
                assert_eq!(
                    seq.factorial(n).unwrap(),
                    seq.factorial(n - 1).unwrap() * seq.eval(n).unwrap()
                );
            }
            for k in 0..=n {
                seq.binomial(n, k as i64).unwrap();
            }
        }
    }
}

#[test]
fn naturals_match_pascal() {
    let tri = pascal(30);
    let nat = FSequence::naturals();
    for (n, row) in tri.iter().enumerate() {
        for (k, c) in row.iter().enumerate() {
            assert_eq!(&nat.binomial(n as u64, k as i64).unwrap(), c);
            assert_eq!(&binomial(n as u64, k as u64), c);
        }
        assert_eq!(row.iter().sum::<BigUint>(), BigUint::one() << n);
    }
}

#[test]
fn gcd_morphism_gate() {
    for seq in FSequence::gcd_morphic_catalog() {
        assert!(seq.gcd_morphic_check(60).unwrap().holds(), "{seq}");
    }
    let cx = FSequence::lucas()
        .gcd_morphic_check(60)
        .unwrap()
        .counterexample
        .unwrap();
    assert_eq!((cx.n, cx.m), (2, 4));
}

#[test]
fn lucas_is_caught_by_integrality() {
    let lucas = FSequence::lucas();
    let bad = (0..=12u64)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .filter(|&(n, k)| matches!(lucas.binomial(n, k as i64), Err(Error::NonIntegral { .. })))
        .count();
    assert!(bad > 0);
}

#[test]
fn naturals_bell_is_fibonacci() {
    let nat = FSequence::naturals();
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    let bells: Vec<BigUint> = (1..=30)
        .map(|n| pnf_bell(n, &nat, DegeneratePolicy::Include).unwrap())
        .collect();
    for bell in &bells {
        assert_eq!(bell, &b);
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    for w in bells.windows(3) {
        assert_eq!(w[2], &w[1] + &w[0]);
    }
}

#[test]
fn concurrent_queries_agree() {
    let seq = FSequence::gaussian(3).unwrap();
    let serial: Vec<BigUint> = (0..=30)
        .map(|n| pnf_bell(n, &seq, DegeneratePolicy::Include).unwrap())
        .collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..6)
            .map(|_| {
                let seq = seq.clone();
                s.spawn(move || {
                    (0..=30)
                        .map(|n| pnf_bell(n, &seq, DegeneratePolicy::Include).unwrap())
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), serial);
        }
    });
}
