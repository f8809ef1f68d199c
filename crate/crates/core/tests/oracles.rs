//! Frozen expected values, computed ahead of time with an independent
//! exact-rational-arithmetic implementation, pinned here against the crate.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use pisot_core::numeration::{self, DEFAULT_PARRY_LEN};
use pisot_core::symbolic::{self, PeriodicWord, SymbolicGroup};
use pisot_core::{lattice, AlgebraicNumber, Dyadic, PisotPolynomial, Round};

fn field(text: &str) -> Arc<PisotPolynomial> {
    Arc::new(PisotPolynomial::parse(text).unwrap())
}

fn word(s: &str) -> PeriodicWord {
    PeriodicWord::new(s.bytes().map(|b| (b - b'0') as u64).collect())
}

/// The period of ξ₀ in the x³-x-1 field, independently computed: 22 symbols,
/// purely periodic.
const SMALLEST_PISOT_XI0_PERIOD: &str = "0000010000100000000100";

#[test]
fn smallest_pisot_class_word() {
    let f = field("x^3-x-1");
    let xi0 = lattice::xi0(&f);
    // ξ₀ = (4 + 9β - 6β²)/23, value ≈ 0.2344867659
    let (nums, den) = xi0.to_num_den();
    assert_eq!(nums, vec![BigInt::from(4), BigInt::from(9), BigInt::from(-6)]);
    assert_eq!(den, BigInt::from(23));
    let tail = symbolic::tail_of_coset(&xi0, 100_000).unwrap();
    assert_eq!(tail, word(SMALLEST_PISOT_XI0_PERIOD));
    assert_eq!(tail.len(), 22);

    // the 23-element group: zero plus all 22 rotations of that single word
    let grp = SymbolicGroup::enumerate(&f, 1, 100_000).unwrap();
    assert_eq!(grp.len(), 23);
    let tails: BTreeSet<PeriodicWord> =
        grp.classes().iter().map(|c| c.canonical_tail.clone()).collect();
    let mut expect: BTreeSet<PeriodicWord> = word(SMALLEST_PISOT_XI0_PERIOD).rotations().into_iter().collect();
    expect.insert(PeriodicWord::zero());
    assert_eq!(tails, expect);
    // all nonzero classes have period exactly |D| - 1 = 22
    for c in grp.classes() {
        if !c.canonical_tail.is_zero() {
            assert_eq!(c.canonical_tail.len(), 22);
        }
    }
}

#[test]
fn tribonacci_necklaces() {
    let f = field("x^3-x^2-x-1");
    let grp = SymbolicGroup::enumerate(&f, 1, 100_000).unwrap();
    assert_eq!(grp.len(), 44);
    // period multiset: 40 of period 10, 2 of period 2, 1 of period 3, zero
    let mut by_len = std::collections::BTreeMap::new();
    for c in grp.classes() {
        *by_len.entry(c.canonical_tail.len()).or_insert(0usize) += 1;
    }
    assert_eq!(by_len.get(&0), Some(&1));
    assert_eq!(by_len.get(&2), Some(&2));
    assert_eq!(by_len.get(&3), Some(&1));
    assert_eq!(by_len.get(&10), Some(&40));

    // the period-10 classes are the 10 rotations of 4 necklaces
    let mut necklaces = std::collections::BTreeMap::new();
    for c in grp.classes() {
        if c.canonical_tail.len() == 10 {
            let (canon, _) = c.canonical_tail.canonical_rotation();
            *necklaces.entry(canon).or_insert(0usize) += 1;
        }
    }
    assert_eq!(necklaces.len(), 4);
    assert!(necklaces.values().all(|&n| n == 10));
    let listed = ["1000110000", "1010000110", "1001011000", "1001101100"];
    for s in listed {
        let (canon, _) = word(s).canonical_rotation();
        assert!(necklaces.contains_key(&canon), "necklace of {s} missing");
    }

    // the two period-2 classes are 01 and 10
    let two: BTreeSet<PeriodicWord> = grp
        .classes()
        .iter()
        .filter(|c| c.canonical_tail.len() == 2)
        .map(|c| c.canonical_tail.clone())
        .collect();
    let expect: BTreeSet<PeriodicWord> = [word("01"), word("10")].into_iter().collect();
    assert_eq!(two, expect);

    // ξ₀'s own expansion: purely periodic with the frozen period-10 word
    let xi0 = lattice::xi0(&f);
    let e = numeration::greedy_expand(&xi0, 100_000).unwrap();
    assert_eq!(e.preperiod(), &[] as &[u64]);
    assert_eq!(e.period(), &[0, 0, 1, 0, 0, 0, 1, 1, 0, 0]);
}

#[test]
fn golden_and_quadratic_tails() {
    let g = field("x^2-x-1");
    assert_eq!(symbolic::tail_of_coset(&lattice::xi0(&g), 100_000).unwrap(), word("0100"));
    let q = field("x^2-2x-1");
    assert_eq!(symbolic::tail_of_coset(&lattice::xi0(&q), 100_000).unwrap(), word("0200"));
    // any element of ℤ[β] has the zero tail for these finitary fields
    let z = AlgebraicNumber::beta(&g).pow(2) + AlgebraicNumber::one(&g);
    assert!(symbolic::tail_of_coset(&z, 100_000).unwrap().is_zero());
}

#[test]
fn tribonacci_xi0_numeric_enclosure() {
    // independently computed: ξ₀ ≈ 0.18280353296829546438
    let f = field("x^3-x^2-x-1");
    let iv = lattice::xi0(&f).evaluate(96);
    let lo = Dyadic::from_ratio(
        &BigInt::from(18280353296u64),
        &BigInt::from(100000000000u64),
        96,
        Round::Down,
    );
    let hi = Dyadic::from_ratio(
        &BigInt::from(18280353297u64),
        &BigInt::from(100000000000u64),
        96,
        Round::Up,
    );
    assert_eq!(iv.lo().cmp(&lo), std::cmp::Ordering::Greater);
    assert_eq!(iv.hi().cmp(&hi), std::cmp::Ordering::Less);
}

#[test]
fn fibonacci_closed_formulas() {
    // F_1 = 1, F_2 = 2, ...: digit positions follow the step-4 ladder
    // k even: exponents k-1, k-5, …, down to -k+3, then -k
    // k odd:  exponents k-1, k-5, …, down to -k+5, then -k+1
    let g = field("x^2-x-1");
    let mut fib: Vec<BigInt> = vec![BigInt::from(1), BigInt::from(2)];
    for i in 2..30 {
        let next = &fib[i - 1] + &fib[i - 2];
        fib.push(next);
    }
    for (i, f_k) in fib.iter().enumerate() {
        let k = (i + 1) as i64;
        let x = AlgebraicNumber::from_integer(&g, f_k.clone());
        let e = numeration::expand_positive(&x, 100_000).unwrap();
        assert!(e.is_finite(), "F_{k} expansion must be finite");
        let mut expect: BTreeSet<i64> = BTreeSet::new();
        if k % 2 == 0 {
            let mut exp = k - 1;
            while exp >= -k + 3 {
                expect.insert(exp);
                exp -= 4;
            }
            expect.insert(-k);
        } else {
            let mut exp = k - 1;
            while exp >= -k + 5 {
                expect.insert(exp);
                exp -= 4;
            }
            expect.insert(-k + 1);
        }
        // positions carrying digit 1 (position = -exponent)
        let mut got = BTreeSet::new();
        for pos in (-(k + 2))..=(k + 2) {
            match e.digit_at(pos) {
                0 => {}
                1 => {
                    got.insert(-pos);
                }
                other => panic!("unexpected digit {other} in F_{k}"),
            }
        }
        assert_eq!(got, expect, "F_{k}");
    }
}

#[test]
fn tribonacci_class_tail_periods() {
    // expansions of coset representatives have period lengths in {0, 2, 3, 10}
    let f = field("x^3-x^2-x-1");
    let ix = lattice::CosetIndexer::new(&f);
    let mut lens = BTreeSet::new();
    for rep in ix.representatives() {
        let e = numeration::greedy_expand(&rep, 100_000).unwrap();
        lens.insert(e.period().len());
    }
    let expect: BTreeSet<usize> = [0usize, 2, 3, 10].into_iter().collect();
    assert_eq!(lens, expect);
}

#[test]
fn quadratic_family_group_shapes() {
    // β² = kβ + 1 (k ≥ 1) and β² = kβ - 1 (k ≥ 3), k ≤ 12:
    // cyclic ℤ/D for odd k, ℤ/(D/2) × ℤ/2 for even k
    for (sign, range) in [(1i64, 1..=12i64), (-1, 3..=12)] {
        for k in range {
            let text = if sign > 0 { format!("x^2-{k}x-1") } else { format!("x^2-{k}x+1") };
            let f = field(&text);
            let gs = lattice::group_structure(&f).unwrap();
            let dd = k * k + 4 * sign;
            assert_eq!(gs.discriminant, BigInt::from(dd), "{text}");
            let nontrivial: Vec<i64> = gs
                .invariant_factors
                .iter()
                .filter(|x| !x.is_one())
                .map(|x| x.to_i64().unwrap())
                .collect();
            if k % 2 == 1 {
                assert_eq!(nontrivial, vec![dd], "{text}");
            } else {
                assert_eq!(nontrivial, vec![2, dd / 2], "{text}");
            }
        }
    }
}
