//! Greedy β-expansions, Parry admissibility, finitary classification, and
//! digit-sequence arithmetic.
//!
//! Orbits run in exact ℚ(β) arithmetic; eventual periodicity is detected by
//! exact state revisit (first revisit gives the minimal preperiod and
//! period). Digit decisions go through certified intervals with an exact
//! fallback, so no expansion digit is ever produced from a float guess.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algnum::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::interval::CertifiedInterval;
use crate::poly::PisotPolynomial;

/// Default cap on greedy-orbit steps.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;
/// Default cap on the length of the expansion of 1.
pub const DEFAULT_PARRY_LEN: usize = 10_000;

// ---------------------------------------------------------------------------
// Parry data: the expansion of 1 and the quasi-greedy comparator
// ---------------------------------------------------------------------------

/// Greedy expansion d' of 1 together with the quasi-greedy comparator d used
/// in the admissibility condition (every suffix ≺ d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParrySequence {
    /// d' preperiod (the whole of d' when it is finite).
    pub greedy_preperiod: Vec<u64>,
    /// d' period (empty when d' is finite).
    pub greedy_period: Vec<u64>,
    /// True when d' terminates (β is a "simple" Parry number).
    pub finite: bool,
    /// Quasi-greedy d, eventually periodic: preperiod part.
    pub quasi_preperiod: Vec<u64>,
    /// Quasi-greedy d: period part (nonempty).
    pub quasi_period: Vec<u64>,
}

impl ParrySequence {
    /// Largest admissible digit d₁ = ⌊β⌋.
    pub fn max_digit(&self) -> u64 {
        self.quasi_stream().digit(0)
    }

    fn quasi_stream(&self) -> Stream<'_> {
        Stream { pre: &self.quasi_preperiod, per: &self.quasi_period }
    }
}

/// Eventually periodic digit stream (0-based positions; all-zero tail when
/// the period is empty).
#[derive(Clone, Copy)]
struct Stream<'a> {
    pre: &'a [u64],
    per: &'a [u64],
}

impl<'a> Stream<'a> {
    fn digit(&self, n: usize) -> u64 {
        if n < self.pre.len() {
            self.pre[n]
        } else if self.per.is_empty() {
            0
        } else {
            self.per[(n - self.pre.len()) % self.per.len()]
        }
    }

    /// Strict lexicographic comparison; two eventually periodic streams agree
    /// everywhere iff they agree on a pre+lcm window.
    fn strictly_less(&self, other: &Stream<'_>) -> bool {
        let pa = self.per.len().max(1);
        let pb = other.per.len().max(1);
        let bound = self.pre.len().max(other.pre.len()) + num_integer::lcm(pa, pb) + 1;
        for n in 0..bound {
            let a = self.digit(n);
            let b = other.digit(n);
            if a != b {
                return a < b;
            }
        }
        false
    }

    fn suffix(&self, n: usize) -> Stream<'a> {
        debug_assert!(n <= self.pre.len(), "suffix beyond the preperiod");
        Stream { pre: &self.pre[n..], per: self.per }
    }
}

/// Exact greedy expansion of 1 with the quasi-greedy adjustment applied when
/// it terminates.
pub fn parry_sequence(field: &Arc<PisotPolynomial>, max_len: usize) -> Result<ParrySequence> {
    let orbit = greedy_orbit(AlgebraicNumber::one(field), max_len).map_err(|e| match e {
        Error::MaxStepsExceeded => Error::MaxLenExceeded,
        other => other,
    })?;
    match orbit {
        Orbit::Finite(digits) => {
            // d = repeat of (d'_1, ..., d'_{k-1}, d'_k - 1)
            let mut quasi = digits.clone();
            let last = quasi.last_mut().expect("expansion of 1 is nonempty");
            debug_assert!(*last > 0);
            *last -= 1;
            Ok(ParrySequence {
                greedy_preperiod: digits,
                greedy_period: Vec::new(),
                finite: true,
                quasi_preperiod: Vec::new(),
                quasi_period: quasi,
            })
        }
        Orbit::Periodic { preperiod, period } => Ok(ParrySequence {
            greedy_preperiod: preperiod.clone(),
            greedy_period: period.clone(),
            finite: false,
            quasi_preperiod: preperiod,
            quasi_period: period,
        }),
    }
}

// ---------------------------------------------------------------------------
// admissibility
// ---------------------------------------------------------------------------

fn check_alphabet(word: &[u64], max_digit: u64) -> Result<()> {
    for &d in word {
        if d > max_digit {
            return Err(Error::DigitOutOfRange(d));
        }
    }
    Ok(())
}

/// Admissibility of a finite word read as `word 0^∞`: every suffix must be
/// strictly below the quasi-greedy expansion of 1.
pub fn is_admissible_word(parry: &ParrySequence, word: &[u64]) -> Result<bool> {
    check_alphabet(word, parry.max_digit())?;
    let d = parry.quasi_stream();
    for i in 0..word.len() {
        let s = Stream { pre: &word[i..], per: &[] };
        if !s.strictly_less(&d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Admissibility of the bi-infinite periodic repetition of `word`: every
/// rotation occurs as a suffix, so every rotation must be ≺ d.
pub fn is_admissible_periodic(parry: &ParrySequence, word: &[u64]) -> Result<bool> {
    check_alphabet(word, parry.max_digit())?;
    if word.is_empty() {
        return Ok(true);
    }
    let d = parry.quasi_stream();
    let mut rot: Vec<u64> = word.to_vec();
    for _ in 0..word.len() {
        let s = Stream { pre: &[], per: &rot };
        if !s.strictly_less(&d) {
            return Ok(false);
        }
        rot.rotate_left(1);
    }
    Ok(true)
}

/// Admissibility of an eventually periodic one-sided stream.
pub fn is_admissible_stream(parry: &ParrySequence, pre: &[u64], per: &[u64]) -> Result<bool> {
    check_alphabet(pre, parry.max_digit())?;
    check_alphabet(per, parry.max_digit())?;
    let d = parry.quasi_stream();
    let full = Stream { pre, per };
    for i in 0..=pre.len() {
        if !full.suffix(i).strictly_less(&d) {
            return Ok(false);
        }
    }
    if !per.is_empty() {
        // suffixes inside the period are its rotations
        let mut rot: Vec<u64> = per.to_vec();
        for _ in 0..per.len() {
            let s = Stream { pre: &[], per: &rot };
            if !s.strictly_less(&d) {
                return Ok(false);
            }
            rot.rotate_left(1);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// greedy orbits
// ---------------------------------------------------------------------------

enum Orbit {
    Finite(Vec<u64>),
    Periodic { preperiod: Vec<u64>, period: Vec<u64> },
}

/// Orbit state as an integer coordinate vector over a fixed denominator.
/// Multiplication by β and subtraction of integer digits both preserve the
/// denominator, so the whole orbit runs gcd-free over ℤ.
struct OrbitEngine {
    field: Arc<PisotPolynomial>,
    den: BigInt,
    beta_iv: CertifiedInterval,
}

impl OrbitEngine {
    fn new(field: &Arc<PisotPolynomial>, den: BigInt) -> OrbitEngine {
        OrbitEngine { field: field.clone(), den, beta_iv: field.dominant_root(192) }
    }

    /// In-place multiplication by β: coefficient shift plus the reduction
    /// β^m = k₁β^{m-1} + … + k_m. O(m) integer operations.
    fn mul_beta(&self, nums: &mut [BigInt]) {
        let m = nums.len();
        let ks = self.field.recurrence_coeffs();
        let top = core::mem::replace(&mut nums[m - 1], BigInt::zero());
        nums.rotate_right(1);
        if !top.is_zero() {
            for (j, k) in ks.iter().enumerate() {
                if !k.is_zero() {
                    nums[m - 1 - j] += k * &top;
                }
            }
        }
    }

    /// Certified enclosure of (Σ nums_i βⁱ)/den.
    fn enclose(&self, nums: &[BigInt], beta_iv: &CertifiedInterval) -> CertifiedInterval {
        let prec = beta_iv.precision();
        let mut acc = CertifiedInterval::zero(prec);
        for c in nums.iter().rev() {
            acc = acc.mul(beta_iv);
            if !c.is_zero() {
                acc = acc.add_int(c);
            }
        }
        acc.div_int(&self.den)
    }

    /// Exact floor: shared-enclosure fast path, adaptive exact fallback.
    fn floor(&self, nums: &[BigInt]) -> Result<BigInt> {
        if let Some(f) = self.enclose(nums, &self.beta_iv).certified_floor() {
            return Ok(f);
        }
        self.to_algebraic(nums).floor()
    }

    fn to_algebraic(&self, nums: &[BigInt]) -> AlgebraicNumber {
        AlgebraicNumber::new(
            &self.field,
            nums.iter().map(|n| BigRational::new(n.clone(), self.den.clone())).collect(),
        )
    }

    /// Digit step: nums ← β·nums - digit·den; returns the digit.
    fn step(&self, nums: &mut [BigInt]) -> Result<u64> {
        self.mul_beta(nums);
        let digit = self.floor(nums)?;
        let d = digit.to_u64().ok_or(Error::OutOfRange("digit exceeds u64".to_string()))?;
        if d > 0 {
            nums[0] -= &digit * &self.den;
        }
        Ok(d)
    }
}

/// Run the greedy orbit x ↦ βx - ⌊βx⌋ from x ∈ [0, 1] with exact states.
/// The first exact state revisit closes the (minimal) period.
fn greedy_orbit(x: AlgebraicNumber, max_steps: usize) -> Result<Orbit> {
    let field = x.field().clone();
    let (mut nums, den) = x.to_num_den();
    let engine = OrbitEngine::new(&field, den);
    let mut digits: Vec<u64> = Vec::new();
    let mut seen: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
    for step in 0..=max_steps {
        if nums.iter().all(|n| n.is_zero()) {
            return Ok(Orbit::Finite(digits));
        }
        if let Some(&s) = seen.get(&nums) {
            let period = digits.split_off(s);
            return Ok(Orbit::Periodic { preperiod: digits, period });
        }
        seen.insert(nums.clone(), step);
        digits.push(engine.step(&mut nums)?);
    }
    Err(Error::MaxStepsExceeded)
}

// ---------------------------------------------------------------------------
// expansions
// ---------------------------------------------------------------------------

/// A β-expansion split into integer-part digits (most significant first),
/// fractional preperiod, and fractional period (empty = finite expansion).
#[derive(Clone, PartialEq, Eq)]
pub struct BetaExpansion {
    field: Arc<PisotPolynomial>,
    int_digits: Vec<u64>,
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

impl BetaExpansion {
    /// Build and normalize: minimal period, minimal preperiod, no leading
    /// integer zeros, no trailing fractional zeros in a finite expansion.
    pub fn new(
        field: &Arc<PisotPolynomial>,
        int_digits: Vec<u64>,
        preperiod: Vec<u64>,
        period: Vec<u64>,
    ) -> BetaExpansion {
        let mut e = BetaExpansion { field: field.clone(), int_digits, preperiod, period };
        e.normalize();
        e
    }

    pub fn empty(field: &Arc<PisotPolynomial>) -> BetaExpansion {
        BetaExpansion::new(field, Vec::new(), Vec::new(), Vec::new())
    }

    fn normalize(&mut self) {
        while self.int_digits.first() == Some(&0) {
            self.int_digits.remove(0);
        }
        if self.period.iter().all(|&d| d == 0) {
            self.period.clear();
        }
        if !self.period.is_empty() {
            // minimal period: smallest divisor length that tiles
            let p = self.period.len();
            for q in 1..p {
                if p % q == 0 && (0..p).all(|i| self.period[i] == self.period[i % q]) {
                    self.period.truncate(q);
                    break;
                }
            }
            // minimal preperiod: absorb matching tail digits into the rotation
            while let (Some(&last_pre), Some(&last_per)) =
                (self.preperiod.last(), self.period.last())
            {
                if last_pre != last_per {
                    break;
                }
                self.preperiod.pop();
                self.period.rotate_right(1);
            }
        } else {
            while self.preperiod.last() == Some(&0) {
                self.preperiod.pop();
            }
        }
    }

    pub fn field(&self) -> &Arc<PisotPolynomial> {
        &self.field
    }

    pub fn int_digits(&self) -> &[u64] {
        &self.int_digits
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.int_digits.is_empty() && self.preperiod.is_empty() && self.period.is_empty()
    }

    /// Last nonzero fractional position of a finite expansion (0 when there
    /// is no fractional part).
    pub fn last_fractional_position(&self) -> usize {
        debug_assert!(self.is_finite());
        self.preperiod.len()
    }

    /// Digit at position n ∈ ℤ: position 1 is the first fractional digit,
    /// position 0 the units digit, negative positions the higher integer
    /// digits.
    pub fn digit_at(&self, pos: i64) -> u64 {
        if pos <= 0 {
            let k = self.int_digits.len() as i64 + pos - 1;
            if k < 0 || k >= self.int_digits.len() as i64 {
                0
            } else {
                self.int_digits[k as usize]
            }
        } else {
            let i = (pos - 1) as usize;
            if i < self.preperiod.len() {
                self.preperiod[i]
            } else if self.period.is_empty() {
                0
            } else {
                self.period[(i - self.preperiod.len()) % self.period.len()]
            }
        }
    }

    /// The shifted expansion τe (value multiplied by β), produced by moving
    /// digits rather than by value arithmetic.
    pub fn shift_left(&self) -> BetaExpansion {
        let mut int_digits = self.int_digits.clone();
        let mut pre = self.preperiod.clone();
        let mut per = self.period.clone();
        if !pre.is_empty() {
            int_digits.push(pre.remove(0));
        } else if !per.is_empty() {
            int_digits.push(per[0]);
            per.rotate_left(1);
        } else {
            int_digits.push(0);
        }
        BetaExpansion::new(&self.field, int_digits, pre, per)
    }

    /// Admissibility of the full digit stream.
    pub fn is_admissible(&self, parry: &ParrySequence) -> Result<bool> {
        let mut pre: Vec<u64> = self.int_digits.clone();
        pre.extend_from_slice(&self.preperiod);
        is_admissible_stream(parry, &pre, &self.period)
    }
}

impl fmt::Debug for BetaExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BetaExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.int_digits {
            write!(f, "{d} ")?;
        }
        write!(f, ".")?;
        for d in &self.preperiod {
            write!(f, " {d}")?;
        }
        if !self.period.is_empty() {
            write!(f, " (")?;
            for (i, d) in self.period.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{d}")?;
            }
            write!(f, ")*")?;
        }
        Ok(())
    }
}

/// Greedy β-expansion of x ∈ [0, 1).
pub fn greedy_expand(x: &AlgebraicNumber, max_steps: usize) -> Result<BetaExpansion> {
    if x.sign()? < 0 {
        return Err(Error::OutOfRange("greedy_expand needs x ≥ 0".to_string()));
    }
    let one = AlgebraicNumber::one(x.field());
    if x.compare(&one)? != core::cmp::Ordering::Less {
        return Err(Error::OutOfRange("greedy_expand needs x < 1".to_string()));
    }
    let field = x.field().clone();
    match greedy_orbit(x.clone(), max_steps)? {
        Orbit::Finite(digits) => Ok(BetaExpansion::new(&field, Vec::new(), digits, Vec::new())),
        Orbit::Periodic { preperiod, period } => {
            Ok(BetaExpansion::new(&field, Vec::new(), preperiod, period))
        }
    }
}

/// β-expansion of any x ≥ 0: scale below 1 by β^{-N}, expand, and split off
/// the N integer-part digits.
pub fn expand_positive(x: &AlgebraicNumber, max_steps: usize) -> Result<BetaExpansion> {
    let field = x.field().clone();
    let sgn = x.sign()?;
    if sgn < 0 {
        return Err(Error::OutOfRange("expand_positive needs x ≥ 0".to_string()));
    }
    if sgn == 0 {
        return Ok(BetaExpansion::empty(&field));
    }
    // y = x·β^{-N} < 1 with N minimal; β^{-1} keeps coordinates integral
    let mut y = x.clone();
    let one = AlgebraicNumber::one(&field);
    let mut n = 0usize;
    while y.compare(&one)? != core::cmp::Ordering::Less {
        y = y.mul_beta_inv();
        n += 1;
        if n > max_steps {
            return Err(Error::MaxStepsExceeded);
        }
    }
    // the first n digits of y's expansion are the integer part of x
    let (mut ynums, yden) = y.to_num_den();
    let engine = OrbitEngine::new(&field, yden);
    let mut int_digits: Vec<u64> = Vec::with_capacity(n);
    for _ in 0..n {
        int_digits.push(engine.step(&mut ynums)?);
    }
    let frac = greedy_expand(&engine.to_algebraic(&ynums), max_steps)?;
    Ok(BetaExpansion::new(&field, int_digits, frac.preperiod().to_vec(), frac.period().to_vec()))
}

/// Exact value of an expansion: finite part plus the geometric closed form
/// period·β^{-pre}/(1 - β^{-p}).
pub fn evaluate_expansion(e: &BetaExpansion) -> AlgebraicNumber {
    let field = e.field().clone();
    let beta = AlgebraicNumber::beta(&field);
    let beta_inv = beta.inverse().expect("β is a unit");
    let mut v = AlgebraicNumber::zero(&field);
    for &d in e.int_digits() {
        v = v.mul_beta();
        if d > 0 {
            v = v + AlgebraicNumber::from_integer(&field, BigInt::from(d));
        }
    }
    let mut pw = beta_inv.clone();
    for &d in e.preperiod() {
        if d > 0 {
            v = v + pw.scale_int(&BigInt::from(d));
        }
        pw = pw.mul_beta_inv();
    }
    if !e.period().is_empty() {
        let p = e.period().len() as u64;
        let mut pv = AlgebraicNumber::zero(&field);
        let mut q = beta_inv.clone();
        for &d in e.period() {
            if d > 0 {
                pv = pv + q.scale_int(&BigInt::from(d));
            }
            q = q.mul_beta_inv();
        }
        let shift = beta_inv.pow(e.preperiod().len() as u64);
        let denom = AlgebraicNumber::one(&field) - beta_inv.pow(p);
        let tail = pv.checked_mul(&shift).unwrap().checked_mul(&denom.inverse().unwrap()).unwrap();
        v = v + tail;
    }
    v
}

/// Digit-level sum: exact value addition re-expanded greedily.
pub fn add_expansions(a: &BetaExpansion, b: &BetaExpansion, max_steps: usize) -> Result<BetaExpansion> {
    if a.field() != b.field() {
        return Err(Error::MixedFields);
    }
    let v = evaluate_expansion(a) + evaluate_expansion(b);
    expand_positive(&v, max_steps)
}

/// Digit-level difference; defined only when the exact difference is ≥ 0.
pub fn sub_expansions(a: &BetaExpansion, b: &BetaExpansion, max_steps: usize) -> Result<BetaExpansion> {
    if a.field() != b.field() {
        return Err(Error::MixedFields);
    }
    let v = evaluate_expansion(a) - evaluate_expansion(b);
    if v.sign()? < 0 {
        return Err(Error::NegativeDifference);
    }
    expand_positive(&v, max_steps)
}

// ---------------------------------------------------------------------------
// finitary classification
// ---------------------------------------------------------------------------

/// Which structural criterion decided the finitary question.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinitaryCriterion {
    /// k₁ ≥ k₂ ≥ … ≥ k_m ≥ 1.
    DescendingCoefficients,
    /// Quadratic units: finitary iff the constant coefficient k₂ is +1.
    QuadraticConstant,
    /// Cubic units: finitary iff k₃ = 1, k₁ ≥ 0 and -1 ≤ k₂ ≤ k₁ + 1.
    CubicCoefficientRange,
}

impl fmt::Display for FinitaryCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinitaryCriterion::DescendingCoefficients => write!(f, "descending coefficients"),
            FinitaryCriterion::QuadraticConstant => write!(f, "quadratic constant-term sign"),
            FinitaryCriterion::CubicCoefficientRange => write!(f, "cubic coefficient range"),
        }
    }
}

/// An element of ℤ[β] ∩ [0,1) whose expansion is not finite.
#[derive(Debug, Clone)]
pub struct NonFinitaryWitness {
    pub element: AlgebraicNumber,
    pub expansion: BetaExpansion,
}

#[derive(Debug, Clone)]
pub enum FinitaryVerdict {
    ProvenFinitary(FinitaryCriterion),
    ProvenNotFinitary {
        criterion: Option<FinitaryCriterion>,
        witness: Option<NonFinitaryWitness>,
    },
    /// Exhaustive search up to the height bound found only finite expansions.
    NoCounterexampleUpTo(u64),
}

#[derive(Debug, Clone)]
pub struct FinitaryReport {
    pub verdict: FinitaryVerdict,
}

impl FinitaryReport {
    pub fn is_proven_finitary(&self) -> bool {
        matches!(self.verdict, FinitaryVerdict::ProvenFinitary(_))
    }
}

/// Classify the finitary property: structural criteria for the descending
/// family and for degrees 2 and 3, otherwise an exhaustive height-bounded
/// search. A periodic expansion of an element of ℤ[β] ∩ [0,1) is an exact
/// disproof, so criterion-based negatives also attach a searched witness.
pub fn finitary_classify(
    field: &Arc<PisotPolynomial>,
    height_bound: u64,
    step_cap: usize,
) -> Result<FinitaryReport> {
    let ks = field.recurrence_coeffs();
    let m = field.degree();
    let one = BigInt::one();

    let descending = ks.windows(2).all(|w| w[0] >= w[1]) && ks[m - 1] >= one;
    if descending {
        return Ok(FinitaryReport {
            verdict: FinitaryVerdict::ProvenFinitary(FinitaryCriterion::DescendingCoefficients),
        });
    }
    if m == 2 {
        if ks[1] == one {
            return Ok(FinitaryReport {
                verdict: FinitaryVerdict::ProvenFinitary(FinitaryCriterion::QuadraticConstant),
            });
        }
        let witness = search_witness(field, height_bound, step_cap)?;
        return Ok(FinitaryReport {
            verdict: FinitaryVerdict::ProvenNotFinitary {
                criterion: Some(FinitaryCriterion::QuadraticConstant),
                witness,
            },
        });
    }
    if m == 3 {
        let (k1, k2, k3) = (&ks[0], &ks[1], &ks[2]);
        let ok = k3 == &one && !k1.is_negative() && *k2 >= -&one && *k2 <= k1 + &one;
        if ok {
            return Ok(FinitaryReport {
                verdict: FinitaryVerdict::ProvenFinitary(FinitaryCriterion::CubicCoefficientRange),
            });
        }
        let witness = search_witness(field, height_bound, step_cap)?;
        return Ok(FinitaryReport {
            verdict: FinitaryVerdict::ProvenNotFinitary {
                criterion: Some(FinitaryCriterion::CubicCoefficientRange),
                witness,
            },
        });
    }

    match search_witness(field, height_bound, step_cap)? {
        Some(w) => Ok(FinitaryReport {
            verdict: FinitaryVerdict::ProvenNotFinitary { criterion: None, witness: Some(w) },
        }),
        None => Ok(FinitaryReport { verdict: FinitaryVerdict::NoCounterexampleUpTo(height_bound) }),
    }
}

/// Enumerate ℤ[β] ∩ [0,1) with all |coefficients| ≤ height, in lexicographic
/// coefficient order.
pub fn zbeta_unit_interval(field: &Arc<PisotPolynomial>, height: u64) -> Vec<AlgebraicNumber> {
    let m = field.degree();
    let h = height as i64;
    let mut out = Vec::new();
    let mut c = vec![-h; m];
    let one = AlgebraicNumber::one(field);
    loop {
        let el = AlgebraicNumber::new(
            field,
            c.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect(),
        );
        if el.sign().expect("sign decidable") >= 0
            && el.compare(&one).expect("compare decidable") == core::cmp::Ordering::Less
        {
            out.push(el);
        }
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            c[i] += 1;
            if c[i] <= h {
                break;
            }
            c[i] = -h;
        }
    }
}

fn search_witness(
    field: &Arc<PisotPolynomial>,
    height_bound: u64,
    step_cap: usize,
) -> Result<Option<NonFinitaryWitness>> {
    for el in zbeta_unit_interval(field, height_bound) {
        if el.is_zero() {
            continue;
        }
        let exp = greedy_expand(&el, step_cap).map_err(|e| match e {
            Error::MaxStepsExceeded => Error::StepCapExceeded,
            other => other,
        })?;
        if !exp.is_finite() {
            return Ok(Some(NonFinitaryWitness { element: el, expansion: exp }));
        }
    }
    Ok(None)
}

/// Empirical carry bound: expand height-bounded elements of Fin(β), add
/// pairs (capped), and record the largest overshoot of the sum's last digit
/// position beyond the operands'.
pub fn measure_carry_bound(
    field: &Arc<PisotPolynomial>,
    pair_cap: usize,
    height: u64,
    step_cap: usize,
) -> Result<u64> {
    let elements = zbeta_unit_interval(field, height);
    let mut finite: Vec<(AlgebraicNumber, usize)> = Vec::new();
    for el in elements {
        let exp = greedy_expand(&el, step_cap)?;
        if exp.is_finite() {
            let k = exp.last_fractional_position();
            finite.push((el, k));
        }
    }
    let mut best = 0u64;
    let mut done = 0usize;
    'outer: for i in 0..finite.len() {
        for j in i..finite.len() {
            if done >= pair_cap {
                break 'outer;
            }
            done += 1;
            let (a, ka) = &finite[i];
            let (b, kb) = &finite[j];
            let sum = a.checked_add(b)?;
            let exp = expand_positive(&sum, step_cap)?;
            if !exp.is_finite() {
                return Err(Error::InternalInconsistency(
                    "sum of finite expansions came out infinite for a finitary β".to_string(),
                ));
            }
            let k = (*ka).max(*kb);
            let overshoot = exp.last_fractional_position().saturating_sub(k) as u64;
            best = best.max(overshoot);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn field(text: &str) -> Arc<PisotPolynomial> {
        Arc::new(PisotPolynomial::parse(text).unwrap())
    }

    fn beta_inv_pow(f: &Arc<PisotPolynomial>, k: u64) -> AlgebraicNumber {
        AlgebraicNumber::beta(f).inverse().unwrap().pow(k)
    }

    #[test]
    fn parry_sequences_match_oracle() {
        let g = field("x^2-x-1");
        let p = parry_sequence(&g, 100).unwrap();
        assert!(p.finite);
        assert_eq!(p.greedy_preperiod, vec![1, 1]);
        assert_eq!(p.quasi_preperiod, Vec::<u64>::new());
        assert_eq!(p.quasi_period, vec![1, 0]);

        let t = field("x^3-x^2-x-1");
        let p = parry_sequence(&t, 100).unwrap();
        assert_eq!(p.greedy_preperiod, vec![1, 1, 1]);
        assert_eq!(p.quasi_period, vec![1, 1, 0]);

        let s = field("x^3-x-1");
        let p = parry_sequence(&s, 100).unwrap();
        assert!(p.finite);
        assert_eq!(p.greedy_preperiod, vec![1, 0, 0, 0, 1]);
        assert_eq!(p.quasi_period, vec![1, 0, 0, 0, 0]);

        let f4 = field("x^4-x^3-1");
        let p = parry_sequence(&f4, 100).unwrap();
        assert_eq!(p.greedy_preperiod, vec![1, 0, 0, 1]);
        assert_eq!(p.quasi_period, vec![1, 0, 0, 0]);

        // β² = 3β - 1: d' = 2, 1, 1, 1, ... (eventually periodic)
        let q = field("x^2-3x+1");
        let p = parry_sequence(&q, 100).unwrap();
        assert!(!p.finite);
        assert_eq!(p.quasi_preperiod, vec![2]);
        assert_eq!(p.quasi_period, vec![1]);

        // β² = 2β + 1: d' = (2, 1) finite, d = (2 0)*
        let q2 = field("x^2-2x-1");
        let p = parry_sequence(&q2, 100).unwrap();
        assert!(p.finite);
        assert_eq!(p.greedy_preperiod, vec![2, 1]);
        assert_eq!(p.quasi_period, vec![2, 0]);
    }

    #[test]
    fn admissibility_golden() {
        let g = field("x^2-x-1");
        let p = parry_sequence(&g, 100).unwrap();
        assert!(!is_admissible_word(&p, &[1, 1]).unwrap());
        assert!(is_admissible_word(&p, &[1, 0, 1, 0]).unwrap());
        assert!(is_admissible_word(&p, &[0, 0, 0]).unwrap());
        // the bi-infinite periodic 1010... is excluded
        assert!(!is_admissible_periodic(&p, &[1, 0]).unwrap());
        assert!(is_admissible_periodic(&p, &[1, 0, 0, 0]).unwrap());
        assert_eq!(is_admissible_word(&p, &[2]).unwrap_err(), Error::DigitOutOfRange(2));
    }

    #[test]
    fn greedy_expansions() {
        let g = field("x^2-x-1");
        // x = β^{-1}: single digit, finite
        let x = beta_inv_pow(&g, 1);
        let e = greedy_expand(&x, 1000).unwrap();
        assert_eq!(e.preperiod(), &[1]);
        assert!(e.is_finite());

        // β² = 3β - 1, x = β - 2: purely periodic (1)
        let q = field("x^2-3x+1");
        let x = AlgebraicNumber::beta(&q) - AlgebraicNumber::from_integer(&q, BigInt::from(2));
        let e = greedy_expand(&x, 1000).unwrap();
        assert_eq!(e.preperiod(), &[] as &[u64]);
        assert_eq!(e.period(), &[1]);

        // golden 1/2 is purely periodic (0 1 0) per the oracle
        let half = AlgebraicNumber::from_rational(&g, BigRational::new(BigInt::one(), BigInt::from(2)));
        let e = greedy_expand(&half, 1000).unwrap();
        assert_eq!(e.preperiod(), &[] as &[u64]);
        assert_eq!(e.period(), &[0, 1, 0]);

        // out-of-range arguments refused
        let minus = AlgebraicNumber::from_integer(&g, BigInt::from(-1));
        assert!(matches!(greedy_expand(&minus, 10).unwrap_err(), Error::OutOfRange(_)));
        let one = AlgebraicNumber::one(&g);
        assert!(matches!(greedy_expand(&one, 10).unwrap_err(), Error::OutOfRange(_)));
    }

    #[test]
    fn expand_positive_examples() {
        let g = field("x^2-x-1");
        // 2 = β + β^{-2}: digits "10.01"
        let two = AlgebraicNumber::from_integer(&g, BigInt::from(2));
        let e = expand_positive(&two, 1000).unwrap();
        assert_eq!(e.int_digits(), &[1, 0]);
        assert_eq!(e.preperiod(), &[0, 1]);
        assert!(e.is_finite());

        let zero = AlgebraicNumber::zero(&g);
        assert!(expand_positive(&zero, 1000).unwrap().is_empty());

        // x⁴ = x³ + 1: β^{-2} + β^{-3} = β^{-1} + β^{-6} + β^{-11} + ...
        let f4 = field("x^4-x^3-1");
        let x = beta_inv_pow(&f4, 2) + beta_inv_pow(&f4, 3);
        let e = expand_positive(&x, 1000).unwrap();
        assert_eq!(e.int_digits(), &[] as &[u64]);
        assert_eq!(e.preperiod(), &[] as &[u64]);
        assert_eq!(e.period(), &[1, 0, 0, 0, 0]);
    }

    #[test]
    fn evaluate_round_trip() {
        let g = field("x^2-x-1");
        let two = AlgebraicNumber::from_integer(&g, BigInt::from(2));
        let e = expand_positive(&two, 1000).unwrap();
        assert_eq!(evaluate_expansion(&e), two);

        // period (1 0) from position 1 evaluates to exactly 1
        let e = BetaExpansion::new(&g, vec![], vec![], vec![1, 0]);
        assert!(evaluate_expansion(&e).is_one());

        // tribonacci period (1 0 0): value β^{-1}/(1 - β^{-3})
        let t = field("x^3-x^2-x-1");
        let e = BetaExpansion::new(&t, vec![], vec![], vec![1, 0, 0]);
        let v = evaluate_expansion(&e);
        let bi = AlgebraicNumber::beta(&t).inverse().unwrap();
        let expect = bi
            .checked_mul(&(AlgebraicNumber::one(&t) - bi.pow(3)).inverse().unwrap())
            .unwrap();
        assert_eq!(v, expect);
    }

    #[test]
    fn expansion_addition() {
        let g = field("x^2-x-1");
        let two = AlgebraicNumber::from_integer(&g, BigInt::from(2));
        let e = expand_positive(&two, 1000).unwrap();
        let four = add_expansions(&e, &e, 1000).unwrap();
        assert_eq!(evaluate_expansion(&four), AlgebraicNumber::from_integer(&g, BigInt::from(4)));
        // identity
        let zero = BetaExpansion::empty(&g);
        assert_eq!(add_expansions(&e, &zero, 1000).unwrap(), e);
        // negative difference refused
        assert_eq!(sub_expansions(&zero, &e, 1000).unwrap_err(), Error::NegativeDifference);
    }

    #[test]
    fn shift_matches_value() {
        let g = field("x^2-x-1");
        let half = AlgebraicNumber::from_rational(&g, BigRational::new(BigInt::one(), BigInt::from(2)));
        let e = greedy_expand(&half, 1000).unwrap();
        let shifted = e.shift_left();
        let expect = evaluate_expansion(&e).checked_mul(&AlgebraicNumber::beta(&g)).unwrap();
        assert_eq!(evaluate_expansion(&shifted), expect);
    }

    #[test]
    fn finitary_verdicts() {
        let t = field("x^3-x^2-x-1");
        assert!(finitary_classify(&t, 4, 100_000).unwrap().is_proven_finitary());
        let s = field("x^3-x-1");
        assert!(finitary_classify(&s, 4, 100_000).unwrap().is_proven_finitary());

        let nf = field("x^3-3x^2+2x-1");
        let rep = finitary_classify(&nf, 3, 100_000).unwrap();
        match rep.verdict {
            FinitaryVerdict::ProvenNotFinitary { criterion, witness } => {
                assert_eq!(criterion, Some(FinitaryCriterion::CubicCoefficientRange));
                let w = witness.expect("witness at height 3");
                // oracle: β - 2 expands as 0 (1)*
                assert_eq!(w.expansion.preperiod(), &[0]);
                assert_eq!(w.expansion.period(), &[1]);
            }
            other => panic!("expected not-finitary, got {other:?}"),
        }

        // β² = 3β - 1 with witness β - 2, period (1)
        let q = field("x^2-3x+1");
        let rep = finitary_classify(&q, 3, 100_000).unwrap();
        match rep.verdict {
            FinitaryVerdict::ProvenNotFinitary { criterion, witness } => {
                assert_eq!(criterion, Some(FinitaryCriterion::QuadraticConstant));
                assert!(witness.is_some());
            }
            other => panic!("expected not-finitary, got {other:?}"),
        }
    }

    #[test]
    fn carry_bound_small() {
        let g = field("x^2-x-1");
        let l = measure_carry_bound(&g, 200, 2, 100_000).unwrap();
        // oracle: β^{-1} + β^{-1} = 1.001, overshoot 2 from Fin_1
        assert!(l >= 2);
        let _ = BigInt::zero();
    }
}
