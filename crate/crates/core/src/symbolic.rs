//! The symbolic representation of 𝒫_β/ℤ[β] inside the two-sided β-compactum.
//!
//! A purely periodic two-sided sequence is stored as its aligned minimal
//! period: the word sitting at positions 1..p, so two rotations are two
//! distinct sequences. The expansion of ξ with preperiod length a and period
//! w induces the sequence η_j = w[(j-1-a) mod p]; classes collect these
//! sequences over the nonnegative ℤ[β]-translates of a coset representative,
//! while class membership itself is decided by exact coset arithmetic.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algnum::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::lattice::{self, CosetIndexer};
use crate::numeration::{
    self, expand_positive, greedy_expand, BetaExpansion, FinitaryVerdict,
};
use crate::poly::PisotPolynomial;

// ---------------------------------------------------------------------------
// periodic words
// ---------------------------------------------------------------------------

/// A purely periodic two-sided sequence, stored as the aligned word at
/// positions 1..p (minimal period). The empty word is the zero sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PeriodicWord {
    word: Vec<u64>,
}

impl PeriodicWord {
    /// Normalize to the minimal period (alignment preserved).
    pub fn new(word: Vec<u64>) -> PeriodicWord {
        let mut w = PeriodicWord { word };
        w.normalize();
        w
    }

    pub fn zero() -> PeriodicWord {
        PeriodicWord { word: Vec::new() }
    }

    fn normalize(&mut self) {
        if self.word.iter().all(|&d| d == 0) {
            self.word.clear();
            return;
        }
        let p = self.word.len();
        for q in 1..p {
            if p % q == 0 && (0..p).all(|i| self.word[i] == self.word[i % q]) {
                self.word.truncate(q);
                return;
            }
        }
    }

    /// Aligned tail of an expansion: the periodic two-sided sequence its
    /// eventual period extends to (zero word for finite expansions).
    pub fn from_expansion(e: &BetaExpansion) -> PeriodicWord {
        let per = e.period();
        if per.is_empty() {
            return PeriodicWord::zero();
        }
        let p = per.len() as i64;
        let a = e.preperiod().len() as i64;
        let word = (1..=p).map(|i| per[(i - 1 - a).rem_euclid(p) as usize]).collect();
        PeriodicWord::new(word)
    }

    pub fn digits(&self) -> &[u64] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_zero(&self) -> bool {
        self.word.is_empty()
    }

    /// The sequence shifted left by k (the word whose position-1 digit is
    /// this word's position-(1+k) digit).
    pub fn rotate_left(&self, k: usize) -> PeriodicWord {
        if self.word.is_empty() {
            return self.clone();
        }
        let p = self.word.len();
        let word = (0..p).map(|i| self.word[(i + k) % p]).collect();
        PeriodicWord { word }
    }

    /// All p distinct rotations (just the zero word for the zero sequence).
    pub fn rotations(&self) -> Vec<PeriodicWord> {
        if self.word.is_empty() {
            return vec![PeriodicWord::zero()];
        }
        (0..self.word.len()).map(|k| self.rotate_left(k)).collect()
    }

    /// Lexicographically least rotation and the left-shift offset that maps
    /// it back to this word: `self = canonical.rotate_left(offset)`.
    pub fn canonical_rotation(&self) -> (PeriodicWord, usize) {
        if self.word.is_empty() {
            return (PeriodicWord::zero(), 0);
        }
        let mut best = self.clone();
        let mut best_k = 0usize;
        for k in 1..self.word.len() {
            let r = self.rotate_left(k);
            if r.word < best.word {
                best = r;
                best_k = k;
            }
        }
        let p = self.word.len();
        (best, (p - best_k) % p)
    }

    /// Exact value of the one-sided reading 0.(w)^∞ = Σ w_i β^{-i}/(1-β^{-p});
    /// every left truncation of the two-sided sequence differs from this by
    /// an element of ℤ[β], so its coset is the sequence's coset.
    pub fn value(&self, field: &Arc<PisotPolynomial>) -> AlgebraicNumber {
        if self.word.is_empty() {
            return AlgebraicNumber::zero(field);
        }
        let e = BetaExpansion::new(field, Vec::new(), Vec::new(), self.word.clone());
        numeration::evaluate_expansion(&e)
    }

    /// Concatenate n copies (for period-convention comparisons).
    pub fn unroll(&self, n: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.word.len() * n);
        for _ in 0..n {
            out.extend_from_slice(&self.word);
        }
        out
    }
}

impl fmt::Debug for PeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "0");
        }
        if self.word.iter().all(|&d| d < 10) {
            for d in &self.word {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            write!(f, "{:?}", self.word)
        }
    }
}

/// Periodic tail of the coset of ξ ∈ 𝒫_β: reduce into [0,1), expand, return
/// the aligned minimal period (zero word for a finite expansion).
pub fn tail_of_coset(xi: &AlgebraicNumber, step_cap: usize) -> Result<PeriodicWord> {
    if !lattice::is_in_pbeta(xi) {
        return Err(Error::NotInPisotGroup);
    }
    let x = xi.fract()?;
    let e = greedy_expand(&x, step_cap)?;
    Ok(PeriodicWord::from_expansion(&e))
}

// ---------------------------------------------------------------------------
// the symbolic group
// ---------------------------------------------------------------------------

/// One coset of ℤ[β] in 𝒫_β with its symbolic data.
#[derive(Debug, Clone)]
pub struct GroupClass {
    /// SNF coordinate tuple (the abstract group element).
    pub coords: Vec<BigInt>,
    /// Canonical representative in 𝒫_β ∩ [0,1).
    pub representative: AlgebraicNumber,
    /// Aligned tail of the canonical representative.
    pub canonical_tail: PeriodicWord,
    /// Tails collected over nonnegative translates rep + l with coefficient
    /// height up to the extension height.
    pub tail_set: BTreeSet<PeriodicWord>,
    /// Order of the element in the group.
    pub order: BigInt,
}

/// The full group 𝒫_β/ℤ[β] with tails, supporting class arithmetic and the
/// shift action.
#[derive(Debug, Clone)]
pub struct SymbolicGroup {
    field: Arc<PisotPolynomial>,
    indexer: CosetIndexer,
    classes: Vec<GroupClass>,
    step_cap: usize,
}

impl SymbolicGroup {
    /// Enumerate all |D| classes. Refuses when β is not proven finitary
    /// (eventual periodicity of every 𝒫_β-expansion and bounded carries are
    /// only guaranteed there).
    pub fn enumerate(
        field: &Arc<PisotPolynomial>,
        extension_height: u64,
        step_cap: usize,
    ) -> Result<SymbolicGroup> {
        let fin = numeration::finitary_classify(field, 2, step_cap)?;
        match fin.verdict {
            FinitaryVerdict::ProvenFinitary(_) => {}
            FinitaryVerdict::ProvenNotFinitary { .. } => {
                return Err(Error::NotFinitary(
                    "a non-finite expansion exists in ℤ[β] ∩ [0,1)".to_string(),
                ))
            }
            FinitaryVerdict::NoCounterexampleUpTo(h) => {
                return Err(Error::NotFinitary(format_not_proven(h)))
            }
        }
        let indexer = CosetIndexer::new(field);
        let translates = translate_lattice(field, extension_height);
        let mut classes = Vec::new();
        let mut coords = vec![BigInt::zero(); indexer.invariant_factors().len()];
        loop {
            let rep = indexer.representative(&coords);
            let e = greedy_expand(&rep, step_cap)?;
            let canonical_tail = PeriodicWord::from_expansion(&e);
            let mut tail_set = BTreeSet::new();
            tail_set.insert(canonical_tail.clone());
            for l in &translates {
                let xi = rep.checked_add(l)?;
                if xi.sign()? < 0 {
                    continue;
                }
                let exp = expand_positive(&xi, step_cap)?;
                tail_set.insert(PeriodicWord::from_expansion(&exp));
            }
            let order = indexer.element_order(&coords);
            classes.push(GroupClass {
                coords: coords.clone(),
                representative: rep,
                canonical_tail,
                tail_set,
                order,
            });
            if !increment_mixed_radix(&mut coords, indexer.invariant_factors()) {
                break;
            }
        }
        Ok(SymbolicGroup { field: field.clone(), indexer, classes, step_cap })
    }

    pub fn field(&self) -> &Arc<PisotPolynomial> {
        &self.field
    }

    pub fn classes(&self) -> &[GroupClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn indexer(&self) -> &CosetIndexer {
        &self.indexer
    }

    pub fn zero_class(&self) -> &GroupClass {
        &self.classes[0]
    }

    /// Class of an arbitrary element of 𝒫_β.
    pub fn class_of(&self, xi: &AlgebraicNumber) -> Result<&GroupClass> {
        let idx = self.indexer.index_of(xi)?;
        Ok(&self.classes[idx])
    }

    /// Class lookup by exhaustive coset comparison — an independent route
    /// kept deliberately separate from the SNF-coordinate lookup.
    pub fn class_of_by_scan(&self, xi: &AlgebraicNumber) -> Result<&GroupClass> {
        for c in &self.classes {
            if lattice::coset_equal(xi, &c.representative)? {
                return Ok(c);
            }
        }
        Err(Error::InternalInconsistency(
            "element of 𝒫_β matches no enumerated coset".to_string(),
        ))
    }

    /// Sum class via exact value arithmetic on representatives.
    pub fn class_add(&self, a: &GroupClass, b: &GroupClass) -> Result<&GroupClass> {
        let s = a.representative.checked_add(&b.representative)?;
        self.class_of(&s)
    }

    pub fn class_neg(&self, a: &GroupClass) -> Result<&GroupClass> {
        let n = AlgebraicNumber::zero(&self.field).checked_sub(&a.representative)?;
        self.class_of(&n)
    }

    /// Class of β·rep: the shift action on the symbolic side.
    pub fn class_shift(&self, a: &GroupClass) -> Result<&GroupClass> {
        let beta = AlgebraicNumber::beta(&self.field);
        let s = a.representative.checked_mul(&beta)?;
        self.class_of(&s)
    }

    /// The class whose tail set contains the given two-sided sequence.
    pub fn class_with_tail(&self, w: &PeriodicWord) -> Result<&GroupClass> {
        let v = w.value(&self.field);
        self.class_of(&v)
    }

    /// Symbolic-route addition used to cross-check [`Self::class_add`]:
    /// truncate both two-sided tails at position -n, add the resulting
    /// left-finite values digitwise, and take the tail class of the sum.
    pub fn symbolic_add_check(
        &self,
        a: &PeriodicWord,
        b: &PeriodicWord,
        n: usize,
    ) -> Result<&GroupClass> {
        let va = truncated_value(&self.field, a, n);
        let vb = truncated_value(&self.field, b, n);
        let ea = expand_positive(&va, self.step_cap)?;
        let eb = expand_positive(&vb, self.step_cap)?;
        let sum = numeration::add_expansions(&ea, &eb, self.step_cap)?;
        let tail = PeriodicWord::from_expansion(&sum);
        self.class_with_tail(&tail)
    }
}

fn format_not_proven(h: u64) -> String {
    use alloc::format;
    format!("no structural criterion applies; no counterexample up to height {h}")
}

/// Value of the two-sided periodic sequence truncated at position -n:
/// Σ_{j ≥ -n} η_j β^{-j}, exact.
pub fn truncated_value(field: &Arc<PisotPolynomial>, w: &PeriodicWord, n: usize) -> AlgebraicNumber {
    if w.is_zero() {
        return AlgebraicNumber::zero(field);
    }
    let mut v = w.value(field);
    let p = w.len() as i64;
    // positions j = 0, -1, ..., -n carry digit η_j = w[(j-1) mod p]
    let mut pw = AlgebraicNumber::one(field);
    for j in 0..=(n as i64) {
        let d = w.digits()[((-j - 1).rem_euclid(p)) as usize];
        if d > 0 {
            v = v + pw.scale_int(&BigInt::from(d));
        }
        if j < n as i64 {
            pw = pw.mul_beta();
        }
    }
    v
}

fn increment_mixed_radix(coords: &mut [BigInt], radices: &[BigInt]) -> bool {
    let mut i = coords.len();
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        coords[i] += 1;
        if coords[i] < radices[i] {
            return true;
        }
        coords[i] = BigInt::zero();
    }
}

/// All ℤ[β] elements with |coefficients| ≤ height, lexicographic order.
fn translate_lattice(field: &Arc<PisotPolynomial>, height: u64) -> Vec<AlgebraicNumber> {
    let m = field.degree();
    let h = height as i64;
    let mut out = Vec::new();
    let mut c = vec![-h; m];
    loop {
        out.push(AlgebraicNumber::new(
            field,
            c.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect(),
        ));
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

// ---------------------------------------------------------------------------
// recurrent integer sequences
// ---------------------------------------------------------------------------

/// Nearest-integer sequence T_n ≈ ξβⁿ with its recurrence onset.
#[derive(Debug, Clone)]
pub struct RecurrentSequence {
    /// T_1, …, T_{n_max}.
    pub terms: Vec<BigInt>,
    /// Least j ≥ 1 such that T_{n+m} = k₁T_{n+m-1} + … + k_mT_n for all
    /// n ≥ j within the computed range.
    pub onset: usize,
}

/// Generate T_n = nearest integer to ξβⁿ, n = 1..=n_max, for ξ ∈ 𝒫_β.
/// Half-integer ties are an error, never a guess.
pub fn recurrent_sequence(xi: &AlgebraicNumber, n_max: usize) -> Result<RecurrentSequence> {
    if !lattice::is_in_pbeta(xi) {
        return Err(Error::NotInPisotGroup);
    }
    let field = xi.field().clone();
    let mut terms = Vec::with_capacity(n_max);
    let mut cur = xi.clone();
    for _ in 0..n_max {
        cur = cur.mul_beta();
        terms.push(cur.nearest_integer()?);
    }
    let onset = recurrence_onset(&terms, &field).ok_or(Error::NotRecurrent)?;
    Ok(RecurrentSequence { terms, onset })
}

/// Least 1-based onset index j such that the characteristic recurrence holds
/// for every window starting at or after j; None when even the final window
/// fails.
pub fn recurrence_onset(terms: &[BigInt], field: &PisotPolynomial) -> Option<usize> {
    let m = field.degree();
    let ks = field.recurrence_coeffs();
    if terms.len() < m + 1 {
        return None;
    }
    let holds = |n: usize| -> bool {
        // 1-based: T_{n+m} = Σ k_i T_{n+m-i}; terms[t] = T_{t+1}
        let lhs = &terms[n + m - 1];
        let mut rhs = BigInt::zero();
        for (i, k) in ks.iter().enumerate() {
            rhs += k * &terms[n + m - 2 - i];
        }
        *lhs == rhs
    };
    let last_start = terms.len() - m;
    let mut onset = None;
    for n in (1..=last_start).rev() {
        if holds(n) {
            onset = Some(n);
        } else {
            break;
        }
    }
    onset
}

/// Exact recovery of ξ from a recurrent integer sequence: with the
/// recurrence holding from onset j, the generating function gives
/// ξ = ξ₀·β^{-j}·Σ_{t=0}^{m-1} p_t β^{m-1-t} with
/// p_t = T_{j+t} - Σ_{s=1}^{t} k_s T_{j+t-s}, all integers, so ξ ∈ 𝒫_β by
/// construction. Verified by regenerating the nearest-integer sequence.
pub fn recognize_xi(terms: &[BigInt], field: &Arc<PisotPolynomial>) -> Result<AlgebraicNumber> {
    let m = field.degree();
    if terms.iter().all(|t| t.is_zero()) {
        return Ok(AlgebraicNumber::zero(field));
    }
    let onset = recurrence_onset(terms, field).ok_or(Error::NotRecurrent)?;
    if terms.len() < onset + m - 1 {
        return Err(Error::NotRecurrent);
    }
    let ks = field.recurrence_coeffs();
    let mut acc = AlgebraicNumber::zero(field);
    for t in 0..m {
        // p_t = T_{j+t} - Σ_{s=1}^{t} k_s T_{j+t-s}; terms[i] = T_{i+1}
        let mut p = terms[onset + t - 1].clone();
        for s in 1..=t {
            p -= &ks[s - 1] * &terms[onset + t - s - 1];
        }
        if !p.is_zero() {
            acc = acc + AlgebraicNumber::beta_pow(field, (m - 1 - t) as i64).scale_int(&p);
        }
    }
    let xi = lattice::xi0(field)
        .checked_mul(&AlgebraicNumber::beta_pow(field, -(onset as i64)))?
        .checked_mul(&acc)?;

    // round trip: the regenerated nearest-integer sequence must agree with
    // the input on a tail of at least m terms
    let regen = recurrent_sequence(&xi, terms.len())?;
    let mut agree_from = terms.len();
    while agree_from > 0 && regen.terms[agree_from - 1] == terms[agree_from - 1] {
        agree_from -= 1;
    }
    if terms.len() - agree_from >= m {
        Ok(xi)
    } else {
        Err(Error::ReconstructionFailed)
    }
}

// ---------------------------------------------------------------------------
// partial limits of expansions of T_n
// ---------------------------------------------------------------------------

/// Distinct pointwise limits of the expansions of T_n along residue classes,
/// with inadmissible boundary limits reported separately.
#[derive(Debug, Clone)]
pub struct PartialLimitReport {
    pub tails: BTreeSet<PeriodicWord>,
    /// Pointwise limits that fall out of the compactum; they arise when a
    /// subsequence of expansions converges to the admissibility boundary
    /// (the quasi-greedy expansion of 1).
    pub boundary_escapes: Vec<PeriodicWord>,
    /// Residue period actually used for stabilization.
    pub period_used: usize,
}

/// Expand each T_n, verify the digit windows stabilize along residue classes
/// mod (a small multiple of) the tail period of the generating ξ, and return
/// the distinct limit tails.
pub fn partial_limit_tails(
    terms: &[BigInt],
    field: &Arc<PisotPolynomial>,
    step_cap: usize,
) -> Result<PartialLimitReport> {
    if terms.is_empty() || terms.last().map(|t| t.is_negative()).unwrap_or(true) {
        return Err(Error::NotEventuallyRecurrent);
    }
    let onset = recurrence_onset(terms, field).ok_or(Error::NotEventuallyRecurrent)?;
    let xi = recognize_xi(terms, field)?;
    if xi.is_zero() {
        let mut tails = BTreeSet::new();
        tails.insert(PeriodicWord::zero());
        return Ok(PartialLimitReport { tails, boundary_escapes: Vec::new(), period_used: 1 });
    }
    let base_tail = tail_of_coset(&xi, step_cap)?;
    let p0 = base_tail.len().max(1);

    let m = field.degree();
    let margin = onset + 2 * m + 2;
    let parry = numeration::parry_sequence(field, numeration::DEFAULT_PARRY_LEN)?;

    let mut expansions: BTreeMap<usize, BetaExpansion> = BTreeMap::new();
    let mut expansion_at = |n: usize| -> Result<BetaExpansion> {
        if let Some(e) = expansions.get(&n) {
            return Ok(e.clone());
        }
        let t = &terms[n - 1];
        if t.is_negative() {
            return Err(Error::NotEventuallyRecurrent);
        }
        let v = AlgebraicNumber::from_integer(field, t.clone());
        let e = expand_positive(&v, step_cap)?;
        expansions.insert(n, e.clone());
        Ok(e)
    };

    for mult in [1usize, 2, 3, 4, 6, 8] {
        let p = p0 * mult;
        if terms.len() < margin + 2 * p {
            break;
        }
        let mut tails = BTreeSet::new();
        let mut escapes = Vec::new();
        let mut stable = true;
        for r in 0..p {
            // the two largest indices ≡ r (mod p) above the margin
            let mut n2 = terms.len();
            while n2 > 0 && (n2 % p) != (r % p) {
                n2 -= 1;
            }
            let n1 = n2.saturating_sub(p);
            if n1 < margin {
                stable = false;
                break;
            }
            let e1 = expansion_at(n1)?;
            let e2 = expansion_at(n2)?;
            let w = (n1 as i64) / 2;
            if w < p as i64 {
                stable = false;
                break;
            }
            let agree = (-w..=w).all(|j| e1.digit_at(j) == e2.digit_at(j));
            let periodic =
                (-w..=(w - p as i64)).all(|j| e2.digit_at(j) == e2.digit_at(j + p as i64));
            if !(agree && periodic) {
                stable = false;
                break;
            }
            let word: Vec<u64> = (1..=p as i64).map(|i| e2.digit_at(i)).collect();
            let limit = PeriodicWord::new(word);
            if limit.is_zero() || numeration::is_admissible_periodic(&parry, limit.digits())? {
                tails.insert(limit);
            } else {
                escapes.push(limit);
            }
        }
        if stable {
            escapes.sort();
            escapes.dedup();
            return Ok(PartialLimitReport { tails, boundary_escapes: escapes, period_used: p });
        }
    }
    Err(Error::UnstableDigitLimits)
}
