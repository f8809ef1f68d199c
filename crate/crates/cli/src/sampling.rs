//! Deterministic random sampling of admissible digit sequences.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pisot_core::numeration::{self, BetaExpansion, ParrySequence};
use pisot_core::{PeriodicWord, PisotPolynomial, Result};

/// Random admissible finite-to-left expansions with `int_len` integer digits
/// and `frac_len` fractional digits, generated through the follower states of
/// the quasi-greedy comparator and re-checked against the full admissibility
/// predicate.
pub fn random_expansions(
    field: &Arc<PisotPolynomial>,
    parry: &ParrySequence,
    count: usize,
    int_len: usize,
    frac_len: usize,
    seed: u64,
) -> Result<Vec<BetaExpansion>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let word = random_word(parry, &mut rng, int_len + frac_len);
        if !numeration::is_admissible_word(parry, &word)? {
            continue;
        }
        let (int, frac) = word.split_at(int_len);
        let e = BetaExpansion::new(field, int.to_vec(), frac.to_vec(), Vec::new());
        out.push(e);
    }
    Ok(out)
}

/// Random admissible purely periodic words of the given period length
/// (skipping the zero word), used as probes against the kernel.
pub fn random_periodic_words(
    parry: &ParrySequence,
    count: usize,
    period: usize,
    seed: u64,
) -> Result<Vec<PeriodicWord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0usize;
    while out.len() < count && tries < count * 400 {
        tries += 1;
        let word = random_word(parry, &mut rng, period);
        if word.iter().all(|&d| d == 0) {
            continue;
        }
        if numeration::is_admissible_periodic(parry, &word)? {
            out.push(PeriodicWord::new(word));
        }
    }
    Ok(out)
}

/// Digit-by-digit generation along the follower state of d: at match length
/// s the next digit may not exceed d_{s+1}, equality extends the match.
fn random_word(parry: &ParrySequence, rng: &mut ChaCha8Rng, len: usize) -> Vec<u64> {
    let d_at = |s: usize| -> u64 {
        let pre = &parry.quasi_preperiod;
        let per = &parry.quasi_period;
        if s < pre.len() {
            pre[s]
        } else {
            per[(s - pre.len()) % per.len()]
        }
    };
    let mut word = Vec::with_capacity(len);
    let mut s = 0usize;
    for _ in 0..len {
        let cap = d_at(s);
        let digit = rng.gen_range(0..=cap);
        word.push(digit);
        if digit == cap {
            s += 1;
        } else {
            s = 0;
        }
    }
    word
}
