//! Certified real intervals with dyadic endpoints.
//!
//! Every operation returns an interval guaranteed to contain the true
//! result; endpoints are rounded outward at the interval's precision.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::dyadic::{Dyadic, Round};

/// `[lo, hi]` with `lo ≤ hi`, both dyadic; `precision` records the working
/// precision (bits) the enclosure was produced at.
#[derive(Debug, Clone)]
pub struct CertifiedInterval {
    lo: Dyadic,
    hi: Dyadic,
    precision: u32,
}

impl CertifiedInterval {
    pub fn new(lo: Dyadic, hi: Dyadic, precision: u32) -> CertifiedInterval {
        debug_assert!(lo.cmp(&hi) != Ordering::Greater, "inverted interval");
        CertifiedInterval { lo, hi, precision }
    }

    pub fn point(v: Dyadic, precision: u32) -> CertifiedInterval {
        CertifiedInterval { lo: v.clone(), hi: v, precision }
    }

    pub fn zero(precision: u32) -> CertifiedInterval {
        CertifiedInterval::point(Dyadic::zero(), precision)
    }

    pub fn from_rational(q: &BigRational, precision: u32) -> CertifiedInterval {
        let lo = Dyadic::from_ratio(q.numer(), q.denom(), precision, Round::Down);
        let hi = Dyadic::from_ratio(q.numer(), q.denom(), precision, Round::Up);
        CertifiedInterval::new(lo, hi, precision)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    fn out(&self, lo: Dyadic, hi: Dyadic) -> CertifiedInterval {
        // round endpoints outward to keep mantissas bounded
        let p = self.precision + 8;
        CertifiedInterval::new(lo.round(p, Round::Down), hi.round(p, Round::Up), self.precision)
    }

    pub fn neg(&self) -> CertifiedInterval {
        CertifiedInterval::new(self.hi.neg(), self.lo.neg(), self.precision)
    }

    pub fn add(&self, other: &CertifiedInterval) -> CertifiedInterval {
        self.out(self.lo.add(&other.lo), self.hi.add(&other.hi))
    }

    pub fn sub(&self, other: &CertifiedInterval) -> CertifiedInterval {
        self.out(self.lo.sub(&other.hi), self.hi.sub(&other.lo))
    }

    pub fn mul(&self, other: &CertifiedInterval) -> CertifiedInterval {
        let c0 = self.lo.mul(&other.lo);
        let c1 = self.lo.mul(&other.hi);
        let c2 = self.hi.mul(&other.lo);
        let c3 = self.hi.mul(&other.hi);
        let lo = Dyadic::min(&Dyadic::min(&c0, &c1), &Dyadic::min(&c2, &c3));
        let hi = Dyadic::max(&Dyadic::max(&c0, &c1), &Dyadic::max(&c2, &c3));
        self.out(lo, hi)
    }

    pub fn add_scalar(&self, s: &Dyadic) -> CertifiedInterval {
        self.out(self.lo.add(s), self.hi.add(s))
    }

    /// Divide by a positive integer, outward.
    pub fn div_int(&self, d: &BigInt) -> CertifiedInterval {
        debug_assert!(d.sign() == num_bigint::Sign::Plus);
        let dd = Dyadic::from_bigint(d.clone());
        let p = self.precision + 8;
        CertifiedInterval::new(
            self.lo.div(&dd, p, Round::Down),
            self.hi.div(&dd, p, Round::Up),
            self.precision,
        )
    }

    /// Add exact integer-coefficient term (no rounding loss on conversion).
    pub fn add_int(&self, n: &BigInt) -> CertifiedInterval {
        self.add_scalar(&Dyadic::from_bigint(n.clone()))
    }

    pub fn widen(&self, slack: &Dyadic) -> CertifiedInterval {
        debug_assert!(!slack.is_negative());
        CertifiedInterval::new(self.lo.sub(slack), self.hi.add(slack), self.precision)
    }

    /// Sign if certified: -1, 0 (only for the exact point 0), +1; None when
    /// the interval straddles zero.
    pub fn certified_sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Floor if both endpoints agree on it.
    pub fn certified_floor(&self) -> Option<BigInt> {
        let f0 = self.lo.floor();
        let f1 = self.hi.floor();
        if f0 == f1 {
            Some(f0)
        } else if self.hi.is_integer() && f1 == &f0 + 1 {
            // hi is exactly the next integer; the value may still be below it,
            // cannot certify
            None
        } else {
            None
        }
    }

    /// Enclosure of the distance to the nearest integer.
    pub fn dist_to_integers(&self) -> CertifiedInterval {
        // nearest lattice point to the midpoint
        let mid = self.lo.add(&self.hi).div(&Dyadic::from_int(2), self.precision + 8, Round::Down);
        let half = Dyadic::pow2(-1);
        let k = mid.add(&half).floor();
        let kd = Dyadic::from_bigint(k);
        let a = self.lo.sub(&kd);
        let b = self.hi.sub(&kd);
        // |[a,b]|
        let (alo, ahi) = if a.is_negative() && b.is_positive() {
            (Dyadic::zero(), Dyadic::max(&a.neg(), &b))
        } else if b.sign() <= 0 {
            (b.neg(), a.neg())
        } else {
            (a, b)
        };
        // distance can never exceed 1/2
        let hi = Dyadic::min(&ahi, &half);
        let lo = Dyadic::min(&alo, &hi);
        CertifiedInterval::new(lo, hi, self.precision)
    }

    /// Decimal rendering of the enclosure, e.g. `1.6180 ± 2^-64`.
    pub fn describe(&self, digits: usize) -> String {
        use alloc::format;
        let mid = self.lo.add(&self.hi).div(&Dyadic::from_int(2), self.precision + 8, Round::Down);
        let w = self.width();
        match w.log2_floor() {
            None => format!("{}", mid.to_decimal(digits)),
            Some(e) => format!("{} ± 2^{}", mid.to_decimal(digits), e + 1),
        }
    }
}

impl fmt::Display for CertifiedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_decimal(12), self.hi.to_decimal(12))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn rational_enclosure() {
        let q = BigRational::new(BigInt::from(1), BigInt::from(3));
        let i = CertifiedInterval::from_rational(&q, 64);
        assert!(i.width().cmp(&Dyadic::pow2(-60)) == Ordering::Less);
        assert_eq!(i.certified_sign(), Some(1));
        assert_eq!(i.certified_floor(), Some(BigInt::from(0)));
    }

    #[test]
    fn arithmetic_contains_truth() {
        let third = CertifiedInterval::from_rational(&BigRational::new(BigInt::one(), BigInt::from(3)), 64);
        let s = third.add(&third).add(&third);
        let one = Dyadic::one();
        assert!(s.lo().cmp(&one) != Ordering::Greater && s.hi().cmp(&one) != Ordering::Less);
    }

    #[test]
    fn integer_distance() {
        let q = BigRational::new(BigInt::from(29), BigInt::from(10)); // 2.9
        let i = CertifiedInterval::from_rational(&q, 64);
        let d = i.dist_to_integers();
        // distance to 3 is 0.1
        let tenth = CertifiedInterval::from_rational(&BigRational::new(BigInt::one(), BigInt::from(10)), 64);
        assert!(d.lo().cmp(tenth.hi()) != Ordering::Greater);
        assert!(d.hi().cmp(tenth.lo()) != Ordering::Less);
    }
}
