//! Arbitrary-precision dyadic numbers `mant · 2^exp` with directed rounding.
//!
//! Addition, subtraction and multiplication are exact; division and square
//! root round in a caller-chosen direction at a caller-chosen precision.
//! This is the substrate for all certified interval arithmetic in the crate.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

/// Rounding direction for inexact operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// `mant · 2^exp`, normalized so `mant` is odd or zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Dyadic {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic::from_int(1)
    }

    pub fn from_int(n: i64) -> Dyadic {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Dyadic {
        Dyadic::new(n, 0)
    }

    pub fn new(mant: BigInt, exp: i64) -> Dyadic {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn sign(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (lo, hi) = if self.exp <= other.exp { (self, other) } else { (other, self) };
        let shift = (hi.exp - lo.exp) as u64;
        Dyadic::new((&hi.mant << shift) + &lo.mant, lo.exp)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn mul_i64(&self, k: i64) -> Dyadic {
        Dyadic::new(&self.mant * BigInt::from(k), self.exp)
    }

    pub fn shl(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn cmp(&self, other: &Dyadic) -> Ordering {
        match (self.sign(), other.sign()) {
            (a, b) if a < b => return Ordering::Less,
            (a, b) if a > b => return Ordering::Greater,
            (0, 0) => return Ordering::Equal,
            _ => {}
        }
        self.sub(other).sign().cmp(&0)
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.cmp(b) == Ordering::Greater { b.clone() } else { a.clone() }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.cmp(b) == Ordering::Less { b.clone() } else { a.clone() }
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Round so the mantissa has at most `prec` bits, in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = bits - prec as u64;
        let shifted = floor_shr(&self.mant, drop);
        let mut mant = shifted;
        if dir == Round::Up {
            // floor_shr rounds toward -inf; bump unless exact
            let back = &mant << drop;
            if back != self.mant {
                mant += 1;
            }
        }
        Dyadic::new(mant, self.exp + drop as i64)
    }

    /// `self / other`, rounded in direction `dir` with `prec` result bits.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale numerator so the quotient carries prec+2 significant bits.
        let nb = self.mant.bits() as i64;
        let db = other.mant.bits() as i64;
        let extra = (prec as i64 + 2 - (nb - db)).max(0) as u64;
        let num = &self.mant << extra;
        let (q, r) = num_integer::Integer::div_rem(&num, &other.mant);
        let exact = r.is_zero();
        // div_rem truncates toward zero; fix to the requested direction.
        let down_is_q = exact || (num.sign() == other.mant.sign());
        let mut q = q;
        match dir {
            Round::Down => {
                if !down_is_q {
                    q -= 1;
                }
            }
            Round::Up => {
                if !exact && num.sign() == other.mant.sign() {
                    q += 1;
                }
            }
        }
        Dyadic::new(q, self.exp - other.exp - extra as i64).round(prec + 4, dir)
    }

    /// Square root of a nonnegative dyadic, rounded in direction `dir`.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(!self.is_negative(), "dyadic sqrt of negative");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale to an even exponent with >= 2*prec+4 mantissa bits.
        let mut mant = self.mant.clone();
        let mut exp = self.exp;
        let want = 2 * (prec as u64 + 2);
        let have = mant.bits();
        let mut lift = if have < want { want - have } else { 0 };
        if (exp - lift as i64) % 2 != 0 {
            lift += 1;
        }
        mant <<= lift;
        exp -= lift as i64;
        let root = mant.sqrt(); // floor square root
        let exact = &root * &root == mant;
        let r = match dir {
            Round::Down => root,
            Round::Up => {
                if exact {
                    root
                } else {
                    root + 1
                }
            }
        };
        Dyadic::new(r, exp / 2).round(prec + 4, dir)
    }

    /// Directed conversion of a rational `num/den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32, dir: Round) -> Dyadic {
        Dyadic::from_bigint(num.clone()).div(&Dyadic::from_bigint(den.clone()), prec, dir)
    }

    /// Largest integer ≤ self.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            floor_shr(&self.mant, (-self.exp) as u64)
        }
    }

    /// True if this dyadic is an exact integer.
    pub fn is_integer(&self) -> bool {
        self.exp >= 0 || self.is_zero()
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Dyadic {
        Dyadic { mant: BigInt::from(1), exp: k }
    }

    /// Exponent of the leading bit: value magnitude is in `[2^e, 2^{e+1})`.
    /// None for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64 - 1)
        }
    }

    /// Short decimal rendering (enclosure-quality, for display only).
    pub fn to_decimal(&self, digits: usize) -> String {
        use alloc::format;
        if self.is_zero() {
            return String::from("0");
        }
        let neg = self.is_negative();
        let a = self.abs();
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = a.mul(&Dyadic::from_bigint(scale.clone()));
        let int = scaled.floor();
        let (q, r) = num_integer::Integer::div_rem(&int, &scale);
        let frac = format!("{:0width$}", r, width = digits);
        let frac = frac.trim_end_matches('0');
        let s = if frac.is_empty() { format!("{q}") } else { format!("{q}.{frac}") };
        if neg {
            format!("-{s}")
        } else {
            s
        }
    }
}

/// Arithmetic shift right (floor division by 2^k).
fn floor_shr(x: &BigInt, k: u64) -> BigInt {
    x >> k
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(12))
    }
}
