//! Exact arithmetic in ℚ(β) over the power basis 1, β, …, β^{m-1}.
//!
//! Elements carry rational coefficients in lowest terms; all ring operations
//! are exact. Order decisions (floor, comparison, sign) first try the exact
//! rational fast path and otherwise fall back to certified interval
//! evaluation with doubling precision — never a bare float.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::interval::CertifiedInterval;
use crate::poly::PisotPolynomial;
use crate::{PRECISION_BASE, PRECISION_CAP};

/// An element of ℚ(β), owned by its defining polynomial.
#[derive(Clone)]
pub struct AlgebraicNumber {
    field: Arc<PisotPolynomial>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for AlgebraicNumber {}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicNumber {
    /// Structural order on coefficient vectors (not the numeric order; use
    /// [`AlgebraicNumber::compare`] for that). Suitable for map keys.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl AlgebraicNumber {
    pub fn new(field: &Arc<PisotPolynomial>, mut coeffs: Vec<BigRational>) -> AlgebraicNumber {
        let m = field.degree();
        assert!(coeffs.len() <= m, "coefficient vector longer than the field degree");
        coeffs.resize(m, BigRational::zero());
        AlgebraicNumber { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Arc<PisotPolynomial>) -> AlgebraicNumber {
        AlgebraicNumber::new(field, Vec::new())
    }

    pub fn one(field: &Arc<PisotPolynomial>) -> AlgebraicNumber {
        AlgebraicNumber::from_integer(field, BigInt::one())
    }

    pub fn from_integer(field: &Arc<PisotPolynomial>, n: BigInt) -> AlgebraicNumber {
        AlgebraicNumber::new(field, vec![BigRational::from_integer(n)])
    }

    pub fn from_rational(field: &Arc<PisotPolynomial>, q: BigRational) -> AlgebraicNumber {
        AlgebraicNumber::new(field, vec![q])
    }

    /// The generator β itself.
    pub fn beta(field: &Arc<PisotPolynomial>) -> AlgebraicNumber {
        AlgebraicNumber::new(field, vec![BigRational::zero(), BigRational::one()])
    }

    /// Build from integer numerators over a common denominator.
    pub fn from_num_den(field: &Arc<PisotPolynomial>, num: &[BigInt], den: &BigInt) -> Result<AlgebraicNumber> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.len() > field.degree() {
            return Err(Error::Parse("numerator vector longer than field degree".into()));
        }
        let coeffs = num.iter().map(|n| BigRational::new(n.clone(), den.clone())).collect();
        Ok(AlgebraicNumber::new(field, coeffs))
    }

    pub fn field(&self) -> &Arc<PisotPolynomial> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Exactly rational iff all power-basis coefficients above degree 0
    /// vanish (the power basis represents uniquely).
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// True when all coefficients are integers, i.e. the element lies in ℤ[β].
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Common denominator of the coefficients (a positive integer).
    pub fn common_denominator(&self) -> BigInt {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        den
    }

    /// Numerators over the common denominator.
    pub fn to_num_den(&self) -> (Vec<BigInt>, BigInt) {
        let den = self.common_denominator();
        let nums = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        (nums, den)
    }

    /// Height: max |numerator| over the common denominator.
    pub fn height(&self) -> BigInt {
        let (nums, _) = self.to_num_den();
        nums.iter().fold(BigInt::zero(), |a, n| {
            let v = n.abs();
            if v > a {
                v
            } else {
                a
            }
        })
    }

    fn check_same_field(&self, other: &AlgebraicNumber) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn checked_add(&self, other: &AlgebraicNumber) -> Result<AlgebraicNumber> {
        self.check_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(AlgebraicNumber { field: self.field.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &AlgebraicNumber) -> Result<AlgebraicNumber> {
        self.check_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(AlgebraicNumber { field: self.field.clone(), coeffs })
    }

    pub fn checked_mul(&self, other: &AlgebraicNumber) -> Result<AlgebraicNumber> {
        self.check_same_field(other)?;
        let m = self.field.degree();
        let mut prod = vec![BigRational::zero(); 2 * m - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        // reduce with β^m = k1 β^{m-1} + ... + km, top down
        let ks = self.field.recurrence_coeffs();
        for d in (m..2 * m - 1).rev() {
            if prod[d].is_zero() {
                continue;
            }
            let c = core::mem::replace(&mut prod[d], BigRational::zero());
            for (i, k) in ks.iter().enumerate() {
                if !k.is_zero() {
                    prod[d - 1 - i] += &c * BigRational::from_integer(k.clone());
                }
            }
        }
        prod.truncate(m);
        Ok(AlgebraicNumber { field: self.field.clone(), coeffs: prod })
    }

    pub fn scale(&self, q: &BigRational) -> AlgebraicNumber {
        let coeffs = self.coeffs.iter().map(|c| c * q).collect();
        AlgebraicNumber { field: self.field.clone(), coeffs }
    }

    pub fn scale_int(&self, n: &BigInt) -> AlgebraicNumber {
        self.scale(&BigRational::from_integer(n.clone()))
    }

    /// Exact multiplicative inverse via the extended Euclidean algorithm in
    /// ℚ[x] modulo g.
    pub fn inverse(&self) -> Result<AlgebraicNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // fast path: rational
        if let Some(q) = self.as_rational() {
            return Ok(AlgebraicNumber::from_rational(&self.field, q.recip()));
        }
        // polynomials ascending: index = power
        let m = self.field.degree();
        let mut g: Vec<BigRational> = self
            .field
            .coeffs()
            .iter()
            .rev()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        trim(&mut g);
        let mut a: Vec<BigRational> = self.coeffs.clone();
        trim(&mut a);
        // invariants: r0 = s0*a mod g relationship tracked on the a-side only
        let mut r0 = g;
        let mut r1 = a;
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while degree(&r1) > 0 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            if r1.iter().all(|c| c.is_zero()) {
                // gcd has positive degree: impossible for irreducible g
                return Err(Error::InternalInconsistency(
                    "nonconstant gcd while inverting in an irreducible quotient".into(),
                ));
            }
        }
        let c = r1[0].clone(); // nonzero constant gcd
        let inv_c = c.recip();
        let mut s = s1;
        for t in s.iter_mut() {
            *t *= &inv_c;
        }
        // reduce s mod g just in case (deg s < m by Euclid, but keep it tight)
        s.resize(m, BigRational::zero());
        let out = AlgebraicNumber { field: self.field.clone(), coeffs: s };
        debug_assert!(out.checked_mul(self).unwrap().is_one());
        Ok(out)
    }

    /// Multiply by β in O(m) coefficient operations: a coefficient shift
    /// plus the reduction β^m = k₁β^{m-1} + … + k_m.
    pub fn mul_beta(&self) -> AlgebraicNumber {
        let m = self.field.degree();
        let ks = self.field.recurrence_coeffs();
        let mut coeffs = self.coeffs.clone();
        let top = coeffs[m - 1].clone();
        coeffs.rotate_right(1);
        coeffs[0] = BigRational::zero();
        if !top.is_zero() {
            for (j, k) in ks.iter().enumerate() {
                if !k.is_zero() {
                    coeffs[m - 1 - j] += &top * BigRational::from_integer(k.clone());
                }
            }
        }
        AlgebraicNumber { field: self.field.clone(), coeffs }
    }

    /// Multiply by β^{-1} in O(m): invert the shift using k_m = ±1.
    pub fn mul_beta_inv(&self) -> AlgebraicNumber {
        let m = self.field.degree();
        let ks = self.field.recurrence_coeffs();
        // y = x·β^{-1} satisfies x[0] = y[m-1]·k_m, x[i] = y[i-1] + y[m-1]·k_{m-i}
        let km = &ks[m - 1]; // ±1
        let top = &self.coeffs[0] * BigRational::from_integer(km.clone()); // y[m-1]
        let mut coeffs = Vec::with_capacity(m);
        for i in 1..m {
            let mut c = self.coeffs[i].clone();
            let k = &ks[m - 1 - i]; // k_{m-i}
            if !k.is_zero() {
                c -= &top * BigRational::from_integer(k.clone());
            }
            coeffs.push(c);
        }
        coeffs.push(top);
        AlgebraicNumber { field: self.field.clone(), coeffs }
    }

    /// β^n for n ∈ ℤ (negative powers use the unit relation).
    pub fn beta_pow(field: &Arc<PisotPolynomial>, n: i64) -> AlgebraicNumber {
        let b = AlgebraicNumber::beta(field);
        if n >= 0 {
            b.pow(n as u64)
        } else {
            let binv = b.inverse().expect("β is a unit");
            binv.pow((-n) as u64)
        }
    }

    pub fn pow(&self, mut e: u64) -> AlgebraicNumber {
        let mut base = self.clone();
        let mut acc = AlgebraicNumber::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).unwrap();
            }
            base = base.checked_mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Exact trace Tr(Σ cᵢ βⁱ) = Σ cᵢ·Tr(βⁱ).
    pub fn trace(&self) -> BigRational {
        let p = self.field.trace_powers(self.field.degree() - 1);
        let mut t = BigRational::zero();
        for (c, pj) in self.coeffs.iter().zip(&p) {
            t += c * BigRational::from_integer(pj.clone());
        }
        t
    }

    /// Certified enclosure of the real value, with absolute width pushed
    /// below 2^-precision when reachable under the precision cap; otherwise
    /// the widest refinement reached is returned (check `width()`).
    pub fn evaluate(&self, precision: u32) -> CertifiedInterval {
        let target = Dyadic::pow2(-(precision as i64));
        let mut work = precision + 32;
        loop {
            let iv = self.evaluate_raw(work);
            if iv.width().cmp(&target) == Ordering::Less || work >= 4 * PRECISION_CAP {
                return iv;
            }
            work *= 2;
        }
    }

    fn evaluate_raw(&self, work: u32) -> CertifiedInterval {
        if let Some(q) = self.as_rational() {
            return CertifiedInterval::from_rational(q, work);
        }
        let beta = self.field.dominant_root(work);
        self.evaluate_with(&beta)
    }

    /// Horner evaluation against a caller-supplied enclosure of β (lets hot
    /// loops reuse one refinement instead of re-deriving it per element).
    pub fn evaluate_with(&self, beta: &CertifiedInterval) -> CertifiedInterval {
        let work = beta.precision();
        let mut acc = CertifiedInterval::zero(work);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(beta);
            if !c.is_zero() {
                acc = acc.add(&CertifiedInterval::from_rational(c, work));
            }
        }
        acc
    }

    /// Exact sign: -1, 0, +1.
    pub fn sign(&self) -> Result<i32> {
        if self.is_zero() {
            return Ok(0);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() { 1 } else { -1 });
        }
        let mut prec = PRECISION_BASE;
        while prec <= PRECISION_CAP {
            let iv = self.evaluate_raw(prec);
            if let Some(s) = iv.certified_sign() {
                return Ok(s);
            }
            prec *= 2;
        }
        Err(Error::PrecisionCapExceeded)
    }

    pub fn is_negative(&self) -> Result<bool> {
        Ok(self.sign()? < 0)
    }

    /// Exact floor. Rational elements take the exact path; irrational ones
    /// are separated from every integer by interval refinement.
    pub fn floor(&self) -> Result<BigInt> {
        if let Some(q) = self.as_rational() {
            return Ok(q.floor().to_integer());
        }
        let mut prec = PRECISION_BASE;
        while prec <= PRECISION_CAP {
            let iv = self.evaluate_raw(prec);
            if let Some(f) = iv.certified_floor() {
                return Ok(f);
            }
            prec *= 2;
        }
        Err(Error::PrecisionCapExceeded)
    }

    /// Exact fractional part: self - floor(self) ∈ [0, 1).
    pub fn fract(&self) -> Result<AlgebraicNumber> {
        let f = self.floor()?;
        Ok(self.clone() - AlgebraicNumber::from_integer(&self.field, f))
    }

    /// Exact total order decision.
    pub fn compare(&self, other: &AlgebraicNumber) -> Result<Ordering> {
        let diff = self.checked_sub(other)?;
        Ok(match diff.sign()? {
            0 => Ordering::Equal,
            s if s < 0 => Ordering::Less,
            _ => Ordering::Greater,
        })
    }

    /// Nearest integer; errors on an exact half-integer tie.
    pub fn nearest_integer(&self) -> Result<BigInt> {
        if let Some(q) = self.as_rational() {
            let two = BigRational::from_integer(BigInt::from(2));
            let shifted = q + BigRational::new(BigInt::one(), BigInt::from(2));
            if shifted.denom().is_one() {
                // exactly a half-integer: refuse to guess
                let _ = two;
                return Err(Error::OutOfRange("exact half-integer has no nearest integer".into()));
            }
            return Ok(shifted.floor().to_integer());
        }
        // irrational: never exactly half-integral, intervals separate
        let mut prec = PRECISION_BASE;
        while prec <= PRECISION_CAP {
            let iv = self.evaluate_raw(prec);
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let shifted = iv.add(&CertifiedInterval::from_rational(&half, prec));
            if let Some(f) = shifted.certified_floor() {
                return Ok(f);
            }
            prec *= 2;
        }
        Err(Error::PrecisionCapExceeded)
    }

    /// Certified distance from the value to the nearest integer.
    pub fn dist_to_integers(&self, precision: u32) -> CertifiedInterval {
        self.evaluate(precision).dist_to_integers()
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn degree(v: &[BigRational]) -> usize {
    v.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = degree(b);
    let lead = b[db].clone();
    let mut r = a.to_vec();
    trim(&mut r);
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
    while degree(&r) >= db && !r.iter().all(|c| c.is_zero()) {
        let dr = degree(&r);
        if dr < db {
            break;
        }
        let f = &r[dr] / &lead;
        q[dr - db] = f.clone();
        for i in 0..=db {
            let sub = &b[i] * &f;
            r[dr - db + i] -= sub;
        }
        r[dr] = BigRational::zero();
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

impl Add for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn add(self, rhs: AlgebraicNumber) -> AlgebraicNumber {
        self.checked_add(&rhs).expect("mixed fields")
    }
}

impl<'a> Add<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn add(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self.checked_add(rhs).expect("mixed fields")
    }
}

impl Sub for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn sub(self, rhs: AlgebraicNumber) -> AlgebraicNumber {
        self.checked_sub(&rhs).expect("mixed fields")
    }
}

impl<'a> Sub<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn sub(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self.checked_sub(rhs).expect("mixed fields")
    }
}

impl Mul for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn mul(self, rhs: AlgebraicNumber) -> AlgebraicNumber {
        self.checked_mul(&rhs).expect("mixed fields")
    }
}

impl<'a> Mul<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn mul(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self.checked_mul(rhs).expect("mixed fields")
    }
}

impl Neg for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        AlgebraicNumber { field: self.field, coeffs }
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (nums, den) = self.to_num_den();
        let mut body = String::new();
        let mut first = true;
        for (i, n) in nums.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let mag = n.abs();
            if first {
                if n.is_negative() {
                    body.push('-');
                }
                first = false;
            } else {
                body.push_str(if n.is_negative() { " - " } else { " + " });
            }
            if !mag.is_one() || i == 0 {
                body.push_str(&mag.to_string());
                if i > 0 {
                    body.push('*');
                }
            }
            if i == 1 {
                body.push_str("beta");
            } else if i > 1 {
                body.push_str("beta^");
                body.push_str(&i.to_string());
            }
        }
        if body.is_empty() {
            body.push('0');
        }
        if den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}
