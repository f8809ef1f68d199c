//! Pisot-unit polynomials with certified root data.
//!
//! A polynomial `x^m - k1 x^{m-1} - ... - km` is accepted only when we can
//! certify: |km| = 1, irreducibility, a unique real root > 1, and all other
//! roots of modulus strictly below 1. Root enclosures are disks (center +
//! radius) refined by Newton iteration; each disk provably contains exactly
//! one root via the `m·|g(z)/g'(z)|` bound and pairwise disjointness.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use crate::interval::CertifiedInterval;
use crate::{PRECISION_BASE, PRECISION_CAP};

/// Certified enclosure of one root: the open disk `|z - (re + i·im)| < radius`
/// contains exactly one root of the polynomial. `is_real` means the center is
/// exactly on the real axis, which forces the enclosed root to be real.
#[derive(Debug, Clone)]
pub struct RootDisk {
    pub re: Dyadic,
    pub im: Dyadic,
    pub radius: Dyadic,
    pub is_real: bool,
}

impl RootDisk {
    /// Certified upper bound on the modulus of the enclosed root.
    pub fn modulus_upper(&self, prec: u32) -> Dyadic {
        let c2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        c2.sqrt(prec, Round::Up).add(&self.radius)
    }

    /// Certified lower bound on the modulus of the enclosed root.
    pub fn modulus_lower(&self, prec: u32) -> Dyadic {
        let c2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let m = c2.sqrt(prec, Round::Down).sub(&self.radius);
        Dyadic::max(&m, &Dyadic::zero())
    }

    /// Real interval enclosure (only meaningful for real roots).
    pub fn real_interval(&self, prec: u32) -> CertifiedInterval {
        CertifiedInterval::new(self.re.sub(&self.radius), self.re.add(&self.radius), prec)
    }
}

/// Proof data returned by [`PisotPolynomial::verify_pisot`].
#[derive(Debug, Clone)]
pub struct PisotCertificate {
    /// Enclosure of the dominant root β, certified real and > 1.
    pub dominant: RootDisk,
    /// Enclosures of the m-1 conjugates, each certified of modulus < 1.
    pub conjugates: Vec<RootDisk>,
    /// Certified upper bound, strictly below 1, on every conjugate modulus.
    pub conjugate_modulus_bound: Dyadic,
    /// Working precision (bits) at which the certificate closed.
    pub precision_bits: u32,
}

/// A monic integer polynomial `x^m - k1 x^{m-1} - ... - km` defining a Pisot
/// unit, together with certified root data. Immutable after construction.
#[derive(Clone)]
pub struct PisotPolynomial {
    degree: usize,
    /// k1..km, the linear-recurrence coefficients.
    rec: Vec<BigInt>,
    /// Full coefficient vector of g, leading coefficient first.
    coeffs: Vec<BigInt>,
    /// Coefficient vector of g', leading first.
    dcoeffs: Vec<BigInt>,
    /// roots[0] is the dominant root; the rest are the conjugates.
    roots: Vec<RootDisk>,
    /// Precision at which `roots` was certified.
    root_precision: u32,
}

impl PartialEq for PisotPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.rec == other.rec
    }
}
impl Eq for PisotPolynomial {}

impl fmt::Debug for PisotPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PisotPolynomial({})", self.to_text())
    }
}

impl fmt::Display for PisotPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

// ---------------------------------------------------------------------------
// complex dyadic helpers (exact +,-,*; directed division)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct CDyadic {
    re: Dyadic,
    im: Dyadic,
}

impl CDyadic {
    fn zero() -> CDyadic {
        CDyadic { re: Dyadic::zero(), im: Dyadic::zero() }
    }

    fn real(x: Dyadic) -> CDyadic {
        CDyadic { re: x, im: Dyadic::zero() }
    }

    fn add(&self, o: &CDyadic) -> CDyadic {
        CDyadic { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    fn sub(&self, o: &CDyadic) -> CDyadic {
        CDyadic { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    fn mul(&self, o: &CDyadic) -> CDyadic {
        CDyadic {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    fn norm2(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    fn abs_up(&self, prec: u32) -> Dyadic {
        self.norm2().sqrt(prec, Round::Up)
    }

    fn abs_down(&self, prec: u32) -> Dyadic {
        self.norm2().sqrt(prec, Round::Down)
    }

    /// `self / o` with each component rounded at `prec` bits (undirected; used
    /// only for Newton iterates, never for certified bounds).
    fn div_approx(&self, o: &CDyadic, prec: u32) -> CDyadic {
        let n2 = o.norm2();
        let conj = CDyadic { re: o.re.clone(), im: o.im.neg() };
        let t = self.mul(&conj);
        CDyadic {
            re: t.re.div(&n2, prec, Round::Down),
            im: t.im.div(&n2, prec, Round::Down),
        }
    }

    fn round(&self, prec: u32) -> CDyadic {
        CDyadic { re: self.re.round(prec, Round::Down), im: self.im.round(prec, Round::Down) }
    }
}

fn eval_poly_c(coeffs: &[BigInt], z: &CDyadic) -> CDyadic {
    let mut acc = CDyadic::zero();
    for c in coeffs {
        acc = acc.mul(z).add(&CDyadic::real(Dyadic::from_bigint(c.clone())));
    }
    acc
}

fn eval_poly_real(coeffs: &[BigInt], x: &Dyadic) -> Dyadic {
    let mut acc = Dyadic::zero();
    for c in coeffs {
        acc = acc.mul(x).add(&Dyadic::from_bigint(c.clone()));
    }
    acc
}

// ---------------------------------------------------------------------------
// f64 Durand-Kerner seeds (std-free: hand-rolled sqrt)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn mul(self, o: C64) -> C64 {
        C64 { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
    fn sub(self, o: C64) -> C64 {
        C64 { re: self.re - o.re, im: self.im - o.im }
    }
    fn div(self, o: C64) -> C64 {
        let n = o.re * o.re + o.im * o.im;
        C64 { re: (self.re * o.re + self.im * o.im) / n, im: (self.im * o.re - self.re * o.im) / n }
    }
    fn norm2(self) -> f64 {
        self.re * self.re + self.im * self.im
    }
}

fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

fn fsqrt(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let mut u = if x > 1.0 { x } else { 1.0 };
    for _ in 0..64 {
        u = 0.5 * (u + x / u);
    }
    u
}

/// Durand-Kerner at f64 precision; returns approximate roots.
fn durand_kerner_seeds(coeffs: &[BigInt]) -> Vec<C64> {
    let m = coeffs.len() - 1;
    let cf: Vec<f64> = coeffs.iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    let maxc = cf.iter().skip(1).fold(0.0f64, |a, &b| if fabs(b) > a { fabs(b) } else { a });
    let radius = 1.0 + maxc;
    let eval = |z: C64| -> C64 {
        let mut acc = C64 { re: 0.0, im: 0.0 };
        for &c in &cf {
            acc = acc.mul(z);
            acc.re += c;
        }
        acc
    };
    // spread starting points on a circle, irrational angle step
    let mut zs: Vec<C64> = (0..m)
        .map(|i| {
            let t = 0.4 + 1.7 * i as f64;
            // crude sin/cos via Taylor around reduced argument is overkill;
            // use a quasi-uniform rational rotation instead
            let (c, s) = unit_dir(t);
            C64 { re: radius * c, im: radius * s + 0.01 }
        })
        .collect();
    for _ in 0..600 {
        let mut moved = 0.0f64;
        for i in 0..m {
            let mut den = C64 { re: 1.0, im: 0.0 };
            for j in 0..m {
                if i != j {
                    den = den.mul(zs[i].sub(zs[j]));
                }
            }
            let step = eval(zs[i]).div(den);
            zs[i] = zs[i].sub(step);
            moved += step.norm2();
        }
        if moved < 1e-30 {
            break;
        }
    }
    zs
}

/// Unit direction for angle t, good enough to spread starting points.
fn unit_dir(t: f64) -> (f64, f64) {
    // wrap t into [0, 6.5) and evaluate short Taylor series
    let tau = 6.283185307179586;
    let mut x = t;
    while x >= tau {
        x -= tau;
    }
    // Taylor works fine on [0, 2π) with enough terms
    let mut cos = 0.0;
    let mut sin = 0.0;
    let mut term = 1.0;
    for k in 0..24 {
        match k % 4 {
            0 => cos += term,
            1 => sin += term,
            2 => cos -= term,
            _ => sin -= term,
        }
        term *= x / (k as f64 + 1.0);
    }
    let n = fsqrt(cos * cos + sin * sin);
    (cos / n, sin / n)
}

// ---------------------------------------------------------------------------
// text / coefficient parsing
// ---------------------------------------------------------------------------

/// Parse either "x^3-x^2-x-1" style text or a JSON-ish coefficient array
/// "[1,-1,-1,-1]" (leading coefficient first).
fn parse_coeffs(text: &str) -> Result<Vec<BigInt>> {
    let t = text.trim();
    if t.starts_with('[') {
        return parse_coeff_array(t);
    }
    parse_poly_text(t)
}

fn parse_coeff_array(t: &str) -> Result<Vec<BigInt>> {
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse("unterminated coefficient array".into()))?;
    let mut out = Vec::new();
    for part in inner.split(',') {
        let p = part.trim();
        if p.is_empty() {
            return Err(Error::Parse("empty coefficient".into()));
        }
        let v: BigInt = p.parse().map_err(|_| Error::Parse(format!("bad integer '{p}'")))?;
        out.push(v);
    }
    if out.len() < 2 {
        return Err(Error::Parse("need at least degree 1".into()));
    }
    Ok(out)
}

fn parse_poly_text(t: &str) -> Result<Vec<BigInt>> {
    // tokenize into signed terms: [sign] [int] [x [^ exp]]
    let s: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    let bytes = s.as_bytes();
    let mut i = 0usize;
    let mut terms: Vec<(BigInt, usize)> = Vec::new();
    while i < bytes.len() {
        let mut sign = BigInt::one();
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mut coeff = if start == i {
            BigInt::one()
        } else {
            s[start..i].parse::<BigInt>().map_err(|_| Error::Parse("bad coefficient".into()))?
        };
        coeff *= sign;
        let mut exp = 0usize;
        if i < bytes.len() && (bytes[i] == b'x' || bytes[i] == b'X') {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if es == i {
                    return Err(Error::Parse("missing exponent".into()));
                }
                exp = s[es..i].parse().map_err(|_| Error::Parse("bad exponent".into()))?;
            }
        } else if start == i {
            return Err(Error::Parse(format!("unexpected character at '{}'", &s[i..])));
        }
        terms.push((coeff, exp));
    }
    if terms.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let deg = terms.iter().map(|&(_, e)| e).max().unwrap();
    if deg < 1 {
        return Err(Error::Parse("need degree >= 1".into()));
    }
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (c, e) in terms {
        coeffs[deg - e] += c;
    }
    Ok(coeffs)
}

// ---------------------------------------------------------------------------
// exact polynomial utilities over the integers
// ---------------------------------------------------------------------------

/// True if g and its derivative share a nonconstant factor (repeated root).
fn has_repeated_root(coeffs: &[BigInt], dcoeffs: &[BigInt]) -> bool {
    // rational-free Euclid via pseudo-remainders
    let mut a: Vec<BigInt> = coeffs.to_vec();
    let mut b: Vec<BigInt> = dcoeffs.to_vec();
    loop {
        strip_leading(&mut b);
        if b.is_empty() {
            // gcd = a
            strip_leading(&mut a);
            return a.len() > 1;
        }
        if b.len() == 1 {
            return false; // gcd constant
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = r;
    }
}

fn strip_leading(v: &mut Vec<BigInt>) {
    while v.first().map(|c| c.is_zero()).unwrap_or(false) {
        v.remove(0);
    }
}

/// Pseudo-remainder of a by b (leading-first coefficient vectors).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    let lb = b[0].clone();
    while r.len() >= b.len() {
        strip_leading(&mut r);
        if r.len() < b.len() {
            break;
        }
        let lr = r[0].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        let shift = r.len() - b.len();
        for (j, bc) in b.iter().enumerate() {
            let sub = bc * &lr;
            r[j] -= sub;
        }
        debug_assert!(r[0].is_zero());
        r.remove(0);
        let _ = shift;
    }
    strip_leading(&mut r);
    r
}

/// Exact division check of g by monic h over Z; Some(quotient) on success.
fn divide_exact(g: &[BigInt], h: &[BigInt]) -> Option<Vec<BigInt>> {
    debug_assert!(h[0].is_one());
    if h.len() > g.len() {
        return None;
    }
    let mut rem: Vec<BigInt> = g.to_vec();
    let qlen = g.len() - h.len() + 1;
    let mut q = vec![BigInt::zero(); qlen];
    for i in 0..qlen {
        let c = rem[i].clone();
        q[i] = c.clone();
        if c.is_zero() {
            continue;
        }
        for (j, hc) in h.iter().enumerate() {
            let sub = hc * &c;
            rem[i + j] -= sub;
        }
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// the main type
// ---------------------------------------------------------------------------

impl PisotPolynomial {
    /// Parse and fully validate a Pisot-unit polynomial from text
    /// ("x^3-x^2-x-1") or a coefficient array ("[1,-1,-1,-1]").
    pub fn parse(text: &str) -> Result<PisotPolynomial> {
        Self::from_coeffs(parse_coeffs(text)?)
    }

    /// Validate a polynomial given by its coefficients, leading first.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<PisotPolynomial> {
        let m = coeffs.len() - 1;
        if m < 2 {
            return Err(Error::Parse("degree must be at least 2".into()));
        }
        if !coeffs[0].is_one() {
            return Err(Error::NotMonic);
        }
        let km_abs = coeffs[m].abs();
        if !km_abs.is_one() {
            return Err(Error::NotUnit);
        }
        let rec: Vec<BigInt> = coeffs[1..].iter().map(|c| -c).collect();
        let dcoeffs = derivative(&coeffs);

        if has_repeated_root(&coeffs, &dcoeffs) {
            return Err(Error::Reducible("repeated factor (gcd(g, g') nonconstant)".into()));
        }

        let mut poly = PisotPolynomial {
            degree: m,
            rec,
            coeffs,
            dcoeffs,
            roots: Vec::new(),
            root_precision: 0,
        };
        let cert = poly.verify_pisot(PRECISION_CAP)?;
        poly.root_precision = cert.precision_bits;
        poly.roots = Vec::with_capacity(m);
        poly.roots.push(cert.dominant);
        poly.roots.extend(cert.conjugates);
        Ok(poly)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// k1..km with x^m = k1 x^{m-1} + ... + km.
    pub fn recurrence_coeffs(&self) -> &[BigInt] {
        &self.rec
    }

    /// Full coefficient vector of g, leading coefficient first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Certified root disks; index 0 is the dominant root β.
    pub fn roots(&self) -> &[RootDisk] {
        &self.roots
    }

    /// Coefficients of g' in the power basis 1, β, ..., β^{m-1}
    /// (g'(β) = m β^{m-1} - Σ (m-i)·k_i·β^{m-1-i}), all integers.
    pub fn derivative_power_coeffs(&self) -> Vec<BigInt> {
        let m = self.degree;
        let mut v = vec![BigInt::zero(); m];
        v[m - 1] = BigInt::from(m as i64);
        for i in 1..m {
            v[m - 1 - i] = -(BigInt::from((m - i) as i64) * &self.rec[i - 1]);
        }
        v
    }

    /// "x^m-k1 x^{m-1}-..." rendering.
    pub fn to_text(&self) -> String {
        let m = self.degree;
        let mut s = format!("x^{m}");
        for (i, k) in self.rec.iter().enumerate() {
            if k.is_zero() {
                continue;
            }
            let e = m - 1 - i;
            let c = -k; // coefficient of x^e in g
            let mag = c.abs();
            s.push(if c.is_negative() { '-' } else { '+' });
            if !mag.is_one() || e == 0 {
                s.push_str(&mag.to_string());
            }
            if e >= 1 {
                s.push('x');
                if e >= 2 {
                    s.push_str(&format!("^{e}"));
                }
            }
        }
        s
    }

    /// Traces of powers: p_j = Tr(β^j) for j = 0..=n via Newton's identities.
    pub fn trace_powers(&self, n: usize) -> Vec<BigInt> {
        let m = self.degree;
        let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
        p.push(BigInt::from(m as i64));
        for j in 1..=n {
            let mut s = BigInt::zero();
            if j <= m {
                for i in 1..j {
                    s += &self.rec[i - 1] * &p[j - i];
                }
                s += BigInt::from(j as i64) * &self.rec[j - 1];
            } else {
                for i in 1..=m {
                    s += &self.rec[i - 1] * &p[j - i];
                }
            }
            p.push(s);
        }
        p
    }

    /// Re-run the certification pipeline with the given precision cap,
    /// returning the proof data.
    pub fn verify_pisot(&self, precision_cap: u32) -> Result<PisotCertificate> {
        // Exact structural rejections first: an irreducible polynomial with a
        // root on the unit circle is self-reciprocal, so after irreducibility
        // is established, g != ±g* guarantees the numeric loop terminates.
        let mut prec = PRECISION_BASE;
        let mut disks = loop {
            if let Some(d) = self.isolate_roots(prec) {
                break d;
            }
            prec = prec.saturating_mul(2);
            if prec > precision_cap {
                return Err(Error::PrecisionCapExceeded);
            }
        };

        // Irreducibility by subset-product reconstruction.
        loop {
            match self.irreducible_at(&disks, prec) {
                Some(Ok(())) => break,
                Some(Err(e)) => return Err(e),
                None => {
                    prec = prec.saturating_mul(2);
                    if prec > precision_cap {
                        return Err(Error::PrecisionCapExceeded);
                    }
                    disks = self.isolate_roots(prec).ok_or(Error::PrecisionCapExceeded)?;
                }
            }
        }

        if let Some(err) = self.reject_self_reciprocal() {
            return Err(err);
        }

        // Modulus classification loop: with no roots on the unit circle this
        // terminates.
        loop {
            match self.classify_disks(&disks, prec) {
                Some(result) => return result.map(|mut cert| {
                    cert.precision_bits = prec;
                    cert
                }),
                None => {
                    prec = prec.saturating_mul(2);
                    if prec > precision_cap {
                        return Err(Error::PrecisionCapExceeded);
                    }
                    disks = self.isolate_roots(prec).ok_or(Error::PrecisionCapExceeded)?;
                }
            }
        }
    }

    /// Exactly one real root > 1 certified; refine its enclosure down to
    /// width ≤ 2^-prec.
    pub fn dominant_root(&self, prec: u32) -> CertifiedInterval {
        let seed = &self.roots[0];
        let mut x = seed.re.clone();
        let work = prec + 32;
        for _ in 0..(64 + prec) {
            let r = self.real_radius_bound(&x, work);
            if r.cmp(&Dyadic::pow2(-(prec as i64) - 1)) == Ordering::Less {
                return CertifiedInterval::new(x.sub(&r), x.add(&r), prec);
            }
            x = self.newton_step_real(&x, work);
        }
        // Newton converges quadratically from a certified seed; reaching here
        // means the seed was inconsistent.
        unreachable!("dominant root refinement failed to converge")
    }

    /// Refine all root disks to radius ≤ 2^-prec.
    pub fn refined_roots(&self, prec: u32) -> Vec<RootDisk> {
        let mut out = Vec::with_capacity(self.degree);
        let work = prec + 32;
        for d in &self.roots {
            if d.is_real {
                let mut x = d.re.clone();
                for _ in 0..(64 + prec) {
                    let r = self.real_radius_bound(&x, work);
                    if r.cmp(&Dyadic::pow2(-(prec as i64))) == Ordering::Less {
                        out.push(RootDisk { re: x.clone(), im: Dyadic::zero(), radius: r, is_real: true });
                        break;
                    }
                    x = self.newton_step_real(&x, work);
                }
            } else {
                let mut z = CDyadic { re: d.re.clone(), im: d.im.clone() };
                for _ in 0..(64 + prec) {
                    let r = self.radius_bound(&z, work);
                    if r.cmp(&Dyadic::pow2(-(prec as i64))) == Ordering::Less {
                        out.push(RootDisk { re: z.re.clone(), im: z.im.clone(), radius: r, is_real: false });
                        break;
                    }
                    z = self.newton_step(&z, work);
                }
            }
        }
        debug_assert_eq!(out.len(), self.degree);
        out
    }

    /// Certified upper bound < 1 on all conjugate moduli at the stored
    /// precision.
    pub fn conjugate_modulus_bound(&self) -> Dyadic {
        let prec = self.root_precision.max(PRECISION_BASE);
        let mut best = Dyadic::zero();
        for d in &self.roots[1..] {
            best = Dyadic::max(&best, &d.modulus_upper(prec));
        }
        best
    }

    // -- internals ----------------------------------------------------------

    fn newton_step(&self, z: &CDyadic, prec: u32) -> CDyadic {
        let g = eval_poly_c(&self.coeffs, z);
        let dg = eval_poly_c(&self.dcoeffs, z);
        z.sub(&g.div_approx(&dg, prec)).round(prec)
    }

    fn newton_step_real(&self, x: &Dyadic, prec: u32) -> Dyadic {
        let g = eval_poly_real(&self.coeffs, x);
        let dg = eval_poly_real(&self.dcoeffs, x);
        x.sub(&g.div(&dg, prec, Round::Down)).round(prec, Round::Down)
    }

    /// Upper bound on the distance from z to the nearest root:
    /// m · |g(z)| / |g'(z)|.
    fn radius_bound(&self, z: &CDyadic, prec: u32) -> Dyadic {
        let g = eval_poly_c(&self.coeffs, z);
        let dg = eval_poly_c(&self.dcoeffs, z);
        let num = g.abs_up(prec).mul_i64(self.degree as i64);
        let den = dg.abs_down(prec);
        if den.is_zero() {
            return Dyadic::from_int(i64::MAX);
        }
        num.div(&den, prec, Round::Up)
    }

    fn real_radius_bound(&self, x: &Dyadic, prec: u32) -> Dyadic {
        let g = eval_poly_real(&self.coeffs, x).abs();
        let dg = eval_poly_real(&self.dcoeffs, x).abs();
        if dg.is_zero() {
            return Dyadic::from_int(i64::MAX);
        }
        g.mul_i64(self.degree as i64).div(&dg, prec, Round::Up)
    }

    /// Polish all roots at the given precision and certify pairwise-disjoint
    /// disks. None if certification fails at this precision.
    fn isolate_roots(&self, prec: u32) -> Option<Vec<RootDisk>> {
        let m = self.degree;
        let work = prec + 32;
        let seeds = durand_kerner_seeds(&self.coeffs);
        // classify seeds into real candidates and complex upper-half ones
        let mut disks: Vec<RootDisk> = Vec::with_capacity(m);
        let mut used = vec![false; m];
        for i in 0..m {
            if used[i] {
                continue;
            }
            let s = seeds[i];
            let scale = 1.0 + if fabs(s.re) > 1.0 { fabs(s.re) } else { 1.0 };
            if fabs(s.im) < 1e-9 * scale {
                used[i] = true;
                let mut x = f64_to_dyadic(s.re);
                let mut r = Dyadic::from_int(i64::MAX);
                for _ in 0..(64 + prec) {
                    r = self.real_radius_bound(&x, work);
                    if r.cmp(&Dyadic::pow2(-(prec as i64 / 2))) == Ordering::Less {
                        break;
                    }
                    x = self.newton_step_real(&x, work);
                }
                disks.push(RootDisk { re: x, im: Dyadic::zero(), radius: r, is_real: true });
            } else {
                // find the conjugate partner
                let mut partner = None;
                for j in (i + 1)..m {
                    if used[j] {
                        continue;
                    }
                    let t = seeds[j];
                    if fabs(t.re - s.re) < 1e-6 * scale && fabs(t.im + s.im) < 1e-6 * scale {
                        partner = Some(j);
                        break;
                    }
                }
                let j = partner?;
                used[i] = true;
                used[j] = true;
                let mut z = CDyadic { re: f64_to_dyadic(s.re), im: f64_to_dyadic(fabs(s.im)) };
                let mut r = Dyadic::from_int(i64::MAX);
                for _ in 0..(64 + prec) {
                    r = self.radius_bound(&z, work);
                    if r.cmp(&Dyadic::pow2(-(prec as i64 / 2))) == Ordering::Less {
                        break;
                    }
                    z = self.newton_step(&z, work);
                }
                disks.push(RootDisk { re: z.re.clone(), im: z.im.clone(), radius: r.clone(), is_real: false });
                disks.push(RootDisk { re: z.re, im: z.im.neg(), radius: r, is_real: false });
            }
        }
        if disks.len() != m {
            return None;
        }
        // pairwise disjoint?
        for i in 0..m {
            for j in (i + 1)..m {
                let dre = disks[i].re.sub(&disks[j].re);
                let dim = disks[i].im.sub(&disks[j].im);
                let dist = dre.mul(&dre).add(&dim.mul(&dim)).sqrt(work, Round::Down);
                let rsum = disks[i].radius.add(&disks[j].radius);
                if dist.cmp(&rsum) != Ordering::Greater {
                    return None;
                }
            }
        }
        Some(disks)
    }

    /// Subset-product irreducibility test at the given disks/precision.
    /// Some(Ok) = certified irreducible, Some(Err) = certified reducible,
    /// None = intervals too wide, escalate.
    fn irreducible_at(&self, disks: &[RootDisk], prec: u32) -> Option<Result<()>> {
        let m = self.degree;
        // interval rectangle per root
        let rects: Vec<(CertifiedInterval, CertifiedInterval)> = disks
            .iter()
            .map(|d| {
                (
                    CertifiedInterval::new(d.re.sub(&d.radius), d.re.add(&d.radius), prec),
                    CertifiedInterval::new(d.im.sub(&d.radius), d.im.add(&d.radius), prec),
                )
            })
            .collect();
        let half = Dyadic::pow2(-1);
        for mask in 1u32..((1u32 << m) - 1) {
            // coefficients of prod_{i in mask} (x - z_i) in interval arithmetic
            let mut coeffs: Vec<(CertifiedInterval, CertifiedInterval)> =
                vec![(CertifiedInterval::point(Dyadic::one(), prec), CertifiedInterval::zero(prec))];
            for (i, rect) in rects.iter().enumerate() {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let mut next = vec![
                    (CertifiedInterval::zero(prec), CertifiedInterval::zero(prec));
                    coeffs.len() + 1
                ];
                for (j, (cr, ci)) in coeffs.iter().enumerate() {
                    // next[j] += coeffs[j] (shift by x)
                    next[j].0 = next[j].0.add(cr);
                    next[j].1 = next[j].1.add(ci);
                    // next[j+1] -= coeffs[j] * z
                    let pr = cr.mul(&rect.0).sub(&ci.mul(&rect.1));
                    let pi = cr.mul(&rect.1).add(&ci.mul(&rect.0));
                    next[j + 1].0 = next[j + 1].0.sub(&pr);
                    next[j + 1].1 = next[j + 1].1.sub(&pi);
                }
                coeffs = next;
            }
            // candidate integer coefficients
            let mut candidate: Vec<BigInt> = Vec::with_capacity(coeffs.len());
            let mut viable = true;
            for (cr, ci) in &coeffs[..] {
                if cr.width().cmp(&half) != Ordering::Less || ci.width().cmp(&half) != Ordering::Less {
                    return None; // too wide to decide; escalate precision
                }
                if !ci.contains_zero() {
                    viable = false;
                    break;
                }
                // unique integer within cr, if any
                let f_lo = cr.lo().floor();
                let f_hi = cr.hi().floor();
                let k = if f_lo == f_hi {
                    f_lo
                } else {
                    // candidate integer is f_hi iff it's inside
                    f_hi
                };
                let kd = Dyadic::from_bigint(k.clone());
                if cr.lo().cmp(&kd) == Ordering::Greater || cr.hi().cmp(&kd) == Ordering::Less {
                    viable = false;
                    break;
                }
                candidate.push(k);
            }
            if !viable || !candidate[0].is_one() {
                continue;
            }
            if let Some(_q) = divide_exact(&self.coeffs, &candidate) {
                let h: Vec<String> = candidate.iter().map(|c| c.to_string()).collect();
                return Some(Err(Error::Reducible(format!(
                    "integer factor with coefficients [{}]",
                    h.join(",")
                ))));
            }
        }
        Some(Ok(()))
    }

    /// NotPisot for irreducible self-reciprocal polynomials (these have roots
    /// paired z ↔ 1/z, so either roots on the unit circle or a second root
    /// outside it), except the quadratic x^2 - kx + 1, |k| ≥ 3, whose pair is
    /// (β, 1/β) itself.
    fn reject_self_reciprocal(&self) -> Option<Error> {
        let c = &self.coeffs;
        let n = c.len();
        let palin = (0..n).all(|i| c[i] == c[n - 1 - i]);
        let anti = (0..n).all(|i| c[i] == -&c[n - 1 - i]);
        if !(palin || anti) {
            return None;
        }
        if self.degree == 2 {
            // x^2 - k1 x + 1: real roots iff k1^2 > 4; the reciprocal pair is
            // (β, 1/β), which is fine when k1 ≥ 3.
            let k1 = &self.rec[0];
            let four = BigInt::from(4);
            if k1 * k1 > four {
                return None; // generic certification decides sign of dominant root
            }
            return Some(Error::NotPisot("both roots on the unit circle".into()));
        }
        Some(Error::NotPisot(
            "self-reciprocal polynomial: roots pair z ↔ 1/z, so conjugates cannot all lie inside the unit circle"
                .into(),
        ))
    }

    /// Classify disks against the unit circle. Some(res) = decided; None =
    /// some disk straddles the circle at this precision.
    fn classify_disks(&self, disks: &[RootDisk], prec: u32) -> Option<Result<PisotCertificate>> {
        let one = Dyadic::one();
        let mut outside: Vec<usize> = Vec::new();
        let mut bound = Dyadic::zero();
        for (i, d) in disks.iter().enumerate() {
            let up = d.modulus_upper(prec);
            let down = d.modulus_lower(prec);
            if up.cmp(&one) == Ordering::Less {
                bound = Dyadic::max(&bound, &up);
            } else if down.cmp(&one) == Ordering::Greater {
                outside.push(i);
            } else {
                return None;
            }
        }
        if outside.len() != 1 {
            return Some(Err(Error::NotPisot(format!(
                "{} roots outside the unit circle",
                outside.len()
            ))));
        }
        let d = &disks[outside[0]];
        if !d.is_real {
            // exactly one root outside is necessarily real; a complex-marked
            // disk here means the seed classification was off
            return None;
        }
        if d.re.sub(&d.radius).cmp(&one) != Ordering::Greater {
            return Some(Err(Error::NotPisot(format!(
                "dominant real root ≈ {} is not > 1",
                d.re.to_decimal(6)
            ))));
        }
        let mut conjugates: Vec<RootDisk> = Vec::with_capacity(disks.len() - 1);
        for (i, dd) in disks.iter().enumerate() {
            if i != outside[0] {
                conjugates.push(dd.clone());
            }
        }
        Some(Ok(PisotCertificate {
            dominant: d.clone(),
            conjugates,
            conjugate_modulus_bound: bound,
            precision_bits: prec,
        }))
    }
}

fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    let n = coeffs.len() - 1; // degree
    (0..n).map(|i| &coeffs[i] * BigInt::from((n - i) as i64)).collect()
}

fn f64_to_dyadic(x: f64) -> Dyadic {
    // exact conversion via scaled integer
    let scaled = x * pow2f(52);
    Dyadic::new(BigInt::from(scaled as i128), -52)
}

fn pow2f(k: i32) -> f64 {
    let mut v = 1.0f64;
    for _ in 0..k {
        v *= 2.0;
    }
    v
}
