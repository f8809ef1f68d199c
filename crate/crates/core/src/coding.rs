//! Arithmetic codings of the companion toral automorphism.
//!
//! The codings map digit sequences to the torus ℝ^m/ℤ^m along the unstable
//! eigenvector t = (1, β^{-1}, …, β^{-m+1}): a sequence finite to the left
//! has exact scalar value v ∈ ℚ(β) and maps to v·ξ·t mod ℤ^m (ξ = ξ₀ for
//! the bijective coding, ξ = 1 for the classical one). Purely periodic
//! two-sided sequences are handled as limits of left truncations with a
//! certified geometric tail bound, so every distance here is an enclosure.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algnum::AlgebraicNumber;
use crate::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use crate::interval::CertifiedInterval;
use crate::lattice::{self};
use crate::matrix::IntegerMatrix;
use crate::numeration::BetaExpansion;
use crate::poly::PisotPolynomial;
use crate::symbolic::{truncated_value, PeriodicWord, SymbolicGroup};

/// Companion matrix of g: first row k₁…k_m, subdiagonal 1s. Its action on
/// the torus is the automorphism being coded; det = ±1.
pub fn companion_matrix(field: &PisotPolynomial) -> IntegerMatrix {
    let m = field.degree();
    let mut out = IntegerMatrix::zero(m, m);
    for (j, k) in field.recurrence_coeffs().iter().enumerate() {
        out[(0, j)] = k.clone();
    }
    for i in 1..m {
        out[(i, i - 1)] = BigInt::from(1);
    }
    out
}

/// The integer endomorphism A = Σ a_k M^k with a_k the power-basis
/// coefficients of g'(β); satisfies |det A| = |D| (checked).
pub fn endomorphism_matrix(field: &PisotPolynomial) -> Result<IntegerMatrix> {
    let m = companion_matrix(field);
    let coeffs = field.derivative_power_coeffs();
    let n = field.degree();
    let mut acc = IntegerMatrix::zero(n, n);
    let mut pow = IntegerMatrix::identity(n);
    for (k, a) in coeffs.iter().enumerate() {
        if !a.is_zero() {
            acc = acc.add(&pow.scale(a));
        }
        if k + 1 < coeffs.len() {
            pow = pow.mul(&m);
        }
    }
    let det_a = acc.determinant();
    let disc = lattice::trace_matrix(field).determinant();
    if det_a.abs() != disc.abs() {
        return Err(Error::DeterminantMismatch(format!(
            "|det A| = {} but |D| = {}",
            det_a.abs(),
            disc.abs()
        )));
    }
    Ok(acc)
}

/// Which homoclinic scaling the coding uses: ξ₀ (the fundamental point t₀)
/// or 1 (the point t).
#[derive(Debug, Clone)]
pub struct CodingMapSpec {
    field: Arc<PisotPolynomial>,
    scaling: AlgebraicNumber,
}

impl CodingMapSpec {
    /// The coding along t₀ = ξ₀·(1, β^{-1}, …): one-to-one off a null set.
    pub fn fundamental(field: &Arc<PisotPolynomial>) -> CodingMapSpec {
        CodingMapSpec { field: field.clone(), scaling: lattice::xi0(field) }
    }

    /// The coding along t = (1, β^{-1}, …): |D|-to-one with kernel the
    /// symbolic group.
    pub fn unit(field: &Arc<PisotPolynomial>) -> CodingMapSpec {
        CodingMapSpec { field: field.clone(), scaling: AlgebraicNumber::one(field) }
    }

    pub fn scaling(&self) -> &AlgebraicNumber {
        &self.scaling
    }

    pub fn field(&self) -> &Arc<PisotPolynomial> {
        &self.field
    }

    /// Coordinates of v·ξ·(1, β^{-1}, …, β^{-m+1}) as exact field elements.
    fn coords(&self, v: &AlgebraicNumber) -> Result<Vec<AlgebraicNumber>> {
        let m = self.field.degree();
        let mut out = Vec::with_capacity(m);
        let mut cur = v.checked_mul(&self.scaling)?;
        for i in 0..m {
            out.push(cur.clone());
            if i + 1 < m {
                cur = cur.mul_beta_inv();
            }
        }
        Ok(out)
    }
}

/// A torus point as certified coordinate enclosures (real representatives;
/// all metric queries are taken mod ℤ per coordinate).
#[derive(Debug, Clone)]
pub struct TorusPoint {
    coords: Vec<CertifiedInterval>,
}

impl TorusPoint {
    pub fn coords(&self) -> &[CertifiedInterval] {
        &self.coords
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    /// Sup-metric distance to the lattice ℤ^m (distance to the origin on the
    /// torus), as an enclosure.
    pub fn dist_to_zero(&self) -> CertifiedInterval {
        let mut lo = Dyadic::zero();
        let mut hi = Dyadic::zero();
        for (i, c) in self.coords.iter().enumerate() {
            let d = c.dist_to_integers();
            if i == 0 {
                lo = d.lo().clone();
                hi = d.hi().clone();
            } else {
                lo = Dyadic::max(&lo, d.lo());
                hi = Dyadic::max(&hi, d.hi());
            }
        }
        CertifiedInterval::new(lo, hi, self.coords.first().map(|c| c.precision()).unwrap_or(64))
    }

    /// Sup-metric torus distance to another point.
    pub fn dist_to(&self, other: &TorusPoint) -> CertifiedInterval {
        assert_eq!(self.dimension(), other.dimension());
        let diff = TorusPoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        };
        diff.dist_to_zero()
    }

    /// Image under an integer matrix (the lattice is preserved, so this is
    /// well defined on the torus).
    pub fn apply(&self, m: &IntegerMatrix) -> TorusPoint {
        let prec = self.coords.first().map(|c| c.precision()).unwrap_or(64);
        let n = m.rows();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = CertifiedInterval::zero(prec);
            for j in 0..m.cols() {
                let e = &m[(i, j)];
                if e.is_zero() {
                    continue;
                }
                let scaled = self.coords[j]
                    .mul(&CertifiedInterval::point(Dyadic::from_bigint(e.clone()), prec));
                acc = acc.add(&scaled);
            }
            out.push(acc);
        }
        TorusPoint { coords: out }
    }
}

/// φ of a value: the image of any sequence finite to the left whose digits
/// sum to v (the series converges absolutely in ℝ^m to v·ξ·t).
pub fn phi_value(spec: &CodingMapSpec, v: &AlgebraicNumber, precision: u32) -> Result<TorusPoint> {
    let coords = spec
        .coords(v)?
        .into_iter()
        .map(|c| c.evaluate(precision))
        .collect();
    Ok(TorusPoint { coords })
}

/// φ of an eventually periodic expansion (finite to the left): exact scalar,
/// then coordinate enclosures.
pub fn phi_expansion(spec: &CodingMapSpec, e: &BetaExpansion, precision: u32) -> Result<TorusPoint> {
    let v = crate::numeration::evaluate_expansion(e);
    phi_value(spec, &v, precision)
}

/// φ of a purely periodic two-sided sequence: the limit of its left
/// truncations. Computed at a finite truncation depth with a certified
/// geometric bound on the omitted tail, which widens every coordinate.
pub fn phi_periodic(spec: &CodingMapSpec, w: &PeriodicWord, precision: u32) -> Result<TorusPoint> {
    if w.is_zero() {
        return phi_value(spec, &AlgebraicNumber::zero(&spec.field), precision);
    }
    let field = &spec.field;
    let m = field.degree();
    let prec_work = precision + 16;

    // certified bound ‖ξ·d·β^{q}‖ ≤ d·C·λ^{q}, q ≥ 0, via the conjugate
    // embeddings of the scaling
    let lambda = field.conjugate_modulus_bound();
    let c_bound = conjugate_sum_bound(field, &spec.scaling, prec_work);
    let d_max = Dyadic::from_int(*w.digits().iter().max().unwrap() as i64);
    let one_minus_lambda = Dyadic::one().sub(&lambda);
    debug_assert!(one_minus_lambda.is_positive());

    let tol = Dyadic::pow2(-(precision as i64) - 4);
    let mut n = 2 * m + 16;
    loop {
        // tail over positions -k, k > n: Σ d·C·λ^{k+1-i} ≤ d·C·λ^{n+2-m}/(1-λ)
        let q = (n + 2).saturating_sub(m) as u32;
        let tail = d_max
            .mul(&c_bound)
            .mul(&pow_up(&lambda, q, prec_work))
            .div(&one_minus_lambda, prec_work, Round::Up);
        if tail.cmp(&tol) == Ordering::Less {
            let v = truncated_value(field, w, n);
            let point = phi_value(spec, &v, precision)?;
            let coords = point.coords.into_iter().map(|c| c.widen(&tail)).collect();
            return Ok(TorusPoint { coords });
        }
        n *= 2;
        if n > 1 << 24 {
            return Err(Error::PrecisionCapExceeded);
        }
    }
}

/// Upper bound on the sum of |conjugate embeddings| of a (excluding the
/// dominant one).
fn conjugate_sum_bound(field: &PisotPolynomial, a: &AlgebraicNumber, prec: u32) -> Dyadic {
    let roots = field.roots();
    let mut sum = Dyadic::zero();
    for d in &roots[1..] {
        // |a(β_l)| ≤ Σ |c_j|·(|β_l| upper)^j
        let mod_up = d.modulus_upper(prec);
        let mut term = Dyadic::zero();
        let mut pw = Dyadic::one();
        for c in a.coeffs() {
            if !c.is_zero() {
                let cd = Dyadic::from_ratio(&c.numer().abs(), c.denom(), prec, Round::Up);
                term = term.add(&cd.mul(&pw));
            }
            pw = pw.mul(&mod_up).round(prec, Round::Up);
        }
        sum = sum.add(&term);
    }
    sum
}

fn pow_up(x: &Dyadic, e: u32, prec: u32) -> Dyadic {
    let mut acc = Dyadic::one();
    for _ in 0..e {
        acc = acc.mul(x).round(prec, Round::Up);
    }
    acc
}

// ---------------------------------------------------------------------------
// verification suites
// ---------------------------------------------------------------------------

/// Outcome of the kernel check over an enumerated group.
#[derive(Debug, Clone)]
pub struct KernelReport {
    pub classes_checked: usize,
    pub tails_checked: usize,
    /// Number of classes mapping to the origin = |D|.
    pub kernel_cardinality: usize,
    /// Largest certified upper bound on the distance of a kernel tail image
    /// from the origin.
    pub max_origin_distance: Dyadic,
    /// Probe words outside the kernel: (word, certified distance lower bound).
    pub converse: Vec<(PeriodicWord, Dyadic)>,
    /// Probe words that turned out to lie in 𝒫_β after all.
    pub converse_in_kernel: Vec<PeriodicWord>,
}

/// Check that every enumerated tail word's value passes the exact 𝒫_β trace
/// test and maps within 2^{-precision/2} of the origin under the unit-scaled
/// coding; probe words failing the trace test must stay at least that far
/// away.
pub fn verify_kernel(
    group: &SymbolicGroup,
    precision: u32,
    converse_words: &[PeriodicWord],
) -> Result<KernelReport> {
    let field = group.field();
    let spec = CodingMapSpec::unit(field);
    let tol = Dyadic::pow2(-(precision as i64) / 2);
    let mut tails_checked = 0usize;
    let mut max_dist = Dyadic::zero();
    for class in group.classes() {
        for w in &class.tail_set {
            let v = w.value(field);
            if !lattice::is_in_pbeta(&v) {
                return Err(Error::KernelViolation(format!(
                    "tail {w} of class {:?} has value outside the dual lattice",
                    class.coords
                )));
            }
            let point = phi_periodic(&spec, w, precision)?;
            let dist = point.dist_to_zero();
            if dist.hi().cmp(&tol) != Ordering::Less {
                return Err(Error::KernelViolation(format!(
                    "tail {w} maps {} from the origin (tolerance 2^-{})",
                    dist.hi().to_decimal(8),
                    precision / 2
                )));
            }
            max_dist = Dyadic::max(&max_dist, dist.hi());
            tails_checked += 1;
        }
    }
    let mut converse = Vec::new();
    let mut converse_in_kernel = Vec::new();
    for w in converse_words {
        let v = w.value(field);
        if lattice::is_in_pbeta(&v) {
            converse_in_kernel.push(w.clone());
            continue;
        }
        let point = phi_periodic(&spec, w, precision)?;
        let dist = point.dist_to_zero();
        if dist.lo().cmp(&tol) != Ordering::Greater {
            return Err(Error::KernelViolation(format!(
                "non-kernel word {w} maps within tolerance of the origin (lower bound {})",
                dist.lo().to_decimal(8)
            )));
        }
        converse.push((w.clone(), dist.lo().clone()));
    }
    Ok(KernelReport {
        classes_checked: group.len(),
        tails_checked,
        kernel_cardinality: group.len(),
        max_origin_distance: max_dist,
        converse,
        converse_in_kernel,
    })
}

#[derive(Debug, Clone)]
pub struct SemiconjugacyReport {
    pub samples: usize,
    /// Largest certified upper bound on the torus distance between φ(τε) and
    /// M·φ(ε).
    pub max_error: Dyadic,
}

/// φ∘τ = M∘φ on finite-to-left samples: the shift is applied digitwise, the
/// matrix acts on coordinate enclosures, and the sup distance must stay
/// below 2^{-precision/2}.
pub fn verify_semiconjugacy(
    spec: &CodingMapSpec,
    samples: &[BetaExpansion],
    precision: u32,
) -> Result<SemiconjugacyReport> {
    let field = spec.field();
    let m = companion_matrix(field);
    let tol = Dyadic::pow2(-(precision as i64) / 2);
    let mut max_err = Dyadic::zero();
    for e in samples {
        let shifted = e.shift_left();
        let lhs = phi_expansion(spec, &shifted, precision)?;
        let rhs = phi_expansion(spec, e, precision)?.apply(&m);
        let dist = lhs.dist_to(&rhs);
        if dist.hi().cmp(&tol) != Ordering::Less {
            return Err(Error::SemiconjugacyViolation(format!(
                "sample {e} errs by {}",
                dist.hi().to_decimal(8)
            )));
        }
        max_err = Dyadic::max(&max_err, dist.hi());
    }
    Ok(SemiconjugacyReport { samples: samples.len(), max_error: max_err })
}

#[derive(Debug, Clone)]
pub struct FactorizationReport {
    pub samples: usize,
    /// Largest certified upper bound on the torus distance between φ(ε) and
    /// A·φ₀(ε).
    pub max_error: Dyadic,
}

/// φ = A·φ₀ on finite-to-left samples, A the determinant-±D endomorphism.
pub fn verify_factorization(
    field: &Arc<PisotPolynomial>,
    samples: &[BetaExpansion],
    precision: u32,
) -> Result<FactorizationReport> {
    let a = endomorphism_matrix(field)?;
    let fundamental = CodingMapSpec::fundamental(field);
    let unit = CodingMapSpec::unit(field);
    let tol = Dyadic::pow2(-(precision as i64) / 2);
    let mut max_err = Dyadic::zero();
    for e in samples {
        let lhs = phi_expansion(&unit, e, precision)?;
        let rhs = phi_expansion(&fundamental, e, precision)?.apply(&a);
        let dist = lhs.dist_to(&rhs);
        if dist.hi().cmp(&tol) != Ordering::Less {
            return Err(Error::FactorizationViolation(format!(
                "sample {e} errs by {}",
                dist.hi().to_decimal(8)
            )));
        }
        max_err = Dyadic::max(&max_err, dist.hi());
    }
    Ok(FactorizationReport { samples: samples.len(), max_error: max_err })
}

/// Render a dyadic error bound as `2^e` text for reports.
pub fn log2_bound_text(d: &Dyadic) -> String {
    match d.log2_floor() {
        None => String::from("0"),
        Some(e) => format!("2^{}", e + 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn field(text: &str) -> Arc<PisotPolynomial> {
        Arc::new(PisotPolynomial::parse(text).unwrap())
    }

    fn mat_text(m: &IntegerMatrix) -> String {
        format!("{m}")
    }

    #[test]
    fn companion_matrices() {
        let t = field("x^3-x^2-x-1");
        assert_eq!(mat_text(&companion_matrix(&t)), "[[1,1,1],[1,0,0],[0,1,0]]");
        assert_eq!(companion_matrix(&t).determinant().abs(), BigInt::from(1));
        let q = field("x^2-3x+1");
        assert_eq!(mat_text(&companion_matrix(&q)), "[[3,-1],[1,0]]");
        let s = field("x^3-x-1");
        assert_eq!(companion_matrix(&s).determinant().abs(), BigInt::from(1));
    }

    #[test]
    fn companion_eigenvector_exact() {
        // M·(1, β^{-1}, …) = β·(1, β^{-1}, …) exactly in ℚ(β)
        for poly in ["x^2-x-1", "x^3-x^2-x-1", "x^4-x^3-1"] {
            let f = field(poly);
            let m = companion_matrix(&f);
            let beta = AlgebraicNumber::beta(&f);
            let v: Vec<AlgebraicNumber> =
                (0..f.degree()).map(|i| AlgebraicNumber::beta_pow(&f, -(i as i64))).collect();
            for i in 0..f.degree() {
                let mut acc = AlgebraicNumber::zero(&f);
                for j in 0..f.degree() {
                    acc = acc + v[j].scale_int(&m[(i, j)]);
                }
                let expect = beta.checked_mul(&v[i]).unwrap();
                assert_eq!(acc, expect, "row {i} of {poly}");
            }
        }
    }

    #[test]
    fn endomorphism_examples() {
        // β² = kβ ± 1 → [[k, ±2], [2, -k]]
        let g = field("x^2-x-1");
        assert_eq!(mat_text(&endomorphism_matrix(&g).unwrap()), "[[1,2],[2,-1]]");
        let q = field("x^2-3x+1");
        assert_eq!(mat_text(&endomorphism_matrix(&q).unwrap()), "[[3,-2],[2,-3]]");
        // tribonacci
        let t = field("x^3-x^2-x-1");
        let a = endomorphism_matrix(&t).unwrap();
        assert_eq!(mat_text(&a), "[[3,4,1],[1,2,3],[3,-2,-1]]");
        assert_eq!(a.determinant(), BigInt::from(44));
        // x³-x-1: A = 3M² - I, |det| = 23
        let s = field("x^3-x-1");
        let a = endomorphism_matrix(&s).unwrap();
        let m = companion_matrix(&s);
        let expect = m.pow(2).scale(&BigInt::from(3)).add(&IntegerMatrix::identity(3).scale(&BigInt::from(-1)));
        assert_eq!(a, expect);
        assert_eq!(a.determinant().abs(), BigInt::from(23));
    }

    #[test]
    fn phi_points() {
        let g = field("x^2-x-1");
        let unit = CodingMapSpec::unit(&g);
        // zero sequence → origin, exactly
        let z = phi_value(&unit, &AlgebraicNumber::zero(&g), 96).unwrap();
        assert!(z.dist_to_zero().hi().is_zero());
        // golden kernel word 1000 → origin within 2^-48
        let w = PeriodicWord::new(vec![1, 0, 0, 0]);
        let p = phi_periodic(&unit, &w, 96).unwrap();
        let d = p.dist_to_zero();
        assert_eq!(d.hi().cmp(&Dyadic::pow2(-48)), Ordering::Less);
        // the period-5 word 10000 has value outside 𝒫_β and stays away
        let w5 = PeriodicWord::new(vec![1, 0, 0, 0, 0]);
        let v5 = w5.value(&g);
        assert!(!lattice::is_in_pbeta(&v5));
        let p5 = phi_periodic(&unit, &w5, 96).unwrap();
        assert_eq!(p5.dist_to_zero().lo().cmp(&Dyadic::pow2(-48)), Ordering::Greater);
    }

    #[test]
    fn kernel_over_golden_group() {
        let g = field("x^2-x-1");
        let grp = SymbolicGroup::enumerate(&g, 2, 10_000).unwrap();
        let probes = vec![PeriodicWord::new(vec![1, 0, 0, 0, 0])];
        let rep = verify_kernel(&grp, 128, &probes).unwrap();
        assert_eq!(rep.kernel_cardinality, 5);
        assert_eq!(rep.converse.len(), 1);
        assert_eq!(rep.max_origin_distance.cmp(&Dyadic::pow2(-64)), Ordering::Less);
    }

    #[test]
    fn semiconjugacy_and_factorization_basic() {
        let g = field("x^2-x-1");
        let unit = CodingMapSpec::unit(&g);
        let fundamental = CodingMapSpec::fundamental(&g);
        // a handful of fixed samples, including ones with integer digits
        let samples = vec![
            BetaExpansion::empty(&g),
            BetaExpansion::new(&g, vec![1], vec![0, 1], vec![]),
            BetaExpansion::new(&g, vec![1, 0, 0, 1], vec![0, 0, 1], vec![]),
            BetaExpansion::new(&g, vec![], vec![], vec![0, 1, 0]),
        ];
        let r = verify_semiconjugacy(&unit, &samples, 128).unwrap();
        assert_eq!(r.samples, 4);
        assert_eq!(r.max_error.cmp(&Dyadic::pow2(-64)), Ordering::Less);
        let r = verify_semiconjugacy(&fundamental, &samples, 128).unwrap();
        assert_eq!(r.max_error.cmp(&Dyadic::pow2(-64)), Ordering::Less);
        let r = verify_factorization(&g, &samples, 128).unwrap();
        assert_eq!(r.max_error.cmp(&Dyadic::pow2(-64)), Ordering::Less);
    }
}
