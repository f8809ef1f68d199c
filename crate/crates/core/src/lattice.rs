//! The dual lattice 𝒫_β = (ℤ[β])* and the finite group 𝒫_β/ℤ[β].
//!
//! Two independent presentations are computed and must agree: the Smith
//! normal form of the trace matrix M_β and of the multiplication-by-g'(β)
//! matrix (which expresses ℤ[β] inside 𝒫_β = ξ₀·ℤ[β]). The group order is
//! |det M_β| = |discriminant|.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algnum::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::matrix::{IntegerMatrix, SmithDecomposition};
use crate::poly::PisotPolynomial;

/// Trace matrix (M_β)_{ij} = Tr(β^{i+j}), 0 ≤ i,j ≤ m-1. Symmetric.
pub fn trace_matrix(field: &PisotPolynomial) -> IntegerMatrix {
    let m = field.degree();
    let p = field.trace_powers(2 * m - 2);
    let mut out = IntegerMatrix::zero(m, m);
    for i in 0..m {
        for j in 0..m {
            out[(i, j)] = p[i + j].clone();
        }
    }
    out
}

/// Field discriminant D = det M_β (sign preserved).
pub fn discriminant(field: &PisotPolynomial) -> BigInt {
    trace_matrix(field).determinant()
}

/// g'(β) as an element of ℤ[β].
pub fn gprime(field: &Arc<PisotPolynomial>) -> AlgebraicNumber {
    let coeffs = field
        .derivative_power_coeffs()
        .into_iter()
        .map(num_rational::BigRational::from_integer)
        .collect();
    AlgebraicNumber::new(field, coeffs)
}

/// The generator ξ₀ = g'(β)^{-1} of 𝒫_β = ξ₀·ℤ[β]; lies outside ℤ[β].
pub fn xi0(field: &Arc<PisotPolynomial>) -> AlgebraicNumber {
    gprime(field).inverse().expect("g'(β) ≠ 0: roots are simple")
}

/// Matrix whose column j holds the power-basis coordinates of a·β^j.
/// Requires a ∈ ℤ[β] so all entries are integers.
pub fn multiplication_matrix(field: &Arc<PisotPolynomial>, a: &AlgebraicNumber) -> IntegerMatrix {
    let m = field.degree();
    let mut out = IntegerMatrix::zero(m, m);
    let mut cur = a.clone();
    for j in 0..m {
        for (i, c) in cur.coeffs().iter().enumerate() {
            assert!(c.denom().is_one(), "multiplication matrix needs integer coordinates");
            out[(i, j)] = c.numer().clone();
        }
        if j + 1 < m {
            cur = cur.mul_beta();
        }
    }
    out
}

/// Membership in ℤ[β]: all power-basis coefficients integral.
pub fn is_in_zbeta(a: &AlgebraicNumber) -> bool {
    a.has_integer_coeffs()
}

/// Membership in 𝒫_β by the trace characterization: Tr(a·β^j) ∈ ℤ for
/// j = 0..m-1 (these powers generate ℤ[β] over ℤ).
pub fn is_in_pbeta(a: &AlgebraicNumber) -> bool {
    let field = a.field().clone();
    let mut cur = a.clone();
    for _ in 0..field.degree() {
        if !cur.trace().denom().is_one() {
            return false;
        }
        cur = cur.mul_beta();
    }
    true
}

/// Same coset of ℤ[β] in 𝒫_β. Errors unless both arguments lie in 𝒫_β.
pub fn coset_equal(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<bool> {
    if !is_in_pbeta(a) || !is_in_pbeta(b) {
        return Err(Error::NotInPisotGroup);
    }
    Ok(is_in_zbeta(&a.checked_sub(b)?))
}

/// Structure report for 𝒫_β/ℤ[β].
#[derive(Debug, Clone)]
pub struct PisotGroupStructure {
    /// D = det M_β with sign.
    pub discriminant: BigInt,
    /// All m invariant factors, unit entries included, ascending.
    pub invariant_factors: Vec<BigInt>,
    /// d = min{l ≥ 1 : l·M_β^{-1} integral} = largest invariant factor.
    pub d: BigInt,
    pub is_cyclic: bool,
    /// Entries of D·M_β^{-1} are coprime (a sufficient cyclicity criterion).
    pub adjugate_coprime: bool,
    pub xi0: AlgebraicNumber,
}

/// Compute the group structure with its internal cross-checks.
pub fn group_structure(field: &Arc<PisotPolynomial>) -> Result<PisotGroupStructure> {
    let mb = trace_matrix(field);
    let disc = mb.determinant();
    let g = gprime(field);
    let w = multiplication_matrix(field, &g);

    let snf_w = w.smith_normal_form();
    let snf_m = mb.smith_normal_form();
    let factors = snf_w.invariant_factors();
    if factors != snf_m.invariant_factors() {
        return Err(Error::InternalInconsistency(format!(
            "SNF of the trace matrix {:?} disagrees with SNF of the g'(β) multiplication matrix {:?}",
            snf_m.invariant_factors(),
            factors
        )));
    }

    let product: BigInt = factors.iter().product();
    if product != disc.abs() {
        return Err(Error::InternalInconsistency(format!(
            "product of invariant factors {product} != |D| = {}",
            disc.abs()
        )));
    }

    // d by the direct definition: l·M_β^{-1} = l·adj/D integral
    let adj = mb.adjugate();
    let dabs = disc.abs();
    let mut d_direct = BigInt::one();
    let mut gcd_all = BigInt::zero();
    for i in 0..adj.rows() {
        for j in 0..adj.cols() {
            let e = adj[(i, j)].abs();
            gcd_all = gcd_all.gcd(&e);
            let need = &dabs / dabs.gcd(&e);
            d_direct = d_direct.lcm(&need);
        }
    }
    let d_largest = factors.last().cloned().unwrap_or_else(BigInt::one);
    if d_direct != d_largest {
        return Err(Error::InternalInconsistency(format!(
            "d from l·M_β^{{-1}} integrality = {d_direct}, largest invariant factor = {d_largest}"
        )));
    }

    let nontrivial = factors.iter().filter(|f| !f.is_one()).count();
    Ok(PisotGroupStructure {
        discriminant: disc,
        invariant_factors: factors,
        d: d_largest,
        is_cyclic: nontrivial <= 1,
        adjugate_coprime: gcd_all.is_one(),
        xi0: xi0(field),
    })
}

/// Coset bookkeeping for 𝒫_β/ℤ[β] built on the SNF of the
/// multiplication-by-g'(β) matrix: an element ξ = ξ₀·z maps to the tuple
/// (U·coords(z)) mod (s₁, …, s_m).
#[derive(Debug, Clone)]
pub struct CosetIndexer {
    field: Arc<PisotPolynomial>,
    xi0: AlgebraicNumber,
    gprime: AlgebraicNumber,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    factors: Vec<BigInt>,
}

impl CosetIndexer {
    pub fn new(field: &Arc<PisotPolynomial>) -> CosetIndexer {
        let g = gprime(field);
        let w = multiplication_matrix(field, &g);
        let SmithDecomposition { u, s, v: _ } = w.smith_normal_form();
        let det_u = u.determinant();
        debug_assert!(det_u.abs().is_one());
        // U^{-1} = adj(U)/det(U) = ±adj(U)
        let mut u_inv = u.adjugate();
        if det_u.is_negative() {
            u_inv = u_inv.scale(&-BigInt::one());
        }
        let factors = (0..s.rows()).map(|i| s[(i, i)].clone()).collect();
        CosetIndexer { field: field.clone(), xi0: xi0(field), gprime: g, u, u_inv, factors }
    }

    pub fn field(&self) -> &Arc<PisotPolynomial> {
        &self.field
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// Group order = Π invariant factors = |D|.
    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// SNF coordinate tuple of [ξ], each entry reduced into [0, sᵢ).
    pub fn coords_of(&self, xi: &AlgebraicNumber) -> Result<Vec<BigInt>> {
        let z = xi.checked_mul(&self.gprime)?;
        if !z.has_integer_coeffs() {
            return Err(Error::NotInPisotGroup);
        }
        let y: Vec<BigInt> = z.coeffs().iter().map(|c| c.numer().clone()).collect();
        let uy = self.u.mul_vec(&y);
        Ok(uy
            .into_iter()
            .zip(&self.factors)
            .map(|(v, s)| v.mod_floor(s))
            .collect())
    }

    /// Row-major linear index of a coordinate tuple.
    pub fn linear_index(&self, coords: &[BigInt]) -> usize {
        use num_traits::ToPrimitive;
        let mut idx = BigInt::zero();
        for (c, s) in coords.iter().zip(&self.factors) {
            idx = idx * s + c;
        }
        idx.to_usize().expect("group order fits in usize")
    }

    pub fn index_of(&self, xi: &AlgebraicNumber) -> Result<usize> {
        Ok(self.linear_index(&self.coords_of(xi)?))
    }

    /// Representative of the coset with the given SNF coordinates, reduced
    /// into [0, 1) by subtracting its floor.
    pub fn representative(&self, coords: &[BigInt]) -> AlgebraicNumber {
        let y = self.u_inv.mul_vec(coords);
        let mut z = AlgebraicNumber::zero(&self.field);
        let mut pw = AlgebraicNumber::one(&self.field);
        for c in &y {
            z = z + pw.scale_int(c);
            pw = pw.mul_beta();
        }
        let xi = self.xi0.checked_mul(&z).unwrap();
        xi.fract().expect("floor of an algebraic number is computable")
    }

    /// All |D| coset representatives in [0, 1), enumerated in row-major
    /// coordinate order (deterministic).
    pub fn representatives(&self) -> Vec<AlgebraicNumber> {
        let mut out = Vec::new();
        let mut coords: Vec<BigInt> = self.factors.iter().map(|_| BigInt::zero()).collect();
        loop {
            out.push(self.representative(&coords));
            // increment mixed-radix, last coordinate fastest
            let mut i = coords.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                coords[i] += 1;
                if coords[i] < self.factors[i] {
                    break;
                }
                coords[i] = BigInt::zero();
            }
        }
    }

    /// Componentwise sum of coordinate tuples mod (s₁, …, s_m) — the group
    /// law in SNF coordinates, used as the independent route for checking
    /// value-level coset addition.
    pub fn coords_add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((x, y), s)| (x + y).mod_floor(s))
            .collect()
    }

    pub fn coords_neg(&self, a: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(&self.factors).map(|(x, s)| (-x).mod_floor(s)).collect()
    }

    /// Order of the element with the given coordinates.
    pub fn element_order(&self, coords: &[BigInt]) -> BigInt {
        let mut ord = BigInt::one();
        for (c, s) in coords.iter().zip(&self.factors) {
            if c.is_zero() {
                continue;
            }
            let k = s / s.gcd(c);
            ord = ord.lcm(&k);
        }
        ord
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_traits::ToPrimitive;

    fn field(text: &str) -> Arc<PisotPolynomial> {
        Arc::new(PisotPolynomial::parse(text).unwrap())
    }

    fn mat_text(m: &IntegerMatrix) -> alloc::string::String {
        alloc::format!("{m}")
    }

    #[test]
    fn trace_matrices_match_paper() {
        let t = field("x^3-x^2-x-1");
        assert_eq!(mat_text(&trace_matrix(&t)), "[[3,1,3],[1,3,7],[3,7,11]]");
        let s = field("x^3-x-1");
        assert_eq!(mat_text(&trace_matrix(&s)), "[[3,0,2],[0,2,3],[2,3,2]]");
        let g = field("x^2-x-1");
        assert_eq!(mat_text(&trace_matrix(&g)), "[[2,1],[1,3]]");
        // β² = kβ + 1 gives [[2,k],[k,k²+2]]
        let q = field("x^2-4x-1");
        assert_eq!(mat_text(&trace_matrix(&q)), "[[2,4],[4,18]]");
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&field("x^3-x^2-x-1")), BigInt::from(-44));
        assert_eq!(discriminant(&field("x^3-x-1")), BigInt::from(-23));
        assert_eq!(discriminant(&field("x^2-x-1")), BigInt::from(5));
    }

    #[test]
    fn xi0_values() {
        use num_rational::BigRational;
        let t = field("x^3-x^2-x-1");
        let x = xi0(&t);
        let expect = AlgebraicNumber::from_num_den(
            &t,
            &[BigInt::from(1), BigInt::from(9), BigInt::from(-4)],
            &BigInt::from(22),
        )
        .unwrap();
        assert_eq!(x, expect);

        let g = field("x^2-x-1");
        let x = xi0(&g);
        let expect = AlgebraicNumber::from_num_den(&g, &[BigInt::from(-1), BigInt::from(2)], &BigInt::from(5)).unwrap();
        assert_eq!(x, expect);

        // x³-x-1: ξ₀ = (4 + 9β - 6β²)/23, the last column of M_β^{-1}
        let s = field("x^3-x-1");
        let x = xi0(&s);
        let expect = AlgebraicNumber::from_num_den(
            &s,
            &[BigInt::from(4), BigInt::from(9), BigInt::from(-6)],
            &BigInt::from(23),
        )
        .unwrap();
        assert_eq!(x, expect);
        // and ξ₀ · g'(β) = 1 exactly
        assert!(x.checked_mul(&gprime(&s)).unwrap().is_one());
        let _ = BigRational::zero();
    }

    #[test]
    fn group_structures() {
        let t = field("x^3-x^2-x-1");
        let gs = group_structure(&t).unwrap();
        let f: Vec<i64> = gs.invariant_factors.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(f, vec![1, 2, 22]);
        assert_eq!(gs.d, BigInt::from(22));
        assert!(!gs.is_cyclic);

        let s = field("x^3-x-1");
        let gs = group_structure(&s).unwrap();
        let f: Vec<i64> = gs.invariant_factors.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(f, vec![1, 1, 23]);
        assert!(gs.is_cyclic);
        assert!(gs.adjugate_coprime);
    }

    #[test]
    fn membership() {
        let t = field("x^3-x^2-x-1");
        let b2 = AlgebraicNumber::beta(&t).pow(2);
        assert!(is_in_zbeta(&b2));
        let x = xi0(&t);
        assert!(!is_in_zbeta(&x));
        assert!(is_in_pbeta(&x));
        assert!(is_in_zbeta(&AlgebraicNumber::zero(&t)));
        // ξ₀/2 in the golden field: Tr(β·ξ) = 1/2, not in 𝒫_β
        let g = field("x^2-x-1");
        let half = xi0(&g).scale(&num_rational::BigRational::new(BigInt::one(), BigInt::from(2)));
        assert!(!is_in_pbeta(&half));
    }

    #[test]
    fn coset_equality() {
        let t = field("x^3-x^2-x-1");
        let x = xi0(&t);
        let xp1 = x.clone() + AlgebraicNumber::one(&t);
        assert!(coset_equal(&x, &xp1).unwrap());
        let g = field("x^2-x-1");
        let xg = xi0(&g);
        let two_xg = xg.clone() + xg.clone();
        assert!(!coset_equal(&xg, &two_xg).unwrap());
        // argument outside 𝒫_β is refused
        let half = xg.scale(&num_rational::BigRational::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(coset_equal(&half, &xg).unwrap_err(), Error::NotInPisotGroup);
    }

    #[test]
    fn representatives_counts() {
        for (poly, n) in [("x^2-x-1", 5usize), ("x^3-x-1", 23), ("x^3-x^2-x-1", 44)] {
            let f = field(poly);
            let ix = CosetIndexer::new(&f);
            let reps = ix.representatives();
            assert_eq!(reps.len(), n);
            assert_eq!(ix.order().to_usize().unwrap(), n);
            // each representative indexes back to its own slot
            for (i, r) in reps.iter().enumerate() {
                assert_eq!(ix.index_of(r).unwrap(), i);
                // and lies in [0,1)
                assert!(r.sign().unwrap() >= 0);
                assert_eq!(r.floor().unwrap(), BigInt::zero());
            }
        }
    }
}
