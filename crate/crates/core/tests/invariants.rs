//! Deterministic cross-checks between independent computation routes:
//! certified root numerics vs exact integer identities, dual lattice
//! presentations, symbolic group structure, and coding determinants.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pisot_core::coding;
use pisot_core::dyadic::{Dyadic, Round};
use pisot_core::interval::CertifiedInterval;

use pisot_core::symbolic::{self, SymbolicGroup};
use pisot_core::{lattice, AlgebraicNumber, PisotPolynomial};

fn field(text: &str) -> Arc<PisotPolynomial> {
    Arc::new(PisotPolynomial::parse(text).unwrap())
}

const TEST_POLYS: &[&str] = &["x^2-x-1", "x^2-2x-1", "x^3-x^2-x-1", "x^3-x-1", "x^4-x^3-1"];

// --- complex rectangle arithmetic over root enclosures (test-side oracle) --

#[derive(Clone)]
struct CRect {
    re: CertifiedInterval,
    im: CertifiedInterval,
}

impl CRect {
    fn from_disk(d: &pisot_core::RootDisk, prec: u32) -> CRect {
        CRect {
            re: CertifiedInterval::new(d.re.sub(&d.radius), d.re.add(&d.radius), prec),
            im: CertifiedInterval::new(d.im.sub(&d.radius), d.im.add(&d.radius), prec),
        }
    }

    fn one(prec: u32) -> CRect {
        CRect {
            re: CertifiedInterval::point(Dyadic::one(), prec),
            im: CertifiedInterval::zero(prec),
        }
    }

    fn mul(&self, o: &CRect) -> CRect {
        CRect {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    fn add(&self, o: &CRect) -> CRect {
        CRect { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    fn sub(&self, o: &CRect) -> CRect {
        CRect { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    fn contains_int(&self, n: &BigInt) -> bool {
        let nd = Dyadic::from_bigint(n.clone());
        self.re.lo().cmp(&nd) != Ordering::Greater
            && self.re.hi().cmp(&nd) != Ordering::Less
            && self.im.contains_zero()
    }
}

#[test]
fn vieta_sum_and_product_of_roots() {
    for poly in TEST_POLYS {
        let f = field(poly);
        let prec = 96;
        let roots = f.refined_roots(64);
        let rects: Vec<CRect> = roots.iter().map(|d| CRect::from_disk(d, prec)).collect();
        // Σ roots = k1
        let mut sum = rects[0].clone();
        for r in &rects[1..] {
            sum = sum.add(r);
        }
        let k1 = &f.recurrence_coeffs()[0];
        assert!(sum.contains_int(k1), "{poly}: root sum must enclose k1");
        // Π roots = (-1)^{m+1}·k_m
        let mut prod = CRect::one(prec);
        for r in &rects {
            prod = prod.mul(r);
        }
        let m = f.degree();
        let km = &f.recurrence_coeffs()[m - 1];
        let expect = if m % 2 == 0 { -km } else { km.clone() };
        assert!(prod.contains_int(&expect), "{poly}: root product must enclose ±k_m");
    }
}

#[test]
fn trace_powers_match_certified_root_powers() {
    // Newton's identities vs numeric sums of root powers, width < 1/2
    for poly in TEST_POLYS {
        let f = field(poly);
        let m = f.degree();
        let prec = 128;
        let roots = f.refined_roots(96);
        let traces = f.trace_powers(2 * m - 1);
        for j in 0..=(2 * m - 1) {
            let mut sum = CRect {
                re: CertifiedInterval::zero(prec),
                im: CertifiedInterval::zero(prec),
            };
            for d in &roots {
                let r = CRect::from_disk(d, prec);
                let mut pw = CRect::one(prec);
                for _ in 0..j {
                    pw = pw.mul(&r);
                }
                sum = sum.add(&pw);
            }
            let width = sum.re.width();
            assert!(
                width.cmp(&Dyadic::from_ratio(&BigInt::one(), &BigInt::from(2), 32, Round::Down))
                    == Ordering::Less,
                "{poly}: power-sum enclosure too wide at j={j}"
            );
            assert!(sum.contains_int(&traces[j]), "{poly}: Tr(β^{j}) mismatch");
        }
    }
}

#[test]
fn discriminant_matches_root_difference_product() {
    // det M_β encloses the squared Vandermonde product Π_{i<j}(β_i - β_j)²
    for poly in TEST_POLYS {
        let f = field(poly);
        let prec = 128;
        let roots = f.refined_roots(96);
        let rects: Vec<CRect> = roots.iter().map(|d| CRect::from_disk(d, prec)).collect();
        let mut vandermonde = CRect::one(prec);
        for i in 0..rects.len() {
            for j in (i + 1)..rects.len() {
                vandermonde = vandermonde.mul(&rects[i].sub(&rects[j]));
            }
        }
        let prod = vandermonde.mul(&vandermonde);
        let d = lattice::discriminant(&f);
        assert!(prod.contains_int(&d), "{poly}: discriminant enclosure");
    }
}

#[test]
fn lemma_quantities_agree() {
    // Π factors = |D|, largest factor = d, d·M^{-1} integral, (d-1)·M^{-1} not
    for poly in TEST_POLYS {
        let f = field(poly);
        let gs = lattice::group_structure(&f).unwrap();
        let prod: BigInt = gs.invariant_factors.iter().product();
        assert_eq!(prod, gs.discriminant.abs());
        assert_eq!(gs.invariant_factors.last().unwrap(), &gs.d);

        let mb = lattice::trace_matrix(&f);
        let adj = mb.adjugate();
        let dabs = gs.discriminant.abs();
        let integral = |l: &BigInt| -> bool {
            (0..adj.rows()).all(|i| {
                (0..adj.cols()).all(|j| ((l * &adj[(i, j)]) % &dabs).is_zero())
            })
        };
        assert!(integral(&gs.d), "{poly}: d·M^-1 must be integral");
        if gs.d > BigInt::one() {
            let dm1 = &gs.d - 1;
            assert!(!integral(&dm1), "{poly}: (d-1)·M^-1 must not be integral");
        }
    }
}

#[test]
fn snf_presentations_agree() {
    for poly in TEST_POLYS {
        let f = field(poly);
        let mb = lattice::trace_matrix(&f);
        let w = lattice::multiplication_matrix(&f, &lattice::gprime(&f));
        assert_eq!(
            mb.smith_normal_form().invariant_factors(),
            w.smith_normal_form().invariant_factors(),
            "{poly}"
        );
        // |det W| = |D| (the norm of g'(β) up to sign)
        assert_eq!(w.determinant().abs(), mb.determinant().abs(), "{poly}");
    }
}

#[test]
fn membership_routes_agree() {
    // the trace characterization of 𝒫_β and the ξ₀·ℤ[β] presentation must
    // accept exactly the same elements
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for poly in TEST_POLYS {
        let f = field(poly);
        let gp = lattice::gprime(&f);
        for _ in 0..120 {
            let m = f.degree();
            let coeffs: Vec<BigRational> = (0..m)
                .map(|_| {
                    BigRational::new(BigInt::from(rng.gen_range(-40i64..=40)), BigInt::from(rng.gen_range(1i64..=15)))
                })
                .collect();
            let a = AlgebraicNumber::new(&f, coeffs);
            let via_trace = lattice::is_in_pbeta(&a);
            let via_product = lattice::is_in_zbeta(&a.checked_mul(&gp).unwrap());
            assert_eq!(via_trace, via_product, "{poly}: {a}");
        }
    }
}

#[test]
fn coset_representatives_partition() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for poly in ["x^2-x-1", "x^2-2x-1", "x^3-x-1"] {
        let f = field(poly);
        let ix = lattice::CosetIndexer::new(&f);
        let reps = ix.representatives();
        // pairwise inequivalent
        for i in 0..reps.len() {
            for j in (i + 1)..reps.len() {
                assert!(!lattice::coset_equal(&reps[i], &reps[j]).unwrap());
            }
        }
        // random elements of 𝒫_β match exactly one representative
        for _ in 0..40 {
            let m = f.degree();
            let z = AlgebraicNumber::new(
                &f,
                (0..m)
                    .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-50i64..=50))))
                    .collect(),
            );
            let xi = lattice::xi0(&f).checked_mul(&z).unwrap();
            let matches = reps
                .iter()
                .filter(|r| lattice::coset_equal(&xi, r).unwrap())
                .count();
            assert_eq!(matches, 1, "{poly}");
            // and the indexer agrees with the scan
            let idx = ix.index_of(&xi).unwrap();
            assert!(lattice::coset_equal(&xi, &reps[idx]).unwrap());
        }
    }
}

#[test]
fn symbolic_group_injectivity_and_exponent() {
    for poly in ["x^2-x-1", "x^2-2x-1", "x^3-x^2-x-1", "x^3-x-1"] {
        let f = field(poly);
        let grp = SymbolicGroup::enumerate(&f, 2, 100_000).unwrap();
        let d = lattice::group_structure(&f).unwrap().d.to_u64().unwrap();
        // distinct classes never share a two-sided tail
        for i in 0..grp.len() {
            for j in (i + 1)..grp.len() {
                let a = &grp.classes()[i].tail_set;
                let b = &grp.classes()[j].tail_set;
                assert!(a.intersection(b).next().is_none(), "{poly}: classes {i},{j} share a tail");
            }
        }
        // exponent: d·c = zero for every class
        for c in grp.classes() {
            let mut acc = grp.zero_class();
            for _ in 0..d {
                acc = grp.class_add(acc, c).unwrap();
            }
            assert!(acc.coords.iter().all(|x| x.is_zero()), "{poly}");
            // element order divides d and matches the stored order
            assert!((BigInt::from(d) % &c.order).is_zero());
        }
        // kernel values: every tail's closed form lies in 𝒫_β
        for c in grp.classes() {
            for w in &c.tail_set {
                assert!(lattice::is_in_pbeta(&w.value(&f)), "{poly}: {w}");
            }
        }
    }
}

#[test]
fn shift_equivariance_of_tails() {
    for poly in ["x^2-x-1", "x^3-x^2-x-1"] {
        let f = field(poly);
        let grp = SymbolicGroup::enumerate(&f, 2, 100_000).unwrap();
        for c in grp.classes() {
            let shifted = grp.class_shift(c).unwrap();
            // the rotated canonical tail must land in the shifted class's set
            let rot = c.canonical_tail.rotate_left(1);
            assert!(
                shifted.tail_set.contains(&rot) || rot == shifted.canonical_tail || {
                    // coset check as the authoritative fallback
                    lattice::coset_equal(&rot.value(&f), &shifted.representative).unwrap()
                },
                "{poly}"
            );
        }
    }
}

#[test]
fn companion_determinant_sign() {
    for poly in TEST_POLYS {
        let f = field(poly);
        let det = coding::companion_matrix(&f).determinant();
        let m = f.degree();
        let km = &f.recurrence_coeffs()[m - 1];
        let expect = if (m - 1) % 2 == 0 { km.clone() } else { -km };
        assert_eq!(det, expect, "{poly}");
    }
}

#[test]
fn endomorphism_determinant_pairs_with_xi0() {
    // |det A| = |D| and det(mult-by-ξ₀) = 1/det(mult-by-g'(β)), so the
    // product of determinants is ±1
    for poly in TEST_POLYS {
        let f = field(poly);
        let a = coding::endomorphism_matrix(&f).unwrap();
        let w = lattice::multiplication_matrix(&f, &lattice::gprime(&f));
        assert_eq!(a.determinant().abs(), w.determinant().abs(), "{poly}");
        assert_eq!(a.determinant().abs(), lattice::discriminant(&f).abs(), "{poly}");
    }
}

#[test]
fn random_finitary_units_determinant_identity() {
    // descending-coefficient units of degree ≤ 5: |det A| = |D| exactly
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = std::collections::BTreeSet::new();
    let mut tested = 0;
    while tested < 20 {
        let m = rng.gen_range(2..=5usize);
        let mut ks: Vec<i64> = Vec::with_capacity(m);
        let mut cur = rng.gen_range(1..=4i64);
        for _ in 0..m - 1 {
            ks.push(cur);
            cur = rng.gen_range(1..=cur);
        }
        ks.push(1);
        if !seen.insert(ks.clone()) {
            continue;
        }
        let mut coeffs = vec![BigInt::one()];
        coeffs.extend(ks.iter().map(|&k| BigInt::from(-k)));
        let f = Arc::new(PisotPolynomial::from_coeffs(coeffs).unwrap());
        let a = coding::endomorphism_matrix(&f).unwrap();
        assert_eq!(a.determinant().abs(), lattice::discriminant(&f).abs());
        tested += 1;
    }
}

#[test]
fn one_sided_numeric_summation_matches_exact_value() {
    // digitwise numeric summation Σ ε_k β^{-k} (partial sums + geometric tail
    // bound) encloses the exact closed-form value of a periodic word
    for poly in ["x^2-x-1", "x^3-x^2-x-1"] {
        let f = field(poly);
        let words: Vec<Vec<u64>> = match f.degree() {
            2 => vec![vec![1, 0, 0, 0], vec![0, 1, 0], vec![1, 0, 0]],
            _ => vec![vec![0, 0, 1, 0, 0, 0, 1, 1, 0, 0], vec![1, 0, 0]],
        };
        let prec = 128u32;
        let beta_iv = f.dominant_root(prec + 64);
        for word in words {
            let w = symbolic::PeriodicWord::new(word);
            let exact = w.value(&f).evaluate(prec);
            // numeric route: K terms plus tail bound d₁·β^{-K}/(1-β^{-1})
            let k_terms = 200usize;
            let mut acc = CertifiedInterval::zero(prec + 64);
            let one = CertifiedInterval::point(Dyadic::one(), prec + 64);
            let inv = one.div_int(&BigInt::one()); // identity; β^{-1} built below
            let _ = inv;
            // β^{-k} intervals by repeated division through 1/β ≥ enclosure
            let mut pw = CertifiedInterval::point(Dyadic::one(), prec + 64);
            for k in 1..=k_terms {
                // pw = β^{-(k-1)} → divide by β-interval: implement via
                // multiplication by reciprocal enclosure
                let recip = CertifiedInterval::new(
                    Dyadic::one().div(beta_iv.hi(), prec + 64, Round::Down),
                    Dyadic::one().div(beta_iv.lo(), prec + 64, Round::Up),
                    prec + 64,
                );
                pw = pw.mul(&recip);
                let d = w.digits()[(k - 1) % w.len()];
                if d > 0 {
                    acc = acc.add(&pw.mul(&CertifiedInterval::point(Dyadic::from_int(d as i64), prec + 64)));
                }
            }
            // tail: digits ≤ d₁, Σ_{k>K} d₁β^{-k} ≤ d₁·β^{-K}/(β-1) with β > 1
            let d1 = Dyadic::from_int(*w.digits().iter().max().unwrap() as i64 + 1);
            let tail = d1
                .mul(pw.hi())
                .div(&beta_iv.lo().sub(&Dyadic::one()), prec + 64, Round::Up);
            let numeric = acc.widen(&tail);
            // the two enclosures must overlap
            assert!(
                numeric.lo().cmp(exact.hi()) != Ordering::Greater
                    && exact.lo().cmp(numeric.hi()) != Ordering::Greater,
                "{poly}: numeric route disagrees with exact closed form"
            );
        }
    }
}
