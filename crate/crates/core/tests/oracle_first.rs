//! Library answers checked against exhaustive search over small fields.

use orenorm::central::{mclm, CentralPolynomial};
use orenorm::factor::{all_factorizations, is_irreducible, rough_factorize, IrreducibilityOptions, Verdict};
use orenorm::norm::{cofactor, reduced_norm};
use orenorm::oracle::{brute_factorizations, brute_irreducible, verify_claimed_factorization, OracleBudget};
use orenorm::skew::{FrobeniusTwist, SkewPolynomial, SkewRing};
use orenorm::verify::random_monic;
use orenorm::{Error, FieldElement, GaloisField, Gf};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring(p: u64, tower: &str) -> SkewRing<Gf> {
    SkewRing::<Gf>::new(&GaloisField::parse_tower(p, tower).unwrap(), FrobeniusTwist { power: 1 }).unwrap()
}

fn f4() -> SkewRing<Gf> {
    ring(2, "g^2+g+1")
}

fn f9() -> SkewRing<Gf> {
    ring(3, "g^2-g-1")
}

fn f8() -> SkewRing<Gf> {
    ring(2, "g^3+g+1")
}

/// Every monic polynomial of degree m over the ring's field with a nonzero
/// constant term.
fn all_monic(r: &SkewRing<Gf>, m: usize) -> Vec<SkewPolynomial<Gf>> {
    let elems = Gf::all_elements(r.field()).unwrap();
    let mut out = vec![Vec::new()];
    for i in 0..m {
        let mut next = Vec::new();
        for prefix in &out {
            for e in &elems {
                if i == 0 && e.is_zero() {
                    continue;
                }
                let mut v: Vec<Gf> = prefix.clone();
                v.push(e.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|mut v| {
            v.push(Gf::one(r.field()));
            r.poly(v)
        })
        .collect()
}

/// The least-degree monic central multiple, found by trying every monic
/// polynomial in x over F in order of degree.
fn brute_mclm(f: &SkewPolynomial<Gf>) -> usize {
    let r = f.ring();
    let s = r.field().degree() / r.n();
    let central: Vec<Gf> = Gf::all_elements(r.field()).unwrap().into_iter().filter(|a| r.field().in_subfield(a, s)).collect();
    for deg in 1.. {
        let mut coeff_lists = vec![Vec::new()];
        for _ in 0..deg {
            coeff_lists = coeff_lists
                .into_iter()
                .flat_map(|v: Vec<Gf>| {
                    central.iter().map(move |c| {
                        let mut w = v.clone();
                        w.push(c.clone());
                        w
                    })
                })
                .collect();
        }
        for mut coeffs in coeff_lists {
            coeffs.push(Gf::one(r.field()));
            let h = CentralPolynomial::new(r, orenorm::Poly::new(r.field(), coeffs)).unwrap();
            if h.lower().right_divisible_by(f).unwrap() {
                return deg;
            }
        }
    }
    unreachable!()
}

#[test]
fn irreducibility_matches_search_for_all_f4_quadratics_and_f8_quadratics() {
    let budget = OracleBudget::default();
    for r in [f4(), f8()] {
        for f in all_monic(&r, 2) {
            let rep = is_irreducible(&f, &IrreducibilityOptions::seeded(1)).unwrap();
            let truth = brute_irreducible(&f, &budget).unwrap();
            match rep.verdict {
                Verdict::Irreducible => assert!(truth, "{f} reported irreducible"),
                Verdict::Reducible => assert!(!truth, "{f} reported reducible"),
                Verdict::Inconclusive => {}
            }
        }
    }
}

#[test]
fn mclm_degree_matches_search() {
    for r in [f4(), f9()] {
        for f in all_monic(&r, 2) {
            let h = mclm(&f).unwrap();
            assert_eq!(h.degree(), Some(brute_mclm(&f)), "mclm({f}) = {h}");
            assert!(h.lower().right_divisible_by(&f).unwrap());
        }
    }
}

#[test]
fn all_factorizations_match_search_when_norm_is_squarefree() {
    let budget = OracleBudget::default();
    let r = f9();
    let mut compared = 0;
    for f in all_monic(&r, 2) {
        match all_factorizations(&f, 3) {
            Ok(mine) => {
                let truth = brute_factorizations(&f, &budget).unwrap();
                assert_eq!(mine.len(), truth.len(), "{f}");
                for (a, b) in mine.iter().zip(&truth) {
                    assert_eq!(a.factors, b.factors, "{f}");
                }
                compared += 1;
            }
            Err(Error::RepeatedCentralFactors | Error::CriterionNotSatisfied { .. }) => {}
            Err(e) => panic!("{f}: {e}"),
        }
    }
    assert!(compared > 20, "only {compared} polynomials compared");
}

#[test]
fn rough_factors_are_irreducible_by_search() {
    let budget = OracleBudget::default();
    let r = f9();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 40 {
        let f = random_monic(&r, 3, &mut rng);
        let Ok(fact) = rough_factorize(&f, None, 5) else { continue };
        assert!(verify_claimed_factorization(&f, &fact.unit, &fact.factors));
        for g in &fact.factors {
            assert!(brute_irreducible(g, &budget).unwrap(), "{g} from {f}");
        }
        done += 1;
    }
}

#[test]
fn bad_ordering_is_rejected() {
    let r = f9();
    let f = r.parse("t^2+(2*g+2)*t+g").unwrap();
    assert!(matches!(rough_factorize(&f, Some(&[0, 0]), 0), Err(Error::InvalidOrdering(_))));
    assert!(matches!(rough_factorize(&f, Some(&[2, 0]), 0), Err(Error::InvalidOrdering(_))));
}

#[test]
fn norm_needs_a_nonzero_constant_term_for_mclm() {
    let r = f4();
    assert!(matches!(mclm(&r.parse("t^2+t").unwrap()), Err(Error::GcrdWithTNotOne)));
    assert_eq!(reduced_norm(&r.parse("t^2+t").unwrap()).unwrap().to_string(), "x^2 + x");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cofactor_is_two_sided(seed in any::<u64>()) {
        let r = f9();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_monic(&r, 2, &mut rng);
        let sharp = cofactor(&f).unwrap();
        let n = reduced_norm(&f).unwrap().lower();
        prop_assert_eq!(sharp.mul(&f), n.clone());
        prop_assert_eq!(f.mul(&sharp), n);
    }
}
