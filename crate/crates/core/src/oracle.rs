//! Brute-force ground truth over small skew rings.
//!
//! Nothing here touches the norm engine or the ring's own division: the
//! oracle multiplies and divides coefficient vectors itself, using only σ
//! and δ on single coefficients.

use crate::error::{Error, Result};
use crate::factor::{sort_canonically, Factorization, Route};
use crate::field::FieldElement;
use crate::skew::{OreCoefficient, SkewPolynomial, SkewRing};

/// Limit on the number of candidate divisors enumerated for one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_candidates: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_candidates: 1_000_000 }
    }
}

fn trim<C: FieldElement>(mut v: Vec<C>) -> Vec<C> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// t^k·a expanded term by term: returns the coefficients of t^k·a.
fn t_power_times<C: OreCoefficient>(ring: &SkewRing<C>, k: usize, a: &C) -> Vec<C> {
    let field = ring.field();
    let mut cur = vec![a.clone()];
    for _ in 0..k {
        let mut next = vec![C::zero(field); cur.len() + 1];
        for (j, c) in cur.iter().enumerate() {
            next[j + 1] = next[j + 1].add(&ring.sigma(c));
            if let Some(d) = ring.delta(c) {
                next[j] = next[j].add(&d);
            }
        }
        cur = next;
    }
    cur
}

fn naive_mul<C: OreCoefficient>(ring: &SkewRing<C>, a: &[C], b: &[C]) -> Vec<C> {
    let field = ring.field();
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(field); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            for (k, c) in t_power_times(ring, i, bj).into_iter().enumerate() {
                out[k + j] = out[k + j].add(&ai.mul(&c));
            }
        }
    }
    trim(out)
}

/// σ-case right division by a monic g: (q, r) with f = q·g + r. Leading
/// terms cancel because c·t^k·g has leading coefficient c.
fn naive_right_divrem<C: OreCoefficient>(ring: &SkewRing<C>, f: &[C], g: &[C]) -> (Vec<C>, Vec<C>) {
    let field = ring.field();
    let dg = g.len() - 1;
    let mut rem = f.to_vec();
    if rem.len() <= dg {
        return (Vec::new(), rem);
    }
    let mut quot = vec![C::zero(field); rem.len() - dg];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dg].clone();
        if c.is_zero() {
            continue;
        }
        // c·t^k·g, with t^k·g_j = σ^k(g_j) t^k when δ = 0
        for (j, gj) in g.iter().enumerate() {
            let shifted: C = (0..k).fold(gj.clone(), |acc, _| ring.sigma(&acc));
            rem[k + j] = rem[k + j].sub(&c.mul(&shifted));
        }
        quot[k] = c;
    }
    rem.truncate(dg);
    (trim(quot), trim(rem))
}

/// σ-case left division by a monic g: (q, r) with f = g·q + r.
fn naive_left_divrem<C: OreCoefficient>(ring: &SkewRing<C>, f: &[C], g: &[C]) -> (Vec<C>, Vec<C>) {
    let field = ring.field();
    let n = ring.n();
    let dg = g.len() - 1;
    let mut rem = f.to_vec();
    if rem.len() <= dg {
        return (Vec::new(), rem);
    }
    let mut quot = vec![C::zero(field); rem.len() - dg];
    for k in (0..quot.len()).rev() {
        let top = rem[k + dg].clone();
        if top.is_zero() {
            continue;
        }
        // g·c t^k has leading coefficient σ^dg(c); σ has order n
        let back = (n - dg % n) % n;
        let c: C = (0..back).fold(top, |acc, _| ring.sigma(&acc));
        let prod = naive_mul(ring, g, &monomial(field, c.clone(), k));
        for (j, v) in prod.iter().enumerate() {
            rem[j] = rem[j].sub(v);
        }
        quot[k] = c;
    }
    rem.truncate(dg);
    (trim(quot), trim(rem))
}

fn monomial<C: FieldElement>(field: &C::Field, c: C, k: usize) -> Vec<C> {
    let mut v = vec![C::zero(field); k];
    v.push(c);
    v
}

fn require_sigma_case<C: OreCoefficient>(f: &SkewPolynomial<C>) -> Result<Vec<C>> {
    let ring = f.ring();
    let probe = C::generators(ring.field());
    if probe.iter().any(|g| ring.delta(g).is_some_and(|d| !d.is_zero())) {
        return Err(Error::InvalidSpec("brute force needs a finite field with δ = 0".into()));
    }
    C::all_elements(ring.field()).ok_or_else(|| Error::InvalidSpec("brute force needs a small finite field".into()))
}

/// Calls `visit` on every monic polynomial of degree d until it returns true.
fn any_monic<C: FieldElement>(
    field: &C::Field,
    elements: &[C],
    d: usize,
    budget: &OracleBudget,
    mut visit: impl FnMut(&[C]) -> bool,
) -> Result<bool> {
    let size = elements.len() as u128;
    let needed = size.checked_pow(d as u32).unwrap_or(u128::MAX);
    if needed > budget.max_candidates {
        return Err(Error::BudgetExceeded { needed, budget: budget.max_candidates });
    }
    let mut cand: Vec<C> = vec![elements[0].clone(); d];
    cand.push(C::one(field));
    let mut digits = vec![0usize; d];
    for _ in 0..needed {
        if visit(&cand) {
            return Ok(true);
        }
        for i in 0..d {
            digits[i] += 1;
            if digits[i] < elements.len() {
                cand[i] = elements[digits[i]].clone();
                break;
            }
            digits[i] = 0;
            cand[i] = elements[0].clone();
        }
    }
    Ok(false)
}

fn monic_coeffs<C: FieldElement>(f: &SkewPolynomial<C>) -> Vec<C>
where
    C: OreCoefficient,
{
    f.monic().coeffs().to_vec()
}

fn irreducible_coeffs<C: OreCoefficient>(ring: &SkewRing<C>, f: &[C], elements: &[C], budget: &OracleBudget) -> Result<bool> {
    let m = f.len() - 1;
    // f = g·h with deg h ≤ m/2, or with deg g < m/2 as a left factor
    for d in 1..=m / 2 {
        let hit = any_monic(ring.field(), elements, d, budget, |h| {
            naive_right_divrem(ring, f, h).1.is_empty() || naive_left_divrem(ring, f, h).1.is_empty()
        })?;
        if hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff f has no factorization into two factors of positive degree.
pub fn brute_irreducible<C: OreCoefficient>(f: &SkewPolynomial<C>, budget: &OracleBudget) -> Result<bool> {
    let elements = require_sigma_case(f)?;
    match f.degree() {
        None => Err(Error::DivisionByZeroPolynomial),
        Some(0) => Err(Error::Unit(format!("{f} is a unit"))),
        Some(_) => irreducible_coeffs(f.ring(), &monic_coeffs(f), &elements, budget),
    }
}

/// All decompositions unit·f_1⋯f_l into monic irreducibles, sorted
/// canonically.
pub fn brute_factorizations<C: OreCoefficient>(
    f: &SkewPolynomial<C>,
    budget: &OracleBudget,
) -> Result<Vec<Factorization<C>>> {
    let elements = require_sigma_case(f)?;
    let unit = match f.lead() {
        None => return Err(Error::DivisionByZeroPolynomial),
        Some(c) => c.clone(),
    };
    let ring = f.ring();
    let chains = decompositions(ring, &monic_coeffs(f), &elements, budget)?;
    let mut out: Vec<Factorization<C>> = chains
        .into_iter()
        .map(|chain| {
            let routes = vec![Some(Route::Oracle); chain.len()];
            let factors = chain.into_iter().map(|c| ring.poly(c)).collect();
            Factorization { unit: unit.clone(), factors, routes }
        })
        .collect();
    sort_canonically(&mut out);
    out.dedup_by(|a, b| a.factors == b.factors);
    Ok(out)
}

fn decompositions<C: OreCoefficient>(
    ring: &SkewRing<C>,
    f: &[C],
    elements: &[C],
    budget: &OracleBudget,
) -> Result<Vec<Vec<Vec<C>>>> {
    let m = f.len() - 1;
    if m == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut out = Vec::new();
    // the only monic right factor of degree m is f itself
    if irreducible_coeffs(ring, f, elements, budget)? {
        return Ok(vec![vec![f.to_vec()]]);
    }
    for d in 1..m {
        let mut found: Vec<(Vec<C>, Vec<C>)> = Vec::new();
        let mut err = None;
        any_monic(ring.field(), elements, d, budget, |h| {
            let (q, r) = naive_right_divrem(ring, f, h);
            if r.is_empty() {
                match irreducible_coeffs(ring, h, elements, budget) {
                    Ok(true) => found.push((q, h.to_vec())),
                    Ok(false) => {}
                    Err(e) => err = Some(e),
                }
            }
            err.is_some()
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        for (q, h) in found {
            for mut chain in decompositions(ring, &q, elements, budget)? {
                chain.push(h.clone());
                out.push(chain);
            }
        }
    }
    Ok(out)
}

/// Checks unit·f_1⋯f_l = f with the oracle's own multiplication; works in
/// the derivation case too.
pub fn verify_claimed_factorization<C: OreCoefficient>(f: &SkewPolynomial<C>, unit: &C, factors: &[SkewPolynomial<C>]) -> bool {
    let ring = f.ring();
    if factors.iter().any(|g| g.ring() != ring) {
        return false;
    }
    let product = factors
        .iter()
        .fold(vec![unit.clone()], |acc, g| naive_mul(ring, &acc, g.coeffs()));
    trim(product) == f.coeffs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_field::{DerivationSpec, FunctionField, RatFunc};
    use crate::gf::{GaloisField, Gf};
    use crate::skew::FrobeniusTwist;

    fn ring(p: u64, tower: &str) -> SkewRing<Gf> {
        let f = GaloisField::parse_tower(p, tower).unwrap();
        SkewRing::<Gf>::new(&f, FrobeniusTwist { power: 1 }).unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        let r = ring(2, "g^2+g+1");
        let b = OracleBudget::default();
        assert!(brute_irreducible(&r.parse("t^2+g").unwrap(), &b).unwrap());
        assert!(!brute_irreducible(&r.parse("t^2+1").unwrap(), &b).unwrap());
        assert!(brute_irreducible(&r.parse("g*t+1").unwrap(), &b).unwrap());
    }

    #[test]
    fn factorization_examples() {
        let r = ring(2, "g^2+g+1");
        let p = |s: &str| r.parse(s).unwrap();
        let all = brute_factorizations(&p("t^2+1"), &OracleBudget::default()).unwrap();
        let lists: Vec<Vec<SkewPolynomial<Gf>>> = all.iter().map(|f| f.factors.clone()).collect();
        assert_eq!(lists.len(), 3);
        for expected in [[p("t+1"), p("t+1")], [p("t+g^2"), p("t+g")], [p("t+g"), p("t+g^2")]] {
            assert!(lists.contains(&expected.to_vec()));
        }
        let r9 = ring(3, "g^2-g-1");
        let f = r9.parse("(t+1)*(t+g)").unwrap();
        assert_eq!(brute_factorizations(&f, &OracleBudget::default()).unwrap().len(), 2);
        let irr = r.parse("g*t^2+g^2").unwrap();
        let one = brute_factorizations(&irr, &OracleBudget::default()).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].product(&r), irr);
    }

    #[test]
    fn naive_division_agrees_with_multiplication() {
        let r = ring(3, "g^2-g-1");
        let f = r.parse("(t^2+g*t+1)*(t+g+1)").unwrap();
        let h = r.parse("t+g+1").unwrap();
        let (q, rem) = naive_right_divrem(&r, f.coeffs(), h.coeffs());
        assert!(rem.is_empty());
        assert_eq!(r.poly(q), r.parse("t^2+g*t+1").unwrap());
        let g = r.parse("t^2+g*t+1").unwrap();
        let (q, rem) = naive_left_divrem(&r, f.coeffs(), g.coeffs());
        assert!(rem.is_empty());
        assert_eq!(r.poly(q), h);
    }

    #[test]
    fn budget_is_enforced() {
        let r = ring(3, "g^2-g-1");
        let f = r.parse("t^5+g").unwrap();
        let tiny = OracleBudget { max_candidates: 5 };
        assert!(matches!(brute_irreducible(&f, &tiny), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn claimed_factorizations_in_the_derivation_case() {
        let k = FunctionField::new(&GaloisField::prime(3).unwrap());
        let d = SkewRing::<RatFunc>::new(&k, DerivationSpec::d_du(&k)).unwrap();
        let a = d.parse("t+u").unwrap();
        let b = d.parse("t+1/u").unwrap();
        let f = a.mul(&b);
        assert!(verify_claimed_factorization(&f, &RatFunc::one(&k), &[a.clone(), b.clone()]));
        assert!(!verify_claimed_factorization(&f, &RatFunc::one(&k), &[b, a]));
        assert!(matches!(brute_irreducible(&f, &OracleBudget::default()), Err(Error::InvalidSpec(_))));
    }
}
