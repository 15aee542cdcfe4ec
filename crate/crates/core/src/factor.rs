//! Factorization of central polynomials, irreducibility verdicts from the
//! reduced norm, and rough factorizations of skew polynomials.

use std::fmt;

use itertools::Itertools;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::central::{lower_poly, mclm, CentralPolynomial};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::gf::Gf;
use crate::norm::reduced_norm;
use crate::poly::Poly;
use crate::skew::{CenterDef, OreCoefficient, SkewPolynomial};

/// Candidate budget for the clump search in rough factorization.
const CLUMP_SEARCH_BUDGET: u128 = 1_000_000;

// ---------------------------------------------------------------------------
// Central factorization over a finite subfield

/// Factors `h` over the subfield F_{p^s} of its coefficient field. The
/// coefficients must lie in that subfield. Output factors are monic, sorted
/// by degree and then by coefficients.
pub fn factor_over_subfield(h: &Poly<Gf>, s: usize, rng: &mut dyn RngCore) -> Vec<(Poly<Gf>, usize)> {
    let h = h.monic();
    if h.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out: Vec<(Poly<Gf>, usize)> = Vec::new();
    for (part, mult) in squarefree(&h, s) {
        for (g, d) in distinct_degree(&part, s) {
            for irr in equal_degree(&g, d, s, rng) {
                match out.iter_mut().find(|(f, _)| *f == irr) {
                    Some(entry) => entry.1 += mult,
                    None => out.push((irr, mult)),
                }
            }
        }
    }
    out.sort_by_key(|(a, _)| poly_key(a));
    out
}

fn poly_key(p: &Poly<Gf>) -> (usize, Vec<u128>) {
    (p.degree().unwrap_or(0), p.coeffs().iter().rev().map(Gf::index).collect())
}

fn subfield_order(field: &crate::gf::GaloisField, s: usize) -> u128 {
    (field.p() as u128).pow(s as u32)
}

/// Squarefree decomposition: pairs (squarefree part, multiplicity).
fn squarefree(f: &Poly<Gf>, s: usize) -> Vec<(Poly<Gf>, usize)> {
    let field = f.field().clone();
    let p = field.p() as usize;
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).expect("gcd divides");
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.exact_div(&y).expect("gcd divides");
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        // c is a polynomial in x^p; take p-th roots of its coefficients
        let root: Vec<Gf> = c
            .coeffs()
            .iter()
            .step_by(p)
            .map(|a| field.frobenius(a, s - 1))
            .collect();
        for (g, m) in squarefree(&Poly::new(&field, root), s) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree polynomial into products of irreducibles of equal
/// degree: pairs (product, degree).
fn distinct_degree(f: &Poly<Gf>, s: usize) -> Vec<(Poly<Gf>, usize)> {
    let field = f.field().clone();
    let q = subfield_order(&field, s);
    let x = Poly::x(&field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest).expect("nonzero");
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(q, &rest).expect("nonzero");
        let g = rest.gcd(&h.sub(&x));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&k| k > 0) {
        out.push((rest, deg));
    }
    out
}

/// A uniformly random element of F_{p^s} inside the coefficient field.
fn random_subfield_element(field: &crate::gf::GaloisField, s: usize, rng: &mut dyn RngCore) -> Gf {
    let a = Gf::random(field, rng);
    field.relative_trace(&a, s).expect("subfield degree divides")
}

/// Cantor–Zassenhaus splitting of a product of irreducibles of degree d.
fn equal_degree(f: &Poly<Gf>, d: usize, s: usize, rng: &mut dyn RngCore) -> Vec<Poly<Gf>> {
    let k = f.degree().unwrap_or(0);
    if k == d {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    let q = subfield_order(&field, s);
    loop {
        let a = Poly::new(&field, (0..k).map(|_| random_subfield_element(&field, s, rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if q % 2 == 1 {
            // a^{(q^d−1)/2} = (a·a^q⋯a^{q^{d−1}})^{(q−1)/2}
            let mut conj = a.rem(f).expect("nonzero");
            let mut prod = conj.clone();
            for _ in 1..d {
                conj = conj.pow_mod(q, f).expect("nonzero");
                prod = prod.mul_mod(&conj, f).expect("nonzero");
            }
            prod.pow_mod((q - 1) / 2, f).expect("nonzero").sub(&Poly::one(&field))
        } else {
            // absolute trace to F_2: a + a^2 + … + a^{2^{sd−1}}
            let bits = (q.trailing_zeros() as usize) * d;
            let mut term = a.rem(f).expect("nonzero");
            let mut acc = term.clone();
            for _ in 1..bits {
                term = term.mul_mod(&term, f).expect("nonzero");
                acc = acc.add(&term);
            }
            acc
        };
        let g = f.gcd(&b);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < k {
            let other = f.exact_div(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, s, rng);
            out.extend(equal_degree(&other, d, s, rng));
            return out;
        }
    }
}

/// Complete factorization of a central polynomial into monic irreducibles.
pub fn factor_central<C: OreCoefficient>(
    h: &CentralPolynomial<C>,
    seed: u64,
) -> Result<Vec<(CentralPolynomial<C>, usize)>> {
    let ring = h.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parts = C::factor_central_poly(ring, &h.poly().monic(), &mut rng)?;
    parts
        .into_iter()
        .map(|(p, m)| Ok((CentralPolynomial::new(ring, p)?, m)))
        .collect()
}

// ---------------------------------------------------------------------------
// Factorizations of skew polynomials

/// How a factor or verdict was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Degree1,
    NormIrreducible,
    CriterionCentralFactorization,
    Oracle,
}

impl Route {
    pub fn label(self) -> &'static str {
        match self {
            Route::Degree1 => "degree-1",
            Route::NormIrreducible => "norm-irreducible",
            Route::CriterionCentralFactorization => "criterion+central-factorization",
            Route::Oracle => "oracle",
        }
    }
}

/// unit · f_1 ⋯ f_l with monic f_i; the product is checked on construction.
#[derive(Clone, PartialEq)]
pub struct Factorization<C: OreCoefficient> {
    pub unit: C,
    pub factors: Vec<SkewPolynomial<C>>,
    /// Per factor: the route that certified it irreducible, if any.
    pub routes: Vec<Option<Route>>,
}

impl<C: OreCoefficient> Factorization<C> {
    pub fn new(
        original: &SkewPolynomial<C>,
        unit: C,
        factors: Vec<SkewPolynomial<C>>,
        routes: Vec<Option<Route>>,
    ) -> Result<Self> {
        assert_eq!(factors.len(), routes.len());
        let fact = Factorization { unit, factors, routes };
        if fact.product(original.ring()) != *original {
            return Err(Error::NonzeroRemainder(format!("factorization does not multiply back to {original}")));
        }
        if let Some(f) = fact.factors.iter().find(|f| !f.is_monic()) {
            return Err(Error::InvalidSpec(format!("factor {f} is not monic")));
        }
        Ok(fact)
    }

    pub fn product(&self, ring: &crate::skew::SkewRing<C>) -> SkewPolynomial<C> {
        self.factors.iter().fold(ring.constant(self.unit.clone()), |acc, f| acc.mul(f))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor_strings(&self) -> Vec<String> {
        self.factors.iter().map(|f| f.to_string()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "unit": self.unit.to_string(),
            "factors": self.factor_strings(),
            "routes": self.routes.iter().map(|r| r.map(Route::label)).collect::<Vec<_>>(),
        })
    }
}

impl<C: OreCoefficient> fmt::Display for Factorization<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.unit.is_one() {
            parts.push(if self.unit.is_compound() { format!("({})", self.unit) } else { self.unit.to_string() });
        }
        parts.extend(self.factors.iter().map(|p| format!("({p})")));
        if parts.is_empty() {
            parts.push("1".into());
        }
        f.write_str(&parts.join(" * "))
    }
}

impl<C: OreCoefficient> fmt::Debug for Factorization<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Factorization({self})")
    }
}

/// Sorts factorizations by their printed factor lists.
pub fn sort_canonically<C: OreCoefficient>(list: &mut [Factorization<C>]) {
    list.sort_by_key(|f| f.factor_strings());
}

// ---------------------------------------------------------------------------
// Irreducibility

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Irreducible,
    Reducible,
    Inconclusive,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Irreducible => "irreducible",
            Verdict::Reducible => "reducible",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct IrreducibilityReport<C: OreCoefficient> {
    pub verdict: Verdict,
    pub route: Option<Route>,
    pub mclm_degree: Option<usize>,
    pub degree: usize,
    pub norm: CentralPolynomial<C>,
}

impl<C: OreCoefficient> IrreducibilityReport<C> {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict.label(),
            "route": self.route.map(Route::label),
            "mclm_degree": self.mclm_degree,
            "degree": self.degree,
            "norm": self.norm.to_string(),
        })
    }
}

type Tester<'a, C> = &'a dyn Fn(&Poly<C>) -> Option<bool>;
type Fallback<'a, C> = &'a dyn Fn(&SkewPolynomial<C>) -> Result<bool>;

/// Extra knowledge for [`is_irreducible`].
pub struct IrreducibilityOptions<'a, C: OreCoefficient> {
    pub seed: u64,
    /// A factorization of the monic N(f) into monic irreducibles, used when
    /// F is infinite.
    pub norm_factorization: Option<Vec<(Poly<C>, usize)>>,
    /// Decides irreducibility of the monic N(f) in F[x], when it can.
    pub norm_tester: Option<Tester<'a, C>>,
    /// Consulted when the norm argument is inconclusive (for example the
    /// brute-force oracle).
    pub fallback: Option<Fallback<'a, C>>,
}

impl<C: OreCoefficient> Default for IrreducibilityOptions<'_, C> {
    fn default() -> Self {
        IrreducibilityOptions { seed: 0, norm_factorization: None, norm_tester: None, fallback: None }
    }
}

impl<'a, C: OreCoefficient> IrreducibilityOptions<'a, C> {
    pub fn seeded(seed: u64) -> Self {
        IrreducibilityOptions { seed, ..Default::default() }
    }
}

/// Decides irreducibility from the reduced norm: degree 1, then N(f)
/// irreducible in F[x], then (when deg ĥ = m) N(f) reducible implies f
/// reducible; otherwise inconclusive unless a fallback is supplied.
pub fn is_irreducible<C: OreCoefficient>(
    f: &SkewPolynomial<C>,
    opts: &IrreducibilityOptions<'_, C>,
) -> Result<IrreducibilityReport<C>> {
    let m = match f.degree() {
        None => return Err(Error::DivisionByZeroPolynomial),
        Some(0) => return Err(Error::Unit(format!("{f} is a unit"))),
        Some(m) => m,
    };
    let ring = f.ring();
    if ring.center_def() == CenterDef::UInvTn && !f.gcrd_with_t().is_one() {
        return Err(Error::GcrdWithTNotOne);
    }
    let norm = reduced_norm(f)?;
    let mclm_degree = mclm(f)?.degree();
    let report = |verdict, route| IrreducibilityReport { verdict, route, mclm_degree, degree: m, norm: norm.clone() };
    if m == 1 {
        return Ok(report(Verdict::Irreducible, Some(Route::Degree1)));
    }
    let monic = norm.poly().monic();
    let norm_irreducible = match &opts.norm_factorization {
        Some(list) => {
            let product = list.iter().fold(Poly::one(ring.field()), |acc, (p, e)| acc.mul(&p.pow(*e as u64)));
            if product != monic {
                return Err(Error::InvalidSpec(format!("supplied factorization does not multiply to {}", monic.display_in("x"))));
            }
            Some(list.len() == 1 && list[0].1 == 1)
        }
        None => match factor_central(&norm, opts.seed) {
            Ok(list) => Some(list.len() == 1 && list[0].1 == 1),
            Err(Error::InfiniteConstantField) => opts.norm_tester.and_then(|t| t(&monic)),
            Err(e) => return Err(e),
        },
    };
    if norm_irreducible == Some(true) {
        return Ok(report(Verdict::Irreducible, Some(Route::NormIrreducible)));
    }
    if norm_irreducible == Some(false) && mclm_degree == Some(m) {
        return Ok(report(Verdict::Reducible, Some(Route::CriterionCentralFactorization)));
    }
    match opts.fallback {
        Some(oracle) => {
            let verdict = if oracle(f)? { Verdict::Irreducible } else { Verdict::Reducible };
            Ok(report(verdict, Some(Route::Oracle)))
        }
        None => Ok(report(Verdict::Inconclusive, None)),
    }
}

// ---------------------------------------------------------------------------
// Rough factorization

fn expanded_norm_factors<C: OreCoefficient>(f: &SkewPolynomial<C>, seed: u64) -> Result<Vec<(CentralPolynomial<C>, usize)>> {
    factor_central(&reduced_norm(f)?, seed)
}

fn check_rough_preconditions<C: OreCoefficient>(f: &SkewPolynomial<C>) -> Result<usize> {
    let m = match f.degree() {
        None => return Err(Error::DivisionByZeroPolynomial),
        Some(m) => m,
    };
    if f.ring().center_def() == CenterDef::UInvTn && !f.gcrd_with_t().is_one() {
        return Err(Error::GcrdWithTNotOne);
    }
    let h = mclm(f)?;
    let hd = h.degree().unwrap_or(0);
    if hd != m {
        return Err(Error::CriterionNotSatisfied { mclm_degree: hd, degree: m });
    }
    Ok(m)
}

/// Factorization f = unit·f_1⋯f_l with N(f_i) equal to the i-th entry of
/// the canonical list of irreducible factors of N(f) (with multiplicity)
/// permuted by `ordering`; `None` keeps the canonical order.
pub fn rough_factorize<C: OreCoefficient>(
    f: &SkewPolynomial<C>,
    ordering: Option<&[usize]>,
    seed: u64,
) -> Result<Factorization<C>> {
    check_rough_preconditions(f)?;
    let list: Vec<Poly<C>> = expanded_norm_factors(f, seed)?
        .into_iter()
        .flat_map(|(h, e)| std::iter::repeat_n(h.poly().clone(), e))
        .collect();
    let l = list.len();
    let order: Vec<usize> = match ordering {
        None => (0..l).collect(),
        Some(o) => {
            let mut sorted = o.to_vec();
            sorted.sort_unstable();
            if sorted != (0..l).collect::<Vec<_>>() {
                return Err(Error::InvalidOrdering(format!("expected a permutation of 0..{l}, got {o:?}")));
            }
            o.to_vec()
        }
    };
    let hs: Vec<Poly<C>> = order.iter().map(|&i| list[i].clone()).collect();
    rough_factorize_with(f, &hs)
}

/// Extracts factors right to left: f_l = gcrd(f, ĥ_l(x)), then recurses on
/// the quotient.
pub fn rough_factorize_with<C: OreCoefficient>(f: &SkewPolynomial<C>, hs: &[Poly<C>]) -> Result<Factorization<C>> {
    check_rough_preconditions(f)?;
    let ring = f.ring();
    let unit = f.lead().unwrap().clone();
    let mut rest = f.monic();
    let mut factors = Vec::with_capacity(hs.len());
    for h in hs.iter().rev() {
        let d = h.degree().unwrap_or(0);
        let clump = rest.gcrd(&lower_poly(ring, h));
        let got = clump.degree().unwrap_or(0);
        let fi = if got == d {
            clump
        } else if got > d {
            search_right_factor(&clump, h)?
        } else {
            return Err(Error::ExtractionDegreeMismatch { expected: d, got });
        };
        let (q, r) = rest.right_divrem(&fi)?;
        if !r.is_zero() {
            return Err(Error::NonzeroRemainder(format!("{fi} does not divide {rest}")));
        }
        rest = q;
        factors.push(fi);
    }
    if !rest.is_one() {
        return Err(Error::ExtractionDegreeMismatch { expected: 0, got: rest.degree().unwrap_or(0) });
    }
    factors.reverse();
    let routes = factors
        .iter()
        .zip(hs)
        .map(|(fi, h)| {
            let n = reduced_norm(fi).ok()?.poly().monic();
            (n == *h && mclm(fi).ok()?.poly() == h).then_some(Route::NormIrreducible)
        })
        .collect();
    Factorization::new(f, unit, factors, routes)
}

/// A monic right factor of `clump` of degree deg h with norm ĥ, by
/// exhaustive search.
fn search_right_factor<C: OreCoefficient>(clump: &SkewPolynomial<C>, h: &Poly<C>) -> Result<SkewPolynomial<C>> {
    let ring = clump.ring();
    let d = h.degree().unwrap_or(0);
    let got = clump.degree().unwrap_or(0);
    let mismatch = Error::ExtractionDegreeMismatch { expected: d, got };
    let Some(elements) = C::all_elements(ring.field()) else { return Err(mismatch) };
    let size = elements.len() as u128;
    let needed = size.checked_pow(d as u32).unwrap_or(u128::MAX);
    if needed > CLUMP_SEARCH_BUDGET {
        return Err(Error::BudgetExceeded { needed, budget: CLUMP_SEARCH_BUDGET });
    }
    for idx in 0..needed {
        let mut coeffs: Vec<C> = (0..d).map(|i| elements[((idx / size.pow(i as u32)) % size) as usize].clone()).collect();
        coeffs.push(C::one(ring.field()));
        let g = ring.poly(coeffs);
        if clump.right_divisible_by(&g)? && reduced_norm(&g)?.poly().monic() == *h {
            return Ok(g);
        }
    }
    Err(mismatch)
}

/// One factorization per ordering of the distinct irreducible factors of
/// N(f), l! in total, sorted canonically.
pub fn all_factorizations<C: OreCoefficient>(f: &SkewPolynomial<C>, seed: u64) -> Result<Vec<Factorization<C>>> {
    check_rough_preconditions(f)?;
    let list = expanded_norm_factors(f, seed)?;
    if list.iter().any(|(_, e)| *e > 1) {
        return Err(Error::RepeatedCentralFactors);
    }
    let hs: Vec<Poly<C>> = list.into_iter().map(|(h, _)| h.poly().clone()).collect();
    let l = hs.len();
    let mut out = Vec::new();
    for perm in (0..l).permutations(l) {
        let ordered: Vec<Poly<C>> = perm.iter().map(|&i| hs[i].clone()).collect();
        out.push(rough_factorize_with(f, &ordered)?);
    }
    sort_canonically(&mut out);
    if out.windows(2).any(|w| w[0].factors == w[1].factors) {
        return Err(Error::RepeatedCentralFactors);
    }
    Ok(out)
}
