//! The center F[x] of a skew polynomial ring: central polynomials, the
//! rewrite f = Σ P_i(x) tⁱ, and minimal central left multiples.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::skew::{CenterDef, OreCoefficient, SkewPolynomial, SkewRing};

/// A polynomial in the central variable x with coefficients in F.
#[derive(Clone, PartialEq)]
pub struct CentralPolynomial<C: OreCoefficient> {
    ring: SkewRing<C>,
    poly: Poly<C>,
}

impl<C: OreCoefficient> CentralPolynomial<C> {
    pub fn new(ring: &SkewRing<C>, poly: Poly<C>) -> Result<Self> {
        if let Some(c) = poly.coeffs().iter().find(|c| !ring.in_center_field(c)) {
            return Err(Error::NotCentral(format!("coefficient {c} is not in the central field")));
        }
        Ok(CentralPolynomial { ring: ring.clone(), poly })
    }

    pub fn ring(&self) -> &SkewRing<C> {
        &self.ring
    }

    pub fn poly(&self) -> &Poly<C> {
        &self.poly
    }

    pub fn x_def(&self) -> CenterDef {
        self.ring.center_def()
    }

    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    pub fn monic(&self) -> Self {
        CentralPolynomial { ring: self.ring.clone(), poly: self.poly.monic() }
    }

    pub fn is_monic(&self) -> bool {
        self.poly.is_monic()
    }

    /// ĥ(x) evaluated at the central element of R.
    pub fn lower(&self) -> SkewPolynomial<C> {
        lower_poly(&self.ring, &self.poly)
    }

    /// Recovers ĥ from an element of R that is a polynomial in x over F.
    pub fn extract(f: &SkewPolynomial<C>) -> Result<Self> {
        let ring = f.ring();
        let rewrite = center_rewrite(f);
        if rewrite.parts.iter().skip(1).any(|p| !p.is_zero()) {
            return Err(Error::NotCentral(format!("{f} involves t outside the central variable")));
        }
        Self::new(ring, rewrite.parts[0].clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "x_def": self.x_def().label(),
            "coeffs": self.poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(ring: &SkewRing<C>, v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidSpec(format!("central polynomial: {m}"));
        let def = v.get("x_def").and_then(Value::as_str).ok_or_else(|| bad("missing 'x_def'"))?;
        if def != ring.center_def().label() {
            return Err(bad(&format!("x_def '{def}' does not match the ring ({})", ring.center_def().label())));
        }
        let coeffs = v.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("missing 'coeffs'"))?;
        let coeffs = coeffs
            .iter()
            .map(|c| c.as_str().ok_or_else(|| bad("coefficients are literals")).and_then(|s| C::parse(ring.field(), s)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, Poly::new(ring.field(), coeffs))
    }
}

impl<C: OreCoefficient> fmt::Display for CentralPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.display_in("x"))
    }
}

impl<C: OreCoefficient> fmt::Debug for CentralPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CentralPolynomial({self})")
    }
}

/// Σ c_i X^i in R for X the central generator; the c_i may lie anywhere in K.
pub(crate) fn lower_poly<C: OreCoefficient>(ring: &SkewRing<C>, h: &Poly<C>) -> SkewPolynomial<C> {
    let x = ring.x();
    let mut acc = ring.zero();
    for c in h.coeffs().iter().rev() {
        acc = acc.mul(&x).add(&ring.constant(c.clone()));
    }
    acc
}

/// f = P_0(x) + P_1(x)t + … + P_{n−1}(x)t^{n−1} with P_i ∈ K[x].
#[derive(Debug, Clone, PartialEq)]
pub struct CenterRewrite<C: OreCoefficient> {
    pub parts: Vec<Poly<C>>,
    /// m = k·n + r.
    pub k: usize,
    pub r: usize,
}

impl<C: OreCoefficient> CenterRewrite<C> {
    /// Σ P_i(X)·tⁱ back in R.
    pub fn recompose(&self, ring: &SkewRing<C>) -> SkewPolynomial<C> {
        let t = ring.t();
        let mut ti = ring.one();
        let mut acc = ring.zero();
        for p in &self.parts {
            acc = acc.add(&lower_poly(ring, p).mul(&ti));
            ti = ti.mul(&t);
        }
        acc
    }
}

/// Rewrites f in the center basis by repeated right division by X:
/// f = Σ_j R_j X^j with deg R_j < n.
pub fn center_rewrite<C: OreCoefficient>(f: &SkewPolynomial<C>) -> CenterRewrite<C> {
    let ring = f.ring();
    let n = ring.n();
    let field = ring.field();
    let x = ring.x();
    let mut chunks: Vec<SkewPolynomial<C>> = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.right_divrem(&x).expect("x is nonzero");
        chunks.push(r);
        rest = q;
    }
    let parts = (0..n)
        .map(|i| Poly::new(field, chunks.iter().map(|c| c.coeff(i)).collect()))
        .collect();
    let m = f.degree().unwrap_or(0);
    CenterRewrite { parts, k: m / n, r: m % n }
}

fn require_mclm_preconditions<C: OreCoefficient>(f: &SkewPolynomial<C>) -> Result<()> {
    if f.is_zero() {
        return Err(Error::DivisionByZeroPolynomial);
    }
    if f.ring().center_def() == CenterDef::UInvTn && !f.gcrd_with_t().is_one() {
        return Err(Error::GcrdWithTNotOne);
    }
    Ok(())
}

/// The monic ĥ ∈ F[x] of least degree with ĥ(x) ∈ R·f: the first F-linear
/// dependence among the residues of 1, X, X², … modulo R·f, each flattened
/// to n·m coordinates over F.
pub fn mclm<C: OreCoefficient>(f: &SkewPolynomial<C>) -> Result<CentralPolynomial<C>> {
    require_mclm_preconditions(f)?;
    let ring = f.ring();
    let field = ring.field();
    let m = f.degree().unwrap();
    let f = f.monic();
    let x = ring.x();
    // rows already reduced: (pivot column, vector, combination of powers)
    let mut basis: Vec<(usize, Vec<C>, Vec<C>)> = Vec::new();
    let mut residue = ring.one().right_rem(&f)?;
    for j in 0.. {
        let mut vec: Vec<C> = (0..m).flat_map(|i| ring.coordinates(&residue.coeff(i))).collect();
        let mut comb = vec![C::zero(field); j + 1];
        comb[j] = C::one(field);
        for (pivot, row, rcomb) in &basis {
            if vec[*pivot].is_zero() {
                continue;
            }
            let c = vec[*pivot].clone();
            for (v, r) in vec.iter_mut().zip(row) {
                *v = v.sub(&c.mul(r));
            }
            for (k, r) in rcomb.iter().enumerate() {
                comb[k] = comb[k].sub(&c.mul(r));
            }
        }
        match vec.iter().position(|v| !v.is_zero()) {
            None => return CentralPolynomial::new(ring, Poly::new(field, comb)),
            Some(pivot) => {
                let inv = vec[pivot].inv()?;
                let row: Vec<C> = vec.iter().map(|v| v.mul(&inv)).collect();
                let rcomb: Vec<C> = comb.iter().map(|v| v.mul(&inv)).collect();
                basis.push((pivot, row, rcomb));
            }
        }
        residue = residue.mul(&x).right_rem(&f)?;
    }
    unreachable!()
}

/// The bound of f, normalized to be monic; equal to mclm(f).
pub fn bound<C: OreCoefficient>(f: &SkewPolynomial<C>) -> Result<CentralPolynomial<C>> {
    mclm(f)
}

/// Which sufficient condition for deg ĥ = m holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SufficientCondition {
    NPrime,
    CoprimeDegrees,
    Neither,
}

impl SufficientCondition {
    pub fn label(self) -> &'static str {
        match self {
            SufficientCondition::NPrime => "n prime",
            SufficientCondition::CoprimeDegrees => "gcd(m,n)=1",
            SufficientCondition::Neither => "neither (verified directly)",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub mclm_degree: usize,
    pub degree: usize,
    pub n: usize,
    pub applies: bool,
    pub condition: SufficientCondition,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Compares deg ĥ with m. The sufficient conditions are reported for
/// information; `applies` always comes from the direct comparison.
pub fn criterion_degree_check<C: OreCoefficient>(f: &SkewPolynomial<C>) -> Result<CriterionReport> {
    let h = mclm(f)?;
    let n = f.ring().n();
    let m = f.degree().unwrap();
    let condition = if is_prime(n) {
        SufficientCondition::NPrime
    } else if gcd(m, n) == 1 {
        SufficientCondition::CoprimeDegrees
    } else {
        SufficientCondition::Neither
    };
    let mclm_degree = h.degree().unwrap_or(0);
    Ok(CriterionReport { mclm_degree, degree: m, n, applies: mclm_degree == m, condition })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;
    use rand::RngCore;
    use crate::function_field::{DerivationSpec, FunctionField, RatFunc};
    use crate::gf::{GaloisField, Gf};
    use crate::skew::FrobeniusTwist;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f4_ring() -> SkewRing<Gf> {
        let f = GaloisField::parse_tower(2, "g^2+g+1").unwrap();
        SkewRing::<Gf>::new(&f, FrobeniusTwist { power: 1 }).unwrap()
    }

    fn central(ring: &SkewRing<Gf>, s: &str) -> CentralPolynomial<Gf> {
        let p = crate::literal::parse_poly(ring.field(), "x", &ring.field().symbols(), s).unwrap();
        CentralPolynomial::new(ring, p).unwrap()
    }

    #[test]
    fn center_rewrite_examples() {
        let r = f4_ring();
        let f = r.parse("t^3 + g*t^2 + t + 1").unwrap();
        let rw = center_rewrite(&f);
        let p = |s: &str| crate::literal::parse_poly(r.field(), "x", &r.field().symbols(), s).unwrap();
        assert_eq!(rw.parts, vec![p("g*x+1"), p("x+1")]);
        assert_eq!((rw.k, rw.r), (1, 1));
        assert_eq!(rw.recompose(&r), f);

        let c = r.parse("g").unwrap();
        assert_eq!(center_rewrite(&c).parts, vec![p("g"), p("0")]);

        let k = FunctionField::new(&GaloisField::prime(3).unwrap());
        let d = SkewRing::<RatFunc>::new(&k, DerivationSpec::d_du(&k)).unwrap();
        let t5 = d.parse("t^5").unwrap();
        let rw = center_rewrite(&t5);
        assert!(rw.parts[0].is_zero() && rw.parts[1].is_zero());
        assert_eq!(rw.parts[2], Poly::x(&k));
        assert_eq!(rw.recompose(&d), t5);
    }

    #[test]
    fn rewrite_roundtrip_and_degree_bands() {
        let f9 = GaloisField::parse_tower(3, "g^2-g-1").unwrap();
        let r = SkewRing::<Gf>::with_unit(&f9, FrobeniusTwist { power: 1 }, Gf::from_int(&f9, 2)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for m in 0..9 {
            let mut coeffs: Vec<Gf> = (0..m).map(|_| Gf::random(&f9, &mut rng)).collect();
            coeffs.push(Gf::random_nonzero(&f9, &mut rng));
            let f = r.poly(coeffs);
            let rw = center_rewrite(&f);
            assert_eq!(rw.recompose(&r), f);
            for (i, p) in rw.parts.iter().enumerate() {
                let bound = if i <= rw.r { rw.k as isize } else { rw.k as isize - 1 };
                assert!(p.degree().map_or(-1, |d| d as isize) <= bound);
            }
            assert_eq!(rw.parts[rw.r].degree(), Some(rw.k));
        }
    }

    #[test]
    fn mclm_examples() {
        let r = f4_ring();
        let p = |s: &str| r.parse(s).unwrap();
        assert_eq!(mclm(&p("t+g")).unwrap(), central(&r, "x+1"));
        assert_eq!(mclm(&p("t^2+1")).unwrap(), central(&r, "x+1"));
        assert_eq!(mclm(&p("t^2+g")).unwrap(), central(&r, "x^2+x+1"));
        assert_eq!(bound(&p("t+g")).unwrap(), central(&r, "x+1"));
        assert_eq!(mclm(&p("t^2+t")), Err(Error::GcrdWithTNotOne));
    }

    #[test]
    fn t_plus_g_has_no_constant_central_multiple() {
        // oracle: x + 1 lowers to t^2 + 1 = (t+g+1)(t+g), and no nonzero
        // constant lies in R(t+g)
        let r = f4_ring();
        let f = r.parse("t+g").unwrap();
        assert!(r.parse("t^2+1").unwrap().right_divisible_by(&f).unwrap());
        assert!(!r.one().right_divisible_by(&f).unwrap());
    }

    #[test]
    fn criterion_examples() {
        let r = f4_ring();
        let p = |s: &str| r.parse(s).unwrap();
        let c = criterion_degree_check(&p("t^2+g")).unwrap();
        assert!(c.applies && c.mclm_degree == 2);
        assert_eq!(c.condition, SufficientCondition::NPrime);
        let c = criterion_degree_check(&p("t^2+1")).unwrap();
        assert!(!c.applies && c.mclm_degree == 1);
        assert!(criterion_degree_check(&p("t+g")).unwrap().applies);
    }

    #[test]
    fn mclm_is_a_minimal_left_multiple() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let f9 = GaloisField::parse_tower(3, "g^2-g-1").unwrap();
        let f8 = GaloisField::parse_tower(2, "g^3+g+1").unwrap();
        for field in [f9, f8] {
            let r = SkewRing::<Gf>::new(&field, FrobeniusTwist { power: 1 }).unwrap();
            for _ in 0..60 {
                let m = 1 + rng.next_u32() as usize % 4;
                let mut coeffs: Vec<Gf> = vec![Gf::random_nonzero(&field, &mut rng)];
                coeffs.extend((1..=m).map(|_| Gf::random(&field, &mut rng)));
                coeffs[m] = Gf::random_nonzero(&field, &mut rng);
                let f = r.poly(coeffs);
                let h = mclm(&f).unwrap();
                assert!(h.is_monic());
                assert!(h.lower().right_divisible_by(&f).unwrap());
                assert!(h.degree().unwrap() <= r.n() * m);
                // every monic central polynomial of smaller degree that
                // divides ĥ fails to be a left multiple
                let factors = crate::factor::factor_central(&h, 1).unwrap();
                for (g, _) in &factors {
                    if g.degree() == h.degree() {
                        continue;
                    }
                    let cofactor = h.poly().exact_div(g.poly()).unwrap();
                    let proper = CentralPolynomial::new(&r, cofactor).unwrap();
                    assert!(!proper.lower().right_divisible_by(&f).unwrap());
                }
            }
        }
    }

    #[test]
    fn mclm_in_the_derivation_case() {
        let k = FunctionField::new(&GaloisField::prime(3).unwrap());
        let d = SkewRing::<RatFunc>::new(&k, DerivationSpec::d_du(&k)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..20 {
            let m = 1 + rng.next_u32() as usize % 2;
            let mut coeffs: Vec<RatFunc> = (0..m).map(|_| RatFunc::random(&k, &mut rng)).collect();
            coeffs.push(RatFunc::one(&k));
            let f = d.poly(coeffs);
            let h = mclm(&f).unwrap();
            assert!(h.lower().right_divisible_by(&f).unwrap());
            assert!(h.degree().unwrap() <= 3 * m);
        }
        // t^3 + u is itself central: x + u
        let f = d.parse("t^3+u^3").unwrap();
        assert_eq!(mclm(&f).unwrap().degree(), Some(1));
    }

    #[test]
    fn central_polynomial_roundtrips() {
        let r = f4_ring();
        let h = central(&r, "x^2+x+1");
        assert_eq!(CentralPolynomial::extract(&h.lower()).unwrap(), h);
        assert_eq!(h.lower(), r.parse("t^4+t^2+1").unwrap());
        let json = h.to_json();
        assert_eq!(json["x_def"], "u^-1 t^n");
        assert_eq!(CentralPolynomial::from_json(&r, &json).unwrap(), h);
        assert!(CentralPolynomial::extract(&r.parse("t+g").unwrap()).is_err());
        let p = crate::literal::parse_poly(r.field(), "x", &r.field().symbols(), "g*x").unwrap();
        assert!(matches!(CentralPolynomial::new(&r, p), Err(Error::NotCentral(_))));
    }
}
