//! Rational function fields F_q(u) and derivations δ = r(u)·d/du on them.

use std::fmt;
use std::sync::Arc;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::gf::{GaloisField, Gf};
use crate::literal::parse_field_element;
use crate::poly::Poly;

#[derive(Clone)]
pub struct FunctionField(Arc<FfInner>);

struct FfInner {
    base: GaloisField,
    var: String,
}

impl PartialEq for FunctionField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.base == other.0.base && self.0.var == other.0.var)
    }
}

impl Eq for FunctionField {}

impl fmt::Debug for FunctionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.0.base, self.0.var)
    }
}

impl FunctionField {
    /// F_q(u) over the given constant field, with variable `u`.
    pub fn new(base: &GaloisField) -> Self {
        Self::with_var(base, "u")
    }

    pub fn with_var(base: &GaloisField, var: &str) -> Self {
        FunctionField(Arc::new(FfInner { base: base.clone(), var: var.to_string() }))
    }

    pub fn base(&self) -> &GaloisField {
        &self.0.base
    }

    pub fn var_name(&self) -> &str {
        &self.0.var
    }

    pub fn p(&self) -> u64 {
        self.0.base.p()
    }

    /// The transcendental generator.
    pub fn var(&self) -> RatFunc {
        RatFunc::from_poly(self, Poly::x(&self.0.base))
    }

    pub fn constant(&self, c: &Gf) -> RatFunc {
        RatFunc::from_poly(self, Poly::constant(c.clone()))
    }

    pub fn symbols(&self) -> Vec<(String, RatFunc)> {
        let mut out = vec![(self.0.var.clone(), self.var())];
        out.extend(self.0.base.symbols().into_iter().map(|(n, g)| (n, self.constant(&g))));
        out
    }

    /// Builds num/den, reducing and normalizing the denominator to be monic.
    pub fn fraction(&self, num: Poly<Gf>, den: Poly<Gf>) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::normalized(self, num, den))
    }
}

/// A reduced fraction num/den with monic denominator; zero is 0/1.
#[derive(Clone)]
pub struct RatFunc {
    field: FunctionField,
    num: Poly<Gf>,
    den: Poly<Gf>,
}

impl RatFunc {
    fn from_poly(field: &FunctionField, num: Poly<Gf>) -> Self {
        let den = Poly::one(field.base());
        RatFunc { field: field.clone(), num, den }
    }

    fn normalized(field: &FunctionField, num: Poly<Gf>, den: Poly<Gf>) -> Self {
        if num.is_zero() {
            return Self::from_poly(field, num);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let l = den.lead().expect("nonzero denominator").clone();
        if !l.is_one() {
            let li = l.inv().expect("nonzero");
            num = num.scale(&li);
            den = den.scale(&li);
        }
        RatFunc { field: field.clone(), num, den }
    }

    pub fn num(&self) -> &Poly<Gf> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Gf> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a constant of F_q, if it is one.
    pub fn as_constant(&self) -> Option<Gf> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Gf::zero(self.field.base())),
            (Some(0), Some(0)) => Some(self.num.coeffs()[0].clone()),
            _ => None,
        }
    }

    /// d/du by the quotient rule.
    pub fn derivative(&self) -> RatFunc {
        let n1 = self.num.derivative();
        let d1 = self.den.derivative();
        if d1.is_zero() {
            return Self::normalized(&self.field, n1, self.den.clone());
        }
        let num = n1.mul(&self.den).sub(&self.num.mul(&d1));
        Self::normalized(&self.field, num, self.den.mul(&self.den))
    }

    /// Substitutes u ↦ u^k in a polynomial.
    fn inflate(p: &Poly<Gf>, k: usize) -> Poly<Gf> {
        let zero = Gf::zero(p.field());
        let mut coeffs = vec![zero; p.coeffs().len().saturating_sub(1) * k + 1];
        for (i, c) in p.coeffs().iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly::new(p.field(), coeffs)
    }

    /// Coordinates over the constants F_q(u^p) in the basis 1, u, …, u^{p−1}.
    pub fn coordinates_over_pth_powers(&self) -> Vec<RatFunc> {
        let p = self.field.p() as usize;
        let base = self.field.base();
        // y = N·D^{p−1} / D^p and D^p ∈ F_q(u^p)
        let m = self.num.mul(&self.den.pow(p as u64 - 1));
        let dp = self.den.pow(p as u64);
        (0..p)
            .map(|i| {
                let part: Vec<Gf> = m.coeffs().iter().skip(i).step_by(p).cloned().collect();
                let part = Self::inflate(&Poly::new(base, part), p);
                Self::normalized(&self.field, part, dp.clone())
            })
            .collect()
    }

    fn assert_same(&self, other: &Self) {
        assert!(self.field == other.field, "cross-field operation: {:?} vs {:?}", self.field, other.field);
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.num == other.num && self.den == other.den
    }
}

impl Eq for RatFunc {}

fn poly_compound(p: &Poly<Gf>) -> bool {
    p.term_count() > 1 || p.coeffs().iter().any(|c| !c.is_zero() && c.is_compound())
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.field.var_name();
        let num = self.num.display_in(var);
        if self.den.is_one() {
            return f.write_str(&num);
        }
        let den = self.den.display_in(var);
        let num = if poly_compound(&self.num) { format!("({num})") } else { num };
        let den = if poly_compound(&self.den) || self.den.term_count() == 1 && !self.den.coeffs().last().unwrap().is_one() {
            format!("({den})")
        } else {
            den
        };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FieldElement for RatFunc {
    type Field = FunctionField;

    fn field(&self) -> &FunctionField {
        &self.field
    }

    fn zero(field: &FunctionField) -> Self {
        Self::from_poly(field, Poly::zero(field.base()))
    }

    fn one(field: &FunctionField) -> Self {
        Self::from_poly(field, Poly::one(field.base()))
    }

    fn from_int(field: &FunctionField, n: i64) -> Self {
        Self::from_poly(field, Poly::constant(Gf::from_int(field.base(), n)))
    }

    fn characteristic(field: &FunctionField) -> u64 {
        field.p()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        if self.den == rhs.den {
            return Self::normalized(&self.field, self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::normalized(&self.field, num, self.den.mul(&rhs.den))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn neg(&self) -> Self {
        RatFunc { field: self.field.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&self.field);
        }
        Self::normalized(&self.field, self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(&self.field, self.den.clone(), self.num.clone()))
    }

    fn generators(field: &FunctionField) -> Vec<Self> {
        field.symbols().into_iter().map(|(_, v)| v).collect()
    }

    fn distinct_elements(field: &FunctionField, count: usize) -> Option<Vec<Self>> {
        let q = field.base().order();
        let out = (0..count as u128)
            .map(|mut i| {
                let mut coeffs = Vec::new();
                while i > 0 {
                    coeffs.push(field.base().from_index(i % q));
                    i /= q;
                }
                Self::from_poly(field, Poly::new(field.base(), coeffs))
            })
            .collect();
        Some(out)
    }

    fn all_elements(_field: &FunctionField) -> Option<Vec<Self>> {
        None
    }

    /// Numerator of degree ≤ 2 over a monic denominator of degree ≤ 1.
    fn random(field: &FunctionField, rng: &mut dyn RngCore) -> Self {
        let base = field.base();
        let num = Poly::new(base, (0..3).map(|_| Gf::random(base, rng)).collect());
        let den = if rng.next_u32().is_multiple_of(2) {
            Poly::one(base)
        } else {
            Poly::new(base, vec![Gf::random(base, rng), Gf::one(base)])
        };
        Self::normalized(field, num, den)
    }

    fn parse(field: &FunctionField, text: &str) -> Result<Self> {
        parse_field_element(field, &field.symbols(), text)
    }

    fn is_compound(&self) -> bool {
        !self.den.is_one() || poly_compound(&self.num)
    }
}

/// A derivation δ = r·d/du on F_q(u), determined by its value r = δ(u).
///
/// Since (d/du)^p = 0, δ^p = μ·δ with μ = δ^{p−1}(r)/r a constant, so the
/// minimum polynomial is g(t) = t^p − μ t.
#[derive(Clone, PartialEq)]
pub struct DerivationSpec {
    image: RatFunc,
    c1: RatFunc,
}

impl fmt::Debug for DerivationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "δ(u) = {}", self.image)
    }
}

impl DerivationSpec {
    pub fn new(image: RatFunc) -> Result<Self> {
        if image.is_zero() {
            return Err(Error::InvalidDerivation("δ(u) = 0 gives the zero derivation".into()));
        }
        let mut spec = DerivationSpec { c1: RatFunc::zero(image.field()), image };
        let p = spec.p() as usize;
        let mu = spec.apply_n(&spec.image, p - 1).div(&spec.image)?;
        if !spec.apply(&mu).is_zero() {
            return Err(Error::InvalidDerivation(format!("δ^p/δ = {mu} is not a constant")));
        }
        spec.c1 = mu.neg();
        if !spec.check_min_poly(&[spec.c1.clone(), RatFunc::one(spec.image.field())]) {
            return Err(Error::InvalidDerivation("minimum polynomial check failed".into()));
        }
        Ok(spec)
    }

    /// δ = d/du.
    pub fn d_du(field: &FunctionField) -> Self {
        Self::new(RatFunc::one(field)).expect("d/du is a derivation")
    }

    pub fn image(&self) -> &RatFunc {
        &self.image
    }

    pub fn field(&self) -> &FunctionField {
        self.image.field()
    }

    pub fn p(&self) -> u64 {
        self.image.field().p()
    }

    /// The coefficient c_1 in g(t) = t^p + c_1 t.
    pub fn c1(&self) -> &RatFunc {
        &self.c1
    }

    /// Coefficients of g(t) = t^p + c_1 t as an ordinary polynomial in t.
    pub fn min_poly_coeffs(&self) -> Vec<RatFunc> {
        let p = self.p() as usize;
        let field = self.field();
        let mut out = vec![RatFunc::zero(field); p + 1];
        out[1] = self.c1.clone();
        out[p] = RatFunc::one(field);
        out
    }

    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        self.image.mul(&f.derivative())
    }

    pub fn apply_n(&self, f: &RatFunc, i: usize) -> RatFunc {
        (0..i).fold(f.clone(), |acc, _| self.apply(&acc))
    }

    pub fn is_constant(&self, f: &RatFunc) -> bool {
        self.apply(f).is_zero()
    }

    /// Checks a candidate p-polynomial, given by its coefficients on
    /// t, t^p, t^{p^2}, … (little-endian, last one 1): all coefficients are
    /// constants, it annihilates u, and it has the least possible p-degree.
    /// Because δ ≠ 0 the least p-degree is 1.
    pub fn check_min_poly(&self, p_coeffs: &[RatFunc]) -> bool {
        let Some(last) = p_coeffs.last() else { return false };
        if !last.is_one() || p_coeffs.iter().any(|c| !self.is_constant(c)) {
            return false;
        }
        let p = self.p() as usize;
        let u = self.field().var();
        let mut value = RatFunc::zero(self.field());
        let mut power = 1usize;
        for c in p_coeffs {
            value = value.add(&c.mul(&self.apply_n(&u, power)));
            power *= p;
        }
        value.is_zero() && p_coeffs.len() == 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f3u() -> FunctionField {
        FunctionField::new(&GaloisField::prime(3).unwrap())
    }

    fn f25u() -> (FunctionField, DerivationSpec) {
        let k = FunctionField::new(&GaloisField::parse_tower(5, "g^2-2").unwrap());
        let d = DerivationSpec::new(RatFunc::parse(&k, "g*u").unwrap()).unwrap();
        (k, d)
    }

    fn rf(k: &FunctionField, s: &str) -> RatFunc {
        RatFunc::parse(k, s).unwrap()
    }

    #[test]
    fn ratfunc_arith_examples() {
        let k = f3u();
        let u = k.var();
        assert_eq!(u.add(&u), rf(&k, "2*u"));
        assert_eq!(u.inv().unwrap().to_string(), "1/u");
        let x = rf(&k, "u/(u+1)").mul(&rf(&k, "u+1"));
        assert_eq!(x, u);
        assert_eq!(RatFunc::zero(&k).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn normalization_makes_denominator_monic() {
        let k = f3u();
        let a = rf(&k, "(2*u+2)/(2*u^2+2)");
        assert!(a.den().is_monic());
        assert_eq!(a, rf(&k, "(u+1)/(u^2+1)"));
        assert_eq!(a.to_string(), "(u + 1)/(u^2 + 1)");
        assert_eq!(rf(&k, &a.to_string()), a);
    }

    #[test]
    fn derivation_examples() {
        let k = f3u();
        let d = DerivationSpec::d_du(&k);
        assert_eq!(d.apply(&rf(&k, "u^2")), rf(&k, "2*u"));
        assert!(d.apply(&rf(&k, "u^3")).is_zero());
        let (k25, d25) = f25u();
        assert_eq!(d25.apply(&k25.var()), rf(&k25, "g*u"));
    }

    #[test]
    fn min_poly_examples() {
        let k = f3u();
        let d = DerivationSpec::d_du(&k);
        let one = RatFunc::one(&k);
        let zero = RatFunc::zero(&k);
        assert!(d.check_min_poly(&[zero.clone(), one.clone()]));
        assert!(!d.check_min_poly(std::slice::from_ref(&one)));
        assert!(d.c1().is_zero());

        let (k25, d25) = f25u();
        // g^4 = -1 in this presentation, so c_1 = 1 and g(t) = t^5 + t
        assert!(d25.c1().is_one());
        assert!(d25.check_min_poly(&[RatFunc::one(&k25), RatFunc::one(&k25)]));
        assert!(!d25.check_min_poly(&[RatFunc::zero(&k25), RatFunc::one(&k25)]));
    }

    #[test]
    fn fifth_power_of_scaled_euler_operator() {
        // oracle: δ(u^k) = c k u^k, so δ^5(u^k) = c^5 k^5 u^k = -c k u^k
        let (k, d) = f25u();
        let c = Gf::parse(k.base(), "g").unwrap();
        for e in 1..6i64 {
            let uk = k.var().powi(e).unwrap();
            let expected = uk.mul(&k.constant(&c.mul(&Gf::from_int(k.base(), -e))));
            assert_eq!(d.apply_n(&uk, 5), expected);
        }
    }

    #[test]
    fn constants_examples() {
        let k = f3u();
        let d = DerivationSpec::d_du(&k);
        assert!(d.is_constant(&rf(&k, "u^3")));
        assert!(!d.is_constant(&k.var()));
        assert!(d.is_constant(&rf(&k, "(u^3+1)/(u^3+2)")));
    }

    #[test]
    fn leibniz_rule_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (k25, d25) = f25u();
        let k3 = f3u();
        let d3 = DerivationSpec::new(rf(&k3, "u^2+1")).unwrap();
        for (k, d) in [(k3, d3), (k25, d25)] {
            for _ in 0..1000 {
                let f = RatFunc::random(&k, &mut rng);
                let g = RatFunc::random(&k, &mut rng);
                assert_eq!(d.apply(&f.mul(&g)), d.apply(&f).mul(&g).add(&f.mul(&d.apply(&g))));
            }
        }
    }

    #[test]
    fn constants_are_closed_and_killed() {
        let k = f3u();
        let d = DerivationSpec::d_du(&k);
        let a = rf(&k, "(u^6+2)/(u^3+1)");
        let b = rf(&k, "u^9+u^3");
        for c in [a.add(&b), a.mul(&b), a.div(&b).unwrap(), a.sub(&b)] {
            assert!(d.is_constant(&c));
        }
    }

    #[test]
    fn pth_power_basis_coordinates() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (k, d) = f25u();
        for _ in 0..200 {
            let y = RatFunc::random(&k, &mut rng);
            let coords = y.coordinates_over_pth_powers();
            assert_eq!(coords.len(), 5);
            let mut back = RatFunc::zero(&k);
            let mut ui = RatFunc::one(&k);
            for c in &coords {
                assert!(d.is_constant(c));
                back = back.add(&c.mul(&ui));
                ui = ui.mul(&k.var());
            }
            assert_eq!(back, y);
        }
    }

    #[test]
    fn powers_of_u_are_independent_over_constants() {
        // u^i maps to the i-th unit vector, so 1, u, u^2 span a space of dimension 3
        let k = f3u();
        for i in 0..3 {
            let ui = k.var().powi(i).unwrap();
            let coords = ui.coordinates_over_pth_powers();
            for (j, c) in coords.iter().enumerate() {
                assert_eq!(c.is_one(), i as usize == j);
                assert_eq!(c.is_zero(), i as usize != j);
            }
        }
    }
}
