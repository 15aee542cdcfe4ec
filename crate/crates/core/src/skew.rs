//! The skew polynomial ring R = K[t; σ, δ] with t·a = σ(a)t + δ(a).
//!
//! Two coefficient domains are supported: finite fields with σ a power of
//! Frobenius and δ = 0, and rational function fields F_q(u) with σ = id and
//! δ an algebraic derivation.

use std::fmt;
use std::sync::Arc;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::expr::Env;
use crate::field::{write_term, FieldElement};
use crate::function_field::{DerivationSpec, FunctionField, RatFunc};
use crate::gf::{GaloisField, Gf};
use crate::linalg::{invert, mat_vec, Matrix};
use crate::poly::Poly;

/// How the central variable x is defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterDef {
    /// x = u⁻¹tⁿ.
    UInvTn,
    /// x = g(t), the minimum polynomial of δ.
    GOfT,
}

impl CenterDef {
    pub fn label(self) -> &'static str {
        match self {
            CenterDef::UInvTn => "u^-1 t^n",
            CenterDef::GOfT => "g(t)",
        }
    }
}

/// A coefficient field together with the kind of twist it carries.
pub trait OreCoefficient: FieldElement {
    type Twist: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    /// Checks the twist and central unit; returns n (the order of σ, or p
    /// for a derivation).
    fn validate(field: &Self::Field, twist: &Self::Twist, u: &Self) -> Result<usize>;
    fn center_def() -> CenterDef;
    fn sigma(twist: &Self::Twist, a: &Self) -> Self;
    /// δ(a), or `None` when δ = 0.
    fn delta(twist: &Self::Twist, a: &Self) -> Option<Self>;
    /// Coefficients of the central generator x as a polynomial in t.
    fn central_generator(field: &Self::Field, twist: &Self::Twist, n: usize, u: &Self) -> Vec<Self>;
    /// Membership in the central field F (fixed by σ and killed by δ).
    fn in_center_field(twist: &Self::Twist, a: &Self) -> bool;
    /// Precomputed data for [`OreCoefficient::coordinates`].
    fn coordinate_data(field: &Self::Field, twist: &Self::Twist, n: usize) -> Result<Matrix<Self>>;
    /// Coordinates of `a` over F in a fixed basis of K/F of size n; each
    /// coordinate lies in F.
    fn coordinates(ring: &SkewRing<Self>, a: &Self) -> Vec<Self>;
    /// N_{K/F}(a).
    fn field_norm(ring: &SkewRing<Self>, a: &Self) -> Self;
    /// Complete factorization of a monic polynomial over F.
    fn factor_central_poly(
        ring: &SkewRing<Self>,
        h: &Poly<Self>,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<(Poly<Self>, usize)>>;
}

/// σ = (a ↦ a^{p^power}) on a finite field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusTwist {
    pub power: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FrobeniusTwist {
    /// Absolute degree of the fixed field of σ inside `field`.
    pub fn fixed_degree(&self, field: &GaloisField) -> usize {
        gcd(self.power % field.degree(), field.degree())
    }
}

impl OreCoefficient for Gf {
    type Twist = FrobeniusTwist;

    fn validate(field: &GaloisField, twist: &FrobeniusTwist, u: &Gf) -> Result<usize> {
        let n = field.degree() / twist.fixed_degree(field);
        if n == 1 {
            return Err(Error::TrivialTwist(format!(
                "a ↦ a^(p^{}) is the identity on {field}",
                twist.power
            )));
        }
        if u.is_zero() || Self::sigma(twist, u) != *u {
            return Err(Error::InvalidCentralUnit(format!("u = {u} must be nonzero and fixed by σ")));
        }
        Ok(n)
    }

    fn center_def() -> CenterDef {
        CenterDef::UInvTn
    }

    fn sigma(twist: &FrobeniusTwist, a: &Gf) -> Gf {
        a.field().frobenius(a, twist.power)
    }

    fn delta(_: &FrobeniusTwist, _: &Gf) -> Option<Gf> {
        None
    }

    fn central_generator(field: &GaloisField, _: &FrobeniusTwist, n: usize, u: &Gf) -> Vec<Gf> {
        let mut out = vec![Gf::zero(field); n + 1];
        out[n] = u.inv().expect("validated unit");
        out
    }

    fn in_center_field(twist: &FrobeniusTwist, a: &Gf) -> bool {
        Self::sigma(twist, a) == *a
    }

    /// Inverse of V with V[k][i] = σ^k(β)^i, for β with n distinct
    /// conjugates under σ.
    fn coordinate_data(field: &GaloisField, twist: &FrobeniusTwist, n: usize) -> Result<Matrix<Gf>> {
        let candidates = std::iter::once(field.gen()).chain((0..field.order()).map(|i| field.from_index(i)));
        for beta in candidates {
            let conj: Vec<Gf> = (0..n).map(|k| field.frobenius(&beta, k * twist.power)).collect();
            let distinct = (0..n).all(|i| (i + 1..n).all(|j| conj[i] != conj[j]));
            if !distinct {
                continue;
            }
            let v: Matrix<Gf> = conj.iter().map(|c| (0..n).map(|i| c.pow(i as u128)).collect()).collect();
            return invert(field, &v);
        }
        Err(Error::InvalidModulus("no element generates the extension".into()))
    }

    fn coordinates(ring: &SkewRing<Gf>, a: &Gf) -> Vec<Gf> {
        let n = ring.n();
        let conj: Vec<Gf> = (0..n).map(|k| ring.sigma_pow(a, k)).collect();
        mat_vec(ring.field(), &ring.0.coords, &conj)
    }

    fn field_norm(ring: &SkewRing<Gf>, a: &Gf) -> Gf {
        ring.field()
            .relative_norm(a, ring.twist().fixed_degree(ring.field()))
            .expect("fixed field is a subfield")
    }

    fn factor_central_poly(
        ring: &SkewRing<Gf>,
        h: &Poly<Gf>,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<(Poly<Gf>, usize)>> {
        Ok(crate::factor::factor_over_subfield(h, ring.twist().fixed_degree(ring.field()), rng))
    }
}

impl OreCoefficient for RatFunc {
    type Twist = DerivationSpec;

    fn validate(field: &FunctionField, twist: &DerivationSpec, u: &RatFunc) -> Result<usize> {
        if twist.field() != field {
            return Err(Error::FieldMismatch);
        }
        if !u.is_one() {
            return Err(Error::InvalidCentralUnit("the derivation case uses x = g(t); u must be 1".into()));
        }
        Ok(twist.p() as usize)
    }

    fn center_def() -> CenterDef {
        CenterDef::GOfT
    }

    fn sigma(_: &DerivationSpec, a: &RatFunc) -> RatFunc {
        a.clone()
    }

    fn delta(twist: &DerivationSpec, a: &RatFunc) -> Option<RatFunc> {
        Some(twist.apply(a))
    }

    fn central_generator(_: &FunctionField, twist: &DerivationSpec, _: usize, _: &RatFunc) -> Vec<RatFunc> {
        twist.min_poly_coeffs()
    }

    fn in_center_field(twist: &DerivationSpec, a: &RatFunc) -> bool {
        twist.is_constant(a)
    }

    fn coordinate_data(_: &FunctionField, _: &DerivationSpec, _: usize) -> Result<Matrix<RatFunc>> {
        Ok(Vec::new())
    }

    fn coordinates(_: &SkewRing<RatFunc>, a: &RatFunc) -> Vec<RatFunc> {
        a.coordinates_over_pth_powers()
    }

    /// K/F is purely inseparable of degree p, so the norm is a^p.
    fn field_norm(ring: &SkewRing<RatFunc>, a: &RatFunc) -> RatFunc {
        a.pow(ring.n() as u128)
    }

    fn factor_central_poly(
        _: &SkewRing<RatFunc>,
        _: &Poly<RatFunc>,
        _: &mut dyn RngCore,
    ) -> Result<Vec<(Poly<RatFunc>, usize)>> {
        Err(Error::InfiniteConstantField)
    }
}

/// Descriptor of K[t; σ, δ] with its central unit u and center F[x].
pub struct SkewRing<C: OreCoefficient>(Arc<RingInner<C>>);

struct RingInner<C: OreCoefficient> {
    field: C::Field,
    twist: C::Twist,
    u: C,
    n: usize,
    central: Vec<C>,
    coords: Matrix<C>,
}

impl<C: OreCoefficient> Clone for SkewRing<C> {
    fn clone(&self) -> Self {
        SkewRing(self.0.clone())
    }
}

impl<C: OreCoefficient> PartialEq for SkewRing<C> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.twist == other.0.twist && self.0.u == other.0.u)
    }
}

impl<C: OreCoefficient> fmt::Debug for SkewRing<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[t; {:?}], u = {}", self.0.field, self.0.twist, self.0.u)
    }
}

impl<C: OreCoefficient> SkewRing<C> {
    pub fn new(field: &C::Field, twist: C::Twist) -> Result<Self> {
        Self::with_unit(field, twist, C::one(field))
    }

    pub fn with_unit(field: &C::Field, twist: C::Twist, u: C) -> Result<Self> {
        u.check_same_field(&C::one(field))?;
        let n = C::validate(field, &twist, &u)?;
        let central = C::central_generator(field, &twist, n, &u);
        let coords = C::coordinate_data(field, &twist, n)?;
        Ok(SkewRing(Arc::new(RingInner { field: field.clone(), twist, u, n, central, coords })))
    }

    pub fn field(&self) -> &C::Field {
        &self.0.field
    }

    pub fn twist(&self) -> &C::Twist {
        &self.0.twist
    }

    pub fn u(&self) -> &C {
        &self.0.u
    }

    /// n = order of σ, or p in the derivation case; the degree of x in t.
    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn center_def(&self) -> CenterDef {
        C::center_def()
    }

    pub fn sigma(&self, a: &C) -> C {
        C::sigma(&self.0.twist, a)
    }

    pub fn sigma_pow(&self, a: &C, k: usize) -> C {
        (0..k).fold(a.clone(), |acc, _| self.sigma(&acc))
    }

    pub fn delta(&self, a: &C) -> Option<C> {
        C::delta(&self.0.twist, a)
    }

    /// δ^k(a); zero for k ≥ 1 when δ = 0.
    pub fn delta_pow(&self, a: &C, k: usize) -> C {
        (0..k).fold(a.clone(), |acc, _| self.delta(&acc).unwrap_or_else(|| C::zero(self.field())))
    }

    pub fn in_center_field(&self, a: &C) -> bool {
        C::in_center_field(&self.0.twist, a)
    }

    pub fn coordinates(&self, a: &C) -> Vec<C> {
        C::coordinates(self, a)
    }

    pub fn field_norm(&self, a: &C) -> C {
        C::field_norm(self, a)
    }

    pub fn poly(&self, coeffs: Vec<C>) -> SkewPolynomial<C> {
        SkewPolynomial::new(self, coeffs)
    }

    pub fn zero(&self) -> SkewPolynomial<C> {
        self.poly(Vec::new())
    }

    pub fn one(&self) -> SkewPolynomial<C> {
        self.constant(C::one(&self.0.field))
    }

    pub fn constant(&self, c: C) -> SkewPolynomial<C> {
        self.poly(vec![c])
    }

    pub fn t(&self) -> SkewPolynomial<C> {
        self.monomial(C::one(&self.0.field), 1)
    }

    /// c·t^k.
    pub fn monomial(&self, c: C, k: usize) -> SkewPolynomial<C> {
        let mut coeffs = vec![C::zero(&self.0.field); k];
        coeffs.push(c);
        self.poly(coeffs)
    }

    /// The central generator x as an element of R.
    pub fn x(&self) -> SkewPolynomial<C> {
        self.poly(self.0.central.clone())
    }

    /// Parses a literal such as "(g+1)*t^2 + g*t + 1". Products are taken
    /// in R, so "t*g" means σ(g)t.
    pub fn parse(&self, text: &str) -> Result<SkewPolynomial<C>> {
        let symbols = symbols_for::<C>(self.field());
        crate::expr::parse(text)?.eval(&SkewEnv { ring: self, symbols: &symbols })
    }
}

/// Field-element symbols available in literals: each generator under its
/// printed name.
pub(crate) fn symbols_for<C: FieldElement>(field: &C::Field) -> Vec<(String, C)> {
    C::generators(field).into_iter().map(|g| (g.to_string(), g)).collect()
}

struct SkewEnv<'a, C: OreCoefficient> {
    ring: &'a SkewRing<C>,
    symbols: &'a [(String, C)],
}

impl<C: OreCoefficient> Env for SkewEnv<'_, C> {
    type Value = SkewPolynomial<C>;

    fn int(&self, n: i64) -> SkewPolynomial<C> {
        self.ring.constant(C::from_int(self.ring.field(), n))
    }

    fn var(&self, name: &str, pos: usize) -> Result<SkewPolynomial<C>> {
        if name == "t" {
            return Ok(self.ring.t());
        }
        self.symbols
            .iter()
            .find(|(s, _)| s == name)
            .map(|(_, v)| self.ring.constant(v.clone()))
            .ok_or_else(|| Error::parse(pos, format!("unknown symbol '{name}'")))
    }

    fn add(&self, a: &SkewPolynomial<C>, b: &SkewPolynomial<C>) -> SkewPolynomial<C> {
        a.add(b)
    }

    fn sub(&self, a: &SkewPolynomial<C>, b: &SkewPolynomial<C>) -> SkewPolynomial<C> {
        a.sub(b)
    }

    fn mul(&self, a: &SkewPolynomial<C>, b: &SkewPolynomial<C>) -> SkewPolynomial<C> {
        a.mul(b)
    }

    fn div(&self, a: &SkewPolynomial<C>, b: &SkewPolynomial<C>, pos: usize) -> Result<SkewPolynomial<C>> {
        match b.degree() {
            Some(0) => Ok(a.mul(&self.ring.constant(b.coeffs[0].inv()?))),
            None => Err(Error::parse(pos, "division by zero")),
            Some(_) => Err(Error::parse(pos, "cannot divide by a polynomial in t")),
        }
    }

    fn pow(&self, a: &SkewPolynomial<C>, e: i64, pos: usize) -> Result<SkewPolynomial<C>> {
        if e < 0 {
            return match a.degree() {
                Some(0) => Ok(self.ring.constant(a.coeffs[0].powi(e)?)),
                _ => Err(Error::parse(pos, "negative powers need a nonzero constant base")),
            };
        }
        Ok(a.pow(e as u64))
    }
}

/// An element Σ a_i tⁱ of a [`SkewRing`].
#[derive(Clone)]
pub struct SkewPolynomial<C: OreCoefficient> {
    ring: SkewRing<C>,
    coeffs: Vec<C>,
}

impl<C: OreCoefficient> PartialEq for SkewPolynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ring == other.ring
    }
}

impl<C: OreCoefficient> Eq for SkewPolynomial<C> {}

impl<C: OreCoefficient> SkewPolynomial<C> {
    pub fn new(ring: &SkewRing<C>, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPolynomial { ring: ring.clone(), coeffs }
    }

    pub fn ring(&self) -> &SkewRing<C> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(|| C::zero(self.ring.field()))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    /// a_m⁻¹·f.
    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) if !l.is_one() => self.scale_left(&l.inv().expect("nonzero lead")),
            _ => self.clone(),
        }
    }

    /// c·f.
    pub fn scale_left(&self, c: &C) -> Self {
        Self::new(&self.ring, self.coeffs.iter().map(|a| c.mul(a)).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(&self.ring, (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.ring, self.coeffs.iter().map(C::neg).collect())
    }

    /// t·self.
    pub fn mul_t(&self) -> Self {
        let zero = C::zero(self.ring.field());
        let mut out = vec![zero; self.coeffs.len() + 1];
        for (j, h) in self.coeffs.iter().enumerate() {
            out[j + 1] = out[j + 1].add(&self.ring.sigma(h));
            if let Some(d) = self.ring.delta(h) {
                out[j] = out[j].add(&d);
            }
        }
        Self::new(&self.ring, out)
    }

    /// Product in R. Panics when the operands live in different rings; see
    /// [`SkewPolynomial::checked_mul`].
    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        if self.is_zero() || rhs.is_zero() {
            return self.ring.zero();
        }
        let zero = C::zero(self.ring.field());
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        let mut power = rhs.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.mul_t();
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in power.coeffs.iter().enumerate() {
                out[j] = out[j].add(&a.mul(b));
            }
        }
        Self::new(&self.ring, out)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.mul(rhs))
    }

    pub fn pow(&self, e: u64) -> Self {
        (0..e).fold(self.ring.one(), |acc, _| acc.mul(self))
    }

    /// (q, r) with self = q·g + r and deg r < deg g.
    pub fn right_divrem(&self, g: &Self) -> Result<(Self, Self)> {
        if self.ring != g.ring {
            return Err(Error::RingMismatch);
        }
        let dg = g.degree().ok_or(Error::DivisionByZeroPolynomial)?;
        let Some(df) = self.degree().filter(|&d| d >= dg) else {
            return Ok((self.ring.zero(), self.clone()));
        };
        let field = self.ring.field();
        let mut shifted = vec![g.clone()];
        for _ in 0..df - dg {
            let next = shifted.last().unwrap().mul_t();
            shifted.push(next);
        }
        let lead_invs: Vec<C> = shifted.iter().map(|s| s.lead().unwrap().inv()).collect::<Result<_>>()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![C::zero(field); df - dg + 1];
        for k in (0..=df - dg).rev() {
            let top = k + dg;
            if rem[top].is_zero() {
                continue;
            }
            let c = rem[top].mul(&lead_invs[k]);
            for (j, s) in shifted[k].coeffs.iter().enumerate() {
                rem[j] = rem[j].sub(&c.mul(s));
            }
            quot[k] = c;
        }
        rem.truncate(dg);
        Ok((Self::new(&self.ring, quot), Self::new(&self.ring, rem)))
    }

    pub fn right_rem(&self, g: &Self) -> Result<Self> {
        Ok(self.right_divrem(g)?.1)
    }

    /// True iff `g` divides `self` on the right.
    pub fn right_divisible_by(&self, g: &Self) -> Result<bool> {
        Ok(self.right_rem(g)?.is_zero())
    }

    /// Monic greatest common right divisor; gcrd(0, 0) = 0.
    pub fn gcrd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.right_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic least common left multiple, by the extended right Euclidean
    /// algorithm: the first vanishing combination s·f + t·g = 0 gives
    /// lclm = s·f.
    pub fn lclm(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return self.ring.zero();
        }
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (self.ring.one(), self.ring.zero());
        while !r1.is_zero() {
            let (q, r) = r0.right_divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
        }
        s1.mul(self).monic()
    }

    /// gcrd(f, t).
    pub fn gcrd_with_t(&self) -> Self {
        self.gcrd(&self.ring.t())
    }

    /// Whether R·f is a two-sided ideal: f·t and f·b lie in R·f for b in a
    /// generating set of K.
    pub fn is_right_invariant(&self) -> bool {
        let field = self.ring.field();
        let probes = std::iter::once(self.ring.t()).chain(C::generators(field).into_iter().map(|b| self.ring.constant(b)));
        probes.into_iter().all(|b| self.mul(&b).right_rem(self).expect("nonzero").is_zero())
    }

    /// (f', k) with f = f'·t^k and gcrd(f', t) = 1.
    pub fn strip_t_factor(&self) -> (Self, usize) {
        assert!(!self.is_zero(), "strip_t_factor of zero");
        let t = self.ring.t();
        let mut f = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = f.right_divrem(&t).expect("t is nonzero");
            if !r.is_zero() {
                return (f, k);
            }
            f = q;
            k += 1;
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        Self::new(&self.ring, self.coeffs.iter().map(f).collect())
    }

    fn assert_same(&self, rhs: &Self) {
        assert!(self.ring == rhs.ring, "cross-ring operation: {:?} vs {:?}", self.ring, rhs.ring);
    }
}

impl<C: OreCoefficient> fmt::Display for SkewPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(&mut out, c, "t", i, first);
            first = false;
        }
        f.write_str(&out)
    }
}

impl<C: OreCoefficient> fmt::Debug for SkewPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f4_ring() -> SkewRing<Gf> {
        let f = GaloisField::parse_tower(2, "g^2+g+1").unwrap();
        SkewRing::<Gf>::new(&f, FrobeniusTwist { power: 1 }).unwrap()
    }

    fn f3u_ring() -> SkewRing<RatFunc> {
        let k = FunctionField::new(&GaloisField::prime(3).unwrap());
        SkewRing::<RatFunc>::new(&k, DerivationSpec::d_du(&k)).unwrap()
    }

    fn random_poly<C: OreCoefficient>(ring: &SkewRing<C>, deg: usize, rng: &mut ChaCha8Rng) -> SkewPolynomial<C> {
        let mut coeffs: Vec<C> = (0..deg).map(|_| C::random(ring.field(), rng)).collect();
        coeffs.push(C::random_nonzero(ring.field(), rng));
        ring.poly(coeffs)
    }

    #[test]
    fn multiplication_examples() {
        let r = f4_ring();
        let p = |s: &str| r.parse(s).unwrap();
        assert_eq!(p("t").mul(&p("g")), p("(g+1)*t"));
        assert_eq!(p("t*g"), p("(g+1)*t"));
        assert_eq!(p("(t+1)*(t+1)"), p("t^2+1"));
        let d = f3u_ring();
        assert_eq!(d.parse("t*u").unwrap(), d.parse("u*t + 1").unwrap());
    }

    #[test]
    fn right_division_examples() {
        let r = f4_ring();
        let p = |s: &str| r.parse(s).unwrap();
        assert_eq!(p("t^2+1").right_divrem(&p("t+1")).unwrap(), (p("t+1"), r.zero()));
        assert_eq!(p("t^2+1").right_divrem(&p("t+g")).unwrap(), (p("t+g+1"), r.zero()));
        assert_eq!(p("(t+g+1)*(t+g)"), p("t^2+1"));
        assert_eq!(p("t+1").right_divrem(&p("t^2")).unwrap(), (r.zero(), p("t+1")));
        assert_eq!(p("t").right_divrem(&r.zero()), Err(Error::DivisionByZeroPolynomial));
    }

    #[test]
    fn gcrd_lclm_examples() {
        let r = f4_ring();
        let p = |s: &str| r.parse(s).unwrap();
        assert_eq!(p("t^2+1").gcrd(&p("t+1")), p("t+1"));
        let f = p("g*t^2+t+1");
        assert_eq!(f.gcrd(&f), f.monic());
        assert_eq!(p("t+1").lclm(&p("t+1")), p("t+1"));
    }

    #[test]
    fn gcrd_with_t_examples() {
        let r = f4_ring();
        let p = |s: &str| r.parse(s).unwrap();
        assert!(p("t^2+1").gcrd_with_t().is_one());
        assert_eq!(p("t^2+t").gcrd_with_t(), p("t"));
        assert!(p("t+g").gcrd_with_t().is_one());
    }

    #[test]
    fn right_invariance_examples() {
        let r = f4_ring();
        let p = |s: &str| r.parse(s).unwrap();
        assert!(p("t^2+1").is_right_invariant());
        assert!(!p("t+g").is_right_invariant());
        assert!(p("t").is_right_invariant());
        // f·g = (g+1)t + g^2 leaves remainder g^2 - (g+1)g = 1 mod t + g
        assert!(!p("(t+g)*g").right_rem(&p("t+g")).unwrap().is_zero());
    }

    #[test]
    fn strip_t_factor_examples() {
        let r = f4_ring();
        let p = |s: &str| r.parse(s).unwrap();
        assert_eq!(p("t^3+t").strip_t_factor(), (p("t^2+1"), 1));
        assert_eq!(p("t+g").strip_t_factor(), (p("t+g"), 0));
        assert_eq!(p("t^2").strip_t_factor(), (r.one(), 2));
    }

    #[test]
    fn ring_construction_errors() {
        let f = GaloisField::parse_tower(2, "g^2+g+1").unwrap();
        assert!(matches!(SkewRing::<Gf>::new(&f, FrobeniusTwist { power: 2 }), Err(Error::TrivialTwist(_))));
        let g = f.gen();
        assert!(matches!(
            SkewRing::<Gf>::with_unit(&f, FrobeniusTwist { power: 1 }, g),
            Err(Error::InvalidCentralUnit(_))
        ));
        let k = FunctionField::new(&GaloisField::prime(3).unwrap());
        assert!(matches!(
            SkewRing::<RatFunc>::with_unit(&k, DerivationSpec::d_du(&k), k.var()),
            Err(Error::InvalidCentralUnit(_))
        ));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = f4_ring();
        let f9 = GaloisField::parse_tower(3, "g^2-g-1").unwrap();
        let b = SkewRing::<Gf>::new(&f9, FrobeniusTwist { power: 1 }).unwrap();
        assert_eq!(a.t().checked_mul(&b.t()), Err(Error::RingMismatch));
        assert_eq!(a.t().right_divrem(&b.t()), Err(Error::RingMismatch));
    }

    #[test]
    fn display_round_trip() {
        let r = f4_ring();
        let f = r.parse("(g+1)*t^2 + g*t + 1").unwrap();
        assert_eq!(f.to_string(), "(g + 1)*t^2 + g*t + 1");
        assert_eq!(r.parse(&f.to_string()).unwrap(), f);
        let d = f3u_ring();
        let h = d.parse("(u^3+1)/(u^3+2)*t^2 + 1/u*t + u").unwrap();
        assert_eq!(d.parse(&h.to_string()).unwrap(), h);
    }

    fn check_ring_laws<C: OreCoefficient>(ring: &SkewRing<C>, rng: &mut ChaCha8Rng, trials: usize, max_deg: usize) {
        for _ in 0..trials {
            let da = (rng.next_u32() as usize) % (max_deg + 1);
            let db = (rng.next_u32() as usize) % (max_deg + 1);
            let dc = (rng.next_u32() as usize) % (max_deg + 1);
            let a = random_poly(ring, da, rng);
            let b = random_poly(ring, db, rng);
            let c = random_poly(ring, dc, rng);
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.mul(&b).degree(), Some(da + db));
            let (q, r) = a.right_divrem(&b).unwrap();
            assert_eq!(q.mul(&b).add(&r), a);
            assert!(r.degree().is_none_or(|d| d < db));
            let g = a.gcrd(&b);
            assert!(a.right_divisible_by(&g).unwrap());
            assert!(b.right_divisible_by(&g).unwrap());
            let l = a.lclm(&b);
            assert!(l.right_divisible_by(&a).unwrap());
            assert!(l.right_divisible_by(&b).unwrap());
            if C::center_def() == CenterDef::UInvTn {
                assert_eq!(l.degree().unwrap() + g.degree().unwrap(), da + db);
            }
        }
    }

    #[test]
    fn ring_laws_hold_over_finite_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        check_ring_laws(&f4_ring(), &mut rng, 300, 5);
        let f8 = GaloisField::parse_tower(2, "g^3+g+1").unwrap();
        check_ring_laws(&SkewRing::<Gf>::new(&f8, FrobeniusTwist { power: 1 }).unwrap(), &mut rng, 300, 5);
        let f9 = GaloisField::parse_tower(3, "g^2-g-1").unwrap();
        let u = Gf::from_int(&f9, 2);
        check_ring_laws(&SkewRing::<Gf>::with_unit(&f9, FrobeniusTwist { power: 1 }, u).unwrap(), &mut rng, 300, 5);
    }

    #[test]
    fn ring_laws_hold_over_function_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        check_ring_laws(&f3u_ring(), &mut rng, 60, 3);
    }

    #[test]
    fn central_generator_commutes() {
        let r = f4_ring();
        let d = f3u_ring();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let f = random_poly(&r, 3, &mut rng);
            assert_eq!(f.mul(&r.x()), r.x().mul(&f));
            let h = random_poly(&d, 2, &mut rng);
            assert_eq!(h.mul(&d.x()), d.x().mul(&h));
        }
    }

    #[test]
    fn coordinates_reconstruct_elements() {
        let f = GaloisField::parse_tower(2, "g1^2+g1+1; g^3+g1").unwrap();
        // σ = Frobenius squared fixes F_4, so n = 3
        let r = SkewRing::<Gf>::new(&f, FrobeniusTwist { power: 2 }).unwrap();
        assert_eq!(r.n(), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..100 {
            let a = Gf::random(&f, &mut rng);
            let c = r.coordinates(&a);
            assert!(c.iter().all(|x| r.in_center_field(x)));
            let c2 = r.coordinates(&a.add(&f.gen()));
            let diff: Vec<Gf> = c2.iter().zip(&c).map(|(x, y)| x.sub(y)).collect();
            assert_eq!(diff, r.coordinates(&f.gen()));
        }
    }

    proptest! {
        #[test]
        fn f4_products_associate(a in prop::collection::vec(0u128..4, 1..5),
                                 b in prop::collection::vec(0u128..4, 1..5),
                                 c in prop::collection::vec(0u128..4, 1..5)) {
            let r = f4_ring();
            let mk = |v: &Vec<u128>| r.poly(v.iter().map(|&i| r.field().from_index(i)).collect());
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}
