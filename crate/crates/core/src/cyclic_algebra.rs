//! Split cyclic algebras A = (E/C, γ, a) over finite fields and the reduced
//! norm on A[t; σ].
//!
//! F = F_q ⊂ C = F_{q^n} ⊂ E = F_{q^{nd}} with gcd(n, d) = 1, γ = (e ↦ e^{q^n})
//! and σ = (e ↦ e^{q^d}). A is spanned over E by 1, z, …, z^{d−1} with
//! z·e = γ(e)z and z^d = a ∈ F^×. σ acts on A coefficientwise and fixes z.
//! Finite fields carry no noncommutative division algebras, so A is a matrix
//! algebra; the norm identities checked here do not depend on that.

use std::fmt;
use std::sync::Arc;

use rand::RngCore;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::gf::{GaloisField, Gf};
use crate::linalg::{invert, Matrix};
use crate::norm::{det_bareiss, reduced_norm};
use crate::poly::Poly;
use crate::skew::{FrobeniusTwist, SkewPolynomial, SkewRing};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_power(q: u64) -> Result<(u64, usize)> {
    let p = (2..=q).find(|k| q.is_multiple_of(*k)).ok_or(Error::NonPrimeCharacteristic(q))?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidAlgebra(format!("q = {q} is not a prime power")));
    }
    Ok((p, e))
}

/// Parameters (q, n, d, a, u) of a split cyclic algebra with its twist.
#[derive(Clone)]
pub struct CyclicAlgebra(Arc<Inner>);

struct Inner {
    field: GaloisField,
    q: u64,
    e: usize,
    n: usize,
    d: usize,
    a: Gf,
    u: Gf,
}

impl PartialEq for CyclicAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && (self.0.n, self.0.d) == (other.0.n, other.0.d)
                && self.0.a == other.0.a
                && self.0.u == other.0.u)
    }
}

impl fmt::Debug for CyclicAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicAlgebra(q={}, n={}, d={}, a={}, u={})", self.0.q, self.0.n, self.0.d, self.0.a, self.0.u)
    }
}

impl CyclicAlgebra {
    /// E is F_p adjoined a root of the first irreducible of degree
    /// e·n·d over F_p, where q = p^e. `a` and `u` are integers read in F_p.
    pub fn new(q: u64, n: usize, d: usize, a: i64, u: i64) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        if n < 2 || d < 1 {
            return Err(Error::InvalidAlgebra(format!("need n >= 2 and d >= 1, got n = {n}, d = {d}")));
        }
        let modulus = GaloisField::first_irreducible(p, e * n * d)?;
        let field = GaloisField::new(p, &[modulus.into_iter().map(|c| vec![c]).collect()])?;
        let (a, u) = (Gf::from_int(&field, a), Gf::from_int(&field, u));
        Self::with_field(field, q, n, d, a, u)
    }

    /// `field` must have degree e·n·d over F_p for q = p^e.
    pub fn with_field(field: GaloisField, q: u64, n: usize, d: usize, a: Gf, u: Gf) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        if p != field.p() || field.degree() != e * n * d {
            return Err(Error::InvalidAlgebra(format!("E must have degree {} over F_{p}", e * n * d)));
        }
        if gcd(n, d) != 1 {
            return Err(Error::InvalidAlgebra(format!("gcd(n, d) = {} must be 1", gcd(n, d))));
        }
        for (name, v) in [("a", &a), ("u", &u)] {
            if v.is_zero() || !field.in_subfield(v, e) {
                return Err(Error::InvalidAlgebra(format!("{name} = {v} must be a nonzero element of F_{q}")));
            }
        }
        let alg = CyclicAlgebra(Arc::new(Inner { field, q, e, n, d, a, u }));
        alg.check_structure()?;
        Ok(alg)
    }

    /// γσ = σγ, σ of order n on C, and Fix(σ) ∩ C = F.
    fn check_structure(&self) -> Result<()> {
        let g = self.field().gen();
        if self.gamma(&self.sigma(&g)) != self.sigma(&self.gamma(&g)) {
            return Err(Error::InvalidAlgebra("γ and σ do not commute".into()));
        }
        let cdeg = self.0.e * self.0.n;
        let field = self.field();
        let gen_c = (0..field.order())
            .map(|i| field.from_index(i))
            .find(|x| self.in_c(x) && (1..cdeg).all(|j| !cdeg.is_multiple_of(j) || !field.in_subfield(x, j)))
            .ok_or_else(|| Error::InvalidAlgebra("C has no generator".into()))?;
        let order = (1..=self.0.n).find(|&k| self.sigma_pow(&gen_c, k) == gen_c).unwrap_or(0);
        if order != self.0.n {
            return Err(Error::InvalidAlgebra(format!("σ has order {order} on C, expected {}", self.0.n)));
        }
        Ok(())
    }

    pub fn field(&self) -> &GaloisField {
        &self.0.field
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn d(&self) -> usize {
        self.0.d
    }

    pub fn a(&self) -> &Gf {
        &self.0.a
    }

    pub fn u(&self) -> &Gf {
        &self.0.u
    }

    pub fn gamma(&self, x: &Gf) -> Gf {
        self.field().frobenius(x, self.0.e * self.0.n)
    }

    pub fn gamma_pow(&self, x: &Gf, k: usize) -> Gf {
        self.field().frobenius(x, self.0.e * self.0.n * k)
    }

    pub fn sigma(&self, x: &Gf) -> Gf {
        self.field().frobenius(x, self.0.e * self.0.d)
    }

    pub fn sigma_pow(&self, x: &Gf, k: usize) -> Gf {
        self.field().frobenius(x, self.0.e * self.0.d * k)
    }

    pub fn in_c(&self, x: &Gf) -> bool {
        self.field().in_subfield(x, self.0.e * self.0.n)
    }

    pub fn in_f(&self, x: &Gf) -> bool {
        self.field().in_subfield(x, self.0.e)
    }

    pub fn norm_e_f(&self, x: &Gf) -> Gf {
        self.field().relative_norm(x, self.0.e).expect("subfield")
    }

    pub fn norm_e_c(&self, x: &Gf) -> Gf {
        self.field().relative_norm(x, self.0.e * self.0.n).expect("subfield")
    }

    pub fn random_e(&self, rng: &mut dyn RngCore) -> Gf {
        Gf::random(self.field(), rng)
    }

    pub fn random_c(&self, rng: &mut dyn RngCore) -> Gf {
        let x = Gf::random(self.field(), rng);
        self.field().relative_trace(&x, self.0.e * self.0.n).expect("subfield")
    }

    pub fn element(&self, mut coeffs: Vec<Gf>) -> AlgebraElement {
        assert!(coeffs.len() <= self.0.d, "at most d coefficients");
        coeffs.resize(self.0.d, Gf::zero(self.field()));
        AlgebraElement { alg: self.clone(), c: coeffs }
    }

    pub fn from_e(&self, x: Gf) -> AlgebraElement {
        self.element(vec![x])
    }

    pub fn zero(&self) -> AlgebraElement {
        self.element(Vec::new())
    }

    pub fn one(&self) -> AlgebraElement {
        self.from_e(Gf::one(self.field()))
    }

    /// z^k, reduced with z^d = a.
    pub fn z_pow(&self, k: usize) -> AlgebraElement {
        let d = self.0.d;
        let coeff = self.0.a.pow((k / d) as u128);
        let mut c = vec![Gf::zero(self.field()); d];
        c[k % d] = coeff;
        self.element(c)
    }

    pub fn random_element(&self, rng: &mut dyn RngCore) -> AlgebraElement {
        self.element((0..self.0.d).map(|_| self.random_e(rng)).collect())
    }

    pub fn poly(&self, coeffs: Vec<AlgebraElement>) -> AlgebraPoly {
        AlgebraPoly::new(self, coeffs)
    }

    /// Σ c_i t^i with c_i ∈ E.
    pub fn poly_from_e(&self, coeffs: Vec<Gf>) -> AlgebraPoly {
        self.poly(coeffs.into_iter().map(|c| self.from_e(c)).collect())
    }

    /// E[t; σ] with the same u, as a skew ring in its own right.
    pub fn e_subring(&self) -> Result<SkewRing<Gf>> {
        SkewRing::<Gf>::with_unit(self.field(), FrobeniusTwist { power: self.0.e * self.0.d }, self.0.u.clone())
    }

    /// The representation of A in M_d(E): row i holds the coordinates of
    /// z^i·α in the left E-basis 1, z, …, z^{d−1}. With rows as images this
    /// map is multiplicative: ω(αβ) = ω(α)ω(β).
    pub fn omega(&self, alpha: &AlgebraElement) -> Matrix<Gf> {
        (0..self.0.d).map(|i| self.z_pow(i).mul(alpha).c).collect()
    }

    /// The n×n matrix ρ(f) over A[x]: row i is t^i·f written as
    /// Σ_j Q_ij(x) t^j using t^n = u·x. Entries are coefficient lists in x.
    pub fn rho(&self, f: &AlgebraPoly) -> Vec<Vec<Vec<AlgebraElement>>> {
        let n = self.0.n;
        let mut rows = Vec::with_capacity(n);
        let mut power = f.clone();
        for i in 0..n {
            if i > 0 {
                power = power.mul_t();
            }
            let mut row: Vec<Vec<AlgebraElement>> = vec![Vec::new(); n];
            for (k, c) in power.coeffs.iter().enumerate() {
                let (qk, j) = (k / n, k % n);
                let entry = &mut row[j];
                if entry.len() <= qk {
                    entry.resize(qk + 1, self.zero());
                }
                entry[qk] = entry[qk].add(&c.scale(&self.0.u.pow(qk as u128)));
            }
            rows.push(row);
        }
        rows
    }

    /// ω applied entrywise to ρ(f): a dn×dn matrix over E[x].
    pub fn omega_rho(&self, f: &AlgebraPoly) -> Vec<Vec<Poly<Gf>>> {
        let (n, d) = (self.0.n, self.0.d);
        let field = self.field();
        let mut out = vec![vec![Poly::zero(field); d * n]; d * n];
        for (i, row) in self.rho(f).into_iter().enumerate() {
            for (j, entry) in row.into_iter().enumerate() {
                for (qk, alpha) in entry.iter().enumerate() {
                    if alpha.is_zero() {
                        continue;
                    }
                    let w = self.omega(alpha);
                    for (bi, wrow) in w.iter().enumerate() {
                        for (bj, v) in wrow.iter().enumerate() {
                            let cell = &mut out[i * d + bi][j * d + bj];
                            *cell = cell.add(&Poly::monomial(v.clone(), qk));
                        }
                    }
                }
            }
        }
        out
    }

    /// N(f) = det ω∘ρ(f) ∈ F[x].
    pub fn algebra_norm(&self, f: &AlgebraPoly) -> Result<Poly<Gf>> {
        if f.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        let det = det_bareiss(&self.omega_rho(f));
        if let Some(c) = det.coeffs().iter().find(|c| !self.in_f(c)) {
            return Err(Error::NormNotCentral(c.to_string()));
        }
        Ok(det)
    }

    /// h(x) ↦ h(u⁻¹tⁿ) in A[t; σ].
    pub fn lower(&self, h: &Poly<Gf>) -> AlgebraPoly {
        let n = self.0.n;
        let uinv = self.0.u.inv().expect("u is a unit");
        let mut coeffs = vec![self.zero(); h.coeffs().len().saturating_sub(1) * n + 1];
        for (k, c) in h.coeffs().iter().enumerate() {
            coeffs[k * n] = self.from_e(c.mul(&uinv.pow(k as u128)));
        }
        self.poly(coeffs)
    }

    pub fn to_json(&self) -> Value {
        json!({"q": self.0.q, "n": self.0.n, "d": self.0.d, "a": self.0.a.to_string(), "u": self.0.u.to_string()})
    }
}

/// Σ e_i z^i with e_i ∈ E.
#[derive(Clone, PartialEq)]
pub struct AlgebraElement {
    alg: CyclicAlgebra,
    c: Vec<Gf>,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &[Gf] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Gf::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Gf::is_zero)
    }

    /// The E-component when the element lies in E.
    pub fn as_e(&self) -> Option<&Gf> {
        self.c[1..].iter().all(Gf::is_zero).then(|| &self.c[0])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.alg.element(self.c.iter().zip(&rhs.c).map(|(x, y)| x.add(y)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.alg.element(self.c.iter().zip(&rhs.c).map(|(x, y)| x.sub(y)).collect())
    }

    pub fn neg(&self) -> Self {
        self.alg.element(self.c.iter().map(Gf::neg).collect())
    }

    /// e·self for e ∈ E.
    pub fn scale(&self, e: &Gf) -> Self {
        self.alg.element(self.c.iter().map(|x| e.mul(x)).collect())
    }

    /// (e_i z^i)(f_j z^j) = e_i γ^i(f_j) z^{i+j}.
    pub fn mul(&self, rhs: &Self) -> Self {
        let alg = &self.alg;
        let d = alg.d();
        let mut out = vec![Gf::zero(alg.field()); d];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let mut v = x.mul(&alg.gamma_pow(y, i));
                if i + j >= d {
                    v = v.mul(alg.a());
                }
                out[(i + j) % d] = out[(i + j) % d].add(&v);
            }
        }
        alg.element(out)
    }

    pub fn sigma(&self) -> Self {
        self.alg.element(self.c.iter().map(|x| self.alg.sigma(x)).collect())
    }

    /// The inverse, read off the first row of ω(α)⁻¹.
    pub fn inv(&self) -> Result<Self> {
        let m = invert(self.alg.field(), &self.alg.omega(self))
            .map_err(|_| Error::NotInvertible(format!("{self} is not a unit of the algebra")))?;
        Ok(self.alg.element(m[0].clone()))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            crate::field::write_term(&mut out, c, "z", i, first);
            first = false;
        }
        f.write_str(if first { "0" } else { &out })
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

/// A polynomial Σ α_i t^i in A[t; σ] with t·α = σ(α)t.
#[derive(Clone, PartialEq)]
pub struct AlgebraPoly {
    alg: CyclicAlgebra,
    coeffs: Vec<AlgebraElement>,
}

impl AlgebraPoly {
    pub fn new(alg: &CyclicAlgebra, mut coeffs: Vec<AlgebraElement>) -> Self {
        while coeffs.last().is_some_and(AlgebraElement::is_zero) {
            coeffs.pop();
        }
        AlgebraPoly { alg: alg.clone(), coeffs }
    }

    pub fn coeffs(&self) -> &[AlgebraElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&AlgebraElement> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(AlgebraElement::is_one)
    }

    /// The E-coefficients when every coefficient lies in E.
    pub fn e_coeffs(&self) -> Option<Vec<Gf>> {
        self.coeffs.iter().map(|c| c.as_e().cloned()).collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = self.alg.zero();
        let get = |v: &[AlgebraElement], i: usize| v.get(i).cloned().unwrap_or_else(|| zero.clone());
        Self::new(&self.alg, (0..n).map(|i| get(&self.coeffs, i).add(&get(&rhs.coeffs, i))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&Self::new(&self.alg, rhs.coeffs.iter().map(AlgebraElement::neg).collect()))
    }

    /// t·self.
    pub fn mul_t(&self) -> Self {
        let mut coeffs = vec![self.alg.zero()];
        coeffs.extend(self.coeffs.iter().map(AlgebraElement::sigma));
        Self::new(&self.alg, coeffs)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::new(&self.alg, Vec::new());
        }
        let mut out = vec![self.alg.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        let mut power = rhs.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.mul_t();
            }
            for (j, b) in power.coeffs.iter().enumerate() {
                out[j] = out[j].add(&a.mul(b));
            }
        }
        Self::new(&self.alg, out)
    }

    /// (q, r) with self = q·g + r; the leading coefficient of g must be a
    /// unit of A.
    pub fn right_divrem(&self, g: &Self) -> Result<(Self, Self)> {
        let dg = g.degree().ok_or(Error::DivisionByZeroPolynomial)?;
        let lead = g.lead().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![self.alg.zero(); self.coeffs.len().saturating_sub(dg)];
        while let Some(dr) = rem.degree().filter(|&k| k >= dg) {
            let k = dr - dg;
            let mut shifted_lead = lead.clone();
            for _ in 0..k {
                shifted_lead = shifted_lead.sigma();
            }
            let c = rem.lead().unwrap().mul(&shifted_lead.inv()?);
            let mut mono = vec![self.alg.zero(); k];
            mono.push(c.clone());
            rem = rem.sub(&Self::new(&self.alg, mono).mul(g));
            quot[k] = quot[k].add(&c);
            if rem.degree() == Some(dr) {
                return Err(Error::NotInvertible("leading term failed to cancel".into()));
            }
        }
        Ok((Self::new(&self.alg, quot), rem))
    }
}

impl fmt::Display for AlgebraPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{i}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for AlgebraPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraPoly({self})")
    }
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub m: usize,
    pub expected: usize,
    pub actual: Option<usize>,
}

impl DegreeReport {
    pub fn pass(&self) -> bool {
        self.actual == Some(self.expected)
    }
}

/// deg N(f) = d·m, for f with a unit leading coefficient.
pub fn verify_degree_dm(alg: &CyclicAlgebra, f: &AlgebraPoly) -> Result<DegreeReport> {
    let m = f.degree().ok_or(Error::DivisionByZeroPolynomial)?;
    let norm = alg.algebra_norm(f)?;
    Ok(DegreeReport { m, expected: alg.d() * m, actual: norm.degree() })
}

/// Constant and leading coefficients of N(f) for f ∈ E[t; σ], m = kn + r.
#[derive(Debug, Clone)]
pub struct ECoefficientReport {
    pub constant_expected: Gf,
    pub constant_actual: Gf,
    /// (−1)^{dr(n−1)} N_{E/F}(a_m) N_{E/C}(u)^r.
    pub leading_stated: Gf,
    /// The same with the factor N_{E/F}(u)^k contributed by t^{kn} = (ux)^k.
    pub leading_corrected: Gf,
    pub leading_actual: Gf,
}

impl ECoefficientReport {
    pub fn constant_ok(&self) -> bool {
        self.constant_expected == self.constant_actual
    }

    pub fn stated_ok(&self) -> bool {
        self.leading_stated == self.leading_actual
    }

    pub fn corrected_ok(&self) -> bool {
        self.leading_corrected == self.leading_actual
    }

    pub fn pass(&self) -> bool {
        self.constant_ok() && self.stated_ok() && self.corrected_ok()
    }
}

pub fn verify_e_coefficient_formula(alg: &CyclicAlgebra, f: &AlgebraPoly) -> Result<ECoefficientReport> {
    let coeffs = f.e_coeffs().ok_or_else(|| Error::InvalidSpec(format!("{f} has coefficients outside E")))?;
    let m = f.degree().ok_or(Error::DivisionByZeroPolynomial)?;
    let (n, d) = (alg.n(), alg.d());
    let (k, r) = (m / n, m % n);
    let norm = alg.algebra_norm(f)?;
    let field = alg.field();
    let sign = if (d * r * (n - 1)) % 2 == 1 { Gf::from_int(field, -1) } else { Gf::one(field) };
    let stated = sign.mul(&alg.norm_e_f(&coeffs[m])).mul(&alg.norm_e_c(alg.u()).pow(r as u128));
    let corrected = stated.mul(&alg.norm_e_f(alg.u()).pow(k as u128));
    Ok(ECoefficientReport {
        constant_expected: alg.norm_e_f(&coeffs[0]),
        constant_actual: norm.coeff(0),
        leading_stated: stated,
        leading_corrected: corrected,
        leading_actual: norm.coeff(d * m),
    })
}

#[derive(Debug, Clone)]
pub struct DividesReport {
    pub cofactor: AlgebraPoly,
    pub remainder_zero: bool,
    /// f·f♯ = f♯·f = N(f) in A[t; σ].
    pub two_sided: bool,
}

impl DividesReport {
    pub fn pass(&self) -> bool {
        self.remainder_zero && self.two_sided
    }
}

/// Right-divides N(f), lowered into A[t; σ], by f.
pub fn verify_divides(alg: &CyclicAlgebra, f: &AlgebraPoly) -> Result<DividesReport> {
    let norm = alg.lower(&alg.algebra_norm(f)?);
    let (q, r) = norm.right_divrem(f)?;
    let two_sided = f.mul(&q) == norm && q.mul(f) == norm;
    Ok(DividesReport { cofactor: q, remainder_zero: r.is_zero(), two_sided })
}

/// For f ∈ C[t; σ]: N(f) against the d-th power of the norm of f in the
/// skew ring over C, and the predicted factor count.
#[derive(Debug, Clone)]
pub struct FieldCoefficientReport {
    pub norm: Poly<Gf>,
    pub subring_norm: Poly<Gf>,
    pub power_ok: bool,
    pub factor_count: usize,
    pub d: usize,
}

impl FieldCoefficientReport {
    pub fn pass(&self) -> bool {
        self.power_ok && self.factor_count >= self.d
    }
}

pub fn field_coefficient_reducibility(
    alg: &CyclicAlgebra,
    f: &AlgebraPoly,
    rng: &mut dyn RngCore,
) -> Result<FieldCoefficientReport> {
    let coeffs = f.e_coeffs().ok_or_else(|| Error::InvalidSpec(format!("{f} has coefficients outside C")))?;
    if let Some(c) = coeffs.iter().find(|c| !alg.in_c(c)) {
        return Err(Error::InvalidSpec(format!("coefficient {c} is not in C")));
    }
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::Unit(format!("{f} has degree 0")));
    }
    let norm = alg.algebra_norm(f)?;
    // ρ(f) has entries in C[x], so its determinant is the same in any skew
    // ring over a field containing C with the same σ and u
    let ring = alg.e_subring()?;
    let sub = reduced_norm(&SkewPolynomial::new(&ring, coeffs))?.poly().clone();
    let power_ok = sub.pow(alg.d() as u64) == norm;
    let e = alg.field().degree() / (alg.n() * alg.d());
    let factor_count = crate::factor::factor_over_subfield(&norm, e, rng).iter().map(|(_, k)| k).sum();
    Ok(FieldCoefficientReport { norm, subring_norm: sub, power_ok, factor_count, d: alg.d() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn configs() -> Vec<CyclicAlgebra> {
        vec![CyclicAlgebra::new(2, 3, 2, 1, 1).unwrap(), CyclicAlgebra::new(3, 3, 2, 1, 2).unwrap()]
    }

    fn random_poly(alg: &CyclicAlgebra, m: usize, rng: &mut ChaCha8Rng) -> AlgebraPoly {
        let mut coeffs: Vec<AlgebraElement> = (0..m).map(|_| alg.random_element(rng)).collect();
        coeffs.push(alg.one());
        alg.poly(coeffs)
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(CyclicAlgebra::new(2, 2, 2, 1, 1), Err(Error::InvalidAlgebra(_))));
        assert!(matches!(CyclicAlgebra::new(3, 3, 2, 0, 1), Err(Error::InvalidAlgebra(_))));
        assert!(matches!(CyclicAlgebra::new(6, 3, 2, 1, 1), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn omega_examples() {
        let alg = CyclicAlgebra::new(3, 3, 2, 2, 1).unwrap();
        let field = alg.field();
        let g = field.gen();
        let w = alg.omega(&alg.from_e(g.clone()));
        let zero = Gf::zero(field);
        assert_eq!(w, vec![vec![g.clone(), zero.clone()], vec![zero.clone(), alg.gamma(&g)]]);
        let z = alg.z_pow(1);
        let one = Gf::one(field);
        let wz = alg.omega(&z);
        assert_eq!(wz, vec![vec![zero.clone(), one], vec![alg.a().clone(), zero.clone()]]);
        let sq = crate::linalg::mat_mul(field, &wz, &wz);
        assert_eq!(sq, vec![vec![alg.a().clone(), zero.clone()], vec![zero, alg.a().clone()]]);
        assert_eq!(alg.omega(&alg.one()), crate::linalg::identity(field, 2));
    }

    #[test]
    fn algebra_arithmetic_is_associative_and_omega_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for alg in configs() {
            let field = alg.field();
            for _ in 0..30 {
                let (x, y, w) = (alg.random_element(&mut rng), alg.random_element(&mut rng), alg.random_element(&mut rng));
                assert_eq!(x.mul(&y).mul(&w), x.mul(&y.mul(&w)));
                assert_eq!(alg.omega(&x.mul(&y)), crate::linalg::mat_mul(field, &alg.omega(&x), &alg.omega(&y)));
                if let Ok(xi) = x.inv() {
                    assert!(x.mul(&xi).is_one() && xi.mul(&x).is_one());
                }
            }
            // z·e = γ(e)·z
            let g = alg.from_e(field.gen());
            assert_eq!(alg.z_pow(1).mul(&g), alg.from_e(alg.gamma(&field.gen())).mul(&alg.z_pow(1)));
        }
    }

    #[test]
    fn norm_examples() {
        let alg = &configs()[1];
        let field = alg.field();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a0 = alg.random_c(&mut rng);
        let n = alg.algebra_norm(&alg.poly_from_e(vec![a0.clone()])).unwrap();
        let c_norm = field.relative_norm(&a0, 1).unwrap();
        assert_eq!(n, Poly::constant(c_norm));
        let t = alg.poly_from_e(vec![Gf::zero(field), Gf::one(field)]);
        let nt = alg.algebra_norm(&t).unwrap();
        assert_eq!(nt.degree(), Some(2));
        assert_eq!(nt.term_count(), 1);
    }

    #[test]
    fn degree_seven_gives_degree_fourteen() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for alg in configs() {
            let f = random_poly(&alg, 7, &mut rng);
            let rep = verify_degree_dm(&alg, &f).unwrap();
            assert_eq!(rep.actual, Some(14));
        }
    }

    #[test]
    fn reports_pass_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for alg in configs() {
            for m in 0..=4 {
                let f = random_poly(&alg, m, &mut rng);
                assert!(verify_degree_dm(&alg, &f).unwrap().pass());
                assert!(verify_divides(&alg, &f).unwrap().pass());
                let mut ec: Vec<Gf> = (0..=m).map(|_| alg.random_e(&mut rng)).collect();
                ec[m] = Gf::random_nonzero(alg.field(), &mut rng);
                assert!(verify_e_coefficient_formula(&alg, &alg.poly_from_e(ec)).unwrap().pass());
                if m > 0 {
                    let mut cc: Vec<Gf> = (0..=m).map(|_| alg.random_c(&mut rng)).collect();
                    cc[m] = Gf::one(alg.field());
                    assert!(field_coefficient_reducibility(&alg, &alg.poly_from_e(cc), &mut rng).unwrap().pass());
                }
            }
        }
    }

    #[test]
    fn determinant_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for alg in configs() {
            for _ in 0..5 {
                let f = random_poly(&alg, 2, &mut rng);
                let g = random_poly(&alg, 1, &mut rng);
                let nfg = alg.algebra_norm(&f.mul(&g)).unwrap();
                assert_eq!(nfg, alg.algebra_norm(&f).unwrap().mul(&alg.algebra_norm(&g).unwrap()));
            }
        }
    }

    #[test]
    fn divides_trivial_cases() {
        let alg = &configs()[0];
        let rep = verify_divides(alg, &alg.poly(vec![alg.one()])).unwrap();
        assert_eq!(rep.cofactor, alg.poly(vec![alg.one()]));
        let lin = alg.poly(vec![alg.from_e(alg.field().gen()), alg.one()]);
        let rep = verify_divides(alg, &lin).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.cofactor.degree(), Some(alg.d() * alg.n() - 1));
    }
}
