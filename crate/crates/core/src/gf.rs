//! Finite fields presented as towers F_p ⊂ F_{p^{k_1}} ⊂ … with Frobenius
//! maps and relative norms.
//!
//! An element of the top field is stored as a flat coefficient vector over
//! F_p: the top level is a polynomial of degree < k_top in the top generator
//! whose coefficients are elements of the level below, each laid out as a
//! contiguous chunk. Elements of a lower level embed by zero padding.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::RngCore;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::literal::{parse_field_element, parse_poly};
use crate::poly::Poly;

/// Largest field order accepted (elements are exponentiated with u128).
const MAX_ORDER_BITS: u32 = 100;
/// Root search is used for low-degree moduli only when the base is this small.
const ROOT_SEARCH_LIMIT: u128 = 1 << 20;

#[derive(Clone)]
pub struct GaloisField(Arc<GfInner>);

struct GfInner {
    p: u32,
    /// `moduli[l]` is the monic modulus of step `l`, coefficients flat over
    /// F_p with length `sizes[l]` each.
    moduli: Vec<Vec<Vec<u32>>>,
    sizes: Vec<usize>,
    names: Vec<String>,
    frob: Vec<Vec<u32>>,
    order: u128,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.moduli == other.0.moduli)
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.degree())
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.order)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn default_names(levels: usize) -> Vec<String> {
    (0..levels)
        .map(|l| if l + 1 == levels { "g".to_string() } else { format!("g{}", l + 1) })
        .collect()
}

impl GaloisField {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u16::MAX as u64 {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        Ok(Self::build(p as u32, Vec::new(), Vec::new()))
    }

    /// Builds a tower from moduli given as flat F_p coefficient vectors, one
    /// per coefficient, little-endian; generator names default to
    /// `g1, g2, …` with `g` for the top level.
    pub fn new(p: u64, tower: &[Vec<Vec<u32>>]) -> Result<Self> {
        Self::with_names(p, tower, &default_names(tower.len()))
    }

    pub fn with_names(p: u64, tower: &[Vec<Vec<u32>>], names: &[String]) -> Result<Self> {
        if names.len() != tower.len() {
            return Err(Error::InvalidModulus("one generator name per level is required".into()));
        }
        let mut field = Self::prime(p)?;
        for (modulus, name) in tower.iter().zip(names) {
            let coeffs = modulus
                .iter()
                .map(|c| field.element(c))
                .collect::<Result<Vec<_>>>()?;
            field = field.extend(&coeffs, name)?;
        }
        Ok(field)
    }

    /// Adjoins a root of `modulus` (coefficients in `self`, little-endian).
    pub fn extend(&self, modulus: &[Gf], name: &str) -> Result<Self> {
        let level = self.levels() + 1;
        if modulus.iter().any(|c| c.field != *self) {
            return Err(Error::FieldMismatch);
        }
        let poly = Poly::new(self, modulus.to_vec());
        let k = poly.degree().unwrap_or(0);
        if k < 2 {
            return Err(Error::InvalidModulus(format!("level {level} modulus must have degree >= 2")));
        }
        if !poly.is_monic() {
            return Err(Error::InvalidModulus(format!("level {level} modulus must be monic")));
        }
        check_irreducible(self, &poly).map_err(|reason| Error::ReducibleModulus { level, reason })?;
        let bits = (k as f64) * (self.order() as f64).log2();
        if bits > MAX_ORDER_BITS as f64 {
            return Err(Error::FieldTooLarge(format!("order exceeds 2^{MAX_ORDER_BITS}")));
        }
        let mut moduli = self.0.moduli.clone();
        moduli.push(poly.coeffs().iter().map(|c| c.c.clone()).collect());
        let mut names = self.0.names.clone();
        names.push(name.to_string());
        Ok(Self::build(self.0.p, moduli, names))
    }

    fn build(p: u32, moduli: Vec<Vec<Vec<u32>>>, names: Vec<String>) -> Self {
        let mut sizes = vec![1usize];
        for m in &moduli {
            sizes.push(sizes.last().unwrap() * (m.len() - 1));
        }
        let order = (p as u128).pow(*sizes.last().unwrap() as u32);
        let mut inner = GfInner { p, moduli, sizes, names, frob: Vec::new(), order };
        let n = *inner.sizes.last().unwrap();
        let frob = (0..n)
            .map(|i| {
                let mut e = vec![0u32; n];
                e[i] = 1;
                inner.pow_flat(&e, p as u128)
            })
            .collect();
        inner.frob = frob;
        GaloisField(Arc::new(inner))
    }

    /// Parses a tower literal such as `"g^2+g+1"` or, for two levels,
    /// `"g1^2+g1+1; g^2+g+g1"`. Level `l` is a polynomial in its own
    /// generator with coefficients written in the lower generators.
    pub fn parse_tower(p: u64, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
        let names = default_names(parts.len());
        let mut field = Self::prime(p)?;
        for (part, name) in parts.iter().zip(&names) {
            let symbols = field.symbols();
            let poly = parse_poly(&field, name, &symbols, part)?;
            field = field.extend(poly.coeffs(), name)?;
        }
        Ok(field)
    }

    /// Lexicographically first monic irreducible of the given degree over
    /// F_p (constant term varying fastest).
    pub fn first_irreducible(p: u64, degree: usize) -> Result<Vec<u32>> {
        let base = Self::prime(p)?;
        let total = (p as u128).pow(degree as u32);
        for idx in 0..total {
            let mut coeffs: Vec<u32> = (0..degree)
                .map(|i| ((idx / (p as u128).pow(i as u32)) % p as u128) as u32)
                .collect();
            coeffs.push(1);
            if coeffs[0] == 0 {
                continue;
            }
            let poly = Poly::new(&base, coeffs.iter().map(|&c| base.from_u32(c)).collect());
            if check_irreducible(&base, &poly).is_ok() {
                return Ok(coeffs);
            }
        }
        Err(Error::InvalidModulus(format!("no irreducible of degree {degree} over F_{p}")))
    }

    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    /// Absolute degree over F_p.
    pub fn degree(&self) -> usize {
        *self.0.sizes.last().unwrap()
    }

    pub fn order(&self) -> u128 {
        self.0.order
    }

    pub fn levels(&self) -> usize {
        self.0.moduli.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn level_degrees(&self) -> Vec<usize> {
        self.0.moduli.iter().map(|m| m.len() - 1).collect()
    }

    /// The field made of the first `levels` tower steps.
    pub fn level_field(&self, levels: usize) -> GaloisField {
        assert!(levels <= self.levels());
        Self::build(
            self.0.p,
            self.0.moduli[..levels].to_vec(),
            self.0.names[..levels].to_vec(),
        )
    }

    /// Embeds an element of a lower tower level.
    pub fn embed(&self, a: &Gf) -> Result<Gf> {
        let l = a.field.levels();
        if l > self.levels() || a.field != self.level_field(l) {
            return Err(Error::FieldMismatch);
        }
        let mut c = a.c.clone();
        c.resize(self.degree(), 0);
        Ok(Gf { field: self.clone(), c })
    }

    pub fn element(&self, flat: &[u32]) -> Result<Gf> {
        if flat.len() > self.degree() {
            return Err(Error::InvalidModulus(format!(
                "element has {} coordinates, field degree is {}",
                flat.len(),
                self.degree()
            )));
        }
        let mut c: Vec<u32> = flat.iter().map(|&x| x % self.0.p).collect();
        c.resize(self.degree(), 0);
        Ok(Gf { field: self.clone(), c })
    }

    fn from_u32(&self, x: u32) -> Gf {
        let mut c = vec![0; self.degree()];
        c[0] = x % self.0.p;
        Gf { field: self.clone(), c }
    }

    pub fn from_index(&self, mut idx: u128) -> Gf {
        let p = self.0.p as u128;
        let c = (0..self.degree())
            .map(|_| {
                let d = (idx % p) as u32;
                idx /= p;
                d
            })
            .collect();
        Gf { field: self.clone(), c }
    }

    /// Generator of tower level `level` (1-based), embedded in this field.
    pub fn generator(&self, level: usize) -> Gf {
        assert!(level >= 1 && level <= self.levels());
        let mut c = vec![0; self.degree()];
        c[self.0.sizes[level - 1]] = 1;
        Gf { field: self.clone(), c }
    }

    /// Top-level generator.
    pub fn gen(&self) -> Gf {
        self.generator(self.levels())
    }

    pub fn symbols(&self) -> Vec<(String, Gf)> {
        (1..=self.levels()).map(|l| (self.0.names[l - 1].clone(), self.generator(l))).collect()
    }

    /// `a^(p^j)`.
    pub fn frobenius(&self, a: &Gf, j: usize) -> Gf {
        let n = self.degree();
        let mut c = a.c.clone();
        for _ in 0..(j % n) {
            c = self.0.apply_frob(&c);
        }
        Gf { field: self.clone(), c }
    }

    /// Membership in the subfield of absolute degree `sub`.
    pub fn in_subfield(&self, a: &Gf, sub: usize) -> bool {
        self.degree().is_multiple_of(sub) && self.frobenius(a, sub) == *a
    }

    /// N_{K/F}(a) for F the subfield of absolute degree `sub`: the product
    /// of the conjugates under a ↦ a^{p^sub}.
    pub fn relative_norm(&self, a: &Gf, sub: usize) -> Result<Gf> {
        let n = self.check_subfield(sub)?;
        let mut acc = Gf::one(self);
        let mut conj = a.clone();
        for _ in 0..n {
            acc = acc.mul(&conj);
            conj = self.frobenius(&conj, sub);
        }
        debug_assert!(self.in_subfield(&acc, sub));
        Ok(acc)
    }

    pub fn relative_trace(&self, a: &Gf, sub: usize) -> Result<Gf> {
        let n = self.check_subfield(sub)?;
        let mut acc = Gf::zero(self);
        let mut conj = a.clone();
        for _ in 0..n {
            acc = acc.add(&conj);
            conj = self.frobenius(&conj, sub);
        }
        Ok(acc)
    }

    fn check_subfield(&self, sub: usize) -> Result<usize> {
        if sub == 0 || !self.degree().is_multiple_of(sub) {
            return Err(Error::NotASubfieldLevel { sub, total: self.degree() });
        }
        Ok(self.degree() / sub)
    }

    pub fn to_json(&self) -> Value {
        let tower: Vec<Value> = self
            .0
            .moduli
            .iter()
            .enumerate()
            .map(|(l, m)| {
                if l == 0 {
                    json!(m.iter().map(|c| c[0]).collect::<Vec<_>>())
                } else {
                    json!(m)
                }
            })
            .collect();
        json!({ "p": self.0.p, "tower": tower })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidSpec(format!("field descriptor: {msg}"));
        let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| bad("missing integer 'p'"))?;
        let tower = v.get("tower").and_then(Value::as_array).ok_or_else(|| bad("missing array 'tower'"))?;
        let mut moduli = Vec::new();
        for level in tower {
            let coeffs = level.as_array().ok_or_else(|| bad("each level must be an array"))?;
            let mut m = Vec::new();
            for c in coeffs {
                let mut flat = Vec::new();
                flatten_ints(c, &mut flat).map_err(|_| bad("coefficients must be integers"))?;
                m.push(flat);
            }
            moduli.push(m);
        }
        Self::new(p, &moduli)
    }
}

fn flatten_ints(v: &Value, out: &mut Vec<u32>) -> std::result::Result<(), ()> {
    match v {
        Value::Number(n) => {
            out.push(n.as_u64().ok_or(())? as u32);
            Ok(())
        }
        Value::Array(items) => items.iter().try_for_each(|i| flatten_ints(i, out)),
        _ => Err(()),
    }
}

impl GfInner {
    fn top(&self) -> usize {
        self.moduli.len()
    }

    fn add_into(&self, acc: &mut [u32], x: &[u32]) {
        let p = self.p;
        for (a, b) in acc.iter_mut().zip(x) {
            *a = (*a + *b) % p;
        }
    }

    fn sub_into(&self, acc: &mut [u32], x: &[u32]) {
        let p = self.p;
        for (a, b) in acc.iter_mut().zip(x) {
            *a = (*a + p - *b) % p;
        }
    }

    fn mul_at(&self, level: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        if level == 0 {
            return vec![((a[0] as u64 * b[0] as u64) % p) as u32];
        }
        let modulus = &self.moduli[level - 1];
        let k = modulus.len() - 1;
        if level == 1 {
            let mut prod = vec![0u64; 2 * k - 1];
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                for (j, &bj) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p;
                }
            }
            for i in (k..2 * k - 1).rev() {
                let c = prod[i];
                if c == 0 {
                    continue;
                }
                for j in 0..k {
                    let m = modulus[j][0] as u64;
                    prod[i - k + j] = (prod[i - k + j] + (p - c) * m) % p;
                }
            }
            return prod[..k].iter().map(|&x| x as u32).collect();
        }
        let s = self.sizes[level - 1];
        let mut prod = vec![0u32; (2 * k - 1) * s];
        for i in 0..k {
            let ai = &a[i * s..(i + 1) * s];
            if ai.iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..k {
                let bj = &b[j * s..(j + 1) * s];
                if bj.iter().all(|&x| x == 0) {
                    continue;
                }
                let t = self.mul_at(level - 1, ai, bj);
                self.add_into(&mut prod[(i + j) * s..(i + j + 1) * s], &t);
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i * s..(i + 1) * s].to_vec();
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            for (j, mj) in modulus.iter().enumerate().take(k) {
                let t = self.mul_at(level - 1, &c, mj);
                self.sub_into(&mut prod[(i - k + j) * s..(i - k + j + 1) * s], &t);
            }
        }
        prod.truncate(k * s);
        prod
    }

    fn mul_flat(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.mul_at(self.top(), a, b)
    }

    fn pow_flat(&self, a: &[u32], mut e: u128) -> Vec<u32> {
        let n = self.sizes[self.top()];
        let mut acc = vec![0u32; n];
        acc[0] = 1;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_flat(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_flat(&base, &base);
            }
        }
        acc
    }

    fn apply_frob(&self, c: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let n = c.len();
        let mut out = vec![0u64; n];
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (o, &img) in out.iter_mut().zip(&self.frob[i]) {
                *o = (*o + ci as u64 * img as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// Printed form of a level-`level` element and whether it is compound.
    fn fmt_level(&self, level: usize, c: &[u32]) -> (String, bool) {
        if level == 0 {
            return (c[0].to_string(), false);
        }
        let s = self.sizes[level - 1];
        let k = self.moduli[level - 1].len() - 1;
        let name = &self.names[level - 1];
        let mut terms = Vec::new();
        let mut compound_single = false;
        for i in (0..k).rev() {
            let chunk = &c[i * s..(i + 1) * s];
            if chunk.iter().all(|&x| x == 0) {
                continue;
            }
            let (cs, compound) = self.fmt_level(level - 1, chunk);
            let is_one = chunk[0] == 1 && chunk[1..].iter().all(|&x| x == 0);
            let var = if i == 1 { name.clone() } else { format!("{name}^{i}") };
            let term = if i == 0 {
                compound_single = compound;
                cs
            } else if is_one {
                var
            } else if compound {
                format!("({cs})*{var}")
            } else {
                format!("{cs}*{var}")
            };
            terms.push(term);
        }
        match terms.len() {
            0 => ("0".into(), false),
            1 => (terms.pop().unwrap(), compound_single),
            _ => (terms.join(" + "), true),
        }
    }
}

/// Irreducibility of a monic modulus over `base`: a squarefree test via the
/// derivative, then root search for degree ≤ 3 and a distinct-degree check
/// otherwise. Returns a human-readable reason on failure.
pub(crate) fn check_irreducible(base: &GaloisField, f: &Poly<Gf>) -> std::result::Result<(), String> {
    let k = f.degree().unwrap_or(0);
    let df = f.derivative();
    if df.is_zero() {
        return Err("inseparable (its derivative vanishes)".into());
    }
    if f.gcd(&df).degree() != Some(0) {
        return Err("not squarefree".into());
    }
    if k <= 3 && base.order() <= ROOT_SEARCH_LIMIT {
        for idx in 0..base.order() {
            let a = base.from_index(idx);
            if f.eval(&a).is_zero() {
                return Err(format!("divisible by (x - {a})"));
            }
        }
        return Ok(());
    }
    let x = Poly::x(base);
    let mut h = x.clone();
    for i in 1..=k / 2 {
        h = h.pow_mod(base.order(), f).expect("modulus nonzero");
        if f.gcd(&h.sub(&x)).degree() != Some(0) {
            return Err(format!("has a factor of degree {i}"));
        }
    }
    Ok(())
}

/// An element of a [`GaloisField`].
#[derive(Clone)]
pub struct Gf {
    field: GaloisField,
    c: Vec<u32>,
}

impl Gf {
    /// Flat coordinates over F_p.
    pub fn coords(&self) -> &[u32] {
        &self.c
    }

    pub fn index(&self) -> u128 {
        let p = self.field.0.p as u128;
        self.c.iter().rev().fold(0u128, |acc, &d| acc * p + d as u128)
    }

    /// Coefficients over the base of the top tower step, each as flat F_p
    /// coordinates.
    pub fn coeffs_over_base(&self) -> Vec<Vec<u32>> {
        let inner = &self.field.0;
        if inner.top() == 0 {
            return vec![self.c.clone()];
        }
        let s = inner.sizes[inner.top() - 1];
        self.c.chunks(s).map(<[u32]>::to_vec).collect()
    }

    fn assert_same(&self, other: &Gf) {
        assert!(self.field == other.field, "cross-field operation: {:?} vs {:?}", self.field, other.field);
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.field == other.field
    }
}

impl Eq for Gf {}

impl Hash for Gf {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for Gf {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gf {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index().cmp(&other.index())
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = &self.field.0;
        f.write_str(&inner.fmt_level(inner.top(), &self.c).0)
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FieldElement for Gf {
    type Field = GaloisField;

    fn field(&self) -> &GaloisField {
        &self.field
    }

    fn zero(field: &GaloisField) -> Self {
        Gf { field: field.clone(), c: vec![0; field.degree()] }
    }

    fn one(field: &GaloisField) -> Self {
        field.from_u32(1)
    }

    fn from_int(field: &GaloisField, n: i64) -> Self {
        field.from_u32(n.rem_euclid(field.p() as i64) as u32)
    }

    fn characteristic(field: &GaloisField) -> u64 {
        field.p()
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        let mut c = self.c.clone();
        self.field.0.add_into(&mut c, &rhs.c);
        Gf { field: self.field.clone(), c }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        let mut c = self.c.clone();
        self.field.0.sub_into(&mut c, &rhs.c);
        Gf { field: self.field.clone(), c }
    }

    fn neg(&self) -> Self {
        let p = self.field.0.p;
        Gf { field: self.field.clone(), c: self.c.iter().map(|&x| (p - x) % p).collect() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        Gf { field: self.field.clone(), c: self.field.0.mul_flat(&self.c, &rhs.c) }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    fn pow(&self, e: u128) -> Self {
        Gf { field: self.field.clone(), c: self.field.0.pow_flat(&self.c, e) }
    }

    fn generators(field: &GaloisField) -> Vec<Self> {
        (1..=field.levels()).map(|l| field.generator(l)).collect()
    }

    fn distinct_elements(field: &GaloisField, count: usize) -> Option<Vec<Self>> {
        if (count as u128) > field.order() {
            return None;
        }
        Some((0..count as u128).map(|i| field.from_index(i)).collect())
    }

    fn all_elements(field: &GaloisField) -> Option<Vec<Self>> {
        if field.order() > ROOT_SEARCH_LIMIT {
            return None;
        }
        Some((0..field.order()).map(|i| field.from_index(i)).collect())
    }

    fn random(field: &GaloisField, rng: &mut dyn RngCore) -> Self {
        let p = field.0.p;
        Gf { field: field.clone(), c: (0..field.degree()).map(|_| rng.next_u32() % p).collect() }
    }

    fn parse(field: &GaloisField, text: &str) -> Result<Self> {
        parse_field_element(field, &field.symbols(), text)
    }

    fn is_compound(&self) -> bool {
        let inner = &self.field.0;
        inner.fmt_level(inner.top(), &self.c).1
    }
}
