//! The coefficient-field abstraction shared by finite fields and rational
//! function fields.
//!
//! Elements carry a handle to their field, so constructors that produce a
//! value out of nothing (`zero`, `one`, `from_int`) take the field handle
//! explicitly. Mixing elements of different fields panics.

use std::fmt;

use rand::RngCore;

use crate::error::{Error, Result};

pub trait FieldElement: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn field(&self) -> &Self::Field;

    fn zero(field: &Self::Field) -> Self;
    fn one(field: &Self::Field) -> Self;
    fn from_int(field: &Self::Field, n: i64) -> Self;
    fn characteristic(field: &Self::Field) -> u64;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one(self.field())
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn pow(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Signed power; negative exponents invert first.
    fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u128))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs() as u128))
        }
    }

    /// Elements generating the field over its prime field (for function
    /// fields: the transcendental `u` plus generators of the constants).
    fn generators(field: &Self::Field) -> Vec<Self>;

    /// `count` pairwise distinct elements, or `None` if the field is smaller.
    fn distinct_elements(field: &Self::Field, count: usize) -> Option<Vec<Self>>;

    /// All elements, when the field is finite and small enough to list.
    fn all_elements(field: &Self::Field) -> Option<Vec<Self>>;

    fn random(field: &Self::Field, rng: &mut dyn RngCore) -> Self;

    /// Parses a literal in this field's element syntax.
    fn parse(field: &Self::Field, text: &str) -> Result<Self>;

    /// True when the printed form needs parentheses as a factor.
    fn is_compound(&self) -> bool;

    fn random_nonzero(field: &Self::Field, rng: &mut dyn RngCore) -> Self {
        loop {
            let a = Self::random(field, rng);
            if !a.is_zero() {
                return a;
            }
        }
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

/// Formats `coeff * var^exp` the way every printer in the crate does.
pub(crate) fn write_term<C: FieldElement>(
    out: &mut String,
    coeff: &C,
    var: &str,
    exp: usize,
    first: bool,
) {
    if !first {
        out.push_str(" + ");
    }
    if exp == 0 {
        out.push_str(&coeff.to_string());
        return;
    }
    if !coeff.is_one() {
        if coeff.is_compound() {
            out.push('(');
            out.push_str(&coeff.to_string());
            out.push(')');
        } else {
            out.push_str(&coeff.to_string());
        }
        out.push('*');
    }
    out.push_str(var);
    if exp > 1 {
        out.push('^');
        out.push_str(&exp.to_string());
    }
}
