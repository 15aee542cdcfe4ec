//! Evaluation environments turning parsed expressions into field elements
//! and polynomials.

use crate::error::{Error, Result};
use crate::expr::Env;
use crate::field::FieldElement;
use crate::poly::Poly;

/// Evaluates into a field, resolving identifiers through a symbol table.
pub struct FieldEnv<'a, C: FieldElement> {
    pub field: &'a C::Field,
    pub symbols: &'a [(String, C)],
}

impl<C: FieldElement> Env for FieldEnv<'_, C> {
    type Value = C;

    fn int(&self, n: i64) -> C {
        C::from_int(self.field, n)
    }

    fn var(&self, name: &str, pos: usize) -> Result<C> {
        self.symbols
            .iter()
            .find(|(s, _)| s == name)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::parse(pos, format!("unknown symbol '{name}'")))
    }

    fn add(&self, a: &C, b: &C) -> C {
        a.add(b)
    }

    fn sub(&self, a: &C, b: &C) -> C {
        a.sub(b)
    }

    fn mul(&self, a: &C, b: &C) -> C {
        a.mul(b)
    }

    fn div(&self, a: &C, b: &C, pos: usize) -> Result<C> {
        a.div(b).map_err(|_| Error::parse(pos, "division by zero"))
    }

    fn pow(&self, a: &C, e: i64, pos: usize) -> Result<C> {
        a.powi(e).map_err(|_| Error::parse(pos, "negative power of zero"))
    }
}

/// Evaluates into polynomials in `var` whose coefficients come from the
/// symbol table. Division is only allowed by nonzero constants.
pub struct PolyEnv<'a, C: FieldElement> {
    pub field: &'a C::Field,
    pub var: &'a str,
    pub symbols: &'a [(String, C)],
}

impl<C: FieldElement> Env for PolyEnv<'_, C> {
    type Value = Poly<C>;

    fn int(&self, n: i64) -> Poly<C> {
        Poly::constant(C::from_int(self.field, n))
    }

    fn var(&self, name: &str, pos: usize) -> Result<Poly<C>> {
        if name == self.var {
            return Ok(Poly::x(self.field));
        }
        FieldEnv { field: self.field, symbols: self.symbols }
            .var(name, pos)
            .map(Poly::constant)
    }

    fn add(&self, a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
        a.add(b)
    }

    fn sub(&self, a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
        a.sub(b)
    }

    fn mul(&self, a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
        a.mul(b)
    }

    fn div(&self, a: &Poly<C>, b: &Poly<C>, pos: usize) -> Result<Poly<C>> {
        match b.degree() {
            Some(0) => Ok(a.scale(&b.coeffs()[0].inv()?)),
            None => Err(Error::parse(pos, "division by zero")),
            Some(_) => Err(Error::parse(pos, format!("cannot divide by a polynomial in {}", self.var))),
        }
    }

    fn pow(&self, a: &Poly<C>, e: i64, pos: usize) -> Result<Poly<C>> {
        if e < 0 {
            return match a.degree() {
                Some(0) => Ok(Poly::constant(a.coeffs()[0].powi(e)?)),
                _ => Err(Error::parse(pos, "negative powers need a nonzero constant base")),
            };
        }
        Ok(a.pow(e as u64))
    }
}

pub fn parse_field_element<C: FieldElement>(
    field: &C::Field,
    symbols: &[(String, C)],
    text: &str,
) -> Result<C> {
    crate::expr::parse(text)?.eval(&FieldEnv { field, symbols })
}

pub fn parse_poly<C: FieldElement>(
    field: &C::Field,
    var: &str,
    symbols: &[(String, C)],
    text: &str,
) -> Result<Poly<C>> {
    crate::expr::parse(text)?.eval(&PolyEnv { field, var, symbols })
}
