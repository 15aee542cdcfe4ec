//! Ring specifications as given on the command line or in a JSON file.

use serde::{Deserialize, Serialize};

use crate::cyclic_algebra::CyclicAlgebra;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::function_field::{DerivationSpec, FunctionField, RatFunc};
use crate::gf::{GaloisField, Gf};
use crate::skew::{FrobeniusTwist, SkewRing};

fn one() -> usize {
    1
}

fn d_du() -> String {
    "du".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "lowercase", deny_unknown_fields)]
pub enum RingSpec {
    /// F_{p^N}[t; σ] with σ = (a ↦ a^{p^sigma_power}).
    Sigma {
        p: u64,
        tower: String,
        #[serde(default = "one")]
        sigma_power: usize,
        #[serde(default)]
        u: Option<String>,
    },
    /// K(u)[t; δ] with K = F_p or the tower over it, and δ written as
    /// `du` or `r*du` for a rational function r = δ(u).
    Delta {
        p: u64,
        #[serde(default)]
        tower: Option<String>,
        #[serde(default = "d_du")]
        delta: String,
    },
    /// The split cyclic algebra (E/C, γ, a) with central unit u.
    Csa { q: u64, n: usize, d: usize, a: i64, u: i64 },
}

pub enum Ring {
    Sigma(SkewRing<Gf>),
    Delta(SkewRing<RatFunc>),
    Csa(CyclicAlgebra),
}

/// Parses `du` or `r*du`.
pub fn parse_derivation(field: &FunctionField, text: &str) -> Result<DerivationSpec> {
    let text = text.trim();
    let image = match text.strip_suffix("du") {
        Some("") => RatFunc::one(field),
        Some(prefix) => match prefix.trim_end().strip_suffix('*') {
            Some(r) => RatFunc::parse(field, r.trim())?,
            None => return Err(Error::InvalidDerivation(format!("expected 'r*du', got '{text}'"))),
        },
        None => return Err(Error::InvalidDerivation(format!("expected 'du' or 'r*du', got '{text}'"))),
    };
    DerivationSpec::new(image)
}

impl RingSpec {
    pub fn case(&self) -> &'static str {
        match self {
            RingSpec::Sigma { .. } => "sigma",
            RingSpec::Delta { .. } => "delta",
            RingSpec::Csa { .. } => "csa",
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(format!("ring file: {e}")))
    }

    pub fn build(&self) -> Result<Ring> {
        match self {
            RingSpec::Sigma { p, tower, sigma_power, u } => {
                let field = GaloisField::parse_tower(*p, tower)?;
                let twist = FrobeniusTwist { power: *sigma_power };
                let ring = match u {
                    None => SkewRing::<Gf>::new(&field, twist)?,
                    Some(u) => SkewRing::<Gf>::with_unit(&field, twist, Gf::parse(&field, u)?)?,
                };
                Ok(Ring::Sigma(ring))
            }
            RingSpec::Delta { p, tower, delta } => {
                let base = match tower {
                    None => GaloisField::prime(*p)?,
                    Some(t) => GaloisField::parse_tower(*p, t)?,
                };
                let field = FunctionField::new(&base);
                let spec = parse_derivation(&field, delta)?;
                Ok(Ring::Delta(SkewRing::<RatFunc>::new(&field, spec)?))
            }
            RingSpec::Csa { q, n, d, a, u } => Ok(Ring::Csa(CyclicAlgebra::new(*q, *n, *d, *a, *u)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let spec = RingSpec::Sigma { p: 2, tower: "g^2+g+1".into(), sigma_power: 1, u: None };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(RingSpec::from_json(&text).unwrap(), spec);
        let d = RingSpec::from_json(r#"{"case": "delta", "p": 3}"#).unwrap();
        assert_eq!(d, RingSpec::Delta { p: 3, tower: None, delta: "du".into() });
    }

    #[test]
    fn builds_each_case() {
        let Ring::Sigma(r) = RingSpec::from_json(r#"{"case":"sigma","p":3,"tower":"g^2-g-1"}"#).unwrap().build().unwrap()
        else {
            panic!()
        };
        assert_eq!(r.n(), 2);
        let spec = RingSpec::Delta { p: 5, tower: Some("g^2-2".into()), delta: "g*u*du".into() };
        let Ring::Delta(r) = spec.build().unwrap() else { panic!() };
        assert_eq!(r.x(), r.parse("t^5 + t").unwrap());
        let spec = RingSpec::Csa { q: 3, n: 3, d: 2, a: 1, u: 2 };
        assert!(matches!(spec.build().unwrap(), Ring::Csa(_)));
    }

    #[test]
    fn rejects_bad_specs() {
        let bad = RingSpec::Sigma { p: 2, tower: "g^2".into(), sigma_power: 1, u: None };
        assert!(matches!(bad.build(), Err(Error::ReducibleModulus { .. })));
        let bad = RingSpec::Sigma { p: 2, tower: "g^2+g+1".into(), sigma_power: 2, u: None };
        assert!(matches!(bad.build(), Err(Error::TrivialTwist(_))));
        let k = FunctionField::new(&GaloisField::prime(3).unwrap());
        assert!(matches!(parse_derivation(&k, "u"), Err(Error::InvalidDerivation(_))));
        assert!(RingSpec::from_json(r#"{"case":"sigma","p":2}"#).is_err());
    }
}
