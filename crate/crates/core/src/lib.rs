pub mod central;
pub mod cyclic_algebra;
pub mod error;
pub mod expr;
pub mod factor;
pub mod field;
pub mod function_field;
pub mod golden;
pub mod gf;
pub mod linalg;
pub mod literal;
pub mod norm;
pub mod oracle;
pub mod poly;
pub mod ring_spec;
pub mod skew;
pub mod verify;

pub use error::{Error, Result};
pub use field::FieldElement;
pub use gf::{GaloisField, Gf};
pub use poly::Poly;
