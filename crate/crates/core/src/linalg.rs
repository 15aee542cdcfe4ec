//! Dense matrices over a field: determinant, inverse, products.

use crate::error::{Error, Result};
use crate::field::FieldElement;

pub type Matrix<C> = Vec<Vec<C>>;

pub fn identity<C: FieldElement>(field: &C::Field, n: usize) -> Matrix<C> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { C::one(field) } else { C::zero(field) }).collect())
        .collect()
}

pub fn mat_mul<C: FieldElement>(field: &C::Field, a: &Matrix<C>, b: &Matrix<C>) -> Matrix<C> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(C::zero(field), |acc, k| acc.add(&row[k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn mat_vec<C: FieldElement>(field: &C::Field, a: &Matrix<C>, v: &[C]) -> Vec<C> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(C::zero(field), |acc, (x, y)| acc.add(&x.mul(y))))
        .collect()
}

/// Determinant by Gaussian elimination.
pub fn det<C: FieldElement>(field: &C::Field, m: &Matrix<C>) -> C {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = C::one(field);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return C::zero(field);
        };
        if piv != col {
            a.swap(piv, col);
            acc = acc.neg();
        }
        let inv = a[col][col].inv().expect("nonzero pivot");
        acc = acc.mul(&a[col][col]);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].mul(&inv);
            for c in col..n {
                let v = a[r][c].sub(&factor.mul(&a[col][c]));
                a[r][c] = v;
            }
        }
    }
    acc
}

/// Inverse by Gauss–Jordan elimination.
pub fn invert<C: FieldElement>(field: &C::Field, m: &Matrix<C>) -> Result<Matrix<C>> {
    let n = m.len();
    let mut a = m.clone();
    let mut b = identity::<C>(field, n);
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::NotInvertible("singular matrix".into()))?;
        a.swap(piv, col);
        b.swap(piv, col);
        let inv = a[col][col].inv()?;
        for c in 0..n {
            a[col][c] = a[col][c].mul(&inv);
            b[col][c] = b[col][c].mul(&inv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let va = a[r][c].sub(&factor.mul(&a[col][c]));
                let vb = b[r][c].sub(&factor.mul(&b[col][c]));
                a[r][c] = va;
                b[r][c] = vb;
            }
        }
    }
    Ok(b)
}
