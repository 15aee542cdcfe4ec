//! The regular representation ρ(f) over K[x] and the reduced norm
//! N(f) = det ρ(f) ∈ F[x].

use std::fmt;

use crate::central::{center_rewrite, CentralPolynomial};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::det;
use crate::poly::Poly;
use crate::skew::{CenterDef, OreCoefficient, SkewPolynomial};

/// Square matrix with entries in K[x]. Row i lists the coefficients of
/// tⁱ·f in the basis 1, t, …, t^{n−1} over K[x].
#[derive(Clone, PartialEq)]
pub struct RegRep<C: FieldElement> {
    pub rows: Vec<Vec<Poly<C>>>,
}

impl<C: FieldElement> RegRep<C> {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly<C> {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        RegRep { rows: (0..n).map(|j| (0..n).map(|i| self.rows[i][j].clone()).collect()).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.size();
        let field = self.rows[0][0].field().clone();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Poly::zero(&field), |acc, k| acc.add(&self.rows[i][k].mul(&rhs.rows[k][j])))
                    })
                    .collect()
            })
            .collect();
        RegRep { rows }
    }

    /// Determinant over K[x].
    pub fn det(&self) -> Poly<C> {
        det_bareiss(&self.rows)
    }
}

impl<C: FieldElement> fmt::Display for RegRep<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|p| p.display_in("x")).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<C: FieldElement> fmt::Debug for RegRep<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn build_rho<C: OreCoefficient>(f: &SkewPolynomial<C>) -> RegRep<C> {
    let n = f.ring().n();
    let mut rows = Vec::with_capacity(n);
    let mut tif = f.clone();
    for i in 0..n {
        if i > 0 {
            tif = tif.mul_t();
        }
        rows.push(center_rewrite(&tif).parts);
    }
    RegRep { rows }
}

/// Fraction-free Bareiss elimination over K[x]; every division is exact.
pub fn det_bareiss<C: FieldElement>(m: &[Vec<Poly<C>>]) -> Poly<C> {
    let n = m.len();
    if n == 0 {
        panic!("determinant of an empty matrix");
    }
    let field = m[0][0].field().clone();
    let mut a: Vec<Vec<Poly<C>>> = m.to_vec();
    let mut sign_neg = false;
    let mut prev = Poly::one(&field);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_neg = !sign_neg;
                }
                None => return Poly::zero(&field),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Poly::zero(&field);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_neg {
        d.neg()
    } else {
        d
    }
}

/// Determinant by evaluation at distinct points and Lagrange interpolation.
/// Returns `None` when the field has too few elements for the degree bound.
pub fn det_interpolation<C: FieldElement>(m: &[Vec<Poly<C>>]) -> Option<Poly<C>> {
    let field = m[0][0].field().clone();
    let bound: usize = m.iter().map(|row| row.iter().filter_map(Poly::degree).max().unwrap_or(0)).sum();
    let points = C::distinct_elements(&field, bound + 1)?;
    let values: Vec<C> = points
        .iter()
        .map(|pt| {
            let ev: Vec<Vec<C>> = m.iter().map(|row| row.iter().map(|p| p.eval(pt)).collect()).collect();
            det(&field, &ev)
        })
        .collect();
    let mut acc = Poly::zero(&field);
    for (i, (xi, yi)) in points.iter().zip(&values).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one(&field);
        let mut denom = C::one(&field);
        for (j, xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Poly::new(&field, vec![xj.neg(), C::one(&field)]));
            denom = denom.mul(&xi.sub(xj));
        }
        acc = acc.add(&basis.scale(&yi.div(&denom).ok()?));
    }
    Some(acc)
}

/// N(f) = det ρ(f), checked to have all coefficients in F.
pub fn reduced_norm<C: OreCoefficient>(f: &SkewPolynomial<C>) -> Result<CentralPolynomial<C>> {
    if f.is_zero() {
        return Err(Error::DivisionByZeroPolynomial);
    }
    let d = build_rho(f).det();
    CentralPolynomial::new(f.ring(), d).map_err(|e| match e {
        Error::NotCentral(msg) => Error::NormNotCentral(msg),
        other => other,
    })
}

/// Like [`reduced_norm`], additionally recomputing the determinant by
/// interpolation when the field is large enough. The flag tells whether the
/// second path ran.
pub fn reduced_norm_crosschecked<C: OreCoefficient>(f: &SkewPolynomial<C>) -> Result<(CentralPolynomial<C>, bool)> {
    let norm = reduced_norm(f)?;
    let rho = build_rho(f);
    match det_interpolation(&rho.rows) {
        None => Ok((norm, false)),
        Some(d) if d == *norm.poly() => Ok((norm, true)),
        Some(d) => Err(Error::DeterminantMismatch(format!("Bareiss gives {}, interpolation gives {}", norm, d.display_in("x")))),
    }
}

/// f♯ with N(f) = f♯·f = f·f♯.
pub fn cofactor<C: OreCoefficient>(f: &SkewPolynomial<C>) -> Result<SkewPolynomial<C>> {
    let n = reduced_norm(f)?.lower();
    let (q, r) = n.right_divrem(f)?;
    if !r.is_zero() {
        return Err(Error::NonzeroRemainder(format!("N(f) mod_right f = {r}")));
    }
    if f.mul(&q) != n {
        return Err(Error::NonzeroRemainder("f·f♯ differs from N(f)".into()));
    }
    Ok(q)
}

/// Comparison of the extreme coefficients of N(f) with the term formulas.
#[derive(Debug, Clone)]
pub struct TermFormulaReport<C: FieldElement> {
    pub norm_degree: Option<usize>,
    pub degree: usize,
    /// `None` when the formula makes no claim (derivation case).
    pub constant_expected: Option<C>,
    pub constant_actual: C,
    pub leading_expected: C,
    pub leading_actual: C,
}

impl<C: FieldElement> TermFormulaReport<C> {
    pub fn constant_ok(&self) -> bool {
        self.constant_expected.as_ref().is_none_or(|c| *c == self.constant_actual)
    }

    pub fn leading_ok(&self) -> bool {
        self.leading_expected == self.leading_actual
    }

    pub fn degree_ok(&self) -> bool {
        self.norm_degree == Some(self.degree)
    }

    pub fn pass(&self) -> bool {
        self.constant_ok() && self.leading_ok() && self.degree_ok()
    }
}

/// Constant term N_{K/F}(a_0) (σ case) and leading term
/// (−1)^{m(n−1)}·N_{K/F}(a_m)·u^m, where N_{K/F}(a) = a^p and u = 1 in the
/// derivation case.
pub fn verify_term_formula<C: OreCoefficient>(f: &SkewPolynomial<C>) -> Result<TermFormulaReport<C>> {
    let ring = f.ring();
    let norm = reduced_norm(f)?;
    let m = f.degree().unwrap();
    let n = ring.n();
    let sign_odd = (m * (n - 1)) % 2 == 1;
    let mut leading = ring.field_norm(f.lead().unwrap()).mul(&ring.u().pow(m as u128));
    if sign_odd {
        leading = leading.neg();
    }
    let constant_expected = match ring.center_def() {
        CenterDef::UInvTn => Some(ring.field_norm(&f.coeff(0))),
        CenterDef::GOfT => None,
    };
    let p = norm.poly();
    Ok(TermFormulaReport {
        norm_degree: p.degree(),
        degree: m,
        constant_expected,
        constant_actual: p.coeff(0),
        leading_expected: leading,
        leading_actual: p.lead().cloned().unwrap_or_else(|| C::zero(ring.field())),
    })
}
