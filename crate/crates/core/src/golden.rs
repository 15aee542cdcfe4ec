//! Worked examples with known answers, one check per module.

use std::fmt::Debug;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::central::{center_rewrite, criterion_degree_check, mclm, CentralPolynomial};
use crate::cyclic_algebra::{
    field_coefficient_reducibility, verify_divides, verify_e_coefficient_formula, CyclicAlgebra,
};
use crate::error::{Error, Result};
use crate::factor::{
    all_factorizations, factor_central, is_irreducible, rough_factorize_with, IrreducibilityOptions, Route, Verdict,
};
use crate::field::FieldElement;
use crate::function_field::{DerivationSpec, FunctionField, RatFunc};
use crate::gf::{GaloisField, Gf};
use crate::linalg::identity;
use crate::norm::{build_rho, cofactor, reduced_norm, verify_term_formula};
use crate::oracle::{brute_factorizations, brute_irreducible, OracleBudget};
use crate::poly::Poly;
use crate::skew::{FrobeniusTwist, SkewPolynomial, SkewRing};
use crate::verify::{displayed_rho, f25_ring, f3_ring, Check};

fn expect<T: PartialEq + Debug>(check: &mut Check, what: &str, got: T, want: T) {
    let ok = got == want;
    check.record(ok, || format!("{what}: got {got:?}, expected {want:?}"));
}

fn sigma_ring(p: u64, tower: &str) -> Result<SkewRing<Gf>> {
    SkewRing::<Gf>::new(&GaloisField::parse_tower(p, tower)?, FrobeniusTwist { power: 1 })
}

fn f4() -> Result<SkewRing<Gf>> {
    sigma_ring(2, "g^2+g+1")
}

fn f9() -> Result<SkewRing<Gf>> {
    sigma_ring(3, "g^2-g-1")
}

fn text<T: ToString>(x: T) -> String {
    x.to_string()
}

/// A polynomial in x over K, written with x = t^2 (n = 2, u = 1).
fn central(ring: &SkewRing<Gf>, text: &str) -> Result<Poly<Gf>> {
    Ok(center_rewrite(&ring.parse(&text.replace('x', "(t^2)"))?).parts[0].clone())
}

pub fn galois_fields() -> Result<Check> {
    let mut c = Check::new("galois_fields");
    expect(&mut c, "F4 degree", GaloisField::parse_tower(2, "g^2+g+1")?.degree(), 2);
    expect(&mut c, "F9 degree", GaloisField::parse_tower(3, "g^2-g-1")?.degree(), 2);
    let bad = GaloisField::parse_tower(2, "g^2");
    c.record(matches!(bad, Err(Error::ReducibleModulus { .. })), || format!("g^2 accepted: {bad:?}"));
    let k4 = GaloisField::parse_tower(2, "g^2+g+1")?;
    let g = k4.gen();
    let g1 = Gf::parse(&k4, "g+1")?;
    expect(&mut c, "frob(g) in F4", k4.frobenius(&g, 1), g1.clone());
    expect(&mut c, "frob^0", k4.frobenius(&g1, 0), g1.clone());
    expect(&mut c, "g*g in F4", g.mul(&g), g1.clone());
    expect(&mut c, "inv(g) in F4", g.inv()?, g1.clone());
    expect(&mut c, "a + 0", g1.add(&Gf::zero(&k4)), g1.clone());
    expect(&mut c, "N_F4/F2(g)", k4.relative_norm(&g, 1)?, Gf::one(&k4));
    expect(&mut c, "N(0)", k4.relative_norm(&Gf::zero(&k4), 1)?, Gf::zero(&k4));
    expect(&mut c, "N(1)", k4.relative_norm(&Gf::one(&k4), 1)?, Gf::one(&k4));
    let k9 = GaloisField::parse_tower(3, "g^2-g-1")?;
    let h = k9.gen();
    expect(&mut c, "frob(g) in F9", k9.frobenius(&h, 1), Gf::parse(&k9, "2*g+1")?);
    expect(&mut c, "N_F9/F3(g)", k9.relative_norm(&h, 1)?, Gf::from_int(&k9, 2));
    Ok(c)
}

pub fn function_field() -> Result<Check> {
    let mut c = Check::new("function_field");
    let k = FunctionField::new(&GaloisField::prime(3)?);
    let u = k.var();
    let r = |s: &str| RatFunc::parse(&k, s);
    expect(&mut c, "u + u", u.add(&u), r("2*u")?);
    expect(&mut c, "inv(u)", u.inv()?, r("1/u")?);
    expect(&mut c, "(u/(u+1))(u+1)", r("u/(u+1)")?.mul(&r("u+1")?), u.clone());
    let d = DerivationSpec::d_du(&k);
    expect(&mut c, "d/du(u^2)", d.apply(&r("u^2")?), r("2*u")?);
    expect(&mut c, "d/du(u^3)", d.apply(&r("u^3")?), RatFunc::zero(&k));
    expect(&mut c, "F3: g = t^3", d.check_min_poly(&[RatFunc::zero(&k), RatFunc::one(&k)]), true);
    expect(&mut c, "F3: g = t", d.check_min_poly(&[RatFunc::one(&k)]), false);
    expect(&mut c, "F3: t^3 is the minimum polynomial", d.min_poly_coeffs(), r_vec(&k, &["0", "0", "0", "1"])?);
    expect(&mut c, "u^3 constant", d.is_constant(&r("u^3")?), true);
    expect(&mut c, "u not constant", d.is_constant(&u), false);
    expect(&mut c, "(u^3+1)/(u^3+2) constant", d.is_constant(&r("(u^3+1)/(u^3+2)")?), true);
    let f25 = f25_ring()?;
    let k25 = f25.field().clone();
    let spec = f25.twist().clone();
    let cu = RatFunc::parse(&k25, "g*u")?;
    expect(&mut c, "F25: delta(u)", spec.apply(&k25.var()), cu);
    expect(&mut c, "F25: t^5 + t", spec.min_poly_coeffs(), r_vec(&k25, &["0", "1", "0", "0", "0", "1"])?);
    expect(&mut c, "F25: check t^5 + t", spec.check_min_poly(&[RatFunc::one(&k25), RatFunc::one(&k25)]), true);
    Ok(c)
}

fn r_vec(k: &FunctionField, items: &[&str]) -> Result<Vec<RatFunc>> {
    items.iter().map(|s| RatFunc::parse(k, s)).collect()
}

pub fn skew_ring() -> Result<Check> {
    let mut c = Check::new("skew_ring");
    let r = f4()?;
    let p = |s: &str| r.parse(s);
    expect(&mut c, "t*g", text(p("t")?.mul(&p("g")?)), text(p("(g+1)*t")?));
    expect(&mut c, "(t+1)(t+1)", p("t+1")?.mul(&p("t+1")?), p("t^2+1")?);
    let d = f3_ring()?;
    expect(&mut c, "t*u", d.parse("t")?.mul(&d.parse("u")?), d.parse("u*t+1")?);
    expect(&mut c, "(t^2+1) / (t+1)", p("t^2+1")?.right_divrem(&p("t+1")?)?, (p("t+1")?, r.zero()));
    expect(&mut c, "(t^2+1) / (t+g)", p("t^2+1")?.right_divrem(&p("t+g")?)?, (p("t+g+1")?, r.zero()));
    expect(&mut c, "(t+1) / t^2", p("t+1")?.right_divrem(&p("t^2")?)?, (r.zero(), p("t+1")?));
    expect(&mut c, "gcrd(t^2+1, t+1)", p("t^2+1")?.gcrd(&p("t+1")?), p("t+1")?);
    expect(&mut c, "gcrd(f, f)", p("g*t^2+t")?.gcrd(&p("g*t^2+t")?), p("g*t^2+t")?.monic());
    expect(&mut c, "lclm(t+1, t+1)", p("t+1")?.lclm(&p("t+1")?), p("t+1")?);
    expect(&mut c, "gcrd_with_t(t^2+1)", p("t^2+1")?.gcrd_with_t(), r.one());
    expect(&mut c, "gcrd_with_t(t^2+t)", p("t^2+t")?.gcrd_with_t(), p("t")?);
    expect(&mut c, "gcrd_with_t(t+g)", p("t+g")?.gcrd_with_t(), r.one());
    expect(&mut c, "t^2+1 invariant", p("t^2+1")?.is_right_invariant(), true);
    expect(&mut c, "t+g invariant", p("t+g")?.is_right_invariant(), false);
    expect(&mut c, "t invariant", p("t")?.is_right_invariant(), true);
    expect(&mut c, "strip t^3+t", p("t^3+t")?.strip_t_factor(), (p("t^2+1")?, 1));
    expect(&mut c, "strip t+g", p("t+g")?.strip_t_factor(), (p("t+g")?, 0));
    expect(&mut c, "strip t^2", p("t^2")?.strip_t_factor(), (r.one(), 2));
    Ok(c)
}

pub fn central_structure() -> Result<Check> {
    let mut c = Check::new("central_structure");
    let r = f4()?;
    let k = r.field().clone();
    let p = |s: &str| r.parse(s);
    let rw = center_rewrite(&p("t^3+g*t^2+t+1")?);
    expect(&mut c, "rewrite t^3+g t^2+t+1", rw.parts.clone(), vec![central(&r, "g*x+1")?, central(&r, "x+1")?]);
    expect(&mut c, "recompose", rw.recompose(&r), p("t^3+g*t^2+t+1")?);
    let g = k.gen();
    expect(&mut c, "rewrite constant", center_rewrite(&r.constant(g.clone())).parts, vec![Poly::constant(g), Poly::zero(&k)]);
    let d = f3_ring()?;
    let kd = d.field().clone();
    let rw = center_rewrite(&d.parse("t^5")?);
    expect(&mut c, "rewrite t^5 over F3(u)", rw.parts, vec![Poly::zero(&kd), Poly::zero(&kd), Poly::x(&kd)]);
    expect(&mut c, "mclm(t+g)", text(mclm(&p("t+g")?)?), "x + 1".into());
    expect(&mut c, "mclm(t^2+1)", text(mclm(&p("t^2+1")?)?), "x + 1".into());
    expect(&mut c, "mclm(t^2+g)", text(mclm(&p("t^2+g")?)?), "x^2 + x + 1".into());
    for (f, applies) in [("t^2+g", true), ("t^2+1", false), ("t+g", true)] {
        let rep = criterion_degree_check(&p(f)?)?;
        expect(&mut c, &format!("criterion for {f}"), rep.applies, applies);
    }
    Ok(c)
}

pub fn norm_engine() -> Result<Check> {
    let mut c = Check::new("norm_engine");
    let r = f4()?;
    let k = r.field().clone();
    let p = |s: &str| r.parse(s);
    let g = k.gen();
    let x = Poly::x(&k);
    let rho = build_rho(&p("t+g")?);
    expect(
        &mut c,
        "rho(t+g)",
        rho.rows,
        vec![vec![Poly::constant(g.clone()), Poly::one(&k)], vec![x, Poly::constant(g.mul(&g))]],
    );
    let rho = build_rho(&r.constant(g.clone()));
    let zero = Poly::zero(&k);
    expect(
        &mut c,
        "rho(g)",
        rho.rows,
        vec![vec![Poly::constant(g.clone()), zero.clone()], vec![zero, Poly::constant(k.frobenius(&g, 1))]],
    );
    let f25 = f25_ring()?;
    let a = f25.field().var();
    let f = f25.parse("t^4+u")?;
    expect(&mut c, "rho(t^4+a) over F25(u)", build_rho(&f).rows, displayed_rho(&f25, &a));
    expect(&mut c, "N(t+g)", text(reduced_norm(&p("t+g")?)?), "x + 1".into());
    expect(&mut c, "N(t^2+g)", text(reduced_norm(&p("t^2+g")?)?), "x^2 + x + 1".into());
    let d = f3_ring()?;
    expect(&mut c, "N(t^3+u) over F3(u)", text(reduced_norm(&d.parse("t^3+u")?)?), "x^3 + u^3".into());
    expect(&mut c, "cofactor(t+g)", cofactor(&p("t+g")?)?, p("t+g+1")?);
    expect(&mut c, "cofactor(t^2+1)", cofactor(&p("t^2+1")?)?, p("t^2+1")?);
    expect(&mut c, "N(1)", text(reduced_norm(&r.one())?), "1".into());
    expect(&mut c, "cofactor(1)", cofactor(&r.one())?, r.one());
    for f in ["t+g", "g", "t"] {
        let rep = verify_term_formula(&p(f)?)?;
        c.record(rep.pass(), || format!("term formula for {f}: {rep:?}"));
    }
    expect(&mut c, "N(t)", text(reduced_norm(&p("t")?)?), "x".into());
    Ok(c)
}

pub fn factor_engine() -> Result<Check> {
    let mut c = Check::new("factor_engine");
    let f2 = sigma_ring(2, "g^2+g+1")?;
    let h = |s: &str| -> Result<CentralPolynomial<Gf>> { CentralPolynomial::new(&f2, central(&f2, s)?) };
    let listed = |v: Vec<(CentralPolynomial<Gf>, usize)>| v.into_iter().map(|(p, e)| (p.to_string(), e)).collect::<Vec<_>>();
    expect(&mut c, "factor x^2+x+1", listed(factor_central(&h("x^2+x+1")?, 0)?), vec![("x^2 + x + 1".into(), 1)]);
    expect(&mut c, "factor (x+1)^2", listed(factor_central(&h("x^2+1")?, 0)?), vec![("x + 1".into(), 2)]);
    let r9 = f9()?;
    let h9 = CentralPolynomial::new(&r9, central(&r9, "2*x^2+1")?)?;
    let parts = factor_central(&h9, 0)?;
    c.record(parts.len() == 2 && parts.iter().all(|(p, e)| p.degree() == Some(1) && *e == 1), || {
        format!("2(x+1)(x+2) over F3 gave {parts:?}")
    });

    let r = f4()?;
    let p = |s: &str| r.parse(s);
    let opts = IrreducibilityOptions::seeded(0);
    let rep = is_irreducible(&p("t^2+g")?, &opts)?;
    expect(&mut c, "t^2+g", (rep.verdict, rep.route), (Verdict::Irreducible, Some(Route::NormIrreducible)));
    let budget = OracleBudget::default();
    let fallback = |f: &SkewPolynomial<Gf>| brute_irreducible(f, &budget);
    let with_oracle = IrreducibilityOptions { fallback: Some(&fallback), ..IrreducibilityOptions::seeded(0) };
    let rep = is_irreducible(&p("t^2+1")?, &with_oracle)?;
    expect(&mut c, "t^2+1", rep.verdict, Verdict::Reducible);
    let rep = is_irreducible(&p("t+g")?, &opts)?;
    expect(&mut c, "t+g", (rep.verdict, rep.route), (Verdict::Irreducible, Some(Route::Degree1)));

    let f = r9.parse("t^2+(2*g+2)*t+g")?;
    expect(&mut c, "(t+1)(t+g) expands", r9.parse("t+1")?.mul(&r9.parse("t+g")?), f.clone());
    let fact = rough_factorize_with(&f, &[central(&r9, "x+2")?, central(&r9, "x+1")?])?;
    expect(&mut c, "ordering [x+2, x+1]", fact.factor_strings(), vec!["t + 1".into(), "t + g".into()]);
    let other = rough_factorize_with(&f, &[central(&r9, "x+1")?, central(&r9, "x+2")?])?;
    c.record(other.factors != fact.factors && other.factors.iter().all(|g| g.degree() == Some(1)), || {
        format!("ordering [x+1, x+2] gave {other}")
    });
    let single = rough_factorize_with(&p("t^2+g")?, &[central(&r, "x^2+x+1")?])?;
    expect(&mut c, "t^2+g single factor", single.factors, vec![p("t^2+g")?]);
    expect(&mut c, "all factorizations of (t+1)(t+g)", all_factorizations(&f, 0)?.len(), 2);
    expect(&mut c, "all factorizations of t^2+g", all_factorizations(&p("t^2+g")?, 0)?.len(), 1);

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for alg in [CyclicAlgebra::new(2, 3, 2, 1, 1)?, CyclicAlgebra::new(3, 3, 2, 1, 2)?] {
        let one = Gf::one(alg.field());
        let cc = alg.norm_e_c(&alg.field().gen());
        let rep = field_coefficient_reducibility(&alg, &alg.poly_from_e(vec![cc.clone(), one]), &mut rng)?;
        c.record(rep.pass(), || format!("t + {cc}: {rep:?}"));
        let constant = field_coefficient_reducibility(&alg, &alg.poly_from_e(vec![cc.clone()]), &mut rng);
        c.record(matches!(constant, Err(Error::Unit(_))), || format!("constant {cc}: {constant:?}"));
    }
    Ok(c)
}

/// Products of three linear factors over F_9 whose central factors are
/// pairwise distinct, with the number of factorizations of each.
pub fn f9_distinct_cubic() -> Result<Check> {
    let mut c = Check::new("F9 cubic with three distinct central factors has 6 factorizations");
    let r = f9()?;
    let k = r.field().clone();
    let elements: Vec<Gf> = Gf::all_elements(&k).unwrap().into_iter().filter(|a| !a.is_zero()).collect();
    let mut hats = Vec::new();
    for a in &elements {
        let h = reduced_norm(&r.poly(vec![a.clone(), Gf::one(&k)]))?.poly().clone();
        if !hats.contains(&h) {
            hats.push(h);
        }
    }
    c.record(hats.len() >= 3, || {
        format!("monic linear t + a with a != 0 has only {} distinct central factors: {hats:?}", hats.len())
    });
    Ok(c)
}

pub fn cyclic_algebra() -> Result<Check> {
    let mut c = Check::new("cyclic_algebra");
    let alg = CyclicAlgebra::new(3, 3, 2, 2, 1)?;
    let field = alg.field().clone();
    let g = field.gen();
    let zero = Gf::zero(&field);
    let one = Gf::one(&field);
    expect(
        &mut c,
        "omega(e)",
        alg.omega(&alg.from_e(g.clone())),
        vec![vec![g.clone(), zero.clone()], vec![zero.clone(), alg.gamma(&g)]],
    );
    let wz = alg.omega(&alg.z_pow(1));
    expect(&mut c, "omega(z)", wz.clone(), vec![vec![zero.clone(), one.clone()], vec![alg.a().clone(), zero.clone()]]);
    expect(
        &mut c,
        "omega(z)^2",
        crate::linalg::mat_mul(&field, &wz, &wz),
        vec![vec![alg.a().clone(), zero.clone()], vec![zero.clone(), alg.a().clone()]],
    );
    expect(&mut c, "omega(1)", alg.omega(&alg.one()), identity::<Gf>(&field, 2));

    let a0 = g.clone();
    let f = alg.poly_from_e(vec![a0.clone(), g.add(&one), one.clone()]);
    expect(&mut c, "constant term", alg.algebra_norm(&f)?.coeff(0), alg.norm_e_f(&a0));
    let rep = verify_e_coefficient_formula(&alg, &alg.poly_from_e(vec![a0.clone()]))?;
    c.record(rep.constant_ok(), || format!("constant f: {rep:?}"));
    // σ restricted to C generates Gal(C/F)
    let in_c = alg.norm_e_c(&g);
    let n = alg.algebra_norm(&alg.poly_from_e(vec![in_c.clone()]))?;
    let c_over_f = (0..alg.n()).fold(one.clone(), |acc, i| acc.mul(&alg.sigma_pow(&in_c, i)));
    expect(&mut c, "N(c) for c in C", n.coeff(0), alg.norm_e_f(&in_c));
    expect(&mut c, "N(c) = N_C/F(c)^d", n.coeff(0), c_over_f.pow(alg.d() as u128));

    let alt = CyclicAlgebra::new(2, 2, 3, 1, 1)?;
    let t = alt.poly_from_e(vec![Gf::zero(alt.field()), Gf::one(alt.field())]);
    let n = alt.algebra_norm(&t)?;
    c.record(n.degree() == Some(3) && n.term_count() == 1, || format!("N(t) with n = 2, d = 3 is {}", n.display_in("x")));

    let lin = alg.poly_from_e(vec![g.clone(), one.clone()]);
    let rep = verify_divides(&alg, &lin)?;
    c.record(rep.pass() && rep.cofactor.degree() == Some(alg.d() * alg.n() - 1), || format!("linear f: {rep:?}"));
    let rep = verify_divides(&alg, &alg.poly_from_e(vec![one.clone()]))?;
    c.record(rep.pass() && rep.cofactor == alg.poly_from_e(vec![one.clone()]), || format!("f = 1: {rep:?}"));
    let x = alg.lower(&Poly::new(&field, vec![one.clone(), one.clone()]));
    let rep = verify_divides(&alg, &x)?;
    c.record(rep.pass(), || format!("central f: {rep:?}"));
    Ok(c)
}

pub fn oracle() -> Result<Check> {
    let mut c = Check::new("oracle");
    let r = f4()?;
    let p = |s: &str| r.parse(s);
    let budget = OracleBudget::default();
    expect(&mut c, "t^2+g irreducible", brute_irreducible(&p("t^2+g")?, &budget)?, true);
    expect(&mut c, "t^2+1 irreducible", brute_irreducible(&p("t^2+1")?, &budget)?, false);
    expect(&mut c, "t+g irreducible", brute_irreducible(&p("t+g")?, &budget)?, true);
    let all: Vec<Vec<String>> = brute_factorizations(&p("t^2+1")?, &budget)?.iter().map(|f| f.factor_strings()).collect();
    let mut want = vec![
        vec!["t + 1".to_string(), "t + 1".to_string()],
        vec![text(p("t+g^2")?), "t + g".into()],
        vec!["t + g".into(), text(p("t+g^2")?)],
    ];
    want.sort();
    expect(&mut c, "factorizations of t^2+1", all, want);
    let r9 = f9()?;
    expect(&mut c, "(t+1)(t+g) over F9", brute_factorizations(&r9.parse("t^2+(2*g+2)*t+g")?, &budget)?.len(), 2);
    expect(&mut c, "t^2+g", brute_factorizations(&p("t^2+g")?, &budget)?.len(), 1);
    Ok(c)
}

pub fn examples() -> Result<Vec<Check>> {
    Ok(vec![
        galois_fields()?,
        function_field()?,
        skew_ring()?,
        central_structure()?,
        norm_engine()?,
        factor_engine()?,
        cyclic_algebra()?,
        oracle()?,
        f9_distinct_cubic()?,
    ])
}
