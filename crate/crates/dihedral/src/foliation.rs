//! The degree-two foliation cut out by the Riccati form at `w = ∞`, its
//! Lotka–Volterra normal form and its invariant curves.

use crate::params::{plane_ctx, ParameterPoint};
use cas_kernel::{
    divides_exactly, gcd, rat, render_rational, resultant, rf, CasError, Context, OneForm, Polynomial, Rational,
    Substitution, RF,
};
use num_traits::{One, Zero};
use serde::Serialize;

/// `ω = ((2λ0+λ1)x + λ1(y-1))y dx - ((λ0+2λ1)y + λ0(x-1))x dy`.
pub const OMEGA_DX: &str = "((2*l0+l1)*x + l1*(y-1))*y";
pub const OMEGA_DY: &str = "-((l0+2*l1)*y + l0*(x-1))*x";

#[derive(Clone, Debug)]
pub struct FoliationForm {
    pub params: ParameterPoint,
    /// Over `[x, y, l0, l1]`, base `(x, y)`.
    pub omega: OneForm,
}

impl FoliationForm {
    pub fn new(p: &ParameterPoint) -> Self {
        let ctx = plane_ctx();
        let (l0, l1) = p.values(&ctx);
        let sub = lambda_sub(&ctx, l0, l1);
        let comps = [OMEGA_DX, OMEGA_DY].iter().map(|s| sub.apply(&rf(&ctx, s)).expect("polynomial")).collect();
        FoliationForm { params: p.clone(), omega: OneForm::new(&[0, 1], comps) }
    }

    pub fn ctx(&self) -> &Context {
        self.omega.ctx()
    }

    pub fn p(&self) -> &RF {
        self.omega.comp(0)
    }

    pub fn q(&self) -> &RF {
        self.omega.comp(1)
    }

    pub fn render(&self) -> String {
        self.omega.render()
    }
}

fn lambda_sub(ctx: &Context, l0: RF, l1: RF) -> Substitution {
    Substitution::by_name(ctx, ctx, &[("l0", l0), ("l1", l1)])
}

/// Rejects parameters for which singular points collide or the
/// Lotka–Volterra parameters are undefined.
pub fn check_nondegenerate(p: &ParameterPoint) -> Result<(), CasError> {
    let (Some(a), Some(b)) = (&p.l0, &p.l1) else { return Ok(()) };
    let msg = if a.is_zero() && b.is_zero() {
        "λ0 = λ1 = 0: the form vanishes"
    } else if a.is_zero() {
        "λ0 = 0: [λ1²:λ0²:(λ0+λ1)²] collides with [1:0:1], and A = λ1/λ0 is undefined"
    } else if b.is_zero() {
        "λ1 = 0: [λ1²:λ0²:(λ0+λ1)²] collides with [0:1:1], and C = -(λ0+λ1)/λ1 is undefined"
    } else if (a + b).is_zero() {
        "λ0 + λ1 = 0: [λ1²:λ0²:(λ0+λ1)²] collides with [1:1:0], and B = -λ0/(λ0+λ1) is undefined"
    } else {
        return Ok(());
    };
    Err(CasError::Degenerate(msg.into()))
}

/// A singular point `[x:y:t]` with its certificate.
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub coords: [RF; 3],
    /// The chart in which both coefficients were evaluated.
    pub chart: &'static str,
    pub vanishes: bool,
}

impl SingularPoint {
    pub fn render(&self) -> String {
        format!("[{}:{}:{}]", self.coords[0].render(), self.coords[1].render(), self.coords[2].render())
    }
}

/// The form in another affine chart of the plane, with the polar part at
/// the new line at infinity cleared and common factors removed.
fn saturated_chart(f: &FoliationForm, x: &str, y: &str) -> Result<OneForm, CasError> {
    let ctx = f.ctx().clone();
    let sub = Substitution::by_name(&ctx, &ctx, &[("x", rf(&ctx, x)), ("y", rf(&ctx, y))]);
    let pulled = f.omega.pullback(&sub, &[0, 1])?;
    Ok(saturate(&pulled))
}

/// Multiplies a rational one-form by the common denominator and divides by
/// the gcd of the numerators.
pub fn saturate(om: &OneForm) -> OneForm {
    let ctx = om.ctx().clone();
    let mut den = Polynomial::one(&ctx);
    for c in om.comps() {
        let g = gcd::gcd(&den, c.den());
        den = den.mul(&c.den().div_exact(&g).expect("gcd divides"));
    }
    let nums: Vec<Polynomial> = om
        .comps()
        .iter()
        .map(|c| c.num().mul(&den.div_exact(c.den()).expect("common denominator")))
        .collect();
    let g = nums.iter().fold(Polynomial::zero(&ctx), |g, n| gcd::gcd(&g, n));
    let comps = nums.iter().map(|n| RF::from_poly(n.div_exact(&g).expect("gcd divides"))).collect();
    OneForm::new(om.base(), comps)
}

fn vanishes_at(om: &OneForm, point: [(&str, RF); 2]) -> Result<bool, CasError> {
    let ctx = om.ctx().clone();
    let sub = Substitution::by_name(&ctx, &ctx, &point);
    for c in om.comps() {
        if !sub.apply(c)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The seven singular points, each certified by exact vanishing of both
/// coefficients in an affine chart containing it.
pub fn singular_points(f: &FoliationForm) -> Result<Vec<SingularPoint>, CasError> {
    check_nondegenerate(&f.params)?;
    let ctx = f.ctx().clone();
    let (l0, l1) = f.params.values(&ctx);
    let one = RF::one(&ctx);
    let zero = RF::zero(&ctx);
    let s2 = l0.add(&l1).pow(2);
    let (x4, y4) = (l1.pow(2).div(&s2), l0.pow(2).div(&s2));
    let mut out = Vec::new();
    let affine = [(zero.clone(), zero.clone()), (zero.clone(), one.clone()), (one.clone(), zero.clone()), (x4, y4)];
    for (k, (x, y)) in affine.into_iter().enumerate() {
        let v = vanishes_at(&f.omega, [("x", x.clone()), ("y", y.clone())])?;
        let coords = if k < 3 { [x, y, one.clone()] } else { [l1.pow(2), l0.pow(2), s2.clone()] };
        out.push(SingularPoint { coords, chart: "t = 1", vanishes: v });
    }
    // x = 1/t', y = y'/t' around [1:*:0], written in the variables x, y
    let cx = saturated_chart(f, "1/y", "x/y")?;
    for y in [one.clone(), zero.clone()] {
        let v = vanishes_at(&cx, [("x", y.clone()), ("y", zero.clone())])?;
        out.push(SingularPoint { coords: [one.clone(), y, zero.clone()], chart: "x = 1", vanishes: v });
    }
    let cy = saturated_chart(f, "x/y", "1/y")?;
    let v = vanishes_at(&cy, [("x", zero.clone()), ("y", zero.clone())])?;
    out.push(SingularPoint { coords: [zero.clone(), one.clone(), zero.clone()], chart: "y = 1", vanishes: v });
    // listed order: [0:0:1],[0:1:1],[1:0:1],[λ1²:λ0²:(λ0+λ1)²],[1:1:0],[0:1:0],[1:0:0]
    out.swap(5, 6);
    Ok(out)
}

/// The resultant in `y` of the two affine coefficients and whether its
/// roots lie among the listed `x` values `0, 1, λ1²/(λ0+λ1)²`. Needs
/// rational parameters.
#[derive(Clone, Debug)]
pub struct ResultantCheck {
    pub resultant: Polynomial,
    pub only_listed_roots: bool,
}

pub fn affine_resultant_check(f: &FoliationForm) -> Result<ResultantCheck, CasError> {
    let (Some(a), Some(b)) = (&f.params.l0, &f.params.l1) else {
        return Err(CasError::Degenerate("needs rational parameters".into()));
    };
    check_nondegenerate(&f.params)?;
    let ctx = f.ctx().clone();
    let r = resultant(f.p().num(), f.q().num(), ctx.var("y"))?;
    if r.is_zero() {
        return Ok(ResultantCheck { resultant: r, only_listed_roots: false });
    }
    let x4 = (b * b) / ((a + b) * (a + b));
    let x = Polynomial::named(&ctx, "x");
    let mut rest = r.clone();
    for root in [Rational::zero(), Rational::one(), x4] {
        let lin = x.sub(&Polynomial::constant(&ctx, root));
        while let Some(q) = rest.div_exact(&lin) {
            rest = q;
        }
    }
    Ok(ResultantCheck { only_listed_roots: rest.total_degree() == 0, resultant: r })
}

// ---------------------------------------------------------------------------
// Lotka–Volterra

/// `(A, B, C) = (λ1/λ0, -λ0/(λ0+λ1), -(λ0+λ1)/λ1)`.
pub fn lv_parameters(ctx: &Context, p: &ParameterPoint) -> [RF; 3] {
    let (l0, l1) = p.values(ctx);
    let s = l0.add(&l1);
    [l1.div(&l0), l0.div(&s).neg(), s.div(&l1).neg()]
}

#[derive(Clone, Debug)]
pub struct LotkaVolterraForm {
    pub abc: [RF; 3],
    /// Over `[x, y, t, l0, l1]`, base `(x, y, t)`.
    pub omega0: OneForm,
    /// `(V_x, V_y, V_t)`.
    pub field: [RF; 3],
}

pub fn lv_ctx() -> Context {
    Context::new(&["x", "y", "t", "l0", "l1"])
}

impl LotkaVolterraForm {
    /// `V = (x(Cy+t), y(At+x), t(Bx+y))` and
    /// `ω0 = (yV_t - tV_y)dx + (tV_x - xV_t)dy + (xV_y - yV_x)dt`.
    pub fn new(abc: [RF; 3]) -> Self {
        let ctx = abc[0].ctx().clone();
        let v = |n: &str| RF::named(&ctx, n);
        let (x, y, t) = (v("x"), v("y"), v("t"));
        let [a, b, c] = &abc;
        let vx = x.mul(&c.mul(&y).add(&t));
        let vy = y.mul(&a.mul(&t).add(&x));
        let vt = t.mul(&b.mul(&x).add(&y));
        let comps = vec![
            y.mul(&vt).sub(&t.mul(&vy)),
            t.mul(&vx).sub(&x.mul(&vt)),
            x.mul(&vy).sub(&y.mul(&vx)),
        ];
        let omega0 = OneForm::new(&[0, 1, 2], comps);
        LotkaVolterraForm { abc, omega0, field: [vx, vy, vt] }
    }

    /// Contractions of `ω0` with the Lotka–Volterra and radial fields.
    pub fn contractions(&self) -> [RF; 2] {
        let ctx = self.omega0.ctx().clone();
        let radial = [RF::named(&ctx, "x"), RF::named(&ctx, "y"), RF::named(&ctx, "t")];
        let contract = |v: &[RF; 3]| (0..3).fold(RF::zero(&ctx), |acc, k| acc.add(&self.omega0.comp(k).mul(&v[k])));
        [contract(&self.field), contract(&radial)]
    }

    /// `ω0` at `t = 1` after `x ↦ x/B, y ↦ Ay`, over [`plane_ctx`].
    pub fn normalized(&self) -> Result<OneForm, CasError> {
        let src = self.omega0.ctx().clone();
        let ctx = plane_ctx();
        let [a, b, _] = &self.abc;
        let (a, b) = (a.embed_by_name(&ctx), b.embed_by_name(&ctx));
        let sub = Substitution::by_name(
            &src,
            &ctx,
            &[("x", RF::named(&ctx, "x").div(&b)), ("y", a.mul(&RF::named(&ctx, "y"))), ("t", RF::one(&ctx))],
        );
        self.omega0.pullback(&sub, &[0, 1])
    }
}

#[derive(Clone, Debug)]
pub struct LvReport {
    pub abc: [RF; 3],
    /// Coefficient of `ω ∧ ω0'` after normalization.
    pub wedge: RF,
    pub contractions_vanish: bool,
    pub abc_product_is_one: bool,
    /// The fourth singular point of the normalized `ω0'` is that of `ω`.
    pub fourth_point_matches: bool,
    /// With `B` fixed, `A` and `C` agree with the published parametrization
    /// by `B`.
    pub b_parametrization_matches: bool,
    /// `(A, B, C)` with one sign flipped, and whether the wedge survives.
    pub flipped: [bool; 3],
    /// The published converse family with `γ1 = λ1, γ2 = λ0` is `ω`.
    pub converse_matches: bool,
}

impl LvReport {
    pub fn passes(&self) -> bool {
        self.wedge.is_zero()
            && self.contractions_vanish
            && self.abc_product_is_one
            && self.fourth_point_matches
            && self.b_parametrization_matches
            && self.flipped.iter().all(|b| *b)
            && self.converse_matches
    }
}

fn wedge_with(f: &FoliationForm, abc: [RF; 3]) -> Result<RF, CasError> {
    let lv = LotkaVolterraForm::new(abc);
    Ok(f.omega.wedge(&lv.normalized()?).comp(0, 1))
}

/// The published converse: `((γ1+2γ2)x + γ1(y-1))y dx - ((2γ1+γ2)y + γ2(x-1))x dy`.
pub fn converse_family(ctx: &Context, g1: &RF, g2: &RF) -> OneForm {
    let x = RF::named(ctx, "x");
    let y = RF::named(ctx, "y");
    let one = RF::one(ctx);
    let two = |r: &RF| r.scale(&rat(2));
    let p = g1.add(&two(g2)).mul(&x).add(&g1.mul(&y.sub(&one))).mul(&y);
    let q = two(g1).add(g2).mul(&y).add(&g2.mul(&x.sub(&one))).mul(&x).neg();
    OneForm::new(&[0, 1], vec![p, q])
}

pub fn lv_equivalence(p: &ParameterPoint) -> Result<LvReport, CasError> {
    check_nondegenerate(p)?;
    let f = FoliationForm::new(p);
    let lc = lv_ctx();
    let abc = lv_parameters(&lc, p);
    let lv = LotkaVolterraForm::new(abc.clone());
    let contractions_vanish = lv.contractions().iter().all(|c| c.is_zero());
    let wedge = wedge_with(&f, abc.clone())?;
    let [a, b, c] = &abc;
    let one = RF::one(&lc);
    let abc_product_is_one = a.mul(b).mul(c).is_one();
    let (l0, l1) = p.values(&lc);
    let s2 = l0.add(&l1).pow(2);
    let den = c.mul(&b.sub(&one)).add(&one);
    let x4 = a.mul(&c.sub(&one)).add(&one).div(&den);
    let y4 = b.mul(&a.sub(&one)).add(&one).div(&den);
    let fourth_point_matches = b.mul(&x4) == l1.pow(2).div(&s2) && y4.div(a) == l0.pow(2).div(&s2);
    let a_of_b = b.sub(&one).mul(&l1).div(&l0.scale(&rat(2)).add(&l1).mul(b));
    let c_of_b = b
        .scale(&rat(2))
        .mul(&s2)
        .add(&l0.mul(&l1))
        .div(&l0.mul(&l1).mul(&b.sub(&one)))
        .neg();
    let b_parametrization_matches = a_of_b == *a && c_of_b == *c;
    let mut flipped = [false; 3];
    for k in 0..3 {
        let mut g = abc.clone();
        g[k] = g[k].neg();
        flipped[k] = !wedge_with(&f, g)?.is_zero();
    }
    let pc = plane_ctx();
    let (m0, m1) = p.values(&pc);
    let converse_matches = converse_family(&pc, &m1, &m0).sub(&f.omega).is_zero();
    Ok(LvReport {
        abc,
        wedge,
        contractions_vanish,
        abc_product_is_one,
        fourth_point_matches,
        b_parametrization_matches,
        flipped,
        converse_matches,
    })
}

/// `J(z) = -1/(1+z)`.
pub fn j_map(z: &RF) -> RF {
    z.add(&RF::one(z.ctx())).inv().neg()
}

/// `B = J(A)`, `C = J(J(A))` and `J∘J∘J = id`.
pub fn j_orbit_check(p: &ParameterPoint) -> bool {
    let ctx = lv_ctx();
    let [a, b, c] = lv_parameters(&ctx, p);
    let zc = Context::new(&["z"]);
    let z = RF::named(&zc, "z");
    j_map(&a) == b && j_map(&j_map(&a)) == c && j_map(&j_map(&j_map(&z))) == z
}

/// `ω(cλ0, cλ1) = c·ω(λ0, λ1)` identically in `(c, λ0, λ1)`, for the given
/// coefficients.
pub fn quotient_dependence_check_for(coeffs: [&str; 2]) -> bool {
    let ctx = Context::new(&["x", "y", "l0", "l1", "c"]);
    let c = RF::named(&ctx, "c");
    let sub = Substitution::by_name(
        &ctx,
        &ctx,
        &[("l0", c.mul(&RF::named(&ctx, "l0"))), ("l1", c.mul(&RF::named(&ctx, "l1")))],
    );
    coeffs.iter().all(|s| {
        let f = rf(&ctx, s);
        sub.apply(&f).map(|g| g == f.mul(&c)).unwrap_or(false)
    })
}

pub fn quotient_dependence_check() -> bool {
    quotient_dependence_check_for([OMEGA_DX, OMEGA_DY])
}

// ---------------------------------------------------------------------------
// Invariant curves

pub fn curve_ctx() -> Context {
    Context::new(&["u0", "u1"])
}

/// `ω'' = u0 u1 (u0-1)(u1-1)·(λ0(du0/u0 - du1/u1) + λ1(du0/(u0-1) - du1/(u1-1)))`.
pub fn upstairs_form(l0: &Rational, l1: &Rational) -> OneForm {
    let ctx = curve_ctx();
    let u0 = Polynomial::named(&ctx, "u0");
    let u1 = Polynomial::named(&ctx, "u1");
    let one = Polynomial::one(&ctx);
    let (a0, a1) = (u0.sub(&one), u1.sub(&one));
    let d0 = a0.scale(l0).add(&u0.scale(l1)).mul(&u1).mul(&a1);
    let d1 = a1.scale(l0).add(&u1.scale(l1)).mul(&u0).mul(&a0).neg();
    OneForm::new(&[0, 1], vec![RF::from_poly(d0), RF::from_poly(d1)])
}

/// `u0^p (u0-1)^q - c·u1^p (u1-1)^q`.
pub fn curve_polynomial(p: u32, q: u32, c: &Rational) -> Polynomial {
    let ctx = curve_ctx();
    let one = Polynomial::one(&ctx);
    let side = |name: &str| {
        let u = Polynomial::named(&ctx, name);
        u.pow(p).mul(&u.sub(&one).pow(q))
    };
    side("u0").sub(&side("u1").scale(c))
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveCertificate {
    /// `(p, q, c)`; `C_n` is `(n, 1, 1)`.
    pub p: u32,
    pub q: u32,
    pub c: String,
    pub curve: String,
    pub invariant: bool,
    /// `(ω'' ∧ dF)/F` when it is a polynomial.
    pub quotient: Option<String>,
    pub curve_degree: u32,
    pub wedge_degree: u32,
    pub quotient_degree: Option<u32>,
    /// `F·quotient` reproduces the wedge coefficient.
    pub reverified: bool,
    /// `(p, q, c)` other than `(n, 1, 1)`.
    pub generalized: bool,
}

/// Certifies invariance of `F = 0` under `ω''` at `(λ0, λ1) = (p, q)` by
/// exact division of the coefficient of `ω'' ∧ dF` by `F`.
pub fn certify_curve(f: &Polynomial, l0: &Rational, l1: &Rational) -> (bool, Option<Polynomial>, Polynomial) {
    let om = upstairs_form(l0, l1);
    let df = OneForm::exact(&RF::from_poly(f.clone()), &[0, 1]);
    let w = om.wedge(&df).comp(0, 1);
    let w = w.num().clone();
    match divides_exactly(f, &w) {
        Some(q) => (true, Some(q), w),
        None => (false, None, w),
    }
}

pub fn invariant_curve_check(p: u32, q: u32, c: &Rational) -> Result<CurveCertificate, CasError> {
    if p == 0 || q == 0 || c.is_zero() {
        return Err(CasError::Degenerate("need p, q ≥ 1 and c ≠ 0".into()));
    }
    let f = curve_polynomial(p, q, c);
    let (lp, lq) = (Rational::from_integer(p.into()), Rational::from_integer(q.into()));
    let (invariant, quotient, w) = certify_curve(&f, &lp, &lq);
    let reverified = quotient.as_ref().map(|qq| f.mul(qq) == w).unwrap_or(false);
    Ok(CurveCertificate {
        p,
        q,
        c: render_rational(c),
        curve: f.render(),
        invariant,
        quotient_degree: quotient.as_ref().map(|qq| qq.total_degree()),
        quotient: quotient.map(|qq| qq.render()),
        curve_degree: f.total_degree(),
        wedge_degree: w.total_degree(),
        reverified,
        generalized: !(q == 1 && c.is_one()),
    })
}

/// `C_n`: `u0^n(u0-1) - u1^n(u1-1) = 0` at `(λ0, λ1) = (n, 1)`.
pub fn invariant_curve_n(n: u32) -> Result<CurveCertificate, CasError> {
    invariant_curve_check(n, 1, &Rational::one())
}

/// `C_n` for several `n`, in parallel.
pub fn invariant_curves(ns: &[u32]) -> Vec<Result<CurveCertificate, CasError>> {
    use rayon::prelude::*;
    ns.par_iter().map(|&n| invariant_curve_n(n)).collect()
}

/// Invariance of one component of the quintic.
#[derive(Clone, Debug)]
pub struct ComponentInvariance {
    pub component: &'static str,
    pub invariant: bool,
}

/// Each of `x = 0`, `y = 0`, the line at infinity and the conic divides the
/// coefficient of `ω ∧ df` (in the chart `X = x/y, Y = 1/y` for the line at
/// infinity).
pub fn quintic_invariance(f: &FoliationForm) -> Result<Vec<ComponentInvariance>, CasError> {
    let ctx = f.ctx().clone();
    let check = |om: &OneForm, g: &str| -> bool {
        let g = rf(om.ctx(), g);
        let w = om.wedge(&OneForm::exact(&g, &[0, 1])).comp(0, 1);
        w.is_zero() || divides_exactly(g.num(), w.num()).is_some()
    };
    let inf = saturated_chart(f, "x/y", "1/y")?;
    let _ = &ctx;
    Ok(vec![
        ComponentInvariance { component: "x = 0", invariant: check(&f.omega, "x") },
        ComponentInvariance { component: "y = 0", invariant: check(&f.omega, "y") },
        ComponentInvariance { component: "line at infinity", invariant: check(&inf, "y") },
        ComponentInvariance { component: "conic", invariant: check(&f.omega, crate::connection::CONIC) },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use cas_kernel::ratio;

    #[test]
    fn origin_is_singular() {
        let f = FoliationForm::new(&ParameterPoint::symbolic());
        assert!(vanishes_at(&f.omega, [("x", RF::zero(f.ctx())), ("y", RF::zero(f.ctx()))]).unwrap());
    }

    #[test]
    fn point_list_at_one_two() {
        let f = FoliationForm::new(&ParameterPoint::ints(1, 2));
        let pts = singular_points(&f).unwrap();
        assert_eq!(pts[3].render(), "[4:1:9]");
        assert!(pts.iter().all(|p| p.vanishes));
    }

    #[test]
    fn degenerate_parameters_are_named() {
        let e = singular_points(&FoliationForm::new(&ParameterPoint::ints(1, -1))).unwrap_err();
        assert!(e.to_string().contains("λ0 + λ1 = 0"), "{e}");
        assert!(lv_equivalence(&ParameterPoint::ints(0, 1)).is_err());
    }

    #[test]
    fn lv_parameters_at_one_two() {
        let ctx = lv_ctx();
        let [a, b, c] = lv_parameters(&ctx, &ParameterPoint::ints(1, 2));
        assert_eq!((a.render(), b.render(), c.render()), ("2".into(), "-1/3".into(), "-3/2".into()));
        assert!(a.mul(&b).mul(&c).is_one());
    }

    #[test]
    fn first_curve_factors() {
        let f = curve_polynomial(1, 1, &Rational::one());
        let ctx = curve_ctx();
        assert_eq!(f, cas_kernel::parse_poly(&ctx, "(u0-u1)*(u0+u1-1)").unwrap());
        assert!(invariant_curve_n(1).unwrap().invariant);
    }

    #[test]
    fn non_invariant_curve() {
        let f = cas_kernel::parse_poly(&curve_ctx(), "u0 + u1").unwrap();
        assert!(!certify_curve(&f, &rat(1), &rat(1)).0);
    }

    #[test]
    fn quotient_negative_control() {
        assert!(quotient_dependence_check());
        assert!(!quotient_dependence_check_for([OMEGA_DX, "-((l0+2*l1)*y + l0*(x-1))*x + l0^2*x"]));
        let _ = ratio(1, 2);
    }
}
