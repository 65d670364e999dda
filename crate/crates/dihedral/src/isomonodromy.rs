//! Isomonodromic deformations carried by the family: the Painlevé VI
//! solution on horizontal lines, the Riccati data and residues on generic
//! lines, the Garnier solution and the elimination quartic.

use crate::connection::{riccati_nabla, Variant};
use crate::params::{formula, ParameterPoint};
use crate::riccati::quadratic_to_matrix;
use cas_kernel::forms::Mat2;
use cas_kernel::{
    gcd, rat, ratio, rational_to_f64, resultant, rf, CasError, Context, Polynomial, QuadExt, Rational, Substitution, RF,
};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::sync::Arc;

// ---------------------------------------------------------------------------
// Painlevé VI

/// The algebraic solution `q(u(z))` and its parameters.
#[derive(Clone, Debug)]
pub struct PVIData {
    pub q: RF,
    pub u: RF,
    /// `(α, β, γ, δ)`.
    pub params: [RF; 4],
}

pub fn pvi_ctx() -> Context {
    Context::new(&["z", "l0", "l1"])
}

/// `q = -λ1/(2λ0+λ1)·(z-1)/(z+1)`, `u = ((z-1)/(z+1))²` and
/// `((2λ0+λ1)²/2, -λ1²/2, 1/8, 3/8)`.
pub fn pvi_data(p: &ParameterPoint) -> PVIData {
    let ctx = pvi_ctx();
    let (l0, l1) = p.values(&ctx);
    let names = ["l0", "l1", "z"];
    let args = [l0, l1, RF::named(&ctx, "z")];
    let f = |src: &str| formula(src, &names, &args);
    PVIData {
        q: f("-l1/(2*l0+l1)*(z-1)/(z+1)"),
        u: f("((z-1)/(z+1))^2"),
        params: [f("(2*l0+l1)^2/2"), f("-l1^2/2"), RF::constant(&ctx, ratio(1, 8)), RF::constant(&ctx, ratio(3, 8))],
    }
}

/// `q'' - RHS` of the sixth Painlevé equation in the independent variable
/// `u`, with derivatives taken through `z`.
pub fn pvi_residual(d: &PVIData) -> RF {
    let zv = d.q.ctx().var("z");
    let du = d.u.derivative(zv);
    let q = &d.q;
    let u = &d.u;
    let q1 = q.derivative(zv).div(&du);
    let q2 = q1.derivative(zv).div(&du);
    let one = RF::one(q.ctx());
    let half = ratio(1, 2);
    let [a, b, c, dd] = &d.params;
    let qm1 = q.sub(&one);
    let qmu = q.sub(u);
    let um1 = u.sub(&one);
    let t1 = q.inv().add(&qm1.inv()).add(&qmu.inv()).scale(&half).mul(&q1).mul(&q1);
    let t2 = u.inv().add(&um1.inv()).add(&qmu.inv()).mul(&q1);
    let pre = q.mul(&qm1).mul(&qmu).div(&u.mul(u).mul(&um1).mul(&um1));
    let inner = a
        .add(&b.mul(u).div(&q.mul(q)))
        .add(&c.mul(&um1).div(&qm1.mul(&qm1)))
        .add(&dd.mul(u).mul(&um1).div(&qmu.mul(&qmu)));
    q2.sub(&t1.sub(&t2).add(&pre.mul(&inner)))
}

/// The residues on the horizontal line `y = z²`, in `s = x/(z+1)²`, whose
/// punctures are `0, 1, u, ∞`.
#[derive(Clone, Debug)]
pub struct HorizontalResidues {
    pub w0: Mat2<RF>,
    pub w1: Mat2<RF>,
    pub wu: Mat2<RF>,
    pub w_inf: Mat2<RF>,
    /// Root of the lower-left entry of the system.
    pub q: RF,
}

/// `(s - p)·M` at `s = p`.
fn residue_at(m: &Mat2<RF>, sv: usize, p: &RF) -> Result<Mat2<RF>, CasError> {
    let ctx = m.m[0][0].ctx().clone();
    let s = RF::var(&ctx, sv);
    let mut images: Vec<RF> = (0..ctx.len()).map(|i| RF::var(&ctx, i)).collect();
    images[sv] = p.clone();
    let sub = Substitution::new(&ctx, &ctx, images);
    m.try_map(|e| sub.apply(&e.mul(&s.sub(p))))
}

/// Residue of `M ds` at `s = ∞`, that is `-lim s·M(s)`.
fn residue_at_infinity(m: &Mat2<RF>, sv: usize) -> Result<Mat2<RF>, CasError> {
    let ctx = m.m[0][0].ctx().clone();
    let s = RF::var(&ctx, sv);
    let mut images: Vec<RF> = (0..ctx.len()).map(|i| RF::var(&ctx, i)).collect();
    images[sv] = s.inv();
    let inv = Substitution::new(&ctx, &ctx, images.clone());
    images[sv] = RF::zero(&ctx);
    let at0 = Substitution::new(&ctx, &ctx, images);
    m.try_map(|e| Ok(at0.apply(&inv.apply(&e.mul(&s))?)?.neg()))
}

pub fn q_from_residues(p: &ParameterPoint) -> Result<HorizontalResidues, CasError> {
    let r = riccati_nabla(p, Variant::Corrected);
    let fctx = r.ctx().clone();
    let ctx = Context::new(&["s", "W", "z", "l0", "l1"]);
    let s = RF::named(&ctx, "s");
    let z = RF::named(&ctx, "z");
    let zp1 = z.add(&RF::one(&ctx));
    let sub = Substitution::by_name(&fctx, &ctx, &[("x", zp1.mul(&zp1).mul(&s)), ("y", z.mul(&z)), ("w", RF::zero(&ctx))]);
    let pulled = r.pullback(&sub, &[0, 1])?;
    let m = quadratic_to_matrix(pulled.comp(0), 1);
    let one = RF::one(&ctx);
    let u = z.sub(&one).div(&zp1).pow(2);
    let w0 = residue_at(&m, 0, &RF::zero(&ctx))?;
    let w1 = residue_at(&m, 0, &one)?;
    let wu = residue_at(&m, 0, &u)?;
    let w_inf = residue_at_infinity(&m, 0)?;
    let lower = &m.m[1][0];
    let num = lower.num();
    if lower.is_zero() || num.degree_in(0) != 1 {
        return Err(CasError::Degenerate("lower-left entry is not of degree one in s".into()));
    }
    let c = num.coefficients_in(0);
    let q = RF::from_poly(c[0].clone()).div(&RF::from_poly(c[1].clone())).neg();
    let pv = pvi_ctx();
    let back = |e: &RF| e.embed_by_name(&pv);
    Ok(HorizontalResidues {
        w0: w0.map(back),
        w1: w1.map(back),
        wu: wu.map(back),
        w_inf: w_inf.map(back),
        q: back(&q),
    })
}

// ---------------------------------------------------------------------------
// Generic lines

/// Variables of the generic line family: `s`, the fiber coordinate, the
/// chart `(α, z)` and the parameters.
pub fn line_family_ctx() -> Context {
    Context::new(&["s", "W", "alpha", "z", "l0", "l1"])
}

/// `(t1, t2)` as functions of `(α, z)` in `ctx`.
pub fn t_values(ctx: &Context) -> (RF, RF) {
    (rf(ctx, "-alpha*(z+1)^2/((alpha-1)*(alpha-z^2))"), rf(ctx, "-alpha*(z-1)^2/((alpha-1)*(alpha-z^2))"))
}

/// The Riccati equation of ∇ on the line `y = αx + β` with
/// `z² = β(1-α) + α`, in `s = -αx/β` and the fiber coordinate `W + 1`.
#[derive(Clone, Debug)]
pub struct LineData {
    pub coeffs: crate::riccati::RiccatiCoefficients,
    pub t1: RF,
    pub t2: RF,
    pub beta: RF,
    /// The system matrix in `s`.
    pub matrix: Mat2<RF>,
}

/// Values for `(α, z)`; `None` keeps a coordinate symbolic.
#[derive(Clone, Debug, Default)]
pub struct ChartPoint {
    pub alpha: Option<Rational>,
    pub z: Option<Rational>,
}

impl ChartPoint {
    pub fn symbolic() -> Self {
        ChartPoint::default()
    }

    pub fn new(alpha: Rational, z: Rational) -> Self {
        ChartPoint { alpha: Some(alpha), z: Some(z) }
    }

    pub fn specialize(&self, f: &RF) -> Result<RF, CasError> {
        let mut out = f.clone();
        for (name, v) in [("alpha", &self.alpha), ("z", &self.z)] {
            if let (Some(i), Some(v)) = (f.ctx().index(name), v) {
                out = out.eval_var(i, v).ok_or_else(|| CasError::Pole(format!("{name} = {}", cas_kernel::render_rational(v))))?;
            }
        }
        Ok(out)
    }

    /// Rejects points on the denominators of the Garnier parametrization.
    pub fn check_chart(&self) -> Result<(), CasError> {
        use num_traits::{One, Zero};
        let (Some(a), Some(z)) = (&self.alpha, &self.z) else { return Ok(()) };
        let bad = [
            (a.is_zero(), "α"),
            (a.is_one(), "α - 1"),
            (z * z == *a, "α - z²"),
            (a == z, "α - z"),
            ((a + z).is_zero(), "α + z"),
            ((z * z).is_one(), "z² - 1"),
        ];
        match bad.iter().find(|(b, _)| *b) {
            Some((_, why)) => Err(CasError::Pole(format!("{why} vanishes"))),
            None => Ok(()),
        }
    }

    /// Rejects points where the line or the punctures degenerate.
    pub fn check_generic(&self) -> Result<(), CasError> {
        use num_traits::{One, Zero};
        let (Some(a), Some(z)) = (&self.alpha, &self.z) else { return Ok(()) };
        let z2 = z * z;
        let bad = [
            (a.is_zero(), "α = 0"),
            (a.is_one(), "α = 1"),
            (z2 == *a, "z² = α (β = 0)"),
            (z.is_zero(), "z = 0 (t1 = t2)"),
            (z2.is_one(), "z² = 1 (a conic puncture meets s = 0)"),
            ((a + Rational::one()).is_zero(), "α = -1 (a conic puncture meets s = 1)"),
        ];
        match bad.iter().find(|(b, _)| *b) {
            Some((_, why)) => Err(CasError::Degenerate(format!("degenerate line: {why}"))),
            None => Ok(()),
        }
    }
}

pub fn line_restriction_data(p: &ParameterPoint, at: &ChartPoint) -> Result<LineData, CasError> {
    at.check_generic()?;
    let r = riccati_nabla(p, Variant::Corrected);
    let fctx = r.ctx().clone();
    let ctx = line_family_ctx();
    let s = RF::named(&ctx, "s");
    let beta = rf(&ctx, "(z^2 - alpha)/(1 - alpha)");
    let alpha = RF::named(&ctx, "alpha");
    let sub = Substitution::by_name(
        &fctx,
        &ctx,
        &[
            ("x", s.mul(&beta).div(&alpha).neg()),
            ("y", RF::one(&ctx).sub(&s).mul(&beta)),
            ("W", RF::named(&ctx, "W").sub(&RF::one(&ctx))),
            ("w", RF::zero(&ctx)),
        ],
    );
    let pulled = r.pullback(&sub, &[0, 1])?;
    debug_assert!(pulled.comp(1).is_one());
    let (t1, t2) = t_values(&ctx);
    let one = RF::one(&ctx);
    let k = rf(&ctx, "((alpha-1)*(alpha-z^2))^2");
    let den = k.scale(&rat(2)).mul(&s).mul(&s.sub(&one)).mul(&s.sub(&t1)).mul(&s.sub(&t2));
    let [c2, c1, c0] = crate::riccati::quadratic_parts(pulled.comp(0), 1);
    let sp = |f: &RF| at.specialize(f);
    let coeffs = crate::riccati::RiccatiCoefficients {
        a2: sp(&c2.mul(&den))?,
        a1: sp(&c1.mul(&den))?,
        a0: sp(&c0.mul(&den))?,
        den: sp(&den)?,
    };
    let matrix = quadratic_to_matrix(pulled.comp(0), 1).try_map(|e| sp(e))?;
    Ok(LineData { coeffs, t1: sp(&t1)?, t2: sp(&t2)?, beta: sp(&beta)?, matrix })
}

/// The coefficients `a2, a1, a0` as published, in [`line_family_ctx`].
pub fn printed_line_coefficients(p: &ParameterPoint) -> [RF; 3] {
    let ctx = line_family_ctx();
    let (l0, l1) = p.values(&ctx);
    let names = ["l0", "l1", "al", "z", "s"];
    let args = [l0, l1, RF::named(&ctx, "alpha"), RF::named(&ctx, "z"), RF::named(&ctx, "s")];
    let f = |src: &str| formula(src, &names, &args);
    let a2 = f("al*(s-1)*(z^2-al)*((l0+l1)*(al^2-(z^2+1)*al+z^2)*s^2+(-l1*al^2+(l0*(z^2+1)+2*l1)*al-(2*l0+l1)*z^2)*s+l1*(z^2-1)*al)");
    let a1 = f("2*((l0+l1)*(al^4-2*(z^2+1)*al^3+(z^4+4*z^2+1)*al^2-2*(z^4+z^2)*al+z^4)*s^3 \
         +(-(2*l0+3*l1-1)*al^4+((4*l0+4*l1-1)*z^2+4*l0+6*l1-1)*al^3-((2*l0+l1)*z^4+2*(4*l0+l1-1)*z^2+(2*l0+3*l1))*al^2 \
         +((4*l0+2*l1-1)*z^4+(4*l0+4*l1-1)*z^2)*al-(2*l0+l1+1)*z^4)*s^2 \
         +(2*l1*al^4-((2*l0-1)*z^2+(2*l0+6*l1-1))*al^3+((l0-l1)*z^4+2*(3*l0+2*l1-1)*z^2+l0+3*l1)*al^2+((2*l0-1)*z^4+(2*l0+2*l1-1)*z^2)*al)*s \
         +l1*(2*(1-z^2)*al+z^4-1)*al^2)");
    let a0 = f("4*al*(al-1)*((l0+l1-1)*(1-al)*(z^2-al)*s^2+(((l0-1)*(al-2)-l1)*z^2-l1*al^2+(l0+2*l1-1)*al)*s+l1*al*(z^2-1))");
    [a2, a1, a0]
}

/// One residue on a generic line.
#[derive(Clone, Debug)]
pub struct LineResidue {
    pub puncture: &'static str,
    pub residue: Mat2<RF>,
    pub det: RF,
    pub expected_det: RF,
}

#[derive(Clone, Debug)]
pub struct LineResidueReport {
    pub residues: Vec<LineResidue>,
    /// Whether the four finite residues sum to minus the one at infinity.
    pub residue_theorem: bool,
}

impl LineResidueReport {
    pub fn all_match(&self) -> bool {
        self.residue_theorem && self.residues.iter().all(|r| r.det == r.expected_det && r.residue.trace().is_zero())
    }
}

pub fn verify_line_residues(p: &ParameterPoint, at: &ChartPoint) -> Result<LineResidueReport, CasError> {
    let d = line_restriction_data(p, at)?;
    let ctx = d.matrix.m[0][0].ctx().clone();
    let (l0, l1) = p.values(&ctx);
    let one = RF::one(&ctx);
    let q = |e: RF| e.mul(&e).scale(&ratio(-1, 4));
    let sixteenth = RF::constant(&ctx, ratio(-1, 16));
    let pts: [(&'static str, RF, RF); 4] = [
        ("0", RF::zero(&ctx), q(l1.clone())),
        ("1", one.clone(), q(l0.sub(&one))),
        ("t1", d.t1.clone(), sixteenth.clone()),
        ("t2", d.t2.clone(), sixteenth),
    ];
    let mut residues = Vec::new();
    let mut sum = Mat2::new(RF::zero(&ctx), RF::zero(&ctx), RF::zero(&ctx), RF::zero(&ctx));
    for (name, pt, expected) in pts {
        let r = residue_at(&d.matrix, 0, &pt)?;
        sum = sum.add(&r);
        residues.push(LineResidue { puncture: name, det: r.det(), residue: r, expected_det: expected });
    }
    let inf = residue_at_infinity(&d.matrix, 0)?;
    let residue_theorem = sum.add(&inf).is_zero();
    residues.push(LineResidue { puncture: "inf", det: inf.det(), residue: inf, expected_det: q(l0.add(&l1)) });
    Ok(LineResidueReport { residues, residue_theorem })
}

/// `(Sq, Pq)` read off the `s`-quadratic `a0`, whose roots are the apparent
/// singularities, in the parameters of the connection.
pub fn sq_pq_from_line(p: &ParameterPoint) -> Result<(RF, RF), CasError> {
    let d = line_restriction_data(p, &ChartPoint::symbolic())?;
    let a0 = &d.coeffs.a0;
    let c = a0.num().coefficients_in(0);
    if c.len() != 3 {
        return Err(CasError::Degenerate("a0 is not quadratic in s".into()));
    }
    let g = |k: usize| RF::from_poly(c[k].clone());
    let cc = chart_ctx();
    Ok((g(1).div(&g(2)).neg().embed_by_name(&cc), g(0).div(&g(2)).embed_by_name(&cc)))
}

/// Renames `(λ0, λ1) ↦ (λ1 + 1, λ0 - 1)`, which turns data attached to
/// `(s = 0, s = 1)` into data attached to `(s = 1, s = 0)` in the Garnier
/// normalization.
pub fn relabel(f: &RF) -> RF {
    let ctx = f.ctx().clone();
    let one = RF::one(&ctx);
    let sub = Substitution::by_name(
        &ctx,
        &ctx,
        &[("l0", RF::named(&ctx, "l1").add(&one)), ("l1", RF::named(&ctx, "l0").sub(&one))],
    );
    sub.apply(f).expect("relabeling is polynomial")
}

// ---------------------------------------------------------------------------
// Garnier

pub fn chart_ctx() -> Context {
    Context::new(&["alpha", "z", "l0", "l1"])
}

/// Variables of the Hamiltonians.
pub fn ham_ctx() -> Context {
    Context::new(&["q1", "q2", "p1", "p2", "t1", "t2", "l0", "l1"])
}

/// `(t1, t2, Sq, Pq, Sp, γ)` at a point of the `(α, z)` chart.
#[derive(Clone, Debug)]
pub struct GarnierChartPoint {
    pub t1: RF,
    pub t2: RF,
    pub sq: RF,
    pub pq: RF,
    pub sp: RF,
    pub gamma: RF,
}

impl GarnierChartPoint {
    pub fn st(&self) -> RF {
        self.t1.add(&self.t2)
    }

    pub fn pt(&self) -> RF {
        self.t1.mul(&self.t2)
    }

    /// Evaluates every field at a rational chart point.
    pub fn at(&self, at: &ChartPoint) -> Result<GarnierChartPoint, CasError> {
        let f = |e: &RF| at.specialize(e);
        Ok(GarnierChartPoint {
            t1: f(&self.t1)?,
            t2: f(&self.t2)?,
            sq: f(&self.sq)?,
            pq: f(&self.pq)?,
            sp: f(&self.sp)?,
            gamma: f(&self.gamma)?,
        })
    }
}

fn chart_formula(p: &ParameterPoint, src: &str) -> RF {
    let ctx = chart_ctx();
    let (l0, l1) = p.values(&ctx);
    formula(src, &["l0", "l1", "al", "z"], &[l0, l1, RF::named(&ctx, "alpha"), RF::named(&ctx, "z")])
}

/// `Sq` as derived from the apparent singularities.
pub fn sq_formula(p: &ParameterPoint) -> RF {
    chart_formula(
        p,
        "(l0*(al^2-2*al+z^2)-l1*((1+z^2)*al-2*z^2)+al*(2-al)-z^2)/((l0+l1-1)*(al-z^2)*(al-1))",
    )
}

/// `Sq` as published, with `-λ1(1 + z² + 2α)α` in the numerator.
pub fn printed_sq_formula(p: &ParameterPoint) -> RF {
    chart_formula(p, "(l0*(al^2-2*al+z^2)-l1*(1+z^2+2*al)*al+al*(2-al)-z^2)/((l0+l1-1)*(al-z^2)*(al-1))")
}

pub fn pq_formula(p: &ParameterPoint) -> RF {
    chart_formula(p, "(l0-1)*(z-1)*(z+1)*al/((l0+l1-1)*(al-z^2)*(al-1))")
}

/// Published `γ`.
pub fn printed_gamma_formula(p: &ParameterPoint) -> RF {
    chart_formula(p, "-(l0+l1-1)*(al+1)*(al-z^2)^2*(al-1)/(2*al*(al-z)*(al+z)*(z+1)*(z-1))")
}

/// Published `Sp`, reading the garbled `λ_-2` in the `α²z²` coefficient as
/// `λ1 - 2`.
pub fn printed_sp_formula(p: &ParameterPoint) -> RF {
    chart_formula(
        p,
        "(al-z^2)/(2*al*(al-z)*(al+z)*(z+1)*(z-1)) * ((l0+2*l1-1)*al^3 + ((2*l0+l1-2)*z^2-(3*l0+l1-3))*al^2 \
         + ((l0-3*l1+1)*al+(l0-1))*z^2)",
    )
}

/// Behaviour under `z ↦ -z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Neither,
}

/// Parity of a function of [`chart_ctx`] in `z`.
pub fn z_parity(f: &RF) -> Parity {
    let ctx = f.ctx().clone();
    let flip = Substitution::by_name(&ctx, &ctx, &[("z", RF::named(&ctx, "z").neg())]);
    let g = flip.apply(f).expect("polynomial substitution");
    if g == *f {
        Parity::Even
    } else if g == f.neg() {
        Parity::Odd
    } else {
        Parity::Neither
    }
}

/// `F(S, P)` of the implicit relations.
pub fn f_poly(p: &ParameterPoint, s: &RF, pq: &RF) -> RF {
    let ctx = s.ctx().clone();
    let (l0, l1) = p.values(&ctx);
    formula(
        "(l0-l1-1)*(l0+l1-1)^3*P^2 + (l0-1)^2*(l0+l1-1)^2*(2*P-2*P*S+S^2-2*S) + (l0-1)^3*(l0+2*l1-1)",
        &["l0", "l1", "S", "P"],
        &[l0, l1, s.clone(), pq.clone()],
    )
}

/// Whether a relation `lhs = rhs` holds as published or with `rhs` negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    Printed,
    Flipped,
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerEntry {
    pub relation: &'static str,
    pub convention: SignConvention,
}

fn decide(lhs: &RF, rhs: &RF) -> SignConvention {
    if lhs == rhs {
        SignConvention::Printed
    } else if *lhs == rhs.neg() {
        SignConvention::Flipped
    } else {
        SignConvention::Neither
    }
}

/// Decides both implicit relations under the parametrization, with the
/// given `Sq`:
/// `(λ0-1)²λ1² St = -F(Sq, Pq)` and `(λ0-1)² Pt = -(λ0+λ1-1)² Pq²`.
pub fn relation_ledger(p: &ParameterPoint, sq: &RF) -> Vec<LedgerEntry> {
    let ctx = chart_ctx();
    let (l0, l1) = p.values(&ctx);
    let (t1, t2) = t_values(&ctx);
    let one = RF::one(&ctx);
    let pq = pq_formula(p);
    let a = l0.sub(&one).pow(2);
    let lhs1 = a.mul(&l1.pow(2)).mul(&t1.add(&t2));
    let rhs1 = f_poly(p, sq, &pq).neg();
    let lhs2 = a.mul(&t1.mul(&t2));
    let rhs2 = l0.add(&l1).sub(&one).pow(2).mul(&pq.pow(2)).neg();
    vec![
        LedgerEntry { relation: "(l0-1)^2 l1^2 St = -F(Sq,Pq)", convention: decide(&lhs1, &rhs1) },
        LedgerEntry { relation: "(l0-1)^2 Pt = -(l0+l1-1)^2 Pq^2", convention: decide(&lhs2, &rhs2) },
    ]
}

/// Field operations shared by rationals, rational functions, quadratic
/// extensions and first-order jets, so that each Hamiltonian is written once.
pub trait Scalar: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self, CasError>;
    /// A constant in the same field as `self`.
    fn lift(&self, c: &Rational) -> Self;
}

impl Scalar for Rational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self, CasError> {
        use num_traits::Zero;
        if o.is_zero() {
            return Err(CasError::Pole("division by zero".into()));
        }
        Ok(self / o)
    }
    fn lift(&self, c: &Rational) -> Self {
        c.clone()
    }
}

impl Scalar for RF {
    fn add(&self, o: &Self) -> Self {
        RF::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RF::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RF::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self, CasError> {
        if o.is_zero() {
            return Err(CasError::Pole("division by zero".into()));
        }
        Ok(RF::div(self, o))
    }
    fn lift(&self, c: &Rational) -> Self {
        RF::constant(self.ctx(), c.clone())
    }
}

impl Scalar for QuadExt {
    fn add(&self, o: &Self) -> Self {
        QuadExt::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        QuadExt::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        QuadExt::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self, CasError> {
        QuadExt::div(self, o)
    }
    fn lift(&self, c: &Rational) -> Self {
        QuadExt::from_base(RF::constant(self.ctx(), c.clone()), self.disc())
    }
}

/// A value with its gradient in `(q1, q2, p1, p2)`.
#[derive(Clone, Debug)]
pub struct Jet {
    pub v: QuadExt,
    pub d: [QuadExt; 4],
}

impl Jet {
    pub fn constant(v: QuadExt) -> Self {
        let z = v.lift(&rat(0));
        Jet { v, d: [z.clone(), z.clone(), z.clone(), z] }
    }

    /// The `k`-th coordinate with value `v`.
    pub fn coordinate(v: QuadExt, k: usize) -> Self {
        let mut j = Jet::constant(v);
        j.d[k] = j.v.lift(&rat(1));
        j
    }
}

impl Scalar for Jet {
    fn add(&self, o: &Self) -> Self {
        Jet { v: self.v.add(&o.v), d: std::array::from_fn(|k| self.d[k].add(&o.d[k])) }
    }
    fn sub(&self, o: &Self) -> Self {
        Jet { v: self.v.sub(&o.v), d: std::array::from_fn(|k| self.d[k].sub(&o.d[k])) }
    }
    fn mul(&self, o: &Self) -> Self {
        Jet { v: self.v.mul(&o.v), d: std::array::from_fn(|k| self.v.mul(&o.d[k]).add(&o.v.mul(&self.d[k]))) }
    }
    fn div(&self, o: &Self) -> Result<Self, CasError> {
        let inv = o.v.inv()?;
        let v = self.v.mul(&inv);
        let d = std::array::from_fn(|k| self.d[k].sub(&v.mul(&o.d[k])).mul(&inv));
        Ok(Jet { v, d })
    }
    fn lift(&self, c: &Rational) -> Self {
        Jet::constant(self.v.lift(c))
    }
}

/// Which pair of Hamiltonians.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HamiltonianKind {
    /// The Garnier Hamiltonians with exponents `θ = (1/2, 1/2, λ0-1, λ1)`
    /// at `(t1, t2, 0, 1)` and `κ = 0`:
    /// `H_i = -Λ(t_i)/T'(t_i) Σ_k T(q_k)/((q_k - t_i)Λ'(q_k)) (p_k² - Σ_m (θ_m - δ_mi)/(q_k - t_m) p_k)`
    /// with `T(x) = x(x-1)(x-t1)(x-t2)` and `Λ(x) = (x-q1)(x-q2)`.
    Garnier,
    /// The published `H_1, H_2` built from `H(t1, t2, p1, p2, q1, q2)`.
    Printed,
}

/// Arguments of a Hamiltonian: `q, p, t, λ`.
#[derive(Clone, Debug)]
pub struct HamArgs<T> {
    pub q: [T; 2],
    pub p: [T; 2],
    pub t: [T; 2],
    pub l: [T; 2],
}

/// The published `H(t1, t2, p1, p2, q1, q2)`; it does not involve `p2`.
pub fn printed_h<T: Scalar>(t1: &T, t2: &T, p1: &T, q1: &T, q2: &T, l: &[T; 2]) -> T {
    let c = |n: i64| t1.lift(&rat(n));
    let (l0, l1) = (&l[0], &l[1]);
    let one = c(1);
    let t12 = t1.add(t2);
    let tt = t1.mul(t2);
    let q1sq = q1.mul(q1);
    let lsum1 = l0.add(l1).sub(&one);
    // ((t1+t2+1)p1 + (λ0+λ1-1))q1²
    let a = t12.add(&one).mul(p1).add(&lsum1).mul(&q1sq);
    // ((t1+t2+t1t2)p1 - (2λ0+2λ1-1)(t1+t2) - 2t2 + 2(λ0-1))q1/2
    let b = t12
        .add(&tt)
        .mul(p1)
        .sub(&c(2).mul(&l0.add(l1)).sub(&one).mul(&t12))
        .sub(&c(2).mul(t2))
        .add(&c(2).mul(&l0.sub(&one)))
        .mul(q1)
        .mul(&t1.lift(&ratio(1, 2)));
    // (-(2λ0-1)t1t2p1 + 2(λ0+λ1-1)t2 + 2λ0 - 1)t1
    let two_l0_m1 = c(2).mul(l0).sub(&one);
    let e = c(2).mul(&lsum1).mul(t2).add(&two_l0_m1).sub(&two_l0_m1.mul(&tt).mul(p1)).mul(t1);
    let f = c(2).mul(&l0.sub(&c(3))).mul(t2);
    let inner = p1.mul(&q1sq).mul(q1).add(&a).sub(&b).add(&e).add(&f);
    p1.mul(q1).mul(&q2.sub(t1)).mul(&inner)
}

/// `H_i` (`i = 0, 1` for `H_1, H_2`).
pub fn hamiltonian<T: Scalar>(kind: HamiltonianKind, i: usize, a: &HamArgs<T>) -> Result<T, CasError> {
    let HamArgs { q, p, t, l } = a;
    let c = |r: Rational| t[0].lift(&r);
    let one = c(rat(1));
    match kind {
        HamiltonianKind::Garnier => {
            let zero = c(rat(0));
            let tm = [t[0].clone(), t[1].clone(), zero, one.clone()];
            let half = c(ratio(1, 2));
            let theta = [half.clone(), half, l[0].sub(&one), l[1].clone()];
            let ti = &tm[i];
            let mut tprime = one.clone();
            for (m, x) in tm.iter().enumerate() {
                if m != i {
                    tprime = tprime.mul(&ti.sub(x));
                }
            }
            let lam = ti.sub(&q[0]).mul(&ti.sub(&q[1]));
            let mut sum = c(rat(0));
            for k in 0..2 {
                let qk = &q[k];
                // T(q_k)/(q_k - t_i)
                let mut tq = qk.mul(&qk.sub(&one));
                tq = tq.mul(&qk.sub(&t[1 - i]));
                let mut lin = c(rat(0));
                for m in 0..4 {
                    let th = if m == i { theta[m].sub(&one) } else { theta[m].clone() };
                    lin = lin.add(&th.div(&qk.sub(&tm[m]))?);
                }
                let bracket = p[k].mul(&p[k]).sub(&lin.mul(&p[k]));
                sum = sum.add(&tq.div(&qk.sub(&q[1 - k]))?.mul(&bracket));
            }
            Ok(c(rat(0)).sub(&lam.div(&tprime)?.mul(&sum)))
        }
        HamiltonianKind::Printed => {
            let (tk, to) = (&t[i], &t[1 - i]);
            let h1 = printed_h(tk, to, &p[0], &q[0], &q[1], l);
            let h2 = printed_h(tk, to, &p[1], &q[1], &q[0], l);
            let den = c(rat(2)).mul(&q[0].sub(&q[1])).mul(&t[0].sub(&t[1])).mul(&tk.sub(&one)).mul(tk);
            let h = c(rat(2)).mul(&h1).add(&h2).div(&den)?;
            Ok(if i == 0 { c(rat(0)).sub(&h) } else { h })
        }
    }
}

/// Both Hamiltonians as rational functions of [`ham_ctx`].
pub fn hamiltonians_rf(kind: HamiltonianKind, p: &ParameterPoint) -> [RF; 2] {
    let ctx = ham_ctx();
    let (l0, l1) = p.values(&ctx);
    let v = |n: &str| RF::named(&ctx, n);
    let a = HamArgs { q: [v("q1"), v("q2")], p: [v("p1"), v("p2")], t: [v("t1"), v("t2")], l: [l0, l1] };
    std::array::from_fn(|i| hamiltonian(kind, i, &a).expect("generic Hamiltonian"))
}

pub fn garnier_hamiltonians(p: &ParameterPoint) -> [RF; 2] {
    hamiltonians_rf(HamiltonianKind::Garnier, p)
}

pub fn printed_hamiltonians(p: &ParameterPoint) -> [RF; 2] {
    hamiltonians_rf(HamiltonianKind::Printed, p)
}

/// Evaluates the published `H`, `H_1`, `H_2` at rational arguments
/// `(t1, t2, p1, p2, q1, q2)`.
pub fn hamiltonian_eval(p: &ParameterPoint, args: [Rational; 6]) -> Result<[Rational; 3], CasError> {
    use num_traits::{One, Zero};
    let [t1, t2, p1, p2, q1, q2] = args;
    if q1 == q2 || t1 == t2 || [&t1, &t2].iter().any(|t| t.is_zero() || t.is_one()) {
        return Err(CasError::Pole("excluded locus q1 = q2, t1 = t2 or t_k ∈ {0, 1}".into()));
    }
    let (Some(l0), Some(l1)) = (p.l0.clone(), p.l1.clone()) else {
        return Err(CasError::Degenerate("parameters must be rational".into()));
    };
    let l = [l0, l1];
    let h = printed_h(&t1, &t2, &p1, &q1, &q2, &l);
    let a = HamArgs { q: [q1, q2], p: [p1, p2], t: [t1, t2], l };
    Ok([h, hamiltonian(HamiltonianKind::Printed, 0, &a)?, hamiltonian(HamiltonianKind::Printed, 1, &a)?])
}

/// `∂_{t_k}` as a combination of `∂_α, ∂_z`.
struct TDerivative {
    coeffs: [[RF; 2]; 2],
}

impl TDerivative {
    fn new(t1: &RF, t2: &RF) -> Result<Self, CasError> {
        let ctx = t1.ctx();
        let (a, z) = (ctx.var("alpha"), ctx.var("z"));
        let j = Mat2::new(t1.derivative(a), t1.derivative(z), t2.derivative(a), t2.derivative(z));
        let inv = j.inverse().ok_or_else(|| CasError::Degenerate("(t1, t2) is not a local chart".into()))?;
        // ∂_{t_k} = inv[0][k] ∂_α + inv[1][k] ∂_z
        Ok(TDerivative { coeffs: [[inv.m[0][0].clone(), inv.m[1][0].clone()], [inv.m[0][1].clone(), inv.m[1][1].clone()]] })
    }

    fn apply(&self, k: usize, f: &QuadExt) -> QuadExt {
        let ctx = f.ctx().clone();
        let (a, z) = (ctx.var("alpha"), ctx.var("z"));
        f.derivative(a).scale(&self.coeffs[k][0]).add(&f.derivative(z).scale(&self.coeffs[k][1]))
    }
}

/// The Hamiltonians fed to [`garnier_residuals`].
#[derive(Clone, Copy, Debug)]
pub struct HamiltonianChoice {
    pub kind: HamiltonianKind,
    /// Negate `H_1` (negative control).
    pub flip_h1: bool,
}

impl HamiltonianChoice {
    pub fn garnier() -> Self {
        HamiltonianChoice { kind: HamiltonianKind::Garnier, flip_h1: false }
    }

    fn eval(&self, i: usize, a: &HamArgs<Jet>) -> Result<Jet, CasError> {
        let h = hamiltonian(self.kind, i, a)?;
        Ok(if self.flip_h1 && i == 0 { h.lift(&rat(0)).sub(&h) } else { h })
    }
}

/// Residuals of the Hamiltonian system for a solution built from `(Sq, Pq)`.
#[derive(Clone, Debug)]
pub struct GarnierResiduals {
    /// `∂_{t_k} q_i - ∂_{p_i} H_k` and `∂_{t_k} p_i + ∂_{q_i} H_k`, as
    /// `(label, is_zero)`.
    pub hamilton: Vec<(String, bool)>,
    /// The eight symmetrized equations. The `γ` equation is
    /// `∂γ = -((q1-q2)(∂_{q1} - ∂_{q2}) + (p1-p2)(∂_{p1} - ∂_{p2}))H/(q1-q2)²`,
    /// obtained by differentiating `γ = (p1-p2)/(q1-q2)`.
    pub symmetrized: Vec<(String, bool)>,
    /// The `γ` equation as published, with `+` inside both brackets.
    pub printed_gamma: Vec<(String, bool)>,
    /// `p2` is the conjugate of `p1`.
    pub conjugate_momenta: bool,
    pub point: GarnierChartPoint,
}

impl GarnierResiduals {
    pub fn all_zero(&self) -> bool {
        self.conjugate_momenta && self.hamilton.iter().chain(&self.symmetrized).all(|(_, z)| *z)
    }

    pub fn nonzero(&self) -> Vec<&str> {
        self.hamilton.iter().chain(&self.symmetrized).filter(|(_, z)| !*z).map(|(n, _)| n.as_str()).collect()
    }

    pub fn symmetrized_zero(&self) -> bool {
        self.symmetrized.iter().all(|(_, z)| *z)
    }
}

/// Solves `∂_{t1} q_k = ∂_{p_k} H_1` for the momenta (each `∂_{p_k} H_1` is
/// affine in `p_k`), then checks all the remaining equations in the
/// quadratic extension by `δ = q1 - q2`, `δ² = Sq² - 4Pq`.
pub fn garnier_residuals(
    p: &ParameterPoint,
    hams: HamiltonianChoice,
    sq: &RF,
    pq: &RF,
) -> Result<GarnierResiduals, CasError> {
    let ctx = chart_ctx();
    let (t1, t2) = t_values(&ctx);
    let (l0, l1) = p.values(&ctx);
    let disc: Arc<RF> = QuadExt::field(sq.mul(sq).sub(&pq.scale(&rat(4))));
    let half = RF::constant(&ctx, ratio(1, 2));
    let delta = QuadExt::delta(&disc);
    let q1 = QuadExt::from_base(sq.mul(&half), &disc).add(&delta.scale(&half));
    let q2 = q1.conj();
    let qs = [q1.clone(), q2.clone()];
    let dt = TDerivative::new(&t1, &t2)?;
    let b = |e: &RF| Jet::constant(QuadExt::from_base(e.clone(), &disc));
    let args = |pp: &[QuadExt; 2]| HamArgs {
        q: [Jet::coordinate(qs[0].clone(), 0), Jet::coordinate(qs[1].clone(), 1)],
        p: [Jet::coordinate(pp[0].clone(), 2), Jet::coordinate(pp[1].clone(), 3)],
        t: [b(&t1), b(&t2)],
        l: [b(&l0), b(&l1)],
    };

    // ∂_{p_k} H_1 = c0 + c1 p_k, read off at p = 0 and p = 1
    let zero = delta.lift(&rat(0));
    let one = delta.lift(&rat(1));
    let h0 = hams.eval(0, &args(&[zero.clone(), zero]))?;
    let h1 = hams.eval(0, &args(&[one.clone(), one]))?;
    let mut ps = Vec::new();
    for k in 0..2 {
        let c0 = &h0.d[2 + k];
        let c1 = h1.d[2 + k].sub(c0);
        if c1.is_zero() {
            return Err(CasError::Degenerate("∂H1/∂p_k does not involve p_k".into()));
        }
        ps.push(dt.apply(0, &qs[k]).sub(c0).div(&c1)?);
    }
    let pp = [ps[0].clone(), ps[1].clone()];
    let conjugate_momenta = pp[1] == pp[0].conj();

    let mut hamilton = Vec::new();
    let mut symmetrized = Vec::new();
    let mut printed_gamma = Vec::new();
    let sp = pp[0].add(&pp[1]);
    let gamma = pp[0].sub(&pp[1]).div(&delta)?;
    let sqx = QuadExt::from_base(sq.clone(), &disc);
    let pqx = QuadExt::from_base(pq.clone(), &disc);
    let at = args(&pp);
    for k in 0..2 {
        let h = hams.eval(k, &at)?;
        let dq = [h.d[0].clone(), h.d[1].clone()];
        let dp = [h.d[2].clone(), h.d[3].clone()];
        for i in 0..2 {
            let r1 = dt.apply(k, &qs[i]).sub(&dp[i]);
            let r2 = dt.apply(k, &pp[i]).add(&dq[i]);
            hamilton.push((format!("dq{}/dt{}", i + 1, k + 1), r1.is_zero()));
            hamilton.push((format!("dp{}/dt{}", i + 1, k + 1), r2.is_zero()));
        }
        let e1 = dt.apply(k, &sqx).sub(&dp[0].add(&dp[1]));
        let e2 = dt.apply(k, &pqx).sub(&qs[1].mul(&dp[0]).add(&qs[0].mul(&dp[1])));
        let e3 = dt.apply(k, &sp).add(&dq[0].add(&dq[1]));
        let dg = dt.apply(k, &gamma);
        let d2 = delta.mul(&delta);
        let gamma_rhs = |gq: QuadExt, gp: QuadExt| -> Result<QuadExt, CasError> {
            Ok(delta.mul(&gq).add(&pp[0].sub(&pp[1]).mul(&gp)).div(&d2)?.neg())
        };
        let e4 = dg.sub(&gamma_rhs(dq[0].sub(&dq[1]), dp[0].sub(&dp[1]))?);
        let e5 = dg.sub(&gamma_rhs(dq[0].add(&dq[1]), dp[0].add(&dp[1]))?);
        for (name, e) in [("Sq", e1), ("Pq", e2), ("Sp", e3), ("gamma", e4)] {
            symmetrized.push((format!("d{name}/dt{}", k + 1), e.is_zero()));
        }
        printed_gamma.push((format!("dgamma/dt{}", k + 1), e5.is_zero()));
    }
    // Sp and γ lie in the base field when p2 is the conjugate of p1
    let base_of = |x: &QuadExt| if x.rad.is_zero() { Some(x.base.clone()) } else { None };
    let point = GarnierChartPoint {
        t1,
        t2,
        sq: sq.clone(),
        pq: pq.clone(),
        sp: base_of(&sp).unwrap_or_else(|| RF::zero(&ctx)),
        gamma: base_of(&gamma).unwrap_or_else(|| RF::zero(&ctx)),
    };
    Ok(GarnierResiduals { hamilton, symmetrized, printed_gamma, conjugate_momenta, point })
}

/// `(t1, t2, Sq, Pq, Sp, γ)` with `Sp, γ` obtained from the Hamiltonian
/// system.
pub fn garnier_parametrization(p: &ParameterPoint, at: &ChartPoint) -> Result<GarnierChartPoint, CasError> {
    at.check_chart()?;
    let r = garnier_residuals(p, HamiltonianChoice::garnier(), &sq_formula(p), &pq_formula(p))?;
    r.point.at(at)
}

/// Nonzero residuals of the published `H_1, H_2` along the parametrization.
pub fn printed_hamiltonian_check(p: &ParameterPoint) -> Result<Vec<String>, CasError> {
    let c = HamiltonianChoice { kind: HamiltonianKind::Printed, flip_h1: false };
    let r = garnier_residuals(p, c, &sq_formula(p), &pq_formula(p))?;
    Ok(r.nonzero().into_iter().map(String::from).collect())
}

/// Everything [`verify_garnier_relations`] establishes.
#[derive(Clone, Debug)]
pub struct GarnierReport {
    pub ledger: Vec<LedgerEntry>,
    /// The relations with the published `Sq`.
    pub ledger_printed_sq: Vec<LedgerEntry>,
    pub residuals: GarnierResiduals,
    /// Nonzero residuals with the published form of the `γ` equation.
    pub printed_gamma_equation: Vec<String>,
    /// Nonzero residuals with `H1` negated.
    pub flipped_h1: Vec<String>,
    /// Nonzero residuals of the published Hamiltonians, with momenta
    /// solved from their own `∂_{t1} q` equations.
    pub printed_hamiltonians: Vec<String>,
    /// Where the two controls above were evaluated.
    pub control_params: ParameterPoint,
    pub printed_gamma_matches: bool,
    pub printed_sp_matches: bool,
}

pub fn verify_garnier_relations(p: &ParameterPoint) -> Result<GarnierReport, CasError> {
    let sq = sq_formula(p);
    let pq = pq_formula(p);
    let g = HamiltonianChoice::garnier();
    let residuals = garnier_residuals(p, g, &sq, &pq)?;
    // a residual that is nonzero at one specialization is nonzero
    // identically, so the controls run at rational parameters
    let control = if p.is_symbolic() { ParameterPoint::ints(2, 3) } else { p.clone() };
    let flipped = garnier_residuals(
        &control,
        HamiltonianChoice { flip_h1: true, ..g },
        &sq_formula(&control),
        &pq_formula(&control),
    )?;
    let names = |r: &GarnierResiduals| r.nonzero().into_iter().map(String::from).collect();
    let printed = printed_hamiltonian_check(&control)?;
    Ok(GarnierReport {
        ledger: relation_ledger(p, &sq),
        ledger_printed_sq: relation_ledger(p, &printed_sq_formula(p)),
        printed_gamma_equation: residuals.printed_gamma.iter().filter(|(_, z)| !*z).map(|(n, _)| n.clone()).collect(),
        flipped_h1: names(&flipped),
        printed_hamiltonians: printed,
        control_params: control,
        printed_gamma_matches: residuals.point.gamma == printed_gamma_formula(p),
        printed_sp_matches: residuals.point.sp == printed_sp_formula(p),
        residuals,
    })
}

// ---------------------------------------------------------------------------
// Elimination quartic

pub fn quartic_ctx() -> Context {
    Context::new(&["X", "Pq", "T1", "T2", "l0", "l1"])
}

/// `P(X, T1, T2)`: the resultant in `Pq` of the two relations (with the
/// verified signs) and `X` in place of `Sq`, made primitive in `X`.
pub fn elimination_quartic(p: &ParameterPoint) -> Result<Polynomial, CasError> {
    let ctx = quartic_ctx();
    let (l0, l1) = p.values(&ctx);
    let v = |n: &str| RF::named(&ctx, n);
    let one = RF::one(&ctx);
    let a = l0.sub(&one).pow(2);
    let e1 = a.mul(&l1.pow(2)).mul(&v("T1").add(&v("T2"))).add(&f_poly(p, &v("X"), &v("Pq")));
    let e2 = a.mul(&v("T1").mul(&v("T2"))).sub(&l0.add(&l1).sub(&one).pow(2).mul(&v("Pq").pow(2)));
    let (e1, e2) = (e1.num().clone(), e2.num().clone());
    let r = resultant(&e1, &e2, ctx.var("Pq"))?;
    let xv = ctx.var("X");
    let coeffs = r.coefficients_in(xv);
    let content = coeffs.iter().skip(1).fold(coeffs[0].clone(), |g, c| gcd::gcd(&g, c));
    let prim = r.div_exact(&content).ok_or_else(|| CasError::Degenerate("content division".into()))?;
    // fixed normalization: positive leading coefficient
    let lc = prim.lc_in(xv).lc();
    Ok(prim.scale(&(Rational::from_integer(1.into()) / lc)))
}

/// Whether `P(Sq(α,z), t1(α,z), t2(α,z))` vanishes identically.
pub fn quartic_vanishes_on_parametrization(p: &ParameterPoint, quartic: &Polynomial) -> Result<bool, CasError> {
    let qc = quartic.ctx().clone();
    let cc = chart_ctx();
    let (t1, t2) = t_values(&cc);
    let sub = Substitution::by_name(
        &qc,
        &cc,
        &[("X", sq_formula(p)), ("T1", t1), ("T2", t2), ("Pq", RF::zero(&cc))],
    );
    Ok(sub.apply_poly(quartic)?.is_zero())
}

/// All complex roots of a polynomial given by coefficients in ascending
/// order, by Aberth iteration.
pub fn polynomial_roots(coeffs: &[C64]) -> Vec<C64> {
    let mut c: Vec<C64> = coeffs.to_vec();
    while c.len() > 1 && c.last().map(|x| x.norm() == 0.0).unwrap_or(false) {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let c: Vec<C64> = c.iter().map(|x| x / lead).collect();
    let dc: Vec<C64> = (1..=n).map(|k| c[k] * k as f64).collect();
    let ev = |cs: &[C64], x: C64| cs.iter().rev().fold(C64::new(0.0, 0.0), |a, &k| a * x + k);
    // Cauchy bound for the starting circle
    let radius = 1.0 + c[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for i in 0..n {
            let ratio = ev(&c, z[i]) / ev(&dc, z[i]);
            if !ratio.is_finite() {
                continue;
            }
            let s: C64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-17 {
            break;
        }
    }
    // a few Newton polishing steps
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = ev(&dc, *zi);
            if d.norm() > 0.0 {
                let step = ev(&c, *zi) / d;
                if step.is_finite() {
                    *zi -= step;
                }
            }
        }
    }
    z
}

/// Single-linkage cluster sizes, sorted.
pub fn cluster_pattern(roots: &[C64], tol: f64) -> Vec<usize> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() < tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut sizes = std::collections::BTreeMap::new();
    for i in 0..n {
        *sizes.entry(find(&mut parent, i)).or_insert(0usize) += 1;
    }
    let mut v: Vec<usize> = sizes.into_values().collect();
    v.sort_unstable();
    v
}

/// Where the probe approaches.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Locus {
    /// `t1 → value` with `t2` fixed.
    T1To(f64),
    /// `t1 → ∞` with `t2` fixed, roots in `Y = 1/X`.
    T1ToInfinity,
    /// `t1 = t2 = value`.
    Diagonal(f64),
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeResult {
    pub locus: Locus,
    pub t2: f64,
    /// Cluster pattern at the last point of the path.
    pub pattern: Vec<usize>,
    /// Smallest root separation at the last point.
    pub min_separation: f64,
    /// First path index from which the pattern no longer changes.
    pub stable_from: usize,
}

fn univariate_at(quartic: &Polynomial, t1: f64, t2: f64) -> Vec<C64> {
    let ctx = quartic.ctx();
    let (xv, t1v, t2v) = (ctx.var("X"), ctx.var("T1"), ctx.var("T2"));
    quartic
        .coefficients_in(xv)
        .iter()
        .map(|c| {
            let mut acc = 0.0;
            for (e, k) in c.terms() {
                acc += rational_to_f64(k) * t1.powi(e[t1v] as i32) * t2.powi(e[t2v] as i32);
            }
            C64::new(acc, 0.0)
        })
        .collect()
}

fn min_separation(roots: &[C64]) -> f64 {
    let mut sep = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            sep = sep.min((roots[i] - roots[j]).norm());
        }
    }
    sep
}

/// Roots in `X` at one point `(t1, t2)`.
pub fn quartic_roots(quartic: &Polynomial, t1: f64, t2: f64) -> Vec<C64> {
    polynomial_roots(&univariate_at(quartic, t1, t2))
}

/// Clusters at a single point, with the default tolerance.
pub fn quartic_probe_at(quartic: &Polynomial, t1: f64, t2: f64) -> ProbeResult {
    let roots = quartic_roots(quartic, t1, t2);
    ProbeResult {
        locus: Locus::T1To(t1),
        t2,
        pattern: cluster_pattern(&roots, 1e-6),
        min_separation: min_separation(&roots),
        stable_from: 0,
    }
}

/// Approaches the locus along 64 points `t1 = a + 2^-j` (or `t1 = 2^j`) and
/// clusters the roots in `X` (in `Y = 1/X` at infinity) with tolerance
/// `tol`. The quartic must have rational coefficients in `X, T1, T2` only.
pub fn quartic_probe(quartic: &Polynomial, locus: Locus, t2: f64, tol: f64) -> ProbeResult {
    use rayon::prelude::*;
    let path: Vec<Vec<C64>> = (1..=64)
        .into_par_iter()
        .map(|j| {
            let h = 2f64.powi(-j);
            match locus {
                Locus::T1To(a) => quartic_roots(quartic, a + h, t2),
                Locus::T1ToInfinity => {
                    let mut c = univariate_at(quartic, 1.0 / h, t2);
                    c.reverse();
                    polynomial_roots(&c)
                }
                Locus::Diagonal(a) => quartic_roots(quartic, a, a),
            }
        })
        .collect();
    let patterns: Vec<Vec<usize>> = path.iter().map(|r| cluster_pattern(r, tol)).collect();
    let last = patterns.last().cloned().unwrap_or_default();
    let stable_from = patterns.iter().rposition(|p| *p != last).map(|k| k + 1).unwrap_or(0);
    ProbeResult {
        locus,
        t2: if let Locus::Diagonal(a) = locus { a } else { t2 },
        pattern: last,
        min_separation: min_separation(path.last().map(|r| r.as_slice()).unwrap_or(&[])),
        stable_from,
    }
}

/// Moves a quartic over `Q(λ)` to rational coefficients at rational `λ`.
pub fn specialize_quartic(p: &ParameterPoint, quartic: &Polynomial) -> Polynomial {
    let r = p.specialize(&RF::from_poly(quartic.clone()));
    r.num().scale(&(Rational::from_integer(1.into()) / r.den().lc()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pvi_at_two_three() {
        let d = pvi_data(&ParameterPoint::ints(2, 3));
        let ps: Vec<String> = d.params.iter().map(|e| e.render()).collect();
        assert_eq!(ps, ["49/2", "-9/2", "1/8", "3/8"]);
        assert!(pvi_residual(&d).is_zero());
        let z = d.q.ctx().var("z");
        assert_eq!(d.q.eval_var(z, &rat(3)).unwrap().render(), "-3/14");
        assert_eq!(d.u.eval_var(z, &rat(3)).unwrap().render(), "1/4");
    }

    #[test]
    fn pvi_negative_control() {
        // q = c·√u solves for both signs of c, so the control flips λ1
        // inside q only
        let mut d = pvi_data(&ParameterPoint::ints(2, 3));
        let mut n = d.q.neg();
        assert!(pvi_residual(&PVIData { q: n.clone(), ..d.clone() }).is_zero());
        n = pvi_data(&ParameterPoint::ints(2, -3)).q;
        d.q = n;
        assert!(!pvi_residual(&d).is_zero());
    }

    #[test]
    fn line_data_at_two_three() {
        let d = line_restriction_data(&ParameterPoint::ints(2, 3), &ChartPoint::new(rat(2), rat(3))).unwrap();
        assert_eq!(d.t1.render(), "32/7");
        assert_eq!(d.t2.render(), "8/7");
        assert_eq!(d.beta.render(), "-7");
        assert!(line_restriction_data(&ParameterPoint::ints(2, 3), &ChartPoint::new(rat(1), rat(3))).is_err());
        assert!(line_restriction_data(&ParameterPoint::ints(2, 3), &ChartPoint::new(rat(4), rat(2))).is_err());
    }

    #[test]
    fn garnier_point_values() {
        let p = ParameterPoint::ints(2, 3);
        let at = ChartPoint::new(rat(2), rat(3));
        let ev = |f: RF| at.specialize(&f).unwrap().render();
        assert_eq!(ev(printed_sq_formula(&p)), "75/28");
        assert_eq!(ev(sq_formula(&p)), "-3/28");
        assert_eq!(ev(pq_formula(&p)), "-4/7");
        assert_eq!(ev(printed_gamma_formula(&p)), "147/40");
        assert!(pq_formula(&ParameterPoint::rational(rat(1), rat(3))).is_zero());
    }

    #[test]
    fn relations_sign_desk_check() {
        // (λ0-1)² Pt = 256/49 against -(λ0+λ1-1)² Pq² = -256/49 at (2,3,2,3)
        let p = ParameterPoint::ints(2, 3);
        let at = ChartPoint::new(rat(2), rat(3));
        let ctx = chart_ctx();
        let (t1, t2) = t_values(&ctx);
        let lhs = at.specialize(&t1.mul(&t2)).unwrap();
        let pq = at.specialize(&pq_formula(&p)).unwrap();
        assert_eq!(lhs.render(), "256/49");
        assert_eq!(pq.mul(&pq).scale(&rat(-16)).render(), "-256/49");
    }

    #[test]
    fn aberth_roots() {
        // (x - 1)(x - 2)(x + 3)(x - i)
        let i = C64::new(0.0, 1.0);
        let r = [C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(-3.0, 0.0), i];
        let mut c = vec![C64::new(1.0, 0.0)];
        for &x in &r {
            let mut n = vec![C64::new(0.0, 0.0); c.len() + 1];
            for (k, &a) in c.iter().enumerate() {
                n[k + 1] += a;
                n[k] -= a * x;
            }
            c = n;
        }
        let roots = polynomial_roots(&c);
        for x in r {
            assert!(roots.iter().any(|y| (y - x).norm() < 1e-12));
        }
        assert_eq!(cluster_pattern(&roots, 1e-6), vec![1, 1, 1, 1]);
    }
}
