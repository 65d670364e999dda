//! The two-parameter family of flat sl2 connections on the plane, its
//! Riccati forms upstairs and downstairs, and the residue table.
//!
//! Everything lives in the affine chart `t = 1` with base coordinates
//! `(x, y)`. The line at infinity is handled by the chart `X = x/y, Y = 1/y`.
//!
//! Sign convention: flat sections of `d + Ω` solve `dZ = -Ω Z`, the
//! curvature is `dΩ + Ω∧Ω`, and `w = Z1/Z2`.

use crate::params::{fiber_ctx, formula, plane_ctx, upstairs_ctx, ParameterPoint};
use crate::riccati::matrix_of_riccati;
use cas_kernel::forms::{Mat2, MatrixOneForm, MatrixTwoForm, OneForm};
use cas_kernel::{
    parse_poly, residue_along, rf, CasError, Context, CurveParametrization, Polynomial, Substitution, RF,
};

/// `x² + y² + 1 - 2(xy + x + y)`, the conic part of the polar locus.
pub const CONIC: &str = "x^2 + y^2 + 1 - 2*(x*y + x + y)";

// Matrices A0, A1, A2 as (dx-part, dy-part) entry lists, row major.
const A_MATRICES: [[[&str; 4]; 2]; 3] = [
    [
        ["-2*(x-1)", "-2*(2*x-y+2)", "2*y", "2*(x-1)"],
        [
            "(x-1)*(x+y-1)/y",
            "(x+y-1)*(2*x-y+2)/y",
            "-x-y+1",
            "-(x-1)*(x+y-1)/y",
        ],
    ],
    [
        [
            "-(x-1)*(x+y-1)/x",
            "-(x+y-1)*(2*x-y+2)/x",
            "y*(x+y-1)/x",
            "(x-1)*(x+y-1)/x",
        ],
        ["2*(x-1)", "2*(2*x-y+2)", "-2*y", "-2*(x-1)"],
    ],
    [
        ["x-y-1", "2*(x-y+3)", "0", "-x+y+1"],
        [
            "-(x^2-x*y-2*x-y+1)/y",
            "-2*(x-1)*(x-y+1)/y",
            "0",
            "(x^2-x*y-2*x-y+1)/y",
        ],
    ],
];

// The matrices as they appear in the published statement. They are not
// flat for any (λ0, λ1); kept to report the discrepancy.
const PRINTED_A_MATRICES: [[[&str; 4]; 2]; 3] = [
    [
        ["2*(x-1)*y", "2*(2*x-y+2)*y", "-2*y^2", "-2*(x-1)*y"],
        [
            "(x^2+x*(y-2)-y+1)*x/y",
            "(2*x^2+y*(x-y+3)-2)*x/y",
            "(x+y-1)*x^2/y",
            "-(x^2+x*(y-2)-y+1)*x/y",
        ],
    ],
    [
        [
            "(x^2+(x-1)*(y-1))*y/x",
            "(x^2+y*(x-y+3)-2)*y/x",
            "-(x+y-1)*y^2/x",
            "-(x^2+(x-1)*(y-1))*y/x",
        ],
        ["2*(x-1)*x", "2*(2*x-y+2)*x", "-2*x^2", "-2*(x-1)*x"],
    ],
    [
        ["-(x+y+1)*y", "-2*(x-y+3)*y", "0", "(x+y+1)*y"],
        [
            "-(x^2-x*(y+2)-y+1)*x/y",
            "-(x^2-2*y*(x+1)+1)*x/y",
            "0",
            "(x^2-x*(y+2)-y+1)*x/y",
        ],
    ],
];

/// Which transcription of the matrices to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// The flat family, as rederived from the Riccati form downstairs.
    Corrected,
    /// The published matrices, verbatim.
    Printed,
}

/// `Ω = -(λ0 A0 + λ1 A1 + A2) / (2Δ)` together with its pieces.
#[derive(Clone, Debug)]
pub struct ConnectionMatrix {
    pub params: ParameterPoint,
    pub variant: Variant,
    pub omega: MatrixOneForm,
    pub delta: Polynomial,
    pub a: [MatrixOneForm; 3],
}

fn matrix_form(ctx: &Context, src: &[[&str; 4]; 2]) -> MatrixOneForm {
    let mats: Vec<Mat2<RF>> = src
        .iter()
        .map(|e| Mat2::new(rf(ctx, e[0]), rf(ctx, e[1]), rf(ctx, e[2]), rf(ctx, e[3])))
        .collect();
    MatrixOneForm::from_components(&[0, 1], &mats)
}

fn scale_matrix_form(m: &MatrixOneForm, f: &RF) -> MatrixOneForm {
    m.map(|e| e.scale(f))
}

fn add_matrix_forms(a: &MatrixOneForm, b: &MatrixOneForm) -> MatrixOneForm {
    Mat2::new(
        a.m[0][0].add(&b.m[0][0]),
        a.m[0][1].add(&b.m[0][1]),
        a.m[1][0].add(&b.m[1][0]),
        a.m[1][1].add(&b.m[1][1]),
    )
}

pub fn build_connection(p: &ParameterPoint) -> ConnectionMatrix {
    build_variant(p, Variant::Corrected)
}

pub fn build_printed_connection(p: &ParameterPoint) -> ConnectionMatrix {
    build_variant(p, Variant::Printed)
}

pub fn build_variant(p: &ParameterPoint, variant: Variant) -> ConnectionMatrix {
    let ctx = plane_ctx();
    let src = match variant {
        Variant::Corrected => &A_MATRICES,
        Variant::Printed => &PRINTED_A_MATRICES,
    };
    let a = [matrix_form(&ctx, &src[0]), matrix_form(&ctx, &src[1]), matrix_form(&ctx, &src[2])];
    let (l0, l1) = p.values(&ctx);
    let delta = parse_poly(&ctx, CONIC).expect("conic");
    let k = RF::from_poly(delta.clone()).scale(&cas_kernel::rat(-2)).inv();
    let sum = add_matrix_forms(&add_matrix_forms(&scale_matrix_form(&a[0], &l0), &scale_matrix_form(&a[1], &l1)), &a[2]);
    ConnectionMatrix { params: p.clone(), variant, omega: scale_matrix_form(&sum, &k), delta, a }
}

impl ConnectionMatrix {
    /// `trace(Ω)` as a one-form.
    pub fn trace(&self) -> OneForm {
        self.omega.trace_form()
    }

    /// Adds `dx` to the (1,1) entry; a negative control for flatness.
    pub fn perturbed(&self) -> ConnectionMatrix {
        let mut c = self.clone();
        let ctx = c.omega.m[0][0].ctx().clone();
        c.omega.m[0][0] = c.omega.m[0][0].add(&OneForm::coordinate(&ctx, &[0, 1], 0));
        c
    }

    pub fn specialize(&self, p: &ParameterPoint) -> MatrixOneForm {
        self.omega.map(|f| f.map(|e| p.specialize(e)))
    }

    pub fn render(&self) -> String {
        render_matrix_form(&self.omega, &["dx", "dy"])
    }
}

pub fn render_matrix_form(m: &MatrixOneForm, names: &[&str]) -> String {
    let mut out = String::new();
    for (k, name) in names.iter().enumerate() {
        let c = m.component(k);
        out.push_str(&format!("{name}: {}\n", cas_kernel::residue::render_mat(&c)));
    }
    out
}

/// The curvature `dΩ + Ω∧Ω`; zero iff the connection is flat. With the
/// opposite convention `Θ = -Ω` this is `-(dΘ - Θ∧Θ)`.
pub fn verify_flatness(c: &ConnectionMatrix) -> MatrixTwoForm {
    c.omega.curvature()
}

/// `dΩ - Ω∧Ω`, the flatness residual under the other sign convention.
pub fn flatness_residual_other_sign(c: &ConnectionMatrix) -> MatrixTwoForm {
    let d = c.omega.d();
    let w = c.omega.wedge(&c.omega);
    Mat2::new(
        d.m[0][0].sub(&w.m[0][0]),
        d.m[0][1].sub(&w.m[0][1]),
        d.m[1][0].sub(&w.m[1][0]),
        d.m[1][1].sub(&w.m[1][1]),
    )
}

/// Nonzero entries of a matrix two-form, rendered; `"0"` when it vanishes.
pub fn render_residual(r: &MatrixTwoForm) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let t = &r.m[i][j];
            if !t.is_zero() {
                parts.push(format!("[{}{}] {}", i + 1, j + 1, t.comp(0, 1)));
            }
        }
    }
    parts.join("; ")
}

// ---------------------------------------------------------------------------
// Riccati forms

/// `g(λ0, λ1, w, x, y)`, the building block of the Riccati form of ∇2.
pub fn g_function(l0: &RF, l1: &RF, w: &RF, x: &RF, y: &RF) -> RF {
    formula(
        "-((2*L0+L1)*x+L1*(y-1))*w^2 + 2*(y-x+1)*x*w + (2*L0+L1)*x^3 \
         - ((4*L0+L1)*(y+1)+2*L1)*x^2 - ((-2*L0+L1)*y^2+2*(2*L0+L1)*y-(2*L0+3*L1))*x \
         + L1*(y^3-3*y^2+3*y-1)",
        &["L0", "L1", "w", "x", "y"],
        &[l0.clone(), l1.clone(), w.clone(), x.clone(), y.clone()],
    )
}

/// Context of the Riccati form of ∇2: `(x, y, w)` plus parameters.
pub fn down_ctx() -> Context {
    Context::new(&["x", "y", "w", "l0", "l1"])
}

/// Riccati form of ∇2 over base `(x, y, w)` in a context containing
/// `x, y, w, l0, l1`.
///
/// The corrected form is `dw + (-g(λ0,λ1,-w,x,y) dx/x + g(λ1,λ0,w,y,x) dy/y)/(2Δ)`;
/// the printed one has `g(λ0,λ1,w,x,y)` in the dx slot and is not integrable.
pub fn riccati_nabla2(ctx: &Context, p: &ParameterPoint, variant: Variant) -> OneForm {
    let (l0, l1) = p.values(ctx);
    let x = RF::named(ctx, "x");
    let y = RF::named(ctx, "y");
    let w = RF::named(ctx, "w");
    let two_delta = rf(ctx, CONIC).scale(&cas_kernel::rat(2));
    let cx = match variant {
        Variant::Corrected => g_function(&l0, &l1, &w.neg(), &x, &y).neg(),
        Variant::Printed => g_function(&l0, &l1, &w, &x, &y),
    };
    let cy = g_function(&l1, &l0, &w, &y, &x);
    let base = [ctx.var("x"), ctx.var("y"), ctx.var("w")];
    OneForm::new(&base, vec![cx.div(&x).div(&two_delta), cy.div(&y).div(&two_delta), RF::one(ctx)])
}

/// The quadratics `f1(W)`, `f2(W)` of the Riccati form of ∇; `corrected`
/// selects the `y` factor in the leading coefficient of `f2`.
pub fn f_functions(ctx: &Context, p: &ParameterPoint, corrected: bool) -> (RF, RF) {
    let (l0, l1) = p.values(ctx);
    let args = [l0, l1, RF::named(ctx, "W"), RF::named(ctx, "x"), RF::named(ctx, "y")];
    let names = ["l0", "l1", "W", "x", "y"];
    let f1 = formula(
        "((2*l0+l1)*x+l1*(y-1))*y*W^2 + 2*((2*l0+l1-1)*x^2+((l1+1)*y-(2*l0+2*l1-1))*x-l1*(y-1))*W \
         + 2*(2*l0+l1-1)*x^2 + ((-2*l0+l1+2)*y+2*(2*l0-3))*x + l1*(-y^2+3*y-2)",
        &names,
        &args,
    );
    let lead = if corrected { "y" } else { "x" };
    let f2 = formula(
        &format!(
            "(l0*(x-1)+(l0+2*l1)*y)*{lead}*W^2 + 2*((l0-1)*(x^2+1)+((l0+2*l1+1)*y-2*(l0-1))*x-(l0+2*l1-1)*y)*W \
             + 2*(l0-1)*(x^2-1)+(l0+4*l1+2)*y*x-(l0+2*l1)*y^2+(3*l0+4*l1-2)*y"
        ),
        &names,
        &args,
    );
    (f1, f2)
}

/// Riccati form of ∇ over base `(x, y, W)` in [`fiber_ctx`].
///
/// Corrected: `dW + (f1 dx/x - f2 dy/y)/(2Δ)`. Printed:
/// `dW - (f1·y dx/x - f2·x dy/y)/(2Δ)` with the printed `f2`.
pub fn riccati_nabla(p: &ParameterPoint, variant: Variant) -> OneForm {
    let ctx = fiber_ctx();
    let x = RF::named(&ctx, "x");
    let y = RF::named(&ctx, "y");
    let two_delta = rf(&ctx, CONIC).scale(&cas_kernel::rat(2));
    let base = [ctx.var("x"), ctx.var("y"), ctx.var("W")];
    let (cx, cy) = match variant {
        Variant::Corrected => {
            let (f1, f2) = f_functions(&ctx, p, true);
            (f1.div(&x), f2.div(&y).neg())
        }
        Variant::Printed => {
            let (f1, f2) = f_functions(&ctx, p, false);
            (f1.mul(&y).div(&x).neg(), f2.mul(&x).div(&y))
        }
    };
    OneForm::new(&base, vec![cx.div(&two_delta), cy.div(&two_delta), RF::one(&ctx)])
}

/// The sl2 matrix of the Riccati form of ∇, moved back to [`plane_ctx`].
pub fn matrix_of_nabla(p: &ParameterPoint, variant: Variant) -> MatrixOneForm {
    let r = riccati_nabla(p, variant);
    let fctx = r.ctx().clone();
    let wv = fctx.var("W");
    let m = matrix_of_riccati(&[0, 1], &r.comps()[..2], wv);
    let plane = plane_ctx();
    m.map(|f| OneForm::new(&[0, 1], f.comps().iter().map(|e| e.embed_by_name(&plane)).collect()))
}

/// Does the Riccati form of ∇ have the connection matrix `c` as its matrix?
pub fn riccati_matches_matrix(c: &ConnectionMatrix, variant: Variant) -> bool {
    let m = matrix_of_nabla(&c.params, variant);
    (0..2).all(|i| (0..2).all(|j| m.m[i][j] == c.omega.m[i][j]))
}

/// Whether the dx- and dy-parts of the Riccati form of ∇2 are exchanged
/// by `(λ0 ↔ λ1, x ↔ y)`.
pub fn verify_g_symmetry(p: &ParameterPoint, variant: Variant) -> bool {
    let ctx = down_ctx();
    let r = riccati_nabla2(&ctx, p, variant);
    let swap = Substitution::by_name(
        &ctx,
        &ctx,
        &[
            ("x", RF::named(&ctx, "y")),
            ("y", RF::named(&ctx, "x")),
            ("l0", RF::named(&ctx, "l1")),
            ("l1", RF::named(&ctx, "l0")),
        ],
    );
    swap.apply(r.comp(0)).map(|s| &s == r.comp(1)).unwrap_or(false)
}

/// Integrability `R ∧ dR = 0` of a Riccati one-form.
pub fn is_integrable(r: &OneForm) -> bool {
    let dr = r.d();
    // R ∧ dR in three variables has the single component (0,1,2)
    let c = |i: usize| r.comp(i).clone();
    let t = c(0).mul(&dr.comp(1, 2)).sub(&c(1).mul(&dr.comp(0, 2))).add(&c(2).mul(&dr.comp(0, 1)));
    t.is_zero()
}

// ---------------------------------------------------------------------------
// Upstairs

/// Which `ω0` to use upstairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Omega0 {
    /// `λ0(du0/u0 - du1/u1) + λ1(du0/(u0-1) - du1/(u1-1))`.
    Antisymmetric,
    /// `du0/u0 + du1/u1`, a negative control.
    Symmetric,
}

/// Forms upstairs on `P1 × P1` and the covering map to the plane.
#[derive(Clone, Debug)]
pub struct UpstairsData {
    pub params: ParameterPoint,
    /// Over base `(u0, u1)` in [`upstairs_ctx`].
    pub omega0: OneForm,
    /// `dz + ω0·z` over base `(u0, u1, z)`.
    pub riccati_nabla0: OneForm,
    /// Over base `(x, y, w)` in [`down_ctx`].
    pub riccati_nabla2: OneForm,
    /// `x = (u0-1)(u1-1), y = u0 u1, w = ±(u0-u1)(z+1)/(z-1)`.
    pub covering: Substitution,
}

impl UpstairsData {
    pub fn new(p: &ParameterPoint) -> Self {
        Self::build(p, Omega0::Antisymmetric, Variant::Corrected, false)
    }

    pub fn build(p: &ParameterPoint, om: Omega0, r2: Variant, flip_w: bool) -> Self {
        let up = upstairs_ctx();
        let (l0, l1) = p.values(&up);
        let u0 = RF::named(&up, "u0");
        let u1 = RF::named(&up, "u1");
        let z = RF::named(&up, "z");
        let one = RF::one(&up);
        let (c0, c1) = match om {
            Omega0::Antisymmetric => (
                l0.div(&u0).add(&l1.div(&u0.sub(&one))),
                l0.div(&u1).add(&l1.div(&u1.sub(&one))).neg(),
            ),
            Omega0::Symmetric => (u0.inv(), u1.inv()),
        };
        let omega0 = OneForm::new(&[0, 1], vec![c0.clone(), c1.clone()]);
        let riccati_nabla0 = OneForm::new(&[0, 1, 2], vec![c0.mul(&z), c1.mul(&z), one.clone()]);
        let down = down_ctx();
        let w_img = u0.sub(&u1).mul(&z.add(&one)).div(&z.sub(&one));
        let covering = Substitution::by_name(
            &down,
            &up,
            &[
                ("x", u0.sub(&one).mul(&u1.sub(&one))),
                ("y", u0.mul(&u1)),
                ("w", if flip_w { w_img.neg() } else { w_img }),
            ],
        );
        UpstairsData {
            params: p.clone(),
            omega0,
            riccati_nabla0,
            riccati_nabla2: riccati_nabla2(&down, p, r2),
            covering,
        }
    }
}

/// `((u0 - u1)/z)·(dz + ω0 z)` is invariant under `η: (u0, u1, z) ↦ (u1, u0, 1/z)`.
pub fn verify_eta_invariance(u: &UpstairsData) -> bool {
    let up = u.riccati_nabla0.ctx().clone();
    let u0 = RF::named(&up, "u0");
    let u1 = RF::named(&up, "u1");
    let z = RF::named(&up, "z");
    let form = u.riccati_nabla0.scale(&u0.sub(&u1).div(&z));
    let eta = Substitution::by_name(&up, &up, &[("u0", u1), ("u1", u0), ("z", z.inv())]);
    match form.pullback(&eta, &[0, 1, 2]) {
        Ok(pulled) => pulled.sub(&form).is_zero(),
        Err(_) => false,
    }
}

/// The pullback of the Riccati form of ∇2 through the covering defines the
/// same foliation upstairs as `dz + ω0 z`.
pub fn verify_pullback_identity(u: &UpstairsData) -> Result<bool, CasError> {
    let pulled = u.riccati_nabla2.pullback(&u.covering, &[0, 1, 2])?;
    Ok(pulled.wedge(&u.riccati_nabla0).is_zero())
}

/// Readings of the fiber map relating ∇2 and ∇.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberMap {
    /// `w = yW + x - 1`, i.e. `W = (w - x + 1)/y`.
    Derived,
    /// `w = W/y + x - 1`, the inverse of `W = y(w - x + 1)`.
    PrintedInverse,
    /// `w = yW`, without the shift.
    Unshifted,
    /// `w = yW - x + 1`, shift with the wrong sign.
    MinusShift,
}

impl FiberMap {
    pub const ALL: [FiberMap; 4] = [FiberMap::Derived, FiberMap::PrintedInverse, FiberMap::Unshifted, FiberMap::MinusShift];

    pub fn name(self) -> &'static str {
        match self {
            FiberMap::Derived => "w = yW + x - 1",
            FiberMap::PrintedInverse => "w = W/y + x - 1",
            FiberMap::Unshifted => "w = yW",
            FiberMap::MinusShift => "w = yW - x + 1",
        }
    }

    fn image(self, ctx: &Context) -> RF {
        let src = match self {
            FiberMap::Derived => "y*W + x - 1",
            FiberMap::PrintedInverse => "W/y + x - 1",
            FiberMap::Unshifted => "y*W",
            FiberMap::MinusShift => "y*W - x + 1",
        };
        rf(ctx, src)
    }
}

/// Substitutes the fiber map into the Riccati form of ∇2 (variant `r2`),
/// divides by the `dW` coefficient, and compares with the Riccati form of ∇
/// (variant `target`). The `dW` coefficient must not depend on `W`.
pub fn phi_conjugation(p: &ParameterPoint, map: FiberMap, r2: Variant, target: Variant) -> bool {
    let ctx = fiber_ctx();
    let r2f = riccati_nabla2(&ctx, p, r2);
    let sub = Substitution::by_name(&ctx, &ctx, &[("w", map.image(&ctx))]);
    let base = [ctx.var("x"), ctx.var("y"), ctx.var("W")];
    let pulled = match r2f.pullback(&sub, &base) {
        Ok(f) => f,
        Err(_) => return false,
    };
    let ratio = pulled.comp(2).clone();
    if ratio.is_zero() || ratio.num().uses_var(ctx.var("W")) || ratio.den().uses_var(ctx.var("W")) {
        return false;
    }
    let normalized = pulled.scale(&ratio.inv());
    normalized.sub(&riccati_nabla(p, target)).is_zero()
}

pub fn verify_phi_conjugation(p: &ParameterPoint) -> bool {
    phi_conjugation(p, FiberMap::Derived, Variant::Corrected, Variant::Corrected)
}

// ---------------------------------------------------------------------------
// Residues

/// One row of the residue table.
#[derive(Clone, Debug)]
pub struct ResidueEntry {
    pub divisor: &'static str,
    /// Entries in the curve parameter `s`.
    pub residue: Mat2<RF>,
    pub det: RF,
    pub expected_det: RF,
}

impl ResidueEntry {
    pub fn matches(&self) -> bool {
        self.det == self.expected_det && self.residue.trace().is_zero()
    }
}

fn curve_ctx() -> Context {
    Context::new(&["s", "l0", "l1"])
}

/// Residues along `y = 0`, `x = 0`, the conic and the line at infinity.
pub fn residue_table(c: &ConnectionMatrix) -> Result<Vec<ResidueEntry>, CasError> {
    let plane = c.omega.m[0][0].ctx().clone();
    let cc = curve_ctx();
    let (l0, l1) = c.params.values(&cc);
    let one = RF::one(&cc);
    let quarter = |e: RF| e.mul(&e).scale(&cas_kernel::ratio(-1, 4));
    let s = RF::named(&cc, "s");
    let on = |imgs: [(&'static str, RF); 2]| {
        CurveParametrization::new("s", Substitution::by_name(&plane, &cc, &imgs))
    };
    let mut out = Vec::new();
    let mut push = |divisor: &'static str, om: &MatrixOneForm, f: Polynomial, curve: CurveParametrization, expected: RF| {
        let residue = residue_along(om, &f, &curve)?;
        let det = residue.det();
        out.push(ResidueEntry { divisor, residue, det, expected_det: expected });
        Ok::<_, CasError>(())
    };
    push(
        "y = 0",
        &c.omega,
        Polynomial::named(&plane, "y"),
        on([("x", s.clone()), ("y", RF::zero(&cc))]),
        quarter(l0.sub(&one)),
    )?;
    push(
        "x = 0",
        &c.omega,
        Polynomial::named(&plane, "x"),
        on([("x", RF::zero(&cc)), ("y", s.clone())]),
        quarter(l1.clone()),
    )?;
    push(
        "conic",
        &c.omega,
        c.delta.clone(),
        on([("x", s.sub(&one).mul(&s.sub(&one))), ("y", s.mul(&s))]),
        RF::constant(&cc, cas_kernel::ratio(-1, 16)),
    )?;
    // chart X = x/y, Y = 1/y
    let chart = Context::new(&["X", "Y", "l0", "l1"]);
    let xx = RF::named(&chart, "X");
    let yy = RF::named(&chart, "Y");
    let to_chart = Substitution::by_name(&plane, &chart, &[("x", xx.div(&yy)), ("y", yy.inv())]);
    let om_inf = c.omega.pullback(&to_chart, &[0, 1])?;
    let curve = CurveParametrization::new(
        "s",
        Substitution::by_name(&chart, &cc, &[("X", s.clone()), ("Y", RF::zero(&cc))]),
    );
    push("line at infinity", &om_inf, Polynomial::named(&chart, "Y"), curve, quarter(l0.add(&l1)))?;
    Ok(out)
}

/// Eigenvalue magnitudes `√(-det)` of the residues at a rational point.
pub fn eigenvalue_magnitudes(table: &[ResidueEntry]) -> Option<Vec<cas_kernel::Rational>> {
    table
        .iter()
        .map(|e| e.det.as_constant().and_then(|d| crate::params::rational_sqrt(&-d)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use cas_kernel::ratio;

    #[test]
    fn zero_parameters_leave_a2() {
        let c = build_connection(&ParameterPoint::ints(0, 0));
        let ctx = plane_ctx();
        let k = rf(&ctx, &format!("-1/(2*({CONIC}))"));
        for comp in 0..2 {
            let a2 = c.a[2].component(comp);
            let om = c.omega.component(comp);
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(om.m[i][j], a2.m[i][j].mul(&k));
                }
            }
        }
    }

    #[test]
    fn a2_is_upper_triangular_and_trace_free() {
        for v in [Variant::Corrected, Variant::Printed] {
            let c = build_variant(&ParameterPoint::symbolic(), v);
            for k in 0..2 {
                let a2 = c.a[2].component(k);
                assert!(a2.m[1][0].is_zero());
                assert!(a2.trace().is_zero());
            }
            assert!(c.trace().is_zero());
        }
    }

    #[test]
    fn a1_lower_left_entry() {
        let ctx = plane_ctx();
        let printed = build_printed_connection(&ParameterPoint::symbolic());
        assert_eq!(printed.a[1].component(0).m[1][0], rf(&ctx, "-(x+y-1)*y^2/x"));
        // the flat family differs from the printed dx-part by the factor -y
        let c = build_connection(&ParameterPoint::symbolic());
        assert_eq!(c.a[1].component(0).m[1][0], rf(&ctx, "(x+y-1)*y/x"));
    }

    #[test]
    fn perturbation_breaks_flatness() {
        let c = build_connection(&ParameterPoint::ints(2, 3));
        assert!(verify_flatness(&c).is_zero());
        assert!(!verify_flatness(&c.perturbed()).is_zero());
    }

    #[test]
    fn printed_matrices_are_not_flat() {
        let c = build_printed_connection(&ParameterPoint::ints(2, 3));
        assert!(!verify_flatness(&c).is_zero());
        assert!(!flatness_residual_other_sign(&c).is_zero());
    }

    #[test]
    fn sign_conventions_differ() {
        // Θ = -Ω is flat for dΘ - Θ∧Θ
        let c = build_connection(&ParameterPoint::ints(1, 2));
        assert!(!flatness_residual_other_sign(&c).is_zero());
        let mut neg = c.clone();
        neg.omega = c.omega.map(|f| f.neg());
        assert!(flatness_residual_other_sign(&neg).is_zero());
    }

    #[test]
    fn riccati_form_matches_matrices() {
        let c = build_connection(&ParameterPoint::ints(2, 3));
        assert!(riccati_matches_matrix(&c, Variant::Corrected));
        assert!(!riccati_matches_matrix(&c, Variant::Printed));
    }

    #[test]
    fn integrability_of_riccati_forms() {
        let p = ParameterPoint::ints(2, 3);
        assert!(is_integrable(&riccati_nabla2(&down_ctx(), &p, Variant::Corrected)));
        assert!(!is_integrable(&riccati_nabla2(&down_ctx(), &p, Variant::Printed)));
        assert!(is_integrable(&riccati_nabla(&p, Variant::Corrected)));
        assert!(!is_integrable(&riccati_nabla(&p, Variant::Printed)));
    }

    #[test]
    fn g_symmetry_holds_only_for_printed_form() {
        let p = ParameterPoint::symbolic();
        assert!(verify_g_symmetry(&p, Variant::Printed));
        assert!(!verify_g_symmetry(&p, Variant::Corrected));
    }

    #[test]
    fn eta_invariance_special_and_control() {
        assert!(verify_eta_invariance(&UpstairsData::new(&ParameterPoint::ints(1, 0))));
        let sym = UpstairsData::build(&ParameterPoint::ints(1, 0), Omega0::Symmetric, Variant::Corrected, false);
        assert!(!verify_eta_invariance(&sym));
    }

    #[test]
    fn pullback_identity_variants() {
        let p = ParameterPoint::ints(1, 1);
        assert!(verify_pullback_identity(&UpstairsData::new(&p)).unwrap());
        let flipped = UpstairsData::build(&p, Omega0::Antisymmetric, Variant::Corrected, true);
        assert!(!verify_pullback_identity(&flipped).unwrap());
        let printed = UpstairsData::build(&p, Omega0::Antisymmetric, Variant::Printed, false);
        assert!(!verify_pullback_identity(&printed).unwrap());
    }

    #[test]
    fn phi_readings() {
        let p = ParameterPoint::ints(2, 3);
        assert!(verify_phi_conjugation(&p));
        for map in [FiberMap::PrintedInverse, FiberMap::Unshifted, FiberMap::MinusShift] {
            assert!(!phi_conjugation(&p, map, Variant::Corrected, Variant::Corrected), "{}", map.name());
        }
        for map in FiberMap::ALL {
            assert!(!phi_conjugation(&p, map, Variant::Printed, Variant::Printed));
        }
    }

    #[test]
    fn residues_at_two_three() {
        let c = build_connection(&ParameterPoint::ints(2, 3));
        let t = residue_table(&c).unwrap();
        assert!(t.iter().all(|e| e.matches()));
        assert_eq!(eigenvalue_magnitudes(&t).unwrap(), vec![ratio(1, 2), ratio(3, 2), ratio(1, 4), ratio(5, 2)]);
    }
}
