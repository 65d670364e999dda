//! Parameter points, variable contexts and formula helpers shared by the
//! other modules.

use cas_kernel::{parse_rf, rational_to_f64, render_rational, Context, Rational, Substitution, RF};
use std::fmt;

/// `(λ0, λ1)`, each either an exact rational or kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterPoint {
    pub l0: Option<Rational>,
    pub l1: Option<Rational>,
}

impl ParameterPoint {
    pub fn symbolic() -> Self {
        ParameterPoint { l0: None, l1: None }
    }

    pub fn rational(l0: Rational, l1: Rational) -> Self {
        ParameterPoint { l0: Some(l0), l1: Some(l1) }
    }

    pub fn ints(l0: i64, l1: i64) -> Self {
        Self::rational(cas_kernel::rat(l0), cas_kernel::rat(l1))
    }

    pub fn is_symbolic(&self) -> bool {
        self.l0.is_none() || self.l1.is_none()
    }

    /// `(λ0, λ1)` as elements of `ctx`, which must name `l0` and `l1` when
    /// they are symbolic.
    pub fn values(&self, ctx: &Context) -> (RF, RF) {
        let one = |v: &Option<Rational>, name: &str| match v {
            Some(r) => RF::constant(ctx, r.clone()),
            None => RF::named(ctx, name),
        };
        (one(&self.l0, "l0"), one(&self.l1, "l1"))
    }

    /// Numeric values, `None` if symbolic.
    pub fn as_f64(&self) -> Option<(f64, f64)> {
        Some((rational_to_f64(self.l0.as_ref()?), rational_to_f64(self.l1.as_ref()?)))
    }

    /// `[("l0", "p/q"), ("l1", "p/q")]`, with `sym` for symbolic entries.
    pub fn render(&self) -> Vec<(String, String)> {
        let r = |v: &Option<Rational>| v.as_ref().map(render_rational).unwrap_or_else(|| "sym".into());
        vec![("l0".into(), r(&self.l0)), ("l1".into(), r(&self.l1))]
    }

    /// Specializes an expression built with symbolic `l0`, `l1`.
    pub fn specialize(&self, f: &RF) -> RF {
        let ctx = f.ctx();
        let mut out = f.clone();
        for (name, v) in [("l0", &self.l0), ("l1", &self.l1)] {
            if let (Some(i), Some(v)) = (ctx.index(name), v) {
                out = out.eval_var(i, v).expect("specialization hits a pole");
            }
        }
        out
    }
}

impl fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.render();
        write!(f, "(λ0, λ1) = ({}, {})", p[0].1, p[1].1)
    }
}

/// Affine chart `t = 1` of the plane.
pub fn plane_ctx() -> Context {
    Context::new(&["x", "y", "l0", "l1"])
}

/// Plane coordinates plus the fiber coordinates `w` (of ∇2) and `W` (of ∇).
pub fn fiber_ctx() -> Context {
    Context::new(&["x", "y", "w", "W", "l0", "l1"])
}

/// The double cover `P1 × P1` with its fiber coordinate `z`.
pub fn upstairs_ctx() -> Context {
    Context::new(&["u0", "u1", "z", "l0", "l1"])
}

/// Evaluates `src`, written in the placeholder variables `names`, at the
/// given arguments (all over one context).
pub fn formula(src: &str, names: &[&str], args: &[RF]) -> RF {
    assert_eq!(names.len(), args.len());
    let local = Context::new(names);
    let f = parse_rf(&local, src).unwrap_or_else(|e| panic!("{e}"));
    let target = args[0].ctx().clone();
    Substitution::new(&local, &target, args.to_vec()).apply(&f).expect("formula argument hits a pole")
}

/// Exact square root of a non-negative rational perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    use num_traits::Signed;
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}
