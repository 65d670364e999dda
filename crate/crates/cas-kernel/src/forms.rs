//! Differential forms with rational function coefficients, and 2x2 matrices
//! of them.
//!
//! A form lives over a *base*: an ordered list of context variables that act
//! as coordinates. Every other context variable is a constant (a parameter).

use crate::error::CasError;
use crate::poly::Context;
use crate::ratfunc::RF;
use crate::subst::Substitution;

/// Index of `dx_i ∧ dx_j` (with `i < j`) among the `n(n-1)/2` basis 2-forms.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneForm {
    base: Vec<usize>,
    comps: Vec<RF>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoForm {
    base: Vec<usize>,
    comps: Vec<RF>,
}

impl OneForm {
    pub fn new(base: &[usize], comps: Vec<RF>) -> Self {
        assert_eq!(base.len(), comps.len());
        assert!(!comps.is_empty(), "a form needs at least one coordinate");
        OneForm { base: base.to_vec(), comps }
    }

    pub fn zero(ctx: &Context, base: &[usize]) -> Self {
        OneForm { base: base.to_vec(), comps: vec![RF::zero(ctx); base.len()] }
    }

    /// `df`.
    pub fn exact(f: &RF, base: &[usize]) -> Self {
        OneForm { base: base.to_vec(), comps: base.iter().map(|&v| f.derivative(v)).collect() }
    }

    /// `dx_k` for the `k`-th base coordinate.
    pub fn coordinate(ctx: &Context, base: &[usize], k: usize) -> Self {
        let mut f = Self::zero(ctx, base);
        f.comps[k] = RF::one(ctx);
        f
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn ctx(&self) -> &Context {
        self.comps[0].ctx()
    }

    pub fn comps(&self) -> &[RF] {
        &self.comps
    }

    pub fn comp(&self, k: usize) -> &RF {
        &self.comps[k]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RF::is_zero)
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.base, o.base, "forms over different bases");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect();
        OneForm { base: self.base.clone(), comps }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.sub(b)).collect();
        OneForm { base: self.base.clone(), comps }
    }

    pub fn neg(&self) -> Self {
        self.map(RF::neg)
    }

    pub fn scale(&self, f: &RF) -> Self {
        self.map(|c| c.mul(f))
    }

    pub fn map(&self, f: impl Fn(&RF) -> RF) -> Self {
        OneForm { base: self.base.clone(), comps: self.comps.iter().map(f).collect() }
    }

    pub fn d(&self) -> TwoForm {
        let n = self.base.len();
        let comps = pairs(n)
            .map(|(i, j)| self.comps[j].derivative(self.base[i]).sub(&self.comps[i].derivative(self.base[j])))
            .collect();
        TwoForm { base: self.base.clone(), comps }
    }

    pub fn wedge(&self, o: &Self) -> TwoForm {
        self.check(o);
        let n = self.base.len();
        let comps = pairs(n)
            .map(|(i, j)| self.comps[i].mul(&o.comps[j]).sub(&self.comps[j].mul(&o.comps[i])))
            .collect();
        TwoForm { base: self.base.clone(), comps }
    }

    /// Pullback along `sub`, whose target has coordinates `target_base`.
    pub fn pullback(&self, sub: &Substitution, target_base: &[usize]) -> Result<Self, CasError> {
        let jac = jacobian(sub, &self.base, target_base)?;
        let mut comps = vec![RF::zero(sub.target()); target_base.len()];
        for (i, a) in self.comps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = sub.apply(a)?;
            for (k, c) in comps.iter_mut().enumerate() {
                if !jac[i][k].is_zero() {
                    *c = c.add(&a.mul(&jac[i][k]));
                }
            }
        }
        Ok(OneForm { base: target_base.to_vec(), comps })
    }

    pub fn render(&self) -> String {
        let ctx = self.ctx();
        let parts: Vec<String> = self
            .comps
            .iter()
            .zip(&self.base)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, &v)| format!("({c})*d{}", ctx.name(v)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `jac[i][k] = ∂ image(source_base[i]) / ∂ target_base[k]`.
fn jacobian(sub: &Substitution, source_base: &[usize], target_base: &[usize]) -> Result<Vec<Vec<RF>>, CasError> {
    source_base
        .iter()
        .map(|&v| {
            let im = sub.image(v)?;
            Ok(target_base.iter().map(|&t| im.derivative(t)).collect())
        })
        .collect()
}

impl TwoForm {
    pub fn zero(ctx: &Context, base: &[usize]) -> Self {
        let n = base.len();
        TwoForm { base: base.to_vec(), comps: vec![RF::zero(ctx); n * (n.saturating_sub(1)) / 2] }
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn comps(&self) -> &[RF] {
        &self.comps
    }

    /// Coefficient of `dx_i ∧ dx_j` (antisymmetric in `i, j`).
    pub fn comp(&self, i: usize, j: usize) -> RF {
        use std::cmp::Ordering::*;
        let n = self.base.len();
        match i.cmp(&j) {
            Less => self.comps[pair_index(n, i, j)].clone(),
            Greater => self.comps[pair_index(n, j, i)].neg(),
            Equal => RF::zero(self.comps[0].ctx()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RF::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.base, o.base, "forms over different bases");
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect();
        TwoForm { base: self.base.clone(), comps }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        TwoForm { base: self.base.clone(), comps: self.comps.iter().map(RF::neg).collect() }
    }

    pub fn scale(&self, f: &RF) -> Self {
        TwoForm { base: self.base.clone(), comps: self.comps.iter().map(|c| c.mul(f)).collect() }
    }

    pub fn pullback(&self, sub: &Substitution, target_base: &[usize]) -> Result<Self, CasError> {
        let jac = jacobian(sub, &self.base, target_base)?;
        let n = self.base.len();
        let m = target_base.len();
        let mut out = TwoForm::zero(sub.target(), target_base);
        for (i, j) in pairs(n) {
            let a = &self.comps[pair_index(n, i, j)];
            if a.is_zero() {
                continue;
            }
            let a = sub.apply(a)?;
            for (k, l) in pairs(m) {
                let minor = jac[i][k].mul(&jac[j][l]).sub(&jac[i][l].mul(&jac[j][k]));
                if !minor.is_zero() {
                    let idx = pair_index(m, k, l);
                    out.comps[idx] = out.comps[idx].add(&a.mul(&minor));
                }
            }
        }
        Ok(out)
    }
}

/// A 2x2 matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2<T> {
    pub m: [[T; 2]; 2],
}

impl<T> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat2<U> {
        Mat2::new(f(&self.m[0][0]), f(&self.m[0][1]), f(&self.m[1][0]), f(&self.m[1][1]))
    }

    pub fn try_map<U, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Mat2<U>, E> {
        Ok(Mat2::new(f(&self.m[0][0])?, f(&self.m[0][1])?, f(&self.m[1][0])?, f(&self.m[1][1])?))
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.m[0][0], &self.m[0][1], &self.m[1][0], &self.m[1][1]]
    }
}

impl Mat2<RF> {
    pub fn identity(ctx: &Context) -> Self {
        Mat2::new(RF::one(ctx), RF::zero(ctx), RF::zero(ctx), RF::one(ctx))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = |i: usize, k: usize| self.m[i][0].mul(&o.m[0][k]).add(&self.m[i][1].mul(&o.m[1][k]));
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat2::new(
            self.m[0][0].add(&o.m[0][0]),
            self.m[0][1].add(&o.m[0][1]),
            self.m[1][0].add(&o.m[1][0]),
            self.m[1][1].add(&o.m[1][1]),
        )
    }

    pub fn det(&self) -> RF {
        self.m[0][0].mul(&self.m[1][1]).sub(&self.m[0][1].mul(&self.m[1][0]))
    }

    pub fn trace(&self) -> RF {
        self.m[0][0].add(&self.m[1][1])
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let di = d.inv();
        Some(Mat2::new(
            self.m[1][1].mul(&di),
            self.m[0][1].neg().mul(&di),
            self.m[1][0].neg().mul(&di),
            self.m[0][0].mul(&di),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|e| e.is_zero())
    }
}

/// 2x2 matrix of 1-forms, e.g. a connection matrix.
pub type MatrixOneForm = Mat2<OneForm>;
/// 2x2 matrix of 2-forms, e.g. a curvature.
pub type MatrixTwoForm = Mat2<TwoForm>;

impl MatrixOneForm {
    /// Builds `Σ_k M_k dx_k` from one matrix per base coordinate.
    pub fn from_components(base: &[usize], mats: &[Mat2<RF>]) -> Self {
        assert_eq!(base.len(), mats.len());
        let entry = |i: usize, j: usize| OneForm::new(base, mats.iter().map(|m| m.m[i][j].clone()).collect());
        Mat2::new(entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1))
    }

    /// Matrix coefficient of `dx_k`.
    pub fn component(&self, k: usize) -> Mat2<RF> {
        self.map(|f| f.comp(k).clone())
    }

    pub fn trace_form(&self) -> OneForm {
        self.m[0][0].add(&self.m[1][1])
    }

    pub fn d(&self) -> MatrixTwoForm {
        self.map(OneForm::d)
    }

    /// Matrix wedge product `(A ∧ B)_{ik} = Σ_j A_ij ∧ B_jk`.
    pub fn wedge(&self, o: &Self) -> MatrixTwoForm {
        let e = |i: usize, k: usize| self.m[i][0].wedge(&o.m[0][k]).add(&self.m[i][1].wedge(&o.m[1][k]));
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    /// `dΩ + Ω ∧ Ω`, the curvature of `d + Ω`.
    pub fn curvature(&self) -> MatrixTwoForm {
        let d = self.d();
        let w = self.wedge(self);
        Mat2::new(
            d.m[0][0].add(&w.m[0][0]),
            d.m[0][1].add(&w.m[0][1]),
            d.m[1][0].add(&w.m[1][0]),
            d.m[1][1].add(&w.m[1][1]),
        )
    }

    pub fn pullback(&self, sub: &Substitution, target_base: &[usize]) -> Result<Self, CasError> {
        self.try_map(|f| f.pullback(sub, target_base))
    }

    /// Gauge transform `G^{-1} Ω G + G^{-1} dG`, which is the connection
    /// matrix in the frame `Z = G Z'`.
    pub fn gauge(&self, g: &Mat2<RF>) -> Result<Self, CasError> {
        let gi = g.inverse().ok_or_else(|| CasError::Degenerate("singular gauge matrix".into()))?;
        let base = self.m[0][0].base().to_vec();
        let n = base.len();
        let mats: Vec<Mat2<RF>> = (0..n)
            .map(|k| {
                let dg = g.map(|e| e.derivative(base[k]));
                gi.mul(&self.component(k)).mul(g).add(&gi.mul(&dg))
            })
            .collect();
        Ok(Self::from_components(&base, &mats))
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|f| f.is_zero())
    }
}

impl MatrixTwoForm {
    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|f| f.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn ctx() -> Context {
        Context::new(&["x", "y", "z"])
    }

    #[test]
    fn pair_indices_are_dense() {
        let n = 4;
        let idx: Vec<usize> = pairs(n).map(|(i, j)| pair_index(n, i, j)).collect();
        assert_eq!(idx, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn d_of_exact_is_zero() {
        let c = ctx();
        let x = RF::var(&c, 0);
        let y = RF::var(&c, 1);
        let f = x.mul(&y).div(&(x.add(&RF::one(&c))));
        let base = [0, 1, 2];
        assert!(OneForm::exact(&f, &base).d().is_zero());
    }

    #[test]
    fn wedge_antisymmetric() {
        let c = ctx();
        let base = [0, 1];
        let a = OneForm::new(&base, vec![RF::var(&c, 1), RF::var(&c, 0)]);
        let b = OneForm::new(&base, vec![RF::var(&c, 2), RF::one(&c)]);
        assert_eq!(a.wedge(&b), b.wedge(&a).neg());
        assert!(a.wedge(&a).is_zero());
        // y dx + x dy = d(xy)
        assert!(a.d().is_zero());
        assert_eq!(b.d().comp(0, 1), RF::zero(&c));
    }

    #[test]
    fn polar_pullback() {
        let xy = Context::new(&["x", "y"]);
        let rt = Context::new(&["r", "t"]);
        // the parabola map (r, t) -> (r t, t^2)
        let r = RF::var(&rt, 0);
        let t = RF::var(&rt, 1);
        let sub = Substitution::new(&xy, &rt, vec![r.mul(&t), t.mul(&t)]);
        let dxdy = TwoForm { base: vec![0, 1], comps: vec![RF::one(&xy)] };
        let pb = dxdy.pullback(&sub, &[0, 1]).unwrap();
        // det [[t, r], [0, 2t]] = 2 t^2
        assert_eq!(pb.comp(0, 1), t.mul(&t).scale(&rat(2)));
        // pullback commutes with d
        let w = OneForm::new(&[0, 1], vec![RF::var(&xy, 1).mul(&RF::var(&xy, 1)), RF::var(&xy, 0)]);
        assert_eq!(w.d().pullback(&sub, &[0, 1]).unwrap(), w.pullback(&sub, &[0, 1]).unwrap().d());
    }

    #[test]
    fn gauge_of_flat_is_flat() {
        let c = Context::new(&["x", "y"]);
        let base = [0, 1];
        let x = RF::var(&c, 0);
        let y = RF::var(&c, 1);
        let z = RF::zero(&c);
        // abelian, hence flat: diag(dx/x, dy/y)
        let om = MatrixOneForm::from_components(
            &base,
            &[Mat2::new(x.inv(), z.clone(), z.clone(), z.clone()), Mat2::new(z.clone(), z.clone(), z.clone(), y.inv())],
        );
        assert!(om.curvature().is_zero());
        let g = Mat2::new(RF::one(&c), x.clone(), y.clone(), RF::from_int(&c, 2));
        assert!(om.gauge(&g).unwrap().curvature().is_zero());
        // a non-flat one
        let bad = MatrixOneForm::from_components(
            &base,
            &[Mat2::new(z.clone(), RF::one(&c), z.clone(), z.clone()), Mat2::new(z.clone(), z.clone(), RF::one(&c), z.clone())],
        );
        assert!(!bad.curvature().is_zero());
    }
}
