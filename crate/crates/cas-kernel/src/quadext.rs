//! Quadratic extensions `K(δ)` with `δ² = D` for `D` in `K = Q(vars)`.

use crate::error::CasError;
use crate::poly::{Context, Polynomial};
use crate::ratfunc::RF;
use std::sync::Arc;

/// `base + rad·δ`, where `δ² = disc`.
#[derive(Clone, Debug)]
pub struct QuadExt {
    pub base: RF,
    pub rad: RF,
    disc: Arc<RF>,
}

impl PartialEq for QuadExt {
    fn eq(&self, o: &Self) -> bool {
        self.same_field(o) && self.base == o.base && self.rad == o.rad
    }
}

impl QuadExt {
    pub fn new(base: RF, rad: RF, disc: &Arc<RF>) -> Self {
        QuadExt { base, rad, disc: disc.clone() }
    }

    /// Wraps a discriminant for sharing between elements.
    pub fn field(disc: RF) -> Arc<RF> {
        Arc::new(disc)
    }

    pub fn from_base(base: RF, disc: &Arc<RF>) -> Self {
        let z = RF::zero(base.ctx());
        QuadExt { base, rad: z, disc: disc.clone() }
    }

    /// The generator `δ`.
    pub fn delta(disc: &Arc<RF>) -> Self {
        let c = disc.ctx();
        QuadExt { base: RF::zero(c), rad: RF::one(c), disc: disc.clone() }
    }

    pub fn disc(&self) -> &Arc<RF> {
        &self.disc
    }

    pub fn ctx(&self) -> &Context {
        self.base.ctx()
    }

    fn same_field(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.disc, &o.disc) || *self.disc == *o.disc
    }

    fn check(&self, o: &Self) {
        assert!(self.same_field(o), "elements of different quadratic extensions");
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.rad.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        QuadExt { base: self.base.add(&o.base), rad: self.rad.add(&o.rad), disc: self.disc.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        QuadExt { base: self.base.sub(&o.base), rad: self.rad.sub(&o.rad), disc: self.disc.clone() }
    }

    pub fn neg(&self) -> Self {
        QuadExt { base: self.base.neg(), rad: self.rad.neg(), disc: self.disc.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let base = self.base.mul(&o.base).add(&self.rad.mul(&o.rad).mul(&self.disc));
        let rad = self.base.mul(&o.rad).add(&self.rad.mul(&o.base));
        QuadExt { base, rad, disc: self.disc.clone() }
    }

    pub fn scale(&self, k: &RF) -> Self {
        QuadExt { base: self.base.mul(k), rad: self.rad.mul(k), disc: self.disc.clone() }
    }

    pub fn conj(&self) -> Self {
        QuadExt { base: self.base.clone(), rad: self.rad.neg(), disc: self.disc.clone() }
    }

    /// `x · conj(x) = base² − rad²·D`.
    pub fn norm(&self) -> RF {
        self.base.mul(&self.base).sub(&self.rad.mul(&self.rad).mul(&self.disc))
    }

    pub fn inv(&self) -> Result<Self, CasError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(CasError::Degenerate("inverse of an element of norm zero".into()));
        }
        Ok(self.conj().scale(&n.inv()))
    }

    pub fn div(&self, o: &Self) -> Result<Self, CasError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QuadExt::from_base(RF::one(self.ctx()), &self.disc);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂_v(a + bδ) = ∂a + (∂b + b·∂D/(2D))δ`.
    pub fn derivative(&self, v: usize) -> Self {
        let dd = self.disc.derivative(v);
        let mut rad = self.rad.derivative(v);
        if !dd.is_zero() && !self.rad.is_zero() {
            rad = rad.add(&self.rad.mul(&dd).div(&self.disc.scale(&crate::coeff::rat(2))));
        }
        QuadExt { base: self.base.derivative(v), rad, disc: self.disc.clone() }
    }

    /// Image of `p` (over some source context) when its variables take the
    /// values `images`. Works with a polynomial generator `ε = δ·Dd`, where
    /// `D = Dn/Dd`, so that all intermediate arithmetic stays polynomial.
    pub fn eval_poly(p: &Polynomial, images: &[QuadExt]) -> Result<Self, CasError> {
        assert_eq!(images.len(), p.ctx().len());
        let disc = images.first().map(|i| i.disc.clone()).expect("at least one image");
        let tctx = disc.ctx().clone();
        // ε² = Dn·Dd
        let eps2 = disc.num().mul(disc.den());
        // image i = (A_i + B_i ε)/E_i
        struct Lifted {
            a: Polynomial,
            b: Polynomial,
            e: Polynomial,
        }
        let n = p.ctx().len();
        let mut lifted = Vec::with_capacity(n);
        for im in images {
            im.check(&QuadExt { base: RF::zero(&tctx), rad: RF::zero(&tctx), disc: disc.clone() });
            // rad·δ = (rad/Dd)·ε
            let r = RF::new(im.rad.num().clone(), im.rad.den().mul(disc.den()));
            let e = lcm(im.base.den(), r.den());
            let a = im.base.num().mul(&e.div_exact(im.base.den()).expect("lcm"));
            let b = r.num().mul(&e.div_exact(r.den()).expect("lcm"));
            lifted.push(Lifted { a, b, e });
        }
        let maxdeg: Vec<usize> = (0..n).map(|v| p.degree_in(v) as usize).collect();
        // powers of (A + Bε) and of E
        let mut pows: Vec<Vec<(Polynomial, Polynomial)>> = Vec::with_capacity(n);
        let mut epows: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
        let mut den = Polynomial::one(&tctx);
        for v in 0..n {
            let l = &lifted[v];
            let mut pw = vec![(Polynomial::one(&tctx), Polynomial::zero(&tctx))];
            let mut ep = vec![Polynomial::one(&tctx)];
            for k in 1..=maxdeg[v] {
                let (pa, pb) = &pw[k - 1];
                let na = pa.mul(&l.a).add(&pb.mul(&l.b).mul(&eps2));
                let nb = pa.mul(&l.b).add(&pb.mul(&l.a));
                pw.push((na, nb));
                ep.push(ep[k - 1].mul(&l.e));
            }
            den = den.mul(&ep[maxdeg[v]]);
            pows.push(pw);
            epows.push(ep);
        }
        let mut acc_a = Polynomial::zero(&tctx);
        let mut acc_b = Polynomial::zero(&tctx);
        for (m, c) in p.terms() {
            let mut ta = Polynomial::constant(&tctx, c.clone());
            let mut tb = Polynomial::zero(&tctx);
            for v in 0..n {
                let e = m[v] as usize;
                if e > 0 {
                    let (pa, pb) = &pows[v][e];
                    let na = ta.mul(pa).add(&tb.mul(pb).mul(&eps2));
                    let nb = ta.mul(pb).add(&tb.mul(pa));
                    ta = na;
                    tb = nb;
                }
                let rest = maxdeg[v] - e;
                if rest > 0 && !epows[v][rest].is_one() {
                    ta = ta.mul(&epows[v][rest]);
                    tb = tb.mul(&epows[v][rest]);
                }
            }
            acc_a = acc_a.add(&ta);
            acc_b = acc_b.add(&tb);
        }
        let base = RF::new(acc_a, den.clone());
        let rad = RF::new(acc_b.mul(disc.den()), den);
        Ok(QuadExt { base, rad, disc })
    }

    pub fn render(&self) -> String {
        format!("({}) + ({})*sqrt({})", self.base, self.rad, self.disc)
    }
}

fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() || a == b {
        return a.clone();
    }
    let g = crate::gcd::gcd(a, b);
    a.mul(&b.div_exact(&g).expect("gcd divides"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn delta_squares_to_disc() {
        let c = Context::new(&["x"]);
        let x = RF::var(&c, 0);
        let d = QuadExt::field(x.mul(&x).add(&RF::one(&c)).div(&x));
        let del = QuadExt::delta(&d);
        let sq = del.mul(&del);
        assert_eq!(sq.base, *d);
        assert!(sq.rad.is_zero());
        // derivative of δ is D'/(2δ) = D'δ/(2D)
        let dd = del.derivative(0);
        assert!(dd.base.is_zero());
        assert_eq!(dd.rad, d.derivative(0).div(&d.scale(&rat(2))));
        // (δ²)' = 2 δ δ'
        assert_eq!(sq.derivative(0), del.mul(&dd).scale(&RF::from_int(&c, 2)));
    }

    #[test]
    fn eval_poly_matches_naive() {
        let c = Context::new(&["x", "y"]);
        let x = RF::var(&c, 0);
        let y = RF::var(&c, 1);
        let d = QuadExt::field(x.add(&y).div(&y.add(&RF::from_int(&c, 3))));
        let a = QuadExt::new(x.inv(), y.clone(), &d);
        let b = QuadExt::new(RF::from_int(&c, 2), x.div(&y.add(&RF::one(&c))), &d);
        let src = Context::new(&["p", "q"]);
        let p = Polynomial::var(&src, 0);
        let q = Polynomial::var(&src, 1);
        let poly = p.pow(3).mul(&q).sub(&q.pow(2).scale(&rat(5))).add(&Polynomial::from_int(&src, 7));
        let fast = QuadExt::eval_poly(&poly, &[a.clone(), b.clone()]).unwrap();
        let slow = a
            .pow(3)
            .mul(&b)
            .sub(&b.pow(2).scale(&RF::from_int(&c, 5)))
            .add(&QuadExt::from_base(RF::from_int(&c, 7), &d));
        assert_eq!(fast, slow);
    }
}
