//! Elements of the fraction field Q(x1, ..., xn).

use crate::coeff::Rational;
use crate::gcd::{gcd, to_primitive_int, int_to_rational};
use crate::poly::{Context, Polynomial};
use num_traits::{One, Zero};
use std::fmt;

/// A reduced fraction `num/den`.
///
/// Canonical form: `gcd(num, den) = 1` and `den` has integer coefficients,
/// content 1 and a positive leading coefficient (lex order of the context).
/// Any rational scalar lives in `num`, so equal functions are structurally
/// equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

pub type RF = RationalFunction;

impl RationalFunction {
    /// Builds and reduces `num/den`. Panics if `den` is zero.
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert!(num.ctx() == den.ctx(), "context mismatch");
        if num.is_zero() {
            return Self::zero(num.ctx());
        }
        if let Some(c) = den.as_constant() {
            let k = Rational::one() / c;
            return RationalFunction { den: Polynomial::one(num.ctx()), num: num.scale(&k) };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Self::from_coprime(num, den)
    }

    /// Normalizes a pair already known to be coprime.
    fn from_coprime(num: Polynomial, den: Polynomial) -> Self {
        let (k, d) = to_primitive_int(&den);
        let den = int_to_rational(&d);
        let num = num.scale(&(Rational::one() / k));
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let one = Polynomial::one(p.ctx());
        RationalFunction { num: p, den: one }
    }

    pub fn zero(ctx: &Context) -> Self {
        Self::from_poly(Polynomial::zero(ctx))
    }

    pub fn one(ctx: &Context) -> Self {
        Self::from_poly(Polynomial::one(ctx))
    }

    pub fn constant(ctx: &Context, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(ctx, c))
    }

    pub fn from_int(ctx: &Context, n: i64) -> Self {
        Self::constant(ctx, crate::coeff::rat(n))
    }

    pub fn var(ctx: &Context, i: usize) -> Self {
        Self::from_poly(Polynomial::var(ctx, i))
    }

    pub fn named(ctx: &Context, name: &str) -> Self {
        Self::from_poly(Polynomial::named(ctx, name))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn ctx(&self) -> &Context {
        self.num.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::new(num, self.den.clone());
        }
        if self.den.is_one() {
            let num = self.num.mul(&o.den).add(&o.num);
            return RationalFunction { num, den: o.den.clone() };
        }
        if o.den.is_one() {
            let num = o.num.mul(&self.den).add(&self.num);
            return RationalFunction { num, den: self.den.clone() };
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            let den = self.den.mul(&o.den);
            return Self::from_coprime_or_zero(num, den);
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&o.num.mul(&b1));
        if num.is_zero() {
            return Self::zero(self.ctx());
        }
        // gcd(num, b1*d1*g) = gcd(num, g) for reduced inputs
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).expect("gcd divides"), g.div_exact(&h).expect("gcd divides"))
        };
        let den = b1.mul(&d1).mul(&g);
        Self::from_coprime(num, den)
    }

    fn from_coprime_or_zero(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            Self::zero(num.ctx())
        } else {
            Self::from_coprime(num, den)
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ctx());
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        let (a, d) = cancel(&self.num, &o.den);
        let (c, b) = cancel(&o.num, &self.den);
        Self::from_coprime(a.mul(&c), b.mul(&d))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.ctx());
        }
        RationalFunction { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::from_coprime(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn pow(&self, n: i32) -> Self {
        if n < 0 {
            return self.inv().pow(-n);
        }
        let n = n as u32;
        RationalFunction { num: self.num.pow(n), den: self.den.pow(n) }
    }

    /// Quotient-rule partial derivative.
    pub fn derivative(&self, v: usize) -> Self {
        let dn = self.num.derivative(v);
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return Self::new(dn, self.den.clone());
        }
        // (n' d - n d') / d^2, with the common factor of d and d' split off
        let g = gcd(&self.den, &dd);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let dd1 = dd.div_exact(&g).expect("gcd divides");
        let num = dn.mul(&d1).sub(&self.num.mul(&dd1));
        Self::new(num, self.den.mul(&d1))
    }

    pub fn derivative_named(&self, name: &str) -> Self {
        self.derivative(self.ctx().var(name))
    }

    /// Value at a point, `None` if the denominator vanishes there.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    /// Substitutes a constant for one variable, `None` if the denominator
    /// vanishes identically.
    pub fn eval_var(&self, v: usize, val: &Rational) -> Option<Self> {
        let d = self.den.eval_var(v, val);
        if d.is_zero() {
            return None;
        }
        Some(Self::new(self.num.eval_var(v, val), d))
    }

    pub fn embed_by_name(&self, target: &Context) -> Self {
        if self.ctx() == target {
            return self.clone();
        }
        Self::new(self.num.embed_by_name(target), self.den.embed_by_name(target))
    }

    pub fn render(&self) -> String {
        if self.den.is_one() {
            return self.num.render();
        }
        format!("({})/({})", self.num.render(), self.den.render())
    }
}

/// Removes the common factor of `a` and `b`.
fn cancel(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial) {
    if b.is_one() || a.is_constant() {
        return (a.clone(), b.clone());
    }
    let g = gcd(a, b);
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (a.div_exact(&g).expect("gcd divides"), b.div_exact(&g).expect("gcd divides"))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RF({})", self.render())
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&RF> for &RF {
            type Output = RF;
            fn $m(self, o: &RF) -> RF {
                RF::$f(self, o)
            }
        }
        impl std::ops::$tr<RF> for RF {
            type Output = RF;
            fn $m(self, o: RF) -> RF {
                RF::$f(&self, &o)
            }
        }
        impl std::ops::$tr<&RF> for RF {
            type Output = RF;
            fn $m(self, o: &RF) -> RF {
                RF::$f(&self, o)
            }
        }
        impl std::ops::$tr<RF> for &RF {
            type Output = RF;
            fn $m(self, o: RF) -> RF {
                RF::$f(self, &o)
            }
        }
    };
}
binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl std::ops::Neg for &RF {
    type Output = RF;
    fn neg(self) -> RF {
        RF::neg(self)
    }
}

impl std::ops::Neg for RF {
    type Output = RF;
    fn neg(self) -> RF {
        RF::neg(&self)
    }
}
