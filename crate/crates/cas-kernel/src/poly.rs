//! Sparse multivariate polynomials.
//!
//! Terms are kept in a vector sorted by descending lexicographic order of the
//! exponent vectors (variable 0 is the most significant). Zero coefficients are
//! never stored, so structural equality is mathematical equality.

use crate::coeff::{Coeff, Rational};
use num_bigint::BigInt;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

/// Ordered list of variable names shared by all polynomials that may be mixed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Context(Arc<[String]>);

impl Context {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in v.iter().enumerate() {
            assert!(!v[..i].contains(a), "duplicate variable `{a}` in context");
        }
        Context(v.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// Index of `name`, panicking with a readable message when absent.
    pub fn var(&self, name: &str) -> usize {
        self.index(name)
            .unwrap_or_else(|| panic!("variable `{name}` not in context {:?}", self.names()))
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Context{:?}", &*self.0)
    }
}

pub type Mono = Box<[u16]>;

fn mono_mul(a: &[u16], b: &[u16]) -> Mono {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).expect("exponent overflow"))
        .collect()
}

fn mono_div(a: &[u16], b: &[u16]) -> Option<Mono> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C: Coeff> {
    ctx: Context,
    terms: Vec<(Mono, C)>,
}

/// Polynomial with exact rational coefficients.
pub type Polynomial = Poly<Rational>;
/// Polynomial with integer coefficients (used internally by the gcd code).
pub type IntPoly = Poly<BigInt>;

impl<C: Coeff> Poly<C> {
    pub fn zero(ctx: &Context) -> Self {
        Poly { ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn constant(ctx: &Context, c: C) -> Self {
        if c.is_zero() {
            return Self::zero(ctx);
        }
        Poly { ctx: ctx.clone(), terms: vec![(vec![0; ctx.len()].into(), c)] }
    }

    pub fn one(ctx: &Context) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn var(ctx: &Context, i: usize) -> Self {
        Self::monomial(ctx, C::one(), &unit(ctx.len(), i, 1))
    }

    /// Variable looked up by name.
    pub fn named(ctx: &Context, name: &str) -> Self {
        Self::var(ctx, ctx.var(name))
    }

    pub fn monomial(ctx: &Context, c: C, exps: &[u16]) -> Self {
        assert_eq!(exps.len(), ctx.len());
        if c.is_zero() {
            return Self::zero(ctx);
        }
        Poly { ctx: ctx.clone(), terms: vec![(exps.into(), c)] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ctx: &Context, terms: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut map: BTreeMap<Mono, C> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), ctx.len(), "exponent vector length mismatch");
            match map.get_mut(&m) {
                Some(e) => e.add_assign(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Poly { ctx: ctx.clone(), terms }
    }

    /// Trusts the caller: terms sorted descending, distinct, nonzero.
    fn from_sorted(ctx: &Context, terms: Vec<(Mono, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { ctx: ctx.clone(), terms }
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].1.is_one()
    }

    /// Constant term value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<C> {
        if self.is_zero() {
            Some(C::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Leading term in lex order.
    pub fn lead(&self) -> Option<(&[u16], &C)> {
        self.terms.first().map(|(m, c)| (&m[..], c))
    }

    pub fn lc(&self) -> C {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(C::zero)
    }

    fn check_ctx(&self, o: &Self) {
        assert!(self.ctx == o.ctx, "context mismatch: {:?} vs {:?}", self.ctx, o.ctx);
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_ctx(o);
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (a, b) = (&self.terms[i], &o.terms[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a.1.add(&b.1);
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        Self::from_sorted(&self.ctx, out)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        Self::from_sorted(&self.ctx, terms)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.mul(k))).collect();
        Self::from_sorted(&self.ctx, terms)
    }

    /// Multiplies by a monomial `c * x^e`.
    pub fn mul_term(&self, e: &[u16], c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(m, k)| (mono_mul(m, e), k.mul(c))).collect();
        Self::from_sorted(&self.ctx, terms)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_ctx(o);
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.ctx);
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, c);
        }
        let mut acc: HashMap<Mono, C> = HashMap::with_capacity(self.len() * o.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = mono_mul(ma, mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(e) => e.add_assign(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Self::from_sorted(&self.ctx, terms)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.iter().map(|&e| e as u32).sum()).max().unwrap_or(0)
    }

    /// Which variables actually occur.
    pub fn vars_used(&self) -> Vec<bool> {
        let mut used = vec![false; self.ctx.len()];
        for (m, _) in &self.terms {
            for (u, &e) in used.iter_mut().zip(m.iter()) {
                *u |= e > 0;
            }
        }
        used
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m[v] > 0)
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    pub fn min_exponents(&self) -> Vec<u16> {
        let mut mins: Vec<u16> = match self.terms.first() {
            Some((m, _)) => m.to_vec(),
            None => return vec![0; self.ctx.len()],
        };
        for (m, _) in &self.terms[1..] {
            for (a, &b) in mins.iter_mut().zip(m.iter()) {
                *a = (*a).min(b);
            }
        }
        mins
    }

    /// Divides every term by `x^e`; the caller guarantees divisibility.
    pub fn div_monomial(&self, e: &[u16]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (mono_div(m, e).expect("monomial does not divide"), c.clone()))
            .collect();
        Self::from_sorted(&self.ctx, terms)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let d = f(c);
                (!d.is_zero()).then(|| (m.clone(), d))
            })
            .collect();
        Poly { ctx: self.ctx.clone(), terms }
    }

    /// Formal partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[v] > 0)
            .map(|(m, c)| {
                let mut e = m.to_vec();
                e[v] -= 1;
                (e.into_boxed_slice(), c.mul(&C::from_i64(m[v] as i64)))
            })
            .collect::<Vec<_>>();
        // lowering one exponent preserves relative lex order of the survivors
        Self::from_sorted(&self.ctx, terms)
    }

    /// View as a univariate polynomial in `v`: entry `k` is the coefficient of
    /// `v^k` (with `v` removed from its monomials).
    pub fn coefficients_in(&self, v: usize) -> Vec<Self> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Mono, C)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let k = m[v] as usize;
            let mut e = m.to_vec();
            e[v] = 0;
            buckets[k].push((e.into_boxed_slice(), c.clone()));
        }
        buckets.into_iter().map(|t| Self::from_sorted_or_sort(&self.ctx, t)).collect()
    }

    fn from_sorted_or_sort(ctx: &Context, mut t: Vec<(Mono, C)>) -> Self {
        if !t.windows(2).all(|w| w[0].0 > w[1].0) {
            t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        }
        Self::from_sorted(ctx, t)
    }

    /// Inverse of [`Poly::coefficients_in`].
    pub fn from_coefficients_in(ctx: &Context, v: usize, coeffs: &[Self]) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut e = m.to_vec();
                e[v] += k as u16;
                terms.push((e.into_boxed_slice(), a.clone()));
            }
        }
        Self::from_terms(ctx, terms)
    }

    /// Leading coefficient with respect to `v` (a polynomial free of `v`).
    pub fn lc_in(&self, v: usize) -> Self {
        let d = self.degree_in(v);
        let terms: Vec<(Mono, C)> = self
            .terms
            .iter()
            .filter(|(m, _)| m[v] == d)
            .map(|(m, c)| {
                let mut e = m.to_vec();
                e[v] = 0;
                (e.into_boxed_slice(), c.clone())
            })
            .collect();
        Self::from_sorted_or_sort(&self.ctx, terms)
    }

    /// Substitutes the constant `val` for variable `v`.
    pub fn eval_var(&self, v: usize, val: &C) -> Self {
        let d = self.degree_in(v) as usize;
        let mut powers = vec![C::one()];
        for k in 1..=d {
            let p = powers[k - 1].mul(val);
            powers.push(p);
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.to_vec();
            let k = e[v] as usize;
            e[v] = 0;
            (e.into_boxed_slice(), c.mul(&powers[k]))
        });
        Self::from_terms(&self.ctx, terms)
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.ctx.len());
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.iter()) {
                for _ in 0..e {
                    t = t.mul(x);
                }
            }
            acc.add_assign(&t);
        }
        acc
    }

    /// Replaces variable `v` by the polynomial `p` (same context).
    pub fn compose_var(&self, v: usize, p: &Self) -> Self {
        let coeffs = self.coefficients_in(v);
        let mut acc = Self::zero(&self.ctx);
        for c in coeffs.iter().rev() {
            acc = acc.mul(p).add(c);
        }
        acc
    }

    /// Exact division: `Some(q)` iff `self = q * d`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.check_ctx(d);
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(&self.ctx));
        }
        let (dm, dc) = {
            let (m, c) = d.lead().unwrap();
            (m.to_vec(), c.clone())
        };
        if d.len() == 1 {
            let mut out = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                out.push((mono_div(m, &dm)?, c.exact_div(&dc)?));
            }
            return Some(Self::from_sorted(&self.ctx, out));
        }
        for v in 0..self.ctx.len() {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let mut rem: BTreeMap<Mono, C> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Mono, C)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = mono_div(&m, &dm)?;
            let qc = c.exact_div(&dc)?;
            for (tm, tc) in &d.terms[1..] {
                let key = mono_mul(&qm, tm);
                let delta = qc.mul(tc);
                match rem.get_mut(&key) {
                    Some(e) => {
                        *e = e.sub(&delta);
                        if e.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, delta.neg());
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Self::from_sorted(&self.ctx, quot))
    }

    /// Re-expresses the polynomial in a larger (or permuted) context. `map[i]`
    /// is the index in `target` of this context's variable `i`.
    pub fn embed(&self, target: &Context, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.ctx.len());
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u16; target.len()];
            for (i, &k) in m.iter().enumerate() {
                e[map[i]] += k;
            }
            (e.into_boxed_slice(), c.clone())
        });
        Self::from_terms(target, terms)
    }

    /// Embeds by matching variable names; every variable used must exist in
    /// `target`.
    pub fn embed_by_name(&self, target: &Context) -> Self {
        if &self.ctx == target {
            return self.clone();
        }
        let used = self.vars_used();
        let map: Vec<usize> = (0..self.ctx.len())
            .map(|i| match target.index(self.ctx.name(i)) {
                Some(k) => k,
                None if !used[i] => 0,
                None => panic!("variable `{}` missing from target context", self.ctx.name(i)),
            })
            .collect();
        self.embed(target, &map)
    }

    /// Debug rendering: terms in descending lex order, `*` between factors
    /// and `^` for exponents, e.g. `2*x^2*y - 3/4*x + 1`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = m.iter().all(|&e| e == 0);
            if !a.is_one() || is_const {
                factors.push(a.render());
            }
            for (v, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ctx.name(v).to_string()),
                    _ => factors.push(format!("{}^{}", self.ctx.name(v), e)),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

fn unit(n: usize, i: usize, e: u16) -> Vec<u16> {
    let mut v = vec![0; n];
    v[i] = e;
    v
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<C: Coeff> std::ops::$tr<&Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $m(self, o: &Poly<C>) -> Poly<C> {
                Poly::$f(self, o)
            }
        }
        impl<C: Coeff> std::ops::$tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, o: Poly<C>) -> Poly<C> {
                Poly::$f(&self, &o)
            }
        }
        impl<C: Coeff> std::ops::$tr<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, o: &Poly<C>) -> Poly<C> {
                Poly::$f(&self, o)
            }
        }
        impl<C: Coeff> std::ops::$tr<Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $m(self, o: Poly<C>) -> Poly<C> {
                Poly::$f(self, &o)
            }
        }
    };
}
binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl<C: Coeff> std::ops::Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::neg(self)
    }
}

impl<C: Coeff> std::ops::Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::neg(&self)
    }
}

impl Polynomial {
    /// Rational constant.
    pub fn from_rational(ctx: &Context, r: Rational) -> Self {
        Self::constant(ctx, r)
    }

    pub fn from_int(ctx: &Context, n: i64) -> Self {
        Self::constant(ctx, Rational::from_i64(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, ratio};

    fn ctx() -> Context {
        Context::new(&["x", "y"])
    }

    #[test]
    fn arithmetic_and_render() {
        let c = ctx();
        let x = Polynomial::var(&c, 0);
        let y = Polynomial::var(&c, 1);
        let p = &(&x * &x) * &y - x.scale(&ratio(3, 4)) + Polynomial::from_int(&c, 1);
        assert_eq!(p.render(), "x^2*y - 3/4*x + 1");
        assert_eq!((&p - &p).render(), "0");
        assert_eq!(p.derivative(0).render(), "2*x*y - 3/4");
        assert_eq!(Polynomial::from_int(&c, -2).render(), "-2");
    }

    #[test]
    fn exact_division() {
        let c = ctx();
        let x = Polynomial::var(&c, 0);
        let y = Polynomial::var(&c, 1);
        let f = &x + &y;
        let g = &f * &(&x - &y + Polynomial::from_int(&c, 3));
        assert_eq!(g.div_exact(&f).unwrap(), &x - &y + Polynomial::from_int(&c, 3));
        assert!(g.div_exact(&(&x + Polynomial::from_int(&c, 1))).is_none());
        assert!(x.div_exact(&y).is_none());
    }

    #[test]
    fn coefficients_roundtrip() {
        let c = ctx();
        let x = Polynomial::var(&c, 0);
        let y = Polynomial::var(&c, 1);
        let p = (&x + &y).pow(3) - &y;
        let cs = p.coefficients_in(1);
        assert_eq!(cs.len(), 4);
        assert_eq!(Polynomial::from_coefficients_in(&c, 1, &cs), p);
        assert_eq!(p.lc_in(0), Polynomial::one(&c));
    }

    #[test]
    fn eval_and_compose() {
        let c = ctx();
        let x = Polynomial::var(&c, 0);
        let y = Polynomial::var(&c, 1);
        let p = &x * &x - &y;
        assert_eq!(p.eval(&[rat(3), rat(2)]), rat(7));
        let q = p.compose_var(0, &(&y + Polynomial::from_int(&c, 1)));
        assert_eq!(q.render(), "y^2 + y + 1");
        assert_eq!(p.eval_var(1, &rat(5)).render(), "x^2 - 5");
    }

    #[test]
    fn embed_by_name_permutes() {
        let c = ctx();
        let t = Context::new(&["y", "z", "x"]);
        let p = Polynomial::var(&c, 0) + Polynomial::var(&c, 1).pow(2);
        let q = p.embed_by_name(&t);
        assert_eq!(q.render(), "y^2 + x");
    }
}
