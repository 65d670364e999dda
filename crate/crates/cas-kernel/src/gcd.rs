//! Multivariate gcd over the integers.
//!
//! The workhorse is the heuristic gcd (evaluate one variable at a large
//! integer, recurse, and interpolate back ξ-adically), verified by trial
//! division. If the heuristic gives up, a recursive primitive remainder
//! sequence takes over, so the answer is always exact.

use crate::coeff::Rational;
use crate::poly::{IntPoly, Polynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const HEU_ATTEMPTS: usize = 6;

/// Integer content (gcd of coefficients), nonnegative.
pub fn content(p: &IntPoly) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in p.terms() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
pub fn normalize(p: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut c = content(p);
    if p.lc().is_negative() {
        c = -c;
    }
    if c.is_one() {
        p.clone()
    } else {
        p.map_coeffs(|a| a / &c)
    }
}

/// Clears denominators: returns `(k, q)` with `p = k * q`, `q` an integer
/// polynomial with content 1 and positive leading coefficient.
pub fn to_primitive_int(p: &Polynomial) -> (Rational, IntPoly) {
    if p.is_zero() {
        return (Rational::zero(), IntPoly::zero(p.ctx()));
    }
    let mut l = BigInt::one();
    for (_, c) in p.terms() {
        l = l.lcm(c.denom());
    }
    let scaled: IntPoly = p.map_coeffs(|c| (c * Rational::from_integer(l.clone())).to_integer());
    let mut g = content(&scaled);
    if scaled.lc().is_negative() {
        g = -g;
    }
    let q = scaled.map_coeffs(|a| a / &g);
    (Rational::new(g, l), q)
}

pub fn int_to_rational(p: &IntPoly) -> Polynomial {
    p.map_coeffs(|c| Rational::from_integer(c.clone()))
}

/// Gcd of two rational polynomials, normalized to a primitive integer
/// polynomial with positive leading coefficient (stored with rational
/// coefficients). `gcd(0, 0) = 0`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (_, a) = to_primitive_int(f);
    let (_, b) = to_primitive_int(g);
    int_to_rational(&gcd_int(&a, &b))
}

/// Gcd of integer polynomials (content included), positive leading coefficient.
pub fn gcd_int(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let ctx = f.ctx().clone();
    if f.is_zero() {
        return normalize(g);
    }
    if g.is_zero() {
        return normalize(f);
    }
    if f.is_constant() || g.is_constant() {
        return IntPoly::constant(&ctx, content(f).gcd(&content(g)));
    }
    if f == g || *f == g.neg() {
        return normalize(f);
    }
    // monomial content splits off exactly
    let mf = f.min_exponents();
    let mg = g.min_exponents();
    let common: Vec<u16> = mf.iter().zip(&mg).map(|(a, b)| *a.min(b)).collect();
    if mf.iter().any(|&e| e > 0) || mg.iter().any(|&e| e > 0) {
        let fr = f.div_monomial(&mf);
        let gr = g.div_monomial(&mg);
        let h = gcd_int(&fr, &gr);
        return h.mul_term(&common, &BigInt::one());
    }
    if f.len() == 1 || g.len() == 1 {
        // a monomial with no monomial content is a constant; handled above
        return IntPoly::constant(&ctx, content(f).gcd(&content(g)));
    }
    // a variable present in only one argument cannot occur in the gcd
    let uf = f.vars_used();
    let ug = g.vars_used();
    for v in 0..ctx.len() {
        if uf[v] != ug[v] {
            let (with, without) = if uf[v] { (f, g) } else { (g, f) };
            let mut h = without.clone();
            for c in with.coefficients_in(v) {
                if c.is_zero() {
                    continue;
                }
                h = gcd_int(&h, &c);
                if h.is_constant() {
                    break;
                }
            }
            return normalize_keep_content(&h);
        }
    }
    if let Some(div) = trial_divisor(f, g) {
        return div;
    }
    match heu_gcd(f, g) {
        Some((h, _, _)) => normalize_keep_content(&h),
        None => prs_gcd(f, g),
    }
}

/// If one argument divides the other, it is the gcd.
fn trial_divisor(f: &IntPoly, g: &IntPoly) -> Option<IntPoly> {
    let (small, big) = if f.len() <= g.len() { (f, g) } else { (g, f) };
    let ps = normalize(small);
    if big.div_exact(&ps).is_some() {
        let c = content(f).gcd(&content(g));
        return Some(ps.map_coeffs(|a| a * &c));
    }
    None
}

fn normalize_keep_content(h: &IntPoly) -> IntPoly {
    if h.lc().is_negative() {
        h.neg()
    } else {
        h.clone()
    }
}

fn max_norm(p: &IntPoly) -> BigInt {
    p.terms().iter().map(|(_, c)| c.abs()).max().unwrap_or_else(BigInt::zero)
}

fn first_var(f: &IntPoly, g: &IntPoly) -> Option<usize> {
    let uf = f.vars_used();
    let ug = g.vars_used();
    (0..uf.len()).find(|&v| uf[v] || ug[v])
}

/// Heuristic gcd. Returns `(h, f/h, g/h)` or `None` when it gives up.
fn heu_gcd(f: &IntPoly, g: &IntPoly) -> Option<(IntPoly, IntPoly, IntPoly)> {
    let ctx = f.ctx().clone();
    let Some(v) = first_var(f, g) else {
        let a = f.as_constant().unwrap_or_else(BigInt::zero);
        let b = g.as_constant().unwrap_or_else(BigInt::zero);
        let h = a.gcd(&b);
        if h.is_zero() {
            return Some((IntPoly::zero(&ctx), IntPoly::zero(&ctx), IntPoly::zero(&ctx)));
        }
        return Some((
            IntPoly::constant(&ctx, h.clone()),
            IntPoly::constant(&ctx, &a / &h),
            IntPoly::constant(&ctx, &b / &h),
        ));
    };
    let cf = content(f);
    let cg = content(g);
    let gc = cf.gcd(&cg);
    let f = f.map_coeffs(|a| a / &gc);
    let g = g.map_coeffs(|a| a / &gc);
    let fnorm = max_norm(&f);
    let gnorm = max_norm(&g);
    let b: BigInt = BigInt::from(2) * fnorm.clone().min(gnorm.clone()) + 29;
    let cap = BigInt::from(99) * b.sqrt();
    let lcf = f.lc().abs();
    let lcg = g.lc().abs();
    let alt = BigInt::from(2) * (&fnorm / &lcf).min(&gnorm / &lcg) + 4;
    let mut x = b.min(cap).max(alt);
    for _ in 0..HEU_ATTEMPTS {
        let ff = f.eval_var(v, &x);
        let gg = g.eval_var(v, &x);
        if !ff.is_zero() && !gg.is_zero() {
            let (h, cff, cfg) = heu_gcd(&ff, &gg)?;
            let mut hh = interpolate(&h, &x, v);
            hh = primitive(&hh);
            if let (Some(qf), Some(qg)) = (f.div_exact(&hh), g.div_exact(&hh)) {
                return Some((hh.map_coeffs(|a| a * &gc), qf, qg));
            }
            let cff = interpolate(&cff, &x, v);
            if let Some(hh) = f.div_exact(&cff) {
                if let Some(qg) = g.div_exact(&hh) {
                    return Some((hh.map_coeffs(|a| a * &gc), cff, qg));
                }
            }
            let cfg = interpolate(&cfg, &x, v);
            if let Some(hh) = g.div_exact(&cfg) {
                if let Some(qf) = f.div_exact(&hh) {
                    return Some((hh.map_coeffs(|a| a * &gc), qf, cfg));
                }
            }
        }
        // x <- 73794 x sqrt(sqrt(x)) / 27011
        x = (BigInt::from(73794) * &x * x.sqrt().sqrt()) / BigInt::from(27011);
    }
    None
}

fn primitive(p: &IntPoly) -> IntPoly {
    let c = content(p);
    if c.is_zero() || c.is_one() {
        p.clone()
    } else {
        p.map_coeffs(|a| a / &c)
    }
}

/// Symmetric residue of `a` modulo `m`, in `(-m/2, m/2]`.
fn symmetric_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Recovers `h(v)` from its image at `v = x` by ξ-adic expansion.
fn interpolate(h: &IntPoly, x: &BigInt, v: usize) -> IntPoly {
    let ctx = h.ctx().clone();
    let mut coeffs: Vec<IntPoly> = Vec::new();
    let mut rest = h.clone();
    while !rest.is_zero() {
        let g = rest.map_coeffs(|a| symmetric_mod(a, x));
        let diff = rest.sub(&g);
        rest = diff.map_coeffs(|a| {
            let (q, r) = a.div_rem(x);
            debug_assert!(r.is_zero());
            q
        });
        coeffs.push(g);
    }
    IntPoly::from_coefficients_in(&ctx, v, &coeffs)
}

/// Content with respect to `v`: gcd of the coefficients of `p` viewed as a
/// univariate polynomial in `v`.
fn content_in(p: &IntPoly, v: usize) -> IntPoly {
    let mut h = IntPoly::zero(p.ctx());
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        h = gcd_int(&h, &c);
        if h.is_one() {
            break;
        }
    }
    h
}

fn pseudo_rem(a: &IntPoly, b: &IntPoly, v: usize) -> IntPoly {
    let db = b.degree_in(v);
    let lb = b.lc_in(v);
    let mut r = a.clone();
    let mut k = a.degree_in(v) as i32 - db as i32 + 1;
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.lc_in(v);
        let mut e = vec![0u16; r.ctx().len()];
        e[v] = dr - db;
        r = r.mul(&lb).sub(&lr.mul(b).mul_term(&e, &BigInt::one()));
        k -= 1;
    }
    if k > 0 {
        r = r.mul(&lb.pow(k as u32));
    }
    r
}

/// Recursive primitive PRS gcd; slow but unconditional.
fn prs_gcd(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let Some(v) = first_var(f, g) else {
        return gcd_int(f, g);
    };
    if !f.uses_var(v) {
        return gcd_int(f, &content_in(g, v));
    }
    if !g.uses_var(v) {
        return gcd_int(&content_in(f, v), g);
    }
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = gcd_int(&cf, &cg);
    let mut a = f.div_exact(&cf).expect("content divides");
    let mut b = g.div_exact(&cg).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            b = IntPoly::one(f.ctx());
            break;
        }
        a = b;
        let cr = content_in(&r, v);
        b = r.div_exact(&cr).expect("content divides");
    }
    let cb = content_in(&b, v);
    let pb = b.div_exact(&cb).expect("content divides");
    normalize_keep_content(&c.mul(&normalize(&pb)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ratio;
    use crate::poly::Context;

    fn c3() -> Context {
        Context::new(&["x", "y", "z"])
    }

    fn v(c: &Context, i: usize) -> Polynomial {
        Polynomial::var(c, i)
    }

    fn k(c: &Context, n: i64) -> Polynomial {
        Polynomial::from_int(c, n)
    }

    #[test]
    fn shared_factor_is_found() {
        let c = c3();
        let (x, y, z) = (v(&c, 0), v(&c, 1), v(&c, 2));
        let common = &x * &y - &z + k(&c, 3);
        let f = &common * &(&x + &z).pow(2);
        let g = &common * &(&y - &x * &z + k(&c, 1));
        assert_eq!(gcd(&f, &g), common);
    }

    #[test]
    fn coprime_gives_one() {
        let c = c3();
        let (x, y, z) = (v(&c, 0), v(&c, 1), v(&c, 2));
        let f = &x * &x + &y * &z + k(&c, 1);
        let g = &x - &y.pow(3) + &z;
        assert!(gcd(&f, &g).is_one());
    }

    #[test]
    fn rational_coefficients_are_cleared() {
        let c = c3();
        let (x, y) = (v(&c, 0), v(&c, 1));
        let f = (&x + &y).scale(&ratio(3, 7));
        let g = (&x + &y).scale(&ratio(-5, 2)) * &x;
        let h = gcd(&f, &g);
        assert_eq!(h, &x + &y);
    }

    #[test]
    fn monomial_content() {
        let c = c3();
        let (x, y, z) = (v(&c, 0), v(&c, 1), v(&c, 2));
        let f = &x.pow(3) * &y * &(&z + k(&c, 1));
        let g = &x * &y.pow(2) * &(&z + k(&c, 1)) * &(&x + &z);
        assert_eq!(gcd(&f, &g), &x * &y * &(&z + k(&c, 1)));
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let c = c3();
        let (x, y, z) = (v(&c, 0), v(&c, 1), v(&c, 2));
        let common = &x * &x - &y * &z + k(&c, 2) * &x;
        let f = &common * &(&x * &y + k(&c, 7));
        let g = &common * &(&z.pow(2) - &x + k(&c, 1));
        let (_, fi) = to_primitive_int(&f);
        let (_, gi) = to_primitive_int(&g);
        let a = int_to_rational(&prs_gcd(&fi, &gi));
        assert_eq!(a, common);
    }
}
