//! Resultants and exact divisibility.

use crate::error::CasError;
use crate::poly::Polynomial;

/// Determinant of a square matrix of polynomials by fraction-free Bareiss
/// elimination.
pub fn determinant(mut m: Vec<Vec<Polynomial>>, ctx: &crate::poly::Context) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(ctx);
    }
    let mut sign = false;
    let mut prev = Polynomial::one(ctx);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return Polynomial::zero(ctx),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Sylvester resultant of `p` and `q` with respect to variable `v`.
pub fn resultant(p: &Polynomial, q: &Polynomial, v: usize) -> Result<Polynomial, CasError> {
    if p.ctx() != q.ctx() {
        return Err(CasError::ContextMismatch);
    }
    let ctx = p.ctx();
    let a = p.coefficients_in(v);
    let b = q.coefficients_in(v);
    if p.is_zero() || q.is_zero() {
        return Ok(Polynomial::zero(ctx));
    }
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m == 0 {
        return Ok(a[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(b[0].pow(m as u32));
    }
    let size = m + n;
    let mut mat = vec![vec![Polynomial::zero(ctx); size]; size];
    // rows hold coefficients from the leading one down
    for r in 0..n {
        for (i, c) in a.iter().rev().enumerate() {
            mat[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in b.iter().rev().enumerate() {
            mat[n + r][r + i] = c.clone();
        }
    }
    Ok(determinant(mat, ctx))
}

/// `Some(g / f)` when `f` divides `g` exactly, `None` otherwise.
pub fn divides_exactly(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    if f.is_zero() {
        return if g.is_zero() { Some(Polynomial::zero(g.ctx())) } else { None };
    }
    g.div_exact(f)
}
