//! Residues of matrix 1-forms along irreducible curves.

use crate::error::CasError;
use crate::forms::{Mat2, MatrixOneForm};
use crate::poly::Polynomial;
use crate::ratfunc::RF;
use crate::subst::CurveParametrization;

/// Residue matrix of a logarithmic matrix 1-form along `{f = 0}`, expressed
/// in the curve parameter.
///
/// For each base coordinate `x_k` with `∂f/∂x_k` not identically zero on
/// the curve, `(f·Ω_k)/(∂f/∂x_k)` is restricted to the curve. All usable
/// branches must agree; a pole of order two or more along `f` is an error.
pub fn residue_along(omega: &MatrixOneForm, f: &Polynomial, curve: &CurveParametrization) -> Result<Mat2<RF>, CasError> {
    if f.is_constant() {
        return Err(CasError::Degenerate("constant curve equation".into()));
    }
    let base = omega.m[0][0].base().to_vec();
    let fr = RF::from_poly(f.clone());
    let mut found: Option<Mat2<RF>> = None;
    for (k, &v) in base.iter().enumerate() {
        let fk = f.derivative(v);
        if fk.is_zero() {
            continue;
        }
        let fk_on = curve.map.apply_poly(&fk)?;
        if fk_on.is_zero() {
            continue;
        }
        let comp = omega.component(k);
        let scaled = comp.try_map(|e| {
            let h = e.mul(&fr);
            if !h.den().is_constant() && h.den().div_exact(f).is_some() {
                return Err(CasError::PoleOrder(f.render()));
            }
            Ok(h)
        })?;
        let res = scaled.try_map(|h| Ok::<_, CasError>(curve.map.apply(h)?.div(&fk_on)))?;
        match &found {
            None => found = Some(res),
            Some(prev) if *prev == res => {}
            Some(prev) => {
                return Err(CasError::ResidueMismatch(format!(
                    "{} vs {}",
                    render_mat(prev),
                    render_mat(&res)
                )))
            }
        }
    }
    found.ok_or_else(|| CasError::Degenerate(format!("no usable branch for {}", f.render())))
}

pub fn render_mat(m: &Mat2<RF>) -> String {
    format!("[[{}, {}], [{}, {}]]", m.m[0][0], m.m[0][1], m.m[1][0], m.m[1][1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::poly::Context;
    use crate::subst::Substitution;

    #[test]
    fn simple_log_pole() {
        // Ω = A dx/(x - y) with A constant: residue along x = y is A.
        let c = Context::new(&["x", "y"]);
        let x = RF::var(&c, 0);
        let y = RF::var(&c, 1);
        let h = x.sub(&y).inv();
        let a = Mat2::new(RF::from_int(&c, 1), RF::from_int(&c, 2), RF::zero(&c), RF::from_int(&c, -1));
        let z = Mat2::new(RF::zero(&c), RF::zero(&c), RF::zero(&c), RF::zero(&c));
        // d(x - y)/(x - y) ⊗ A
        let om = MatrixOneForm::from_components(&[0, 1], &[a.map(|e| e.mul(&h)), a.map(|e| e.mul(&h).neg())]);
        let u = Context::new(&["u"]);
        let uu = RF::var(&u, 0);
        let curve = CurveParametrization::new("u", Substitution::new(&c, &u, vec![uu.clone(), uu.clone()]));
        let f = Polynomial::var(&c, 0) - Polynomial::var(&c, 1);
        let r = residue_along(&om, &f, &curve).unwrap();
        assert_eq!(r, a.map(|e| e.embed_by_name(&u)));
        // a form with only a dx-part is not logarithmic; the branches disagree
        let om2 = MatrixOneForm::from_components(&[0, 1], &[a.map(|e| e.mul(&h)), z.clone()]);
        assert!(matches!(residue_along(&om2, &f, &curve), Err(CasError::ResidueMismatch(_))));
        // double pole
        let h2 = h.mul(&h);
        let om3 = MatrixOneForm::from_components(&[0, 1], &[a.map(|e| e.mul(&h2)), a.map(|e| e.mul(&h2).neg())]);
        assert!(matches!(residue_along(&om3, &f, &curve), Err(CasError::PoleOrder(_))));
        let _ = rat(0);
    }
}
