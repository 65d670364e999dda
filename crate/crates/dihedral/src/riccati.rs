//! Riccati one-forms `dw + c2 w² + c1 w + c0` and their sl2 matrices.
//!
//! Convention: flat sections of `d + Ω` solve `dZ = -Ω Z`, and `w = Z1/Z2`.
//! Then the Riccati form of `Ω = [[c1/2, c0], [-c2, -c1/2]]` is
//! `dw + c2 w² + c1 w + c0`.

use cas_kernel::forms::{Mat2, MatrixOneForm, OneForm};
use cas_kernel::{Polynomial, RF};

/// `dw + (a2 w² + a1 w + a0)/den · dx` on a line with coordinate `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct RiccatiCoefficients {
    pub a2: RF,
    pub a1: RF,
    pub a0: RF,
    pub den: RF,
}

impl RiccatiCoefficients {
    /// The system matrix `M` of `dZ/dx = -M Z`, i.e. the connection matrix.
    pub fn matrix(&self) -> Mat2<RF> {
        let inv = self.den.inv();
        let c2 = self.a2.mul(&inv);
        let c1 = self.a1.mul(&inv);
        let c0 = self.a0.mul(&inv);
        let half = cas_kernel::ratio(1, 2);
        Mat2::new(c1.scale(&half), c0, c2.neg(), c1.scale(&half).neg())
    }
}

/// Matrix of the Riccati form whose `dx_k` coefficient is the quadratic
/// `c(w)` given per base coordinate, `w` being variable `wvar`.
pub fn matrix_of_riccati(base: &[usize], coeffs: &[RF], wvar: usize) -> MatrixOneForm {
    let mats: Vec<Mat2<RF>> = coeffs.iter().map(|c| quadratic_to_matrix(c, wvar)).collect();
    MatrixOneForm::from_components(base, &mats)
}

/// Splits `c(w) = c2 w² + c1 w + c0` (polynomial in `w` over the fraction
/// field of the other variables) into `[[c1/2, c0], [-c2, -c1/2]]`.
pub fn quadratic_to_matrix(c: &RF, wvar: usize) -> Mat2<RF> {
    let [c2, c1, c0] = quadratic_parts(c, wvar);
    let half = cas_kernel::ratio(1, 2);
    Mat2::new(c1.scale(&half), c0, c2.neg(), c1.scale(&half).neg())
}

/// `[c2, c1, c0]` of a rational function that is quadratic in `w`.
pub fn quadratic_parts(c: &RF, wvar: usize) -> [RF; 3] {
    assert_eq!(c.den().degree_in(wvar), 0, "denominator depends on the fiber coordinate");
    let parts = c.num().coefficients_in(wvar);
    assert!(parts.len() <= 3, "not quadratic in the fiber coordinate");
    let den = RF::from_poly(c.den().clone());
    let get = |k: usize| {
        parts.get(k).cloned().map(|p| RF::from_poly(p).div(&den)).unwrap_or_else(|| RF::zero(c.ctx()))
    };
    [get(2), get(1), get(0)]
}

/// The Riccati form of `Ω` as a 1-form over `base ∪ {w}`; `Ω` must be
/// trace-free.
pub fn riccati_of_matrix(om: &MatrixOneForm, wvar: usize) -> OneForm {
    let base = om.m[0][0].base().to_vec();
    let ctx = om.m[0][0].ctx().clone();
    let w = RF::var(&ctx, wvar);
    let mut comps: Vec<RF> = (0..base.len())
        .map(|k| {
            let m = om.component(k);
            // -Ω21 w² + (Ω11 - Ω22) w + Ω12
            m.m[1][0].neg().mul(&w).mul(&w).add(&m.m[0][0].sub(&m.m[1][1]).mul(&w)).add(&m.m[0][1])
        })
        .collect();
    let mut full = base.clone();
    full.push(wvar);
    comps.push(RF::one(&ctx));
    OneForm::new(&full, comps)
}

/// Degree of the numerator of `f` in variable `v`.
pub fn num_degree(f: &RF, v: usize) -> u16 {
    f.num().degree_in(v)
}

pub fn poly_of(f: &RF) -> Option<&Polynomial> {
    f.is_polynomial().then(|| f.num())
}

#[cfg(test)]
mod tests {
    use super::*;
    use cas_kernel::{rf, Context};

    #[test]
    fn abelian_case() {
        // a2 = a0 = 0, a1 = λ/x gives diag(λ/(2x), -λ/(2x))
        let c = Context::new(&["x", "l"]);
        let r = RiccatiCoefficients {
            a2: RF::zero(&c),
            a1: rf(&c, "l"),
            a0: RF::zero(&c),
            den: rf(&c, "x"),
        };
        let m = r.matrix();
        assert_eq!(m.m[0][0], rf(&c, "l/(2*x)"));
        assert_eq!(m.m[1][1], rf(&c, "-l/(2*x)"));
        assert!(m.m[0][1].is_zero() && m.m[1][0].is_zero());
        assert!(m.trace().is_zero());
    }

    #[test]
    fn round_trip() {
        let c = Context::new(&["x", "w"]);
        let q = rf(&c, "(x*w^2 - 3*w + 1/x)/(x - 1)");
        let om = matrix_of_riccati(&[0], &[q.clone()], 1);
        let r = riccati_of_matrix(&om, 1);
        assert_eq!(r.comp(0), &q);
        assert!(r.comp(1).is_one());
    }
}
