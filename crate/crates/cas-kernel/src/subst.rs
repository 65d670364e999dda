//! Variable substitution between contexts, and curve parametrizations.

use crate::error::CasError;
use crate::poly::{Context, Polynomial};
use crate::ratfunc::RF;

/// Sends every variable of `source` to a rational function over `target`.
#[derive(Clone, Debug)]
pub struct Substitution {
    source: Context,
    target: Context,
    images: Vec<Option<RF>>,
}

impl Substitution {
    pub fn new(source: &Context, target: &Context, images: Vec<RF>) -> Self {
        assert_eq!(images.len(), source.len());
        for im in &images {
            assert!(im.ctx() == target, "image lives in the wrong context");
        }
        Substitution {
            source: source.clone(),
            target: target.clone(),
            images: images.into_iter().map(Some).collect(),
        }
    }

    /// Variables listed in `overrides` get the given image; every other
    /// variable maps to the variable of the same name in `target` (if any).
    pub fn by_name(source: &Context, target: &Context, overrides: &[(&str, RF)]) -> Self {
        let images = source
            .names()
            .iter()
            .map(|n| {
                if let Some((_, im)) = overrides.iter().find(|(k, _)| k == n) {
                    assert!(im.ctx() == target, "image of `{n}` lives in the wrong context");
                    Some(im.clone())
                } else {
                    target.index(n).map(|i| RF::var(target, i))
                }
            })
            .collect();
        Substitution { source: source.clone(), target: target.clone(), images }
    }

    pub fn source(&self) -> &Context {
        &self.source
    }

    pub fn target(&self) -> &Context {
        &self.target
    }

    pub fn image(&self, v: usize) -> Result<&RF, CasError> {
        self.images[v]
            .as_ref()
            .ok_or_else(|| CasError::UnknownVariable(self.source.name(v).to_string()))
    }

    /// Image of a polynomial. All denominators are collected into one
    /// common denominator before a single reduction at the end.
    pub fn apply_poly(&self, p: &Polynomial) -> Result<RF, CasError> {
        assert!(p.ctx() == &self.source, "polynomial not over the source context");
        let n = self.source.len();
        let maxdeg: Vec<u16> = (0..n).map(|v| p.degree_in(v)).collect();
        let mut num_pows: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
        let mut den_pows: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
        let mut den_total = Polynomial::one(&self.target);
        for v in 0..n {
            let d = maxdeg[v] as usize;
            if d == 0 {
                num_pows.push(Vec::new());
                den_pows.push(Vec::new());
                continue;
            }
            let im = self.image(v)?;
            let mut np = vec![Polynomial::one(&self.target)];
            let mut dp = vec![Polynomial::one(&self.target)];
            for k in 1..=d {
                np.push(np[k - 1].mul(im.num()));
                if im.is_polynomial() {
                    dp.push(Polynomial::one(&self.target));
                } else {
                    dp.push(dp[k - 1].mul(im.den()));
                }
            }
            den_total = den_total.mul(&dp[d]);
            num_pows.push(np);
            den_pows.push(dp);
        }
        let mut acc = Polynomial::zero(&self.target);
        for (m, c) in p.terms() {
            let mut t = Polynomial::constant(&self.target, c.clone());
            for v in 0..n {
                let d = maxdeg[v] as usize;
                if d == 0 {
                    continue;
                }
                let e = m[v] as usize;
                if e > 0 {
                    t = t.mul(&num_pows[v][e]);
                }
                if e < d && !den_pows[v][d - e].is_one() {
                    t = t.mul(&den_pows[v][d - e]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(RF::new(acc, den_total))
    }

    pub fn apply(&self, f: &RF) -> Result<RF, CasError> {
        let n = self.apply_poly(f.num())?;
        let d = self.apply_poly(f.den())?;
        if d.is_zero() {
            return Err(CasError::Pole(format!(
                "denominator {} vanishes identically under the substitution",
                f.den()
            )));
        }
        Ok(n.div(&d))
    }

    /// Composition `other ∘ self` is not needed; instead this helper maps
    /// a list of functions at once.
    pub fn apply_all(&self, fs: &[RF]) -> Result<Vec<RF>, CasError> {
        fs.iter().map(|f| self.apply(f)).collect()
    }
}

/// A rational curve given by images of the plane coordinates in terms of a
/// parameter (which lives in the target context together with any symbolic
/// constants). A point of a line is the degenerate case with no parameter.
#[derive(Clone, Debug)]
pub struct CurveParametrization {
    pub parameter: Option<String>,
    pub map: Substitution,
}

impl CurveParametrization {
    pub fn new(parameter: &str, map: Substitution) -> Self {
        assert!(map.target().index(parameter).is_some(), "parameter missing from target context");
        CurveParametrization { parameter: Some(parameter.to_string()), map }
    }

    pub fn point(map: Substitution) -> Self {
        CurveParametrization { parameter: None, map }
    }

    /// True iff `f` vanishes identically along the curve.
    pub fn lies_on(&self, f: &Polynomial) -> bool {
        matches!(self.map.apply_poly(f), Ok(r) if r.is_zero())
    }
}
