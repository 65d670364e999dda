//! Exact symbolic algebra over the rationals: sparse multivariate
//! polynomials, rational functions, differential forms, substitutions,
//! residues, resultants and quadratic extensions.

pub mod coeff;
pub mod error;
pub mod forms;
pub mod gcd;
pub mod parse;
pub mod poly;
pub mod quadext;
pub mod ratfunc;
pub mod residue;
pub mod resultant;
pub mod subst;

pub use coeff::{parse_rational, rat, ratio, rational_to_f64, render_rational, Coeff, Rational};
pub use error::CasError;
pub use parse::{parse_poly, parse_rf, rf};
pub use forms::{Mat2, MatrixOneForm, MatrixTwoForm, OneForm, TwoForm};
pub use poly::{Context, Polynomial};
pub use quadext::QuadExt;
pub use ratfunc::{RationalFunction, RF};
pub use residue::residue_along;
pub use resultant::{divides_exactly, resultant};
pub use subst::{CurveParametrization, Substitution};
