//! Dihedral flat connections on the projective plane: construction,
//! residues, numerical monodromy, isomonodromic deformations and the
//! associated Lotka–Volterra foliation.

pub mod connection;
pub mod foliation;
pub mod isomonodromy;
pub mod monodromy;
pub mod params;
pub mod riccati;

pub use params::ParameterPoint;
