//! Exact computations in the Jacobson-Witt algebra `W(n)` over `F_p`: the
//! restricted Lie structure, subspace calculus, the standard tori and
//! completely solvable subalgebras `b_r`, automorphisms, and graded dimensions.

pub mod auto;
pub mod basis;
pub mod borel;
pub mod error;
pub mod gdim;
pub mod grading;
pub mod linalg;
pub mod matrix;
pub mod params;
pub mod poly;
pub mod probe;
pub mod series;
pub mod subspace;
pub mod torus;
pub mod witt;

pub use auto::{random_automorphism, random_unipotent, AutomorphismJson, PolyAutomorphism};
pub use basis::WittBasis;
pub use borel::{
    build_b0, build_b1_example, build_bn, build_bq, build_bq_split, build_bq_with, build_br, build_cn, build_cq,
    build_qq, enumerate_gamma, enumerate_lambda, standard_torus, IndexTriple, Lambda2Cutoff,
};
pub use error::{Result, WittError};
pub use gdim::{
    dim_formula_br, dim_formula_br_corrected, gdim_filtered, gdim_formula_br, gdim_formula_br_corrected,
    gdim_formula_homogeneous_borel, gdim_graded, gdim_ri_formula, gdim_ri_formula_corrected, q_poly, LaurentPoly,
};
pub use grading::{tr_components, TorusCoords};
pub use matrix::FpMatrix;
pub use params::Params;
pub use poly::{MultiIndex, PolyJson, TruncPoly};
pub use probe::{maximality_probe, ProbeReport, ProbeResult};
pub use series::{
    derived_lower_central, derived_series, is_completely_solvable, is_nilpotent, is_solvable, lower_central_series,
    SeriesKind, SeriesReport,
};
pub use subspace::{Subspace, SubspaceJson};
pub use torus::{is_torus, r_invariant_pr0, torus_orbit_invariant};
pub use witt::{monomial_basis, WittElement, WittJson};
