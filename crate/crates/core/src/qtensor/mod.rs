//! Matrices and operators on V⊗V over the Scalar field: the standard R-matrix, the Hecke and
//! braid identities, quantum traces, numerical RE solutions and the diagonal gauge action.

mod charpoly;
mod families;
mod mat;
mod rmatrix;

pub use charpoly::{char_poly, expand_linear_factors, upoly_mul, UPoly};
pub use families::{
    build_solution, canonical_sweep, enumerate_admissible_pairs, family_a_matrix, family_b_matrix,
    gauge_transform, AdmissiblePair, FamilyParams, NumericalRESolution,
};
pub use mat::{Mat, MatJson, TensorOperator};
pub use rmatrix::{
    build_d, build_p, build_r, build_s, check_braid, check_hecke, check_numerical_re, check_yang_baxter,
    hecke_defect, quantum_trace, quantum_trace_power, re_defect,
};
