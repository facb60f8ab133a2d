//! Concrete presentations, their characters, and the verifiers built on the ideal engine.

mod bruteforce;
mod builders;
mod checks;
mod classical;
mod orbits;

pub use builders::{
    build_presentation, classical_presentation, classical_relation, components, est_presentation, frt_matrix,
    frt_presentation, mixed_tl_presentation, re_matrix, re_presentation, two_param_matrix, two_param_presentation,
    Family, Presentation, PresentationKind, MAX_N,
};
pub use orbits::{
    character_failures, character_values, verify_character, verify_orbit_character, OrbitKind, OrbitQuotientSpec,
};
pub use checks::{
    poly_of_element, poly_of_matrix, shift_constant, trp_ordinary_trace_control, verify_fiber_map,
    verify_gl2_example, verify_lemma_alg, verify_lemma_trp, verify_substitution, Gl2Example,
};
pub use classical::{classical_orbit_dims, orbit_dims_through, MONOMIAL_CAP};
pub use bruteforce::{re_system, sample_q_values, solution_components, verify_bruteforce_classification, GaugedMember};
