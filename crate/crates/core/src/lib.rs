mod accum;
pub mod cochain;
pub mod error;
pub mod gauge;
pub mod group;
pub mod quasialg;
pub mod scalar;
pub mod weakhopf;

pub use cochain::{
    build_f_clifford, build_f_gca, build_f_octonion, gca_braiding_direct, Braiding, BraidingViolation, Cochain2,
    Cochain3, GcaParams,
};
pub use error::{Error, Result};
pub use gauge::{decompose, decompose_fully, verify_decomposition, Decomposition, GaugeTransform};
pub use group::{Cayley, GroupElement, GroupSpec};
pub use quasialg::{
    braided_tensor_algebra, clifford_reversal, gca_label, gca_presentation, psi_isomorphism, AlgebraMorphism,
    GradedBasis, LinComb, QuasiAlgebra,
};
pub use scalar::{CycloNumber, Polynomial, QExponent, Rational, Scalar, ScalarContext};
pub use weakhopf::{
    braided_tensor_coalgebra, canonical_weak_hopf, check_coalgebra_constraints, derive_unique_coalgebra,
    gca_comul_direct, gca_weak_hopf, transport_weak_hopf, twisted_weak_hopf, verify_algebra, verify_weak_hopf, Axiom,
    AxiomReport, CoalgebraData, QFactor, WeakHopfData,
};
