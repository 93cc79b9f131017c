//! Exact computations with differential graded algebras and modules over a
//! field: cohomology in degree windows, bar constructions, Koszul duals,
//! and certificates for homological smoothness.

pub mod algebra;
pub mod bar;
pub mod catalog;
pub mod error;
pub mod gluing;
pub mod graded;
pub mod koszul;
pub mod linalg;
pub mod module;
pub mod resolve;
pub mod scalar;
pub mod smooth;
pub mod twisted;
pub mod zigzag;

pub use algebra::{
    Augmentation, AugmentationIdeal, DGAlgebra, DGAlgebraHom, HypothesisReport, Nilpotency,
    ValidationReport, Violation, ViolationKind,
};
pub use bar::{
    check_maurer_cartan, universal_twisting_cochain, BarCoalgebra, McReport, TwistingCochain, Word,
};
pub use error::{Error, Result};
pub use graded::{
    check_chain_map, complex_from_keys, map_from_keys, verify_quasi_iso, Cohomology,
    CohomologyGroup, Complex, DegreeWindow, GradedMap, GradedSpace, KeyedBasis, QuasiIsoReport,
};
pub use module::{
    bimodule, cone, diagonal, end_algebra, hom_complex, hom_space, tensor_over, DGModule, HomComplex,
    HomSpace, ModuleMap, TensorOver,
};
pub use koszul::{dual_sigma, koszul_dual, sigma_iso, KoszulDual, SigmaReport};
pub use linalg::{Matrix, Quotient, Reducer, SparseVec, Subspace};
pub use scalar::{Field, Scalar};
pub use twisted::{
    ext_comparison, koszul_functor, koszul_functor_module, nu_and_dual, two_sided_bar,
    twisted_tensor_left, twisted_tensor_right, ExtComparison, NuReport, Twisted,
};
pub use zigzag::{verify_zigzag_hypotheses, zigzag_algebra, Zigzag, ZigzagReport};
pub use gluing::{glue, glued_diagonal_cone, module_triple_check, DiagonalConeReport, GluedAlgebra, ModuleTriple};
pub use smooth::{
    auto_filtration, glued_smoothness, tor_obstruction, verify_filtration_certificate, verify_free_resolution,
    FiltrationCertificate, FiltrationVerdict, FreeResolutionCertificate, GluedSmoothness, ResolutionVerdict, TorReport,
};
pub use resolve::{resolution_report, Check, ResolutionReport};
