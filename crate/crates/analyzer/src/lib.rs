//! Surfaces `f = x0 f1 + f2^2 f3` in P^3 whose singular locus contains the
//! complete intersection `V(x0, f2, f1)`, and the invariants attached to
//! their node ideals.

pub mod ci;
pub mod example;
pub mod invariants;
pub mod report;
pub mod spotcheck;

pub use ci::{detect_ci, CIDetection};
pub use example::{build_example, build_example_to, stable_degree, NodalExample};
pub use invariants::{
    alexander_exponent, alexander_exponent_of, jacobian_ideal, locus_dims, tangent_dims, Alexander,
    LocusDims, TangentDims,
};
pub use report::{analyze, AnalysisReport, Comparison};
pub use spotcheck::{classify_point, rational_node_spotcheck, Hessian, PointClass, SpotCheck};
