//! Exact computations with tuples of matrices under simultaneous
//! conjugation, over `Q`, `GF(p)` and `GF(p^k)`.
//!
//! The crate evaluates the invariants `c_s(w)` (characteristic coefficients
//! of words in the matrices), decides whether a tuple generates the full
//! matrix algebra, decides simultaneous conjugacy with an explicit
//! conjugating matrix, and checks the pointwise condition for a map between
//! sampled varieties of tuples to land in generating tuples.
//!
//! ```
//! use matinv::{Field, Matrix, MatTuple, in_u};
//!
//! let f: Field = "F7".parse().unwrap();
//! let x = MatTuple::new(vec![Matrix::unit(&f, 2, 0, 1), Matrix::unit(&f, 2, 1, 0)]).unwrap();
//! assert!(in_u(&x).verdict);
//! ```

pub mod algebra;
pub mod conjugacy;
pub mod error;
pub mod field;
pub mod invariants;
pub mod matrix;
pub mod poly;
pub mod tuple;
pub mod variety;

pub use algebra::{enumerate_words, eval_nc, eval_trace, equivariance_check, parse_nc, parse_trace, NcPoly, TracePoly, Word};
pub use conjugacy::{conjugacy_linear, conjugacy_linear_batch, conjugacy_reconstruct, find_splitting_element, InconclusiveReason, ReconstructOptions, SplitBudget, Verdict, Witness};
pub use error::{Error, Result};
pub use field::{ArithOp, Elem, Field, FieldKind};
pub use invariants::{donkin_generators, fingerprint, fingerprint_batch, fingerprint_with, separate, u22_certificate, Fingerprint, FingerprintOptions, Separation};
pub use matrix::{intertwiner_space, CharCoeffs, Matrix};
pub use poly::UniPoly;
pub use tuple::{centralizer_basis, conjugate_tuple, in_u, stabilizer_is_trivial, GenerationCertificate, MatTuple};
pub use variety::{apply_regular_map, ideal_kernel_basis, morphism_check, trace_ideal_check, variety_from_labelled_points, variety_from_points, MorphismReport, PointRecord, PointVariety, RegularMapSpec, TraceIdealReport};
