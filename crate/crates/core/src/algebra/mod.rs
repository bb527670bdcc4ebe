//! The free algebra on generic matrices and its trace ring, as evaluable
//! symbolic objects.
//!
//! [`NcPoly`] models elements of the generic matrix ring; [`TracePoly`]
//! adjoins central characteristic coefficients `c_s(q)`, which may nest.
//! Both evaluate at matrix tuples, and evaluation is a ring homomorphism.

mod ncpoly;
mod parse;
mod trace;
mod word;

pub use ncpoly::NcPoly;
pub use parse::{parse_nc, parse_trace};
pub use trace::{CentralMono, CentralSym, TracePoly};
pub use word::{enumerate_words, Word, DEFAULT_WORD_CAP};

pub(crate) use word::eval_prefix_closed;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::tuple::MatTuple;

/// `p(x_1, ..., x_m)`.
pub fn eval_nc(p: &NcPoly, x: &MatTuple) -> Result<Matrix> {
    p.eval(x)
}

/// Evaluates a trace polynomial; central symbols become scalar matrices.
pub fn eval_trace(t: &TracePoly, x: &MatTuple) -> Result<Matrix> {
    t.eval(x)
}

/// Whether `t(g x g^-1) = g t(x) g^-1`. Trace polynomials are equivariant, so
/// this always holds; it is exposed as a check for tests and sweeps.
pub fn equivariance_check(t: &TracePoly, x: &MatTuple, g: &Matrix) -> Result<bool> {
    let moved = x.conjugate(g)?;
    let g_inv = g.inverse().expect("checked by conjugate");
    let lhs = t.eval(&moved)?;
    let rhs = t.eval(x)?.conjugated_by(g, &g_inv);
    Ok(lhs == rhs)
}
