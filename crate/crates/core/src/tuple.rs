//! Points of `(M_n)^m`, simultaneous conjugation, the generation test for
//! the open set `U_{m,n}` and centralizers.

use std::fmt;

use rand::Rng;

use crate::algebra::Word;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::{intertwiner_space, Matrix};

/// An `m`-tuple of `n x n` matrices over one field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatTuple {
    field: Field,
    n: usize,
    mats: Vec<Matrix>,
}

impl MatTuple {
    /// Requires at least one matrix; all must be square of equal size over
    /// the same field.
    pub fn new(mats: Vec<Matrix>) -> Result<Self> {
        let first = mats.first().ok_or(Error::Empty)?;
        let field = first.field().clone();
        let n = first.rows();
        for a in &mats {
            if a.field() != &field {
                return Err(Error::FieldMismatch);
            }
            if !a.is_square() || a.rows() != n {
                return Err(Error::ShapeMismatch(format!(
                    "expected {n}x{n}, got {}x{}",
                    a.rows(),
                    a.cols()
                )));
            }
        }
        Ok(MatTuple { field, n, mats })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.mats.len()
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn into_mats(self) -> Vec<Matrix> {
        self.mats
    }

    /// `(g x_1 g^-1, ..., g x_m g^-1)`.
    pub fn conjugate(&self, g: &Matrix) -> Result<MatTuple> {
        if g.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if !g.is_square() || g.rows() != self.n {
            return Err(Error::ShapeMismatch(format!("conjugating {n}x{n} tuple by {}x{}", g.rows(), g.cols(), n = self.n)));
        }
        let g_inv = g.inverse().ok_or(Error::SingularG)?;
        Ok(self.conjugate_with(g, &g_inv))
    }

    pub(crate) fn conjugate_with(&self, g: &Matrix, g_inv: &Matrix) -> MatTuple {
        MatTuple {
            field: self.field.clone(),
            n: self.n,
            mats: self.mats.iter().map(|a| a.conjugated_by(g, g_inv)).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, n: usize, m: usize, rng: &mut R) -> MatTuple {
        let mats = (0..m).map(|_| Matrix::random(field, n, rng)).collect();
        MatTuple { field: field.clone(), n, mats }
    }

    /// Rejection-samples a generating tuple. `m >= 2` unless `n == 1`.
    pub fn random_in_u<R: Rng + ?Sized>(field: &Field, n: usize, m: usize, rng: &mut R) -> MatTuple {
        loop {
            let x = Self::random(field, n, m, rng);
            if in_u(&x).verdict {
                return x;
            }
        }
    }
}

impl fmt::Display for MatTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.mats.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A growing set of linearly independent vectors in echelon form, used to
/// test membership in a span incrementally.
#[derive(Debug, Clone)]
pub(crate) struct EchelonSpan {
    field: Field,
    rows: Vec<(usize, Vec<Elem>)>,
}

impl EchelonSpan {
    pub(crate) fn new(field: &Field) -> Self {
        EchelonSpan { field: field.clone(), rows: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; zero iff `v` is in the span.
    pub(crate) fn reduce(&self, mut v: Vec<Elem>) -> Vec<Elem> {
        let f = &self.field;
        for (pivot, row) in &self.rows {
            if f.is_zero(&v[*pivot]) {
                continue;
            }
            let c = v[*pivot].clone();
            for (a, b) in v.iter_mut().zip(row).skip(*pivot) {
                *a = f.sub(a, &f.mul(&c, b));
            }
        }
        v
    }

    /// Inserts `v` if it is independent of the span; returns whether it was.
    pub(crate) fn insert(&mut self, v: Vec<Elem>) -> bool {
        let f = &self.field;
        let v = self.reduce(v);
        let Some(pivot) = v.iter().position(|e| !f.is_zero(e)) else { return false };
        let inv = f.inv(&v[pivot]).unwrap();
        let v = v.iter().map(|e| f.mul(e, &inv)).collect();
        self.rows.push((pivot, v));
        true
    }
}

/// Outcome of the generation test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationCertificate {
    /// Whether the tuple generates `M_n` as an algebra.
    pub verdict: bool,
    /// Words whose evaluations form a basis of the generated subalgebra; a
    /// basis of `M_n` exactly when `verdict` holds.
    pub spanning_words: Vec<Word>,
    /// Dimension of the generated subalgebra.
    pub span_dim: usize,
    /// Closure rounds performed (never more than `n^2`).
    pub rounds: usize,
}

impl GenerationCertificate {
    /// The dimension of the generated subalgebra when it is proper.
    pub fn defect_dim(&self) -> Option<usize> {
        (!self.verdict).then_some(self.span_dim)
    }
}

/// Tests whether `x_1, ..., x_m` generate `M_n`, by closing `span{I}` under
/// left multiplication by the `x_i` until it stabilises.
pub fn in_u(x: &MatTuple) -> GenerationCertificate {
    let f = x.field();
    let n = x.n();
    let full = n * n;
    let mut span = EchelonSpan::new(f);
    let mut words = vec![Word::empty()];
    let mut mats = vec![Matrix::identity(f, n)];
    span.insert(mats[0].entries().to_vec());
    let mut frontier = vec![0usize];
    let mut rounds = 0;
    while !frontier.is_empty() && span.dim() < full {
        rounds += 1;
        let mut next = Vec::new();
        for &idx in &frontier {
            for (i, xi) in x.mats().iter().enumerate() {
                let cand = xi * &mats[idx];
                if span.insert(cand.entries().to_vec()) {
                    next.push(mats.len());
                    words.push(words[idx].prepend(i));
                    mats.push(cand);
                    if span.dim() == full {
                        break;
                    }
                }
            }
            if span.dim() == full {
                break;
            }
        }
        frontier = next;
    }
    assert!(rounds <= full.max(1), "span closure exceeded n^2 rounds");
    GenerationCertificate { verdict: span.dim() == full, spanning_words: words, span_dim: span.dim(), rounds }
}

/// Canonical basis of the commutant `{A : A x_i = x_i A}`.
///
/// The same kernel describes the Lie algebra of the stabilizer of `x` in
/// `GL_n`, so one computation answers both questions.
pub fn centralizer_basis(x: &MatTuple) -> Vec<Matrix> {
    intertwiner_space(x, x).expect("a tuple has its own shape")
}

/// Whether the `PGL_n`-stabilizer of `x` is trivial, i.e. the commutant is
/// the scalars.
pub fn stabilizer_is_trivial(x: &MatTuple) -> bool {
    centralizer_basis(x).len() == 1
}

/// Convenience: `conjugate_tuple(g, x) = g x g^-1`.
pub fn conjugate_tuple(g: &Matrix, x: &MatTuple) -> Result<MatTuple> {
    x.conjugate(g)
}
