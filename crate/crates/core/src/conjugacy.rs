//! Deciding simultaneous conjugacy with an explicit conjugating matrix.
//!
//! [`conjugacy_linear`] solves `g x_i = y_i g` directly. For `x` generating
//! `M_n` the solution space is at most a line, so the answer is a rank
//! computation. [`conjugacy_reconstruct`] builds `g` the constructive way:
//! diagonalize a splitting element, cut out the diagonal idempotents, and
//! read off the remaining diagonal rescaling from off-diagonal entries.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{enumerate_words, eval_prefix_closed, NcPoly, Word, DEFAULT_WORD_CAP};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::invariants::{separate, Separation};
use crate::matrix::{intertwiner_space, Matrix};
use crate::tuple::{in_u, MatTuple};

/// Why two tuples are not conjugate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `c_s(w)` differs between the tuples.
    Invariant { s: usize, word: Word },
    /// `c_s(z)` differs for the splitting element `z`.
    SplittingCharpoly { s: usize, z: NcPoly },
    /// `w(y)` has a zero where `w(x)` does not, in position `(row, col)`
    /// of the diagonalized tuples.
    OffDiagonal { word: Word, row: usize, col: usize },
    /// The reconstructed matrix fails to carry `w(x)` to `w(y)`.
    WordMismatch { word: Word },
    /// No invertible intertwiner exists.
    IntertwinerRankDefect,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InconclusiveReason {
    /// No splitting element was found within the search budget.
    NoSplitZ,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Conjugate(Matrix),
    NotConjugate(Witness),
    Inconclusive(InconclusiveReason),
}

impl Verdict {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, Verdict::Conjugate(_))
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Verdict::Inconclusive(_))
    }

    pub fn witness_matrix(&self) -> Option<&Matrix> {
        match self {
            Verdict::Conjugate(g) => Some(g),
            _ => None,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Invariant { s, word } => write!(f, "invariant ({s},{word})"),
            Witness::SplittingCharpoly { s, z } => write!(f, "invariant c{s}({z})"),
            Witness::OffDiagonal { word, row, col } => {
                write!(f, "entry ({},{}) of {word} vanishes on one side only", row + 1, col + 1)
            }
            Witness::WordMismatch { word } => write!(f, "word {word} not carried over"),
            Witness::IntertwinerRankDefect => write!(f, "IntertwinerRankDefect"),
        }
    }
}

impl fmt::Display for InconclusiveReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InconclusiveReason::NoSplitZ => write!(f, "NoSplitZ"),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Conjugate(g) => write!(f, "Conjugate g = {g}"),
            Verdict::NotConjugate(w) => write!(f, "NotConjugate: {w}"),
            Verdict::Inconclusive(r) => write!(f, "Inconclusive: {r}"),
        }
    }
}

fn check_pair(x: &MatTuple, y: &MatTuple) -> Result<()> {
    if x.n() != y.n() || x.m() != y.m() {
        return Err(Error::ShapeMismatch(format!(
            "tuples of shape (n={}, m={}) and (n={}, m={})",
            x.n(),
            x.m(),
            y.n(),
            y.m()
        )));
    }
    if x.field() != y.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// Scales `g` so that its first nonzero entry, in row-major order, is 1.
fn normalize(g: Matrix) -> Matrix {
    let f = g.field().clone();
    match g.entries().iter().find(|e| !f.is_zero(e)) {
        Some(lead) => {
            let inv = f.inv(lead).expect("nonzero");
            g.scale(&inv)
        }
        None => g,
    }
}

/// Decides conjugacy by solving `g x_i = y_i g`. `x` must generate `M_n`.
pub fn conjugacy_linear(x: &MatTuple, y: &MatTuple) -> Result<Verdict> {
    check_pair(x, y)?;
    if !in_u(x).verdict {
        return Err(Error::NotInU);
    }
    let space = intertwiner_space(x, y)?;
    assert!(space.len() <= 1, "intertwiner space of dimension {} for a generating tuple", space.len());
    Ok(match space.into_iter().next() {
        Some(g) if g.is_invertible() => Verdict::Conjugate(normalize(g)),
        _ => Verdict::NotConjugate(Witness::IntertwinerRankDefect),
    })
}

/// [`conjugacy_linear`] on many pairs in parallel, in input order.
pub fn conjugacy_linear_batch(pairs: &[(MatTuple, MatTuple)]) -> Vec<Result<Verdict>> {
    pairs.par_iter().map(|(x, y)| conjugacy_linear(x, y)).collect()
}

/// Limits for [`find_splitting_element`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitBudget {
    /// Longest word tried on its own, and in random combinations.
    pub max_word_len: usize,
    /// Number of random combinations tried after the plain words.
    pub tries: usize,
}

impl Default for SplitBudget {
    fn default() -> Self {
        SplitBudget { max_word_len: 3, tries: 64 }
    }
}

/// Searches for `z` such that `z(x)` has `n` distinct eigenvalues in the base
/// field: first the nonempty words up to the length cap, then seeded random
/// combinations of them.
pub fn find_splitting_element(x: &MatTuple, budget: SplitBudget, seed: u64) -> Result<Option<NcPoly>> {
    let f = x.field();
    let words = enumerate_words(x.m(), budget.max_word_len, DEFAULT_WORD_CAP)?;
    let mats = eval_prefix_closed(&words, x)?;
    let splits = |a: &Matrix| a.charpoly().to_poly().is_squarefree_split();
    for (w, a) in words.iter().zip(&mats).skip(1) {
        if splits(a) {
            return Ok(Some(NcPoly::word(f, w.clone())));
        }
    }
    if words.len() <= 1 {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget.tries {
        let mut z = NcPoly::zero(f);
        let mut value = Matrix::zeros(f, x.n(), x.n());
        for (w, a) in words.iter().zip(&mats).skip(1) {
            let c = f.random(&mut rng);
            if f.is_zero(&c) {
                continue;
            }
            value = &value + &a.scale(&c);
            z.add_term(w.clone(), c);
        }
        if !z.is_zero() && splits(&value) {
            return Ok(Some(z));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReconstructOptions {
    pub budget: SplitBudget,
    pub seed: u64,
    /// Word-length bound for the invariant pre-check; `n^2` when unset.
    pub fingerprint_len: Option<usize>,
}

/// Columns are eigenvectors of `a` for `eigenvalues`, in order.
fn eigenbasis(a: &Matrix, eigenvalues: &[Elem]) -> Matrix {
    let f = a.field();
    let n = a.rows();
    let mut p = Matrix::zeros(f, n, n);
    for (col, lambda) in eigenvalues.iter().enumerate() {
        let shifted = a - &Matrix::scalar(f, n, lambda);
        let kernel = shifted.nullspace();
        assert_eq!(kernel.len(), 1, "eigenvalue of multiplicity one");
        for (row, v) in kernel[0].iter().enumerate() {
            p.set(row, col, v.clone());
        }
    }
    p
}

/// `prod_{j != i} (d - lambda_j) / (lambda_i - lambda_j)`, the idempotent
/// cutting out the `lambda_i`-eigenspace of `d`.
fn lagrange_idempotent(d: &Matrix, eigenvalues: &[Elem], i: usize) -> Matrix {
    let f = d.field();
    let n = d.rows();
    let mut acc = Matrix::identity(f, n);
    for (j, lambda) in eigenvalues.iter().enumerate() {
        if j == i {
            continue;
        }
        let denom = f.inv(&f.sub(&eigenvalues[i], lambda)).expect("distinct eigenvalues");
        acc = &acc * &(d - &Matrix::scalar(f, n, lambda)).scale(&denom);
    }
    acc
}

/// Decides conjugacy by the constructive route: match invariants, split by a
/// diagonalizable element, then solve for the remaining diagonal factor.
pub fn conjugacy_reconstruct(x: &MatTuple, y: &MatTuple, opts: &ReconstructOptions) -> Result<Verdict> {
    check_pair(x, y)?;
    let cert = in_u(x);
    if !cert.verdict {
        return Err(Error::NotInU);
    }
    let f = x.field();
    let n = x.n();
    let len = opts.fingerprint_len.unwrap_or(n * n);
    if let Separation::Separated { s, word, .. } = separate(x, y, len)? {
        return Ok(Verdict::NotConjugate(Witness::Invariant { s, word }));
    }

    let Some(z) = find_splitting_element(x, opts.budget, opts.seed)? else {
        return Ok(Verdict::Inconclusive(InconclusiveReason::NoSplitZ));
    };
    let zx = z.eval(x)?;
    let zy = z.eval(y)?;
    let (cx, cy) = (zx.charpoly(), zy.charpoly());
    if cx != cy {
        let s = (1..=n).find(|&s| cx.get(s).unwrap() != cy.get(s).unwrap()).unwrap();
        return Ok(Verdict::NotConjugate(Witness::SplittingCharpoly { s, z }));
    }
    let eigenvalues: Vec<Elem> = cx.to_poly().roots_in_field().into_iter().map(|(r, _)| r).collect();

    // After these basis changes z is the same diagonal matrix on both sides.
    let px = eigenbasis(&zx, &eigenvalues);
    let py = eigenbasis(&zy, &eigenvalues);
    let px_inv = px.inverse().expect("eigenbasis");
    let py_inv = py.inverse().expect("eigenbasis");
    let x1 = x.conjugate_with(&px_inv, &px);
    let y1 = y.conjugate_with(&py_inv, &py);
    let d = Matrix::diag(f, &eigenvalues);
    let e: Vec<Matrix> = (0..n).map(|i| lagrange_idempotent(&d, &eigenvalues, i)).collect();
    debug_assert!((0..n).all(|i| e[i] == Matrix::unit(f, n, i, i)));

    let words = &cert.spanning_words;
    let wx: Vec<Matrix> = words.iter().map(|w| w.eval(&x1)).collect::<Result<_>>()?;
    let wy: Vec<Matrix> = words.iter().map(|w| w.eval(&y1)).collect::<Result<_>>()?;

    // gamma = diag(1, alpha_12, ..., alpha_1n) with y1 = gamma x1 gamma^-1.
    let mut gamma = vec![f.one()];
    for j in 1..n {
        let k = (0..words.len())
            .find(|&k| !f.is_zero((&(&e[0] * &wx[k]) * &e[j]).get(0, j)))
            .expect("spanning words reach every entry");
        let (a, b) = (wx[k].get(0, j), wy[k].get(0, j));
        if f.is_zero(b) {
            return Ok(Verdict::NotConjugate(Witness::OffDiagonal { word: words[k].clone(), row: 0, col: j }));
        }
        let alpha_1j = f.div(a, b).unwrap();
        let k = (0..words.len())
            .find(|&k| !f.is_zero((&(&e[j] * &wx[k]) * &e[0]).get(j, 0)))
            .expect("spanning words reach every entry");
        let (a, b) = (wx[k].get(j, 0), wy[k].get(j, 0));
        if f.is_zero(b) {
            return Ok(Verdict::NotConjugate(Witness::OffDiagonal { word: words[k].clone(), row: j, col: 0 }));
        }
        let alpha_j1 = f.div(a, b).unwrap();
        if !f.is_one(&f.mul(&alpha_1j, &alpha_j1)) {
            return Ok(Verdict::NotConjugate(Witness::WordMismatch { word: words[k].clone() }));
        }
        gamma.push(alpha_1j);
    }
    let gamma_inv: Vec<Elem> = gamma.iter().map(|a| f.inv(a).unwrap()).collect();
    let gamma = Matrix::diag(f, &gamma);
    let gamma_inv = Matrix::diag(f, &gamma_inv);

    let checks = words.iter().zip(wx.iter().zip(&wy));
    let generators = (0..x.m()).map(Word::generator).map(|w| {
        let a = w.eval(&x1).unwrap();
        let b = w.eval(&y1).unwrap();
        (w, a, b)
    });
    for (w, a, b) in checks.map(|(w, (a, b))| (w.clone(), a.clone(), b.clone())).chain(generators) {
        if a.conjugated_by(&gamma, &gamma_inv) != b {
            return Ok(Verdict::NotConjugate(Witness::WordMismatch { word: w }));
        }
    }

    let g = normalize(&(&py * &gamma) * &px_inv);
    let g_inv = g.inverse().expect("product of invertible matrices");
    assert_eq!(x.conjugate_with(&g, &g_inv), *y, "reconstructed matrix conjugates x to y");
    Ok(Verdict::Conjugate(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use rand::Rng;

    fn e(f: &Field, i: usize, j: usize) -> Matrix {
        Matrix::unit(f, 2, i, j)
    }

    fn tuple(mats: Vec<Matrix>) -> MatTuple {
        MatTuple::new(mats).unwrap()
    }

    #[test]
    fn linear_examples() {
        let q = Field::rationals();
        let x = tuple(vec![e(&q, 0, 1), e(&q, 1, 0)]);
        assert_eq!(conjugacy_linear(&x, &x).unwrap(), Verdict::Conjugate(Matrix::identity(&q, 2)));
        let half = q.inv(&q.from_i64(2)).unwrap();
        let y = tuple(vec![e(&q, 0, 1).scale(&q.from_i64(2)), e(&q, 1, 0).scale(&half)]);
        let expected = Matrix::diag(&q, &[q.one(), half]);
        assert_eq!(conjugacy_linear(&x, &y).unwrap(), Verdict::Conjugate(expected));
        let y = tuple(vec![e(&q, 0, 1), e(&q, 1, 0).scale(&q.from_i64(2))]);
        assert_eq!(conjugacy_linear(&x, &y).unwrap(), Verdict::NotConjugate(Witness::IntertwinerRankDefect));
        let not_u = tuple(vec![e(&q, 0, 0), e(&q, 0, 1)]);
        assert_eq!(conjugacy_linear(&not_u, &x), Err(Error::NotInU));
    }

    #[test]
    fn splitting_examples() {
        let q = Field::rationals();
        let x = tuple(vec![Matrix::diag(&q, &[q.one(), q.from_i64(2)]), &e(&q, 0, 1) + &e(&q, 1, 0)]);
        let z = find_splitting_element(&x, SplitBudget::default(), 0).unwrap().unwrap();
        assert_eq!(z.to_string(), "X1");
        for f in [Field::prime(5).unwrap(), q] {
            let x = tuple(vec![e(&f, 0, 1), e(&f, 1, 0)]);
            let budget = SplitBudget { max_word_len: 1, tries: 0 };
            assert!(find_splitting_element(&x, budget, 0).unwrap().is_none());
            let z = find_splitting_element(&x, SplitBudget::default(), 0).unwrap().unwrap();
            assert!(z.eval(&x).unwrap().charpoly().to_poly().is_squarefree_split());
            let sum = crate::algebra::parse_nc(&f, "X1 + X2").unwrap();
            assert_eq!(sum.eval(&x).unwrap().charpoly().to_poly(), crate::poly::UniPoly::from_i64(&f, &[-1, 0, 1]));
        }
    }

    #[test]
    fn reconstruct_identity_case_is_scalar() {
        let q = Field::rationals();
        let x = tuple(vec![Matrix::diag(&q, &[q.one(), q.from_i64(2)]), &e(&q, 0, 1) + &e(&q, 1, 0)]);
        let v = conjugacy_reconstruct(&x, &x, &ReconstructOptions::default()).unwrap();
        assert_eq!(v, Verdict::Conjugate(Matrix::identity(&q, 2)));
    }

    #[test]
    fn reconstruct_round_trip() {
        let f = Field::prime(11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let x = MatTuple::random_in_u(&f, 2, 2, &mut rng);
            let g0 = Matrix::random_invertible(&f, 2, &mut rng);
            let y = x.conjugate(&g0).unwrap();
            let opts = ReconstructOptions { seed: rng.gen(), ..Default::default() };
            match conjugacy_reconstruct(&x, &y, &opts).unwrap() {
                Verdict::Conjugate(g) => {
                    assert_eq!(x.conjugate(&g).unwrap(), y);
                    let ratio = &g * &g0.inverse().unwrap();
                    assert!(ratio.as_scalar().is_some());
                }
                Verdict::Inconclusive(_) => {}
                other => panic!("wrong verdict {other}"),
            }
        }
    }

    #[test]
    fn reconstruct_rejects_separated_pairs() {
        let q = Field::rationals();
        let x = tuple(vec![e(&q, 0, 1), e(&q, 1, 0)]);
        let y = tuple(vec![e(&q, 0, 1), e(&q, 1, 0).scale(&q.from_i64(2))]);
        let v = conjugacy_reconstruct(&x, &y, &ReconstructOptions::default()).unwrap();
        assert_eq!(v, Verdict::NotConjugate(Witness::Invariant { s: 1, word: Word::from_generators(&[1, 2]) }));
    }

    #[test]
    fn gf2_without_split_element_is_inconclusive() {
        let f = Field::prime(2).unwrap();
        let c = Matrix::from_i64(&f, &[&[0, 1], &[1, 1]]);
        let x = tuple(vec![c, e(&f, 0, 1)]);
        assert!(in_u(&x).verdict);
        let opts = ReconstructOptions { budget: SplitBudget { max_word_len: 1, tries: 0 }, ..Default::default() };
        let v = conjugacy_reconstruct(&x, &x, &opts).unwrap();
        assert_eq!(v, Verdict::Inconclusive(InconclusiveReason::NoSplitZ));
        assert!(conjugacy_linear(&x, &x).unwrap().is_conjugate());
    }

    #[test]
    fn algorithms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for p in [3u64, 5, 7, 11] {
            let f = Field::prime(p).unwrap();
            for n in [2, 3] {
                for _ in 0..125 {
                    let x = MatTuple::random_in_u(&f, n, 2, &mut rng);
                    let y = if rng.gen_bool(0.5) {
                        x.conjugate(&Matrix::random_invertible(&f, n, &mut rng)).unwrap()
                    } else {
                        MatTuple::random_in_u(&f, n, 2, &mut rng)
                    };
                    let lin = conjugacy_linear(&x, &y).unwrap();
                    let rec = conjugacy_reconstruct(&x, &y, &ReconstructOptions::default()).unwrap();
                    if !rec.is_inconclusive() {
                        assert_eq!(lin.is_conjugate(), rec.is_conjugate());
                    }
                    if let (Some(g), Some(h)) = (lin.witness_matrix(), rec.witness_matrix()) {
                        assert_eq!(g, h);
                    }
                }
            }
        }
    }

    #[test]
    fn verdict_is_well_defined_on_orbits() {
        let f = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let x = MatTuple::random_in_u(&f, 2, 2, &mut rng);
            let y = MatTuple::random_in_u(&f, 2, 2, &mut rng);
            let base = conjugacy_linear(&x, &y).unwrap().is_conjugate();
            let x2 = x.conjugate(&Matrix::random_invertible(&f, 2, &mut rng)).unwrap();
            let y2 = y.conjugate(&Matrix::random_invertible(&f, 2, &mut rng)).unwrap();
            assert_eq!(conjugacy_linear(&x2, &y2).unwrap().is_conjugate(), base);
        }
    }

    #[test]
    fn degenerate_target() {
        let q = Field::rationals();
        let x = tuple(vec![e(&q, 0, 1), e(&q, 1, 0)]);
        let y = tuple(vec![e(&q, 0, 1), Matrix::zeros(&q, 2, 2)]);
        assert_eq!(conjugacy_linear(&x, &y).unwrap(), Verdict::NotConjugate(Witness::IntertwinerRankDefect));
    }
}
