//! Invariants of tuples under simultaneous conjugation.
//!
//! The ring of invariant functions on `(M_n)^m` is generated, in every
//! characteristic, by the functions `x -> c_s(w(x))` for words `w` and
//! `1 <= s <= n`. A [`Fingerprint`] records all of them up to a word-length
//! bound; two tuples in the same orbit have equal fingerprints, and a
//! differing entry is a certificate that they are not conjugate.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::algebra::{enumerate_words, eval_prefix_closed, Word, DEFAULT_WORD_CAP};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;
use crate::tuple::MatTuple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FingerprintOptions {
    /// Keep only words that are the least rotation of their cyclic class.
    /// Valid because `c_s(uv) = c_s(vu)`.
    pub cyclic_dedup: bool,
}

/// Values `c_s(w(x))` for `1 <= s <= n` and `1 <= |w| <= max_len`, in word
/// order and, within a word, by `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    field: Field,
    n: usize,
    m: usize,
    max_len: usize,
    options: FingerprintOptions,
    words: Vec<Word>,
    values: Vec<Elem>,
}

/// Outcome of comparing two fingerprints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    SameFiber,
    Separated { s: usize, word: Word, x_value: Elem, y_value: Elem },
}

impl Separation {
    pub fn is_same_fiber(&self) -> bool {
        matches!(self, Separation::SameFiber)
    }
}

fn fingerprint_words(m: usize, max_len: usize, options: FingerprintOptions) -> Result<Vec<Word>> {
    let mut words = enumerate_words(m, max_len, DEFAULT_WORD_CAP)?;
    words.remove(0);
    if options.cyclic_dedup {
        words.retain(|w| w.min_rotation() == *w);
    }
    Ok(words)
}

/// The generator list `(s, w)`, `1 <= s <= n`, `1 <= |w| <= max_len`.
pub fn donkin_generators(m: usize, n: usize, max_len: usize, cap: usize) -> Result<Vec<(usize, Word)>> {
    assert!(max_len >= 1, "word length bound must be at least 1");
    let words = enumerate_words(m, max_len, cap)?;
    let count = (words.len() - 1) as u128 * n as u128;
    if count > cap as u128 {
        return Err(Error::BudgetExceeded { requested: count, cap });
    }
    Ok(words
        .into_iter()
        .skip(1)
        .flat_map(|w| (1..=n).map(move |s| (s, w.clone())))
        .collect())
}

pub fn fingerprint(x: &MatTuple, max_len: usize) -> Result<Fingerprint> {
    fingerprint_with(x, max_len, FingerprintOptions::default())
}

pub fn fingerprint_with(x: &MatTuple, max_len: usize, options: FingerprintOptions) -> Result<Fingerprint> {
    let all = enumerate_words(x.m(), max_len, DEFAULT_WORD_CAP)?;
    let mats = eval_prefix_closed(&all, x)?;
    let mut words = Vec::new();
    let mut values = Vec::new();
    for (w, a) in all.into_iter().zip(mats).skip(1) {
        if options.cyclic_dedup && w.min_rotation() != w {
            continue;
        }
        values.extend(a.charpoly().into_vec());
        words.push(w);
    }
    Ok(Fingerprint { field: x.field().clone(), n: x.n(), m: x.m(), max_len, options, words, values })
}

/// Fingerprints of many tuples, computed in parallel; output order matches
/// input order.
pub fn fingerprint_batch(xs: &[MatTuple], max_len: usize) -> Result<Vec<Fingerprint>> {
    xs.par_iter().map(|x| fingerprint(x, max_len)).collect()
}

impl Fingerprint {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entries `((s, w), value)` in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, &Word), &Elem)> {
        let n = self.n;
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| ((i % n + 1, &self.words[i / n]), v))
    }

    pub fn get(&self, s: usize, w: &Word) -> Option<&Elem> {
        if s == 0 || s > self.n {
            return None;
        }
        let idx = self.words.binary_search(w).ok()?;
        self.values.get(idx * self.n + s - 1)
    }

    /// First differing entry against another fingerprint of the same layout.
    pub fn compare(&self, other: &Fingerprint) -> Result<Separation> {
        if self.n != other.n || self.m != other.m || self.max_len != other.max_len || self.options != other.options {
            return Err(Error::ShapeMismatch("fingerprints with different layouts".into()));
        }
        for ((key, a), (_, b)) in self.entries().zip(other.entries()) {
            if a != b {
                return Ok(Separation::Separated {
                    s: key.0,
                    word: key.1.clone(),
                    x_value: a.clone(),
                    y_value: b.clone(),
                });
            }
        }
        Ok(Separation::SameFiber)
    }

    /// Canonical text table: a header line, then one `(s,word) value` line
    /// per entry.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "# field={} n={} m={} L={} cyclic={}\n",
            self.field, self.n, self.m, self.max_len, self.options.cyclic_dedup
        );
        for ((s, w), v) in self.entries() {
            writeln!(out, "({s},{w}) {v}").unwrap();
        }
        out
    }

    /// Inverse of [`Fingerprint::to_table`].
    pub fn from_table(text: &str) -> Result<Fingerprint> {
        let bad = |msg: &str| Error::Parse(format!("fingerprint table: {msg}"));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty input"))?;
        let header = header.strip_prefix("# ").ok_or_else(|| bad("missing header"))?;
        let mut field = None;
        let (mut n, mut m, mut max_len, mut cyclic) = (None, None, None, None);
        for kv in header.split_whitespace() {
            let (k, v) = kv.split_once('=').ok_or_else(|| bad("malformed header"))?;
            match k {
                "field" => field = Some(v.parse::<Field>()?),
                "n" => n = v.parse::<usize>().ok(),
                "m" => m = v.parse::<usize>().ok(),
                "L" => max_len = v.parse::<usize>().ok(),
                "cyclic" => cyclic = v.parse::<bool>().ok(),
                _ => return Err(bad("unknown header key")),
            }
        }
        let (Some(field), Some(n), Some(m), Some(max_len), Some(cyclic)) = (field, n, m, max_len, cyclic) else {
            return Err(bad("incomplete header"));
        };
        let options = FingerprintOptions { cyclic_dedup: cyclic };
        let words = fingerprint_words(m, max_len, options)?;
        let mut values = Vec::with_capacity(words.len() * n);
        for (idx, line) in lines.enumerate() {
            let (key, value) = line.split_once(' ').ok_or_else(|| bad("malformed entry"))?;
            let w = &words.get(idx / n).ok_or_else(|| bad("too many entries"))?;
            let expected = format!("({},{})", idx % n + 1, w);
            if key != expected {
                return Err(bad(&format!("expected key {expected}, found {key}")));
            }
            values.push(field.parse_elem(value)?);
        }
        if values.len() != words.len() * n {
            return Err(bad("too few entries"));
        }
        Ok(Fingerprint { field, n, m, max_len, options, words, values })
    }
}

/// Compares the invariants of `x` and `y` word by word, stopping at the
/// first difference.
pub fn separate(x: &MatTuple, y: &MatTuple, max_len: usize) -> Result<Separation> {
    if x.n() != y.n() || x.m() != y.m() {
        return Err(Error::ShapeMismatch("tuples of different shape".into()));
    }
    if x.field() != y.field() {
        return Err(Error::FieldMismatch);
    }
    let words = enumerate_words(x.m(), max_len, DEFAULT_WORD_CAP)?;
    let mut level_x: Vec<Matrix> = vec![Matrix::identity(x.field(), x.n())];
    let mut level_y = level_x.clone();
    let mut offset = 1;
    for _ in 0..max_len {
        let mut next_x = Vec::with_capacity(level_x.len() * x.m());
        let mut next_y = Vec::with_capacity(level_y.len() * x.m());
        for (ax, ay) in level_x.iter().zip(&level_y) {
            for (xi, yi) in x.mats().iter().zip(y.mats()) {
                next_x.push(ax * xi);
                next_y.push(ay * yi);
            }
        }
        for (k, (ax, ay)) in next_x.iter().zip(&next_y).enumerate() {
            // A rotation of a word has the same invariants as the word, and
            // the least rotation comes first in the order.
            let w = &words[offset + k];
            if w.min_rotation() != *w {
                continue;
            }
            let cx = ax.charpoly();
            let cy = ay.charpoly();
            if cx != cy {
                let (s, (vx, vy)) = cx
                    .as_slice()
                    .iter()
                    .zip(cy.as_slice())
                    .enumerate()
                    .find(|(_, (a, b))| a != b)
                    .unwrap();
                return Ok(Separation::Separated {
                    s: s + 1,
                    word: w.clone(),
                    x_value: vx.clone(),
                    y_value: vy.clone(),
                });
            }
        }
        offset += next_x.len();
        level_x = next_x;
        level_y = next_y;
    }
    Ok(Separation::SameFiber)
}

/// The invariant `tr([a, b]^2)` of a pair of `2 x 2` matrices, which in
/// characteristic not 2 vanishes exactly when `a, b` fail to generate `M_2`.
pub fn u22_certificate(a: &Matrix, b: &Matrix) -> Result<Elem> {
    for mat in [a, b] {
        if !mat.is_square() || mat.rows() != 2 {
            return Err(Error::WrongDimension { expected: 2, got: mat.rows() });
        }
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.field().characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    let comm = &(a * b) - &(b * a);
    Ok((&comm * &comm).trace())
}
