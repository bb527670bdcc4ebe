use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::word::Word;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;
use crate::tuple::MatTuple;

/// An element of the free algebra `k{X_1, ..., X_m}`: a finite linear
/// combination of words. Zero coefficients are never stored, so equality is
/// syntactic equality of canonical forms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NcPoly {
    field: Field,
    terms: BTreeMap<Word, Elem>,
}

impl NcPoly {
    pub fn zero(field: &Field) -> Self {
        NcPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::word(field, Word::empty())
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::term(field, Word::empty(), c)
    }

    pub fn word(field: &Field, w: Word) -> Self {
        Self::term(field, w, field.one())
    }

    /// `X_{i+1}` for zero-based `i`.
    pub fn generator(field: &Field, i: usize) -> Self {
        Self::word(field, Word::generator(i))
    }

    pub fn term(field: &Field, w: Word, c: Elem) -> Self {
        let mut p = Self::zero(field);
        p.add_term(w, c);
        p
    }

    /// Builds `sum c_j w_j`, combining repeated words.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (Word, Elem)>) -> Self {
        let mut p = Self::zero(field);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    /// A random polynomial with up to `terms` terms of degree at most
    /// `max_deg` in `m` generators.
    pub fn random<R: rand::Rng + ?Sized>(field: &Field, m: usize, max_deg: usize, terms: usize, rng: &mut R) -> Self {
        let mut p = Self::zero(field);
        for _ in 0..terms {
            let len = rng.gen_range(0..=max_deg);
            let w = Word::from_letters((0..len).map(|_| rng.gen_range(0..m)));
            p.add_term(w, field.random(rng));
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Elem) {
        let f = &self.field;
        let sum = match self.terms.remove(&w) {
            Some(old) => f.add(&old, &c),
            None => c,
        };
        if !f.is_zero(&sum) {
            self.terms.insert(w, sum);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&Word::empty()).is_some_and(|c| self.field.is_one(c))
    }

    /// The coefficient of the empty word when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Elem> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    pub fn generators_used(&self) -> usize {
        self.terms.keys().map(|w| w.generators_used()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), self.field.neg(c))).collect();
        NcPoly { field: self.field.clone(), terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Elem) -> Self {
        Self::from_terms(&self.field, self.terms.iter().map(|(w, a)| (w.clone(), self.field.mul(a, c))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), f.mul(a, b));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.field), |acc, _| acc.mul(self))
    }

    /// `p(x_1, ..., x_m)`; the empty word evaluates to the identity.
    pub fn eval(&self, x: &MatTuple) -> Result<Matrix> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let mut acc = Matrix::zeros(f, x.n(), x.n());
        for (w, c) in &self.terms {
            acc = &acc + &w.eval(x)?.scale(c);
        }
        Ok(acc)
    }

    pub(crate) fn fmt_terms(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative_rational();
            let mag = if negative { self.field.neg(c) } else { c.clone() };
            match (idx, negative) {
                (0, true) => write!(out, "-")?,
                (0, false) => {}
                (_, true) => write!(out, " - ")?,
                (_, false) => write!(out, " + ")?,
            }
            if w.is_empty() {
                write!(out, "{mag}")?;
            } else if self.field.is_one(&mag) {
                write!(out, "{w}")?;
            } else {
                write!(out, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}
