use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::ncpoly::NcPoly;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;
use crate::tuple::MatTuple;

/// A central symbol `c_s(q)`: the `s`-th characteristic coefficient of `q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CentralSym {
    pub s: usize,
    pub arg: TracePoly,
}

/// A commutative monomial in central symbols, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CentralMono(Vec<CentralSym>);

impl CentralMono {
    pub fn one() -> Self {
        CentralMono(Vec::new())
    }

    pub fn symbols(&self) -> &[CentralSym] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut syms = self.0.clone();
        syms.extend(other.0.iter().cloned());
        syms.sort();
        CentralMono(syms)
    }
}

/// An element of the trace ring: `sum_j mono_j * p_j` where each `mono_j`
/// is a product of central symbols `c_s(q)` (with `q` again a trace
/// polynomial) and each `p_j` is a noncommutative polynomial.
///
/// Terms are kept in a sorted map with no zero parts, so equal canonical
/// forms compare equal. Nested symbols are evaluated, never rewritten.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TracePoly {
    field: Field,
    terms: BTreeMap<CentralMono, NcPoly>,
}

impl From<NcPoly> for TracePoly {
    fn from(p: NcPoly) -> Self {
        let mut t = TracePoly::zero(p.field());
        t.add_term(CentralMono::one(), p);
        t
    }
}

impl TracePoly {
    pub fn zero(field: &Field) -> Self {
        TracePoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &Field) -> Self {
        NcPoly::one(field).into()
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        NcPoly::constant(field, c).into()
    }

    pub fn generator(field: &Field, i: usize) -> Self {
        NcPoly::generator(field, i).into()
    }

    /// The central element `c_s(arg)`.
    pub fn central(s: usize, arg: TracePoly) -> Self {
        let field = arg.field.clone();
        let mut t = TracePoly::zero(&field);
        t.add_term(CentralMono(vec![CentralSym { s, arg }]), NcPoly::one(&field));
        t
    }

    /// The trace `c_1(arg)`.
    pub fn trace(arg: TracePoly) -> Self {
        Self::central(1, arg)
    }

    /// A random trace polynomial in `m` generators whose central symbols
    /// `c_s`, `s <= max_s`, nest at most `depth` deep.
    pub fn random<R: rand::Rng + ?Sized>(field: &Field, m: usize, max_s: usize, depth: usize, rng: &mut R) -> Self {
        let mut t: TracePoly = NcPoly::random(field, m, 2, 2, rng).into();
        if depth == 0 {
            return t;
        }
        for _ in 0..rng.gen_range(1..=2) {
            let s = rng.gen_range(1..=max_s);
            let arg = TracePoly::random(field, m, max_s, depth - 1, rng);
            let coeff: TracePoly = NcPoly::random(field, m, 1, 2, rng).into();
            t = t.add(&TracePoly::central(s, arg).mul(&coeff));
        }
        t
    }

    fn add_term(&mut self, mono: CentralMono, p: NcPoly) {
        let sum = match self.terms.remove(&mono) {
            Some(old) => old.add(&p),
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(mono, sum);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CentralMono, &NcPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The underlying noncommutative polynomial when no central symbols occur.
    pub fn as_nc(&self) -> Option<NcPoly> {
        match self.terms.len() {
            0 => Some(NcPoly::zero(&self.field)),
            1 => self.terms.get(&CentralMono::one()).cloned(),
            _ => None,
        }
    }

    /// Maximum nesting of central symbols; 0 for plain polynomials.
    pub fn nesting_depth(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter())
            .map(|sym| 1 + sym.arg.nesting_depth())
            .max()
            .unwrap_or(0)
    }

    /// Number of generators referenced anywhere, including inside symbols.
    pub fn generators_used(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, p)| {
                let inner = m.0.iter().map(|s| s.arg.generators_used()).max().unwrap_or(0);
                inner.max(p.generators_used())
            })
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.add_term(m.clone(), p.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, p)| (m.clone(), p.neg())).collect();
        TracePoly { field: self.field.clone(), terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Elem) -> Self {
        let mut out = Self::zero(&self.field);
        for (m, p) in &self.terms {
            out.add_term(m.clone(), p.scale(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field);
        for (m1, p1) in &self.terms {
            for (m2, p2) in &other.terms {
                out.add_term(m1.mul(m2), p1.mul(p2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.field), |acc, _| acc.mul(self))
    }

    /// Evaluates at a tuple: `c_s(q)` becomes `c_s(q(x)) I`.
    pub fn eval(&self, x: &MatTuple) -> Result<Matrix> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let mut acc = Matrix::zeros(f, x.n(), x.n());
        for (mono, p) in &self.terms {
            let mut scalar = f.one();
            for sym in &mono.0 {
                let value = sym.arg.eval(x)?.cs(sym.s)?;
                scalar = f.mul(&scalar, &value);
                if f.is_zero(&scalar) {
                    break;
                }
            }
            if f.is_zero(&scalar) {
                continue;
            }
            acc = &acc + &p.eval(x)?.scale(&scalar);
        }
        Ok(acc)
    }

    /// The composite `self(images_1, ..., images_m)`: every generator `X_i`
    /// is replaced by `images[i]`, inside central symbols as well.
    pub fn substitute(&self, images: &[TracePoly]) -> Result<TracePoly> {
        let f = &self.field;
        let mut out = Self::zero(f);
        for (mono, p) in &self.terms {
            let mut central = Self::one(f);
            for sym in &mono.0 {
                central = central.mul(&Self::central(sym.s, sym.arg.substitute(images)?));
            }
            let mut matrix_part = Self::zero(f);
            for (w, c) in p.terms() {
                let mut term = Self::constant(f, c.clone());
                for l in w.letters() {
                    let image = images
                        .get(l)
                        .ok_or(Error::GeneratorOutOfRange { index: l + 1, m: images.len() })?;
                    term = term.mul(image);
                }
                matrix_part = matrix_part.add(&term);
            }
            out = out.add(&central.mul(&matrix_part));
        }
        Ok(out)
    }
}

impl NcPoly {
    /// Convenience for `TracePoly::central(s, self)`.
    pub fn cs(&self, s: usize) -> TracePoly {
        TracePoly::central(s, self.clone().into())
    }
}

impl fmt::Display for CentralSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}({})", self.s, self.arg)
    }
}

impl fmt::Display for TracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (mono, p)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if mono.is_one() {
                if self.terms.len() > 1 && p.num_terms() > 1 {
                    write!(f, "(")?;
                    p.fmt_terms(f)?;
                    write!(f, ")")?;
                } else {
                    p.fmt_terms(f)?;
                }
                continue;
            }
            let syms: Vec<String> = mono.0.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", syms.join("*"))?;
            if !p.is_one() {
                write!(f, "*(")?;
                p.fmt_terms(f)?;
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}
