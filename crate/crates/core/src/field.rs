//! Exact fields: the rationals, prime fields `GF(p)` and small extensions
//! `GF(p^k) = GF(p)[x]/(f)`.
//!
//! A [`Field`] is a cheap, clonable context. Elements ([`Elem`]) are plain
//! values in canonical form and carry no back-reference to their field; every
//! operation goes through the context. The checked entry point
//! [`Field::arith`] rejects elements that do not belong to the context.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported characteristic; keeps products of residues inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldKind {
    Rationals,
    Prime { p: u64 },
    /// `modulus` is monic, lowest degree first, of length `k + 1`.
    Extension { p: u64, modulus: Vec<u64> },
}

/// A validated exact field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Field(Arc<FieldKind>);

/// A field element in canonical form.
///
/// Rationals are reduced with positive denominator, residues lie in `[0, p)`
/// and extension residues are stored as exactly `k` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Rational(BigRational),
    Residue(u64),
    ExtResidue(Vec<u64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn rationals() -> Self {
        Field(Arc::new(FieldKind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::InvalidDescriptor(format!("characteristic {p} exceeds {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::CompositeModulus(p));
        }
        Ok(Field(Arc::new(FieldKind::Prime { p })))
    }

    /// `GF(p)[x]/(modulus)`, with `modulus` given lowest degree first.
    ///
    /// The modulus must be monic of degree at least 1 and irreducible; the
    /// latter is checked by trial division by every monic polynomial of
    /// degree at most `k / 2`.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Self> {
        let base = Field::prime(p)?;
        let mut modulus: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        while modulus.len() > 1 && *modulus.last().unwrap() == 0 {
            modulus.pop();
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidDescriptor("extension modulus must have degree >= 1".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidDescriptor("extension modulus must be monic".into()));
        }
        let k = modulus.len() - 1;
        if k == 1 {
            // A linear modulus gives GF(p) back; keep the prime-field representation.
            return Ok(base);
        }
        if !fp_poly_irreducible(p, &modulus) {
            return Err(Error::ReducibleModulus { p });
        }
        Ok(Field(Arc::new(FieldKind::Extension { p, modulus })))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rationals => 0,
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => *p,
        }
    }

    /// Extension degree over the prime field (1 for `Q` and `GF(p)`).
    pub fn degree(&self) -> usize {
        match &*self.0 {
            FieldKind::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    /// Number of elements, or `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match &*self.0 {
            FieldKind::Rationals => None,
            FieldKind::Prime { p } => Some(*p),
            FieldKind::Extension { p, modulus } => Some(p.pow((modulus.len() - 1) as u32)),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(&*self.0, FieldKind::Rationals)
    }

    pub fn zero(&self) -> Elem {
        self.from_i64(0)
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match &*self.0 {
            FieldKind::Rationals => Elem::Rational(BigRational::from_integer(v.into())),
            FieldKind::Prime { p } => Elem::Residue(v.rem_euclid(*p as i64) as u64),
            FieldKind::Extension { p, modulus } => {
                let mut c = vec![0; modulus.len() - 1];
                c[0] = v.rem_euclid(*p as i64) as u64;
                Elem::ExtResidue(c)
            }
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Elem {
        match &*self.0 {
            FieldKind::Rationals => Elem::Rational(BigRational::from_integer(v.clone())),
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => {
                let r = v.mod_floor(&BigInt::from(*p)).to_i64().unwrap();
                self.from_i64(r)
            }
        }
    }

    /// Rational `num / den`. In positive characteristic the denominator must
    /// be invertible.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Elem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &*self.0 {
            FieldKind::Rationals => Ok(Elem::Rational(BigRational::new(num.clone(), den.clone()))),
            _ => self.div(&self.from_bigint(num), &self.from_bigint(den)),
        }
    }

    /// Extension element from coefficients `c_0 + c_1 x + ...`; in a prime
    /// field only a single coefficient is accepted.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<Elem> {
        match &*self.0 {
            FieldKind::Rationals => Err(Error::FieldMismatch),
            FieldKind::Prime { .. } => match coeffs {
                [] => Ok(self.zero()),
                [c] => Ok(self.from_i64(*c)),
                _ => Err(Error::FieldMismatch),
            },
            FieldKind::Extension { p, modulus } => {
                let k = modulus.len() - 1;
                if coeffs.len() > k {
                    return Err(Error::FieldMismatch);
                }
                let mut c = vec![0; k];
                for (dst, src) in c.iter_mut().zip(coeffs) {
                    *dst = src.rem_euclid(*p as i64) as u64;
                }
                Ok(Elem::ExtResidue(c))
            }
        }
    }

    /// The generator `x` of an extension field.
    pub fn generator(&self) -> Option<Elem> {
        match &*self.0 {
            FieldKind::Extension { .. } => self.from_coeffs(&[0, 1]).ok(),
            _ => None,
        }
    }

    /// Whether `a` is a canonical element of this field.
    pub fn contains(&self, a: &Elem) -> bool {
        match (&*self.0, a) {
            (FieldKind::Rationals, Elem::Rational(_)) => true,
            (FieldKind::Prime { p }, Elem::Residue(r)) => r < p,
            (FieldKind::Extension { p, modulus }, Elem::ExtResidue(c)) => {
                c.len() == modulus.len() - 1 && c.iter().all(|x| x < p)
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rational(r) => r.is_zero(),
            Elem::Residue(r) => *r == 0,
            Elem::ExtResidue(c) => c.iter().all(|x| *x == 0),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (_, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x + y),
            (FieldKind::Prime { p }, Elem::Residue(x), Elem::Residue(y)) => Elem::Residue((x + y) % p),
            (FieldKind::Extension { p, .. }, Elem::ExtResidue(x), Elem::ExtResidue(y)) => {
                Elem::ExtResidue(x.iter().zip(y).map(|(u, v)| (u + v) % p).collect())
            }
            _ => panic!("field element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (_, Elem::Rational(x)) => Elem::Rational(-x),
            (FieldKind::Prime { p }, Elem::Residue(x)) => Elem::Residue((p - x) % p),
            (FieldKind::Extension { p, .. }, Elem::ExtResidue(x)) => {
                Elem::ExtResidue(x.iter().map(|u| (p - u) % p).collect())
            }
            _ => panic!("field element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x - y),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (_, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x * y),
            (FieldKind::Prime { p }, Elem::Residue(x), Elem::Residue(y)) => Elem::Residue(x * y % p),
            (FieldKind::Extension { p, modulus }, Elem::ExtResidue(x), Elem::ExtResidue(y)) => {
                Elem::ExtResidue(ext_mul(*p, modulus, x, y))
            }
            _ => panic!("field element does not belong to {self}"),
        }
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&*self.0, a) {
            (_, Elem::Rational(x)) => Elem::Rational(x.recip()),
            (FieldKind::Prime { p }, Elem::Residue(x)) => Elem::Residue(inv_mod(*x, *p)),
            _ => self.pow(a, self.order().unwrap() - 2),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Checked binary arithmetic: both operands must belong to this field.
    pub fn arith(&self, a: &Elem, b: &Elem, op: ArithOp) -> Result<Elem> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::FieldMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    /// `a^p`; an automorphism in positive characteristic.
    pub fn frobenius(&self, a: &Elem) -> Result<Elem> {
        match self.characteristic() {
            0 => Err(Error::CharZero),
            p => Ok(self.pow(a, p)),
        }
    }

    /// Every element of a finite field, in a fixed order starting with 0, 1.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match &*self.0 {
            FieldKind::Rationals => None,
            FieldKind::Prime { p } => Some((0..*p).map(Elem::Residue).collect()),
            FieldKind::Extension { p, modulus } => {
                let k = modulus.len() - 1;
                let q = p.pow(k as u32);
                Some(
                    (0..q)
                        .map(|mut idx| {
                            let mut c = vec![0; k];
                            for slot in c.iter_mut() {
                                *slot = idx % p;
                                idx /= p;
                            }
                            Elem::ExtResidue(c)
                        })
                        .collect(),
                )
            }
        }
    }

    /// A random element: uniform for finite fields, and for `Q` a fraction
    /// with numerator in `[-5, 5]` and denominator in `[1, 3]`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &*self.0 {
            FieldKind::Rationals => {
                let num: i64 = rng.gen_range(-5..=5);
                let den: i64 = rng.gen_range(1..=3);
                Elem::Rational(BigRational::new(num.into(), den.into()))
            }
            FieldKind::Prime { p } => Elem::Residue(rng.gen_range(0..*p)),
            FieldKind::Extension { p, modulus } => {
                Elem::ExtResidue((0..modulus.len() - 1).map(|_| rng.gen_range(0..*p)).collect())
            }
        }
    }

    /// A random nonzero element.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let a = self.random(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }

    /// Parses an element literal: `a`, `a/b` or, in extensions, a bracketed
    /// coefficient list `[c0,c1,...]`.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs = inner
                .split(',')
                .map(|c| c.trim())
                .filter(|c| !c.is_empty())
                .map(|c| c.parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient `{c}`"))))
                .collect::<Result<Vec<_>>>()?;
            return self.from_coeffs(&coeffs);
        }
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad field literal `{s}`")))
        };
        match s.split_once('/') {
            Some((n, d)) => self.from_fraction(&parse_int(n)?, &parse_int(d)?),
            None => Ok(self.from_bigint(&parse_int(s)?)),
        }
    }

    /// Canonical text form, inverse to [`Field::parse_elem`].
    pub fn format_elem(&self, a: &Elem) -> String {
        a.to_string()
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Elem::Residue(r) => write!(f, "{r}"),
            Elem::ExtResidue(c) => {
                write!(f, "[")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl Elem {
    /// Whether the element is negative; only meaningful over `Q`.
    pub(crate) fn is_negative_rational(&self) -> bool {
        matches!(self, Elem::Rational(r) if r.is_negative())
    }
}

/// Field descriptors: `Q`, `F<p>` and `F<p>^<k>:<c0>,<c1>,...,<ck>`.
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime { p } => write!(f, "F{p}"),
            FieldKind::Extension { p, modulus } => {
                write!(f, "F{p}^{}:", modulus.len() - 1)?;
                let parts: Vec<String> = modulus.iter().map(|c| c.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidDescriptor(s.to_string());
        if s == "Q" {
            return Ok(Field::rationals());
        }
        let rest = s.strip_prefix('F').ok_or_else(bad)?;
        match rest.split_once('^') {
            None => Field::prime(rest.parse().map_err(|_| bad())?),
            Some((p, ext)) => {
                let p: u64 = p.parse().map_err(|_| bad())?;
                let (k, coeffs) = ext.split_once(':').ok_or_else(bad)?;
                let k: usize = k.parse().map_err(|_| bad())?;
                let modulus = coeffs
                    .split(',')
                    .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                if modulus.len() != k + 1 {
                    return Err(Error::InvalidDescriptor(format!(
                        "{s}: expected {} modulus coefficients",
                        k + 1
                    )));
                }
                Field::extension(p, &modulus)
            }
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u64
}

fn ext_mul(p: u64, modulus: &[u64], x: &[u64], y: &[u64]) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, a) in x.iter().enumerate() {
        if *a == 0 {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + a * b) % p;
        }
    }
    // modulus is monic: x^k = -(c_0 + ... + c_{k-1} x^{k-1})
    for top in (k..prod.len()).rev() {
        let lead = prod[top];
        if lead == 0 {
            continue;
        }
        prod[top] = 0;
        for (i, c) in modulus[..k].iter().enumerate() {
            let idx = top - k + i;
            prod[idx] = (prod[idx] + (p - lead) * c) % p;
        }
    }
    prod.truncate(k);
    prod
}

/// Remainder of `a` modulo the monic `b` over GF(p); both lowest degree first.
fn fp_poly_rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * c % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn fp_poly_irreducible(p: u64, f: &[u64]) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        // every monic polynomial of degree d
        for idx in 0..p.pow(d as u32) {
            let mut g = vec![0u64; d + 1];
            let mut rest = idx;
            for slot in g.iter_mut().take(d) {
                *slot = rest % p;
                rest /= p;
            }
            g[d] = 1;
            if fp_poly_rem(p, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}
