//! Univariate polynomials over a [`Field`], with root finding in the base
//! field.
//!
//! Over finite fields roots are found by exhaustive evaluation. Over `Q` the
//! polynomial is rescaled to a monic integer polynomial whose rational roots
//! are integers; those are isolated by Sturm-sequence bisection on integer
//! intervals, which needs no factorisation of the coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// A polynomial `c_0 + c_1 t + ... + c_d t^d` with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl UniPoly {
    /// Builds a polynomial from coefficients, lowest degree first.
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> Result<Self> {
        if coeffs.iter().any(|c| !field.contains(c)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::from_raw(field, coeffs))
    }

    pub(crate) fn from_raw(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field: field.clone(), coeffs }
    }

    pub fn from_i64(field: &Field, coeffs: &[i64]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|c| field.from_i64(*c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        UniPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::from_raw(field, vec![c])
    }

    /// `t - root`
    pub fn linear(field: &Field, root: &Elem) -> Self {
        Self::from_raw(field, vec![field.neg(root), field.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = f.zero();
        let coeffs = (0..len)
            .map(|i| f.add(self.coeffs.get(i).unwrap_or(&zero), other.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        Self::from_raw(f, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::from_raw(&self.field, self.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::from_raw(f, out)
    }

    pub fn scale(&self, c: &Elem) -> Self {
        Self::from_raw(&self.field, self.coeffs.iter().map(|a| self.field.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lead) => self.scale(&self.field.inv(lead).expect("nonzero leading coefficient")),
        }
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(lead)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = f.mul(&rem[top], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = f.sub(&rem[idx], &f.mul(&c, d));
            }
            quot[top - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_raw(f, quot), Self::from_raw(f, rem)))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
            .collect();
        Self::from_raw(f, coeffs)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divides out `t - root` as often as it divides, returning the count.
    fn strip_root(&mut self, root: &Elem) -> usize {
        let lin = Self::linear(&self.field, root);
        let mut mult = 0;
        while !self.is_zero() && self.field.is_zero(&self.eval(root)) {
            let (q, _) = self.div_rem(&lin).expect("linear divisor");
            *self = q;
            mult += 1;
        }
        mult
    }

    /// All roots lying in the base field, with multiplicities, in increasing
    /// order (by value over `Q`, by enumeration order over finite fields).
    pub fn roots_in_field(&self) -> Vec<(Elem, usize)> {
        if self.is_zero() {
            return Vec::new();
        }
        match self.field.elements() {
            Some(elements) => {
                let mut rest = self.clone();
                let mut roots = Vec::new();
                for a in elements {
                    if rest.degree() == Some(0) {
                        break;
                    }
                    let mult = rest.strip_root(&a);
                    if mult > 0 {
                        roots.push((a, mult));
                    }
                }
                roots
            }
            None => self.rational_roots(),
        }
    }

    /// Whether the polynomial has `deg` distinct roots in the base field.
    pub fn is_squarefree_split(&self) -> bool {
        let Some(deg) = self.degree() else { return false };
        if deg == 0 {
            return true;
        }
        if !self.field.is_finite() {
            if self.gcd(&self.derivative()).degree() != Some(0) {
                return false;
            }
            if [101u64, 103, 107, 109, 113].iter().any(|&p| self.splits_mod(p) == Some(false)) {
                return false;
            }
        }
        let roots = self.roots_in_field();
        roots.len() == deg && roots.iter().all(|(_, m)| *m == 1)
    }

    /// Whether the reduction mod `p` of the monic rational polynomial is a
    /// product of linear factors; `None` when a coefficient is not
    /// `p`-integral. A monic polynomial with `p`-integral coefficients has
    /// `p`-integral roots, so splitting over `Q` forces splitting mod `p`.
    fn splits_mod(&self, p: u64) -> Option<bool> {
        let fp = Field::prime(p).expect("prime");
        let coeffs = self
            .monic()
            .coeffs
            .iter()
            .map(|c| {
                let r = as_rational(c);
                fp.from_fraction(r.numer(), r.denom()).ok()
            })
            .collect::<Option<Vec<_>>>()?;
        let reduced = Self::from_raw(&fp, coeffs);
        let found: usize = reduced.roots_in_field().iter().map(|(_, m)| m).sum();
        Some(Some(found) == reduced.degree())
    }

    fn rational_roots(&self) -> Vec<(Elem, usize)> {
        let f = &self.field;
        let mut roots = Vec::new();
        let mut rest = self.monic();
        let zero = f.zero();
        let zero_mult = rest.strip_root(&zero);
        let deg = rest.degree().unwrap();
        if deg == 0 {
            if zero_mult > 0 {
                roots.push((zero, zero_mult));
            }
            return roots;
        }
        let coeffs: Vec<BigRational> = rest.coeffs.iter().map(as_rational).collect();
        // g(y) = D^deg * rest(y / D) is monic with integer coefficients.
        let scale = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut g = Vec::with_capacity(deg + 1);
        let mut power = BigInt::one();
        for c in coeffs.iter().rev() {
            g.push((c * BigRational::from_integer(power.clone())).to_integer());
            power *= &scale;
        }
        g.reverse();
        let g = Self::from_raw(f, g.into_iter().map(|c| Elem::Rational(BigRational::from_integer(c))).collect());
        let squarefree = g.div_rem(&g.gcd(&g.derivative())).unwrap().0.monic();
        let mut integer_roots = Vec::new();
        sturm_integer_roots(&squarefree, &mut integer_roots);
        if zero_mult > 0 {
            integer_roots.push(BigInt::zero());
        }
        integer_roots.sort();
        integer_roots.dedup();
        let mut remaining = self.clone();
        for r in integer_roots {
            let x = Elem::Rational(BigRational::new(r, scale.clone()));
            let mult = remaining.strip_root(&x);
            if mult > 0 {
                roots.push((x, mult));
            }
        }
        roots
    }
}

fn as_rational(e: &Elem) -> BigRational {
    match e {
        Elem::Rational(r) => r.clone(),
        _ => unreachable!("rational root search over a finite field"),
    }
}

fn sign_changes(seq: &[UniPoly], x: &BigRational) -> usize {
    let mut changes = 0;
    let mut prev: Option<bool> = None;
    for p in seq {
        let v = as_rational(&p.eval(&Elem::Rational(x.clone())));
        if v.is_zero() {
            continue;
        }
        let neg = v.is_negative();
        if prev.is_some_and(|p| p != neg) {
            changes += 1;
        }
        prev = Some(neg);
    }
    changes
}

/// Integer roots of a squarefree monic rational polynomial.
fn sturm_integer_roots(p: &UniPoly, out: &mut Vec<BigInt>) {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).unwrap();
        seq.push(r.neg());
    }
    seq.pop();
    // Cauchy bound for a monic polynomial.
    let bound = p.coeffs[..p.coeffs.len() - 1]
        .iter()
        .map(|c| as_rational(c).abs().ceil().to_integer())
        .max()
        .unwrap_or_default()
        + BigInt::one();
    let lo = -bound.clone() - BigInt::one();
    let hi = bound;
    let v_lo = sign_changes(&seq, &BigRational::from_integer(lo.clone()));
    let v_hi = sign_changes(&seq, &BigRational::from_integer(hi.clone()));
    bisect(p, &seq, lo, v_lo, hi, v_hi, out);
}

/// Collects integer roots in `(lo, hi]`, which holds `v_lo - v_hi` real roots.
fn bisect(p: &UniPoly, seq: &[UniPoly], lo: BigInt, v_lo: usize, hi: BigInt, v_hi: usize, out: &mut Vec<BigInt>) {
    if v_lo <= v_hi {
        return;
    }
    if &hi - &lo == BigInt::one() {
        let x = Elem::Rational(BigRational::from_integer(hi.clone()));
        if p.field.is_zero(&p.eval(&x)) {
            out.push(hi);
        }
        return;
    }
    let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
    let v_mid = sign_changes(seq, &BigRational::from_integer(mid.clone()));
    bisect(p, seq, lo, v_lo, mid.clone(), v_mid, out);
    bisect(p, seq, mid, v_mid, hi, v_hi, out);
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Elem {
        Elem::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn rational_root_examples() {
        let qf = Field::rationals();
        let f = UniPoly::from_i64(&qf, &[2, -3, 1]);
        assert_eq!(f.roots_in_field(), vec![(q(1, 1), 1), (q(2, 1), 1)]);
        assert!(f.is_squarefree_split());
        let g = UniPoly::from_i64(&qf, &[1, -2, 1]);
        assert_eq!(g.roots_in_field(), vec![(q(1, 1), 2)]);
        assert!(!g.is_squarefree_split());
        // (2t - 1)(3t + 2) t^2 (t - 5)^3
        let h = UniPoly::from_i64(&qf, &[-1, 2])
            .mul(&UniPoly::from_i64(&qf, &[2, 3]))
            .mul(&UniPoly::from_i64(&qf, &[0, 0, 1]))
            .mul(&UniPoly::from_i64(&qf, &[-125, 75, -15, 1]));
        assert_eq!(
            h.roots_in_field(),
            vec![(q(-2, 3), 1), (q(0, 1), 2), (q(1, 2), 1), (q(5, 1), 3)]
        );
        assert!(UniPoly::from_i64(&qf, &[-2, 0, 1]).roots_in_field().is_empty());
        assert!(UniPoly::from_i64(&qf, &[1, 0, 1]).roots_in_field().is_empty());
    }

    #[test]
    fn large_rational_roots() {
        let qf = Field::rationals();
        let r1 = q(1_000_000_007, 3);
        let r2 = q(-999_999_937, 1);
        let f = UniPoly::linear(&qf, &r1)
            .mul(&UniPoly::linear(&qf, &r2))
            .mul(&UniPoly::from_i64(&qf, &[1, 1, 1]));
        assert_eq!(f.roots_in_field(), vec![(r2, 1), (r1, 1)]);
    }

    #[test]
    fn finite_field_root_examples() {
        let f3 = Field::prime(3).unwrap();
        let f = UniPoly::from_i64(&f3, &[1, 0, 1]);
        assert!(f.roots_in_field().is_empty());
        assert!(!f.is_squarefree_split());
        let f5 = Field::prime(5).unwrap();
        assert_eq!(UniPoly::from_i64(&f5, &[0, 0, 1]).roots_in_field(), vec![(Elem::Residue(0), 2)]);
    }

    #[test]
    fn roots_are_exactly_the_zeros_over_small_prime_fields() {
        for p in [2u64, 3, 5, 7, 11] {
            let field = Field::prime(p).unwrap();
            let els = field.elements().unwrap();
            // all polynomials of degree <= 2, and a deterministic sample of degree 3 and 4
            let mut polys = Vec::new();
            for idx in 0..p.pow(3) {
                let c: Vec<i64> = (0..3).map(|i| ((idx / p.pow(i)) % p) as i64).collect();
                polys.push(UniPoly::from_i64(&field, &c));
            }
            for idx in 0..400u64 {
                let deg = 3 + (idx % 2) as usize;
                let c: Vec<i64> = (0..=deg).map(|i| ((idx * 31 + i as u64 * 17 + idx * idx) % p) as i64).collect();
                let mut c = c;
                c[deg] = 1;
                polys.push(UniPoly::from_i64(&field, &c));
            }
            for f in polys.iter().filter(|f| !f.is_zero()) {
                let roots = f.roots_in_field();
                let zeros: Vec<&Elem> = els.iter().filter(|a| field.is_zero(&f.eval(a))).collect();
                let found: Vec<&Elem> = roots.iter().map(|(r, _)| r).collect();
                assert_eq!(found, zeros, "p={p} f={f}");
                let total: usize = roots.iter().map(|(_, m)| m).sum();
                assert!(total <= f.degree().unwrap());
            }
        }
    }

    #[test]
    fn division_identity() {
        let f7 = Field::prime(7).unwrap();
        let a = UniPoly::from_i64(&f7, &[3, 1, 4, 1, 5]);
        let b = UniPoly::from_i64(&f7, &[2, 6, 5]);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert_eq!(quot.mul(&b).add(&rem), a);
        assert!(rem.degree() < b.degree());
        assert_eq!(a.div_rem(&UniPoly::zero(&f7)), Err(Error::DivisionByZero));
    }
}
