//! Truncated power series `Σ_{i < prec} a_i x^i + O(x^prec)`.

use std::fmt;

use super::ring::Ring;
use crate::error::{Error, Result};
use crate::ffpoly::RatFunc;

/// A series known modulo `x^prec`, stored densely. `pi_grade` is the exponent
/// of the Carlitz period carried by every coefficient.
#[derive(Clone, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
    zero: C,
    pub pi_grade: i64,
}

/// Series in u with coefficients in K.
pub type USeries = Series<RatFunc>;

impl<C: Ring> Series<C> {
    /// Builds a series of precision `prec`; missing coefficients are zero and
    /// coefficients beyond `prec` are dropped.
    pub fn new(mut coeffs: Vec<C>, prec: usize, zero: &C) -> Self {
        coeffs.truncate(prec);
        coeffs.resize(prec, zero.zero_like());
        Series { coeffs, zero: zero.zero_like(), pi_grade: 0 }
    }

    pub fn zero(prec: usize, zero: &C) -> Self {
        Series::new(Vec::new(), prec, zero)
    }

    pub fn constant(c: C, prec: usize) -> Self {
        let z = c.zero_like();
        Series::new(vec![c], prec, &z)
    }

    /// `c·x^e + O(x^prec)`.
    pub fn monomial(c: C, e: usize, prec: usize) -> Self {
        let z = c.zero_like();
        let mut v = vec![z.clone(); e];
        v.push(c);
        Series::new(v, prec, &z)
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> &C {
        self.coeffs.get(i).unwrap_or(&self.zero)
    }
    pub fn zero_elem(&self) -> &C {
        &self.zero
    }

    /// Index of the first nonzero coefficient; `prec` if none is known.
    pub fn order(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let p = prec.min(self.prec());
        Series { coeffs: self.coeffs[..p].to_vec(), zero: self.zero.clone(), pi_grade: self.pi_grade }
    }

    pub fn map<D: Ring>(&self, zero: &D, f: impl Fn(&C) -> D) -> Series<D> {
        Series { coeffs: self.coeffs.iter().map(f).collect(), zero: zero.zero_like(), pi_grade: self.pi_grade }
    }

    fn zip(&self, o: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let p = self.prec().min(o.prec());
        let coeffs = (0..p).map(|i| f(&self.coeffs[i], &o.coeffs[i])).collect();
        Series { coeffs, zero: self.zero.clone(), pi_grade: self.pi_grade }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }
    pub fn neg(&self) -> Self {
        self.map(&self.zero, |a| a.neg())
    }
    pub fn scale(&self, c: &C) -> Self {
        self.map(&self.zero, |a| a.mul(c))
    }

    /// Product; precision is `min(prec_a + ord_b, prec_b + ord_a)`.
    pub fn mul(&self, o: &Self) -> Self {
        let (oa, ob) = (self.order(), o.order());
        let p = (self.prec() + ob).min(o.prec() + oa);
        let mut v = vec![self.zero.clone(); p];
        for i in oa..self.prec().min(p) {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in ob..o.prec().min(p - i) {
                let b = &o.coeffs[j];
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Series { coeffs: v, zero: self.zero.clone(), pi_grade: self.pi_grade + o.pi_grade }
    }

    pub fn pow(&self, n: u64) -> Self {
        let one = Series::constant(self.zero.one_like(), self.prec().max(1));
        let mut r = one;
        let mut b = self.clone();
        let mut e = n;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                r = if first { b.clone() } else { r.mul(&b) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(0).try_inv().ok_or(Error::DivisionByZero)?;
        let n = self.prec();
        let mut v: Vec<C> = Vec::with_capacity(n);
        for i in 0..n {
            if i == 0 {
                v.push(c0.clone());
                continue;
            }
            let mut acc = self.zero.clone();
            for j in 1..=i {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc = acc.add(&a.mul(&v[i - j]));
                }
            }
            v.push(acc.mul(&c0).neg());
        }
        Ok(Series { coeffs: v, zero: self.zero.clone(), pi_grade: -self.pi_grade })
    }

    /// `self(g)` for `g` with zero constant term.
    ///
    /// If `self` is known mod `x^N`, `g = O(x^e)` is known mod `x^M`, and `ν`
    /// is the least positive exponent with a nonzero coefficient in `self`,
    /// the result is known mod `x^{min(N·e, M + (ν−1)·e)}`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeff(0).is_zero() || g.prec() == 0 {
            return Err(Error::Precision("inner series must have zero constant term".into()));
        }
        let e = g.order().max(1);
        let nu = (1..self.prec()).find(|&i| !self.coeffs[i].is_zero());
        let mut p = self.prec() * e;
        if let Some(nu) = nu {
            p = p.min(g.prec() + (nu - 1) * e);
        }
        let g = g.truncate(p);
        // Horner from the top, everything truncated at p
        let mut acc = Series::zero(p, &self.zero);
        for i in (0..self.prec()).rev() {
            if i * e >= p && self.coeffs[i].is_zero() {
                continue;
            }
            acc = acc.mul(&g).truncate(p);
            if acc.prec() < p {
                acc = Series::new(acc.coeffs, p, &self.zero);
            }
            acc.coeffs[0] = acc.coeffs[0].add(&self.coeffs[i]);
        }
        acc.pi_grade = self.pi_grade;
        Ok(acc)
    }

    /// `Σ a_i x^{k·i}`, precision `k·prec`.
    pub fn inflate(&self, k: usize) -> Self {
        let mut v = vec![self.zero.clone(); self.prec() * k];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        Series { coeffs: v, zero: self.zero.clone(), pi_grade: self.pi_grade * k as i64 }
    }

    /// Equality of the common truncation.
    pub fn agrees_with(&self, o: &Self, prec: usize) -> bool {
        prec <= self.prec() && prec <= o.prec() && self.coeffs[..prec] == o.coeffs[..prec]
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*u")?,
                _ => write!(f, "({c})*u^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(u^{})", self.prec())
    }
}

impl<C: Ring + fmt::Display> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{self}]")
    }
}
