//! The Carlitz cyclotomic extension `K(λ) = K[λ]/φ_P(λ)`, where
//! `φ_P(X) = C_P(X)/X` and λ is a primitive P-torsion point.

use std::fmt;
use std::sync::Arc;

use super::carlitz::carlitz_poly;
use super::ring::Ring;
use crate::error::{Error, Result};
use crate::ffpoly::{Elem, Fq, Poly, RatFunc};

#[derive(Debug)]
struct CycloInner {
    field: Fq,
    p: Poly,
    /// φ_P as a monic polynomial in λ, ascending, coefficients in A.
    phi: Vec<RatFunc>,
}

/// Shared description of `K(λ)` for one prime P.
#[derive(Clone, Debug)]
pub struct CycloField(Arc<CycloInner>);

impl PartialEq for CycloField {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0.p == o.0.p
    }
}

impl CycloField {
    pub fn new(p: &Poly) -> Result<Self> {
        let field = p.field().clone();
        let c = carlitz_poly(p)?;
        // C_P(X)/X = Σ c_i X^{q^i - 1}
        let q = field.q() as usize;
        let top = q.pow(c.coeffs.len() as u32 - 1) - 1;
        let mut phi = vec![RatFunc::zero(&field); top + 1];
        for (i, ci) in c.coeffs.iter().enumerate() {
            phi[q.pow(i as u32) - 1] = RatFunc::from_poly(ci.clone());
        }
        Ok(CycloField(Arc::new(CycloInner { field, p: p.clone(), phi })))
    }

    pub fn field(&self) -> &Fq {
        &self.0.field
    }
    pub fn prime(&self) -> &Poly {
        &self.0.p
    }
    /// `[K(λ):K] = q^{deg P} - 1`.
    pub fn degree(&self) -> usize {
        self.0.phi.len() - 1
    }

    pub fn zero(&self) -> CycloElem {
        CycloElem { f: self.clone(), c: vec![RatFunc::zero(self.field()); self.degree()] }
    }
    pub fn embed(&self, x: RatFunc) -> CycloElem {
        let mut e = self.zero();
        e.c[0] = x;
        e
    }
    pub fn lambda(&self) -> CycloElem {
        let mut e = self.zero();
        if self.degree() == 1 {
            // φ_P is linear: λ = -φ_0
            e.c[0] = -&self.0.phi[0];
        } else {
            e.c[1] = RatFunc::one(self.field());
        }
        e
    }

    /// `C_a(λ)`.
    pub fn torsion_point(&self, a: &Poly) -> Result<CycloElem> {
        let ca = carlitz_poly(a)?;
        let q = self.field().q() as u64;
        let mut acc = self.zero();
        let mut lp = self.lambda();
        for (i, c) in ca.coeffs.iter().enumerate() {
            if i > 0 {
                lp = lp.pow(q);
            }
            acc = acc.add(&lp.mul(&self.embed(RatFunc::from_poly(c.clone()))));
        }
        Ok(acc)
    }
}

/// An element of `K(λ)` in the power basis `1, λ, …, λ^{D-1}`.
#[derive(Clone)]
pub struct CycloElem {
    f: CycloField,
    c: Vec<RatFunc>,
}

impl PartialEq for CycloElem {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}

impl CycloElem {
    pub fn components(&self) -> &[RatFunc] {
        &self.c
    }
    pub fn cyclo(&self) -> &CycloField {
        &self.f
    }

    /// The element as a member of K, if all λ-components vanish.
    pub fn to_base(&self) -> Result<RatFunc> {
        if self.c[1..].iter().any(|x| !x.is_zero()) {
            return Err(Error::GaloisResidue);
        }
        Ok(self.c[0].clone())
    }

    pub fn pow(&self, mut n: u64) -> CycloElem {
        let mut r = self.f.embed(RatFunc::one(self.f.field()));
        let mut b = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            n >>= 1;
        }
        r
    }

    fn reduce(&self, mut v: Vec<RatFunc>) -> CycloElem {
        let phi = &self.f.0.phi;
        let d = phi.len() - 1;
        for i in (d..v.len()).rev() {
            let top = std::mem::replace(&mut v[i], RatFunc::zero(self.f.field()));
            if top.is_zero() {
                continue;
            }
            for (j, pj) in phi[..d].iter().enumerate() {
                if !pj.is_zero() {
                    v[i - d + j] = &v[i - d + j] - &(&top * pj);
                }
            }
        }
        v.truncate(d);
        v.resize(d, RatFunc::zero(self.f.field()));
        CycloElem { f: self.f.clone(), c: v }
    }
}

impl Ring for CycloElem {
    fn zero_like(&self) -> Self {
        self.f.zero()
    }
    fn one_like(&self) -> Self {
        self.f.embed(RatFunc::one(self.f.field()))
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn add(&self, o: &Self) -> Self {
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect();
        CycloElem { f: self.f.clone(), c }
    }
    fn sub(&self, o: &Self) -> Self {
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect();
        CycloElem { f: self.f.clone(), c }
    }
    fn mul(&self, o: &Self) -> Self {
        let fz = RatFunc::zero(self.f.field());
        let mut v = vec![fz; self.c.len() + o.c.len()];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = &v[i + j] + &(a * b);
                }
            }
        }
        self.reduce(v)
    }
    fn neg(&self) -> Self {
        CycloElem { f: self.f.clone(), c: self.c.iter().map(|a| -a).collect() }
    }
    fn scale_elem(&self, e: Elem) -> Self {
        CycloElem { f: self.f.clone(), c: self.c.iter().map(|a| a.scale(e)).collect() }
    }
    fn try_inv(&self) -> Option<Self> {
        // only constants are inverted here
        let b = self.to_base().ok()?;
        Some(self.f.embed(b.inv().ok()?))
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => format!("{c}"),
                1 => format!("({c})*L"),
                _ => format!("({c})*L^{i}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
