//! Nonzero ideals of A, represented by their monic generators.

use std::fmt;

use super::field::Fq;
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealA {
    gen: Poly,
}

impl IdealA {
    /// The ideal generated by `p`; the unit is discarded.
    pub fn new(p: Poly) -> Result<Self> {
        Self::with_unit(p).map(|(i, _)| i)
    }

    /// Like [`IdealA::new`] but also returns the unit `u` with `p = u * gen`.
    pub fn with_unit(p: Poly) -> Result<(Self, super::field::Elem)> {
        if p.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let (u, gen) = p.monic_normalize();
        Ok((IdealA { gen }, u))
    }

    pub fn unit(f: &Fq) -> Self {
        IdealA { gen: Poly::one(f) }
    }

    pub fn gen(&self) -> &Poly {
        &self.gen
    }
    pub fn field(&self) -> &Fq {
        self.gen.field()
    }
    pub fn degree(&self) -> usize {
        self.gen.degree().unwrap()
    }
    pub fn is_unit(&self) -> bool {
        self.gen.is_one()
    }
    /// Norm |A/n| = q^deg.
    pub fn norm(&self) -> u64 {
        (self.field().q() as u64).pow(self.degree() as u32)
    }

    pub fn mul(&self, o: &IdealA) -> IdealA {
        IdealA { gen: &self.gen * &o.gen }
    }
    pub fn gcd(&self, o: &IdealA) -> IdealA {
        IdealA { gen: self.gen.gcd(&o.gen) }
    }
    pub fn lcm(&self, o: &IdealA) -> IdealA {
        IdealA { gen: self.gen.lcm(&o.gen) }
    }
    /// `self | o` as ideals, i.e. the generator of `self` divides that of `o`.
    pub fn divides(&self, o: &IdealA) -> bool {
        self.gen.divides(&o.gen)
    }
    pub fn coprime(&self, o: &IdealA) -> bool {
        self.gcd(o).is_unit()
    }
    /// `self || n`: `self | n` and `gcd(self, n/self) = 1`.
    pub fn exactly_divides(&self, n: &IdealA) -> bool {
        self.divides(n) && self.coprime(&n.quotient(self).unwrap())
    }
    /// `self / d`; errors unless `d | self`.
    pub fn quotient(&self, d: &IdealA) -> Result<IdealA> {
        Ok(IdealA { gen: self.gen.div_exact(&d.gen)? })
    }
    pub fn pow(&self, e: u32) -> IdealA {
        IdealA { gen: self.gen.pow(e as u64) }
    }

    pub fn is_prime(&self) -> bool {
        !self.is_unit() && self.gen.is_irreducible().unwrap_or(false)
    }

    /// Monic divisors in increasing order (brute force over degrees).
    pub fn divisors(&self) -> Vec<IdealA> {
        let f = self.field().clone();
        let n = self.degree();
        let mut out = Vec::new();
        for d in 0..=n {
            for cand in Poly::monics_of_degree(&f, d) {
                if cand.divides(&self.gen) {
                    out.push(IdealA { gen: cand });
                }
            }
        }
        out
    }

    /// Exact divisors, including `(1)` and `self`, in increasing order.
    pub fn exact_divisors(&self) -> Vec<IdealA> {
        self.divisors().into_iter().filter(|d| d.exactly_divides(self)).collect()
    }

    /// Prime-power exact divisors `p^e || n`, one per prime dividing `n`.
    pub fn prime_power_parts(&self) -> Vec<IdealA> {
        let exact = self.exact_divisors();
        exact
            .iter()
            .filter(|d| !d.is_unit())
            .filter(|d| {
                // no proper nontrivial exact divisor of n divides d
                !exact.iter().any(|e| !e.is_unit() && *e != **d && e.divides(d))
            })
            .cloned()
            .collect()
    }

    /// Monic prime factors with multiplicity, by trial division.
    pub fn factor(&self) -> Vec<(IdealA, u32)> {
        let f = self.field().clone();
        let mut rest = self.gen.clone();
        let mut out = Vec::new();
        let mut d = 1;
        while rest.degree().unwrap() > 0 {
            if 2 * d > rest.degree().unwrap() {
                out.push((IdealA { gen: rest.clone() }, 1));
                break;
            }
            for cand in Poly::monics_of_degree(&f, d) {
                if !cand.is_irreducible().unwrap() {
                    continue;
                }
                let mut e = 0;
                while cand.divides(&rest) {
                    rest = rest.div_exact(&cand).unwrap();
                    e += 1;
                }
                if e > 0 {
                    out.push((IdealA { gen: cand }, e));
                }
            }
            d += 1;
        }
        // merge a trailing factor that repeats one already found
        out.sort();
        let mut merged: Vec<(IdealA, u32)> = Vec::new();
        for (p, e) in out {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        merged
    }
}

impl fmt::Display for IdealA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.gen)
    }
}
impl fmt::Debug for IdealA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealA{self}")
    }
}
