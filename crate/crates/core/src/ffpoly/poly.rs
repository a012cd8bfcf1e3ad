//! Polynomials in A = F_q[t].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Elem, Fq};
use crate::error::{Error, Result};

/// A polynomial over F_q in the variable `t`. Coefficients are ascending and
/// carry no trailing zeros, so the zero polynomial has an empty list.
#[derive(Clone)]
pub struct Poly {
    field: Fq,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn from_coeffs(field: &Fq, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }
    pub fn zero(field: &Fq) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }
    pub fn one(field: &Fq) -> Self {
        Self::constant(field, 1)
    }
    pub fn constant(field: &Fq, c: Elem) -> Self {
        Self::from_coeffs(field, vec![c])
    }
    /// The variable `t`.
    pub fn t(field: &Fq) -> Self {
        Self::from_coeffs(field, vec![0, 1])
    }
    pub fn monomial(field: &Fq, c: Elem, deg: usize) -> Self {
        let mut v = vec![0; deg + 1];
        v[deg] = c;
        Self::from_coeffs(field, v)
    }
    /// `t - c`.
    pub fn linear(field: &Fq, c: Elem) -> Self {
        Self::from_coeffs(field, vec![field.neg(c), 1])
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 1
    }
    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    /// Degree with the convention deg 0 = -1.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }
    /// Leading coefficient (0 for the zero polynomial).
    pub fn lc(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn scale(&self, c: Elem) -> Poly {
        if c == 0 {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// Splits `self = unit * monic`. The zero polynomial returns `(0, 0)`.
    pub fn monic_normalize(&self) -> (Elem, Poly) {
        let lc = self.lc();
        if lc == 0 {
            return (0, self.clone());
        }
        let inv = self.field.inv(lc).unwrap();
        (lc, self.scale(inv))
    }
    pub fn monic(&self) -> Poly {
        self.monic_normalize().1
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs: v }
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        if self.deg_i() < dd as i64 {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lc = f.inv(d.lc()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let qc = f.mul(c, inv_lc);
            quot[k - dd] = qc;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(qc, dc));
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }
    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }
    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Divisibility(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }
    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; zero when both inputs are zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        (self * &other.div_exact(&g).unwrap()).monic()
    }

    pub fn pow(&self, mut n: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m).unwrap()
    }

    pub fn pow_mod(&self, mut n: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m).unwrap();
        let mut acc = Poly::one(&self.field).rem(m).unwrap();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    /// `self(t)^q`, i.e. `t -> t^q` applied to the coefficients' positions
    /// (Frobenius fixes F_q).
    pub fn frobenius(&self) -> Poly {
        let q = self.field.q() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; (self.coeffs.len() - 1) * q + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * q] = c;
        }
        Poly::from_coeffs(&self.field, v)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(0, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// Substitute a polynomial for `t`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(&self.field, c);
        }
        acc
    }

    /// Irreducibility over F_q (Rabin's test).
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let t = Poly::t(&self.field);
        let q = self.field.q() as u64;
        // t^(q^k) mod f
        let frob_power = |k: usize| -> Poly {
            let mut x = t.clone();
            for _ in 0..k {
                x = x.pow_mod(q, &f);
            }
            x
        };
        if &frob_power(n) - &t != Poly::zero(&self.field) {
            return Ok(false);
        }
        for r in prime_factors(n) {
            let h = &frob_power(n / r) - &t;
            if !f.gcd(&h).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Order of the irreducible `p` in `self`; `None` for zero.
    pub fn valuation(&self, p: &Poly) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut v = 0;
        let mut x = self.clone();
        loop {
            let (q, r) = x.div_rem(p).unwrap();
            if !r.is_zero() {
                return Some(v);
            }
            v += 1;
            x = q;
        }
    }

    /// All monic polynomials of the given degree, in increasing order.
    pub fn monics_of_degree(field: &Fq, deg: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = field.q() as u64;
        let count = q.pow(deg as u32);
        (0..count).map(move |mut code| {
            let mut v = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                v.push((code % q) as Elem);
                code /= q;
            }
            v.push(1);
            Poly::from_coeffs(field, v)
        })
    }

    /// All polynomials of degree `< deg` (including zero), in increasing order.
    pub fn all_below_degree(field: &Fq, deg: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = field.q() as u64;
        let count = q.pow(deg as u32);
        (0..count).map(move |mut code| {
            let mut v = Vec::with_capacity(deg);
            for _ in 0..deg {
                v.push((code % q) as Elem);
                code /= q;
            }
            Poly::from_coeffs(field, v)
        })
    }

    /// Integer code of a polynomial of degree `< deg` (base-q digits);
    /// used for dense indexing of residues.
    pub fn code(&self) -> u64 {
        let q = self.field.q() as u64;
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c as u64)
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Extended Euclid with deterministic output: `g = u*a + v*b`, `g` monic and
/// `u` reduced modulo `b/g` (so `u` has minimal degree).
pub fn gcd_bezout(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
    let f = a.field();
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
    let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        r0 = r1;
        r1 = r;
        let s = &s0 - &(&q * &s1);
        s0 = s1;
        s1 = s;
        let t = &t0 - &(&q * &t1);
        t0 = t1;
        t1 = t;
    }
    let inv = f.inv(r0.lc()).unwrap();
    let g = r0.scale(inv);
    let mut u = s0.scale(inv);
    let mut v = t0.scale(inv);
    if !b.is_zero() {
        let bg = b.div_exact(&g)?;
        let (k, ur) = u.div_rem(&bg)?;
        u = ur;
        if !a.is_zero() {
            // v = (g - u a) / b
            let ag = a.div_exact(&g)?;
            v = &v + &(&k * &ag);
        }
    }
    Ok((g, u, v))
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect();
        Poly::from_coeffs(f, v)
    }
}
impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect();
        Poly::from_coeffs(f, v)
    }
}
impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return Poly::zero(f);
        }
        let mut v = vec![0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, v)
    }
}
impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $t:ty) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t {
                (&self).$m(o)
            }
        }
    };
}
pub(crate) use forward_owned;
forward_owned!(Add, add, Poly);
forward_owned!(Sub, sub, Poly);
forward_owned!(Mul, mul, Poly);

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(out, "+")?;
            }
            first = false;
            let cs = f.format_elem(c);
            let compound = cs.contains('+');
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            if i == 0 {
                if compound {
                    write!(out, "({cs})")?;
                } else {
                    write!(out, "{cs}")?;
                }
            } else if c == 1 {
                write!(out, "{mono}")?;
            } else if compound {
                write!(out, "({cs})*{mono}")?;
            } else {
                write!(out, "{cs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }
    fn p(f: &Fq, c: &[u8]) -> Poly {
        Poly::from_coeffs(f, c.to_vec())
    }

    #[test]
    fn bezout_examples() {
        let f = f3();
        // (t, t+1) -> (1, 2, 1)
        let (g, u, v) = gcd_bezout(&p(&f, &[0, 1]), &p(&f, &[1, 1])).unwrap();
        assert_eq!((g, u, v), (p(&f, &[1]), p(&f, &[2]), p(&f, &[1])));
        // (t^2, t) -> (t, 0, 1)
        let (g, u, v) = gcd_bezout(&p(&f, &[0, 0, 1]), &p(&f, &[0, 1])).unwrap();
        assert_eq!((g, u, v), (p(&f, &[0, 1]), Poly::zero(&f), p(&f, &[1])));
        // (t^2+1, t+2) -> g = 1
        let a = p(&f, &[1, 0, 1]);
        let b = p(&f, &[2, 1]);
        let (g, u, v) = gcd_bezout(&a, &b).unwrap();
        assert!(g.is_one());
        assert_eq!(&(&u * &a) + &(&v * &b), g);
        assert!(u.deg_i() < b.deg_i());
    }

    #[test]
    fn bezout_zero_inputs() {
        let f = f3();
        assert_eq!(gcd_bezout(&Poly::zero(&f), &Poly::zero(&f)), Err(Error::ZeroGcd));
        let (g, u, v) = gcd_bezout(&p(&f, &[1, 2]), &Poly::zero(&f)).unwrap();
        assert_eq!(g, p(&f, &[2, 1]));
        assert_eq!(u, p(&f, &[2]));
        assert!(v.is_zero());
        let (g, u, v) = gcd_bezout(&Poly::zero(&f), &p(&f, &[0, 2])).unwrap();
        assert_eq!(g, Poly::t(&f));
        assert!(u.is_zero());
        assert_eq!(v, p(&f, &[2]));
    }

    #[test]
    fn irreducibility_examples() {
        let f = f3();
        assert!(p(&f, &[1, 0, 1]).is_irreducible().unwrap());
        assert!(!p(&f, &[0, 0, 1]).is_irreducible().unwrap());
        let f2 = Fq::prime(2).unwrap();
        assert!(p(&f2, &[1, 1, 1]).is_irreducible().unwrap());
        assert_eq!(p(&f, &[2]).is_irreducible(), Err(Error::ConstantPolynomial));
        // t^2+t+1 = (t+2)^2 over F_3
        assert!(!p(&f, &[1, 1, 1]).is_irreducible().unwrap());
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree n over F_q
        for (q, n, expected) in [(2u32, 2usize, 1usize), (2, 3, 2), (2, 4, 3), (3, 2, 3), (3, 3, 8)] {
            let f = Fq::prime(q).unwrap();
            let count = Poly::monics_of_degree(&f, n).filter(|g| g.is_irreducible().unwrap()).count();
            assert_eq!(count, expected, "q={q} n={n}");
        }
        let f4 = Fq::extension(2, vec![1, 1, 1]).unwrap();
        let count = Poly::monics_of_degree(&f4, 2).filter(|g| g.is_irreducible().unwrap()).count();
        assert_eq!(count, 6);
    }

    #[test]
    fn valuation_and_display() {
        let f = f3();
        let t = Poly::t(&f);
        let x = p(&f, &[0, 0, 0, 1]);
        assert_eq!(x.valuation(&t), Some(3));
        assert_eq!(p(&f, &[1, 2, 1]).to_string(), "t^2+2*t+1");
        let f4 = Fq::extension(2, vec![1, 1, 1]).unwrap();
        assert_eq!(Poly::from_coeffs(&f4, vec![3, 2, 1]).to_string(), "t^2+x*t+(x+1)");
    }

    #[test]
    fn division_identity() {
        let f = f3();
        let a = p(&f, &[1, 2, 0, 1, 2]);
        let b = p(&f, &[2, 0, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg_i() < b.deg_i());
        assert_eq!(a.div_rem(&Poly::zero(&f)), Err(Error::DivisionByZero));
    }
}
