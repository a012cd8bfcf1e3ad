//! Finite fields F_q, q = p^e, with table-driven arithmetic.
//!
//! Elements are encoded as integers `0..q` whose base-`p` digits are the
//! coefficients of the residue polynomial in the generator `x`
//! (lowest digit = constant term). For prime `q` this is just the residue.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite field element, encoded as described in the module docs.
pub type Elem = u8;

#[derive(Debug)]
struct FieldInner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus over F_p, ascending coefficients, degree `e`. Empty for prime fields.
    modulus: Vec<u8>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// Shared handle to a finite field. Cheap to clone.
#[derive(Clone)]
pub struct Fq(Arc<FieldInner>);

fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Schoolbook product over F_p, reduced modulo a monic modulus.
fn fp_poly_mulmod(a: &[u8], b: &[u8], modulus: &[u8], p: u32) -> Vec<u8> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u32 * y as u32) % p;
        }
    }
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = k - e + i;
            prod[idx] = (prod[idx] + (p - c) * m as u32) % p;
        }
    }
    prod.truncate(e);
    prod.into_iter().map(|c| c as u8).collect()
}

fn digits(mut v: u32, p: u32, e: u32) -> Vec<u8> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push((v % p) as u8);
        v /= p;
    }
    out
}

fn undigits(ds: &[u8], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d as u32)
}

// Brute-force irreducibility over F_p: no monic factor of degree <= e/2.
fn fp_irreducible(modulus: &[u8], p: u32) -> bool {
    let e = modulus.len() - 1;
    if e == 1 {
        return true;
    }
    for deg in 1..=e / 2 {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let mut cand = digits(code, p, deg as u32);
            cand.push(1);
            // remainder of modulus by cand
            let mut rem: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();
            for k in (deg..rem.len()).rev() {
                let c = rem[k];
                if c == 0 {
                    continue;
                }
                for (i, &m) in cand.iter().enumerate() {
                    let idx = k - deg + i;
                    rem[idx] = (rem[idx] + (p - c) * m as u32) % p;
                }
            }
            if rem[..deg].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Fq {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime_u32(p) || p > 251 {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Self::build(p, Vec::new())
    }

    /// F_{p^e} as F_p[x]/(modulus). `modulus` lists ascending coefficients
    /// in `0..p` and must be monic and irreducible of degree `e >= 2`.
    pub fn extension(p: u32, modulus: Vec<u8>) -> Result<Self> {
        if !is_prime_u32(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let e = modulus.len().saturating_sub(1);
        if e < 2 {
            return Err(Error::InvalidField("extension modulus must have degree >= 2".into()));
        }
        if modulus.iter().any(|&c| c as u32 >= p) || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic over F_p".into()));
        }
        if (p as u64).pow(e as u32) > 256 {
            return Err(Error::InvalidField("field order above 256 is not supported".into()));
        }
        if !fp_irreducible(&modulus, p) {
            return Err(Error::InvalidField("modulus is reducible over F_p".into()));
        }
        Self::build(p, modulus)
    }

    fn build(p: u32, modulus: Vec<u8>) -> Result<Self> {
        let e = if modulus.is_empty() { 1 } else { (modulus.len() - 1) as u32 };
        let q = p.pow(e);
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        let mut neg = vec![0; qs];
        for a in 0..q {
            let da = digits(a, p, e);
            for b in 0..q {
                let db = digits(b, p, e);
                let s: Vec<u8> = da.iter().zip(&db).map(|(&x, &y)| ((x as u32 + y as u32) % p) as u8).collect();
                add[a as usize * qs + b as usize] = undigits(&s, p) as Elem;
                let m = if e == 1 { (a * b) % p } else { undigits(&fp_poly_mulmod(&da, &db, &modulus, p), p) };
                mul[a as usize * qs + b as usize] = m as Elem;
            }
            let n: Vec<u8> = da.iter().map(|&x| ((p - x as u32) % p) as u8).collect();
            neg[a as usize] = undigits(&n, p) as Elem;
        }
        let mut inv = vec![0; qs];
        for a in 1..qs {
            for b in 1..qs {
                if mul[a * qs + b] == 1 {
                    inv[a] = b as Elem;
                }
            }
        }
        Ok(Fq(Arc::new(FieldInner { p, e, q, modulus, add, mul, neg, inv })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn e(&self) -> u32 {
        self.0.e
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    /// Ascending F_p coefficients of the modulus; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u8]> {
        if self.0.modulus.is_empty() {
            None
        } else {
            Some(&self.0.modulus)
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }
    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            None
        } else {
            Some(self.0.inv[a as usize])
        }
    }
    pub fn pow(&self, a: Elem, mut n: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }
    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.0.p as i64) as Elem
    }
    /// The generator `x` of an extension field (`None` for prime fields).
    pub fn generator(&self) -> Option<Elem> {
        if self.0.e > 1 {
            Some(self.0.p as Elem)
        } else {
            None
        }
    }
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q as Elem
    }
    pub fn units(&self) -> impl Iterator<Item = Elem> {
        1..self.0.q as Elem
    }

    /// Render an element: an integer for prime-subfield elements, otherwise a
    /// polynomial in `x`.
    pub fn format_elem(&self, a: Elem) -> String {
        let p = self.0.p;
        if (a as u32) < p {
            return a.to_string();
        }
        let ds = digits(a as u32, p, self.0.e);
        let mut parts = Vec::new();
        for (i, &c) in ds.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        parts.join("+")
    }

    /// Literal form of the modulus in `x`, e.g. `x^2+x+1`.
    pub fn modulus_literal(&self) -> Option<String> {
        self.modulus().map(|m| {
            let mut parts = Vec::new();
            for (i, &c) in m.iter().enumerate().rev() {
                if c == 0 {
                    continue;
                }
                let mono = match i {
                    0 => String::new(),
                    1 => "x".into(),
                    _ => format!("x^{i}"),
                };
                parts.push(match (c, i) {
                    (_, 0) => c.to_string(),
                    (1, _) => mono,
                    _ => format!("{c}*{mono}"),
                });
            }
            parts.join("+")
        })
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus_literal() {
            Some(m) => write!(f, "F_{}[x]/({m})", self.0.p),
            None => write!(f, "F_{}", self.0.p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_frobenius_fixes_everything(f: &Fq) {
        let q = f.q() as u64;
        for a in f.elements() {
            assert_eq!(f.pow(a, q), a, "x^q != x for {a} in {f:?}");
        }
    }

    #[test]
    fn prime_fields_satisfy_x_pow_q() {
        for p in [2, 3, 5, 7, 11, 13] {
            check_frobenius_fixes_everything(&Fq::prime(p).unwrap());
        }
    }

    #[test]
    fn extension_fields_up_to_16_satisfy_x_pow_q() {
        check_frobenius_fixes_everything(&Fq::extension(2, vec![1, 1, 1]).unwrap());
        check_frobenius_fixes_everything(&Fq::extension(2, vec![1, 1, 0, 1]).unwrap());
        check_frobenius_fixes_everything(&Fq::extension(3, vec![2, 2, 1]).unwrap());
        check_frobenius_fixes_everything(&Fq::extension(2, vec![1, 1, 0, 0, 1]).unwrap());
    }

    #[test]
    fn field_axioms_in_f4() {
        let f = Fq::extension(2, vec![1, 1, 1]).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in f.elements() {
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        let x = f.generator().unwrap();
        // x^2 = x + 1
        assert_eq!(f.mul(x, x), f.add(x, 1));
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(Fq::prime(4).is_err());
        assert!(Fq::extension(2, vec![1, 0, 1]).is_err()); // x^2+1 = (x+1)^2
        assert!(Fq::extension(3, vec![1, 1]).is_err());
    }

    #[test]
    fn formats_elements() {
        let f = Fq::extension(2, vec![1, 1, 1]).unwrap();
        assert_eq!(f.format_elem(1), "1");
        assert_eq!(f.format_elem(2), "x");
        assert_eq!(f.format_elem(3), "x+1");
        assert_eq!(f.modulus_literal().unwrap(), "x^2+x+1");
    }
}
