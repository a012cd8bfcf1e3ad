//! Elements of K = F_q(t), always kept in lowest terms with monic denominator.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::field::{Elem, Fq};
use super::ideal::IdealA;
use super::poly::{forward_owned, Poly};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// A p-adic valuation value; `Infinite` is the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, o: Valuation) -> Valuation {
        match (self, o) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl RatFunc {
    /// Builds `num/den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc { den: Poly::one(num.field()), num };
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap()) };
        let (u, den) = den.monic_normalize();
        let num = num.scale(num.field().inv(u).unwrap());
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.field());
        RatFunc { num: p, den }
    }
    pub fn zero(f: &Fq) -> Self {
        Self::from_poly(Poly::zero(f))
    }
    pub fn one(f: &Fq) -> Self {
        Self::from_poly(Poly::one(f))
    }
    pub fn constant(f: &Fq, c: Elem) -> Self {
        Self::from_poly(Poly::constant(f, c))
    }
    pub fn from_int(f: &Fq, n: i64) -> Self {
        Self::constant(f, f.from_int(n))
    }
    pub fn t(f: &Fq) -> Self {
        Self::from_poly(Poly::t(f))
    }

    pub fn field(&self) -> &Fq {
        self.num.field()
    }
    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }
    /// The polynomial value of an integral element.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }
    /// Constant field element, if this is one.
    pub fn as_constant(&self) -> Option<Elem> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: Elem) -> RatFunc {
        if c == 0 {
            return RatFunc::zero(self.field());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Integer power; negative exponents invert (zero base with a negative
    /// exponent is an error).
    pub fn pow(&self, n: i64) -> Result<RatFunc> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let e = n.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// `self^q`, computed by Frobenius on numerator and denominator.
    pub fn frobenius(&self) -> RatFunc {
        RatFunc { num: self.num.frobenius(), den: self.den.frobenius() }
    }

    /// Order of the prime ideal `p` in this element.
    pub fn valuation(&self, p: &IdealA) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let g = p.gen();
        let vn = self.num.valuation(g).unwrap() as i64;
        let vd = self.den.valuation(g).unwrap() as i64;
        Valuation::Finite(vn - vd)
    }
}

/// Exact p-adic valuation of `x` at the prime ideal `p`.
pub fn vp_rational(x: &RatFunc, p: &IdealA) -> Result<Valuation> {
    if !p.is_prime() {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(x.valuation(p))
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}
impl Eq for RatFunc {}
impl Hash for RatFunc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::canonical(&self.num + &o.num, self.den.clone());
        }
        RatFunc::canonical(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}
impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}
impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.field());
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(&self.num * &o.num);
        }
        RatFunc::canonical(&self.num * &o.num, &self.den * &o.den)
    }
}
impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::inv`] for a checked form.
    fn div(self, o: &RatFunc) -> RatFunc {
        self * &o.inv().expect("division by zero in K")
    }
}
impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}
forward_owned!(Add, add, RatFunc);
forward_owned!(Sub, sub, RatFunc);
forward_owned!(Mul, mul, RatFunc);
forward_owned!(Div, div, RatFunc);

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if s.contains(['+', '*', '^']) {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let f = Fq::prime(3).unwrap();
        let t = Poly::t(&f);
        let num = &t * &Poly::from_coeffs(&f, vec![1, 1]);
        let den = Poly::from_coeffs(&f, vec![2, 2]); // 2(t+1)
        let x = RatFunc::new(num, den).unwrap();
        assert_eq!(x.num(), &t.scale(2));
        assert!(x.den().is_one());
        assert!(RatFunc::new(t.clone(), Poly::zero(&f)).is_err());
    }

    #[test]
    fn valuation_examples() {
        let f = Fq::prime(3).unwrap();
        let t = RatFunc::t(&f);
        let tp = IdealA::new(Poly::t(&f)).unwrap();
        let t1 = IdealA::new(Poly::from_coeffs(&f, vec![1, 1])).unwrap();
        let x = &t.pow(3).unwrap() / &(&t + &RatFunc::one(&f));
        assert_eq!(vp_rational(&x, &tp).unwrap(), Valuation::Finite(3));
        let y = (&t + &RatFunc::one(&f)).pow(-2).unwrap();
        assert_eq!(vp_rational(&y, &t1).unwrap(), Valuation::Finite(-2));
        assert_eq!(vp_rational(&RatFunc::from_int(&f, 2), &tp).unwrap(), Valuation::Finite(0));
        assert_eq!(vp_rational(&RatFunc::zero(&f), &tp).unwrap(), Valuation::Infinite);
        let composite = IdealA::new(Poly::from_coeffs(&f, vec![0, 1, 1])).unwrap();
        assert!(vp_rational(&x, &composite).is_err());
    }
}
