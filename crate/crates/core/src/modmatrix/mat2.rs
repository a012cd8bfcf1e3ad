//! 2×2 matrices over K.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::ffpoly::{Fq, IdealA, Poly, RatFunc};

/// Row-major `(a b; c d)` over K.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: RatFunc,
    pub b: RatFunc,
    pub c: RatFunc,
    pub d: RatFunc,
}

impl Mat2 {
    pub fn new(a: RatFunc, b: RatFunc, c: RatFunc, d: RatFunc) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_polys(a: Poly, b: Poly, c: Poly, d: Poly) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity(f: &Fq) -> Self {
        Mat2::scalar(RatFunc::one(f))
    }

    pub fn scalar(s: RatFunc) -> Self {
        let z = RatFunc::zero(s.field());
        Mat2::new(s.clone(), z.clone(), z, s)
    }

    /// `diag(x, 1)`.
    pub fn diag(x: RatFunc) -> Self {
        let f = x.field().clone();
        Mat2::new(x, RatFunc::zero(&f), RatFunc::zero(&f), RatFunc::one(&f))
    }

    pub fn field(&self) -> &Fq {
        self.a.field()
    }

    pub fn entries(&self) -> [&RatFunc; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> RatFunc {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn is_singular(&self) -> bool {
        self.det().is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.entries().iter().all(|e| e.is_integral())
    }

    /// Integral entries as polynomials.
    pub fn polys(&self) -> Result<[Poly; 4]> {
        let g = |x: &RatFunc| x.as_poly().cloned().ok_or(Error::NotIntegral);
        Ok([g(&self.a)?, g(&self.b)?, g(&self.c)?, g(&self.d)?])
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let inv = det.inv()?;
        Ok(Mat2::new(&self.d * &inv, -&(&self.b * &inv), -&(&self.c * &inv), &self.a * &inv))
    }

    pub fn scale(&self, s: &RatFunc) -> Mat2 {
        Mat2::new(&self.a * s, &self.b * s, &self.c * s, &self.d * s)
    }

    /// Membership in Γ0(n): integral, unit determinant, `n | c`.
    pub fn in_gamma0(&self, n: &IdealA) -> bool {
        let Ok([_, _, c, _]) = self.polys() else {
            return false;
        };
        self.det().as_constant().is_some_and(|u| u != 0) && n.gen().divides(&c)
    }

    /// `M = s·M0` with `M0` integral, content 1, and its first nonzero entry
    /// (row-major) monic. Returns `(M0, s)`.
    pub fn primitive_form(&self) -> Result<(Mat2, RatFunc)> {
        if self.is_singular() {
            return Err(Error::Singular);
        }
        let f = self.field().clone();
        let mut l = Poly::one(&f);
        for e in self.entries() {
            l = l.lcm(e.den());
        }
        let lr = RatFunc::from_poly(l.clone());
        let ints: Vec<Poly> = self.entries().iter().map(|e| (*e * &lr).as_poly().cloned().unwrap()).collect();
        let mut content = Poly::zero(&f);
        for p in &ints {
            content = content.gcd(p);
        }
        let first = ints.iter().find(|p| !p.is_zero()).unwrap();
        let unit = f.inv(first.lc()).unwrap();
        // M0 = ints * unit / content
        let m0: Vec<Poly> = ints.iter().map(|p| p.div_exact(&content).unwrap().scale(unit)).collect();
        let s = RatFunc::new(content.scale(f.inv(unit).unwrap()), l)?;
        let [a, b, c, d]: [Poly; 4] = m0.try_into().unwrap();
        Ok((Mat2::from_polys(a, b, c, d), s))
    }
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }
}
impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        &self * &o
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}
impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat2{self}")
    }
}

/// Serialized form: four numerator literals over a common monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MatJson {
    pub entries: [String; 4],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub den: Option<String>,
}

impl From<&Mat2> for MatJson {
    fn from(m: &Mat2) -> Self {
        let f = m.field();
        let mut l = Poly::one(f);
        for e in m.entries() {
            l = l.lcm(e.den());
        }
        let lr = RatFunc::from_poly(l.clone());
        let entries = m.entries().map(|e| (e * &lr).to_string());
        MatJson { entries, den: (!l.is_one()).then(|| l.to_string()) }
    }
}

impl MatJson {
    pub fn to_mat(&self, f: &Fq) -> Result<Mat2> {
        let den = match &self.den {
            Some(s) => crate::ffpoly::parse_ratfunc(f, s)?.inv()?,
            None => RatFunc::one(f),
        };
        let e: Vec<RatFunc> = self
            .entries
            .iter()
            .map(|s| crate::ffpoly::parse_ratfunc(f, s).map(|x| &x * &den))
            .collect::<Result<_>>()?;
        let [a, b, c, d]: [RatFunc; 4] = e.try_into().unwrap();
        Ok(Mat2::new(a, b, c, d))
    }
}
