//! Labels for left cosets Γ0(n)·M: Hermite normal form of the primitive part
//! plus a point of P¹(A/n).

use std::cmp::Ordering;
use std::fmt;

use super::mat2::Mat2;
use crate::error::{Error, Result};
use crate::ffpoly::{gcd_bezout, IdealA, Poly, RatFunc};

/// `eps·M = H` with `eps ∈ GL₂(A)`, `H` upper triangular with monic diagonal
/// and `deg H.b < deg H.d`.
pub fn hnf(m: &Mat2) -> Result<(Mat2, Mat2)> {
    let [a, b, c, d] = m.polys()?;
    if m.is_singular() {
        return Err(Error::Singular);
    }
    let f = a.field().clone();
    let one = Poly::one(&f);
    let zero = Poly::zero(&f);
    // eps as polynomial rows, updated alongside the rows of M
    let (mut r1, mut r2, mut e1, mut e2);
    if c.is_zero() {
        r1 = [a, b];
        r2 = [c, d];
        e1 = [one.clone(), zero.clone()];
        e2 = [zero.clone(), one.clone()];
    } else {
        let (g, u, v) = gcd_bezout(&a, &c)?;
        let cg = c.div_exact(&g)?;
        let ag = a.div_exact(&g)?;
        r1 = [g, &(&u * &b) + &(&v * &d)];
        r2 = [zero.clone(), &(&ag * &d) - &(&cg * &b)];
        e1 = [u, v];
        e2 = [-&cg, ag];
    }
    let norm = |r: &mut [Poly; 2], e: &mut [Poly; 2], lead: u8| {
        let inv = f.inv(lead).unwrap();
        for x in r.iter_mut().chain(e.iter_mut()) {
            *x = x.scale(inv);
        }
    };
    let l1 = r1[0].lc();
    norm(&mut r1, &mut e1, l1);
    let l2 = r2[1].lc();
    norm(&mut r2, &mut e2, l2);
    let (qt, rem) = r1[1].div_rem(&r2[1])?;
    r1[1] = rem;
    e1 = [&e1[0] - &(&qt * &e2[0]), &e1[1] - &(&qt * &e2[1])];
    let [h0, h1] = r1;
    let [h2, h3] = r2;
    let [e0, e1_] = e1;
    let [e2_, e3] = e2;
    Ok((Mat2::from_polys(h0, h1, h2, h3), Mat2::from_polys(e0, e1_, e2_, e3)))
}

/// A canonical point `(c : d)` of P¹(A/n), both coordinates reduced mod ν.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point {
    pub c: Poly,
    pub d: Poly,
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.c, self.d)
    }
}
impl fmt::Debug for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P1{self}")
    }
}

fn inverse_mod(x: &Poly, n: &Poly) -> Option<Poly> {
    let (g, u, _) = gcd_bezout(x, n).ok()?;
    g.is_one().then(|| u.rem(n).unwrap())
}

/// Canonical representative of `(c : d)` in P¹(A/n) modulo scaling by
/// `(A/n)*`. Points with `d` a unit become `(c/d : 1)`, points with `c` a unit
/// become `(1 : d/c)`, anything else is the least point of its unit orbit.
pub fn p1_point(c: &Poly, d: &Poly, n: &IdealA) -> Result<P1Point> {
    let nu = n.gen();
    let f = nu.field();
    if !c.gcd(d).gcd(nu).is_one() {
        return Err(Error::NonPrimitiveRow);
    }
    if n.is_unit() {
        return Ok(P1Point { c: Poly::zero(f), d: Poly::one(f) });
    }
    let c = c.rem(nu)?;
    let d = d.rem(nu)?;
    if let Some(di) = inverse_mod(&d, nu) {
        return Ok(P1Point { c: c.mul_mod(&di, nu), d: Poly::one(f) });
    }
    if let Some(ci) = inverse_mod(&c, nu) {
        return Ok(P1Point { c: Poly::one(f), d: d.mul_mod(&ci, nu) });
    }
    let best = Poly::all_below_degree(f, n.degree())
        .filter(|l| l.gcd(nu).is_one())
        .map(|l| P1Point { c: c.mul_mod(&l, nu), d: d.mul_mod(&l, nu) })
        .min()
        .unwrap();
    Ok(best)
}

/// Every point of P¹(A/n), sorted.
pub fn p1_points(n: &IdealA) -> Vec<P1Point> {
    let f = n.field();
    let deg = n.degree();
    let mut out = std::collections::BTreeSet::new();
    for c in Poly::all_below_degree(f, deg) {
        for d in Poly::all_below_degree(f, deg) {
            if let Ok(p) = p1_point(&c, &d, n) {
                out.insert(p);
            }
        }
    }
    if deg == 0 {
        out.insert(p1_point(&Poly::zero(f), &Poly::one(f), n).unwrap());
    }
    out.into_iter().collect()
}

/// `[GL₂(A) : Γ0(n)] = |n| ∏_{p | n} (1 + 1/|p|)`.
pub fn gamma0_index(n: &IdealA) -> u64 {
    let mut idx = n.norm();
    for (p, _) in n.factor() {
        idx = idx / p.norm() * (p.norm() + 1);
    }
    idx
}

/// Canonical label of Γ0(n)·M for a primitive integral `M`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CosetKey {
    hnf: [Poly; 4],
    pub p1: P1Point,
    level: IdealA,
}

impl CosetKey {
    pub fn hnf(&self) -> Mat2 {
        let [a, b, c, d] = self.hnf.clone();
        Mat2::from_polys(a, b, c, d)
    }
    pub fn hnf_polys(&self) -> &[Poly; 4] {
        &self.hnf
    }
    pub fn level(&self) -> &IdealA {
        &self.level
    }

    /// A primitive matrix whose key is `self` with scalar adjustment 1.
    pub fn representative(&self) -> Mat2 {
        let g = lift_p1(&self.p1, &self.level);
        let rep = &g * &self.hnf();
        rep.primitive_form().unwrap().0
    }

    pub fn is_identity_class(&self) -> bool {
        let f = self.level.field();
        self.hnf == [Poly::one(f), Poly::zero(f), Poly::zero(f), Poly::one(f)] && self.p1.c.is_zero()
    }
}

impl Ord for CosetKey {
    fn cmp(&self, o: &Self) -> Ordering {
        // determinant degree first keeps tables readable
        (self.hnf[0].deg_i() + self.hnf[3].deg_i())
            .cmp(&(o.hnf[0].deg_i() + o.hnf[3].deg_i()))
            .then_with(|| self.hnf.cmp(&o.hnf))
            .then_with(|| self.p1.cmp(&o.p1))
            .then_with(|| self.level.cmp(&o.level))
    }
}
impl PartialOrd for CosetKey {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for CosetKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} | {}]", self.hnf(), self.p1)
    }
}
impl fmt::Debug for CosetKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CosetKey{self}")
    }
}

/// An SL₂(A) matrix whose bottom row reduces to the given point.
pub fn lift_p1(pt: &P1Point, n: &IdealA) -> Mat2 {
    let f = n.field();
    if n.is_unit() {
        return Mat2::identity(f);
    }
    let nu = n.gen();
    let d = if pt.d.is_zero() { nu.clone() } else { pt.d.clone() };
    let bound = d.degree().unwrap() + 2;
    let c = Poly::all_below_degree(f, bound)
        .map(|k| &pt.c + &(&k * nu))
        .find(|c| c.gcd(&d).is_one())
        .expect("coprime lift exists");
    let (_, u, v) = gcd_bezout(&c, &d).unwrap();
    // v*d + u*c = 1
    Mat2::from_polys(v, -&u, c, d)
}

/// Canonical key of Γ0(n)·M, and the factor `s^{2m−k}` with `M = s·M*` for
/// the canonical primitive `M*` of the coset.
pub fn coset_key(m: &Mat2, n: &IdealA, k: i64, mt: i64) -> Result<(CosetKey, RatFunc)> {
    let (m0, s) = m.primitive_form()?;
    let (h, eps) = hnf(&m0)?;
    let [ea, _, ec, _] = eps.polys()?;
    // bottom row of eps^{-1} up to the unit det(eps)
    let p1 = p1_point(&-&ec, &ea, n)?;
    let key = CosetKey { hnf: h.polys()?, p1, level: n.clone() };
    Ok((key, s.pow(2 * mt - k)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{parse_poly, Fq};

    fn p(f: &Fq, s: &str) -> Poly {
        parse_poly(f, s).unwrap()
    }
    fn mat(f: &Fq, e: [&str; 4]) -> Mat2 {
        Mat2::from_polys(p(f, e[0]), p(f, e[1]), p(f, e[2]), p(f, e[3]))
    }

    #[test]
    fn hnf_examples() {
        let f = Fq::prime(3).unwrap();
        let id = Mat2::identity(&f);
        assert_eq!(hnf(&id).unwrap(), (id.clone(), id.clone()));
        let (h, eps) = hnf(&mat(&f, ["0", "1", "t", "0"])).unwrap();
        assert_eq!(h, mat(&f, ["t", "0", "0", "1"]));
        assert_eq!(&eps * &mat(&f, ["0", "1", "t", "0"]), h);
        assert_eq!(hnf(&mat(&f, ["1", "0", "t", "1"])).unwrap().0, id);
        assert_eq!(hnf(&mat(&f, ["0", "0", "t", "1"])), Err(Error::Singular));
    }

    #[test]
    fn p1_examples() {
        let f = Fq::prime(3).unwrap();
        let n = IdealA::new(p(&f, "t")).unwrap();
        assert_eq!(p1_point(&p(&f, "t"), &p(&f, "1"), &n).unwrap(), P1Point { c: p(&f, "0"), d: p(&f, "1") });
        assert_eq!(p1_point(&p(&f, "1"), &p(&f, "t"), &n).unwrap(), P1Point { c: p(&f, "1"), d: p(&f, "0") });
        let n2 = IdealA::new(p(&f, "t^2+t")).unwrap();
        assert_eq!(p1_point(&p(&f, "t+1"), &p(&f, "t+1"), &n2), Err(Error::NonPrimitiveRow));
    }

    #[test]
    fn coset_key_examples() {
        let f = Fq::prime(3).unwrap();
        let n = IdealA::new(p(&f, "t")).unwrap();
        let id = Mat2::identity(&f);
        let (kid, s) = coset_key(&id, &n, 4, 1).unwrap();
        assert!(s.is_one());
        assert!(kid.is_identity_class());
        let two = Mat2::scalar(RatFunc::from_int(&f, 2));
        assert_eq!(coset_key(&two, &n, 4, 1).unwrap(), (kid.clone(), RatFunc::one(&f)));
        let (kw, s) = coset_key(&mat(&f, ["0", "-1", "t", "0"]), &n, 4, 1).unwrap();
        assert_eq!(kw.hnf(), mat(&f, ["t", "0", "0", "1"]));
        assert_eq!(kw.p1, P1Point { c: p(&f, "1"), d: p(&f, "0") });
        assert!(s.is_one());
        let rep = kw.representative();
        assert_eq!(coset_key(&rep, &n, 4, 1).unwrap(), (kw, RatFunc::one(&f)));
    }
}
