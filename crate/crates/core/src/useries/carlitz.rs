//! Carlitz module data: `C_a`, the constants `[i]`, `D_i`, `L_k`, the
//! expansion of `z/e_C(z)` and Goss polynomials.

use std::fmt;

use super::series::Series;
use crate::error::{Error, Result};
use crate::ffpoly::{Fq, Poly, RatFunc};

/// An F_q-linear polynomial `Σ a_i X^{q^i}`, stored by its τ-coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarlitzPoly {
    pub coeffs: Vec<Poly>,
}

impl CarlitzPoly {
    pub fn field(&self) -> &Fq {
        self.coeffs[0].field()
    }

    /// `deg_τ`, which equals `deg a` for `C_a`.
    pub fn tau_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Dense coefficients in X (index = exponent).
    pub fn to_x_coeffs(&self) -> Vec<Poly> {
        let q = self.field().q() as usize;
        let top = q.pow(self.tau_degree() as u32);
        let mut v = vec![Poly::zero(self.field()); top + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[q.pow(i as u32)] = c.clone();
        }
        v
    }

    /// Composition `self ∘ other` in the twisted ring `A{τ}`.
    pub fn compose(&self, other: &CarlitzPoly) -> CarlitzPoly {
        let f = self.field();
        let mut v = vec![Poly::zero(f); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let mut bq = b.clone();
                for _ in 0..i {
                    bq = bq.frobenius();
                }
                v[i + j] = &v[i + j] + &(a * &bq);
            }
        }
        CarlitzPoly { coeffs: v }
    }
}

impl fmt::Display for CarlitzPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.field().q() as u64;
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = q.pow(i as u32);
            let x = if e == 1 { "X".to_string() } else { format!("X^{e}") };
            parts.push(if c.is_one() { x } else { format!("({c})*{x}") });
        }
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// The Carlitz polynomial `C_a(X)`.
pub fn carlitz_poly(a: &Poly) -> Result<CarlitzPoly> {
    let f = a.field();
    if a.is_zero() {
        return Ok(CarlitzPoly { coeffs: vec![Poly::zero(f)] });
    }
    let ct = CarlitzPoly { coeffs: vec![Poly::t(f), Poly::one(f)] };
    let mut power = CarlitzPoly { coeffs: vec![Poly::one(f)] };
    let mut acc = vec![Poly::zero(f); a.degree().unwrap() + 1];
    for (k, &c) in a.coeffs().iter().enumerate() {
        if k > 0 {
            power = ct.compose(&power);
        }
        for (i, pc) in power.coeffs.iter().enumerate() {
            acc[i] = &acc[i] + &pc.scale(c);
        }
    }
    Ok(CarlitzPoly { coeffs: acc })
}

/// `[i] = t^{q^i} - t`.
pub fn bracket(f: &Fq, i: u32) -> Poly {
    let q = f.q() as usize;
    &Poly::monomial(f, 1, q.pow(i)) - &Poly::t(f)
}

/// `D_0 = 1`, `D_i = [i]·D_{i-1}^q`, for `i ≤ n`.
pub fn carlitz_d(f: &Fq, n: u32) -> Vec<Poly> {
    let q = f.q() as u64;
    let mut v = vec![Poly::one(f)];
    for i in 1..=n {
        let prev = v.last().unwrap().pow(q);
        v.push(&bracket(f, i) * &prev);
    }
    v
}

/// `L_k = [k][k-1]⋯[1]`, the lcm of the monic polynomials of degree `k`.
pub fn carlitz_l(f: &Fq, k: u32) -> Poly {
    (1..=k).fold(Poly::one(f), |acc, i| &acc * &bracket(f, i))
}

/// Coefficients `β_0..β_n` of `z/e_C(z) = Σ β_j z^j`.
pub fn beta_coeffs(f: &Fq, n: usize) -> Result<Vec<RatFunc>> {
    let q = f.q() as usize;
    let mut dn = 0u32;
    while q.pow(dn + 1) - 1 <= n {
        dn += 1;
    }
    let ds = carlitz_d(f, dn);
    // e_C(z)/z = Σ z^{q^i - 1} / D_i
    let zero = RatFunc::zero(f);
    let mut v = vec![zero.clone(); n + 1];
    for (i, d) in ds.iter().enumerate() {
        let e = q.pow(i as u32) - 1;
        if e <= n {
            v[e] = RatFunc::from_poly(d.clone()).inv()?;
        }
    }
    Ok(Series::new(v, n + 1, &zero).inverse()?.coeffs().to_vec())
}

/// Goss polynomials `G_0..G_nmax` of the F_q-lattice whose exponential is
/// `e(z) = Σ α_i z^{q^i}` (with `α_0 = 1`).
///
/// `G_0 = 0`, `G_1 = X`, `G_n = X·(G_{n-1} + Σ_{i≥1} α_i G_{n-q^i})`.
#[derive(Clone, Debug)]
pub struct GossTable {
    /// `polys[n][j]` is the coefficient of `X^j` in `G_n`.
    pub polys: Vec<Vec<RatFunc>>,
}

impl GossTable {
    pub fn new(f: &Fq, alphas: &[RatFunc], nmax: usize) -> Self {
        let q = f.q() as usize;
        let zero = RatFunc::zero(f);
        let mut polys: Vec<Vec<RatFunc>> = vec![vec![]; nmax + 1];
        for n in 1..=nmax {
            if n == 1 {
                polys[1] = vec![zero.clone(), RatFunc::one(f)];
                continue;
            }
            let mut inner = polys[n - 1].clone();
            let mut i = 1;
            while i < alphas.len() && q.pow(i as u32) < n {
                let g = &polys[n - q.pow(i as u32)];
                if inner.len() < g.len() {
                    inner.resize(g.len(), zero.clone());
                }
                for (j, c) in g.iter().enumerate() {
                    inner[j] = &inner[j] + &(c * &alphas[i]);
                }
                i += 1;
            }
            let mut g = vec![zero.clone()];
            g.extend(inner);
            while g.last().is_some_and(|c| c.is_zero()) {
                g.pop();
            }
            polys[n] = g;
        }
        GossTable { polys }
    }

    /// Goss polynomials of the Carlitz lattice `π̃A` (`α_i = 1/D_i`).
    pub fn carlitz(f: &Fq, nmax: usize) -> Result<Self> {
        let q = f.q() as usize;
        let mut k = 0u32;
        while q.pow(k + 1) <= nmax {
            k += 1;
        }
        let alphas = carlitz_d(f, k).into_iter().map(|d| RatFunc::from_poly(d).inv()).collect::<Result<Vec<_>>>()?;
        Ok(GossTable::new(f, &alphas, nmax))
    }

    /// Goss polynomials of the P-torsion lattice, with exponential `C_P(X)/P`.
    pub fn torsion(p: &Poly, nmax: usize) -> Result<Self> {
        let c = carlitz_poly(p)?;
        let pr = RatFunc::from_poly(p.clone());
        let alphas =
            c.coeffs.iter().map(|ci| Ok(&RatFunc::from_poly(ci.clone()) * &pr.inv()?)).collect::<Result<Vec<_>>>()?;
        Ok(GossTable::new(p.field(), &alphas, nmax))
    }

    pub fn get(&self, n: usize) -> Result<&[RatFunc]> {
        self.polys.get(n).map(|v| v.as_slice()).ok_or_else(|| Error::Precision(format!("Goss table stops below {n}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::parse_poly;

    #[test]
    fn carlitz_t_squared() {
        let f = Fq::prime(3).unwrap();
        let c = carlitz_poly(&parse_poly(&f, "t^2").unwrap()).unwrap();
        // C_{t^2} = t^2 X + (t + t^3) X^3 + X^9
        assert_eq!(c.to_string(), "X^9 + (t^3+t)*X^3 + (t^2)*X");
    }

    #[test]
    fn carlitz_is_a_ring_map() {
        let f = Fq::prime(3).unwrap();
        let a = parse_poly(&f, "t^2+2").unwrap();
        let b = parse_poly(&f, "t+1").unwrap();
        let ab = carlitz_poly(&(&a * &b)).unwrap();
        let comp = carlitz_poly(&a).unwrap().compose(&carlitz_poly(&b).unwrap());
        assert_eq!(ab, comp);
    }

    #[test]
    fn l_is_lcm_of_monics() {
        for q in [2u32, 3] {
            let f = Fq::prime(q).unwrap();
            for k in 1..=3u32 {
                let lcm = Poly::monics_of_degree(&f, k as usize).fold(Poly::one(&f), |a, m| a.lcm(&m));
                assert_eq!(carlitz_l(&f, k), lcm);
            }
        }
    }

    #[test]
    fn beta_starts_with_minus_inverse_d1() {
        let f = Fq::prime(3).unwrap();
        let b = beta_coeffs(&f, 4).unwrap();
        assert!(b[0].is_one());
        let d1 = RatFunc::from_poly(carlitz_d(&f, 1)[1].clone());
        assert_eq!(b[2], -&d1.inv().unwrap());
        assert!(b[1].is_zero() && b[3].is_zero());
    }

    #[test]
    fn goss_small_cases() {
        let f = Fq::prime(3).unwrap();
        let g = GossTable::carlitz(&f, 5).unwrap();
        for n in 1..=3 {
            // G_n = X^n for n ≤ q
            let mut want = vec![RatFunc::zero(&f); n + 1];
            want[n] = RatFunc::one(&f);
            assert_eq!(g.polys[n], want);
        }
        // G_4 = X^4 + X^2/D_1
        let d1 = RatFunc::from_poly(carlitz_d(&f, 1)[1].clone()).inv().unwrap();
        assert_eq!(g.polys[4][2], d1);
        assert!(g.polys[4][4].is_one());
    }
}
