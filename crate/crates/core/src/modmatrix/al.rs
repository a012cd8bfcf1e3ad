//! Atkin–Lehner matrices, trace representatives and random elements of Γ0(n).

use rand::Rng;

use super::mat2::Mat2;
use crate::error::{Error, Result};
use crate::ffpoly::{gcd_bezout, Elem, Fq, IdealA, Poly, RatFunc};

/// A matrix `(δa b; νc δd)` with `δ²ad − νcb = ζδ`, for `d || n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ALMatrix {
    pub matrix: Mat2,
    pub d: IdealA,
    pub n: IdealA,
    pub zeta: Elem,
}

impl ALMatrix {
    /// Checks the shape and determinant of `m` and recovers ζ.
    pub fn validate(m: Mat2, d: &IdealA, n: &IdealA) -> Result<ALMatrix> {
        check_exact(d, n)?;
        let [a, _, c, dd] = m.polys()?;
        let delta = d.gen();
        let shape = delta.divides(&a) && n.gen().divides(&c) && delta.divides(&dd);
        let ratio = &m.det() / &RatFunc::from_poly(delta.clone());
        match ratio.as_constant() {
            Some(z) if z != 0 && shape => Ok(ALMatrix { matrix: m, d: d.clone(), n: n.clone(), zeta: z }),
            _ => Err(Error::Divisibility(format!("{m} is not an Atkin-Lehner matrix for {d} || {n}"))),
        }
    }
}

fn check_exact(d: &IdealA, n: &IdealA) -> Result<()> {
    if d.exactly_divides(n) {
        Ok(())
    } else {
        Err(Error::NotExactDivisor { d: d.to_string(), n: n.to_string() })
    }
}

/// The deterministic representative `W_d^n` with ζ = 1. For `d = (1)` this
/// is the identity and for `d = n` the Fricke matrix `(0 −1; ν 0)`; otherwise
/// `(δ −v; ν δu)` from `uδ + v(ν/δ) = 1`.
pub fn al_representative(d: &IdealA, n: &IdealA) -> Result<ALMatrix> {
    check_exact(d, n)?;
    let f = n.field();
    let nu = n.gen().clone();
    let delta = d.gen().clone();
    let m = if d.is_unit() {
        Mat2::identity(f)
    } else if d == n {
        Mat2::from_polys(Poly::zero(f), -&Poly::one(f), nu, Poly::zero(f))
    } else {
        let e = nu.div_exact(&delta)?;
        let (_, u, v) = gcd_bezout(&delta, &e)?;
        Mat2::from_polys(delta.clone(), -&v, nu, &delta * &u)
    };
    ALMatrix::validate(m, d, n)
}

/// Representatives for Γ0(mp)\Γ0(m): `(1 0; πu 1)` for `deg u < deg P`, and
/// `(β −α; π P)` with `απ + βP = 1`.
pub fn coset_reps(m: &IdealA, p: &IdealA) -> Result<Vec<Mat2>> {
    if !p.is_prime() {
        return Err(Error::NotPrime(p.to_string()));
    }
    if p.divides(m) {
        return Err(Error::Divisibility(format!("{p} divides {m}")));
    }
    let f = m.field();
    let pi = m.gen();
    let pp = p.gen();
    let mut out: Vec<Mat2> = Poly::all_below_degree(f, p.degree())
        .map(|u| Mat2::from_polys(Poly::one(f), Poly::zero(f), pi * &u, Poly::one(f)))
        .collect();
    let (_, alpha, beta) = gcd_bezout(pi, pp)?;
    out.push(Mat2::from_polys(beta, -&alpha, pi.clone(), pp.clone()));
    Ok(out)
}

fn random_poly<R: Rng>(f: &Fq, rng: &mut R, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let q = f.q();
    Poly::from_coeffs(f, (0..=deg).map(|_| rng.gen_range(0..q) as Elem).collect())
}

/// A random element of Γ0(n) ∩ SL₂(A), as a product of elementary matrices.
pub fn random_gamma0_sl2<R: Rng>(n: &IdealA, rng: &mut R, steps: usize, max_deg: usize) -> Mat2 {
    let f = n.field();
    let one = Poly::one(f);
    let zero = Poly::zero(f);
    let mut g = Mat2::identity(f);
    for _ in 0..steps {
        let x = random_poly(f, rng, max_deg);
        let e = if rng.gen_bool(0.5) {
            Mat2::from_polys(one.clone(), x, zero.clone(), one.clone())
        } else {
            Mat2::from_polys(one.clone(), zero.clone(), n.gen() * &x, one.clone())
        };
        g = &g * &e;
    }
    g
}

/// A random element of Γ0(n), including a random unit diagonal.
pub fn random_gamma0<R: Rng>(n: &IdealA, rng: &mut R, steps: usize, max_deg: usize) -> Mat2 {
    let f = n.field();
    let units: Vec<Elem> = f.units().collect();
    let u1 = units[rng.gen_range(0..units.len())];
    let u2 = units[rng.gen_range(0..units.len())];
    let dg = Mat2::from_polys(Poly::constant(f, u1), Poly::zero(f), Poly::zero(f), Poly::constant(f, u2));
    &random_gamma0_sl2(n, rng, steps, max_deg) * &dg
}

/// A random element of GL₂(A).
pub fn random_gl2<R: Rng>(f: &Fq, rng: &mut R, steps: usize, max_deg: usize) -> Mat2 {
    random_gamma0(&IdealA::unit(f), rng, steps, max_deg)
}

/// Another valid representative `δ₁·W·δ₂` with `δᵢ ∈ Γ0(n) ∩ SL₂(A)`.
pub fn perturb_al<R: Rng>(w: &ALMatrix, rng: &mut R) -> ALMatrix {
    let d1 = random_gamma0_sl2(&w.n, rng, 3, 1);
    let d2 = random_gamma0_sl2(&w.n, rng, 3, 1);
    let m = &(&d1 * &w.matrix) * &d2;
    ALMatrix::validate(m, &w.d, &w.n).expect("perturbation stays in the Atkin-Lehner coset")
}
