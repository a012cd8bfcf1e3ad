//! Cusps of X0(n) and the Atkin–Lehner action on them.
//!
//! A cusp is the Γ0(n)-orbit of a point `x/y` of P¹(K), written as the
//! column `(x; y)` and acted on by matrices from the left. The orbit of a
//! coprime pair is determined by `y₀ = (y, ν)` together with the class of
//! `x·(y/y₀)` modulo `(y₀, ν/y₀)` up to F_q*. Under this convention `∞ = (1:0)`
//! is the cusp `(1 : ν)` and `0 = (0:1)` is `(1 : 1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ffpoly::{IdealA, Poly};
use crate::modmatrix::{ALMatrix, Mat2};
use crate::opcalc::AlReps;

/// Canonical representative `(x : y)`: both monic, `y | ν`, `(x, ν) = 1`,
/// and `x` the least monic polynomial in its class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cusp {
    pub x: Poly,
    pub y: Poly,
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.x, self.y)
    }
}
impl fmt::Debug for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cusp{self}")
    }
}

/// True if `a ≡ ζ·b (mod g)` for some ζ ∈ F_q*.
fn same_class(a: &Poly, b: &Poly, g: &Poly) -> bool {
    let f = g.field();
    f.units().any(|z| (a - &b.scale(z)).rem(g).unwrap().is_zero())
}

/// Least monic `x` coprime to ν with `x ≡ ζ·r (mod g)`.
fn least_in_class(r: &Poly, g: &Poly, nu: &Poly) -> Poly {
    let f = nu.field();
    if g.is_one() {
        return Poly::one(f);
    }
    for deg in 0..=nu.degree().unwrap() + 4 {
        for x in Poly::monics_of_degree(f, deg) {
            if x.gcd(nu).is_one() && same_class(&x, r, g) {
                return x;
            }
        }
    }
    unreachable!("every unit class mod g has a monic lift coprime to the level")
}

/// The canonical cusp Γ0(n)-equivalent to `(x : y)`.
pub fn cusp_canonical(x: &Poly, y: &Poly, n: &IdealA) -> Cusp {
    let f = n.field();
    let nu = n.gen();
    assert!(!(x.is_zero() && y.is_zero()), "(0 : 0) is not a point of P^1");
    let g0 = x.gcd(y);
    let (x, y) = (x.div_exact(&g0).unwrap(), y.div_exact(&g0).unwrap());
    if y.is_zero() {
        return Cusp { x: Poly::one(f), y: nu.clone() };
    }
    let y0 = y.gcd(nu);
    let g = y0.gcd(&nu.div_exact(&y0).unwrap());
    let r = (&x * &y.div_exact(&y0).unwrap()).rem(&g).unwrap();
    Cusp { x: least_in_class(&r, &g, nu), y: y0 }
}

/// All cusps of X0(n), sorted by `y` then `x`.
pub fn enumerate_cusps(n: &IdealA) -> Vec<Cusp> {
    let nu = n.gen();
    let f = n.field();
    let mut out = Vec::new();
    for y in n.divisors() {
        let y = y.gen().clone();
        let g = y.gcd(&nu.div_exact(&y).unwrap());
        let mut xs: Vec<Poly> = Poly::all_below_degree(f, g.degree().unwrap())
            .filter(|r| r.gcd(&g).is_one())
            .map(|r| least_in_class(&r, &g, nu))
            .collect();
        xs.sort();
        xs.dedup();
        out.extend(xs.into_iter().map(|x| Cusp { x, y: y.clone() }));
    }
    out.sort_by(|a, b| a.y.cmp(&b.y).then_with(|| a.x.cmp(&b.x)));
    out
}

/// Left action of an integral matrix on a cusp, canonicalized.
pub fn act(m: &Mat2, c: &Cusp, n: &IdealA) -> Result<Cusp> {
    let [a, b, cc, d] = m.polys()?;
    let x = &(&a * &c.x) + &(&b * &c.y);
    let y = &(&cc * &c.x) + &(&d * &c.y);
    Ok(cusp_canonical(&x, &y, n))
}

/// Image of a cusp under `W_d^n`.
pub fn al_on_cusp(d: &IdealA, n: &IdealA, c: &Cusp) -> Result<Cusp> {
    al_on_cusp_with(d, n, c, &AlReps::Canonical)
}

pub fn al_on_cusp_with(d: &IdealA, n: &IdealA, c: &Cusp, reps: &AlReps) -> Result<Cusp> {
    let w: ALMatrix = reps.get(d, n)?;
    act(&w.matrix, c, n)
}

/// The closed-form denominator `y' = (ν₂/(y,ν₂))·(y,ν₁)` for `n₂ = d`.
pub fn al_denominator(d: &IdealA, n: &IdealA, y: &Poly) -> Poly {
    let nu2 = d.gen();
    let nu1 = n.gen().div_exact(nu2).unwrap();
    &nu2.div_exact(&y.gcd(nu2)).unwrap() * &y.gcd(&nu1)
}

/// The permutation of `enumerate_cusps(n)` induced by `W_d^n`, as indices.
pub fn al_permutation(d: &IdealA, n: &IdealA, reps: &AlReps) -> Result<Vec<usize>> {
    let cusps = enumerate_cusps(n);
    cusps
        .iter()
        .map(|c| {
            let img = al_on_cusp_with(d, n, c, reps)?;
            Ok(cusps.iter().position(|x| *x == img).expect("image is a listed cusp"))
        })
        .collect()
}

/// Cycle notation over 1-based indices, fixed points included, e.g. `(1 2)(3)`.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut s = String::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = vec![];
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cyc.push((i + 1).to_string());
            i = perm[i];
        }
        s.push_str(&format!("({})", cyc.join(" ")));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspJson {
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlActionJson {
    pub d: String,
    pub permutation: Vec<usize>,
    pub cycles: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspReport {
    pub q: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<String>,
    pub level: String,
    pub cusps: Vec<CuspJson>,
    pub atkin_lehner: Vec<AlActionJson>,
}

/// Cusp list plus the permutation of every `W_d^n`.
pub fn cusp_report(n: &IdealA) -> Result<CuspReport> {
    let f = n.field();
    let cusps = enumerate_cusps(n).into_iter().map(|c| CuspJson { x: c.x.to_string(), y: c.y.to_string() }).collect();
    let mut al = Vec::new();
    for d in n.exact_divisors() {
        let perm = al_permutation(&d, n, &AlReps::Canonical)?;
        al.push(AlActionJson {
            d: d.gen().to_string(),
            cycles: cycle_notation(&perm),
            permutation: perm.into_iter().map(|i| i + 1).collect(),
        });
    }
    Ok(CuspReport { q: f.q(), modulus: f.modulus_literal(), level: n.gen().to_string(), cusps, atkin_lehner: al })
}
