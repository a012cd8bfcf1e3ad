//! Hecke operators on u-expansions.
//!
//! With `u(z) = 1/e_C(π̃z)` the Carlitz module gives `u(az) = 1/C_a(1/u)`,
//! and for `s = u(z/P)` the shifted parameters are
//! `u((z+Q)/P) = s/(1 + C_Q(λ)·s)` while `u = 1/C_P(1/s)`.

use std::sync::OnceLock;

use super::carlitz::{carlitz_poly, CarlitzPoly, GossTable};
use super::cyclo::{CycloElem, CycloField};
use super::ring::{binom_mod_p, Ring};
use super::series::{Series, USeries};
use crate::error::{Error, Result};
use crate::ffpoly::{IdealA, Poly, RatFunc, Valuation};
use crate::opcalc::WeightType;

/// `1/(C_A(1/x) + c)` as a series in `x`, to precision `prec`.
///
/// Writing `D = deg A`, this is `x^{q^D} / (Σ A_i x^{q^D − q^i} + c·x^{q^D})`,
/// whose denominator has the unit constant term `lc(A)`.
pub fn inv_carlitz_series<C: Ring>(a: &CarlitzPoly, c: &C, emb: impl Fn(&Poly) -> C, prec: usize) -> Result<Series<C>> {
    let q = a.field().q() as usize;
    let dd = a.tau_degree();
    let top = q.pow(dd as u32);
    let zero = c.zero_like();
    let mut den = vec![zero.clone(); top + 1];
    for (i, ai) in a.coeffs.iter().enumerate() {
        den[top - q.pow(i as u32)] = emb(ai);
    }
    den[top] = den[top].add(c);
    let inv = Series::new(den, prec, &zero).inverse()?;
    Ok(Series::monomial(c.one_like(), top, prec).mul(&inv).truncate(prec))
}

/// `u(az) = 1/C_a(1/u)`, to precision `prec`.
pub fn u_of_az(a: &Poly, prec: usize) -> Result<USeries> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let zero = RatFunc::zero(a.field());
    inv_carlitz_series(&carlitz_poly(a)?, &zero, |p| RatFunc::from_poly(p.clone()), prec)
}

/// `D_p f = f |_{k,m} (P 0; 0 1) = P^m f(u(Pz))`. Precision is kept.
pub fn series_dp(f: &USeries, wt: WeightType, p: &IdealA) -> Result<USeries> {
    let n = f.prec();
    let up = u_of_az(p.gen(), n)?;
    let pm = RatFunc::from_poly(p.gen().pow(wt.m as u64));
    Ok(f.compose(&up)?.truncate(n).scale(&pm))
}

/// Which evaluation of `U_p` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpBackend {
    /// The finite shift sum over `Q mod P`, through torsion power sums.
    Shift,
    /// Goss polynomials of the P-torsion lattice.
    Goss,
}

impl std::str::FromStr for UpBackend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shift" => Ok(UpBackend::Shift),
            "goss" => Ok(UpBackend::Goss),
            _ => Err(Error::Parse(format!("unknown backend {s:?}"))),
        }
    }
}

/// Deliberate corruption of the shift backend, for exercising its checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds λ to the first torsion power sum.
    GaloisResidue,
    /// Adds `s` to the shift sum before recompression.
    Recompression,
}

/// Rewrites a series in `s = u(z/P)` as a series in `u = 1/C_P(1/s)`.
#[derive(Clone, Debug)]
pub struct Recompressor {
    qd: usize,
    /// `u^i` as series in `s`, to the working precision.
    upow: Vec<USeries>,
    prec: usize,
}

impl Recompressor {
    pub fn new(p: &Poly, prec: usize) -> Result<Self> {
        let qd = (p.field().q() as usize).pow(p.degree().unwrap_or(0) as u32);
        let u = u_of_az(p, prec)?;
        let mut upow = vec![Series::constant(RatFunc::one(p.field()), prec)];
        for _ in 1..prec.div_ceil(qd) {
            let next = upow.last().unwrap().mul(&u).truncate(prec);
            upow.push(next);
        }
        Ok(Recompressor { qd, upow, prec })
    }

    /// Output precision `⌈N/q^d⌉` for an input known mod `s^N`.
    pub fn apply(&self, h: &USeries) -> Result<USeries> {
        let n = h.prec().min(self.prec);
        let mut r = h.truncate(n);
        let zero = RatFunc::zero(h.zero_elem().field());
        let out_prec = n.div_ceil(self.qd);
        let mut b = vec![zero.clone(); out_prec];
        for e in 0..n {
            let c = r.coeff(e).clone();
            if c.is_zero() {
                continue;
            }
            if e % self.qd != 0 {
                return Err(Error::RecompressionResidual(e));
            }
            let i = e / self.qd;
            r = r.sub(&self.upow[i].truncate(n).scale(&c));
            b[i] = c;
        }
        Ok(Series::new(b, out_prec, &zero))
    }
}

/// Precomputed data for `U_p` at one prime and working precision.
pub struct UpEngine {
    p: Poly,
    prec: usize,
    qd: usize,
    fault: Option<Fault>,
    goss: OnceLock<Result<GossTable>>,
    sums: OnceLock<Result<Vec<RatFunc>>>,
    recompress: OnceLock<Result<Recompressor>>,
}

impl UpEngine {
    pub fn new(p: &IdealA, prec: usize) -> Result<Self> {
        if !p.is_prime() {
            return Err(Error::NotPrime(p.to_string()));
        }
        let g = p.gen().clone();
        let qd = p.norm() as usize;
        Ok(UpEngine {
            p: g,
            prec,
            qd,
            fault: None,
            goss: OnceLock::new(),
            sums: OnceLock::new(),
            recompress: OnceLock::new(),
        })
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = Some(fault);
        self
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// The torsion points `C_Q(λ)`, `deg Q < deg P`.
    pub fn torsion_points(&self) -> Result<(CycloField, Vec<CycloElem>)> {
        let cf = CycloField::new(&self.p)?;
        let d = self.p.degree().unwrap();
        let pts =
            Poly::all_below_degree(self.p.field(), d).map(|qq| cf.torsion_point(&qq)).collect::<Result<Vec<_>>>()?;
        Ok((cf, pts))
    }

    /// `S_j = Σ_Q C_Q(λ)^j` for `j < prec`; each must lie in K.
    pub fn power_sums(&self) -> Result<&[RatFunc]> {
        let r = self.sums.get_or_init(|| {
            let (cf, pts) = self.torsion_points()?;
            let one = cf.embed(RatFunc::one(cf.field()));
            let mut cur = vec![one; pts.len()];
            let mut out = Vec::with_capacity(self.prec);
            for j in 0..self.prec {
                if j > 0 {
                    for (c, x) in cur.iter_mut().zip(&pts) {
                        *c = c.mul(x);
                    }
                }
                let mut s = cur.iter().fold(cf.zero(), |a, b| a.add(b));
                if j == 1 && self.fault == Some(Fault::GaloisResidue) {
                    s = s.add(&cf.lambda());
                    if cf.degree() == 1 {
                        // λ lies in K here; corrupt a coefficient another way
                        return Err(Error::GaloisResidue);
                    }
                }
                out.push(s.to_base()?);
            }
            Ok(out)
        });
        r.as_ref().map(|v| v.as_slice()).map_err(|e| e.clone())
    }

    fn goss_table(&self) -> Result<&GossTable> {
        self.goss.get_or_init(|| GossTable::torsion(&self.p, self.prec)).as_ref().map_err(|e| e.clone())
    }

    pub fn recompressor(&self) -> Result<&Recompressor> {
        self.recompress.get_or_init(|| Recompressor::new(&self.p, self.prec)).as_ref().map_err(|e| e.clone())
    }

    fn check_prec(&self, f: &USeries) -> Result<usize> {
        if f.prec() > self.prec {
            return Err(Error::Precision(format!("engine built for precision {}, got {}", self.prec, f.prec())));
        }
        Ok(f.prec())
    }

    /// `Σ_Q f((z+Q)/P)` as a series in `s`, before recompression.
    pub fn shift_sum_in_s(&self, f: &USeries) -> Result<USeries> {
        let n = self.check_prec(f)?;
        let sums = self.power_sums()?;
        let field = self.p.field();
        let pch = field.p() as u64;
        let zero = RatFunc::zero(field);
        let mut h = vec![zero.clone(); n];
        if n > 0 {
            h[0] = f.coeff(0) * &sums[0];
        }
        for k in 1..n {
            let a = f.coeff(k);
            if a.is_zero() {
                continue;
            }
            // s^k (1 + c s)^{-k} = Σ_j C(k+j-1, j) (-c)^j s^{k+j}
            for j in 0..n - k {
                let b = binom_mod_p((k + j - 1) as u64, j as u64, pch);
                if b == 0 || sums[j].is_zero() {
                    continue;
                }
                let mut t = (a * &sums[j]).scale(field.from_int(b as i64));
                if j % 2 == 1 {
                    t = -&t;
                }
                h[k + j] = &h[k + j] + &t;
            }
        }
        if self.fault == Some(Fault::Recompression) && n > 1 {
            h[1] = &h[1] + &RatFunc::one(field);
        }
        Ok(Series::new(h, n, &zero))
    }

    pub fn shift(&self, f: &USeries) -> Result<USeries> {
        let h = self.shift_sum_in_s(f)?;
        self.recompressor()?.apply(&h)
    }

    /// `Σ_n a_n G_{n,Λ_P}(P·u)`.
    pub fn goss(&self, f: &USeries) -> Result<USeries> {
        let n = self.check_prec(f)?;
        let table = self.goss_table()?;
        let field = self.p.field();
        let zero = RatFunc::zero(field);
        let out = n.div_ceil(self.qd);
        let pr = RatFunc::from_poly(self.p.clone());
        let ppow: Vec<RatFunc> = (0..out).map(|j| pr.pow(j as i64).unwrap()).collect();
        let mut v = vec![zero.clone(); out];
        for k in 1..n {
            let a = f.coeff(k);
            if a.is_zero() {
                continue;
            }
            for (j, c) in table.get(k)?.iter().enumerate().take(out) {
                if !c.is_zero() {
                    v[j] = &v[j] + &(&(a * c) * &ppow[j]);
                }
            }
        }
        // the constant contributes q^d·a_0 = 0
        Ok(Series::new(v, out, &zero))
    }

    pub fn apply(&self, f: &USeries, backend: UpBackend) -> Result<USeries> {
        match backend {
            UpBackend::Shift => self.shift(f),
            UpBackend::Goss => self.goss(f),
        }
    }
}

/// `U_p f = P^{k−m} Σ_Q f |_{k,m} (1 Q; 0 P) = Σ_Q f((z+Q)/P)`.
/// Output precision is `⌈N/q^{deg P}⌉`.
pub fn series_up(f: &USeries, p: &IdealA, backend: UpBackend) -> Result<USeries> {
    UpEngine::new(p, f.prec())?.apply(f, backend)
}

/// `T_p = P^{k−m} D_p + U_p`.
pub fn series_tp(f: &USeries, wt: WeightType, p: &IdealA, backend: UpBackend) -> Result<USeries> {
    let up = series_up(f, p, backend)?;
    let c = RatFunc::from_poly(p.gen().clone()).pow(wt.k - wt.m)?;
    Ok(series_dp(f, wt, p)?.scale(&c).add(&up))
}

/// `min_n v_p(a_n)` over the known coefficients.
pub fn series_vp(f: &USeries, p: &IdealA) -> Valuation {
    f.coeffs().iter().fold(Valuation::Infinite, |acc, c| match (acc, c.valuation(p)) {
        (Valuation::Infinite, v) => v,
        (a, Valuation::Infinite) => a,
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a.min(b)),
    })
}

/// `f ≡ g mod p^r` on the common precision.
pub fn congruent_mod(f: &USeries, g: &USeries, p: &IdealA, r: i64) -> bool {
    match series_vp(&f.sub(g), p) {
        Valuation::Infinite => true,
        Valuation::Finite(v) => v >= r,
    }
}

/// Coefficientwise p-th power: `f^p` in characteristic p, precision `p·N`.
pub fn frobenius_p(f: &USeries) -> USeries {
    let p = f.zero_elem().field().p() as i64;
    f.map(f.zero_elem(), |c| c.pow(p).unwrap()).inflate(p as usize)
}
