//! Modular form models: a u-expansion at ∞ plus the expansions of some
//! Atkin–Lehner images, which is what operator tables need to be evaluated.

use std::collections::BTreeMap;

use super::carlitz::{beta_coeffs, carlitz_l, carlitz_poly, GossTable};
use super::cyclo::{CycloElem, CycloField};
use super::hecke::{frobenius_p, inv_carlitz_series, series_dp, u_of_az, Recompressor, UpBackend, UpEngine};
use super::ring::Ring;
use super::series::{Series, USeries};
use crate::error::{Error, Result};
use crate::ffpoly::{Fq, IdealA, Poly, RatFunc};
use crate::modmatrix::{al_representative, coset_key, P1Point};
use crate::opcalc::{CanonicalOperator, WeightType};

/// A form of level `level` and weight/type `wt`, with the expansions of
/// `f | W_d` (canonical representative, ζ = 1) for the divisors `d` in
/// `al_images`.
#[derive(Clone, Debug)]
pub struct FormModel {
    pub name: String,
    pub level: IdealA,
    pub wt: WeightType,
    pub series: USeries,
    pub al_images: BTreeMap<IdealA, USeries>,
}

impl FormModel {
    pub fn new(name: impl Into<String>, level: IdealA, wt: WeightType, series: USeries) -> Self {
        FormModel { name: name.into(), level, wt, series, al_images: BTreeMap::new() }
    }

    pub fn with_image(mut self, d: IdealA, s: USeries) -> Self {
        self.al_images.insert(d, s);
        self
    }

    pub fn field(&self) -> &Fq {
        self.level.field()
    }

    /// `f | W_d`, if known. `d = (1)` is `f` itself.
    pub fn image(&self, d: &IdealA) -> Option<&USeries> {
        if d.is_unit() {
            Some(&self.series)
        } else {
            self.al_images.get(d)
        }
    }

    pub fn prec(&self) -> usize {
        self.al_images.values().fold(self.series.prec(), |a, s| a.min(s.prec()))
    }

    /// `c·f`, images included.
    pub fn scale(&self, c: &RatFunc) -> FormModel {
        let mut out = self.clone();
        out.series = out.series.scale(c);
        for s in out.al_images.values_mut() {
            *s = s.scale(c);
        }
        out
    }

    /// Product of forms of the same level; the slash action is multiplicative
    /// so images multiply too.
    pub fn mul(&self, o: &FormModel) -> Result<FormModel> {
        if self.level != o.level {
            return Err(Error::LevelMismatch(format!("{} vs {}", self.level, o.level)));
        }
        let q = self.field().q();
        let wt = WeightType::new(self.wt.k + o.wt.k, self.wt.m + o.wt.m, q)?;
        let mut out =
            FormModel::new(format!("{}*{}", self.name, o.name), self.level.clone(), wt, self.series.mul(&o.series));
        for (d, s) in &self.al_images {
            if let Some(t) = o.al_images.get(d) {
                out.al_images.insert(d.clone(), s.mul(t));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<FormModel> {
        let mut r = self.clone();
        for _ in 1..n {
            r = r.mul(self)?;
        }
        r.name = format!("{}^{n}", self.name);
        Ok(r)
    }

    /// `f^p`, exact to `p` times the precision.
    pub fn frobenius(&self) -> Result<FormModel> {
        let p = self.field().p() as i64;
        let wt = WeightType { k: self.wt.k * p, m: self.wt.m * p };
        if wt.m > self.field().q() as i64 - 2 {
            return Err(Error::WeightMismatch(format!("type {} after Frobenius", wt.m)));
        }
        let mut out = FormModel::new(format!("({})^{p}", self.name), self.level.clone(), wt, frobenius_p(&self.series));
        for (d, s) in &self.al_images {
            out.al_images.insert(d.clone(), frobenius_p(s));
        }
        Ok(out)
    }

    /// The same form regarded at a multiple `n` of its level, without images.
    pub fn at_level(&self, n: &IdealA) -> Result<FormModel> {
        if !self.level.divides(n) {
            return Err(Error::LevelMismatch(format!("{} does not divide {n}", self.level)));
        }
        Ok(FormModel::new(self.name.clone(), n.clone(), self.wt, self.series.clone()))
    }

    /// `f` viewed at level `m·p` through `z ↦ z` (the first embedding); for a
    /// form of level `m` the image under `W_p` is `D_p f`.
    pub fn embed_one(&self, p: &IdealA) -> Result<FormModel> {
        let mp = self.check_new_prime(p)?;
        let img = series_dp(&self.series, self.wt, p)?;
        Ok(FormModel::new(format!("D1({})", self.name), mp, self.wt, self.series.clone()).with_image(p.clone(), img))
    }

    /// `D_p f` at level `m·p`, whose `W_p` image is `P^{2m−k} f`.
    pub fn embed_p(&self, p: &IdealA) -> Result<FormModel> {
        let mp = self.check_new_prime(p)?;
        let s = series_dp(&self.series, self.wt, p)?;
        let c = RatFunc::from_poly(p.gen().clone()).pow(self.wt.scalar_exp())?;
        let img = self.series.scale(&c);
        Ok(FormModel::new(format!("Dp({})", self.name), mp, self.wt, s).with_image(p.clone(), img))
    }

    fn check_new_prime(&self, p: &IdealA) -> Result<IdealA> {
        if !p.is_prime() {
            return Err(Error::NotPrime(p.to_string()));
        }
        if !p.coprime(&self.level) {
            return Err(Error::Divisibility(format!("{p} divides the level {}", self.level)));
        }
        if !self.al_images.is_empty() {
            return Err(Error::InsufficientModel("embedding a model that carries images".into()));
        }
        Ok(self.level.mul(p))
    }
}

/// The normalized Eisenstein series `g_k` of level 1, weight `q^k − 1` and
/// type 0:
///
/// `g_k = (−1)^k L_k (β_{q^k−1} + Σ_{a monic} G_{q^k−1}(u(az)))`,
///
/// where `β_n` are the coefficients of `z/e_C(z)` and `G_n` are the Goss
/// polynomials of the Carlitz lattice. Only `a` with `q^{deg a} < prec`
/// contribute below `u^prec`.
pub fn eisenstein_gk(field: &Fq, k: u32, prec: usize) -> Result<FormModel> {
    if k == 0 {
        return Err(Error::WeightMismatch("g_k needs k >= 1".into()));
    }
    let q = field.q() as usize;
    let n = q.pow(k) - 1;
    let goss = GossTable::carlitz(field, n)?;
    let gn = goss.get(n)?;
    let beta = beta_coeffs(field, n)?;

    // Σ_{(a,b)≠0} (az+b)^{-n} = −π̃^n · sum
    let mut sum = Series::constant(beta[n].clone(), prec);
    let mut deg = 0;
    while q.pow(deg as u32) < prec {
        for a in Poly::monics_of_degree(field, deg) {
            let ua = u_of_az(&a, prec)?;
            sum = sum.add(&poly_of_series(gn, &ua, prec));
        }
        deg += 1;
    }
    sum.pi_grade = n as i64;

    // g_k = (−1)^{k+1} π̃^{1−q^k} L_k · (−π̃^n · sum)
    let lk = RatFunc::from_poly(carlitz_l(field, k));
    let sign = if k % 2 == 0 { RatFunc::one(field) } else { RatFunc::from_int(field, -1) };
    let mut g = sum.scale(&(&lk * &sign));
    g.pi_grade += 1 - q.pow(k) as i64;
    if g.pi_grade != 0 || !g.coeffs().iter().all(|c| c.is_integral()) {
        return Err(Error::NotIntegral);
    }
    let wt = WeightType { k: n as i64, m: 0 };
    Ok(FormModel::new(format!("g_{k}"), IdealA::unit(field), wt, g))
}

/// `Σ c_j x^j` evaluated at a series `x` with zero constant term.
fn poly_of_series<C: Ring>(coeffs: &[C], x: &Series<C>, prec: usize) -> Series<C> {
    let zero = x.zero_elem().clone();
    let mut acc = Series::zero(prec, &zero);
    let mut pw = Series::constant(zero.one_like(), prec);
    let ord = x.order().max(1);
    for (j, c) in coeffs.iter().enumerate() {
        if j > 0 {
            if j * ord >= prec {
                break;
            }
            pw = pw.mul(x).truncate(prec);
        }
        if !c.is_zero() {
            acc = acc.add(&pw.scale(c));
        }
    }
    acc
}

/// Vincent's forms for a prime `p = (P)` of degree `d` and level `m`:
/// `g_(0) = P^{K} g_d^n − P^{2K} D_p(g_d^n)` with `K = n(q^d − 1)`, of level
/// `m·p`, weight `K` and type 0, and `g_(r) = g_(0)^{p^r}`.
///
/// The `W_p` image is `P^K (D_p(g_d^n) − g_d^n)`, which is `≡ 0 mod p^{K+1}`.
pub fn vincent_g(m: &IdealA, p: &IdealA, n: u32, r: u32, prec: usize) -> Result<FormModel> {
    let field = p.field();
    let d = p.degree() as u32;
    let gd = eisenstein_gk(field, d, prec)?;
    let gdn = gd.pow(n)?;
    let kk = gdn.wt.k;
    let pp = RatFunc::from_poly(p.gen().clone());
    let pk = pp.pow(kk)?;
    let dp = series_dp(&gdn.series, gdn.wt, p)?;
    let s0 = gdn.series.scale(&pk).sub(&dp.scale(&pk.pow(2)?));
    let w0 = dp.sub(&gdn.series).scale(&pk);
    let mp = m.mul(p);
    let mut g = FormModel::new(format!("vincent_{n}_0"), mp, gdn.wt, s0).with_image(p.clone(), w0);
    for _ in 0..r {
        g = g.frobenius()?;
    }
    g.name = format!("vincent_{n}_{r}");
    Ok(g)
}

/// `Tr^{mp}_m F = F + P^{−m} U_p(F | W_p)` for `F` of level `m·p`.
pub fn trace_via_eqtr(f: &FormModel, p: &IdealA, backend: UpBackend) -> Result<USeries> {
    if !p.exactly_divides(&f.level) || !p.is_prime() {
        return Err(Error::Divisibility(format!("{p} must be a prime exactly dividing {}", f.level)));
    }
    let w = f.al_images.get(p).ok_or_else(|| Error::InsufficientModel(format!("{} lacks its W_{p} image", f.name)))?;
    let up = UpEngine::new(p, w.prec())?.apply(w, backend)?;
    let c = RatFunc::from_poly(p.gen().clone()).pow(-f.wt.m)?;
    Ok(f.series.add(&up.scale(&c)))
}

/// Evaluates a canonical operator table on a form model.
///
/// A coset `Γ0(N)·M` is evaluated as `(f|W_d)|H` when `W_d^{-1}·M` lies in
/// `Γ0(N)·H` for an upper triangular `H = (a b; 0 δ)` with `δ | P`. Terms
/// are computed in `K(λ)[[s]]`, `s = u(z/P)`; the sum must lie in `K[[s]]`
/// and is rewritten in `u`. Output precision is `⌈N/q^{deg P}⌉`.
pub fn eval_table(op: &CanonicalOperator, f: &FormModel, p: &IdealA) -> Result<USeries> {
    if op.domain != f.level {
        return Err(Error::LevelMismatch(format!("operator on {} applied to a form of level {}", op.domain, f.level)));
    }
    if op.wt != f.wt {
        return Err(Error::WeightMismatch(format!("operator {} applied to a form of weight {}", op.wt, f.wt)));
    }
    let field = f.field();
    let n = f.prec();
    let cf = CycloField::new(p.gen())?;
    let zero = cf.zero();
    let mut total: Series<CycloElem> = Series::zero(n, &zero);
    let mut divisors = vec![IdealA::unit(field)];
    divisors.extend(f.al_images.keys().cloned());
    let origin = P1Point { c: Poly::zero(field), d: Poly::one(field) };

    for (key, coeff) in &op.table {
        let rep = key.representative();
        let mut done = false;
        for d in &divisors {
            let w = al_representative(d, &f.level)?.matrix;
            let x = &w.inverse()? * &rep;
            let (k2, scal) = coset_key(&x, &f.level, f.wt.k, f.wt.m)?;
            if k2.p1 != origin {
                continue;
            }
            let base = f.image(d).unwrap();
            let term = slash_upper(base, k2.hnf_polys(), f.wt, &cf, n)?;
            let c = cf.embed(coeff * &scal);
            total = total.add(&term.scale(&c));
            done = true;
            break;
        }
        if !done {
            return Err(Error::NotEvaluable(format!("coset {key}")));
        }
    }
    let inbase = Series::new(
        total.coeffs().iter().map(|c| c.to_base()).collect::<Result<Vec<_>>>()?,
        total.prec(),
        &RatFunc::zero(field),
    );
    Recompressor::new(p.gen(), n)?.apply(&inbase)
}

/// `f |_{k,m} (a b; 0 δ)` as a series in `s = u(z/P)`, for `δ | P`:
/// `(aδ)^m δ^{−k} f(u((az+b)/δ))` with `1/u((az+b)/δ) = C_{aP/δ}(1/s) + C_{bP/δ}(λ)`.
fn slash_upper(f: &USeries, h: &[Poly; 4], wt: WeightType, cf: &CycloField, prec: usize) -> Result<Series<CycloElem>> {
    let [a, b, c, d] = h;
    let pg = cf.prime();
    if !c.is_zero() || !d.divides(pg) {
        return Err(Error::NotEvaluable(format!("(a b; c d) = ({a} {b}; {c} {d})")));
    }
    let e = pg.div_exact(d)?;
    let big_a = carlitz_poly(&(a * &e))?;
    let shift = cf.torsion_point(&(b * &e))?;
    let emb = |x: &Poly| cf.embed(RatFunc::from_poly(x.clone()));
    let x = inv_carlitz_series(&big_a, &shift, emb, prec)?;
    let fl = f.truncate(prec).map(&cf.zero(), |r| cf.embed(r.clone()));
    let scal = &RatFunc::from_poly((a * d).pow(wt.m as u64)) * &RatFunc::from_poly(d.clone()).pow(-wt.k)?;
    Ok(fl.compose(&x)?.truncate(prec).scale(&cf.embed(scal)))
}
