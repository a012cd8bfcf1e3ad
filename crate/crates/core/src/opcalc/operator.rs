//! Formal operators: finite K-linear sums of slash terms `f ↦ Σ c·f|M`.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffpoly::{IdealA, Poly, RatFunc};
use crate::modmatrix::{al_representative, coset_key, coset_reps, perturb_al, ALMatrix, CosetKey, Mat2};

/// Weight `k` and type `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct WeightType {
    pub k: i64,
    pub m: i64,
}

impl WeightType {
    pub fn new(k: i64, m: i64, q: u32) -> Result<Self> {
        if k < 1 || m < 0 || m > q as i64 - 2 {
            return Err(Error::WeightMismatch(format!("need k >= 1 and 0 <= m <= q-2, got ({k}, {m})")));
        }
        Ok(WeightType { k, m })
    }

    /// `k ≡ 2m (mod q−1)`; otherwise the space of forms is zero and scalar
    /// matrices act by nontrivial units.
    pub fn is_congruent(&self, q: u32) -> bool {
        (self.k - 2 * self.m).rem_euclid(q as i64 - 1) == 0
    }

    pub fn warning(&self, q: u32) -> Option<String> {
        (!self.is_congruent(q)).then(|| {
            format!("k = {} is not congruent to 2m = {} mod {}; the space of forms is zero", self.k, 2 * self.m, q - 1)
        })
    }

    /// The exponent `2m − k` of the scalar action.
    pub fn scalar_exp(&self) -> i64 {
        2 * self.m - self.k
    }
}

impl fmt::Display for WeightType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(k={}, m={})", self.k, self.m)
    }
}

/// Which Atkin–Lehner representative `op_w` uses.
pub enum AlReps {
    Canonical,
    /// A fresh random conjugate `δ₁·W·δ₂` for every request.
    Randomized(RefCell<ChaCha8Rng>),
}

impl AlReps {
    pub fn randomized(seed: u64) -> Self {
        AlReps::Randomized(RefCell::new(ChaCha8Rng::seed_from_u64(seed)))
    }

    pub fn get(&self, d: &IdealA, n: &IdealA) -> Result<ALMatrix> {
        let w = al_representative(d, n)?;
        Ok(match self {
            AlReps::Canonical => w,
            AlReps::Randomized(rng) => perturb_al(&w, &mut *rng.borrow_mut()),
        })
    }
}

/// `Σ coeff·(f |_{k,m} mat)` on forms invariant under Γ0(domain), landing in
/// forms invariant under Γ0(codomain).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operator {
    domain: IdealA,
    codomain: IdealA,
    wt: WeightType,
    terms: Vec<(RatFunc, Mat2)>,
}

impl Operator {
    pub fn new(domain: IdealA, codomain: IdealA, wt: WeightType, terms: Vec<(RatFunc, Mat2)>) -> Self {
        Operator { domain, codomain, wt, terms }
    }

    pub fn identity(level: &IdealA, wt: WeightType) -> Self {
        let f = level.field();
        Operator::new(level.clone(), level.clone(), wt, vec![(RatFunc::one(f), Mat2::identity(f))])
    }

    pub fn zero(level: &IdealA, wt: WeightType) -> Self {
        Operator::new(level.clone(), level.clone(), wt, Vec::new())
    }

    pub fn domain_level(&self) -> &IdealA {
        &self.domain
    }
    pub fn codomain_level(&self) -> &IdealA {
        &self.codomain
    }
    pub fn wt(&self) -> WeightType {
        self.wt
    }
    pub fn terms(&self) -> &[(RatFunc, Mat2)] {
        &self.terms
    }

    pub fn scale(&self, c: &RatFunc) -> Operator {
        let terms = self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect();
        Operator { terms, ..self.clone() }
    }

    fn check_same(&self, o: &Operator) -> Result<()> {
        if self.domain != o.domain {
            return Err(Error::LevelMismatch(format!("domains {} and {}", self.domain, o.domain)));
        }
        if self.wt != o.wt {
            return Err(Error::WeightMismatch(format!("{} and {}", self.wt, o.wt)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Operator) -> Result<Operator> {
        self.check_same(o)?;
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Ok(Operator { codomain: self.codomain.lcm(&o.codomain), terms, ..self.clone() })
    }

    pub fn sub(&self, o: &Operator) -> Result<Operator> {
        self.add(&o.scale(&-&RatFunc::one(self.domain.field())))
    }

    /// `outer ∘ inner`: apply `inner` first. Term matrices multiply as
    /// `M_inner·M_outer` because the slash action is a right action.
    pub fn compose(outer: &Operator, inner: &Operator) -> Result<Operator> {
        if outer.wt != inner.wt {
            return Err(Error::WeightMismatch(format!("{} and {}", outer.wt, inner.wt)));
        }
        if !inner.codomain.divides(&outer.domain) {
            return Err(Error::LevelMismatch(format!(
                "output level {} does not divide input level {}",
                inner.codomain, outer.domain
            )));
        }
        let mut terms = Vec::with_capacity(outer.terms.len() * inner.terms.len());
        for (c1, m1) in &inner.terms {
            for (c2, m2) in &outer.terms {
                terms.push((c1 * c2, m1 * m2));
            }
        }
        Ok(Operator::new(inner.domain.clone(), outer.codomain.clone(), inner.wt, terms))
    }

    /// The same operator read on forms of a smaller level `new | domain`.
    pub fn restrict(&self, new_domain: &IdealA) -> Result<Operator> {
        if !new_domain.divides(&self.domain) {
            return Err(Error::Divisibility(format!("{new_domain} does not divide {}", self.domain)));
        }
        Ok(Operator { domain: new_domain.clone(), ..self.clone() })
    }

    pub fn canonicalize(&self) -> Result<CanonicalOperator> {
        let mut table: BTreeMap<CosetKey, RatFunc> = BTreeMap::new();
        for (c, m) in &self.terms {
            let (key, s) = coset_key(m, &self.domain, self.wt.k, self.wt.m)?;
            let add = c * &s;
            let e = table.entry(key).or_insert_with(|| RatFunc::zero(c.field()));
            *e = &*e + &add;
        }
        table.retain(|_, v| !v.is_zero());
        Ok(CanonicalOperator { domain: self.domain.clone(), wt: self.wt, table })
    }
}

/// Normal form: coset label → coefficient, zeros pruned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalOperator {
    pub domain: IdealA,
    pub wt: WeightType,
    pub table: BTreeMap<CosetKey, RatFunc>,
}

impl CanonicalOperator {
    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Back to an operator with one representative per coset.
    pub fn to_operator(&self) -> Operator {
        let terms = self.table.iter().map(|(k, c)| (c.clone(), k.representative())).collect();
        Operator::new(self.domain.clone(), self.domain.clone(), self.wt, terms)
    }

    /// Entries of `self − other` that are nonzero.
    pub fn diff(&self, other: &CanonicalOperator) -> BTreeMap<CosetKey, RatFunc> {
        let mut out = self.table.clone();
        for (k, v) in &other.table {
            let e = out.entry(k.clone()).or_insert_with(|| RatFunc::zero(v.field()));
            *e = &*e - v;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// Exact equality on Γ0(domain)-invariant forms of the given weight and type.
pub fn op_equal(a: &Operator, b: &Operator) -> Result<bool> {
    a.check_same(b)?;
    Ok(a.canonicalize()? == b.canonicalize()?)
}

fn power(p: &Poly, e: i64) -> RatFunc {
    RatFunc::from_poly(p.clone()).pow(e).unwrap()
}

fn t_matrices(p: &IdealA) -> Vec<Mat2> {
    let f = p.field();
    let pp = p.gen();
    Poly::all_below_degree(f, p.degree())
        .map(|q| Mat2::from_polys(Poly::one(f), q, Poly::zero(f), pp.clone()))
        .collect()
}

/// `T_p = P^{k−m}[(P 0; 0 1)] + P^{k−m} Σ_{deg Q < d} [(1 Q; 0 P)]` on level `n`.
pub fn op_tp(p: &IdealA, n: &IdealA, wt: WeightType) -> Result<Operator> {
    if !p.is_prime() {
        return Err(Error::NotPrime(p.to_string()));
    }
    if p.divides(n) {
        return Err(Error::Divisibility(format!("{p} divides {n}; use U_p")));
    }
    let c = power(p.gen(), wt.k - wt.m);
    let mut terms = vec![(c.clone(), Mat2::diag(RatFunc::from_poly(p.gen().clone())))];
    terms.extend(t_matrices(p).into_iter().map(|m| (c.clone(), m)));
    Ok(Operator::new(n.clone(), n.clone(), wt, terms))
}

/// `U_p = P^{k−m} Σ_{deg Q < d} [(1 Q; 0 P)]` on level `n` with `p | n`.
pub fn op_up(p: &IdealA, n: &IdealA, wt: WeightType) -> Result<Operator> {
    if !p.is_prime() {
        return Err(Error::NotPrime(p.to_string()));
    }
    if !p.divides(n) {
        return Err(Error::Divisibility(format!("{p} does not divide {n}")));
    }
    let c = power(p.gen(), wt.k - wt.m);
    let terms = t_matrices(p).into_iter().map(|m| (c.clone(), m)).collect();
    Ok(Operator::new(n.clone(), n.clone(), wt, terms))
}

/// The Atkin–Lehner operator `W_d^n`.
pub fn op_w(d: &IdealA, n: &IdealA, wt: WeightType, reps: &AlReps) -> Result<Operator> {
    let w = reps.get(d, n)?;
    let f = n.field();
    Ok(Operator::new(n.clone(), n.clone(), wt, vec![(RatFunc::one(f), w.matrix)]))
}

/// Degeneracy maps from level `d_from` to level `n_to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embed {
    /// `f ↦ f`.
    One,
    /// `f ↦ f|(ν/δ 0; 0 1)`, requiring `(d_from, n_to/d_from) = 1`.
    Quotient,
}

pub fn op_embed(d_from: &IdealA, n_to: &IdealA, which: Embed, wt: WeightType) -> Result<Operator> {
    if !d_from.divides(n_to) {
        return Err(Error::Divisibility(format!("{d_from} does not divide {n_to}")));
    }
    let f = n_to.field();
    let mat = match which {
        Embed::One => Mat2::identity(f),
        Embed::Quotient => {
            let e = n_to.quotient(d_from)?;
            if !e.coprime(d_from) {
                return Err(Error::Divisibility(format!("{d_from} and {e} are not coprime")));
            }
            Mat2::diag(RatFunc::from_poly(e.gen().clone()))
        }
    };
    Ok(Operator::new(d_from.clone(), n_to.clone(), wt, vec![(RatFunc::one(f), mat)]))
}

/// `Tr^{mp}_m`, the sum over representatives of Γ0(mp)\Γ0(m).
pub fn op_trace(m: &IdealA, p: &IdealA, wt: WeightType) -> Result<Operator> {
    let reps = coset_reps(m, p)?;
    let f = m.field();
    let terms = reps.into_iter().map(|g| (RatFunc::one(f), g)).collect();
    Ok(Operator::new(m.mul(p), m.clone(), wt, terms))
}

/// `Tr^{mp(d)}_m = Tr ∘ W_d^{mp}`.
pub fn op_trace_twisted(d: &IdealA, m: &IdealA, p: &IdealA, wt: WeightType, reps: &AlReps) -> Result<Operator> {
    let tr = op_trace(m, p, wt)?;
    let w = op_w(d, &m.mul(p), wt, reps)?;
    Operator::compose(&tr, &w)
}

impl fmt::Display for CanonicalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.table.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.table.iter().map(|(k, c)| format!("{c}·{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
