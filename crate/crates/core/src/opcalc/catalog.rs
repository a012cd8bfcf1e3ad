//! The identity catalog and its verifier.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::operator::*;
use crate::error::{Error, Result};
use crate::ffpoly::{IdealA, Poly, RatFunc};
use crate::modmatrix::CosetKey;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    InvolutionSquare,
    AlProduct,
    FrickeFactorization,
    LemmaDw,
    ThmComm,
    CorComm,
    EqTr,
    Twist,
    KerTraces,
    NewformCommutator,
    DirsumAux1,
    DirsumAux2,
    CrossLevel,
    UpDpKernel,
    TpDecomposition,
}

impl IdentityId {
    pub const ALL: [IdentityId; 15] = [
        IdentityId::InvolutionSquare,
        IdentityId::AlProduct,
        IdentityId::FrickeFactorization,
        IdentityId::LemmaDw,
        IdentityId::ThmComm,
        IdentityId::CorComm,
        IdentityId::EqTr,
        IdentityId::Twist,
        IdentityId::KerTraces,
        IdentityId::NewformCommutator,
        IdentityId::DirsumAux1,
        IdentityId::DirsumAux2,
        IdentityId::CrossLevel,
        IdentityId::UpDpKernel,
        IdentityId::TpDecomposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::InvolutionSquare => "involution-square",
            IdentityId::AlProduct => "al-product",
            IdentityId::FrickeFactorization => "fricke-factorization",
            IdentityId::LemmaDw => "lemma-DW",
            IdentityId::ThmComm => "thm-comm",
            IdentityId::CorComm => "cor-comm",
            IdentityId::EqTr => "eqTr",
            IdentityId::Twist => "twist",
            IdentityId::KerTraces => "ker-traces",
            IdentityId::NewformCommutator => "newform-commutator",
            IdentityId::DirsumAux1 => "dirsum-aux-1",
            IdentityId::DirsumAux2 => "dirsum-aux-2",
            IdentityId::CrossLevel => "cross-level",
            IdentityId::UpDpKernel => "up-dp-kernel",
            IdentityId::TpDecomposition => "tp-decomposition",
        }
    }

    /// Catalog letter `a`..`o`.
    pub fn letter(self) -> char {
        (b'a' + Self::ALL.iter().position(|&i| i == self).unwrap() as u8) as char
    }

    pub fn from_name(s: &str) -> Option<IdentityId> {
        Self::ALL.into_iter().find(|i| i.name() == s || (s.len() == 1 && s.starts_with(i.letter())))
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One grid point: levels `m = (π)`, `p = (P)` and a weight/type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tuple {
    pub pi: Poly,
    pub p: Poly,
    pub wt: WeightType,
}

impl Tuple {
    pub fn m(&self) -> IdealA {
        IdealA::new(self.pi.clone()).unwrap()
    }
    pub fn p_ideal(&self) -> IdealA {
        IdealA::new(self.p.clone()).unwrap()
    }
    pub fn n(&self) -> IdealA {
        self.m().mul(&self.p_ideal())
    }

    /// Standing hypotheses, as a reason string when violated.
    pub fn hypothesis_violation(&self) -> Option<String> {
        let q = self.pi.field().q();
        if self.pi.is_zero() || !self.pi.is_monic() || !self.p.is_monic() {
            return Some("hypothesis: monic nonzero generators".into());
        }
        if !self.p_ideal().is_prime() {
            return Some(format!("hypothesis: P = {} is not prime", self.p));
        }
        if !self.pi.gcd(&self.p).is_one() {
            return Some("hypothesis (π,P)=1".into());
        }
        if !self.wt.is_congruent(q) {
            return Some(format!("hypothesis: k ≡ 2m mod q-1 fails for {}; unit scalars act nontrivially", self.wt));
        }
        None
    }
}

/// A concrete instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub id: IdentityId,
    pub tuple: Tuple,
    pub d: Option<IdealA>,
    pub d2: Option<IdealA>,
    pub variant: Option<&'static str>,
}

/// All instances of `id` at a grid point (divisors, orders, branches).
pub fn instances(id: IdentityId, tuple: &Tuple) -> Vec<Instance> {
    use IdentityId::*;
    let base = Instance { id, tuple: tuple.clone(), d: None, d2: None, variant: None };
    let with_d = |ds: Vec<IdealA>| -> Vec<Instance> {
        ds.into_iter().map(|d| Instance { d: Some(d), ..base.clone() }).collect()
    };
    let ex_n = tuple.n().exact_divisors();
    let ex_m = tuple.m().exact_divisors();
    match id {
        InvolutionSquare | LemmaDw | KerTraces => with_d(ex_n),
        ThmComm | CorComm => with_d(ex_m),
        AlProduct => {
            let mut out = Vec::new();
            for (i, d1) in ex_n.iter().enumerate() {
                for d2 in &ex_n[i..] {
                    for v in ["forward", "reverse"] {
                        out.push(Instance {
                            d: Some(d1.clone()),
                            d2: Some(d2.clone()),
                            variant: Some(v),
                            ..base.clone()
                        });
                    }
                }
            }
            out
        }
        Twist => {
            let mut out = Vec::new();
            for d in ex_n {
                for v in ["twist", "twist2"] {
                    out.push(Instance { d: Some(d.clone()), variant: Some(v), ..base.clone() });
                }
            }
            out
        }
        CrossLevel => ["trace", "twisted-trace", "trace-Dm", "twisted-trace-Dm"]
            .into_iter()
            .map(|v| Instance { variant: Some(v), ..base.clone() })
            .collect(),
        _ => vec![base],
    }
}

/// Both sides of an instance as operators with the same domain level.
pub fn build(inst: &Instance, reps: &AlReps) -> Result<(Operator, Operator)> {
    use IdentityId::*;
    let t = &inst.tuple;
    let wt = t.wt;
    let (k, mt) = (wt.k, wt.m);
    let f = t.pi.field().clone();
    let m = t.m();
    let p = t.p_ideal();
    let n = t.n();
    let pr = RatFunc::from_poly(t.p.clone());
    let pw = |e: i64| pr.pow(e).unwrap();
    let gen_pow = |d: &IdealA, e: i64| RatFunc::from_poly(d.gen().clone()).pow(e).unwrap();
    let w = |d: &IdealA, lvl: &IdealA| op_w(d, lvl, wt, reps);
    let c = Operator::compose;
    let need_d = || inst.d.clone().ok_or_else(|| Error::Divisibility("instance needs d".into()));
    let up = || op_up(&p, &n, wt);
    let dp = || op_embed(&m, &n, Embed::Quotient, wt);
    let tr = || op_trace(&m, &p, wt);
    let one = IdealA::unit(&f);

    Ok(match inst.id {
        InvolutionSquare => {
            let d = need_d()?;
            let wd = reps.get(&d, &n)?;
            let zd = &RatFunc::constant(&f, wd.zeta) * &RatFunc::from_poly(d.gen().clone());
            let lhs = c(&w(&d, &n)?, &w(&d, &n)?)?;
            (lhs, Operator::identity(&n, wt).scale(&zd.pow(wt.scalar_exp())?))
        }
        AlProduct => {
            let d1 = need_d()?;
            let d2 = inst.d2.clone().unwrap();
            let g = d1.gcd(&d2);
            let e = d1.mul(&d2).quotient(&g.pow(2))?;
            let lhs = if inst.variant == Some("forward") {
                c(&w(&d2, &n)?, &w(&d1, &n)?)?
            } else {
                c(&w(&d1, &n)?, &w(&d2, &n)?)?
            };
            (lhs, w(&e, &n)?.scale(&gen_pow(&g, wt.scalar_exp())))
        }
        FrickeFactorization => {
            let mut lhs = Operator::identity(&n, wt);
            for part in n.prime_power_parts() {
                lhs = c(&w(&part, &n)?, &lhs)?;
            }
            (lhs, w(&n, &n)?)
        }
        LemmaDw => {
            let d = need_d()?;
            let lhs = op_embed(&d, &n, Embed::Quotient, wt)?;
            (lhs, w(&n.quotient(&d)?, &n)?.restrict(&d)?)
        }
        ThmComm => {
            let d = need_d()?;
            let tp = op_tp(&p, &m, wt)?;
            (c(&w(&d, &m)?, &tp)?, c(&tp, &w(&d, &m)?)?)
        }
        CorComm => {
            let d = need_d()?;
            (c(&w(&d, &n)?, &up()?)?, c(&up()?, &w(&d, &n)?)?)
        }
        EqTr => {
            let rhs = Operator::identity(&n, wt).add(&c(&up()?, &w(&p, &n)?)?.scale(&pw(-mt)))?;
            (tr()?, rhs)
        }
        Twist => {
            let d = need_d()?;
            let lhs = op_trace_twisted(&d, &m, &p, wt, reps)?;
            let wd = w(&d, &n)?;
            let tail = match (p.divides(&d), inst.variant) {
                (false, Some("twist")) => c(&up()?, &w(&d.mul(&p), &n)?)?.scale(&pw(-mt)),
                (false, _) => c(&wd, &c(&up()?, &w(&p, &n)?)?)?.scale(&pw(-mt)),
                (true, Some("twist")) => c(&up()?, &w(&d.quotient(&p)?, &n)?)?.scale(&pw(mt - k)),
                (true, _) => c(&w(&d.quotient(&p)?, &n)?, &up()?)?.scale(&pw(mt - k)),
            };
            (lhs, wd.add(&tail)?)
        }
        KerTraces => {
            let d = need_d()?;
            let lhs = c(&w(&m, &n)?, &op_trace_twisted(&d, &m, &p, wt, reps)?)?;
            let rhs = if p.divides(&d) {
                let scal = &gen_pow(&d, wt.scalar_exp()) * &pw(-wt.scalar_exp());
                let e = n.mul(&p).quotient(&d)?;
                op_trace_twisted(&e, &m, &p, wt, reps)?.scale(&scal)
            } else {
                op_trace_twisted(&m.quotient(&d)?, &m, &p, wt, reps)?.scale(&gen_pow(&d, wt.scalar_exp()))
            };
            (lhs, rhs)
        }
        NewformCommutator => {
            let wp = || w(&p, &n);
            let lhs = c(&wp()?, &up()?)?.sub(&c(&up()?, &wp()?)?)?;
            let trp = op_trace_twisted(&p, &m, &p, wt, reps)?;
            let rhs = c(&wp()?, &trp)?.scale(&pw(k - mt)).sub(&tr()?.scale(&pw(mt)))?;
            (lhs, rhs)
        }
        DirsumAux1 => (c(&tr()?, &dp()?)?, op_tp(&p, &m, wt)?.scale(&pw(mt - k))),
        DirsumAux2 => {
            let trp = op_trace_twisted(&p, &m, &p, wt, reps)?;
            (c(&trp, &dp()?)?, Operator::identity(&m, wt).scale(&pw(wt.scalar_exp())))
        }
        CrossLevel => {
            let twisted = matches!(inst.variant, Some("twisted-trace") | Some("twisted-trace-Dm"));
            let through_m = matches!(inst.variant, Some("trace-Dm") | Some("twisted-trace-Dm"));
            let big = if twisted { op_trace_twisted(&p, &m, &p, wt, reps)? } else { tr()? };
            let small = if twisted { op_trace_twisted(&p, &one, &p, wt, reps)? } else { op_trace(&one, &p, wt)? };
            if through_m {
                let dm = op_embed(&p, &n, Embed::Quotient, wt)?;
                let d1 = op_embed(&one, &n, Embed::One, wt)?;
                (c(&big, &dm)?, c(&w(&m, &n)?, &c(&d1, &small)?)?)
            } else {
                let d1_big = op_embed(&p, &n, Embed::One, wt)?;
                let d1_small = op_embed(&one, &m, Embed::One, wt)?;
                (c(&big, &d1_big)?, c(&d1_small, &small)?)
            }
        }
        UpDpKernel => (c(&up()?, &dp()?)?, Operator::zero(&m, wt)),
        TpDecomposition => {
            let d1 = op_embed(&m, &n, Embed::One, wt)?;
            let rhs = dp()?.scale(&pw(k - mt)).add(&c(&up()?, &d1)?)?;
            (op_tp(&p, &m, wt)?, rhs)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub hnf: [String; 4],
    pub p1: [String; 2],
    pub coeff: String,
}

fn table_json<'a>(it: impl Iterator<Item = (&'a CosetKey, &'a RatFunc)>) -> Vec<TableEntry> {
    it.map(|(k, c)| TableEntry {
        hnf: k.hnf_polys().clone().map(|p| p.to_string()),
        p1: [k.p1.c.to_string(), k.p1.d.to_string()],
        coeff: c.to_string(),
    })
    .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub q: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<String>,
    pub pi: String,
    #[serde(rename = "P")]
    pub p: String,
    pub k: i64,
    pub m: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub variant: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub identity: String,
    pub params: ReportParams,
    pub status: Status,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    pub lhs: Vec<TableEntry>,
    pub rhs: Vec<TableEntry>,
    pub diff: Vec<TableEntry>,
}

impl Instance {
    pub fn params(&self) -> ReportParams {
        let f = self.tuple.pi.field();
        ReportParams {
            q: f.q(),
            modulus: f.modulus_literal(),
            pi: self.tuple.pi.to_string(),
            p: self.tuple.p.to_string(),
            k: self.tuple.wt.k,
            m: self.tuple.wt.m,
            d: self.d.as_ref().map(|d| d.gen().to_string()),
            d2: self.d2.as_ref().map(|d| d.gen().to_string()),
            variant: self.variant.map(String::from),
        }
    }
}

/// Options for a verification run.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Negative control: add one spurious term to the left-hand side.
    pub corrupt: bool,
}

/// Compares both sides of an instance by canonical tables.
pub fn verify_instance(inst: &Instance, reps: &AlReps, opts: VerifyOptions) -> Report {
    let mut report = Report {
        identity: inst.id.name().to_string(),
        params: inst.params(),
        status: Status::NotApplicable,
        pass: false,
        reason: None,
        lhs: vec![],
        rhs: vec![],
        diff: vec![],
    };
    if let Some(r) = inst.tuple.hypothesis_violation() {
        report.reason = Some(r);
        return report;
    }
    let sides = build(inst, reps).and_then(|(mut lhs, rhs)| {
        if opts.corrupt {
            let f = lhs.domain_level().field().clone();
            let extra =
                lhs.terms().first().map(|(_, m)| m.clone()).unwrap_or_else(|| crate::modmatrix::Mat2::identity(&f));
            let spur = Operator::new(
                lhs.domain_level().clone(),
                lhs.codomain_level().clone(),
                lhs.wt(),
                vec![(RatFunc::one(&f), extra)],
            );
            lhs = lhs.add(&spur)?;
        }
        Ok((lhs.canonicalize()?, rhs.canonicalize()?))
    });
    match sides {
        Err(e) => {
            report.reason = Some(format!("hypothesis: {e}"));
        }
        Ok((l, r)) => {
            let diff = l.diff(&r);
            report.pass = l == r;
            report.status = if report.pass { Status::Pass } else { Status::Fail };
            report.lhs = table_json(l.table.iter());
            report.rhs = table_json(r.table.iter());
            report.diff = table_json(diff.iter());
        }
    }
    report
}

/// Every instance of `id` at a grid point.
pub fn verify_identity(id: IdentityId, tuple: &Tuple, reps: &AlReps, opts: VerifyOptions) -> Vec<Report> {
    instances(id, tuple).iter().map(|i| verify_instance(i, reps, opts)).collect()
}
