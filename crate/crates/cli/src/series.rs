use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use drinfeld_core::cusps::cusp_report;
use drinfeld_core::ffpoly::{field_from_q, parse_poly, parse_ratfunc, Fq, IdealA, RatFunc};
use drinfeld_core::opcalc::WeightType;
use drinfeld_core::useries::{
    eisenstein_gk, series_dp, series_vp, vincent_g, Fault, FormJson, FormModel, Series, SeriesJson, USeries, UpBackend,
    UpEngine,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::config::{SeriesDefaults, SuiteConfig};

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long, default_value_t = 3)]
    pub q: u32,
    /// Modulus of F_q over F_p, in x, for prime-power q.
    #[arg(long)]
    pub modulus: Option<String>,
}

impl FieldArgs {
    pub fn field(&self) -> Result<Fq> {
        Ok(field_from_q(self.q, self.modulus.as_deref())?)
    }
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// U_p backend: shift or goss (default from the config, else shift).
    #[arg(long)]
    backend: Option<UpBackend>,
    /// Corrupt the shift backend: galois or recompression.
    #[arg(long)]
    fault: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum SeriesCmd {
    /// Eisenstein series g_k of level 1.
    Gk {
        #[arg(long)]
        k: u32,
        #[arg(long, alias = "prec")]
        order: Option<usize>,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// U_p of a series.
    Up {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "P")]
        p: String,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// T_p = P^{k-m} D_p + U_p of a series.
    Tp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "P")]
        p: String,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// D_p of a series.
    Dp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "P")]
        p: String,
    },
    /// Vincent's form g_(r) with its W_p image.
    Vincent {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        pi: String,
        #[arg(long = "P")]
        p: String,
        #[arg(long, alias = "prec")]
        order: Option<usize>,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Trace from level mp to m of a form model carrying its W_p image.
    Trace {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "P")]
        p: String,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Cusps of X_0(n) with the Atkin–Lehner permutations.
    Cusps {
        #[arg(long)]
        level: String,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// p-adic valuation of a series.
    Vp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "P")]
        p: String,
        /// A constant subtracted before taking the valuation.
        #[arg(long)]
        subtract: Option<String>,
    },
}

/// A form model or a bare series read from JSON.
#[derive(Deserialize)]
#[serde(untagged)]
enum Input {
    Form(FormJson),
    Series(SeriesJson),
}

fn read_model(path: &PathBuf) -> Result<FormModel> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let input: Input = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let form = match input {
        Input::Form(f) => f,
        Input::Series(s) => FormJson { name: "f".into(), expansion: s, al_images: Default::default() },
    };
    Ok(form.to_model()?)
}

fn prime(f: &Fq, s: &str) -> Result<IdealA> {
    let p = IdealA::new(parse_poly(f, s)?)?;
    if !p.is_prime() {
        bail!(drinfeld_core::Error::NotPrime(s.into()));
    }
    Ok(p)
}

fn engine(p: &IdealA, prec: usize, args: &EngineArgs, defaults: &SeriesDefaults) -> Result<(UpEngine, UpBackend)> {
    let backend = args.backend.unwrap_or(defaults.backend);
    let mut e = UpEngine::new(p, prec)?;
    if let Some(fault) = &args.fault {
        if backend != UpBackend::Shift {
            bail!("--fault applies to the shift backend only");
        }
        e = e.with_fault(match fault.as_str() {
            "galois" => Fault::GaloisResidue,
            "recompression" => Fault::Recompression,
            other => bail!("unknown fault {other:?}"),
        });
    }
    Ok((e, backend))
}

fn series_out(s: &USeries, level: &IdealA, wt: WeightType) -> Value {
    serde_json::to_value(SeriesJson::new(s, level, wt)).unwrap()
}

pub fn run_series(cmd: &SeriesCmd, config: Option<&SuiteConfig>) -> Result<Value> {
    let defaults = config.map(|c| c.series.clone()).unwrap_or_default();
    Ok(match cmd {
        SeriesCmd::Gk { k, order, field } => {
            let f = field.field()?;
            let g = eisenstein_gk(&f, *k, order.unwrap_or(defaults.precision))?;
            series_out(&g.series, &g.level, g.wt)
        }
        SeriesCmd::Up { input, p, engine: ea } => {
            let m = read_model(input)?;
            let p = prime(m.field(), p)?;
            let (e, b) = engine(&p, m.series.prec(), ea, &defaults)?;
            series_out(&e.apply(&m.series, b)?, &m.level, m.wt)
        }
        SeriesCmd::Tp { input, p, engine: ea } => {
            let m = read_model(input)?;
            let p = prime(m.field(), p)?;
            let (e, b) = engine(&p, m.series.prec(), ea, &defaults)?;
            let c = RatFunc::from_poly(p.gen().clone()).pow(m.wt.k - m.wt.m)?;
            let tp = series_dp(&m.series, m.wt, &p)?.scale(&c).add(&e.apply(&m.series, b)?);
            series_out(&tp, &m.level, m.wt)
        }
        SeriesCmd::Dp { input, p } => {
            let m = read_model(input)?;
            let p = prime(m.field(), p)?;
            series_out(&series_dp(&m.series, m.wt, &p)?, &m.level.mul(&p), m.wt)
        }
        SeriesCmd::Vincent { n, r, pi, p, order, field } => {
            let f = field.field()?;
            let m = IdealA::new(parse_poly(&f, pi)?)?;
            let p = prime(&f, p)?;
            let g = vincent_g(&m, &p, *n, *r, order.unwrap_or(defaults.precision))?;
            serde_json::to_value(FormJson::from(&g))?
        }
        SeriesCmd::Trace { input, p, engine: ea } => {
            let m = read_model(input)?;
            let p = prime(m.field(), p)?;
            let w = m
                .al_images
                .get(&p)
                .ok_or_else(|| drinfeld_core::Error::InsufficientModel(format!("{} lacks its W_{p} image", m.name)))?;
            let (e, b) = engine(&p, w.prec(), ea, &defaults)?;
            let c = RatFunc::from_poly(p.gen().clone()).pow(-m.wt.m)?;
            let tr = m.series.add(&e.apply(w, b)?.scale(&c));
            series_out(&tr, &m.level.quotient(&p)?, m.wt)
        }
        SeriesCmd::Cusps { level, field } => cusps_json(field, level)?,
        SeriesCmd::Vp { input, p, subtract } => {
            let m = read_model(input)?;
            let p = prime(m.field(), p)?;
            let mut s = m.series.clone();
            if let Some(c) = subtract {
                let c = parse_ratfunc(m.field(), c)?;
                s = s.sub(&Series::constant(c, s.prec()));
            }
            let v = series_vp(&s, &p);
            json!({ "P": p.gen().to_string(), "prec": s.prec(), "vp": v.to_string() })
        }
    })
}

pub fn cusps_json(field: &FieldArgs, level: &str) -> Result<Value> {
    let f = field.field()?;
    let n = IdealA::new(parse_poly(&f, level)?)?;
    Ok(serde_json::to_value(cusp_report(&n)?)?)
}
