use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::forms::FormModel;
use super::series::{Series, USeries};
use crate::error::{Error, Result};
use crate::ffpoly::{field_from_q, parse_poly, Fq, IdealA, RatFunc};
use crate::opcalc::WeightType;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub exp: usize,
    pub num: String,
    pub den: String,
}

/// A u-expansion; only nonzero coefficients are listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub q: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<String>,
    pub var: String,
    pub prec: usize,
    pub level: String,
    pub k: i64,
    pub m: i64,
    pub coeffs: Vec<CoeffJson>,
}

impl SeriesJson {
    pub fn new(s: &USeries, level: &IdealA, wt: WeightType) -> Self {
        let f = level.field();
        let coeffs = s
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exp, c)| CoeffJson { exp, num: c.num().to_string(), den: c.den().to_string() })
            .collect();
        SeriesJson {
            q: f.q(),
            modulus: f.modulus_literal(),
            var: "u".into(),
            prec: s.prec(),
            level: level.gen().to_string(),
            k: wt.k,
            m: wt.m,
            coeffs,
        }
    }

    pub fn field(&self) -> Result<Fq> {
        field_from_q(self.q, self.modulus.as_deref())
    }

    pub fn to_series(&self, f: &Fq) -> Result<USeries> {
        let zero = RatFunc::zero(f);
        let mut v = vec![zero.clone(); self.prec];
        for c in &self.coeffs {
            if c.exp >= self.prec {
                return Err(Error::Parse(format!("exponent {} beyond precision {}", c.exp, self.prec)));
            }
            v[c.exp] = RatFunc::new(parse_poly(f, &c.num)?, parse_poly(f, &c.den)?)?;
        }
        Ok(Series::new(v, self.prec, &zero))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub name: String,
    pub expansion: SeriesJson,
    /// Keyed by the monic generator of the exact divisor.
    pub al_images: BTreeMap<String, SeriesJson>,
}

impl From<&FormModel> for FormJson {
    fn from(f: &FormModel) -> Self {
        FormJson {
            name: f.name.clone(),
            expansion: SeriesJson::new(&f.series, &f.level, f.wt),
            al_images: f
                .al_images
                .iter()
                .map(|(d, s)| (d.gen().to_string(), SeriesJson::new(s, &f.level, f.wt)))
                .collect(),
        }
    }
}

impl FormJson {
    pub fn to_model(&self) -> Result<FormModel> {
        let e = &self.expansion;
        let f = e.field()?;
        let level = IdealA::new(parse_poly(&f, &e.level)?)?;
        let wt = WeightType { k: e.k, m: e.m };
        let mut m = FormModel::new(self.name.clone(), level, wt, e.to_series(&f)?);
        for (d, s) in &self.al_images {
            m.al_images.insert(IdealA::new(parse_poly(&f, d)?)?, s.to_series(&f)?);
        }
        Ok(m)
    }
}
