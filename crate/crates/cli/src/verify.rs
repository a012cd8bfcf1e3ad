use std::time::Instant;

use anyhow::{bail, Result};
use drinfeld_core::opcalc::{verify_identity, AlReps, GridEntry, IdentityId, Report, Status, Tuple, VerifyOptions};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::SuiteConfig;

#[derive(Debug, Clone, Serialize)]
pub struct ResultEntry {
    #[serde(flatten)]
    pub report: Report,
    /// "canonical" or "seed-N".
    pub al_reps: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkipEntry {
    pub q: u32,
    pub pi: String,
    #[serde(rename = "P")]
    pub p: String,
    pub k: i64,
    pub m: i64,
    pub reason: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub version: String,
    pub config: SuiteConfig,
    pub results: Vec<ResultEntry>,
    pub skipped: Vec<SkipEntry>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &ResultEntry> {
        self.results.iter().filter(|r| r.report.status == Status::Fail)
    }
}

pub fn selected_identities(names: &[String]) -> Result<Vec<IdentityId>> {
    if names.is_empty() || names.iter().any(|n| n == "all") {
        return Ok(IdentityId::ALL.to_vec());
    }
    names.iter().map(|n| IdentityId::from_name(n).ok_or_else(|| anyhow::anyhow!("unknown identity {n:?}"))).collect()
}

/// Runs every selected identity on every runnable grid point, with the
/// canonical Atkin–Lehner representatives and once per configured seed.
pub fn run_verify(cfg: &SuiteConfig, perturb: Option<IdentityId>, timing: bool) -> Result<VerifyReport> {
    let start = Instant::now();
    let ids = selected_identities(&cfg.identities)?;
    if cfg.grid.is_empty() {
        bail!("config has an empty grid");
    }
    let mut tuples: Vec<Tuple> = Vec::new();
    let mut skipped = Vec::new();
    for g in &cfg.grid {
        for e in g.expand()? {
            match e {
                GridEntry::Run(t) => tuples.push(t),
                GridEntry::Skip { q, pi, p, k, m, reason } => skipped.push(SkipEntry { q, pi, p, k, m, reason }),
            }
        }
    }
    let mut reps: Vec<Option<u64>> = vec![None];
    reps.extend(cfg.al_seeds.iter().map(|&s| Some(s)));

    let mut jobs: Vec<(&Tuple, IdentityId, Option<u64>)> = Vec::new();
    for t in &tuples {
        for &id in &ids {
            for &r in &reps {
                jobs.push((t, id, r));
            }
        }
    }
    let mut results: Vec<ResultEntry> = jobs
        .par_iter()
        .flat_map_iter(|&(t, id, seed)| {
            let al = match seed {
                None => AlReps::Canonical,
                Some(s) => AlReps::randomized(s),
            };
            let opts = VerifyOptions { corrupt: perturb == Some(id) };
            let label = seed.map_or("canonical".to_string(), |s| format!("seed-{s}"));
            verify_identity(id, t, &al, opts)
                .into_iter()
                .map(move |report| ResultEntry { report, al_reps: label.clone() })
                .collect::<Vec<_>>()
        })
        .collect();
    results.sort_by_cached_key(sort_key);

    let mut summary = Summary { total: results.len(), skipped: skipped.len(), ..Default::default() };
    for r in &results {
        match r.report.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::NotApplicable => summary.not_applicable += 1,
        }
    }
    if timing {
        summary.wall_time_ms = Some(start.elapsed().as_millis());
    }
    Ok(VerifyReport { version: env!("CARGO_PKG_VERSION").into(), config: cfg.clone(), results, skipped, summary })
}

fn sort_key(r: &ResultEntry) -> (u32, String, String, String, i64, i64, char, String, String, String, String) {
    let p = &r.report.params;
    let letter = IdentityId::from_name(&r.report.identity).map_or('?', |i| i.letter());
    (
        p.q,
        p.modulus.clone().unwrap_or_default(),
        p.pi.clone(),
        p.p.clone(),
        p.k,
        p.m,
        letter,
        p.d.clone().unwrap_or_default(),
        p.d2.clone().unwrap_or_default(),
        p.variant.clone().unwrap_or_default(),
        r.al_reps.clone(),
    )
}

/// Human-readable diff tables for failing instances.
pub fn render_failures(rep: &VerifyReport) -> String {
    let mut out = String::new();
    for f in rep.failures() {
        let r = &f.report;
        let p = &r.params;
        out.push_str(&format!(
            "FAIL {} q={} pi={} P={} (k={}, m={}) d={} d2={} variant={} reps={}\n",
            r.identity,
            p.q,
            p.pi,
            p.p,
            p.k,
            p.m,
            p.d.as_deref().unwrap_or("-"),
            p.d2.as_deref().unwrap_or("-"),
            p.variant.as_deref().unwrap_or("-"),
            f.al_reps
        ));
        out.push_str("  coset (hnf | p1)                          lhs - rhs\n");
        for e in &r.diff {
            out.push_str(&format!(
                "  ({} {}; {} {}) | ({} : {})    {}\n",
                e.hnf[0], e.hnf[1], e.hnf[2], e.hnf[3], e.p1[0], e.p1[1], e.coeff
            ));
        }
    }
    out
}
