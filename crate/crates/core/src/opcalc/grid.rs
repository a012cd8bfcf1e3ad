//! Parameter grids for verification runs.

use serde::{Deserialize, Serialize};

use super::catalog::Tuple;
use super::operator::WeightType;
use crate::error::Result;
use crate::ffpoly::{field_from_q, parse_poly, Fq, Poly};

/// A declarative grid over one field: every combination of `pi`, `P` and
/// `(k, m)` is one tuple. Polynomials are literals in `t` (and `x` for
/// prime-power fields).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub q: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
    pub pi: Vec<String>,
    #[serde(rename = "P")]
    pub p: Vec<String>,
    pub weights: Vec<(i64, i64)>,
}

/// A grid point ready to run, or the reason it was not run.
#[derive(Debug, Clone)]
pub enum GridEntry {
    Run(Tuple),
    Skip { q: u32, pi: String, p: String, k: i64, m: i64, reason: String },
}

impl GridSpec {
    pub fn field(&self) -> Result<Fq> {
        field_from_q(self.q, self.modulus.as_deref())
    }

    /// All grid points; invalid ones are kept as skips with a reason.
    pub fn expand(&self) -> Result<Vec<GridEntry>> {
        let f = self.field()?;
        let mut out = Vec::new();
        for pi in &self.pi {
            for p in &self.p {
                for &(k, m) in &self.weights {
                    let skip =
                        |reason: String| GridEntry::Skip { q: self.q, pi: pi.clone(), p: p.clone(), k, m, reason };
                    let entry = match (parse_poly(&f, pi), parse_poly(&f, p), WeightType::new(k, m, self.q)) {
                        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => skip(format!("invalid: {e}")),
                        (Ok(pi), Ok(pp), Ok(wt)) => {
                            let t = Tuple { pi, p: pp, wt };
                            match t.hypothesis_violation() {
                                Some(r) => skip(r),
                                None => GridEntry::Run(t),
                            }
                        }
                    };
                    out.push(entry);
                }
            }
        }
        Ok(out)
    }
}

/// The first monic irreducible polynomial of degree `d`.
pub fn first_prime_of_degree(f: &Fq, d: usize) -> Poly {
    Poly::monics_of_degree(f, d)
        .find(|p| p.is_irreducible().unwrap_or(false))
        .expect("irreducibles exist in every degree")
}

/// The weights `{(3,1),(4,1),(4,2),(q+1,1)}` with the type reduced into
/// `0..q-1`, restricted to `k ≡ 2m (mod q−1)`, without repeats.
pub fn reduced_weights(q: u32) -> Vec<(i64, i64)> {
    let qm1 = q as i64 - 1;
    let mut out: Vec<(i64, i64)> = Vec::new();
    for (k, m) in [(3, 1), (4, 1), (4, 2), (q as i64 + 1, 1)] {
        let m = m % qm1;
        if (k - 2 * m).rem_euclid(qm1) == 0 && !out.contains(&(k, m)) {
            out.push((k, m));
        }
    }
    out
}

/// The acceptance grids: q ∈ {2, 3} and q = 4 with modulus `x^2+x+1`;
/// levels `t+1`, `t^2+t+1`, `(t+1)(t^2+t+1)`; P = t and the first
/// irreducible quadratic.
pub fn acceptance_grids() -> Vec<GridSpec> {
    [(2u32, None), (3, None), (4, Some("x^2+x+1"))]
        .into_iter()
        .map(|(q, modulus)| {
            let f = field_from_q(q, modulus).unwrap();
            GridSpec {
                q,
                modulus: modulus.map(String::from),
                pi: vec!["t+1".into(), "t^2+t+1".into(), "(t+1)(t^2+t+1)".into()],
                p: vec!["t".into(), first_prime_of_degree(&f, 2).to_string()],
                weights: reduced_weights(q),
            }
        })
        .collect()
}
