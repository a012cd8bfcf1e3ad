//! Exact arithmetic over F_q, A = F_q[t] and K = F_q(t), with ideals and
//! p-adic valuations.

mod field;
mod ideal;
mod parse;
mod poly;
mod ratfunc;

pub use field::{Elem, Fq};
pub use ideal::IdealA;
pub use parse::{parse_modulus, parse_poly, parse_ratfunc};
pub use poly::{gcd_bezout, Poly};
pub use ratfunc::{vp_rational, RatFunc, Valuation};

use crate::error::Result;

/// Builds F_q from `q` and an optional modulus literal in `x`.
pub fn field_from_q(q: u32, modulus: Option<&str>) -> Result<Fq> {
    use crate::error::Error;
    let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
    match (e, modulus) {
        (1, None) => Fq::prime(p),
        (1, Some(_)) => Err(Error::InvalidField("prime fields take no modulus".into())),
        (_, None) => Err(Error::InvalidField(format!("q = {q} needs an explicit degree-{e} modulus over F_{p}"))),
        (_, Some(m)) => {
            let coeffs = parse_modulus(p, m)?;
            if coeffs.len() != e as usize + 1 {
                return Err(Error::InvalidField(format!("modulus must have degree {e}")));
            }
            Fq::extension(p, coeffs)
        }
    }
}

/// `q = p^e` decomposition.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}
