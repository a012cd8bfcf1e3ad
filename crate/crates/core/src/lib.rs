//! Exact Hecke and Atkin–Lehner operator calculus for Drinfeld modular forms
//! on Γ0(n) ⊂ GL₂(F_q[t]).
//!
//! The crate is layered bottom-up:
//!
//! * [`ffpoly`]: F_q, A = F_q[t], K = F_q(t), ideals and valuations.
//! * [`modmatrix`]: 2×2 matrices over K, coset labels for Γ0(n), Atkin–Lehner
//!   matrices and trace representatives.
//! * [`opcalc`]: formal operators (sums of slash terms), canonical forms and
//!   the identity catalog.
//! * [`cusps`]: cusps of X0(n) and the Atkin–Lehner permutation action.
//! * [`useries`]: truncated u-expansions, Eisenstein series, Hecke operators
//!   on expansions and the p-adic approximation construction.

pub mod cusps;
pub mod error;
pub mod ffpoly;
pub mod modmatrix;
pub mod opcalc;
pub mod useries;

pub use error::{Error, Result};

// The guide under book/ is run as doc-tests; one module per chapter so a
// failing snippet names its chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/cosets.md")]
    mod cosets {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/cusps.md")]
    mod cusps {}
    #[doc = include_str!("../../../book/src/expansions.md")]
    mod expansions {}
    #[doc = include_str!("../../../book/src/hecke.md")]
    mod hecke {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
