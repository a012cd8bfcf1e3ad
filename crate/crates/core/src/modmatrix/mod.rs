//! Matrices over K, coset labels for Γ0(n), Atkin–Lehner matrices and trace
//! representatives.

mod al;
mod coset;
mod mat2;

pub use al::{al_representative, coset_reps, perturb_al, random_gamma0, random_gamma0_sl2, random_gl2, ALMatrix};
pub use coset::{coset_key, gamma0_index, hnf, lift_p1, p1_point, p1_points, CosetKey, P1Point};
pub use mat2::{Mat2, MatJson};
