//! u-expansions of Drinfeld modular forms and the Hecke operators on them.

mod carlitz;
mod cyclo;
mod forms;
mod hecke;
mod json;
mod ring;
mod series;

pub use carlitz::{beta_coeffs, bracket, carlitz_d, carlitz_l, carlitz_poly, CarlitzPoly, GossTable};
pub use cyclo::{CycloElem, CycloField};
pub use forms::{eisenstein_gk, eval_table, trace_via_eqtr, vincent_g, FormModel};
pub use hecke::{
    congruent_mod, frobenius_p, inv_carlitz_series, series_dp, series_tp, series_up, series_vp, u_of_az, Fault,
    Recompressor, UpBackend, UpEngine,
};
pub use json::{CoeffJson, FormJson, SeriesJson};
pub use ring::{binom_mod_p, Ring};
pub use series::{Series, USeries};
