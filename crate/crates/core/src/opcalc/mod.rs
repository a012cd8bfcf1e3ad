//! Formal operator calculus on slash terms, canonical forms, and the
//! catalog of operator identities.

mod catalog;
mod grid;
mod operator;

pub use catalog::{
    build, instances, verify_identity, verify_instance, IdentityId, Instance, Report, ReportParams, Status, TableEntry,
    Tuple, VerifyOptions,
};
pub use grid::{acceptance_grids, first_prime_of_degree, reduced_weights, GridEntry, GridSpec};
pub use operator::{
    op_embed, op_equal, op_tp, op_trace, op_trace_twisted, op_up, op_w, AlReps, CanonicalOperator, Embed, Operator,
    WeightType,
};
