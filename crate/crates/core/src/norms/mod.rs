//! Lebesgue and Sobolev norms of band-limited fields, and empirical
//! checkers for the functional inequalities behind the energy estimates.
//!
//! Interpolation is checked in the consistent form where both sides use
//! the same `H^s` (or `Ḣ^s`) norm; that is the form in which it holds with
//! constant one.

mod corpus;
mod estimates;
mod sobolev;

pub use corpus::{max_ratio, refine_pairs, refine_single, Corpus, RefinementStudy};
pub use estimates::{
    check_commutator, check_embedding, check_interpolation, check_product, check_riesz_bound,
    commutator_kernel, commutator_kernel_scan, CommutatorCheck, KernelScan, LemmaRecord,
    NormReport, ProductVariant, CONSTANT_ONE_SLACK,
};
pub use sobolev::{lebesgue_norm, sobolev_norm, sobolev_norm_sq, Flavor};

pub(crate) use sobolev::lp_of_samples;
