//! Random graph models and their analytic companions.

mod degseq;
mod gm;
mod gnp;
mod model_l;
mod model_u;
mod mu;
mod pairing;
mod regular;
mod rng;
mod tails;
mod validate;

pub use degseq::{sample_degree_sequence, DegreeSequenceSample, ModelParams};
pub use gm::{
    count_multigraphs, enumerate_multigraphs, gm_estimate, gm_estimate_and_exact_count, MultigraphCount,
    DEFAULT_EXACT_DEGREE_SUM_CAP,
};
pub use gnp::sample_gnp;
pub use model_l::{
    sample_model_l, sample_path_length, subdivide, KernelLaw, ModelLOutcome, ModelLSample,
    UNIFORM_KERNEL_DEGREE_SUM_CAP,
};
pub use model_u::{random_injection, sample_model_u, ModelUSample};
pub use mu::conjugate_mu;
pub use pairing::sample_pairing;
pub use regular::{sample_regular_simple, sample_regular_switch_chain};
pub use rng::{per_trial_seed, rng_from_seed, splitmix64, SimRng};
pub use tails::{tail_bounds, TailBound};
pub use validate::{validate_degree_sequence, DegreeSequenceReport};
