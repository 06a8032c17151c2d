//! Edge and degree statistics of kernel vertex sets and the event-D census.

mod event_d;
mod stats;

pub use event_d::{
    census_csv, default_size_cap, event_d_census, event_d_check, CensusReport, EventDReport, FailureReason,
    CENSUS_BATCH, DEFAULT_SUBSET_SIZE_CAP, EXHAUSTIVE_KERNEL_LIMIT,
};
pub use stats::{subset_stats, SubsetStats};
