//! Exact embeddings on the line, rigid-map enumeration and reconstructibility.

mod embedding;
mod event_a;
mod path;
mod recon;
mod rigid;
mod signsum;

pub use embedding::LineEmbedding;
pub use event_a::{event_a_check, EventAReport};
pub use path::{path_extension_solutions, path_extension_solutions_int, ExtensionCount, PATH_DIRECT_LIMIT};
pub use recon::{is_reconstructible, largest_reconstructible_set, reconstruction_report, ReconstructibilityAnswer};
pub use rigid::{
    enumerate_rigid_map_classes, ReconstructionReport, RigidMapClass, RigidityOptions, DEFAULT_CLASS_CAP,
    DEFAULT_SEARCH_BUDGET,
};
