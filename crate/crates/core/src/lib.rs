pub mod error;
pub mod events;
pub mod experiments;
pub mod graphcore;
pub mod io;
pub mod linegeom;
pub mod par;
pub mod randmodels;
pub mod ratio;

pub use error::{Error, Result};
