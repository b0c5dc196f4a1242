pub mod derived;
pub mod error;
pub mod exactfield;
pub mod higher;
pub mod homoepi;
pub mod modcat;
pub mod quivalg;
pub mod univloc;

pub use error::{Error, Result};
