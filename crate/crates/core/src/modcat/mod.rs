//! The module category of a bound quiver algebra.

mod approx;
mod ar;
mod decompose;
mod hom;
mod rep;

pub use approx::*;
pub use ar::*;
pub use decompose::*;
pub use hom::*;
pub use rep::*;
