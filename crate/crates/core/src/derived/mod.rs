mod approx;
mod complex;
mod homs;
mod indec;
mod repcx;
mod tensor;

pub use approx::*;
pub use complex::*;
pub use homs::*;
pub use indec::*;
pub use repcx::*;
pub use tensor::*;
