//! Exact arithmetic in Q(i)(t), with `q = t²`.

mod gauss;
mod poly;
mod sample;
mod scalar;

pub use gauss::{rational_sqrt, Gauss};
pub use poly::Poly;
pub use sample::{QuadExt, SamplePoint};
pub use scalar::{ConjMode, Scalar};
