pub mod cli;
pub mod cqt;
pub mod error;
pub mod inhomogeneous;
pub mod lorentz;
pub mod presentation;
pub mod report;
pub mod scalars;
pub mod tensor;
pub mod uea;

pub use error::{Error, Result};
pub use report::{CheckReport, Status};
pub use scalars::{ConjMode, Gauss, Poly, Scalar};
pub use tensor::Tensor;
