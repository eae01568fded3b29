pub mod bn;
pub mod campaign;
pub mod error;
pub mod field;
pub mod forms;
pub mod grassmann;
pub mod jordan;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod residue;
pub mod tangent;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use poly::Polynomial;
