pub mod code;
pub mod decoding;
pub mod dual;
pub mod equivalence;
pub mod error;
pub mod field;
pub mod matrix;
pub mod mds;
pub mod poly;
pub mod sim;
mod util;

pub use code::{sample_random_code, CodeParams, TwistedCode};
pub use error::{Error, Result};
pub use field::{ArithOp, Elem, Field, FieldConfig, FieldSpec, SubfieldEmbedding};
pub use matrix::Matrix;
pub use poly::Poly;
