pub mod arrangement;
pub mod bfunc;
pub mod corpus;
pub mod error;
pub mod igusa;
pub mod lattice;
pub mod linalg;
pub mod parse;
pub mod symbolic;
pub mod topzeta;

pub use arrangement::{parse_arrangement, Arrangement, Hyperplane};
pub use error::{Error, Result};
