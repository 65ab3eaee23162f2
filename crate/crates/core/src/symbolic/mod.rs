//! Exact polynomial and rational-function arithmetic in `s`, `t` and `p`.

pub mod factored_s;
pub mod factored_t;
pub mod jet;
pub mod poly;
pub mod ratfunc;

pub use factored_s::{FactoredS, LinearAtom};
pub use factored_t::{FactoredT, GeometricAtom, PrimeSpecialized, Qp};
pub use jet::{specialize_p_to_1, ExpJet};
pub use poly::{fmt_q, Poly, Q};
pub use ratfunc::RatFn;
