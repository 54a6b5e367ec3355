//! Exact linear algebra primitives: dense F_p matrices and integer
//! lattice/Smith normal form computations for Z/n.

pub mod fp;
pub mod int;
