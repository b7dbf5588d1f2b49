//! Complete gentle quivers, their ribbon graphs and ribbon graph orders,
//! Frobenius forms, Brauer graph algebra quotients and a decision procedure
//! for their symmetry.

pub mod field;
pub mod linalg;
pub mod perm;
pub mod poly;
pub mod quiver;
pub mod sign;
pub mod ribbon;
pub mod polarization;
pub mod order;
pub mod fd;
pub mod specfile;
pub mod corpus;
pub mod decide;
