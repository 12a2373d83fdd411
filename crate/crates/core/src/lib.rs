//! Exact arithmetic for self-maps of the projective line: resultants,
//! GIT stability of presentations, minimal resultants with certificates,
//! Lattès families and critical-point conductors.

pub mod critical;
pub mod dynsys;
pub mod field;
pub mod linalg;
pub mod minimality;
pub mod fpfactor;
pub mod intfactor;
pub mod kappa;
pub mod lattes;
pub mod parse;
pub mod places;
pub mod poly;
pub mod ratfunc;
pub mod stability;
pub mod zassenhaus;
