//! Euclidean distance degrees and their defect.
//!
//! The crate counts critical points of weighted squared-distance functions
//! on algebraic varieties (numerically by homotopy continuation, and
//! symbolically by Gröbner bases over a prime field), computes Milnor
//! numbers of isolated hypersurface singularities, evaluates the stratified
//! defect formula on user-supplied stratum data, and expands the generating
//! functions that give the defect of rank-one matrix varieties.

pub mod critical;
pub mod groebner;
pub mod homotopy;
pub mod poly;
pub mod random;
pub mod segre;
pub mod strata;
pub mod sysfile;
