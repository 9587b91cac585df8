//! Exact computations for rational tangles and knots, double branched cover
//! homology, Conway polynomials, Gordian distance certificates, and graph
//! end counts.

pub mod ends;
pub mod gordian;
pub mod homology;
pub mod knots;
pub mod poly;
pub mod tangle;
