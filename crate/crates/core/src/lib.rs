//! Exact computational toolkit for the Hecke algebra of the universal
//! group of a colored regular tree with respect to a vertex stabilizer.
//!
//! Given a finite transitive permutation group F on d colors, the crate
//! encodes the double cosets of the vertex stabilizer as odd-length words
//! over the suborbit labels of F, counts orbits on tree spheres two
//! independent ways, computes convolution structure constants by exact
//! brute-force counting on finite truncations, and certifies the
//! finitely-generated versus strictly-growing dichotomy of the algebra's
//! graded sub-bases. All arithmetic is exact: arbitrary-precision
//! integers and rationals, zero tolerances.

pub mod error;
pub mod exact;
pub mod generation;
pub mod hecke;
pub mod oracle;
pub mod perm;
pub mod ratmat;

pub use error::{Error, Result};
