//! Exact classification of periodic-orbit structure for maps of the 2-torus
//! induced by 2x2 integer matrices, together with a brute-force lattice
//! oracle that checks the symbolic answers against actual orbits.
//!
//! A matrix `A` acts on T^2 = R^2/Z^2 by `x -> Ax mod 1`. This crate computes,
//! from nothing but the entries of `A`:
//!
//! * the set of least periods of its periodic points ([`periods::classify`]),
//! * the subset of periods shared by every map homotopic to it,
//! * fixed-point counts of iterates ([`nielsen`]),
//! * and, independently, the observed cycle structure on the rational
//!   lattices `L_n` ([`lattice`]), which is what the tests compare against.
//!
//! ```
//! use toral::algebra::IntMat2;
//! use toral::periods::classify;
//!
//! let cat = IntMat2::new(2, 1, 1, 1);
//! let c = classify(&cat);
//! assert_eq!(c.row, 16);
//! assert!((1..=100).all(|n| c.per.contains(n)));
//! ```

pub mod algebra;
pub mod cli;
pub mod conjugacy;
pub mod corpus;
pub mod lattice;
pub mod nielsen;
pub mod periods;
pub mod report;

#[cfg(doctest)]
pub mod guide;
