//! Exact verification engine for the quantum 4-sphere.
//!
//! The crate is organised bottom-up:
//!
//! * [`coeff`]: Laurent polynomials and rational functions in `q`.
//! * [`ncpoly`]: noncommutative polynomials and the rewriting kernel.
//! * [`algebras`]: concrete presentations (U_q(4), S^7_q, the 4-sphere).
//! * [`quotient`]: the coisotropic quotient and the right coaction.
//! * [`bundle`]: sections, the projector and the classical cross-check.
//! * [`poisson`]: Lie bialgebra cocycle, coisotropy and brackets.
//! * [`fock`]: truncated Fock space representation and exact traces.
//! * [`chern`]: cyclic chains, Chern character and the pairing.
//! * [`suite`]: named verification suites producing a [`suite::Report`].

pub mod coeff;
pub mod ncpoly;
pub mod algebras;
pub mod linalg;
pub mod quotient;
pub mod bundle;
pub mod poisson;
pub mod fock;
pub mod chern;
pub mod suite;
