//! Extremal Seidel spectra of signed complete graphs.
//!
//! A complete signed graph whose negative edges induce the unsigned graph
//! `H` has the Seidel matrix of `H` as its adjacency matrix, so maximizing
//! the index over signatures with `m` negative edges is a question about
//! Seidel spectra. This crate provides:
//!
//! * [`graph`] — labeled simple graphs, brute-force isomorphism, edge-list
//!   I/O;
//! * [`spectra`] — Seidel matrices, a Jacobi eigensolver, switching,
//!   quadratic forms;
//! * [`extremal`] — the closed-form maximal index `rho = n - 1 - xi` with
//!   `xi` solved from a cubic, and the extremal constructions attaining it;
//! * [`exact`] — integer characteristic polynomials and exact largest-root
//!   comparison, used to make exhaustive searches tolerance-proof;
//! * [`oracle`] — exhaustive certification at small orders, including the
//!   regime where the original conjectured maximizer is beaten.

pub mod exact;
pub mod extremal;
pub mod graph;
pub mod oracle;
pub mod spectra;
