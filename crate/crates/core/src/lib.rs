//! Exact intersection homology on simplicial stratified pseudomanifolds.
//!
//! The crate is layered: [`qlinalg`] supplies exact rational linear algebra,
//! [`complex`] models oriented stratified simplicial complexes and their
//! constructors, [`ichain`] builds perversity-filtered chain complexes and
//! their homology, [`pairing`] computes intersection numbers and duality
//! pairings, and [`signatures`] assembles perverse signatures, Maslov triple
//! indices and the non-additivity check. [`cli`] is the command-line layer.

pub mod cli;
pub mod complex;
pub mod ichain;
pub mod pairing;
pub mod qlinalg;
pub mod signatures;
