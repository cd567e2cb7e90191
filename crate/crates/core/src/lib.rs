//! Lie-group isomorphisms, Frenet-frame spin kinematics, structural invariants
//! and gyroscope precession, with a particle-level simulator that checks the
//! averaged closed forms against brute-force sums.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod liegroup;
pub mod sum;
pub mod invariants;
pub mod kinematics;
pub mod precession;
pub mod spin;
pub mod sim;
pub mod cli;
pub mod verify;
