//! Binary-driven Kitaev wire: Floquet invariants, Majorana edge modes and a
//! Majorana Steane code simulator built on them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod edge_modes;
pub mod floquet_model;
pub mod invariants;
pub mod majorana;
pub mod nanowire;
pub mod numkernel;
pub mod readout;
