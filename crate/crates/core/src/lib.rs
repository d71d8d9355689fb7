//! Solvers and verifiers for homological cut problems over Z2.

pub mod bnt_greedy;
pub mod canonical;
pub mod complex;
pub mod error;
pub mod feasibility;
pub mod format;
pub mod fpt_ths;
pub mod gadgets;
pub mod gf2;
pub mod global_rand;
pub mod homology;
pub mod oracle;
mod par;
pub mod surface_ths;

pub use error::{Error, Result};
pub use par::parallel_available;
