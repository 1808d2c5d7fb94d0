//! Exact optimisation: the boolean program, a branch-and-bound solver and a
//! brute-force oracle for tiny instances.

mod blp;
mod bnb;
mod oracle;

pub use blp::{build_blp, export_lp, BlpModel};
pub use bnb::{solve_exact, ExactResult, ExactStatus, Limits};
pub use oracle::{oracle_opt, ORACLE_MAX_N};
