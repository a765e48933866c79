//! Text front end: problem-file parsing, command dispatch and canonical output.

pub mod commands;
pub mod problem;

pub use commands::{exit_code, run_command, Command, Outcome};
pub use problem::{
    format_ring, parse_matrix, parse_poly_list, parse_problem, parse_problem_in, parse_ring,
    Object, ProblemFile,
};
