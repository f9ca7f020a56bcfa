//! Script language, golden checks, randomized suites and the command-line front end.

pub mod ast;
pub mod eval;
pub mod parser;
pub mod verify;
pub mod fuzz;
pub mod repl;
