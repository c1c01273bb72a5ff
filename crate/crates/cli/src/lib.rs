//! File formats, reports, DOT export and the command-line pipeline for
//! [`hypergame_core`].

pub mod dot;
pub mod report;
pub mod run;
pub mod schema;

pub use run::{run, Mode, RunConfig, RunError, RunOutcome};
pub use schema::{load_arena, load_arena_file, save_arena, Document, LoadError};
