//! Text and JSON input/output.

pub mod commands;
pub mod presentation;
pub mod term;

pub use presentation::{load_presentation, parse_rational, PresentationError, PresentationFile};
pub use term::{parse_term, print_term, print_word, ParseError};
