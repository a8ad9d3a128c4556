pub mod envelope;
pub mod io;
pub mod lie;
pub mod oplie;
pub mod rewrite;
pub mod words;
