//! Support library for the `mmwave` binary: parameter-file ingestion,
//! branch CSV emission/parsing and SVG rendering.

pub mod csvio;
pub mod paramfile;
pub mod svg;
