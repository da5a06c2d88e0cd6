//! Exact verification engine for the classification of complex
//! four-dimensional Jordan superalgebras.

pub mod atlas;
pub mod catalog;
pub mod degeneration;
pub mod exactmath;
pub mod invariants;
pub mod superalg;
