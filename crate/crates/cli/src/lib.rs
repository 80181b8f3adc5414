//! Command-line support for tvlab: complex files, a result cache and the
//! claim registry.

pub mod cache;
pub mod claims;
pub mod io;
