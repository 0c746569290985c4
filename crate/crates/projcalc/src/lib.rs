//! Verification harness for the projection calculus: matrix file formats,
//! seeded pair generation, statement dispatch, and campaign execution.
//! The binary in this package is a thin argument layer over these
//! modules, so everything the CLI can do is also callable as a library
//! and exercised directly by the test suite.

pub mod campaign;
pub mod gen;
pub mod io;
pub mod verify;
