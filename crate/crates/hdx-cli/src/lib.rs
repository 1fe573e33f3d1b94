//! Library half of the `hdx` command line tool: canonical JSON
//! serialization of complexes and cochains, and the named verification
//! suites. The binary in `main.rs` is a thin argument-parsing shell over
//! these modules, which keeps every byte-level format decision testable.

pub mod serialize;
pub mod verify;
