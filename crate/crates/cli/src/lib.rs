//! Library side of the `dynosc` command-line tool: run configuration,
//! frame export, moment tables and the verification report.

pub mod config;
pub mod error;
pub mod export;
pub mod moments;
pub mod verify;

pub use config::{OutputKind, RunConfig};
pub use error::{CliError, CliResult};
pub use export::{evolve, FramePacket, Manifest};
pub use moments::moments;
pub use verify::{verify, Check, VerifyOptions, VerifyReport};
