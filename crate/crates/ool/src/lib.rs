//! Runtime, compile driver and command-line front end for the `ool`
//! operator language. The language itself lives in `ool_core`.

pub mod driver;
pub mod runtime;
