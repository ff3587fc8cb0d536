//! Executes expanded units.
//!
//! Every strand walks steps on its own thread; `new_thread` blocks start a
//! new strand inside one `std::thread::scope`, so nothing outlives the run.

mod clock;
mod context;
mod environment;
mod interp;
mod semaphore;
mod value;

use std::fmt;

use ool_core::SrcPos;

pub use clock::{Clock, SystemClock, VirtualClock};
pub use context::ExecContext;
pub use environment::{default_value, Environment};
pub use interp::{eval, execute, execute_in};
pub use semaphore::{SemError, Semaphore};
pub use value::Value;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("runtime error @{pos}: {message}")]
pub struct RuntimeError {
    pub pos: SrcPos,
    pub message: String,
}

impl RuntimeError {
    pub fn new(pos: SrcPos, message: impl Into<String>) -> RuntimeError {
        RuntimeError {
            pos,
            message: message.into(),
        }
    }
}

/// Errors collected by a failed run, main strand first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunFailure {
    pub errors: Vec<RuntimeError>,
}

impl fmt::Display for RunFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.errors.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for RunFailure {}
