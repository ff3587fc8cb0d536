use std::sync::{Arc, Mutex, MutexGuard};

use ool_core::windowkit::{EventScript, PaintSurface};

use super::clock::{Clock, SystemClock};
use super::RuntimeError;

/// Everything a run touches outside its cells.
///
/// Each field sits behind its own mutex so concurrent strands paint and
/// print one call at a time.
pub struct ExecContext {
    surface: Mutex<PaintSurface>,
    events: Mutex<EventScript>,
    output: Mutex<String>,
    warnings: Mutex<Vec<String>>,
    deferred: Mutex<Vec<RuntimeError>>,
    clock: Arc<dyn Clock>,
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

impl ExecContext {
    pub fn new(surface: PaintSurface, events: EventScript) -> ExecContext {
        ExecContext {
            surface: Mutex::new(surface),
            events: Mutex::new(events),
            output: Mutex::new(String::new()),
            warnings: Mutex::new(Vec::new()),
            deferred: Mutex::new(Vec::new()),
            clock: Arc::new(SystemClock::new()),
        }
    }

    pub fn with_clock(mut self, clock: Arc<dyn Clock>) -> ExecContext {
        self.clock = clock;
        self
    }

    pub fn clock(&self) -> &dyn Clock {
        &*self.clock
    }

    pub fn surface(&self) -> MutexGuard<'_, PaintSurface> {
        lock(&self.surface)
    }

    pub fn events(&self) -> MutexGuard<'_, EventScript> {
        lock(&self.events)
    }

    pub fn print(&self, line: &str) {
        let mut out = lock(&self.output);
        out.push_str(line);
        out.push('\n');
    }

    pub fn warn(&self, message: String) {
        lock(&self.warnings).push(message);
    }

    pub(crate) fn defer(&self, err: RuntimeError) {
        lock(&self.deferred).push(err);
    }

    pub(crate) fn take_deferred(&self) -> Vec<RuntimeError> {
        std::mem::take(&mut *lock(&self.deferred))
    }

    pub fn output(&self) -> String {
        lock(&self.output).clone()
    }

    pub fn warnings(&self) -> Vec<String> {
        lock(&self.warnings).clone()
    }

    pub fn surface_dump(&self) -> String {
        self.surface().dump()
    }
}
