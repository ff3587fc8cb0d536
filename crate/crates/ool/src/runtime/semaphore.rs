use std::sync::{Condvar, Mutex, MutexGuard};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemError {
    #[error("semaphore count cannot be negative (assigned {0})")]
    Negative(i64),
    #[error("semaphore decremented below zero")]
    Underflow,
}

/// A counter with atomic assign and decrement and a blocking wait for zero.
///
/// All three operations go through one mutex, so whatever a strand wrote
/// before decrementing is visible to a waiter that observes the zero.
#[derive(Debug, Default)]
pub struct Semaphore {
    count: Mutex<i64>,
    zero: Condvar,
}

impl Semaphore {
    pub fn new() -> Semaphore {
        Semaphore::default()
    }

    fn lock(&self) -> MutexGuard<'_, i64> {
        self.count.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn value(&self) -> i64 {
        *self.lock()
    }

    pub fn assign(&self, n: i64) -> Result<(), SemError> {
        if n < 0 {
            return Err(SemError::Negative(n));
        }
        let mut count = self.lock();
        *count = n;
        if n == 0 {
            self.zero.notify_all();
        }
        Ok(())
    }

    pub fn decrement(&self) -> Result<(), SemError> {
        let mut count = self.lock();
        if *count == 0 {
            return Err(SemError::Underflow);
        }
        *count -= 1;
        if *count == 0 {
            self.zero.notify_all();
        }
        Ok(())
    }

    pub fn wait_zero(&self) {
        let mut count = self.lock();
        while *count != 0 {
            count = self.zero.wait(count).unwrap_or_else(|e| e.into_inner());
        }
    }
}
