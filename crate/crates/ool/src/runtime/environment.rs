use std::sync::{Arc, Mutex, MutexGuard};

use ool_core::expander::{CellId, ExpandedUnit};
use ool_core::syntax::VarType;

use super::semaphore::Semaphore;
use super::value::Value;

/// Storage for every cell of an expanded unit.
///
/// Expansion gives each variable, parameter and temporary a fixed cell, so
/// reference parameters and spawned bodies share a cell simply by naming
/// the same id.
#[derive(Debug)]
pub struct Environment {
    types: Vec<VarType>,
    cells: Vec<Mutex<Value>>,
}

impl Environment {
    pub fn new(unit: &ExpandedUnit) -> Environment {
        let types: Vec<VarType> = unit.cells.iter().map(|c| c.ty).collect();
        let cells = types.iter().map(|&t| Mutex::new(default_value(t))).collect();
        Environment { types, cells }
    }

    fn slot(&self, cell: CellId) -> MutexGuard<'_, Value> {
        self.cells[cell.index()].lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn ty(&self, cell: CellId) -> VarType {
        self.types[cell.index()]
    }

    pub fn get(&self, cell: CellId) -> Value {
        self.slot(cell).clone()
    }

    /// Stores `v` without any type check.
    pub fn set(&self, cell: CellId, v: Value) {
        *self.slot(cell) = v;
    }

    /// Puts the cell back to its type's initial value.
    pub fn reset(&self, cell: CellId) {
        self.set(cell, default_value(self.ty(cell)));
    }

    pub fn semaphore(&self, cell: CellId) -> Option<Arc<Semaphore>> {
        match &*self.slot(cell) {
            Value::SemRef(s) => Some(Arc::clone(s)),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

pub fn default_value(ty: VarType) -> Value {
    match ty {
        VarType::Integer => Value::Int(0),
        VarType::String => Value::str(""),
        VarType::Semaphore => Value::SemRef(Arc::new(Semaphore::new())),
    }
}
