//! Compile-time expansion.
//!
//! Every usage of a defined operator is replaced by a frame that inlines
//! the operator's `execute` method specialized to the usage site:
//! `by_nested_operators` loops are unrolled once per nested statement,
//! `this_operator.m(...)` becomes the inlined method `m` of that nested
//! operator, and `num_nested_operators` folds to a literal. A nested
//! statement that is not a usage of a defined operator only answers
//! `execute` with no arguments.
//!
//! Names resolve in this order: the lexical scope at the written position
//! (including the members of the operator whose method is being
//! expanded), then the `shared` members of the enclosing usages, innermost
//! first, then operators and builtins.

mod builtins;
mod expand;
mod flatten;
mod unit;

use alloc::string::String;
use core::fmt;

pub use builtins::{Builtin, BuiltinFn};
pub use expand::expand;
pub use flatten::{flatten_inheritance, FlatMethod, FlatOperator, FlatVar};
pub use unit::{
    dump_expanded, CellId, CellInfo, ExpandedUnit, FrameInit, RExpr, RExprKind, Step, StepKind,
};

use crate::SrcPos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompileError {
    pub pos: Option<SrcPos>,
    pub message: String,
}

impl CompileError {
    pub fn at(pos: SrcPos, message: impl Into<String>) -> Self {
        CompileError {
            pos: Some(pos),
            message: message.into(),
        }
    }
}

impl fmt::Display for CompileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Some(pos) => write!(f, "{pos}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}
