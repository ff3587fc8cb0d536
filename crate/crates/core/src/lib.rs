#![cfg_attr(not(test), no_std)]

//! Front end and compile-time expander for a small operator-oriented
//! language.
//!
//! An *operator* bundles parameters, variables and methods and may be used
//! with a nested statement list (`begin name; ... end name;`). Inside a
//! method, `begin by_nested_operators; ... end by_nested_operators;` is a
//! loop over the usage site's nested statements that is unrolled at compile
//! time, and `this_operator.m(...)` calls method `m` of the nested operator
//! bound by the current unrolled copy. Any operator that has the right
//! method names and arities may be nested; no inheritance relation is
//! required.
//!
//! The pipeline is [`lexer::tokenize`] → [`syntax::parse`] →
//! [`expander::expand`], which produces an [`expander::ExpandedUnit`]: a
//! tree of primitive steps over statically allocated storage cells. The
//! `ool` crate executes those units.
//!
//! This crate only needs `alloc`.

extern crate alloc;

pub mod expander;
pub mod lexer;
mod pos;
pub mod syntax;
pub mod windowkit;

pub use pos::{Origin, Span, SrcPos};
