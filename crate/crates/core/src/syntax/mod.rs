//! Syntax tree, parser, pretty printer and tree dump.

mod ast;
mod dump;
mod parser;
mod pretty;

pub use ast::*;
pub use dump::dump_tree;
pub use parser::{parse, ParseError, ParseErrorKind};
pub use pretty::pretty_print;
