use alloc::string::String;

use crate::lexer::tokenize;
use crate::syntax::{parse, Program};

const WINDOWKIT: &str = include_str!("prelude/windowkit.ool");
const PARALLEL: &str = include_str!("prelude/parallel.ool");
const SEQUENTIAL: &str = include_str!("prelude/sequential.ool");

/// Which definition of `parallel_execute` the prelude carries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PreludeVariant {
    /// One thread per nested operator, joined on a semaphore.
    #[default]
    Parallel,
    /// Nested operators run one after another on the calling thread.
    Sequential,
}

pub fn prelude_source(variant: PreludeVariant) -> String {
    let tail = match variant {
        PreludeVariant::Parallel => PARALLEL,
        PreludeVariant::Sequential => SEQUENTIAL,
    };
    let mut src = String::with_capacity(WINDOWKIT.len() + tail.len() + 64);
    src.push_str("program prelude;\n");
    src.push_str(WINDOWKIT);
    src.push('\n');
    src.push_str(tail);
    src.push_str("end program prelude;\n");
    src
}

pub fn prelude_program(variant: PreludeVariant) -> Program {
    let src = prelude_source(variant);
    let tokens = tokenize(&src).unwrap_or_else(|e| panic!("prelude does not lex: {e}"));
    parse(&tokens).unwrap_or_else(|e| panic!("prelude does not parse: {e}"))
}
