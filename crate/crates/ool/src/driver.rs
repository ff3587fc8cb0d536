//! Source-to-result pipeline shared by the CLI and the tests.

use ool_core::expander::{expand, CompileError, ExpandedUnit};
use ool_core::lexer::tokenize;
use ool_core::syntax::{parse, Program};
use ool_core::windowkit::{prelude_program, EventScript, PaintSurface, PreludeVariant};
use ool_core::{Origin, SrcPos};

use crate::runtime::{execute_in, Environment, ExecContext, RunFailure};

/// A lex, parse or expansion error.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}", self.render("<input>"))]
pub struct Diagnostic {
    pub pos: Option<SrcPos>,
    pub message: String,
}

impl Diagnostic {
    /// `FILE:LINE:COL: message`, with prelude positions under `<prelude>`.
    pub fn render(&self, file: &str) -> String {
        match self.pos {
            Some(p) => {
                let file = match p.origin {
                    Origin::Program => file,
                    Origin::Prelude => "<prelude>",
                };
                format!("{file}:{}:{}: {}", p.line, p.column, self.message)
            }
            None => format!("{file}: {}", self.message),
        }
    }
}

fn at(line: u32, column: u32, message: String) -> Diagnostic {
    Diagnostic {
        pos: Some(SrcPos {
            origin: Origin::Program,
            line,
            column,
        }),
        message,
    }
}

impl From<CompileError> for Diagnostic {
    fn from(e: CompileError) -> Diagnostic {
        Diagnostic {
            pos: e.pos,
            message: e.message,
        }
    }
}

pub fn parse_source(source: &str) -> Result<Program, Diagnostic> {
    let tokens = tokenize(source).map_err(|e| at(e.line, e.column, e.message.clone()))?;
    parse(&tokens).map_err(|e| {
        let full = e.to_string();
        let prefix = format!("{}:{}: ", e.line, e.column);
        let message = full.strip_prefix(&prefix).unwrap_or(&full).to_string();
        at(e.line, e.column, message)
    })
}

pub fn compile(source: &str, variant: PreludeVariant) -> Result<ExpandedUnit, Diagnostic> {
    let program = parse_source(source)?;
    Ok(expand(&program, &prelude_program(variant))?)
}

/// What a finished run left behind.
pub struct RunResult {
    pub output: String,
    pub surface: String,
    pub warnings: Vec<String>,
    pub status: Result<(), RunFailure>,
}

/// Runs an already compiled unit on a fresh surface.
pub fn run_unit(unit: &ExpandedUnit, events: EventScript, surface: PaintSurface) -> RunResult {
    let ctx = ExecContext::new(surface, events);
    run_with(unit, &Environment::new(unit), &ctx)
}

pub fn run_with(unit: &ExpandedUnit, env: &Environment, ctx: &ExecContext) -> RunResult {
    let status = execute_in(unit, env, ctx);
    RunResult {
        output: ctx.output(),
        surface: ctx.surface_dump(),
        warnings: ctx.warnings(),
        status,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagnostics_render_file_positions() {
        let err = compile("program p;\n  nope;\nend program p;", PreludeVariant::Parallel).unwrap_err();
        assert!(err.render("x.ool").starts_with("x.ool:2:3: unresolved name `nope`"), "{}", err.render("x.ool"));
    }

    #[test]
    fn parse_errors_keep_their_message() {
        let err = compile("program p; end program q;", PreludeVariant::Parallel).unwrap_err();
        assert_eq!(
            err.render("f"),
            "f:1:24: mismatched end: expected `p`, found `q`"
        );
    }

    #[test]
    fn lex_errors_are_diagnostics() {
        let err = compile("program p; ? end program p;", PreludeVariant::Parallel).unwrap_err();
        assert!(err.render("f").starts_with("f:1:12: "), "{}", err.render("f"));
    }

    #[test]
    fn prelude_positions_are_labelled() {
        let err = compile("program p; close_dialog; end program p;", PreludeVariant::Parallel).unwrap_err();
        assert!(err.render("f").starts_with("<prelude>:"), "{}", err.render("f"));
    }
}
