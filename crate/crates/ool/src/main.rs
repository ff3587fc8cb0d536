use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use ool::driver::{compile, parse_source, run_unit, Diagnostic};
use ool_core::lexer::tokenize;
use ool_core::syntax::dump_tree;
use ool_core::windowkit::{parse_events, EventScript, PaintSurface, PreludeVariant};

const EXIT_COMPILE: u8 = 1;
const EXIT_RUNTIME: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Compile and execute, then print the surface
    Run,
    /// Report diagnostics only
    Check,
    /// Print the expanded program
    Expand,
    /// Print the syntax tree
    Ast,
    /// Print one token per line
    Tokens,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Prelude {
    Parallel,
    Sequential,
}

#[derive(Parser, Debug)]
#[command(name = "ool", version, about = "Compile and run operator-language programs")]
struct Cli {
    command: Command,
    file: PathBuf,
    /// Scripted button presses, one `press LABEL` per line (run only)
    #[arg(long, value_name = "FILE")]
    events: Option<PathBuf>,
    /// Paint surface size as COLSxROWS
    #[arg(long, value_name = "CxR", default_value = "80x25", value_parser = parse_size)]
    surface: (usize, usize),
    /// Which parallel_execute the prelude provides
    #[arg(long, value_enum, default_value_t = Prelude::Parallel)]
    prelude: Prelude,
    /// Do not print the surface after a run
    #[arg(long)]
    no_surface: bool,
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected COLSxROWS with both positive, found `{s}`");
    let (c, r) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let cols: usize = c.parse().map_err(|_| bad())?;
    let rows: usize = r.parse().map_err(|_| bad())?;
    if cols == 0 || rows == 0 {
        return Err(bad());
    }
    Ok((cols, rows))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    if cli.events.is_some() && cli.command != Command::Run {
        eprintln!("error: --events is only valid with `run`");
        return ExitCode::from(EXIT_USAGE);
    }
    let file = cli.file.display().to_string();
    let source = match std::fs::read_to_string(&cli.file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {file}: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match drive(&cli, &file, &source) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}

fn report(file: &str, d: &Diagnostic) -> u8 {
    eprintln!("{}", d.render(file));
    EXIT_COMPILE
}

fn drive(cli: &Cli, file: &str, source: &str) -> Result<(), u8> {
    let variant = match cli.prelude {
        Prelude::Parallel => PreludeVariant::Parallel,
        Prelude::Sequential => PreludeVariant::Sequential,
    };
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Tokens => {
            let tokens = tokenize(source).map_err(|e| {
                eprintln!("{file}:{}:{}: {}", e.line, e.column, e.message);
                EXIT_COMPILE
            })?;
            for t in tokens {
                let _ = writeln!(out, "{t}");
            }
        }
        Command::Ast => {
            let program = parse_source(source).map_err(|d| report(file, &d))?;
            let _ = out.write_all(dump_tree(&program).as_bytes());
        }
        Command::Check => {
            compile(source, variant).map_err(|d| report(file, &d))?;
        }
        Command::Expand => {
            let unit = compile(source, variant).map_err(|d| report(file, &d))?;
            let _ = out.write_all(ool_core::expander::dump_expanded(&unit).as_bytes());
        }
        Command::Run => {
            let unit = compile(source, variant).map_err(|d| report(file, &d))?;
            let events = match &cli.events {
                None => EventScript::default(),
                Some(path) => load_events(path)?,
            };
            let (cols, rows) = cli.surface;
            let result = run_unit(&unit, events, PaintSurface::new(cols, rows));
            let _ = out.write_all(result.output.as_bytes());
            for w in &result.warnings {
                eprintln!("{file}: warning: {w}");
            }
            if let Err(failure) = result.status {
                let _ = out.flush();
                for e in &failure.errors {
                    eprintln!("{file}: {e}");
                }
                return Err(EXIT_RUNTIME);
            }
            if !cli.no_surface {
                let _ = writeln!(out, "--- surface ---");
                let _ = out.write_all(result.surface.as_bytes());
            }
        }
    }
    Ok(())
}

fn load_events(path: &PathBuf) -> Result<EventScript, u8> {
    let shown = path.display();
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {shown}: {e}");
        EXIT_USAGE
    })?;
    parse_events(&text).map_err(|e| {
        eprintln!("{shown}:{}: runtime error: {}", e.line, e.message);
        EXIT_RUNTIME
    })
}
