use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use super::builtins::{Builtin, BuiltinFn};
use crate::syntax::{BinOp, VarType};
use crate::SrcPos;

/// Index of a statically allocated storage cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(pub u32);

impl CellId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellInfo {
    pub ty: VarType,
    /// Dotted path of the declaration, for dumps and error messages.
    pub name: String,
}

/// The expanded intermediary program: loops unrolled, methods inlined and
/// every name resolved to a cell or a literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedUnit {
    pub cells: Vec<CellInfo>,
    pub body: Step,
}

impl ExpandedUnit {
    pub fn cell(&self, id: CellId) -> &CellInfo {
        &self.cells[id.index()]
    }

    /// Visits every step, parents before children.
    pub fn walk<'u>(&'u self, f: &mut impl FnMut(&'u Step)) {
        self.body.walk(f);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub pos: SrcPos,
    pub kind: StepKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    Seq(Vec<Step>),
    Assign {
        target: CellId,
        value: RExpr,
    },
    Builtin {
        op: Builtin,
        args: Vec<RExpr>,
        body: Option<Box<Step>>,
    },
    /// An operator instance or an inlined method. `inits` run on entry, in
    /// order.
    Frame {
        label: String,
        inits: Vec<FrameInit>,
        body: Box<Step>,
    },
    Spawn {
        sem: CellId,
        body: Box<Step>,
    },
    WaitZero {
        sem: CellId,
    },
}

impl Step {
    pub fn seq(pos: SrcPos, steps: Vec<Step>) -> Step {
        Step {
            pos,
            kind: StepKind::Seq(steps),
        }
    }

    pub fn walk<'s>(&'s self, f: &mut impl FnMut(&'s Step)) {
        f(self);
        match &self.kind {
            StepKind::Seq(steps) => steps.iter().for_each(|s| s.walk(f)),
            StepKind::Builtin { body: Some(b), .. }
            | StepKind::Frame { body: b, .. }
            | StepKind::Spawn { body: b, .. } => b.walk(f),
            StepKind::Builtin { body: None, .. }
            | StepKind::Assign { .. }
            | StepKind::WaitZero { .. } => {}
        }
    }
}

/// A cell initialization; `None` means the type's default value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameInit {
    pub cell: CellId,
    pub value: Option<RExpr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RExpr {
    pub pos: SrcPos,
    pub kind: RExprKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RExprKind {
    Int(i64),
    Str(String),
    Cell(CellId),
    Call { func: BuiltinFn, args: Vec<RExpr> },
    Binary { op: BinOp, left: Box<RExpr>, right: Box<RExpr> },
    Neg(Box<RExpr>),
}

impl fmt::Display for RExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RExprKind::Int(n) => write!(f, "{n}"),
            RExprKind::Str(s) => write!(f, "\"{s}\""),
            RExprKind::Cell(c) => write!(f, "{c}"),
            RExprKind::Call { func, args } => {
                write!(f, "{}(", func.name())?;
                write_list(f, args)?;
                f.write_str(")")
            }
            RExprKind::Binary { op, left, right } => {
                write!(f, "({left} {} {right})", op.symbol())
            }
            RExprKind::Neg(inner) => write!(f, "-({inner})"),
        }
    }
}

fn write_list(f: &mut impl Write, items: &[RExpr]) -> fmt::Result {
    for (i, a) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

/// Stable line-per-step rendering of a unit. Sequences are transparent;
/// an empty one prints as `SEQ (empty)`.
pub fn dump_expanded(unit: &ExpandedUnit) -> String {
    let mut out = String::new();
    dump_step(unit, &unit.body, 0, &mut out);
    out
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn dump_step(unit: &ExpandedUnit, step: &Step, depth: usize, out: &mut String) {
    let pos = step.pos;
    match &step.kind {
        StepKind::Seq(steps) if steps.is_empty() => {
            indent(out, depth);
            out.push_str("SEQ (empty)\n");
        }
        StepKind::Seq(steps) => {
            for s in steps {
                dump_step(unit, s, depth, out);
            }
        }
        StepKind::Assign { target, value } => {
            indent(out, depth);
            writeln!(out, "ASSIGN {target} := {value} @{pos}").unwrap();
        }
        StepKind::Builtin { op, args, body } => {
            indent(out, depth);
            write!(out, "BUILTIN {op} @{pos} (").unwrap();
            write_list(out, args).unwrap();
            out.push_str(")\n");
            if let Some(body) = body {
                dump_step(unit, body, depth + 1, out);
            }
        }
        StepKind::Frame { label, inits, body } => {
            indent(out, depth);
            writeln!(out, "FRAME {label} @{pos}").unwrap();
            for init in inits {
                let info = unit.cell(init.cell);
                indent(out, depth + 1);
                write!(out, "INIT {} {} {}", init.cell, info.ty, info.name).unwrap();
                if let Some(v) = &init.value {
                    write!(out, " := {v}").unwrap();
                }
                out.push('\n');
            }
            dump_step(unit, body, depth + 1, out);
        }
        StepKind::Spawn { sem, body } => {
            indent(out, depth);
            writeln!(out, "SPAWN {sem} @{pos}").unwrap();
            dump_step(unit, body, depth + 1, out);
        }
        StepKind::WaitZero { sem } => {
            indent(out, depth);
            writeln!(out, "WAITZERO {sem} @{pos}").unwrap();
        }
    }
}
