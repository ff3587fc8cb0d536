use alloc::string::String;
use core::fmt::Write;

use super::ast::*;

const INDENT: &str = "  ";

/// Renders a tree as source text that parses back to an equal tree.
pub fn pretty_print(program: &Program) -> String {
    let mut p = Printer {
        out: String::new(),
        depth: 0,
    };
    p.line(format_args!("program {};", program.name.name));
    for def in &program.defs {
        p.operator(def);
    }
    p.statements(&program.body);
    p.line(format_args!("end program {};", program.name.name));
    p.out
}

struct Printer {
    out: String,
    depth: usize,
}

impl Printer {
    fn line(&mut self, args: core::fmt::Arguments<'_>) {
        for _ in 0..self.depth {
            self.out.push_str(INDENT);
        }
        self.out.write_fmt(args).unwrap();
        self.out.push('\n');
    }

    fn nest(&mut self, f: impl FnOnce(&mut Self)) {
        self.depth += 1;
        f(self);
        self.depth -= 1;
    }

    fn operator(&mut self, def: &OperatorDef) {
        let mut header = String::new();
        write!(header, "operator {}{}", def.name.name, idents(&def.params)).unwrap();
        if let Some(parent) = &def.parent {
            write!(header, " inherits {}", parent.name).unwrap();
        }
        self.line(format_args!("{header};"));
        self.nest(|p| {
            for v in &def.vars {
                p.var_decl(v);
            }
            for m in &def.methods {
                p.method(m);
            }
        });
        self.line(format_args!("end operator {};", def.name.name));
    }

    fn method(&mut self, m: &MethodDef) {
        let shared = if m.shared { "shared " } else { "" };
        self.line(format_args!("{shared}method {}{};", m.name.name, idents(&m.params)));
        self.nest(|p| {
            for v in &m.locals {
                p.var_decl(v);
            }
            p.statements(&m.body);
        });
        self.line(format_args!("end method {};", m.name.name));
    }

    fn var_decl(&mut self, d: &VarDecl) {
        let mut text = String::new();
        if d.shared {
            text.push_str("shared ");
        }
        text.push_str(d.ty.keyword());
        for (i, item) in d.items.iter().enumerate() {
            text.push_str(if i == 0 { " " } else { ", " });
            text.push_str(&item.name.name);
            if let Some(init) = &item.init {
                write!(text, " := {init}").unwrap();
            }
        }
        self.line(format_args!("{text};"));
    }

    fn statements(&mut self, stmts: &[Statement]) {
        for s in stmts {
            self.statement(s);
        }
    }

    fn statement(&mut self, s: &Statement) {
        match s {
            Statement::Use(u) => {
                let args = use_args(&u.args);
                match &u.nested {
                    None => self.line(format_args!("{}{args};", u.name.name)),
                    Some(nested) => {
                        self.line(format_args!("begin {}{args};", u.name.name));
                        self.nest(|p| p.statements(nested));
                        self.line(format_args!("end {};", u.name.name));
                    }
                }
            }
            Statement::LoopByNested { body, .. } => {
                self.line(format_args!("begin by_nested_operators;"));
                self.nest(|p| p.statements(body));
                self.line(format_args!("end by_nested_operators;"));
            }
            Statement::Assign { target, value, .. } => {
                self.line(format_args!("{} := {};", target.name, expr(value)));
            }
            Statement::ThisCall { method, args, .. } => {
                let args = if args.is_empty() {
                    String::new()
                } else {
                    paren_list(args)
                };
                self.line(format_args!("this_operator.{}{args};", method.name));
            }
            Statement::VarDecl(d) => self.var_decl(d),
        }
    }
}

fn idents(list: &[Ident]) -> String {
    if list.is_empty() {
        return String::new();
    }
    let mut out = String::from("(");
    for (i, id) in list.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&id.name);
    }
    out.push(')');
    out
}

fn paren_list(args: &[Expr]) -> String {
    let mut out = String::from("(");
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&expr(a));
    }
    out.push(')');
    out
}

/// A single literal or name prints bare, as in `dialog_window "Title"`.
fn use_args(args: &[Expr]) -> String {
    match args {
        [] => String::new(),
        [single] if matches!(single.kind, ExprKind::Int(n) if n >= 0)
            || matches!(single.kind, ExprKind::Str(_) | ExprKind::Name(_)) =>
        {
            alloc::format!(" {}", expr(single))
        }
        _ => paren_list(args),
    }
}

pub(crate) fn expr(e: &Expr) -> String {
    match &e.kind {
        ExprKind::Int(n) if *n < 0 => alloc::format!("({n})"),
        ExprKind::Int(n) => alloc::format!("{n}"),
        ExprKind::Str(s) => alloc::format!("\"{s}\""),
        ExprKind::Name(n) => n.clone(),
        ExprKind::Call { name, args } => alloc::format!("{name}{}", paren_list(args)),
        ExprKind::Neg(inner) => match inner.kind {
            ExprKind::Binary { .. } | ExprKind::Neg(_) => alloc::format!("-({})", expr(inner)),
            ExprKind::Int(n) if n < 0 => alloc::format!("-({})", expr(inner)),
            _ => alloc::format!("-{}", expr(inner)),
        },
        ExprKind::Binary { op, left, right } => {
            let prec = op.precedence();
            let l = match &left.kind {
                ExprKind::Binary { op: lop, .. } if lop.precedence() < prec => {
                    alloc::format!("({})", expr(left))
                }
                _ => expr(left),
            };
            let r = match &right.kind {
                ExprKind::Binary { op: rop, .. } if rop.precedence() <= prec => {
                    alloc::format!("({})", expr(right))
                }
                _ => expr(right),
            };
            alloc::format!("{l} {} {r}", op.symbol())
        }
    }
}
