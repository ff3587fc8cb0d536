use alloc::string::String;
use core::fmt::Write;

use super::ast::*;
use crate::Span;

/// Indented tree dump, one node per line: `KIND name @LINE:COL`, with any
/// extra detail after the position.
pub fn dump_tree(program: &Program) -> String {
    let mut d = Dumper {
        out: String::new(),
        depth: 0,
    };
    d.node("Program", &program.name.name, program.span, "");
    d.depth += 1;
    for def in &program.defs {
        d.operator(def);
    }
    d.statements(&program.body);
    d.out
}

struct Dumper {
    out: String,
    depth: usize,
}

impl Dumper {
    fn node(&mut self, kind: &str, name: &str, span: Span, detail: &str) {
        for _ in 0..self.depth {
            self.out.push_str("  ");
        }
        write!(self.out, "{kind} {name} @{}:{}", span.line, span.column).unwrap();
        if !detail.is_empty() {
            self.out.push(' ');
            self.out.push_str(detail);
        }
        self.out.push('\n');
    }

    fn children(&mut self, f: impl FnOnce(&mut Self)) {
        self.depth += 1;
        f(self);
        self.depth -= 1;
    }

    fn operator(&mut self, def: &OperatorDef) {
        self.node("Operator", &def.name.name, def.span, "");
        self.children(|d| {
            for p in &def.params {
                d.node("Param", &p.name, p.span, "");
            }
            if let Some(parent) = &def.parent {
                d.node("Inherits", &parent.name, parent.span, "");
            }
            for v in &def.vars {
                d.var_decl(v);
            }
            for m in &def.methods {
                d.method(m);
            }
        });
    }

    fn method(&mut self, m: &MethodDef) {
        let detail = if m.shared { "shared" } else { "" };
        self.node("Method", &m.name.name, m.span, detail);
        self.children(|d| {
            for p in &m.params {
                d.node("Param", &p.name, p.span, "");
            }
            for v in &m.locals {
                d.var_decl(v);
            }
            d.statements(&m.body);
        });
    }

    fn var_decl(&mut self, v: &VarDecl) {
        for item in &v.items {
            let mut detail = String::from(v.ty.keyword());
            if v.shared {
                detail.push_str(" shared");
            }
            if let Some(init) = &item.init {
                write!(detail, " := {init}").unwrap();
            }
            self.node("Var", &item.name.name, item.name.span, &detail);
        }
    }

    fn statements(&mut self, stmts: &[Statement]) {
        for s in stmts {
            self.statement(s);
        }
    }

    fn statement(&mut self, s: &Statement) {
        match s {
            Statement::Use(u) => {
                let kind = if u.nested.is_some() { "Block" } else { "Use" };
                self.node(kind, &u.name.name, u.name.span, "");
                self.children(|d| {
                    for a in &u.args {
                        d.expr(a);
                    }
                    if let Some(nested) = &u.nested {
                        d.statements(nested);
                    }
                });
            }
            Statement::LoopByNested { body, span } => {
                self.node("Loop", "by_nested_operators", *span, "");
                self.children(|d| d.statements(body));
            }
            Statement::Assign { target, value, span } => {
                self.node("Assign", &target.name, *span, "");
                self.children(|d| d.expr(value));
            }
            Statement::ThisCall { method, args, span } => {
                self.node("ThisCall", &method.name, *span, "");
                self.children(|d| {
                    for a in args {
                        d.expr(a);
                    }
                });
            }
            Statement::VarDecl(v) => self.var_decl(v),
        }
    }

    fn expr(&mut self, e: &Expr) {
        match &e.kind {
            ExprKind::Int(n) => self.node("IntLit", &alloc::format!("{n}"), e.span, ""),
            ExprKind::Str(s) => self.node("StrLit", &alloc::format!("\"{s}\""), e.span, ""),
            ExprKind::Name(n) => self.node("Name", n, e.span, ""),
            ExprKind::Call { name, args } => {
                self.node("Call", name, e.span, "");
                self.children(|d| {
                    for a in args {
                        d.expr(a);
                    }
                });
            }
            ExprKind::Binary { op, left, right } => {
                self.node("Binary", op.symbol(), e.span, "");
                self.children(|d| {
                    d.expr(left);
                    d.expr(right);
                });
            }
            ExprKind::Neg(inner) => {
                self.node("Neg", "-", e.span, "");
                self.children(|d| d.expr(inner));
            }
        }
    }
}
