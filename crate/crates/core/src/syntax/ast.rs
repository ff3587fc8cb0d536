use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    pub fn new(name: impl Into<String>, span: Span) -> Self {
        Ident {
            name: name.into(),
            span,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub name: Ident,
    pub defs: Vec<OperatorDef>,
    pub body: Vec<Statement>,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarType {
    Integer,
    String,
    Semaphore,
}

impl VarType {
    pub fn keyword(self) -> &'static str {
        match self {
            VarType::Integer => "integer",
            VarType::String => "string",
            VarType::Semaphore => "semaphore",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "integer" => Some(VarType::Integer),
            "string" => Some(VarType::String),
            "semaphore" => Some(VarType::Semaphore),
            _ => None,
        }
    }
}

impl fmt::Display for VarType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    Int(i64),
    Str(String),
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(n) => write!(f, "{n}"),
            Literal::Str(s) => write!(f, "\"{s}\""),
        }
    }
}

/// One name in a declaration such as `integer x, y;`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarItem {
    pub name: Ident,
    /// Only operator-level declarations may carry an initializer.
    pub init: Option<Literal>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarDecl {
    pub ty: VarType,
    pub shared: bool,
    pub items: Vec<VarItem>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MethodDef {
    pub name: Ident,
    pub params: Vec<Ident>,
    pub shared: bool,
    /// Declarations written directly in the method body, hoisted.
    pub locals: Vec<VarDecl>,
    pub body: Vec<Statement>,
    pub span: Span,
}

impl MethodDef {
    pub fn arity(&self) -> usize {
        self.params.len()
    }

    pub fn local_type(&self, name: &str) -> Option<VarType> {
        find_decl(&self.locals, name).map(|(d, _)| d.ty)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorDef {
    pub name: Ident,
    pub params: Vec<Ident>,
    pub parent: Option<Ident>,
    pub vars: Vec<VarDecl>,
    pub methods: Vec<MethodDef>,
    pub span: Span,
}

impl OperatorDef {
    pub fn method(&self, name: &str) -> Option<&MethodDef> {
        self.methods.iter().find(|m| m.name.name == name)
    }
}

pub(crate) fn find_decl<'d>(decls: &'d [VarDecl], name: &str) -> Option<(&'d VarDecl, &'d VarItem)> {
    decls
        .iter()
        .find_map(|d| d.items.iter().find(|i| i.name.name == name).map(|i| (d, i)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UseStmt {
    pub name: Ident,
    pub args: Vec<Expr>,
    /// `Some` for the block form `begin name ...; ... end name;`.
    pub nested: Option<Vec<Statement>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Use(UseStmt),
    LoopByNested {
        body: Vec<Statement>,
        span: Span,
    },
    Assign {
        target: Ident,
        value: Expr,
        span: Span,
    },
    ThisCall {
        method: Ident,
        args: Vec<Expr>,
        span: Span,
    },
    VarDecl(VarDecl),
}

impl Statement {
    pub fn span(&self) -> Span {
        match self {
            Statement::Use(u) => u.name.span,
            Statement::LoopByNested { span, .. }
            | Statement::Assign { span, .. }
            | Statement::ThisCall { span, .. } => *span,
            Statement::VarDecl(d) => d.span,
        }
    }

    /// Short human-readable description used in diagnostics.
    pub fn describe(&self) -> String {
        match self {
            Statement::Use(u) if u.nested.is_some() => alloc::format!("block `{}`", u.name.name),
            Statement::Use(u) => alloc::format!("`{}`", u.name.name),
            Statement::LoopByNested { .. } => "loop by nested operators".into(),
            Statement::Assign { target, .. } => alloc::format!("assignment to `{}`", target.name),
            Statement::ThisCall { method, .. } => alloc::format!("`this_operator.{}`", method.name),
            Statement::VarDecl(_) => "declaration".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    pub fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(i64),
    Str(String),
    Name(String),
    Call { name: String, args: Vec<Expr> },
    Binary { op: BinOp, left: Box<Expr>, right: Box<Expr> },
    Neg(Box<Expr>),
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    pub fn as_name(&self) -> Option<&str> {
        match &self.kind {
            ExprKind::Name(n) => Some(n),
            _ => None,
        }
    }
}
