use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::builtins::{Arity, Builtin, BuiltinFn};
use super::flatten::{flatten_inheritance, FlatMethod, FlatOperator};
use super::unit::*;
use super::CompileError;
use crate::syntax::{Expr, ExprKind, Ident, Literal, Program, Statement, UseStmt, VarType};
use crate::{Origin, Span, SrcPos};

const NUM_NESTED: &str = "num_nested_operators";
const MAX_DEPTH: usize = 256;

/// Expands `program` against `prelude` into a unit of primitive steps.
pub fn expand(program: &Program, prelude: &Program) -> Result<ExpandedUnit, CompileError> {
    let defs: Vec<(Origin, _)> = prelude
        .defs
        .iter()
        .map(|d| (Origin::Prelude, d))
        .chain(program.defs.iter().map(|d| (Origin::Program, d)))
        .collect();
    let ops = flatten_inheritance(&defs)?;

    let mut ex = Expander {
        ops: &ops,
        cells: Vec::new(),
        readonly: BTreeSet::new(),
        instances: Vec::new(),
        frames: vec![Vec::new()],
        depth: 0,
        globals: BTreeMap::new(),
        global_decls: Vec::new(),
    };
    ex.declare_globals(&program.body);
    let root = Ctx {
        origin: Origin::Program,
        scope: None,
        owner: None,
        chain: Vec::new(),
        this: None,
        path: Vec::new(),
    };
    let steps = ex.block(&program.body, &root)?;
    let inits = ex.frames.pop().unwrap_or_default();
    let pos = SrcPos::new(Origin::Program, program.span);
    let body = if inits.is_empty() {
        Step::seq(pos, steps)
    } else {
        Step {
            pos,
            kind: StepKind::Frame {
                label: program.name.name.clone(),
                inits,
                body: Box::new(Step::seq(pos, steps)),
            },
        }
    };
    Ok(ExpandedUnit {
        cells: ex.cells,
        body,
    })
}

type InstanceId = usize;

/// An operator usage: its storage and the nested statements written at the
/// usage site.
struct Instance<'a> {
    op: &'a FlatOperator,
    members: BTreeMap<&'a str, CellId>,
    nested: Vec<NestedOp<'a>>,
    /// Context at the usage site; the operator's methods resolve shared
    /// names against its chain.
    usage: Ctx<'a>,
    pos: SrcPos,
}

#[derive(Clone)]
struct NestedOp<'a> {
    stmt: &'a Statement,
    /// Context at the statement's written position.
    ctx: Ctx<'a>,
    /// Set when the statement uses a defined operator.
    instance: Option<InstanceId>,
}

struct Scope<'a> {
    name: &'a str,
    cell: CellId,
    parent: Option<Rc<Scope<'a>>>,
}

#[derive(Clone)]
struct Ctx<'a> {
    origin: Origin,
    /// Lexical bindings visible at this point, innermost first.
    scope: Option<Rc<Scope<'a>>>,
    /// Instance whose method text is being expanded.
    owner: Option<InstanceId>,
    /// Enclosing instances, innermost first.
    chain: Vec<InstanceId>,
    /// Nested operator designated by `this_operator`.
    this: Option<(InstanceId, usize)>,
    /// (operator, method) pairs whose text encloses this point.
    path: Vec<(&'a str, &'a str)>,
}

impl<'a> Ctx<'a> {
    fn pos(&self, span: Span) -> SrcPos {
        SrcPos::new(self.origin, span)
    }

    fn bind(&mut self, name: &'a str, cell: CellId) {
        self.scope = Some(Rc::new(Scope {
            name,
            cell,
            parent: self.scope.take(),
        }));
    }

    fn lookup(&self, name: &str) -> Option<CellId> {
        let mut s = self.scope.as_deref();
        while let Some(scope) = s {
            if scope.name == name {
                return Some(scope.cell);
            }
            s = scope.parent.as_deref();
        }
        None
    }
}

enum Resolved<'a> {
    Cell(CellId),
    Const(i64),
    Method(InstanceId, &'a FlatMethod),
    Operator(&'a FlatOperator),
    Builtin(Builtin),
}

struct Expander<'a> {
    ops: &'a BTreeMap<String, FlatOperator>,
    cells: Vec<CellInfo>,
    /// Cells holding a value passed where a variable was expected.
    readonly: BTreeSet<CellId>,
    instances: Vec<Instance<'a>>,
    /// Pending initializations, one list per open frame.
    frames: Vec<Vec<FrameInit>>,
    depth: usize,
    /// Variables declared at the top level of the program body. Methods of
    /// operators defined in the program can name them.
    globals: BTreeMap<&'a str, CellId>,
    global_decls: Vec<&'a crate::syntax::VarDecl>,
}

impl<'a> Expander<'a> {
    fn alloc(&mut self, ty: VarType, name: String, value: Option<RExpr>) -> CellId {
        let id = CellId(self.cells.len() as u32);
        self.cells.push(CellInfo { ty, name });
        self.frames
            .last_mut()
            .expect("an open frame")
            .push(FrameInit { cell: id, value });
        id
    }

    fn declare_globals(&mut self, body: &'a [Statement]) {
        for stmt in body {
            if let Statement::VarDecl(decl) = stmt {
                for item in &decl.items {
                    let cell = self.alloc(decl.ty, item.name.name.clone(), None);
                    self.globals.entry(&item.name.name).or_insert(cell);
                }
                self.global_decls.push(decl);
            }
        }
    }

    fn chain_names(&self, chain: &[InstanceId]) -> String {
        if chain.is_empty() {
            return "none".into();
        }
        chain
            .iter()
            .map(|&i| format!("`{}`", self.instances[i].op.name))
            .collect::<Vec<_>>()
            .join(", ")
    }

    fn resolve(&self, name: &str, ctx: &Ctx<'a>, pos: SrcPos) -> Result<Resolved<'a>, CompileError> {
        if name == NUM_NESTED {
            return match ctx.owner {
                Some(owner) => Ok(Resolved::Const(self.instances[owner].nested.len() as i64)),
                None => Err(CompileError::at(
                    pos,
                    format!("`{NUM_NESTED}` is only available inside an operator's methods"),
                )),
            };
        }
        if let Some(cell) = ctx.lookup(name) {
            return Ok(Resolved::Cell(cell));
        }
        if let Some(owner) = ctx.owner {
            let inst = &self.instances[owner];
            if let Some(&cell) = inst.members.get(name) {
                return Ok(Resolved::Cell(cell));
            }
            if let Some(m) = inst.op.method(name) {
                return Ok(Resolved::Method(owner, m));
            }
            if ctx.origin == Origin::Program {
                if let Some(&cell) = self.globals.get(name) {
                    return Ok(Resolved::Cell(cell));
                }
            }
        }
        for &id in &ctx.chain {
            let inst = &self.instances[id];
            if inst.op.shared.contains(name) {
                if let Some(&cell) = inst.members.get(name) {
                    return Ok(Resolved::Cell(cell));
                }
                if let Some(m) = inst.op.method(name) {
                    return Ok(Resolved::Method(id, m));
                }
            }
        }
        if let Some(op) = self.ops.get(name) {
            return Ok(Resolved::Operator(op));
        }
        if let Some(b) = Builtin::lookup(name) {
            return Ok(Resolved::Builtin(b));
        }
        let owner = match ctx.owner {
            Some(o) => format!("`{}`", self.instances[o].op.name),
            None => "the program".into(),
        };
        let globals = if ctx.owner.is_some() && ctx.origin == Origin::Program {
            "; program variables"
        } else {
            ""
        };
        Err(CompileError::at(
            pos,
            format!(
                "unresolved name `{name}` (searched: local scope of {owner}{globals}; shared context: {}; operators and builtins)",
                self.chain_names(&ctx.chain)
            ),
        ))
    }

    fn value(&self, name: &str, ctx: &Ctx<'a>, pos: SrcPos) -> Result<RExprKind, CompileError> {
        match self.resolve(name, ctx, pos)? {
            Resolved::Cell(c) => Ok(RExprKind::Cell(c)),
            Resolved::Const(n) => Ok(RExprKind::Int(n)),
            _ => Err(CompileError::at(pos, format!("`{name}` is not a variable"))),
        }
    }

    fn expr(&self, e: &'a Expr, ctx: &Ctx<'a>) -> Result<RExpr, CompileError> {
        let pos = ctx.pos(e.span);
        let kind = match &e.kind {
            ExprKind::Int(n) => RExprKind::Int(*n),
            ExprKind::Str(s) => RExprKind::Str(s.clone()),
            ExprKind::Name(n) => self.value(n, ctx, pos)?,
            ExprKind::Call { name, args } => {
                let func = BuiltinFn::lookup(name)
                    .ok_or_else(|| CompileError::at(pos, format!("unknown function `{name}`")))?;
                if args.len() != func.arity() {
                    return Err(CompileError::at(
                        pos,
                        format!("`{name}` takes {} argument(s), found {}", func.arity(), args.len()),
                    ));
                }
                RExprKind::Call {
                    func,
                    args: args.iter().map(|a| self.expr(a, ctx)).collect::<Result<_, _>>()?,
                }
            }
            ExprKind::Binary { op, left, right } => RExprKind::Binary {
                op: *op,
                left: Box::new(self.expr(left, ctx)?),
                right: Box::new(self.expr(right, ctx)?),
            },
            ExprKind::Neg(inner) => RExprKind::Neg(Box::new(self.expr(inner, ctx)?)),
        };
        Ok(RExpr { pos, kind })
    }

    /// A name that resolves to a cell binds by reference; anything else is
    /// evaluated into a fresh read-only cell.
    fn bind_arg(
        &mut self,
        arg: &'a Expr,
        ty: VarType,
        label: String,
        ctx: &Ctx<'a>,
    ) -> Result<CellId, CompileError> {
        if let Some(name) = arg.as_name() {
            if let Resolved::Cell(c) = self.resolve(name, ctx, ctx.pos(arg.span))? {
                return Ok(c);
            }
        }
        let value = self.expr(arg, ctx)?;
        let cell = self.alloc(ty, label, Some(value));
        self.readonly.insert(cell);
        Ok(cell)
    }

    fn cell_arg(&self, b: Builtin, index: usize, arg: &'a Expr, ty: VarType, ctx: &Ctx<'a>) -> Result<CellId, CompileError> {
        let pos = ctx.pos(arg.span);
        let cell = match arg.as_name().map(|n| self.resolve(n, ctx, pos)).transpose()? {
            Some(Resolved::Cell(c)) => c,
            _ => {
                return Err(CompileError::at(
                    pos,
                    format!("argument {} of `{b}` must be a variable", index + 1),
                ))
            }
        };
        let actual = self.cells[cell.index()].ty;
        if actual != ty {
            return Err(CompileError::at(
                pos,
                format!("argument {} of `{b}` must be a {ty} variable, found {actual}", index + 1),
            ));
        }
        Ok(cell)
    }

    fn enter(&mut self, pos: SrcPos) -> Result<(), CompileError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(CompileError::at(pos, "expansion nests too deeply"));
        }
        Ok(())
    }

    fn block(&mut self, stmts: &'a [Statement], ctx: &Ctx<'a>) -> Result<Vec<Step>, CompileError> {
        let mut ctx = ctx.clone();
        let mut out = Vec::with_capacity(stmts.len());
        for s in stmts {
            if let Some(step) = self.statement(s, &mut ctx)? {
                out.push(step);
            }
        }
        Ok(out)
    }

    fn declare(&mut self, decl: &'a crate::syntax::VarDecl, ctx: &mut Ctx<'a>, prefix: &str) {
        if self.global_decls.iter().any(|d| core::ptr::eq(*d, decl)) {
            for item in &decl.items {
                ctx.bind(&item.name.name, self.globals[item.name.name.as_str()]);
            }
            return;
        }
        for item in &decl.items {
            let cell = self.alloc(decl.ty, format!("{prefix}{}", item.name.name), None);
            ctx.bind(&item.name.name, cell);
        }
    }

    fn statement(&mut self, stmt: &'a Statement, ctx: &mut Ctx<'a>) -> Result<Option<Step>, CompileError> {
        let pos = ctx.pos(stmt.span());
        self.enter(pos)?;
        let step = match stmt {
            Statement::VarDecl(decl) => {
                let prefix = self.prefix(ctx);
                self.declare(decl, ctx, &prefix);
                None
            }
            Statement::Assign { target, value, .. } => {
                let cell = match self.resolve(&target.name, ctx, pos)? {
                    Resolved::Cell(c) => c,
                    _ => {
                        return Err(CompileError::at(
                            pos,
                            format!("cannot assign to `{}`: not a variable", target.name),
                        ))
                    }
                };
                if self.readonly.contains(&cell) {
                    return Err(CompileError::at(
                        pos,
                        format!(
                            "cannot assign to `{}`: it is bound to a value, not a variable",
                            target.name
                        ),
                    ));
                }
                Some(Step {
                    pos,
                    kind: StepKind::Assign {
                        target: cell,
                        value: self.expr(value, ctx)?,
                    },
                })
            }
            Statement::LoopByNested { body, .. } => {
                let owner = ctx.owner.ok_or_else(|| {
                    CompileError::at(pos, "`by_nested_operators` outside an operator's methods")
                })?;
                let count = self.instances[owner].nested.len();
                let mut copies = Vec::with_capacity(count);
                for i in 0..count {
                    let mut c = ctx.clone();
                    c.this = Some((owner, i));
                    copies.push(Step::seq(pos, self.block(body, &c)?));
                }
                Some(Step::seq(pos, copies))
            }
            Statement::ThisCall { method, args, .. } => Some(self.this_call(method, args, ctx, pos)?),
            Statement::Use(u) => Some(self.use_stmt(u, ctx, pos)?),
        };
        self.depth -= 1;
        Ok(step)
    }

    fn prefix(&self, ctx: &Ctx<'a>) -> String {
        match (ctx.owner, ctx.path.last()) {
            (Some(_), Some((op, m))) => format!("{op}.{m}."),
            _ => String::new(),
        }
    }

    fn conformance_error(
        &self,
        nested: &NestedOp<'a>,
        owner: InstanceId,
        method: &str,
        arity: usize,
        detail: &str,
    ) -> CompileError {
        let at = nested.ctx.pos(nested.stmt.span());
        let user = &self.instances[owner];
        CompileError::at(
            at,
            format!(
                "nested operator {} does not conform: {detail} {method}/{arity}, required by `{}` used at {}",
                nested.stmt.describe(),
                user.op.name,
                user.pos
            ),
        )
    }

    fn this_call(
        &mut self,
        method: &'a Ident,
        args: &'a [Expr],
        ctx: &Ctx<'a>,
        pos: SrcPos,
    ) -> Result<Step, CompileError> {
        let (owner, index) = ctx.this.ok_or_else(|| {
            CompileError::at(pos, "`this_operator` used outside a `by_nested_operators` loop")
        })?;
        let nested = self.instances[owner].nested[index].clone();
        let name = method.name.as_str();
        match nested.instance {
            Some(target) => {
                let op = self.instances[target].op;
                let m = match op.method(name) {
                    Some(m) if m.def.arity() == args.len() => m,
                    Some(m) => {
                        let detail = format!("method `{name}` has arity {}, but needs", m.def.arity());
                        return Err(self.conformance_error(&nested, owner, name, args.len(), &detail));
                    }
                    None => {
                        return Err(self.conformance_error(&nested, owner, name, args.len(), "missing method"))
                    }
                };
                let base = self.instances[target].usage.path.clone();
                self.inline_method(target, m, args, ctx, pos, base)
            }
            None => {
                if name != "execute" || !args.is_empty() {
                    return Err(self.conformance_error(&nested, owner, name, args.len(), "missing method"));
                }
                let mut written = nested.ctx.clone();
                let step = self.statement(nested.stmt, &mut written)?;
                Ok(step.unwrap_or_else(|| Step::seq(pos, Vec::new())))
            }
        }
    }

    fn use_stmt(&mut self, u: &'a UseStmt, ctx: &Ctx<'a>, pos: SrcPos) -> Result<Step, CompileError> {
        let name = u.name.name.as_str();
        match self.resolve(name, ctx, pos)? {
            Resolved::Cell(_) | Resolved::Const(_) => Err(CompileError::at(
                pos,
                format!("`{name}` is a variable, not an operator"),
            )),
            Resolved::Method(inst, m) => {
                if u.nested.is_some() {
                    return Err(CompileError::at(
                        pos,
                        format!("method `{name}` cannot take nested operators"),
                    ));
                }
                if m.def.arity() != u.args.len() {
                    return Err(CompileError::at(
                        pos,
                        format!("method `{name}` takes {} argument(s), found {}", m.def.arity(), u.args.len()),
                    ));
                }
                self.inline_method(inst, m, &u.args, ctx, pos, ctx.path.clone())
            }
            Resolved::Operator(op) => self.use_operator(op, u, ctx, pos),
            Resolved::Builtin(b) => self.builtin(b, u, ctx, pos),
        }
    }

    fn use_operator(
        &mut self,
        op: &'a FlatOperator,
        u: &'a UseStmt,
        ctx: &Ctx<'a>,
        pos: SrcPos,
    ) -> Result<Step, CompileError> {
        let exec = match op.method("execute") {
            Some(m) if m.def.arity() == 0 => m,
            _ => {
                return Err(CompileError::at(
                    pos,
                    format!("operator `{}` has no method execute/0 and cannot be used here", op.name),
                ))
            }
        };
        self.frames.push(Vec::new());
        let inst = self.create_instance(op, u, ctx, pos)?;
        let steps = self.method_steps(inst, exec, &[], ctx, pos, ctx.path.clone())?;
        let inits = self.frames.pop().unwrap_or_default();
        Ok(Step {
            pos,
            kind: StepKind::Frame {
                label: op.name.clone(),
                inits,
                body: Box::new(Step::seq(pos, steps)),
            },
        })
    }

    /// Allocates the instance's storage, and that of every operator used in
    /// its nested list, in the current frame.
    fn create_instance(
        &mut self,
        op: &'a FlatOperator,
        u: &'a UseStmt,
        ctx: &Ctx<'a>,
        pos: SrcPos,
    ) -> Result<InstanceId, CompileError> {
        self.enter(pos)?;
        if u.args.len() != op.params.len() {
            return Err(CompileError::at(
                pos,
                format!(
                    "operator `{}` takes {} argument(s), found {}",
                    op.name,
                    op.params.len(),
                    u.args.len()
                ),
            ));
        }
        let mut members = BTreeMap::new();
        for (param, arg) in op.params.iter().zip(&u.args) {
            let ty = op.var(param).map_or(VarType::Integer, |v| v.ty);
            let cell = self.bind_arg(arg, ty, format!("{}.{param}", op.name), ctx)?;
            members.insert(param.as_str(), cell);
        }
        for var in &op.vars {
            if members.contains_key(var.name.as_str()) {
                continue;
            }
            let value = var.init.as_ref().map(|lit| RExpr {
                pos: var.pos,
                kind: match lit {
                    Literal::Int(n) => RExprKind::Int(*n),
                    Literal::Str(s) => RExprKind::Str(s.clone()),
                },
            });
            let cell = self.alloc(var.ty, format!("{}.{}", op.name, var.name), value);
            members.insert(var.name.as_str(), cell);
        }

        let id = self.instances.len();
        self.instances.push(Instance {
            op,
            members,
            nested: Vec::new(),
            usage: ctx.clone(),
            pos,
        });

        let mut nested = Vec::new();
        if let Some(list) = &u.nested {
            let mut nctx = ctx.clone();
            nctx.chain.insert(0, id);
            for stmt in list {
                let mut instance = None;
                match stmt {
                    Statement::VarDecl(decl) => {
                        let prefix = self.prefix(&nctx);
                        self.declare(decl, &mut nctx, &prefix);
                    }
                    Statement::Use(inner) => {
                        let at = nctx.pos(stmt.span());
                        if let Resolved::Operator(p) = self.resolve(&inner.name.name, &nctx, at)? {
                            instance = Some(self.create_instance(p, inner, &nctx, at)?);
                        }
                    }
                    _ => {}
                }
                nested.push(NestedOp {
                    stmt,
                    ctx: nctx.clone(),
                    instance,
                });
            }
        }
        self.instances[id].nested = nested;
        self.depth -= 1;
        Ok(id)
    }

    fn inline_method(
        &mut self,
        inst: InstanceId,
        m: &'a FlatMethod,
        args: &'a [Expr],
        caller: &Ctx<'a>,
        pos: SrcPos,
        base_path: Vec<(&'a str, &'a str)>,
    ) -> Result<Step, CompileError> {
        self.frames.push(Vec::new());
        let steps = self.method_steps(inst, m, args, caller, pos, base_path)?;
        let inits = self.frames.pop().unwrap_or_default();
        Ok(Step {
            pos,
            kind: StepKind::Frame {
                label: format!("{}.{}", self.instances[inst].op.name, m.name()),
                inits,
                body: Box::new(Step::seq(pos, steps)),
            },
        })
    }

    /// Expands method `m` of `inst`, allocating its locals in the current
    /// frame. Arguments are resolved in `caller`.
    fn method_steps(
        &mut self,
        inst: InstanceId,
        m: &'a FlatMethod,
        args: &'a [Expr],
        caller: &Ctx<'a>,
        pos: SrcPos,
        mut path: Vec<(&'a str, &'a str)>,
    ) -> Result<Vec<Step>, CompileError> {
        let op = self.instances[inst].op;
        let key = (op.name.as_str(), m.name());
        if path.contains(&key) {
            let mut names: Vec<String> = path
                .iter()
                .skip_while(|k| **k != key)
                .map(|(o, m)| format!("{o}.{m}"))
                .collect();
            names.push(format!("{}.{}", key.0, key.1));
            return Err(CompileError::at(
                pos,
                format!("expansion cycle: {}", names.join(" -> ")),
            ));
        }
        path.push(key);
        self.enter(pos)?;

        let mut ctx = Ctx {
            origin: m.origin,
            scope: None,
            owner: Some(inst),
            chain: self.instances[inst].usage.chain.clone(),
            this: None,
            path,
        };
        let prefix = format!("{}.{}.", key.0, key.1);
        let mut bound = Vec::with_capacity(args.len());
        for (param, arg) in m.def.params.iter().zip(args) {
            let ty = m.def.local_type(&param.name).unwrap_or(VarType::Integer);
            bound.push(self.bind_arg(arg, ty, format!("{prefix}{}", param.name), caller)?);
        }
        for (param, cell) in m.def.params.iter().zip(bound) {
            ctx.bind(&param.name, cell);
        }
        for decl in &m.def.locals {
            for item in &decl.items {
                if m.def.params.iter().any(|p| p.name == item.name.name) {
                    continue;
                }
                let cell = self.alloc(decl.ty, format!("{prefix}{}", item.name.name), None);
                ctx.bind(&item.name.name, cell);
            }
        }
        let steps = self.block(&m.def.body, &ctx)?;
        self.depth -= 1;
        Ok(steps)
    }

    fn builtin(&mut self, b: Builtin, u: &'a UseStmt, ctx: &Ctx<'a>, pos: SrcPos) -> Result<Step, CompileError> {
        let argc = u.args.len();
        let arity_ok = match b.arity() {
            Arity::Exactly(n) => argc == n,
            Arity::AtLeast(n) => argc >= n,
        };
        if !arity_ok {
            let want = match b.arity() {
                Arity::Exactly(n) => format!("{n}"),
                Arity::AtLeast(n) => format!("at least {n}"),
            };
            return Err(CompileError::at(
                pos,
                format!("`{b}` takes {want} argument(s), found {argc}"),
            ));
        }
        match (&u.nested, b.takes_block()) {
            (None, true) => {
                return Err(CompileError::at(
                    pos,
                    format!("`{b}` must be used as a block: `begin {b}(...); ... end {b};`"),
                ))
            }
            (Some(_), false) => {
                return Err(CompileError::at(pos, format!("`{b}` does not take nested operators")))
            }
            _ => {}
        }
        let body = match &u.nested {
            Some(list) => Some(Box::new(Step::seq(pos, self.block(list, ctx)?))),
            None => None,
        };
        let kind = match b {
            Builtin::NewThread => StepKind::Spawn {
                sem: self.cell_arg(b, 0, &u.args[0], VarType::Semaphore, ctx)?,
                body: body.expect("block"),
            },
            Builtin::WaitZeroSemaphore => StepKind::WaitZero {
                sem: self.cell_arg(b, 0, &u.args[0], VarType::Semaphore, ctx)?,
            },
            Builtin::ForEachEvent => {
                let event = self.cell_arg(b, 0, &u.args[0], VarType::String, ctx)?;
                if self.readonly.contains(&event) {
                    return Err(CompileError::at(
                        pos,
                        "argument 1 of `for_each_event` is bound to a value, not a variable",
                    ));
                }
                let closed = self.cell_arg(b, 1, &u.args[1], VarType::Integer, ctx)?;
                StepKind::Builtin {
                    op: b,
                    args: vec![cell_expr(event, pos), cell_expr(closed, pos)],
                    body,
                }
            }
            _ => StepKind::Builtin {
                op: b,
                args: u.args.iter().map(|a| self.expr(a, ctx)).collect::<Result<_, _>>()?,
                body,
            },
        };
        Ok(Step { pos, kind })
    }
}

fn cell_expr(cell: CellId, pos: SrcPos) -> RExpr {
    RExpr {
        pos,
        kind: RExprKind::Cell(cell),
    }
}
