use std::sync::Arc;
use std::thread::Scope;

use ool_core::expander::{Builtin, BuiltinFn, CellId, ExpandedUnit, RExpr, RExprKind, Step, StepKind};
use ool_core::syntax::{BinOp, VarType};
use ool_core::SrcPos;

use super::{ExecContext, Environment, RunFailure, RuntimeError, Semaphore, Value};

type Res<T> = Result<T, RuntimeError>;

/// Runs `unit` against fresh storage.
pub fn execute(unit: &ExpandedUnit, ctx: &ExecContext) -> Result<(), RunFailure> {
    execute_in(unit, &Environment::new(unit), ctx)
}

/// Runs `unit` against `env`, which callers may inspect afterwards.
///
/// Errors from spawned strands do not stop their siblings; they are
/// gathered and reported once every strand has finished.
pub fn execute_in(unit: &ExpandedUnit, env: &Environment, ctx: &ExecContext) -> Result<(), RunFailure> {
    let main = std::thread::scope(|scope| {
        let mut strand = Strand {
            env,
            ctx,
            scope,
            frames: Vec::new(),
        };
        strand.step(&unit.body)
    });
    let leftover = ctx.events().remaining();
    if leftover > 0 {
        ctx.warn(format!("{leftover} scripted event(s) were never consumed"));
    }
    let mut errors: Vec<RuntimeError> = main.err().into_iter().collect();
    errors.extend(ctx.take_deferred());
    if errors.is_empty() {
        Ok(())
    } else {
        Err(RunFailure { errors })
    }
}

/// Evaluates an expression against `env`.
pub fn eval(expr: &RExpr, env: &Environment) -> Res<Value> {
    let err = |m: String| RuntimeError::new(expr.pos, m);
    Ok(match &expr.kind {
        RExprKind::Int(n) => Value::Int(*n),
        RExprKind::Str(s) => Value::str(s),
        RExprKind::Cell(c) => env.get(*c),
        RExprKind::Neg(inner) => {
            let n = int(eval(inner, env)?, inner.pos, "operand of unary `-`")?;
            Value::Int(n.checked_neg().ok_or_else(|| err("integer overflow".into()))?)
        }
        RExprKind::Binary { op, left, right } => {
            let what = format!("operand of `{}`", op.symbol());
            let l = int(eval(left, env)?, left.pos, &what)?;
            let r = int(eval(right, env)?, right.pos, &what)?;
            let out = match op {
                BinOp::Add => l.checked_add(r),
                BinOp::Sub => l.checked_sub(r),
                BinOp::Mul => l.checked_mul(r),
                BinOp::Div => {
                    if r == 0 {
                        return Err(err("division by zero".into()));
                    }
                    l.checked_div(r)
                }
            };
            Value::Int(out.ok_or_else(|| err("integer overflow".into()))?)
        }
        RExprKind::Call { func, args } => {
            let vals = args.iter().map(|a| eval(a, env)).collect::<Res<Vec<_>>>()?;
            match func {
                BuiltinFn::Max => {
                    let a = int(vals[0].clone(), args[0].pos, "argument 1 of `max`")?;
                    let b = int(vals[1].clone(), args[1].pos, "argument 2 of `max`")?;
                    Value::Int(a.max(b))
                }
                BuiltinFn::StringLength => match &vals[0] {
                    Value::Str(s) => Value::Int(s.chars().count() as i64),
                    v => {
                        return Err(RuntimeError::new(
                            args[0].pos,
                            format!("`string_length` expects a string, found {}", v.type_name()),
                        ))
                    }
                },
            }
        }
    })
}

fn int(v: Value, pos: SrcPos, what: &str) -> Res<i64> {
    v.as_int()
        .ok_or_else(|| RuntimeError::new(pos, format!("{what} must be an integer, found {}", v.type_name())))
}

fn string(v: Value, pos: SrcPos, what: &str) -> Res<Arc<str>> {
    match v {
        Value::Str(s) => Ok(s),
        v => Err(RuntimeError::new(pos, format!("{what} must be a string, found {}", v.type_name()))),
    }
}

struct Strand<'scope, 'env> {
    env: &'env Environment,
    ctx: &'env ExecContext,
    scope: &'scope Scope<'scope, 'env>,
    /// One slot per open frame: the surface translation to restore on exit,
    /// recorded when the frame paints a dialog.
    frames: Vec<Option<(i64, i64)>>,
}

impl<'scope, 'env> Strand<'scope, 'env> {
    fn eval(&self, e: &RExpr) -> Res<Value> {
        eval(e, self.env)
    }

    fn assign(&self, cell: CellId, v: Value, pos: SrcPos) -> Res<()> {
        let ty = self.env.ty(cell);
        match (ty, v) {
            (VarType::Integer, v @ Value::Int(_)) | (VarType::String, v @ Value::Str(_)) => {
                self.env.set(cell, v);
                Ok(())
            }
            (VarType::Semaphore, Value::Int(n)) => {
                let sem = self.sem(cell);
                sem.assign(n).map_err(|e| RuntimeError::new(pos, e.to_string()))
            }
            (ty, v) => Err(RuntimeError::new(
                pos,
                format!("cannot assign a {} to a {} variable", v.type_name(), ty.keyword()),
            )),
        }
    }

    fn sem(&self, cell: CellId) -> Arc<Semaphore> {
        self.env
            .semaphore(cell)
            .expect("semaphore cells always hold a semaphore")
    }

    fn step(&mut self, step: &'env Step) -> Res<()> {
        match &step.kind {
            StepKind::Seq(steps) => steps.iter().try_for_each(|s| self.step(s)),
            StepKind::Assign { target, value } => {
                let v = self.eval(value)?;
                self.assign(*target, v, step.pos)
            }
            StepKind::Frame { inits, body, .. } => {
                self.frames.push(None);
                let result = self.frame(inits, body);
                if let Some(Some(t)) = self.frames.pop() {
                    self.ctx.surface().set_translation(t);
                }
                result
            }
            StepKind::Spawn { sem, body } => {
                let sem = self.sem(*sem);
                let (env, ctx, scope) = (self.env, self.ctx, self.scope);
                let body: &'env Step = body;
                let pos = step.pos;
                self.scope.spawn(move || {
                    let mut strand = Strand {
                        env,
                        ctx,
                        scope,
                        frames: Vec::new(),
                    };
                    if let Err(e) = strand.step(body) {
                        ctx.defer(e);
                    }
                    if let Err(e) = sem.decrement() {
                        ctx.defer(RuntimeError::new(pos, e.to_string()));
                    }
                });
                Ok(())
            }
            StepKind::WaitZero { sem } => {
                self.sem(*sem).wait_zero();
                Ok(())
            }
            StepKind::Builtin { op, args, body } => self.builtin(*op, args, body.as_deref(), step.pos),
        }
    }

    fn frame(&mut self, inits: &'env [ool_core::expander::FrameInit], body: &'env Step) -> Res<()> {
        for init in inits {
            match &init.value {
                None => self.env.reset(init.cell),
                Some(e) => {
                    let v = self.eval(e)?;
                    self.env.reset(init.cell);
                    self.assign(init.cell, v, e.pos)?;
                }
            }
        }
        self.step(body)
    }

    fn builtin(&mut self, op: Builtin, args: &[RExpr], body: Option<&'env Step>, pos: SrcPos) -> Res<()> {
        match op {
            Builtin::Print => match self.eval(&args[0])? {
                Value::SemRef(_) => Err(RuntimeError::new(args[0].pos, "cannot print a semaphore")),
                v => {
                    self.ctx.print(&v.to_string());
                    Ok(())
                }
            },
            Builtin::SleepMs => {
                let n = int(self.eval(&args[0])?, args[0].pos, "argument of `sleep_ms`")?;
                if n < 0 {
                    return Err(RuntimeError::new(args[0].pos, format!("cannot sleep for {n} ms")));
                }
                self.ctx.clock().sleep_ms(n as u64);
                Ok(())
            }
            Builtin::PaintDialogWindow => {
                let title = string(self.eval(&args[0])?, args[0].pos, "dialog title")?;
                let w = int(self.eval(&args[1])?, args[1].pos, "dialog width")?;
                let h = int(self.eval(&args[2])?, args[2].pos, "dialog height")?;
                if w < 0 || h < 0 {
                    return Err(RuntimeError::new(pos, format!("negative dialog size {w}x{h}")));
                }
                let mut surface = self.ctx.surface();
                if let Some(slot @ None) = self.frames.last_mut() {
                    *slot = Some(surface.translation());
                }
                surface.paint_dialog_window(&title, w, h);
                Ok(())
            }
            Builtin::PaintText => {
                let x = int(self.eval(&args[0])?, args[0].pos, "x")?;
                let y = int(self.eval(&args[1])?, args[1].pos, "y")?;
                let text = string(self.eval(&args[2])?, args[2].pos, "text")?;
                self.ctx.surface().paint_text(x, y, &text);
                Ok(())
            }
            Builtin::Warn => {
                let parts = args
                    .iter()
                    .map(|a| self.eval(a).map(|v| v.to_string()))
                    .collect::<Res<Vec<_>>>()?;
                self.ctx.warn(format!("{pos}: {}", parts.join(": ")));
                Ok(())
            }
            Builtin::ForEachEvent => {
                let (RExprKind::Cell(event), RExprKind::Cell(closed)) = (&args[0].kind, &args[1].kind) else {
                    unreachable!("for_each_event arguments are cells");
                };
                let body = body.expect("for_each_event has a body");
                loop {
                    if int(self.env.get(*closed), args[1].pos, "close flag")? != 0 {
                        return Ok(());
                    }
                    let Some(next) = self.ctx.events().next_event() else {
                        return Ok(());
                    };
                    self.env.set(*event, Value::str(next.label()));
                    self.step(body)?;
                }
            }
            Builtin::WhenEqual => {
                let a = self.eval(&args[0])?;
                let b = self.eval(&args[1])?;
                if a.type_name() != b.type_name() {
                    return Err(RuntimeError::new(
                        pos,
                        format!("cannot compare a {} with a {}", a.type_name(), b.type_name()),
                    ));
                }
                if a == b {
                    self.step(body.expect("when_equal has a body"))?;
                }
                Ok(())
            }
            Builtin::NewThread | Builtin::WaitZeroSemaphore => {
                unreachable!("expanded into spawn and wait steps")
            }
        }
    }
}
