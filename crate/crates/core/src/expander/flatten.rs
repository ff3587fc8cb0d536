use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

use super::CompileError;
use crate::syntax::{Literal, MethodDef, OperatorDef, VarType};
use crate::{Origin, Span, SrcPos};

/// An operator with its inheritance chain folded in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatOperator {
    pub name: String,
    pub params: Vec<String>,
    pub vars: Vec<FlatVar>,
    pub methods: Vec<FlatMethod>,
    /// Names of the vars and methods declared `shared`.
    pub shared: BTreeSet<String>,
    pub origin: Origin,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatVar {
    pub ty: VarType,
    pub name: String,
    pub init: Option<Literal>,
    pub shared: bool,
    pub pos: SrcPos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatMethod {
    pub def: MethodDef,
    /// Where the method text lives, which differs from the operator's when
    /// the method is inherited.
    pub origin: Origin,
}

impl FlatMethod {
    pub fn name(&self) -> &str {
        &self.def.name.name
    }
}

impl FlatOperator {
    pub fn method(&self, name: &str) -> Option<&FlatMethod> {
        self.methods.iter().find(|m| m.name() == name)
    }

    pub fn var(&self, name: &str) -> Option<&FlatVar> {
        self.vars.iter().find(|v| v.name == name)
    }

    pub fn pos(&self) -> SrcPos {
        SrcPos::new(self.origin, self.span)
    }

    fn from_def(def: &OperatorDef, origin: Origin) -> Self {
        let vars = def
            .vars
            .iter()
            .flat_map(|d| {
                d.items.iter().map(move |item| FlatVar {
                    ty: d.ty,
                    name: item.name.name.clone(),
                    init: item.init.clone(),
                    shared: d.shared,
                    pos: SrcPos::new(origin, item.name.span),
                })
            })
            .collect();
        let methods = def
            .methods
            .iter()
            .map(|m| FlatMethod {
                def: m.clone(),
                origin,
            })
            .collect();
        let mut op = FlatOperator {
            name: def.name.name.clone(),
            params: def.params.iter().map(|p| p.name.clone()).collect(),
            vars,
            methods,
            shared: BTreeSet::new(),
            origin,
            span: def.span,
        };
        op.collect_shared();
        op
    }

    fn collect_shared(&mut self) {
        self.shared = self
            .vars
            .iter()
            .filter(|v| v.shared)
            .map(|v| v.name.clone())
            .chain(
                self.methods
                    .iter()
                    .filter(|m| m.def.shared)
                    .map(|m| m.def.name.name.clone()),
            )
            .collect();
    }

    /// The parent's members overridden and extended by `child`'s.
    fn inherit(parent: &FlatOperator, child: &OperatorDef, origin: Origin) -> Self {
        let own = FlatOperator::from_def(child, origin);
        let mut vars = parent.vars.clone();
        for v in own.vars {
            match vars.iter_mut().find(|p| p.name == v.name) {
                Some(slot) => *slot = v,
                None => vars.push(v),
            }
        }
        let mut methods = parent.methods.clone();
        for m in own.methods {
            match methods.iter_mut().find(|p| p.name() == m.name()) {
                Some(slot) => *slot = m,
                None => methods.push(m),
            }
        }
        let params = if own.params.is_empty() {
            parent.params.clone()
        } else {
            own.params
        };
        let mut op = FlatOperator {
            name: own.name,
            params,
            vars,
            methods,
            shared: BTreeSet::new(),
            origin,
            span: own.span,
        };
        op.collect_shared();
        op
    }
}

/// Folds each operator's ancestors into it.
///
/// Definitions written in the program shadow prelude definitions of the
/// same name; two definitions of one name from the same text are an error.
pub fn flatten_inheritance(
    defs: &[(Origin, &OperatorDef)],
) -> Result<BTreeMap<String, FlatOperator>, CompileError> {
    let mut chosen: BTreeMap<&str, (Origin, &OperatorDef)> = BTreeMap::new();
    for &(origin, def) in defs {
        match chosen.get(def.name.name.as_str()) {
            Some((prev, _)) if *prev == origin => {
                return Err(CompileError::at(
                    SrcPos::new(origin, def.name.span),
                    format!("operator `{}` is defined twice", def.name.name),
                ));
            }
            Some((Origin::Program, _)) => {}
            _ => {
                chosen.insert(&def.name.name, (origin, def));
            }
        }
    }

    let mut flat = BTreeMap::new();
    for name in chosen.keys() {
        flatten_one(name, &chosen, &mut flat, &mut Vec::new())?;
    }
    Ok(flat)
}

fn flatten_one<'d>(
    name: &'d str,
    defs: &BTreeMap<&'d str, (Origin, &'d OperatorDef)>,
    done: &mut BTreeMap<String, FlatOperator>,
    stack: &mut Vec<&'d str>,
) -> Result<(), CompileError> {
    if done.contains_key(name) {
        return Ok(());
    }
    let (origin, def) = defs[name];
    if let Some(start) = stack.iter().position(|n| *n == name) {
        let mut cycle: Vec<&str> = stack[start..].to_vec();
        cycle.push(name);
        return Err(CompileError::at(
            SrcPos::new(origin, def.span),
            format!("inheritance cycle: {}", cycle.join(" -> ")),
        ));
    }
    let op = match &def.parent {
        None => FlatOperator::from_def(def, origin),
        Some(parent) => {
            let Some((parent_name, _)) = defs.get_key_value(parent.name.as_str()) else {
                return Err(CompileError::at(
                    SrcPos::new(origin, parent.span),
                    format!(
                        "operator `{}` inherits unknown operator `{}`",
                        def.name.name, parent.name
                    ),
                ));
            };
            stack.push(name);
            flatten_one(parent_name, defs, done, stack)?;
            stack.pop();
            FlatOperator::inherit(&done[parent.name.as_str()], def, origin)
        }
    };
    done.insert(name.into(), op);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexer::tokenize;
    use crate::syntax::{parse, Program};

    fn program(src: &str) -> Program {
        parse(&tokenize(src).unwrap()).unwrap()
    }

    fn flatten(p: &Program) -> Result<BTreeMap<String, FlatOperator>, CompileError> {
        let defs: Vec<_> = p.defs.iter().map(|d| (Origin::Program, d)).collect();
        flatten_inheritance(&defs)
    }

    #[test]
    fn override_replaces_parent_method() {
        let p = program(
            "program p;
             operator base; integer n := 1;
               method execute; print 1; end method execute;
               method other; end method other;
             end operator base;
             operator child inherits base;
               method execute; print 2; end method execute;
             end operator child;
             end program p;",
        );
        let flat = flatten(&p).unwrap();
        let child = &flat["child"];
        let exec = child.method("execute").unwrap();
        assert_eq!(exec.def, *p.defs[1].method("execute").unwrap());
        assert_eq!(child.methods.len(), 2);
        assert_eq!(child.var("n").unwrap().init, Some(Literal::Int(1)));
    }

    #[test]
    fn operator_without_parent_is_unchanged() {
        let p = program(
            "program p;
             operator solo(t); string t; shared integer k := 4;
               shared method m; end method m;
             end operator solo;
             end program p;",
        );
        let solo = &flatten(&p).unwrap()["solo"];
        let def = &p.defs[0];
        assert_eq!(solo.name, def.name.name);
        assert_eq!(solo.params, ["t"]);
        assert_eq!(
            solo.vars.iter().map(|v| (v.name.as_str(), v.ty)).collect::<Vec<_>>(),
            [("t", VarType::String), ("k", VarType::Integer)]
        );
        assert_eq!(solo.methods.len(), 1);
        assert_eq!(solo.methods[0].def, def.methods[0]);
        assert_eq!(solo.shared.iter().map(String::as_str).collect::<Vec<_>>(), ["k", "m"]);
    }

    #[test]
    fn cycle_is_named() {
        let p = program(
            "program p;
             operator a inherits b; end operator a;
             operator b inherits a; end operator b;
             end program p;",
        );
        let err = flatten(&p).unwrap_err();
        assert!(err.message.contains("a -> b -> a"), "{}", err.message);
    }

    #[test]
    fn unknown_parent() {
        let p = program("program p; operator a inherits zz; end operator a; end program p;");
        assert!(flatten(&p).unwrap_err().message.contains("`zz`"));
    }

    #[test]
    fn transitive_inheritance_and_label_override() {
        let p = program(
            r#"program p;
             operator a; string label := "Ok"; method get(x); integer x; end method get; end operator a;
             operator b inherits a; string label := "Cancel"; end operator b;
             operator c inherits b; integer extra; end operator c;
             end program p;"#,
        );
        let flat = flatten(&p).unwrap();
        let c = &flat["c"];
        assert_eq!(c.var("label").unwrap().init, Some(Literal::Str("Cancel".into())));
        assert!(c.var("extra").is_some());
        assert!(c.method("get").is_some());
    }

    #[test]
    fn program_definitions_shadow_prelude() {
        let user = program("program p; operator x; integer mine; end operator x; end program p;");
        let lib = program("program q; operator x; integer theirs; end operator x; end program q;");
        let defs = [(Origin::Prelude, &lib.defs[0]), (Origin::Program, &user.defs[0])];
        let flat = flatten_inheritance(&defs).unwrap();
        assert!(flat["x"].var("mine").is_some());
        assert_eq!(flat["x"].origin, Origin::Program);
    }

    #[test]
    fn duplicate_definition_in_one_text() {
        let p = program(
            "program p; operator x; end operator x; operator x; end operator x; end program p;",
        );
        assert!(flatten(&p).unwrap_err().message.contains("defined twice"));
    }
}
