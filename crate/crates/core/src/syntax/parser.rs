use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use super::ast::*;
use crate::lexer::{Token, TokenKind};
use crate::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Unexpected { expected: String, found: String },
    /// `begin a; ... end b;` or a header/footer name disagreement.
    MismatchedEnd { expected: String, found: String },
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: u32,
    pub column: u32,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Unexpected { expected, found } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::MismatchedEnd { expected, found } => {
                write!(f, "mismatched end: expected `{expected}`, found `{found}`")
            }
            ParseErrorKind::Invalid(msg) => f.write_str(msg),
        }
    }
}

pub fn parse(tokens: &[Token]) -> Result<Program, ParseError> {
    let mut p = Parser {
        tokens,
        pos: 0,
        in_method: false,
    };
    let program = p.program()?;
    if let Some(t) = p.peek() {
        return Err(p.unexpected_at(t, "end of input"));
    }
    Ok(program)
}

type PResult<T> = Result<T, ParseError>;

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    in_method: bool,
}

fn describe(t: &Token) -> String {
    match t.kind {
        TokenKind::Keyword => format!("keyword `{}`", t.lexeme),
        TokenKind::Identifier => format!("identifier `{}`", t.lexeme),
        TokenKind::StringLiteral => format!("string \"{}\"", t.lexeme),
        TokenKind::IntLiteral => format!("integer {}", t.lexeme),
        _ => format!("`{}`", t.lexeme),
    }
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn span(&self) -> Span {
        match self.peek().or(self.tokens.last()) {
            Some(t) => Span::new(t.line, t.column),
            None => Span::new(1, 1),
        }
    }

    fn error(&self, span: Span, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: span.line,
            column: span.column,
            kind,
        }
    }

    fn invalid(&self, span: Span, msg: impl Into<String>) -> ParseError {
        self.error(span, ParseErrorKind::Invalid(msg.into()))
    }

    fn unexpected_at(&self, t: &Token, expected: &str) -> ParseError {
        self.error(
            Span::new(t.line, t.column),
            ParseErrorKind::Unexpected {
                expected: expected.into(),
                found: describe(t),
            },
        )
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.unexpected_at(t, expected),
            None => {
                // Point just past the last token.
                let span = self
                    .tokens
                    .last()
                    .map(|t| Span::new(t.line, t.column + t.lexeme.chars().count() as u32))
                    .unwrap_or(Span::new(1, 1));
                self.error(
                    span,
                    ParseErrorKind::Unexpected {
                        expected: expected.into(),
                        found: "end of input".into(),
                    },
                )
            }
        }
    }

    fn at(&self, kind: TokenKind) -> bool {
        self.peek().is_some_and(|t| t.kind == kind)
    }

    fn at_keyword(&self, word: &str) -> bool {
        self.peek().is_some_and(|t| t.is_keyword(word))
    }

    fn eat(&mut self, kind: TokenKind) -> Option<&'t Token> {
        if self.at(kind) {
            self.pos += 1;
            Some(&self.tokens[self.pos - 1])
        } else {
            None
        }
    }

    fn expect(&mut self, kind: TokenKind) -> PResult<&'t Token> {
        let expected = match kind {
            TokenKind::Semicolon => "`;`",
            TokenKind::LParen => "`(`",
            TokenKind::RParen => "`)`",
            TokenKind::Dot => "`.`",
            TokenKind::Assign => "`:=`",
            other => other.name(),
        };
        self.eat(kind).ok_or_else(|| self.unexpected(expected))
    }

    fn expect_keyword(&mut self, word: &str) -> PResult<Span> {
        if self.at_keyword(word) {
            let span = self.span();
            self.pos += 1;
            Ok(span)
        } else {
            Err(self.unexpected(&format!("`{word}`")))
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        let t = self.expect(TokenKind::Identifier)?;
        Ok(Ident::new(t.lexeme.clone(), Span::new(t.line, t.column)))
    }

    /// `end <word> NAME ;` where the closing name must equal `name`.
    fn closing(&mut self, word: Option<&str>, name: &str) -> PResult<()> {
        self.expect_keyword("end")?;
        if let Some(word) = word {
            self.expect_keyword(word)?;
        }
        let closing = if word.is_none() && self.at_keyword("by_nested_operators") {
            let t = &self.tokens[self.pos];
            self.pos += 1;
            Ident::new(t.lexeme.clone(), Span::new(t.line, t.column))
        } else {
            self.ident()?
        };
        if closing.name != name {
            return Err(self.error(
                closing.span,
                ParseErrorKind::MismatchedEnd {
                    expected: name.into(),
                    found: closing.name,
                },
            ));
        }
        self.expect(TokenKind::Semicolon)?;
        Ok(())
    }

    fn program(&mut self) -> PResult<Program> {
        let span = self.expect_keyword("program")?;
        let name = self.ident()?;
        self.expect(TokenKind::Semicolon)?;
        let mut defs = Vec::new();
        let mut body = Vec::new();
        loop {
            if self.at_keyword("end") {
                break;
            }
            if self.at_keyword("operator") {
                defs.push(self.operator_def()?);
            } else if self.peek().is_none() {
                return Err(self.unexpected("`end program`"));
            } else {
                body.push(self.statement()?);
            }
        }
        self.closing(Some("program"), &name.name)?;
        Ok(Program {
            name,
            defs,
            body,
            span,
        })
    }

    fn ident_list(&mut self) -> PResult<Vec<Ident>> {
        let mut out = Vec::new();
        if self.eat(TokenKind::LParen).is_some() {
            if self.eat(TokenKind::RParen).is_some() {
                return Ok(out);
            }
            loop {
                out.push(self.ident()?);
                if self.eat(TokenKind::Comma).is_none() {
                    break;
                }
            }
            self.expect(TokenKind::RParen)?;
        }
        Ok(out)
    }

    fn operator_def(&mut self) -> PResult<OperatorDef> {
        let span = self.expect_keyword("operator")?;
        let name = self.ident()?;
        let params = self.ident_list()?;
        let parent = if self.at_keyword("inherits") {
            self.pos += 1;
            Some(self.ident()?)
        } else {
            None
        };
        self.expect(TokenKind::Semicolon)?;

        let mut vars: Vec<VarDecl> = Vec::new();
        let mut methods: Vec<MethodDef> = Vec::new();
        while !self.at_keyword("end") {
            let shared = if self.at_keyword("shared") {
                self.pos += 1;
                true
            } else {
                false
            };
            if self.at_keyword("method") {
                let m = self.method_def(shared)?;
                if methods.iter().any(|o| o.name.name == m.name.name) {
                    return Err(self.invalid(
                        m.name.span,
                        format!("duplicate method `{}` in operator `{}`", m.name.name, name.name),
                    ));
                }
                methods.push(m);
            } else if self.peek().is_some_and(|t| {
                t.kind == TokenKind::Keyword && VarType::from_keyword(&t.lexeme).is_some()
            }) {
                let decl = self.var_decl(shared, true)?;
                check_fresh_names(self, &vars, &decl)?;
                vars.push(decl);
            } else {
                return Err(self.unexpected("a declaration, a method or `end operator`"));
            }
        }
        self.closing(Some("operator"), &name.name)?;

        for p in &params {
            let count = vars
                .iter()
                .flat_map(|d| &d.items)
                .filter(|i| i.name.name == p.name)
                .count();
            if count != 1 {
                return Err(self.invalid(
                    p.span,
                    format!("operator parameter `{}` needs exactly one type declaration", p.name),
                ));
            }
        }
        Ok(OperatorDef {
            name,
            params,
            parent,
            vars,
            methods,
            span,
        })
    }

    fn method_def(&mut self, shared: bool) -> PResult<MethodDef> {
        let span = self.expect_keyword("method")?;
        let name = self.ident()?;
        let params = self.ident_list()?;
        self.expect(TokenKind::Semicolon)?;

        let was_in_method = core::mem::replace(&mut self.in_method, true);
        let mut locals: Vec<VarDecl> = Vec::new();
        let mut body = Vec::new();
        while !self.at_keyword("end") {
            if self.peek().is_none() {
                return Err(self.unexpected("`end method`"));
            }
            match self.statement()? {
                Statement::VarDecl(d) => {
                    check_fresh_names(self, &locals, &d)?;
                    locals.push(d);
                }
                s => body.push(s),
            }
        }
        self.in_method = was_in_method;
        self.closing(Some("method"), &name.name)?;

        for (i, p) in params.iter().enumerate() {
            if params[..i].iter().any(|q| q.name == p.name) {
                return Err(self.invalid(p.span, format!("duplicate parameter `{}`", p.name)));
            }
            if find_decl(&locals, &p.name).is_none() {
                return Err(self.invalid(
                    p.span,
                    format!("method parameter `{}` has no type declaration", p.name),
                ));
            }
        }
        Ok(MethodDef {
            name,
            params,
            shared,
            locals,
            body,
            span,
        })
    }

    fn var_decl(&mut self, shared: bool, allow_init: bool) -> PResult<VarDecl> {
        let span = self.span();
        let t = self.expect(TokenKind::Keyword)?;
        let ty = VarType::from_keyword(&t.lexeme).ok_or_else(|| self.unexpected_at(t, "a type"))?;
        let mut items = Vec::new();
        loop {
            let name = self.ident()?;
            let init = if self.at(TokenKind::Assign) {
                let at = self.span();
                if !allow_init {
                    return Err(self.invalid(
                        at,
                        "initializers are only allowed on operator-level declarations",
                    ));
                }
                self.pos += 1;
                Some(self.literal()?)
            } else {
                None
            };
            items.push(VarItem { name, init });
            if self.eat(TokenKind::Comma).is_none() {
                break;
            }
        }
        self.expect(TokenKind::Semicolon)?;
        Ok(VarDecl {
            ty,
            shared,
            items,
            span,
        })
    }

    fn literal(&mut self) -> PResult<Literal> {
        let negative = self.eat(TokenKind::Minus).is_some();
        match self.peek() {
            Some(t) if t.kind == TokenKind::IntLiteral => {
                self.pos += 1;
                let n = parse_int(self, t, negative)?;
                Ok(Literal::Int(n))
            }
            Some(t) if t.kind == TokenKind::StringLiteral && !negative => {
                self.pos += 1;
                Ok(Literal::Str(t.lexeme.clone()))
            }
            _ => Err(self.unexpected("a literal")),
        }
    }

    fn block(&mut self) -> PResult<Vec<Statement>> {
        let mut out = Vec::new();
        while !self.at_keyword("end") {
            if self.peek().is_none() {
                return Err(self.unexpected("`end`"));
            }
            out.push(self.statement()?);
        }
        Ok(out)
    }

    fn statement(&mut self) -> PResult<Statement> {
        let span = self.span();
        let Some(t) = self.peek() else {
            return Err(self.unexpected("a statement"));
        };
        match t.kind {
            TokenKind::Keyword => match t.lexeme.as_str() {
                "begin" => {
                    self.pos += 1;
                    if self.at_keyword("by_nested_operators") {
                        if !self.in_method {
                            return Err(self.invalid(
                                span,
                                "`by_nested_operators` loops are only allowed inside methods",
                            ));
                        }
                        self.pos += 1;
                        self.expect(TokenKind::Semicolon)?;
                        let body = self.block()?;
                        self.closing(None, "by_nested_operators")?;
                        return Ok(Statement::LoopByNested { body, span });
                    }
                    let name = self.ident()?;
                    let args = self.use_args()?;
                    self.expect(TokenKind::Semicolon)?;
                    let nested = self.block()?;
                    self.closing(None, &name.name)?;
                    Ok(Statement::Use(UseStmt {
                        name,
                        args,
                        nested: Some(nested),
                    }))
                }
                "this_operator" => {
                    if !self.in_method {
                        return Err(self.invalid(span, "`this_operator` is only allowed inside methods"));
                    }
                    self.pos += 1;
                    self.expect(TokenKind::Dot)?;
                    let method = self.ident()?;
                    let args = if self.at(TokenKind::LParen) {
                        self.paren_args()?
                    } else {
                        Vec::new()
                    };
                    self.expect(TokenKind::Semicolon)?;
                    Ok(Statement::ThisCall { method, args, span })
                }
                "integer" | "string" | "semaphore" => {
                    Ok(Statement::VarDecl(self.var_decl(false, false)?))
                }
                "shared" => Err(self.invalid(
                    span,
                    "`shared` is only allowed on operator members",
                )),
                _ => Err(self.unexpected("a statement")),
            },
            TokenKind::Identifier => {
                let name = self.ident()?;
                if self.eat(TokenKind::Assign).is_some() {
                    let value = self.expr()?;
                    self.expect(TokenKind::Semicolon)?;
                    return Ok(Statement::Assign {
                        target: name,
                        value,
                        span,
                    });
                }
                let args = self.use_args()?;
                self.expect(TokenKind::Semicolon)?;
                Ok(Statement::Use(UseStmt {
                    name,
                    args,
                    nested: None,
                }))
            }
            _ => Err(self.unexpected("a statement")),
        }
    }

    /// Either a parenthesized list or a single bare literal or identifier.
    fn use_args(&mut self) -> PResult<Vec<Expr>> {
        let Some(t) = self.peek() else {
            return Ok(Vec::new());
        };
        let span = Span::new(t.line, t.column);
        let single = match t.kind {
            TokenKind::LParen => return self.paren_args(),
            TokenKind::IntLiteral => ExprKind::Int(parse_int(self, t, false)?),
            TokenKind::StringLiteral => ExprKind::Str(t.lexeme.clone()),
            TokenKind::Identifier => ExprKind::Name(t.lexeme.clone()),
            _ => return Ok(Vec::new()),
        };
        self.pos += 1;
        Ok(vec![Expr::new(single, span)])
    }

    fn paren_args(&mut self) -> PResult<Vec<Expr>> {
        self.expect(TokenKind::LParen)?;
        let mut args = Vec::new();
        if self.eat(TokenKind::RParen).is_some() {
            return Ok(args);
        }
        loop {
            args.push(self.expr()?);
            if self.eat(TokenKind::Comma).is_none() {
                break;
            }
        }
        self.expect(TokenKind::RParen)?;
        Ok(args)
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut left = self.term()?;
        loop {
            let op = if self.at(TokenKind::Plus) {
                BinOp::Add
            } else if self.at(TokenKind::Minus) {
                BinOp::Sub
            } else {
                return Ok(left);
            };
            let span = self.span();
            self.pos += 1;
            let right = self.term()?;
            left = Expr::new(
                ExprKind::Binary {
                    op,
                    left: Box::new(left),
                    right: Box::new(right),
                },
                span,
            );
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut left = self.unary()?;
        loop {
            let op = if self.at(TokenKind::Star) {
                BinOp::Mul
            } else if self.at(TokenKind::Slash) {
                BinOp::Div
            } else {
                return Ok(left);
            };
            let span = self.span();
            self.pos += 1;
            let right = self.unary()?;
            left = Expr::new(
                ExprKind::Binary {
                    op,
                    left: Box::new(left),
                    right: Box::new(right),
                },
                span,
            );
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.at(TokenKind::Minus) {
            let span = self.span();
            self.pos += 1;
            let operand = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(operand)), span));
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<Expr> {
        let span = self.span();
        let Some(t) = self.peek() else {
            return Err(self.unexpected("an expression"));
        };
        let kind = match t.kind {
            TokenKind::IntLiteral => {
                self.pos += 1;
                ExprKind::Int(parse_int(self, t, false)?)
            }
            TokenKind::StringLiteral => {
                self.pos += 1;
                ExprKind::Str(t.lexeme.clone())
            }
            TokenKind::Identifier => {
                self.pos += 1;
                if self.at(TokenKind::LParen) {
                    ExprKind::Call {
                        name: t.lexeme.clone(),
                        args: self.paren_args()?,
                    }
                } else {
                    ExprKind::Name(t.lexeme.clone())
                }
            }
            TokenKind::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(TokenKind::RParen)?;
                return Ok(inner);
            }
            _ => return Err(self.unexpected("an expression")),
        };
        Ok(Expr::new(kind, span))
    }
}

fn parse_int(p: &Parser<'_>, t: &Token, negative: bool) -> PResult<i64> {
    let text = if negative {
        format!("-{}", t.lexeme)
    } else {
        t.lexeme.to_string()
    };
    text.parse::<i64>().map_err(|_| {
        p.invalid(
            Span::new(t.line, t.column),
            format!("integer literal `{text}` is out of range"),
        )
    })
}

fn check_fresh_names(p: &Parser<'_>, existing: &[VarDecl], decl: &VarDecl) -> PResult<()> {
    for (i, item) in decl.items.iter().enumerate() {
        let dup_before = decl.items[..i].iter().any(|o| o.name.name == item.name.name);
        if dup_before || find_decl(existing, &item.name.name).is_some() {
            return Err(p.invalid(
                item.name.span,
                format!("`{}` is declared twice", item.name.name),
            ));
        }
    }
    Ok(())
}
