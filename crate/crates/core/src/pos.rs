use core::fmt;

/// A 1-based line/column pair attached to syntax tree nodes.
///
/// Spans do not take part in tree equality: two trees that differ only in
/// where their nodes were written compare equal. Compare the fields
/// directly when the location itself matters.
#[derive(Clone, Copy, Debug, Default, Eq)]
pub struct Span {
    pub line: u32,
    pub column: u32,
}

impl Span {
    pub const fn new(line: u32, column: u32) -> Self {
        Span { line, column }
    }
}

impl PartialEq for Span {
    fn eq(&self, _other: &Self) -> bool {
        true
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// Which text a construct was written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    Program,
    Prelude,
}

/// A source location that also records which text it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SrcPos {
    pub origin: Origin,
    pub line: u32,
    pub column: u32,
}

impl SrcPos {
    pub const fn new(origin: Origin, span: Span) -> Self {
        SrcPos {
            origin,
            line: span.line,
            column: span.column,
        }
    }
}

impl fmt::Display for SrcPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.origin {
            Origin::Program => write!(f, "{}:{}", self.line, self.column),
            Origin::Prelude => write!(f, "prelude:{}:{}", self.line, self.column),
        }
    }
}
