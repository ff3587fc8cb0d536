//! Source text to tokens.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub const KEYWORDS: [&str; 12] = [
    "program",
    "end",
    "operator",
    "method",
    "begin",
    "inherits",
    "shared",
    "by_nested_operators",
    "this_operator",
    "integer",
    "string",
    "semaphore",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Keyword,
    Identifier,
    IntLiteral,
    StringLiteral,
    Assign,
    Dot,
    Comma,
    Semicolon,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
}

impl TokenKind {
    pub fn name(self) -> &'static str {
        match self {
            TokenKind::Keyword => "keyword",
            TokenKind::Identifier => "identifier",
            TokenKind::IntLiteral => "int-literal",
            TokenKind::StringLiteral => "string-literal",
            TokenKind::Assign => "assign",
            TokenKind::Dot => "dot",
            TokenKind::Comma => "comma",
            TokenKind::Semicolon => "semicolon",
            TokenKind::LParen => "lparen",
            TokenKind::RParen => "rparen",
            TokenKind::Plus => "plus",
            TokenKind::Minus => "minus",
            TokenKind::Star => "star",
            TokenKind::Slash => "slash",
        }
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A lexeme with the position of its first character. String literal
/// lexemes exclude the quotes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub line: u32,
    pub column: u32,
}

impl Token {
    pub fn is_keyword(&self, word: &str) -> bool {
        self.kind == TokenKind::Keyword && self.lexeme == word
    }
}

impl fmt::Display for Token {
    /// `LINE:COL KIND LEXEME`, the line format of the `tokens` dump.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{} {} {}",
            self.line, self.column, self.kind, self.lexeme
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub line: u32,
    pub column: u32,
    pub message: String,
}

impl fmt::Display for LexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

struct Cursor<'s> {
    chars: core::iter::Peekable<core::str::Chars<'s>>,
    line: u32,
    column: u32,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn eat_while(&mut self, out: &mut String, pred: impl Fn(char) -> bool) {
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut cur = Cursor {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        let (line, column) = (cur.line, cur.column);
        let error = |message: String| LexError {
            line,
            column,
            message,
        };
        let mut lexeme = String::new();
        let kind = match c {
            ' ' | '\t' | '\r' | '\n' => {
                cur.bump();
                continue;
            }
            '-' => {
                cur.bump();
                if cur.peek() == Some('-') {
                    while let Some(c) = cur.peek() {
                        if c == '\n' {
                            break;
                        }
                        cur.bump();
                    }
                    continue;
                }
                lexeme.push('-');
                TokenKind::Minus
            }
            '"' => {
                cur.bump();
                loop {
                    match cur.peek() {
                        None | Some('\n') => {
                            return Err(error("unterminated string literal".into()))
                        }
                        Some('"') => {
                            cur.bump();
                            break;
                        }
                        Some(c) => {
                            lexeme.push(c);
                            cur.bump();
                        }
                    }
                }
                TokenKind::StringLiteral
            }
            ':' => {
                cur.bump();
                if cur.peek() != Some('=') {
                    return Err(error("expected `=` after `:`".into()));
                }
                cur.bump();
                lexeme.push_str(":=");
                TokenKind::Assign
            }
            c if c.is_ascii_digit() => {
                cur.eat_while(&mut lexeme, |c| c.is_ascii_digit());
                if cur.peek().is_some_and(is_ident_start) {
                    return Err(error(alloc::format!(
                        "malformed number `{lexeme}{}`",
                        cur.peek().unwrap_or_default()
                    )));
                }
                TokenKind::IntLiteral
            }
            c if is_ident_start(c) => {
                cur.eat_while(&mut lexeme, is_ident_continue);
                if is_keyword(&lexeme) {
                    TokenKind::Keyword
                } else {
                    TokenKind::Identifier
                }
            }
            _ => {
                let kind = match c {
                    '.' => TokenKind::Dot,
                    ',' => TokenKind::Comma,
                    ';' => TokenKind::Semicolon,
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    '+' => TokenKind::Plus,
                    '*' => TokenKind::Star,
                    '/' => TokenKind::Slash,
                    other => {
                        return Err(error(alloc::format!("illegal character `{other}`")))
                    }
                };
                lexeme.push(c);
                cur.bump();
                kind
            }
        };
        tokens.push(Token {
            kind,
            lexeme,
            line,
            column,
        });
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use TokenKind::*;

    fn kinds(src: &str) -> Vec<(TokenKind, String)> {
        tokenize(src)
            .unwrap()
            .into_iter()
            .map(|t| (t.kind, t.lexeme))
            .collect()
    }

    fn k(kind: TokenKind, lexeme: &str) -> (TokenKind, String) {
        (kind, lexeme.into())
    }

    #[test]
    fn block_usage_with_string_argument() {
        assert_eq!(
            kinds("begin dialog_window \"Title\";"),
            vec![
                k(Keyword, "begin"),
                k(Identifier, "dialog_window"),
                k(StringLiteral, "Title"),
                k(Semicolon, ";"),
            ]
        );
    }

    #[test]
    fn empty_input() {
        assert!(tokenize("").unwrap().is_empty());
    }

    #[test]
    fn assignment_with_call() {
        assert_eq!(
            kinds("x_size:=max(x_size,x);"),
            vec![
                k(Identifier, "x_size"),
                k(Assign, ":="),
                k(Identifier, "max"),
                k(LParen, "("),
                k(Identifier, "x_size"),
                k(Comma, ","),
                k(Identifier, "x"),
                k(RParen, ")"),
                k(Semicolon, ";"),
            ]
        );
    }

    #[test]
    fn unterminated_string() {
        let err = tokenize("\"unterminated").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
    }

    #[test]
    fn string_may_not_span_lines() {
        let err = tokenize("x := \"ab\ncd\";").unwrap_err();
        assert_eq!((err.line, err.column), (1, 6));
    }

    #[test]
    fn illegal_character() {
        let err = tokenize("a := 1 ? 2;").unwrap_err();
        assert_eq!((err.line, err.column), (1, 8));
        assert!(err.message.contains('?'));
    }

    #[test]
    fn comments_run_to_end_of_line() {
        let toks = tokenize("a -- ignored \"still\"\n-b").unwrap();
        let lexemes: Vec<_> = toks.iter().map(|t| t.lexeme.as_str()).collect();
        assert_eq!(lexemes, ["a", "-", "b"]);
        assert_eq!((toks[1].line, toks[1].column), (2, 1));
    }

    #[test]
    fn positions_track_lines_and_columns() {
        let toks = tokenize("program p;\n  end").unwrap();
        let pos: Vec<_> = toks.iter().map(|t| (t.line, t.column)).collect();
        assert_eq!(pos, [(1, 1), (1, 9), (1, 10), (2, 3)]);
    }

    #[test]
    fn keywords_are_case_sensitive() {
        assert_eq!(kinds("Begin begin"), vec![k(Identifier, "Begin"), k(Keyword, "begin")]);
        assert_eq!(kinds("num_nested_operators")[0].0, Identifier);
        assert_eq!(kinds("this_operator")[0].0, Keyword);
    }

    #[test]
    fn digits_followed_by_letters_are_rejected() {
        assert!(tokenize("12ab").is_err());
    }

    #[test]
    fn token_display_matches_dump_format() {
        let t = &tokenize("\n  \"Hello, world!\"").unwrap()[0];
        assert_eq!(t.to_string(), "2:3 string-literal Hello, world!");
    }
}
