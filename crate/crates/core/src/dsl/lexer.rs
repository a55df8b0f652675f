use crate::diag::{Diagnostic, Position};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Str(String),
    LBrace,
    RBrace,
    Colon,
    Arrow,
    Eq,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Str(_) => "string".to_string(),
            Tok::LBrace => "`{`".to_string(),
            Tok::RBrace => "`}`".to_string(),
            Tok::Colon => "`:`".to_string(),
            Tok::Arrow => "`->`".to_string(),
            Tok::Eq => "`=`".to_string(),
            Tok::Eof => "end of file".to_string(),
        }
    }

    pub(crate) fn is_keyword(&self, kw: &str) -> bool {
        matches!(self, Tok::Ident(s) if s == kw)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Position,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn pos(&self) -> Position {
        Position::new(self.line, self.column)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        match c {
            '\n' => {
                self.line += 1;
                self.column = 1;
            }
            '\r' => {}
            _ => self.column += 1,
        }
        Some(c)
    }
}

/// Splits `text` into tokens. Lexical errors are reported and the offending
/// character skipped, so the result always ends with `Eof`.
pub(crate) fn lex(text: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut toks = Vec::new();
    let mut diags = Vec::new();

    while let Some(c) = cur.peek() {
        let pos = cur.pos();
        match c {
            c if c.is_whitespace() => {
                cur.bump();
            }
            '#' => {
                while let Some(c) = cur.peek() {
                    if c == '\n' {
                        break;
                    }
                    cur.bump();
                }
            }
            '{' | '}' | ':' | '=' => {
                cur.bump();
                let tok = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ':' => Tok::Colon,
                    _ => Tok::Eq,
                };
                toks.push(Token { tok, pos });
            }
            '-' => {
                cur.bump();
                if cur.peek() == Some('>') {
                    cur.bump();
                    toks.push(Token { tok: Tok::Arrow, pos });
                } else {
                    diags.push(Diagnostic::error("syntax", "unexpected `-` (did you mean `->`?)").at(pos));
                }
            }
            '"' => {
                cur.bump();
                let mut s = String::new();
                let mut closed = false;
                while let Some(c) = cur.bump() {
                    match c {
                        '"' => {
                            closed = true;
                            break;
                        }
                        '\\' => {
                            let esc_pos = Position::new(cur.line, cur.column - 1);
                            match cur.peek() {
                                Some(e @ ('"' | '\\')) => {
                                    cur.bump();
                                    s.push(e);
                                }
                                _ => diags.push(
                                    Diagnostic::error("syntax", "invalid escape; only `\\\"` and `\\\\` are allowed")
                                        .at(esc_pos),
                                ),
                            }
                        }
                        '\r' => {}
                        c => s.push(c),
                    }
                }
                if closed {
                    toks.push(Token { tok: Tok::Str(s), pos });
                } else {
                    diags.push(Diagnostic::error("syntax", "unterminated string").at(pos));
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(c) = cur.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        cur.bump();
                    } else if c == '-' {
                        // `a->b`: the `-` starts an arrow, not part of the identifier
                        let mut ahead = cur.chars.clone();
                        ahead.next();
                        if ahead.peek() == Some(&'>') {
                            break;
                        }
                        s.push(c);
                        cur.bump();
                    } else {
                        break;
                    }
                }
                toks.push(Token { tok: Tok::Ident(s), pos });
            }
            other => {
                cur.bump();
                diags.push(
                    Diagnostic::error("syntax", format!("unexpected character {other:?}")).at(pos),
                );
            }
        }
    }
    toks.push(Token {
        tok: Tok::Eof,
        pos: cur.pos(),
    });
    (toks, diags)
}
