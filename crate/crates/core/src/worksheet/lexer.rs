use num_bigint::BigInt;

use super::ast::Span;
use super::WorksheetError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Str(String),
    /// Punctuation and operators.
    Sym(&'static str),
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Str(_) => "string".to_string(),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Newline => "end of line".to_string(),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

const SYMBOLS: [&str; 16] = [
    "==", "(", ")", "[", "]", "{", "}", ",", ";", "=", "+", "-", "*", "/", "^", ".",
];

/// Splits source into tokens. Newlines inside `(...)` and `[...]` are
/// dropped so argument lists may wrap; braces keep them because blocks
/// accept newline-separated items.
pub fn tokenize(src: &str) -> Result<Vec<Token>, WorksheetError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    for (lineno, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let span = Span {
                line: lineno + 1,
                col: i + 1,
            };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Token {
                    tok: Tok::Int(text.parse().expect("digits")),
                    span,
                });
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    span,
                });
                continue;
            }
            if c == '"' {
                let start = i + 1;
                let Some(len) = chars[start..].iter().position(|&ch| ch == '"') else {
                    return Err(WorksheetError::syntax(span, "unterminated string", Some("closing `\"`")));
                };
                out.push(Token {
                    tok: Tok::Str(chars[start..start + len].iter().collect()),
                    span,
                });
                i = start + len + 1;
                continue;
            }
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
                return Err(WorksheetError::syntax(span, &format!("unexpected character `{c}`"), None));
            };
            match *sym {
                "(" | "[" => depth += 1,
                ")" | "]" => depth = depth.saturating_sub(1),
                _ => {}
            }
            out.push(Token { tok: Tok::Sym(sym), span });
            i += sym.len();
        }
        if depth == 0 {
            out.push(Token {
                tok: Tok::Newline,
                span: Span {
                    line: lineno + 1,
                    col: chars.len() + 1,
                },
            });
        }
    }
    // End of input sits just past the last character, so errors about a
    // truncated final line point at that line.
    let line = src.lines().count().max(1);
    let col = src.lines().last().map_or(0, |l| l.chars().count()) + 1;
    out.push(Token {
        tok: Tok::Eof,
        span: Span { line, col },
    });
    Ok(out)
}
