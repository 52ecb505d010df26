use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
    Semi,
    End,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '=' => Some(Tok::Eq),
            ';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, line: tl, column: tc });
            i += 1;
            col += 1;
            continue;
        }
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            if i < chars.len() && (chars[i] == '.' || chars[i].is_ascii_alphabetic()) {
                return Err(Error::parse(
                    line,
                    col + (i - start),
                    "only integer literals are allowed; use explicit '*' for products",
                ));
            }
            out.push(Token {
                tok: Tok::Num(s.parse().expect("digits")),
                line: tl,
                column: tc,
            });
            col += i - start;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut name = c.to_string();
            i += 1;
            if i < chars.len() && chars[i].is_ascii_digit() {
                name.push(chars[i]);
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(name.clone()),
                line: tl,
                column: tc,
            });
            col += name.len();
            continue;
        }
        return Err(Error::parse(line, col, format!("unexpected character '{c}'")));
    }
    out.push(Token { tok: Tok::End, line, column: col });
    Ok(out)
}
