//! Recursive-descent parser for rational expressions.
//!
//! Grammar:
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' ['-'] digits)?
//! base   := digits | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::expr::Expr;
use super::rat::Rat;
use super::vars::Vars;
use super::ArithError;

/// Parses `src` over the given variable table.
pub fn parse_expr(vars: &Vars, src: &str) -> Result<Expr, ArithError> {
    let tokens = lex(src)?;
    let mut p = Parser {
        vars,
        tokens,
        pos: 0,
    };
    let e = p.expr()?;
    match p.peek() {
        Token::Eof => Ok(e),
        t => Err(p.unexpected(t.clone())),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt, usize),
    Ident(String, usize),
    Plus(usize),
    Minus(usize),
    Star(usize),
    Slash(usize),
    Caret(usize),
    LParen(usize),
    RParen(usize),
    Eof,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Int(n, _) => format!("number '{n}'"),
            Token::Ident(s, _) => format!("identifier '{s}'"),
            Token::Plus(_) => "'+'".into(),
            Token::Minus(_) => "'-'".into(),
            Token::Star(_) => "'*'".into(),
            Token::Slash(_) => "'/'".into(),
            Token::Caret(_) => "'^'".into(),
            Token::LParen(_) => "'('".into(),
            Token::RParen(_) => "')'".into(),
            Token::Eof => "end of input".into(),
        }
    }

    fn position(&self) -> Option<usize> {
        match self {
            Token::Int(_, p)
            | Token::Ident(_, p)
            | Token::Plus(p)
            | Token::Minus(p)
            | Token::Star(p)
            | Token::Slash(p)
            | Token::Caret(p)
            | Token::LParen(p)
            | Token::RParen(p) => Some(*p),
            Token::Eof => None,
        }
    }
}

fn lex(src: &str) -> Result<Vec<Token>, ArithError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus(i));
                i += 1;
            }
            '-' => {
                out.push(Token::Minus(i));
                i += 1;
            }
            '*' => {
                out.push(Token::Star(i));
                i += 1;
            }
            '/' => {
                out.push(Token::Slash(i));
                i += 1;
            }
            '^' => {
                out.push(Token::Caret(i));
                i += 1;
            }
            '(' => {
                out.push(Token::LParen(i));
                i += 1;
            }
            ')' => {
                out.push(Token::RParen(i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                let n = text
                    .parse::<BigInt>()
                    .map_err(|_| ArithError::BadRationalLiteral(text.to_string()))?;
                out.push(Token::Int(n, start));
            }
            'A'..='Z' | 'a'..='z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push(Token::Ident(src[start..i].to_string(), start));
            }
            other => {
                return Err(ArithError::Parse(format!(
                    "unexpected character '{other}' at byte {i}"
                )))
            }
        }
    }
    out.push(Token::Eof);
    Ok(out)
}

struct Parser<'a> {
    vars: &'a Vars,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, t: Token) -> ArithError {
        match t.position() {
            Some(p) => ArithError::Parse(format!("unexpected {} at byte {p}", t.describe())),
            None => ArithError::Parse("unexpected end of input".to_string()),
        }
    }

    fn expr(&mut self) -> Result<Expr, ArithError> {
        let mut acc = if matches!(self.peek(), Token::Minus(_)) {
            self.bump();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Token::Plus(_) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Token::Minus(_) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ArithError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Token::Star(_) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Token::Slash(_) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.checked_div(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ArithError> {
        let base = self.base()?;
        if matches!(self.peek(), Token::Caret(_)) {
            self.bump();
            let negative = if matches!(self.peek(), Token::Minus(_)) {
                self.bump();
                true
            } else {
                false
            };
            match self.bump() {
                Token::Int(n, p) => {
                    let e: i64 = (&n).try_into().map_err(|_| {
                        ArithError::Parse(format!("exponent too large at byte {p}"))
                    })?;
                    return base.pow(if negative { -e } else { e });
                }
                t => return Err(self.unexpected(t)),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, ArithError> {
        match self.bump() {
            Token::Int(n, _) => Ok(Expr::constant(
                self.vars,
                Rat::new(n, BigInt::from(1)).expect("unit denominator"),
            )),
            Token::Ident(name, _) => Expr::var(self.vars, &name),
            Token::LParen(_) => {
                let e = self.expr()?;
                match self.bump() {
                    Token::RParen(_) => Ok(e),
                    t => Err(self.unexpected(t)),
                }
            }
            t => Err(self.unexpected(t)),
        }
    }
}
