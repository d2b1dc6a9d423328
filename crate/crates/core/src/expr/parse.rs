use super::{Expr, ExprError, Func, Var};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    Open,
    Close,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>, ExprError> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            let tok = lx.next_token()?;
            let done = tok.0 == Tok::End;
            out.push(tok);
            if done {
                return Ok(out);
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn next_token(&mut self) -> Result<(Tok, usize), ExprError> {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() || c == '.' {
            return self.number(start).map(|v| (Tok::Num(v), start));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while let Some(c) = self.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            return Ok((Tok::Ident(self.src[start..self.pos].to_string()), start));
        }
        self.pos += c.len_utf8();
        let tok = match c {
            '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
            '(' => Tok::Open,
            ')' => Tok::Close,
            other => {
                return Err(ExprError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        Ok((tok, start))
    }

    fn number(&mut self, start: usize) -> Result<f64, ExprError> {
        let bytes = self.src.as_bytes();
        let digits = |pos: &mut usize| {
            let from = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            *pos - from
        };
        let mut pos = self.pos;
        let mut n = digits(&mut pos);
        if pos < bytes.len() && bytes[pos] == b'.' {
            pos += 1;
            n += digits(&mut pos);
        }
        if n == 0 {
            return Err(ExprError::Syntax {
                pos: start,
                msg: "malformed number".into(),
            });
        }
        // exponent only when followed by digits, so `2e` is not swallowed
        if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
            let mut q = pos + 1;
            if q < bytes.len() && (bytes[q] == b'+' || bytes[q] == b'-') {
                q += 1;
            }
            if digits(&mut q) > 0 {
                pos = q;
            }
        }
        let text = &self.src[start..pos];
        self.pos = pos;
        text.parse::<f64>().map_err(|_| ExprError::Syntax {
            pos: start,
            msg: format!("malformed number `{text}`"),
        })
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

/// Parses an expression.
///
/// Precedence from tightest: `^` (right-associative), unary `-`, `*` `/`, `+` `-`.
/// The right operand of `^` may carry a unary minus (`2^-s`).
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    if text.trim().is_empty() {
        return Err(ExprError::Syntax {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks: Lexer::tokens(text)?,
        at: 0,
    };
    let e = p.sum()?;
    match p.peek() {
        Tok::End => Ok(e),
        tok => Err(p.unexpected(tok.clone())),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, tok: Tok) -> ExprError {
        let what = match tok {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Op(c) => format!("operator `{c}`"),
            Tok::Open => "`(`".into(),
            Tok::Close => "`)`".into(),
            Tok::End => "end of input".into(),
        };
        ExprError::Syntax {
            pos: self.pos(),
            msg: format!("unexpected {what}"),
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Expr::add(lhs, self.product()?);
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Expr::sub(lhs, self.product()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Expr::mul(lhs, self.unary()?);
                }
                Tok::Op('/') => {
                    self.bump();
                    lhs = Expr::div(lhs, self.unary()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            return Ok(Expr::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        if *self.peek() == Tok::Op('^') {
            self.bump();
            let exp = self.unary()?;
            return Ok(Expr::pow(base, exp));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::Open => {
                let e = self.sum()?;
                self.expect_close()?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if let Some(v) = Var::from_name(&name) {
                    return Ok(Expr::Var(v));
                }
                let Some(func) = Func::from_name(&name) else {
                    return Err(ExprError::UnknownIdentifier { name, pos });
                };
                if *self.peek() != Tok::Open {
                    return Err(ExprError::Syntax {
                        pos: self.pos(),
                        msg: format!("expected `(` after `{name}`"),
                    });
                }
                self.bump();
                let arg = self.sum()?;
                self.expect_close()?;
                Ok(Expr::call(func, arg))
            }
            tok => {
                self.at -= usize::from(tok != Tok::End);
                Err(self.unexpected(tok))
            }
        }
    }

    fn expect_close(&mut self) -> Result<(), ExprError> {
        match self.peek() {
            Tok::Close => {
                self.bump();
                Ok(())
            }
            tok => Err(self.unexpected(tok.clone())),
        }
    }
}
