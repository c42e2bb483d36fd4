//! Expression syntax: lexer, Pratt parser and printer.

use std::fmt;

use crate::context::Context;

/// Identifiers understood by the parser, in any context.
pub const IDENTIFIERS: &[&str] =
    &["x", "y", "u", "v", "w", "xi", "eta", "kappa", "t1", "t2", "t3", "h", "hp", "i", "A", "B", "C", "D"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Sym(String),
    Neg(Box<Expr>),
    Bin(Op, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Comm(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Wedge,
    Tensor,
}

impl Op {
    fn text(self) -> &'static str {
        match self {
            Op::Add => " + ",
            Op::Sub => " - ",
            Op::Mul => "*",
            Op::Div => "/",
            Op::Wedge => "/\\",
            Op::Tensor => " (x) ",
        }
    }

    fn power(self) -> u8 {
        match self {
            Op::Add | Op::Sub => SUM,
            _ => PRODUCT,
        }
    }
}

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;

/// A syntax or symbol error at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    /// The input with a caret under the offending position.
    pub fn annotate(&self, input: &str) -> String {
        let col = input[..self.pos.min(input.len())].chars().count();
        format!("{self}\n  {input}\n  {}^", " ".repeat(col))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Wedge,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
    end: usize,
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = input[start..i]
                .parse()
                .map_err(|_| ParseError { pos: start, msg: format!("integer `{}` is too large", &input[start..i]) })?;
            out.push(Token { tok: Tok::Int(n), pos: start, end: i });
            continue;
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(input[start..i].to_string()), pos: start, end: i });
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' if bytes.get(i + 1) == Some(&b'\\') => {
                    i += 1;
                    Tok::Wedge
                }
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                _ => {
                    let ch = input[start..].chars().next().unwrap_or(c);
                    return Err(ParseError { pos: start, msg: format!("unexpected character `{ch}`") });
                }
            }
        };
        i += 1;
        out.push(Token { tok, pos: start, end: i });
    }
    out.push(Token { tok: Tok::End, pos: input.len(), end: input.len() });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    at: usize,
    ctx: &'a Context,
}

/// Parse `input` against the symbols of `ctx`.
pub fn parse_expr(input: &str, ctx: &Context) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(input)?, at: 0, ctx };
    let e = p.expr(0)?;
    match p.peek() {
        Tok::End => Ok(e),
        _ => Err(p.error("expected an operator or end of input")),
    }
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> usize {
        self.toks[self.at].pos
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos(), msg: msg.into() }
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    /// `( x )` in operator position is the tensor product.
    fn at_tensor(&self) -> bool {
        *self.peek() == Tok::LParen && *self.peek_at(1) == Tok::Ident("x".into()) && *self.peek_at(2) == Tok::RParen
    }

    /// An identifier glued to the preceding integer, as in `2h`.
    fn at_glued(&self, lhs: &Expr) -> bool {
        matches!(lhs, Expr::Int(_))
            && matches!(self.peek(), Tok::Ident(_))
            && self.at > 0
            && self.toks[self.at - 1].end == self.toks[self.at].pos
    }

    fn infix(&self) -> Option<(Op, usize)> {
        let op = match self.peek() {
            Tok::Plus => (Op::Add, 1),
            Tok::Minus => (Op::Sub, 1),
            Tok::Star => (Op::Mul, 1),
            Tok::Slash => (Op::Div, 1),
            Tok::Wedge => (Op::Wedge, 1),
            _ if self.at_tensor() => (Op::Tensor, 3),
            _ => return None,
        };
        Some(op)
    }

    fn expr(&mut self, min: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.prefix()?;
        loop {
            if *self.peek() == Tok::Caret {
                if POWER < min {
                    break;
                }
                lhs = self.power(lhs)?;
                continue;
            }
            if self.at_glued(&lhs) {
                let rhs = self.expr(POWER)?;
                lhs = Expr::Bin(Op::Mul, Box::new(lhs), Box::new(rhs));
                continue;
            }
            let Some((op, width)) = self.infix() else { break };
            if op.power() < min {
                break;
            }
            for _ in 0..width {
                self.bump();
            }
            let rhs = self.expr(op.power() + 1)?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn power(&mut self, base: Expr) -> Result<Expr, ParseError> {
        let caret = self.pos();
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let Tok::Int(n) = *self.peek() else {
            return Err(self.error("expected an integer exponent"));
        };
        self.bump();
        let n = i64::try_from(n).map_err(|_| ParseError { pos: caret, msg: "exponent is too large".into() })?;
        let e = if neg { -n } else { n };
        if e < 0 {
            if let Expr::Sym(name) = &base {
                if let Some(false) = self.ctx.generator_invertible(name) {
                    return Err(ParseError {
                        pos: caret,
                        msg: format!("`{name}` is not invertible in context `{}`", self.ctx.name()),
                    });
                }
            }
        }
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn prefix(&mut self) -> Result<Expr, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Ident(name) => {
                if !IDENTIFIERS.contains(&name.as_str()) {
                    return Err(ParseError { pos: t.pos, msg: format!("unknown symbol `{name}`") });
                }
                if !self.ctx.has_symbol(&name) {
                    return Err(ParseError {
                        pos: t.pos,
                        msg: format!("`{name}` is not available in context `{}`", self.ctx.name()),
                    });
                }
                Ok(Expr::Sym(name))
            }
            Tok::Minus => Ok(Expr::Neg(Box::new(self.expr(UNARY)?))),
            Tok::LParen => {
                let e = self.expr(0)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::LBracket => {
                let a = self.expr(0)?;
                self.expect(Tok::Comma, "`,` in commutator")?;
                let b = self.expr(0)?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Expr::Comm(Box::new(a), Box::new(b)))
            }
            Tok::End => Err(ParseError { pos: t.pos, msg: "unexpected end of input".into() }),
            _ => Err(ParseError { pos: t.pos, msg: "expected a number, symbol, `(`, `[` or `-`".into() }),
        }
    }
}

impl Expr {
    fn level(&self) -> u8 {
        match self {
            Expr::Int(_) | Expr::Sym(_) | Expr::Comm(..) => POWER + 1,
            Expr::Pow(..) => POWER,
            Expr::Neg(_) => UNARY,
            Expr::Bin(op, ..) => op.power(),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.write(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Sym(s) => f.write_str(s),
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.write(f, UNARY)
            }
            Expr::Bin(op, a, b) => {
                a.write(f, op.power())?;
                f.write_str(op.text())?;
                b.write(f, op.power() + 1)
            }
            Expr::Pow(b, e) => {
                b.write(f, POWER + 1)?;
                write!(f, "^{e}")
            }
            Expr::Comm(a, b) => {
                f.write_str("[")?;
                a.write(f, 0)?;
                f.write_str(", ")?;
                b.write(f, 0)?;
                f.write_str("]")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str, ctx: &str) -> Result<Expr, ParseError> {
        parse_expr(s, &Context::named(ctx).unwrap())
    }

    fn sym(s: &str) -> Box<Expr> {
        Box::new(Expr::Sym(s.into()))
    }

    #[test]
    fn product_node() {
        assert_eq!(parse("y*x", "plane").unwrap(), Expr::Bin(Op::Mul, sym("y"), sym("x")));
    }

    #[test]
    fn commutator_node() {
        assert_eq!(parse("[u,v]", "uv").unwrap(), Expr::Comm(sym("u"), sym("v")));
    }

    #[test]
    fn negative_power_needs_inverse() {
        let e = parse("y^-1*x", "plane").unwrap_err();
        assert!(e.msg.contains("not invertible"), "{e}");
        assert_eq!(e.pos, 1);
        assert!(parse("y^-1*x", "ext").is_ok());
    }

    #[test]
    fn precedence() {
        let e = parse("x + y*x^2", "plane").unwrap();
        let rhs = Expr::Bin(Op::Mul, sym("y"), Box::new(Expr::Pow(sym("x"), 2)));
        assert_eq!(e, Expr::Bin(Op::Add, sym("x"), Box::new(rhs)));
        assert_eq!(parse("-x^2", "plane").unwrap(), Expr::Neg(Box::new(Expr::Pow(sym("x"), 2))));
        assert_eq!(parse("x - y - x", "plane").unwrap().to_string(), "x - y - x");
        assert_eq!(parse("x - (y - x)", "plane").unwrap().to_string(), "x - (y - x)");
    }

    #[test]
    fn tensor_and_parenthesised_x() {
        let e = parse("xi (x) eta", "plane").unwrap();
        assert_eq!(e, Expr::Bin(Op::Tensor, sym("xi"), sym("eta")));
        assert_eq!(parse("(x)*y", "plane").unwrap(), Expr::Bin(Op::Mul, sym("x"), sym("y")));
        assert_eq!(parse("xi(x)xi*(h)", "plane").unwrap().to_string(), "xi (x) xi*h");
    }

    #[test]
    fn glued_coefficients() {
        assert_eq!(parse("2h*x", "plane").unwrap(), parse("2*h*x", "plane").unwrap());
        assert_eq!(parse("3h^2", "plane").unwrap(), parse("3*h^2", "plane").unwrap());
        assert!(parse("2 h", "plane").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("x + q", "plane").unwrap_err().pos, 4);
        assert_eq!(parse("x + u", "plane").unwrap_err().pos, 4);
        assert_eq!(parse("(x + y", "plane").unwrap_err().pos, 6);
        assert_eq!(parse("x $ y", "plane").unwrap_err().pos, 2);
        assert_eq!(parse("x y", "plane").unwrap_err().pos, 2);
        assert_eq!(parse("x^y", "plane").unwrap_err().pos, 2);
    }
}
