//! Text syntax for polynomials: identifiers, integers, `+ - * / ^ ( )`.
//!
//! `^` binds tightest and takes a non-negative integer exponent. `/` is
//! accepted only when its right operand is a nonzero constant, which covers
//! rational literals such as `1/4`. Error positions are 1-based character
//! offsets.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::mf7::reduce_sigma2;
use super::poly::{MultiPoly, Vars};
use super::ring::{Ring, Scalar};
use super::scalars::Rat;
use crate::error::{AlgError, Result};

#[derive(Clone, Debug)]
pub struct ParseContext {
    vars: Arc<Vars>,
    aliases: BTreeMap<String, MultiPoly<Rat>>,
    reduce: bool,
}

impl ParseContext {
    pub fn new(vars: &Arc<Vars>) -> Self {
        ParseContext {
            vars: vars.clone(),
            aliases: BTreeMap::new(),
            reduce: false,
        }
    }

    /// Adds a named abbreviation such as `s1` for z1+z2+z3.
    pub fn with_alias(mut self, name: &str, value: MultiPoly<Rat>) -> Self {
        self.aliases.insert(name.to_string(), value);
        self
    }

    /// Reduce results modulo z1*z2+z2*z3+z3*z1.
    pub fn with_sigma2_reduction(mut self) -> Self {
        self.reduce = true;
        self
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn parse(&self, text: &str) -> Result<MultiPoly<Rat>> {
        let toks = tokenize(text)?;
        let mut p = Parser {
            ctx: self,
            toks,
            pos: 0,
            end: text.chars().count() + 1,
        };
        let out = p.expr()?;
        if let Some(t) = p.peek() {
            return Err(AlgError::Syntax {
                pos: t.pos,
                msg: format!("unexpected `{}`", t.text()),
            });
        }
        if self.reduce {
            reduce_sigma2(&out)
        } else {
            Ok(out)
        }
    }
}

pub fn parse_expr(text: &str, vars: &Arc<Vars>) -> Result<MultiPoly<Rat>> {
    ParseContext::new(vars).parse(text)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
}

impl Token {
    fn text(&self) -> String {
        match &self.tok {
            Tok::Int(n) => n.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Op(c) => c.to_string(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                pos,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                pos,
            });
        } else if "+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Op(c), pos });
            i += 1;
        } else {
            return Err(AlgError::Syntax {
                pos,
                msg: format!("unexpected character `{}`", c),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a ParseContext,
    toks: Vec<Token>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_op(&self) -> Option<char> {
        match self.peek() {
            Some(Token { tok: Tok::Op(c), .. }) => Some(*c),
            _ => None,
        }
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(AlgError::Syntax {
            pos: self.here(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<MultiPoly<Rat>> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek_op() {
            match op {
                '+' => {
                    self.pos += 1;
                    acc = acc.plus(&self.term()?);
                }
                '-' => {
                    self.pos += 1;
                    acc = acc.minus(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly<Rat>> {
        let mut acc = self.unary()?;
        while let Some(op) = self.peek_op() {
            match op {
                '*' => {
                    self.pos += 1;
                    acc = acc.times(&self.unary()?);
                }
                '/' => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(AlgError::Syntax {
                            pos: at,
                            msg: "divisor must be a nonzero constant".into(),
                        });
                    }
                    acc = acc.scale(&d.constant_coeff().try_inv().expect("nonzero rational"));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly<Rat>> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.negate())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly<Rat>> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token { tok: Tok::Int(n), pos }) => {
                    self.pos += 1;
                    let e = n.to_u32().filter(|e| *e <= 1000).ok_or(AlgError::Syntax {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly<Rat>> {
        let vars = self.ctx.vars.clone();
        let Some(t) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        match t.tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(MultiPoly::constant(&vars, Rat::from_bigint(&n)))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                if let Some(i) = vars.index(&name) {
                    Ok(MultiPoly::gen(&vars, i))
                } else if let Some(v) = self.ctx.aliases.get(&name) {
                    Ok(v.clone())
                } else {
                    Err(AlgError::UnknownIdentifier { name, pos: t.pos })
                }
            }
            Tok::Op('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op(c) => Err(AlgError::Syntax {
                pos: t.pos,
                msg: format!("unexpected `{}`", c),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::mf7::z_vars;
    use crate::exactalg::scalars::rat;

    #[test]
    fn parses_relation_to_zero() {
        let ctx = ParseContext::new(&z_vars()).with_sigma2_reduction();
        assert!(ctx.parse("z1*z2 + z2*z3 + z3*z1").unwrap().is_zero());
    }

    #[test]
    fn rational_literals_and_precedence() {
        let v = z_vars();
        let p = parse_expr("1/4*(z1-z2+z3)^2 - z2*z3", &v).unwrap();
        assert_eq!(p.coeff(&[2, 0, 0]), rat(1, 4));
        assert_eq!(p.coeff(&[0, 1, 1]), rat(-3, 2));
        let q = parse_expr("-z1^2", &v).unwrap();
        assert_eq!(q.coeff(&[2, 0, 0]), rat(-1, 1));
        assert_eq!(parse_expr("2^3", &v).unwrap().constant_coeff(), rat(8, 1));
    }

    #[test]
    fn error_positions() {
        let v = z_vars();
        assert_eq!(
            parse_expr("z1^2*(", &v).unwrap_err(),
            AlgError::Syntax {
                pos: 7,
                msg: "unexpected end of input".into()
            }
        );
        assert_eq!(
            parse_expr("z1 + w", &v).unwrap_err(),
            AlgError::UnknownIdentifier {
                name: "w".into(),
                pos: 6
            }
        );
        assert!(matches!(parse_expr("z1 / z2", &v), Err(AlgError::Syntax { pos: 6, .. })));
        assert!(matches!(parse_expr("z1 )", &v), Err(AlgError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_expr("z1 # 2", &v), Err(AlgError::Syntax { pos: 4, .. })));
    }
}
