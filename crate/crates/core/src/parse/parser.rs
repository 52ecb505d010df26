use std::collections::BTreeSet;

use num_traits::ToPrimitive;

use super::ast::{Equation, Expr, ProblemStatement};
use super::lexer::{tokenize, Tok, Token};
use crate::error::{Error, Result};
use crate::poly::BiPoly;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::parse(t.line, t.column, message))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn system(&mut self) -> Result<Vec<Equation>> {
        let mut eqs = vec![self.equation()?];
        while *self.peek() == Tok::Semi {
            self.bump();
            eqs.push(self.equation()?);
        }
        if *self.peek() != Tok::End {
            return self.error("expected ';' or end of input");
        }
        Ok(eqs)
    }

    fn equation(&mut self) -> Result<Equation> {
        let lhs = self.expr()?;
        self.expect(Tok::Eq, "'='")?;
        let rhs = self.expr()?;
        Ok(Equation { lhs, rhs })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen => {
                    return self.error("implicit multiplication is not allowed; use '*'")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let base = self.base()?;
        let mut exps = Vec::new();
        while *self.peek() == Tok::Caret {
            self.bump();
            match self.peek().clone() {
                Tok::Num(n) => {
                    let Some(k) = n.to_u32() else {
                        return self.error("exponent too large");
                    };
                    self.bump();
                    exps.push(k);
                }
                _ => return self.error("exponent must be a non-negative integer literal"),
            }
        }
        // right-associative: x^2^3 = x^(2^3)
        let mut e: Option<u32> = None;
        for k in exps.into_iter().rev() {
            e = Some(match e {
                None => k,
                Some(inner) => match k.checked_pow(inner) {
                    Some(v) => v,
                    None => return self.error("exponent too large"),
                },
            });
        }
        let body = match e {
            Some(k) => Expr::Pow(Box::new(base), k),
            None => base,
        };
        Ok(if negate { Expr::Neg(Box::new(body)) } else { body })
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Expr::Num(n))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Ident(s))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Minus => self.error("repeated unary minus needs parentheses"),
            Tok::End => self.error("unexpected end of input"),
            other => self.error(format!("unexpected token {other:?}")),
        }
    }
}

fn classify(
    idents: &BTreeSet<String>,
    unknowns: Option<&[&str]>,
) -> Result<(Vec<String>, Vec<String>)> {
    let unknowns: Vec<String> = match unknowns {
        Some(list) => {
            let mut seen = Vec::new();
            for u in list {
                if !seen.iter().any(|s: &String| s == u) {
                    seen.push(u.to_string());
                }
            }
            seen
        }
        None => ["x", "y"]
            .iter()
            .filter(|u| idents.contains(**u))
            .map(|s| s.to_string())
            .collect(),
    };
    if unknowns.is_empty() {
        return Err(Error::UnsupportedShape("no unknowns in the input".into()));
    }
    if unknowns.len() > 2 {
        return Err(Error::UnsupportedShape(format!(
            "at most 2 unknowns are supported, got {}",
            unknowns.len()
        )));
    }
    let params = idents
        .iter()
        .filter(|i| !unknowns.contains(i))
        .cloned()
        .collect();
    Ok((unknowns, params))
}

/// Parses one equation or a `;`-separated system of two.
///
/// `x` and `y` are unknowns unless `unknowns` says otherwise; every other
/// identifier is a parameter.
pub fn parse(text: &str, unknowns: Option<&[&str]>) -> Result<ProblemStatement> {
    if text.trim().is_empty() {
        return Err(Error::parse(1, 1, "empty input"));
    }
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let equations = p.system()?;
    if equations.len() > 2 {
        return Err(Error::UnsupportedShape(format!(
            "at most 2 equations are supported, got {}",
            equations.len()
        )));
    }
    let mut idents = BTreeSet::new();
    for e in &equations {
        e.lhs.identifiers(&mut idents);
        e.rhs.identifiers(&mut idents);
    }
    let (unknowns, parameters) = classify(&idents, unknowns)?;
    Ok(ProblemStatement {
        equations,
        unknowns,
        parameters,
    })
}

/// Parses a bare expression (no `=`).
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

/// Parses an expression straight into a polynomial in the given unknowns.
pub fn parse_poly(text: &str, unknowns: [&str; 2]) -> Result<BiPoly> {
    parse_expr(text)?.to_poly(unknowns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::to_bipoly;

    #[test]
    fn sextic_single_equation() {
        let s = parse("(a-x^2)^3=(b-x^3)^2", None).unwrap();
        assert_eq!(s.equations.len(), 1);
        assert_eq!(s.unknowns, vec!["x"]);
        assert_eq!(s.parameters, vec!["a", "b"]);
    }

    #[test]
    fn symmetric_system() {
        let s = parse("x^2+y^2=a; x^3+y^3=b", None).unwrap();
        assert_eq!(s.equations.len(), 2);
        assert_eq!(s.unknowns, vec!["x", "y"]);
        assert_eq!(s.parameters, vec!["a", "b"]);
    }

    #[test]
    fn negative_exponent_rejected() {
        assert!(matches!(parse("x^(-1)=a", None), Err(Error::ParseError { .. })));
        assert!(matches!(parse("x^-1=a", None), Err(Error::ParseError { .. })));
    }

    #[test]
    fn implicit_product_rejected() {
        assert!(matches!(parse("2x=1", None), Err(Error::ParseError { .. })));
        assert!(matches!(parse("2 x=1", None), Err(Error::ParseError { .. })));
        assert!(matches!(parse("x(x+1)=1", None), Err(Error::ParseError { .. })));
    }

    #[test]
    fn error_position() {
        match parse("x^2+\n  y*=1", None) {
            Err(Error::ParseError { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shape_limits() {
        assert!(matches!(parse("x=1; y=2; x=y", None), Err(Error::UnsupportedShape(_))));
        assert!(matches!(parse("a=1", None), Err(Error::UnsupportedShape(_))));
        assert!(matches!(
            parse("x+y+z=1", Some(&["x", "y", "z"])),
            Err(Error::UnsupportedShape(_))
        ));
    }

    #[test]
    fn unknowns_override() {
        let s = parse("t^2=a*x", Some(&["t"])).unwrap();
        assert_eq!(s.unknowns, vec!["t"]);
        assert_eq!(s.parameters, vec!["a", "x"]);
    }

    #[test]
    fn unary_minus_looser_than_power() {
        let p = parse_poly("-x^2", ["x", "y"]).unwrap();
        assert_eq!(p.to_string(), "-x^2");
        let q = parse_poly("(-x)^2", ["x", "y"]).unwrap();
        assert_eq!(q.to_string(), "x^2");
    }

    #[test]
    fn power_right_associative() {
        let p = parse_poly("x^2^3", ["x", "y"]).unwrap();
        assert_eq!(p, parse_poly("x^8", ["x", "y"]).unwrap());
    }

    #[test]
    fn identity_is_zero() {
        let s = parse("x=x", None).unwrap();
        assert!(to_bipoly(&s).unwrap()[0].is_zero());
    }

    #[test]
    fn sextic_expands_to_negated_canonical_form() {
        let s = parse("(a-x^2)^3=(b-x^3)^2", None).unwrap();
        let p = &to_bipoly(&s).unwrap()[0];
        let q = parse_poly("2*x^6-3*a*x^4-2*b*x^3+3*a^2*x^2+b^2-a^3", ["x", "y"]).unwrap();
        assert!((p + &q).is_zero());
    }

    #[test]
    fn digit_suffix_identifiers() {
        let s = parse("a3*x^3+a2*x^2+a1*x+a0=0", None).unwrap();
        assert_eq!(s.parameters, vec!["a0", "a1", "a2", "a3"]);
    }

    #[test]
    fn division_by_constant_only() {
        let p = parse_poly("(1/2)*x+y/4", ["x", "y"]).unwrap();
        assert_eq!(p.to_string(), "(1/2)*x+(1/4)*y");
        assert!(matches!(parse_poly("x/y", ["x", "y"]), Err(Error::UnsupportedShape(_))));
        assert!(matches!(parse_poly("x/(1-1)", ["x", "y"]), Err(Error::UnsupportedShape(_))));
    }
}
