use num_bigint::BigInt;

use super::expr::RadicalExpr;
use crate::error::{Error, Result};
use crate::poly::Rational;

type E = RadicalExpr;

struct Reader<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn fail<T>(&self, msg: &str) -> Result<T> {
        Err(Error::parse(1, self.pos + 1, msg))
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&format!("expected `{}`", c as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(text.parse().expect("digits"))
    }

    fn small(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let n: i64 = self
            .integer()?
            .try_into()
            .or_else(|_| self.fail("exponent out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn sum(&mut self) -> Result<E> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat(b'+') {
                terms.push(self.term()?);
            } else if self.eat(b'-') {
                terms.push(E::neg(&self.term()?));
            } else {
                return Ok(E::add(terms));
            }
        }
    }

    fn term(&mut self) -> Result<E> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = E::mul(vec![acc, self.unary()?]);
            } else if self.eat(b'/') {
                acc = E::div(&acc, &self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<E> {
        if self.eat(b'-') {
            return Ok(E::neg(&self.unary()?));
        }
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let k = if self.eat(b'(') {
            let k = self.small()?;
            self.expect(b')')?;
            k
        } else {
            self.small()?
        };
        let k = i32::try_from(k).or_else(|_| self.fail("exponent out of range"))?;
        Ok(E::pow(&base, k))
    }

    fn count(&mut self) -> Result<u32> {
        let n = self.small()?;
        u32::try_from(n).or_else(|_| self.fail("expected a non-negative integer"))
    }

    fn atom(&mut self) -> Result<E> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(E::rational(Rational::from_integer(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if self.peek() != Some(b'(') {
                    return Ok(E::param(name));
                }
                self.pos += 1;
                let out = match name {
                    "sqrt" => E::sqrt(&self.sum()?),
                    "cbrt" => E::cbrt(&self.sum()?),
                    "root" => {
                        let b = self.sum()?;
                        self.expect(b',')?;
                        let n = self.count()?;
                        if n < 2 {
                            return self.fail("root index must be at least 2");
                        }
                        E::root(&b, n)
                    }
                    "omega" => {
                        let n = self.count()?;
                        self.expect(b',')?;
                        let j = self.count()?;
                        if n == 0 {
                            return self.fail("omega order must be positive");
                        }
                        E::unity(n, j % n)
                    }
                    _ => return self.fail(&format!("unknown function `{name}`")),
                };
                self.expect(b')')?;
                Ok(out)
            }
            _ => self.fail("expected an expression"),
        }
    }
}

/// Reads the text form produced by `Display` back into an expression.
pub fn parse_radical(text: &str) -> Result<RadicalExpr> {
    let mut r = Reader {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = r.sum()?;
    if r.peek().is_some() {
        return r.fail("unexpected trailing input");
    }
    Ok(e)
}

/// Reads `(x, y)` into two expressions, or a single expression.
pub fn parse_radical_tuple(text: &str) -> Result<Vec<RadicalExpr>> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        let mut depth = 0i32;
        for (i, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    return Ok(vec![parse_radical(&inner[..i])?, parse_radical(&inner[i + 1..])?]);
                }
                _ => {}
            }
            if depth < 0 {
                break;
            }
        }
    }
    Ok(vec![parse_radical(t)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_display_output() {
        for s in [
            "1-(1/2)*sqrt(3)+(1/2)*sqrt(3+4*sqrt(3))",
            "cbrt(a)*omega(3, 1)",
            "root(2*a, 5)",
            "-b/(a-1)",
            "(1/2)*a^(-2)",
        ] {
            let e = parse_radical(s).unwrap();
            assert_eq!(parse_radical(&e.to_string()).unwrap(), e, "{s}");
        }
        assert_eq!(parse_radical("1-(1/2)*sqrt(3)+(1/2)*sqrt(3+4*sqrt(3))").unwrap().to_string(),
            "1-(1/2)*sqrt(3)+(1/2)*sqrt(3+4*sqrt(3))");
    }

    #[test]
    fn reads_pairs() {
        let v = parse_radical_tuple("(1+sqrt(2), 1-sqrt(2))").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(parse_radical_tuple("(1+a)*b").unwrap().len(), 1);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_radical("sqrt(").is_err());
        assert!(parse_radical("foo(2)").is_err());
        assert!(parse_radical("1 2").is_err());
    }
}
