use num_bigint::BigInt;

use super::Polynomial;
use crate::arith::{Field, Rational};
use crate::error::ParseError;

struct Cursor<'a> {
    src: &'a str,
    bytes: Vec<u8>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        // Whitespace is insignificant anywhere in the grammar.
        let bytes = src.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        Cursor { src, bytes, pos: 0 }
    }

    fn err(&self, msg: &'static str) -> ParseError {
        ParseError::Polynomial {
            input: self.src.to_string(),
            pos: self.pos,
            msg,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        if self.bytes[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }
}

/// Grammar: `poly := [sign] term (sign term)*`, `term := coef ['*' mono] | mono`,
/// `coef := int ['/' int]`, `mono := var ['^' int]`.
pub(super) fn parse_polynomial(text: &str, var: &str) -> Result<Polynomial<Rational>, ParseError> {
    let mut cur = Cursor::new(text);
    if cur.bytes.is_empty() {
        return Err(cur.err("empty input"));
    }
    let mut acc = Polynomial::zero();
    let mut first = true;
    loop {
        let negative = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') {
            false
        } else if first {
            false
        } else {
            return Err(cur.err("expected '+' or '-'"));
        };
        first = false;

        let coef = match cur.digits() {
            Some(num) => {
                let den = if cur.eat(b'/') {
                    cur.digits().ok_or_else(|| cur.err("expected denominator"))?
                } else {
                    BigInt::from(1)
                };
                if den == BigInt::from(0) {
                    return Err(cur.err("zero denominator"));
                }
                Some(Rational::new(num, den))
            }
            None => None,
        };
        let has_star = coef.is_some() && cur.eat(b'*');
        let wants_var = coef.is_none() || has_star;
        let exponent = if wants_var && cur.eat_str(var) {
            if cur.eat(b'^') {
                let e = cur.digits().ok_or_else(|| cur.err("expected exponent"))?;
                Some(usize::try_from(e).map_err(|_| cur.err("exponent too large"))?)
            } else {
                Some(1)
            }
        } else {
            None
        };
        if has_star && exponent.is_none() {
            return Err(cur.err("expected variable after '*'"));
        }
        if coef.is_none() && exponent.is_none() {
            return Err(cur.err("expected a term"));
        }
        let mut c = coef.unwrap_or_else(Rational::one);
        if negative {
            c = -c;
        }
        acc = acc.add(&Polynomial::monomial(c, exponent.unwrap_or(0)));
        match cur.peek() {
            None => return Ok(acc),
            Some(b'+') | Some(b'-') => {}
            Some(_) => return Err(cur.err("unexpected character")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let a = parse_polynomial(" s ^ 2 -  1 ", "s").unwrap();
        assert_eq!(a, Polynomial::from_i64s(&[-1, 0, 1]));
        let b = parse_polynomial("-s+3/4*s^3 + s", "s").unwrap();
        assert_eq!(b.coeff(3), Rational::new(3, 4));
        assert_eq!(b.degree(), Some(3));
        assert!(b.coeff(1).is_zero());
        assert!(parse_polynomial("2**s", "s").is_err());
        assert!(parse_polynomial("2 s", "s").is_err());
        assert!(parse_polynomial("s^", "s").is_err());
        assert!(parse_polynomial("1/0", "s").is_err());
        assert!(parse_polynomial("", "s").is_err());
        assert!(parse_polynomial("x + 1", "s").is_err());
        assert_eq!(
            parse_polynomial("x^2", "x").unwrap(),
            Polynomial::from_i64s(&[0, 0, 1])
        );
    }
}
