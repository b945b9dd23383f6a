//! `E(n)` surface syntax, compatible with GAP's printing of cyclotomics.
//!
//! ```text
//! expr   := ws [sign] term (ws sign ws term)* ws
//! term   := factor (ws '*' ws factor)*
//! factor := int ['/' int] | 'E(' int ')' ['^' ['-'] int]
//! sign   := '+' | '-'
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Accum, CycNum, Rat, Root};

/// Largest root order accepted by the parser.
pub const MAX_ORDER: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("column {col}: {msg}")]
pub struct ParseError {
    pub col: usize,
    pub msg: String,
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx > 0 || neg {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            if *e == 0 {
                write!(f, "{}", fmt_rat(&a))?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{}*", fmt_rat(&a))?;
            }
            write!(f, "E({})", self.n)?;
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { col: self.pos + 1, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn small(&mut self) -> Result<u64, ParseError> {
        let at = self.pos;
        let d = self.digits()?;
        d.parse::<u64>().map_err(|_| ParseError { col: at + 1, msg: "integer too large".into() })
    }

    /// One factor: a rational literal or a root of unity.
    fn factor(&mut self) -> Result<(Rat, Root), ParseError> {
        if self.eat(b'E') {
            self.expect(b'(')?;
            self.ws();
            let at = self.pos;
            let n = self.small()?;
            if n == 0 || n > MAX_ORDER {
                return Err(ParseError { col: at + 1, msg: format!("E({n}) outside 1..={MAX_ORDER}") });
            }
            self.ws();
            self.expect(b')')?;
            let mut k: i64 = 1;
            if self.eat(b'^') {
                let neg = self.eat(b'-');
                let e = (self.small()? % n) as i64;
                k = if neg { -e } else { e };
            }
            return Ok((Rat::one(), Root::new(n, k)));
        }
        let num: BigInt = self.digits()?.parse().unwrap();
        let mut den = BigInt::one();
        if self.eat(b'/') {
            let at = self.pos;
            den = self.digits()?.parse().unwrap();
            if den.is_zero() {
                return Err(ParseError { col: at + 1, msg: "zero denominator".into() });
            }
        }
        Ok((Rat::new(num, den), Root::ONE))
    }

    fn term(&mut self) -> Result<(Rat, Root), ParseError> {
        let (mut c, mut r) = self.factor()?;
        loop {
            self.ws();
            if !self.eat(b'*') {
                return Ok((c, r));
            }
            self.ws();
            let (c2, r2) = self.factor()?;
            c *= c2;
            r = r.mul(r2);
        }
    }
}

pub fn parse(s: &str) -> Result<CycNum, ParseError> {
    let mut lx = Lexer { s: s.as_bytes(), pos: 0 };
    let mut acc = Accum::new();
    lx.ws();
    if lx.peek().is_none() {
        return lx.err("empty expression");
    }
    let mut first = true;
    loop {
        lx.ws();
        let neg = if lx.eat(b'-') {
            true
        } else {
            if !lx.eat(b'+') && !first {
                return lx.err("expected '+' or '-'");
            }
            false
        };
        lx.ws();
        let (c, r) = lx.term()?;
        acc.push(r, if neg { -c } else { c });
        first = false;
        lx.ws();
        if lx.peek().is_none() {
            break;
        }
    }
    Ok(acc.finish())
}

impl FromStr for CycNum {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<CycNum, ParseError> {
        parse(s)
    }
}
