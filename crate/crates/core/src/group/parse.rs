//! Element-expression parser.
//!
//! Grammar (whitespace between tokens is allowed):
//!
//! ```text
//! expr := term { "*" term }
//! term := gen [ "^" integer ]
//! gen  := "X(" witt ")" | "Y(" witt ")" | "Phi(" fe ")" | "Z(" fe ")" | "I"
//! witt := fe "," fe
//! fe   := integer | "[" integer { "," integer } "]"
//! ```
//!
//! A bare integer is a prime-subfield element; a bracket list gives
//! extension-field basis coefficients.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{GroupElement, GroupError};
use crate::ring::{FqCtx, FqElement};
use crate::witt::Witt2;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: FqCtx,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T, GroupError> {
        Err(GroupError::Parse {
            pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), GroupError> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(c) if *c == ch => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(self.pos, format!("expected `{}`", ch as char)),
        }
    }

    fn integer(&mut self) -> Result<i64, GroupError> {
        self.skip_ws();
        let start = self.pos;
        let mut negative = false;
        if self.src.get(self.pos) == Some(&b'-') {
            negative = true;
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return self.err(start, "expected an integer");
        }
        let text = core::str::from_utf8(&self.src[digits_start..self.pos]).unwrap();
        let value: i64 = text
            .parse()
            .map_err(|_| GroupError::Parse {
                pos: start,
                msg: "integer out of range".to_string(),
            })?;
        Ok(if negative { -value } else { value })
    }

    /// `fe := integer | "[" integer { "," integer } "]"`.
    fn field_element(&mut self) -> Result<FqElement, GroupError> {
        if self.peek() == Some(b'[') {
            let open = self.pos;
            self.expect(b'[')?;
            let mut coeffs = Vec::new();
            loop {
                coeffs.push(self.integer()?);
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                    }
                    Some(b']') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return self.err(self.pos, "expected `,` or `]`"),
                }
            }
            if coeffs.len() > self.ctx.r() {
                return self.err(
                    open,
                    format!(
                        "{} coefficients for extension degree {}",
                        coeffs.len(),
                        self.ctx.r()
                    ),
                );
            }
            let p = self.ctx.p() as i64;
            let digits: Vec<u64> = coeffs.iter().map(|c| c.rem_euclid(p) as u64).collect();
            Ok(self.ctx.element(&digits))
        } else {
            let v = self.integer()?;
            Ok(self.ctx.from_int(v))
        }
    }

    /// `witt := fe "," fe`.
    fn witt(&mut self) -> Result<Witt2<FqElement>, GroupError> {
        let a0 = self.field_element()?;
        self.expect(b',')
            .map_err(|_| GroupError::Parse {
                pos: self.pos,
                msg: "Witt argument needs two components".to_string(),
            })?;
        let a1 = self.field_element()?;
        Ok(Witt2::new(a0, a1))
    }

    fn name(&mut self) -> Result<(usize, String), GroupError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(start, "expected a generator name");
        }
        Ok((
            start,
            core::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .to_string(),
        ))
    }

    fn gen(&mut self) -> Result<GroupElement<FqElement>, GroupError> {
        let (start, name) = self.name()?;
        match name.as_str() {
            "I" => Ok(GroupElement::identity_of(&self.ctx.zero())),
            "X" | "Y" => {
                self.expect(b'(')?;
                let w = self.witt()?;
                self.expect(b')')?;
                Ok(if name == "X" {
                    GroupElement::upper(w)
                } else {
                    GroupElement::lower(w)
                })
            }
            "Phi" => {
                self.expect(b'(')?;
                let t = self.field_element()?;
                self.expect(b')')?;
                GroupElement::torus(t)
            }
            "Z" => {
                self.expect(b'(')?;
                let s = self.field_element()?;
                self.expect(b')')?;
                Ok(GroupElement::central(s))
            }
            other => self.err(start, format!("unknown generator `{other}`")),
        }
    }

    /// `term := gen [ "^" integer ]`.
    fn term(&mut self) -> Result<GroupElement<FqElement>, GroupError> {
        let g = self.gen()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            Ok(g.pow_i(e))
        } else {
            Ok(g)
        }
    }

    fn expr(&mut self) -> Result<GroupElement<FqElement>, GroupError> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.term()?);
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err(self.pos, "unexpected trailing input");
        }
        Ok(acc)
    }
}

/// Evaluates products and powers of generators left to right.
pub fn parse_element(expr: &str, ctx: &FqCtx) -> Result<GroupElement<FqElement>, GroupError> {
    Parser {
        src: expr.as_bytes(),
        pos: 0,
        ctx: ctx.clone(),
    }
    .expr()
}
