//! Parser for the expression grammar of exponential polynomials.
//!
//! Terms are `c/z^e` or `c*z^(-e)`, joined by `+`/`-`; `c` is a Gaussian
//! rational literal (`3`, `-1/2`, `(1+2i)`, `2i`, `i`) and `e` a positive
//! integer or a positive rational in parentheses.  The bare literal `0`
//! denotes the zero polynomial.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exppoly::ExpPolynomial;
use crate::num::{parse_complex_rational, ComplexRational, Rational};

pub fn parse_exppoly(text: &str) -> Result<ExpPolynomial> {
    if text.trim() == "0" {
        return Ok(ExpPolynomial::zero());
    }
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let terms = p.parse_expr()?;
    // Assemble over the least common ramification index.
    let mut l: u64 = 1;
    for (e, _) in &terms {
        l = num_integer::lcm(l, to_u64(e.denom(), p.pos)?);
    }
    let l_u32 = u32::try_from(l).map_err(|_| Error::Syntax {
        position: 0,
        message: "ramification index too large".into(),
    })?;
    let pairs: Vec<(u64, ComplexRational)> = terms
        .into_iter()
        .map(|(e, c)| {
            let scale = l / to_u64(e.denom(), 0).unwrap();
            Ok((to_u64(e.numer(), 0)? * scale, c))
        })
        .collect::<Result<_>>()?;
    Ok(ExpPolynomial::from_terms(l_u32, pairs))
}

fn to_u64(v: &BigInt, pos: usize) -> Result<u64> {
    use num_traits::ToPrimitive;
    v.to_u64().ok_or_else(|| Error::Syntax {
        position: pos,
        message: "exponent out of range".into(),
    })
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Syntax {
                position: self.pos,
                message: format!("expected '{}'", b as char),
            })
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn parse_expr(&mut self) -> Result<Vec<(Rational, ComplexRational)>> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                None if first => return self.err("empty expression"),
                None => break,
                Some(other) => {
                    return self.err(format!(
                        "expected '+' or '-' before next term, found '{}'",
                        other as char
                    ))
                }
            };
            first = false;
            let (e, c) = self.parse_term()?;
            out.push((e, if sign < 0 { -&c } else { c }));
            if self.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }

    /// One unsigned term; returns (exponent of z^{-e}, coefficient).
    fn parse_term(&mut self) -> Result<(Rational, ComplexRational)> {
        let c = self.parse_coeff()?;
        match self.peek() {
            Some(b'/') => {
                self.pos += 1;
                let e = self.parse_z_power()?;
                if !e.is_positive() {
                    return Err(Error::NonNegativeExponent {
                        exponent: format!("{}", -e),
                    });
                }
                Ok((e, c))
            }
            Some(b'*') => {
                self.pos += 1;
                let e = self.parse_z_power()?;
                // c*z^(-e): the stored exponent of z^{-1} is -e.
                if !e.is_negative() {
                    return Err(Error::NonNegativeExponent {
                        exponent: format!("{}", e),
                    });
                }
                Ok((-e, c))
            }
            _ => Err(Error::NonNegativeExponent {
                exponent: "0 (constant term)".into(),
            }),
        }
    }

    /// `z`, `z^k`, or `z^(±p/q)`; returns the written exponent of z.
    fn parse_z_power(&mut self) -> Result<Rational> {
        if self.peek() != Some(b'z') {
            return self.err("expected 'z'");
        }
        self.pos += 1;
        if self.peek() != Some(b'^') {
            return Ok(Rational::one());
        }
        self.pos += 1;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let neg = if self.peek() == Some(b'-') {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let num = self.parse_uint()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.parse_uint()?;
                    if d.is_zero() {
                        return self.err("zero denominator in exponent");
                    }
                    d
                } else {
                    BigInt::one()
                };
                self.expect(b')')?;
                let q = Rational::new(num, den);
                Ok(if neg { -q } else { q })
            }
            Some(d) if d.is_ascii_digit() => {
                let n = self.parse_uint()?;
                Ok(Rational::from(n))
            }
            _ => self.err("expected exponent after '^'"),
        }
    }

    /// Coefficient literal: parenthesized Gaussian rational, or an
    /// unsigned simple literal (`i`, `digits[/digits][i]`).  The division
    /// slash is only consumed when followed by a digit, so `2/z` parses as
    /// coefficient 2 over z.
    fn parse_coeff(&mut self) -> Result<ComplexRational> {
        match self.peek() {
            Some(b'(') => {
                let start = self.pos;
                let mut depth = 0usize;
                let mut end = None;
                for (i, &b) in self.bytes[self.pos..].iter().enumerate() {
                    if b == b'(' {
                        depth += 1;
                    } else if b == b')' {
                        depth -= 1;
                        if depth == 0 {
                            end = Some(self.pos + i);
                            break;
                        }
                    }
                }
                let end = end.ok_or(Error::Syntax {
                    position: start,
                    message: "unbalanced parenthesis".into(),
                })?;
                let slice = std::str::from_utf8(&self.bytes[start..=end]).unwrap();
                let v = parse_complex_rational(slice).map_err(|e| match e {
                    Error::Syntax { position, message } => Error::Syntax {
                        position: start + position,
                        message,
                    },
                    other => other,
                })?;
                self.pos = end + 1;
                Ok(v)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(ComplexRational::i())
            }
            Some(d) if d.is_ascii_digit() => {
                let num = self.parse_uint()?;
                let mut den = BigInt::one();
                if self.bytes.get(self.pos) == Some(&b'/')
                    && self
                        .bytes
                        .get(self.pos + 1)
                        .is_some_and(|b| b.is_ascii_digit())
                {
                    self.pos += 1;
                    den = self.parse_uint()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                }
                let r = Rational::new(num, den);
                if self.bytes.get(self.pos) == Some(&b'i') {
                    self.pos += 1;
                    Ok(ComplexRational::new(Rational::zero(), r))
                } else {
                    Ok(ComplexRational::from_rational(r))
                }
            }
            _ => self.err("expected a coefficient"),
        }
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .unwrap())
    }
}
