//! Exact Gaussian-rational arithmetic: the coefficient field for everything
//! that must be decided exactly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds a rational from an integer pair; panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// An element of ℚ(i), stored as exact real and imaginary rationals.
///
/// All four field operations are exact and closed; equality is decidable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComplexRational {
    re: Rational,
    im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        Self::new(rat(re, 1), rat(im, 1))
    }

    pub fn from_rational(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn zero() -> Self {
        Self::from_integers(0, 0)
    }

    pub fn one() -> Self {
        Self::from_integers(1, 0)
    }

    pub fn i() -> Self {
        Self::from_integers(0, 1)
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True iff the value lies on the strictly positive real axis.
    pub fn is_positive_real(&self) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// |z|² as an exact rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Exact n-th roots within ℚ(i) itself.
    ///
    /// If `self = c^n` for some Gaussian rational `c`, all such `c` are
    /// `c₀·u` with `u` a fourth root of unity satisfying `uⁿ = 1`; the list
    /// returned enumerates them (possibly empty).
    pub fn gaussian_nth_roots(&self, n: u32) -> Vec<Self> {
        assert!(n >= 1);
        if self.is_zero() {
            return vec![Self::zero()];
        }
        let c0 = match self.principal_gaussian_nth_root_candidate(n) {
            Some(c) => c,
            None => return Vec::new(),
        };
        let mut out = Vec::new();
        let units = [
            Self::one(),
            Self::from_integers(-1, 0),
            Self::i(),
            Self::from_integers(0, -1),
        ];
        for u in units {
            if u.pow(n) == Self::one() {
                let cand = &c0 * &u;
                if cand.pow(n) == *self {
                    out.push(cand);
                }
            }
        }
        out
    }

    /// One Gaussian-rational n-th root of `self`, if any exists.
    ///
    /// Works by factoring out denominators and searching integer Gaussian
    /// divisors of bounded norm; exact because norms multiply.
    fn principal_gaussian_nth_root_candidate(&self, n: u32) -> Option<Self> {
        // Clear denominators: self = (a + bi)/d with a, b, d ∈ ℤ.  A root
        // c = (p + qi)/e must satisfy (p+qi)^n d = (a+bi) e^n; take e = d,
        // then (p+qi)^n = (a+bi) d^(n-1).
        let d = lcm_bigint(self.re.denom(), self.im.denom());
        let a = self.re.numer() * (&d / self.re.denom());
        let b = self.im.numer() * (&d / self.im.denom());
        let scale = pow_bigint(&d, n - 1);
        let ta = &a * &scale;
        let tb = &b * &scale;
        // Want Gaussian integer root of ta + tb·i.  Its norm must be an
        // exact n-th power.
        let norm: BigInt = &ta * &ta + &tb * &tb;
        let root_norm = integer_nth_root(&norm, n)?;
        if pow_bigint(&root_norm, n) != norm {
            return None;
        }
        // |p + qi|² = root_norm; enumerate p with p² ≤ root_norm.
        let mut p = BigInt::zero();
        loop {
            let p2 = &p * &p;
            if p2 > root_norm {
                return None;
            }
            let q2 = &root_norm - &p2;
            if let Some(q) = integer_nth_root(&q2, 2) {
                if &q * &q == q2 {
                    for (sp, sq) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let cand_int = ComplexRational::new(
                            Rational::from(&p * BigInt::from(sp)),
                            Rational::from(&q * BigInt::from(sq)),
                        );
                        let target = ComplexRational::new(
                            Rational::from(ta.clone()),
                            Rational::from(tb.clone()),
                        );
                        if cand_int.pow(n) == target {
                            let e = Rational::from(d.clone());
                            return Some(ComplexRational::new(
                                cand_int.re / e.clone(),
                                cand_int.im / e,
                            ));
                        }
                    }
                }
            }
            p += 1;
        }
    }
}

fn pow_bigint(b: &BigInt, n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..n {
        acc *= b;
    }
    acc
}

fn lcm_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

/// Floor of the n-th root for nonnegative input, or None if negative;
/// exact (integer Newton iteration).
fn integer_nth_root(v: &BigInt, n: u32) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    if v.is_zero() || v.is_one() {
        return Some(v.clone());
    }
    let n_big = BigInt::from(n);
    let mut x: BigInt = BigInt::one() << (v.bits() / n as u64 + 1);
    loop {
        // x_{k+1} = ((n-1)x + v / x^(n-1)) / n
        let xp = pow_bigint(&x, n - 1);
        let next: BigInt = ((&n_big - 1) * &x + v / &xp) / &n_big;
        if next >= x {
            break;
        }
        x = next;
    }
    Some(x)
}

/// Converts an exact rational to the nearest f64 without overflowing on
/// large numerators or denominators.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Fall back to scaling both parts down by a common power of two.
    let shift = (r.numer().bits().max(r.denom().bits()) as i64 - 900).max(0) as u64;
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

impl Add for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &ComplexRational {
    type Output = ComplexRational;
    fn div(self, rhs: &ComplexRational) -> ComplexRational {
        let inv = rhs.inv().expect("division by zero ComplexRational");
        self * &inv
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let imag = |f: &mut fmt::Formatter<'_>, v: &Rational| -> fmt::Result {
            if v.is_one() {
                write!(f, "i")
            } else if (-v).is_one() {
                write!(f, "-i")
            } else {
                write!(f, "{}i", v)
            }
        };
        if self.re.is_zero() {
            return imag(f, &self.im);
        }
        write!(f, "{}", self.re)?;
        if self.im.is_positive() {
            write!(f, "+")?;
        }
        imag(f, &self.im)
    }
}

impl fmt::Debug for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a Gaussian rational literal: `3`, `-1/2`, `2i`, `i`, `1+2i`,
/// `(1-2/3i)`.  Surrounding parentheses and spaces are accepted.
pub fn parse_complex_rational(text: &str) -> Result<ComplexRational> {
    let s = text.trim();
    let inner = if s.starts_with('(') && s.ends_with(')') {
        &s[1..s.len() - 1]
    } else {
        s
    };
    let mut p = LiteralParser {
        bytes: inner.as_bytes(),
        pos: 0,
    };
    let v = p.parse_complex()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(Error::Syntax {
            position: p.pos,
            message: "trailing characters in number literal".into(),
        });
    }
    Ok(v)
}

struct LiteralParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl LiteralParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse_complex(&mut self) -> Result<ComplexRational> {
        let mut acc = ComplexRational::zero();
        let mut saw_real = false;
        let mut saw_imag = false;
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
                None if first => {
                    return Err(Error::Syntax {
                        position: self.pos,
                        message: "empty number literal".into(),
                    })
                }
                None => break,
                Some(_) => {
                    return Err(Error::Syntax {
                        position: self.pos,
                        message: "expected '+' or '-' between number terms".into(),
                    })
                }
            };
            first = false;
            let (mag, is_imag) = self.parse_term()?;
            let signed = if sign < 0 { -mag } else { mag };
            if is_imag {
                if saw_imag {
                    return Err(Error::Syntax {
                        position: self.pos,
                        message: "more than one imaginary term".into(),
                    });
                }
                saw_imag = true;
                acc = ComplexRational::new(acc.re, signed);
            } else {
                if saw_real {
                    return Err(Error::Syntax {
                        position: self.pos,
                        message: "more than one real term".into(),
                    });
                }
                saw_real = true;
                acc = ComplexRational::new(signed, acc.im);
            }
            if self.peek().is_none() {
                break;
            }
        }
        Ok(acc)
    }

    /// One unsigned term: `i`, `digits[/digits][i]`.
    fn parse_term(&mut self) -> Result<(Rational, bool)> {
        self.skip_ws();
        if self.peek() == Some(b'i') {
            self.pos += 1;
            return Ok((Rational::one(), true));
        }
        let num = self.parse_uint()?;
        let den = if self.peek() == Some(b'/') {
            self.pos += 1;
            let d = self.parse_uint()?;
            if d.is_zero() {
                return Err(Error::Syntax {
                    position: self.pos,
                    message: "zero denominator".into(),
                });
            }
            d
        } else {
            BigInt::one()
        };
        let is_imag = if self.peek() == Some(b'i') {
            self.pos += 1;
            true
        } else {
            false
        };
        Ok((Rational::new(num, den), is_imag))
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Syntax {
                position: start,
                message: "expected digits".into(),
            });
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cr(re: i64, im: i64) -> ComplexRational {
        ComplexRational::from_integers(re, im)
    }

    #[test]
    fn field_ops_exact() {
        let a = cr(1, 2);
        let b = cr(3, -1);
        let prod = &a * &b;
        assert_eq!(prod, cr(5, 5));
        let back = &prod / &b;
        assert_eq!(back, a);
        assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn parse_literals() {
        assert_eq!(parse_complex_rational("3").unwrap(), cr(3, 0));
        assert_eq!(
            parse_complex_rational("-1/2").unwrap(),
            ComplexRational::new(rat(-1, 2), rat(0, 1))
        );
        assert_eq!(parse_complex_rational("2i").unwrap(), cr(0, 2));
        assert_eq!(parse_complex_rational("i").unwrap(), cr(0, 1));
        assert_eq!(parse_complex_rational("-i").unwrap(), cr(0, -1));
        assert_eq!(parse_complex_rational("(1+2i)").unwrap(), cr(1, 2));
        assert_eq!(parse_complex_rational("1 - 2i").unwrap(), cr(1, -2));
        assert_eq!(
            parse_complex_rational("2/3i").unwrap(),
            ComplexRational::new(rat(0, 1), rat(2, 3))
        );
        assert!(parse_complex_rational("1+2i+3").is_err());
        assert!(parse_complex_rational("1/0").is_err());
    }

    #[test]
    fn display_round_trips() {
        for v in [
            cr(0, 0),
            cr(3, 0),
            cr(0, 1),
            cr(0, -1),
            cr(1, 2),
            cr(-1, -2),
            ComplexRational::new(rat(-1, 2), rat(2, 3)),
        ] {
            let s = v.to_string();
            assert_eq!(parse_complex_rational(&s).unwrap(), v, "round trip {s}");
        }
    }

    #[test]
    fn gaussian_roots() {
        // 4 = 2², (-4) has square roots ±2i.
        let four = cr(4, 0);
        let roots = four.gaussian_nth_roots(2);
        assert!(roots.contains(&cr(2, 0)) && roots.contains(&cr(-2, 0)));
        let neg_four = cr(-4, 0);
        let roots = neg_four.gaussian_nth_roots(2);
        assert!(roots.contains(&cr(0, 2)) && roots.contains(&cr(0, -2)));
        // 2i = (1+i)², -8 has no Gaussian cube root with principal argument,
        // but -2 is a cube root of -8.
        let two_i = cr(0, 2);
        assert!(two_i.gaussian_nth_roots(2).contains(&cr(1, 1)));
        assert!(cr(-8, 0).gaussian_nth_roots(3).contains(&cr(-2, 0)));
        // 3 has no rational square root.
        assert!(cr(3, 0).gaussian_nth_roots(2).is_empty());
    }

    #[test]
    fn nth_root_of_fraction() {
        let v = ComplexRational::new(rat(9, 4), rat(0, 1));
        let roots = v.gaussian_nth_roots(2);
        assert!(roots.contains(&ComplexRational::new(rat(3, 2), rat(0, 1))));
    }
}
