//! Dense univariate polynomials over ℚ(i), with Euclidean division and
//! (extended) gcd.  Used by the radical coefficient ring and by the
//! polynomial Smith form behind matrix similarity.

use std::fmt;

use crate::num::ComplexRational;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    /// Coefficients by ascending degree; no trailing zeros.
    coeffs: Vec<ComplexRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<ComplexRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ComplexRational::one())
    }

    pub fn constant(c: ComplexRational) -> Self {
        Self::new(vec![c])
    }

    /// x^k
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ComplexRational::zero(); k + 1];
        coeffs[k] = ComplexRational::one();
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> ComplexRational {
        self.coeffs.get(k).cloned().unwrap_or_else(ComplexRational::zero)
    }

    pub fn coeffs(&self) -> &[ComplexRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&ComplexRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ComplexRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics on zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dlead = divisor.leading().expect("division by zero polynomial");
        let dinv = dlead.inv().unwrap();
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![
            ComplexRational::zero();
            self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1
        ];
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                break;
            }
            let factor = &rem.coeff(rdeg) * &dinv;
            let shift = rdeg - ddeg;
            quot[shift] = factor.clone();
            let sub = divisor.mul(&Self {
                coeffs: {
                    let mut m = vec![ComplexRational::zero(); shift + 1];
                    m[shift] = factor;
                    m
                },
            });
            rem = rem.sub(&sub);
        }
        (Self::new(quot), rem)
    }

    /// Divides out the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s·self + t·other = g, g monic (or zero).
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let ns = s0.sub(&q.mul(&s1));
            let nt = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, ns);
            t0 = std::mem::replace(&mut t1, nt);
        }
        match r0.leading() {
            None => (Self::zero(), Self::zero(), Self::zero()),
            Some(l) => {
                let linv = l.inv().unwrap();
                (r0.scale(&linv), s0.scale(&linv), t0.scale(&linv))
            }
        }
    }

    /// True when `other` divides `self` exactly.
    pub fn divisible_by(&self, other: &Self) -> bool {
        if other.is_zero() {
            return self.is_zero();
        }
        self.div_rem(other).1.is_zero()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> ComplexRational {
        ComplexRational::from_integers(v, 0)
    }

    fn poly(vs: &[i64]) -> Poly {
        Poly::new(vs.iter().map(|&v| c(v)).collect())
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = poly(&[1, 0, -3, 2, 5]);
        let b = poly(&[2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_multiples() {
        let g = poly(&[1, 1]); // x + 1
        let a = g.mul(&poly(&[3, 0, 1]));
        let b = g.mul(&poly(&[-2, 1]));
        assert_eq!(a.gcd(&b), g.monic());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = poly(&[1, 3, 1]);
        let b = poly(&[4, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g.degree(), Some(0)); // coprime
    }
}
