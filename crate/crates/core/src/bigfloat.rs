//! Dyadic fixed-point arithmetic at configurable precision.
//!
//! Angle expressions involve arguments of Gaussian rationals, which are
//! generally transcendental; they are evaluated here as `mant · 2^{-prec}`
//! with deterministic rounding, so a fixed precision always reproduces the
//! same bits.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::num::Rational;

/// Guard bits added to intermediate computations.
const GUARD: u32 = 32;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dyadic {
    mant: BigInt,
    prec: u32,
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        assert_eq!(self.prec, other.prec, "comparing mixed precisions");
        self.mant.cmp(&other.mant)
    }
}

impl Dyadic {
    pub fn zero(prec: u32) -> Self {
        Self {
            mant: BigInt::zero(),
            prec,
        }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let mant = (r.numer() << prec) / r.denom();
        Self { mant, prec }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Self {
            mant: BigInt::from(v) << prec,
            prec,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -self.mant.clone(),
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.prec, other.prec);
        Self {
            mant: &self.mant + &other.mant,
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.prec, other.prec);
        Self {
            mant: &self.mant - &other.mant,
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.prec, other.prec);
        Self {
            mant: (&self.mant * &other.mant) >> self.prec,
            prec: self.prec,
        }
    }

    pub fn div_int(&self, k: i64) -> Self {
        Self {
            mant: &self.mant / BigInt::from(k),
            prec: self.prec,
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Self {
            mant: &self.mant * BigInt::from(k),
            prec: self.prec,
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        Self {
            mant: (&self.mant * r.numer()) / r.denom(),
            prec: self.prec,
        }
    }

    /// 2^{-k} at this precision.
    pub fn ulp_scaled(prec: u32, k: u32) -> Self {
        assert!(k <= prec);
        Self {
            mant: BigInt::from(1) << (prec - k),
            prec,
        }
    }

    /// Rounds to a lower precision (truncation toward zero).
    pub fn round_to(&self, prec: u32) -> Self {
        assert!(prec <= self.prec);
        Self {
            mant: &self.mant / (BigInt::from(1) << (self.prec - prec)),
            prec,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits();
        if bits <= 900 {
            return self.mant.to_f64().unwrap_or(f64::NAN)
                * 2f64.powi(-(self.prec as i32));
        }
        let shift = bits - 64;
        let head = (&self.mant >> shift).to_f64().unwrap_or(f64::NAN);
        head * 2f64.powi(shift as i32 - self.prec as i32)
    }

    /// Decimal rendering with enough digits to carry the precision.
    pub fn to_decimal_string(&self) -> String {
        let digits = (self.prec as f64 * 0.30103).ceil() as u32 + 1;
        let scale = BigInt::from(10).pow(digits);
        let scaled = (&self.mant * &scale) >> self.prec;
        let neg = scaled.is_negative();
        let s = scaled.abs().to_string();
        let s = if s.len() <= digits as usize {
            format!("0.{:0>width$}", s, width = digits as usize)
        } else {
            let (int_part, frac) = s.split_at(s.len() - digits as usize);
            format!("{int_part}.{frac}")
        };
        if neg {
            format!("-{s}")
        } else {
            s
        }
    }
}

/// π at the requested precision (Machin's formula, integer arithmetic).
pub fn pi(prec: u32) -> Dyadic {
    let p = prec + GUARD;
    let a = atan_inv_int(5, p);
    let b = atan_inv_int(239, p);
    let mant = a.mant.clone() * 16 - b.mant * 4;
    Dyadic { mant, prec: p }.round_to(prec)
}

/// arctan(1/k) for integer k ≥ 2, via the alternating series.
fn atan_inv_int(k: i64, prec: u32) -> Dyadic {
    let k2 = BigInt::from(k) * BigInt::from(k);
    let mut term = (BigInt::from(1) << prec) / BigInt::from(k);
    let mut sum = term.clone();
    let mut n: i64 = 1;
    while !term.is_zero() {
        term /= &k2;
        if term.is_zero() {
            break;
        }
        let contrib = &term / BigInt::from(2 * n + 1);
        if n % 2 == 1 {
            sum -= contrib;
        } else {
            sum += contrib;
        }
        n += 1;
    }
    Dyadic { mant: sum, prec }
}

/// arctan of an exact rational, any magnitude.
pub fn atan_rational(q: &Rational, prec: u32) -> Dyadic {
    let p = prec + GUARD;
    let r = atan_reduced(q, p);
    r.round_to(prec)
}

fn atan_reduced(q: &Rational, p: u32) -> Dyadic {
    if q.is_negative() {
        return atan_reduced(&-q.clone(), p).neg();
    }
    let one = Rational::from(BigInt::from(1));
    if q > &one {
        // atan(q) = π/2 − atan(1/q)
        let half_pi = pi_at(p).div_int(2);
        let inv = one / q.clone();
        return half_pi.sub(&atan_reduced(&inv, p));
    }
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    if q > &half {
        // atan(q) = atan(1/2) + atan((2q−1)/(2+q))
        let two = Rational::from(BigInt::from(2));
        let t = (q * two.clone() - one) / (two + q.clone());
        return atan_series(&half, p).add(&atan_series(&t, p));
    }
    atan_series(q, p)
}

fn pi_at(p: u32) -> Dyadic {
    let a = atan_inv_int(5, p);
    let b = atan_inv_int(239, p);
    Dyadic {
        mant: a.mant * 16 - b.mant.clone() * 4,
        prec: p,
    }
}

/// Taylor series, valid (and fast) for |q| ≤ 1/2.
fn atan_series(q: &Rational, p: u32) -> Dyadic {
    let x = Dyadic::from_rational(q, p);
    let x2 = x.mul(&x);
    let mut term = x.clone();
    let mut sum = x;
    let mut n: i64 = 1;
    loop {
        term = term.mul(&x2);
        if term.mant.is_zero() {
            break;
        }
        let contrib = term.div_int(2 * n + 1);
        if contrib.mant.is_zero() {
            break;
        }
        if n % 2 == 1 {
            sum = sum.sub(&contrib);
        } else {
            sum = sum.add(&contrib);
        }
        n += 1;
    }
    sum
}

/// Principal argument of the exact point (x, y), in (−π, π].
///
/// Requires (x, y) ≠ (0, 0).
pub fn atan2_rational(y: &Rational, x: &Rational, prec: u32) -> Dyadic {
    assert!(!(x.is_zero() && y.is_zero()), "atan2 of origin");
    if x.is_zero() {
        let half_pi = pi(prec).div_int(2);
        return if y.is_positive() {
            half_pi
        } else {
            half_pi.neg()
        };
    }
    if y.is_zero() {
        return if x.is_positive() {
            Dyadic::zero(prec)
        } else {
            pi(prec)
        };
    }
    let base = atan_rational(&(y / x), prec);
    if x.is_positive() {
        base
    } else if y.is_positive() {
        base.add(&pi(prec))
    } else {
        base.sub(&pi(prec))
    }
}

/// Reduces a dyadic value to [0, 2π) at its own precision.
pub fn reduce_mod_2pi(v: &Dyadic, prec: u32) -> Dyadic {
    use num_integer::Integer;
    let two_pi = pi(prec).mul_int(2);
    let mut m = v.mant.clone();
    let q: BigInt = m.div_floor(&two_pi.mant);
    m -= q * &two_pi.mant;
    Dyadic { mant: m, prec }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn pi_matches_f64() {
        let p = pi(128);
        assert!((p.to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn pi_decimal_digits() {
        let s = pi(256).to_decimal_string();
        assert!(s.starts_with("3.14159265358979323846264338327950288419716939937510"));
    }

    #[test]
    fn atan_known_values() {
        // atan(1) = π/4
        let a = atan_rational(&rat(1, 1), 192);
        let quarter_pi = pi(192).div_int(4);
        let diff = a.sub(&quarter_pi).abs();
        assert!(diff < Dyadic::ulp_scaled(192, 180));
        // atan(-1) = -atan(1), exactly by the sign-symmetric reduction
        let b = atan_rational(&rat(-1, 1), 192);
        assert_eq!(b, a.neg());
    }

    #[test]
    fn atan2_quadrants() {
        let cases = [
            (rat(1, 1), rat(1, 1), std::f64::consts::FRAC_PI_4),
            (rat(1, 1), rat(-1, 1), 3.0 * std::f64::consts::FRAC_PI_4),
            (rat(-1, 1), rat(-1, 1), -3.0 * std::f64::consts::FRAC_PI_4),
            (rat(-1, 1), rat(1, 1), -std::f64::consts::FRAC_PI_4),
            (rat(1, 1), rat(0, 1), std::f64::consts::FRAC_PI_2),
            (rat(0, 1), rat(-5, 1), std::f64::consts::PI),
        ];
        for (y, x, expect) in cases {
            let v = atan2_rational(&y, &x, 128).to_f64();
            assert!((v - expect).abs() < 1e-14, "atan2({y},{x}) = {v}");
        }
    }

    #[test]
    fn precision_is_reproducible() {
        let a = atan2_rational(&rat(2, 1), &rat(1, 1), 128);
        let b = atan2_rational(&rat(2, 1), &rat(1, 1), 128);
        assert_eq!(a, b);
        // Higher precision agrees on shared leading bits.
        let c = atan2_rational(&rat(2, 1), &rat(1, 1), 512);
        let diff = c.round_to(128).sub(&a).abs();
        assert!(diff <= Dyadic::ulp_scaled(128, 120));
    }

    #[test]
    fn mod_2pi_reduction() {
        let prec = 128;
        let v = Dyadic::from_rational(&rat(100, 1), prec);
        let r = reduce_mod_2pi(&v, prec);
        let f = r.to_f64();
        assert!((0.0..std::f64::consts::TAU).contains(&f));
        assert!((f - 100.0f64.rem_euclid(std::f64::consts::TAU)).abs() < 1e-12);
    }
}
