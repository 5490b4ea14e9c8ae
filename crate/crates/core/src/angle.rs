//! Directions on the circle with symbolic endpoint expressions.
//!
//! An [`AngleExpr`] denotes `(arg(c) + m·π)/d` reduced mod 2π, where `c` is
//! an exact Gaussian rational, `m` an exact rational and `d` a positive
//! integer.  Arc endpoints produced by the leading-term analysis all have
//! this shape, so arc *lengths* often stay exact rational multiples of π
//! even though the endpoints themselves are transcendental.
//!
//! Comparisons are numeric at a configurable precision (128 bits by
//! default, escalating to 512); two angles closer than `2^{-p/2}` at the
//! highest precision are declared equal and flagged.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::bigfloat::{atan2_rational, pi, reduce_mod_2pi, Dyadic};
use crate::num::{rat, ComplexRational, Rational};

/// Precision ladder for angle comparisons.
#[derive(Clone, Copy, Debug)]
pub struct AnglePrecision {
    pub default_bits: u32,
    pub max_bits: u32,
}

impl Default for AnglePrecision {
    fn default() -> Self {
        Self {
            default_bits: 128,
            max_bits: 512,
        }
    }
}

impl AnglePrecision {
    pub fn ladder(&self) -> impl Iterator<Item = u32> {
        let mut bits = vec![self.default_bits];
        let mut b = self.default_bits;
        while b < self.max_bits {
            b = (b * 2).min(self.max_bits);
            bits.push(b);
        }
        bits.into_iter()
    }
}

/// Outcome of a tolerance-aware comparison.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AngleOrder {
    Less,
    Greater,
    /// Indistinguishable at maximum precision; flagged to the caller.
    TooClose,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AngleExpr {
    arg_of: Option<ComplexRational>,
    pi_multiple: Rational,
    divisor: u32,
}

impl AngleExpr {
    pub fn zero() -> Self {
        Self::from_pi_multiple(Rational::zero())
    }

    pub fn from_pi_multiple(q: Rational) -> Self {
        Self {
            arg_of: None,
            pi_multiple: q,
            divisor: 1,
        }
    }

    /// The direction arg(c).  Axis-aligned values are folded into the
    /// π-multiple so that exact comparisons fire on them.
    pub fn from_arg(c: &ComplexRational) -> Self {
        assert!(!c.is_zero(), "arg of zero");
        if c.im().is_zero() {
            let m = if c.re().is_positive() {
                Rational::zero()
            } else {
                rat(1, 1)
            };
            return Self::from_pi_multiple(m);
        }
        if c.re().is_zero() {
            let m = if c.im().is_positive() {
                rat(1, 2)
            } else {
                rat(-1, 2)
            };
            return Self::from_pi_multiple(m);
        }
        Self {
            arg_of: Some(c.clone()),
            pi_multiple: Rational::zero(),
            divisor: 1,
        }
    }

    pub fn divisor(&self) -> u32 {
        self.divisor
    }

    /// Adds q·π to the value.
    pub fn add_pi(&self, q: &Rational) -> Self {
        Self {
            arg_of: self.arg_of.clone(),
            pi_multiple: &self.pi_multiple + q * rat(self.divisor as i64, 1),
            divisor: self.divisor,
        }
    }

    /// Divides the value by a positive integer.
    pub fn div_int(&self, k: u32) -> Self {
        assert!(k >= 1);
        Self {
            arg_of: self.arg_of.clone(),
            pi_multiple: self.pi_multiple.clone(),
            divisor: self.divisor * k,
        }
    }

    /// Multiplies the value by a positive integer, mod 2π.
    ///
    /// The arg part is rewritten through `arg(c^k) = k·arg(c) − 2πs`; the
    /// integer wrap count `s` is recovered numerically (it is exact, so a
    /// modest precision suffices).
    pub fn mul_int(&self, k: u32) -> Self {
        assert!(k >= 1);
        let g = num_integer::gcd(k, self.divisor);
        let k2 = k / g;
        let d2 = self.divisor / g;
        match &self.arg_of {
            None => Self {
                arg_of: None,
                pi_multiple: &self.pi_multiple * rat(k2 as i64, 1),
                divisor: d2,
            },
            Some(c) => {
                if k2 == 1 {
                    return Self {
                        arg_of: Some(c.clone()),
                        pi_multiple: self.pi_multiple.clone(),
                        divisor: d2,
                    };
                }
                let ck = c.pow(k2);
                let prec = 128;
                let arg_c = atan2_rational(c.im(), c.re(), prec);
                let arg_ck = if ck.im().is_zero() || ck.re().is_zero() {
                    axis_arg(&ck, prec)
                } else {
                    atan2_rational(ck.im(), ck.re(), prec)
                };
                let two_pi = pi(prec).mul_int(2);
                let delta = arg_c.mul_int(k2 as i64).sub(&arg_ck);
                let s = (delta.to_f64() / two_pi.to_f64()).round() as i64;
                let base = Self::from_arg(&ck);
                // value = (arg(c^k2) + 2πs + pi_multiple·k2·π)/d2
                Self {
                    arg_of: base.arg_of,
                    pi_multiple: base.pi_multiple
                        + rat(2 * s, 1)
                        + &self.pi_multiple * rat(k2 as i64, 1),
                    divisor: d2,
                }
            }
        }
    }

    /// Raw (unreduced) value at the given precision.
    pub fn eval_raw(&self, prec: u32) -> Dyadic {
        let base = match &self.arg_of {
            None => Dyadic::zero(prec),
            Some(c) => atan2_rational(c.im(), c.re(), prec),
        };
        base.add(&pi(prec).mul_rational(&self.pi_multiple))
            .div_int(self.divisor as i64)
    }

    /// Value reduced to [0, 2π).
    pub fn eval(&self, prec: u32) -> Dyadic {
        reduce_mod_2pi(&self.eval_raw(prec), prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.eval(128).to_f64()
    }

    /// Difference `self − other` as an exact multiple of π, when the arg
    /// parts are identical (not reduced mod 2).
    pub fn exact_pi_diff(&self, other: &Self) -> Option<Rational> {
        match (&self.arg_of, &other.arg_of) {
            (None, None) => Some(
                &self.pi_multiple / rat(self.divisor as i64, 1)
                    - &other.pi_multiple / rat(other.divisor as i64, 1),
            ),
            (Some(a), Some(b)) if a == b && self.divisor == other.divisor => {
                Some((&self.pi_multiple - &other.pi_multiple) / rat(self.divisor as i64, 1))
            }
            _ => None,
        }
    }

    /// Exact equality mod 2π when decidable symbolically.
    pub fn exactly_equal_mod_2pi(&self, other: &Self) -> Option<bool> {
        let d = self.exact_pi_diff(other)?;
        // equal iff d ≡ 0 (mod 2)
        let half = d / rat(2, 1);
        Some(half.is_integer())
    }

    /// Angular distance in [0, π] at the given precision.
    pub fn distance(&self, other: &Self, prec: u32) -> Dyadic {
        let a = self.eval(prec);
        let b = other.eval(prec);
        let d = reduce_mod_2pi(&a.sub(&b), prec);
        let two_pi = pi(prec).mul_int(2);
        let alt = two_pi.sub(&d);
        if d < alt {
            d
        } else {
            alt
        }
    }

    /// Symbolic rendering, e.g. `(arg(1+2i)+1/2·π)/3`.
    pub fn expr_string(&self) -> String {
        match &self.arg_of {
            None => {
                let q = &self.pi_multiple / rat(self.divisor as i64, 1);
                format!("{}·π", q)
            }
            Some(c) => {
                let inner = if self.pi_multiple.is_zero() {
                    format!("arg({})", c)
                } else {
                    format!("(arg({})+{}·π)", c, self.pi_multiple)
                };
                if self.divisor == 1 {
                    inner
                } else {
                    format!("{}/{}", inner, self.divisor)
                }
            }
        }
    }
}

fn axis_arg(c: &ComplexRational, prec: u32) -> Dyadic {
    if c.im().is_zero() {
        if c.re().is_positive() {
            Dyadic::zero(prec)
        } else {
            pi(prec)
        }
    } else if c.im().is_positive() {
        pi(prec).div_int(2)
    } else {
        pi(prec).div_int(2).neg()
    }
}

impl fmt::Display for AngleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr_string())
    }
}

/// Compares two angles mod 2π with the escalation ladder.
///
/// Returns the order plus a flag that is true when escalation beyond the
/// default precision happened.
pub fn compare_angles(
    a: &AngleExpr,
    b: &AngleExpr,
    prec: &AnglePrecision,
) -> (AngleOrder, bool) {
    if let Some(true) = a.exactly_equal_mod_2pi(b) {
        return (AngleOrder::TooClose, false);
    }
    let mut escalated = false;
    for bits in prec.ladder() {
        let va = a.eval(bits);
        let vb = b.eval(bits);
        let tol = Dyadic::ulp_scaled(bits, bits / 2);
        let diff = va.sub(&vb);
        if diff.abs() > tol {
            let two_pi = pi(bits).mul_int(2);
            // Also guard against wrap-around closeness.
            if two_pi.sub(&diff.abs()) <= tol {
                escalated = true;
                continue;
            }
            return (
                if diff.is_negative() {
                    AngleOrder::Less
                } else {
                    AngleOrder::Greater
                },
                escalated,
            );
        }
        escalated = true;
    }
    (AngleOrder::TooClose, true)
}

/// A finite union of open arcs on the circle.
///
/// Each arc runs counterclockwise from `start` over a positive angular
/// `length` (an exact rational multiple of π whenever available, else a
/// numeric fallback is carried).
#[derive(Clone, Debug)]
pub struct Arc {
    pub start: AngleExpr,
    pub end: AngleExpr,
}

impl Arc {
    /// Exact length as a rational multiple of π, when expressible.
    pub fn exact_length_pi(&self) -> Option<Rational> {
        let d = self.end.exact_pi_diff(&self.start)?;
        // length is (end − start) mod 2π in (0, 2π)
        let mut v = d;
        let two = rat(2, 1);
        while v <= Rational::zero() {
            v += &two;
        }
        while v > two {
            v -= &two;
        }
        Some(v)
    }

    fn length_dyadic(&self, prec: u32) -> Dyadic {
        let s = self.start.eval(prec);
        let e = self.end.eval(prec);
        reduce_mod_2pi(&e.sub(&s), prec)
    }
}

/// Position of a direction relative to an arc set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArcPosition {
    Inside,
    Outside,
    /// Within tolerance of an endpoint (or exactly an endpoint).
    OnBoundary {
        /// True when the call had to rely on the tolerance rather than an
        /// exact symbolic match.
        precision_flagged: bool,
    },
}

#[derive(Clone, Debug)]
pub struct ArcSet {
    arcs: Vec<Arc>,
}

impl ArcSet {
    /// Builds a set from arcs, sorting by start angle.  The caller is
    /// responsible for disjointness (the constructions in this crate
    /// produce disjoint arcs).
    pub fn new(mut arcs: Vec<Arc>) -> Self {
        arcs.sort_by(|a, b| {
            a.start
                .eval(128)
                .partial_cmp(&b.start.eval(128))
                .unwrap()
        });
        Self { arcs }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// All endpoints (starts then ends interleaved per arc, then sorted).
    pub fn endpoints(&self) -> Vec<AngleExpr> {
        let mut v: Vec<AngleExpr> = Vec::new();
        for a in &self.arcs {
            v.push(a.start.clone());
            v.push(a.end.clone());
        }
        v.sort_by(|a, b| a.eval(128).partial_cmp(&b.eval(128)).unwrap());
        v
    }

    /// Total measure as an exact multiple of π when every arc admits one.
    pub fn exact_measure_pi(&self) -> Option<Rational> {
        let mut total = Rational::zero();
        for a in &self.arcs {
            total += a.exact_length_pi()?;
        }
        Some(total)
    }

    /// Locates a direction relative to the open arcs, exactly when the
    /// endpoint expressions allow it and numerically otherwise.
    pub fn locate(&self, theta: &AngleExpr, prec: &AnglePrecision) -> ArcPosition {
        // Exact endpoint hit?
        for a in &self.arcs {
            for e in [&a.start, &a.end] {
                if let Some(true) = theta.exactly_equal_mod_2pi(e) {
                    return ArcPosition::OnBoundary {
                        precision_flagged: false,
                    };
                }
            }
        }
        for bits in prec.ladder() {
            match self.locate_at(theta, bits) {
                Some(pos) => return pos,
                None => continue,
            }
        }
        ArcPosition::OnBoundary {
            precision_flagged: true,
        }
    }

    /// One-shot location at a fixed precision; None when an endpoint is
    /// within tolerance (caller escalates).
    fn locate_at(&self, theta: &AngleExpr, bits: u32) -> Option<ArcPosition> {
        let t = theta.eval(bits);
        let tol = Dyadic::ulp_scaled(bits, bits / 2);
        let two_pi = pi(bits).mul_int(2);
        for a in &self.arcs {
            let s = a.start.eval(bits);
            let len = a.length_dyadic(bits);
            // offset = (t − s) mod 2π
            let mut off = t.sub(&s);
            if off.is_negative() {
                off = off.add(&two_pi);
            }
            if off.abs() <= tol || two_pi.sub(&off).abs() <= tol {
                return None; // at start endpoint
            }
            if off.sub(&len).abs() <= tol {
                return None; // at end endpoint
            }
            if off < len {
                return Some(ArcPosition::Inside);
            }
        }
        Some(ArcPosition::Outside)
    }

    /// Numeric snapshot [(start, end)] with end ≥ start, end ≤ start+2π.
    pub fn to_f64_arcs(&self) -> Vec<(f64, f64)> {
        self.arcs
            .iter()
            .map(|a| {
                let s = a.start.eval(128).to_f64();
                let len = a.length_dyadic(128).to_f64();
                (s, s + len)
            })
            .collect()
    }
}

/// Difference `a \ closure(b)` computed numerically on [0, 2π), margin-
/// shrunk by `eps` so every returned interval is strictly inside.
pub fn numeric_difference(a: &[(f64, f64)], b: &[(f64, f64)], eps: f64) -> Vec<(f64, f64)> {
    let tau = std::f64::consts::TAU;
    // Unroll everything onto the doubled circle to avoid wrap handling.
    let mut result = Vec::new();
    for &(s, e) in a {
        let mut pieces = vec![(s, e)];
        for &(bs, be) in b {
            for shift in [-tau, 0.0, tau] {
                let (cs, ce) = (bs + shift - eps, be + shift + eps);
                let mut next = Vec::new();
                for (ps, pe) in pieces {
                    if ce <= ps || cs >= pe {
                        next.push((ps, pe));
                    } else {
                        if cs > ps {
                            next.push((ps, cs));
                        }
                        if ce < pe {
                            next.push((ce, pe));
                        }
                    }
                }
                pieces = next;
            }
        }
        result.extend(pieces.into_iter().filter(|(ps, pe)| pe - ps > 2.0 * eps));
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ComplexRational;

    fn pi_angle(n: i64, d: i64) -> AngleExpr {
        AngleExpr::from_pi_multiple(rat(n, d))
    }

    #[test]
    fn axis_args_fold_to_pi_multiples() {
        let one = ComplexRational::from_integers(1, 0);
        let neg = ComplexRational::from_integers(-3, 0);
        let i = ComplexRational::from_integers(0, 2);
        assert_eq!(AngleExpr::from_arg(&one), pi_angle(0, 1));
        assert_eq!(AngleExpr::from_arg(&neg), pi_angle(1, 1));
        assert_eq!(AngleExpr::from_arg(&i), pi_angle(1, 2));
    }

    #[test]
    fn eval_matches_f64_atan2() {
        let c = ComplexRational::from_integers(1, 2);
        let a = AngleExpr::from_arg(&c);
        let expect = (2.0f64).atan2(1.0);
        assert!((a.to_f64() - expect).abs() < 1e-14);
        let shifted = a.add_pi(&rat(1, 2)).div_int(3);
        let expect2 = (expect + std::f64::consts::PI / 2.0) / 3.0;
        assert!((shifted.to_f64() - expect2).abs() < 1e-14);
    }

    #[test]
    fn exact_diff_and_equality() {
        let a = pi_angle(1, 2);
        let b = pi_angle(5, 2);
        assert_eq!(a.exact_pi_diff(&b), Some(rat(-2, 1)));
        assert_eq!(a.exactly_equal_mod_2pi(&b), Some(true));
        let c = pi_angle(3, 2);
        assert_eq!(a.exactly_equal_mod_2pi(&c), Some(false));
    }

    #[test]
    fn mul_int_wraps_correctly() {
        // arg(1+2i)·5 mod 2π, against f64 arithmetic.
        let c = ComplexRational::from_integers(1, 2);
        let a = AngleExpr::from_arg(&c).div_int(1);
        let m = a.mul_int(5);
        let expect = (5.0 * (2.0f64).atan2(1.0)).rem_euclid(std::f64::consts::TAU);
        let got = m.to_f64().rem_euclid(std::f64::consts::TAU);
        assert!(
            (got - expect).abs() < 1e-12,
            "got {got} expect {expect}"
        );
        // Pure π-multiples stay exact.
        let p = pi_angle(1, 3).mul_int(4);
        assert_eq!(p.exact_pi_diff(&pi_angle(4, 3)), Some(rat(0, 1)));
    }

    #[test]
    fn arcset_locates() {
        let prec = AnglePrecision::default();
        let set = ArcSet::new(vec![Arc {
            start: pi_angle(1, 2),
            end: pi_angle(3, 2),
        }]);
        assert_eq!(set.locate(&pi_angle(1, 1), &prec), ArcPosition::Inside);
        assert_eq!(set.locate(&pi_angle(0, 1), &prec), ArcPosition::Outside);
        assert_eq!(
            set.locate(&pi_angle(1, 2), &prec),
            ArcPosition::OnBoundary {
                precision_flagged: false
            }
        );
        assert_eq!(
            set.exact_measure_pi(),
            Some(rat(1, 1)),
            "half circle measures π"
        );
    }

    #[test]
    fn wrapping_arc_membership() {
        let prec = AnglePrecision::default();
        // Arc from 7π/4 to π/4 (wraps through 0).
        let set = ArcSet::new(vec![Arc {
            start: pi_angle(7, 4),
            end: pi_angle(9, 4),
        }]);
        assert_eq!(set.locate(&pi_angle(0, 1), &prec), ArcPosition::Inside);
        assert_eq!(set.locate(&pi_angle(1, 1), &prec), ArcPosition::Outside);
    }

    #[test]
    fn numeric_difference_basic() {
        let a = vec![(0.5, 1.5)];
        let b = vec![(1.0, 2.0)];
        let d = numeric_difference(&a, &b, 1e-9);
        assert_eq!(d.len(), 1);
        assert!((d[0].0 - 0.5).abs() < 1e-8 && (d[0].1 - 1.0).abs() < 1e-7);
    }
}
