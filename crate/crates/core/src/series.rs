//! Truncated formal power series with exact coefficients.
//!
//! Arithmetic results carry truncation order equal to the minimum of the
//! operand orders; composition follows the usual valuation bookkeeping.
//! The coefficient ring is generic so the same code serves ℚ(i) and the
//! one-radical extension ℚ(i)[ρ].

use crate::error::{Error, Result};
use crate::num::ComplexRational;

/// Exact coefficient ring operations needed by series arithmetic.
///
/// Constants are derived from a witness element (`zero_like`/`one_like`)
/// because some rings carry context (the radical extension stores its
/// defining relation in each element).
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, when the element is a unit the ring can
    /// invert exactly.
    fn invert(&self) -> Option<Self>;
    fn div_nat(&self, k: u32) -> Self;
}

impl Coeff for ComplexRational {
    fn zero_like(&self) -> Self {
        ComplexRational::zero()
    }
    fn one_like(&self) -> Self {
        ComplexRational::one()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn invert(&self) -> Option<Self> {
        self.inv()
    }
    fn div_nat(&self, k: u32) -> Self {
        let k = ComplexRational::from_integers(k as i64, 0);
        self * &k.inv().unwrap()
    }
}

/// Truncated series Σ_{k=0}^{N} c_k z^k, stored densely.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries<C: Coeff> {
    coeffs: Vec<C>,
}

/// Requested operation for [`series_arith`].
#[derive(Clone, Copy, Debug)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Principal n-th root of the left operand (right operand ignored).
    NthRoot(u32),
    Compose,
}

/// Binary entry point mirroring the operation table; the individual
/// methods are what the rest of the crate calls.
pub fn series_arith<C: Coeff + ConstantRoot>(
    a: &PowerSeries<C>,
    b: &PowerSeries<C>,
    op: SeriesOp,
) -> Result<PowerSeries<C>> {
    match op {
        SeriesOp::Add => Ok(a.add(b)),
        SeriesOp::Sub => Ok(a.sub(b)),
        SeriesOp::Mul => Ok(a.mul(b)),
        SeriesOp::Div => a.div(b),
        SeriesOp::NthRoot(n) => a.nth_root(n),
        SeriesOp::Compose => a.compose(b),
    }
}

impl<C: Coeff> PowerSeries<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least order 0");
        Self { coeffs }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let z = c.zero_like();
        let mut v = vec![z; order + 1];
        v[0] = c;
        Self::new(v)
    }

    fn zero_coeff(&self) -> C {
        self.coeffs[0].zero_like()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.zero_coeff())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: C) {
        self.coeffs[k] = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut v = self.coeffs.clone();
        v.truncate(order + 1);
        while v.len() < order + 1 {
            v.push(self.zero_coeff());
        }
        Self::new(v)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|k| self.coeff(k).add(&other.coeff(k))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(C::neg).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![self.zero_coeff(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                out[i + j] = out[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::constant(self.coeffs[0].one_like(), self.order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        let inv0 = c0.invert().ok_or(Error::NonUnitDivision)?;
        let n = self.order();
        let mut out = vec![self.zero_coeff(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = self.zero_coeff();
            for i in 1..=k {
                acc = acc.add(&self.coeff(i).mul(&out[k - i]));
            }
            out[k] = acc.neg().mul(&inv0);
        }
        Ok(Self::new(out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let n = self.order().min(other.order());
        Ok(self.truncate(n).mul(&other.truncate(n).invert()?))
    }

    /// Principal n-th root.  The constant term must admit an exact root in
    /// the coefficient ring.
    pub fn nth_root(&self, n: u32) -> Result<Self>
    where
        C: ConstantRoot,
    {
        let c0 = self.coeff(0);
        let r0 = C::principal_root(&c0, n).ok_or_else(|| {
            Error::InvalidInput(format!(
                "constant term {:?} has no exact principal {}-th root",
                c0, n
            ))
        })?;
        self.nth_root_with(n, r0)
    }

    /// n-th root with the constant-term root supplied by the caller.
    pub fn nth_root_with(&self, n: u32, r0: C) -> Result<Self> {
        assert!(n >= 1);
        let order = self.order();
        // r^n = self; match coefficients order by order:
        //   self_m = n·r0^{n-1}·r_m + (terms in r_1 .. r_{m-1})
        let mut r = Self::constant(r0.clone(), order);
        let mut lead = r0.one_like();
        for _ in 0..n - 1 {
            lead = lead.mul(&r0);
        }
        let mut n_elem = r0.zero_like();
        let one = r0.one_like();
        for _ in 0..n {
            n_elem = n_elem.add(&one);
        }
        let lead_inv = lead.mul(&n_elem).invert().ok_or(Error::NonUnitDivision)?;
        for m in 1..=order {
            let current = r.pow(n);
            let defect = self.coeff(m).sub(&current.coeff(m));
            r.coeffs[m] = defect.mul(&lead_inv);
        }
        Ok(r)
    }

    /// self ∘ inner; the inner series must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::InvalidComposition);
        }
        let v = match inner.valuation() {
            Some(v) => v,
            // inner ≡ 0: composition is the constant term
            None => return Ok(Self::constant(self.coeff(0), inner.order())),
        };
        let order = inner.order().min(v * (self.order() + 1) - 1);
        let inner_t = inner.truncate(order);
        let mut acc = Self::constant(self.coeff(self.order()), order);
        for k in (0..self.order()).rev() {
            acc = acc.mul(&inner_t);
            acc.coeffs[0] = acc.coeffs[0].add(&self.coeff(k));
        }
        Ok(acc)
    }
}

/// Exact principal-root selection for constant terms.
pub trait ConstantRoot: Coeff {
    fn principal_root(c: &Self, n: u32) -> Option<Self>;
}

impl ConstantRoot for ComplexRational {
    fn principal_root(c: &Self, n: u32) -> Option<Self> {
        crate::puiseux::principal_gaussian_root(c, n)
    }
}

impl PowerSeries<ComplexRational> {
    pub fn zero(order: usize) -> Self {
        Self::constant(ComplexRational::zero(), order)
    }

    /// z as a series of the given order (order ≥ 1).
    pub fn identity(order: usize) -> Self {
        assert!(order >= 1);
        let mut s = Self::zero(order);
        s.coeffs[1] = ComplexRational::one();
        s
    }

    pub fn to_complex64(&self) -> Vec<num_complex::Complex64> {
        self.coeffs.iter().map(|c| c.to_complex64()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;
    use proptest::prelude::*;

    fn cr(n: i64, d: i64) -> ComplexRational {
        ComplexRational::from_rational(rat(n, d))
    }

    fn from_ints(v: &[i64]) -> PowerSeries<ComplexRational> {
        PowerSeries::new(v.iter().map(|&k| cr(k, 1)).collect())
    }

    #[test]
    fn product_example() {
        // (1 + z)·(1 − z) at N=4 → 1 − z²
        let a = from_ints(&[1, 1, 0, 0, 0]);
        let b = from_ints(&[1, -1, 0, 0, 0]);
        let p = a.mul(&b);
        assert_eq!(p, from_ints(&[1, 0, -1, 0, 0]));
    }

    #[test]
    fn nth_root_example() {
        // sqrt(1 + z) at N=2 → 1 + z/2 − z²/8; checked by squaring.
        let s = from_ints(&[1, 1, 0]);
        let r = s.nth_root(2).unwrap();
        assert_eq!(r, PowerSeries::new(vec![cr(1, 1), cr(1, 2), cr(-1, 8)]));
        assert_eq!(r.mul(&r), s);
    }

    #[test]
    fn compose_example() {
        // (1/(1−z)) ∘ z² at N=4 → 1 + z² + z⁴
        let geo = from_ints(&[1, 1, 1, 1, 1]);
        let z2 = {
            let mut v = vec![cr(0, 1); 5];
            v[2] = cr(1, 1);
            PowerSeries::new(v)
        };
        let c = geo.compose(&z2).unwrap();
        assert_eq!(c, from_ints(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn division_requires_unit() {
        let a = from_ints(&[1, 2, 3]);
        let b = from_ints(&[0, 1, 0]);
        assert!(matches!(a.div(&b), Err(Error::NonUnitDivision)));
        let ok = a.div(&from_ints(&[1, 1, 0])).unwrap();
        assert_eq!(ok.mul(&from_ints(&[1, 1, 0])), a);
    }

    #[test]
    fn compose_requires_zero_constant() {
        let a = from_ints(&[1, 1, 1]);
        assert!(matches!(
            a.compose(&from_ints(&[1, 1, 1])),
            Err(Error::InvalidComposition)
        ));
    }

    fn arb_series() -> impl Strategy<Value = PowerSeries<ComplexRational>> {
        proptest::collection::vec((-6i64..=6, 1i64..=4), 4..=6)
            .prop_map(|v| PowerSeries::new(v.into_iter().map(|(n, d)| cr(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn ring_axioms_up_to_truncation(
            a in arb_series(),
            b in arb_series(),
            c in arb_series()
        ) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn root_round_trips(mut a in arb_series(), n in 1u32..=4) {
            // force an exact constant root: replace c0 by 1
            a.coeffs[0] = cr(1, 1);
            let r = a.nth_root(n).unwrap();
            prop_assert_eq!(r.pow(n), a);
        }

        #[test]
        fn inverse_round_trips(mut a in arb_series()) {
            a.coeffs[0] = cr(2, 3);
            let inv = a.invert().unwrap();
            let one = PowerSeries::constant(cr(1, 1), a.order());
            prop_assert_eq!(a.mul(&inv), one);
        }
    }
}
