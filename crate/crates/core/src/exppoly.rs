//! Exponential polynomials φ ∈ z^{-1/l}ℚ(i)[z^{-1/l}] in canonical form.
//!
//! A value stores a ramification index `l` and a sparse map from positive
//! `j` to the nonzero coefficient of z^{-j/l}.  Canonical form divides out
//! any common factor of `l` and all stored `j`, so equality and positive
//! proportionality reduce to map comparisons.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{rat, ComplexRational, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpPolynomial {
    ram_index: u32,
    coeffs: BTreeMap<u64, ComplexRational>,
}

/// The Katz slope n/l of a polynomial (0 exactly for φ = 0).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct KatzSlope(pub Rational);

impl fmt::Display for KatzSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl ExpPolynomial {
    pub fn zero() -> Self {
        Self {
            ram_index: 1,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds from (j, coefficient) pairs over the given ramification
    /// index, dropping zero coefficients and canonicalizing.
    pub fn from_terms(ram_index: u32, terms: impl IntoIterator<Item = (u64, ComplexRational)>) -> Self {
        assert!(ram_index >= 1);
        let mut coeffs: BTreeMap<u64, ComplexRational> = BTreeMap::new();
        for (j, c) in terms {
            assert!(j >= 1, "exponent index must be positive");
            if c.is_zero() {
                continue;
            }
            let entry = coeffs.entry(j).or_insert_with(ComplexRational::zero);
            let sum = &*entry + &c;
            if sum.is_zero() {
                coeffs.remove(&j);
            } else {
                *entry = sum;
            }
        }
        Self { ram_index, coeffs }.canonical()
    }

    /// Single term c·z^{-e} for a positive rational exponent e.
    pub fn monomial(e: &Rational, c: ComplexRational) -> Self {
        use num_traits::ToPrimitive;
        assert!(e.is_positive());
        let l = e.denom().to_u32().expect("denominator fits u32");
        let j = e.numer().to_u64().expect("numerator fits u64");
        Self::from_terms(l, [(j, c)])
    }

    fn canonical(mut self) -> Self {
        if self.coeffs.is_empty() {
            self.ram_index = 1;
            return self;
        }
        let mut g = self.ram_index as u64;
        for j in self.coeffs.keys() {
            g = g.gcd(j);
        }
        if g > 1 {
            self.ram_index = (self.ram_index as u64 / g) as u32;
            self.coeffs = self
                .coeffs
                .into_iter()
                .map(|(j, c)| (j / g, c))
                .collect();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn ram_index(&self) -> u32 {
        self.ram_index
    }

    pub fn is_unramified(&self) -> bool {
        self.ram_index == 1
    }

    /// Largest stored index (so the pole order is n/l); 0 for zero.
    pub fn pole_index(&self) -> u64 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    /// Pole order as an exact rational n/l (0 for the zero polynomial).
    pub fn pole_order(&self) -> Rational {
        rat(self.pole_index() as i64, self.ram_index.max(1) as i64)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &ComplexRational)> {
        self.coeffs.iter().map(|(&j, c)| (j, c))
    }

    pub fn coeff(&self, j: u64) -> Option<&ComplexRational> {
        self.coeffs.get(&j)
    }

    pub fn leading_coefficient(&self) -> Option<&ComplexRational> {
        self.coeffs.values().next_back()
    }

    pub fn katz_slope(&self) -> KatzSlope {
        KatzSlope(self.pole_order())
    }

    /// λ with self = λ·other for a positive rational λ, if one exists.
    /// Both zero yields λ = 1.
    pub fn positive_proportionality(&self, other: &Self) -> Option<Rational> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Some(Rational::one()),
            (true, false) | (false, true) => return None,
            _ => {}
        }
        if self.ram_index != other.ram_index {
            return None;
        }
        if self.coeffs.len() != other.coeffs.len() {
            return None;
        }
        let (j0, c0) = self.coeffs.iter().next_back().unwrap();
        let d0 = other.coeffs.get(j0)?;
        let lambda_c = c0 / d0;
        if !lambda_c.is_positive_real() {
            return None;
        }
        let lambda = lambda_c.re().clone();
        for (j, c) in &self.coeffs {
            let d = other.coeffs.get(j)?;
            let scaled = &ComplexRational::from_rational(lambda.clone()) * d;
            if &scaled != c {
                return None;
            }
        }
        Some(lambda)
    }

    /// Composition with an inverse branch of z ↦ z^l: every exponent
    /// j/l' becomes j/(l·l'), then the result is re-canonicalized.
    pub fn ramify(&self, l: u32) -> Self {
        assert!(l >= 1);
        Self {
            ram_index: self.ram_index * l,
            coeffs: self.coeffs.clone(),
        }
        .canonical()
    }

    /// Coefficientwise sum over the common ramification index.
    pub fn twist_add(&self, other: &Self) -> Self {
        let l = (self.ram_index as u64).lcm(&(other.ram_index as u64));
        let s1 = l / self.ram_index as u64;
        let s2 = l / other.ram_index as u64;
        let terms = self
            .coeffs
            .iter()
            .map(|(&j, c)| (j * s1, c.clone()))
            .chain(other.coeffs.iter().map(|(&j, c)| (j * s2, c.clone())));
        Self::from_terms(l as u32, terms)
    }

    pub fn neg(&self) -> Self {
        Self {
            ram_index: self.ram_index,
            coeffs: self.coeffs.iter().map(|(&j, c)| (j, -c)).collect(),
        }
    }

    /// Scalar multiple; canonical form is unaffected for nonzero scalars.
    pub fn scale(&self, c: &ComplexRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            ram_index: self.ram_index,
            coeffs: self.coeffs.iter().map(|(&j, v)| (j, c * v)).collect(),
        }
    }

    /// The unramified polynomial in the L-fold cover: exponent j/l of the
    /// base becomes the integer j·L/l upstairs.  Requires l | L.
    pub fn unramify_to(&self, cover: u32) -> Self {
        assert!(cover % self.ram_index == 0, "ramification must divide cover");
        let s = (cover / self.ram_index) as u64;
        Self {
            ram_index: 1,
            coeffs: self.coeffs.iter().map(|(&j, c)| (j * s, c.clone())).collect(),
        }
    }

    /// Numeric coefficient table; only unramified polynomials evaluate
    /// single-valuedly.
    pub fn to_numeric(&self) -> Result<NumericPoly> {
        if !self.is_unramified() {
            return Err(Error::InvalidInput(
                "numeric evaluation requires an unramified polynomial".into(),
            ));
        }
        Ok(NumericPoly {
            terms: self
                .coeffs
                .iter()
                .map(|(&j, c)| (j, c.to_complex64()))
                .collect(),
        })
    }
}

impl fmt::Display for ExpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&j, c) in self.coeffs.iter().rev() {
            let e = rat(j as i64, self.ram_index as i64);
            let (neg, mag) = split_sign(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_str = if mag.is_real() || mag.re().is_zero() {
                mag.to_string()
            } else {
                format!("({})", mag)
            };
            write!(f, "{}/", coeff_str)?;
            if e.is_one() {
                write!(f, "z")?;
            } else if e.is_integer() {
                write!(f, "z^{}", e.numer())?;
            } else {
                write!(f, "z^({})", e)?;
            }
        }
        Ok(())
    }
}

/// Pulls a printable minus sign off real or pure-imaginary coefficients.
fn split_sign(c: &ComplexRational) -> (bool, ComplexRational) {
    if c.is_real() {
        if c.re().is_negative() {
            return (true, -c);
        }
    } else if c.re().is_zero() && c.im().is_negative() {
        return (true, -c);
    }
    (false, c.clone())
}

impl FromStr for ExpPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_exppoly(s)
    }
}

/// Sparse numeric form Σ cⱼ z^{-j}, all exponents integers.
#[derive(Clone, Debug)]
pub struct NumericPoly {
    terms: Vec<(u64, Complex64)>,
}

impl NumericPoly {
    pub fn new(terms: Vec<(u64, Complex64)>) -> Self {
        Self {
            terms: terms.into_iter().filter(|(_, c)| c.norm_sqr() != 0.0).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pole_order(&self) -> u64 {
        self.terms.iter().map(|&(j, _)| j).max().unwrap_or(0)
    }

    pub fn terms(&self) -> &[(u64, Complex64)] {
        &self.terms
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(j, c)| c * z.powi(-(j as i32)))
            .sum()
    }

    /// Re φ(ρe^{iθ}) evaluated stably in polar form.
    pub fn re_at_polar(&self, rho: f64, theta: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(j, c)| {
                let jt = j as f64 * theta;
                rho.powi(-(j as i32)) * (c.re * jt.cos() + c.im * jt.sin())
            })
            .sum()
    }

    /// ∂/∂θ of `re_at_polar`.
    pub fn dre_dtheta_polar(&self, rho: f64, theta: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(j, c)| {
                let jt = j as f64 * theta;
                let jf = j as f64;
                rho.powi(-(j as i32)) * (-c.re * jf * jt.sin() + c.im * jf * jt.cos())
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> ExpPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples_from_grammar() {
        let a = p("1/z");
        assert_eq!(a.ram_index(), 1);
        assert_eq!(a.coeff(1), Some(&ComplexRational::one()));

        let b = p("(1+2i)/z^3 - 4/z");
        assert_eq!(b.ram_index(), 1);
        assert_eq!(b.coeff(3), Some(&ComplexRational::from_integers(1, 2)));
        assert_eq!(b.coeff(1), Some(&ComplexRational::from_integers(-4, 0)));

        let c = p("1/z^(3/2)");
        assert_eq!(c.ram_index(), 2);
        assert_eq!(c.coeff(3), Some(&ComplexRational::one()));
    }

    #[test]
    fn katz_slope_examples() {
        assert_eq!(p("1/z").katz_slope().0, rat(1, 1));
        assert_eq!(ExpPolynomial::zero().katz_slope().0, rat(0, 1));
        assert_eq!(p("1/z^(3/2)").katz_slope().0, rat(3, 2));
    }

    #[test]
    fn proportionality_examples() {
        assert_eq!(
            p("2/z^2").positive_proportionality(&p("1/z^2")),
            Some(rat(2, 1))
        );
        assert_eq!(p("1/z").positive_proportionality(&p("i/z")), None);
        // coefficient ratios 1/2 and 1 disagree (checked by direct division)
        let lhs = p("1/z + 1/z^3");
        let rhs = p("2/z + 1/z^3");
        let r1 = &lhs.coeff(1).unwrap().clone() / rhs.coeff(1).unwrap();
        let r3 = &lhs.coeff(3).unwrap().clone() / rhs.coeff(3).unwrap();
        assert_ne!(r1, r3);
        assert_eq!(lhs.positive_proportionality(&rhs), None);
    }

    #[test]
    fn ramify_examples() {
        assert_eq!(p("1/z").ramify(2), p("1/z^(1/2)"));
        assert_eq!(p("1/z^(1/2)").ramify(2), p("1/z^(1/4)"));
        // (z²)↦z composition: pole 2/2 = 1
        assert_eq!(p("1/z^2").ramify(2), p("1/z"));
        assert_eq!(p("1/z^2").ramify(2).katz_slope().0, rat(1, 1));
    }

    #[test]
    fn twist_add_examples() {
        assert_eq!(p("1/z").twist_add(&p("1/z^3")), p("1/z + 1/z^3"));
        assert!(p("1/z").twist_add(&p("-1/z")).is_zero());
        let mixed = p("1/z^(1/2)").twist_add(&p("1/z"));
        assert_eq!(mixed.ram_index(), 2);
        assert_eq!(mixed.coeff(1), Some(&ComplexRational::one()));
        assert_eq!(mixed.coeff(2), Some(&ComplexRational::one()));
    }

    #[test]
    fn printing_round_trips() {
        for s in [
            "1/z",
            "(1+2i)/z^3 - 4/z",
            "1/z^(3/2)",
            "-i/z + 1/z^2",
            "0",
            "2i/z - 1/2/z^4",
        ] {
            let a = p(s);
            let printed = a.to_string();
            assert_eq!(p(&printed), a, "round trip of {s} via {printed}");
            // printing is idempotent
            assert_eq!(p(&printed).to_string(), printed);
        }
    }

    #[test]
    fn parse_rejects_nonnegative_exponents() {
        assert!(matches!(
            "3".parse::<ExpPolynomial>(),
            Err(Error::NonNegativeExponent { .. })
        ));
        assert!(matches!(
            "1/z^(-2)".parse::<ExpPolynomial>(),
            Err(Error::NonNegativeExponent { .. })
        ));
        assert!(matches!(
            "2*z^(3)".parse::<ExpPolynomial>(),
            Err(Error::NonNegativeExponent { .. })
        ));
        assert!(matches!(
            "1/z + 5".parse::<ExpPolynomial>(),
            Err(Error::NonNegativeExponent { .. })
        ));
    }

    #[test]
    fn star_form_parses() {
        assert_eq!(p("2*z^(-3)"), p("2/z^3"));
        assert_eq!(p("(1+i)*z^(-1/2)"), p("(1+i)/z^(1/2)"));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-8i64..=8, 1i64..=8).prop_map(|(n, d)| rat(n, d))
    }

    fn small_coeff() -> impl Strategy<Value = ComplexRational> {
        (small_rational(), small_rational()).prop_map(|(re, im)| ComplexRational::new(re, im))
    }

    prop_compose! {
        fn arb_poly()(
            l in 1u32..=3,
            terms in proptest::collection::btree_map(1u64..=6, small_coeff(), 0..4)
        ) -> ExpPolynomial {
            ExpPolynomial::from_terms(l, terms)
        }
    }

    proptest! {
        #[test]
        fn canonicalization_idempotent(a in arb_poly()) {
            let again = ExpPolynomial::from_terms(
                a.ram_index(),
                a.terms().map(|(j, c)| (j, c.clone())).collect::<Vec<_>>(),
            );
            prop_assert_eq!(&again, &a);
        }

        #[test]
        fn proportionality_is_equivalence(a in arb_poly(), b in arb_poly(), lam in 1i64..=7) {
            // reflexive with λ = 1
            if !a.is_zero() {
                prop_assert_eq!(a.positive_proportionality(&a), Some(Rational::one()));
            }
            // scaling by a positive rational is detected exactly
            let lam = rat(lam, 3);
            let scaled = a.scale(&ComplexRational::from_rational(lam.clone()));
            if !a.is_zero() {
                prop_assert_eq!(scaled.positive_proportionality(&a), Some(lam.clone()));
                // symmetry gives the inverse
                prop_assert_eq!(
                    a.positive_proportionality(&scaled),
                    Some(Rational::one() / lam)
                );
            }
            // transitivity through a common comparand
            if let (Some(l1), Some(l2)) = (
                a.positive_proportionality(&b),
                b.positive_proportionality(&a),
            ) {
                prop_assert_eq!(l1 * l2, Rational::one());
            }
        }

        #[test]
        fn katz_slope_of_ramify(a in arb_poly(), l in 1u32..=4) {
            let expected = a.katz_slope().0 / rat(l as i64, 1);
            prop_assert_eq!(a.ramify(l).katz_slope().0, expected);
        }

        #[test]
        fn twist_add_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.twist_add(&b), b.twist_add(&a));
            prop_assert_eq!(
                a.twist_add(&b).twist_add(&c),
                a.twist_add(&b.twist_add(&c))
            );
            prop_assert_eq!(a.twist_add(&ExpPolynomial::zero()), a.clone());
        }
    }
}
