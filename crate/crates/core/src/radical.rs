//! The ring ℚ(i)[ρ] with one radical ρ adjoined, ρⁿ = a.
//!
//! Elements are polynomials in ρ of degree < n with Gaussian-rational
//! coefficients; inversion goes through the extended Euclidean algorithm
//! in ℚ(i)[x] mod (xⁿ − a), so units invert exactly even when xⁿ − a is
//! reducible.

use num_complex::Complex64;

use crate::num::ComplexRational;
use crate::poly::Poly;
use crate::series::Coeff;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RadicalElem {
    /// Coefficients of ρ^0 .. ρ^{n-1}.
    coeffs: Vec<ComplexRational>,
    /// ρ^degree = base.
    degree: u32,
    base: ComplexRational,
}

impl RadicalElem {
    pub fn from_scalar(c: ComplexRational, degree: u32, base: ComplexRational) -> Self {
        assert!(degree >= 1 && !base.is_zero());
        let mut coeffs = vec![ComplexRational::zero(); degree as usize];
        coeffs[0] = c;
        Self {
            coeffs,
            degree,
            base,
        }
    }

    /// The radical itself.
    pub fn rho(degree: u32, base: ComplexRational) -> Self {
        assert!(degree >= 1 && !base.is_zero());
        let mut coeffs = vec![ComplexRational::zero(); degree as usize];
        if degree == 1 {
            coeffs[0] = base.clone();
        } else {
            coeffs[1] = ComplexRational::one();
        }
        Self {
            coeffs,
            degree,
            base,
        }
    }

    pub fn coeffs(&self) -> &[ComplexRational] {
        &self.coeffs
    }

    fn modulus_poly(&self) -> Poly {
        // xⁿ − base
        let mut v = vec![ComplexRational::zero(); self.degree as usize + 1];
        v[0] = -&self.base;
        v[self.degree as usize] = ComplexRational::one();
        Poly::new(v)
    }

    fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    fn from_poly(p: &Poly, degree: u32, base: &ComplexRational) -> Self {
        let mut coeffs = vec![ComplexRational::zero(); degree as usize];
        for (k, slot) in coeffs.iter_mut().enumerate() {
            *slot = p.coeff(k);
        }
        Self {
            coeffs,
            degree,
            base: base.clone(),
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            self.degree == other.degree && self.base == other.base,
            "mixed radical contexts"
        );
    }

    /// Numeric value given a numeric determination of ρ.
    pub fn eval_at(&self, rho: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * rho + c.to_complex64();
        }
        acc
    }
}

impl Coeff for RadicalElem {
    fn zero_like(&self) -> Self {
        Self::from_scalar(ComplexRational::zero(), self.degree, self.base.clone())
    }
    fn one_like(&self) -> Self {
        Self::from_scalar(ComplexRational::one(), self.degree, self.base.clone())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree,
            base: self.base.clone(),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            degree: self.degree,
            base: self.base.clone(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let n = self.degree as usize;
        let mut wide = vec![ComplexRational::zero(); 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                wide[i + j] = &wide[i + j] + &(a * b);
            }
        }
        // reduce via ρⁿ = base
        let mut coeffs = vec![ComplexRational::zero(); n];
        for (k, v) in wide.into_iter().enumerate() {
            if k < n {
                coeffs[k] = &coeffs[k] + &v;
            } else {
                coeffs[k - n] = &coeffs[k - n] + &(&v * &self.base);
            }
        }
        Self {
            coeffs,
            degree: self.degree,
            base: self.base.clone(),
        }
    }
    fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            degree: self.degree,
            base: self.base.clone(),
        }
    }
    fn invert(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = self.to_poly().ext_gcd(&self.modulus_poly());
        if g.degree() != Some(0) {
            return None;
        }
        Some(Self::from_poly(&s, self.degree, &self.base))
    }
    fn div_nat(&self, k: u32) -> Self {
        let kc = ComplexRational::from_integers(k as i64, 0);
        let inv = kc.inv().unwrap();
        Self {
            coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
            degree: self.degree,
            base: self.base.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn rho_power_reduces_to_base() {
        // ρ³ = 2+i
        let base = ComplexRational::from_integers(2, 1);
        let rho = RadicalElem::rho(3, base.clone());
        let cube = rho.mul(&rho).mul(&rho);
        assert_eq!(cube, RadicalElem::from_scalar(base.clone(), 3, base));
    }

    #[test]
    fn inversion_in_the_extension() {
        let base = ComplexRational::from_integers(3, 0);
        let rho = RadicalElem::rho(2, base.clone());
        // (1 + ρ)(1 + ρ)⁻¹ = 1, with ρ² = 3
        let one = RadicalElem::from_scalar(ComplexRational::one(), 2, base.clone());
        let e = one.add(&rho);
        let inv = e.invert().unwrap();
        assert_eq!(e.mul(&inv), one);
        // the inverse of ρ is ρ/3
        let rinv = rho.invert().unwrap();
        assert_eq!(
            rinv,
            RadicalElem {
                coeffs: vec![
                    ComplexRational::zero(),
                    ComplexRational::from_rational(rat(1, 3))
                ],
                degree: 2,
                base
            }
        );
    }

    #[test]
    fn numeric_evaluation() {
        let base = ComplexRational::from_integers(2, 0);
        let rho = RadicalElem::rho(2, base);
        let v = rho.eval_at(Complex64::new(2f64.sqrt(), 0.0));
        assert!((v.re - 2f64.sqrt()).abs() < 1e-15 && v.im == 0.0);
    }
}
