//! The normalization σ with η(z) = zσ(z) solving φ(η(z)) = z^{-n}.
//!
//! For an unramified φ with pole order n and leading coefficient aₙ, the
//! defining equation rewrites as the fixed point
//!
//!   σⁿ = Σⱼ aⱼ z^{n-j} σ^{n-j},   σ(0)ⁿ = aₙ,
//!
//! whose coefficients are solved order by order.  When aₙ has a principal
//! Gaussian-rational n-th root the series lives in ℚ(i); otherwise one
//! radical ρ with ρⁿ = aₙ is adjoined and every coefficient stays in
//! ℚ(i)[ρ] (the recurrence only ever divides by n·σ(0)^{n-1}).

use num_complex::Complex64;

use crate::bigfloat::{atan2_rational, pi, Dyadic};
use crate::error::{Error, Result};
use crate::exppoly::ExpPolynomial;
use crate::num::ComplexRational;
use crate::radical::RadicalElem;
use crate::series::{Coeff, PowerSeries};

/// The Gaussian-rational n-th root whose argument lies in (−π/n, π/n],
/// when one exists.
pub fn principal_gaussian_root(c: &ComplexRational, n: u32) -> Option<ComplexRational> {
    assert!(n >= 1);
    if c.is_zero() {
        return Some(ComplexRational::zero());
    }
    let candidates = c.gaussian_nth_roots(n);
    if candidates.is_empty() {
        return None;
    }
    if n == 1 {
        return candidates.into_iter().next();
    }
    let prec = 128;
    let bound = pi(prec).div_int(n as i64);
    let tol = Dyadic::ulp_scaled(prec, 64);
    let mut boundary_positive: Option<ComplexRational> = None;
    for cand in candidates {
        let arg = atan2_rational(cand.im(), cand.re(), prec);
        let hi = arg.sub(&bound);
        let lo = arg.add(&bound);
        if hi.abs() <= tol {
            // arg = +π/n exactly: inclusive
            boundary_positive = Some(cand);
            continue;
        }
        if lo.abs() <= tol {
            // arg = −π/n exactly: exclusive
            continue;
        }
        if !hi.is_negative() || lo.is_negative() {
            continue;
        }
        return Some(cand);
    }
    boundary_positive
}

/// σ for an unramified φ, carried exactly in ℚ(i) or in ℚ(i)[ρ].
#[derive(Clone, Debug)]
pub enum SigmaSeries {
    Exact(PowerSeries<ComplexRational>),
    Radical {
        series: PowerSeries<RadicalElem>,
        degree: u32,
        base: ComplexRational,
    },
}

impl SigmaSeries {
    pub fn order(&self) -> usize {
        match self {
            SigmaSeries::Exact(s) => s.order(),
            SigmaSeries::Radical { series, .. } => series.order(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SigmaSeries::Exact(_))
    }

    pub fn exact(&self) -> Option<&PowerSeries<ComplexRational>> {
        match self {
            SigmaSeries::Exact(s) => Some(s),
            SigmaSeries::Radical { .. } => None,
        }
    }

    /// Numeric coefficients, binding ρ to the principal numeric root.
    pub fn numeric_coeffs(&self) -> Vec<Complex64> {
        match self {
            SigmaSeries::Exact(s) => s.to_complex64(),
            SigmaSeries::Radical {
                series,
                degree,
                base,
            } => {
                let rho = base.to_complex64().powf(1.0 / *degree as f64);
                series.coeffs().iter().map(|c| c.eval_at(rho)).collect()
            }
        }
    }
}

/// Solves the fixed-point recurrence for σ to the given order.
///
/// Requires φ ≠ 0 and unramified.
pub fn sigma_solve(phi: &ExpPolynomial, order: usize) -> Result<SigmaSeries> {
    if phi.is_zero() {
        return Err(Error::ZeroPolynomial {
            context: "sigma_solve",
        });
    }
    if !phi.is_unramified() {
        return Err(Error::InvalidInput(
            "sigma_solve requires an unramified polynomial".into(),
        ));
    }
    let n = u32::try_from(phi.pole_index()).expect("pole order fits u32");
    let lead = phi.leading_coefficient().unwrap().clone();
    match principal_gaussian_root(&lead, n) {
        Some(s0) => {
            let terms: Vec<(u64, ComplexRational)> =
                phi.terms().map(|(j, c)| (j, c.clone())).collect();
            Ok(SigmaSeries::Exact(solve_in(&terms, n, s0, order)))
        }
        None => {
            let terms: Vec<(u64, RadicalElem)> = phi
                .terms()
                .map(|(j, c)| (j, RadicalElem::from_scalar(c.clone(), n, lead.clone())))
                .collect();
            let s0 = RadicalElem::rho(n, lead.clone());
            Ok(SigmaSeries::Radical {
                series: solve_in(&terms, n, s0, order),
                degree: n,
                base: lead,
            })
        }
    }
}

fn solve_in<C: Coeff>(terms: &[(u64, C)], n: u32, sigma0: C, order: usize) -> PowerSeries<C> {
    let mut lead = sigma0.one_like();
    for _ in 0..n - 1 {
        lead = lead.mul(&sigma0);
    }
    let mut n_elem = sigma0.zero_like();
    let one = sigma0.one_like();
    for _ in 0..n {
        n_elem = n_elem.add(&one);
    }
    let lead_inv = lead
        .mul(&n_elem)
        .invert()
        .expect("n·σ(0)^{n-1} is a unit");
    let mut coeffs = vec![sigma0.clone()];
    for m in 1..=order {
        let mut partial = coeffs.clone();
        partial.resize(m + 1, sigma0.zero_like());
        let sigma_hat = PowerSeries::new(partial);
        let residual = equation_residual(terms, n, &sigma_hat);
        coeffs.push(residual.coeff(m).mul(&lead_inv));
    }
    PowerSeries::new(coeffs)
}

/// Σⱼ aⱼ z^{n-j} σ^{n-j} − σⁿ at σ's truncation order.
fn equation_residual<C: Coeff>(
    terms: &[(u64, C)],
    n: u32,
    sigma: &PowerSeries<C>,
) -> PowerSeries<C> {
    let order = sigma.order();
    let mut acc = sigma.pow(n).neg();
    for (j, a) in terms {
        let e = n - *j as u32;
        let contrib = shift_up(&sigma.pow(e).scale(a), *j as usize, order, n as usize);
        acc = acc.add(&contrib);
    }
    acc
}

/// z^{n-j}·s as a series of the given order: shift by (n − j).
fn shift_up<C: Coeff>(s: &PowerSeries<C>, j: usize, order: usize, n: usize) -> PowerSeries<C> {
    let k = n - j;
    let zero = s.coeff(0).zero_like();
    let mut v = vec![zero; order + 1];
    if k <= order {
        for m in 0..=(order - k) {
            v[m + k] = s.coeff(m);
        }
    }
    PowerSeries::new(v)
}

/// Valuation of the truncated Laurent series φ(zσ(z)) − z^{-n}.
///
/// Coefficients are computable for exponents in [−n, N−n]; `Some(v)`
/// reports the first nonzero one, `None` means the residual vanishes
/// through the whole window (so the valuation is at least N−n+1, possibly
/// +∞).
pub fn eta_residual(phi: &ExpPolynomial, order: usize) -> Result<Option<i64>> {
    let sigma = sigma_solve(phi, order)?;
    let n = phi.pole_index() as i64;
    match sigma {
        SigmaSeries::Exact(s) => {
            let terms: Vec<(u64, ComplexRational)> =
                phi.terms().map(|(j, c)| (j, c.clone())).collect();
            laurent_residual_valuation(&terms, &s, n, order as i64)
        }
        SigmaSeries::Radical {
            series,
            degree,
            base,
        } => {
            let terms: Vec<(u64, RadicalElem)> = phi
                .terms()
                .map(|(j, c)| (j, RadicalElem::from_scalar(c.clone(), degree, base.clone())))
                .collect();
            laurent_residual_valuation(&terms, &series, n, order as i64)
        }
    }
}

fn laurent_residual_valuation<C: Coeff>(
    terms: &[(u64, C)],
    sigma: &PowerSeries<C>,
    n: i64,
    order: i64,
) -> Result<Option<i64>> {
    let sigma_inv = sigma.invert()?;
    // σ^{-j} for every present j
    let mut inv_pows: Vec<(i64, PowerSeries<C>)> = Vec::new();
    for (j, _) in terms {
        inv_pows.push((*j as i64, sigma_inv.pow(*j as u32)));
    }
    let one = sigma.coeff(0).one_like();
    for k in -n..=(order - n) {
        let mut acc = sigma.coeff(0).zero_like();
        for ((_, a), (j, inv_j)) in terms.iter().zip(&inv_pows) {
            let idx = k + *j;
            if (0..=order).contains(&idx) {
                acc = acc.add(&a.mul(&inv_j.coeff(idx as usize)));
            }
        }
        if k == -n {
            acc = acc.sub(&one);
        }
        if !acc.is_zero() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn p(s: &str) -> ExpPolynomial {
        s.parse().unwrap()
    }

    fn cr(n: i64, d: i64) -> ComplexRational {
        ComplexRational::from_rational(rat(n, d))
    }

    #[test]
    fn principal_root_selection() {
        // principal sqrt of -4 is 2i (argument π/2, inclusive boundary)
        let r = principal_gaussian_root(&ComplexRational::from_integers(-4, 0), 2).unwrap();
        assert_eq!(r, ComplexRational::from_integers(0, 2));
        // -8 has the Gaussian cube root -2, but the principal cube root
        // (argument π/3) is not Gaussian
        assert_eq!(
            principal_gaussian_root(&ComplexRational::from_integers(-8, 0), 3),
            None
        );
        // principal 4th root of -4 is 1+i (argument π/4, inclusive)
        let r = principal_gaussian_root(&ComplexRational::from_integers(-4, 0), 4).unwrap();
        assert_eq!(r, ComplexRational::from_integers(1, 1));
    }

    #[test]
    fn sigma_for_simple_pole_is_one() {
        let s = sigma_solve(&p("1/z"), 8).unwrap();
        let series = s.exact().unwrap();
        assert_eq!(series.coeff(0), cr(1, 1));
        for k in 1..=8 {
            assert!(series.coeff(k).is_zero(), "σ = 1 exactly for φ = 1/z");
        }
    }

    #[test]
    fn sigma_worked_example() {
        // φ = 1/z² + 1/z: σ = 1 + z/2 + z²/8; verified by substituting
        // into σ² = 1 + zσ and matching coefficients.
        let s = sigma_solve(&p("1/z^2 + 1/z"), 2).unwrap();
        let series = s.exact().unwrap().clone();
        assert_eq!(series.coeff(0), cr(1, 1));
        assert_eq!(series.coeff(1), cr(1, 2));
        assert_eq!(series.coeff(2), cr(1, 8));
        let lhs = series.mul(&series);
        let rhs = {
            // 1 + zσ
            let shifted = PowerSeries::new(vec![cr(1, 1), series.coeff(0), series.coeff(1)]);
            shifted
        };
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sigma_scaling_case() {
        // φ = 4/z²: σ = 2 exactly (principal root), zero residual.
        let s = sigma_solve(&p("4/z^2"), 1).unwrap();
        let series = s.exact().unwrap();
        assert_eq!(series.coeff(0), cr(2, 1));
        assert!(series.coeff(1).is_zero());
        assert_eq!(eta_residual(&p("4/z^2"), 8).unwrap(), None);
    }

    #[test]
    fn defining_equation_holds_through_order() {
        for (src, order) in [
            ("1/z^2 + 1/z", 12),
            // leading (1+i)³ = -2+2i admits the exact principal root 1+i
            ("(-2+2i)/z^3 - 4/z", 10),
            ("1/z^4 + i/z^2 + 1/z", 10),
        ] {
            let phi = p(src);
            let n = phi.pole_index() as u32;
            let sigma = sigma_solve(&phi, order).unwrap();
            let series = sigma.exact().expect("these leads admit exact roots");
            let terms: Vec<(u64, ComplexRational)> =
                phi.terms().map(|(j, c)| (j, c.clone())).collect();
            let res = super::equation_residual(&terms, n, series);
            for k in 0..=order {
                assert!(res.coeff(k).is_zero(), "{src}: residual at z^{k}");
            }
        }
    }

    #[test]
    fn eta_residual_examples() {
        assert_eq!(eta_residual(&p("1/z"), 8).unwrap(), None);
        // valuation ≥ 7 means nothing nonzero in the window [−2, 6]
        assert_eq!(eta_residual(&p("1/z^2 + 1/z"), 8).unwrap(), None);
    }

    #[test]
    fn eta_residual_grows_with_order() {
        // The contract: valuation ≥ N − n + 1 for every N.
        let phi = p("1/z^3 + (1+i)/z^2 + 2/z");
        for order in [6, 8, 12, 16] {
            assert_eq!(eta_residual(&phi, order).unwrap(), None, "N = {order}");
        }
    }

    #[test]
    fn radical_path_stays_exact() {
        // φ = 2/z² has no Gaussian sqrt of 2: σ(0) = ρ with ρ² = 2.
        let phi = p("2/z^2 + 1/z");
        let sigma = sigma_solve(&phi, 6).unwrap();
        assert!(!sigma.is_exact());
        // the defining identity still closes in ℚ(i)[ρ]
        assert_eq!(eta_residual(&phi, 8).unwrap(), None);
        // numeric binding: σ(0) ≈ √2
        let coeffs = sigma.numeric_coeffs();
        assert!((coeffs[0].re - 2f64.sqrt()).abs() < 1e-12);
        assert!(coeffs[0].im.abs() < 1e-12);
        // second coefficient is 1/2 (from the worked recurrence)
        assert!((coeffs[1].re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn truncated_tail_is_detected() {
        // Deliberately tiny order: window is [-n, 0] and the residual must
        // still vanish there (the construction matches the constant term).
        let phi = p("1/z^2 + 1/z");
        assert_eq!(eta_residual(&phi, 2).unwrap(), None);
    }
}
