//! Semianalytic test regions: membership, boundary distance, bounding
//! radius.
//!
//! Sector, ball complement, the parabolic model sets and polygons have
//! closed-form boundary distances; sublevel sets and η-images carry a
//! conservative numeric estimate (safety factor 0.9 — distances only
//! enter growth fits through logs, so a bounded bias shifts the constant,
//! not the exponent).

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::angle::AngleExpr;
use crate::error::{Error, Result};
use crate::exppoly::{ExpPolynomial, NumericPoly};
use crate::num::{rational_to_f64, Rational};
use crate::puiseux::sigma_solve;

const TAU: f64 = std::f64::consts::TAU;

#[derive(Clone, Debug)]
pub enum RegionSpec {
    /// Open sector centered at `center` of half-amplitude ε = `half_amplitude`·π
    /// and the given radius.
    Sector {
        center: AngleExpr,
        half_amplitude: Rational,
        radius: Rational,
    },
    /// U_{c/z, A}: the complement of the closed ball of center conj(c)/(2A)
    /// and radius |c|/(2A).
    BallComplement { coeff: Complex64, level: f64 },
    /// {(x,y): |x| < 1, √(|x| − x²) < y < 1}, concentrated along π/2.
    ParabolicU1,
    /// The mirror image of U1 in the lower half plane.
    ParabolicU2,
    /// {z: Re φ(z) < A, 0 < |z| < radius}.
    Sublevel {
        poly: NumericPoly,
        phi_text: String,
        level: f64,
        radius: f64,
    },
    /// η-image of a μ_n-preimage wedge of a parabolic model set; the
    /// concentrated set along a Stokes direction of φ.
    EtaImage(EtaImageRegion),
    /// Simple polygon given by its vertices in order.
    Polygon { vertices: Vec<(f64, f64)> },
}

#[derive(Clone, Debug)]
pub struct EtaImageRegion {
    pub phi_text: String,
    pub direction: AngleExpr,
    /// Pole order of φ.
    n: u32,
    /// Stokes index 0..2n−1; even picks U1, odd picks U2.
    wedge: usize,
    /// Numeric coefficients of the truncated σ.
    sigma: Vec<Complex64>,
    /// Radius bound in the wedge coordinate.
    w_radius: f64,
    pub scale: f64,
}

fn in_u1(x: f64, y: f64) -> bool {
    x.abs() < 1.0 && y < 1.0 && y > (x.abs() - x * x).max(0.0).sqrt()
}

fn in_u2(x: f64, y: f64) -> bool {
    in_u1(x, -y)
}

/// Distance to ∂U1 for points inside U1 (exact closed form: the lower
/// boundary is a pair of half circles of radius 1/2 centered (±1/2, 0)).
fn u1_boundary_distance(x: f64, y: f64) -> f64 {
    let circle = |cx: f64| -> f64 { (((x - cx).powi(2) + y * y).sqrt() - 0.5).abs() };
    (1.0 - y)
        .min((1.0 - x).abs())
        .min((1.0 + x).abs())
        .min(circle(0.5))
        .min(circle(-0.5))
}

impl RegionSpec {
    pub fn sector(center: AngleExpr, half_amplitude: Rational, radius: Rational) -> Self {
        RegionSpec::Sector {
            center,
            half_amplitude,
            radius,
        }
    }

    pub fn sublevel(phi: &ExpPolynomial, level: f64, radius: f64) -> Result<Self> {
        Ok(RegionSpec::Sublevel {
            poly: phi.to_numeric()?,
            phi_text: phi.to_string(),
            level,
            radius,
        })
    }

    /// U_{c/z, A} as the closed-form ball complement; requires φ = c/z.
    pub fn ball_complement(phi: &ExpPolynomial, level: f64) -> Result<Self> {
        if phi.pole_index() != 1 || !phi.is_unramified() || phi.terms().count() != 1 {
            return Err(Error::InvalidInput(
                "ball complement requires φ of the form c/z".into(),
            ));
        }
        Ok(RegionSpec::BallComplement {
            coeff: phi.leading_coefficient().unwrap().to_complex64(),
            level,
        })
    }

    /// Concentrated region along the Stokes direction with index `wedge`
    /// (0..2n−1, ordered by k in the endpoint grid (τ + π/2 + kπ)/n).
    pub fn eta_image(
        phi: &ExpPolynomial,
        direction: AngleExpr,
        wedge: usize,
        scale: f64,
        order: usize,
    ) -> Result<Self> {
        if phi.is_zero() {
            return Err(Error::ZeroPolynomial {
                context: "eta_image",
            });
        }
        let n = u32::try_from(phi.pole_index()).unwrap();
        if wedge >= 2 * n as usize {
            return Err(Error::InvalidInput("wedge index out of range".into()));
        }
        let sigma = sigma_solve(phi, order)?.numeric_coeffs();
        // Coarse geometric validity estimate: the truncation tail of σ at
        // |w| = r is controlled once q·r ≤ 1/4, q = max |s_m/s_0|^{1/m}.
        let s0 = sigma[0].norm();
        let mut q: f64 = 1.0;
        for (m, c) in sigma.iter().enumerate().skip(1) {
            if c.norm() > 0.0 {
                q = q.max((c.norm() / s0).powf(1.0 / m as f64));
            }
        }
        let w_radius = scale.min(1.0) * 0.25 / q;
        Ok(RegionSpec::EtaImage(EtaImageRegion {
            phi_text: phi.to_string(),
            direction,
            n,
            wedge,
            sigma,
            w_radius,
            scale,
        }))
    }

    pub fn membership(&self, z: Complex64) -> bool {
        if z.norm_sqr() < 1e-280 {
            return false;
        }
        match self {
            RegionSpec::Sector {
                center,
                half_amplitude,
                radius,
            } => {
                let r = rational_to_f64(radius);
                if z.norm() >= r {
                    return false;
                }
                let eps = rational_to_f64(half_amplitude) * std::f64::consts::PI;
                let delta = angle_dist(z.arg(), center.to_f64());
                delta < eps
            }
            RegionSpec::BallComplement { coeff, level } => {
                let center = coeff.conj() / (2.0 * level);
                let radius = coeff.norm() / (2.0 * level);
                (z - center).norm_sqr() > radius * radius
            }
            RegionSpec::ParabolicU1 => in_u1(z.re, z.im),
            RegionSpec::ParabolicU2 => in_u2(z.re, z.im),
            RegionSpec::Sublevel {
                poly,
                level,
                radius,
                ..
            } => z.norm() < *radius && poly.eval(z).re < *level,
            RegionSpec::EtaImage(r) => r.membership(z),
            RegionSpec::Polygon { vertices } => point_in_polygon(z, vertices),
        }
    }

    /// Positive distance to the region boundary for member points; for
    /// variants without a closed form the estimate is conservative.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        let d = match self {
            RegionSpec::Sector {
                center,
                half_amplitude,
                radius,
            } => {
                let r = rational_to_f64(radius);
                let eps = rational_to_f64(half_amplitude) * std::f64::consts::PI;
                let delta1 = eps - angle_dist(z.arg(), center.to_f64());
                // distance to each edge ray: |z|·sin(angular margin), capped at |z|
                let edge = z.norm() * delta1.min(std::f64::consts::FRAC_PI_2).sin();
                edge.min(r - z.norm())
            }
            RegionSpec::BallComplement { coeff, level } => {
                let center = coeff.conj() / (2.0 * level);
                let radius = coeff.norm() / (2.0 * level);
                (z - center).norm() - radius
            }
            RegionSpec::ParabolicU1 => u1_boundary_distance(z.re, z.im),
            RegionSpec::ParabolicU2 => u1_boundary_distance(z.re, -z.im),
            RegionSpec::Sublevel {
                poly,
                level,
                radius,
                ..
            } => {
                let v = poly.eval(z);
                let grad = poly_gradient_norm(poly, z);
                let level_dist = if grad > 0.0 {
                    (level - v.re).abs() / grad
                } else {
                    f64::INFINITY
                };
                0.9 * level_dist.min(z.norm()).min(radius - z.norm())
            }
            RegionSpec::EtaImage(r) => r.boundary_distance(z),
            RegionSpec::Polygon { vertices } => polygon_boundary_distance(z, vertices),
        };
        d.max(1e-300)
    }

    /// Radius of a disk containing the region (used to seed sampling).
    pub fn bounding_radius(&self) -> f64 {
        match self {
            RegionSpec::Sector { radius, .. } => rational_to_f64(radius),
            RegionSpec::BallComplement { coeff, level } => 2.0 * coeff.norm() / level,
            RegionSpec::ParabolicU1 | RegionSpec::ParabolicU2 => std::f64::consts::SQRT_2,
            RegionSpec::Sublevel { radius, .. } => *radius,
            RegionSpec::EtaImage(r) => r.bounding_radius(),
            RegionSpec::Polygon { vertices } => vertices
                .iter()
                .map(|&(x, y)| (x * x + y * y).sqrt())
                .fold(0.0, f64::max),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            RegionSpec::Sector {
                center,
                half_amplitude,
                radius,
            } => format!(
                "sector(center={}, eps={}·π, r={})",
                center.expr_string(),
                half_amplitude,
                radius
            ),
            RegionSpec::BallComplement { coeff, level } => {
                format!("ball_complement(c={}, A={})", coeff, level)
            }
            RegionSpec::ParabolicU1 => "U1".into(),
            RegionSpec::ParabolicU2 => "U2".into(),
            RegionSpec::Sublevel {
                phi_text, level, radius, ..
            } => format!("sublevel(Re({}) < {}, |z| < {})", phi_text, level, radius),
            RegionSpec::EtaImage(r) => format!(
                "eta_image(phi={}, along={}, wedge={}, scale={})",
                r.phi_text,
                r.direction.expr_string(),
                r.wedge,
                r.scale
            ),
            RegionSpec::Polygon { vertices } => format!("polygon({} vertices)", vertices.len()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            RegionSpec::Sector {
                center,
                half_amplitude,
                radius,
            } => json!({
                "kind": "sector",
                "center_rad": center.to_f64(),
                "center_expr": center.expr_string(),
                "half_amplitude_pi": half_amplitude.to_string(),
                "radius": radius.to_string(),
            }),
            RegionSpec::BallComplement { coeff, level } => json!({
                "kind": "ball_complement",
                "coeff": format!("{}", coeff),
                "level": level,
            }),
            RegionSpec::ParabolicU1 => json!({"kind": "U1"}),
            RegionSpec::ParabolicU2 => json!({"kind": "U2"}),
            RegionSpec::Sublevel {
                phi_text, level, radius, ..
            } => json!({
                "kind": "sublevel",
                "phi": phi_text,
                "level": level,
                "radius": radius,
            }),
            RegionSpec::EtaImage(r) => json!({
                "kind": "eta_image",
                "phi": r.phi_text,
                "direction_rad": r.direction.to_f64(),
                "direction_expr": r.direction.expr_string(),
                "wedge": r.wedge,
                "scale": r.scale,
            }),
            RegionSpec::Polygon { vertices } => json!({
                "kind": "polygon",
                "vertices": vertices.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
            }),
        }
    }
}

impl EtaImageRegion {
    fn sigma_eval(&self, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.sigma.iter().rev() {
            acc = acc * w + c;
        }
        acc
    }

    fn sigma_deriv(&self, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in self.sigma.iter().enumerate().rev() {
            if m == 0 {
                break;
            }
            acc = acc * w + c * m as f64;
        }
        acc
    }

    fn eta(&self, w: Complex64) -> Complex64 {
        w * self.sigma_eval(w)
    }

    /// Newton inversion of η near 0; None if no convergence inside the
    /// validity disk.
    fn invert_eta(&self, z: Complex64) -> Option<Complex64> {
        let mut w = z / self.sigma[0];
        for _ in 0..60 {
            let f = self.eta(w) - z;
            if f.norm() <= 1e-14 * z.norm().max(1e-30) {
                return Some(w);
            }
            let fp = self.sigma_eval(w) + w * self.sigma_deriv(w);
            if fp.norm() == 0.0 {
                return None;
            }
            w -= f / fp;
            if !w.re.is_finite() || !w.im.is_finite() || w.norm() > 4.0 * self.w_radius {
                return None;
            }
        }
        None
    }

    /// Branch window for arg(w): U1 wedges live over (0, π)/n shifted by
    /// full turns, U2 wedges over (π, 2π)/n.
    fn wedge_window(&self) -> (f64, f64) {
        let n = self.n as f64;
        let j = (self.wedge / 2) as f64;
        if self.wedge % 2 == 0 {
            ((TAU * j) / n, (std::f64::consts::PI + TAU * j) / n)
        } else {
            (
                (std::f64::consts::PI + TAU * j) / n,
                (TAU + TAU * j) / n,
            )
        }
    }

    fn in_wedge(&self, w: Complex64) -> bool {
        if w.norm() >= self.w_radius {
            return false;
        }
        let u = w.powu(self.n);
        let ok_model = if self.wedge % 2 == 0 {
            in_u1(u.re, u.im)
        } else {
            in_u2(u.re, u.im)
        };
        if !ok_model {
            return false;
        }
        let (lo, hi) = self.wedge_window();
        let a = w.arg().rem_euclid(TAU);
        // compare within the window, tolerating the 2π seam
        let in_win = |a: f64| a > lo && a < hi;
        in_win(a) || in_win(a + TAU) || in_win(a - TAU)
    }

    fn membership(&self, z: Complex64) -> bool {
        match self.invert_eta(z) {
            Some(w) => self.in_wedge(w),
            None => false,
        }
    }

    /// Conservative: minimum distance to a traced boundary polyline, 0.9×.
    fn boundary_distance(&self, z: Complex64) -> f64 {
        let pts = self.boundary_polyline(600);
        let min = pts
            .iter()
            .map(|p| (z - p).norm())
            .fold(f64::INFINITY, f64::min);
        0.9 * min
    }

    /// Boundary of the wedge-and-disk region mapped through η.
    pub fn boundary_polyline(&self, samples: usize) -> Vec<Complex64> {
        let mut w_pts: Vec<Complex64> = Vec::new();
        let n = self.n as f64;
        let j = (self.wedge / 2) as f64;
        let lower = self.wedge % 2 == 1;
        let quarter = samples / 4;
        // model-set boundary in u-space, pushed through the branch root
        let mut push_u = |u: Complex64| {
            let m = u.norm();
            if m == 0.0 {
                w_pts.push(Complex64::new(0.0, 0.0));
                return;
            }
            let mut t = u.arg();
            if lower {
                t = t.rem_euclid(TAU); // (π, 2π) for lower-half points
            }
            let w = Complex64::from_polar(m.powf(1.0 / n), (t + TAU * j) / n);
            if w.norm() <= self.w_radius {
                w_pts.push(w);
            }
        };
        let flip = if lower { -1.0 } else { 1.0 };
        for k in 0..quarter {
            let t = std::f64::consts::PI * k as f64 / quarter as f64;
            // two half circles forming the cusp boundary
            push_u(Complex64::new(
                0.5 + 0.5 * t.cos(),
                flip * 0.5 * t.sin(),
            ));
            push_u(Complex64::new(
                -0.5 + 0.5 * t.cos(),
                flip * 0.5 * t.sin(),
            ));
            // top edge y = ±1 and the two side segments
            let x = -1.0 + 2.0 * k as f64 / quarter as f64;
            push_u(Complex64::new(x, flip));
            let y = k as f64 / quarter as f64;
            push_u(Complex64::new(1.0, flip * y));
            push_u(Complex64::new(-1.0, flip * y));
        }
        // clipping arc |w| = w_radius across the wedge window
        let win = self.wedge_window();
        for k in 0..=quarter {
            let a = win.0 + (win.1 - win.0) * k as f64 / quarter as f64;
            let w = Complex64::from_polar(self.w_radius, a);
            let u = w.powu(self.n);
            let inside = if self.wedge % 2 == 0 {
                in_u1(u.re, u.im)
            } else {
                in_u2(u.re, u.im)
            };
            if inside {
                w_pts.push(w);
            }
        }
        let _ = base_turn;
        w_pts.iter().map(|&w| self.eta(w)).collect()
    }

    fn bounding_radius(&self) -> f64 {
        // |η(w)| ≤ |w|·max|σ| on the validity disk; coarse bound
        let max_sigma: f64 = self.sigma.iter().map(|c| c.norm()).sum();
        1.5 * self.w_radius * max_sigma.max(1e-12)
    }
}

fn angle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn poly_gradient_norm(poly: &NumericPoly, z: Complex64) -> f64 {
    // |∇ Re φ| = |φ'(z)| for holomorphic φ
    poly.terms()
        .iter()
        .map(|&(j, c)| c * Complex64::new(-(j as f64), 0.0) * z.powi(-(j as i32) - 1))
        .sum::<Complex64>()
        .norm()
}

fn point_in_polygon(z: Complex64, vertices: &[(f64, f64)]) -> bool {
    let mut inside = false;
    let n = vertices.len();
    for i in 0..n {
        let (x1, y1) = vertices[i];
        let (x2, y2) = vertices[(i + 1) % n];
        if (y1 > z.im) != (y2 > z.im) {
            let t = (z.im - y1) / (y2 - y1);
            if z.re < x1 + t * (x2 - x1) {
                inside = !inside;
            }
        }
    }
    inside
}

fn polygon_boundary_distance(z: Complex64, vertices: &[(f64, f64)]) -> f64 {
    let n = vertices.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let (x1, y1) = vertices[i];
        let (x2, y2) = vertices[(i + 1) % n];
        let a = Complex64::new(x1, y1);
        let b = Complex64::new(x2, y2);
        let ab = b - a;
        let t = (((z - a).re * ab.re + (z - a).im * ab.im) / ab.norm_sqr()).clamp(0.0, 1.0);
        best = best.min((z - (a + ab * t)).norm());
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn u1_membership_and_distance() {
        assert!(in_u1(0.0, 0.5));
        assert!(!in_u1(0.5, 0.3)); // below the cusp curve: √(0.5−0.25) = 0.5
        assert!(!in_u1(0.0, 1.5));
        let d = u1_boundary_distance(0.0, 0.5);
        assert!(d > 0.0 && d <= 0.5);
    }

    #[test]
    fn ball_complement_matches_sublevel() {
        // U_{1/z, 1}: exterior of the ball centered (1/2, 0) radius 1/2
        let phi: ExpPolynomial = "1/z".parse().unwrap();
        let ball = RegionSpec::ball_complement(&phi, 1.0).unwrap();
        let sub = RegionSpec::sublevel(&phi, 1.0, 1e9).unwrap();
        let mut disagreements = 0;
        for i in 0..4000 {
            let x = -2.0 + 4.0 * ((i * 37) % 1000) as f64 / 1000.0;
            let y = -2.0 + 4.0 * ((i * 61) % 997) as f64 / 997.0;
            let z = Complex64::new(x, y);
            if z.norm() < 1e-6 {
                continue;
            }
            if ball.membership(z) != sub.membership(z) {
                disagreements += 1;
            }
        }
        assert_eq!(disagreements, 0);
    }

    #[test]
    fn sector_distance_positive_inside() {
        let s = RegionSpec::sector(
            AngleExpr::from_pi_multiple(rat(1, 1)),
            rat(1, 4),
            rat(1, 2),
        );
        let z = Complex64::from_polar(0.25, std::f64::consts::PI);
        assert!(s.membership(z));
        let d = s.boundary_distance(z);
        assert!(d > 0.0 && d <= 0.25);
        assert!(!s.membership(Complex64::from_polar(0.25, 0.0)));
    }

    #[test]
    fn eta_image_accepts_points_along_its_direction() {
        // φ = 1/z: single Stokes pair; wedge 0 is concentrated along π/2
        // and coincides with U1 itself (η = id).
        let phi: ExpPolynomial = "1/z".parse().unwrap();
        let dir = AngleExpr::from_pi_multiple(rat(1, 2));
        let r = RegionSpec::eta_image(&phi, dir, 0, 1.0, 16).unwrap();
        let inside = Complex64::new(0.0, 0.05);
        assert!(r.membership(inside));
        assert!(!r.membership(Complex64::new(0.2, -0.05)));
        let d = r.boundary_distance(inside);
        assert!(d > 0.0 && d < 0.1, "distance {d}");
    }

    #[test]
    fn polygon_membership() {
        let square = RegionSpec::Polygon {
            vertices: vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
        };
        assert!(square.membership(Complex64::new(0.5, 0.5)));
        assert!(!square.membership(Complex64::new(1.5, 0.5)));
        let d = square.boundary_distance(Complex64::new(0.5, 0.25));
        assert!((d - 0.25).abs() < 1e-12);
    }
}
