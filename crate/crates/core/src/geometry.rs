//! Ellipsoid parameterizations, induced metrics and the coefficient fields of
//! the Laplace-Beltrami operator.
//!
//! Two charts are used and kept separate:
//!
//! * the triaxial chart `(a sin phi cos theta, b sin phi sin theta, c cos phi)`
//!   with `phi` the polar angle from the `c` axis ([`metric_triaxial`],
//!   [`laplace_coeffs`], [`a1_coeffs`]);
//! * the chart of an ellipsoid of revolution
//!   `(a sin phi cos theta, a sin phi sin theta, b cos phi)` where `b` is the
//!   distinguished semi-axis ([`metric_biaxial`]).

use crate::error::{Error, Result};

/// Minimum distance from the poles for interior evaluations.
pub const POLE_MARGIN: f64 = 1e-8;

/// Perturbative form `a = 1 + alpha eps`, `b = 1 + beta eps`, `c = 1 + gamma eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub eps: f64,
}

/// Ellipsoid with semi-axes `a` (x), `b` (y), `c` (z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipsoidSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub perturbation: Option<Perturbation>,
}

impl EllipsoidSpec {
    pub fn from_axes(a: f64, b: f64, c: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "semi-axis {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self {
            a,
            b,
            c,
            perturbation: None,
        })
    }

    pub fn from_perturbation(alpha: f64, beta: f64, gamma: f64, eps: f64) -> Result<Self> {
        if !(eps.is_finite() && eps >= 0.0) {
            return Err(Error::InvalidInput(format!("eps must be >= 0, got {eps}")));
        }
        let mut spec = Self::from_axes(1.0 + alpha * eps, 1.0 + beta * eps, 1.0 + gamma * eps)?;
        spec.perturbation = Some(Perturbation {
            alpha,
            beta,
            gamma,
            eps,
        });
        Ok(spec)
    }

    pub fn sphere() -> Self {
        Self {
            a: 1.0,
            b: 1.0,
            c: 1.0,
            perturbation: None,
        }
    }

    pub fn axes(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// True iff `a == b` exactly (rotational symmetry about the `c` axis).
    pub fn is_biaxial(&self) -> bool {
        self.a == self.b
    }

    /// `(pair, distinguished)` semi-axes if any two axes coincide exactly.
    ///
    /// For a sphere the pair and distinguished radius are equal.
    pub fn biaxial_radii(&self) -> Option<(f64, f64)> {
        if self.a == self.b {
            Some((self.a, self.c))
        } else if self.a == self.c {
            Some((self.a, self.b))
        } else if self.b == self.c {
            Some((self.b, self.a))
        } else {
            None
        }
    }
}

/// Covariant metric components at a chart point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricAtPoint {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    /// `g11 g22 - g12^2`.
    pub d: f64,
    pub phi: f64,
    pub theta: f64,
    /// Set at the poles, where `d = 0` and the chart degenerates.
    pub degenerate: bool,
}

fn is_pole(phi: f64) -> bool {
    phi.sin().abs() < 1e-15 || phi == 0.0 || phi == std::f64::consts::PI
}

/// Metric of the triaxial chart at `(phi, theta)`.
pub fn metric_triaxial(spec: &EllipsoidSpec, phi: f64, theta: f64) -> MetricAtPoint {
    let (a2, b2, c2) = (spec.a * spec.a, spec.b * spec.b, spec.c * spec.c);
    let (sp, cp) = phi.sin_cos();
    let (st, ct) = theta.sin_cos();
    let g11 = cp * cp * (a2 * ct * ct + b2 * st * st) + c2 * sp * sp;
    let g22 = sp * sp * (a2 * st * st + b2 * ct * ct);
    let g12 = (b2 - a2) * (2.0 * phi).sin() * (2.0 * theta).sin() / 4.0;
    let pole = is_pole(phi);
    MetricAtPoint {
        g11,
        g12,
        g22,
        d: if pole { 0.0 } else { g11 * g22 - g12 * g12 },
        phi,
        theta,
        degenerate: pole,
    }
}

/// Metric of the chart of an ellipsoid of revolution with equatorial radius
/// `a` and polar (distinguished) radius `b`.
pub fn metric_biaxial(a: f64, b: f64, phi: f64) -> MetricAtPoint {
    let (sp, cp) = phi.sin_cos();
    let g11 = a * a * cp * cp + b * b * sp * sp;
    let g22 = a * a * sp * sp;
    let pole = is_pole(phi);
    MetricAtPoint {
        g11,
        g12: 0.0,
        g22,
        d: if pole { 0.0 } else { g11 * g22 },
        phi,
        theta: 0.0,
        degenerate: pole,
    }
}

/// Coefficients of `A d_phiphi + B d_phitheta + C d_thetatheta + E d_phi + F d_theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub e: f64,
    pub f: f64,
}

impl OperatorCoeffs {
    pub fn apply(&self, u: &Jet) -> f64 {
        self.a * u.phiphi
            + self.b * u.phitheta
            + self.c * u.thetatheta
            + self.e * u.phi
            + self.f * u.theta
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.a - other.a,
            self.b - other.b,
            self.c - other.c,
            self.e - other.e,
            self.f - other.f,
        ]
        .iter()
        .fold(0.0, |m, d| m.max(d.abs()))
    }
}

/// Value and partial derivatives up to second order of a function of
/// `(phi, theta)` at one point.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub phi: f64,
    pub theta: f64,
    pub phiphi: f64,
    pub phitheta: f64,
    pub thetatheta: f64,
}

fn check_interior(phi: f64) -> Result<()> {
    if !(POLE_MARGIN..=std::f64::consts::PI - POLE_MARGIN).contains(&phi) {
        return Err(Error::Domain(format!(
            "phi = {phi} is within {POLE_MARGIN:e} of a pole"
        )));
    }
    Ok(())
}

/// Laplace-Beltrami coefficient fields in the triaxial chart, with all metric
/// derivatives taken analytically.
pub fn laplace_coeffs(spec: &EllipsoidSpec, phi: f64, theta: f64) -> Result<OperatorCoeffs> {
    check_interior(phi)?;
    let (a2, b2, c2) = (spec.a * spec.a, spec.b * spec.b, spec.c * spec.c);
    let (sp, cp) = phi.sin_cos();
    let (st, ct) = theta.sin_cos();
    let (s2p, c2p) = (2.0 * phi).sin_cos();
    let (s2t, c2t) = (2.0 * theta).sin_cos();

    let m = metric_triaxial(spec, phi, theta);
    let (g11, g12, g22) = (m.g11, m.g12, m.g22);

    let g11_p = s2p * (c2 - a2 * ct * ct - b2 * st * st);
    let g11_t = cp * cp * (b2 - a2) * s2t;
    let g22_p = s2p * (a2 * st * st + b2 * ct * ct);
    let g22_t = sp * sp * (a2 - b2) * s2t;
    let g12_p = (b2 - a2) * c2p * s2t / 2.0;
    let g12_t = (b2 - a2) * s2p * c2t / 2.0;

    let d = g11 * g22 - g12 * g12;
    let d_p = g11_p * g22 + g11 * g22_p - 2.0 * g12 * g12_p;
    let d_t = g11_t * g22 + g11 * g22_t - 2.0 * g12 * g12_t;
    let d2 = d * d;

    Ok(OperatorCoeffs {
        a: g22 / d,
        b: -2.0 * g12 / d,
        c: g11 / d,
        e: g22_p / d - 0.5 * g22 * d_p / d2 - g12_t / d + 0.5 * g12 * d_t / d2,
        f: g11_t / d - 0.5 * g11 * d_t / d2 - g12_p / d + 0.5 * g12 * d_p / d2,
    })
}

/// Coefficient fields of the first-order operator `A_1` in the expansion
/// `Delta_g = A_0 + eps A_1 + O(eps^2)` for `a = 1 + alpha eps` etc.
pub fn a1_coeffs(
    alpha: f64,
    beta: f64,
    gamma: f64,
    phi: f64,
    theta: f64,
) -> Result<OperatorCoeffs> {
    check_interior(phi)?;
    let (sp, cp) = phi.sin_cos();
    let (st, ct) = theta.sin_cos();
    let (cp2, ct2) = (cp * cp, ct * ct);
    let sp2 = sp * sp;
    Ok(OperatorCoeffs {
        a: (2.0 * beta - 2.0 * alpha) * ct2 * cp2 + (2.0 * gamma - 2.0 * beta) * cp2 - 2.0 * gamma,
        b: 4.0 * (alpha - beta) * cp * st * ct / sp,
        c: ((2.0 * alpha - 2.0 * beta) * ct2 - 2.0 * alpha) / sp2,
        e: 4.0
            * (((beta - alpha) * ct2 - beta + gamma) * cp2 + 1.5 * (alpha - beta) * ct2
                - 0.5 * alpha
                + beta
                - gamma)
            * cp
            / sp,
        f: 4.0 * (beta - alpha) * st * ct / sp2,
    })
}

/// `(A_1 u)(phi, theta)` from the jet of `u` at that point.
pub fn a1_apply(alpha: f64, beta: f64, gamma: f64, u: &Jet, phi: f64, theta: f64) -> Result<f64> {
    Ok(a1_coeffs(alpha, beta, gamma, phi, theta)?.apply(u))
}
