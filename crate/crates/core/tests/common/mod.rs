//! Independent oracles shared by the integration and acceptance tests.
//!
//! Harmonics are built here from the Rodrigues formula with explicit
//! polynomial arithmetic and normalized by quadrature, so none of the library's
//! Legendre recurrences are involved.
#![allow(dead_code)]

use std::f64::consts::PI;

use ellipsoid_lb::geometry::{a1_apply, Jet};
use ellipsoid_lb::perturbation::{Family, ModeIndex};
use ellipsoid_lb::special_fn::gauss_legendre;

/// Polynomial in `t`, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly(pub Vec<f64>);

impl Poly {
    pub fn eval(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![0.0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly(self.0.iter().map(|c| c * s).collect())
    }
}

/// `(1 - t^2)^l` expanded.
pub fn one_minus_t2_pow(l: usize) -> Poly {
    let mut p = Poly(vec![1.0]);
    for _ in 0..l {
        p = p.mul(&Poly(vec![1.0, 0.0, -1.0]));
    }
    p
}

/// Literal `Q_l^m(t) = (1-t^2)^{m/2} d^{l+m}/dt^{l+m} (1-t^2)^l`.
pub fn q_literal(l: usize, m: usize, t: f64) -> f64 {
    let mut p = one_minus_t2_pow(l);
    for _ in 0..(l + m) {
        p = p.derivative();
    }
    (1.0 - t * t).powf(m as f64 / 2.0) * p.eval(t)
}

/// Function of `phi` written as `sum_k sin(phi)^k q_k(cos phi)`.
#[derive(Debug, Clone)]
pub struct SinPoly(pub Vec<(usize, Poly)>);

impl SinPoly {
    pub fn eval(&self, phi: f64) -> f64 {
        let (s, t) = (phi.sin(), phi.cos());
        self.0
            .iter()
            .map(|(k, q)| s.powi(*k as i32) * q.eval(t))
            .sum()
    }

    /// `d/dphi [s^k q(t)] = k s^{k-1} t q(t) - s^{k+1} q'(t)`.
    pub fn dphi(&self) -> SinPoly {
        let mut out = Vec::new();
        for (k, q) in &self.0 {
            if *k > 0 {
                out.push((k - 1, q.mul(&Poly(vec![0.0, 1.0])).scale(*k as f64)));
            }
            out.push((k + 1, q.derivative().scale(-1.0)));
        }
        SinPoly(out)
    }
}

/// Harmonic `f(m theta) P(cos phi)` with `P` taken from the Rodrigues formula,
/// positive-leading, normalized to unit `L^2` norm on the sphere by quadrature.
pub struct OracleHarmonic {
    pub mode: ModeIndex,
    p: SinPoly,
    dp: SinPoly,
    ddp: SinPoly,
}

impl OracleHarmonic {
    pub fn new(mode: ModeIndex) -> Self {
        let mut q = one_minus_t2_pow(mode.l);
        for _ in 0..(mode.l + mode.m) {
            q = q.derivative();
        }
        // (1-t^2)^l has leading sign (-1)^l
        if mode.l % 2 == 1 {
            q = q.scale(-1.0);
        }
        let raw = SinPoly(vec![(mode.m, q)]);
        let rule = gauss_legendre(2 * mode.l + 8);
        let int_t = rule.integrate(|t| raw.eval(t.acos()).powi(2));
        let int_theta = if mode.m == 0 { 2.0 * PI } else { PI };
        let norm = 1.0 / (int_t * int_theta).sqrt();
        let p = SinPoly(raw.0.into_iter().map(|(k, q)| (k, q.scale(norm))).collect());
        let dp = p.dphi();
        let ddp = dp.dphi();
        Self { mode, p, dp, ddp }
    }

    pub fn profile(&self, phi: f64) -> f64 {
        self.p.eval(phi)
    }

    pub fn jet(&self, phi: f64, theta: f64) -> Jet {
        let mf = self.mode.m as f64;
        let (s, c) = (mf * theta).sin_cos();
        let (f, df, ddf) = match self.mode.family {
            Family::Cos => (c, -mf * s, -mf * mf * c),
            Family::Sin => (s, mf * c, -mf * mf * s),
        };
        let (p, dp, ddp) = (self.p.eval(phi), self.dp.eval(phi), self.ddp.eval(phi));
        Jet {
            value: p * f,
            phi: dp * f,
            theta: p * df,
            phiphi: ddp * f,
            phitheta: dp * df,
            thetatheta: p * ddf,
        }
    }
}

/// `<Y_j, A_1 Y_k>` on the round sphere by Gauss-Legendre in `cos phi` and
/// the trapezoid rule in `theta`.
pub fn a1_inner(alpha: f64, beta: f64, gamma: f64, j: &OracleHarmonic, k: &OracleHarmonic) -> f64 {
    let rule = gauss_legendre(40);
    let n_theta = 64;
    let dtheta = 2.0 * PI / n_theta as f64;
    let mut sum = 0.0;
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let phi = t.acos();
        for i in 0..n_theta {
            let theta = i as f64 * dtheta;
            let au = a1_apply(alpha, beta, gamma, &k.jet(phi, theta), phi, theta).unwrap();
            sum += w * dtheta * j.jet(phi, theta).value * au;
        }
    }
    sum
}

/// `<Y_j, Y_k>` on the round sphere.
pub fn l2_inner(j: &OracleHarmonic, k: &OracleHarmonic) -> f64 {
    let rule = gauss_legendre(40);
    let n_theta = 64;
    let dtheta = 2.0 * PI / n_theta as f64;
    let mut sum = 0.0;
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let phi = t.acos();
        for i in 0..n_theta {
            let theta = i as f64 * dtheta;
            sum += w * dtheta * j.jet(phi, theta).value * k.jet(phi, theta).value;
        }
    }
    sum
}

/// Deterministic uniform samples in `[-1, 1]` (SplitMix64).
pub struct Sampler(u64);

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_unit(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        2.0 * ((z >> 11) as f64 / (1u64 << 53) as f64) - 1.0
    }

    pub fn triple(&mut self) -> (f64, f64, f64) {
        (self.next_unit(), self.next_unit(), self.next_unit())
    }
}
