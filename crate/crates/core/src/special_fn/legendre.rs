use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Degree and order of an associated Legendre function, `0 <= m <= l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LegendreMode {
    pub l: usize,
    pub m: usize,
}

impl LegendreMode {
    pub fn new(l: usize, m: usize) -> Result<Self> {
        if m > l {
            return Err(Error::InvalidMode {
                l: l as i64,
                m: m as i64,
            });
        }
        Ok(Self { l, m })
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("|t| <= 1 required, got t = {t}")));
    }
    Ok(())
}

/// Fully normalized functions `Pbar_l^m(t)` for `l = m..=lmax` at fixed `m`,
/// scaled so that `int_{-1}^{1} Pbar^2 dt = 2` for every `(l, m)`.
///
/// No Condon-Shortley phase: the leading coefficient in `sin^m` is positive.
fn pbar_column(m: usize, lmax: usize, t: f64) -> Vec<f64> {
    let s = (1.0 - t * t).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        let k = k as f64;
        pmm *= ((2.0 * k + 1.0) / (2.0 * k)).sqrt() * s;
    }
    let mut out = Vec::with_capacity(lmax + 1 - m);
    out.push(pmm);
    if lmax == m {
        return out;
    }
    let mf = m as f64;
    let mut prev = pmm;
    let mut cur = (2.0 * mf + 3.0).sqrt() * t * pmm;
    out.push(cur);
    for l in (m + 2)..=lmax {
        let lf = l as f64;
        let den = lf * lf - mf * mf;
        let a = ((4.0 * lf * lf - 1.0) / den).sqrt();
        let b = ((2.0 * lf + 1.0) * ((lf - 1.0) * (lf - 1.0) - mf * mf) / ((2.0 * lf - 3.0) * den))
            .sqrt();
        let next = a * t * cur - b * prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// Factor turning `Pbar_l^m` into the function with unit norm of
/// `cos(m theta) P(cos phi)` on the unit sphere.
fn sphere_scale(m: usize) -> f64 {
    let c = if m == 0 { 4.0 * PI } else { 2.0 * PI };
    1.0 / c.sqrt()
}

/// `sqrt((2l+1) (l-m)! / (l+m)!)`: ratio between `Pbar_l^m` and the standard
/// associated Legendre function without phase.
fn pbar_factor(l: usize, m: usize) -> f64 {
    let mut ratio = 1.0;
    for k in (l - m + 1)..=(l + m) {
        ratio /= k as f64;
    }
    ((2 * l + 1) as f64 * ratio).sqrt()
}

/// `Q_l^m(t) = (1-t^2)^{m/2} d^{l+m}/dt^{l+m} (1-t^2)^l`.
///
/// Equals `(-1)^l 2^l l!` times the standard associated Legendre function
/// without Condon-Shortley phase; evaluated through the normalized recurrence.
pub fn legendre_q(mode: LegendreMode, t: f64) -> Result<f64> {
    check_t(t)?;
    let LegendreMode { l, m } = mode;
    let pbar = pbar_column(m, l, t)[l - m];
    let mut scale = 1.0;
    for k in 1..=l {
        scale *= 2.0 * k as f64;
    }
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * scale * pbar / pbar_factor(l, m))
}

/// `P_l^m(t)`: positive multiple of the standard associated Legendre function,
/// scaled so that `cos(m theta) P_l^m(cos phi)` has unit `L^2` norm on the
/// unit sphere.
pub fn legendre_p_normalized(mode: LegendreMode, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(pbar_column(mode.m, mode.l, t)[mode.l - mode.m] * sphere_scale(mode.m))
}

/// `d/dphi P_l^m(cos phi)` at `t = cos phi`, `phi` in `[0, pi]`.
pub fn legendre_p_normalized_dphi(mode: LegendreMode, t: f64) -> Result<f64> {
    check_t(t)?;
    let LegendreMode { l, m } = mode;
    let table = LegendreTable::new(l, t);
    Ok(table.dphi(l, m))
}

/// Ratio `int t^2 (P_l^m)^2 dt / int (P_l^m)^2 dt` in closed form.
pub fn legendre_ratio(mode: LegendreMode) -> f64 {
    let l = mode.l as f64;
    let m = mode.m as f64;
    (2.0 * l * l - 2.0 * m * m + 2.0 * l - 1.0) / ((2.0 * l + 3.0) * (2.0 * l - 1.0))
}

/// All sphere-normalized `P_l^m(t)` and their `phi`-derivatives for
/// `0 <= m <= l <= lmax` at one point `t = cos phi`.
#[derive(Debug, Clone)]
pub struct LegendreTable {
    lmax: usize,
    p: Vec<f64>,
    dp: Vec<f64>,
}

impl LegendreTable {
    /// `t` must lie in `[-1, 1]`; it is clamped otherwise.
    pub fn new(lmax: usize, t: f64) -> Self {
        let t = t.clamp(-1.0, 1.0);
        let n = (lmax + 1) * (lmax + 2) / 2;
        let mut bar = vec![0.0; n];
        for m in 0..=lmax {
            for (k, v) in pbar_column(m, lmax, t).into_iter().enumerate() {
                bar[Self::index(m + k, m)] = v;
            }
        }
        let get = |l: usize, m: isize| -> f64 {
            if m < 0 || m as usize > l {
                0.0
            } else {
                bar[Self::index(l, m as usize)]
            }
        };
        let mut p = vec![0.0; n];
        let mut dp = vec![0.0; n];
        for l in 0..=lmax {
            let lf = l as f64;
            for m in 0..=l {
                let mf = m as f64;
                let idx = Self::index(l, m);
                p[idx] = bar[idx] * sphere_scale(m);
                let d = if m == 0 {
                    -(lf * (lf + 1.0)).sqrt() * get(l, 1)
                } else {
                    0.5 * (((lf + mf) * (lf - mf + 1.0)).sqrt() * get(l, m as isize - 1)
                        - ((lf + mf + 1.0) * (lf - mf)).sqrt() * get(l, m as isize + 1))
                };
                // the recurrence is written in Pbar, which has the same scale for every m
                dp[idx] = d * sphere_scale(m);
            }
        }
        Self { lmax, p, dp }
    }

    #[inline]
    fn index(l: usize, m: usize) -> usize {
        l * (l + 1) / 2 + m
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    /// Sphere-normalized `P_l^m(t)`.
    #[inline]
    pub fn p(&self, l: usize, m: usize) -> f64 {
        self.p[Self::index(l, m)]
    }

    /// `d/dphi` of `P_l^m(cos phi)`.
    #[inline]
    pub fn dphi(&self, l: usize, m: usize) -> f64 {
        self.dp[Self::index(l, m)]
    }
}
