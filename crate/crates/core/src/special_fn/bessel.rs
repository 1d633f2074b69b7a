use crate::error::{Error, Result};

/// Which function a root is sought for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    /// Zeros of `J_m`.
    J,
    /// Zeros of `J_m'`.
    JPrime,
}

const SERIES_LIMIT: f64 = 12.0;

fn series(m: usize, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=m {
        term *= half / k as f64;
    }
    let mut sum = term;
    let q = -half * half;
    for k in 1..200 {
        term *= q / (k as f64 * (k + m) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Miller's backward recurrence normalized by `J_0 + 2 sum J_{2k} = 1`.
fn miller(m: usize, x: f64) -> f64 {
    let top = m.max(x as usize) + 30 + (40.0 * (m as f64).max(x)).sqrt() as usize;
    let start = top + top % 2;
    let mut next = 0.0;
    let mut cur = 1e-300;
    let mut norm = 0.0;
    let mut result = 0.0;
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        // cur now holds J_{k-1}
        if k - 1 == m {
            result = cur;
        }
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            result *= 1e-250;
        }
    }
    norm += cur;
    result / norm
}

/// Bessel function of the first kind `J_m(x)` for `x >= 0`.
pub fn bessel_j(m: usize, x: f64) -> f64 {
    assert!(x >= 0.0, "bessel_j requires x >= 0");
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if x < SERIES_LIMIT {
        series(m, x)
    } else {
        miller(m, x)
    }
}

/// Derivative `J_m'(x)`.
pub fn bessel_j_prime(m: usize, x: f64) -> f64 {
    if m == 0 {
        -bessel_j(1, x)
    } else {
        0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x))
    }
}

/// The `k`-th positive zero (`k >= 1`) of `J_m` or `J_m'`, bracketed by a
/// sign-change scan and refined by bisection to relative width `1e-13`.
///
/// The trivial zero of `J_0'` at the origin is not counted.
pub fn bessel_root(m: usize, k: usize, kind: BesselKind) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidInput("root index k starts at 1".into()));
    }
    let f = |x: f64| match kind {
        BesselKind::J => bessel_j(m, x),
        BesselKind::JPrime => bessel_j_prime(m, x),
    };
    let what = format!("{kind:?} root k={k} of order m={m}");
    let step = 0.05;
    let limit = 100.0 + 4.0 * (m + k) as f64;
    let mut lo = 1e-3;
    let mut flo = f(lo);
    let mut found = 0;
    while lo < limit {
        let hi = lo + step;
        let fhi = f(hi);
        if flo == 0.0 || flo.signum() != fhi.signum() {
            found += 1;
            if found == k {
                return bisect(&f, lo, hi, &what);
            }
        }
        lo = hi;
        flo = fhi;
    }
    Err(Error::RootNotFound {
        what,
        lo,
        hi: lo + step,
    })
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, what: &str) -> Result<f64> {
    let mut flo = f(lo);
    if flo == 0.0 {
        return Ok(lo);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(Error::RootNotFound {
        what: what.to_string(),
        lo,
        hi,
    })
}
