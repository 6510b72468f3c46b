//! Legendre polynomials and associated Legendre functions.
//!
//! Convention: `P_n^m(u) = (-1)^m (1-u²)^{m/2} d^m/du^m P_n(u)`, i.e. the
//! Condon–Shortley phase lives in the Legendre function, so that
//! `Y_n^m = sqrt((2n+1)/(4π) (n-m)!/(n+m)!) P_n^m(cos θ) e^{imφ}` is
//! orthonormal with no further sign factor. Negative orders follow
//! `P_n^{-m} = (-1)^m (n-m)!/(n+m)! P_n^m`.

use crate::error::{Error, Result};

/// Legendre polynomial `P_n(u)` by the Bonnet recurrence.
pub fn legendre_p(n: u32, u: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, u);
    if n == 0 {
        return p0;
    }
    for k in 1..n {
        let k = k as f64;
        let p2 = ((2.0 * k + 1.0) * u * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Associated Legendre function `P_n^m(u)` (unnormalized, Condon–Shortley phase).
///
/// Values grow like `(2m-1)!!`, so very high orders overflow `f64`; use
/// [`NormalizedLegendre`] when building spherical harmonics.
pub fn assoc_legendre(n: u32, m: i32, u: f64) -> Result<f64> {
    let am = m.unsigned_abs();
    if am > n {
        return Err(Error::OrderOutOfRange { n, m });
    }
    assert!((-1.0..=1.0).contains(&u), "assoc_legendre: |u| must be <= 1");
    let positive = assoc_legendre_nonneg(n, am, u);
    if m >= 0 {
        return Ok(positive);
    }
    // (n-m)!/(n+m)! for m = |m|
    let mut ratio = 1.0;
    for k in (n - am + 1)..=(n + am) {
        ratio /= k as f64;
    }
    let sign = if am.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * ratio * positive)
}

fn assoc_legendre_nonneg(n: u32, m: u32, u: f64) -> f64 {
    let s = ((1.0 - u) * (1.0 + u)).sqrt();
    let mut pmm = 1.0;
    let mut odd = 1.0;
    for _ in 0..m {
        pmm *= -odd * s;
        odd += 2.0;
    }
    if n == m {
        return pmm;
    }
    let mut pm1 = u * (2 * m + 1) as f64 * pmm;
    if n == m + 1 {
        return pm1;
    }
    let mut pm0 = pmm;
    for l in (m + 2)..=n {
        let pl = (u * (2 * l - 1) as f64 * pm1 - (l + m - 1) as f64 * pm0) / (l - m) as f64;
        pm0 = pm1;
        pm1 = pl;
    }
    pm1
}

/// Table of fully normalized associated Legendre values
/// `P̄_n^m(u) = sqrt((2n+1)/(4π) (n-m)!/(n+m)!) P_n^m(u)` for `0 <= m <= n <= nmax`.
///
/// Built with the stable column recurrence, so it stays finite for any
/// degree a double can meaningfully hold.
#[derive(Debug, Clone)]
pub struct NormalizedLegendre {
    nmax: u32,
    values: Vec<f64>,
}

impl NormalizedLegendre {
    pub fn new(nmax: u32, u: f64) -> Self {
        let size = ((nmax + 1) * (nmax + 2) / 2) as usize;
        let mut values = vec![0.0; size];
        let s = ((1.0 - u) * (1.0 + u)).max(0.0).sqrt();
        let idx = |n: u32, m: u32| (n * (n + 1) / 2 + m) as usize;

        let mut pmm = 0.5 / std::f64::consts::PI.sqrt();
        for m in 0..=nmax {
            if m > 0 {
                let mf = m as f64;
                pmm *= -((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * s;
            }
            values[idx(m, m)] = pmm;
            if m == nmax {
                break;
            }
            let mf = m as f64;
            let mut prev = pmm;
            let mut cur = u * (2.0 * mf + 3.0).sqrt() * pmm;
            values[idx(m + 1, m)] = cur;
            for n in (m + 2)..=nmax {
                let nf = n as f64;
                let a = ((4.0 * nf * nf - 1.0) / (nf * nf - mf * mf)).sqrt();
                let pn1 = nf - 1.0;
                let b = (((pn1 * pn1) - mf * mf) / (4.0 * pn1 * pn1 - 1.0)).sqrt();
                let next = a * (u * cur - b * prev);
                values[idx(n, m)] = next;
                prev = cur;
                cur = next;
            }
        }
        Self { nmax, values }
    }

    pub fn nmax(&self) -> u32 {
        self.nmax
    }

    /// `P̄_n^m(u)` for `0 <= m <= n <= nmax`.
    #[inline]
    pub fn get(&self, n: u32, m: u32) -> f64 {
        debug_assert!(m <= n && n <= self.nmax);
        self.values[(n * (n + 1) / 2 + m) as usize]
    }
}
