//! Spherical (`j_n`) and cylindrical (`J_n`) Bessel functions of the first kind
//! for nonnegative integer order and real nonnegative argument.
//!
//! Both families are evaluated by Miller's downward recurrence started well
//! above `max(n, x)`, with periodic rescaling to stay inside the exponent
//! range, and normalized through a sum rule whose terms are all positive:
//!
//! ```text
//! Σ_k (2k+1) j_k(x)² = 1
//! J_0(x)² + 2 Σ_{k≥1} J_k(x)² = 1
//! ```
//!
//! Upward recurrence is unstable once `n > x`, which is exactly the regime
//! that governs the tails of truncated plane-wave expansions.

/// Below this argument a two-term ascending series is used instead.
const SMALL_ARG: f64 = 1e-3;
const RESCALE_ABOVE: f64 = 1e100;
const RESCALE_BY: f64 = 1e-100;

fn start_order(nmax: usize, x: f64) -> usize {
    let top = nmax.max(x.ceil() as usize);
    let m = top + 16 + (40.0 * top as f64).sqrt().ceil() as usize;
    m + (m & 1)
}

/// Spherical Bessel function `j_n(x)`.
pub fn spherical_bessel_j(n: usize, x: f64) -> f64 {
    spherical_bessel_j_upto(n, x)[n]
}

/// `j_0(x) ..= j_nmax(x)` in one downward sweep.
pub fn spherical_bessel_j_upto(nmax: usize, x: f64) -> Vec<f64> {
    assert!(
        x >= 0.0 && x.is_finite(),
        "spherical_bessel_j: x must be finite and >= 0"
    );
    let mut out = vec![0.0; nmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if x < SMALL_ARG {
        // j_n(x) ≈ x^n/(2n+1)!! · (1 - x²/(2(2n+3)))
        let mut lead = 1.0;
        for (n, v) in out.iter_mut().enumerate() {
            if n > 0 {
                lead *= x / (2 * n + 1) as f64;
            }
            *v = lead * (1.0 - x * x / (2.0 * (2 * n + 3) as f64));
        }
        return out;
    }

    // Orders 0 and 1 are always kept for the sign decision.
    let keep = nmax.max(1);
    out.resize(keep + 1, 0.0);
    let start = start_order(keep, x);
    let mut above = 0.0; // f_{k+1}
    let mut cur = 1.0; // f_k
    let mut norm = 0.0;
    for k in (0..=start).rev() {
        norm += (2 * k + 1) as f64 * cur * cur;
        if k <= keep {
            out[k] = cur;
        }
        if k == 0 {
            break;
        }
        let below = (2 * k + 1) as f64 / x * cur - above;
        above = cur;
        cur = below;
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            above *= RESCALE_BY;
            norm *= RESCALE_BY * RESCALE_BY;
            for v in out.iter_mut().skip(k) {
                *v *= RESCALE_BY;
            }
        }
    }
    // The magnitude comes from the sum rule; the sign from whichever of the
    // closed forms j_0, j_1 is larger in magnitude.
    let mut scale = 1.0 / norm.sqrt();
    let j0 = x.sin() / x;
    let j1 = x.sin() / (x * x) - x.cos() / x;
    let flip = if j0.abs() >= j1.abs() {
        (out[0] < 0.0) != (j0 < 0.0)
    } else {
        (out[1] < 0.0) != (j1 < 0.0)
    };
    if flip {
        scale = -scale;
    }
    out.truncate(nmax + 1);
    for v in out.iter_mut() {
        *v *= scale;
    }
    out
}

/// Cylindrical Bessel function `J_n(x)`.
pub fn bessel_j(n: usize, x: f64) -> f64 {
    bessel_j_upto(n, x)[n]
}

/// `J_0(x) ..= J_nmax(x)` in one downward sweep.
pub fn bessel_j_upto(nmax: usize, x: f64) -> Vec<f64> {
    assert!(x >= 0.0 && x.is_finite(), "bessel_j: x must be finite and >= 0");
    let mut out = vec![0.0; nmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if x < SMALL_ARG {
        // J_n(x) ≈ (x/2)^n/n! · (1 - (x/2)²/(n+1))
        let h = 0.5 * x;
        let mut lead = 1.0;
        for (n, v) in out.iter_mut().enumerate() {
            if n > 0 {
                lead *= h / n as f64;
            }
            *v = lead * (1.0 - h * h / (n + 1) as f64);
        }
        return out;
    }

    let keep = nmax.max(1);
    out.resize(keep + 1, 0.0);
    let start = start_order(keep, x);
    let mut above = 0.0;
    let mut cur = 1.0;
    let mut norm = 0.0;
    for k in (0..=start).rev() {
        norm += if k == 0 { cur * cur } else { 2.0 * cur * cur };
        if k <= keep {
            out[k] = cur;
        }
        if k == 0 {
            break;
        }
        let below = 2.0 * k as f64 / x * cur - above;
        above = cur;
        cur = below;
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            above *= RESCALE_BY;
            norm *= RESCALE_BY * RESCALE_BY;
            for v in out.iter_mut().skip(k) {
                *v *= RESCALE_BY;
            }
        }
    }
    // The sum rule fixes |scale|; the sign is matched against J_0 or J_1.
    let mut scale = 1.0 / norm.sqrt();
    if sign_mismatch(&out, x) {
        scale = -scale;
    }
    out.truncate(nmax + 1);
    for v in out.iter_mut() {
        *v *= scale;
    }
    out
}

// Decide the overall sign of an unnormalized downward-recurrence sequence by
// comparing against a crude but sign-reliable estimate of J_0 or J_1.
fn sign_mismatch(raw: &[f64], x: f64) -> bool {
    let (j0, j1) = crude_j0_j1(x);
    if j0.abs() >= j1.abs() {
        (raw[0] < 0.0) != (j0 < 0.0)
    } else {
        (raw[1] < 0.0) != (j1 < 0.0)
    }
}

// Accurate to a few digits everywhere, which is all the sign decision needs.
fn crude_j0_j1(x: f64) -> (f64, f64) {
    if x < 8.0 {
        // Ascending series; at most ~40 terms for x < 8.
        let h2 = 0.25 * x * x;
        let (mut t0, mut t1) = (1.0, 0.5 * x);
        let (mut s0, mut s1) = (t0, t1);
        for k in 1..60 {
            let kf = k as f64;
            t0 *= -h2 / (kf * kf);
            t1 *= -h2 / (kf * (kf + 1.0));
            s0 += t0;
            s1 += t1;
        }
        (s0, s1)
    } else {
        // Leading Hankel asymptotics with first corrections.
        let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
        let q = std::f64::consts::FRAC_PI_4;
        let p0 = 1.0 - 9.0 / (128.0 * x * x);
        let q0 = -1.0 / (8.0 * x);
        let p1 = 1.0 + 15.0 / (128.0 * x * x);
        let q1 = 3.0 / (8.0 * x);
        let a0 = x - q;
        let a1 = x - 3.0 * q;
        (
            amp * (p0 * a0.cos() - q0 * a0.sin()),
            amp * (p1 * a1.cos() - q1 * a1.sin()),
        )
    }
}
