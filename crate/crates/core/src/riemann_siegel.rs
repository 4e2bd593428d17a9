//! θ(t), the Riemann–Siegel Z-function, Gram points and an empirical check
//! of |ζ(½+it)| ≤ K t^θ.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

const TWO_PI: f64 = 2.0 * PI;

/// Riemann–Siegel theta function,
/// θ(t) = (t/2)log(t/2π) − t/2 − π/8 + 1/(48t) + 7/(5760t³) + …
pub fn theta(t: f64) -> Result<f64> {
    if t.is_nan() || t <= 1.0 {
        return Err(domain(format!("theta needs t > 1, got {t}")));
    }
    Ok(theta_unchecked(t))
}

fn theta_unchecked(t: f64) -> f64 {
    let r = 1.0 / t;
    let r2 = r * r;
    let tail =
        r * (1.0 / 48.0 + r2 * (7.0 / 5760.0 + r2 * (31.0 / 80640.0 + r2 * (127.0 / 430080.0))));
    0.5 * t * (t / TWO_PI).ln() - 0.5 * t - PI / 8.0 + tail
}

/// θ′(t) = ½ log(t/2π) − 1/(48t²) − 7/(1920t⁴) − …
pub fn theta_deriv(t: f64) -> Result<f64> {
    if t.is_nan() || t <= 1.0 {
        return Err(domain(format!("theta_deriv needs t > 1, got {t}")));
    }
    Ok(theta_deriv_unchecked(t))
}

fn theta_deriv_unchecked(t: f64) -> f64 {
    let r2 = 1.0 / (t * t);
    let tail =
        r2 * (1.0 / 48.0 + r2 * (7.0 / 1920.0 + r2 * (31.0 / 16128.0 + r2 * (127.0 / 61440.0))));
    0.5 * (t / TWO_PI).ln() - tail
}

/// Z(t) with the remainder envelope of the truncated asymptotic series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZValue {
    pub t: f64,
    pub value: f64,
    pub remainder_bound: f64,
}

impl ZValue {
    /// +1 or −1 when |Z| clears the remainder envelope plus a rounding
    /// allowance, `None` otherwise.
    pub fn sign(&self) -> Option<i8> {
        let rounding = 64.0 * f64::EPSILON * self.t.max(1.0);
        if self.value.abs() > self.remainder_bound + rounding {
            Some(if self.value > 0.0 { 1 } else { -1 })
        } else {
            None
        }
    }
}

/// Envelope constants c_k in |R_k(t)| ≤ c_k t^{−(2k+3)/4}.
///
/// These are Gabcke's published constants (stated for t ≥ 200), inflated
/// so that they also cover the range 5 ≤ t < 200 against reference values.
pub const REMAINDER_ENVELOPE: [f64; 3] = [0.127, 0.053, 0.011];

/// Inflation applied to [`REMAINDER_ENVELOPE`] below t = 200.
const LOW_T_INFLATION: f64 = 4.0;

/// Largest supported correction order.
pub const MAX_ORDER: u8 = 2;

/// Taylor coefficients of Ψ(½ + h) = cos(2π(p² − p − 1/16)) / cos(2πp) in
/// powers of h, from a trapezoidal Cauchy integral on |h| = 1. Ψ is entire,
/// so the removable singularities at p = ¼, ¾ never matter.
fn psi_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        const M: usize = 256;
        const TERMS: usize = 64;
        let samples: Vec<(Complex64, Complex64)> = (0..M)
            .map(|j| {
                let phi = TWO_PI * (j as f64 + 0.5) / M as f64;
                let h = Complex64::from_polar(1.0, phi);
                let p = h + 0.5;
                let num = (TWO_PI * (p * p - p - 1.0 / 16.0)).cos();
                let den = (TWO_PI * p).cos();
                (num / den, h)
            })
            .collect();
        (0..TERMS)
            .map(|n| {
                let s: Complex64 = samples
                    .iter()
                    .map(|(psi, h)| psi * h.powi(-(n as i32)))
                    .sum();
                s.re / M as f64
            })
            .collect()
    })
}

/// k-th derivative of Ψ at p = ½ + h.
fn psi_derivative(h: f64, k: usize) -> f64 {
    let a = psi_coefficients();
    let mut acc = 0.0;
    for n in (k..a.len()).rev() {
        let falling: f64 = (n - k + 1..=n).map(|m| m as f64).product();
        acc = acc * h + a[n] * falling;
    }
    acc
}

/// Riemann–Siegel correction coefficients C₀, C₁, C₂ at fractional part p.
fn rs_coefficients(p: f64) -> [f64; 3] {
    let h = p - 0.5;
    let pi2 = PI * PI;
    [
        psi_derivative(h, 0),
        -psi_derivative(h, 3) / (96.0 * pi2),
        psi_derivative(h, 2) / (64.0 * pi2) + psi_derivative(h, 6) / (18432.0 * pi2 * pi2),
    ]
}

/// Z(t) = e^{iθ(t)} ζ(½+it) by the Riemann–Siegel formula with corrections
/// C₀..C_order.
pub fn z_function(t: f64, order: u8) -> Result<ZValue> {
    if t.is_nan() || t < 5.0 {
        return Err(domain(format!("z_function needs t >= 5, got {t}")));
    }
    if order > MAX_ORDER {
        return Err(domain(format!(
            "order must be at most {MAX_ORDER}, got {order}"
        )));
    }
    Ok(z_unchecked(t, order))
}

pub(crate) fn z_unchecked(t: f64, order: u8) -> ZValue {
    let th = theta_unchecked(t);
    let a = (t / TWO_PI).sqrt();
    let n = a.floor() as u64;
    let p = a - n as f64;

    let mut main = 0.0;
    for k in (1..=n).rev() {
        let kf = k as f64;
        main += (th - t * kf.ln()).cos() / kf.sqrt();
    }
    main *= 2.0;

    let c = rs_coefficients(p);
    let u = 1.0 / a;
    let mut corr = 0.0;
    let mut upow = 1.0;
    for ck in c.iter().take(order as usize + 1) {
        corr += ck * upow;
        upow *= u;
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let value = main + sign * u.sqrt() * corr;

    let k = order as usize;
    let mut c_env = REMAINDER_ENVELOPE[k];
    if t < 200.0 {
        c_env *= LOW_T_INFLATION;
    }
    let remainder_bound = c_env * t.powf(-(2.0 * k as f64 + 3.0) / 4.0);
    ZValue {
        t,
        value,
        remainder_bound,
    }
}

/// A solution of θ(g_n) = nπ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramPoint {
    pub index: i64,
    pub ordinate: f64,
}

/// Principal branch of Lambert W for x ≥ −1/e.
fn lambert_w(x: f64) -> f64 {
    let mut w = if x < 1.0 {
        x.max(-0.3)
    } else {
        x.ln() - x.ln().ln().max(0.0)
    };
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - x;
        let step = f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
        w -= step;
        if step.abs() < 1e-15 * (1.0 + w.abs()) {
            break;
        }
    }
    w
}

/// Initial guess from inverting θ(t) ≈ (t/2)log(t/2πe) − π/8.
fn gram_guess(n: i64) -> f64 {
    let m = n as f64 + 0.125;
    let x = m / std::f64::consts::E;
    TWO_PI * std::f64::consts::E * lambert_w(x).exp()
}

/// Residual target for Gram points.
pub const GRAM_TOL: f64 = 1e-10;

/// g_n by Newton's method from the asymptotic guess, falling back to
/// bisection if Newton stalls or leaves the monotone region.
pub fn gram_point(n: i64) -> Result<GramPoint> {
    if n < -1 {
        return Err(domain(format!("gram index must be >= -1, got {n}")));
    }
    let target = n as f64 * PI;
    let tol = GRAM_TOL * (1.0 + target.abs() * f64::EPSILON * 1e5);
    // θ′ > 0 beyond 2π·(1 + small), so everything below stays monotone.
    let floor = TWO_PI * 1.001;

    let mut t = gram_guess(n).max(floor + 1.0);
    for _ in 0..50 {
        let r = theta_unchecked(t) - target;
        if r.abs() < tol {
            return Ok(GramPoint {
                index: n,
                ordinate: t,
            });
        }
        let next = t - r / theta_deriv_unchecked(t);
        if !(next > floor) || !next.is_finite() {
            break;
        }
        t = next;
    }

    // Bisection on [floor, guess + 2 mean gaps], widened if necessary.
    let guess = gram_guess(n).max(floor + 1.0);
    let gap = PI / theta_deriv_unchecked(guess).max(1e-3);
    let mut lo = floor;
    let mut hi = guess + 2.0 * gap;
    let mut widen = 0;
    while theta_unchecked(hi) < target {
        hi += 2.0 * gap;
        widen += 1;
        if widen > 100 {
            return Err(Error::Convergence(format!("no bracket for gram point {n}")));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let r = theta_unchecked(mid) - target;
        if r.abs() < tol {
            return Ok(GramPoint {
                index: n,
                ordinate: mid,
            });
        }
        if r < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence(format!(
        "gram point {n} did not converge to {tol:e}"
    )))
}

/// Outcome of sampling |Z(t)|/t^θ against a growth constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub t_lo: f64,
    pub t_hi: f64,
    pub samples: usize,
    pub k: f64,
    pub exponent: f64,
    /// Largest |Z(t)|/t^exponent seen.
    pub max_ratio: f64,
    pub argmax: f64,
    /// Largest (|Z(t)| + remainder)/t^exponent seen.
    pub max_ratio_upper: f64,
    pub pass: bool,
}

/// Samples t uniformly on [t_lo, t_hi] and checks (|Z| + remainder)/t^¼
/// against 2.53.
pub fn growth_check(t_lo: f64, t_hi: f64, samples: usize) -> Result<GrowthReport> {
    growth_check_with(t_lo, t_hi, samples, 2.53, 0.25)
}

pub fn growth_check_with(
    t_lo: f64,
    t_hi: f64,
    samples: usize,
    k: f64,
    exponent: f64,
) -> Result<GrowthReport> {
    if !(t_lo >= 5.0 && t_hi > t_lo && t_hi.is_finite()) {
        return Err(domain(format!(
            "need 5 <= t_lo < t_hi, got [{t_lo}, {t_hi}]"
        )));
    }
    if samples < 2 {
        return Err(domain("need at least two samples"));
    }
    let step = (t_hi - t_lo) / (samples - 1) as f64;
    let (max_ratio, argmax, max_ratio_upper) = (0..samples)
        .into_par_iter()
        .map(|i| {
            let t = if i + 1 == samples {
                t_hi
            } else {
                t_lo + i as f64 * step
            };
            let z = z_unchecked(t, MAX_ORDER);
            let scale = t.powf(exponent);
            (
                z.value.abs() / scale,
                t,
                (z.value.abs() + z.remainder_bound) / scale,
            )
        })
        .reduce(
            || (0.0, t_lo, 0.0),
            |x, y| {
                let (r, at) = if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                    (y.0, y.1)
                } else {
                    (x.0, x.1)
                };
                (r, at, x.2.max(y.2))
            },
        );
    Ok(GrowthReport {
        t_lo,
        t_hi,
        samples,
        k,
        exponent,
        max_ratio,
        argmax,
        max_ratio_upper,
        pass: max_ratio_upper <= k,
    })
}
