//! Real-axis zeta quantities consumed by the constants formulas.
//!
//! ζ(σ) and ζ′(σ) come from Euler–Maclaurin summation with an explicit
//! remainder bound, which stays well conditioned as σ → 1⁺. Integrals of
//! log ζ use the termwise-integrated prime-power expansion
//!
//! ```text
//! ∫_c^∞ log ζ(σ) dσ = Σ_p Σ_k p^{−kc} / (k² log p)
//! ```
//!
//! on [3, ∞). Below that the prime sum converges too slowly, so the piece
//! [c, 3] is integrated numerically after removing the log-singularity at
//! σ = 1 analytically.

use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quad::integrate_adaptive;

/// Abscissa above which log-zeta integrals come straight from the prime
/// power series.
pub const SERIES_FLOOR: f64 = 3.0;

/// Largest supported Euler–Maclaurin correction order.
pub const MAX_EM_TERMS: usize = 16;

/// Cap on the number of explicitly summed terms in Euler–Maclaurin.
const MAX_EM_HEAD: usize = 20_000;

/// Truncation and tolerance settings for the kernels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Largest prime included in the prime-power sums.
    pub prime_cutoff: u64,
    /// Largest prime-power exponent included.
    pub power_cutoff: u32,
    /// Euler–Maclaurin correction order.
    pub em_terms: usize,
    /// Required bound on every truncation tail.
    pub tail_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            prime_cutoff: 100_000,
            power_cutoff: 24,
            em_terms: 8,
            tail_tol: 1e-9,
        }
    }
}

impl QuadratureSpec {
    pub fn new(
        prime_cutoff: u64,
        power_cutoff: u32,
        em_terms: usize,
        tail_tol: f64,
    ) -> Result<Self> {
        let spec = Self {
            prime_cutoff,
            power_cutoff,
            em_terms,
            tail_tol,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.prime_cutoff < 2 {
            return Err(domain("prime_cutoff must be at least 2"));
        }
        if self.power_cutoff < 1 {
            return Err(domain("power_cutoff must be at least 1"));
        }
        if self.em_terms < 1 || self.em_terms > MAX_EM_TERMS {
            return Err(domain(format!("em_terms must lie in 1..={MAX_EM_TERMS}")));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol.is_finite()) {
            return Err(domain("tail_tol must be positive and finite"));
        }
        let bound = self.series_tail_bound();
        if bound > self.tail_tol {
            return Err(domain(format!(
                "prime-power truncation tail {bound:e} exceeds tail_tol {:e}",
                self.tail_tol
            )));
        }
        Ok(())
    }

    /// Analytic bound on the part of Σ_p Σ_k p^{−kσ}/(k² log p) dropped by
    /// the cutoffs, valid for every σ ≥ [`SERIES_FLOOR`].
    pub fn series_tail_bound(&self) -> f64 {
        let s = SERIES_FLOOR;
        let p = self.prime_cutoff as f64;
        let geometric = 1.0 / (1.0 - 2f64.powf(-s));
        // primes above the cutoff: Σ_{n>P} n^{−s} ≤ P^{1−s}/(s−1)
        let primes = geometric * p.powf(1.0 - s) / ((s - 1.0) * p.ln());
        // powers above the cutoff for p ≤ P: Σ_p p^{−x} ≤ 2·2^{−x} for x ≥ 3
        let k1 = f64::from(self.power_cutoff + 1);
        let powers = 2.0 * 2f64.powf(-k1 * s) * geometric / (k1 * k1 * std::f64::consts::LN_2);
        primes + powers
    }
}

/// I(d), the fixed combination of four log-zeta integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IOfD {
    pub d: f64,
    pub value: f64,
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma.is_nan() || sigma <= 1.0 {
        return Err(domain(format!("sigma must exceed 1, got {sigma}")));
    }
    Ok(())
}

// B_{2k} for k = 1..=17.
const BERNOULLI: [f64; 17] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
];

/// B_{2k}/(2k)! for k = 1..=17.
fn em_coefficients() -> &'static [f64; 17] {
    static COEFFS: OnceLock<[f64; 17]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut out = [0.0; 17];
        let mut fact = 1.0;
        for k in 1..=17 {
            fact *= (2 * k - 1) as f64 * (2 * k) as f64;
            out[k - 1] = BERNOULLI[k - 1] / fact;
        }
        out
    })
}

/// Euler–Maclaurin evaluation of ζ(σ) and ζ′(σ) with `head` explicit
/// terms. Returns (ζ, ζ′) and the truncation remainders of each, bounded by
/// the first omitted correction.
fn em_eval(s: f64, head: usize, terms: usize) -> (f64, f64, f64, f64) {
    let coeffs = em_coefficients();
    let mut z = 0.0;
    let mut dz = 0.0;
    // Summing small terms first keeps the rounding error down.
    for n in (1..head).rev() {
        let nf = n as f64;
        let t = nf.powf(-s);
        z += t;
        dz -= t * nf.ln();
    }
    let nf = head as f64;
    let ln_n = nf.ln();
    let n_s = nf.powf(-s);
    let n_1s = nf * n_s;
    z += n_1s / (s - 1.0) + 0.5 * n_s;
    dz += -ln_n * n_1s / (s - 1.0) - n_1s / ((s - 1.0) * (s - 1.0)) - 0.5 * ln_n * n_s;

    // Correction k carries s(s+1)…(s+2k−2) · N^{−s−2k+1}.
    let mut rising = s;
    let mut rising_dlog = 1.0 / s;
    let mut power = n_s / nf;
    let mut next = (0.0, 0.0);
    for k in 1..=terms + 1 {
        let term = coeffs[k - 1] * rising * power;
        let dterm = term * (rising_dlog - ln_n);
        if k <= terms {
            z += term;
            dz += dterm;
        } else {
            next = (term.abs(), dterm.abs());
        }
        let a = s + (2 * k - 1) as f64;
        let b = s + (2 * k) as f64;
        rising *= a * b;
        rising_dlog += 1.0 / a + 1.0 / b;
        power /= nf * nf;
    }
    (z, dz, next.0, next.1)
}

/// Picks the head length so the Euler–Maclaurin truncation error of both ζ
/// and ζ′/ζ is below `tol`.
fn em_converged(s: f64, terms: usize, tol: f64) -> Result<(f64, f64)> {
    let mut head = 8usize;
    loop {
        let (z, dz, ez, edz) = em_eval(s, head, terms);
        let e_ratio = edz / z + dz.abs() * ez / (z * z);
        if ez <= tol && e_ratio <= tol {
            return Ok((z, dz));
        }
        if head >= MAX_EM_HEAD {
            return Err(Error::Convergence(format!(
                "Euler–Maclaurin at sigma = {s} with {terms} corrections: remainder {:e} above {tol:e}",
                ez.max(e_ratio)
            )));
        }
        head = (head * 2).min(MAX_EM_HEAD);
    }
}

/// ζ(σ) for real σ > 1.
pub fn zeta_real(sigma: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_sigma(sigma)?;
    spec.validate()?;
    em_converged(sigma, spec.em_terms, spec.tail_tol / 16.0).map(|(z, _)| z)
}

/// ζ′(σ)/ζ(σ) for real σ > 1.
pub fn zeta_log_deriv(sigma: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_sigma(sigma)?;
    spec.validate()?;
    em_converged(sigma, spec.em_terms, spec.tail_tol / 16.0).map(|(z, dz)| dz / z)
}

/// Primes up to `n`, shared through a grow-only cache.
fn primes_up_to(n: u64) -> Arc<[u32]> {
    static CACHE: Mutex<Option<(u64, Arc<[u32]>)>> = Mutex::new(None);
    let mut guard = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some((limit, primes)) = guard.as_ref() {
        if *limit >= n {
            let end = primes.partition_point(|&p| u64::from(p) <= n);
            return if end == primes.len() {
                primes.clone()
            } else {
                primes[..end].into()
            };
        }
    }
    let primes: Arc<[u32]> = sieve(n).into();
    *guard = Some((n, primes.clone()));
    primes
}

fn sieve(n: u64) -> Vec<u32> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Σ_p Σ_k p^{−kc}/(k² log p), truncated at the configured cutoffs.
fn prime_power_tail(c: f64, spec: &QuadratureSpec) -> f64 {
    let primes = primes_up_to(spec.prime_cutoff);
    let mut total = 0.0;
    // Largest primes first: smallest terms first.
    for &p in primes.iter().rev() {
        let pf = f64::from(p);
        let base = pf.powf(-c);
        let mut power = base;
        let mut inner = 0.0;
        for k in 1..=spec.power_cutoff {
            let k = f64::from(k);
            inner += power / (k * k);
            power *= base;
            if power < 1e-20 * inner {
                break;
            }
        }
        total += inner / pf.ln();
    }
    total
}

/// ∫_c^∞ log ζ(σ) dσ.
pub fn log_zeta_tail(c: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_sigma(c)?;
    spec.validate()?;
    if c >= SERIES_FLOOR {
        return Ok(prime_power_tail(c, spec));
    }
    let tol = spec.tail_tol;
    let em_tol = tol / 64.0;
    let terms = spec.em_terms;
    // log ζ(σ) = −log(σ−1) + log((σ−1)ζ(σ)); the second piece is smooth
    // through σ = 1.
    let smooth = |sigma: f64| -> f64 {
        match em_converged(sigma, terms, em_tol) {
            Ok((z, _)) => ((sigma - 1.0) * z).ln(),
            Err(_) => f64::NAN,
        }
    };
    let smooth_part = integrate_adaptive(&smooth, c, SERIES_FLOOR, tol / 8.0)?;
    if !smooth_part.is_finite() {
        return Err(Error::Convergence(format!(
            "log zeta integrand failed to converge on [{c}, {SERIES_FLOOR}]"
        )));
    }
    let x0 = c - 1.0;
    let x1 = SERIES_FLOOR - 1.0;
    let singular = -(x1 * x1.ln() - x1) + (x0 * x0.ln() - x0);
    Ok(singular + smooth_part + prime_power_tail(SERIES_FLOOR, spec))
}

/// ∫_lo^hi log ζ(σ) dσ.
pub fn log_zeta_integral(lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_sigma(lo)?;
    if hi.is_nan() || hi <= lo {
        return Err(domain(format!(
            "integral bounds out of order: [{lo}, {hi}]"
        )));
    }
    Ok(log_zeta_tail(lo, spec)? - log_zeta_tail(hi, spec)?)
}

/// I(d) = ½∫_{1+2d}^∞ − ∫_{½+d}^∞ + ½∫_{1+2d}^{1+4d} − ∫_{½+d}^{½+2d} of log ζ.
pub fn i_of_d(d: f64, spec: &QuadratureSpec) -> Result<IOfD> {
    if d.is_nan() || d <= 0.5 || d > 1.0 {
        return Err(domain(format!("d must lie in (1/2, 1], got {d}")));
    }
    let value = 0.5 * log_zeta_tail(1.0 + 2.0 * d, spec)? - log_zeta_tail(0.5 + d, spec)?
        + 0.5 * log_zeta_integral(1.0 + 2.0 * d, 1.0 + 4.0 * d, spec)?
        - log_zeta_integral(0.5 + d, 0.5 + 2.0 * d, spec)?;
    Ok(IOfD { d, value })
}
