//! Reference computations that share no code path with the library.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

/// Λ(n) for n ≤ limit, from a smallest-prime-factor sieve.
pub fn von_mangoldt(limit: usize) -> Vec<f64> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    let mut lambda = vec![0.0; limit + 1];
    for n in 2..=limit {
        let p = spf[n] as usize;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        if m == 1 {
            lambda[n] = (p as f64).ln();
        }
    }
    lambda
}

/// E₁(x) for x > 1 by the continued fraction (modified Lentz).
pub fn exp_integral_e1(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let a = -(i as f64) * (i as f64);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h * (-x).exp()
}

/// log ζ(σ) = Σ Λ(n) n^{−σ}/log n, with the tail past the sieve limit
/// replaced by its prime number theorem average ∫_X^∞ x^{−σ}/log x dx.
pub fn log_zeta_dirichlet(sigma: f64, lambda: &[f64]) -> f64 {
    let x = (lambda.len() - 1) as f64;
    let mut s = 0.0;
    for n in (2..lambda.len()).rev() {
        if lambda[n] > 0.0 {
            s += lambda[n] * (n as f64).powf(-sigma) / (n as f64).ln();
        }
    }
    s + exp_integral_e1((sigma - 1.0) * x.ln())
}

/// ∫_c^∞ log ζ = Σ Λ(n) n^{−c}/log² n, tail as above. Only sensible for c
/// well away from 1.
pub fn log_zeta_tail_dirichlet(c: f64, lambda: &[f64]) -> f64 {
    let mut s = 0.0;
    for n in (2..lambda.len()).rev() {
        if lambda[n] > 0.0 {
            let ln = (n as f64).ln();
            s += lambda[n] * (n as f64).powf(-c) / (ln * ln);
        }
    }
    s
}

/// ζ(s) for real s > 1 through the alternating η series with Borwein's
/// acceleration.
#[allow(clippy::needless_range_loop)]
pub fn zeta_borwein(s: f64) -> f64 {
    const N: usize = 40;
    let mut d = vec![0.0f64; N + 1];
    let mut term = 1.0 / N as f64;
    let mut acc = term;
    d[0] = N as f64 * acc;
    for i in 1..=N {
        let (n, i_f) = (N as f64, i as f64);
        term *= (n + i_f - 1.0) * (n - i_f + 1.0) * 4.0 / ((2.0 * i_f - 1.0) * (2.0 * i_f));
        acc += term;
        d[i] = n * acc;
    }
    let mut sum = 0.0;
    for k in 0..N {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (d[k] - d[N]) / ((k + 1) as f64).powf(s);
    }
    -sum / (d[N] * (1.0 - 2f64.powf(1.0 - s)))
}

/// ζ′/ζ(σ) from a five-point stencil on log ζ.
pub fn log_deriv_fd(sigma: f64) -> f64 {
    let h = 1e-3;
    let f = |x: f64| zeta_borwein(x).ln();
    (-f(sigma + 2.0 * h) + 8.0 * f(sigma + h) - 8.0 * f(sigma - h) + f(sigma - 2.0 * h))
        / (12.0 * h)
}

/// Adaptive Simpson with Richardson correction.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// ∫_c^∞ log ζ: Simpson on log ζ(σ) up to 3, Dirichlet series beyond.
pub fn log_zeta_tail_oracle(c: f64, lambda: &[f64]) -> f64 {
    if c >= 3.0 {
        return log_zeta_tail_dirichlet(c, lambda);
    }
    simpson(&|s| zeta_borwein(s).ln(), c, 3.0, 1e-12) + log_zeta_tail_dirichlet(3.0, lambda)
}

/// The four-integral combination I(d) built from oracle tails.
pub fn i_of_d_oracle(d: f64, lambda: &[f64]) -> f64 {
    let t = |x: f64| log_zeta_tail_oracle(x, lambda);
    let (t1, t2, t3, t4) = (
        t(1.0 + 2.0 * d),
        t(0.5 + d),
        t(1.0 + 4.0 * d),
        t(0.5 + 2.0 * d),
    );
    0.5 * t1 - t2 + 0.5 * (t1 - t3) - (t2 - t4)
}

/// ζ(s) for complex s by Euler–Maclaurin with `n` explicit terms.
pub fn zeta_complex_em(s: Complex64, n: usize) -> Complex64 {
    // B_2k/(2k)!
    const B: [f64; 10] = [
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
    ];
    let nf = n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        sum += Complex64::new(k as f64, 0.0).powc(-s);
    }
    let n_s = Complex64::new(nf, 0.0).powc(-s);
    sum += n_s * nf / (s - 1.0) + 0.5 * n_s;
    // Σ B_2k/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = n_s / nf;
    for (k, b) in B.iter().enumerate() {
        let k2 = 2 * (k + 1);
        sum += rising * npow * (*b / fact);
        rising = rising * (s + (k2 - 1) as f64) * (s + k2 as f64);
        fact *= ((k2 + 1) * (k2 + 2)) as f64;
        npow /= nf * nf;
    }
    sum
}

/// Reference θ(t) from the complex log-gamma via Stirling with shift.
pub fn theta_reference(t: f64) -> f64 {
    // arg Γ(¼ + it/2) − (t/2) log π
    let mut z = Complex64::new(0.25, 0.5 * t);
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 20.0 {
        shift += z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    let lg = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift;
    lg.im - 0.5 * t * PI.ln()
}

/// The mpmath table of Z(t).
pub fn siegel_z_table() -> Vec<(f64, f64)> {
    let text = include_str!("../data/siegelz.csv");
    text.lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',');
            let t = it.next().unwrap().parse().unwrap();
            let z = it.next().unwrap().parse().unwrap();
            (t, z)
        })
        .collect()
}

/// Z(t) sampled on a uniform grid of the given spacing; returns the number
/// of sign changes between consecutive samples with |Z| above `floor`.
pub fn fine_grid_sign_changes(
    z: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    spacing: f64,
    floor: f64,
) -> usize {
    let n = ((b - a) / spacing).ceil() as usize;
    let mut prev: Option<bool> = None;
    let mut count = 0;
    for i in 0..=n {
        let t = if i == n { b } else { a + i as f64 * spacing };
        let v = z(t);
        if v.abs() <= floor {
            continue;
        }
        let pos = v > 0.0;
        if let Some(p) = prev {
            if p != pos {
                count += 1;
            }
        }
        prev = Some(pos);
    }
    count
}
