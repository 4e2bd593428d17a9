//! Closed-form Turing-method constants for the three families, plus the
//! objectives and budgets they feed.
//!
//! Every formula splits into a c-dependent part coming from the convexity
//! estimate on ½ ≤ σ ≤ c and a d-dependent part coming from the shifted
//! quotient ζ(s)/ζ(s+d). The d-part always carries −I(d).

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::kernel::{i_of_d, log_zeta_tail, zeta_log_deriv, zeta_real, QuadratureSpec};

/// Height above which the zeta constants are valid.
pub const ZETA_T0: f64 = 168.0 * PI;

/// Small fixed error allowance in the zeta formula for `a`.
pub const ZETA_MU: f64 = 3e-6;

/// Lowest admissible t₀ for the Dirichlet formulas.
pub const DIRICHLET_MIN_T0: f64 = 50.0;

/// Stirling factor in the Dirichlet budget, 1/(2π) to four places.
pub const DIRICHLET_BUDGET_FACTOR: f64 = 0.1592;

const LN_4: f64 = 2.0 * LN_2;

/// The free convexity parameters: 1 < c ≤ 5/4 and 1/2 < d ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexityParams {
    pub c: f64,
    pub d: f64,
}

impl ConvexityParams {
    pub fn new(c: f64, d: f64) -> Result<Self> {
        let p = Self { c, d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > 1.0 && self.c <= 1.25) {
            return Err(domain(format!("c must lie in (1, 5/4], got {}", self.c)));
        }
        if !(self.d > 0.5 && self.d <= 1.0) {
            return Err(domain(format!("d must lie in (1/2, 1], got {}", self.d)));
        }
        Ok(())
    }
}

/// An assumed bound |ζ(½+it)| ≤ K t^θ for t > t_min.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthBound {
    pub k: f64,
    pub theta: f64,
    pub t_min: f64,
}

impl Default for GrowthBound {
    /// K = 2.53, θ = 1/4 for t ≥ 128π.
    fn default() -> Self {
        Self {
            k: 2.53,
            theta: 0.25,
            t_min: 128.0 * PI,
        }
    }
}

impl GrowthBound {
    pub fn new(k: f64, theta: f64, t_min: f64) -> Result<Self> {
        let g = Self { k, theta, t_min };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k > 0.0 && self.k.is_finite()) {
            return Err(domain(format!("K must be positive, got {}", self.k)));
        }
        if !(self.theta > 0.0 && self.theta < 0.5) {
            return Err(domain(format!(
                "theta must lie in (0, 1/2), got {}",
                self.theta
            )));
        }
        if !(self.t_min > 0.0 && self.t_min.is_finite()) {
            return Err(domain(format!(
                "t_min must be positive, got {}",
                self.t_min
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Zeta,
    Dirichlet,
    Dedekind,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Zeta => "zeta",
            Family::Dirichlet => "dirichlet",
            Family::Dedekind => "dedekind",
        })
    }
}

/// Output of a constants formula: |∫S| ≤ a + b·(log term) [+ g·(log term)].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TuringConstants {
    pub a: f64,
    pub b: f64,
    /// Only present for the Dedekind family.
    pub g: Option<f64>,
    pub family: Family,
    pub t0: f64,
}

impl TuringConstants {
    /// Constants supplied directly rather than derived, e.g. published
    /// triples used for comparison.
    pub fn given(family: Family, a: f64, b: f64, g: Option<f64>, t0: f64) -> Result<Self> {
        if !(a > 0.0 && b >= 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(domain(format!(
                "constants must be positive, got a = {a}, b = {b}"
            )));
        }
        match (family, g) {
            (Family::Dedekind, Some(g)) if g > 0.0 && g.is_finite() => {}
            (Family::Dedekind, _) => return Err(domain("dedekind constants need g > 0")),
            (_, Some(_)) => return Err(domain("g is only defined for the dedekind family")),
            (_, None) => {}
        }
        Ok(Self {
            a,
            b,
            g,
            family,
            t0,
        })
    }

    pub(crate) fn expect_family(&self, family: Family) -> Result<()> {
        if self.family != family {
            return Err(domain(format!(
                "expected {family} constants, got {}",
                self.family
            )));
        }
        Ok(())
    }
}

/// Degree, signature and discriminant of a number field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DedekindShape {
    pub degree: u32,
    pub r1: u32,
    pub r2: u32,
    pub abs_discriminant: f64,
}

impl DedekindShape {
    pub fn new(degree: u32, r1: u32, r2: u32, abs_discriminant: f64) -> Result<Self> {
        let s = Self {
            degree,
            r1,
            r2,
            abs_discriminant,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(domain("degree must be positive"));
        }
        if self.r1 + 2 * self.r2 != self.degree {
            return Err(domain(format!(
                "signature ({}, {}) does not match degree {}",
                self.r1, self.r2, self.degree
            )));
        }
        if !(self.abs_discriminant > 1.0) {
            return Err(domain("|D_K| must exceed 1"));
        }
        Ok(())
    }
}

/// The d-dependent combination shared by the zeta and Dirichlet `a`:
/// −(log 4) d² ζ′/ζ(½+d) − I(d).
fn shifted_quotient_part(d: f64, spec: &QuadratureSpec) -> Result<f64> {
    let ld = zeta_log_deriv(0.5 + d, spec)?;
    let i = i_of_d(d, spec)?.value;
    Ok(-d * d * LN_4 * ld - i)
}

/// Zeta constants (a, b) valid for t₂ > t₁ > 168π.
pub fn zeta_constants(
    p: ConvexityParams,
    growth: GrowthBound,
    spec: &QuadratureSpec,
) -> Result<TuringConstants> {
    p.validate()?;
    growth.validate()?;
    if growth.t_min > ZETA_T0 {
        return Err(domain(format!(
            "growth bound only holds above {}, beyond the threshold 168π",
            growth.t_min
        )));
    }
    let ConvexityParams { c, d } = p;
    let d2 = d * d;
    let pi_a = shifted_quotient_part(d, spec)?
        + d2 * LN_4 * (0.25 - 0.5 * (2.0 * PI).ln())
        + 0.5 * d2 * PI.ln()
        + 0.5 * (c - 0.5) * (growth.k * zeta_real(c, spec)?).ln()
        + log_zeta_tail(c, spec)?
        + ZETA_MU;
    Ok(TuringConstants {
        a: pi_a / PI,
        b: zeta_b(c, d, growth.theta),
        g: None,
        family: Family::Zeta,
        t0: ZETA_T0,
    })
}

fn zeta_b(c: f64, d: f64, theta: f64) -> f64 {
    (theta * (c - 0.5) + d * d * (LN_4 - 1.0)) / (2.0 * PI)
}

/// Infimum of the zeta `b` over the admissible box, reached as c → 1⁺ and
/// d → ½⁺.
pub fn zeta_b_infimum(theta: f64) -> f64 {
    zeta_b(1.0, 0.5, theta)
}

/// F = b·log(g_p/2π) + a, the quantity Gram-block counts scale with.
pub fn zeta_objective(consts: &TuringConstants, g_p: f64) -> Result<f64> {
    consts.expect_family(Family::Zeta)?;
    if !(g_p > 2.0 * PI) {
        return Err(domain(format!("g_p must exceed 2π, got {g_p}")));
    }
    Ok(consts.b * (g_p / (2.0 * PI)).ln() + consts.a)
}

/// Coefficients (of log² g_p, of log g_p) in the Gram-block requirement.
pub fn gram_block_coefficients(consts: &TuringConstants) -> Result<(f64, f64)> {
    consts.expect_family(Family::Zeta)?;
    let six_pi = 6.0 * PI;
    Ok((
        consts.b / six_pi,
        (consts.a - consts.b * (2.0 * PI).ln()) / six_pi,
    ))
}

/// Least number of consecutive Rosser blocks ending at g_p that Turing's
/// method needs with these constants.
pub fn gram_block_requirement(consts: &TuringConstants, g_p: f64) -> Result<u64> {
    if !(g_p > 2.0 * PI) {
        return Err(domain(format!("g_p must exceed 2π, got {g_p}")));
    }
    let (quad, lin) = gram_block_coefficients(consts)?;
    let l = g_p.ln();
    let bound = quad * l * l + lin * l;
    Ok(bound.ceil().max(1.0) as u64)
}

/// Dirichlet L-function constants (a, b) for t₂ > t₁ > t₀ ≥ 50.
pub fn dirichlet_constants(
    p: ConvexityParams,
    t0: f64,
    spec: &QuadratureSpec,
) -> Result<TuringConstants> {
    p.validate()?;
    if !(t0 >= DIRICHLET_MIN_T0) {
        return Err(domain(format!("t0 must be at least 50, got {t0}")));
    }
    let ConvexityParams { c, d } = p;
    let d2 = d * d;
    let pi_a = (c - 0.5) * zeta_real(c, spec)?.ln()
        + log_zeta_tail(c, spec)?
        + shifted_quotient_part(d, spec)?
        + 15.0 * d2 / (t0 * t0);
    let b = (0.5 * (c - 0.5).powi(2) + d2 * (LN_4 - 1.0)) / (2.0 * PI);
    Ok(TuringConstants {
        a: pi_a / PI,
        b,
        g: None,
        family: Family::Dirichlet,
        t0,
    })
}

/// B(Q, t₂) = 0.1592·L·(a + b·L) with L = log(Q t₂ / 2π).
pub fn dirichlet_budget(consts: &TuringConstants, q: u64, t2: f64) -> Result<f64> {
    consts.expect_family(Family::Dirichlet)?;
    if q < 2 {
        return Err(domain(format!("conductor must exceed 1, got {q}")));
    }
    let x = q as f64 * t2 / (2.0 * PI);
    if !(x > 1.0) {
        return Err(domain(format!("Q t2 / 2π must exceed 1, got {x}")));
    }
    let l = x.ln();
    Ok(DIRICHLET_BUDGET_FACTOR * l * (consts.a + consts.b * l))
}

/// Dedekind zeta constants (a, b, g) for t₂ > t₁ > t₀.
pub fn dedekind_constants(
    p: ConvexityParams,
    t0: f64,
    spec: &QuadratureSpec,
) -> Result<TuringConstants> {
    p.validate()?;
    if !(t0 > 0.0 && t0.is_finite()) {
        return Err(domain(format!("t0 must be positive, got {t0}")));
    }
    let ConvexityParams { c, d } = p;
    let d2 = d * d;
    let t02 = t0 * t0;
    let cm = c - 0.5;
    let pi_a = cm * (81.0 / (32.0 * t02) + 3f64.ln()) + 4.0 * d2 * LN_2 / t02;
    let pi_b = cm * (zeta_real(c, spec)?.ln() + 81.0 * cm / (128.0 * t02))
        + log_zeta_tail(c, spec)?
        + d2 * LN_2 * (LN_2 - 0.5 - 2.0 * zeta_log_deriv(0.5 + d, spec)? + 8.0 / t02)
        - i_of_d(d, spec)?.value;
    let pi_g = 0.25 * cm * cm + 0.5 * d2 * (LN_4 - 1.0);
    Ok(TuringConstants {
        a: pi_a / PI,
        b: pi_b / PI,
        g: Some(pi_g / PI),
        family: Family::Dedekind,
        t0,
    })
}

/// L = log(|D_K| (t₂/2π)^N), the conductor-like quantity of the Dedekind
/// bounds.
pub fn dedekind_log_conductor(shape: &DedekindShape, t2: f64) -> Result<f64> {
    shape.validate()?;
    if !(t2 > 0.0) {
        return Err(domain(format!("t2 must be positive, got {t2}")));
    }
    Ok(shape.abs_discriminant.ln() + f64::from(shape.degree) * (t2 / (2.0 * PI)).ln())
}

/// B(D_K, t₂, N) = ((bN + a)/2π)·L + (g/2π)·L².
pub fn dedekind_budget(consts: &TuringConstants, shape: &DedekindShape, t2: f64) -> Result<f64> {
    consts.expect_family(Family::Dedekind)?;
    let g = consts
        .g
        .ok_or_else(|| domain("dedekind constants are missing g"))?;
    let l = dedekind_log_conductor(shape, t2)?;
    if !(l > 0.0) {
        return Err(domain(format!(
            "log(|D_K| (t2/2π)^N) must be positive, got {l}"
        )));
    }
    let n = f64::from(shape.degree);
    Ok((consts.b * n + consts.a) / (2.0 * PI) * l + g / (2.0 * PI) * l * l)
}
