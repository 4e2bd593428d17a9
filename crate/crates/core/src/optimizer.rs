//! Lattice search over (c, d) for the smallest family objective.
//!
//! All three objectives are affine in (a, b, g), and each of those is a sum
//! of a c-part and a d-part, so every objective separates as
//! F(c, d) = F_c(c) + F_d(d). Searching a product of a c-axis and a d-axis
//! therefore finds the same minimum as searching each axis on its own.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::{
    dedekind_budget, dedekind_constants, dirichlet_budget, dirichlet_constants, zeta_constants,
    zeta_objective, ConvexityParams, DedekindShape, Family, GrowthBound, TuringConstants,
};
use crate::error::{domain, Error, Result};
use crate::kernel::QuadratureSpec;

/// How the c and d progressions combine into lattice points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coupling {
    /// Point i is (c_start + i·c_step, d_start + i·d_step).
    Line,
    /// Every pairing of the c-axis with the d-axis.
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub c_start: f64,
    pub d_start: f64,
    pub c_step: f64,
    pub d_step: f64,
    /// Points along the c-axis (and along the line for [`Coupling::Line`]).
    pub count: usize,
    /// Points along the d-axis for [`Coupling::Grid`]; defaults to `count`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_count: Option<usize>,
    pub coupling: Coupling,
}

/// Lattice coordinates are snapped to this resolution so that, e.g.,
/// 1.05 + 20·0.01 lands on 1.25 rather than 1.2500000000000002.
const SNAP: f64 = 1e12;

fn snap(x: f64) -> f64 {
    (x * SNAP).round() / SNAP
}

impl LatticeSpec {
    /// The coarse first pass: c = 1.24 − NΔ, d = 0.99 − 2NΔ with Δ = 0.02
    /// and 0 ≤ N ≤ 12 on each axis.
    pub fn coarse_stage() -> Self {
        Self {
            c_start: 1.24,
            d_start: 0.99,
            c_step: -0.02,
            d_step: -0.04,
            count: 13,
            d_count: None,
            coupling: Coupling::Grid,
        }
    }

    /// The fine second pass: c = 1.05 + NΔ, d = 0.68 + NΔ with Δ = 0.01 and
    /// 0 ≤ N ≤ 20 on each axis.
    pub fn fine_stage() -> Self {
        Self {
            c_start: 1.05,
            d_start: 0.68,
            c_step: 0.01,
            d_step: 0.01,
            count: 21,
            d_count: None,
            coupling: Coupling::Grid,
        }
    }

    /// Grid with the given step covering the whole admissible box
    /// (1, 5/4] × (1/2, 1], anchored at the upper corner.
    pub fn admissible_box(step: f64) -> Result<Self> {
        if !(step > 0.0 && step <= 0.25) {
            return Err(domain(format!("step must lie in (0, 1/4], got {step}")));
        }
        let c_count = ((0.25 / step) - 1e-9).ceil() as usize;
        let d_count = ((0.5 / step) - 1e-9).ceil() as usize;
        Ok(Self {
            c_start: 1.25,
            d_start: 1.0,
            c_step: -step,
            d_step: -step,
            count: c_count,
            d_count: Some(d_count),
            coupling: Coupling::Grid,
        })
    }

    pub fn cardinality(&self) -> usize {
        match self.coupling {
            Coupling::Line => self.count,
            Coupling::Grid => self.count * self.d_count.unwrap_or(self.count),
        }
    }

    /// Lattice points in index order.
    pub fn points(&self) -> Vec<(f64, f64)> {
        match self.coupling {
            Coupling::Line => (0..self.count)
                .map(|i| {
                    let i = i as f64;
                    (
                        snap(self.c_start + i * self.c_step),
                        snap(self.d_start + i * self.d_step),
                    )
                })
                .collect(),
            Coupling::Grid => {
                let nd = self.d_count.unwrap_or(self.count);
                let mut out = Vec::with_capacity(self.count * nd);
                for i in 0..self.count {
                    let c = snap(self.c_start + i as f64 * self.c_step);
                    for j in 0..nd {
                        out.push((c, snap(self.d_start + j as f64 * self.d_step)));
                    }
                }
                out
            }
        }
    }
}

/// Family-specific inputs to the objective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum SearchContext {
    /// Minimise F = b·log(g_p/2π) + a.
    Zeta { growth: GrowthBound, g_p: f64 },
    /// Minimise B(Q, t₂).
    Dirichlet { q: u64, t2: f64, t0: f64 },
    /// Minimise B(D_K, t₂, N).
    Dedekind {
        shape: DedekindShape,
        t2: f64,
        t0: f64,
    },
}

impl SearchContext {
    pub fn family(&self) -> Family {
        match self {
            SearchContext::Zeta { .. } => Family::Zeta,
            SearchContext::Dirichlet { .. } => Family::Dirichlet,
            SearchContext::Dedekind { .. } => Family::Dedekind,
        }
    }

    /// Constants and objective at one parameter pair.
    pub fn evaluate(
        &self,
        p: ConvexityParams,
        spec: &QuadratureSpec,
    ) -> Result<(TuringConstants, f64)> {
        match *self {
            SearchContext::Zeta { growth, g_p } => {
                let k = zeta_constants(p, growth, spec)?;
                Ok((k, zeta_objective(&k, g_p)?))
            }
            SearchContext::Dirichlet { q, t2, t0 } => {
                let k = dirichlet_constants(p, t0, spec)?;
                Ok((k, dirichlet_budget(&k, q, t2)?))
            }
            SearchContext::Dedekind { shape, t2, t0 } => {
                let k = dedekind_constants(p, t0, spec)?;
                Ok((k, dedekind_budget(&k, &shape, t2)?))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRow {
    pub index: usize,
    pub c: f64,
    pub d: f64,
    pub a: f64,
    pub b: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedPoint {
    pub index: usize,
    pub c: f64,
    pub d: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub family: Family,
    pub best_params: ConvexityParams,
    pub best_value: f64,
    pub table: Vec<SearchRow>,
    pub skipped: Vec<SkippedPoint>,
}

impl SearchResult {
    pub fn best_row(&self) -> Option<&SearchRow> {
        self.table
            .iter()
            .find(|r| r.c == self.best_params.c && r.d == self.best_params.d)
    }
}

/// Evaluates the objective at every admissible lattice point.
///
/// Rows come back in lattice order whatever the thread count. Inadmissible
/// points and points whose kernels fail are listed in `skipped`. The minimum
/// breaks ties by smaller d, then smaller c.
pub fn grid_minimize(
    lattice: &LatticeSpec,
    context: &SearchContext,
    spec: &QuadratureSpec,
) -> Result<SearchResult> {
    spec.validate()?;
    let points = lattice.points();
    if points.is_empty() {
        return Err(Error::EmptyLattice);
    }
    let outcomes: Vec<std::result::Result<SearchRow, SkippedPoint>> = points
        .par_iter()
        .enumerate()
        .map(|(index, &(c, d))| {
            let skip = |reason: String| SkippedPoint {
                index,
                c,
                d,
                reason,
            };
            let p = ConvexityParams::new(c, d).map_err(|e| skip(e.to_string()))?;
            let (k, objective) = context.evaluate(p, spec).map_err(|e| skip(e.to_string()))?;
            Ok(SearchRow {
                index,
                c,
                d,
                a: k.a,
                b: k.b,
                g: k.g,
                objective,
            })
        })
        .collect();

    let mut table = Vec::new();
    let mut skipped = Vec::new();
    for o in outcomes {
        match o {
            Ok(row) => table.push(row),
            Err(s) => skipped.push(s),
        }
    }
    let best = table
        .iter()
        .min_by(|x, y| {
            x.objective
                .total_cmp(&y.objective)
                .then(x.d.total_cmp(&y.d))
                .then(x.c.total_cmp(&y.c))
        })
        .ok_or_else(|| {
            Error::Domain(format!(
                "no admissible lattice points ({} skipped)",
                skipped.len()
            ))
        })?;
    Ok(SearchResult {
        family: context.family(),
        best_params: ConvexityParams {
            c: best.c,
            d: best.d,
        },
        best_value: best.objective,
        table,
        skipped,
    })
}

/// Grid search over the box seed ± radius with the given step.
pub fn refine(
    seed: ConvexityParams,
    radius: f64,
    step: f64,
    context: &SearchContext,
    spec: &QuadratureSpec,
) -> Result<SearchResult> {
    seed.validate()?;
    if !(step > 0.0 && step.is_finite()) {
        return Err(domain(format!("step must be positive, got {step}")));
    }
    if !(radius >= 0.0 && radius.is_finite()) {
        return Err(domain(format!("radius must be nonnegative, got {radius}")));
    }
    let half = (radius / step + 1e-9).floor() as usize;
    let lattice = LatticeSpec {
        c_start: seed.c - half as f64 * step,
        d_start: seed.d - half as f64 * step,
        c_step: step,
        d_step: step,
        count: 2 * half + 1,
        d_count: None,
        coupling: Coupling::Grid,
    };
    grid_minimize(&lattice, context, spec)
}
