//! Sign-change scanning of Z(t), Gram blocks, Rosser's rule and the Turing
//! bound that turns a run of good blocks into an exact zero count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::{gram_block_requirement, Family, TuringConstants, ZETA_T0};
use crate::error::{domain, Error, Result};
use crate::riemann_siegel::{gram_point, theta, theta_deriv, z_unchecked as z_eval, MAX_ORDER};

/// Lowest height the scanner accepts.
pub const SCAN_FLOOR: f64 = 10.0;

/// How densely Z(t) is sampled and how hard the scanner tries to confirm a
/// sign-change count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPolicy {
    /// Riemann–Siegel correction order.
    pub order: u8,
    /// Step as a fraction of the mean zero gap π/θ′(t); at most ¼.
    pub step_fraction: f64,
    /// Number of 4× refinements allowed before giving up.
    pub max_depth: u32,
}

impl Default for ScanPolicy {
    fn default() -> Self {
        Self {
            order: MAX_ORDER,
            step_fraction: 0.25,
            max_depth: 4,
        }
    }
}

impl ScanPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.order > MAX_ORDER {
            return Err(domain(format!("order must be at most {MAX_ORDER}")));
        }
        if !(self.step_fraction > 0.0 && self.step_fraction <= 0.25) {
            return Err(domain(format!(
                "step_fraction must lie in (0, 0.25], got {}",
                self.step_fraction
            )));
        }
        if self.max_depth == 0 {
            return Err(domain("max_depth must be at least 1"));
        }
        Ok(())
    }

    /// The same policy at four times the sampling density.
    pub fn refined(&self) -> Self {
        Self {
            step_fraction: self.step_fraction / 4.0,
            ..*self
        }
    }
}

/// Two samples with determinate, opposite signs of Z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignBracket {
    pub lo: f64,
    pub hi: f64,
}

/// Per-segment result of a scan over consecutive anchors.
#[derive(Debug, Clone)]
struct Segmented {
    brackets: Vec<SignBracket>,
    /// Sign changes in each [anchor_i, anchor_{i+1}).
    counts: Vec<usize>,
    /// Segments touching an anchor whose sign could not be settled.
    indeterminate: Vec<bool>,
    /// Sign of Z at each anchor, when determinate.
    anchor_signs: Vec<Option<i8>>,
}

fn step_at(t: f64, fraction: f64) -> f64 {
    fraction * std::f64::consts::PI / theta_deriv(t).unwrap_or(1.0).max(0.5)
}

/// Sample nodes strictly inside (a, b).
fn interior_nodes(a: f64, b: f64, fraction: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut t = a + step_at(a, fraction);
    while t < b {
        out.push(t);
        t += step_at(t, fraction);
    }
    // avoid a sliver next to b
    if let Some(&last) = out.last() {
        if b - last < 0.25 * step_at(last, fraction) {
            out.pop();
        }
    }
    out
}

/// Sign at an interior node, nudging within the local step if the value
/// sits inside its remainder envelope.
fn interior_sign(t: f64, h: f64, lo: f64, hi: f64, order: u8) -> Option<(f64, i8)> {
    if let Some(s) = z_eval(t, order).sign() {
        return Some((t, s));
    }
    for k in [1.0, -1.0, 2.0, -2.0, 3.0, -3.0] {
        let u = t + k * h / 8.0;
        if u > lo && u < hi {
            if let Some(s) = z_eval(u, order).sign() {
                return Some((u, s));
            }
        }
    }
    None
}

fn scan_once(anchors: &[f64], policy: &ScanPolicy) -> Result<Segmented> {
    let segs = anchors.len() - 1;
    let anchor_signs: Vec<Option<i8>> = anchors
        .par_iter()
        .map(|&t| z_eval(t, policy.order).sign())
        .collect();

    let per_segment: Vec<Result<Vec<(f64, i8)>>> = (0..segs)
        .into_par_iter()
        .map(|i| {
            let (a, b) = (anchors[i], anchors[i + 1]);
            interior_nodes(a, b, policy.step_fraction)
                .into_iter()
                .map(|t| {
                    let h = step_at(t, policy.step_fraction);
                    interior_sign(t, h, a, b, policy.order).ok_or(Error::IndeterminateSign { t })
                })
                .collect()
        })
        .collect();

    let mut brackets = Vec::new();
    let mut counts = vec![0usize; segs];
    let mut indeterminate = vec![false; segs];
    let mut prev: Option<(f64, i8)> = None;
    for i in 0..segs {
        match anchor_signs[i] {
            Some(s) => {
                if let Some((pt, ps)) = prev {
                    if ps != s {
                        brackets.push(SignBracket {
                            lo: pt,
                            hi: anchors[i],
                        });
                        // a change landing exactly on an anchor belongs to
                        // the interval that anchor closes
                        counts[i - 1] += 1;
                    }
                }
                prev = Some((anchors[i], s));
            }
            None => {
                indeterminate[i] = true;
                if i > 0 {
                    indeterminate[i - 1] = true;
                }
            }
        }
        let nodes = per_segment[i].clone()?;
        for (t, s) in nodes {
            if let Some((pt, ps)) = prev {
                if ps != s {
                    brackets.push(SignBracket { lo: pt, hi: t });
                    counts[i] += 1;
                }
            }
            prev = Some((t, s));
        }
    }
    match anchor_signs[segs] {
        Some(s) => {
            if let Some((pt, ps)) = prev {
                if ps != s {
                    brackets.push(SignBracket {
                        lo: pt,
                        hi: anchors[segs],
                    });
                    counts[segs - 1] += 1;
                }
            }
        }
        None => indeterminate[segs - 1] = true,
    }
    Ok(Segmented {
        brackets,
        counts,
        indeterminate,
        anchor_signs,
    })
}

/// Scans with 4× refinement until the per-segment counts repeat.
fn scan_segments(anchors: &[f64], policy: &ScanPolicy) -> Result<Segmented> {
    policy.validate()?;
    let mut current = scan_once(anchors, policy)?;
    let mut p = *policy;
    for _ in 0..policy.max_depth {
        p = p.refined();
        let finer = scan_once(anchors, &p)?;
        if finer.counts == current.counts && finer.indeterminate == current.indeterminate {
            return Ok(finer);
        }
        current = finer;
    }
    Err(Error::Convergence(format!(
        "sign-change count on [{}, {}] still moving after {} refinements",
        anchors[0],
        anchors[anchors.len() - 1],
        policy.max_depth
    )))
}

/// Brackets every sign change of Z on [t_lo, t_hi].
pub fn scan_interval(t_lo: f64, t_hi: f64, policy: &ScanPolicy) -> Result<Vec<SignBracket>> {
    if !(t_lo >= SCAN_FLOOR) || !t_hi.is_finite() {
        return Err(domain(format!(
            "scan needs t_lo >= {SCAN_FLOOR}, got {t_lo}"
        )));
    }
    if t_hi < t_lo {
        return Err(domain(format!("scan range [{t_lo}, {t_hi}] is reversed")));
    }
    if t_hi == t_lo {
        return Ok(Vec::new());
    }
    let seg = scan_segments(&[t_lo, t_hi], policy)?;
    if let Some(i) = seg.anchor_signs.iter().position(Option::is_none) {
        return Err(Error::IndeterminateSign {
            t: if i == 0 { t_lo } else { t_hi },
        });
    }
    Ok(seg.brackets)
}

/// A run of Gram intervals between consecutive good Gram points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramBlock {
    /// Index of the Gram point that opens the block.
    pub start: i64,
    pub len: usize,
    /// Sign changes in each Gram interval of the block.
    pub counts: Vec<usize>,
    pub rosser_ok: bool,
    pub indeterminate: bool,
    /// False for a fragment cut off by the ends of the scanned range.
    pub complete: bool,
}

impl GramBlock {
    pub fn end(&self) -> i64 {
        self.start + self.len as i64
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    fn parity_ok(&self) -> bool {
        match self.counts.as_slice() {
            [] => false,
            [only] => only % 2 == 1,
            [first, inner @ .., last] => {
                first % 2 == 0 && last % 2 == 0 && inner.iter().all(|c| c % 2 == 1)
            }
        }
    }

    fn assess(&mut self) {
        self.rosser_ok =
            self.complete && !self.indeterminate && self.total() == self.len && self.parity_ok();
    }
}

/// Splits [g_{n_lo}, g_{n_hi}) into Gram blocks.
pub fn classify_blocks(n_lo: i64, n_hi: i64, policy: &ScanPolicy) -> Result<Vec<GramBlock>> {
    if n_lo >= n_hi {
        return Err(domain(format!("need n_lo < n_hi, got {n_lo} >= {n_hi}")));
    }
    let gram: Vec<f64> = (n_lo..=n_hi)
        .into_par_iter()
        .map(|k| gram_point(k).map(|g| g.ordinate))
        .collect::<Result<_>>()?;
    if gram[0] < SCAN_FLOOR {
        return Err(domain(format!("g_{n_lo} lies below {SCAN_FLOOR}")));
    }
    let seg = scan_segments(&gram, policy)?;

    // (−1)^k Z(g_k) > 0 marks a good Gram point
    let good: Vec<bool> = seg
        .anchor_signs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let k = n_lo + i as i64;
            let parity = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            matches!(s, Some(v) if *v == parity)
        })
        .collect();

    let mut blocks = Vec::new();
    let mut open = 0usize;
    let mut open_complete = good[0];
    for (i, &is_good) in good.iter().enumerate().skip(1) {
        if is_good || i == gram.len() - 1 {
            let mut b = GramBlock {
                start: n_lo + open as i64,
                len: i - open,
                counts: seg.counts[open..i].to_vec(),
                rosser_ok: false,
                indeterminate: seg.indeterminate[open..i].iter().any(|&x| x),
                complete: open_complete && good[i],
            };
            b.assess();
            blocks.push(b);
            open = i;
            open_complete = true;
        }
    }
    Ok(blocks)
}

/// Outcome of applying the Turing bound on both sides of g_p.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub n: i64,
    pub p: i64,
    pub g_n: f64,
    pub g_p: f64,
    /// Blocks making up [g_n, g_p).
    pub blocks_used: usize,
    pub required_blocks: u64,
    /// End index q of the run [g_p, g_q) that bounds N(g_p) from above.
    pub upper_run_end: i64,
    pub upper_blocks_used: usize,
    pub upper_required_blocks: u64,
    pub certified: bool,
    /// Sign changes of Z located on (0, g_p].
    pub lower_count: u64,
    /// N(g_p) ≤ p + 1 from the run above g_p.
    pub upper_bound: u64,
    /// N(g_p), when the two sides agree.
    pub exact_count: Option<u64>,
    /// Zeros in [g_n, g_p), when certified.
    pub range_zero_count: Option<u64>,
    pub indeterminate: bool,
    pub policy: ScanPolicy,
    pub constants_used: TuringConstants,
    pub blocks: Vec<GramBlock>,
}

/// Upper bound on how far the run above g_p may be extended.
const MAX_UPPER_EXTENSION: i64 = 1 << 14;

/// [`certify_with`] under the default scan policy.
pub fn certify(n: i64, p: i64, consts: &TuringConstants) -> Result<CertificationReport> {
    certify_with(n, p, consts, &ScanPolicy::default())
}

/// Certifies N(g_p) = p + 1 from a Rosser-satisfying run [g_n, g_p) and a
/// second run starting at g_p, each long enough for the Turing bound.
pub fn certify_with(
    n: i64,
    p: i64,
    consts: &TuringConstants,
    policy: &ScanPolicy,
) -> Result<CertificationReport> {
    consts.expect_family(Family::Zeta)?;
    policy.validate()?;
    if p <= n {
        return Err(domain(format!("need p > n, got n = {n}, p = {p}")));
    }
    let g_n = gram_point(n.max(-1))?.ordinate;
    if !(g_n > ZETA_T0) {
        return Err(Error::Threshold {
            n,
            g_n,
            threshold: ZETA_T0,
        });
    }
    let g_p = gram_point(p)?.ordinate;

    let blocks = classify_blocks(n, p, policy)?;
    let first = &blocks[0];
    let last = &blocks[blocks.len() - 1];
    if !first.complete || first.start != n {
        return Err(Error::Alignment(format!("g_{n} is not a good Gram point")));
    }
    if !last.complete || last.end() != p {
        return Err(Error::Alignment(format!("g_{p} is not a good Gram point")));
    }
    let mut indeterminate = false;
    for b in &blocks {
        if b.indeterminate {
            indeterminate = true;
        } else if !b.rosser_ok {
            return Err(rosser_violation(b));
        }
    }
    let required_blocks = gram_block_requirement(consts, g_p)?;

    let (upper_run_end, upper_blocks_used, upper_required_blocks, upper_indeterminate) =
        upper_run(p, consts, policy, required_blocks)?;
    indeterminate |= upper_indeterminate;

    let lower_count = scan_interval(SCAN_FLOOR, g_p, policy)?.len() as u64;
    let upper_bound = (p + 1) as u64;
    let certified = !indeterminate
        && blocks.len() as u64 >= required_blocks
        && upper_blocks_used as u64 >= upper_required_blocks
        && lower_count == upper_bound;
    let exact_count = certified.then_some(upper_bound);
    let range_zero_count = certified.then_some((p - n) as u64);

    if let Some(count) = exact_count {
        let expected = (theta(g_p)? / std::f64::consts::PI + 1.0).round() as u64;
        if count != expected {
            return Err(Error::CountMismatch {
                p,
                certified: count,
                expected,
            });
        }
    }

    Ok(CertificationReport {
        n,
        p,
        g_n,
        g_p,
        blocks_used: blocks.len(),
        required_blocks,
        upper_run_end,
        upper_blocks_used,
        upper_required_blocks,
        certified,
        lower_count,
        upper_bound,
        exact_count,
        range_zero_count,
        indeterminate,
        policy: *policy,
        constants_used: *consts,
        blocks,
    })
}

fn rosser_violation(b: &GramBlock) -> Error {
    Error::RosserViolation {
        start: b.start,
        len: b.len,
        counts: b.counts.clone(),
    }
}

/// Grows a run of complete blocks upward from g_p until it is long enough
/// for the requirement at its own upper end.
fn upper_run(
    p: i64,
    consts: &TuringConstants,
    policy: &ScanPolicy,
    hint: u64,
) -> Result<(i64, usize, u64, bool)> {
    let mut span = (8 * hint as i64).max(16);
    loop {
        let blocks = classify_blocks(p, p + span, policy)?;
        if !blocks[0].complete {
            return Err(Error::Alignment(format!("g_{p} is not a good Gram point")));
        }
        let mut used = 0usize;
        let mut indeterminate = false;
        for b in blocks.iter().filter(|b| b.complete) {
            if b.indeterminate {
                indeterminate = true;
            } else if !b.rosser_ok {
                return Err(rosser_violation(b));
            }
            used += 1;
            let g_end = gram_point(b.end())?.ordinate;
            let need = gram_block_requirement(consts, g_end)?;
            if used as u64 >= need {
                return Ok((b.end(), used, need, indeterminate));
            }
        }
        if span >= MAX_UPPER_EXTENSION {
            return Err(Error::Convergence(format!(
                "no sufficient block run found above g_{p} within {span} Gram intervals"
            )));
        }
        span *= 2;
    }
}
