use std::io::Write;

use serde::{Deserialize, Serialize};
use turing_core::constants::{ConvexityParams, Family, GrowthBound, TuringConstants};
use turing_core::gram::CertificationReport;
use turing_core::optimizer::SearchResult;
use turing_core::riemann_siegel::GrowthReport;

use crate::args::Format;

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "turing-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub params: ConvexityParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthBound>,
    pub constants: TuringConstants,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub constants: TuringConstants,
    /// The logarithm the budget is linear or quadratic in.
    pub log_term: f64,
    pub budget: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlocksReport {
    pub constants: TuringConstants,
    pub g_p: f64,
    /// Coefficient of log² g_p.
    pub quadratic: f64,
    /// Coefficient of log g_p.
    pub linear: f64,
    pub required_blocks: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "report", rename_all = "snake_case")]
pub enum Report {
    Constants(ConstantsReport),
    Search(SearchResult),
    Budget(BudgetReport),
    BlocksRequired(BlocksReport),
    Growth(GrowthReport),
    Certification(CertificationReport),
}

/// The JSON document: schema tag, report kind, report body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema: String,
    #[serde(flatten)]
    pub report: Report,
}

impl Document {
    pub fn new(report: Report) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            report,
        }
    }
}

/// x to `digits` significant digits, trailing zeros dropped; scientific
/// notation below 1e-4 or when the integer part needs more than `digits`.
pub fn sig(x: f64, digits: u8) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = i32::from(digits.max(1));
    let exp = x.abs().log10().floor() as i32;
    if exp < -4 || exp >= digits {
        let s = format!("{:.*e}", (digits - 1) as usize, x);
        let (mant, e) = s.split_once('e').unwrap();
        return format!("{}e{}", trim(mant), e);
    }
    let decimals = (digits - 1 - exp).max(0) as usize;
    trim(&format!("{x:.decimals$}")).to_string()
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>, digits: u8) -> String {
    x.map(|v| sig(v, digits)).unwrap_or_default()
}

/// Renders the report in the requested format.
pub fn render(report: &Report, format: Format, digits: u8) -> Result<Vec<u8>, String> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&Document::new(report.clone()))
                .map_err(|e| e.to_string())?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => csv_bytes(report, digits).map_err(|e| e.to_string()),
        Format::Text => Ok(text(report, digits).into_bytes()),
    }
}

fn csv_bytes(report: &Report, digits: u8) -> csv::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let s = |x: f64| sig(x, digits);
    match report {
        Report::Constants(r) => {
            let k = &r.constants;
            w.write_record(["family", "c", "d", "a", "b", "g", "t0"])?;
            w.write_record([
                k.family.to_string(),
                s(r.params.c),
                s(r.params.d),
                s(k.a),
                s(k.b),
                opt(k.g, digits),
                s(k.t0),
            ])?;
        }
        Report::Search(r) => {
            let with_g = r.family == Family::Dedekind;
            if with_g {
                w.write_record(["c", "d", "a", "b", "g", "objective"])?;
            } else {
                w.write_record(["c", "d", "a", "b", "objective"])?;
            }
            for row in &r.table {
                let mut rec = vec![s(row.c), s(row.d), s(row.a), s(row.b)];
                if with_g {
                    rec.push(opt(row.g, digits));
                }
                rec.push(s(row.objective));
                w.write_record(&rec)?;
            }
        }
        Report::Budget(r) => {
            let k = &r.constants;
            w.write_record(["family", "a", "b", "g", "log_term", "budget"])?;
            w.write_record([
                k.family.to_string(),
                s(k.a),
                s(k.b),
                opt(k.g, digits),
                s(r.log_term),
                s(r.budget),
            ])?;
        }
        Report::BlocksRequired(r) => {
            w.write_record(["a", "b", "g_p", "quadratic", "linear", "required_blocks"])?;
            w.write_record([
                s(r.constants.a),
                s(r.constants.b),
                s(r.g_p),
                s(r.quadratic),
                s(r.linear),
                r.required_blocks.to_string(),
            ])?;
        }
        Report::Growth(r) => {
            w.write_record([
                "t_lo",
                "t_hi",
                "samples",
                "k",
                "exponent",
                "max_ratio",
                "argmax",
                "max_ratio_upper",
                "pass",
            ])?;
            w.write_record([
                s(r.t_lo),
                s(r.t_hi),
                r.samples.to_string(),
                s(r.k),
                s(r.exponent),
                s(r.max_ratio),
                s(r.argmax),
                s(r.max_ratio_upper),
                r.pass.to_string(),
            ])?;
        }
        Report::Certification(r) => {
            w.write_record(["start_index", "length", "counts", "rosser_ok"])?;
            for b in &r.blocks {
                let counts: Vec<String> = b.counts.iter().map(usize::to_string).collect();
                w.write_record([
                    b.start.to_string(),
                    b.len.to_string(),
                    counts.join(";"),
                    b.rosser_ok.to_string(),
                ])?;
            }
        }
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

/// Left-aligned name column, right-aligned values.
fn table(rows: &[(&str, String)]) -> String {
    let wn = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let wv = rows.iter().map(|r| r.1.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (name, value) in rows {
        out.push_str(&format!("{name:<wn$}  {value:>wv$}\n"));
    }
    out
}

fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for r in rows {
        out.push_str(&line(r.clone()));
    }
    out
}

fn constants_rows(k: &TuringConstants, digits: u8) -> Vec<(&'static str, String)> {
    let mut rows = vec![
        ("family", k.family.to_string()),
        ("a", sig(k.a, digits)),
        ("b", sig(k.b, digits)),
    ];
    if let Some(g) = k.g {
        rows.push(("g", sig(g, digits)));
    }
    rows.push(("t0", sig(k.t0, digits)));
    rows
}

fn text(report: &Report, digits: u8) -> String {
    let s = |x: f64| sig(x, digits);
    match report {
        Report::Constants(r) => {
            let mut rows = vec![("c", s(r.params.c)), ("d", s(r.params.d))];
            if let Some(g) = r.growth {
                rows.push(("K", s(g.k)));
                rows.push(("theta", s(g.theta)));
            }
            rows.extend(constants_rows(&r.constants, digits));
            table(&rows)
        }
        Report::Search(r) => {
            let with_g = r.family == Family::Dedekind;
            let mut header = vec!["c", "d", "a", "b"];
            if with_g {
                header.push("g");
            }
            header.push("objective");
            let rows: Vec<Vec<String>> = r
                .table
                .iter()
                .map(|row| {
                    let mut v = vec![s(row.c), s(row.d), s(row.a), s(row.b)];
                    if with_g {
                        v.push(opt(row.g, digits));
                    }
                    v.push(s(row.objective));
                    v
                })
                .collect();
            let mut out = columns(&header, &rows);
            out.push_str(&format!(
                "\nbest ({}, {}) with objective {}; {} evaluated, {} skipped\n",
                s(r.best_params.c),
                s(r.best_params.d),
                s(r.best_value),
                r.table.len(),
                r.skipped.len()
            ));
            out
        }
        Report::Budget(r) => {
            let mut rows = constants_rows(&r.constants, digits);
            rows.push(("log_term", s(r.log_term)));
            rows.push(("budget", s(r.budget)));
            table(&rows)
        }
        Report::BlocksRequired(r) => {
            let mut rows = constants_rows(&r.constants, digits);
            rows.push(("g_p", s(r.g_p)));
            rows.push(("quadratic", s(r.quadratic)));
            rows.push(("linear", s(r.linear)));
            rows.push(("required_blocks", r.required_blocks.to_string()));
            table(&rows)
        }
        Report::Growth(r) => table(&[
            ("t_lo", s(r.t_lo)),
            ("t_hi", s(r.t_hi)),
            ("samples", r.samples.to_string()),
            ("k", s(r.k)),
            ("exponent", s(r.exponent)),
            ("max_ratio", s(r.max_ratio)),
            ("argmax", s(r.argmax)),
            ("max_ratio_upper", s(r.max_ratio_upper)),
            ("pass", r.pass.to_string()),
        ]),
        Report::Certification(r) => {
            let opt_u = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
            let mut rows = vec![
                ("n", r.n.to_string()),
                ("p", r.p.to_string()),
                ("g_n", s(r.g_n)),
                ("g_p", s(r.g_p)),
                ("blocks_used", r.blocks_used.to_string()),
                ("required_blocks", r.required_blocks.to_string()),
                ("upper_run_end", r.upper_run_end.to_string()),
                ("upper_blocks_used", r.upper_blocks_used.to_string()),
                ("upper_required_blocks", r.upper_required_blocks.to_string()),
                ("lower_count", r.lower_count.to_string()),
                ("upper_bound", r.upper_bound.to_string()),
                ("exact_count", opt_u(r.exact_count)),
                ("range_zero_count", opt_u(r.range_zero_count)),
                ("indeterminate", r.indeterminate.to_string()),
                ("certified", r.certified.to_string()),
            ];
            rows.extend(constants_rows(&r.constants_used, digits));
            let mut out = table(&rows);
            let long: Vec<Vec<String>> = r
                .blocks
                .iter()
                .filter(|b| b.len > 1 || !b.rosser_ok)
                .map(|b| {
                    let counts: Vec<String> = b.counts.iter().map(usize::to_string).collect();
                    vec![
                        b.start.to_string(),
                        b.len.to_string(),
                        counts.join(";"),
                        b.rosser_ok.to_string(),
                    ]
                })
                .collect();
            if !long.is_empty() {
                out.push_str("\nblocks longer than one interval\n");
                out.push_str(&columns(
                    &["start_index", "length", "counts", "rosser_ok"],
                    &long,
                ));
            }
            out
        }
    }
}

/// Writes rendered bytes to the file or to standard output.
pub fn emit(bytes: &[u8], path: Option<&std::path::Path>) -> std::io::Result<usize> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(bytes.len())
}
