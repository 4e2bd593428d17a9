//! Command-line surface over `turing_core`: argument model, dispatch and
//! report emission. `main.rs` only parses arguments and maps exit codes.

pub mod args;
pub mod report;

use std::f64::consts::PI;

use serde::Serialize;
use turing_core::constants::{
    dedekind_budget, dedekind_constants, dedekind_log_conductor, dirichlet_budget,
    dirichlet_constants, gram_block_coefficients, gram_block_requirement, zeta_constants,
    zeta_objective, ConvexityParams, DedekindShape, Family, GrowthBound, TuringConstants,
    DIRICHLET_MIN_T0, ZETA_T0,
};
use turing_core::gram::{certify_with, ScanPolicy};
use turing_core::kernel::QuadratureSpec;
use turing_core::optimizer::{grid_minimize, LatticeSpec, SearchContext};
use turing_core::riemann_siegel::growth_check_with;
use turing_core::Error as CoreError;

pub use args::{Command, Format, RunConfig};
use args::{FamilyArg, FamilyParams, Params, Stage};
pub use report::{render, BlocksReport, BudgetReport, ConstantsReport, Document, Report, SCHEMA};

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VALIDATION: i32 = 2;
    pub const CONVERGENCE: i32 = 3;
    pub const CERTIFICATION: i32 = 4;
    pub const IO: i32 = 5;
}

/// Why a command failed, with the exit status it maps to.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Self {
        Self {
            kind: "validation",
            message: message.into(),
            exit_code: exit::VALIDATION,
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            kind: "io",
            message: message.into(),
            exit_code: exit::IO,
        }
    }

    /// The JSON line written to standard error.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct ErrorDoc<'a> {
            schema: &'a str,
            error: &'a Failure,
        }
        serde_json::to_string(&ErrorDoc {
            schema: SCHEMA,
            error: self,
        })
        .unwrap_or_else(|_| format!("{{\"error\":{:?}}}", self.message))
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let (kind, exit_code) = match &e {
            CoreError::Domain(_) | CoreError::EmptyLattice | CoreError::Threshold { .. } => {
                ("validation", exit::VALIDATION)
            }
            CoreError::Convergence(_) | CoreError::IndeterminateSign { .. } => {
                ("convergence", exit::CONVERGENCE)
            }
            CoreError::RosserViolation { .. }
            | CoreError::Alignment(_)
            | CoreError::CountMismatch { .. } => ("certification", exit::CERTIFICATION),
        };
        Self {
            kind,
            message: e.to_string(),
            exit_code,
        }
    }
}

/// A finished command: the report and the exit status it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

/// Runs one command and returns its report without writing anything.
pub fn execute(config: &RunConfig) -> Result<Outcome, Failure> {
    let spec = quadrature(config)?;
    let report = match &config.command {
        Command::Constants(fp) => constants(fp, &spec)?,
        Command::Optimize(o) => optimize(&o.family, o.stage, o.step, &spec)?,
        Command::Budget(fp) => budget(fp, &spec)?,
        Command::BlocksRequired(fp) => blocks_required(fp, &spec)?,
        Command::GrowthCheck(g) => {
            Report::Growth(growth_check_with(g.t_lo, g.t_hi, g.samples, g.k, g.theta)?)
        }
        Command::Certify(c) => {
            let consts =
                zeta_given_or_derived(&c.family, &spec, &["c", "d", "a", "b", "k", "theta"])?;
            let policy = ScanPolicy {
                order: c.order,
                step_fraction: c.step_fraction,
                max_depth: c.max_depth,
            };
            Report::Certification(certify_with(c.n, c.p, &consts, &policy)?)
        }
    };
    let exit_code = match &report {
        Report::Certification(r) if !r.certified => exit::CERTIFICATION,
        _ => exit::OK,
    };
    Ok(Outcome { report, exit_code })
}

/// Runs the command, writes the report and returns the exit status.
/// Failures are written to standard error as one JSON object.
pub fn run(config: &RunConfig) -> i32 {
    if let Some(n) = config.threads {
        if n == 0 {
            return fail(&Failure::validation("--threads must be at least 1"));
        }
        // a second call in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let outcome = match execute(config) {
        Ok(o) => o,
        Err(f) => return fail(&f),
    };
    let bytes = match render(&outcome.report, config.format, config.digits) {
        Ok(b) => b,
        Err(e) => return fail(&Failure::io(e)),
    };
    if let Err(e) = report::emit(&bytes, config.output.as_deref()) {
        return fail(&Failure::io(e.to_string()));
    }
    if outcome.exit_code == exit::CERTIFICATION {
        eprintln!(
            "{}",
            Failure {
                kind: "certification",
                message: "certification did not succeed; see report".into(),
                exit_code: exit::CERTIFICATION,
            }
            .to_json()
        );
    }
    outcome.exit_code
}

fn fail(f: &Failure) -> i32 {
    eprintln!("{}", f.to_json());
    f.exit_code
}

fn quadrature(config: &RunConfig) -> Result<QuadratureSpec, Failure> {
    let q = config.quadrature;
    let d = QuadratureSpec::default();
    Ok(QuadratureSpec::new(
        q.prime_cutoff.unwrap_or(d.prime_cutoff),
        q.power_cutoff.unwrap_or(d.power_cutoff),
        q.em_terms.unwrap_or(d.em_terms),
        q.tail_tol.unwrap_or(d.tail_tol),
    )?)
}

fn only(params: &Params, allowed: &[&str], context: &str) -> Result<(), Failure> {
    let extra: Vec<&str> = params
        .provided()
        .into_iter()
        .filter(|p| !allowed.contains(p))
        .collect();
    if extra.is_empty() {
        Ok(())
    } else {
        Err(Failure::validation(format!(
            "{context} does not take --{}",
            extra.join(", --")
        )))
    }
}

fn need<T: Copy>(x: Option<T>, name: &str) -> Result<T, Failure> {
    x.ok_or_else(|| Failure::validation(format!("missing --{name}")))
}

fn params_cd(p: &Params) -> Result<ConvexityParams, Failure> {
    Ok(ConvexityParams::new(need(p.c, "c")?, need(p.d, "d")?)?)
}

fn growth(p: &Params) -> Result<GrowthBound, Failure> {
    let d = GrowthBound::default();
    Ok(GrowthBound::new(
        p.k.unwrap_or(d.k),
        p.theta.unwrap_or(d.theta),
        d.t_min,
    )?)
}

fn g_p(p: &Params) -> Result<f64, Failure> {
    match (p.gp, p.gp_over_2pi) {
        (Some(g), None) => Ok(g),
        (None, Some(x)) => Ok(2.0 * PI * x),
        _ => Err(Failure::validation(
            "give exactly one of --gp, --gp-over-2pi",
        )),
    }
}

fn conductor(p: &Params) -> Result<u64, Failure> {
    let q = need(p.q, "q")?;
    if q.fract() != 0.0 || !(1.0..=9.0e15).contains(&q) {
        return Err(Failure::validation(format!(
            "--q must be a positive integer, got {q}"
        )));
    }
    Ok(q as u64)
}

fn shape(p: &Params) -> Result<DedekindShape, Failure> {
    Ok(DedekindShape::new(
        need(p.degree, "degree")?,
        need(p.r1, "r1")?,
        need(p.r2, "r2")?,
        need(p.dk, "dk")?,
    )?)
}

fn dirichlet_t0(p: &Params) -> f64 {
    p.t0.unwrap_or(DIRICHLET_MIN_T0)
}

/// Derived constants at (c, d), or given ones when --a/--b are supplied.
fn given_or_derived(fp: &FamilyParams, spec: &QuadratureSpec) -> Result<TuringConstants, Failure> {
    let p = &fp.params;
    let family: Family = fp.family.into();
    if p.a.is_some() || p.b.is_some() {
        if p.c.is_some() || p.d.is_some() {
            return Err(Failure::validation(
                "give either --a/--b or --c/--d, not both",
            ));
        }
        let t0 = match family {
            Family::Zeta => {
                if p.t0.is_some() {
                    return Err(Failure::validation(
                        "zeta constants always hold above 168π; drop --t0",
                    ));
                }
                ZETA_T0
            }
            Family::Dirichlet => dirichlet_t0(p),
            Family::Dedekind => need(p.t0, "t0")?,
        };
        return Ok(TuringConstants::given(
            family,
            need(p.a, "a")?,
            need(p.b, "b")?,
            p.g,
            t0,
        )?);
    }
    if p.g.is_some() {
        return Err(Failure::validation("--g only goes with --a and --b"));
    }
    let cd = params_cd(p)?;
    Ok(match family {
        Family::Zeta => {
            if p.t0.is_some() {
                return Err(Failure::validation(
                    "zeta constants always hold above 168π; drop --t0",
                ));
            }
            zeta_constants(cd, growth(p)?, spec)?
        }
        Family::Dirichlet => dirichlet_constants(cd, dirichlet_t0(p), spec)?,
        Family::Dedekind => dedekind_constants(cd, need(p.t0, "t0")?, spec)?,
    })
}

fn zeta_given_or_derived(
    fp: &FamilyParams,
    spec: &QuadratureSpec,
    allowed: &[&str],
) -> Result<TuringConstants, Failure> {
    if fp.family != FamilyArg::Zeta {
        return Err(Failure::validation(
            "only the zeta family is supported here",
        ));
    }
    only(&fp.params, allowed, "this command")?;
    given_or_derived(fp, spec)
}

const GIVEN_OR_DERIVED: [&str; 7] = ["c", "d", "a", "b", "g", "t0", "k"];

fn constants(fp: &FamilyParams, spec: &QuadratureSpec) -> Result<Report, Failure> {
    let p = &fp.params;
    let family: Family = fp.family.into();
    match family {
        Family::Zeta => only(p, &["c", "d", "k", "theta"], "constants --family zeta")?,
        _ => only(
            p,
            &["c", "d", "t0"],
            &format!("constants --family {family}"),
        )?,
    }
    let k = given_or_derived(fp, spec)?;
    Ok(Report::Constants(ConstantsReport {
        params: params_cd(p)?,
        growth: (family == Family::Zeta).then(|| growth(p)).transpose()?,
        constants: k,
    }))
}

fn context(fp: &FamilyParams) -> Result<SearchContext, Failure> {
    let p = &fp.params;
    Ok(match fp.family {
        FamilyArg::Zeta => {
            only(
                p,
                &["k", "theta", "gp", "gp-over-2pi"],
                "optimize --family zeta",
            )?;
            SearchContext::Zeta {
                growth: growth(p)?,
                g_p: g_p(p)?,
            }
        }
        FamilyArg::Dirichlet => {
            only(p, &["q", "t2", "t0"], "optimize --family dirichlet")?;
            SearchContext::Dirichlet {
                q: conductor(p)?,
                t2: need(p.t2, "t2")?,
                t0: dirichlet_t0(p),
            }
        }
        FamilyArg::Dedekind => {
            only(
                p,
                &["degree", "r1", "r2", "dk", "t2", "t0"],
                "optimize --family dedekind",
            )?;
            SearchContext::Dedekind {
                shape: shape(p)?,
                t2: need(p.t2, "t2")?,
                t0: need(p.t0, "t0")?,
            }
        }
    })
}

fn optimize(
    fp: &FamilyParams,
    stage: Stage,
    step: f64,
    spec: &QuadratureSpec,
) -> Result<Report, Failure> {
    let ctx = context(fp)?;
    let lattice = match stage {
        Stage::Coarse => LatticeSpec::coarse_stage(),
        Stage::Fine => LatticeSpec::fine_stage(),
        Stage::Box => LatticeSpec::admissible_box(step)?,
    };
    Ok(Report::Search(grid_minimize(&lattice, &ctx, spec)?))
}

fn budget(fp: &FamilyParams, spec: &QuadratureSpec) -> Result<Report, Failure> {
    let p = &fp.params;
    let mut allowed: Vec<&str> = GIVEN_OR_DERIVED.to_vec();
    let (k, log_term, value) = match fp.family {
        FamilyArg::Zeta => {
            allowed.extend(["theta", "gp", "gp-over-2pi"]);
            only(p, &allowed, "budget --family zeta")?;
            let k = given_or_derived(fp, spec)?;
            let g = g_p(p)?;
            let f = zeta_objective(&k, g)?;
            (k, (g / (2.0 * PI)).ln(), f)
        }
        FamilyArg::Dirichlet => {
            allowed.extend(["q", "t2"]);
            only(p, &allowed, "budget --family dirichlet")?;
            let k = given_or_derived(fp, spec)?;
            let q = conductor(p)?;
            let t2 = need(p.t2, "t2")?;
            let b = dirichlet_budget(&k, q, t2)?;
            (k, (q as f64 * t2 / (2.0 * PI)).ln(), b)
        }
        FamilyArg::Dedekind => {
            allowed.extend(["degree", "r1", "r2", "dk", "t2"]);
            only(p, &allowed, "budget --family dedekind")?;
            let k = given_or_derived(fp, spec)?;
            let s = shape(p)?;
            let t2 = need(p.t2, "t2")?;
            let b = dedekind_budget(&k, &s, t2)?;
            (k, dedekind_log_conductor(&s, t2)?, b)
        }
    };
    if fp.family != FamilyArg::Zeta && p.k.is_some() {
        return Err(Failure::validation("--k only applies to the zeta family"));
    }
    Ok(Report::Budget(BudgetReport {
        constants: k,
        log_term,
        budget: value,
    }))
}

fn blocks_required(fp: &FamilyParams, spec: &QuadratureSpec) -> Result<Report, Failure> {
    let k = zeta_given_or_derived(
        fp,
        spec,
        &["c", "d", "a", "b", "k", "theta", "gp", "gp-over-2pi"],
    )?;
    let g = g_p(&fp.params)?;
    let (quadratic, linear) = gram_block_coefficients(&k)?;
    Ok(Report::BlocksRequired(BlocksReport {
        constants: k,
        g_p: g,
        quadratic,
        linear,
        required_blocks: gram_block_requirement(&k, g)?,
    }))
}
