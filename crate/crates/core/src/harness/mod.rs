//! Experiment configuration, seeded random families and report emission.
//!
//! Every command writes `<out>/<command>.csv` and `<out>/<command>.meta.json`.
//! The CSV body depends only on the configuration and seed; wall-clock data
//! lives in the metadata sidecar.

mod config;
mod family;

pub use config::{
    parse_config, read_config, ConstantsConfig, InterpConfig, RobinConfig, ScheduleSpec,
    SharpnessConfig, Suite, VerifyCase, VerifyConfig,
};
pub use family::{generate_family, Constraint, RandomFamilySpec, SUP_SAFETY};

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::disk_core::{Arc, DiskFunction};
use crate::error::{Error, Result};
use crate::estimates::{
    choose_r, hardy_convexity_check, mean_growth_check, r_floor, tail_bound_check,
    two_constants_check, InequalityReport, ProofConstants,
};
use crate::rkhs_interp::{convergence_experiment, dyadic_schedule, KernelSpec};
use crate::robin_lab::{admissible_check, forward_solve, stability_experiment, Profile, RobinCoefficient, RobinProblem};
use crate::sharpness::{beta_limit, sharpness_sequence, SharpnessFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Verify,
    Sharpness,
    Interp,
    Robin,
    Constants,
}

impl Command {
    pub const ALL: [Command; 5] = [
        Command::Verify,
        Command::Sharpness,
        Command::Interp,
        Command::Robin,
        Command::Constants,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Sharpness => "sharpness",
            Command::Interp => "interp",
            Command::Robin => "robin",
            Command::Constants => "constants",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown command `{s}`")))
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides the seed in the configuration.
    pub seed: Option<u64>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

/// Everything a command produced before it is written to disk.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: Command,
    pub seed: u64,
    pub csv: String,
    /// Additional files, named relative to the output directory.
    pub extra: Vec<(String, String)>,
    pub config: Value,
    pub summary: Value,
    /// Failed assertions; a non-empty list means a non-zero exit status.
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Write the CSV, any extra files and the metadata sidecar into `dir`.
    pub fn write(&self, dir: &Path, elapsed_secs: f64) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut paths = Vec::new();
        let csv_path = dir.join(format!("{}.csv", self.command));
        std::fs::write(&csv_path, &self.csv)?;
        paths.push(csv_path);
        for (name, body) in &self.extra {
            let p = dir.join(name);
            std::fs::write(&p, body)?;
            paths.push(p);
        }
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let meta = json!({
            "command": self.command.name(),
            "seed": self.seed,
            "version": env!("CARGO_PKG_VERSION"),
            "config": self.config,
            "summary": self.summary,
            "failures": self.failures,
            "passed": self.passed(),
            "timestamp_unix": timestamp,
            "elapsed_secs": elapsed_secs,
        });
        let meta_path = dir.join(format!("{}.meta.json", self.command));
        std::fs::write(&meta_path, serde_json::to_string_pretty(&meta)? + "\n")?;
        paths.push(meta_path);
        Ok(paths)
    }
}

fn to_csv<T: Serialize>(rows: &[T], header: &[&str]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e.to_string()));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::Config {
            path: "--jobs".into(),
            message: "must be at least 1".into(),
        }),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidInput(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Parse `config_text` for `command`, run it, and return the report.
pub fn run(command: Command, config_text: &str, opts: &RunOptions) -> Result<Report> {
    with_pool(opts.jobs, || match command {
        Command::Verify => {
            let mut cfg: VerifyConfig = parse_config(config_text)?;
            cfg.seed = opts.seed.unwrap_or(cfg.seed);
            run_verify(&cfg)
        }
        Command::Sharpness => {
            let mut cfg: SharpnessConfig = parse_config(config_text)?;
            cfg.seed = opts.seed.unwrap_or(cfg.seed);
            run_sharpness(&cfg)
        }
        Command::Interp => {
            let mut cfg: InterpConfig = parse_config(config_text)?;
            cfg.seed = opts.seed.unwrap_or(cfg.seed);
            run_interp(&cfg)
        }
        Command::Robin => {
            let mut cfg: RobinConfig = parse_config(config_text)?;
            cfg.seed = opts.seed.unwrap_or(cfg.seed);
            run_robin(&cfg)
        }
        Command::Constants => {
            let mut cfg: ConstantsConfig = parse_config(config_text)?;
            cfg.seed = opts.seed.unwrap_or(cfg.seed);
            run_constants(&cfg)
        }
    })?
}

/// Run from a config file and write the outputs into `out`.
pub fn run_to_dir(command: Command, config: &Path, out: &Path, opts: &RunOptions) -> Result<Report> {
    let text = std::fs::read_to_string(config)?;
    let start = Instant::now();
    let report = run(command, &text, opts)?;
    report.write(out, start.elapsed().as_secs_f64())?;
    Ok(report)
}

// verify

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRow {
    pub case_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
}

fn evaluate_case(case: &VerifyCase) -> Result<InequalityReport> {
    match case {
        VerifyCase::HardyConvexity {
            function, r1, r2, alpha, ..
        } => hardy_convexity_check(function, *r1, *r2, *alpha),
        VerifyCase::MeanGrowth { function, r, rho, .. } => mean_growth_check(function, *r, *rho),
        VerifyCase::TwoConstants {
            function, arc, z_re, z_im, ..
        } => two_constants_check(function, arc, Complex64::new(*z_re, *z_im)),
        VerifyCase::TailBound { function, k, r, .. } => tail_bound_check(function, *k, *r),
    }
}

/// Random cases for one suite, each satisfying that suite's hypotheses.
pub fn random_cases(suite: Suite, seed: u64, count: usize, degree: usize, k: usize) -> Result<Vec<VerifyCase>> {
    let constraints = match suite {
        Suite::HardyConvexity | Suite::MeanGrowth => vec![],
        Suite::TwoConstants => vec![Constraint::SupNorm],
        Suite::TailBound => vec![Constraint::SobolevBall { k }],
    };
    let fam = generate_family(&RandomFamilySpec::new(seed, count, degree, constraints))?;
    let mut rng = family::rng(seed);
    rng.set_stream(1 + Suite::ALL.iter().position(|s| *s == suite).unwrap_or(0) as u64);
    let pi = std::f64::consts::PI;
    fam.into_iter()
        .enumerate()
        .map(|(i, function)| {
            let id = format!("{}-{i:04}", suite.name());
            Ok(match suite {
                Suite::HardyConvexity => {
                    let r1 = family::uniform(&mut rng, 0.01, 0.99);
                    let r2 = r1 + (1.0 - r1) * (1.0 - family::uniform(&mut rng, 0.0, 1.0));
                    let alpha = family::uniform(&mut rng, 0.0, 1.0);
                    VerifyCase::HardyConvexity { id, function, r1, r2, alpha }
                }
                Suite::MeanGrowth => {
                    let rho = 1.0 - family::uniform(&mut rng, 0.0, 0.99);
                    let r = rho * family::uniform(&mut rng, 0.0, 1.0);
                    VerifyCase::MeanGrowth { id, function, r, rho }
                }
                Suite::TwoConstants => {
                    let arc = Arc::new(
                        family::uniform(&mut rng, -pi, pi),
                        family::uniform(&mut rng, 0.05, 0.95),
                    )?;
                    let z = Complex64::from_polar(
                        rng.random_range(0.0..=1.0f64).sqrt(),
                        family::uniform(&mut rng, -pi, pi),
                    );
                    VerifyCase::TwoConstants { id, function, arc, z_re: z.re, z_im: z.im }
                }
                Suite::TailBound => {
                    let r = family::uniform(&mut rng, 0.01, 0.99);
                    VerifyCase::TailBound { id, function, k, r }
                }
            })
        })
        .collect()
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<Report> {
    cfg.validate()?;
    let mut cases = cfg.cases.clone();
    for suite in &cfg.suites {
        cases.extend(random_cases(*suite, cfg.seed, cfg.count, cfg.degree, cfg.k)?);
    }
    let results: Vec<(VerifyRow, Option<String>)> = cases
        .par_iter()
        .map(|case| match evaluate_case(case) {
            Ok(r) => (
                VerifyRow {
                    case_id: case.id().to_string(),
                    lhs: r.lhs,
                    rhs: r.rhs,
                    margin: r.margin,
                    satisfied: r.satisfied,
                },
                (!r.satisfied).then(|| format!("{}: lhs {} > rhs {}", case.id(), r.lhs, r.rhs)),
            ),
            Err(e) => (
                VerifyRow {
                    case_id: case.id().to_string(),
                    lhs: f64::NAN,
                    rhs: f64::NAN,
                    margin: f64::NAN,
                    satisfied: false,
                },
                Some(format!("{}: {e}", case.id())),
            ),
        })
        .collect();
    let failures: Vec<String> = results.iter().filter_map(|(_, f)| f.clone()).collect();
    let rows: Vec<VerifyRow> = results.into_iter().map(|(r, _)| r).collect();
    let per_suite: Value = Suite::ALL
        .iter()
        .map(|s| {
            let prefix = format!("{}-", s.name());
            let mine: Vec<&VerifyRow> = rows.iter().filter(|r| r.case_id.starts_with(&prefix)).collect();
            let min_margin = mine.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
            (
                s.name().to_string(),
                json!({
                    "cases": mine.len(),
                    "violations": mine.iter().filter(|r| !r.satisfied).count(),
                    "min_margin": if mine.is_empty() { Value::Null } else { json!(min_margin) },
                }),
            )
        })
        .collect::<serde_json::Map<_, _>>()
        .into();
    Ok(Report {
        command: Command::Verify,
        seed: cfg.seed,
        csv: to_csv(&rows, &["case_id", "lhs", "rhs", "margin", "satisfied"])?,
        extra: vec![],
        config: serde_json::to_value(cfg)?,
        summary: json!({ "cases": rows.len(), "violations": failures.len(), "suites": per_suite }),
        failures,
    })
}

// sharpness

pub fn run_sharpness(cfg: &SharpnessConfig) -> Result<Report> {
    cfg.validate()?;
    let fam = SharpnessFamily::new(cfg.a, cfg.k, cfg.n_max)?;
    let rows = sharpness_sequence(&fam, &cfg.arc)?;
    let beta = beta_limit(cfg.k, cfg.a)?;
    let mut failures = Vec::new();
    if let Some(r) = rows.iter().find(|r| !(r.prop_functional.is_finite() && r.thm1_functional.is_finite())) {
        failures.push(format!("non-finite functional at n = {}", r.n));
    }
    let last = rows.last().expect("n_max > k gives at least one row");
    let rel = (last.prop_functional - beta).abs() / beta;
    if let Some(tol) = cfg.limit_tolerance {
        if rel > tol {
            failures.push(format!(
                "prop_functional at n = {} is {} ({:.3}% from the limit {beta}), tolerance {:.3}%",
                last.n,
                last.prop_functional,
                100.0 * rel,
                100.0 * tol
            ));
        }
    }
    let pc = ProofConstants::new(cfg.k, 2.0)?;
    let ln_threshold = -pc.gamma_k / cfg.arc.lambda();
    let ln_min_arc = rows.iter().map(|r| r.ln_arc_norm).fold(f64::INFINITY, f64::min);
    let thm1_sup = rows.iter().map(|r| r.thm1_functional).fold(0.0, f64::max);
    Ok(Report {
        command: Command::Sharpness,
        seed: cfg.seed,
        csv: to_csv(
            &rows,
            &[
                "n",
                "h2_norm",
                "arc_norm",
                "prop_functional",
                "thm1_functional",
                "beta_limit",
                "laplace_ratio",
            ],
        )?,
        extra: vec![],
        config: serde_json::to_value(cfg)?,
        summary: json!({
            "beta_limit": beta,
            "last_n": last.n,
            "last_prop_functional": last.prop_functional,
            "last_relative_error": rel,
            "thm1_functional_sup": thm1_sup,
            "smallness_log_threshold": ln_threshold,
            "smallest_log_arc_norm": ln_min_arc,
            "smallness_regime_reached": ln_min_arc <= ln_threshold,
        }),
        failures,
    })
}

// interp

#[derive(Debug, Clone, Serialize)]
struct InterpRow {
    n: usize,
    h_n: f64,
    error: f64,
    functional: f64,
    regularized_flag: bool,
    residual: f64,
    interpolant_norm: f64,
    pre_asymptotic: bool,
}

#[derive(Debug, Clone, Serialize)]
struct LevelCoefficients<'a> {
    n: usize,
    interpolant: &'a DiskFunction,
}

pub fn run_interp(cfg: &InterpConfig) -> Result<Report> {
    cfg.validate()?;
    let spec = KernelSpec::new(cfg.k, cfg.truncation)?;
    let schedule = dyadic_schedule(&cfg.arc, &cfg.schedule.counts())?;
    let rep = convergence_experiment(&cfg.function, &cfg.arc, &spec, &schedule)?;
    let mut failures = Vec::new();
    for r in &rep.rows {
        if !(r.residual < cfg.tolerance) {
            failures.push(format!("n = {}: residual {} >= {}", r.n, r.residual, cfg.tolerance));
        }
        if r.interpolant_norm > rep.target_norm + cfg.tolerance {
            failures.push(format!(
                "n = {}: interpolant norm {} exceeds target norm {}",
                r.n, r.interpolant_norm, rep.target_norm
            ));
        }
        if !r.functional.is_finite() {
            failures.push(format!("n = {}: functional is not finite", r.n));
        }
    }
    for w in rep.rows.windows(2) {
        if !(w[1].error < w[0].error) {
            failures.push(format!(
                "error does not decrease from n = {} ({}) to n = {} ({})",
                w[0].n, w[0].error, w[1].n, w[1].error
            ));
        }
    }
    let rows: Vec<InterpRow> = rep
        .rows
        .iter()
        .map(|r| InterpRow {
            n: r.n,
            h_n: r.h_n,
            error: r.error,
            functional: r.functional,
            regularized_flag: r.regularized,
            residual: r.residual,
            interpolant_norm: r.interpolant_norm,
            pre_asymptotic: r.pre_asymptotic,
        })
        .collect();
    let levels: Vec<LevelCoefficients> = rep
        .rows
        .iter()
        .map(|r| LevelCoefficients {
            n: r.n,
            interpolant: &r.interpolant,
        })
        .collect();
    Ok(Report {
        command: Command::Interp,
        seed: cfg.seed,
        csv: to_csv(
            &rows,
            &[
                "n",
                "h_n",
                "error",
                "functional",
                "regularized_flag",
                "residual",
                "interpolant_norm",
                "pre_asymptotic",
            ],
        )?,
        extra: vec![(
            "interp.levels.json".to_string(),
            serde_json::to_string_pretty(&levels)? + "\n",
        )],
        config: serde_json::to_value(cfg)?,
        summary: json!({
            "alpha_hat": rep.alpha_hat,
            "alpha_hat_admissible": rep.alpha_hat_admissible,
            "target_norm": rep.target_norm,
            "h_threshold": rep.h_threshold,
            "hypothesis_regime_reached": rep.alpha_hat_admissible.is_some(),
        }),
        failures,
    })
}

// robin

#[derive(Debug, Clone, Serialize)]
struct RobinRow {
    t: f64,
    dq_norm: f64,
    #[serde(rename = "du_norm_I")]
    du_norm_i: f64,
    functional: f64,
    residual: f64,
    admissible_flag: bool,
    in_regime: bool,
}

/// Median of the finite values, `None` if there are none.
pub fn median(values: &[f64]) -> Option<f64> {
    let mut v: Vec<f64> = values.iter().copied().filter(|x| x.is_finite()).collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) })
}

/// Rows with `t` at or below the median `t` whose functional exceeds
/// `factor` times the median functional, as `(t, functional)`.
pub fn small_t_growth(ts: &[f64], functionals: &[f64], factor: f64) -> (Option<f64>, Vec<(f64, f64)>) {
    let Some(med) = median(functionals) else {
        return (None, vec![]);
    };
    let t_med = median(ts).unwrap_or(0.0);
    let bad = ts
        .iter()
        .zip(functionals)
        .filter(|(t, f)| **t <= t_med && !(**f <= factor * med))
        .map(|(t, f)| (*t, *f))
        .collect();
    (Some(med), bad)
}

pub fn run_robin(cfg: &RobinConfig) -> Result<Report> {
    cfg.validate()?;
    let j_arc = cfg.arc.complement();
    let base = RobinCoefficient::new(Profile::Bump(cfg.q0), j_arc, cfg.k_arc, cfg.c, cfg.c_prime)?;
    let admissible = admissible_check(&base);
    if !admissible.admissible {
        return Err(Error::Config {
            path: "q0".into(),
            message: format!("base coefficient is not admissible: {}", admissible.violations.join("; ")),
        });
    }
    let template = RobinProblem::new(
        cfg.arc,
        Profile::Bump(cfg.phi),
        Profile::Bump(cfg.q0),
        cfg.degree,
        cfg.collocation,
    )?;
    let base_solution = forward_solve(&template)?;
    let rep = stability_experiment(&base, &Profile::Bump(cfg.dq), &cfg.t_schedule, &template)?;
    let mut failures = Vec::new();
    let used: Vec<_> = rep.rows.iter().filter(|r| r.admissible && r.in_regime && r.t > 0.0).collect();
    let ts: Vec<f64> = used.iter().map(|r| r.t).collect();
    let fs: Vec<f64> = used.iter().map(|r| r.functional).collect();
    let (med, growth) = small_t_growth(&ts, &fs, cfg.growth_factor);
    for (t, f) in &growth {
        failures.push(format!(
            "functional {f} at t = {t} exceeds {} x median {}",
            cfg.growth_factor,
            med.unwrap_or(f64::NAN)
        ));
    }
    if let Some(r) = used.iter().find(|r| !r.functional.is_finite()) {
        failures.push(format!("non-finite functional at t = {}", r.t));
    }
    let skipped: Vec<Value> = rep
        .rows
        .iter()
        .filter(|r| r.note.is_some())
        .map(|r| json!({ "t": r.t, "note": r.note }))
        .collect();
    let rows: Vec<RobinRow> = rep
        .rows
        .iter()
        .map(|r| RobinRow {
            t: r.t,
            dq_norm: r.dq_norm,
            du_norm_i: r.du_norm_i,
            functional: r.functional,
            residual: r.residual,
            admissible_flag: r.admissible,
            in_regime: r.in_regime,
        })
        .collect();
    let max_f = fs.iter().copied().fold(f64::NAN, f64::max);
    Ok(Report {
        command: Command::Robin,
        seed: cfg.seed,
        csv: to_csv(
            &rows,
            &[
                "t",
                "dq_norm",
                "du_norm_I",
                "functional",
                "residual",
                "admissible_flag",
                "in_regime",
            ],
        )?,
        extra: vec![],
        config: serde_json::to_value(cfg)?,
        summary: json!({
            "eta_hat": rep.eta_hat,
            "median_functional": med,
            "max_over_median": med.map(|m| max_f / m),
            "base_residual": rep.base_residual,
            "base_warning": base_solution.warning,
            "base_w22_norm": base_solution.field.w22_norm(),
            "skipped": skipped,
        }),
        failures,
    })
}

// constants

#[derive(Debug, Clone, Serialize)]
struct ConstantsRow {
    k: usize,
    #[serde(rename = "C")]
    c: f64,
    #[serde(rename = "D_k")]
    d_k: f64,
    #[serde(rename = "Gamma_k")]
    big_gamma_k: f64,
    #[serde(rename = "gamma_k")]
    gamma_k: f64,
    #[serde(rename = "A")]
    a: f64,
    gamma_residual: f64,
    r_floor: f64,
}

/// `count` radii from `N_I = e^{-L}` with `L` uniform on `[Gamma_k, 700]`.
pub fn radius_samples(seed: u64, count: usize, k: usize, c: f64) -> Result<Vec<(f64, f64)>> {
    let pc = ProofConstants::new(k, c)?;
    let mut rng = family::rng(seed);
    rng.set_stream(100 + k as u64);
    (0..count)
        .map(|i| {
            let l = if i == 0 {
                pc.big_gamma_k
            } else {
                family::uniform(&mut rng, pc.big_gamma_k, 700.0)
            };
            let n_i = (-l).exp();
            Ok((n_i, choose_r(n_i, k, c)?))
        })
        .collect()
}

pub fn run_constants(cfg: &ConstantsConfig) -> Result<Report> {
    cfg.validate()?;
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    let mut radius = Vec::new();
    for &k in &cfg.orders {
        let pc = ProofConstants::new(k, cfg.c)?;
        let res = pc.gamma_residual();
        if !(res < cfg.residual_tolerance) {
            failures.push(format!("Gamma_{k} residual {res:e} >= {:e}", cfg.residual_tolerance));
        }
        let rs = radius_samples(cfg.seed, cfg.radius_samples, k, cfg.c)?;
        let out: Vec<&(f64, f64)> = rs.iter().filter(|(_, r)| !(*r >= r_floor() && *r < 1.0)).collect();
        for (n, r) in &out {
            failures.push(format!("k = {k}: choose_r({n:e}) = {r} outside [1 - 2/e, 1)"));
        }
        radius.push(json!({
            "k": k,
            "samples": rs.len(),
            "min_r": rs.iter().map(|p| p.1).fold(f64::INFINITY, f64::min),
            "max_r": rs.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max),
            "out_of_range": out.len(),
        }));
        rows.push(ConstantsRow {
            k,
            c: pc.c,
            d_k: pc.d_k,
            big_gamma_k: pc.big_gamma_k,
            gamma_k: pc.gamma_k,
            a: pc.a,
            gamma_residual: res,
            r_floor: r_floor(),
        });
    }
    Ok(Report {
        command: Command::Constants,
        seed: cfg.seed,
        csv: to_csv(
            &rows,
            &["k", "C", "D_k", "Gamma_k", "gamma_k", "A", "gamma_residual", "r_floor"],
        )?,
        extra: vec![],
        config: serde_json::to_value(cfg)?,
        summary: json!({ "constants": rows, "radius": radius }),
        failures,
    })
}
