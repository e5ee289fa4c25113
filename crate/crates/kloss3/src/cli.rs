//! Batch-job front end: every computation in the crate as a reproducible
//! CLI run with CSV or JSON artifacts.
//!
//! Numeric parameters are validated against the preconditions of the
//! operation they feed before any work starts; violations exit with code 1
//! and a diagnostic naming the violated invariant, usage errors exit with
//! code 2 (clap), success with 0. Rendered CSV is byte-identical across
//! reruns of the same config and independent of the thread count: tallies
//! are exact integers and every floating reduction runs in a fixed order.

use crate::analytic::{
    beta_integral_check, big_lambda, c3_inv_sq, c_star, g_fn, g_star, g_star_residue_double,
    g_star_residue_left, g_star_residue_right, j_i, k_adj, k_wl, stade_check, whittaker,
    ContourSpec, DeltaParam, MellinPoint, SpectralPoint, StadeQuad,
};
use crate::experiments::{
    linnik_sum, smoothed_wl_sum, zeta_partial_sum, GrowthSeries, SmoothWindow,
};
use crate::ksums::{
    check_larsen, check_stevens, check_weil, s_degenerate, s_w4, s_w5, s_wl_fast, s_wl_oracle,
    BoundReport, CharPair, ExponentTally, ModPair, WeylElement,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Precondition(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<crate::ksums::KsumError> for CliError {
    fn from(e: crate::ksums::KsumError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<crate::analytic::AnalyticError> for CliError {
    fn from(e: crate::analytic::AnalyticError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<crate::experiments::ExperimentError> for CliError {
    fn from(e: crate::experiments::ExperimentError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

/// An integer pair given as `a,b`.
#[derive(Debug, Clone, Copy)]
pub struct IntPair(pub i64, pub i64);

impl FromStr for IntPair {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
        Ok(IntPair(
            a.trim().parse().map_err(|e| format!("{e}"))?,
            b.trim().parse().map_err(|e| format!("{e}"))?,
        ))
    }
}

/// A real pair given as `x,y`, or a single real meaning `x,x`.
#[derive(Debug, Clone, Copy)]
pub struct RealPair(pub f64, pub f64);

impl FromStr for RealPair {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(',') {
            Some((a, b)) => Ok(RealPair(
                a.trim().parse().map_err(|e| format!("{e}"))?,
                b.trim().parse().map_err(|e| format!("{e}"))?,
            )),
            None => {
                let x: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
                Ok(RealPair(x, x))
            }
        }
    }
}

/// Two complex numbers as four reals `re1,im1,re2,im2`.
#[derive(Debug, Clone, Copy)]
pub struct ComplexPair(pub Complex64, pub Complex64);

impl FromStr for ComplexPair {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse().map_err(|e| format!("{e}")))
            .collect::<Result<_, _>>()?;
        if parts.len() != 4 {
            return Err(format!("expected `re1,im1,re2,im2`, got `{s}`"));
        }
        Ok(ComplexPair(
            Complex64::new(parts[0], parts[1]),
            Complex64::new(parts[2], parts[3]),
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Weil,
    Stevens,
    Larsen4,
    Larsen5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpecfunKind {
    Lambda,
    Gfn,
    Gstar,
    GstarLeft,
    GstarRight,
    GstarDouble,
    Kwl,
    Ji,
    Cstar,
    C3invsq,
    Kadj,
    Whittaker,
    Beta,
}

#[derive(Debug, Parser)]
#[command(
    name = "kloss3",
    version,
    about = "SL(3,Z) Kloosterman sums, bounds, special functions, and cancellation experiments"
)]
pub struct JobConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write the artifact here as well as to stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Worker threads; defaults to KLOSS3_THREADS or all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value = "0")]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one Kloosterman sum exactly.
    Sum(SumArgs),
    /// Grid of sums over a modulus rectangle.
    Table(TableArgs),
    /// Bound-verification sweeps (Weil / Stevens / Larsen).
    Bounds(BoundsArgs),
    /// Smoothed long-element sum at one (X, Y).
    Smooth(SmoothArgs),
    /// Linnik / Kuznetsov partial sums of classical Kloosterman sums.
    Linnik(LinnikArgs),
    /// Absolute partial sums of a Kloosterman zeta function.
    Zeta(ZetaArgs),
    /// Evaluate one special function.
    Specfun(SpecfunArgs),
    /// Verify Stade's identity.
    Stade(StadeArgs),
}

#[derive(Debug, Args)]
pub struct SumArgs {
    #[arg(long)]
    pub weyl: WeylElement,
    #[arg(long, allow_hyphen_values = true)]
    pub m: IntPair,
    #[arg(long, allow_hyphen_values = true)]
    pub n: IntPair,
    #[arg(long)]
    pub c: IntPair,
    /// Zero the sum when the Bruhat/compatibility conditions fail (w4/w5).
    #[arg(long)]
    pub gated: bool,
    /// Use the brute-force route for the long element.
    #[arg(long)]
    pub oracle: bool,
    /// Also print the exact tally as count@t/L pairs.
    #[arg(long)]
    pub tally: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub weyl: WeylElement,
    #[arg(long, allow_hyphen_values = true)]
    pub m: IntPair,
    #[arg(long, allow_hyphen_values = true)]
    pub n: IntPair,
    #[arg(long, default_value = "8")]
    pub c1max: u64,
    #[arg(long, default_value = "8")]
    pub c2max: u64,
    #[arg(long)]
    pub gated: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub kind: BoundKind,
    #[arg(long)]
    pub cmax: u64,
    /// Character range |m_i|, |n_i| <= mmax (Stevens/Larsen).
    #[arg(long, default_value = "1")]
    pub mmax: i64,
    /// Index pairs for the Weil sweep.
    #[arg(long = "ab", allow_hyphen_values = true, num_args = 0.., default_values = ["1,1", "1,2", "3,5"])]
    pub ab: Vec<IntPair>,
}

#[derive(Debug, Args)]
pub struct SmoothArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub m: IntPair,
    #[arg(long, allow_hyphen_values = true)]
    pub n: IntPair,
    #[arg(long = "X")]
    pub x: f64,
    #[arg(long = "Y")]
    pub y: f64,
    /// Window support as `lo,hi` (open interval).
    #[arg(long, default_value = "0.5,2")]
    pub window: RealPair,
}

#[derive(Debug, Args)]
pub struct LinnikArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long = "t-max")]
    pub t_max: f64,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[arg(long)]
    pub weyl: WeylElement,
    #[arg(long, allow_hyphen_values = true)]
    pub m: IntPair,
    #[arg(long, allow_hyphen_values = true)]
    pub n: IntPair,
    /// Exponents `u1,u2` (w_l) or a single `u` (w4/w5).
    #[arg(long, allow_hyphen_values = true)]
    pub u: RealPair,
    #[arg(long)]
    pub cmax: u64,
}

#[derive(Debug, Args)]
pub struct SpecfunArgs {
    #[arg(long, value_enum)]
    pub kind: SpecfunKind,
    /// Spectral point as `re(mu1),im(mu1),re(mu2),im(mu2)`.
    #[arg(long, allow_hyphen_values = true, default_value = "0,0,0,0")]
    pub mu: ComplexPair,
    /// Mellin point as `re(u1),im(u1),re(u2),im(u2)`; for `beta` the two
    /// complexes are the (u, t) parameters of the integral.
    #[arg(long, allow_hyphen_values = true, default_value = "2,0,2,0")]
    pub u: ComplexPair,
    /// Evaluation point y1,y2 for the Whittaker function.
    #[arg(long, default_value = "1,1")]
    pub y: RealPair,
    #[arg(long, default_value = "0.1")]
    pub delta: f64,
}

#[derive(Debug, Args)]
pub struct StadeArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "0,0.7,0,-0.7")]
    pub mu: ComplexPair,
    #[arg(long, allow_hyphen_values = true, default_value = "0,0.3,0,0.2")]
    pub mup: ComplexPair,
    /// The exponent s as `re` or `re,im`; Re(s) >= 1.
    #[arg(long, allow_hyphen_values = true, default_value = "1.1")]
    pub s: RealPair,
    /// Check this many random tempered (mu, mu') pairs instead.
    #[arg(long = "random-points")]
    pub random_points: Option<usize>,
}

/// Round to 12 significant digits for display; CSV rows keep full floats.
fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let scale = 10f64.powi(11 - x.abs().log10().floor() as i32);
    (x * scale).round() / scale
}

/// Format a complex number as `re+imi`, rounded to 12 significant digits.
pub fn fmt_complex(z: Complex64) -> String {
    let re = round_sig(z.re);
    let im = round_sig(z.im);
    if im < 0.0 {
        format!("{}-{}i", re, -im)
    } else {
        format!("{re}+{im}i")
    }
}

struct Artifact {
    /// Lines printed to stdout before the artifact (e.g. the sum value).
    banner: Vec<String>,
    header: String,
    rows: Vec<String>,
    summary: serde_json::Value,
}

impl Artifact {
    fn new(header: &str) -> Self {
        Artifact {
            banner: Vec::new(),
            header: header.to_string(),
            rows: Vec::new(),
            summary: serde_json::Value::Null,
        }
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.header);
        for r in &self.rows {
            let _ = writeln!(out, "{r}");
        }
        out
    }
}

/// Execute a job; returns the text that was printed to stdout. The
/// CSV/JSON artifact is also written to `--output` when set.
pub fn run(config: &JobConfig) -> Result<String, CliError> {
    let threads = config
        .threads
        .or_else(|| {
            std::env::var("KLOSS3_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0); // 0 = rayon default
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Precondition(format!("thread pool: {e}")))?;
    let started = std::time::Instant::now();
    let artifact = pool.install(|| dispatch(config))?;

    let rendered = match config.format {
        OutputFormat::Csv => artifact.csv(),
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = artifact
                .rows
                .iter()
                .map(|r| {
                    let cells: Vec<&str> = r.split(',').collect();
                    artifact
                        .header
                        .split(',')
                        .zip(cells)
                        .map(|(k, v)| (k.to_string(), json!(v)))
                        .collect::<serde_json::Map<_, _>>()
                        .into()
                })
                .collect();
            let doc = json!({
                "version": env!("CARGO_PKG_VERSION"),
                "config": format!("{:?}", config.command),
                "seed": config.seed,
                "wall_ms": started.elapsed().as_millis() as u64,
                "summary": artifact.summary,
                "rows": rows,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
    };

    let mut text = String::new();
    for line in &artifact.banner {
        let _ = writeln!(text, "{line}");
    }
    text.push_str(&rendered);
    if let Some(path) = &config.output {
        std::fs::write(path, &rendered)?;
    }
    Ok(text)
}

fn char_pair(p: IntPair) -> Result<CharPair, CliError> {
    Ok(CharPair::new(p.0, p.1)?)
}

fn mod_pair(p: IntPair) -> Result<ModPair, CliError> {
    if p.0 < 1 || p.1 < 1 {
        return Err(CliError::Precondition(format!(
            "moduli must be positive, got ({}, {})",
            p.0, p.1
        )));
    }
    Ok(ModPair::new(p.0 as u64, p.1 as u64)?)
}

fn eval_sum(
    weyl: WeylElement,
    m: IntPair,
    n: IntPair,
    c: &ModPair,
    gated: bool,
    oracle: bool,
) -> Result<(ExponentTally, &'static str), CliError> {
    match weyl {
        WeylElement::I | WeylElement::W2 | WeylElement::W3 => Ok((
            s_degenerate(weyl, (m.0, m.1), (n.0, n.1), c)?,
            "degenerate",
        )),
        WeylElement::W4 => Ok((s_w4(&char_pair(m)?, &char_pair(n)?, c, gated)?, "direct")),
        WeylElement::W5 => Ok((s_w5(&char_pair(m)?, &char_pair(n)?, c, gated)?, "direct")),
        WeylElement::Wl => {
            let (mp, np) = (char_pair(m)?, char_pair(n)?);
            if oracle {
                Ok((s_wl_oracle(&mp, &np, c)?, "oracle"))
            } else {
                Ok((s_wl_fast(&mp, &np, c)?, "fast"))
            }
        }
    }
}

fn bound_row(r: &BoundReport) -> String {
    format!(
        "{},{},{},{}",
        r.sum_id.replace(',', ";"),
        r.computed_abs,
        r.bound_value,
        r.holds
    )
}

fn dispatch(config: &JobConfig) -> Result<Artifact, CliError> {
    match &config.command {
        Command::Sum(a) => {
            let c = mod_pair(a.c)?;
            let (tally, route) = eval_sum(a.weyl, a.m, a.n, &c, a.gated, a.oracle)?;
            let v = tally.value();
            let mut art = Artifact::new("weyl,m1,m2,n1,n2,c1,c2,gated,route,re,im,abs,terms");
            art.banner.push(fmt_complex(v));
            if a.tally {
                art.banner.push(tally.describe());
            }
            art.rows.push(format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                a.weyl,
                a.m.0,
                a.m.1,
                a.n.0,
                a.n.1,
                c.c1(),
                c.c2(),
                a.gated,
                route,
                v.re,
                v.im,
                v.norm(),
                tally.term_count()
            ));
            art.summary = json!({"value": fmt_complex(v), "tally": tally.describe()});
            Ok(art)
        }
        Command::Table(a) => {
            let mut art = Artifact::new("weyl,m1,m2,n1,n2,c1,c2,re,im,abs,terms");
            for c1 in 1..=a.c1max {
                for c2 in 1..=a.c2max {
                    let c = ModPair::new(c1, c2)?;
                    let (tally, _) = eval_sum(a.weyl, a.m, a.n, &c, a.gated, false)?;
                    let v = tally.value();
                    art.rows.push(format!(
                        "{},{},{},{},{},{c1},{c2},{},{},{},{}",
                        a.weyl,
                        a.m.0,
                        a.m.1,
                        a.n.0,
                        a.n.1,
                        v.re,
                        v.im,
                        v.norm(),
                        tally.term_count()
                    ));
                }
            }
            Ok(art)
        }
        Command::Bounds(a) => {
            let mut art = Artifact::new("sum_id,computed_abs,bound,holds");
            let mut all_hold = true;
            let chars: Vec<i64> = (1..=a.mmax).flat_map(|k| [k, -k]).collect();
            if a.kind != BoundKind::Weil && chars.is_empty() {
                return Err(CliError::Precondition(
                    "character sweeps need mmax >= 1".into(),
                ));
            }
            match a.kind {
                BoundKind::Weil => {
                    for &IntPair(x, y) in &a.ab {
                        for c in 1..=a.cmax {
                            let r = check_weil(x, y, c);
                            all_hold &= r.holds;
                            art.rows.push(bound_row(&r));
                        }
                    }
                }
                BoundKind::Stevens => {
                    for c1 in 1..=a.cmax {
                        for c2 in 1..=a.cmax {
                            let c = ModPair::new(c1, c2)?;
                            for &m1 in &chars {
                                for &m2 in &chars {
                                    for &n1 in &chars {
                                        for &n2 in &chars {
                                            let m = CharPair::new(m1, m2)?;
                                            let n = CharPair::new(n1, n2)?;
                                            let r = check_stevens(&m, &n, &c)?;
                                            all_hold &= r.holds;
                                            art.rows.push(bound_row(&r));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                BoundKind::Larsen4 | BoundKind::Larsen5 => {
                    let w = if a.kind == BoundKind::Larsen4 {
                        WeylElement::W4
                    } else {
                        WeylElement::W5
                    };
                    for c1 in 1..=a.cmax {
                        for c2 in 1..=a.cmax {
                            let c = ModPair::new(c1, c2)?;
                            for &m1 in &chars {
                                for &m2 in &chars {
                                    for &n1 in &chars {
                                        for &n2 in &chars {
                                            let m = CharPair::new(m1, m2)?;
                                            let n = CharPair::new(n1, n2)?;
                                            let r = check_larsen(w, &m, &n, &c)?;
                                            all_hold &= r.holds;
                                            art.rows.push(bound_row(&r));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            art.summary = json!({"all_hold": all_hold, "rows": art.rows.len()});
            art.banner.push(format!("all_hold={all_hold}"));
            Ok(art)
        }
        Command::Smooth(a) => {
            if !(a.x > 0.0 && a.y > 0.0) {
                return Err(CliError::Precondition(format!(
                    "smooth needs X, Y > 0, got ({}, {})",
                    a.x, a.y
                )));
            }
            let window = SmoothWindow::new(a.window.0, a.window.1);
            let m = char_pair(a.m)?;
            let n = char_pair(a.n)?;
            let s = smoothed_wl_sum(&m, &n, a.x, a.y, &window)?;
            let mut art = Artifact::new("X,Y,re,im,abs,terms,companion,ratio");
            art.rows.push(format!(
                "{},{},{},{},{},{},{},{}",
                a.x,
                a.y,
                s.value.re,
                s.value.im,
                s.value.norm(),
                s.terms,
                s.companion,
                s.ratio
            ));
            art.summary = json!({"ratio": s.ratio, "terms": s.terms});
            art.banner.push(fmt_complex(s.value));
            Ok(art)
        }
        Command::Linnik(a) => {
            if !(a.t_max <= 1e7) {
                return Err(CliError::Precondition(format!(
                    "linnik t-max capped at 1e7 for the runtime budget, got {}",
                    a.t_max
                )));
            }
            let series = linnik_sum(a.n, a.m, a.t_max);
            let mut art = Artifact::new("scale,re,im,abs,terms");
            push_series(&mut art, &series.weighted);
            art.summary = json!({
                "fitted_slope": nan_null(series.weighted.fitted_slope),
                "fit_window": series.weighted.fit_window,
                "residual": nan_null(series.weighted.residual),
                "unweighted": {
                    "fitted_slope": nan_null(series.unweighted.fitted_slope),
                    "last_abs": series.unweighted.records.last().map(|r| r.abs),
                },
            });
            art.banner
                .push(format!("fitted_slope={}", series.weighted.fitted_slope));
            Ok(art)
        }
        Command::Zeta(a) => {
            let m = char_pair(a.m)?;
            let n = char_pair(a.n)?;
            if a.cmax > 4096 {
                return Err(CliError::Precondition(format!(
                    "zeta cmax capped at 4096 for the runtime budget, got {}",
                    a.cmax
                )));
            }
            let series = zeta_partial_sum(a.weyl, &m, &n, (a.u.0, a.u.1), a.cmax)?;
            let mut art = Artifact::new("scale,re,im,abs,terms");
            push_series(&mut art, &series);
            art.summary = json!({
                "fitted_slope": nan_null(series.fitted_slope),
                "fit_window": series.fit_window,
                "residual": nan_null(series.residual),
            });
            Ok(art)
        }
        Command::Specfun(a) => {
            let mu = SpectralPoint::new(a.mu.0, a.mu.1);
            let u = MellinPoint::new(a.u.0, a.u.1);
            let delta = DeltaParam::new(a.delta)?;
            let mut art = Artifact::new("kind,value_re,value_im,extra");
            let (v, extra) = match a.kind {
                SpecfunKind::Lambda => (big_lambda(&mu)?, String::new()),
                SpecfunKind::Gfn => (g_fn(&u, &mu)?, String::new()),
                SpecfunKind::Gstar => (g_star(&u, &mu)?, String::new()),
                SpecfunKind::GstarLeft => (g_star_residue_left(u.u2, &mu)?, String::new()),
                SpecfunKind::GstarRight => (g_star_residue_right(u.u1, &mu)?, String::new()),
                SpecfunKind::GstarDouble => (g_star_residue_double(&mu)?, String::new()),
                SpecfunKind::Kwl => (k_wl(&mu, &delta)?, String::new()),
                SpecfunKind::Ji => (j_i(&mu, &delta)?, String::new()),
                SpecfunKind::Cstar => (c_star(&mu, &delta)?, String::new()),
                SpecfunKind::C3invsq => (c3_inv_sq(&mu), String::new()),
                SpecfunKind::Kadj => (k_adj(&mu, &delta), String::new()),
                SpecfunKind::Whittaker => {
                    if !(a.y.0 > 0.0 && a.y.1 > 0.0) {
                        return Err(CliError::Precondition(format!(
                            "whittaker needs y1, y2 > 0, got ({}, {})",
                            a.y.0, a.y.1
                        )));
                    }
                    let (v, err) = whittaker(a.y.0, a.y.1, &mu, &ContourSpec::standard())?;
                    (v, format!("quad_err={err:e}"))
                }
                SpecfunKind::Beta => {
                    let chk = beta_integral_check(u.u1, u.u2)?;
                    (chk.lhs, format!("rel_err={:e}", chk.rel_err))
                }
            };
            art.banner.push(fmt_complex(v));
            art.rows
                .push(format!("{:?},{},{},{extra}", a.kind, v.re, v.im));
            art.summary = json!({"value": fmt_complex(v), "extra": extra});
            Ok(art)
        }
        Command::Stade(a) => {
            let quad = StadeQuad::default();
            let mut art = Artifact::new("mu,mup,s,lhs_re,lhs_im,rhs_re,rhs_im,rel_err");
            let mut cases: Vec<(SpectralPoint, SpectralPoint, Complex64)> = Vec::new();
            if let Some(k) = a.random_points {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                for _ in 0..k {
                    let mu = SpectralPoint::tempered(
                        rng.gen_range(-1.0..1.0),
                        rng.gen_range(-1.0..1.0),
                    );
                    let mup = SpectralPoint::tempered(
                        rng.gen_range(-1.0..1.0),
                        rng.gen_range(-1.0..1.0),
                    );
                    cases.push((mu, mup, Complex64::new(a.s.0, a.s.1)));
                }
            } else {
                cases.push((
                    SpectralPoint::new(a.mu.0, a.mu.1),
                    SpectralPoint::new(a.mup.0, a.mup.1),
                    Complex64::new(a.s.0, a.s.1),
                ));
            }
            let mut worst = 0.0f64;
            for (mu, mup, s) in cases {
                let chk = stade_check(&mu, &mup, s, &quad)?;
                worst = worst.max(chk.rel_err);
                art.rows.push(format!(
                    "{};{};{},{};{};{},{},{},{},{},{},{}",
                    fmt_complex(mu.mu1()),
                    fmt_complex(mu.mu2()),
                    fmt_complex(mu.mu3()),
                    fmt_complex(mup.mu1()),
                    fmt_complex(mup.mu2()),
                    fmt_complex(mup.mu3()),
                    fmt_complex(s),
                    chk.lhs.re,
                    chk.lhs.im,
                    chk.rhs.re,
                    chk.rhs.im,
                    chk.rel_err,
                ));
            }
            art.summary = json!({"worst_rel_err": worst, "cases": art.rows.len()});
            art.banner.push(format!("worst_rel_err={worst:e}"));
            Ok(art)
        }
    }
}

fn push_series(art: &mut Artifact, series: &GrowthSeries) {
    for r in &series.records {
        art.rows.push(format!(
            "{},{},{},{},{}",
            r.scale, r.re, r.im, r.abs, r.terms
        ));
    }
}

fn nan_null(x: f64) -> serde_json::Value {
    if x.is_finite() {
        json!(x)
    } else {
        serde_json::Value::Null
    }
}
