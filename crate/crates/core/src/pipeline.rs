//! End-to-end solving: projection, threshold, isolation, matching and
//! clustering, assembled into a report.

use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::bound::{compute_params, BoundParams, EpsilonMode};
use crate::error::{Error, Result};
use crate::exact_arith::{log2_bound, parse_decimal, pow2, serde_rational, to_decimal, RationalInterval};
use crate::isolation::{isolate_real_roots, raw_multiplicity, IsolatedRoot};
use crate::matcher::{classify_all, multiplicity_cluster, MatchOptions, Solution, Verdict};
use crate::parse::{parse_pair, parse_poly};
use crate::poly::{BiPoly, UniPoly};
use crate::resultant::project;
use crate::{par, ParseError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub epsilon_mode: EpsilonMode,
    #[serde(default, with = "serde_rational::option")]
    pub manual_epsilon: Option<Rational>,
    /// Significant digits of printed approximations.
    pub digits: u32,
    /// Worker threads; 0 uses the default pool.
    #[serde(skip)]
    pub workers: usize,
    /// Cap on root refinement, in bits of interval width.
    pub budget_bits: Option<u64>,
    #[serde(skip)]
    pub format: OutputFormat,
    /// Wall-clock limit, checked between refinement levels.
    #[serde(skip)]
    pub time_limit: Option<Duration>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            epsilon_mode: EpsilonMode::Safe,
            manual_epsilon: None,
            digits: 10,
            workers: 0,
            budget_bits: None,
            format: OutputFormat::Text,
            time_limit: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemInput {
    pub f: BiPoly,
    pub g: BiPoly,
    pub source: String,
    pub options: SolveOptions,
}

impl SystemInput {
    pub fn new(f: BiPoly, g: BiPoly) -> Self {
        let source = format!("{f}; {g}");
        SystemInput {
            f,
            g,
            source,
            options: SolveOptions::default(),
        }
    }
}

/// Reads `f; g` with default options.
pub fn parse_system(text: &str) -> std::result::Result<SystemInput, ParseError> {
    let (f, g) = parse_pair(text)?;
    Ok(SystemInput {
        f,
        g,
        source: text.to_string(),
        options: SolveOptions::default(),
    })
}

/// Reads the two polynomials from separate strings.
pub fn parse_system_parts(f: &str, g: &str) -> std::result::Result<SystemInput, ParseError> {
    let (pf, pg) = (parse_poly(f, 1)?, parse_poly(g, 2)?);
    Ok(SystemInput {
        f: pf,
        g: pg,
        source: format!("{f}; {g}"),
        options: SolveOptions::default(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootReport {
    /// Enclosure of the root that also contains `approx`.
    pub interval: RationalInterval,
    pub approx: String,
    pub raw_multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    #[serde(flatten)]
    pub solution: Solution,
    pub x_approx: String,
    pub y_approx: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

/// Run-dependent data, kept apart so that the rest of the report is
/// reproducible.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    pub workers: usize,
    pub timings: Vec<StageTiming>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub source: String,
    pub f: BiPoly,
    pub g: BiPoly,
    pub options: SolveOptions,
    pub t_raw: UniPoly,
    pub t_sf: UniPoly,
    pub big_t_raw: UniPoly,
    pub big_t_sf: UniPoly,
    pub params: BoundParams,
    pub x_roots: Vec<RootReport>,
    pub y_roots: Vec<RootReport>,
    pub candidates: usize,
    pub rejected: usize,
    pub solutions: Vec<SolutionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub run: Option<RunInfo>,
}

impl SolveReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON without run-dependent data.
    pub fn to_canonical_json(&self) -> String {
        let mut r = self.clone();
        r.run = None;
        r.to_json()
    }

    pub fn from_json(s: &str) -> serde_json::Result<SolveReport> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Relative width `2^-bits` that keeps `digits` significant digits.
fn report_bits(digits: u32) -> u64 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u64 + 1
}

/// Refines until the width is at most `2^-bits` relative to the root.
fn refine_relative(root: &IsolatedRoot, bits: u64) -> IsolatedRoot {
    let bits = bits as i64;
    let mut r = root.refine(&pow2(-bits));
    let mut extra = bits;
    while !r.is_exact() && r.interval.contains_zero() {
        r = r.refine(&pow2(-bits - extra));
        extra *= 2;
    }
    if r.is_exact() {
        return r;
    }
    let near = r.interval.lo().clone().abs().min(r.interval.hi().clone().abs());
    let e = log2_bound(&near).expect("interval excludes zero");
    if e < 0 {
        r = r.refine(&pow2(e - bits));
    }
    r
}

fn approximate(iv: &RationalInterval, digits: u32) -> (RationalInterval, String) {
    let text = to_decimal(&iv.midpoint(), digits);
    let value = parse_decimal(&text).expect("decimal parses");
    (iv.hull(&RationalInterval::point(value)), text)
}

fn check_deadline(deadline: Option<Instant>) -> Result<()> {
    match deadline {
        Some(d) if Instant::now() > d => Err(Error::Timeout),
        _ => Ok(()),
    }
}

/// Solves the system.
pub fn solve(input: &SystemInput) -> Result<SolveReport> {
    let workers = input.options.workers;
    par::with_workers(workers, || solve_in_pool(input))
}

fn solve_in_pool(input: &SystemInput) -> Result<SolveReport> {
    let opts = &input.options;
    let deadline = opts.time_limit.map(|d| Instant::now() + d);
    let (f, g) = (&input.f, &input.g);
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut Vec<StageTiming>| {
        let now = Instant::now();
        timings.push(StageTiming {
            stage: name.to_string(),
            seconds: (now - clock).as_secs_f64(),
        });
        clock = now;
    };

    let (px, py) = project(f, g)?;
    lap("projection", &mut timings);
    check_deadline(deadline)?;

    let params = compute_params(f, g, &px.square_free, &py.square_free, opts.epsilon_mode, opts.manual_epsilon.as_ref())?;
    lap("bound", &mut timings);

    let bits = report_bits(opts.digits);
    let isolate = |raw: &UniPoly, sf: &UniPoly| -> Result<Vec<IsolatedRoot>> {
        let roots = isolate_real_roots(sf)?;
        let done = par::map(&roots, |r| -> Result<IsolatedRoot> {
            let mut r = refine_relative(r, bits);
            r.raw_multiplicity = raw_multiplicity(raw, &r)?;
            Ok(r)
        });
        done.into_iter().collect()
    };
    let (sx, sy) = par::join(|| isolate(&px.raw, &px.square_free), || isolate(&py.raw, &py.square_free));
    let (sx, sy) = (sx?, sy?);
    lap("isolation", &mut timings);
    check_deadline(deadline)?;

    let match_opts = MatchOptions {
        budget_bits: opts.budget_bits,
        report_bits: bits,
        deadline,
    };
    let outcomes = classify_all(f, g, &sx, &sy, &params, &match_opts)?;
    let candidates = outcomes.len();
    let found: Vec<Solution> = outcomes
        .into_iter()
        .filter_map(|o| match o.verdict {
            Verdict::Root(s) => Some(s),
            Verdict::NonRoot => None,
        })
        .collect();
    let rejected = candidates - found.len();
    lap("matching", &mut timings);

    let clustered = multiplicity_cluster(found, &params, &sx, &sy);
    lap("clustering", &mut timings);

    let root_reports = |roots: &[IsolatedRoot]| -> Vec<RootReport> {
        roots
            .iter()
            .map(|r| {
                let (interval, approx) = approximate(&r.interval, opts.digits);
                RootReport {
                    interval,
                    approx,
                    raw_multiplicity: r.raw_multiplicity,
                }
            })
            .collect()
    };
    let solutions = clustered
        .into_iter()
        .map(|mut s| {
            let (xi, xa) = approximate(&s.x_interval, opts.digits);
            let (yi, ya) = approximate(&s.y_interval, opts.digits);
            s.x_interval = xi;
            s.y_interval = yi;
            SolutionReport {
                solution: s,
                x_approx: xa,
                y_approx: ya,
            }
        })
        .collect();

    Ok(SolveReport {
        source: input.source.clone(),
        f: f.clone(),
        g: g.clone(),
        options: opts.clone(),
        t_raw: px.raw,
        t_sf: px.square_free,
        big_t_raw: py.raw,
        big_t_sf: py.square_free,
        params,
        x_roots: root_reports(&sx),
        y_roots: root_reports(&sy),
        candidates,
        rejected,
        solutions,
        run: Some(RunInfo {
            workers: par::with_workers(input.options.workers, par::current_workers),
            timings,
        }),
    })
}

impl fmt::Display for SolveReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        let mut s = String::new();
        writeln!(s, "system").unwrap();
        writeln!(s, "  f = {}", self.f).unwrap();
        writeln!(s, "  g = {}", self.g).unwrap();
        writeln!(s, "projections").unwrap();
        writeln!(s, "  t(x)    = {}", self.t_raw).unwrap();
        writeln!(s, "  t_sf(x) = {}", self.t_sf).unwrap();
        writeln!(s, "  T(y)    = {}", self.big_t_raw).unwrap();
        writeln!(s, "  T_sf(y) = {}", self.big_t_sf).unwrap();
        let status = if p.is_certified() { "certified" } else { "not certified" };
        writeln!(s, "bound ({} mode, {status})", p.mode).unwrap();
        if p.mode == EpsilonMode::Manual {
            writeln!(s, "  epsilon = {}", p.epsilon).unwrap();
        } else {
            writeln!(s, "  N = {}, M = {}, s = {}, c = {}", p.n, p.m, p.s, p.c).unwrap();
        }
        writeln!(s, "  log2(epsilon) >= {}", p.epsilon_log2).unwrap();
        let list = |roots: &[RootReport]| {
            roots
                .iter()
                .map(|r| {
                    if r.raw_multiplicity > 1 {
                        format!("{} (x{})", r.approx, r.raw_multiplicity)
                    } else {
                        r.approx.clone()
                    }
                })
                .collect::<Vec<_>>()
                .join(", ")
        };
        writeln!(s, "real roots of the projections").unwrap();
        writeln!(s, "  x: {}", list(&self.x_roots)).unwrap();
        writeln!(s, "  y: {}", list(&self.y_roots)).unwrap();
        writeln!(
            s,
            "solutions: {} (candidate pairs: {}, rejected: {})",
            self.solutions.len(),
            self.candidates,
            self.rejected
        )
        .unwrap();
        for r in &self.solutions {
            let sol = &r.solution;
            write!(
                s,
                "  x = {}, y = {}   multiplicity hint ({}, {})",
                r.x_approx, r.y_approx, sol.multiplicity_hint.0, sol.multiplicity_hint.1
            )
            .unwrap();
            if sol.cluster_flag {
                write!(s, "   clustered from {} pairs", sol.members.len()).unwrap();
            }
            writeln!(s).unwrap();
        }
        if let Some(run) = &self.run {
            let parts: Vec<String> = run.timings.iter().map(|t| format!("{} {:.3}s", t.stage, t.seconds)).collect();
            let unit = if run.workers == 1 { "worker" } else { "workers" };
            writeln!(s, "timing ({} {unit}): {}", run.workers, parts.join(", ")).unwrap();
        }
        out.write_str(&s)
    }
}
