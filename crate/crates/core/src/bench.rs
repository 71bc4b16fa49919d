//! Random instance families and a harness that solves them and tabulates
//! the outcome.
//!
//! Generation uses ChaCha8 seeded from the configured seed, with one stream
//! per (family, degree, instance, attempt), so each instance can be
//! regenerated on its own and a rejected draw never shifts the others.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pipeline::{solve, SolveOptions, SystemInput};
use crate::poly::{zpoly, BiPoly, Var};
use crate::resultant::{bareiss_det, sylvester_rows, univariate_resultant};
use crate::par;

/// Monomials per polynomial in the sparse family.
pub const SPARSE_TERMS: usize = 6;

/// Draws per instance before giving up on a degenerate system.
pub const MAX_ATTEMPTS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Dense,
    Sparse,
    MultipleRoot,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Dense => "dense",
            Family::Sparse => "sparse",
            Family::MultipleRoot => "multiple-root",
        }
    }

    fn stream_tag(self) -> u64 {
        match self {
            Family::Dense => 1,
            Family::Sparse => 2,
            Family::MultipleRoot => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Family::Dense),
            "sparse" => Ok(Family::Sparse),
            "multiple-root" => Ok(Family::MultipleRoot),
            other => Err(Error::InvalidConfig(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub family: Family,
    pub min_degree: u32,
    pub max_degree: u32,
    /// Coefficients are drawn uniformly from `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: u32,
    /// Instances per degree.
    pub instances: u32,
    pub seed: u64,
    /// Wall-clock limit per instance.
    #[serde(with = "seconds")]
    pub time_budget: Duration,
    pub options: SolveOptions,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            family: Family::Dense,
            min_degree: 2,
            max_degree: 4,
            coeff_bound: 20,
            instances: 5,
            seed: 42,
            time_budget: Duration::from_secs(120),
            options: SolveOptions::default(),
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_degree < 1 || self.max_degree < self.min_degree {
            return Err(Error::InvalidConfig("degrees must satisfy 1 <= min <= max".into()));
        }
        if self.coeff_bound < 1 {
            return Err(Error::InvalidConfig("coefficient bound must be at least 1".into()));
        }
        Ok(())
    }
}

mod seconds {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let v = f64::deserialize(d)?;
        Duration::try_from_secs_f64(v).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchInstance {
    pub family: Family,
    /// Generation degree: of `f` and `g` for the dense and sparse families,
    /// of the trivariate seed polynomial for the multiple-root family.
    pub degree: u32,
    pub index: u32,
    /// Draws needed to get a non-degenerate system.
    pub attempts: u32,
    pub input: SystemInput,
}

fn rng_for(config: &BenchConfig, degree: u32, index: u32, attempt: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let stream = (config.family.stream_tag() << 56)
        | (u64::from(degree & 0xff) << 48)
        | (u64::from(index & 0xff_ffff) << 24)
        | u64::from(attempt & 0xff_ffff);
    rng.set_stream(stream);
    rng
}

fn nonzero_coeff(rng: &mut ChaCha8Rng, bound: u32) -> i64 {
    let b = i64::from(bound);
    loop {
        let c = rng.gen_range(-b..=b);
        if c != 0 {
            return c;
        }
    }
}

/// Exponent tuples of total degree at most `d` in `n` variables.
fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for e in 0..=d {
        for mut rest in monomials(n - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// Random polynomial with the given monomial support size (`None` for all
/// monomials), always including one monomial of full degree.
fn random_terms(rng: &mut ChaCha8Rng, vars: usize, degree: u32, terms: Option<usize>, bound: u32) -> Vec<(Vec<u32>, i64)> {
    let all = monomials(vars, degree);
    let chosen: Vec<Vec<u32>> = match terms {
        None => all,
        Some(k) => {
            let top: Vec<&Vec<u32>> = all.iter().filter(|m| m.iter().sum::<u32>() == degree).collect();
            let lead = top[rng.gen_range(0..top.len())].clone();
            let mut rest: Vec<Vec<u32>> = all.into_iter().filter(|m| *m != lead).collect();
            let mut picked = vec![lead];
            while picked.len() < k && !rest.is_empty() {
                picked.push(rest.swap_remove(rng.gen_range(0..rest.len())));
            }
            picked.sort();
            picked
        }
    };
    chosen.into_iter().map(|m| (m, nonzero_coeff(rng, bound))).collect()
}

fn bivariate(terms: &[(Vec<u32>, i64)]) -> BiPoly {
    BiPoly::from_terms(terms.iter().map(|(m, c)| ((m[0], m[1]), Rational::from(*c))))
}

/// `Res_z(h, dh/dz)` for `h` given by `(x, y, z)` exponents, computed on the
/// Kronecker image `x -> u`, `y -> u^k` with `k` above any `x` degree of the
/// result.
pub fn discriminant_z(h: &[(Vec<u32>, i64)]) -> BiPoly {
    let total = h.iter().map(|(m, _)| m.iter().sum::<u32>()).max().unwrap_or(0);
    let dz = h.iter().map(|(m, _)| m[2]).max().unwrap_or(0) as usize;
    if dz == 0 {
        return BiPoly::zero();
    }
    // Every entry of the Sylvester matrix has total degree <= total, and the
    // determinant has 2*dz - 1 rows, so its degree is bounded by their product.
    let k = total as usize * (2 * dz - 1) + 1;
    let mut hz = vec![zpoly::ZPoly::new(); dz + 1];
    let mut dhz = vec![zpoly::ZPoly::new(); dz];
    for (m, c) in h {
        let e = m[0] as usize + k * m[1] as usize;
        let z = m[2] as usize;
        let put = |p: &mut zpoly::ZPoly, v: Integer| {
            if p.len() <= e {
                p.resize(e + 1, Integer::new());
            }
            p[e] += v;
        };
        put(&mut hz[z], Integer::from(*c));
        if z > 0 {
            put(&mut dhz[z - 1], Integer::from(*c) * z as u32);
        }
    }
    for p in hz.iter_mut().chain(dhz.iter_mut()) {
        zpoly::trim(p);
    }
    let det = bareiss_det(sylvester_rows(&hz, &dhz));
    BiPoly::from_terms(
        det.iter()
            .enumerate()
            .filter(|(_, c)| c.cmp0() != std::cmp::Ordering::Equal)
            .map(|(e, c)| (((e % k) as u32, (e / k) as u32), Rational::from(c.clone()))),
    )
}

/// Whether eliminating `v` leaves a nonzero resultant, judged by exact
/// specialization of the other variable at small integers.
fn resultant_nonzero(f: &BiPoly, g: &BiPoly, v: Var) -> bool {
    let (df, dg) = (f.degree_in(v) as usize, g.degree_in(v) as usize);
    if df == 0 && dg == 0 {
        return false;
    }
    for a in -3i64..=3 {
        let a = Rational::from(a);
        let (fa, ga) = (f.specialize(v.other(), &a), g.specialize(v.other(), &a));
        if fa.is_zero() || ga.is_zero() || fa.deg() != df || ga.deg() != dg {
            continue;
        }
        if univariate_resultant(&fa, &ga).cmp0() != std::cmp::Ordering::Equal {
            return true;
        }
    }
    false
}

fn usable(f: &BiPoly, g: &BiPoly) -> bool {
    f.has_variables() && g.has_variables() && resultant_nonzero(f, g, Var::Y) && resultant_nonzero(f, g, Var::X)
}

fn draw(config: &BenchConfig, degree: u32, rng: &mut ChaCha8Rng) -> (BiPoly, BiPoly) {
    let b = config.coeff_bound;
    match config.family {
        Family::Dense => (
            bivariate(&random_terms(rng, 2, degree, None, b)),
            bivariate(&random_terms(rng, 2, degree, None, b)),
        ),
        Family::Sparse => (
            bivariate(&random_terms(rng, 2, degree, Some(SPARSE_TERMS), b)),
            bivariate(&random_terms(rng, 2, degree, Some(SPARSE_TERMS), b)),
        ),
        Family::MultipleRoot => {
            let h = random_terms(rng, 3, degree, Some(SPARSE_TERMS), b);
            let f = discriminant_z(&h);
            let g = f.derivative(Var::Y);
            (f, g)
        }
    }
}

/// One instance, regenerating on degenerate draws.
pub fn generate_instance(config: &BenchConfig, degree: u32, index: u32) -> Result<BenchInstance> {
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = rng_for(config, degree, index, attempt);
        let (f, g) = draw(config, degree, &mut rng);
        if usable(&f, &g) {
            let mut input = SystemInput::new(f, g);
            input.options = config.options.clone();
            return Ok(BenchInstance {
                family: config.family,
                degree,
                index,
                attempts: attempt + 1,
                input,
            });
        }
    }
    Err(Error::DegenerateInstance { attempts: MAX_ATTEMPTS })
}

/// All instances of the configuration, by degree then index.
pub fn bench_generate(config: &BenchConfig) -> Result<Vec<BenchInstance>> {
    config.validate()?;
    let mut out = Vec::new();
    for degree in config.min_degree..=config.max_degree {
        for index in 0..config.instances {
            out.push(generate_instance(config, degree, index)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Solved,
    /// Time or refinement budget exhausted; shown as `?`.
    Unfinished,
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: Family,
    pub degree: u32,
    pub index: u32,
    pub deg_f: u32,
    pub deg_g: u32,
    pub solutions: Option<usize>,
    /// Solutions whose multiplicity hint exceeds one in either coordinate.
    pub multiple: Option<usize>,
    pub status: Status,
    pub seconds: f64,
    pub stages: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchTable {
    pub config: BenchConfig,
    pub rows: Vec<BenchRow>,
}

fn run_instance(inst: &BenchInstance, config: &BenchConfig) -> BenchRow {
    let mut input = inst.input.clone();
    input.options.time_limit = Some(config.time_budget);
    input.options.workers = 0;
    let start = Instant::now();
    let result = solve(&input);
    let seconds = start.elapsed().as_secs_f64();
    let mut row = BenchRow {
        family: inst.family,
        degree: inst.degree,
        index: inst.index,
        deg_f: input.f.total_degree(),
        deg_g: input.g.total_degree(),
        solutions: None,
        multiple: None,
        status: Status::Solved,
        seconds,
        stages: BTreeMap::new(),
    };
    match result {
        Ok(report) => {
            row.solutions = Some(report.solutions.len());
            row.multiple = Some(
                report
                    .solutions
                    .iter()
                    .filter(|s| s.solution.multiplicity_hint.0 > 1 || s.solution.multiplicity_hint.1 > 1)
                    .count(),
            );
            if let Some(run) = report.run {
                row.stages = run.timings.into_iter().map(|t| (t.stage, t.seconds)).collect();
            }
        }
        Err(Error::Timeout | Error::RefinementBudgetExceeded { .. }) => row.status = Status::Unfinished,
        Err(e) => row.status = Status::Failed(e.to_string()),
    }
    row
}

/// Solves every generated instance within the per-instance time budget.
pub fn bench_run(config: &BenchConfig) -> Result<BenchTable> {
    let instances = bench_generate(config)?;
    let rows = par::with_workers(config.options.workers, || par::map(&instances, |inst| run_instance(inst, config)));
    Ok(BenchTable {
        config: config.clone(),
        rows,
    })
}

impl BenchTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    /// Rows grouped by degree: solution counts, with `?` for unfinished
    /// instances, and the mean time over finished ones.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for BenchTable {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        writeln!(s, "family {} (seed {}, |coeff| <= {})", self.config.family, self.config.seed, self.config.coeff_bound).unwrap();
        writeln!(s, "{:>4}  {:>5}  {:>5}  {:>9}  {:>8}  {:>10}", "deg", "inst", "deg f", "solutions", "multiple", "time (s)").unwrap();
        for r in &self.rows {
            let sols = match (&r.status, r.solutions) {
                (Status::Solved, Some(n)) => n.to_string(),
                (Status::Unfinished, _) => "?".into(),
                _ => "error".into(),
            };
            let mult = r.multiple.map_or("-".into(), |m| m.to_string());
            writeln!(s, "{:>4}  {:>5}  {:>5}  {:>9}  {:>8}  {:>10.3}", r.degree, r.index, r.deg_f, sols, mult, r.seconds).unwrap();
        }
        let mut by_degree: BTreeMap<u32, Vec<&BenchRow>> = BTreeMap::new();
        for r in &self.rows {
            by_degree.entry(r.degree).or_default().push(r);
        }
        writeln!(s, "average time over finished instances").unwrap();
        for (d, rows) in by_degree {
            let done: Vec<f64> = rows.iter().filter(|r| r.status == Status::Solved).map(|r| r.seconds).collect();
            let avg = if done.is_empty() {
                "?".to_string()
            } else {
                format!("{:.3}", done.iter().sum::<f64>() / done.len() as f64)
            };
            writeln!(s, "{:>4}  {}/{} finished  {avg}", d, done.len(), rows.len()).unwrap();
        }
        for r in &self.rows {
            if let Status::Failed(msg) = &r.status {
                writeln!(s, "degree {} instance {}: {msg}", r.degree, r.index).unwrap();
            }
        }
        out.write_str(&s)
    }
}
