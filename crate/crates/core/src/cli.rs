//! The `circulant` command-line front end.
//!
//! Every subcommand renders to a `String` ending in a newline, so the binary
//! only decides where it goes. Errors map to stable exit codes: 0 success,
//! 1 verification failure, 2 contract or hypothesis error, 3 resource limit.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::circulant::{
    cycle_profile, leibniz_expand, step_enumerate, step_expand, support_counts, two_lines_det,
    CirculantSpec, ExpandMethod, Mode,
};
use crate::error::{Error, Result};
use crate::fastperm::{
    bench_csv, bench_matrix, det_poly_interpolate, det_poly_interpolate_with, per_eval_many,
    per_poly_from_det, PerMethod, Route,
};
use crate::gt::{minimality_certificate, wlp_kernel_dim};
use crate::oracle::{full_coefficient_with, gcd3, oracle_support_count, MagnitudeMethod, Sign};
use crate::poly::IntPolynomial;

/// Largest order `verify` sweeps exhaustively.
pub const VERIFY_MAX_D: u64 = 9;

#[derive(Parser, Debug)]
#[command(
    name = "circulant",
    version,
    about = "Exact determinants and permanents of circulant matrices"
)]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "CIRCULANT_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExpandMode {
    DetLeibniz,
    PerLeibniz,
    DetStep,
    PerStep,
    DetInterp,
    DetInterpExact,
    PerInterp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoeffMethod {
    Count,
    Interp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SupportMethod {
    Leibniz,
    Step,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PermMethod {
    Ryser,
    Interp,
}

impl From<PermMethod> for PerMethod {
    fn from(m: PermMethod) -> Self {
        match m {
            PermMethod::Ryser => PerMethod::Ryser,
            PermMethod::Interp => PerMethod::Interp,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expand det or per of Circ(d; shifts) as a polynomial.
    Expand {
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        shifts: Vec<usize>,
        #[arg(long, value_enum, default_value = "det-interp")]
        mode: ExpandMode,
        /// Include the interpolation plan (interp modes only).
        #[arg(long)]
        emit_plan: bool,
    },
    /// One coefficient of det Circ(d; 0, a, b) from the closed-form rules.
    Coeff {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long = "A")]
        a_exp: u64,
        #[arg(long = "B")]
        b_exp: u64,
        #[arg(long, value_enum, default_value = "count")]
        method: CoeffMethod,
    },
    /// Support sizes D (determinant) and P (permanent).
    Support {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value = "step")]
        method: SupportMethod,
    },
    /// GT-system report with minimality certificate.
    Gt {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Permanent of Circ(d; 0, a, b) at a numeric point.
    Perm {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// x,y,z as integers.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
        point: Vec<String>,
        #[arg(long, value_enum, default_value = "interp")]
        method: PermMethod,
    },
    /// Time permanent methods over a grid; CSV output.
    Bench {
        /// A single order `n` or an inclusive range `lo:hi`.
        #[arg(long)]
        d: String,
        #[arg(
            long,
            value_delimiter = ',',
            value_enum,
            default_value = "ryser,interp"
        )]
        methods: Vec<PermMethod>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        /// Every pair a < b with gcd(a, b, d) = 1 instead of a single pair.
        #[arg(long)]
        all_pairs: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cross-check the closed forms against brute force.
    Verify {
        #[arg(long, default_value_t = 7)]
        max_d: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Rendered output plus the exit code it implies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, exit_code: 0 }
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn only_json(format: Option<Format>) -> Result<()> {
    match format {
        None | Some(Format::Json) => Ok(()),
        Some(f) => Err(Error::Contract(format!(
            "format {f:?} is not available for this command"
        ))),
    }
}

/// Runs one parsed command line. Thread setup is the caller's job.
pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Expand {
            d,
            shifts,
            mode,
            emit_plan,
        } => run_expand(*d, shifts, *mode, *emit_plan, cli.format),
        Command::Coeff {
            d,
            a,
            b,
            a_exp,
            b_exp,
            method,
        } => {
            only_json(cli.format)?;
            run_coeff(*d, *a, *b, *a_exp, *b_exp, *method)
        }
        Command::Support { d, a, b, method } => {
            only_json(cli.format)?;
            run_support(*d, *a, *b, *method)
        }
        Command::Gt { d, a, b } => {
            only_json(cli.format)?;
            Ok(Outcome::ok(render_json(
                &minimality_certificate(*d, *a, *b)?.to_json(),
            )))
        }
        Command::Perm {
            d,
            a,
            b,
            point,
            method,
        } => {
            only_json(cli.format)?;
            run_perm(*d, *a, *b, point, *method)
        }
        Command::Bench {
            d,
            methods,
            a,
            b,
            all_pairs,
            seed,
        } => {
            if !matches!(cli.format, None | Some(Format::Csv)) {
                return Err(Error::Contract("bench writes CSV only".into()));
            }
            run_bench(d, methods, *a, *b, *all_pairs, *seed)
        }
        Command::Verify { max_d, seed } => {
            only_json(cli.format)?;
            run_verify(*max_d, *seed)
        }
    }
}

fn three_line_shifts(d: usize, shifts: &[usize]) -> Result<(usize, usize)> {
    let spec = CirculantSpec::new(d, shifts.to_vec())?;
    match spec.shifts() {
        [0, a, b] => Ok((*a, *b)),
        other => Err(Error::Contract(format!(
            "interpolation modes need shifts 0,a,b; got {other:?}"
        ))),
    }
}

pub fn run_expand(
    d: usize,
    shifts: &[usize],
    mode: ExpandMode,
    emit_plan: bool,
    format: Option<Format>,
) -> Result<Outcome> {
    let spec = CirculantSpec::new(d, shifts.to_vec())?;
    let mut plan = None;
    let poly: IntPolynomial = match mode {
        ExpandMode::DetLeibniz => leibniz_expand(&spec, Mode::Det)?,
        ExpandMode::PerLeibniz => leibniz_expand(&spec, Mode::Per)?,
        ExpandMode::DetStep => step_expand(&spec)?.0,
        ExpandMode::PerStep => step_expand(&spec)?.1,
        ExpandMode::DetInterp | ExpandMode::DetInterpExact => {
            let (a, b) = three_line_shifts(d, shifts)?;
            let route = if mode == ExpandMode::DetInterp {
                Route::Modular
            } else {
                Route::Exact
            };
            let res = det_poly_interpolate_with(d, a, b, route)?;
            plan = Some(res.metadata());
            res.poly
        }
        ExpandMode::PerInterp => {
            let (a, b) = three_line_shifts(d, shifts)?;
            per_poly_from_det(d, a, b)?
        }
    };
    if emit_plan && plan.is_none() {
        return Err(Error::Contract(
            "--emit-plan needs det-interp or det-interp-exact".into(),
        ));
    }
    match format {
        Some(Format::Text) => Ok(Outcome::ok(format!("{poly}\n"))),
        Some(Format::Csv) => Err(Error::Contract("expand writes json or text".into())),
        None | Some(Format::Json) => {
            let mut v = json!({
                "d": spec.d(),
                "shifts": spec.shifts(),
                "mode": mode.to_possible_value().expect("no skipped variants").get_name(),
                "num_terms": poly.num_terms(),
                "terms": poly.to_json(),
            });
            if emit_plan {
                v["plan"] = plan.expect("checked above");
            }
            Ok(Outcome::ok(render_json(&v)))
        }
    }
}

pub fn run_coeff(
    d: u64,
    a: u64,
    b: u64,
    a_exp: u64,
    b_exp: u64,
    method: CoeffMethod,
) -> Result<Outcome> {
    let method = match method {
        CoeffMethod::Count => MagnitudeMethod::Count,
        CoeffMethod::Interp => MagnitudeMethod::Interpolate,
    };
    let report = full_coefficient_with(d, a, b, a_exp, b_exp, method)?;
    Ok(Outcome::ok(render_json(&report.to_json())))
}

pub fn run_support(d: usize, a: usize, b: usize, method: SupportMethod) -> Result<Outcome> {
    let (det, per) = match method {
        SupportMethod::Oracle => oracle_support_count(d as u64, a as u64, b as u64)?,
        SupportMethod::Leibniz | SupportMethod::Step => {
            let spec = CirculantSpec::three_line(d, a, b)?;
            let m = if method == SupportMethod::Leibniz {
                ExpandMethod::Leibniz
            } else {
                ExpandMethod::Step
            };
            support_counts(&spec, m)?
        }
    };
    let name = method.to_possible_value().expect("no skipped variants");
    Ok(Outcome::ok(render_json(&json!({
        "d": d,
        "a": a,
        "b": b,
        "method": name.get_name(),
        "D": det,
        "P": per,
    }))))
}

fn parse_point(raw: &[String]) -> Result<[BigInt; 3]> {
    if raw.len() != 3 {
        return Err(Error::Arity {
            expected: 3,
            found: raw.len(),
        });
    }
    let mut out: [BigInt; 3] = Default::default();
    for (slot, s) in out.iter_mut().zip(raw) {
        *slot = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))?;
    }
    Ok(out)
}

pub fn run_perm(
    d: usize,
    a: usize,
    b: usize,
    point: &[String],
    method: PermMethod,
) -> Result<Outcome> {
    let pt = parse_point(point)?;
    let value = per_eval_many(d, a, b, std::slice::from_ref(&pt), method.into())?.remove(0);
    Ok(Outcome::ok(render_json(&json!({
        "d": d,
        "a": a,
        "b": b,
        "point": pt.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "method": PerMethod::from(method).name(),
        "value": value.to_string(),
    }))))
}

/// `"n"` or `"lo:hi"` (inclusive).
pub fn parse_order_range(s: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad order {t:?} in {s:?}")))
    };
    match s.split_once(':') {
        Some((lo, hi)) => Ok(num(lo)?..=num(hi)?),
        None => {
            let n = num(s)?;
            Ok(n..=n)
        }
    }
}

pub fn run_bench(
    d: &str,
    methods: &[PermMethod],
    a: Option<usize>,
    b: Option<usize>,
    all_pairs: bool,
    seed: u64,
) -> Result<Outcome> {
    let mut cells = Vec::new();
    for d in parse_order_range(d)? {
        if all_pairs {
            for a in 1..d {
                for b in a + 1..d {
                    if gcd3(a as u64, b as u64, d as u64) == 1 {
                        cells.push((d, a, b));
                    }
                }
            }
        } else {
            cells.push((d, a.unwrap_or(1), b.unwrap_or(2)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point: [BigInt; 3] = std::array::from_fn(|_| BigInt::from(rng.gen_range(-9i64..=9)));
    let methods: Vec<PerMethod> = methods.iter().map(|&m| m.into()).collect();
    let rows = bench_matrix(&cells, &methods, &point);
    Ok(Outcome::ok(bench_csv(&rows)))
}

#[derive(Default)]
struct Tally {
    name: &'static str,
    tuples: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.tuples += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "property": self.name,
            "tuples": self.tuples,
            "failures": self.failures.len(),
            "pass": self.failures.is_empty(),
            "first_failures": self.failures.iter().take(5).collect::<Vec<_>>(),
        })
    }
}

fn coprime_triples(min_d: u64, max_d: u64) -> impl Iterator<Item = (u64, u64, u64)> {
    (min_d..=max_d).flat_map(|d| {
        (1..d).flat_map(move |a| {
            (a + 1..d)
                .filter(move |&b| gcd3(a, b, d) == 1)
                .map(move |b| (d, a, b))
        })
    })
}

/// Exhaustive oracle, structure, formula and interpolation sweeps up to
/// `max_d`. Deterministic for a given seed.
pub fn run_verify(max_d: u64, seed: u64) -> Result<Outcome> {
    if max_d > VERIFY_MAX_D {
        return Err(Error::Contract(format!(
            "verify sweeps need max-d <= {VERIFY_MAX_D}, got {max_d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut oracle = Tally::new("oracle_matches_leibniz");
    let mut structure = Tally::new("cycle_structure");
    let mut two_line = Tally::new("two_line_formula");
    let mut interp = Tally::new("interpolation_matches_leibniz");
    let mut perm = Tally::new("ryser_matches_interpolation");
    let mut gt = Tally::new("gt_minimal_kernel_one");

    for (d, a, b) in coprime_triples(3, max_d) {
        let spec = CirculantSpec::three_line(d as usize, a as usize, b as usize)?;
        let det = leibniz_expand(&spec, Mode::Det)?;
        for a_exp in 0..=d {
            for b_exp in 0..=d - a_exp {
                let exps = [(d - a_exp - b_exp) as u32, a_exp as u32, b_exp as u32];
                let truth = det.coeff(&exps);
                let rep = full_coefficient_with(d, a, b, a_exp, b_exp, MagnitudeMethod::Count)?;
                let sign_ok = match rep.sign {
                    None => truth.is_zero(),
                    Some(Sign::Plus) => truth > BigInt::zero(),
                    Some(Sign::Minus) => truth < BigInt::zero(),
                };
                oracle.check(
                    rep.nonzero == !truth.is_zero() && sign_ok && rep.value == truth,
                    || {
                        format!(
                            "d={d} a={a} b={b} A={a_exp} B={b_exp}: oracle {} vs {truth}",
                            rep.value
                        )
                    },
                );
                if !rep.nonzero {
                    continue;
                }
                let ell = (a * a_exp + b * b_exp) / d;
                let k = gcd3(a_exp, b_exp, ell) as usize;
                let count = step_enumerate(&spec, &exps, true)?;
                for w in count.witnesses.expect("requested") {
                    let prof = cycle_profile(&w, a as usize, b as usize);
                    let equal = prof.cycles.windows(2).all(|p| p[0] == p[1]);
                    let primitive = prof
                        .cycles
                        .iter()
                        .all(|c| gcd3(c.a_count as u64, c.b_count as u64, c.winding as u64) == 1);
                    structure.check(equal && primitive && prof.k == k, || {
                        format!(
                            "d={d} a={a} b={b} A={a_exp} B={b_exp}: steps {}",
                            w.to_line()
                        )
                    });
                }
            }
        }
        let fast = det_poly_interpolate(d as usize, a as usize, b as usize)?;
        interp.check(fast == det, || format!("d={d} a={a} b={b}"));

        let points: Vec<[BigInt; 3]> = (0..3)
            .map(|_| std::array::from_fn(|_| BigInt::from(rng.gen_range(-5i64..=5))))
            .collect();
        let (du, au, bu) = (d as usize, a as usize, b as usize);
        let ry = per_eval_many(du, au, bu, &points, PerMethod::Ryser)?;
        let ip = per_eval_many(du, au, bu, &points, PerMethod::Interp)?;
        perm.check(ry == ip, || format!("d={d} a={a} b={b}"));

        let report = minimality_certificate(d, a, b)?;
        let kernel = wlp_kernel_dim(d, a, b)?;
        gt.check(
            report.minimal && kernel == 1 && report.togliatti_bound_ok,
            || {
                format!(
                    "d={d} a={a} b={b}: minimal={} kernel={kernel}",
                    report.minimal
                )
            },
        );
    }

    for d in 2..=max_d.max(2) as usize {
        for a in (1..d).filter(|a| d % a == 0) {
            let spec = CirculantSpec::new(d, vec![0, a])?;
            let brute = leibniz_expand(&spec, Mode::Det)?;
            two_line.check(two_lines_det(d, a)? == brute, || format!("d={d} a={a}"));
        }
    }

    let tallies = [oracle, structure, two_line, interp, perm, gt];
    let pass = tallies.iter().all(|t| t.failures.is_empty());
    let body = render_json(&json!({
        "max_d": max_d,
        "seed": seed,
        "pass": pass,
        "properties": tallies.iter().map(Tally::to_json).collect::<Vec<_>>(),
    }));
    Ok(Outcome {
        body,
        exit_code: if pass { 0 } else { 1 },
    })
}

/// Parses `args`, runs, and returns `(stdout, stderr, exit code)` without
/// touching the process streams. The binary and the tests share it.
pub fn run_args<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (text, String::new(), 0)
            } else {
                (String::new(), text, code)
            };
        }
    };
    if let Some(n) = cli.threads {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(&cli) {
        Ok(out) => match &cli.output {
            Some(path) => match std::fs::write(path, &out.body) {
                Ok(()) => (String::new(), String::new(), out.exit_code),
                Err(e) => {
                    let err = Error::Contract(format!("cannot write {}: {e}", path.display()));
                    (String::new(), render_json(&err.to_json()), err.exit_code())
                }
            },
            None => (out.body, String::new(), out.exit_code),
        },
        Err(e) => (String::new(), render_json(&e.to_json()), e.exit_code()),
    }
}
