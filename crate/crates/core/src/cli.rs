//! Command-line front end.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::asm;
use crate::cyclo::{CycloNum, Rational};
use crate::error::{Error, Result};
use crate::groundstate::{self, Groundstate, SymbolicOptions};
use crate::report::{Case, CheckReport};
use crate::sample;
use crate::schur::{self, Partition};
use crate::tmatrix;

pub const DEFAULT_SEED: u64 = 20_061_127;

#[derive(Parser, Debug)]
#[command(name = "sumrule", version, about = "Exact checks of the O(1) loop model sum rule")]
pub struct Cli {
    /// Emit the run report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for point evaluations (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sum of groundstate components against the Schur function s_{Y_n}.
    VerifySumrule {
        #[arg(long, short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Exact polynomial components of the groundstate.
    Components {
        #[arg(long, short)]
        n: usize,
        /// Write the components as JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every structural, recursion and oracle check at size n.
    CheckAll {
        #[arg(long, short)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// ASM counts, refined tables and six-vertex cross-checks.
    AsmTables {
        #[arg(long, short)]
        n: usize,
        /// Print the refined table as CSV.
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Evaluate a Schur function or Z_n at a rational point.
    Schur(SchurArgs),
}

#[derive(Args, Debug)]
pub struct SchurArgs {
    /// Partition as comma-separated parts, e.g. 2,2,1,1.
    #[arg(long, conflicts_with = "n", required_unless_present = "n")]
    pub partition: Option<String>,
    /// Use Y_n, i.e. evaluate Z_n.
    #[arg(long, short)]
    pub n: Option<usize>,
    /// Point as comma-separated rationals, e.g. 1,3/2,2.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symbolic,
    RandomPoints,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Case>,
}

impl From<CheckReport> for CheckResult {
    fn from(r: CheckReport) -> Self {
        CheckResult {
            name: r.check.clone(),
            cases: r.cases.len(),
            pass: r.pass,
            failures: r.failures().cloned().collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub output: Value,
    pub timings_ms: BTreeMap<String, f64>,
    pub pass: bool,
}

impl RunReport {
    fn new(command: &str, parameters: Value) -> Self {
        RunReport {
            command: command.to_string(),
            parameters,
            checks: Vec::new(),
            output: Value::Null,
            timings_ms: BTreeMap::new(),
            pass: true,
        }
    }

    fn add(&mut self, r: CheckReport) {
        self.pass &= r.pass;
        self.checks.push(r.into());
    }

    /// Runs `f`, records its wall time, and files a failed check when it errors.
    fn timed(&mut self, name: &str, f: impl FnOnce() -> Result<CheckReport>) {
        let t = Instant::now();
        let r = f().unwrap_or_else(|e| {
            let mut r = CheckReport::new(name);
            r.push_with("evaluation", false, Some(json!(e.to_string())));
            r
        });
        self.timings_ms
            .insert(name.to_string(), t.elapsed().as_secs_f64() * 1e3);
        self.add(r);
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.command, self.parameters);
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "  {tag} {} ({} cases)", c.name, c.cases);
            for f in &c.failures {
                let cx = f.counterexample.as_ref().map(Value::to_string).unwrap_or_default();
                let _ = writeln!(s, "       {}: {}", f.label, cx);
            }
        }
        if !self.output.is_null() {
            match &self.output {
                Value::Object(m) => {
                    for (k, v) in m {
                        let _ = writeln!(s, "  {k}: {}", render_value(v));
                    }
                }
                v => {
                    let _ = writeln!(s, "  {}", render_value(v));
                }
            }
        }
        let _ = writeln!(s, "{}", if self.pass { "all checks passed" } else { "FAILED" });
        s
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(x) => x.clone(),
        Value::Array(xs) if xs.iter().all(|x| !x.is_array()) => {
            let parts: Vec<String> = xs.iter().map(render_value).collect();
            format!("({})", parts.join(", "))
        }
        Value::Array(xs) => {
            let rows: Vec<String> = xs.iter().map(render_value).collect();
            format!("[{}]", rows.join(", "))
        }
        other => other.to_string(),
    }
}

/// Whether an error is a caller mistake (bad input or size cap) rather
/// than a failed verification.
pub fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::SizeCap { .. } | Error::ArityMismatch { .. } | Error::Parse(_) | Error::InvalidPattern(_) | Error::Io(_)
    )
}

pub fn run(cli: &Cli) -> Result<RunReport> {
    match &cli.command {
        Command::VerifySumrule {
            n,
            mode,
            points,
            seed,
        } => cmd_verify_sumrule(*n, *mode, *points, *seed),
        Command::Components { n, out } => cmd_components(*n, out.as_deref()),
        Command::CheckAll { n, seed } => cmd_check_all(*n, *seed),
        Command::AsmTables { n, csv: _, seed } => cmd_asm_tables(*n, *seed),
        Command::Schur(a) => cmd_schur(a),
    }
}

fn need_positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Parse("n must be at least 1".into()));
    }
    Ok(())
}

fn symbolic_cap(n: usize) -> Result<()> {
    need_positive(n)?;
    if n > groundstate::SYMBOLIC_CAP {
        return Err(Error::SizeCap {
            what: "symbolic groundstate",
            n,
            cap: groundstate::SYMBOLIC_CAP,
        });
    }
    Ok(())
}

/// Symbolic comparison of the component sum with `s_{Y_n}`.
pub fn check_sumrule_symbolic(g: &Groundstate) -> Result<CheckReport> {
    let w = groundstate::sum_components(g);
    let s = schur::schur_polynomial(&schur::y_partition(g.n), 2 * g.n)?;
    let mut r = CheckReport::new(format!("sum rule n={} (polynomial identity)", g.n));
    let diff = &w - &s;
    r.push_with(
        "W_n = s_{Y_n}",
        diff.is_zero(),
        Some(json!({ "differing_terms": diff.num_terms() })),
    );
    Ok(r)
}

/// Component sum against `Z_n` at seeded random points.
pub fn check_sumrule_points(n: usize, points: usize, seed: u64) -> Result<CheckReport> {
    need_positive(n)?;
    if n > tmatrix::SPIN_CAP {
        return Err(Error::SizeCap {
            what: "random-point sum rule",
            n,
            cap: tmatrix::SPIN_CAP,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zs: Vec<Vec<CycloNum>> = (0..points).map(|_| sample::random_point(&mut rng, 2 * n)).collect();
    let outcomes: Vec<(bool, Value)> = zs
        .par_iter()
        .map(|z| {
            let got = groundstate::psi_point_auto(n, z).map(|p| p.values.iter().cloned().sum::<CycloNum>());
            let want = schur::z_partition_function(n, z);
            match (got, want) {
                (Ok(a), Ok(b)) => (a == b, json!({ "z": z, "sum": a, "schur": b })),
                (a, b) => (
                    false,
                    json!({ "z": z, "error": format!("{:?} {:?}", a.err(), b.err()) }),
                ),
            }
        })
        .collect();
    let mut r = CheckReport::new(format!("sum rule n={n} ({points} random points, seed {seed})"));
    for (k, (ok, cx)) in outcomes.into_iter().enumerate() {
        r.push_with(format!("point {k}"), ok, Some(cx));
    }
    Ok(r)
}

pub fn cmd_verify_sumrule(n: usize, mode: Mode, points: usize, seed: u64) -> Result<RunReport> {
    let mut rep = RunReport::new(
        "verify-sumrule",
        json!({ "n": n, "mode": format!("{mode:?}"), "points": points, "seed": seed }),
    );
    match mode {
        Mode::Symbolic => {
            symbolic_cap(n)?;
            let t = Instant::now();
            let g = groundstate::psi_symbolic(n, SymbolicOptions::default())?;
            rep.timings_ms
                .insert("groundstate".into(), t.elapsed().as_secs_f64() * 1e3);
            rep.timed("sum rule", || check_sumrule_symbolic(&g));
        }
        Mode::RandomPoints => {
            need_positive(n)?;
            if n > tmatrix::SPIN_CAP {
                return Err(Error::SizeCap {
                    what: "random-point sum rule",
                    n,
                    cap: tmatrix::SPIN_CAP,
                });
            }
            rep.timed("sum rule", || check_sumrule_points(n, points, seed));
        }
    }
    Ok(rep)
}

fn values_json(v: &[CycloNum]) -> Value {
    json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

/// `3^{−n(n−1)/2} W_n(1, …, 1)` against the ASM count.
pub fn check_asm_specialization(g: &Groundstate) -> CheckReport {
    let n = g.n;
    let total: CycloNum = g.all_ones().into_iter().sum();
    let scaled = total.scale(&Rational::new(1, 3i64.pow((n * (n - 1) / 2) as u32)));
    let want = CycloNum::from(Rational::from_integer(asm::asm_product_formula(n)));
    let mut r = CheckReport::new(format!("ASM specialization n={n}"));
    r.push_with(
        "3^{-n(n-1)/2} W_n(1,...,1) = A_n",
        scaled == want,
        Some(json!({ "got": scaled, "want": want })),
    );
    r
}

pub fn cmd_components(n: usize, out: Option<&std::path::Path>) -> Result<RunReport> {
    symbolic_cap(n)?;
    let mut rep = RunReport::new("components", json!({ "n": n, "out": out }));
    let t = Instant::now();
    let g = groundstate::psi_symbolic(n, SymbolicOptions::default())?;
    rep.timings_ms
        .insert("groundstate".into(), t.elapsed().as_secs_f64() * 1e3);
    if let Some(path) = out {
        std::fs::write(path, serde_json::to_string_pretty(&g)?)?;
    }
    let ones = g.all_ones();
    let total: CycloNum = ones.iter().cloned().sum();
    rep.add(check_asm_specialization(&g));
    rep.output = json!({
        "patterns": g.patterns.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "all_ones": values_json(&ones),
        "sum": total.to_string(),
    });
    Ok(rep)
}

/// Every check at size `n`, seeded.
pub fn cmd_check_all(n: usize, seed: u64) -> Result<RunReport> {
    symbolic_cap(n)?;
    let mut rep = RunReport::new("check-all", json!({ "n": n, "seed": seed }));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = Instant::now();
    let g = groundstate::psi_symbolic(n, SymbolicOptions::default())?;
    let g_prev = if n >= 2 {
        Some(groundstate::psi_symbolic(n - 1, SymbolicOptions::default())?)
    } else {
        None
    };
    rep.timings_ms
        .insert("groundstate".into(), t.elapsed().as_secs_f64() * 1e3);

    if groundstate::reference_components(n).is_some() {
        rep.timed("reference", || Ok(groundstate::check_reference(&g)));
    }
    rep.timed("sum rule", || check_sumrule_symbolic(&g));
    rep.timed("ASM specialization", || Ok(check_asm_specialization(&g)));
    rep.timed("degrees", || Ok(groundstate::check_degrees(&g)));
    rep.timed("symmetric sum", || Ok(groundstate::check_symmetric_sum(&g)));
    rep.timed("eigenvector equation", || Ok(groundstate::check_eigen_residual(&g, &mut rng, 3, 2)));
    for i in 1..=2 * n {
        rep.timed(&format!("exchange {i}"), || Ok(groundstate::check_exchange(&g, i)));
    }
    rep.timed("factorization", || Ok(groundstate::check_factorization(&g, &mut rng)));
    rep.timed("cyclic covariance and reflection", || Ok(groundstate::check_cyclic_reflection(&g)));
    rep.timed("monomial property", || Ok(groundstate::check_monomial_property(&g)));
    let z = sample::random_point(&mut rng, 2 * n);
    rep.timed("t independence", || groundstate::check_t_independence(n, &z));
    if let Some(gp) = &g_prev {
        for i in 1..2 * n {
            rep.timed(&format!("adjacent recursion {i}"), || {
                Ok(groundstate::check_recursion_adjacent(&g, gp, i))
            });
        }
        let pairs = general_pairs(n, &mut rng);
        for (i, j) in pairs {
            let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
            rep.timed(&format!("general recursion {i},{j}"), || {
                groundstate::check_recursion_general(&g, gp, i, j, &mut local)
            });
        }
    }

    rep.timed("unitarity", || Ok(tmatrix::check_unitarity(n, &mut rng, 2)));
    rep.timed("interlacing", || tmatrix::check_interlacing(n, &mut rng, 2));
    if n >= 2 {
        rep.timed("Yang-Baxter", || Ok(tmatrix::check_yang_baxter(n.min(3), &mut rng, 2)));
        rep.timed("phi intertwining", || tmatrix::check_phi_intertwining(n, &mut rng, 2));
        for i in 1..2 * n {
            rep.timed(&format!("Z recursion {i}"), || Ok(schur::check_z_recursion(n, i, &mut rng, 3)));
        }
    }
    let zr = sample::random_rationals(&mut rng, 2 * n);
    rep.timed("T-Q", || schur::check_tq(n, &zr));
    if n <= schur::ABA_CAP {
        rep.timed("Bethe ansatz", || aba_report(n, &zr));
    }

    rep.timed("DWBC oracle", || dwbc_report(n, &mut rng, 3));
    rep.timed("refined generating function", || refined_report(n, &mut rng, 2));
    rep.timed("ASM counts", || counts_report(n));
    Ok(rep)
}

/// All ordered pairs for small sizes; a seeded sample of them otherwise.
fn general_pairs<G: Rng + ?Sized>(n: usize, rng: &mut G) -> Vec<(usize, usize)> {
    let m = 2 * n;
    let all: Vec<(usize, usize)> = (1..=m)
        .flat_map(|i| (1..=m).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    if n <= 3 {
        all
    } else {
        rand::seq::index::sample(rng, all.len(), 8)
            .into_iter()
            .map(|k| all[k])
            .collect()
    }
}

pub fn aba_report(n: usize, z: &[Rational]) -> Result<CheckReport> {
    let a = schur::aba_residual(n, z)?;
    let mut r = CheckReport::new(format!("Bethe ansatz n={n} (tolerance {:e})", schur::ABA_TOLERANCE));
    let cx = Some(serde_json::to_value(&a)?);
    r.push_with("eigenvector residual", a.residual < schur::ABA_TOLERANCE, cx.clone());
    r.push_with("eigenvalue", a.eigenvalue_error < schur::ABA_TOLERANCE, cx.clone());
    r.push_with("parallel to the groundstate", a.angle < schur::ABA_TOLERANCE, cx);
    Ok(r)
}

/// Brute-force six-vertex sum against `s_{Y_n}(x²)` at random points.
pub fn dwbc_report<G: Rng + ?Sized>(n: usize, rng: &mut G, points: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new(format!("DWBC brute force n={n}"));
    for k in 0..points {
        let x = sample::random_rationals(rng, 2 * n);
        let x2: Vec<CycloNum> = x.iter().map(|v| CycloNum::from(v.clone()).pow(2)).collect();
        let got = asm::dwbc_bruteforce(n, &x)?;
        let want = schur::z_partition_function(n, &x2)?;
        r.push_with(format!("point {k}"), got == want, Some(json!({ "x": x, "got": got, "want": want })));
    }
    Ok(r)
}

pub fn refined_report<G: Rng + ?Sized>(n: usize, rng: &mut G, points: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new(format!("refined generating function n={n}"));
    for _ in 0..points {
        let tu = sample::random_point(rng, 2);
        r.merge(asm::refined_generating_check(n, &tu[0], &tu[1])?);
    }
    Ok(r)
}

pub fn counts_report(n: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new(format!("ASM counts n={n}"));
    let listed = asm::enumerate_asm(n)?.len() as u64;
    let formula = asm::asm_product_formula(n);
    let ice = asm::count_dwbc_configs(n)?;
    let refined: u64 = asm::refined_counts(n)?.iter().flatten().sum();
    let cx = Some(json!({ "enumerated": listed, "formula": formula.to_string(), "ice": ice, "refined": refined }));
    r.push_with("enumeration = product formula", formula == listed.into(), cx.clone());
    r.push_with("enumeration = ice configurations", ice == listed, cx.clone());
    r.push_with("refined table sums to A_n", refined == listed, cx);
    Ok(r)
}

pub fn cmd_asm_tables(n: usize, seed: u64) -> Result<RunReport> {
    need_positive(n)?;
    if n > asm::ENUM_CAP {
        return Err(Error::SizeCap {
            what: "ASM tables",
            n,
            cap: asm::ENUM_CAP,
        });
    }
    let mut rep = RunReport::new("asm-tables", json!({ "n": n, "seed": seed }));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rep.timed("ASM counts", || counts_report(n));
    if n <= asm::DWBC_CAP {
        rep.timed("DWBC oracle", || dwbc_report(n, &mut rng, 3));
        rep.timed("refined generating function", || refined_report(n, &mut rng, 3));
    }
    let table = asm::refined_counts(n)?;
    let top: Vec<u64> = table.iter().map(|row| row.iter().sum()).collect();
    let bottom: Vec<u64> = (0..n).map(|k| table.iter().map(|row| row[k]).sum()).collect();
    rep.output = json!({
        "A_n": asm::asm_product_formula(n).to_string(),
        "top_row_marginals": top,
        "bottom_row_marginals": bottom,
        "refined": table,
    });
    Ok(rep)
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<T>().map_err(|_| Error::Parse(format!("cannot parse {p:?}"))))
        .collect()
}

pub fn cmd_schur(a: &SchurArgs) -> Result<RunReport> {
    let x: Vec<CycloNum> = parse_list::<Rational>(&a.x)?
        .into_iter()
        .map(CycloNum::from)
        .collect();
    let lambda = match (&a.partition, a.n) {
        (Some(p), _) => Partition::new(parse_list(p)?)?,
        (None, Some(n)) => {
            if x.len() != 2 * n {
                return Err(Error::ArityMismatch {
                    expected: 2 * n,
                    got: x.len(),
                });
            }
            schur::y_partition(n)
        }
        (None, None) => return Err(Error::Parse("give --partition or --n".into())),
    };
    let mut rep = RunReport::new("schur", json!({ "partition": lambda, "x": x }));
    let v = schur::schur_eval(&lambda, &x);
    rep.output = json!({ "value": v.to_string() });
    Ok(rep)
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return 2;
        }
    }
    match run(&cli) {
        Ok(rep) => {
            if let Command::AsmTables { csv: true, n, .. } = &cli.command {
                if let Ok(t) = asm::refined_counts(*n) {
                    print!("{}", asm::refined_csv(&t));
                }
            } else if cli.json {
                println!("{}", serde_json::to_string_pretty(&rep).unwrap_or_default());
            } else {
                print!("{}", rep.render_text());
            }
            if rep.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            if is_usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}
