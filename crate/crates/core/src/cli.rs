//! Command-line front end. Exit codes: 0 consistent / true, 1 counterexample
//! / false, 2 usage or parse error, 3 unknown up to the search bound.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::factor::{factor, gcd_multi, is_irreducible, is_squarefree, squarefree_decompose};
use crate::groebner::Subring;
use crate::harness::gen::Gen;
use crate::harness::{
    check_keller_preservation_with, check_thm24_with, check_thm62_pairing, jc_falsifier, root_closed_check,
    sqf_closed_check_subring, witness_search_with, Certificate, Ctx, EquivalenceVerdict, FalsifierReport, Report,
    RootGrid, Status, WitnessConfig, WitnessKind,
};
use crate::jacobian::{dgcd, jacobian_determinant, jacobian_matrix, jacobian_minors};
use crate::parse::parse_poly;
use crate::poly::{PolyMap, PolyRing, Polynomial, Ring};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "keller", version, about = "Exact checks of the Jacobian condition via square-free and irreducible polynomials")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Irreducible,
    SquareFree,
}

#[derive(Args, Debug)]
pub struct MapArgs {
    /// Comma-separated variable names, in order.
    #[arg(long)]
    pub vars: String,
    /// One component (or subring generator) per flag.
    #[arg(long = "map", required = true)]
    pub map: Vec<String>,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    /// Comma-separated variable names, in order.
    #[arg(long)]
    pub vars: String,
    #[arg(long)]
    pub poly: String,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Largest witness degree searched.
    #[arg(long, default_value_t = 8)]
    pub max_degree: u32,
    /// Combination coefficients range over [-C, C].
    #[arg(long, default_value_t = 2)]
    pub combination_bound: i64,
    /// Combinations tried per degree.
    #[arg(long, default_value_t = 5000)]
    pub max_combinations: usize,
}

impl SearchArgs {
    fn config(&self) -> WitnessConfig {
        WitnessConfig {
            max_degree: self.max_degree,
            combination_bound: self.combination_bound,
            max_combinations: self.max_combinations,
        }
    }
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// Explicit sample in the witness variables (T, or y1..yr); repeatable.
    #[arg(long = "sample")]
    pub sample: Vec<String>,
    /// Number of seeded samples when no explicit sample is given.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    /// Degree bound of seeded samples.
    #[arg(long, default_value_t = 3)]
    pub sample_degree: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct GridArgs {
    /// Degree bound of root candidates.
    #[arg(long, default_value_t = 2)]
    pub candidate_degree: u32,
    /// Largest power m tried in a^m.
    #[arg(long, default_value_t = 3)]
    pub max_power: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jacobian matrix, maximal minors and (square maps) determinant.
    Jac(MapArgs),
    /// Differential gcd of the maximal minors; exit 0 iff a nonzero constant.
    Dgcd(MapArgs),
    /// Square-freeness over Q; exit 0 iff square-free.
    Sqfree(PolyArgs),
    /// Irreducibility over Q; exit 0 iff irreducible.
    Irreducible(PolyArgs),
    /// Normalized gcd of two polynomials.
    Gcd {
        /// Comma-separated variable names, in order.
        #[arg(long)]
        vars: String,
        /// Exactly two polynomials.
        #[arg(long, required = true)]
        poly: Vec<String>,
    },
    /// Irreducible factorization over Q.
    Factor(PolyArgs),
    /// Jacobian determinant; exit 0 iff a nonzero constant.
    Keller(MapArgs),
    /// Search for w with g^2 | w(f).
    Witness {
        #[command(flatten)]
        map: MapArgs,
        /// Irreducible polynomial g.
        #[arg(long)]
        g: String,
        #[arg(long, value_enum, default_value_t = KindArg::Irreducible)]
        kind: KindArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Divisibility of the maximal minors by g against the witness search.
    Thm24 {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        g: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Keller condition against square-freeness of sampled images.
    Thm31 {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        samples: SampleArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Subalgebra membership of --poly in Q[generators].
    Membership {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        poly: String,
    },
    /// Algebraic-but-not-member search over Q[f] up to a degree.
    JcFalsify {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 3)]
        search_degree: u32,
    },
    /// Square-factorial closedness of Q[generators] on sampled elements.
    SqfClosed {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        samples: SampleArgs,
    },
    /// Root closedness of Q[generators] over a bounded candidate grid.
    RootClosed {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Root-closedness failures paired with square-factorial closedness.
    Thm62 {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
}

/// Exit code plus the text destined for standard output and standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(format!("error: {e}"))
    }
}

type Run = Result<(Report, i32), Usage>;

fn ring(vars: &str) -> Result<Ring, Usage> {
    Ok(PolyRing::parse_vars(vars)?)
}

fn parse(label: &str, text: &str, ring: &Ring) -> Result<Polynomial, Usage> {
    parse_poly(text, ring).map_err(|e| Usage(format!("error: {label} `{text}`: {e}")))
}

fn parse_all(label: &str, items: &[String], ring: &Ring) -> Result<Vec<Polynomial>, Usage> {
    items.iter().enumerate().map(|(k, s)| parse(&format!("{label} #{}", k + 1), s, ring)).collect()
}

fn strings<'a>(ps: impl IntoIterator<Item = &'a Polynomial>) -> Vec<String> {
    ps.into_iter().map(|p| p.to_string()).collect()
}

fn map_of(args: &MapArgs) -> Result<(Ring, PolyMap), Usage> {
    let r = ring(&args.vars)?;
    let f = PolyMap::new(parse_all("--map", &args.map, &r)?)?;
    Ok((r, f))
}

fn subring_of(args: &MapArgs) -> Result<(Ring, Subring), Usage> {
    let r = ring(&args.vars)?;
    let sub = Subring::new(parse_all("--map", &args.map, &r)?)?;
    Ok((r, sub))
}

fn base(theorem: &str, vars: &Ring, map: &[Polynomial]) -> Report {
    Report::new(theorem).input("vars", vars.names()).input("map", strings(map))
}

fn flag(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

fn verdict_json(v: &EquivalenceVerdict) -> Value {
    json!({ "conditions": v.conditions, "consistent_with_theorem": v.consistent_with_theorem })
}

fn verdict_certs(v: &EquivalenceVerdict) -> Vec<Certificate> {
    v.counterexample.iter().chain(&v.certificates).cloned().collect()
}

fn falsifier(report: Report, rep: FalsifierReport) -> (Report, i32) {
    let code = flag(rep.counterexamples.is_empty());
    let mut report = report.with_verdict(&json!({
        "samples_tried": rep.samples_tried,
        "counterexamples": rep.counterexamples.len(),
    }));
    report.bounds.extend(rep.exhausted_bounds);
    (report.with_certificates(rep.counterexamples), code)
}

fn samples(args: &SampleArgs, src: &Ring, squares: bool) -> Result<Vec<Polynomial>, Usage> {
    if !args.sample.is_empty() {
        return parse_all("--sample", &args.sample, src);
    }
    let mut gen = Gen::new(args.seed);
    Ok((0..args.samples)
        .map(|k| {
            if squares && k % 2 == 0 {
                let u = gen.nonconstant(src, 1, 2, 3);
                let v = gen.nonconstant(src, args.sample_degree, 3, 3);
                &u.pow(2) * &v
            } else {
                gen.squarefree(src, args.sample_degree, 4)
            }
        })
        .collect())
}

fn sample_report(report: Report, args: &SampleArgs) -> Report {
    if args.sample.is_empty() {
        report.bound("samples", args.samples as u64).bound("sample_degree", args.sample_degree as u64).with_seed(args.seed)
    } else {
        report.input("samples", &args.sample)
    }
}

fn search_report(report: Report, cfg: &WitnessConfig) -> Report {
    report
        .bound("max_degree", cfg.max_degree as u64)
        .bound("combination_bound", cfg.combination_bound as u64)
        .bound("max_combinations", cfg.max_combinations as u64)
}

fn execute(command: &Command) -> Run {
    match command {
        Command::Jac(m) => {
            let (r, f) = map_of(m)?;
            let det = if f.is_endomorphism() { Some(jacobian_determinant(&f)?) } else { None };
            let verdict = json!({
                "matrix": jacobian_matrix(&f),
                "minors": jacobian_minors(&f),
                "determinant": det,
            });
            Ok((base("jacobian", &r, f.images()).with_verdict(&verdict), EXIT_OK))
        }
        Command::Dgcd(m) => {
            let (r, f) = map_of(m)?;
            let minors = jacobian_minors(&f);
            let (verdict, code) = match dgcd(&f) {
                Ok(d) => (json!({"value": d.value, "is_constant_nonzero": d.is_constant_nonzero, "minors": minors}), flag(d.is_constant_nonzero)),
                Err(Error::Dependent { .. }) => {
                    (json!({"value": "0", "is_constant_nonzero": false, "minors": minors}), EXIT_FALSE)
                }
                Err(e) => return Err(e.into()),
            };
            Ok((base("dgcd", &r, f.images()).with_verdict(&verdict), code))
        }
        Command::Sqfree(a) => {
            let r = ring(&a.vars)?;
            let p = parse("--poly", &a.poly, &r)?;
            let sqf = is_squarefree(&p)?;
            let verdict = json!({"squarefree": sqf, "decomposition": squarefree_decompose(&p)?});
            Ok((Report::new("squarefree").input("vars", r.names()).input("poly", [&p]).with_verdict(&verdict), flag(sqf)))
        }
        Command::Irreducible(a) => {
            let r = ring(&a.vars)?;
            let p = parse("--poly", &a.poly, &r)?;
            let irr = is_irreducible(&p)?;
            let verdict = json!({"irreducible": irr, "factorization": factor(&p)?});
            Ok((Report::new("irreducible").input("vars", r.names()).input("poly", [&p]).with_verdict(&verdict), flag(irr)))
        }
        Command::Gcd { vars, poly } => {
            let r = ring(vars)?;
            if poly.len() != 2 {
                return Err(Usage(format!("error: gcd takes exactly two --poly flags, got {}", poly.len())));
            }
            let ps = parse_all("--poly", poly, &r)?;
            let g = gcd_multi(&ps[0], &ps[1])?;
            Ok((Report::new("gcd").input("vars", r.names()).input("poly", strings(&ps)).with_verdict(&json!({"gcd": g})), EXIT_OK))
        }
        Command::Factor(a) => {
            let r = ring(&a.vars)?;
            let p = parse("--poly", &a.poly, &r)?;
            let fz = factor(&p)?;
            Ok((Report::new("factor").input("vars", r.names()).input("poly", [&p]).with_verdict(&fz), EXIT_OK))
        }
        Command::Keller(m) => {
            let (r, f) = map_of(m)?;
            let det = jacobian_determinant(&f)?;
            let keller = det.is_constant() && !det.is_zero();
            let verdict = json!({"jacobian": det, "is_keller": keller});
            Ok((base("keller", &r, f.images()).with_verdict(&verdict), flag(keller)))
        }
        Command::Witness { map, g, kind, search } => {
            let (r, f) = map_of(map)?;
            let g = parse("--g", g, &r)?;
            let kind = match kind {
                KindArg::Irreducible => WitnessKind::Irreducible,
                KindArg::SquareFree => WitnessKind::SquareFree,
            };
            let cfg = search.config();
            let res = witness_search_with(&f, &g, kind, &cfg)?;
            let code = if res.found() { EXIT_OK } else { EXIT_UNKNOWN };
            let report = search_report(base("witness", &r, f.images()).input("g", [&g]), &cfg)
                .with_verdict(&res)
                .with_certificates(res.to_certificate(&f, &g));
            Ok((report, code))
        }
        Command::Thm24 { map, g, search } => {
            let (r, f) = map_of(map)?;
            let g = parse("--g", g, &r)?;
            let cfg = search.config();
            let v = check_thm24_with(&f, &g, &cfg)?;
            let code = if !v.consistent_with_theorem {
                EXIT_FALSE
            } else if v.status("i") == Some(Status::Holds) && v.has_unknown() {
                EXIT_UNKNOWN
            } else {
                EXIT_OK
            };
            let report = search_report(base("divisibility-witness", &r, f.images()).input("g", [&g]), &cfg)
                .with_verdict(&verdict_json(&v))
                .with_certificates(verdict_certs(&v));
            Ok((report, code))
        }
        Command::Thm31 { map, samples: s, search } => {
            let (r, f) = map_of(map)?;
            let ws = samples(s, &f.source_ring(), false)?;
            let cfg = search.config();
            let c = check_keller_preservation_with(&f, &ws, &cfg)?;
            let v = &c.verdict;
            let found = c.witness.as_ref().is_some_and(|w| w.found());
            let code = if !v.consistent_with_theorem {
                EXIT_FALSE
            } else if v.status("i") == Some(Status::Fails) && !found {
                EXIT_UNKNOWN
            } else {
                EXIT_OK
            };
            let mut verdict = verdict_json(v);
            verdict["jacobian"] = json!(c.jacobian);
            verdict["factor"] = json!(c.factor);
            verdict["samples"] = json!(c.samples);
            verdict["witness"] = json!(c.witness);
            let report = search_report(sample_report(base("keller-squarefree", &r, f.images()), s), &cfg)
                .with_verdict(&verdict)
                .with_certificates(verdict_certs(v));
            Ok((report, code))
        }
        Command::Membership { map, poly } => {
            let (r, sub) = subring_of(map)?;
            let h = parse("--poly", poly, &r)?;
            let res = sub.membership(&h)?;
            let ctx = Ctx::new(&r, sub.generators());
            let cert = match &res.representation {
                Some(w) => Certificate::Membership { ctx, element: h.to_string(), representation: w.to_string() },
                None => Certificate::NonMembership { ctx, element: h.to_string() },
            };
            let code = flag(res.is_member());
            let report = base("membership", &r, sub.generators()).input("poly", [&h]).with_verdict(&res);
            Ok((report.with_certificates([cert]), code))
        }
        Command::JcFalsify { map, search_degree } => {
            let (r, f) = map_of(map)?;
            let rep = jc_falsifier(&f, *search_degree)?;
            Ok(falsifier(base("algebraic-closedness", &r, f.images()), rep))
        }
        Command::SqfClosed { map, samples: s } => {
            let (r, sub) = subring_of(map)?;
            let ws = samples(s, sub.source_ring(), true)?;
            let rep = sqf_closed_check_subring(&sub, &ws)?;
            Ok(falsifier(sample_report(base("square-factorial-closedness", &r, sub.generators()), s), rep))
        }
        Command::RootClosed { map, grid } => {
            let (r, sub) = subring_of(map)?;
            let rep = root_closed_check(&sub, &RootGrid::new(grid.candidate_degree, grid.max_power))?;
            Ok(falsifier(base("root-closedness", &r, sub.generators()), rep))
        }
        Command::Thm62 { map, grid } => {
            let (r, sub) = subring_of(map)?;
            let pair = check_thm62_pairing(&sub, &RootGrid::new(grid.candidate_degree, grid.max_power))?;
            let v = &pair.verdict;
            let mut verdict = verdict_json(v);
            verdict["root_counterexamples"] = json!(pair.root.counterexamples.len());
            verdict["sqf_counterexamples"] = json!(pair.sqf.counterexamples.len());
            let certs: Vec<Certificate> =
                pair.root.counterexamples.iter().chain(&pair.sqf.counterexamples).cloned().collect();
            let mut report = base("root-vs-square-factorial", &r, sub.generators())
                .with_verdict(&verdict)
                .with_certificates(certs);
            report.bounds.extend(pair.root.exhausted_bounds.clone());
            Ok((report, flag(v.consistent_with_theorem)))
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(scalar).collect::<Vec<_>>().join(", ")
        }
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}

/// Plain-text rendering: one `key: value` line per top-level field.
pub fn render_human(report: &Report, code: i32) -> String {
    let mut out = format!("theorem: {}\n", report.theorem);
    for (k, v) in &report.inputs {
        out.push_str(&format!("{k}: {}\n", v.join(", ")));
    }
    match &report.verdict {
        Value::Object(map) => {
            for (k, v) in map {
                out.push_str(&format!("{k}: {}\n", scalar(v)));
            }
        }
        other => out.push_str(&format!("verdict: {}\n", scalar(other))),
    }
    for (k, v) in &report.bounds {
        out.push_str(&format!("bound {k}: {v}\n"));
    }
    if let Some(seed) = report.seed {
        out.push_str(&format!("seed: {seed}\n"));
    }
    for c in &report.certificates {
        out.push_str(&format!("certificate: {}\n", serde_json::to_string(c).expect("serializes")));
    }
    let status = match code {
        EXIT_OK => "consistent",
        EXIT_FALSE => "counterexample / false",
        _ => "unknown up to bound",
    };
    out.push_str(&format!("result: {status}\n"));
    out
}

/// Parses `argv` (program name first) and runs the selected subcommand.
pub fn dispatch<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Output { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command) {
        Ok((report, code)) => {
            let stdout = match cli.format {
                Format::Json => report.to_json(),
                Format::Human => render_human(&report, code),
            };
            Output { code, stdout, stderr: String::new() }
        }
        Err(Usage(msg)) => Output { code: EXIT_USAGE, stdout: String::new(), stderr: msg + "\n" },
    }
}
