mod manifest;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use symtrop::certify::{
    certify_fan, certify_signed_fan, default_probes, ideal_for, in_support, probe_weights, search_sign_patterns_c, CertifyOptions, PatternSearch, SignedReport,
    TropReport,
};
use symtrop::export::{cas_script_signed, cas_script_trop, complex_dot, complex_json, fan_json, Document, Highlight};
use symtrop::fans::{assemble_fan_with, Fan, Kind};
use symtrop::linalg::Q;
use symtrop::symtrees::{build_complex_with, build_sub, coarsest_subdivisions, enumerate_orderings, Complex, DihedralOrdering, Family, Symmetry};
use symtrop::ualgebra::{GbBudget, SignPattern, Verdict};
use symtrop::{Error, ExecMode};

use manifest::RunManifest;

const EXIT_USAGE: u8 = 1;
const EXIT_CERTIFICATION: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Largest n certified without --allow-large.
const CAP_C: usize = 3;
const CAP_A: usize = 5;

#[derive(Parser)]
#[command(name = "symtrop", version, about = "Symmetric tree complexes, tree-metric fans and tropical certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List dihedral orderings, with their coarsest subdivision counts.
    Enumerate(EnumerateArgs),
    /// Build Θ(n), Θ_as(n) or Θ_cs(n); writes JSON and DOT.
    Complex(ComplexArgs),
    /// Assemble the tree-metric fan of type A or C.
    Fan(FanArgs),
    /// Certify the fan cone by cone, optionally for a sign pattern.
    Certify(CertifyArgs),
    /// Write a Macaulay2 script replaying a certification, expected results as comments.
    EmitCas(EmitArgs),
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SymmetryArg {
    None,
    Axial,
    Central,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FamilyArg {
    A,
    As,
    Cs,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum KindArg {
    A,
    C,
}

#[derive(Args, Serialize)]
struct Common {
    /// Directory for the output files and manifest.json; stdout when absent.
    #[arg(short, long, global = true)]
    #[serde(skip)]
    out: Option<PathBuf>,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    #[serde(skip)]
    sequential: bool,
}

#[derive(Args, Serialize)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "none")]
    symmetry: SymmetryArg,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct ComplexArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: usize,
    /// Axially symmetric ordering to highlight, e.g. "1,2,3,-3,-2,-1".
    #[arg(long = "highlight-as", allow_hyphen_values = true)]
    highlight_as: Vec<String>,
    /// Centrally symmetric ordering to highlight, e.g. "1,-2,3,-1,2,-3".
    #[arg(long = "highlight-cs", allow_hyphen_values = true)]
    highlight_cs: Vec<String>,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct FanArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct CertifyArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    /// Sign pattern τ, e.g. "+,+,+,+,-,+" or "(1,1,1,1,-1,1)".
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
    /// Every sign pattern (type C only).
    #[arg(long, conflicts_with = "sign")]
    sweep: bool,
    /// Restrict to these cone ids, comma separated.
    #[arg(long, value_delimiter = ',')]
    cones: Vec<usize>,
    /// Extra weight vectors to test, comma separated entries (rationals allowed).
    #[arg(long, allow_hyphen_values = true)]
    probe: Vec<String>,
    /// Add the built-in off-fan probes.
    #[arg(long)]
    default_probes: bool,
    /// S-pair budget per Gröbner basis.
    #[arg(long, env = "SYMTROP_MAX_PAIRS")]
    max_pairs: Option<usize>,
    /// Wall-clock budget per Gröbner basis, in milliseconds.
    #[arg(long, env = "SYMTROP_MAX_MILLIS")]
    #[serde(skip)]
    max_millis: Option<u64>,
    /// Largest monomial degree in the search for positive elements.
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    /// Lift the default size caps (n <= 3 for type C, n <= 5 for type A).
    #[arg(long)]
    allow_large: bool,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct EmitArgs {
    #[command(flatten)]
    #[serde(flatten)]
    certify: CertifyArgs,
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Cancelled { .. } | Error::TimeLimit { .. } => EXIT_RESOURCE,
            Error::InvalidArgument(_) | Error::LabelMismatch(_) | Error::NotAxiallySymmetric(_) | Error::NotCentrallySymmetric(_) => EXIT_USAGE,
            Error::Consistency(_) | Error::Degenerate(_) => EXIT_CERTIFICATION,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

/// What a command produced: named files (the first goes to stdout when no
/// output directory is given) and the exit status it asks for.
struct Output {
    files: Vec<(String, Vec<u8>)>,
    code: u8,
    summary: String,
}

fn json<T: Serialize>(kind: &str, data: T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(&Document::new(kind, data)).expect("documents serialize");
    v.push(b'\n');
    v
}

fn mode(c: &Common) -> ExecMode {
    if c.sequential {
        ExecMode::Sequential
    } else {
        ExecMode::Parallel
    }
}

fn parse_ordering(s: &str) -> Result<DihedralOrdering, Failure> {
    let labels: Result<Vec<i32>, _> = s.trim().trim_start_matches('(').trim_end_matches(')').split(',').map(|t| t.trim().parse::<i32>()).collect();
    let labels = labels.map_err(|_| usage(format!("cannot parse ordering {s:?}")))?;
    Ok(DihedralOrdering::new(labels)?)
}

fn parse_weight(s: &str) -> Result<Vec<Q>, Failure> {
    s.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|t| t.trim().parse::<Q>().map_err(|_| usage(format!("cannot parse weight entry {t:?}"))))
        .collect()
}

#[derive(Serialize)]
struct OrderingEntry {
    ordering: String,
    coarsest_subdivisions: usize,
}

#[derive(Serialize)]
struct OrderingList {
    n: usize,
    symmetry: SymmetryArg,
    count: usize,
    orderings: Vec<OrderingEntry>,
}

fn run_enumerate(a: &EnumerateArgs) -> Result<Output, Failure> {
    let sym = match a.symmetry {
        SymmetryArg::None => Symmetry::None,
        SymmetryArg::Axial => Symmetry::Axial,
        SymmetryArg::Central => Symmetry::Central,
    };
    let alphas = enumerate_orderings(a.n, sym)?;
    let mut orderings = Vec::with_capacity(alphas.len());
    for alpha in &alphas {
        orderings.push(OrderingEntry { ordering: alpha.to_string(), coarsest_subdivisions: coarsest_subdivisions(alpha, sym != Symmetry::None)?.len() });
    }
    let summary = format!("{} orderings", orderings.len());
    let list = OrderingList { n: a.n, symmetry: a.symmetry, count: orderings.len(), orderings };
    Ok(Output { files: vec![("orderings.json".into(), json("orderings", list))], code: 0, summary })
}

fn family_of(f: FamilyArg) -> Family {
    match f {
        FamilyArg::A => Family::A,
        FamilyArg::As => Family::AS,
        FamilyArg::Cs => Family::CS,
    }
}

fn run_complex(a: &ComplexArgs) -> Result<Output, Failure> {
    let c = build_complex_with(family_of(a.family), a.n, mode(&a.common))?;
    let mut highlights = Vec::new();
    for (list, want, name, color) in [(&a.highlight_as, Symmetry::Axial, "as", "red"), (&a.highlight_cs, Symmetry::Central, "cs", "blue")] {
        for s in list {
            let alpha = parse_ordering(s)?;
            if alpha.symmetry() != want {
                return Err(usage(format!("{alpha} is not {} symmetric", if want == Symmetry::Axial { "axially" } else { "centrally" })));
            }
            highlights.push(Highlight::of(&c, &build_sub(&alpha)?, name, &alpha.to_string(), color)?);
        }
    }
    let summary = format!("f-vector {:?}", c.f_vector());
    Ok(Output {
        files: vec![("complex.json".into(), json("complex", complex_json(&c, &highlights))), ("complex.dot".into(), complex_dot(&c, &highlights).into_bytes())],
        code: 0,
        summary,
    })
}

fn fan_of(kind: KindArg, n: usize, m: ExecMode) -> Result<(Complex, Fan), Failure> {
    let (family, kind) = match kind {
        KindArg::A => (Family::A, Kind::A),
        KindArg::C => (Family::AS, Kind::C),
    };
    let c = build_complex_with(family, n, m)?;
    let f = assemble_fan_with(&c, kind, m)?;
    Ok((c, f))
}

fn run_fan(a: &FanArgs) -> Result<Output, Failure> {
    let (_, f) = fan_of(a.kind, a.n, mode(&a.common))?;
    let summary = format!("{} rays, {} cones", f.rays.len(), f.cones.len() - 1);
    Ok(Output { files: vec![("fan.json".into(), json("fan", fan_json(&f)))], code: 0, summary })
}

#[derive(Serialize)]
struct ProbeOutcome {
    #[serde(with = "symtrop::linalg::q_strings")]
    weight: Vec<Q>,
    on_fan: bool,
    in_tropicalization: bool,
}

#[derive(Serialize)]
struct TropOutput {
    certified: bool,
    report: TropReport,
    probes: Vec<ProbeOutcome>,
}

enum Certification {
    Trop(TropOutput),
    Signed(SignedReport),
    Sweep(PatternSearch),
}

fn certify(a: &CertifyArgs) -> Result<(Fan, Certification), Failure> {
    let cap = match a.kind {
        KindArg::A => CAP_A,
        KindArg::C => CAP_C,
    };
    if a.n > cap && !a.allow_large {
        return Err(Failure {
            code: EXIT_RESOURCE,
            message: format!("n = {} is above the default cap n <= {cap} for this kind; pass --allow-large to try anyway", a.n),
        });
    }
    let m = mode(&a.common);
    let mut opts = CertifyOptions { mode: m, ..Default::default() };
    opts.signed.max_degree = a.max_degree;
    opts.signed.budget = GbBudget { max_pairs: a.max_pairs.unwrap_or(GbBudget::default().max_pairs), max_millis: a.max_millis };
    let (c, f) = fan_of(a.kind, a.n, m)?;
    let keep = |k: usize| a.cones.is_empty() || a.cones.contains(&k);
    if let Some(bad) = a.cones.iter().find(|&&k| k == 0 || k >= f.cones.len()) {
        return Err(usage(format!("cone {bad} out of range 1..{}", f.cones.len() - 1)));
    }
    if a.sweep {
        if !matches!(a.kind, KindArg::C) {
            return Err(usage("--sweep runs on type C fans"));
        }
        let s = search_sign_patterns_c(&f, &c, opts)?;
        return Ok((f, Certification::Sweep(s)));
    }
    if let Some(sign) = &a.sign {
        let tau: SignPattern = sign.parse()?;
        let mut r = certify_signed_fan(&f, &c, &tau, opts)?;
        r.cones.retain(|x| keep(x.cone));
        return Ok((f, Certification::Signed(r)));
    }
    let cones: Option<Vec<usize>> = (!a.cones.is_empty()).then(|| a.cones.clone());
    let report = certify_fan(&f, cones.as_deref(), opts)?;
    let mut weights = Vec::new();
    for p in &a.probe {
        weights.push(parse_weight(p)?);
    }
    if a.default_probes {
        weights.extend(default_probes(&f));
    }
    let checks = if weights.is_empty() { Vec::new() } else { probe_weights(f.kind, f.n, &weights, opts)? };
    let probes: Vec<ProbeOutcome> =
        checks.into_iter().map(|p| ProbeOutcome { on_fan: in_support(&f, &p.weight), in_tropicalization: p.in_tropicalization, weight: p.weight }).collect();
    // the fan is the whole tropicalization only if no outside probe is accepted
    let certified = report.all_certified() && probes.iter().all(|p| p.on_fan || !p.in_tropicalization);
    Ok((f, Certification::Trop(TropOutput { certified, report, probes })))
}

fn run_certify(a: &CertifyArgs) -> Result<Output, Failure> {
    let (_, cert) = certify(a)?;
    Ok(match cert {
        Certification::Trop(t) => {
            let ok = t.certified;
            let summary = format!(
                "{} of {} cones certified, {} probes accepted",
                t.report.cones.iter().filter(|c| c.certified).count(),
                t.report.cones.len(),
                t.probes.iter().filter(|p| p.in_tropicalization).count()
            );
            Output { files: vec![("certify.json".into(), json("trop-certificate", t))], code: if ok { 0 } else { EXIT_CERTIFICATION }, summary }
        }
        Certification::Signed(r) => {
            let inconclusive = r.inconclusive();
            let summary = format!("τ = {}: members {:?}, inconclusive {:?}", r.tau, r.members(), inconclusive);
            Output {
                files: vec![("certify.json".into(), json("signed-certificate", r))],
                code: if inconclusive.is_empty() { 0 } else { EXIT_CERTIFICATION },
                summary,
            }
        }
        Certification::Sweep(s) => {
            let summary =
                format!("{} of {} sign patterns nonempty (conjectured {}), {} inconclusive", s.nonempty, s.patterns.len(), s.conjectured, s.inconclusive_total);
            let code = if s.inconclusive_total == 0 { 0 } else { EXIT_CERTIFICATION };
            Output { files: vec![("sweep.json".into(), json("sign-pattern-search", s))], code, summary }
        }
    })
}

fn run_emit(a: &EmitArgs) -> Result<Output, Failure> {
    if a.certify.sweep {
        return Err(usage("emit-cas takes one sign pattern, not --sweep"));
    }
    let (f, cert) = certify(&a.certify)?;
    let ideal = ideal_for(f.kind, f.n)?;
    let labels: Vec<String> = (0..f.dim()).map(|k| f.index.pair_label(k)).collect();
    let (script, summary) = match cert {
        Certification::Trop(t) => {
            let probes: Vec<(Vec<Q>, bool)> = t.probes.iter().map(|p| (p.weight.clone(), p.in_tropicalization)).collect();
            (cas_script_trop(&t.report, &ideal, &labels, &probes), format!("{} cones", t.report.cones.len()))
        }
        Certification::Signed(r) => {
            let members = r.cones.iter().filter(|c| matches!(c.verdict, Verdict::Member { .. })).count();
            (cas_script_signed(&r, &ideal, &labels), format!("{} cones, {members} members", r.cones.len()))
        }
        Certification::Sweep(_) => unreachable!("rejected above"),
    };
    Ok(Output { files: vec![("certify.m2".into(), script.into_bytes())], code: 0, summary })
}

fn emit(command: &str, params: serde_json::Value, out: Option<&PathBuf>, result: Result<Output, Failure>, start: Instant) -> u8 {
    let output = match result {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return f.code;
        }
    };
    let Some(dir) = out else {
        let (_, bytes) = &output.files[0];
        if let Err(e) = std::io::stdout().write_all(bytes) {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
        eprintln!("{}", output.summary);
        return output.code;
    };
    let mut manifest = RunManifest::new(command, params);
    let mut write = || -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        for (name, bytes) in &output.files {
            let path = dir.join(name);
            fs::write(&path, bytes)?;
            manifest.add_output(&path, bytes);
        }
        manifest.exit_code = output.code as i32;
        manifest.elapsed_ms = start.elapsed().as_millis();
        let mut text = serde_json::to_vec_pretty(&manifest).expect("manifest serializes");
        text.push(b'\n');
        fs::write(dir.join("manifest.json"), text)
    };
    if let Err(e) = write() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    eprintln!("{} (written to {})", output.summary, dir.display());
    output.code
}

/// Parameters as recorded in the manifest; output locations and the
/// execution mode do not affect results and are left out.
fn params<T: Serialize>(a: &T) -> serde_json::Value {
    serde_json::to_value(a).expect("arguments serialize")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let code = match &cli.command {
        Command::Enumerate(a) => emit("enumerate", params(a), a.common.out.as_ref(), run_enumerate(a), start),
        Command::Complex(a) => emit("complex", params(a), a.common.out.as_ref(), run_complex(a), start),
        Command::Fan(a) => emit("fan", params(a), a.common.out.as_ref(), run_fan(a), start),
        Command::Certify(a) => emit("certify", params(a), a.common.out.as_ref(), run_certify(a), start),
        Command::EmitCas(a) => emit("emit-cas", params(a), a.certify.common.out.as_ref(), run_emit(a), start),
    };
    ExitCode::from(code)
}
