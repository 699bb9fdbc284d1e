mod literal;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gca_core::cochain::CochainJson;
use gca_core::weakhopf::AxiomReportJson;
use gca_core::*;
use serde::Serialize;

/// Exact constructions and exhaustive checks for generalized Clifford
/// algebras, twisted group algebras and their weak Hopf structures.
#[derive(Parser, Debug)]
#[command(name = "gca", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the multiplication table.
    Table(Common),
    /// Check ∂F ≡ 1 over all triples.
    VerifyCocycle(Common),
    /// Check every weak Hopf axiom in the ambient category.
    VerifyWeakHopf(Common),
    /// Compare C(q_1..q_m) with its braided tensor decompositions.
    Decompose(DecomposeArgs),
    /// Print the braiding F(g,h)/F(h,g) and its checks.
    Braiding(Common),
    /// Write multiplication, comultiplication, antipode, cochain and axiom JSON files
    /// into the `--output` directory.
    Export(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CochainName {
    Gca,
    Clifford,
    Octonion,
    Trivial,
    File,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Order of the cyclic factors (and of ω).
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Number of generators / cyclic factors.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Explicit q values, comma separated (e.g. `-1,-1` or `w,2/3`);
    /// symbolic when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    q: Vec<String>,
    #[arg(long, value_enum, default_value_t = CochainName::Gca)]
    cochain: CochainName,
    /// Cochain JSON for `--cochain file`.
    #[arg(long)]
    file: Option<PathBuf>,
    /// JSON destination (a directory for `export`).
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, env = "GCA_MAX_GROUP_ORDER", default_value_t = 4096)]
    max_group_order: usize,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[command(flatten)]
    common: Common,
    /// Split after generator L (1 ≤ L < m); the full split is always checked.
    #[arg(long)]
    split: Option<usize>,
}

enum Failure {
    Usage(String),
    Resource(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } => Failure::Resource(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

/// The object a command acts on.
enum Source {
    Gca(GcaParams),
    Cochain(Cochain2),
    Trivial(GroupSpec, ScalarContext),
}

impl Source {
    fn from_args(a: &Common) -> std::result::Result<Self, Failure> {
        if a.cochain != CochainName::Gca && !a.q.is_empty() {
            return Err(Failure::Usage("--q only applies to --cochain gca".into()));
        }
        if a.cochain != CochainName::File && a.file.is_some() {
            return Err(Failure::Usage("--file only applies to --cochain file".into()));
        }
        let group_order = |orders: Vec<u32>| -> std::result::Result<GroupSpec, Failure> {
            let spec = GroupSpec::new(orders)?;
            spec.check_cap(a.max_group_order)?;
            Ok(spec)
        };
        match a.cochain {
            CochainName::Gca => {
                group_order(vec![a.n; a.m.max(1)])?;
                let symbolic = GcaParams::symbolic(a.n, a.m)?;
                if a.q.is_empty() {
                    return Ok(Source::Gca(symbolic));
                }
                if a.q.len() != a.m {
                    return Err(Failure::Usage(format!("{} q values given for m = {}", a.q.len(), a.m)));
                }
                let ctx = ScalarContext::new(a.n, 0)?;
                let values =
                    a.q.iter()
                        .map(|t| literal::parse_scalar(t, &ctx))
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(Failure::Usage)?;
                Ok(Source::Gca(symbolic.evaluate(&values)?))
            }
            CochainName::Clifford => {
                group_order(vec![2; a.m.max(1)])?;
                Ok(Source::Cochain(build_f_clifford(a.m)?))
            }
            CochainName::Octonion => {
                group_order(vec![2; a.m.max(1)])?;
                Ok(Source::Cochain(build_f_octonion(a.m)?))
            }
            CochainName::Trivial => {
                let spec = group_order(vec![a.n; a.m.max(1)])?;
                if a.m == 0 {
                    return Err(Failure::Usage("m must be ≥ 1".into()));
                }
                Ok(Source::Trivial(spec, ScalarContext::new(a.n, 0)?))
            }
            CochainName::File => {
                let path = a
                    .file
                    .as_ref()
                    .ok_or_else(|| Failure::Usage("--cochain file needs --file".into()))?;
                let text =
                    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                let json: CochainJson =
                    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                group_order(json.orders.clone())?;
                Ok(Source::Cochain(Cochain2::from_json(&json)?))
            }
        }
    }

    fn cochain(&self) -> Result<Cochain2> {
        match self {
            Source::Gca(p) => build_f_gca(p),
            Source::Cochain(f) => Ok(f.clone()),
            Source::Trivial(spec, ctx) => Ok(Cochain2::trivial(spec, ctx)),
        }
    }

    fn algebra(&self) -> Result<QuasiAlgebra> {
        match self {
            Source::Gca(p) => gca_presentation(p),
            _ => Ok(QuasiAlgebra::twisted_group_algebra(&self.cochain()?)),
        }
    }

    /// Weak Hopf data with the associator and braiding of its category.
    fn weak_hopf(&self) -> Result<(WeakHopfData, Cochain3, Braiding)> {
        match self {
            Source::Gca(p) => {
                let h = gca_weak_hopf(p)?;
                let phi = h.algebra().phi().clone();
                let r = gca_braiding_direct(p)?;
                Ok((h, phi, r))
            }
            Source::Cochain(f) => Ok((twisted_weak_hopf(f)?, f.coboundary(), f.braiding())),
            Source::Trivial(spec, ctx) => Ok((
                canonical_weak_hopf(spec, ctx)?,
                Cochain3::trivial(spec, ctx),
                Braiding::trivial(spec, ctx),
            )),
        }
    }
}

fn term_text(s: &Scalar, label: &str) -> String {
    if s.is_one() {
        return label.to_string();
    }
    if s.neg().is_one() {
        return format!("-{label}");
    }
    let v = s.to_string();
    let v = if v.contains(" + ") || v.chars().skip(1).any(|c| c == '-') {
        format!("({v})")
    } else {
        v
    };
    format!("{v}·{label}")
}

fn lincomb_text(basis: &GradedBasis, lc: &LinComb) -> String {
    if lc.is_zero() {
        return "0".into();
    }
    lc.terms()
        .iter()
        .map(|(i, s)| term_text(s, basis.label(*i)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn table_text(a: &QuasiAlgebra) -> String {
    let b = a.basis();
    let mut out = String::new();
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let _ = writeln!(
                out,
                "{} · {} = {}",
                b.label(x),
                b.label(y),
                lincomb_text(b, a.product(x, y))
            );
        }
    }
    out
}

fn to_json<T: Serialize>(v: &T) -> std::result::Result<String, Failure> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Text to stdout, or JSON to stdout with `--format json`; JSON also goes
/// to `--output` when given.
fn emit<T: Serialize>(a: &Common, text: &str, json: &T) -> std::result::Result<(), Failure> {
    let j = to_json(json)?;
    match a.format {
        Format::Text => print!("{text}"),
        Format::Json => print!("{j}"),
    }
    if let Some(path) = &a.output {
        write_file(path, &j)?;
    }
    Ok(())
}

fn cmd_table(a: &Common) -> Outcome {
    let alg = Source::from_args(a)?.algebra()?;
    emit(a, &table_text(&alg), &alg.to_json())?;
    Ok(true)
}

#[derive(Serialize)]
struct CocycleJson {
    group: String,
    triples: usize,
    cocycle: bool,
    witness: Option<[Vec<u32>; 3]>,
    value: Option<String>,
}

fn cmd_verify_cocycle(a: &Common) -> Outcome {
    let f = Source::from_args(a)?.cochain()?;
    let n = f.spec().order();
    let triples = n * n * n;
    let witness = f.cocycle_witness();
    let (text, json) = match &witness {
        None => (
            format!("∂F ≡ 1 over {triples} triples\n"),
            CocycleJson {
                group: f.spec().to_string(),
                triples,
                cocycle: true,
                witness: None,
                value: None,
            },
        ),
        Some((x, y, z)) => {
            let v = f.coboundary().value(x.index(), y.index(), z.index()).to_string();
            (
                format!("∂F ≢ 1: ∂F({x}, {y}, {z}) = {v}\n"),
                CocycleJson {
                    group: f.spec().to_string(),
                    triples,
                    cocycle: false,
                    witness: Some([x.residues().to_vec(), y.residues().to_vec(), z.residues().to_vec()]),
                    value: Some(v),
                },
            )
        }
    };
    emit(a, &text, &json)?;
    Ok(witness.is_none())
}

#[derive(Serialize)]
struct WeakHopfReportJson {
    algebra: bool,
    algebra_counterexample: Option<String>,
    #[serde(flatten)]
    report: AxiomReportJson,
}

fn cmd_verify_weak_hopf(a: &Common) -> Outcome {
    let (h, phi, r) = Source::from_args(a)?.weak_hopf()?;
    let algebra = verify_algebra(&h, &phi)?;
    let report = verify_weak_hopf(&h, &phi, &r)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "algebra (unit, Φ-associativity): {}",
        algebra
            .as_deref()
            .map_or("pass".to_string(), |w| format!("FAIL at {w}"))
    );
    for (axiom, ce) in report.outcomes() {
        match ce {
            None => {
                let _ = writeln!(text, "{}: pass", axiom.key());
            }
            Some(c) => {
                let _ = writeln!(text, "{}: FAIL at ({})", axiom.key(), c.join(", "));
            }
        }
    }
    let ok = algebra.is_none() && report.all_pass();
    let json = WeakHopfReportJson {
        algebra: algebra.is_none(),
        algebra_counterexample: algebra,
        report: report.to_json(),
    };
    emit(a, &text, &json)?;
    Ok(ok)
}

#[derive(Serialize)]
struct DecompositionJson {
    split: Option<usize>,
    whole: gca_core::quasialg::MultiplicationTableJson,
    tensor: Option<gca_core::quasialg::MultiplicationTableJson>,
    split_holds: Option<bool>,
    full_split: gca_core::quasialg::MultiplicationTableJson,
    full_split_holds: bool,
}

fn verdict_text(name: &str, d: &Decomposition) -> String {
    match d.mismatch {
        None => format!("{name}: tables match\n"),
        Some((x, y)) => format!(
            "{name}: MISMATCH at {} · {}\n",
            d.whole.basis().label(x),
            d.whole.basis().label(y)
        ),
    }
}

fn cmd_decompose(args: &DecomposeArgs) -> Outcome {
    let a = &args.common;
    if a.cochain != CochainName::Gca {
        return Err(Failure::Usage("decompose works on --cochain gca".into()));
    }
    let Source::Gca(p) = Source::from_args(a)? else {
        unreachable!()
    };
    let split = args.split.map(|l| decompose(&p, l)).transpose()?;
    let full = decompose_fully(&p)?;
    let mut text = String::new();
    let _ = writeln!(text, "# C^({})(q_1..q_{})", p.n(), p.m());
    text += &table_text(&full.whole);
    if let Some(d) = &split {
        let _ = writeln!(text, "# split after generator {}", args.split.unwrap_or_default());
        text += &table_text(&d.split);
    }
    let _ = writeln!(text, "# full split");
    text += &table_text(&full.split);
    if let Some(d) = &split {
        text += &verdict_text(&format!("split at {}", args.split.unwrap_or_default()), d);
    }
    text += &verdict_text("full split", &full);
    let ok = full.holds() && split.as_ref().is_none_or(Decomposition::holds);
    let json = DecompositionJson {
        split: args.split,
        whole: full.whole.to_json(),
        tensor: split.as_ref().map(|d| d.split.to_json()),
        split_holds: split.as_ref().map(Decomposition::holds),
        full_split: full.split.to_json(),
        full_split_holds: full.holds(),
    };
    emit(a, &text, &json)?;
    Ok(ok)
}

#[derive(Serialize)]
struct BraidingJson {
    braiding: CochainJson,
    symmetric: bool,
    quasi_bicharacter: bool,
}

fn cmd_braiding(a: &Common) -> Outcome {
    let f = Source::from_args(a)?.cochain()?;
    let r = f.braiding();
    let phi = f.coboundary();
    let symmetric = r.is_symmetric();
    let quasi = r.is_quasi_bicharacter(&phi)?;
    let spec = f.spec();
    let mut text = String::new();
    for g in 0..spec.order() {
        for h in 0..spec.order() {
            let _ = writeln!(
                text,
                "R({}, {}) = {}",
                spec.element_at(g),
                spec.element_at(h),
                r.value(g, h)
            );
        }
    }
    let yes = |b: bool| if b { "pass" } else { "FAIL" };
    let _ = writeln!(text, "symmetric: {}", yes(symmetric));
    let _ = writeln!(text, "quasi-bicharacter with Φ = ∂F: {}", yes(quasi));
    emit(
        a,
        &text,
        &BraidingJson {
            braiding: r.to_json(),
            symmetric,
            quasi_bicharacter: quasi,
        },
    )?;
    Ok(symmetric && quasi)
}

fn cmd_export(a: &Common) -> Outcome {
    let dir = a
        .output
        .as_ref()
        .ok_or_else(|| Failure::Usage("export needs --output <directory>".into()))?;
    let source = Source::from_args(a)?;
    let (h, phi, r) = source.weak_hopf()?;
    let report = verify_weak_hopf(&h, &phi, &r)?;
    let algebra_ok = verify_algebra(&h, &phi)?.is_none();
    std::fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    let files = [
        ("multiplication.json", to_json(&h.algebra().to_json())?),
        ("comultiplication.json", to_json(&h.coalgebra().to_json())?),
        ("antipode.json", to_json(&h.to_json().antipode)?),
        ("cochain.json", to_json(&source.cochain()?.to_json())?),
        ("axioms.json", to_json(&report.to_json())?),
    ];
    for (name, body) in &files {
        write_file(&dir.join(name), body)?;
        if a.format == Format::Text {
            println!("wrote {}", dir.join(name).display());
        }
    }
    Ok(algebra_ok && report.all_pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Table(a) => cmd_table(a),
        Command::VerifyCocycle(a) => cmd_verify_cocycle(a),
        Command::VerifyWeakHopf(a) => cmd_verify_weak_hopf(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Braiding(a) => cmd_braiding(a),
        Command::Export(a) => cmd_export(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(4)
        }
    }
}
