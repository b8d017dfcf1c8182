use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fusionseq::corpus::{run_corpus, CorpusSource};
use fusionseq::group::{catalog_group, extension_sequence, rep_g_fusion, vec_g_ring, GroupTable};
use fusionseq::interval::{format_rational, parse_rational};
use fusionseq::io::{self, load_document, to_json_string, Document};
use fusionseq::library::{bundled_module, bundled_ring};
use fusionseq::module::{end_ring, module_fpdims, validate_module, BasedModule};
use fusionseq::ring::{fpdim_category, fpdims, validate_ring, FusionRing};
use fusionseq::sequence::{check_exact, make_deligne_sequence, validate_sequence, Verdict};
use fusionseq::{Error, Interval, PerronOptions, PerronResult, QMatrix, Rational, ValidationReport};
use serde::Serialize;
use serde_json::{json, Value};

mod render;

/// Exit codes.
const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const BAD_INPUT: u8 = 2;
const UNDECIDED: u8 = 3;
const BREACH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "fusionseq",
    version,
    about = "Fusion rings, Frobenius-Perron dimensions and exact sequences of tensor categories"
)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Config {
    /// Width bound for certified intervals (p/q, decimal or 1e-12 style).
    #[arg(long, global = true, default_value = "1e-12", value_parser = parse_tol)]
    tol: Rational,
    /// Iteration cap for eigenvalue refinement.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_iter: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

impl Config {
    fn opts(&self) -> PerronOptions {
        PerronOptions {
            tol: self.tol.clone(),
            max_iter: self.max_iter,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Human,
}

#[derive(Subcommand)]
enum Command {
    /// Check a ring, module, group or sequence file against its invariants.
    Validate { path: PathBuf },
    /// Frobenius-Perron dimensions of a ring or module file.
    Fpdim { path: PathBuf },
    /// Certified Perron eigenvalue of a nonnegative matrix, given inline
    /// as "a,b;c,d" or as a file holding a JSON array of rows.
    Perron { matrix: String },
    /// Build rings, modules and sequences.
    #[command(subcommand)]
    Make(Make),
    /// Certify exactness of a sequence file.
    CheckExact { path: PathBuf },
    /// Run the corpus of sequences and mutations.
    Corpus {
        /// Run every case (the default when no --case is given).
        #[arg(long, conflicts_with = "case")]
        run_all: bool,
        /// Run only the case with this id, or the cases with this prefix.
        #[arg(long)]
        case: Option<String>,
        /// Corpus root holding groups/, rings/, modules/ and sequences/.
        /// Defaults to $FUSIONSEQ_CORPUS, then the bundled data.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Make {
    /// Vec(G) from a group file or catalog name.
    Vecg {
        #[arg(long)]
        group: String,
    },
    /// Rep(G) from a group file or catalog name.
    Repg {
        #[arg(long)]
        group: String,
    },
    /// A -> A ⊠ C -> C ⊠ End(M).
    Deligne {
        #[arg(long)]
        a: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        module: String,
    },
    /// Rep(G/N) -> Rep(G) -> Rep(N) for a normal subgroup N.
    Extension {
        #[arg(long)]
        group: String,
        /// Comma-separated element indices of N.
        #[arg(long, value_delimiter = ',')]
        normal: Vec<usize>,
    },
    /// The matrix-unit ring End(M) of a module.
    End {
        #[arg(long)]
        module: String,
    },
}

fn parse_tol(s: &str) -> Result<Rational, String> {
    let q = parse_rational(s).map_err(|e| e.to_string())?;
    if q > Rational::from_integer(0.into()) {
        Ok(q)
    } else {
        Err("tolerance must be positive".into())
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
    payload: Option<Value>,
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure {
            code: BAD_INPUT,
            message: e.to_string(),
            payload: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Decomposable { .. } | Error::NotSubgroup(_) | Error::NotNormal => NEGATIVE,
            _ => BAD_INPUT,
        };
        let payload = match &e {
            Error::Invalid(rep) => Some(json!({ "valid": false, "violations": rep.violations })),
            _ => None,
        };
        Failure {
            code,
            message: e.to_string(),
            payload,
        }
    }
}

/// What a command produced: text for both formats and an exit code.
struct Output {
    code: u8,
    json: String,
    human: String,
}

fn output<T: Serialize>(code: u8, value: &T, human: String) -> Output {
    Output {
        code,
        json: to_json_string(value),
        human,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { path } => cmd_validate(path),
        Command::Fpdim { path } => cmd_fpdim(path, &cli.config),
        Command::Perron { matrix } => cmd_perron(matrix, &cli.config),
        Command::Make(m) => cmd_make(m),
        Command::CheckExact { path } => cmd_check_exact(path, &cli.config),
        Command::Corpus { case, dir, .. } => cmd_corpus(case.as_deref(), dir.as_deref(), &cli.config),
    };
    match result {
        Ok(out) => {
            let text = match cli.config.format {
                Format::Json => out.json,
                Format::Human => out.human,
            };
            if let Err(e) = write_output(cli.config.output.as_deref(), &text) {
                eprintln!("error: {e}");
                return ExitCode::from(BAD_INPUT);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if let Some(p) = f.payload {
                let text = match cli.config.format {
                    Format::Json => to_json_string(&p),
                    Format::Human => format!("{}\n", f.message),
                };
                let _ = write_output(cli.config.output.as_deref(), &text);
            }
            ExitCode::from(f.code)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn validation_output(kind: &str, rep: &ValidationReport) -> Output {
    let code = if rep.is_valid() { OK } else { NEGATIVE };
    let value = json!({ "schema": kind, "valid": rep.is_valid(), "violations": rep.violations });
    output(code, &value, render::validation(kind, rep))
}

fn cmd_validate(path: &Path) -> Result<Output, Failure> {
    let doc = match load_document(path) {
        Ok(d) => d,
        // Group tables are checked while loading.
        Err(Error::Invalid(rep)) => return Ok(validation_output("group", &rep)),
        Err(e) => return Err(e.into()),
    };
    let rep = match &doc {
        Document::Ring(r) => validate_ring(r),
        Document::Module(m) => {
            let mut rep = ValidationReport::new();
            rep.extend_prefixed("ring", validate_ring(m.ring()));
            rep.extend_prefixed("module", validate_module(m));
            rep
        }
        Document::Group(_) => ValidationReport::new(),
        Document::Sequence(s) => validate_sequence(s),
    };
    Ok(validation_output(doc.kind(), &rep))
}

#[derive(Serialize)]
struct DimEntry {
    label: String,
    lo: String,
    hi: String,
    exact: Option<String>,
}

fn dim_entry(label: String, iv: &Interval) -> DimEntry {
    DimEntry {
        label,
        lo: format_rational(iv.lo()),
        hi: format_rational(iv.hi()),
        exact: iv.exact().map(format_rational),
    }
}

fn cmd_fpdim(path: &Path, cfg: &Config) -> Result<Output, Failure> {
    let opts = cfg.opts();
    match load_document(path)? {
        Document::Ring(r) => {
            let rep = validate_ring(&r);
            if !rep.is_valid() {
                return Ok(validation_output("ring", &rep));
            }
            let dims = fpdims(&r, &opts)?;
            let cat = fpdim_category(&r, &opts)?;
            let objects: Vec<DimEntry> = dims
                .iter()
                .enumerate()
                .map(|(i, d)| dim_entry(r.label(i), &exact_or_interval(d)))
                .collect();
            let category = dim_entry("category".into(), &exact_or_interval(&cat));
            let value = json!({ "schema": "ring", "rank": r.rank(), "objects": objects, "category": category });
            let human = render::ring_dims(&r, &dims, &cat);
            Ok(output(OK, &value, human))
        }
        Document::Module(m) => {
            let mut rep = validate_ring(m.ring());
            rep.extend_prefixed("module", validate_module(&m));
            if !rep.is_valid() {
                return Ok(validation_output("module", &rep));
            }
            let data = module_fpdims(&m, &opts)?;
            let label = |j: usize| m.labels().map_or_else(|| format!("M{j}"), |l| l[j].clone());
            let dims: Vec<DimEntry> = data.dims.iter().enumerate().map(|(j, d)| dim_entry(label(j), d)).collect();
            let value = json!({
                "schema": "module",
                "mrank": m.mrank(),
                "dims": dims,
                "normalization_scale": dim_entry("scale".into(), &data.normalization_scale),
            });
            Ok(output(OK, &value, render::module_dims(&m, &data)))
        }
        d => Err(Failure::input(format!("fpdim needs a ring or module file, found a {}", d.kind()))),
    }
}

fn exact_or_interval(p: &PerronResult) -> Interval {
    p.exact_rational().map_or_else(|| p.interval(), Interval::point)
}

fn parse_matrix(arg: &str) -> Result<QMatrix, Failure> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(Failure::input)?
    } else {
        arg.to_owned()
    };
    let text = text.trim();
    let rows: Vec<Vec<Rational>> = if text.starts_with('[') {
        let v: Vec<Vec<Value>> = serde_json::from_str(text).map_err(Failure::input)?;
        v.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| match x {
                        Value::String(s) => parse_rational(&s),
                        Value::Number(n) => parse_rational(&n.to_string()),
                        other => Err(Error::Parse(format!("not a number: {other}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?
    } else {
        text.split(';')
            .map(|row| row.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?
    };
    Ok(QMatrix::from_rows(rows)?)
}

fn cmd_perron(arg: &str, cfg: &Config) -> Result<Output, Failure> {
    let m = parse_matrix(arg)?;
    m.check_nonnegative()?;
    let res = fusionseq::perron_eigen(&m, &cfg.opts())?;
    let value = json!({
        "lo": format_rational(&res.lo),
        "hi": format_rational(&res.hi),
        "exact_integer": res.exact_integer.as_ref().map(ToString::to_string),
        "eigvec": res.eigvec.iter().map(format_rational).collect::<Vec<_>>(),
    });
    Ok(output(OK, &value, render::perron(&res)))
}

fn load_group_arg(arg: &str) -> Result<GroupTable, Failure> {
    if Path::new(arg).is_file() {
        return Ok(io::load_group(arg)?);
    }
    catalog_group(arg).ok_or_else(|| Failure::input(format!("no group file or catalog group named {arg:?}")))
}

fn load_ring_arg(arg: &str) -> Result<FusionRing, Failure> {
    if Path::new(arg).is_file() {
        return Ok(io::load_ring(arg)?);
    }
    bundled_ring(arg).ok_or_else(|| Failure::input(format!("no ring file or bundled ring named {arg:?}")))
}

fn load_module_arg(arg: &str) -> Result<BasedModule, Failure> {
    if Path::new(arg).is_file() {
        return Ok(io::load_module(arg)?);
    }
    bundled_module(arg).ok_or_else(|| Failure::input(format!("no module file or bundled module named {arg:?}")))
}

fn document_output(doc: Document) -> Output {
    let text = io::document_to_json(&doc);
    Output {
        code: OK,
        json: text.clone(),
        human: text,
    }
}

fn cmd_make(m: &Make) -> Result<Output, Failure> {
    let doc = match m {
        Make::Vecg { group } => Document::Ring(vec_g_ring(&load_group_arg(group)?)),
        Make::Repg { group } => Document::Ring(rep_g_fusion(&load_group_arg(group)?)?.ring),
        Make::Deligne { a, c, module } => {
            let a = std::sync::Arc::new(load_ring_arg(a)?);
            let c = std::sync::Arc::new(load_ring_arg(c)?);
            let module = load_module_arg(module)?;
            if module.ring() != a.as_ref() {
                return Err(Failure::input("the module is not over the ring given as --a"));
            }
            Document::Sequence(make_deligne_sequence(&a, &c, &module)?)
        }
        Make::Extension { group, normal } => {
            let g = load_group_arg(group)?;
            if let Some(&x) = normal.iter().find(|&&x| x >= g.order()) {
                return Err(Failure::input(format!("element {x} out of range for order {}", g.order())));
            }
            Document::Sequence(extension_sequence(&g, &normal.iter().copied().collect())?)
        }
        Make::End { module } => Document::Ring(end_ring(&load_module_arg(module)?)),
    };
    Ok(document_output(doc))
}

fn cmd_check_exact(path: &Path, cfg: &Config) -> Result<Output, Failure> {
    let s = io::load_sequence(path)?;
    let report = check_exact(&s, &cfg.opts())?;
    let code = if report.is_breach() {
        BREACH
    } else if !report.valid {
        BAD_INPUT
    } else {
        match report.verdict {
            Verdict::Exact => OK,
            Verdict::NotExact { .. } => NEGATIVE,
            Verdict::Undecided { .. } => UNDECIDED,
        }
    };
    Ok(output(code, &report, render::exactness(&report)))
}

fn corpus_root(dir: Option<&Path>) -> PathBuf {
    if let Some(d) = dir {
        return d.to_path_buf();
    }
    if let Some(d) = std::env::var_os("FUSIONSEQ_CORPUS") {
        return d.into();
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn cmd_corpus(case: Option<&str>, dir: Option<&Path>, cfg: &Config) -> Result<Output, Failure> {
    let root = corpus_root(dir);
    if !root.is_dir() {
        return Err(Failure::input(format!("corpus directory {} does not exist", root.display())));
    }
    let src = CorpusSource::from_dir(&root)?;
    if src.is_empty() {
        return Err(Failure::input(format!("corpus directory {} is empty", root.display())));
    }
    let start = Instant::now();
    let run = run_corpus(&src, case, &cfg.opts());
    let elapsed = start.elapsed();
    if run.results.is_empty() {
        return Err(Failure::input(format!("no case matches {:?}", case.unwrap_or(""))));
    }
    let s = &run.summary;
    let code = if s.disagreements > 0 || s.breaches > 0 {
        BREACH
    } else if s.errors > 0 || s.expectation_failures > 0 || s.regular_image_failures > 0 {
        NEGATIVE
    } else {
        OK
    };
    eprintln!("corpus: {} cases in {:.2?}", s.cases, elapsed);
    Ok(output(code, &run, render::corpus(&run, elapsed)))
}
