//! `srforge` command-line driver.
//!
//! Exit codes: 0 success or a true verdict, 1 a false verdict (witness
//! printed) or a failing corpus case, 2 usage and precondition errors.

pub mod corpus;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use srforge::construct::{
    chain, check_block_spec, kron_block, lift, perturb_block, perturb_row, random_search,
    scaled_columns, ConstructOptions, PerturbBase, PerturbSpecBlock, PerturbSpecRow,
};
use srforge::format::{
    mat_from_json, mat_to_json, minor_table_to_json, parse_matrix_file, report_to_json,
    write_block, write_mat, MatrixFile,
};
use srforge::verify::{is_block_superregular, is_superregular, minor_table};
use srforge::{
    mat_frobenius, BlockMat, CompanionCtx, ElemStyle, Error, FieldCtx, Mat, Poly, VerifyOptions,
    VerifyReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "srforge", version, about = "Superregular and block superregular matrices over finite fields")]
pub struct Cli {
    /// Verifier threads.
    #[arg(long, global = true, env = "SRFORGE_JOBS", default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    pub out: OutFormat,
    /// Count every minor instead of stopping at the first singular one.
    #[arg(long, global = true)]
    pub exhaustive: bool,
    /// Skip re-verification of construction inputs.
    #[arg(long, global = true)]
    pub unchecked: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check superregularity or block superregularity.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// All k×k minors.
    Minors {
        #[arg(long)]
        k: usize,
        file: PathBuf,
    },
    /// A⊗B as an n-block matrix.
    Kron { a: PathBuf, b: PathBuf },
    /// A_1⊗…⊗A_l⊗B.
    Chain {
        #[arg(required = true)]
        factors: Vec<PathBuf>,
        #[arg(long = "with")]
        with: PathBuf,
    },
    /// Blocks a_ij·B·B_j.
    Scaled {
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        bs: Vec<PathBuf>,
    },
    /// Companion matrix of a primitive polynomial.
    Companion {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        poly: String,
    },
    /// Find or test primitive polynomials.
    Primitive {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        degree: usize,
        /// List every primitive polynomial instead of the first.
        #[arg(long)]
        list: bool,
        /// Test this polynomial; exit 1 when it is not primitive.
        #[arg(long)]
        poly: Option<String>,
    },
    /// Ψ⁻¹(A_1⊗…⊗A_l⊗C^t) over GF(p^n).
    Lift {
        #[arg(required = true)]
        factors: Vec<PathBuf>,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        texp: Option<u64>,
    },
    /// Ψ: GF(p^n) matrix to block matrix over GF(p), or back with --inverse.
    Embed {
        file: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Entrywise x ↦ x^(p^j).
    Frobenius {
        #[arg(long)]
        j: usize,
        file: PathBuf,
    },
    /// Perturb one row of M = α𝓜.
    PerturbRow {
        file: PathBuf,
        /// Inline JSON or a path to a JSON file.
        #[arg(long)]
        spec: String,
        /// Needed when FILE holds the ground matrix 𝓜 over GF(p).
        #[arg(long)]
        poly: Option<String>,
    },
    /// Perturb the first j rows of M = α𝓜 by α^t.
    PerturbBlock {
        file: PathBuf,
        #[arg(long)]
        spec: String,
        #[arg(long)]
        poly: Option<String>,
        /// Accept j = 1; the output is then verified.
        #[arg(long)]
        allow_j1: bool,
    },
    /// Random search for a superregular matrix.
    Search {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 1000)]
        tries: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a worked example, or all of them.
    PaperExample {
        #[arg(required_unless_present = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    Sr { file: PathBuf },
    Block {
        /// Block size; defaults to the file's `block=` header.
        #[arg(long)]
        b: Option<usize>,
        file: PathBuf,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(EXIT_USAGE, e.to_string())
    }
}

type Out<'a> = &'a mut dyn Write;

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn io(e: std::io::Error) -> Fail {
    Fail(EXIT_USAGE, e.to_string())
}

fn read_text(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

/// Text format, or the JSON matrix form when the file starts with `{`.
fn load(path: &Path) -> Result<MatrixFile, Fail> {
    let text = read_text(path)?;
    if text.trim_start().starts_with('{') {
        Ok(MatrixFile {
            mat: mat_from_json(&text)?,
            block: None,
            companion: None,
        })
    } else {
        Ok(parse_matrix_file(&text)?)
    }
}

fn load_mat(path: &Path) -> Result<Mat, Fail> {
    Ok(load(path)?.mat)
}

fn load_spec<T: serde::de::DeserializeOwned>(spec: &str) -> Result<T, Fail> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        read_text(Path::new(spec))?
    };
    serde_json::from_str(&text).map_err(|e| Fail(EXIT_USAGE, format!("bad spec: {e}")))
}

fn companion_ctx(p: u64, poly: &str) -> Result<CompanionCtx, Fail> {
    Ok(CompanionCtx::parse(p, poly)?)
}

impl Cli {
    fn verify_opts(&self) -> VerifyOptions {
        VerifyOptions::with_jobs(self.jobs.max(1)).exhaustive(self.exhaustive)
    }

    fn construct_opts(&self) -> ConstructOptions {
        ConstructOptions {
            checked: !self.unchecked,
            allow_j1: false,
            verify: VerifyOptions::with_jobs(self.jobs.max(1)),
        }
    }
}

fn emit_report(cli: &Cli, rep: &VerifyReport, out: Out) -> Result<i32, Fail> {
    match cli.out {
        OutFormat::Json => writeln!(out, "{}", report_to_json(rep)).map_err(io)?,
        OutFormat::Csv => {
            let set = |w: Option<&srforge::IndexSet>| {
                w.map(|s| s.one_based().iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default()
            };
            writeln!(out, "verdict,block_size,witness_rows,witness_cols,minors_checked").map_err(io)?;
            writeln!(
                out,
                "{},{},\"{}\",\"{}\",{}",
                rep.verdict,
                rep.block_size.map_or(String::new(), |b| b.to_string()),
                set(rep.witness.as_ref().map(|w| &w.rows)),
                set(rep.witness.as_ref().map(|w| &w.cols)),
                rep.minors_checked
            )
            .map_err(io)?;
        }
        OutFormat::Text => writeln!(out, "{rep}").map_err(io)?,
    }
    Ok(if rep.verdict { EXIT_OK } else { EXIT_FALSE })
}

fn emit_mat(cli: &Cli, m: &Mat, out: Out) -> Result<i32, Fail> {
    match cli.out {
        OutFormat::Json => writeln!(out, "{}", mat_to_json(m)).map_err(io)?,
        OutFormat::Csv => {
            for i in 0..m.rows() {
                let row: Vec<String> = m.row(i).iter().map(|e| m.ctx().format(e, ElemStyle::Coeffs)).collect();
                writeln!(out, "{}", row.iter().map(|c| format!("\"{c}\"")).collect::<Vec<_>>().join(",")).map_err(io)?;
            }
        }
        OutFormat::Text => write!(out, "{}", write_mat(m)).map_err(io)?,
    }
    Ok(EXIT_OK)
}

fn emit_block(cli: &Cli, b: &BlockMat, out: Out) -> Result<i32, Fail> {
    match cli.out {
        OutFormat::Json => {
            let mut v = mat_to_json(b.inner());
            v["block_size"] = json!(b.block_size());
            if let Some(ctx) = b.companion() {
                v["companion"] = json!(ctx.poly().to_string());
                v["powers"] = json!(b.power_pattern());
            }
            writeln!(out, "{v}").map_err(io)?;
        }
        OutFormat::Csv => {
            emit_mat(cli, b.inner(), out)?;
        }
        OutFormat::Text => write!(out, "{}", write_block(b, false)).map_err(io)?,
    }
    Ok(EXIT_OK)
}

fn dispatch(cli: &Cli, out: Out) -> Result<i32, Fail> {
    let vopts = cli.verify_opts();
    let copts = cli.construct_opts();
    match &cli.command {
        Command::Verify(VerifyCmd::Sr { file }) => {
            let m = load_mat(file)?;
            emit_report(cli, &is_superregular(&m, &vopts), out)
        }
        Command::Verify(VerifyCmd::Block { b, file }) => {
            let bm = load(file)?.into_block(*b)?;
            emit_report(cli, &is_block_superregular(&bm, &vopts)?, out)
        }
        Command::Minors { k, file } => {
            let m = load_mat(file)?;
            let t = minor_table(&m, *k)?;
            let style = if m.ctx().is_prime_field() { ElemStyle::Coeffs } else { ElemStyle::Poly };
            match cli.out {
                OutFormat::Json => writeln!(out, "{}", minor_table_to_json(&t)).map_err(io)?,
                OutFormat::Csv => write!(out, "{}", t.to_csv(style)).map_err(io)?,
                OutFormat::Text => write!(out, "{}", t.to_text(style)).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
        Command::Kron { a, b } => {
            let k = kron_block(&load_mat(a)?, &load_mat(b)?, &copts)?;
            emit_block(cli, &k, out)
        }
        Command::Chain { factors, with } => {
            let fs = factors.iter().map(|f| load_mat(f)).collect::<Result<Vec<_>, _>>()?;
            emit_block(cli, &chain(&fs, &load_mat(with)?, &copts)?, out)
        }
        Command::Scaled { a, b, bs } => {
            let bs = bs.iter().map(|f| load_mat(f)).collect::<Result<Vec<_>, _>>()?;
            emit_block(cli, &scaled_columns(&load_mat(a)?, &load_mat(b)?, &bs, &copts)?, out)
        }
        Command::Companion { p, poly } => {
            let ctx = companion_ctx(*p, poly)?;
            if cli.out == OutFormat::Text {
                writeln!(out, "# companion of {} over GF({p}), order {}", ctx.poly(), ctx.ext().order() - 1)
                    .map_err(io)?;
            }
            emit_mat(cli, ctx.matrix(), out)
        }
        Command::Primitive { p, degree, list, poly } => primitive(cli, *p, *degree, *list, poly.as_deref(), out),
        Command::Lift { factors, p, poly, texp } => {
            let ctx = companion_ctx(*p, poly)?;
            let fs = factors.iter().map(|f| load_mat(f)).collect::<Result<Vec<_>, _>>()?;
            emit_mat(cli, &lift(&fs, &ctx, *texp, &copts)?, out)
        }
        Command::Embed { file, p, poly, inverse } => {
            let ctx = companion_ctx(*p, poly)?;
            let m = load_mat(file)?;
            if *inverse {
                emit_mat(cli, &ctx.Psi_inv_mat(&m)?, out)
            } else {
                emit_block(cli, &ctx.Psi(&m)?, out)
            }
        }
        Command::Frobenius { j, file } => emit_mat(cli, &mat_frobenius(&load_mat(file)?, *j)?, out),
        Command::PerturbRow { file, spec, poly } => {
            let base = perturb_base(file, poly.as_deref(), &copts)?;
            let spec: PerturbSpecRow = load_spec(spec)?;
            emit_mat(cli, &perturb_row(&base, &spec)?, out)
        }
        Command::PerturbBlock { file, spec, poly, allow_j1 } => {
            let base = perturb_base(file, poly.as_deref(), &copts)?;
            let spec: PerturbSpecBlock = load_spec(spec)?;
            let opts = ConstructOptions {
                allow_j1: *allow_j1,
                ..copts
            };
            let m = base.matrix();
            check_block_spec(&spec, m.rows(), m.ctx().degree(), *allow_j1)?;
            let n = perturb_block(&base, &spec, &opts)?;
            if spec.rows == 1 {
                // outside the guaranteed range: always verify
                let rep = is_superregular(&n, &vopts);
                if !rep.verdict {
                    emit_mat(cli, &n, out)?;
                    return emit_report(cli, &rep, out);
                }
            }
            emit_mat(cli, &n, out)
        }
        Command::Search { p, poly, rows, cols, tries, seed } => {
            let ctx = match poly {
                Some(poly) => FieldCtx::parse(*p, poly)?,
                None => FieldCtx::prime(*p)?,
            };
            let found = random_search(&ctx, *rows, *cols, *tries, *seed, &VerifyOptions::with_jobs(cli.jobs.max(1)))?;
            match (cli.out, found) {
                (OutFormat::Json, found) => {
                    let v = json!({
                        "schema": 1,
                        "seed": seed,
                        "tries": tries,
                        "found": found.is_some(),
                        "matrix": found.as_ref().map(mat_to_json),
                    });
                    writeln!(out, "{v}").map_err(io)?;
                    Ok(if found.is_some() { EXIT_OK } else { EXIT_FALSE })
                }
                (_, Some(m)) => {
                    writeln!(out, "# seed={seed} tries={tries}").map_err(io)?;
                    emit_mat(cli, &m, out)
                }
                (_, None) => {
                    writeln!(out, "no superregular {rows}x{cols} matrix in {tries} tries (seed={seed})").map_err(io)?;
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::PaperExample { id, all } => {
            let opts = corpus::RunOpts {
                jobs: cli.jobs.max(1),
                ..corpus::RunOpts::default()
            };
            if *all {
                let summary = corpus::run_corpus(&opts);
                writeln!(out, "{summary}").map_err(io)?;
                return Ok(if summary.passed() { EXIT_OK } else { EXIT_FALSE });
            }
            let id = id.as_deref().unwrap_or_default();
            let case = corpus::find(id).ok_or_else(|| {
                Fail(EXIT_USAGE, format!("unknown example '{id}'; known: {}", corpus::ids().join(", ")))
            })?;
            let rep = case.run(&opts);
            writeln!(out, "{rep}").map_err(io)?;
            Ok(if rep.passed() { EXIT_OK } else { EXIT_FALSE })
        }
    }
}

/// A prime-field file is the ground matrix 𝓜 and needs `--poly`; an
/// extension-field file is M itself.
fn perturb_base(file: &Path, poly: Option<&str>, opts: &ConstructOptions) -> Result<PerturbBase, Fail> {
    let m = load_mat(file)?;
    let ctx = m.ctx();
    if ctx.is_prime_field() {
        let poly = poly.ok_or_else(|| Fail(EXIT_USAGE, "ground matrix given; pass --poly".into()))?;
        Ok(PerturbBase::from_ground(&m, &companion_ctx(ctx.p(), poly)?, opts)?)
    } else {
        let cctx = CompanionCtx::new(ctx.modulus(), ctx.p())?;
        Ok(PerturbBase::from_extension(&m, &cctx, opts)?)
    }
}

fn primitive(cli: &Cli, p: u64, degree: usize, list: bool, poly: Option<&str>, out: Out) -> Result<i32, Fail> {
    if let Some(text) = poly {
        let f = Poly::parse(text, p)?;
        if f.degree() != Some(degree) {
            return Err(Fail(EXIT_USAGE, format!("{f} does not have degree {degree}")));
        }
        let yes = f.is_monic() && f.is_primitive();
        match cli.out {
            OutFormat::Json => writeln!(out, "{}", json!({"poly": f.to_string(), "p": p, "primitive": yes})),
            _ => writeln!(out, "{f}: {}", if yes { "primitive" } else { "not primitive" }),
        }
        .map_err(io)?;
        return Ok(if yes { EXIT_OK } else { EXIT_FALSE });
    }
    if degree == 0 {
        return Err(Fail(EXIT_USAGE, "degree must be at least 1".into()));
    }
    // validates p
    FieldCtx::prime(p)?;
    let mut found = Poly::monic_of_degree(p, degree).filter(Poly::is_primitive);
    let polys: Vec<Poly> = if list { found.collect() } else { found.next().into_iter().collect() };
    match cli.out {
        OutFormat::Json => {
            let names: Vec<String> = polys.iter().map(Poly::to_string).collect();
            writeln!(out, "{}", json!({"p": p, "degree": degree, "primitive": names})).map_err(io)?
        }
        _ => {
            for f in &polys {
                writeln!(out, "{f}").map_err(io)?;
            }
        }
    }
    Ok(if polys.is_empty() { EXIT_FALSE } else { EXIT_OK })
}
