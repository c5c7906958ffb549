//! `grpd`: batch driver over GRPD files.
//!
//! Results go to stdout and diagnostics to stderr. Exit codes: 0 success,
//! 1 a property or predicate is false, 2 parse error, 3 axiom violation,
//! 4 usage error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use grpd::build::BuildSpec;
use grpd::{
    center, inner, normality, subgroupoid, textio, verify, ElementSet, Error, Groupoid,
    GroupoidMap, SubgroupoidView,
};

const EXIT_FALSE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_AXIOM: u8 = 3;
const EXIT_USAGE: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "grpd",
    version,
    about = "Compute with finite groupoids stored as GRPD files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the groupoid axioms.
    Validate { file: PathBuf },
    /// Sizes, isotropy orders and the abelian flag.
    Info { file: PathBuf },
    /// Build a fixture: `group NAME`, `pair N`, `bundle NAME...`, `product N NAME`.
    Build {
        kind: String,
        args: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Subgroupoid generated by a set of elements.
    Subgroupoid {
        file: PathBuf,
        #[arg(long)]
        generate: PathBuf,
        /// Add every identity to the generators.
        #[arg(short, long)]
        wide: bool,
    },
    /// Test whether a subgroupoid is normal.
    Normal {
        file: PathBuf,
        #[arg(long)]
        sub: PathBuf,
    },
    /// Normalizer of a wide subgroupoid.
    Normalizer {
        file: PathBuf,
        #[arg(long)]
        sub: PathBuf,
    },
    /// Smallest normal subgroupoid containing a set.
    Closure {
        file: PathBuf,
        #[arg(long)]
        set: PathBuf,
    },
    /// Quotient by a normal subgroupoid.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        sub: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Center of the groupoid.
    Center { file: PathBuf },
    /// Commutator subgroupoid.
    Commutator { file: PathBuf },
    /// Quotient by the commutator subgroupoid.
    Abelianize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Inner isomorphisms and the partial isomorphism groupoid.
    Inner { file: PathBuf },
    /// Classify a map between two groupoids.
    Checkmap {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Run the proposition suite.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// With `--sub2`, also report the product criterion for this pair.
        #[arg(long, requires = "sub2")]
        sub: Option<PathBuf>,
        #[arg(long, requires = "sub")]
        sub2: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Lines,
}

/// A failed run: exit code, diagnostic, and anything already destined for
/// stdout.
struct Failure {
    code: u8,
    message: String,
    stdout: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
            stdout: String::new(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) | Error::UnknownElement(_) | Error::DuplicateElement(_) => EXIT_PARSE,
            Error::Axiom(_) => EXIT_AXIOM,
            Error::Builder(_) | Error::BoundExceeded { .. } => EXIT_USAGE,
            _ => EXIT_FALSE,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<(String, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Groupoid, Failure> {
    textio::read_groupoid(&read(path)?).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn load_tokens(path: &Path) -> Result<Vec<String>, Failure> {
    textio::parse_subset(&read(path)?)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load_sub<'g>(g: &'g Groupoid, path: &Path) -> Result<SubgroupoidView<'g>, Failure> {
    Ok(SubgroupoidView::from_tokens(g, &load_tokens(path)?)?)
}

fn write_or_print(output: &Option<PathBuf>, text: &str, summary: String) -> Outcome {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| {
                Failure::new(EXIT_USAGE, format!("cannot write {}: {e}", path.display()))
            })?;
            Ok((summary, 0))
        }
        None => Ok((text.to_string(), 0)),
    }
}

fn bound() -> Result<usize, Failure> {
    match std::env::var("GRPD_BOUND") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::new(
                EXIT_USAGE,
                format!("GRPD_BOUND must be a number, got `{v}`"),
            )
        }),
        Err(_) => Ok(inner::DEFAULT_BOUND),
    }
}

fn subset_lines(view: &SubgroupoidView<'_>) -> String {
    textio::serialize_subset(&view.tokens())
}

fn quotient_summary(q: &grpd::Quotient<'_>) -> String {
    let g = q.base();
    let mut out = String::new();
    for (i, c) in q.cosets().iter().enumerate() {
        let members: Vec<&str> = c.members.iter().map(|&x| g.token(x)).collect();
        writeln!(
            out,
            "{} = {{{}}}",
            q.groupoid().tokens()[i],
            members.join(" ")
        )
        .unwrap();
    }
    out
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => {
            let g = load(&file)?;
            Ok((format!("ok {} ({} elements)\n", g.name(), g.len()), 0))
        }
        Command::Info { file } => {
            let g = load(&file)?;
            let mut out = String::new();
            writeln!(out, "name {}", g.name()).unwrap();
            writeln!(out, "elements {}", g.len()).unwrap();
            writeln!(out, "identities {}", g.identities().len()).unwrap();
            let orders: Vec<String> = g
                .identities()
                .iter()
                .map(|&e| {
                    format!(
                        "{}={}",
                        g.token(e),
                        g.isotropy(e).expect("identity").order()
                    )
                })
                .collect();
            writeln!(out, "isotropy {}", orders.join(" ")).unwrap();
            writeln!(out, "abelian {}", g.is_abelian()).unwrap();
            Ok((out, 0))
        }
        Command::Build { kind, args, output } => {
            let g = BuildSpec::parse(&kind, &args)?.build()?;
            let summary = format!("built {} ({} elements)\n", g.name(), g.len());
            write_or_print(&output, &textio::serialize(&g), summary)
        }
        Command::Subgroupoid {
            file,
            generate,
            wide,
        } => {
            let g = load(&file)?;
            let set = ElementSet::from_tokens(&g, &load_tokens(&generate)?)?;
            let h = if wide {
                subgroupoid::generate_wide(&set)?
            } else {
                subgroupoid::generate(&set)?
            };
            Ok((subset_lines(&h), 0))
        }
        Command::Normal { file, sub } => {
            let g = load(&file)?;
            let h = load_sub(&g, &sub)?;
            if !h.is_wide() {
                return Ok(("not normal (not wide)\n".into(), EXIT_FALSE));
            }
            if normality::is_normal(&h) {
                Ok(("normal\n".into(), 0))
            } else {
                Ok(("not normal\n".into(), EXIT_FALSE))
            }
        }
        Command::Normalizer { file, sub } => {
            let g = load(&file)?;
            let h = load_sub(&g, &sub)?;
            Ok((subset_lines(&normality::normalizer(&h)?.as_subgroupoid), 0))
        }
        Command::Closure { file, set } => {
            let g = load(&file)?;
            let set = ElementSet::from_tokens(&g, &load_tokens(&set)?)?;
            Ok((subset_lines(&normality::normal_closure(&set)?), 0))
        }
        Command::Quotient { file, sub, output } => {
            let g = load(&file)?;
            let h = load_sub(&g, &sub)?;
            let q = normality::quotient(&h)?;
            write_or_print(
                &output,
                &textio::serialize(q.groupoid()),
                quotient_summary(&q),
            )
        }
        Command::Center { file } => {
            let g = load(&file)?;
            Ok((subset_lines(&center::center(&g)?.view), 0))
        }
        Command::Commutator { file } => {
            let g = load(&file)?;
            Ok((subset_lines(&center::commutator_subgroupoid(&g).view), 0))
        }
        Command::Abelianize { file, output } => {
            let g = load(&file)?;
            let q = center::abelianization(&g)?;
            write_or_print(
                &output,
                &textio::serialize(q.groupoid()),
                quotient_summary(&q),
            )
        }
        Command::Inner { file } => inner_report(&load(&file)?, bound()?),
        Command::Checkmap {
            source,
            target,
            map,
        } => {
            let (a, b) = (load(&source)?, load(&target)?);
            let pairs = textio::parse_mapping(&read(&map)?)
                .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", map.display())))?;
            let phi = GroupoidMap::from_tokens(&a, &b, &pairs)?;
            let mut out = String::new();
            for (label, flag) in [
                ("homomorphism", phi.is_hom()),
                ("strong", phi.is_strong()),
                ("injective", phi.is_injective()),
                ("surjective", phi.is_surjective()),
                ("strong-isomorphism", phi.is_strong_isomorphism()),
            ] {
                writeln!(out, "{label} {flag}").unwrap();
            }
            if phi.is_hom() {
                writeln!(out, "kernel {}", phi.kernel()?.tokens().join(" ")).unwrap();
            }
            Ok((out, if phi.is_hom() { 0 } else { EXIT_FALSE }))
        }
        Command::Verify {
            file,
            format,
            sub,
            sub2,
        } => verify_cmd(&file, format, sub.as_deref().zip(sub2.as_deref()), bound()?),
    }
}

fn inner_report(g: &Groupoid, bound: usize) -> Outcome {
    let ig = inner::inner_groupoid(g)?;
    let mut out = format!("inner {}\n", ig.isos.len());
    for (f, &w) in ig.isos.iter().zip(&ig.witnesses) {
        let pairs: Vec<String> = f
            .mapping
            .iter()
            .map(|&(x, y)| format!("{}->{}", g.token(x), g.token(y)))
            .collect();
        writeln!(
            out,
            "I[{}] {} -> {}: {}",
            g.token(w),
            g.token(f.domain_base),
            g.token(f.range_base),
            pairs.join(" ")
        )
        .unwrap();
    }
    let report = inner::verify_inner_iso_theorem(g)?;
    writeln!(out, "center-quotient-isomorphic {}", report.holds()).unwrap();
    match inner::partial_iso_groupoid(g, bound) {
        Ok(a) => {
            let normal = normality::is_normal(&inner::inner_within(&ig, &a)?);
            writeln!(out, "partial-isos {}", a.isos.len()).unwrap();
            writeln!(out, "inner-normal {normal}").unwrap();
        }
        Err(Error::BoundExceeded { order, bound }) => {
            writeln!(
                out,
                "partial-isos skipped (isotropy order {order} exceeds bound {bound})"
            )
            .unwrap();
        }
        Err(e) => return Err(e.into()),
    }
    Ok((out, if report.holds() { 0 } else { EXIT_FALSE }))
}

fn verify_cmd(file: &Path, format: Format, pair: Option<(&Path, &Path)>, bound: usize) -> Outcome {
    let text = read(file)?;
    let doc = textio::parse(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", file.display())))?;
    let g = match doc.validate() {
        Ok(g) => g,
        Err(Error::Axiom(v)) => {
            let witness = format!("{} ({})", v.axiom, v.witness.join(","));
            let stdout = match format {
                Format::Lines => format!("CHECK AXIOMS FAIL {witness}\n"),
                Format::Text => format!("  AXIOMS   FAIL  {witness}\n"),
            };
            return Err(Failure {
                code: EXIT_AXIOM,
                message: format!("{}: {v}", file.display()),
                stdout,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let mut report = verify::run(&g, bound);
    if let Some((a, b)) = pair {
        let (h, k) = (load_sub(&g, a)?, load_sub(&g, b)?);
        let check = verify::hk_pair(&h, &k)?;
        report.checks.push(check);
    }
    let out = match format {
        Format::Text => report.to_text(),
        Format::Lines => report.to_lines(),
    };
    Ok((out, if report.all_passed() { 0 } else { EXIT_FALSE }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            print!("{}", f.stdout);
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
