use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gaq_core::catalog::{self, GroupSpec};
use gaq_core::classify::{self, TableFormat};
use gaq_core::iso::{self, DecideOptions};
use gaq_core::morphism::AutomorphismGroup;
use gaq_core::{AlexanderQuandle, Error, Verifier};

#[derive(Parser)]
#[command(name = "gaq", version, about = "Generalized Alexander quandles of small groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group catalog queries.
    Groups {
        #[command(subcommand)]
        action: GroupsAction,
    },
    /// Automorphism count and conjugacy class representatives.
    Aut {
        group: String,
        #[arg(long)]
        json: bool,
    },
    /// Invariant profile of Q(G, psi) as JSON.
    Invariants { group: String, automorphism: String },
    /// Decide whether two quandles are isomorphic.
    Iso {
        group1: String,
        aut1: String,
        group2: String,
        aut2: String,
        #[arg(long, value_enum, default_value_t = IsoMethod::Auto)]
        method: IsoMethod,
        /// Also run brute force and require agreement (auto only).
        #[arg(long)]
        cross_check: bool,
    },
    /// Classify all generalized Alexander quandles of order n.
    Classify {
        n: usize,
        #[arg(long)]
        beyond_paper: bool,
        #[arg(long, default_value = "md")]
        format: TableFormat,
        /// Cache directory; QF_CACHE_DIR takes precedence.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Check every published claim and print one line per claim.
    VerifyPaper {
        /// Run only this claim.
        #[arg(long)]
        claim: Option<usize>,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GroupsAction {
    /// Isomorphism types of order n.
    List { n: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum IsoMethod {
    Brute,
    /// The displacement-group criterion.
    Thm13,
    Auto,
}

/// Failure of a run, mapped onto the process exit code.
enum Failure {
    Mismatch(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Core(e) => match e {
                Error::Capacity { .. } => 2,
                Error::Input(_) | Error::Lookup(_) | Error::Structural(_) | Error::Contract(_) => 3,
                Error::Disagreement(_) | Error::Internal(_) | Error::Io(_) | Error::Json(_) => 1,
            },
        }
    }
}

fn parse_spec(name: &str) -> Result<GroupSpec, Failure> {
    Ok(name.parse()?)
}

fn json<T: serde::Serialize + ?Sized>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::Core(e.into()))
}

fn run(cli: Cli, out: &mut String) -> Result<(), Failure> {
    match cli.command {
        Command::Groups { action: GroupsAction::List { n } } => {
            for spec in catalog::groups_of_order(n)? {
                let g = catalog::build(&spec)?;
                let abelian = if g.is_abelian() { "abelian" } else { "non-abelian" };
                let _ = writeln!(out, "{spec}\t{abelian}\tcenter {}", g.center().len());
            }
        }
        Command::Aut { group, json: as_json } => {
            let spec = parse_spec(&group)?;
            let aut = catalog::entry(&spec)?.automorphisms()?;
            print_aut(out, &spec, &aut, as_json)?;
        }
        Command::Invariants { group, automorphism } => {
            let q = AlexanderQuandle::from_spec(&parse_spec(&group)?, &automorphism)?;
            let _ = writeln!(out, "{}", json(q.profile()?)?);
        }
        Command::Iso { group1, aut1, group2, aut2, method, cross_check } => {
            let a = AlexanderQuandle::from_spec(&parse_spec(&group1)?, &aut1)?;
            let b = AlexanderQuandle::from_spec(&parse_spec(&group2)?, &aut2)?;
            let verdict = match method {
                IsoMethod::Brute => iso::brute_force_iso(&a.quandle, &b.quandle)?,
                IsoMethod::Thm13 => iso::criterion_iso(&a, &b)?,
                IsoMethod::Auto => iso::decide_with(&a, &b, &DecideOptions { cross_check, ..Default::default() })?,
            };
            let _ = writeln!(out, "{}", json(&verdict)?);
        }
        Command::Classify { n, beyond_paper, format, cache } => {
            let dir = classify::cache_dir(cache.as_deref());
            let report = classify::classify_order_cached(n, beyond_paper, dir.as_deref())?;
            out.push_str(&classify::emit_table(&report, format)?);
            if !report.complete {
                return Err(Failure::Mismatch(format!(
                    "classification of order {n} is incomplete: {}",
                    report.problems.join("; ")
                )));
            }
        }
        Command::VerifyPaper { claim, cache } => {
            let verifier = Verifier::with_cache(classify::cache_dir(cache.as_deref()));
            let claims = match claim {
                Some(id) => vec![verifier
                    .claim(id)
                    .ok_or_else(|| Error::Input(format!("no claim numbered {id}")))?],
                None => verifier.run_all(),
            };
            for c in &claims {
                let _ = writeln!(out, "{c}");
            }
            let failed = claims.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(Failure::Mismatch(format!("{failed} claim(s) failed")));
            }
        }
    }
    Ok(())
}

fn print_aut(out: &mut String, spec: &GroupSpec, aut: &AutomorphismGroup, as_json: bool) -> Result<(), Failure> {
    if as_json {
        let classes: Vec<serde_json::Value> = aut
            .classes()
            .iter()
            .enumerate()
            .map(|(k, c)| {
                serde_json::json!({
                    "index": k,
                    "size": c.size,
                    "order": c.representative.order(),
                    "fix_size": c.representative.fixed_subgroup().len(),
                    "images": c.representative.images,
                })
            })
            .collect();
        let doc = serde_json::json!({
            "group": spec.to_string(),
            "automorphisms": aut.len(),
            "classes": classes,
        });
        let _ = writeln!(out, "{}", json(&doc)?);
        return Ok(());
    }
    let _ = writeln!(out, "|Aut({spec})| = {}, {} conjugacy classes", aut.len(), aut.classes().len());
    for (k, c) in aut.classes().iter().enumerate() {
        let r = &c.representative;
        let _ = writeln!(
            out,
            "class:{k}\tsize {}\torder {}\tfix {}\t{:?}",
            c.size,
            r.order(),
            r.fixed_subgroup().len(),
            r.images
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    let mut out = String::new();
    let result = run(cli, &mut out);
    // A closed pipe (`gaq ... | head`) is not an error.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Mismatch(msg) => eprintln!("gaq: {msg}"),
                Failure::Core(e) => eprintln!("gaq: {e}"),
            }
            ExitCode::from(f.code())
        }
    }
}
