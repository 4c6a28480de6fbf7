//! The `matgrow` command line.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::budget::{Budget, DEFAULT_BUDGET};
use crate::class::{builtin, find_representation, has_minor_budgeted, parse_count, ClassSpec};
use crate::error::{Error, Result};
use crate::geometry::{ag, pg, random_certificate, CertificateShape, ProjectionCertificate};
use crate::growth::{growth_table, h_exhaustive, kd_search, Caps};
use crate::kernel::{matroid_to_text, parse_matroid, parse_matroid_unchecked, Matroid};
use crate::modsum::{modular_sum, SumSpec};
use crate::projection::{density_params, find_stack, local_rep_level, sensitive_elements};
use crate::verify::{run_suite, SuiteOptions};

/// Exit status for domain errors and failed checks.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status when a search budget runs out.
pub const EXIT_BUDGET: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "matgrow", version, about = "Matroids over small finite fields and their growth rates")]
pub struct Cli {
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Node budget for each search (accepts forms like 1e6).
    #[arg(long, global = true, env = "MATGROW_BUDGET", value_parser = count)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

fn count(s: &str) -> std::result::Result<u64, String> {
    parse_count(s).ok_or_else(|| format!("`{s}` is not a count"))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    /// PG(n − 1, q).
    Pg,
    /// AG(n − 1, q).
    Ag,
    /// U_{r,n}.
    Uniform,
    /// A named matroid such as fano or u24.
    Builtin,
    /// A random k-element projection certificate.
    Certificate,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a matroid or certificate file.
    Construct {
        kind: Kind,
        /// Name for `builtin`.
        name: Option<String>,
        #[arg(short = 'n')]
        n: Option<usize>,
        #[arg(short = 'q')]
        q: Option<u32>,
        #[arg(short = 'r')]
        r: Option<usize>,
        #[arg(short = 'k')]
        k: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Density parameters, local representability and sensitive elements of a certificate.
    Density {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Search for a (q, k, t)-stack.
    Stack {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(short = 'q')]
        q: u32,
        #[arg(short = 't')]
        t: usize,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Test for a minor.
    Minor {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
    },
    /// Find a GF(q) representation.
    Represent {
        #[arg(long)]
        matroid: String,
        #[arg(short = 'q')]
        q: u32,
    },
    /// Build a modular sum from a sum file.
    Sum {
        #[arg(long)]
        spec: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive h(n) for n up to a rank, against the searched profile.
    Growth {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 1)]
        k_max: usize,
    },
    /// Search for the largest (k, d) attained at a rank.
    Kdsearch {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 1)]
        k_max: usize,
    },
    /// Run a named invariant suite.
    Verify {
        suite: String,
        /// Certificates per sampled cell.
        #[arg(long, default_value = "200", value_parser = count)]
        seeds: u64,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra matroid files for kernel-axioms (taken as given).
        #[arg(long)]
        input: Vec<PathBuf>,
        /// Where failing inputs are written.
        #[arg(long, default_value = ".")]
        dump_dir: PathBuf,
    },
}

/// Outcome of one command: text for stdout and the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(Error::Io)
}

fn load_matroid(path: &Path) -> Result<Matroid> {
    parse_matroid(&read(path)?).map(|(_, m)| m)
}

/// A file path, or a builtin name when no such file exists.
fn matroid_arg(arg: &str) -> Result<Matroid> {
    let p = Path::new(arg);
    if p.exists() {
        load_matroid(p)
    } else {
        builtin(arg)
    }
}

fn load_class(path: &Path, budget: Option<u64>) -> Result<ClassSpec> {
    let spec = ClassSpec::parse(&read(path)?, path.parent())?;
    Ok(match budget {
        Some(b) => spec.with_budget(b),
        None => spec,
    })
}

fn write_or_return(output: &Option<PathBuf>, text: String, summary: String) -> Result<String> {
    match output {
        Some(p) => {
            fs::write(p, text)?;
            Ok(summary)
        }
        None => Ok(text),
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Precondition(format!("missing {flag}")))
}

/// Runs a parsed command on a pool of `cli.threads` workers.
pub fn run(cli: Cli) -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build();
    let result = match pool {
        Ok(pool) => pool.install(|| execute(&cli)),
        Err(e) => Err(Error::Precondition(e.to_string())),
    };
    match result {
        Ok(o) => o,
        Err(e) => Outcome { status: if e.is_budget() { EXIT_BUDGET } else { EXIT_FAILURE }, stdout: format!("error: {e}\n") },
    }
}

fn ok(stdout: String) -> Result<Outcome> {
    Ok(Outcome { status: 0, stdout })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    match &cli.command {
        Command::Construct { kind, name, n, q, r, k, seed, output } => {
            let (label, text) = match kind {
                Kind::Pg | Kind::Ag => {
                    let (n, q) = (need(*n, "-n")?, need(*q, "-q")?);
                    let (label, m) = match kind {
                        Kind::Pg => ("pg", pg(n, q)?),
                        _ => ("ag", ag(n, q)?),
                    };
                    let label = format!("{label}_{}_{q}", n.saturating_sub(1));
                    (label.clone(), matroid_to_text(&label, &m))
                }
                Kind::Uniform => {
                    let (r, n) = (need(*r, "-r")?, need(*n, "-n")?);
                    let label = format!("u_{r}_{n}");
                    (label.clone(), matroid_to_text(&label, &Matroid::uniform(r, n)))
                }
                Kind::Builtin => {
                    let name = need(name.clone(), "a builtin name")?;
                    (name.clone(), matroid_to_text(&name, &builtin(&name)?))
                }
                Kind::Certificate => {
                    let shape = CertificateShape { q: need(*q, "-q")?, k: need(*k, "-k")?, r: need(*r, "-r")? };
                    let seed = need(*seed, "--seed")?;
                    ("certificate".to_string(), random_certificate(shape, seed)?.to_text())
                }
            };
            ok(write_or_return(output, text, format!("wrote {label}\n"))?)
        }
        Command::Density { cert } => {
            let cert = ProjectionCertificate::parse(&read(cert)?)?;
            let mut out = density_params(&cert)?.to_text();
            out.push_str(&format!("local_rep_level {}\n", local_rep_level(&cert)?));
            let s = sensitive_elements(&cert)?;
            let set: Vec<String> = s.set.iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("sensitive {}\n", if set.is_empty() { "-".into() } else { set.join(" ") }));
            ok(out)
        }
        Command::Stack { matroid, q, t, k } => {
            let m = load_matroid(matroid)?;
            let b = Budget::new("stack search", budget);
            ok(match find_stack(&m, *q, *t, *k, &b)? {
                Some(w) => w.to_text(),
                None => "none\n".into(),
            })
        }
        Command::Minor { host, pattern } => {
            let (m, n) = (matroid_arg(host)?, matroid_arg(pattern)?);
            let b = Budget::new("minor search", budget);
            ok(match has_minor_budgeted(&m, &n, &b)? {
                None => "none\n".into(),
                Some(w) => {
                    let list = |s: crate::kernel::Set| s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
                    let map: Vec<String> = w.map.iter().map(|e| e.to_string()).collect();
                    format!("minor\ncontract {}\ndelete {}\nmap {}\n", list(w.contract), list(w.delete), map.join(" "))
                }
            })
        }
        Command::Represent { matroid, q } => {
            let m = matroid_arg(matroid)?;
            let b = Budget::new("representability search", budget);
            ok(match find_representation(&m, *q, crate::class::REPRESENT_LIMIT, Some(&b))? {
                Some(mat) => mat.to_text(&crate::field::FieldSpec::new(*q)?),
                None => "not representable\n".into(),
            })
        }
        Command::Sum { spec, output } => {
            let spec = SumSpec::parse(&read(spec)?)?;
            let m = modular_sum(&spec)?;
            let text = matroid_to_text("sum", &m);
            ok(write_or_return(output, text, format!("sum elements={} rank={}\n", m.n(), m.full_rank()))?)
        }
        Command::Growth { class, rank, k_max } => {
            let spec = load_class(class, cli.budget)?;
            let caps = Caps { nodes: budget, k_max: *k_max, ..Caps::default() };
            let report = kd_search(&spec, (*rank).max(2), &caps)?;
            let mut rows = Vec::new();
            for n in 1..=*rank {
                rows.push((n, h_exhaustive(&spec, n, &caps)?));
            }
            let mut out = growth_table(report.profile.as_ref(), &rows)?;
            let (n, h) = rows.last().ok_or_else(|| Error::Precondition("rank must be at least 1".into()))?;
            match report.profile {
                Some(p) => {
                    let f = p.formula(*n)?;
                    let verdict = if f == h.value as i128 { "match" } else { "differ" };
                    out.push_str(&format!("h({n})={} formula={f} {verdict}\n", h.value));
                }
                None => out.push_str(&format!("h({n})={} formula=none\n", h.value)),
            }
            ok(out)
        }
        Command::Kdsearch { class, rank, k_max } => {
            let spec = load_class(class, cli.budget)?;
            let caps = Caps { nodes: budget, k_max: *k_max, ..Caps::default() };
            ok(kd_search(&spec, *rank, &caps)?.to_text())
        }
        Command::Verify { suite, seeds, seed, input, dump_dir } => {
            let mut extra = Vec::new();
            for p in input {
                extra.push(parse_matroid_unchecked(&read(p)?)?.1);
            }
            let opts = SuiteOptions { seeds: *seeds as usize, base_seed: *seed, budget, extra };
            let report = run_suite(suite, &opts)?;
            let mut out = report.to_text();
            if !report.passed() {
                let failure = report.smallest_failures()[0];
                let path = dump_dir.join(format!("{suite}-failure.txt"));
                fs::write(&path, &failure.input)?;
                out.push_str(&format!("violated {}: {}\n", failure.invariant, failure.detail));
                out.push_str(&format!("reproducer written to {}\n", path.display()));
                return Ok(Outcome { status: EXIT_FAILURE, stdout: out });
            }
            ok(out)
        }
    }
}
