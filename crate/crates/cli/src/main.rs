//! `hypertoric`: toric ideals of hypergraphs from the command line.
//!
//! Documents travel as JSON on standard streams; each carries a `schema`
//! tag. Exit codes: 0 success, 1 failed verification, 2 bad input,
//! 3 cap-incomplete result under `--strict`.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hypertoric::families::{
    complete_kpartite, cumulant_hypergraph, group_based_16, group_based_walk, no_three_way,
    slim_table_walk, FamilySpec,
};
use hypertoric::io::{
    schema_of, BasisDoc, BinomialDoc, CertificateDoc, HypergraphDoc, WalkDoc, SCHEMA_BASIS,
    SCHEMA_BINOMIAL, SCHEMA_CERTIFICATE, SCHEMA_HYPERGRAPH, SCHEMA_WALK,
};
use hypertoric::splitting::{
    check_nonuniform_conditions, find_degree_certificate, find_splitting_sets,
};
use hypertoric::toric::{graver_basis, is_indispensable, markov_basis};
use hypertoric::{BalancedEdgeSet, CertificateCaps, Error as CoreError, Hypergraph, SplitCaps};
use serde_json::{json, Value};

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INCOMPLETE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hypertoric",
    version,
    about = "Toric ideals of hypergraphs: bases, splitting sets, certificates"
)]
struct Cli {
    /// Exit with status 3 when a result is incomplete because of a cap.
    #[arg(long, global = true)]
    strict: bool,
    /// Recorded in the output; every search is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Hypergraph document, or a walk document with an embedded hypergraph
    /// (`-` for standard input).
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Args)]
struct WalkInput {
    #[command(flatten)]
    input: Input,
    /// Walk or binomial document; defaults to the input when it is a walk.
    #[arg(long)]
    walk: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Graver basis up to a degree cap.
    Graver {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Minimal Markov basis up to a degree cap.
    Markov {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Largest degree of a minimal generator, up to a degree cap.
    Width {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Whether the binomial of a walk is indispensable.
    Indispensable {
        #[command(flatten)]
        walk: WalkInput,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Splitting sets of a walk.
    Split {
        #[command(flatten)]
        walk: WalkInput,
        #[command(flatten)]
        caps: SplitArgs,
    },
    /// A degree certificate for a walk; the uniform or nonuniform rule is
    /// chosen from the hypergraph.
    Certify {
        #[command(flatten)]
        walk: WalkInput,
        #[command(flatten)]
        caps: SplitArgs,
        /// Degree bound `d`; the walk degree must exceed it (default: degree − 1).
        #[arg(long)]
        d: Option<usize>,
        /// Longest move sequence tried.
        #[arg(long = "n-cap", default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        n_cap: u64,
        /// Skip the direct split and search move sequences only.
        #[arg(long)]
        sequences_only: bool,
        #[arg(long, default_value_t = 20_000, value_parser = clap::value_parser!(u64).range(1..))]
        max_states: u64,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
        max_terminal_checks: u64,
    },
    /// Emit a named hypergraph, or a walk with its hypergraph embedded.
    Family {
        /// kpartite K D | no3way A B C | groupbased16 | cumulant N | slimwalk R C
        name: String,
        params: Vec<usize>,
        /// Cumulant hypergraph with every subset of size at least 2.
        #[arg(long)]
        full: bool,
        /// For groupbased16, emit the degree-4 walk instead.
        #[arg(long)]
        walk: bool,
    },
    /// Re-check a certificate document.
    Verify {
        #[arg(default_value = "-")]
        certificate: String,
    },
}

#[derive(Args)]
struct SplitArgs {
    /// Largest splitting set tried (default: walk degree − 1).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    size_cap: Option<u64>,
    /// Largest multiplicity of an edge in a splitting set.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    mult_cap: u32,
    /// Drop both caps; the degree bound alone keeps the search finite.
    #[arg(long, conflicts_with_all = ["size_cap"])]
    exhaustive: bool,
}

impl SplitArgs {
    fn caps(&self, w: &BalancedEdgeSet) -> SplitCaps {
        if self.exhaustive {
            return SplitCaps::exhaustive();
        }
        let size = self
            .size_cap
            .map_or(w.degree().saturating_sub(1), |s| s as usize);
        SplitCaps::new(size, self.mult_cap)
    }
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: EXIT_INPUT,
            error: e.into(),
        }
    }
}

struct Output {
    doc: Value,
    code: u8,
}

fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_json(path: &str) -> Result<Value> {
    let text = read_source(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {path} as JSON"))
}

fn schema(v: &Value) -> Result<&str> {
    schema_of(v).ok_or_else(|| anyhow!("document has no \"schema\" field"))
}

/// The hypergraph of a hypergraph, walk or certificate document.
fn hypergraph_of(v: &Value) -> Result<Option<Hypergraph>> {
    let doc: Option<HypergraphDoc> = match schema(v)? {
        SCHEMA_HYPERGRAPH => Some(serde_json::from_value(v.clone())?),
        SCHEMA_WALK | SCHEMA_CERTIFICATE => match v.get("hypergraph") {
            Some(h) => Some(serde_json::from_value(h.clone())?),
            None => None,
        },
        _ => None,
    };
    Ok(doc.map(|d| d.to_hypergraph()).transpose()?)
}

fn load_hypergraph(input: &Input) -> Result<(Hypergraph, Value)> {
    let v = read_json(&input.input)?;
    let h = hypergraph_of(&v)?.ok_or_else(|| anyhow!("{} carries no hypergraph", input.input))?;
    Ok((h, v))
}

/// Decodes a walk or binomial document against `h`.
fn decode_walk(h: &Hypergraph, v: &Value) -> Result<BalancedEdgeSet> {
    let w = match schema(v)? {
        SCHEMA_WALK => serde_json::from_value::<WalkDoc>(v.clone())?.decode(h)?,
        SCHEMA_BINOMIAL => {
            let b = serde_json::from_value::<BinomialDoc>(v.clone())?.decode(h)?;
            BalancedEdgeSet::new(b.plus().clone(), b.minus().clone())
        }
        other => bail!("expected a walk or binomial document, found schema {other:?}"),
    };
    w.check_balanced(h)?;
    Ok(w)
}

fn load_walk(args: &WalkInput) -> Result<(Hypergraph, BalancedEdgeSet)> {
    let (h, v) = load_hypergraph(&args.input)?;
    let w = match &args.walk {
        Some(path) => decode_walk(&h, &read_json(path)?)?,
        None if schema(&v)? == SCHEMA_WALK => decode_walk(&h, &v)?,
        None => bail!("no walk given: pass --walk or pipe a walk document"),
    };
    Ok((h, w))
}

fn to_value<T: serde::Serialize>(t: &T) -> Result<Value> {
    Ok(serde_json::to_value(t)?)
}

fn incomplete_code(strict: bool, incomplete: bool) -> u8 {
    if strict && incomplete {
        EXIT_INCOMPLETE
    } else {
        0
    }
}

fn family(name: &str, params: &[usize], full: bool, walk: bool) -> Result<Value> {
    let arity = |n: usize| -> Result<()> {
        if params.len() != n {
            bail!("family {name} takes {n} parameter(s), got {}", params.len());
        }
        Ok(())
    };
    let doc = match name {
        "kpartite" => {
            arity(2)?;
            let (k, d) = (params[0], params[1]);
            to_value(&HypergraphDoc::new(
                &complete_kpartite(k, d)?,
                Some(FamilySpec::Kpartite { k, d }),
            ))?
        }
        "no3way" => {
            arity(3)?;
            let (a, b, c) = (params[0], params[1], params[2]);
            to_value(&HypergraphDoc::new(
                &no_three_way(a, b, c)?,
                Some(FamilySpec::No3way { a, b, c }),
            ))?
        }
        "groupbased16" => {
            arity(0)?;
            let h = group_based_16();
            let hd = HypergraphDoc::new(&h, Some(FamilySpec::Groupbased16));
            if walk {
                to_value(&WalkDoc::new(&h, &group_based_walk(&h), Some(hd)))?
            } else {
                to_value(&hd)?
            }
        }
        "cumulant" => {
            arity(1)?;
            let n = params[0];
            to_value(&HypergraphDoc::new(
                &cumulant_hypergraph(n, full)?,
                Some(FamilySpec::Cumulant { n, full }),
            ))?
        }
        "slimwalk" => {
            arity(2)?;
            let (r, c) = (params[0], params[1]);
            let h = no_three_way(2, r, c)?;
            let hd = HypergraphDoc::new(&h, Some(FamilySpec::Slimwalk { r, c }));
            to_value(&WalkDoc::new(&h, &slim_table_walk(r, c)?, Some(hd)))?
        }
        other => {
            bail!("unknown family {other:?} (kpartite, no3way, groupbased16, cumulant, slimwalk)")
        }
    };
    Ok(doc)
}

fn run(cli: &Cli) -> std::result::Result<Output, Failure> {
    let ok = |doc: Value| Ok(Output { doc, code: 0 });
    match &cli.command {
        Command::Graver { input, cap } => {
            let (h, _) = load_hypergraph(input)?;
            let cap = *cap as usize;
            ok(to_value(&BasisDoc::graver(
                &h,
                &graver_basis(&h, cap)?,
                cap,
            ))?)
        }
        Command::Markov { input, cap } => {
            let (h, _) = load_hypergraph(input)?;
            let cap = *cap as usize;
            let basis = markov_basis(&h, cap)?;
            let code = incomplete_code(cli.strict, basis.incomplete);
            Ok(Output {
                doc: to_value(&BasisDoc::markov(&h, &basis, cap))?,
                code,
            })
        }
        Command::Width { input, cap } => {
            let (h, _) = load_hypergraph(input)?;
            let cap = *cap as usize;
            let basis = markov_basis(&h, cap)?;
            let doc = json!({
                "schema": SCHEMA_BASIS,
                "kind": "width",
                "degree_cap": cap,
                "width": basis.max_degree,
                "complete_to_degree": basis.complete_to_degree,
                "incomplete": basis.incomplete,
            });
            Ok(Output {
                doc,
                code: incomplete_code(cli.strict, basis.incomplete),
            })
        }
        Command::Indispensable { walk, cap } => {
            let (h, w) = load_walk(walk)?;
            let b = w.binomial(&h)?;
            let mut doc = to_value(&BinomialDoc::new(&h, &b))?;
            doc["degree_cap"] = json!(cap);
            match is_indispensable(&h, &b, *cap as usize) {
                Ok(flag) => {
                    doc["indispensable"] = json!(flag);
                    ok(doc)
                }
                Err(CoreError::CapExceeded { needed, .. }) => {
                    doc["indispensable"] = Value::Null;
                    doc["cap_needed"] = json!(needed);
                    Ok(Output {
                        doc,
                        code: incomplete_code(cli.strict, true),
                    })
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Split { walk, caps } => {
            let (h, w) = load_walk(walk)?;
            let search = find_splitting_sets(&h, &w, caps.caps(&w))?;
            let code = incomplete_code(cli.strict, !search.exhaustive);
            Ok(Output {
                doc: to_value(&CertificateDoc::splitting_sets(&h, &w, &search))?,
                code,
            })
        }
        Command::Certify {
            walk,
            caps,
            d,
            n_cap,
            sequences_only,
            max_states,
            max_terminal_checks,
        } => {
            let (h, w) = load_walk(walk)?;
            let certificate_caps = CertificateCaps {
                max_steps: *n_cap as usize,
                split: caps.caps(&w),
                condition_i: !sequences_only,
                max_states: *max_states as usize,
                max_terminal_checks: *max_terminal_checks as usize,
            };
            let search = if h.is_uniform().is_some() {
                let d = d.unwrap_or(w.degree().saturating_sub(1));
                find_degree_certificate(&h, &w, d, certificate_caps)?
            } else {
                check_nonuniform_conditions(&h, &w, certificate_caps)?
            };
            let doc = CertificateDoc::degree(
                &h,
                &w,
                &search.caps,
                search.truncated,
                search.certificate.as_ref(),
            )?;
            let code = incomplete_code(cli.strict, search.truncated);
            Ok(Output {
                doc: to_value(&doc)?,
                code,
            })
        }
        Command::Family {
            name,
            params,
            full,
            walk,
        } => ok(family(name, params, *full, *walk)?),
        Command::Verify { certificate } => {
            let v = read_json(certificate)?;
            if schema(&v)? != SCHEMA_CERTIFICATE {
                return Err(anyhow!(
                    "expected a certificate document, found schema {:?}",
                    schema(&v)?
                )
                .into());
            }
            let doc: CertificateDoc = serde_json::from_value(v)?;
            let (valid, reason) = match doc.verify() {
                Ok(()) => (true, None),
                Err(e) => (false, Some(e.to_string())),
            };
            let out = json!({ "schema": SCHEMA_CERTIFICATE, "kind": "verification", "valid": valid, "reason": reason });
            Ok(Output {
                doc: out,
                code: if valid { 0 } else { EXIT_VERIFY },
            })
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(raw) = std::env::var("HYPERTORIC_THREADS") {
        let n: usize = raw
            .trim()
            .parse()
            .with_context(|| format!("HYPERTORIC_THREADS={raw:?}"))?;
        if n == 0 {
            bail!("HYPERTORIC_THREADS must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn emit(mut doc: Value, seed: Option<u64>) -> Result<()> {
    if let (Some(seed), Some(obj)) = (seed, doc.as_object_mut()) {
        obj.insert("seed".into(), json!(seed));
    }
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_INPUT);
    }
    match run(&cli) {
        Ok(Output { doc, code }) => {
            if let Err(e) = emit(doc, cli.seed) {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_INPUT);
            }
            if code == EXIT_VERIFY {
                eprintln!("verification failed");
            } else if code == EXIT_INCOMPLETE {
                eprintln!("result is incomplete under the given caps");
            }
            ExitCode::from(code)
        }
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
