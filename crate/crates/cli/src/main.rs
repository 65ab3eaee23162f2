mod report;

use std::io::{Read, Write};
use std::process::ExitCode;

use arrzeta::corpus::{corpus, entry, CorpusEntry};
use arrzeta::igusa::{good_reduction, igusa_zeta, igusa_zeta_at_prime, igusa_zeta_local};
use arrzeta::lattice::build_lattice;
use arrzeta::parse::parse_rational;
use arrzeta::symbolic::fmt_q;
use arrzeta::{parse_arrangement, Arrangement, Error};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use report::{
    brute_section, build_report, conjecture_with_literature, igusa_section, lattice_summary, run_entry, zeta_section, Options,
};

#[derive(Parser)]
#[command(name = "arrzeta", version, about = "Zeta functions and monodromy data of hyperplane arrangements")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection lattice with Mobius values and dense flags.
    Lattice { input: String },
    /// Dense edges only.
    DenseEdges { input: String },
    /// Topological zeta function, candidate poles and certificates.
    ZetaTop {
        input: String,
        /// Localize at this point first, e.g. `0,1/2`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Igusa zeta function.
    Igusa(IgusaArgs),
    /// Status of every dense-edge candidate root.
    ConjectureReport {
        input: String,
        /// Exit with status 3 if any candidate is unverified.
        #[arg(long)]
        strict: bool,
    },
    /// Full report.
    Report {
        input: String,
        #[command(flatten)]
        checks: CheckArgs,
    },
    /// Run every corpus entry and check its annotations.
    Corpus {
        #[command(flatten)]
        checks: CheckArgs,
        /// Only list the entries.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
struct IgusaArgs {
    input: String,
    #[arg(long)]
    prime: Option<u64>,
    /// Print the function with `p` symbolic.
    #[arg(long)]
    symbolic_p: bool,
    /// Integrate over the maximal ideal instead of the full polydisc.
    #[arg(long)]
    local: bool,
    /// Enclose the integral by enumerating residues (needs --prime).
    #[arg(long)]
    brute_force: bool,
    #[arg(long, default_value_t = 3)]
    depth: u32,
    /// Positive integer exponent, `t = p^-s`.
    #[arg(long, default_value_t = 1)]
    s: u32,
}

#[derive(Args, Clone)]
struct CheckArgs {
    /// Primes at which to compute the Igusa zeta function.
    #[arg(long = "igusa")]
    primes: Vec<u64>,
    /// Compare with residue enumeration, e.g. `depth=3`.
    #[arg(long, value_parser = parse_depth)]
    brute_check: Option<u32>,
    /// Check the `p -> 1` limit against the topological zeta function.
    #[arg(long)]
    specialize: bool,
}

impl CheckArgs {
    fn options(&self) -> Options {
        Options { primes: self.primes.clone(), brute_depth: self.brute_check, specialize: self.specialize }
    }
}

fn parse_depth(s: &str) -> Result<u32, String> {
    let v = s.strip_prefix("depth=").unwrap_or(s);
    v.parse().map_err(|_| format!("expected depth=<k>, got `{s}`"))
}

enum Failure {
    Input(String),
    Invariant(String),
    Strict(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_invariant_violation() {
            Failure::Invariant(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Out = Result<(), Failure>;

fn load(input: &str) -> Result<(Arrangement, Option<CorpusEntry>), Failure> {
    if let Some(name) = input.strip_prefix("corpus:") {
        let e = entry(name)?;
        return Ok((e.arrangement(), Some(e)));
    }
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(e.to_string()))?;
        s
    } else if std::path::Path::new(input).is_file() {
        std::fs::read_to_string(input).map_err(|e| Failure::Input(format!("{input}: {e}")))?
    } else {
        input.to_string()
    };
    Ok((parse_arrangement(&text)?, None))
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    let out = if json { serde_json::to_string_pretty(value).expect("serializable") + "\n" } else { text() };
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn parse_point(s: &str, n: usize) -> Result<Vec<arrzeta::symbolic::Q>, Failure> {
    let pt: Option<Vec<_>> = s.split(',').map(parse_rational).collect();
    let pt = pt.ok_or_else(|| Failure::Input(format!("bad point `{s}`")))?;
    if pt.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: pt.len() }.into());
    }
    Ok(pt)
}

fn cmd_lattice(input: &str, json: bool, dense_only: bool) -> Out {
    let (a, _) = load(input)?;
    let l = build_lattice(&a)?;
    let mut s = lattice_summary(&a, &l)?;
    if dense_only {
        s.edges.retain(|e| e.dense);
    }
    emit(json, &s, || {
        let mut out = String::new();
        for e in &s.edges {
            out += &format!(
                "edge {:>3}  dim {}  support {:?}  a_W {}  mu {:>3}  {}\n",
                e.id,
                e.dim,
                e.support,
                e.a_w,
                e.mobius,
                if e.dense { "dense" } else { "" }
            );
        }
        if !dense_only {
            out += &format!("poincare {}\neuler {}\nmatroid parts {:?}\n", s.poincare, s.euler, s.matroid_parts);
        }
        out
    });
    Ok(())
}

fn cmd_zeta_top(input: &str, point: Option<&str>, json: bool) -> Out {
    let (a, _) = load(input)?;
    let a = match point {
        Some(p) => {
            let x0 = parse_point(p, a.dim())?;
            a.localize_at(&x0)?
        }
        None => a,
    };
    a.require_central()?;
    let l = build_lattice(&a)?;
    let z = zeta_section(&a, &l)?;
    emit(json, &z, || {
        let mut out = format!("Z_top = {}\n", z.zeta_top);
        for p in &z.poles {
            out += &format!("pole {} order {}\n", p.value, p.order);
        }
        for c in &z.candidates {
            out += &format!("candidate edge {} codim {} a_W {} value {}\n", c.edge_id, c.codim, c.a_w, fmt_q(&c.value));
        }
        for c in &z.certificates {
            out += &format!(
                "certificate pole {} witness edge {} eigenvalue class {}\n",
                fmt_q(&c.pole),
                c.witness_edge,
                fmt_q(&c.eigenvalue_class)
            );
        }
        out
    });
    Ok(())
}

#[derive(Serialize)]
struct IgusaOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    symbolic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pole_real_parts: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prime: Option<report::IgusaSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute_force: Option<report::BruteSection>,
}

fn cmd_igusa(args: &IgusaArgs, json: bool) -> Out {
    let (a, _) = load(&args.input)?;
    let mut out = IgusaOut { symbolic: None, pole_real_parts: None, prime: None, brute_force: None };
    let z = if args.local { igusa_zeta_local(&a)? } else { igusa_zeta(&a)? };
    if args.symbolic_p || args.prime.is_none() {
        out.symbolic = Some(z.to_string());
        out.pole_real_parts = Some(z.pole_real_parts().iter().map(fmt_q).collect());
    }
    if let Some(p) = args.prime {
        if args.brute_force {
            if !good_reduction(&a, p)?.ok {
                return Err(Error::BadReduction(p).into());
            }
            let b = brute_section(&a, p, args.depth, args.s)?;
            if !b.contained {
                return Err(Failure::Invariant(format!("exact value {} outside the enclosure", b.exact)));
            }
            out.brute_force = Some(b);
        } else {
            let mut sec = igusa_section(&a, p, None)?;
            if !sec.good_reduction.ok {
                return Err(Error::BadReduction(p).into());
            }
            sec.zeta = Some(igusa_zeta_at_prime(&a, p, args.local)?.to_string());
            out.prime = Some(sec);
        }
    } else if args.brute_force {
        return Err(Failure::Input("--brute-force needs --prime".into()));
    }
    emit(json, &out, || {
        let mut s = String::new();
        if let Some(z) = &out.symbolic {
            s += &format!("Z = {z}\n");
        }
        if let Some(r) = &out.pole_real_parts {
            s += &format!("pole real parts {}\n", r.join(", "));
        }
        if let Some(sec) = &out.prime {
            s += &format!("p = {}: good reduction\nZ = {}\n", sec.prime, sec.zeta.as_deref().unwrap_or(""));
        }
        if let Some(b) = &out.brute_force {
            s += &format!(
                "p = {} depth {} s = {}: [{}, {}] exact {} contained {}\n",
                b.enclosure.prime,
                b.enclosure.depth,
                b.enclosure.s,
                fmt_q(&b.enclosure.lower),
                fmt_q(&b.enclosure.upper),
                b.exact,
                b.contained
            );
        }
        s
    });
    Ok(())
}

fn cmd_conjecture(input: &str, strict: bool, json: bool) -> Out {
    let (a, e) = load(input)?;
    let rep = conjecture_with_literature(&a, e.as_ref())?;
    emit(json, &rep, || {
        let mut s = format!("moderate {}\n", rep.moderate.moderate);
        for r in &rep.edges {
            s += &format!("edge {:>3}  candidate {:>6}  {:?}  {}\n", r.edge_id, fmt_q(&r.candidate), r.status, r.evidence);
            if let Some(l) = &r.literature {
                s += &format!("           literature: {l}\n");
            }
        }
        s
    });
    if strict && !rep.all_verified() {
        return Err(Failure::Strict("some candidates are only conditional".into()));
    }
    Ok(())
}

fn cmd_report(input: &str, checks: &CheckArgs, json: bool) -> Out {
    let (a, e) = load(input)?;
    let rep = build_report(&a, e.as_ref(), &checks.options())?;
    if rep.annotations.iter().any(|c| !c.ok) {
        emit(json, &rep, String::new);
        return Err(Failure::Invariant("annotation mismatch".into()));
    }
    emit(json, &rep, || {
        let mut s = format!("degree {}  central {}  essential {}\n", rep.degree, rep.central, rep.essential);
        s += &format!(
            "edges {}  dense {}  euler {}  decomposable {}\n",
            rep.lattice.edges.len(),
            rep.lattice.edges.iter().filter(|e| e.dense).count(),
            rep.lattice.euler,
            rep.lattice.decomposable
        );
        s += &format!("Z_top = {}\n", rep.zeta.zeta_top);
        let poles: Vec<String> = rep.zeta.poles.iter().map(|p| format!("{} ({})", p.value, p.order)).collect();
        s += &format!("poles {}\n", poles.join(", "));
        if let Some(m) = &rep.monodromy {
            s += &format!("monodromy zeta {m}\n");
        }
        s += &format!("moderate {}\n", rep.conjecture.moderate.moderate);
        for r in &rep.conjecture.edges {
            s += &format!("  edge {:>3}  {:>6}  {:?}\n", r.edge_id, fmt_q(&r.candidate), r.status);
        }
        for g in &rep.igusa {
            match &g.zeta {
                Some(z) => s += &format!("igusa p={}: {}\n", g.prime, z),
                None => s += &format!("igusa p={}: bad reduction\n", g.prime),
            }
        }
        if let Some(b) = &rep.bridge {
            s += &format!("p -> 1 limit {}\n", b.limit);
        }
        for c in &rep.annotations {
            s += &format!("annotation {} = {}: ok\n", c.key, c.expected);
        }
        s
    });
    Ok(())
}

fn cmd_corpus(checks: &CheckArgs, list: bool, json: bool) -> Out {
    let entries = corpus();
    if list {
        let names: Vec<&str> = entries.iter().map(|e| e.name).collect();
        emit(json, &names, || names.iter().map(|n| format!("{n}\n")).collect());
        return Ok(());
    }
    let opts = checks.options();
    let outcomes: Vec<_> = entries.par_iter().map(|e| run_entry(e, &opts)).collect();
    emit(json, &outcomes, || {
        let mut s = String::new();
        for o in &outcomes {
            s += &format!("{:<24} {}\n", o.name, if o.passed { "pass" } else { "FAIL" });
            for f in &o.failures {
                s += &format!("    {f}\n");
            }
        }
        let passed = outcomes.iter().filter(|o| o.passed).count();
        s += &format!("{passed}/{} entries pass\n", outcomes.len());
        s
    });
    if outcomes.iter().all(|o| o.passed) {
        Ok(())
    } else {
        Err(Failure::Invariant("corpus checks failed".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let res = match &cli.command {
        Command::Lattice { input } => cmd_lattice(input, json, false),
        Command::DenseEdges { input } => cmd_lattice(input, json, true),
        Command::ZetaTop { input, point } => cmd_zeta_top(input, point.as_deref(), json),
        Command::Igusa(args) => cmd_igusa(args, json),
        Command::ConjectureReport { input, strict } => cmd_conjecture(input, *strict, json),
        Command::Report { input, checks } => cmd_report(input, checks, json),
        Command::Corpus { checks, list } => cmd_corpus(checks, *list, json),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(m)) => {
            eprintln!("invariant violation: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Strict(m)) => {
            eprintln!("{m}");
            ExitCode::from(3)
        }
    }
}
