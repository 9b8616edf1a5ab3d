use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use rccloop::brute::{enumerate_loops, summary_line, SearchConfig};
use rccloop::constructions::{enumerate_2p, verify_structure, VerifyMode};
use rccloop::counting::{ind_count, ind_count_brute, total_rcc_count};
use rccloop::gl2_series::gl2_loop_report;
use rccloop::inventory::{Case, EnvelopeStats, Flags};
use rccloop::loops::LoopTable;
use rccloop::perm::set_closure_cap;
use rccloop::verify::{run_suite, Tier};
use rccloop::Error;

#[derive(Parser, Debug)]
#[command(name = "rccloop", version, about = "Construct, count and verify RCC loops")]
struct Cli {
    /// Emit the run manifest as JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the full result as JSON to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of RCC loops of order 2p.
    Count {
        #[arg(long)]
        p: u64,
    },
    /// Involutions and identity of S_n commuting with the d-th power of an n-cycle.
    Ind {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        /// Also count by enumerating all permutations.
        #[arg(long)]
        brute: bool,
    },
    /// Every RCC loop of order 2p.
    Enumerate {
        #[arg(long)]
        p: u64,
        /// Prove pairwise non-isomorphism and check the envelope structure.
        #[arg(long)]
        verify_iso: bool,
        /// Directory for one Cayley table file per class.
        #[arg(long)]
        emit_tables: Option<PathBuf>,
    },
    /// The loop of order q^2 - 1 built inside GL(2,q).
    Gl2 {
        #[arg(long)]
        q: u64,
    },
    /// Exhaustive search for loops of a given order.
    Brute {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        rcc_only: bool,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Classify a Cayley table read from a text or JSON file.
    Check {
        #[arg(long)]
        file: PathBuf,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, value_enum, default_value_t = TierArg::Standard)]
        tier: TierArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TierArg {
    Quick,
    Standard,
    Full,
}

impl From<TierArg> for Tier {
    fn from(t: TierArg) -> Tier {
        match t {
            TierArg::Quick => Tier::Quick,
            TierArg::Standard => Tier::Standard,
            TierArg::Full => Tier::Full,
        }
    }
}

#[derive(Serialize)]
struct RunManifest {
    subcommand: &'static str,
    parameters: Value,
    version: &'static str,
    wall_time_ms: u128,
    status: &'static str,
    result: Value,
    outputs: Vec<String>,
}

/// What a subcommand produced: a short summary for the manifest, the full
/// artifact for `--out`, human-readable lines, and whether it verified.
struct Outcome {
    summary: Value,
    artifact: Value,
    lines: Vec<String>,
    ok: bool,
    outputs: Vec<String>,
}

impl Outcome {
    fn new(summary: Value, artifact: Value, lines: Vec<String>) -> Self {
        Outcome {
            summary,
            artifact,
            lines,
            ok: true,
            outputs: Vec::new(),
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn count(p: u64) -> Result<Outcome, Error> {
    let r = total_rcc_count(p)?;
    let mut lines = vec![format!("p {p}"), format!("total {}", r.total)];
    if let Some(s) = &r.split {
        lines.push(format!("case_a {}", s.case_a));
        lines.push(format!("case_b {}", s.case_b));
        lines.push(format!("case_c {}", s.case_c));
    }
    let v = to_value(&r);
    Ok(Outcome::new(v.clone(), v, lines))
}

fn ind(n: u64, d: u64, brute: bool) -> Result<Outcome, Error> {
    let value = ind_count(n, d)?;
    let mut summary = json!({ "n": n, "d": d, "value": value.to_string() });
    let mut lines = vec![format!("I({n},{d}) = {value}")];
    let mut ok = true;
    if brute {
        let b = ind_count_brute(n as usize, d as usize)?;
        ok = value == b.into();
        summary["brute"] = json!(b);
        summary["agree"] = json!(ok);
        lines.push(format!("brute force {b} ({})", if ok { "agrees" } else { "DISAGREES" }));
    }
    let mut o = Outcome::new(summary.clone(), summary, lines);
    o.ok = ok;
    Ok(o)
}

fn enumerate(p: u64, verify_iso: bool, emit: Option<&Path>) -> Result<Outcome, Error> {
    let mode = if verify_iso {
        VerifyMode::FullIso
    } else {
        VerifyMode::CountsOnly
    };
    let inv = enumerate_2p(p, mode)?;
    let structure = if verify_iso {
        Some(verify_structure(&inv)?)
    } else {
        None
    };
    let counts = [Case::A, Case::B, Case::C].map(|c| inv.count_case(c));
    let nonassoc_cc = inv
        .entries
        .iter()
        .filter(|e| e.flags.rcc && e.flags.lcc && !e.flags.associative)
        .count();
    let summary = json!({
        "p": p,
        "classes": inv.len(),
        "case_a": counts[0],
        "case_b": counts[1],
        "case_c": counts[2],
        "associative": inv.entries.iter().filter(|e| e.flags.associative).count(),
        "nonassociative_cc": nonassoc_cc,
        "pairwise_non_isomorphic": verify_iso,
        "structure_checks_passed": structure.as_ref().map(|s| s.all_pass()),
    });
    let mut lines = vec![format!(
        "p={p} classes={} a={} b={} c={}",
        inv.len(),
        counts[0],
        counts[1],
        counts[2]
    )];
    if verify_iso {
        lines.push("pairwise non-isomorphic; all structure checks passed".into());
    }
    let mut o = Outcome::new(
        summary,
        json!({ "inventory": inv, "structure": structure }),
        lines,
    );
    if let Some(dir) = emit {
        fs::create_dir_all(dir)?;
        for (name, text) in inv.table_files() {
            let path = dir.join(name);
            fs::write(&path, text)?;
            o.outputs.push(path.display().to_string());
        }
    }
    Ok(o)
}

fn gl2(q: u64) -> Result<Outcome, Error> {
    let r = gl2_loop_report(q)?;
    let summary = json!({
        "q": q,
        "loop_order": r.loop_order,
        "group_order": r.group_order,
        "envelope_order": r.envelope_order,
        "soluble": r.soluble,
        "rcc": r.rcc,
        "lcc": r.lcc,
        "passes": r.passes(),
    });
    let lines = vec![
        format!(
            "q={q} loop_order={} envelope_order={} soluble={} rcc={} lcc={}",
            r.loop_order, r.envelope_order, r.soluble, r.rcc, r.lcc
        ),
        format!("checks {}", if r.passes() { "passed" } else { "FAILED" }),
    ];
    let mut o = Outcome::new(summary, to_value(&r), lines);
    o.ok = r.passes();
    Ok(o)
}

fn brute(order: usize, rcc_only: bool, budget: Option<u64>, width: usize) -> Result<Outcome, Error> {
    let cfg = SearchConfig {
        time_budget: budget,
        parallel_width: width,
        ..SearchConfig::new(order, rcc_only)
    };
    let inv = enumerate_loops(&cfg)?;
    let line = summary_line(&inv);
    let summary = json!({
        "order": order,
        "rcc_only": rcc_only,
        "classes": inv.len(),
        "rcc": inv.entries.iter().filter(|e| e.flags.rcc).count(),
        "assoc": inv.entries.iter().filter(|e| e.flags.associative).count(),
    });
    Ok(Outcome::new(summary, to_value(&inv), vec![line]))
}

fn check(file: &Path) -> Result<Outcome, Error> {
    let text = fs::read_to_string(file)?;
    let table = match LoopTable::parse(&text) {
        Ok(t) => t,
        Err(Error::InvalidTable(reason)) => {
            let summary = json!({ "loop": false, "reason": reason });
            let mut o = Outcome::new(summary.clone(), summary, vec![format!("not a loop: {reason}")]);
            o.ok = false;
            return Ok(o);
        }
        Err(e) => return Err(e),
    };
    let flags = Flags::of(&table);
    let env = EnvelopeStats::of(&table)?;
    let summary = json!({
        "loop": true,
        "order": table.order(),
        "rcc": flags.rcc,
        "lcc": flags.lcc,
        "group": flags.associative,
        "commutative": table.is_commutative(),
        "envelope": env,
    });
    let lines = vec![
        format!("loop of order {}", table.order()),
        format!(
            "rcc={} lcc={} group={} commutative={}",
            flags.rcc,
            flags.lcc,
            flags.associative,
            table.is_commutative()
        ),
        format!(
            "envelope order={} soluble={} block_found={}",
            env.group_order, env.soluble, env.block_found
        ),
    ];
    Ok(Outcome::new(summary.clone(), summary, lines))
}

fn verify(tier: Tier) -> Outcome {
    let results = run_suite(tier);
    let ok = results.iter().all(|r| r.passed || r.optional);
    let lines = results
        .iter()
        .map(|r| {
            format!(
                "{} {} {}: {} ({} ms)",
                match (r.passed, r.optional) {
                    (true, _) => "PASS",
                    (false, false) => "FAIL",
                    (false, true) => "MISS",
                },
                r.id,
                r.name,
                r.detail,
                r.millis
            )
        })
        .collect();
    let summary = json!({
        "tier": tier,
        "passed": results.iter().filter(|r| r.passed).count(),
        "failed": results.iter().filter(|r| !r.passed && !r.optional).count(),
        "optional_missed": results.iter().filter(|r| !r.passed && r.optional).count(),
    });
    let mut o = Outcome::new(summary, to_value(&results), lines);
    o.ok = ok;
    o
}

fn exit_code_for(e: &Error) -> u8 {
    if e.is_verification_failure() || matches!(e, Error::BudgetExceeded { .. }) {
        1
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("RCCLOOP_MAX_GROUP") {
        match v.parse::<usize>() {
            Ok(cap) => set_closure_cap(cap),
            Err(_) => {
                eprintln!("RCCLOOP_MAX_GROUP must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        eprintln!("--threads must be positive");
        return ExitCode::from(2);
    }
    // Fails only if a pool already exists, which cannot happen here.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();

    let start = Instant::now();
    let (name, parameters, outcome) = match &cli.command {
        Command::Count { p } => ("count", json!({ "p": p }), count(*p)),
        Command::Ind { n, d, brute } => ("ind", json!({ "n": n, "d": d, "brute": brute }), ind(*n, *d, *brute)),
        Command::Enumerate { p, verify_iso, emit_tables } => (
            "enumerate",
            json!({ "p": p, "verify_iso": verify_iso, "emit_tables": emit_tables }),
            enumerate(*p, *verify_iso, emit_tables.as_deref()),
        ),
        Command::Gl2 { q } => ("gl2", json!({ "q": q }), gl2(*q)),
        Command::Brute { order, rcc_only, budget } => (
            "brute",
            json!({ "order": order, "rcc_only": rcc_only, "budget": budget, "threads": threads }),
            brute(*order, *rcc_only, *budget, threads),
        ),
        Command::Check { file } => ("check", json!({ "file": file }), check(file)),
        Command::Verify { tier } => {
            let tier = Tier::from(*tier);
            ("verify", json!({ "tier": tier }), Ok(verify(tier)))
        }
    };

    let (status, code, result, mut outputs) = match outcome {
        Ok(mut o) => {
            if let Some(path) = &cli.out {
                let text = serde_json::to_string_pretty(&o.artifact).expect("serializable");
                if let Err(e) = fs::write(path, text + "\n") {
                    eprintln!("cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
                o.outputs.insert(0, path.display().to_string());
            }
            if !cli.json {
                for line in &o.lines {
                    println!("{line}");
                }
            }
            let (status, code) = if o.ok { ("ok", 0) } else { ("failed", 1) };
            (status, code, o.summary, o.outputs)
        }
        Err(e) => {
            let code = exit_code_for(&e);
            eprintln!("error: {e}");
            let status = if code == 1 { "failed" } else { "error" };
            (status, code, json!({ "error": e.to_string() }), Vec::new())
        }
    };
    if cli.json {
        outputs.sort();
        let manifest = RunManifest {
            subcommand: name,
            parameters,
            version: env!("CARGO_PKG_VERSION"),
            wall_time_ms: start.elapsed().as_millis(),
            status,
            result,
            outputs,
        };
        println!("{}", serde_json::to_string(&manifest).expect("serializable"));
    }
    ExitCode::from(code)
}
