//! `cutspec`: evaluate cuts and quasi-valuations, enumerate spectra and run
//! the verification suite.
//!
//! Exit codes: 0 success, 1 a conformance check failed, 2 bad input.

mod expr;
mod instance;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cutspec::algebra::Algebra;
use cutspec::field_model::spec_base;
use cutspec::fixtures::{self, Fixture};
use cutspec::json::{cut_or_infty_to_json, cut_to_json, element_to_json, ideal_to_json};
use cutspec::ordered_values::GroupDescriptor;
use cutspec::quasival::{filter, min_formula_qv, minimal_generators, minimal_generators_from, QuasiValuation};
use cutspec::spectrum::{enumerate_spec, ContractionMap, DEFAULT_BOUND};
use cutspec::verdict::Verdict;
use cutspec::verify::{map_entries, verify_all, VerifyOptions};
use serde_json::{json, Value};

use instance::Which;

#[derive(Parser)]
#[command(name = "cutspec", version, about = "Cut monoids, quasi-valuations and prime spectra over lexicographic value groups")]
struct Cli {
    /// Directory whose `<name>.json` files replace the shipped fixtures.
    #[arg(long, global = true, env = "CUTSPEC_FIXTURES")]
    fixture_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a cut expression, e.g. `prefix([3]) + principal([0,7])`.
    Cut {
        expr: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
    },
    /// Evaluate the filter and/or min-formula quasi-valuation on an element.
    Qv {
        /// Fixture name or instance file.
        #[arg(long)]
        instance: String,
        /// Element JSON (coordinate list or position map), or `@file`.
        #[arg(long)]
        element: String,
        #[arg(long, value_enum)]
        which: Option<Which>,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Enumerate Spec(R) and its contraction to Spec(O_v); without an
    /// instance, print the chain Spec(O_v).
    Spec {
        #[arg(long)]
        instance: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
        /// Plain text instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Run the verification suite on `all` shipped fixtures, one fixture, or
    /// an instance file.
    Verify {
        #[arg(default_value = "all")]
        target: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Input problems; always exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Run = Result<ExitCode, InputError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let dir = cli.fixture_dir.as_deref();
    let out = match cli.command {
        Command::Cut { expr, rank } => cmd_cut(&expr, rank),
        Command::Qv { instance, element, which, rank } => cmd_qv(dir, &instance, &element, which, rank),
        Command::Spec { instance, rank, bound, text } => cmd_spec(dir, instance.as_deref(), rank, bound, text),
        Command::Verify { target, rank, samples, seed, bound, report } => {
            cmd_verify(dir, &target, rank, samples, seed, bound, report.as_deref())
        }
    };
    out.unwrap_or_else(|InputError(msg)| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("json"));
}

fn cmd_cut(src: &str, rank: usize) -> Run {
    GroupDescriptor::new(rank)?;
    let c = expr::parse_cut(src, rank).map_err(|e| InputError(e.render(src)))?;
    print_json(&cut_or_infty_to_json(&c));
    Ok(ExitCode::SUCCESS)
}

fn cmd_qv(dir: Option<&Path>, inst: &str, element: &str, which: Option<Which>, rank: Option<usize>) -> Run {
    let inst = instance::load(inst, dir, rank)?;
    let fx = &inst.fixture;
    let r = &fx.algebra;
    let x = instance::parse_element(r, element)?;
    let which = which.or(inst.qv).unwrap_or(Which::Both);

    let min_formula = || -> Result<Value, cutspec::Error> {
        let basis = match &fx.generators {
            Some(gs) => minimal_generators_from(r, gs)?,
            None => minimal_generators(r)?,
        };
        Ok(cut_or_infty_to_json(&min_formula_qv(r, basis).evaluate(&x)?))
    };
    let filter_value = || filter(r).evaluate(&x).map(|v| cut_or_infty_to_json(&v));

    let mut out = json!({"instance": fx.name, "element": element_to_json(&x)});
    match which {
        Which::Filter => {
            out["qv"] = "filter".into();
            out["value"] = filter_value()?;
        }
        Which::MinFormula => {
            out["qv"] = "min_formula".into();
            out["value"] = min_formula()?;
        }
        Which::Both => {
            out["filter"] = filter_value()?;
            match min_formula() {
                Ok(v) => out["min_formula"] = v,
                Err(e) => {
                    out["min_formula"] = Value::Null;
                    out["min_formula_unavailable"] = e.to_string().into();
                }
            }
        }
    }
    print_json(&out);
    Ok(ExitCode::SUCCESS)
}

/// Pairs `(i, j)` with node `i` strictly below `j` and nothing in between.
fn covers(m: &ContractionMap) -> Vec<(usize, usize)> {
    let n = m.len();
    let mut out = vec![];
    for i in 0..n {
        for j in 0..n {
            if m.strictly_below(i, j) && !(0..n).any(|k| m.strictly_below(i, k) && m.strictly_below(k, j)) {
                out.push((i, j));
            }
        }
    }
    out
}

fn cmd_spec(dir: Option<&Path>, inst: Option<&str>, rank: Option<usize>, bound: u64, text: bool) -> Run {
    let Some(inst) = inst else {
        let rank = rank.unwrap_or(1);
        GroupDescriptor::new(rank)?;
        let base = spec_base(rank);
        if text {
            for (h, p) in &base {
                println!("H_{} -> {}", h.index(), p);
            }
        } else {
            let chain: Vec<Value> = base
                .iter()
                .map(|(h, p)| json!({"subgroup": h.index(), "prime": ideal_to_json(p), "hplus": cut_to_json(&h.plus())}))
                .collect();
            print_json(&json!({"rank": rank, "base": chain}));
        }
        return Ok(ExitCode::SUCCESS);
    };
    let fx = instance::load(inst, dir, rank)?.fixture;
    let r = &fx.algebra;
    if !r.is_unital() {
        return Err(InputError(format!("{}: not unital, so there is no contraction to Spec(O_v)", fx.name)));
    }
    let m = enumerate_spec(r, bound)?;
    if text {
        print!("{m}");
        for (i, j) in covers(&m) {
            println!("{} < {}", m.label(i), m.label(j));
        }
        return Ok(ExitCode::SUCCESS);
    }
    let unhit: Vec<Value> = (0..m.base().len()).filter(|&b| m.fiber(b).is_empty()).map(|b| ideal_to_json(&m.base()[b])).collect();
    let nodes: Vec<Value> = map_entries(&m)
        .into_iter()
        .enumerate()
        .map(|(i, e)| json!({"id": i, "ideal": e.ideal, "over": e.over}))
        .collect();
    print_json(&json!({
        "instance": fx.name,
        "rank": r.rank(),
        "positions": m.positions(),
        "base": m.base().iter().map(ideal_to_json).collect::<Vec<_>>(),
        "nodes": nodes,
        "covers": covers(&m),
        "unhit": unhit,
        "longest_chain": m.longest_chain(),
    }));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    dir: Option<&Path>,
    target: &str,
    rank: Option<usize>,
    samples: Option<usize>,
    seed: Option<u64>,
    bound: u64,
    report: Option<&Path>,
) -> Run {
    let defaults = VerifyOptions::default();
    let (list, sampling): (Vec<Fixture>, _) = if target == "all" {
        let list = fixtures::names().map(|n| instance::load_fixture(n, dir, rank)).collect::<Result<_, _>>()?;
        (list, instance::Sampling::default())
    } else {
        let inst = instance::load(target, dir, rank)?;
        (vec![inst.fixture], inst.sampling)
    };
    let opts = VerifyOptions {
        samples: samples.or(sampling.count).unwrap_or(defaults.samples),
        seed: seed.or(sampling.seed).unwrap_or(defaults.seed),
        bound,
    };
    let run = verify_all(&list, opts)?;
    let text = run.to_json_pretty();
    match report {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| InputError(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    for fx in &run.fixtures {
        let failures: Vec<_> = fx.failures().collect();
        if failures.is_empty() {
            eprintln!("{}: ok", fx.fixture);
        }
        for c in failures {
            if let Verdict::Fail { witness } = &c.verdict {
                eprintln!("{}: FAIL {}: {witness}", fx.fixture, c.check);
            }
        }
    }
    Ok(if run.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
