//! Command-line front end.
//!
//! Exit statuses: 0 verified / exact / success, 2 refuted, 3 undecided
//! (conditional or unknown), 64 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::atoms::{format_set, Atom};
use crate::counterexamples::{
    abar_demo, intersection_demo, registry, s1s2_demo, wlpo_demo, DemoReport, SeqSpec, Status,
};
use crate::exec::Exec;
use crate::nomset::act;
use crate::support::{is_support, least_support, LeastSupport, SupportReport, Verdict};
use crate::suites::{run_named, DEFAULT_SEED, SUITE_NAMES};
use crate::syntax::{parse_atom, parse_atom_set, parse_perm, parse_prop, parse_value, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

const GRAMMAR: &str = "\
Grammars:
  perm   ()  |  (a0 a1)(a2 a3 a4)   cycles juxtaposed left to right; the leftmost acts first
  value  atom a0 | unit | nat 7 | inl <v> | inr <v> | pair <v> <w>
         | seq {3:a0, 5:a2} star | seq {} oracle(<name>, a0)
         | abar a0 <prop> | subset a0 <prop>      parentheses may group any value
  prop   true | false | oracle:<name> | allzeros(<name>) | not <p> | and <p> <q> | or <p> <q>
  set    {a0, a1}
  spec   zeros | one@{5} | one@{2,7} | oracle:<name>
  oracle names: late-one, collatz-flag, goldbach-flag, zeros, one@{n,..}

Exit status: 0 verified/exact, 2 refuted, 3 conditional/unknown, 64 usage error.";

#[derive(Debug, Parser)]
#[command(name = "nomsets", version, about = "Permutations of names, support checking and least-support counterexamples", after_help = GRAMMAR)]
pub struct Cli {
    /// Oracle query budget for support checks.
    #[arg(long, global = true, default_value_t = 100)]
    pub budget: u64,
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a permutation to a value.
    Act { perm: String, value: String },
    /// Check whether a set of atoms supports a value.
    Support {
        value: String,
        set: String,
        /// Overrides --budget.
        budget: Option<u64>,
    },
    /// Compute the least finite support of a value.
    Least {
        value: String,
        /// Overrides --budget.
        budget: Option<u64>,
    },
    /// Run one of the counterexample demonstrations.
    #[command(subcommand)]
    Demo(Demo),
    /// Run a property suite by name, or `all`.
    Suite {
        name: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// List the registered oracle sequences.
    Oracles,
}

#[derive(Debug, Subcommand)]
pub enum Demo {
    /// Least support of α_a for each sequence spec.
    Wlpo {
        #[arg(long = "spec", required = true)]
        specs: Vec<String>,
        #[arg(long, default_value = "a0")]
        atom: String,
    },
    /// ā for a proposition φ, with its family of supports.
    Abar {
        #[arg(long)]
        phi: String,
        #[arg(long, default_value = "a0")]
        atom: String,
    },
    /// The disjoint supports S₁, S₂ for φ = ψ ∨ ¬ψ.
    S1s2 {
        #[arg(long)]
        psi: String,
        #[arg(long, default_value = "a0")]
        atom: String,
    },
    /// Intersect two verified supports of a value.
    Intersection { value: String, a: String, b: String },
}

struct Output {
    status: i32,
    human: String,
    json: Value,
}

fn usage(what: &str, e: ParseError) -> Output {
    let human = format!("error: {what}: {e}");
    Output {
        status: EXIT_USAGE,
        json: json!({ "error": human, "position": e.pos }),
        human,
    }
}

fn report_status(report: &SupportReport) -> i32 {
    match report.verdict {
        Verdict::Verified => EXIT_OK,
        Verdict::Refuted { .. } => EXIT_REFUTED,
        Verdict::Conditional(_) | Verdict::Unknown => EXIT_UNDECIDED,
    }
}

fn demo_output(report: DemoReport) -> Output {
    let status = match report.status() {
        Status::Settled => EXIT_OK,
        Status::Refuted => EXIT_REFUTED,
        Status::Undecided => EXIT_UNDECIDED,
    };
    let human = report.to_string();
    let mut json = serde_json::to_value(&report).expect("report serializes");
    json["status"] = json!(report.status());
    json["human"] = json!(human);
    Output { status, human, json }
}

macro_rules! parse_or_usage {
    ($e:expr, $what:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return usage($what, e),
        }
    };
}

fn execute(cli: &Cli) -> Output {
    let budget = cli.budget;
    match &cli.command {
        Command::Act { perm, value } => {
            let p = parse_or_usage!(parse_perm(perm), "permutation");
            let v = parse_or_usage!(parse_value(value), "value");
            let image = act(&p, &v);
            let human = image.to_string();
            Output {
                status: EXIT_OK,
                json: json!({ "command": "act", "perm": p, "value": v, "result": image, "human": human }),
                human,
            }
        }
        Command::Support {
            value,
            set,
            budget: b,
        } => {
            let v = parse_or_usage!(parse_value(value), "value");
            let s = parse_or_usage!(parse_atom_set(set), "set");
            let report = is_support(&v, &s, b.unwrap_or(budget));
            let mut human = format!("{} supports {v}: {report}", format_set(&s));
            for note in &report.notes {
                human.push_str(&format!("\nnote: {note}"));
            }
            let mut json = serde_json::to_value(&report).expect("report serializes");
            json["command"] = json!("support");
            json["value"] = json!(v);
            json["set"] = json!(s);
            json["human"] = json!(human);
            Output {
                status: report_status(&report),
                human,
                json,
            }
        }
        Command::Least { value, budget: b } => {
            let v = parse_or_usage!(parse_value(value), "value");
            let least = least_support(&v, b.unwrap_or(budget));
            let status = match least {
                LeastSupport::Exact(_) => EXIT_OK,
                _ => EXIT_UNDECIDED,
            };
            let human = least.to_string();
            let mut json = serde_json::to_value(&least).expect("serializes");
            json["command"] = json!("least");
            json["value"] = json!(v);
            json["human"] = json!(human);
            Output { status, human, json }
        }
        Command::Demo(demo) => run_demo(demo, budget),
        Command::Suite { name, seed } => {
            let Some(results) = run_named(name, Exec::default(), *seed) else {
                let human = format!(
                    "error: unknown suite `{name}`; expected one of: all, {}",
                    SUITE_NAMES.join(", ")
                );
                return Output {
                    status: EXIT_USAGE,
                    json: json!({ "error": human }),
                    human,
                };
            };
            let passed = results.iter().all(|r| r.passed());
            let human: Vec<String> = results.iter().map(ToString::to_string).collect();
            let human = human.join("\n");
            Output {
                status: if passed { EXIT_OK } else { EXIT_REFUTED },
                json: json!({ "command": "suite", "results": results, "passed": passed, "human": human }),
                human,
            }
        }
        Command::Oracles => {
            let rows: Vec<Value> = registry()
                .iter()
                .map(|e| json!({ "name": e.name, "summary": e.summary }))
                .collect();
            let human: Vec<String> = registry()
                .iter()
                .map(|e| format!("{:<14} {}", e.name, e.summary))
                .collect();
            let human = human.join("\n");
            Output {
                status: EXIT_OK,
                json: json!({ "oracles": rows, "human": human }),
                human,
            }
        }
    }
}

fn run_demo(demo: &Demo, budget: u64) -> Output {
    let atom_arg = |text: &str| parse_atom(text);
    match demo {
        Demo::Wlpo { specs, atom } => {
            let a: Atom = parse_or_usage!(atom_arg(atom), "atom");
            let mut parsed = Vec::new();
            for s in specs {
                match s.parse::<SeqSpec>() {
                    Ok(spec) => parsed.push(spec),
                    Err(e) => {
                        let human = format!("error: spec: {e}");
                        return Output {
                            status: EXIT_USAGE,
                            json: json!({ "error": human }),
                            human,
                        };
                    }
                }
            }
            demo_output(wlpo_demo(&parsed, a, budget))
        }
        Demo::Abar { phi, atom } => {
            let a = parse_or_usage!(atom_arg(atom), "atom");
            let p = parse_or_usage!(parse_prop(phi), "proposition");
            demo_output(abar_demo(p, a, budget))
        }
        Demo::S1s2 { psi, atom } => {
            let a = parse_or_usage!(atom_arg(atom), "atom");
            let p = parse_or_usage!(parse_prop(psi), "proposition");
            demo_output(s1s2_demo(p, a, budget))
        }
        Demo::Intersection { value, a, b } => {
            let v = parse_or_usage!(parse_value(value), "value");
            let sa = parse_or_usage!(parse_atom_set(a), "set");
            let sb = parse_or_usage!(parse_atom_set(b), "set");
            match intersection_demo(&v, &sa, &sb, budget) {
                Ok(report) => demo_output(report),
                Err(e) => {
                    let human = format!("error: {e}");
                    Output {
                        status: EXIT_USAGE,
                        json: json!({ "error": human }),
                        human,
                    }
                }
            }
        }
    }
}

/// Parses `args` (including the program name), runs the command and writes the
/// report to `out`. Returns the exit status.
pub fn run<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    let output = execute(&cli);
    let text = if cli.json {
        serde_json::to_string_pretty(&output.json).expect("json renders")
    } else {
        output.human
    };
    let _ = writeln!(out, "{text}");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            let _ = writeln!(out, "error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    output.status
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let mut full = vec!["nomsets"];
        full.extend_from_slice(args);
        let code = run(full, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn act_prints_image() {
        let (code, out) = run_args(&["act", "(a0 a1)", "atom a0"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim(), "atom a1");
    }

    #[test]
    fn least_of_constant_star() {
        let (code, out) = run_args(&["least", "seq {} star", "10"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim(), "{}");
    }

    #[test]
    fn wlpo_oracle_row_is_undecided() {
        let (code, out) = run_args(&["demo", "wlpo", "--spec", "oracle:collatz-flag", "--budget", "100"]);
        assert_eq!(code, EXIT_UNDECIDED, "{out}");
        assert!(out.contains("allzeros(collatz-flag)"));
    }

    #[test]
    fn refuted_support() {
        let (code, out) = run_args(&["support", "atom a0", "{}"]);
        assert_eq!(code, EXIT_REFUTED);
        assert!(out.contains("(a0 a1)"));
    }

    #[test]
    fn usage_errors() {
        let (code, out) = run_args(&["act", "(a0 a1", "atom a0"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.contains("column"));
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["suite", "nope"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["demo", "wlpo", "--spec", "oracle:nope"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn json_contains_human_fields() {
        let (code, out) = run_args(&["--json", "support", "atom a0", "{}"]);
        assert_eq!(code, EXIT_REFUTED);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "refuted");
        assert_eq!(v["witness"], "(a0 a1)");
        assert!(v["human"].as_str().unwrap().contains("refuted"));
        assert_eq!(v["budget_used"], 0);
    }

    #[test]
    fn demos_run() {
        assert_eq!(run_args(&["demo", "abar", "--phi", "true"]).0, EXIT_OK);
        assert_eq!(run_args(&["demo", "abar", "--phi", "false"]).0, EXIT_REFUTED);
        assert_eq!(run_args(&["demo", "abar", "--phi", "oracle:late-one"]).0, EXIT_UNDECIDED);
        assert_eq!(run_args(&["demo", "s1s2", "--psi", "oracle:goldbach-flag"]).0, EXIT_OK);
        assert_eq!(
            run_args(&["demo", "intersection", "atom a0", "{a0, a1}", "{a0, a2}"]).0,
            EXIT_OK
        );
        assert_eq!(run_args(&["oracles"]).0, EXIT_OK);
    }

    #[test]
    fn writes_report_file() {
        let dir = std::env::temp_dir().join(format!("nomsets-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("report.json");
        let p = path.to_str().unwrap();
        let (code, _) = run_args(&["--json", "--out", p, "least", "atom a3"]);
        assert_eq!(code, EXIT_OK);
        let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(written["kind"], "exact");
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
