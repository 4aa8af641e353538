//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion fails.

use std::process::Command;
use std::time::Instant;

use nomsets::counterexamples::{
    alpha_equivariance, make_abar, make_s1_s2, make_support_family, SeqSpec, LATE_ONE_INDEX,
};
use nomsets::suites::{self, SuiteResult, DEFAULT_SEED};
use nomsets::support::Verdict;
use nomsets::{is_equivariant, is_support, Atom, Exec, NomValue, Prop};

struct Line {
    id: u8,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn from_suites(id: u8, title: &'static str, results: &[SuiteResult]) -> Line {
    Line {
        id,
        title,
        passed: results.iter().all(SuiteResult::passed),
        detail: results
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; "),
    }
}

fn criterion_7_direct() -> Vec<String> {
    // independent restatement of the three-way table, outside the suite module
    let mut bad = Vec::new();
    let a = Atom(0);
    let open = SeqSpec::registered("late-one").unwrap().all_zeros();
    for (phi, expect) in [
        (Prop::TRUE, "verified"),
        (Prop::FALSE, "refuted"),
        (open.clone(), "conditional"),
    ] {
        let abar = NomValue::CondSet(make_abar(phi.clone(), a));
        let r = is_equivariant(&abar, 100);
        if r.verdict_name() != expect {
            bad.push(format!("ā with φ = {phi}: {r}, expected {expect}"));
        }
        if expect == "conditional" && r.verdict != Verdict::Conditional(phi.clone()) {
            bad.push(format!("condition is not φ: {r}"));
        }
        if !make_s1_s2(phi.clone(), a, 100).intersection_is_empty() {
            bad.push(format!("S₁ ∩ S₂ nonempty for ψ = {phi}"));
        }
        if phi.is_decided() {
            for m in make_support_family(phi.clone(), a, 100).members {
                if !is_support(&abar, &m.support, 100).is_verified() {
                    bad.push(format!("member {:?} of 𝒮 is not a support", m.support));
                }
            }
        }
    }
    bad
}

fn criterion_8_direct() -> Vec<String> {
    let spec = SeqSpec::registered("late-one").unwrap();
    let n = LATE_ONE_INDEX;
    let mut bad = Vec::new();
    for b in [n - 1, n + 1, n + 2] {
        let r = alpha_equivariance(&spec, Atom(0), b);
        let ok = if b < n { r.verdict == Verdict::Unknown } else { r.is_refuted() };
        if !ok || r.is_verified() {
            bad.push(format!("budget {b}: {r}"));
        }
    }
    bad
}

fn cli_exit_statuses() -> Vec<String> {
    let bin = env!("CARGO_BIN_EXE_nomsets");
    let scenarios: [(&[&str], i32); 4] = [
        (&["support", "atom a0", "{a0}"], 0),
        (&["support", "atom a0", "{}"], 2),
        (&["demo", "wlpo", "--spec", "oracle:collatz-flag", "--budget", "100"], 3),
        (&["act", "(a0 a0)", "atom a0"], 64),
    ];
    let mut bad = Vec::new();
    for (args, expected) in scenarios {
        let out = Command::new(bin).args(args).output().expect("binary runs");
        let code = out.status.code().unwrap_or(-1);
        if code != expected {
            bad.push(format!(
                "{args:?}: exit {code}, expected {expected}: {}",
                String::from_utf8_lossy(&out.stdout)
            ));
        }
    }
    bad
}

fn with_direct(id: u8, title: &'static str, results: &[SuiteResult], extra: Vec<String>) -> Line {
    let mut line = from_suites(id, title, results);
    if !extra.is_empty() {
        line.passed = false;
        line.detail.push_str(&format!("; {}", extra.join("; ")));
    }
    line
}

#[test]
fn acceptance_criteria() {
    let exec = Exec::default();
    let seed = DEFAULT_SEED;
    let mut lines = Vec::new();
    let mut timed = |f: &mut dyn FnMut() -> Line| {
        let start = Instant::now();
        let mut line = f();
        line.detail.push_str(&format!(" [{:.2?}]", start.elapsed()));
        lines.push(line);
    };

    timed(&mut || {
        from_suites(1, "group laws, 1000 permutations of 8 atoms", &[suites::group_laws(exec, seed, 1000)])
    });
    timed(&mut || {
        from_suites(
            2,
            "decompose round trip (500) and conjugation identity (120 triples)",
            &[suites::decomposition(exec, seed, 500)],
        )
    });
    timed(&mut || {
        from_suites(3, "intersection of two verified supports, 300 values", &[suites::intersection(exec, seed, 300)])
    });
    timed(&mut || {
        from_suites(
            4,
            "least_support = brute force over a 5-atom universe",
            &[suites::least_support_oracle(exec, seed, 300)],
        )
    });
    timed(&mut || {
        from_suites(5, "α_a equivariant iff α ≡ 0, replayable witnesses", &[suites::nocc_biconditional(exec, seed, 200)])
    });
    timed(&mut || {
        from_suites(6, "least support of α_a = decided L", &[suites::l_set_agreement(exec, seed, 200)])
    });
    timed(&mut || {
        with_direct(
            7,
            "ā / 𝒮 / S₁,S₂ three-way behaviour",
            &[suites::nointer(exec, 200)],
            criterion_7_direct(),
        )
    });
    timed(&mut || {
        with_direct(
            8,
            "semi-decision monotonicity for late-one",
            &[suites::monotonicity(exec)],
            criterion_8_direct(),
        )
    });
    timed(&mut || {
        with_direct(
            9,
            "CLI perm round trip (200) and exit statuses 0/2/3/64",
            &[suites::perm_round_trip(exec, seed, 200)],
            cli_exit_statuses(),
        )
    });

    for line in &lines {
        println!(
            "[{}] criterion {}: {} -- {}",
            if line.passed { "PASS" } else { "FAIL" },
            line.id,
            line.title,
            line.detail
        );
    }
    let failed: Vec<u8> = lines.iter().filter(|l| !l.passed).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
