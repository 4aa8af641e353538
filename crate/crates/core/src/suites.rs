//! Randomized and exhaustive property suites, runnable from the CLI and from
//! the acceptance tests. Every suite is deterministic for a given seed.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::atoms::{format_set, Atom, AtomSet};
use crate::counterexamples::{
    alpha_equivariance, l_set, make_abar, make_alpha_a, make_s1_s2, make_support_family, SeqSpec,
    LATE_ONE_INDEX,
};
use crate::exec::Exec;
use crate::nomset::{ambient_support, CondSet, NomValue, Tail};
use crate::perm::{conjugation_split, FinPerm};
use crate::prop::Prop;
use crate::support::{
    brute_force_least_support_with, intersect_supports, is_equivariant, is_support,
    least_support, replay_witness, LeastSupport, Verdict,
};
use crate::syntax::parse_perm;

pub const DEFAULT_SEED: u64 = 0x6e6f6d;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub required_cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases >= self.required_cases
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{mark} {:<14} {} cases (need {})",
            self.name, self.cases, self.required_cases
        )?;
        for failure in self.failures.iter().take(5) {
            write!(f, "\n    {failure}")?;
        }
        if self.failures.len() > 5 {
            write!(f, "\n    ... {} more", self.failures.len() - 5)?;
        }
        Ok(())
    }
}

fn result(name: &'static str, required: usize, outcomes: Vec<Vec<String>>) -> SuiteResult {
    SuiteResult {
        name,
        cases: outcomes.len(),
        required_cases: required,
        failures: outcomes.into_iter().flatten().collect(),
    }
}

fn atoms(n: u32) -> Vec<Atom> {
    (0..n).map(Atom).collect()
}

/// Random permutation moving at most `max_moved` atoms drawn from `pool`.
pub fn random_perm<R: Rng>(rng: &mut R, pool: &[Atom], max_moved: usize) -> FinPerm {
    let mut chosen = pool.to_vec();
    chosen.shuffle(rng);
    chosen.truncate(rng.gen_range(0..=max_moved.min(pool.len())));
    let mut images = chosen.clone();
    images.shuffle(rng);
    FinPerm::from_images(&chosen, &images).expect("shuffle is a bijection")
}

/// Random oracle-free value of depth at most `depth` over `pool`.
pub fn random_value<R: Rng>(rng: &mut R, depth: usize, pool: &[Atom]) -> NomValue {
    let pick = |rng: &mut R| pool[rng.gen_range(0..pool.len())];
    let leaf_or_node = if depth == 0 { 0 } else { rng.gen_range(0..10) };
    match leaf_or_node {
        7 => NomValue::inl(random_value(rng, depth - 1, pool)),
        8 => NomValue::inr(random_value(rng, depth - 1, pool)),
        9 => NomValue::pair(
            random_value(rng, depth - 1, pool),
            random_value(rng, depth - 1, pool),
        ),
        _ => match rng.gen_range(0..6) {
            0 | 1 => NomValue::Atom(pick(rng)),
            2 => NomValue::Unit,
            3 => NomValue::Nat(rng.gen_range(0..4)),
            4 => {
                let entries = (0..rng.gen_range(0..3))
                    .map(|_| (rng.gen_range(0..6u64), pick(rng)))
                    .collect();
                NomValue::seq(entries, Tail::Star)
            }
            _ => {
                let guard = Prop::Decided(rng.gen());
                let base = pick(rng);
                NomValue::CondSet(if rng.gen() {
                    CondSet::abar(base, guard)
                } else {
                    CondSet::subset(base, guard)
                })
            }
        },
    }
}

/// Associativity, unit and inverse laws on random permutations of eight atoms.
pub fn group_laws(exec: Exec, seed: u64, count: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = atoms(8);
    let perms: Vec<FinPerm> = (0..count).map(|_| random_perm(&mut rng, &pool, 8)).collect();
    let id = FinPerm::identity();
    let indices: Vec<usize> = (0..count).collect();
    let outcomes = exec.map(&indices, |&i| {
        let p = &perms[i];
        let q = &perms[(i + 1) % count];
        let r = &perms[(i + 2) % count];
        let mut bad = Vec::new();
        if p.compose(q).compose(r) != p.compose(&q.compose(r)) {
            bad.push(format!("associativity fails for {p}, {q}, {r}"));
        }
        if id.compose(p) != *p || p.compose(&id) != *p {
            bad.push(format!("unit law fails for {p}"));
        }
        if p.compose(&p.inverse()) != id || p.inverse().compose(p) != id {
            bad.push(format!("inverse law fails for {p}"));
        }
        bad
    });
    result("group-laws", 1000, outcomes)
}

/// Decomposition round trip and the conjugation identity on all ordered
/// distinct triples of six atoms.
pub fn decomposition(exec: Exec, seed: u64, count: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = atoms(12);
    let perms: Vec<FinPerm> = (0..count).map(|_| random_perm(&mut rng, &pool, 8)).collect();
    let mut outcomes = exec.map(&perms, |p| {
        let swaps = p.decompose();
        let moved = p.moved();
        let mut bad = Vec::new();
        if FinPerm::product(&swaps) != *p {
            bad.push(format!("product of decompose({p}) differs"));
        }
        if swaps.iter().any(|(x, y)| !moved.contains(x) || !moved.contains(y)) {
            bad.push(format!("decompose({p}) uses a fixed atom"));
        }
        bad
    });
    let six = atoms(6);
    let mut triples = Vec::new();
    for &a in &six {
        for &b in &six {
            for &c in &six {
                if a != b && b != c && a != c {
                    triples.push((a, b, c));
                }
            }
        }
    }
    outcomes.extend(exec.map(&triples, |&(a, b, c)| {
        match conjugation_split(a, b, c) {
            Ok(parts) if FinPerm::product(&parts) == FinPerm::transposition(a, b) => vec![],
            _ => vec![format!("({a} {b}) ≠ ({b} {c})∘({a} {c})∘({b} {c})")],
        }
    }));
    result("decomposition", 500 + 120, outcomes)
}

/// Two verified supports of a random value: their intersection is verified too.
pub fn intersection(exec: Exec, seed: u64, count: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = atoms(6);
    let mut cases = Vec::with_capacity(count);
    for _ in 0..count {
        let v = random_value(&mut rng, 3, &pool);
        let ambient: Vec<Atom> = ambient_support(&v).into_iter().collect();
        let mut candidates: Vec<AtomSet> = (0..16)
            .map(|_| {
                let mut s: AtomSet = ambient.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
                if rng.gen_bool(0.3) {
                    s.insert(Atom(rng.gen_range(6..9)));
                }
                s
            })
            .collect();
        candidates.push(ambient.iter().copied().collect());
        cases.push((v, candidates, rng.gen::<u64>()));
    }
    let outcomes = exec.map(&cases, |(v, candidates, pick)| {
        let verified: Vec<&AtomSet> = candidates
            .iter()
            .filter(|s| is_support(v, s, 0).is_verified())
            .collect();
        let a = verified[(*pick as usize) % verified.len()];
        let b = verified[(*pick as usize / 7) % verified.len()];
        match intersect_supports(v, a, b, 0) {
            Ok((both, report)) if report.is_verified() => {
                let direct: AtomSet = a.intersection(b).copied().collect();
                if both == direct {
                    vec![]
                } else {
                    vec![format!("intersection mismatch for {v}")]
                }
            }
            Ok((both, report)) => vec![format!(
                "{} not a support of {v}: {report}",
                format_set(&both)
            )],
            Err(e) => vec![format!("precondition failed for {v}: {e}")],
        }
    });
    result("intersection", 300, outcomes)
}

/// Values used by the least-support oracle comparison: every leaf over the
/// universe, every injection and pair of leaves, then random deeper values.
pub fn least_support_cases(seed: u64, random: usize) -> Vec<NomValue> {
    let universe = atoms(5);
    let mut leaves = vec![NomValue::Unit, NomValue::Nat(0), NomValue::seq(Default::default(), Tail::Star)];
    for &a in &universe {
        leaves.push(NomValue::Atom(a));
        leaves.push(NomValue::seq([(0, a)].into_iter().collect(), Tail::Star));
        for b in [true, false] {
            leaves.push(NomValue::CondSet(CondSet::abar(a, Prop::Decided(b))));
            leaves.push(NomValue::CondSet(CondSet::subset(a, Prop::Decided(b))));
        }
    }
    leaves.push(NomValue::seq(
        [(0, Atom(0)), (1, Atom(1))].into_iter().collect(),
        Tail::Star,
    ));
    let mut values = leaves.clone();
    for v in &leaves {
        values.push(NomValue::inl(v.clone()));
        values.push(NomValue::inr(v.clone()));
        for w in &leaves {
            values.push(NomValue::pair(v.clone(), w.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut added = 0;
    while added < random {
        let v = random_value(&mut rng, 3, &universe);
        // keep one universe atom spare so every ambient atom can be moved
        if ambient_support(&v).len() < universe.len() {
            values.push(v);
            added += 1;
        }
    }
    values
}

pub fn least_support_oracle(exec: Exec, seed: u64, random: usize) -> SuiteResult {
    let universe: AtomSet = atoms(5).into_iter().collect();
    let values = least_support_cases(seed, random);
    let outcomes = exec.map(&values, |v| {
        // the enumeration itself stays sequential; cases are spread across threads
        let brute = brute_force_least_support_with(Exec::Sequential, v, &universe);
        match (least_support(v, 0), brute) {
            (LeastSupport::Exact(fast), Ok(slow)) if fast == slow => vec![],
            (fast, slow) => vec![format!("{v}: least_support {fast} vs brute force {slow:?}")],
        }
    });
    result("least-support", 500, outcomes)
}

/// `OneAt` specs over positions 0..=20: every singleton, the empty set, and
/// random subsets.
pub fn decidable_specs(seed: u64, random: usize) -> Vec<SeqSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut specs = vec![SeqSpec::Zeros, SeqSpec::OneAt(BTreeSet::new())];
    specs.extend((0..=20).map(|n| SeqSpec::one_at([n])));
    for _ in 0..random {
        let density = rng.gen_range(0.02..0.5);
        let positions: BTreeSet<u64> = (0..=20).filter(|_| rng.gen_bool(density)).collect();
        specs.push(SeqSpec::OneAt(positions));
    }
    specs
}

/// `α_a` is equivariant iff `α` is identically zero, with replayable refutations.
pub fn nocc_biconditional(exec: Exec, seed: u64, random: usize) -> SuiteResult {
    let specs = decidable_specs(seed, random);
    let base = Atom(0);
    let outcomes = exec.map(&specs, |spec| {
        let zero = match spec {
            SeqSpec::Zeros => true,
            SeqSpec::OneAt(p) => p.is_empty(),
            SeqSpec::Registered(_) => unreachable!(),
        };
        let report = alpha_equivariance(spec, base, 64);
        let mut bad = Vec::new();
        if report.is_verified() != zero {
            bad.push(format!("{spec}: verdict {report} but all-zeros is {zero}"));
        }
        if let Verdict::Refuted { witness, detail } = &report.verdict {
            let v = make_alpha_a(spec, base);
            if !replay_witness(&v, &AtomSet::new(), witness, 64) {
                bad.push(format!("{spec}: witness {witness} does not replay"));
            }
            if let SeqSpec::OneAt(p) = spec {
                let first = p.iter().next().expect("refuted spec has a 1");
                if !detail.contains(&format!("position {first} ")) {
                    bad.push(format!("{spec}: detail `{detail}` misses position {first}"));
                }
            }
        } else if !zero {
            bad.push(format!("{spec}: expected a refutation, got {report}"));
        }
        bad
    });
    result("nocc", 200, outcomes)
}

/// Least support of `α_a` equals the decided extension of `L`.
pub fn l_set_agreement(exec: Exec, seed: u64, random: usize) -> SuiteResult {
    let specs = decidable_specs(seed, random);
    let base = Atom(0);
    let outcomes = exec.map(&specs, |spec| {
        let least = least_support(&make_alpha_a(spec, base), 64);
        let l = l_set(spec, base).decided_members();
        match (least.exact(), l.as_ref()) {
            (Some(x), Some(y)) if x == y => vec![],
            _ => vec![format!("{spec}: least support {least} vs L = {l:?}")],
        }
    });
    result("l-set", 200, outcomes)
}

fn open_props() -> Vec<(String, Prop)> {
    let late = SeqSpec::registered("late-one").expect("registered");
    let collatz = SeqSpec::registered("collatz-flag").expect("registered");
    vec![
        ("true".into(), Prop::TRUE),
        ("false".into(), Prop::FALSE),
        ("allzeros(late-one)".into(), late.all_zeros()),
        ("allzeros(collatz-flag)".into(), collatz.all_zeros()),
        ("opaque oracle".into(), Prop::oracle("opaque", |_| None)),
    ]
}

/// Three-way behaviour of `ā`, `𝒮`, and `S₁`, `S₂`.
pub fn nointer(exec: Exec, budget: u64) -> SuiteResult {
    let mut cases = Vec::new();
    for (name, phi) in open_props() {
        for base in atoms(4) {
            cases.push((name.clone(), phi.clone(), base));
        }
    }
    let outcomes = exec.map(&cases, |(name, phi, base)| {
        let mut bad = Vec::new();
        let abar = NomValue::CondSet(make_abar(phi.clone(), *base));
        let report = is_equivariant(&abar, budget);
        let expected_ok = match (phi.as_decided(), &report.verdict) {
            (Some(true), Verdict::Verified) => true,
            (Some(false), Verdict::Refuted { witness, .. }) => {
                replay_witness(&abar, &AtomSet::new(), witness, budget)
            }
            (None, Verdict::Conditional(p)) => p == phi,
            _ => false,
        };
        if !expected_ok {
            bad.push(format!("ā({name}, {base}) equivariance: {report}"));
        }
        let d = make_s1_s2(phi.clone(), *base, budget);
        if !d.intersection_is_empty() {
            bad.push(format!("S₁ ∩ S₂ not empty for ψ = {name}"));
        }
        if phi.is_decided() || phi.is_stable() {
            for (label, r) in [("S₁", &d.s1_report), ("S₂", &d.s2_report)] {
                if !r.is_verified() {
                    bad.push(format!("{label} for ψ = {name}: {r}"));
                }
            }
        }
        if phi.is_decided() {
            let family = make_support_family(phi.clone(), *base, budget);
            for m in &family.members {
                if !is_support(&abar, &m.support, budget).is_verified() {
                    bad.push(format!("𝒮 member {} fails for φ = {name}", format_set(&m.support)));
                }
            }
        }
        bad
    });
    result("nointer", 20, outcomes)
}

/// Budgets below the hidden index never settle; budgets past it refute; no
/// budget verifies.
pub fn monotonicity(exec: Exec) -> SuiteResult {
    let spec = SeqSpec::registered("late-one").expect("registered");
    let n = LATE_ONE_INDEX;
    let budgets: Vec<u64> = vec![0, 1, n / 2, n - 1, n, n + 1, n + 2, 2 * n];
    let outcomes = exec.map(&budgets, |&b| {
        let report = alpha_equivariance(&spec, Atom(0), b);
        let ok = match &report.verdict {
            Verdict::Unknown => b <= n,
            Verdict::Refuted { .. } => b > n,
            _ => false,
        };
        if ok {
            vec![]
        } else {
            vec![format!("budget {b}: {report}")]
        }
    });
    result("monotonicity", budgets.len(), outcomes)
}

/// Print/parse round trip of cycle notation.
pub fn perm_round_trip(exec: Exec, seed: u64, count: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = atoms(10);
    let perms: Vec<FinPerm> = (0..count).map(|_| random_perm(&mut rng, &pool, 10)).collect();
    let outcomes = exec.map(&perms, |p| match parse_perm(&p.to_string()) {
        Ok(q) if q == *p => vec![],
        other => vec![format!("{p} reparsed as {other:?}")],
    });
    result("cli-round-trip", 200, outcomes)
}

pub const SUITE_NAMES: [&str; 9] = [
    "group-laws",
    "decomposition",
    "intersection",
    "least-support",
    "nocc",
    "l-set",
    "nointer",
    "monotonicity",
    "cli-round-trip",
];

/// Runs a suite by name (`all` runs every suite). `None` for unknown names.
pub fn run_named(name: &str, exec: Exec, seed: u64) -> Option<Vec<SuiteResult>> {
    let one = |n: &str| -> Option<SuiteResult> {
        Some(match n {
            "group-laws" => group_laws(exec, seed, 1000),
            "decomposition" => decomposition(exec, seed, 500),
            "intersection" => intersection(exec, seed, 300),
            "least-support" => least_support_oracle(exec, seed, 300),
            "nocc" => nocc_biconditional(exec, seed, 200),
            "l-set" => l_set_agreement(exec, seed, 200),
            "nointer" => nointer(exec, 200),
            "monotonicity" => monotonicity(exec),
            "cli-round-trip" => perm_round_trip(exec, seed, 200),
            _ => return None,
        })
    };
    if name == "all" {
        SUITE_NAMES.iter().map(|n| one(n)).collect()
    } else {
        one(name).map(|r| vec![r])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_small_scale() {
        let exec = Exec::Sequential;
        assert!(group_laws(exec, 1, 50).failures.is_empty());
        assert!(decomposition(exec, 1, 50).failures.is_empty());
        assert!(intersection(exec, 1, 30).failures.is_empty());
        assert!(nocc_biconditional(exec, 1, 10).failures.is_empty());
        assert!(l_set_agreement(exec, 1, 10).failures.is_empty());
        assert!(perm_round_trip(exec, 1, 20).failures.is_empty());
    }

    #[test]
    fn random_values_are_oracle_free_and_shallow() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let v = random_value(&mut rng, 3, &atoms(4));
            assert!(v.is_oracle_free());
            assert!(v.depth() <= 3);
        }
    }

    #[test]
    fn least_support_cases_keep_a_spare_atom() {
        let cases = least_support_cases(5, 50);
        assert!(cases.len() >= 500);
        assert!(cases.iter().all(|v| ambient_support(v).len() < 5));
    }

    #[test]
    fn unknown_suite_name() {
        assert!(run_named("nope", Exec::Sequential, 0).is_none());
    }
}
