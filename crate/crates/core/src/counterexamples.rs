//! Executable forms of the constructions where least finite support stops being
//! computable.
//!
//! * `α_a ∈ (𝔸 + 1)^ℕ`, which is `a` where a binary sequence `α` is 1 and `∗`
//!   elsewhere. It is equivariant iff `α` is identically 0, so a support
//!   function on this family would decide every all-zeros statement.
//! * The set `L = {x ∈ {a} | ¬∀n α(n) = 0}`, the intersection of all finite
//!   supports of `α_a`.
//! * `ā = {x ∈ {a} | φ} ∪ (𝔸 ∖ {a})`, equivariant iff `φ`, with its family of
//!   supports `𝒮` and the disjoint pair `S₁`, `S₂`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::atoms::{Atom, AtomSet};
use crate::exec::Exec;
use crate::nomset::{CondSet, NomValue, Tail};
use crate::prop::{BinSeqOracle, Prop, Truth};
use crate::support::{
    intersect_supports, is_conditional_support, is_equivariant, is_support, least_support,
    LeastSupport, SupportError, SupportReport, Verdict,
};

/// Hidden position of the single 1 in the `late-one` sequence.
pub const LATE_ONE_INDEX: u64 = 1000;

pub struct RegistryEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub oracle: BinSeqOracle,
}

/// Built-in named binary sequences.
pub fn registry() -> &'static [RegistryEntry] {
    static REGISTRY: OnceLock<Vec<RegistryEntry>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        vec![
            RegistryEntry {
                name: "late-one",
                summary: "1 only at a hidden position; small budgets cannot see it",
                oracle: BinSeqOracle::new("late-one", |n| n == LATE_ONE_INDEX),
            },
            RegistryEntry {
                name: "collatz-flag",
                summary: "1 at n when the Collatz orbit of n+1 misses 1 within 10000 steps",
                oracle: BinSeqOracle::new("collatz-flag", collatz_flag),
            },
            RegistryEntry {
                name: "goldbach-flag",
                summary: "1 at n when 2n+4 is not a sum of two primes",
                oracle: BinSeqOracle::new("goldbach-flag", goldbach_flag),
            },
        ]
    })
}

fn collatz_flag(n: u64) -> bool {
    let mut x = u128::from(n) + 1;
    for _ in 0..10_000 {
        if x == 1 {
            return false;
        }
        x = if x % 2 == 0 {
            x / 2
        } else {
            match x.checked_mul(3).and_then(|y| y.checked_add(1)) {
                Some(y) => y,
                None => return true,
            }
        };
    }
    x != 1
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn goldbach_flag(n: u64) -> bool {
    let m = 2 * n + 4;
    !(2..=m / 2).any(|p| is_prime(p) && is_prime(m - p))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("unknown oracle `{0}` (known: late-one, collatz-flag, goldbach-flag, zeros, one@{{..}})")]
    UnknownOracle(String),
    #[error("malformed sequence spec `{0}`; expected zeros, one@{{n,..}} or oracle:<name>")]
    Malformed(String),
}

/// Resolves an oracle name: a registry entry, `zeros`, or `one@{n,..}`.
pub fn lookup_oracle(name: &str) -> Result<BinSeqOracle, SpecError> {
    if let Some(entry) = registry().iter().find(|e| e.name == name) {
        return Ok(entry.oracle.clone());
    }
    if name == "zeros" {
        return Ok(BinSeqOracle::new("zeros", |_| false));
    }
    if let Some(positions) = parse_positions(name) {
        return Ok(BinSeqOracle::one_at(&positions));
    }
    Err(SpecError::UnknownOracle(name.to_string()))
}

fn parse_positions(text: &str) -> Option<BTreeSet<u64>> {
    let body = text.strip_prefix("one@{")?.strip_suffix('}')?;
    body.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().ok())
        .collect()
}

/// A binary sequence `α : ℕ → 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqSpec {
    Zeros,
    OneAt(BTreeSet<u64>),
    /// Only reachable through queries; its all-zeros status is not computable.
    Registered(BinSeqOracle),
}

impl SeqSpec {
    pub fn one_at<I: IntoIterator<Item = u64>>(positions: I) -> SeqSpec {
        SeqSpec::OneAt(positions.into_iter().collect())
    }

    pub fn registered(name: &str) -> Result<SeqSpec, SpecError> {
        lookup_oracle(name).map(SeqSpec::Registered)
    }

    pub fn is_decidable(&self) -> bool {
        !matches!(self, SeqSpec::Registered(_))
    }

    /// `∀n. α(n) = 0`.
    pub fn all_zeros(&self) -> Prop {
        match self {
            SeqSpec::Zeros => Prop::TRUE,
            SeqSpec::OneAt(p) => Prop::Decided(p.is_empty()),
            SeqSpec::Registered(oracle) => Prop::all_zeros(oracle.clone()),
        }
    }
}

impl fmt::Display for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqSpec::Zeros => f.write_str("zeros"),
            SeqSpec::OneAt(p) => {
                let items: Vec<String> = p.iter().map(ToString::to_string).collect();
                write!(f, "one@{{{}}}", items.join(","))
            }
            SeqSpec::Registered(o) => write!(f, "oracle:{}", o.name()),
        }
    }
}

impl FromStr for SeqSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "zeros" {
            return Ok(SeqSpec::Zeros);
        }
        if let Some(name) = s.strip_prefix("oracle:") {
            return SeqSpec::registered(name.trim());
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        parse_positions(&compact)
            .map(SeqSpec::OneAt)
            .ok_or_else(|| SpecError::Malformed(s.to_string()))
    }
}

/// `α_a(n) = a` where `α(n) = 1`, `∗` elsewhere.
pub fn make_alpha_a(spec: &SeqSpec, a: Atom) -> NomValue {
    match spec {
        SeqSpec::Zeros => NomValue::seq(Default::default(), Tail::Star),
        SeqSpec::OneAt(p) => NomValue::seq(p.iter().map(|&n| (n, a)).collect(), Tail::Star),
        SeqSpec::Registered(oracle) => NomValue::seq(
            Default::default(),
            Tail::Oracle {
                oracle: oracle.clone(),
                atom: a,
            },
        ),
    }
}

/// Semi-decides equivariance of `α_a`: never answers `Verified` for an oracle
/// sequence, only `Refuted` once a 1 shows up within the budget.
pub fn alpha_equivariance(spec: &SeqSpec, a: Atom, budget: u64) -> SupportReport {
    let mut report = is_equivariant(&make_alpha_a(spec, a), budget);
    if let Verdict::Conditional(p) = &report.verdict {
        report.notes.push(format!("undecided: {p}"));
        report.verdict = Verdict::Unknown;
    }
    report
}

/// `L = {x ∈ {a} | ¬∀n α(n) = 0}`.
pub fn l_set(spec: &SeqSpec, a: Atom) -> CondSet {
    CondSet::subset(a, Prop::not(spec.all_zeros()))
}

/// `ā = {x ∈ {a} | φ} ∪ (𝔸 ∖ {a})`.
pub fn make_abar(phi: Prop, a: Atom) -> CondSet {
    CondSet::abar(a, phi)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub support: AtomSet,
    /// The member is present iff the guard holds.
    pub guard: Prop,
    pub report: SupportReport,
}

/// `𝒮 = {x ∈ {∅} | φ} ∪ {{a}}`, each member checked against `ā`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFamily {
    pub abar: CondSet,
    pub members: Vec<FamilyMember>,
}

impl SupportFamily {
    /// `⋂𝒮 = {x ∈ {a} | ¬φ}`.
    pub fn intersection(&self) -> CondSet {
        CondSet::subset(self.abar.base, Prop::not(self.abar.membership.clone()))
    }
}

pub fn make_support_family(phi: Prop, a: Atom, budget: u64) -> SupportFamily {
    let abar = make_abar(phi.clone(), a);
    let value = NomValue::CondSet(abar.clone());
    let single: AtomSet = [a].into_iter().collect();
    let mut members = vec![FamilyMember {
        support: single.clone(),
        guard: Prop::TRUE,
        report: is_support(&value, &single, budget),
    }];
    if phi != Prop::FALSE {
        members.insert(
            0,
            FamilyMember {
                support: AtomSet::new(),
                guard: phi,
                report: is_support(&value, &AtomSet::new(), budget),
            },
        );
    }
    SupportFamily { abar, members }
}

/// `S₁ = {a | ψ}` and `S₂ = {a | ¬ψ}` as supports of `ā` for `φ = ψ ∨ ¬ψ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointSupports {
    pub abar: CondSet,
    pub s1: CondSet,
    pub s2: CondSet,
    pub s1_report: SupportReport,
    pub s2_report: SupportReport,
    /// `S₁ ∩ S₂` as a conditional set; its guard folds to `false`.
    pub intersection: CondSet,
}

impl DisjointSupports {
    pub fn intersection_is_empty(&self) -> bool {
        self.intersection.membership == Prop::FALSE
    }
}

/// `S₂` relies on `¬¬ψ → ψ`; all-zeros statements satisfy it.
pub fn make_s1_s2(psi: Prop, a: Atom, budget: u64) -> DisjointSupports {
    let abar = make_abar(Prop::excluded_middle(psi.clone()), a);
    let value = NomValue::CondSet(abar.clone());
    let s1 = CondSet::subset(a, psi.clone());
    let s2 = CondSet::subset(a, Prop::not(psi.clone()));
    let s1_report = is_conditional_support(&value, &s1, budget);
    let s2_report = is_conditional_support(&value, &s2, budget);
    let intersection = CondSet::subset(a, Prop::and(psi.clone(), Prop::not(psi)));
    DisjointSupports {
        abar,
        s1,
        s2,
        s1_report,
        s2_report,
        intersection,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Settled,
    Refuted,
    Undecided,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Settled => 0,
            Status::Refuted => 2,
            Status::Undecided => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Outcome {
    Support { report: SupportReport },
    Least { least: LeastSupport },
    Holds { prop: Prop, truth: Truth },
}

impl Outcome {
    fn holds(prop: Prop, budget: u64) -> Outcome {
        let truth = prop.evaluate(budget).truth;
        Outcome::Holds { prop, truth }
    }

    pub fn status(&self) -> Status {
        match self {
            Outcome::Support { report } => match report.verdict {
                Verdict::Verified => Status::Settled,
                Verdict::Refuted { .. } => Status::Refuted,
                _ => Status::Undecided,
            },
            Outcome::Least { least } => match least {
                LeastSupport::Exact(_) => Status::Settled,
                _ => Status::Undecided,
            },
            Outcome::Holds { truth, .. } => match truth {
                Truth::True => Status::Settled,
                Truth::False => Status::Refuted,
                Truth::Unknown => Status::Undecided,
            },
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Support { report } => write!(f, "{report}"),
            Outcome::Least { least } => write!(f, "{least}"),
            Outcome::Holds { prop, truth } => write!(f, "{prop} is {truth:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub statement: String,
    pub element: NomValue,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DemoReport {
    pub construction: String,
    pub claims: Vec<Claim>,
    pub narrative: String,
}

impl DemoReport {
    /// Undecided wins over refuted, which wins over settled.
    pub fn status(&self) -> Status {
        let statuses: Vec<Status> = self.claims.iter().map(|c| c.outcome.status()).collect();
        if statuses.contains(&Status::Undecided) {
            Status::Undecided
        } else if statuses.contains(&Status::Refuted) {
            Status::Refuted
        } else {
            Status::Settled
        }
    }
}

impl fmt::Display for DemoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.construction)?;
        for claim in &self.claims {
            writeln!(f, "- {}", claim.statement)?;
            writeln!(f, "    element: {}", claim.element)?;
            writeln!(f, "    result:  {}", claim.outcome)?;
        }
        writeln!(f)?;
        write!(f, "{}", self.narrative)
    }
}

const WLPO_NARRATIVE: &str = "\
α_a is equivariant exactly when α is identically 0. Its least support is ∅ in \
that case and {a} otherwise, i.e. the set L = {x ∈ {a} | ¬∀n α(n) = 0}. For \
decidable sequences the rows above are exact. For an oracle sequence the search \
for a 1 only ever refutes; a total support function S would settle every row, \
since a ∈ S(α_a) gives ¬∀n α(n) = 0 and a ∉ S(α_a) gives ∀n α(n) = 0.";

/// Least support of `α_a` for each sequence, computed independently per row.
pub fn wlpo_demo(specs: &[SeqSpec], a: Atom, budget: u64) -> DemoReport {
    wlpo_demo_with(Exec::default(), specs, a, budget)
}

pub fn wlpo_demo_with(exec: Exec, specs: &[SeqSpec], a: Atom, budget: u64) -> DemoReport {
    let claims = exec.map(specs, |spec| {
        let element = make_alpha_a(spec, a);
        let least = least_support(&element, budget);
        Claim {
            statement: format!("least support of α_{a} for α = {spec}"),
            element,
            outcome: Outcome::Least { least },
        }
    });
    DemoReport {
        construction: "α_a in (𝔸+1)^ℕ".into(),
        claims,
        narrative: WLPO_NARRATIVE.into(),
    }
}

pub fn abar_demo(phi: Prop, a: Atom, budget: u64) -> DemoReport {
    let family = make_support_family(phi.clone(), a, budget);
    let element = NomValue::CondSet(family.abar.clone());
    let mut claims = vec![Claim {
        statement: format!("ā is equivariant iff {phi}"),
        element: element.clone(),
        outcome: Outcome::Support {
            report: is_equivariant(&element, budget),
        },
    }];
    for m in &family.members {
        claims.push(Claim {
            statement: format!(
                "{} ∈ 𝒮 (when {}) supports ā",
                crate::atoms::format_set(&m.support),
                m.guard
            ),
            element: element.clone(),
            outcome: Outcome::Support {
                report: m.report.clone(),
            },
        });
    }
    claims.push(Claim {
        statement: "least support of ā".into(),
        element: element.clone(),
        outcome: Outcome::Least {
            least: least_support(&element, budget),
        },
    });
    DemoReport {
        construction: format!("ā = {{x ∈ {{{a}}} | φ}} ∪ (𝔸 ∖ {{{a}}})"),
        claims,
        narrative: "ā is all of 𝔸 when φ holds and misses a when φ fails; its equivariance \
            is exactly φ. {a} always supports it, ∅ does when φ holds, and ⋂𝒮 = {x ∈ {a} | ¬φ} \
            is a support only if ¬¬φ → φ."
            .into(),
    }
}

pub fn s1s2_demo(psi: Prop, a: Atom, budget: u64) -> DemoReport {
    let d = make_s1_s2(psi, a, budget);
    let element = NomValue::CondSet(d.abar.clone());
    let claims = vec![
        Claim {
            statement: format!("S₁ = {} supports ā", d.s1),
            element: element.clone(),
            outcome: Outcome::Support {
                report: d.s1_report.clone(),
            },
        },
        Claim {
            statement: format!("S₂ = {} supports ā", d.s2),
            element: element.clone(),
            outcome: Outcome::Support {
                report: d.s2_report.clone(),
            },
        },
        Claim {
            statement: "S₁ ∩ S₂ is empty".into(),
            element: NomValue::CondSet(d.intersection.clone()),
            outcome: Outcome::holds(Prop::not(d.intersection.membership.clone()), budget),
        },
    ];
    DemoReport {
        construction: "disjoint subfinite supports of ā with φ = ψ ∨ ¬ψ".into(),
        claims,
        narrative: "S₁ and S₂ both support ā, yet their intersection is empty because \
            ψ ∧ ¬ψ is false. If S₁ ∩ S₂ = ∅ were a support then ā would be equivariant, \
            which is ψ ∨ ¬ψ."
            .into(),
    }
}

pub fn intersection_demo(
    v: &NomValue,
    a: &AtomSet,
    b: &AtomSet,
    budget: u64,
) -> Result<DemoReport, SupportError> {
    let (both, report) = intersect_supports(v, a, b, budget)?;
    let claims = vec![
        Claim {
            statement: format!("{} supports the value", crate::atoms::format_set(a)),
            element: v.clone(),
            outcome: Outcome::Support {
                report: is_support(v, a, budget),
            },
        },
        Claim {
            statement: format!("{} supports the value", crate::atoms::format_set(b)),
            element: v.clone(),
            outcome: Outcome::Support {
                report: is_support(v, b, budget),
            },
        },
        Claim {
            statement: format!("{} supports the value", crate::atoms::format_set(&both)),
            element: v.clone(),
            outcome: Outcome::Support { report },
        },
    ];
    Ok(DemoReport {
        construction: "binary intersection of finite supports".into(),
        claims,
        narrative: "Any swap (a b) with a, b outside A ∩ B fixes the value: either it fixes \
            A or B outright, or it factors as (b c)(a c)(b c) through some c outside A ∪ B."
            .into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::FinPerm;

    fn a(i: u32) -> Atom {
        Atom(i)
    }

    fn set(ix: &[u32]) -> AtomSet {
        ix.iter().copied().map(Atom).collect()
    }

    #[test]
    fn parse_specs() {
        assert_eq!("zeros".parse::<SeqSpec>().unwrap(), SeqSpec::Zeros);
        assert_eq!("one@{5}".parse::<SeqSpec>().unwrap(), SeqSpec::one_at([5]));
        assert_eq!("one@{2,7}".parse::<SeqSpec>().unwrap(), SeqSpec::one_at([2, 7]));
        assert_eq!("one@{2, 7}".parse::<SeqSpec>().unwrap().to_string(), "one@{2,7}");
        let r = "oracle:collatz-flag".parse::<SeqSpec>().unwrap();
        assert!(!r.is_decidable());
        assert_eq!(r.to_string(), "oracle:collatz-flag");
        assert!("oracle:nope".parse::<SeqSpec>().is_err());
        assert!("ones".parse::<SeqSpec>().is_err());
    }

    #[test]
    fn registry_sequences() {
        let late = lookup_oracle("late-one").unwrap();
        assert!(late.query(LATE_ONE_INDEX));
        assert!(!late.query(LATE_ONE_INDEX - 1));
        let collatz = lookup_oracle("collatz-flag").unwrap();
        assert!((0..200).all(|n| !collatz.query(n)));
        let goldbach = lookup_oracle("goldbach-flag").unwrap();
        assert!((0..200).all(|n| !goldbach.query(n)));
        assert!(is_prime(97) && !is_prime(91) && !is_prime(1));
    }

    #[test]
    fn alpha_a_shapes() {
        assert_eq!(
            make_alpha_a(&SeqSpec::Zeros, a(0)),
            NomValue::seq(Default::default(), Tail::Star)
        );
        assert_eq!(
            make_alpha_a(&SeqSpec::one_at([5]), a(0)),
            NomValue::seq([(5, a(0))].into_iter().collect(), Tail::Star)
        );
        let r = make_alpha_a(&SeqSpec::registered("collatz-flag").unwrap(), a(0));
        assert_eq!(crate::nomset::ambient_support(&r), set(&[0]));
    }

    #[test]
    fn alpha_equivariance_cases() {
        assert!(alpha_equivariance(&SeqSpec::Zeros, a(0), 0).is_verified());
        let r = alpha_equivariance(&SeqSpec::one_at([5, 9]), a(0), 6);
        assert_eq!(r.witness(), Some(&FinPerm::transposition(a(0), a(1))));
        let Verdict::Refuted { detail, .. } = &r.verdict else { unreachable!() };
        assert!(detail.contains("position 5"));
        let late = SeqSpec::registered("late-one").unwrap();
        assert_eq!(alpha_equivariance(&late, a(0), 100).verdict, Verdict::Unknown);
        assert!(alpha_equivariance(&late, a(0), LATE_ONE_INDEX + 1).is_refuted());
    }

    #[test]
    fn l_sets() {
        assert_eq!(l_set(&SeqSpec::Zeros, a(0)).decided_members(), Some(set(&[])));
        assert_eq!(l_set(&SeqSpec::one_at([2]), a(0)).decided_members(), Some(set(&[0])));
        let r = l_set(&SeqSpec::registered("collatz-flag").unwrap(), a(0));
        assert!(r.membership.has_oracle());
    }

    #[test]
    fn least_support_of_oracle_alpha_is_the_l_set() {
        let spec = SeqSpec::registered("goldbach-flag").unwrap();
        let least = least_support(&make_alpha_a(&spec, a(0)), 50);
        let LeastSupport::Conditional(c) = least else {
            panic!("expected conditional")
        };
        assert_eq!(c.as_cond_set(), Some(l_set(&spec, a(0))));
    }

    #[test]
    fn abar_equivariance_tracks_phi() {
        let eqv = |phi: Prop| is_equivariant(&NomValue::CondSet(make_abar(phi, a(0))), 20);
        assert!(eqv(Prop::TRUE).is_verified());
        assert_eq!(
            eqv(Prop::FALSE).witness(),
            Some(&FinPerm::transposition(a(0), a(1)))
        );
        let phi = Prop::oracle("open", |_| None);
        assert_eq!(eqv(phi.clone()).verdict, Verdict::Conditional(phi));
    }

    #[test]
    fn support_family_members() {
        let fam = make_support_family(Prop::TRUE, a(0), 0);
        assert_eq!(fam.members.len(), 2);
        assert!(fam.members.iter().all(|m| m.report.is_verified()));
        let fam = make_support_family(Prop::FALSE, a(0), 0);
        assert_eq!(fam.members.len(), 1);
        assert_eq!(fam.members[0].support, set(&[0]));
        assert!(fam.members[0].report.is_verified());
        assert_eq!(fam.intersection().decided_members(), Some(set(&[0])));
        let phi = Prop::oracle("open", |_| None);
        let fam = make_support_family(phi.clone(), a(0), 10);
        assert_eq!(fam.members[0].guard, phi.clone());
        assert_eq!(fam.members[0].report.verdict, Verdict::Conditional(phi));
        assert!(fam.members[1].report.is_verified());
    }

    #[test]
    fn s1_s2_are_disjoint_supports() {
        let d = make_s1_s2(Prop::TRUE, a(0), 0);
        assert_eq!(d.s1.decided_members(), Some(set(&[0])));
        assert_eq!(d.s2.decided_members(), Some(set(&[])));
        assert!(d.intersection_is_empty());
        let d = make_s1_s2(Prop::FALSE, a(0), 0);
        assert_eq!(d.s1.decided_members(), Some(set(&[])));
        assert_eq!(d.s2.decided_members(), Some(set(&[0])));
        assert!(d.intersection_is_empty());
        let psi = SeqSpec::registered("collatz-flag").unwrap().all_zeros();
        let d = make_s1_s2(psi, a(0), 30);
        assert!(d.intersection_is_empty());
        assert!(d.s1_report.is_verified(), "{}", d.s1_report);
        assert!(d.s2_report.is_verified(), "{}", d.s2_report);
    }

    #[test]
    fn wlpo_rows() {
        let specs = vec![
            SeqSpec::Zeros,
            SeqSpec::one_at([0]),
            SeqSpec::registered("collatz-flag").unwrap(),
        ];
        let report = wlpo_demo(&specs, a(0), 100);
        let rows: Vec<&Outcome> = report.claims.iter().map(|c| &c.outcome).collect();
        assert_eq!(
            rows[0],
            &Outcome::Least {
                least: LeastSupport::Exact(set(&[]))
            }
        );
        assert_eq!(
            rows[1],
            &Outcome::Least {
                least: LeastSupport::Exact(set(&[0]))
            }
        );
        assert_eq!(rows[2].status(), Status::Undecided);
        assert_eq!(report.status(), Status::Undecided);
        assert_eq!(wlpo_demo(&specs[..2], a(0), 0).status(), Status::Settled);
    }

    #[test]
    fn demo_statuses() {
        assert_eq!(abar_demo(Prop::TRUE, a(0), 5).status(), Status::Settled);
        assert_eq!(abar_demo(Prop::FALSE, a(0), 5).status(), Status::Refuted);
        let psi = SeqSpec::registered("late-one").unwrap().all_zeros();
        assert_eq!(abar_demo(psi.clone(), a(0), 5).status(), Status::Undecided);
        assert_eq!(s1s2_demo(psi, a(0), 5).status(), Status::Settled);
        let v = NomValue::Atom(a(0));
        let r = intersection_demo(&v, &set(&[0, 1]), &set(&[0, 2]), 0).unwrap();
        assert_eq!(r.status(), Status::Settled);
        assert!(intersection_demo(&v, &set(&[1]), &set(&[0]), 0).is_err());
    }
}
