//! Propositions that may only be semi-decidable.
//!
//! A [`Prop`] is either decided outright or built from budgeted oracles. Evaluation
//! is three-valued: an oracle that has not settled within its budget answers
//! [`Truth::Unknown`], and the connectives follow the strong Kleene tables.
//! Nothing here ever turns an unknown into a guess.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

/// A total, deterministic binary sequence `ℕ → 2`, identified by name.
#[derive(Clone)]
pub struct BinSeqOracle {
    name: Arc<str>,
    query: Arc<dyn Fn(u64) -> bool + Send + Sync>,
}

impl BinSeqOracle {
    pub fn new<F>(name: impl Into<String>, query: F) -> BinSeqOracle
    where
        F: Fn(u64) -> bool + Send + Sync + 'static,
    {
        BinSeqOracle {
            name: Arc::from(name.into()),
            query: Arc::new(query),
        }
    }

    /// The sequence that is 1 exactly on `positions`.
    pub fn one_at(positions: &BTreeSet<u64>) -> BinSeqOracle {
        let items: Vec<String> = positions.iter().map(ToString::to_string).collect();
        let set = positions.clone();
        BinSeqOracle::new(format!("one@{{{}}}", items.join(",")), move |n| {
            set.contains(&n)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn query(&self, n: u64) -> bool {
        (self.query)(n)
    }
}

impl PartialEq for BinSeqOracle {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for BinSeqOracle {}

impl fmt::Debug for BinSeqOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinSeqOracle({})", self.name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }
}

impl From<bool> for Truth {
    fn from(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

/// Result of evaluating a proposition under a budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub truth: Truth,
    pub budget_used: u64,
    /// Where the answer came from, e.g. the position at which a search hit a 1.
    pub detail: Option<String>,
}

impl Evaluation {
    pub fn decided(value: bool) -> Evaluation {
        Evaluation {
            truth: value.into(),
            budget_used: 0,
            detail: None,
        }
    }
}

/// A semi-decision procedure. Answers must be monotone in the budget: once
/// settled at budget `b` the same answer comes back for every larger budget.
pub trait SemiDecision: Send + Sync {
    fn decide(&self, budget: u64) -> Evaluation;

    /// Text form. Two procedures with the same description are treated as the
    /// same proposition.
    fn describe(&self) -> String;

    /// Whether `¬¬p → p` may be assumed.
    fn stable(&self) -> bool {
        false
    }
}

/// `∀n ∉ skip. α(n) = 0`. Each inspected position costs one unit.
#[derive(Debug, Clone)]
pub struct AllZeros {
    pub oracle: BinSeqOracle,
    pub skip: BTreeSet<u64>,
}

impl SemiDecision for AllZeros {
    fn decide(&self, budget: u64) -> Evaluation {
        let mut used = 0;
        let mut n = 0u64;
        while used < budget {
            if !self.skip.contains(&n) {
                used += 1;
                if self.oracle.query(n) {
                    return Evaluation {
                        truth: Truth::False,
                        budget_used: used,
                        detail: Some(format!("{}({n}) = 1 at position {n}", self.oracle.name())),
                    };
                }
            }
            n += 1;
        }
        Evaluation {
            truth: Truth::Unknown,
            budget_used: used,
            detail: Some(format!("no 1 in the first {used} positions")),
        }
    }

    fn describe(&self) -> String {
        if self.skip.is_empty() {
            format!("allzeros({})", self.oracle.name())
        } else {
            format!("allzeros({}, {})", self.oracle.name(), format_positions(&self.skip))
        }
    }

    // ∀n α(n)=0 with α decidable is stable under double negation.
    fn stable(&self) -> bool {
        true
    }
}

/// `∀n ∉ skip. α(n) = β(n)`. Each position costs two units.
#[derive(Debug, Clone)]
pub struct Agree {
    pub left: BinSeqOracle,
    pub right: BinSeqOracle,
    pub skip: BTreeSet<u64>,
}

impl SemiDecision for Agree {
    fn decide(&self, budget: u64) -> Evaluation {
        let mut used = 0;
        let mut n = 0u64;
        while used + 2 <= budget {
            if !self.skip.contains(&n) {
                used += 2;
                if self.left.query(n) != self.right.query(n) {
                    return Evaluation {
                        truth: Truth::False,
                        budget_used: used,
                        detail: Some(format!("sequences differ at position {n}")),
                    };
                }
            }
            n += 1;
        }
        Evaluation {
            truth: Truth::Unknown,
            budget_used: used,
            detail: None,
        }
    }

    fn describe(&self) -> String {
        if self.skip.is_empty() {
            format!("agree({}, {})", self.left.name(), self.right.name())
        } else {
            format!(
                "agree({}, {}, {})",
                self.left.name(),
                self.right.name(),
                format_positions(&self.skip)
            )
        }
    }

    fn stable(&self) -> bool {
        true
    }
}

struct FnDecision<F> {
    description: String,
    semi: F,
    stable: bool,
}

impl<F> SemiDecision for FnDecision<F>
where
    F: Fn(u64) -> Option<bool> + Send + Sync,
{
    fn decide(&self, budget: u64) -> Evaluation {
        match (self.semi)(budget) {
            Some(b) => Evaluation {
                truth: b.into(),
                budget_used: budget,
                detail: None,
            },
            None => Evaluation {
                truth: Truth::Unknown,
                budget_used: budget,
                detail: None,
            },
        }
    }

    fn describe(&self) -> String {
        format!("oracle({})", self.description)
    }

    fn stable(&self) -> bool {
        self.stable
    }
}

#[derive(Clone)]
pub struct OracleProp(Arc<dyn SemiDecision>);

impl OracleProp {
    pub fn decide(&self, budget: u64) -> Evaluation {
        self.0.decide(budget)
    }

    pub fn describe(&self) -> String {
        self.0.describe()
    }

    pub fn stable(&self) -> bool {
        self.0.stable()
    }
}

impl PartialEq for OracleProp {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.describe() == other.describe()
    }
}

impl Eq for OracleProp {}

impl fmt::Debug for OracleProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Truth status of a formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prop {
    Decided(bool),
    Oracle(OracleProp),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
}

impl Prop {
    pub const TRUE: Prop = Prop::Decided(true);
    pub const FALSE: Prop = Prop::Decided(false);

    pub fn from_decision<D: SemiDecision + 'static>(d: D) -> Prop {
        Prop::Oracle(OracleProp(Arc::new(d)))
    }

    /// A proposition given by a raw semi-decision `budget -> Some(answer) | None`.
    /// The closure must be monotone in the budget.
    pub fn oracle<F>(description: impl Into<String>, semi: F) -> Prop
    where
        F: Fn(u64) -> Option<bool> + Send + Sync + 'static,
    {
        Prop::from_decision(FnDecision {
            description: description.into(),
            semi,
            stable: false,
        })
    }

    /// Like [`Prop::oracle`] but also asserts `¬¬p → p`.
    pub fn stable_oracle<F>(description: impl Into<String>, semi: F) -> Prop
    where
        F: Fn(u64) -> Option<bool> + Send + Sync + 'static,
    {
        Prop::from_decision(FnDecision {
            description: description.into(),
            semi,
            stable: true,
        })
    }

    pub fn all_zeros(oracle: BinSeqOracle) -> Prop {
        Prop::all_zeros_except(oracle, BTreeSet::new())
    }

    pub fn all_zeros_except(oracle: BinSeqOracle, skip: BTreeSet<u64>) -> Prop {
        Prop::from_decision(AllZeros { oracle, skip })
    }

    pub fn agree(left: BinSeqOracle, right: BinSeqOracle, skip: BTreeSet<u64>) -> Prop {
        if left == right {
            return Prop::TRUE;
        }
        Prop::from_decision(Agree { left, right, skip })
    }

    // The smart constructors only fold steps that are valid intuitionistically:
    // `p ∨ ¬p` is left alone, `p ∧ ¬p` collapses to false.

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: Prop) -> Prop {
        match p {
            Prop::Decided(b) => Prop::Decided(!b),
            other => Prop::Not(Box::new(other)),
        }
    }

    pub fn and(p: Prop, q: Prop) -> Prop {
        match (p, q) {
            (Prop::Decided(false), _) | (_, Prop::Decided(false)) => Prop::FALSE,
            (Prop::Decided(true), x) | (x, Prop::Decided(true)) => x,
            (x, y) if x == y => x,
            (x, y) if x.is_negation_of(&y) || y.is_negation_of(&x) => Prop::FALSE,
            (x, y) => Prop::And(Box::new(x), Box::new(y)),
        }
    }

    pub fn or(p: Prop, q: Prop) -> Prop {
        match (p, q) {
            (Prop::Decided(true), _) | (_, Prop::Decided(true)) => Prop::TRUE,
            (Prop::Decided(false), x) | (x, Prop::Decided(false)) => x,
            (x, y) if x == y => x,
            (x, y) => Prop::Or(Box::new(x), Box::new(y)),
        }
    }

    pub fn iff(p: Prop, q: Prop) -> Prop {
        if p == q {
            return Prop::TRUE;
        }
        Prop::or(
            Prop::and(p.clone(), q.clone()),
            Prop::and(Prop::not(p), Prop::not(q)),
        )
    }

    /// `p ∨ ¬p`.
    pub fn excluded_middle(p: Prop) -> Prop {
        Prop::or(p.clone(), Prop::not(p))
    }

    fn is_negation_of(&self, other: &Prop) -> bool {
        matches!(self, Prop::Not(inner) if **inner == *other)
    }

    pub fn as_decided(&self) -> Option<bool> {
        match self {
            Prop::Decided(b) => Some(*b),
            _ => None,
        }
    }

    pub fn is_decided(&self) -> bool {
        self.as_decided().is_some()
    }

    /// Whether any oracle occurs in the proposition.
    pub fn has_oracle(&self) -> bool {
        match self {
            Prop::Decided(_) => false,
            Prop::Oracle(_) => true,
            Prop::Not(p) => p.has_oracle(),
            Prop::And(p, q) | Prop::Or(p, q) => p.has_oracle() || q.has_oracle(),
        }
    }

    /// Whether `¬¬p → p` holds for this formula.
    pub fn is_stable(&self) -> bool {
        match self {
            Prop::Decided(_) | Prop::Not(_) => true,
            Prop::Oracle(o) => o.stable(),
            Prop::And(p, q) => p.is_stable() && q.is_stable(),
            Prop::Or(..) => false,
        }
    }

    /// Three-valued evaluation; the budget is shared left to right across the
    /// oracles that get consulted.
    pub fn evaluate(&self, budget: u64) -> Evaluation {
        match self {
            Prop::Decided(b) => Evaluation::decided(*b),
            Prop::Oracle(o) => o.decide(budget),
            Prop::Not(p) => {
                let e = p.evaluate(budget);
                Evaluation {
                    truth: e.truth.not(),
                    ..e
                }
            }
            Prop::And(p, q) => Prop::evaluate_pair(p, q, budget, Truth::False),
            Prop::Or(p, q) => Prop::evaluate_pair(p, q, budget, Truth::True),
        }
    }

    fn evaluate_pair(p: &Prop, q: &Prop, budget: u64, absorbing: Truth) -> Evaluation {
        let left = p.evaluate(budget);
        if left.truth == absorbing {
            return left;
        }
        let right = q.evaluate(budget.saturating_sub(left.budget_used));
        let used = left.budget_used + right.budget_used;
        let truth = if right.truth == absorbing {
            absorbing
        } else if left.truth == Truth::Unknown || right.truth == Truth::Unknown {
            Truth::Unknown
        } else {
            absorbing.not()
        };
        let detail = if right.truth == absorbing {
            right.detail
        } else {
            left.detail.or(right.detail)
        };
        Evaluation {
            truth,
            budget_used: used,
            detail,
        }
    }

    /// Sound but incomplete syntactic check of `hyp ⊢ goal` in intuitionistic
    /// logic, with double-negation elimination allowed for stable formulas.
    pub fn entails(hyp: &Prop, goal: &Prop) -> bool {
        if goal == &Prop::TRUE || hyp == &Prop::FALSE || hyp == goal {
            return true;
        }
        match goal {
            Prop::Or(l, r) if Prop::entails(hyp, l) || Prop::entails(hyp, r) => return true,
            Prop::And(l, r) => return Prop::entails(hyp, l) && Prop::entails(hyp, r),
            _ => {}
        }
        match hyp {
            Prop::And(l, r) => Prop::entails(l, goal) || Prop::entails(r, goal),
            Prop::Or(l, r) => Prop::entails(l, goal) && Prop::entails(r, goal),
            Prop::Not(inner) => match inner.as_ref() {
                Prop::Not(p) if p.is_stable() => Prop::entails(p, goal),
                _ => false,
            },
            _ => false,
        }
    }
}

fn format_positions(set: &BTreeSet<u64>) -> String {
    let items: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(p: &Prop) -> String {
            match p {
                Prop::Decided(_) | Prop::Oracle(_) => p.to_string(),
                _ => format!("({p})"),
            }
        }
        match self {
            Prop::Decided(b) => write!(f, "{b}"),
            Prop::Oracle(o) => f.write_str(&o.describe()),
            Prop::Not(p) => write!(f, "not {}", operand(p)),
            Prop::And(p, q) => write!(f, "and {} {}", operand(p), operand(q)),
            Prop::Or(p, q) => write!(f, "or {} {}", operand(p), operand(q)),
        }
    }
}

impl Serialize for Prop {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn late(n: u64) -> BinSeqOracle {
        BinSeqOracle::new(format!("late{n}"), move |k| k == n)
    }

    #[test]
    fn all_zeros_search_costs_one_unit_per_position() {
        let p = Prop::all_zeros(late(5));
        let e = p.evaluate(5);
        assert_eq!(e.truth, Truth::Unknown);
        assert_eq!(e.budget_used, 5);
        let e = p.evaluate(6);
        assert_eq!(e.truth, Truth::False);
        assert_eq!(e.budget_used, 6);
        assert!(e.detail.unwrap().contains("position 5"));
        assert_eq!(p.evaluate(0).truth, Truth::Unknown);
    }

    #[test]
    fn skipped_positions_are_free() {
        let skip: BTreeSet<u64> = [5].into_iter().collect();
        let p = Prop::all_zeros_except(late(5), skip);
        assert_eq!(p.evaluate(50).truth, Truth::Unknown);
        assert_eq!(p.to_string(), "allzeros(late5, {5})");
    }

    #[test]
    fn monotone_in_budget() {
        let p = Prop::not(Prop::all_zeros(late(7)));
        let answers: Vec<Truth> = (0..20).map(|b| p.evaluate(b).truth).collect();
        let first = answers.iter().position(|t| *t != Truth::Unknown).unwrap();
        assert_eq!(first, 8);
        assert!(answers[first..].iter().all(|t| *t == Truth::True));
    }

    #[test]
    fn folding_is_intuitionistic() {
        let psi = Prop::all_zeros(late(3));
        assert_eq!(Prop::and(psi.clone(), Prop::not(psi.clone())), Prop::FALSE);
        assert!(matches!(Prop::excluded_middle(psi.clone()), Prop::Or(..)));
        assert_eq!(Prop::not(Prop::TRUE), Prop::FALSE);
        assert_eq!(Prop::iff(psi.clone(), psi.clone()), Prop::TRUE);
        assert_eq!(Prop::and(psi.clone(), psi.clone()), psi);
        assert_eq!(Prop::excluded_middle(Prop::TRUE), Prop::TRUE);
    }

    #[test]
    fn kleene_connectives() {
        let never = Prop::oracle("never", |_| None);
        let yes = Prop::oracle("yes", |_| Some(true));
        assert_eq!(Prop::or(never.clone(), yes.clone()).evaluate(3).truth, Truth::True);
        assert_eq!(Prop::and(never.clone(), yes).evaluate(3).truth, Truth::Unknown);
        let no = Prop::oracle("no", |_| Some(false));
        assert_eq!(Prop::and(never, no).evaluate(3).truth, Truth::False);
    }

    #[test]
    fn entailment() {
        let psi = Prop::all_zeros(late(3));
        let em = Prop::excluded_middle(psi.clone());
        assert!(Prop::entails(&psi, &em));
        assert!(Prop::entails(&Prop::not(psi.clone()), &em));
        // ¬¬ψ ⊢ ψ ∨ ¬ψ needs stability of ψ
        assert!(Prop::entails(&Prop::not(Prop::not(psi.clone())), &em));
        let opaque = Prop::oracle("opaque", |_| None);
        let em2 = Prop::excluded_middle(opaque.clone());
        assert!(!Prop::entails(&Prop::not(Prop::not(opaque.clone())), &em2));
        assert!(!Prop::entails(&Prop::TRUE, &psi));
    }

    #[test]
    fn display() {
        let psi = Prop::all_zeros(late(3));
        assert_eq!(Prop::not(psi.clone()).to_string(), "not allzeros(late3)");
        assert_eq!(
            Prop::excluded_middle(psi).to_string(),
            "or allzeros(late3) (not allzeros(late3))"
        );
    }
}
