//! Support checking, equivariance, intersection of supports and least support.
//!
//! A candidate `S` is checked against the value's ambient support `A`: `S` is a
//! support exactly when every swap `(a b)` with `a ∈ A ∖ S` and `b` fresh for
//! `A ∪ S` fixes the value. Any permutation fixing `S` pointwise is a product of
//! swaps of atoms it moves, and each such swap can be routed through a fresh
//! atom with `(a b) = (b c) ∘ (a c) ∘ (b c)`, so single swaps suffice.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::atoms::{fresh, format_set, Atom, AtomSet};
use crate::exec::Exec;
use crate::nomset::{act, ambient_support, eq, eq_explained, CondSet, NomValue};
use crate::perm::FinPerm;
use crate::prop::{Prop, Truth};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    /// `witness` fixes the candidate pointwise but moves the value.
    Refuted { witness: FinPerm, detail: String },
    /// The candidate is a support iff the proposition holds.
    Conditional(Prop),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    pub verdict: Verdict,
    pub budget_used: u64,
    pub notes: Vec<String>,
}

impl SupportReport {
    fn new(verdict: Verdict, budget_used: u64) -> SupportReport {
        SupportReport {
            verdict,
            budget_used,
            notes: Vec::new(),
        }
    }

    pub fn verified() -> SupportReport {
        SupportReport::new(Verdict::Verified, 0)
    }

    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self.verdict, Verdict::Refuted { .. })
    }

    pub fn witness(&self) -> Option<&FinPerm> {
        match &self.verdict {
            Verdict::Refuted { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn condition(&self) -> Option<&Prop> {
        match &self.verdict {
            Verdict::Conditional(p) => Some(p),
            _ => None,
        }
    }

    pub fn verdict_name(&self) -> &'static str {
        match self.verdict {
            Verdict::Verified => "verified",
            Verdict::Refuted { .. } => "refuted",
            Verdict::Conditional(_) => "conditional",
            Verdict::Unknown => "unknown",
        }
    }
}

impl fmt::Display for SupportReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Verified => f.write_str("verified")?,
            Verdict::Refuted { witness, detail } => {
                write!(f, "refuted by {witness}: {detail}")?
            }
            Verdict::Conditional(p) => write!(f, "conditional on {p}")?,
            Verdict::Unknown => f.write_str("unknown")?,
        }
        write!(f, " (budget used: {})", self.budget_used)
    }
}

impl Serialize for SupportReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SupportReport", 6)?;
        s.serialize_field("verdict", self.verdict_name())?;
        match &self.verdict {
            Verdict::Refuted { witness, detail } => {
                s.serialize_field("witness", witness)?;
                s.serialize_field("detail", detail)?;
            }
            Verdict::Conditional(p) => s.serialize_field("condition", p)?,
            _ => {}
        }
        s.serialize_field("budget_used", &self.budget_used)?;
        s.serialize_field("notes", &self.notes)?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SupportError {
    #[error("{set} is not a verified support: {report}")]
    Precondition { set: String, report: SupportReport },
    #[error("universe of {0} atoms is too large for exhaustive enumeration (limit 7)")]
    UniverseTooLarge(usize),
    #[error("atoms {0} of the value lie outside the universe")]
    OutsideUniverse(String),
    #[error("the universe needs at least one atom outside the value's atoms")]
    NoSpareAtom,
    #[error("value contains an oracle: {0}")]
    NotOracleFree(String),
    #[error("no support function exists constructively for the sequence family (it would decide every all-zeros statement)")]
    NoSupportFunction,
    #[error("`{value}` is not a member of the {family} family")]
    NotInFamily { value: String, family: String },
}

fn equality(v: &NomValue, w: &NomValue) -> (Prop, Option<String>) {
    // act preserves shape, so the two sides always match.
    eq_explained(v, w).expect("permutation action preserves shape")
}

/// Checks whether `candidate` supports `v`, spending at most `budget` oracle queries.
pub fn is_support(v: &NomValue, candidate: &AtomSet, budget: u64) -> SupportReport {
    let ambient = ambient_support(v);
    let mut notes = Vec::new();
    let outside: AtomSet = candidate.difference(&ambient).copied().collect();
    if !outside.is_empty() {
        notes.push(format!(
            "ignored {} (outside the value's atoms)",
            format_set(&outside)
        ));
    }
    let candidate: AtomSet = candidate.intersection(&ambient).copied().collect();
    let spare = fresh(&ambient);

    let mut used = 0u64;
    let mut pending: Vec<Prop> = Vec::new();
    for &a in ambient.difference(&candidate) {
        let swap = FinPerm::transposition(a, spare);
        let (prop, note) = equality(&act(&swap, v), v);
        let outcome = prop.evaluate(budget.saturating_sub(used));
        used += outcome.budget_used;
        match outcome.truth {
            Truth::True => {}
            Truth::False => {
                let detail = note
                    .or(outcome.detail)
                    .unwrap_or_else(|| "the swapped value differs".into());
                let mut report = SupportReport::new(
                    Verdict::Refuted {
                        witness: swap,
                        detail,
                    },
                    used,
                );
                report.notes = notes;
                return report;
            }
            Truth::Unknown => {
                if !pending.contains(&prop) {
                    pending.push(prop);
                }
            }
        }
    }
    let verdict = match pending.len() {
        0 => Verdict::Verified,
        1 => Verdict::Conditional(pending.pop().unwrap()),
        _ => Verdict::Unknown,
    };
    let mut report = SupportReport::new(verdict, used);
    report.notes = notes;
    report
}

pub fn is_equivariant(v: &NomValue, budget: u64) -> SupportReport {
    is_support(v, &AtomSet::new(), budget)
}

/// Replays a refutation: true when `witness` fixes `candidate` pointwise and
/// provably moves `v` within `budget`.
pub fn replay_witness(v: &NomValue, candidate: &AtomSet, witness: &FinPerm, budget: u64) -> bool {
    if !witness.fixes_pointwise(&candidate.intersection(&ambient_support(v)).copied().collect()) {
        return false;
    }
    match eq(&act(witness, v), v) {
        Ok(p) => p.evaluate(budget).truth == Truth::False,
        Err(_) => false,
    }
}

/// Checks both inputs, then reports on `A ∩ B`.
pub fn intersect_supports(
    v: &NomValue,
    a: &AtomSet,
    b: &AtomSet,
    budget: u64,
) -> Result<(AtomSet, SupportReport), SupportError> {
    for set in [a, b] {
        let report = is_support(v, set, budget);
        if !report.is_verified() {
            return Err(SupportError::Precondition {
                set: format_set(set),
                report,
            });
        }
    }
    let both: AtomSet = a.intersection(b).copied().collect();
    let report = is_support(v, &both, budget);
    Ok((both, report))
}

/// A least support whose membership may depend on undecided propositions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalSupport {
    pub definite: AtomSet,
    /// `(a, p)`: `a` belongs to the least support iff `p`.
    pub guarded: Vec<(Atom, Prop)>,
}

impl ConditionalSupport {
    /// The subset-of-a-singleton form, when that is what this is.
    pub fn as_cond_set(&self) -> Option<CondSet> {
        match (self.definite.is_empty(), self.guarded.as_slice()) {
            (true, [(a, p)]) => Some(CondSet::subset(*a, p.clone())),
            _ => None,
        }
    }
}

impl fmt::Display for ConditionalSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.definite.iter().map(ToString::to_string).collect();
        for (a, p) in &self.guarded {
            parts.push(format!("{a} if {p}"));
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeastSupport {
    Exact(AtomSet),
    Conditional(ConditionalSupport),
    Unknown { budget_used: u64 },
}

impl LeastSupport {
    pub fn exact(&self) -> Option<&AtomSet> {
        match self {
            LeastSupport::Exact(s) => Some(s),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LeastSupport::Exact(_) => "exact",
            LeastSupport::Conditional(_) => "conditional",
            LeastSupport::Unknown { .. } => "unknown",
        }
    }
}

impl fmt::Display for LeastSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeastSupport::Exact(s) => f.write_str(&format_set(s)),
            LeastSupport::Conditional(c) => write!(f, "{c}"),
            LeastSupport::Unknown { budget_used } => {
                write!(f, "unknown (budget used: {budget_used})")
            }
        }
    }
}

impl Serialize for LeastSupport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LeastSupport", 3)?;
        s.serialize_field("kind", self.kind())?;
        match self {
            LeastSupport::Exact(set) => s.serialize_field("atoms", set)?,
            LeastSupport::Conditional(c) => {
                s.serialize_field("atoms", &c.definite)?;
                let guarded: Vec<(Atom, String)> =
                    c.guarded.iter().map(|(a, p)| (*a, p.to_string())).collect();
                s.serialize_field("guarded", &guarded)?;
            }
            LeastSupport::Unknown { budget_used } => s.serialize_field("budget_used", budget_used)?,
        }
        s.end()
    }
}

/// Shrinks the ambient support one atom at a time, in increasing order.
pub fn least_support(v: &NomValue, budget: u64) -> LeastSupport {
    let order: Vec<Atom> = ambient_support(v).into_iter().collect();
    least_support_in_order(v, budget, &order)
}

/// [`least_support`] with an explicit removal order. Atoms of `order` outside
/// the ambient support are skipped; ambient atoms missing from `order` are tried
/// last in increasing order.
pub fn least_support_in_order(v: &NomValue, budget: u64, order: &[Atom]) -> LeastSupport {
    let ambient = ambient_support(v);
    let mut sequence: Vec<Atom> = order.iter().copied().filter(|a| ambient.contains(a)).collect();
    sequence.extend(ambient.iter().filter(|a| !order.contains(a)));

    let mut current = ambient;
    let mut guarded = Vec::new();
    let mut unknown = false;
    let mut used = 0u64;
    for a in sequence {
        let mut smaller = current.clone();
        smaller.remove(&a);
        let report = is_support(v, &smaller, budget.saturating_sub(used));
        used += report.budget_used;
        match report.verdict {
            Verdict::Verified => current = smaller,
            Verdict::Refuted { .. } => {}
            Verdict::Conditional(p) => guarded.push((a, Prop::not(p))),
            Verdict::Unknown => unknown = true,
        }
    }
    if unknown {
        return LeastSupport::Unknown { budget_used: used };
    }
    if guarded.is_empty() {
        return LeastSupport::Exact(current);
    }
    for (a, _) in &guarded {
        current.remove(a);
    }
    LeastSupport::Conditional(ConditionalSupport {
        definite: current,
        guarded,
    })
}

/// Support check for a candidate `{x ∈ {a} | g}` whose membership may be undecided.
///
/// Reduces to the checks for `{a}` and `∅`; when `g` is undecided the candidate
/// is a support as soon as `¬g` entails that `∅` is one.
pub fn is_conditional_support(v: &NomValue, candidate: &CondSet, budget: u64) -> SupportReport {
    let single: AtomSet = [candidate.base].into_iter().collect();
    let guard = candidate.membership.evaluate(budget);
    let remaining = budget.saturating_sub(guard.budget_used);
    let mut report = match guard.truth {
        Truth::True => is_support(v, &single, remaining),
        Truth::False => is_support(v, &AtomSet::new(), remaining),
        Truth::Unknown => {
            let with_base = is_support(v, &single, remaining);
            if !with_base.is_verified() {
                return with_base;
            }
            let without = is_support(v, &AtomSet::new(), remaining);
            let spent = with_base.budget_used + without.budget_used;
            let g = candidate.membership.clone();
            let verdict = match without.verdict {
                Verdict::Verified => Verdict::Verified,
                Verdict::Refuted { .. } => Verdict::Conditional(g),
                Verdict::Conditional(p) => {
                    if Prop::entails(&Prop::not(g.clone()), &p) {
                        Verdict::Verified
                    } else {
                        Verdict::Conditional(Prop::or(g, p))
                    }
                }
                Verdict::Unknown => Verdict::Unknown,
            };
            SupportReport::new(verdict, spent)
        }
    };
    report.budget_used += guard.budget_used;
    report
}

/// Least support by exhaustive enumeration of every permutation of `universe`.
///
/// Independent of [`least_support`]: no fresh-swap reasoning, only the definition.
pub fn brute_force_least_support(v: &NomValue, universe: &AtomSet) -> Result<AtomSet, SupportError> {
    brute_force_least_support_with(Exec::default(), v, universe)
}

pub fn brute_force_least_support_with(
    exec: Exec,
    v: &NomValue,
    universe: &AtomSet,
) -> Result<AtomSet, SupportError> {
    if universe.len() > 7 {
        return Err(SupportError::UniverseTooLarge(universe.len()));
    }
    if !v.is_oracle_free() {
        return Err(SupportError::NotOracleFree(v.to_string()));
    }
    let ambient: Vec<Atom> = ambient_support(v).into_iter().collect();
    let outside: AtomSet = ambient.iter().filter(|a| !universe.contains(a)).copied().collect();
    if !outside.is_empty() {
        return Err(SupportError::OutsideUniverse(format_set(&outside)));
    }
    if universe.len() == ambient.len() && !ambient.is_empty() {
        return Err(SupportError::NoSpareAtom);
    }

    let atoms: Vec<Atom> = universe.iter().copied().collect();
    let perms = all_permutations(&atoms);
    // For each permutation: bitmask of ambient atoms it fixes, and whether it fixes v.
    let verdicts: Vec<Result<(u32, bool), SupportError>> = exec.map(&perms, |p| {
        let fixed_mask = ambient
            .iter()
            .enumerate()
            .filter(|(_, &a)| p.apply(a) == a)
            .fold(0u32, |m, (i, _)| m | (1 << i));
        match eq(&act(p, v), v) {
            Ok(Prop::Decided(same)) => Ok((fixed_mask, same)),
            _ => Err(SupportError::NotOracleFree(v.to_string())),
        }
    });
    let mut moving_masks = Vec::new();
    for r in verdicts {
        let (mask, same) = r?;
        if !same {
            moving_masks.push(mask);
        }
    }
    let full = (1u32 << ambient.len()) - 1;
    let mut least = full;
    for subset in 0..=full {
        // subset supports v iff no v-moving permutation fixes all of it
        let supports = moving_masks.iter().all(|&m| m & subset != subset);
        if supports {
            least &= subset;
        }
    }
    Ok(ambient
        .iter()
        .enumerate()
        .filter(|(i, _)| least & (1 << i) != 0)
        .map(|(_, &a)| a)
        .collect())
}

/// Every permutation of `atoms`, as finite permutations.
pub fn all_permutations(atoms: &[Atom]) -> Vec<FinPerm> {
    let mut images = atoms.to_vec();
    let mut out = Vec::new();
    permute(&mut images, 0, atoms, &mut out);
    out
}

fn permute(images: &mut Vec<Atom>, k: usize, domain: &[Atom], out: &mut Vec<FinPerm>) {
    if k == images.len() {
        out.push(FinPerm::from_images(domain, images).expect("images are a rearrangement"));
        return;
    }
    for i in k..images.len() {
        images.swap(k, i);
        permute(images, k + 1, domain, out);
        images.swap(k, i);
    }
}

/// Decidable families that carry a support function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Atoms,
    Nat,
    Unit,
    /// Coproducts whose summands are themselves decidable families, e.g. `𝔸 + 1`.
    CoproductOfDecidable,
    /// `(𝔸 + 1)^ℕ`.
    Sequences,
}

#[derive(Debug, Clone, Copy)]
pub struct SupportFunction {
    family: Family,
}

pub fn support_function(family: Family) -> Result<SupportFunction, SupportError> {
    match family {
        Family::Sequences => Err(SupportError::NoSupportFunction),
        family => Ok(SupportFunction { family }),
    }
}

impl SupportFunction {
    pub fn family(&self) -> Family {
        self.family
    }

    /// The least support of a member of the family.
    pub fn support(&self, v: &NomValue) -> Result<AtomSet, SupportError> {
        let member = match (self.family, v) {
            (Family::Atoms, NomValue::Atom(_)) => true,
            (Family::Nat, NomValue::Nat(_)) => true,
            (Family::Unit, NomValue::Unit) => true,
            (Family::CoproductOfDecidable, v) => decidable_member(v),
            _ => false,
        };
        if !member {
            return Err(SupportError::NotInFamily {
                value: v.to_string(),
                family: format!("{:?}", self.family),
            });
        }
        Ok(ambient_support(v))
    }
}

fn decidable_member(v: &NomValue) -> bool {
    match v {
        NomValue::Atom(_) | NomValue::Unit | NomValue::Nat(_) => true,
        NomValue::Inl(x) | NomValue::Inr(x) => decidable_member(x),
        _ => false,
    }
}
