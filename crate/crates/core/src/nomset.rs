//! Values of the nominal grammar and the permutation action on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::atoms::{Atom, AtomSet};
use crate::perm::FinPerm;
use crate::prop::{BinSeqOracle, Prop};

/// What a sequence does at positions without an explicit entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    /// Every other position is `∗`.
    Star,
    /// Position `n` is `atom` when `oracle(n) = 1` and `∗` otherwise.
    Oracle { oracle: BinSeqOracle, atom: Atom },
}

/// An element of `(𝔸 + 1)^ℕ` given by finitely many atom-valued entries over a tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqFun {
    exceptions: BTreeMap<u64, Atom>,
    tail: Tail,
}

impl SeqFun {
    /// Builds the sequence, dropping entries the tail already produces.
    pub fn new(exceptions: BTreeMap<u64, Atom>, tail: Tail) -> SeqFun {
        let exceptions = match &tail {
            Tail::Star => exceptions,
            Tail::Oracle { oracle, atom } => exceptions
                .into_iter()
                .filter(|(n, a)| !(a == atom && oracle.query(*n)))
                .collect(),
        };
        SeqFun { exceptions, tail }
    }

    /// The constant `∗` sequence.
    pub fn star() -> SeqFun {
        SeqFun::new(BTreeMap::new(), Tail::Star)
    }

    pub fn exceptions(&self) -> &BTreeMap<u64, Atom> {
        &self.exceptions
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// Value at position `n`; `None` is `∗`.
    pub fn value_at(&self, n: u64) -> Option<Atom> {
        if let Some(&a) = self.exceptions.get(&n) {
            return Some(a);
        }
        match &self.tail {
            Tail::Star => None,
            Tail::Oracle { oracle, atom } => oracle.query(n).then_some(*atom),
        }
    }

    fn act(&self, perm: &FinPerm) -> SeqFun {
        let exceptions = self
            .exceptions
            .iter()
            .map(|(&n, &a)| (n, perm.apply(a)))
            .collect();
        let tail = match &self.tail {
            Tail::Star => Tail::Star,
            Tail::Oracle { oracle, atom } => Tail::Oracle {
                oracle: oracle.clone(),
                atom: perm.apply(*atom),
            },
        };
        SeqFun::new(exceptions, tail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CondShape {
    /// `{x ∈ {a} | φ} ∪ (𝔸 ∖ {a})`
    Abar,
    /// `{x ∈ {a} | φ}`
    Subset,
}

/// A set of atoms in which membership of one distinguished atom is guarded by a
/// proposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondSet {
    pub base: Atom,
    pub membership: Prop,
    pub shape: CondShape,
}

impl CondSet {
    pub fn abar(base: Atom, membership: Prop) -> CondSet {
        CondSet {
            base,
            membership,
            shape: CondShape::Abar,
        }
    }

    pub fn subset(base: Atom, membership: Prop) -> CondSet {
        CondSet {
            base,
            membership,
            shape: CondShape::Subset,
        }
    }

    /// Membership of `x` as a proposition.
    pub fn contains(&self, x: Atom) -> Prop {
        if x == self.base {
            self.membership.clone()
        } else {
            Prop::Decided(self.shape == CondShape::Abar)
        }
    }

    /// For a subset-shaped set with decided guard, its elements.
    pub fn decided_members(&self) -> Option<AtomSet> {
        match (self.shape, self.membership.as_decided()) {
            (CondShape::Subset, Some(true)) => Some([self.base].into_iter().collect()),
            (CondShape::Subset, Some(false)) => Some(AtomSet::new()),
            _ => None,
        }
    }
}

/// A value of the nominal grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NomValue {
    Atom(Atom),
    Unit,
    Nat(u64),
    Inl(Box<NomValue>),
    Inr(Box<NomValue>),
    Pair(Box<NomValue>, Box<NomValue>),
    Seq(SeqFun),
    CondSet(CondSet),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot compare values of different shapes: `{left}` vs `{right}`")]
pub struct ShapeMismatch {
    pub left: String,
    pub right: String,
}

impl NomValue {
    pub fn atom(a: Atom) -> NomValue {
        NomValue::Atom(a)
    }

    pub fn inl(v: NomValue) -> NomValue {
        NomValue::Inl(Box::new(v))
    }

    pub fn inr(v: NomValue) -> NomValue {
        NomValue::Inr(Box::new(v))
    }

    pub fn pair(v: NomValue, w: NomValue) -> NomValue {
        NomValue::Pair(Box::new(v), Box::new(w))
    }

    pub fn seq(exceptions: BTreeMap<u64, Atom>, tail: Tail) -> NomValue {
        NomValue::Seq(SeqFun::new(exceptions, tail))
    }

    /// True when no oracle occurs anywhere in the value.
    pub fn is_oracle_free(&self) -> bool {
        match self {
            NomValue::Atom(_) | NomValue::Unit | NomValue::Nat(_) => true,
            NomValue::Inl(v) | NomValue::Inr(v) => v.is_oracle_free(),
            NomValue::Pair(v, w) => v.is_oracle_free() && w.is_oracle_free(),
            NomValue::Seq(s) => s.tail == Tail::Star,
            NomValue::CondSet(c) => !c.membership.has_oracle(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            NomValue::Inl(v) | NomValue::Inr(v) => 1 + v.depth(),
            NomValue::Pair(v, w) => 1 + v.depth().max(w.depth()),
            _ => 0,
        }
    }

    fn shape_name(&self) -> &'static str {
        match self {
            NomValue::Atom(_) => "atom",
            NomValue::Unit => "unit",
            NomValue::Nat(_) => "nat",
            NomValue::Inl(_) | NomValue::Inr(_) => "coproduct",
            NomValue::Pair(..) => "pair",
            NomValue::Seq(_) => "seq",
            NomValue::CondSet(_) => "condset",
        }
    }
}

/// The permutation action, by structural recursion.
///
/// Sequences have a discrete exponent, so the conjugation action is pointwise.
pub fn act(perm: &FinPerm, v: &NomValue) -> NomValue {
    match v {
        NomValue::Atom(a) => NomValue::Atom(perm.apply(*a)),
        NomValue::Unit => NomValue::Unit,
        NomValue::Nat(n) => NomValue::Nat(*n),
        NomValue::Inl(x) => NomValue::inl(act(perm, x)),
        NomValue::Inr(x) => NomValue::inr(act(perm, x)),
        NomValue::Pair(x, y) => NomValue::pair(act(perm, x), act(perm, y)),
        NomValue::Seq(s) => NomValue::Seq(s.act(perm)),
        NomValue::CondSet(c) => NomValue::CondSet(CondSet {
            base: perm.apply(c.base),
            membership: c.membership.clone(),
            shape: c.shape,
        }),
    }
}

/// Equality of two values as a proposition.
pub fn eq(v: &NomValue, w: &NomValue) -> Result<Prop, ShapeMismatch> {
    eq_explained(v, w).map(|(p, _)| p)
}

/// Like [`eq`], with a note locating the first decided difference.
pub fn eq_explained(v: &NomValue, w: &NomValue) -> Result<(Prop, Option<String>), ShapeMismatch> {
    use NomValue::*;
    let differ = |note: String| Ok((Prop::FALSE, Some(note)));
    match (v, w) {
        (Atom(a), Atom(b)) => {
            if a == b {
                Ok((Prop::TRUE, None))
            } else {
                differ(format!("{a} ≠ {b}"))
            }
        }
        (Unit, Unit) => Ok((Prop::TRUE, None)),
        (Nat(m), Nat(n)) => {
            if m == n {
                Ok((Prop::TRUE, None))
            } else {
                differ(format!("{m} ≠ {n}"))
            }
        }
        (Inl(x), Inl(y)) | (Inr(x), Inr(y)) => eq_explained(x, y),
        (Inl(_), Inr(_)) | (Inr(_), Inl(_)) => differ("different injections".into()),
        (Pair(x1, y1), Pair(x2, y2)) => {
            let (p, pn) = eq_explained(x1, x2)?;
            if p == Prop::FALSE {
                return Ok((p, pn.map(|n| format!("first component: {n}"))));
            }
            let (q, qn) = eq_explained(y1, y2)?;
            if q == Prop::FALSE {
                return Ok((q, qn.map(|n| format!("second component: {n}"))));
            }
            Ok((Prop::and(p, q), None))
        }
        (Seq(s), Seq(t)) => Ok(seq_eq(s, t)),
        (CondSet(c), CondSet(d)) => Ok(cond_eq(c, d)),
        _ => Err(ShapeMismatch {
            left: v.shape_name().into(),
            right: w.shape_name().into(),
        }),
    }
}

fn show_cell(x: Option<Atom>) -> String {
    x.map_or_else(|| "∗".to_string(), |a| a.to_string())
}

fn seq_eq(s: &SeqFun, t: &SeqFun) -> (Prop, Option<String>) {
    let listed: BTreeSet<u64> = s.exceptions.keys().chain(t.exceptions.keys()).copied().collect();
    for &n in &listed {
        let (x, y) = (s.value_at(n), t.value_at(n));
        if x != y {
            return (
                Prop::FALSE,
                Some(format!("position {n} changes: {} vs {}", show_cell(x), show_cell(y))),
            );
        }
    }
    // Unlisted positions are governed by the tails alone.
    let tails = match (&s.tail, &t.tail) {
        (Tail::Star, Tail::Star) => Prop::TRUE,
        (Tail::Oracle { oracle, .. }, Tail::Star) | (Tail::Star, Tail::Oracle { oracle, .. }) => {
            Prop::all_zeros_except(oracle.clone(), listed)
        }
        (
            Tail::Oracle {
                oracle: o1,
                atom: a1,
            },
            Tail::Oracle {
                oracle: o2,
                atom: a2,
            },
        ) => {
            if a1 == a2 {
                Prop::agree(o1.clone(), o2.clone(), listed)
            } else {
                Prop::and(
                    Prop::all_zeros_except(o1.clone(), listed.clone()),
                    Prop::all_zeros_except(o2.clone(), listed),
                )
            }
        }
    };
    (tails, None)
}

fn cond_eq(c: &CondSet, d: &CondSet) -> (Prop, Option<String>) {
    if c.shape != d.shape {
        return (
            Prop::FALSE,
            Some("a co-singleton set never equals a subset of a singleton".into()),
        );
    }
    let prop = if c.base == d.base {
        Prop::iff(c.membership.clone(), d.membership.clone())
    } else {
        // Membership of each base on the other side is decided by the shape.
        match c.shape {
            CondShape::Abar => Prop::and(c.membership.clone(), d.membership.clone()),
            CondShape::Subset => Prop::and(
                Prop::not(c.membership.clone()),
                Prop::not(d.membership.clone()),
            ),
        }
    };
    let note = (prop == Prop::FALSE).then(|| {
        format!(
            "membership of {} or {} differs between the two sets",
            c.base, d.base
        )
    });
    (prop, note)
}

/// Every atom occurring in the value. Always a support.
pub fn ambient_support(v: &NomValue) -> AtomSet {
    let mut out = AtomSet::new();
    collect_atoms(v, &mut out);
    out
}

fn collect_atoms(v: &NomValue, out: &mut AtomSet) {
    match v {
        NomValue::Atom(a) => {
            out.insert(*a);
        }
        NomValue::Unit | NomValue::Nat(_) => {}
        NomValue::Inl(x) | NomValue::Inr(x) => collect_atoms(x, out),
        NomValue::Pair(x, y) => {
            collect_atoms(x, out);
            collect_atoms(y, out);
        }
        NomValue::Seq(s) => {
            out.extend(s.exceptions.values().copied());
            if let Tail::Oracle { atom, .. } = &s.tail {
                out.insert(*atom);
            }
        }
        NomValue::CondSet(c) => {
            out.insert(c.base);
        }
    }
}

impl fmt::Display for SeqFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .exceptions
            .iter()
            .map(|(n, a)| format!("{n}:{a}"))
            .collect();
        write!(f, "seq {{{}}} ", entries.join(", "))?;
        match &self.tail {
            Tail::Star => f.write_str("star"),
            Tail::Oracle { oracle, atom } => write!(f, "oracle({}, {atom})", oracle.name()),
        }
    }
}

impl fmt::Display for CondSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let keyword = match self.shape {
            CondShape::Abar => "abar",
            CondShape::Subset => "subset",
        };
        match &self.membership {
            p @ (Prop::Decided(_) | Prop::Oracle(_)) => write!(f, "{keyword} {} {p}", self.base),
            p => write!(f, "{keyword} {} ({p})", self.base),
        }
    }
}

impl fmt::Display for NomValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(v: &NomValue) -> String {
            match v {
                NomValue::Unit => v.to_string(),
                _ => format!("({v})"),
            }
        }
        match self {
            NomValue::Atom(a) => write!(f, "atom {a}"),
            NomValue::Unit => f.write_str("unit"),
            NomValue::Nat(n) => write!(f, "nat {n}"),
            NomValue::Inl(v) => write!(f, "inl {}", operand(v)),
            NomValue::Inr(v) => write!(f, "inr {}", operand(v)),
            NomValue::Pair(v, w) => write!(f, "pair {} {}", operand(v), operand(w)),
            NomValue::Seq(s) => write!(f, "{s}"),
            NomValue::CondSet(c) => write!(f, "{c}"),
        }
    }
}

impl Serialize for NomValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
