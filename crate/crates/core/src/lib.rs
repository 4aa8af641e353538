//! Nominal sets over a countable set of names: finite permutations, the
//! permutation action on a small value grammar, and a support calculus whose
//! answers stay honest when equality is only semi-decidable.
//!
//! Least finite support is computed exactly for values built from decidable
//! pieces. For values whose equality depends on an oracle sequence the result
//! is a conditional set or an explicit unknown, never a guess.

pub mod atoms;
pub mod cli;
pub mod counterexamples;
pub mod exec;
pub mod nomset;
pub mod perm;
pub mod prop;
pub mod suites;
pub mod support;
pub mod syntax;

pub use atoms::{atom_eq, fresh, Atom, AtomSet};
pub use exec::Exec;
pub use nomset::{act, ambient_support, eq, CondSet, CondShape, NomValue, SeqFun, Tail};
pub use perm::{conjugation_split, FinPerm, PermError};
pub use prop::{BinSeqOracle, Prop, Truth};
pub use support::{
    brute_force_least_support, intersect_supports, is_equivariant, is_support, least_support,
    support_function, Family, LeastSupport, SupportError, SupportReport, Verdict,
};
