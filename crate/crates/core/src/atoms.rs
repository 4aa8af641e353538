//! Names: a countably infinite set with decidable equality.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A name, identified by its index. Written `a<n>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom(pub u32);

/// Finite set of atoms, kept sorted by index.
pub type AtomSet = BTreeSet<Atom>;

impl Atom {
    pub const fn new(index: u32) -> Atom {
        Atom(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }
}

/// Decidable equality on names.
pub fn atom_eq(a: Atom, b: Atom) -> bool {
    a.0 == b.0
}

/// The least-index atom not in `avoid`.
///
/// Depends only on the set, so two presentations of the same set agree.
pub fn fresh<'a, I>(avoid: I) -> Atom
where
    I: IntoIterator<Item = &'a Atom>,
{
    let mut taken: Vec<u32> = avoid.into_iter().map(|a| a.0).collect();
    taken.sort_unstable();
    taken.dedup();
    let mut candidate = 0u32;
    for index in taken {
        if index == candidate {
            candidate += 1;
        } else if index > candidate {
            break;
        }
    }
    Atom(candidate)
}

pub fn format_set(set: &AtomSet) -> String {
    let items: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected an atom of the form a<n>, found `{0}`")]
pub struct AtomParseError(pub String);

impl FromStr for Atom {
    type Err = AtomParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s
            .strip_prefix('a')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| AtomParseError(s.to_string()))?;
        digits
            .parse::<u32>()
            .map(Atom)
            .map_err(|_| AtomParseError(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(ix: &[u32]) -> AtomSet {
        ix.iter().copied().map(Atom).collect()
    }

    #[test]
    fn equality_is_index_equality() {
        assert!(atom_eq(Atom(0), Atom(0)));
        assert!(!atom_eq(Atom(0), Atom(1)));
        assert!(atom_eq(Atom(7), Atom(7)));
    }

    #[test]
    fn fresh_takes_least_unused_index() {
        assert_eq!(fresh(&set(&[])), Atom(0));
        assert_eq!(fresh(&set(&[0, 1])), Atom(2));
        assert_eq!(fresh(&set(&[0, 2])), Atom(1));
        assert_eq!(fresh(&set(&[3, 4])), Atom(0));
    }

    #[test]
    fn fresh_ignores_order_and_duplicates() {
        let v = [Atom(2), Atom(0), Atom(0), Atom(1)];
        assert_eq!(fresh(&v), Atom(3));
    }

    #[test]
    fn textual_form() {
        assert_eq!(Atom(17).to_string(), "a17");
        assert_eq!("a17".parse::<Atom>().unwrap(), Atom(17));
        assert!("a".parse::<Atom>().is_err());
        assert!("b3".parse::<Atom>().is_err());
        assert!("a-1".parse::<Atom>().is_err());
        assert_eq!(format_set(&set(&[2, 0])), "{a0, a2}");
    }

    proptest! {
        #[test]
        fn fresh_avoids(ix in proptest::collection::btree_set(0u32..40, 0..20)) {
            let s = set(&ix.iter().copied().collect::<Vec<_>>());
            let f = fresh(&s);
            prop_assert!(!s.contains(&f));
            // membership scan: every smaller index is taken
            for i in 0..f.0 {
                prop_assert!(s.contains(&Atom(i)));
            }
        }
    }
}
