//! Finite permutations of atoms.
//!
//! Composition is functional: `compose(p, q)` applies `q` first, so
//! `compose(p, q).apply(a) == p.apply(q.apply(a))`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::atoms::{Atom, AtomSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("atoms {0}, {1}, {2} are not pairwise distinct")]
    DegenerateTriple(Atom, Atom, Atom),
    #[error("mapping is not a permutation of its support: {0}")]
    NotBijective(String),
}

/// A permutation of atoms fixing all but finitely many.
///
/// Stored as its graph restricted to moved atoms, so structural equality is
/// extensional equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FinPerm {
    map: BTreeMap<Atom, Atom>,
}

/// A swap `(a b)`, as returned by [`FinPerm::decompose`].
pub type Swap = (Atom, Atom);

impl FinPerm {
    pub fn identity() -> FinPerm {
        FinPerm::default()
    }

    pub fn transposition(a: Atom, b: Atom) -> FinPerm {
        let mut map = BTreeMap::new();
        if a != b {
            map.insert(a, b);
            map.insert(b, a);
        }
        FinPerm { map }
    }

    /// Builds a permutation from an explicit finite graph. Entries `a -> a`
    /// are dropped; the remaining domain must equal the range.
    pub fn from_map(mapping: BTreeMap<Atom, Atom>) -> Result<FinPerm, PermError> {
        let map: BTreeMap<Atom, Atom> = mapping.into_iter().filter(|(k, v)| k != v).collect();
        let range: AtomSet = map.values().copied().collect();
        let domain: AtomSet = map.keys().copied().collect();
        if range.len() != map.len() {
            return Err(PermError::NotBijective("two atoms share an image".into()));
        }
        if range != domain {
            return Err(PermError::NotBijective(
                "moved atoms are not closed under the mapping".into(),
            ));
        }
        Ok(FinPerm { map })
    }

    /// The permutation sending `domain[i]` to `images[i]`.
    pub fn from_images(domain: &[Atom], images: &[Atom]) -> Result<FinPerm, PermError> {
        if domain.len() != images.len() {
            return Err(PermError::NotBijective("length mismatch".into()));
        }
        FinPerm::from_map(domain.iter().copied().zip(images.iter().copied()).collect())
    }

    /// Cyclic permutation `c0 -> c1 -> ... -> c0`.
    pub fn cycle(atoms: &[Atom]) -> Result<FinPerm, PermError> {
        let distinct: AtomSet = atoms.iter().copied().collect();
        if distinct.len() != atoms.len() {
            return Err(PermError::NotBijective("repeated atom in cycle".into()));
        }
        let mut map = BTreeMap::new();
        for (i, &a) in atoms.iter().enumerate() {
            map.insert(a, atoms[(i + 1) % atoms.len()]);
        }
        FinPerm::from_map(map)
    }

    pub fn apply(&self, a: Atom) -> Atom {
        self.map.get(&a).copied().unwrap_or(a)
    }

    pub fn compose(&self, other: &FinPerm) -> FinPerm {
        let mut map = BTreeMap::new();
        for &a in self.map.keys().chain(other.map.keys()) {
            let image = self.apply(other.apply(a));
            if image != a {
                map.insert(a, image);
            }
        }
        FinPerm { map }
    }

    pub fn inverse(&self) -> FinPerm {
        FinPerm {
            map: self.map.iter().map(|(&k, &v)| (v, k)).collect(),
        }
    }

    pub fn moved(&self) -> AtomSet {
        self.map.keys().copied().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// True when every atom of `set` is left in place.
    pub fn fixes_pointwise(&self, set: &AtomSet) -> bool {
        set.iter().all(|&a| self.apply(a) == a)
    }

    /// Disjoint cycles, each starting at its least atom, ordered by that atom.
    pub fn cycles(&self) -> Vec<Vec<Atom>> {
        let mut seen = AtomSet::new();
        let mut out = Vec::new();
        for &start in self.map.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut next = self.apply(start);
            while next != start {
                seen.insert(next);
                cycle.push(next);
                next = self.apply(next);
            }
            out.push(cycle);
        }
        out
    }

    /// Product `t1 ∘ t2 ∘ ... ∘ tn` of swaps; `tn` acts first.
    pub fn product(swaps: &[Swap]) -> FinPerm {
        swaps
            .iter()
            .fold(FinPerm::identity(), |acc, &(a, b)| {
                acc.compose(&FinPerm::transposition(a, b))
            })
    }

    /// Splits the permutation into swaps whose product (see [`FinPerm::product`])
    /// is `self`.
    ///
    /// Each cycle `(c0 c1 ... ck)` becomes `(c0 c1) ∘ (c1 c2) ∘ ... ∘ (ck-1 ck)`,
    /// so every atom that appears is moved by `self`.
    pub fn decompose(&self) -> Vec<Swap> {
        self.cycles()
            .iter()
            .flat_map(|c| c.windows(2).map(|w| (w[0], w[1])))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Atom, Atom)> + '_ {
        self.map.iter().map(|(&k, &v)| (k, v))
    }
}

/// Rewrites `(a b)` as `(b c) ∘ (a c) ∘ (b c)`.
///
/// With `c` outside two supports `A ∋ a` and `B ∋ b`, the outer swaps fix `A`
/// and the middle one fixes `B`.
pub fn conjugation_split(a: Atom, b: Atom, c: Atom) -> Result<[Swap; 3], PermError> {
    if a == b || b == c || a == c {
        return Err(PermError::DegenerateTriple(a, b, c));
    }
    Ok([(b, c), (a, c), (b, c)])
}

impl fmt::Display for FinPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("()");
        }
        for cycle in self.cycles() {
            let names: Vec<String> = cycle.iter().map(ToString::to_string).collect();
            write!(f, "({})", names.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for FinPerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(i: u32) -> Atom {
        Atom(i)
    }

    fn t(x: u32, y: u32) -> FinPerm {
        FinPerm::transposition(a(x), a(y))
    }

    #[test]
    fn identity_laws() {
        let p = t(0, 1).compose(&t(2, 3));
        assert_eq!(FinPerm::identity().apply(a(0)), a(0));
        assert_eq!(FinPerm::identity().compose(&p), p);
        assert_eq!(FinPerm::identity().inverse(), FinPerm::identity());
    }

    #[test]
    fn transpositions() {
        assert_eq!(t(0, 1).apply(a(0)), a(1));
        assert_eq!(t(0, 1).apply(a(1)), a(0));
        assert_eq!(t(0, 1).apply(a(2)), a(2));
        assert_eq!(t(3, 3), FinPerm::identity());
        assert_eq!(FinPerm::identity().apply(a(5)), a(5));
        assert_eq!(t(0, 1).compose(&t(0, 1)), FinPerm::identity());
        assert_eq!(t(0, 1).inverse(), t(0, 1));
    }

    #[test]
    fn composition_applies_right_operand_first() {
        // a2 -(a1 a2)-> a1 -(a0 a1)-> a0
        assert_eq!(t(0, 1).compose(&t(1, 2)).apply(a(2)), a(0));
        assert_eq!(t(0, 1).compose(&t(1, 2)).apply(a(0)), a(1));
    }

    #[test]
    fn moved_atoms() {
        let p = t(0, 1).compose(&t(2, 3));
        assert_eq!(p.moved(), [0, 1, 2, 3].map(a).into_iter().collect());
    }

    #[test]
    fn decompose_small_cases() {
        assert!(FinPerm::identity().decompose().is_empty());
        assert_eq!(t(0, 1).decompose(), vec![(a(0), a(1))]);

        let three = FinPerm::cycle(&[a(0), a(1), a(2)]).unwrap();
        let swaps = three.decompose();
        assert_eq!(swaps.len(), 2);
        assert_eq!(FinPerm::product(&swaps), three);
        assert_eq!(three.apply(a(0)), a(1));
        assert_eq!(three.apply(a(2)), a(0));
    }

    #[test]
    fn conjugation_split_recovers_swap() {
        let parts = conjugation_split(a(0), a(1), a(2)).unwrap();
        let p = FinPerm::product(&parts);
        assert_eq!(p, t(0, 1));
        assert_eq!(p.apply(a(2)), a(2));
        assert_eq!(
            conjugation_split(a(0), a(0), a(2)),
            Err(PermError::DegenerateTriple(a(0), a(0), a(2)))
        );
    }

    #[test]
    fn conjugation_split_all_triples() {
        for x in 0..6 {
            for y in 0..6 {
                for z in 0..6 {
                    let r = conjugation_split(a(x), a(y), a(z));
                    if x == y || y == z || x == z {
                        assert!(r.is_err());
                    } else {
                        assert_eq!(FinPerm::product(&r.unwrap()), t(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn from_map_rejects_non_bijections() {
        let bad: BTreeMap<_, _> = [(a(0), a(1)), (a(1), a(1))].into_iter().collect();
        assert!(FinPerm::from_map(bad).is_err());
        let open: BTreeMap<_, _> = [(a(0), a(1))].into_iter().collect();
        assert!(FinPerm::from_map(open).is_err());
        assert!(FinPerm::cycle(&[a(0), a(1), a(0)]).is_err());
    }

    #[test]
    fn display_cycles() {
        assert_eq!(FinPerm::identity().to_string(), "()");
        assert_eq!(t(1, 0).to_string(), "(a0 a1)");
        let p = FinPerm::cycle(&[a(4), a(2), a(3)]).unwrap().compose(&t(0, 1));
        assert_eq!(p.to_string(), "(a0 a1)(a2 a3 a4)");
    }

    fn perm_strategy() -> impl Strategy<Value = FinPerm> {
        Just((0..8u32).map(Atom).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|img| {
                let dom: Vec<Atom> = (0..8u32).map(Atom).collect();
                FinPerm::from_images(&dom, &img).unwrap()
            })
    }

    proptest! {
        #[test]
        fn group_laws(p in perm_strategy(), q in perm_strategy(), r in perm_strategy()) {
            prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
            prop_assert_eq!(p.compose(&p.inverse()), FinPerm::identity());
            prop_assert_eq!(p.inverse().compose(&p), FinPerm::identity());
            prop_assert_eq!(p.compose(&FinPerm::identity()), p.clone());
            for i in 0..10 {
                prop_assert_eq!(p.compose(&q).apply(a(i)), p.apply(q.apply(a(i))));
            }
        }

        #[test]
        fn decompose_round_trip(p in perm_strategy()) {
            let swaps = p.decompose();
            prop_assert_eq!(FinPerm::product(&swaps), p.clone());
            let moved = p.moved();
            for (x, y) in swaps {
                prop_assert!(x != y);
                prop_assert!(moved.contains(&x) && moved.contains(&y));
            }
        }
    }
}
