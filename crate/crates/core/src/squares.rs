use std::collections::BTreeMap;

use thiserror::Error;

use crate::skeleton::{EdgeId, Skeleton};

/// An ordered 2-path `(first, second)` in traversal order.
pub type TwoPath = (EdgeId, EdgeId);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("square for {key:?} already maps to {existing:?}, cannot also map to {requested:?}")]
pub struct SquareConflict {
    pub key: TwoPath,
    pub existing: TwoPath,
    pub requested: TwoPath,
}

/// The commuting-square table: for each mixed-color 2-path `(a, b)` its
/// unique partner `(c, d)` with the two colors swapped.
///
/// A well-formed table is involutive, so every square class appears as two
/// entries, one per color order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SquareTable {
    map: BTreeMap<TwoPath, TwoPath>,
}

impl SquareTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets a single directed entry, returning the previous image.
    pub fn insert(&mut self, key: TwoPath, value: TwoPath) -> Option<TwoPath> {
        self.map.insert(key, value)
    }

    /// Declares `p ∼ q` by inserting both orientations. Fails without
    /// modifying the table if either side already has a different partner.
    pub fn insert_square(&mut self, p: TwoPath, q: TwoPath) -> Result<(), SquareConflict> {
        for (key, value) in [(p, q), (q, p)] {
            if let Some(&existing) = self.map.get(&key) {
                if existing != value {
                    return Err(SquareConflict {
                        key,
                        existing,
                        requested: value,
                    });
                }
            }
        }
        self.map.insert(p, q);
        self.map.insert(q, p);
        Ok(())
    }

    pub fn get(&self, key: TwoPath) -> Option<TwoPath> {
        self.map.get(&key).copied()
    }

    pub fn remove(&mut self, key: TwoPath) -> Option<TwoPath> {
        self.map.remove(&key)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (TwoPath, TwoPath)> + '_ {
        self.map.iter().map(|(k, v)| (*k, *v))
    }

    /// Each square once, as `(key, image)` with `key < image`. Only
    /// meaningful on involutive tables.
    pub fn classes(&self) -> impl Iterator<Item = (TwoPath, TwoPath)> + '_ {
        self.iter().filter(|(k, v)| k < v)
    }

    /// Entries whose key or image mentions `e`.
    pub fn entries_touching(&self, e: EdgeId) -> impl Iterator<Item = (TwoPath, TwoPath)> + '_ {
        self.iter()
            .filter(move |((a, b), (c, d))| *a == e || *b == e || *c == e || *d == e)
    }

    /// Builds a table from edge names, one square per item, inserting both orientations.
    pub fn from_named_squares(
        skeleton: &Skeleton,
        squares: &[([&str; 2], [&str; 2])],
    ) -> Result<Self, String> {
        let mut table = SquareTable::new();
        let lookup = |n: &str| skeleton.edge_by_name(n).ok_or_else(|| format!("unknown edge {n:?}"));
        for ([a, b], [c, d]) in squares {
            let p = (lookup(a)?, lookup(b)?);
            let q = (lookup(c)?, lookup(d)?);
            table.insert_square(p, q).map_err(|e| e.to_string())?;
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_square_is_symmetric_and_detects_conflicts() {
        let e = |i| EdgeId(i);
        let mut t = SquareTable::new();
        t.insert_square((e(0), e(1)), (e(2), e(3))).unwrap();
        assert_eq!(t.get((e(2), e(3))), Some((e(0), e(1))));
        // re-declaring in the other orientation is fine
        t.insert_square((e(2), e(3)), (e(0), e(1))).unwrap();
        assert_eq!(t.len(), 2);
        let err = t.insert_square((e(0), e(1)), (e(3), e(2))).unwrap_err();
        assert_eq!(err.existing, (e(2), e(3)));
        assert_eq!(t.len(), 2);
        assert_eq!(t.classes().count(), 1);
    }
}
