//! Finite groups presented as Cayley tables.
//!
//! Elements are dense indices `0..m`. The identity and the inverse table are
//! never declared by the caller; they are discovered from the table during
//! validation, so the table is the single source of truth. Validation is
//! exhaustive O(m³), which is fine at the intended scale (m ≤ ~24).

use thiserror::Error;

/// Errors from Cayley-table validation and subgroup operations.
///
/// Every rejection carries a concrete witness so a bad table can be debugged
/// from the error alone.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("table is not square: row {row} has length {len}, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("table is not closed: entry [{row}][{col}] = {entry} is outside 0..{order}")]
    NotClosed {
        row: usize,
        col: usize,
        entry: usize,
        order: usize,
    },
    #[error("operation is not associative: witness (a, b, c) = ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("table has no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("the given element set is not a subgroup")]
    NotASubgroup,
}

/// A finite group of order `m`, stored as a validated m×m Cayley table.
///
/// `mul(a, b)` is the table entry at row `a`, column `b`. Immutable after
/// construction; safe for unrestricted concurrent reads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<usize>, // flattened m×m, row-major
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table and derives the identity and inverse tables.
    ///
    /// Checks, in order: squareness, closure, associativity (all m³ triples),
    /// existence of a two-sided identity, and a two-sided inverse for every
    /// element.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let m = table.len();
        if m == 0 {
            return Err(GroupError::Empty);
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(GroupError::NotSquare {
                    row: i,
                    len: row.len(),
                    order: m,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= m {
                    return Err(GroupError::NotClosed {
                        row: i,
                        col: j,
                        entry: v,
                        order: m,
                    });
                }
            }
        }
        let cayley: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |a: usize, b: usize| cayley[a * m + b];
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|g| mul(e, g) == g && mul(g, e) == g))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverses = vec![0; m];
        for g in 0..m {
            inverses[g] = (0..m)
                .find(|&h| mul(g, h) == identity && mul(h, g) == identity)
                .ok_or(GroupError::NoInverse { element: g })?;
        }
        Ok(FiniteGroup {
            order: m,
            cayley,
            identity,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Product of two elements.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    /// The unique element `h` with `g·h = h·g = e`.
    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order)
            .all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// True iff `s` is nonempty, within range, and closed under product and
    /// inverse. Duplicates in `s` are ignored.
    pub fn is_subgroup(&self, s: &[usize]) -> bool {
        if s.is_empty() || s.iter().any(|&g| g >= self.order) {
            return false;
        }
        let mut member = vec![false; self.order];
        for &g in s {
            member[g] = true;
        }
        s.iter()
            .all(|&g| member[self.inverse(g)] && s.iter().all(|&h| member[self.mul(g, h)]))
    }

    /// The conjugate subgroup `gHg⁻¹`, sorted ascending.
    ///
    /// Conjugation by a fixed element is an automorphism, so the result is a
    /// subgroup of the same size.
    pub fn conjugate_subgroup(&self, g: usize, h: &[usize]) -> Result<Vec<usize>, GroupError> {
        if !self.is_subgroup(h) {
            return Err(GroupError::NotASubgroup);
        }
        let gi = self.inverse(g);
        let mut out: Vec<usize> = h.iter().map(|&x| self.mul(self.mul(g, x), gi)).collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// The table in nested form, for serialization.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// The cyclic group Z_k under addition mod k. `cyclic(1)` is the trivial
    /// group.
    pub fn cyclic(k: usize) -> Self {
        assert!(k >= 1, "cyclic group order must be positive");
        let table = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        Self::from_table(table).expect("cyclic table is a group")
    }

    /// The symmetric group on `k` letters. Elements are the permutations of
    /// `0..k` in lexicographic order of their one-line notation, so index 0
    /// is the identity. The product `p·q` is composition, `q` applied first.
    pub fn symmetric(k: usize) -> Self {
        assert!(k >= 1, "symmetric group needs at least one letter");
        let perms = all_permutations(k);
        let index_of = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let composed: Vec<usize> = (0..k).map(|x| p[q[x]]).collect();
                        index_of(&composed)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("permutation composition is a group")
    }

    /// The Klein four-group: three commuting involutions.
    pub fn klein4() -> Self {
        let table = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        Self::from_table(table).expect("klein4 table is a group")
    }
}

/// Parses a named group spec: `cyclic:K`, `symmetric:K`, or `klein4`.
pub fn named_group(spec: &str) -> Option<FiniteGroup> {
    if spec == "klein4" {
        return Some(FiniteGroup::klein4());
    }
    if let Some(k) = spec.strip_prefix("cyclic:") {
        let k: usize = k.parse().ok()?;
        if k >= 1 {
            return Some(FiniteGroup::cyclic(k));
        }
    }
    if let Some(k) = spec.strip_prefix("symmetric:") {
        let k: usize = k.parse().ok()?;
        // 5! = 120 is already past desk scale
        if (1..=4).contains(&k) {
            return Some(FiniteGroup::symmetric(k));
        }
    }
    None
}

/// All permutations of `0..k` in lexicographic order.
fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // next_permutation in place
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}
