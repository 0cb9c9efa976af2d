//! Set application K(A, B), bi-invariance, saturations, orbits, and the
//! orbit space of a distributive action.
//!
//! For subsets A, B of the carrier and K of the group,
//! `K(A, B) = {g(a, b) : g ∈ K, a ∈ A, b ∈ B}`. A set is bi-invariant when
//! `G(A, A) = A`; the saturation of A is the least bi-invariant superset,
//! reached as the fixpoint of `Aᵏ = G(Aᵏ⁻¹, Aᵏ⁻¹)`. Orbits of a distributive
//! action partition the carrier; for non-distributive actions they may
//! overlap, which is why [`orbit_partition`] insists on distributivity.
//!
//! On a finite discrete carrier every subset is closed, so the topological
//! side conditions that accompany these notions in general (closedness of
//! G(A, A) under a compact group, and of orbits) hold automatically and are
//! not represented as operations.

use crate::action::{BinaryAction, DistributivityWitness};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("saturation of the empty set is not defined")]
    EmptyInput,
    #[error("subset member {member} is outside 0..{carrier_size}")]
    MemberOutOfRange { member: usize, carrier_size: usize },
    #[error("action is not distributive: witness (g, h, x, x1, x2) = {witness}")]
    NotDistributive { witness: DistributivityWitness },
    #[error("orbits of {x} and {y} overlap without coinciding")]
    OverlappingOrbits { x: usize, y: usize },
    #[error("carrier index {index} is outside 0..{carrier_size}")]
    IndexOutOfRange { index: usize, carrier_size: usize },
}

/// A subset of a carrier `0..carrier_size`, kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CarrierSubset {
    carrier_size: usize,
    members: Vec<usize>,
}

impl CarrierSubset {
    pub fn new(
        carrier_size: usize,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, OrbitError> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&member) = members.iter().find(|&&x| x >= carrier_size) {
            return Err(OrbitError::MemberOutOfRange {
                member,
                carrier_size,
            });
        }
        Ok(CarrierSubset {
            carrier_size,
            members,
        })
    }

    pub fn empty(carrier_size: usize) -> Self {
        CarrierSubset {
            carrier_size,
            members: Vec::new(),
        }
    }

    pub fn full(carrier_size: usize) -> Self {
        CarrierSubset {
            carrier_size,
            members: (0..carrier_size).collect(),
        }
    }

    pub fn singleton(carrier_size: usize, x: usize) -> Result<Self, OrbitError> {
        Self::new(carrier_size, [x])
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &CarrierSubset) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn union(&self, other: &CarrierSubset) -> CarrierSubset {
        assert_eq!(self.carrier_size, other.carrier_size, "carrier mismatch");
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        members.dedup();
        CarrierSubset {
            carrier_size: self.carrier_size,
            members,
        }
    }

    pub fn intersection(&self, other: &CarrierSubset) -> CarrierSubset {
        assert_eq!(self.carrier_size, other.carrier_size, "carrier mismatch");
        CarrierSubset {
            carrier_size: self.carrier_size,
            members: self
                .members
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }
}

/// Renders as `{0, 1, 2}`.
impl std::fmt::Display for CarrierSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// `K(A, B) = {act(g, a, b) : g ∈ K, a ∈ A, b ∈ B}`.
///
/// Panics if a subset belongs to a different carrier or `k` contains an
/// element outside the group.
pub fn apply_set(
    action: &BinaryAction,
    k: &[usize],
    a: &CarrierSubset,
    b: &CarrierSubset,
) -> CarrierSubset {
    let n = action.carrier_size();
    assert_eq!(a.carrier_size(), n, "left subset carrier mismatch");
    assert_eq!(b.carrier_size(), n, "right subset carrier mismatch");
    assert!(
        k.iter().all(|&g| g < action.group().order()),
        "group element out of range"
    );
    let mut marks = vec![false; n];
    for &g in k {
        for &x in a.members() {
            for &y in b.members() {
                marks[action.apply(g, x, y)] = true;
            }
        }
    }
    from_marks(n, &marks)
}

/// True iff `G(A, A) = A`.
pub fn is_bi_invariant(action: &BinaryAction, a: &CarrierSubset) -> bool {
    let all: Vec<usize> = action.group().elements().collect();
    apply_set(action, &all, a, a) == *a
}

/// The least bi-invariant superset of `a`, plus the number of rounds of
/// `Aᵏ = G(Aᵏ⁻¹, Aᵏ⁻¹)` until the chain stabilizes (`Aᵏ = Aᵏ⁻¹`).
///
/// Each non-final round adds at least one point, so the depth never exceeds
/// the carrier size. A bi-invariant input returns `(a, 1)`.
///
/// Only pairs touching a freshly added point can produce anything new, so
/// each round applies the group to `current × fresh` in both orders rather
/// than to all of `current × current`.
pub fn saturate(
    action: &BinaryAction,
    a: &CarrierSubset,
) -> Result<(CarrierSubset, usize), OrbitError> {
    let n = action.carrier_size();
    assert_eq!(a.carrier_size(), n, "subset carrier mismatch");
    if a.is_empty() {
        return Err(OrbitError::EmptyInput);
    }
    let m = action.group().order();
    let mut in_set = vec![false; n];
    for &x in a.members() {
        in_set[x] = true;
    }
    let mut current: Vec<usize> = a.members().to_vec();
    let mut fresh = current.clone();
    let mut depth = 0;
    loop {
        depth += 1;
        let mut added = Vec::new();
        for g in 0..m {
            for &x in &current {
                for &y in &fresh {
                    for z in [action.apply(g, x, y), action.apply(g, y, x)] {
                        if !in_set[z] {
                            in_set[z] = true;
                            added.push(z);
                        }
                    }
                }
            }
        }
        if added.is_empty() {
            return Ok((from_marks(n, &in_set), depth));
        }
        current.extend_from_slice(&added);
        fresh = added;
    }
}

/// The orbit of `x`: the minimal bi-invariant subset containing it.
pub fn orbit(action: &BinaryAction, x: usize) -> CarrierSubset {
    let single = CarrierSubset::singleton(action.carrier_size(), x)
        .expect("orbit point out of range");
    saturate(action, &single)
        .expect("singleton is nonempty")
        .0
}

/// The partition of the carrier of a distributive action into orbits.
///
/// Orbit ids are dense `0..orbit_count`, assigned by ascending smallest
/// member, and each orbit's representative is that smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    carrier_size: usize,
    orbit_of: Vec<usize>,
    representatives: Vec<usize>,
}

/// Computes the orbit partition, insisting on distributivity first — that is
/// the hypothesis under which orbits are guaranteed to partition the carrier.
/// The `OverlappingOrbits` arm is a consistency check that is unreachable for
/// distributive inputs.
pub fn orbit_partition(action: &BinaryAction) -> Result<OrbitPartition, OrbitError> {
    if let Some(witness) = action.distributivity_witness() {
        return Err(OrbitError::NotDistributive { witness });
    }
    let n = action.carrier_size();
    let mut orbit_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for x in 0..n {
        if orbit_of[x] != usize::MAX {
            continue;
        }
        let id = representatives.len();
        for &y in orbit(action, x).members() {
            if orbit_of[y] != usize::MAX {
                return Err(OrbitError::OverlappingOrbits {
                    x: representatives[orbit_of[y]],
                    y: x,
                });
            }
            orbit_of[y] = id;
        }
        representatives.push(x);
    }
    Ok(OrbitPartition {
        carrier_size: n,
        orbit_of,
        representatives,
    })
}

impl OrbitPartition {
    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    pub fn orbit_count(&self) -> usize {
        self.representatives.len()
    }

    /// The projection π : X → X|G as a checked lookup.
    pub fn project(&self, x: usize) -> Result<usize, OrbitError> {
        self.orbit_of.get(x).copied().ok_or(OrbitError::IndexOutOfRange {
            index: x,
            carrier_size: self.carrier_size,
        })
    }

    /// Unchecked projection; panics on an out-of-range index.
    #[inline]
    pub fn orbit_id(&self, x: usize) -> usize {
        self.orbit_of[x]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    /// Members of one orbit, ascending.
    pub fn members_of(&self, id: usize) -> Vec<usize> {
        (0..self.carrier_size)
            .filter(|&x| self.orbit_of[x] == id)
            .collect()
    }

    /// All orbits as sorted member lists, indexed by orbit id.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.orbit_count()];
        for (x, &id) in self.orbit_of.iter().enumerate() {
            blocks[id].push(x);
        }
        blocks
    }
}

fn from_marks(carrier_size: usize, marks: &[bool]) -> CarrierSubset {
    CarrierSubset {
        carrier_size,
        members: marks
            .iter()
            .enumerate()
            .filter_map(|(x, &m)| m.then_some(x))
            .collect(),
    }
}
