//! Cross sections of the orbit projection, as transversals.
//!
//! A cross section of π : X → X|G picks one point per orbit; on a finite
//! discrete carrier every subset is closed, so sections correspond exactly
//! to subsets meeting each orbit in one point and nothing topological needs
//! checking.

use crate::orbit::{CarrierSubset, OrbitPartition};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectionError {
    #[error("not a transversal: orbit {orbit} is hit {count} times")]
    NotATransversal { orbit: usize, count: usize },
}

/// A choice of one carrier point per orbit id, with `π(chosen[k]) = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossSection {
    chosen: Vec<usize>,
}

impl CrossSection {
    /// The section as a map out of orbit ids.
    pub fn apply(&self, orbit_id: usize) -> usize {
        self.chosen[orbit_id]
    }

    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    /// The image set σ(X|G).
    pub fn image(&self, carrier_size: usize) -> CarrierSubset {
        CarrierSubset::new(carrier_size, self.chosen.iter().copied())
            .expect("section image lies in the carrier")
    }
}

/// True iff `a` meets every orbit in exactly one point.
pub fn is_transversal(partition: &OrbitPartition, a: &CarrierSubset) -> bool {
    assert_eq!(a.carrier_size(), partition.carrier_size(), "carrier mismatch");
    let mut hits = vec![0usize; partition.orbit_count()];
    for &x in a.members() {
        hits[partition.orbit_id(x)] += 1;
    }
    hits.iter().all(|&c| c == 1)
}

/// Builds the section `σ(orbit k) = the unique member of a in orbit k`.
pub fn section_from_transversal(
    partition: &OrbitPartition,
    a: &CarrierSubset,
) -> Result<CrossSection, SectionError> {
    assert_eq!(a.carrier_size(), partition.carrier_size(), "carrier mismatch");
    let mut chosen = vec![usize::MAX; partition.orbit_count()];
    let mut hits = vec![0usize; partition.orbit_count()];
    for &x in a.members() {
        let k = partition.orbit_id(x);
        hits[k] += 1;
        chosen[k] = x;
    }
    for (orbit, &count) in hits.iter().enumerate() {
        if count != 1 {
            return Err(SectionError::NotATransversal { orbit, count });
        }
    }
    Ok(CrossSection { chosen })
}

/// The number of transversals: the product of orbit sizes.
pub fn transversal_count(partition: &OrbitPartition) -> usize {
    partition.blocks().iter().map(Vec::len).product()
}

/// The first `limit` transversals, in lexicographic order of the per-orbit
/// choice vector (orbit 0's choice most significant, members ascending).
pub fn enumerate_transversals(partition: &OrbitPartition, limit: usize) -> Vec<CarrierSubset> {
    let blocks = partition.blocks();
    let n = partition.carrier_size();
    let mut out = Vec::new();
    if blocks.iter().any(Vec::is_empty) || limit == 0 {
        return out;
    }
    let mut choice = vec![0usize; blocks.len()];
    loop {
        let picked = choice.iter().zip(&blocks).map(|(&c, block)| block[c]);
        out.push(CarrierSubset::new(n, picked).expect("block members lie in the carrier"));
        if out.len() == limit {
            return out;
        }
        // increment the least significant position
        let mut pos = blocks.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < blocks[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}
