//! Bi-equivariant maps, structural maps, and the two extension engines.
//!
//! A map f between the carriers of two binary actions over the same group is
//! bi-equivariant when `f(g(x₁, x₂)) = g(f(x₁), f(x₂))` for all g, x₁, x₂.
//! A partial map f : A → Y is *structural* when it is equivariant wherever
//! that makes sense inside A (SM1) and its values are independent of how a
//! point of the saturation Ã is represented as a nested bracket expression
//! over A (SM2). Structural maps are exactly the partial maps that extend,
//! uniquely, to a bi-equivariant map on Ã.
//!
//! [`extend_structural`] computes that extension by label propagation:
//! starting from the graph of f, whenever x and x' carry labels y and y',
//! the point `g(x, x')` must carry `g(y, y')`. The closure of this rule
//! labels exactly the saturation; a point receiving two distinct labels is
//! the operational form of an SM2 violation and is reported as a
//! [`ConflictReport`] with both derivation chains. [`check_sm2_bounded`] is
//! the independent oracle for the same condition: it evaluates the set of
//! (value, image) pairs realized by bracket expressions of each nesting
//! depth and checks that equal values never carry distinct images.
//!
//! [`extend_from_section`] is the second engine: when the domain is a
//! transversal of a distributive source and condition (*) holds, every point
//! x = g(a, a) extends as `f̃(x) = g(f(a), f(a))`, and the two engines agree.

use crate::action::{ActionError, BinaryAction, DistributivityWitness};
use crate::orbit::{orbit_partition, saturate, CarrierSubset};
use crate::section::{is_transversal, section_from_transversal};
use thiserror::Error;

/// Which of the two actions of a map a witness refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionSide {
    Source,
    Target,
}

impl std::fmt::Display for ActionSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ActionSide::Source => write!(f, "source"),
            ActionSide::Target => write!(f, "target"),
        }
    }
}

/// A failing instance of `f(g(x₁, x₂)) = g(f(x₁), f(x₂))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivarianceWitness {
    pub g: usize,
    pub x1: usize,
    pub x2: usize,
    /// `f(g(x₁, x₂))`
    pub lhs: usize,
    /// `g(f(x₁), f(x₂))`
    pub rhs: usize,
}

/// A failing SM1 instance: a₁, a₂ and g(a₁, a₂) all lie in the domain but
/// `f(g(a₁, a₂)) ≠ g(f(a₁), f(a₂))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sm1Witness {
    pub g: usize,
    pub a1: usize,
    pub a2: usize,
    pub lhs: usize,
    pub rhs: usize,
}

/// Two bracket expressions of depth ≤ `depth` with the same value in the
/// source carrier but distinct images in the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sm2Witness {
    pub depth: usize,
    pub value: usize,
    pub image_a: usize,
    pub image_b: usize,
}

/// A failing instance of condition (*): `g(a, a) = h(k(b, b), s(c, c))` in
/// the source, but the corresponding equality fails after relabeling through
/// f in the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarWitness {
    pub g: usize,
    pub h: usize,
    pub k: usize,
    pub s: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl std::fmt::Display for StarWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {}, {}, {})",
            self.g, self.h, self.k, self.s, self.a, self.b, self.c
        )
    }
}

/// A domain pair whose source isotropy group is not contained in the
/// isotropy group of its image pair: `g` fixes `(a, a')` but not
/// `(f(a), f(a'))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsotropyWitness {
    pub a: usize,
    pub a_prime: usize,
    pub g: usize,
}

/// One propagation step: the point `act(g, left, right)` was labeled with
/// `act(g, label(left), label(right))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivationStep {
    pub g: usize,
    pub left: usize,
    pub right: usize,
    pub result: usize,
    pub label: usize,
}

/// A point of the saturation that received two distinct labels, with the
/// full derivation chain behind each label (seed points carry no steps).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictReport {
    pub point: usize,
    pub first_label: usize,
    pub second_label: usize,
    pub first_derivation: Vec<DerivationStep>,
    pub second_derivation: Vec<DerivationStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("source and target are actions of different groups")]
    GroupMismatch,
    #[error("domain point {point} is outside 0..{carrier_size}")]
    PointOutOfRange { point: usize, carrier_size: usize },
    #[error("value {value} is outside the target carrier 0..{carrier_size}")]
    ValueOutOfRange { value: usize, carrier_size: usize },
    #[error("domain point {point} is listed twice")]
    DuplicateDomainPoint { point: usize },
    #[error("value table has length {got}, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("domain is empty")]
    EmptyDomain,
    #[error("SM1 fails: f({lhs_of}) = {lhs} but g(f(a1), f(a2)) = {rhs} at (g, a1, a2) = ({g}, {a1}, {a2})",
            g = .0.g, a1 = .0.a1, a2 = .0.a2, lhs = .0.lhs, rhs = .0.rhs, lhs_of = .0.a2)]
    Sm1Violation(Sm1Witness),
    #[error("propagation conflict at point {}", .0.point)]
    Conflict(Box<ConflictReport>),
    #[error("condition (*) fails at (g, h, k, s, a, a', a'') = {0}")]
    StarConditionFailed(StarWitness),
    #[error("{side} action is not distributive: witness (g, h, x, x1, x2) = {witness}")]
    NotDistributive {
        side: ActionSide,
        witness: DistributivityWitness,
    },
    #[error("domain is not a transversal: orbit {orbit} is hit {count} times")]
    NotATransversal { orbit: usize, count: usize },
    #[error("no group element represents point {point} over its section point")]
    NoRepresentation { point: usize },
    #[error("bracket enumeration needs {required} evaluations, over the budget of {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// A map f : A → Y between the carriers of two binary actions over the same
/// group, defined on an arbitrary subset A of the source carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialEquivariantMap<'a> {
    source: &'a BinaryAction,
    target: &'a BinaryAction,
    domain: CarrierSubset,
    values: Vec<usize>, // aligned with domain.members()
}

impl<'a> PartialEquivariantMap<'a> {
    pub fn new(
        source: &'a BinaryAction,
        target: &'a BinaryAction,
        pairs: &[(usize, usize)],
    ) -> Result<Self, ExtensionError> {
        if source.group() != target.group() {
            return Err(ExtensionError::GroupMismatch);
        }
        let mut entries: Vec<(usize, usize)> = pairs.to_vec();
        entries.sort_unstable();
        for window in entries.windows(2) {
            if window[0].0 == window[1].0 {
                return Err(ExtensionError::DuplicateDomainPoint {
                    point: window[0].0,
                });
            }
        }
        for &(point, value) in &entries {
            if point >= source.carrier_size() {
                return Err(ExtensionError::PointOutOfRange {
                    point,
                    carrier_size: source.carrier_size(),
                });
            }
            if value >= target.carrier_size() {
                return Err(ExtensionError::ValueOutOfRange {
                    value,
                    carrier_size: target.carrier_size(),
                });
            }
        }
        let domain = CarrierSubset::new(source.carrier_size(), entries.iter().map(|&(p, _)| p))
            .expect("points checked above");
        let values = entries.into_iter().map(|(_, v)| v).collect();
        Ok(PartialEquivariantMap {
            source,
            target,
            domain,
            values,
        })
    }

    pub fn source(&self) -> &'a BinaryAction {
        self.source
    }

    pub fn target(&self) -> &'a BinaryAction {
        self.target
    }

    pub fn domain(&self) -> &CarrierSubset {
        &self.domain
    }

    pub fn value_of(&self, x: usize) -> Option<usize> {
        self.domain
            .members()
            .binary_search(&x)
            .ok()
            .map(|i| self.values[i])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.domain
            .members()
            .iter()
            .copied()
            .zip(self.values.iter().copied())
    }
}

/// A map defined on the whole source carrier. `certified` is set only after
/// a successful exhaustive bi-equivariance check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalEquivariantMap<'a> {
    source: &'a BinaryAction,
    target: &'a BinaryAction,
    values: Vec<usize>,
    certified: bool,
}

impl<'a> TotalEquivariantMap<'a> {
    pub fn new(
        source: &'a BinaryAction,
        target: &'a BinaryAction,
        values: Vec<usize>,
    ) -> Result<Self, ExtensionError> {
        if source.group() != target.group() {
            return Err(ExtensionError::GroupMismatch);
        }
        if values.len() != source.carrier_size() {
            return Err(ExtensionError::WrongLength {
                got: values.len(),
                expected: source.carrier_size(),
            });
        }
        if let Some(&value) = values.iter().find(|&&v| v >= target.carrier_size()) {
            return Err(ExtensionError::ValueOutOfRange {
                value,
                carrier_size: target.carrier_size(),
            });
        }
        Ok(TotalEquivariantMap {
            source,
            target,
            values,
            certified: false,
        })
    }

    /// The identity map on an action's carrier (always bi-equivariant).
    pub fn identity(action: &'a BinaryAction) -> Self {
        let mut map = Self::new(action, action, (0..action.carrier_size()).collect())
            .expect("identity is well-formed");
        map.certify().expect("identity map is bi-equivariant");
        map
    }

    pub fn source(&self) -> &'a BinaryAction {
        self.source
    }

    pub fn target(&self) -> &'a BinaryAction {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// First failing instance of `f(g(x₁, x₂)) = g(f(x₁), f(x₂))` over all
    /// (g, x₁, x₂), or `None` if the map is bi-equivariant.
    pub fn equivariance_witness(&self) -> Option<EquivarianceWitness> {
        let m = self.source.group().order();
        let n = self.source.carrier_size();
        for g in 0..m {
            for x1 in 0..n {
                for x2 in 0..n {
                    let lhs = self.values[self.source.apply(g, x1, x2)];
                    let rhs = self.target.apply(g, self.values[x1], self.values[x2]);
                    if lhs != rhs {
                        return Some(EquivarianceWitness { g, x1, x2, lhs, rhs });
                    }
                }
            }
        }
        None
    }

    /// Exhaustively checks bi-equivariance, setting the certified flag on
    /// success.
    pub fn certify(&mut self) -> Result<(), EquivarianceWitness> {
        match self.equivariance_witness() {
            None => {
                self.certified = true;
                Ok(())
            }
            Some(witness) => Err(witness),
        }
    }

    /// The restriction of this map to a subset of the source carrier.
    pub fn restrict(&self, domain: &CarrierSubset) -> PartialEquivariantMap<'a> {
        assert_eq!(domain.carrier_size(), self.source.carrier_size());
        PartialEquivariantMap {
            source: self.source,
            target: self.target,
            domain: domain.clone(),
            values: domain.members().iter().map(|&x| self.values[x]).collect(),
        }
    }
}

/// The unique bi-equivariant extension of a structural map over the
/// saturation of its domain, as produced by [`extend_structural`].
///
/// The domain is bi-invariant (it is exactly the saturation Ã), the map is
/// verified bi-equivariant on it before being returned, and it agrees with
/// the seed map on the original domain. When Ã is the whole carrier the
/// extension converts into a certified [`TotalEquivariantMap`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralExtension<'a> {
    source: &'a BinaryAction,
    target: &'a BinaryAction,
    domain: CarrierSubset,
    values: Vec<usize>, // aligned with domain.members()
}

impl<'a> StructuralExtension<'a> {
    pub fn source(&self) -> &'a BinaryAction {
        self.source
    }

    pub fn target(&self) -> &'a BinaryAction {
        self.target
    }

    /// The saturation Ã the extension lives on.
    pub fn domain(&self) -> &CarrierSubset {
        &self.domain
    }

    /// Values aligned with `domain().members()`.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value_of(&self, x: usize) -> Option<usize> {
        self.domain
            .members()
            .binary_search(&x)
            .ok()
            .map(|i| self.values[i])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.domain
            .members()
            .iter()
            .copied()
            .zip(self.values.iter().copied())
    }

    pub fn is_total(&self) -> bool {
        self.domain.len() == self.source.carrier_size()
    }

    /// Converts into a certified total map when the saturation covers the
    /// whole carrier.
    pub fn into_total(self) -> Option<TotalEquivariantMap<'a>> {
        if !self.is_total() {
            return None;
        }
        let mut map = TotalEquivariantMap::new(self.source, self.target, self.values)
            .expect("extension values are in range");
        map.certify()
            .expect("extension was verified bi-equivariant on the full carrier");
        Some(map)
    }
}

/// First failing instance of bi-equivariance for a map given on a
/// bi-invariant subset, with values aligned to `domain.members()`.
///
/// Panics if the domain is not closed under the action (i.e. not
/// bi-invariant) — callers only use saturations here.
pub fn biequivariance_witness_on(
    source: &BinaryAction,
    target: &BinaryAction,
    domain: &CarrierSubset,
    values: &[usize],
) -> Option<EquivarianceWitness> {
    assert_eq!(values.len(), domain.len());
    let value_of = |x: usize| {
        let i = domain
            .members()
            .binary_search(&x)
            .expect("domain must be bi-invariant");
        values[i]
    };
    for g in source.group().elements() {
        for &x1 in domain.members() {
            for &x2 in domain.members() {
                let lhs = value_of(source.apply(g, x1, x2));
                let rhs = target.apply(g, value_of(x1), value_of(x2));
                if lhs != rhs {
                    return Some(EquivarianceWitness { g, x1, x2, lhs, rhs });
                }
            }
        }
    }
    None
}

/// Checks SM1: for all a₁, a₂ in the domain and g with `g(a₁, a₂)` also in
/// the domain, `f(g(a₁, a₂)) = g(f(a₁), f(a₂))`.
pub fn check_sm1(f: &PartialEquivariantMap<'_>) -> Option<Sm1Witness> {
    for g in f.source().group().elements() {
        for (a1, y1) in f.pairs() {
            for (a2, y2) in f.pairs() {
                let z = f.source().apply(g, a1, a2);
                if let Some(lhs) = f.value_of(z) {
                    let rhs = f.target().apply(g, y1, y2);
                    if lhs != rhs {
                        return Some(Sm1Witness { g, a1, a2, lhs, rhs });
                    }
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy)]
enum Origin {
    Seed,
    Step { g: usize, left: usize, right: usize },
}

/// Extends a structural map to the unique bi-equivariant map on the
/// saturation of its domain, by conflict-checked label propagation.
///
/// Fails with [`ExtensionError::Sm1Violation`] if the seed map is not
/// equivariant inside its own domain, and with [`ExtensionError::Conflict`]
/// if two derivations force distinct labels on one point — the operational
/// detection of an SM2 violation. On success the result agrees with `f` on
/// its domain and is verified bi-equivariant on the whole saturation.
pub fn extend_structural<'a>(
    f: &PartialEquivariantMap<'a>,
) -> Result<StructuralExtension<'a>, ExtensionError> {
    if f.domain().is_empty() {
        return Err(ExtensionError::EmptyDomain);
    }
    if let Some(witness) = check_sm1(f) {
        return Err(ExtensionError::Sm1Violation(witness));
    }
    let source = f.source();
    let target = f.target();
    let n = source.carrier_size();
    let m = source.group().order();

    let mut label: Vec<Option<usize>> = vec![None; n];
    let mut origin: Vec<Origin> = vec![Origin::Seed; n];
    for (point, value) in f.pairs() {
        label[point] = Some(value);
    }
    let mut current: Vec<usize> = f.domain().members().to_vec();
    let mut fresh = current.clone();

    loop {
        let mut added = Vec::new();
        for g in 0..m {
            for &x in &current {
                for &y in &fresh {
                    for (left, right) in [(x, y), (y, x)] {
                        let z = source.apply(g, left, right);
                        let w = target.apply(g, label[left].unwrap(), label[right].unwrap());
                        match label[z] {
                            None => {
                                label[z] = Some(w);
                                origin[z] = Origin::Step { g, left, right };
                                added.push(z);
                            }
                            Some(existing) if existing != w => {
                                let mut second = derivation_chain(&origin, &label, left);
                                append_chain(
                                    &mut second,
                                    derivation_chain(&origin, &label, right),
                                );
                                second.push(DerivationStep {
                                    g,
                                    left,
                                    right,
                                    result: z,
                                    label: w,
                                });
                                return Err(ExtensionError::Conflict(Box::new(ConflictReport {
                                    point: z,
                                    first_label: existing,
                                    second_label: w,
                                    first_derivation: derivation_chain(&origin, &label, z),
                                    second_derivation: second,
                                })));
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        current.extend_from_slice(&added);
        fresh = added;
    }

    let domain = CarrierSubset::new(n, current).expect("labels lie in the carrier");
    // internal consistency: the labeled set is exactly the saturation
    let (saturation, _) = saturate(source, f.domain()).expect("domain is nonempty");
    assert_eq!(
        domain, saturation,
        "propagation closure must equal the saturation"
    );
    let values: Vec<usize> = domain
        .members()
        .iter()
        .map(|&x| label[x].expect("member is labeled"))
        .collect();
    assert!(
        biequivariance_witness_on(source, target, &domain, &values).is_none(),
        "conflict-free propagation closure must be bi-equivariant"
    );
    for (point, value) in f.pairs() {
        assert_eq!(label[point], Some(value), "extension must restrict to the seed");
    }
    Ok(StructuralExtension {
        source,
        target,
        domain,
        values,
    })
}

/// The ordered list of propagation steps justifying the label of `point`,
/// dependencies first. Seed points contribute no steps.
fn derivation_chain(origin: &[Origin], label: &[Option<usize>], point: usize) -> Vec<DerivationStep> {
    let mut steps = Vec::new();
    let mut emitted = vec![false; origin.len()];
    emit_steps(origin, label, point, &mut emitted, &mut steps);
    steps
}

fn emit_steps(
    origin: &[Origin],
    label: &[Option<usize>],
    point: usize,
    emitted: &mut [bool],
    steps: &mut Vec<DerivationStep>,
) {
    if emitted[point] {
        return;
    }
    emitted[point] = true;
    if let Origin::Step { g, left, right } = origin[point] {
        emit_steps(origin, label, left, emitted, steps);
        emit_steps(origin, label, right, emitted, steps);
        steps.push(DerivationStep {
            g,
            left,
            right,
            result: point,
            label: label[point].expect("derived point is labeled"),
        });
    }
}

fn append_chain(into: &mut Vec<DerivationStep>, more: Vec<DerivationStep>) {
    for step in more {
        if !into.contains(&step) {
            into.push(step);
        }
    }
}

/// Evaluation budget for [`check_sm2_bounded`], in action-table lookups.
const SM2_BUDGET: u64 = 200_000_000;

/// The brute-force SM2 oracle, bounded by bracket nesting depth.
///
/// For each depth d ≤ `max_depth` this computes every (value, image) pair
/// realized by a bracket expression of depth d over the domain — the value
/// evaluated in the source, the image evaluated in the target after
/// replacing each domain point a by f(a) — grouping expressions by value.
/// SM2 holds up to `max_depth` iff no value ever carries two distinct
/// images. Deeper pair sets subsume shallower ones (pad any bracket with the
/// identity element), so only the per-depth sets need checking.
///
/// Intended as a cross-validation oracle at tiny scale; the propagation in
/// [`extend_structural`] is the production path.
pub fn check_sm2_bounded(
    f: &PartialEquivariantMap<'_>,
    max_depth: usize,
) -> Result<Option<Sm2Witness>, ExtensionError> {
    assert!(max_depth >= 1, "max_depth must be at least 1");
    let source = f.source();
    let target = f.target();
    let m = source.group().order() as u64;
    let nx = source.carrier_size();
    let ny = target.carrier_size();

    let mut current: Vec<(usize, usize)> = f.pairs().collect();
    let mut work: u64 = 0;
    for depth in 1..=max_depth {
        let level = m * (current.len() as u64) * (current.len() as u64);
        work = work.saturating_add(level);
        if work > SM2_BUDGET {
            return Err(ExtensionError::BudgetExceeded {
                required: work,
                budget: SM2_BUDGET,
            });
        }
        let mut seen = vec![false; nx * ny];
        let mut next = Vec::new();
        for g in source.group().elements() {
            for &(x1, y1) in &current {
                for &(x2, y2) in &current {
                    let v = source.apply(g, x1, x2);
                    let w = target.apply(g, y1, y2);
                    if !seen[v * ny + w] {
                        seen[v * ny + w] = true;
                        next.push((v, w));
                    }
                }
            }
        }
        let mut image: Vec<Option<usize>> = vec![None; nx];
        for &(v, w) in &next {
            match image[v] {
                None => image[v] = Some(w),
                Some(w0) if w0 != w => {
                    return Ok(Some(Sm2Witness {
                        depth,
                        value: v,
                        image_a: w0,
                        image_b: w,
                    }));
                }
                Some(_) => {}
            }
        }
        current = next;
    }
    Ok(None)
}

/// The isotropy group of the pair (x, x'): all g with `g(x, x') = x'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropySubgroup {
    pub pair: (usize, usize),
    pub members: Vec<usize>,
}

/// Computes the isotropy group of a pair. The member set is always a
/// subgroup; this is asserted.
pub fn isotropy_group(action: &BinaryAction, x: usize, xp: usize) -> IsotropySubgroup {
    let members: Vec<usize> = action
        .group()
        .elements()
        .filter(|&g| action.apply(g, x, xp) == xp)
        .collect();
    assert!(
        action.group().is_subgroup(&members),
        "isotropy members must form a subgroup"
    );
    IsotropySubgroup {
        pair: (x, xp),
        members,
    }
}

/// Checks the isotropy inclusion for every pair of domain points: each g
/// fixing (a, a') in the source must fix (f(a), f(a')) in the target.
pub fn check_isotropy_condition(f: &PartialEquivariantMap<'_>) -> Option<IsotropyWitness> {
    for (a, ya) in f.pairs() {
        for (a_prime, yp) in f.pairs() {
            for g in f.source().group().elements() {
                if f.source().apply(g, a, a_prime) == a_prime
                    && f.target().apply(g, ya, yp) != yp
                {
                    return Some(IsotropyWitness { a, a_prime, g });
                }
            }
        }
    }
    None
}

fn require_distributive(
    action: &BinaryAction,
    side: ActionSide,
) -> Result<(), ExtensionError> {
    match action.distributivity_witness() {
        None => Ok(()),
        Some(witness) => Err(ExtensionError::NotDistributive { side, witness }),
    }
}

/// Checks condition (*) exhaustively over all (g, h, k, s) in G⁴ and
/// (a, a', a'') in A³: whenever `g(a, a) = h(k(a', a'), s(a'', a''))` holds
/// in the source, the same equality must hold in the target after replacing
/// each point by its image.
///
/// Requires the source to be distributive and the domain to be a
/// transversal of its orbit space.
pub fn check_star_condition(
    f: &PartialEquivariantMap<'_>,
) -> Result<Option<StarWitness>, ExtensionError> {
    let source = f.source();
    let target = f.target();
    require_distributive(source, ActionSide::Source)?;
    let partition = orbit_partition(source).expect("distributivity just checked");
    if !is_transversal(&partition, f.domain()) {
        let err = section_from_transversal(&partition, f.domain())
            .expect_err("is_transversal returned false");
        let crate::section::SectionError::NotATransversal { orbit, count } = err;
        return Err(ExtensionError::NotATransversal { orbit, count });
    }

    let m = source.group().order();
    let entries: Vec<(usize, usize)> = f.pairs().collect();
    // diag[(g, a-index)] = (g(a, a) in the source, g(f(a), f(a)) in the target)
    let diag: Vec<Vec<(usize, usize)>> = (0..m)
        .map(|g| {
            entries
                .iter()
                .map(|&(a, ya)| (source.apply(g, a, a), target.apply(g, ya, ya)))
                .collect()
        })
        .collect();

    for g in 0..m {
        for h in 0..m {
            for k in 0..m {
                for s in 0..m {
                    for (ia, &(a, _)) in entries.iter().enumerate() {
                        let (lhs_src, lhs_tgt) = diag[g][ia];
                        for (ib, &(b, _)) in entries.iter().enumerate() {
                            let (u_src, u_tgt) = diag[k][ib];
                            for (ic, &(c, _)) in entries.iter().enumerate() {
                                let (v_src, v_tgt) = diag[s][ic];
                                if lhs_src == source.apply(h, u_src, v_src)
                                    && lhs_tgt != target.apply(h, u_tgt, v_tgt)
                                {
                                    return Ok(Some(StarWitness { g, h, k, s, a, b, c }));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Extends a map defined on a transversal of a distributive source to the
/// whole carrier: each point x of the orbit of a ∈ A is g(a, a) for some g,
/// and extends as `f̃(x) = g(f(a), f(a))`.
///
/// Both actions must be distributive and condition (*) must hold; the
/// representation search scans group elements in ascending order, and (*)
/// guarantees the choice does not matter. The result is certified
/// bi-equivariant and agrees with `f` on the transversal.
pub fn extend_from_section<'a>(
    f: &PartialEquivariantMap<'a>,
) -> Result<TotalEquivariantMap<'a>, ExtensionError> {
    let source = f.source();
    let target = f.target();
    require_distributive(source, ActionSide::Source)?;
    require_distributive(target, ActionSide::Target)?;
    let partition = orbit_partition(source).expect("distributivity just checked");
    let section = section_from_transversal(&partition, f.domain()).map_err(
        |crate::section::SectionError::NotATransversal { orbit, count }| {
            ExtensionError::NotATransversal { orbit, count }
        },
    )?;
    if let Some(witness) = check_star_condition(f)? {
        return Err(ExtensionError::StarConditionFailed(witness));
    }

    let m = source.group().order();
    let n = source.carrier_size();
    let mut values = Vec::with_capacity(n);
    for x in 0..n {
        let a = section.apply(partition.orbit_id(x));
        let fa = f.value_of(a).expect("section points lie in the domain");
        let g = (0..m)
            .find(|&g| source.apply(g, a, a) == x)
            .ok_or(ExtensionError::NoRepresentation { point: x })?;
        values.push(target.apply(g, fa, fa));
    }
    let mut map = TotalEquivariantMap::new(source, target, values)?;
    map.certify()
        .expect("section extension under (*) is bi-equivariant");
    for (a, ya) in f.pairs() {
        assert_eq!(map.apply(a), ya, "extension must restrict to the seed map");
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::SelfActionVariant;
    use crate::group::FiniteGroup;

    fn z(k: usize) -> FiniteGroup {
        FiniteGroup::cyclic(k)
    }

    fn translation(k: usize) -> BinaryAction {
        BinaryAction::canonical_self_action(z(k), SelfActionVariant::Distributive)
    }

    #[test]
    fn identity_map_certifies() {
        let a = translation(4);
        let map = TotalEquivariantMap::identity(&a);
        assert!(map.is_certified());
    }

    #[test]
    fn constant_map_into_trivial_target_certifies() {
        let a = BinaryAction::canonical_self_action(
            FiniteGroup::symmetric(3),
            SelfActionVariant::Conjugate,
        );
        let t = BinaryAction::trivial(FiniteGroup::symmetric(3), 2);
        let mut map = TotalEquivariantMap::new(&a, &t, vec![1; 6]).unwrap();
        assert!(map.certify().is_ok());
    }

    #[test]
    fn non_equivariant_map_yields_verifiable_witness() {
        let a = translation(3);
        // x ↦ 2x is not compatible with translation by 1
        let mut map = TotalEquivariantMap::new(&a, &a, vec![0, 2, 1]).unwrap();
        let w = map.certify().unwrap_err();
        assert!(!map.is_certified());
        let lhs = map.apply(a.apply(w.g, w.x1, w.x2));
        let rhs = a.apply(w.g, map.apply(w.x1), map.apply(w.x2));
        assert_eq!((lhs, rhs), (w.lhs, w.rhs));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn group_mismatch_is_rejected() {
        let a = translation(2);
        let b = translation(3);
        assert!(matches!(
            TotalEquivariantMap::new(&a, &b, vec![0, 1]),
            Err(ExtensionError::GroupMismatch)
        ));
        assert!(matches!(
            PartialEquivariantMap::new(&a, &b, &[(0, 0)]),
            Err(ExtensionError::GroupMismatch)
        ));
    }

    #[test]
    fn sm1_vacuous_on_isolated_singleton() {
        // trivial source: g(a, a) = a, so the only constraint is the identity one
        let a = BinaryAction::trivial(z(3), 4);
        let t = BinaryAction::trivial(z(3), 2);
        let f = PartialEquivariantMap::new(&a, &t, &[(2, 1)]).unwrap();
        assert_eq!(check_sm1(&f), None);
    }

    #[test]
    fn sm1_holds_for_restrictions_of_certified_maps() {
        let a = translation(4);
        let map = TotalEquivariantMap::identity(&a);
        for members in [vec![0], vec![1, 3], vec![0, 1, 2, 3]] {
            let domain = CarrierSubset::new(4, members).unwrap();
            assert_eq!(check_sm1(&map.restrict(&domain)), None);
        }
    }

    #[test]
    fn sm1_trivial_actions_accept_everything() {
        let a = BinaryAction::trivial(z(2), 3);
        let t = BinaryAction::trivial(z(2), 3);
        let f = PartialEquivariantMap::new(&a, &t, &[(0, 2), (1, 0), (2, 2)]).unwrap();
        assert_eq!(check_sm1(&f), None);
    }

    #[test]
    fn extend_structural_bi_invariant_domain_returns_seed() {
        let a = translation(3);
        let map = TotalEquivariantMap::identity(&a);
        let f = map.restrict(&CarrierSubset::full(3));
        let ext = extend_structural(&f).unwrap();
        assert_eq!(ext.domain(), &CarrierSubset::full(3));
        assert_eq!(ext.values(), &[0, 1, 2]);
    }

    #[test]
    fn extend_structural_rebuilds_identity_from_one_point() {
        let a = translation(3);
        let f = PartialEquivariantMap::new(&a, &a, &[(0, 0)]).unwrap();
        let ext = extend_structural(&f).unwrap();
        assert!(ext.is_total());
        assert_eq!(ext.values(), &[0, 1, 2]);
        let total = ext.into_total().unwrap();
        assert!(total.is_certified());
    }

    #[test]
    fn extend_structural_into_trivial_target_is_constant() {
        let a = translation(3);
        let t = BinaryAction::trivial(z(3), 2);
        let f = PartialEquivariantMap::new(&a, &t, &[(0, 0)]).unwrap();
        let ext = extend_structural(&f).unwrap();
        assert!(ext.is_total());
        assert_eq!(ext.values(), &[0, 0, 0]);
    }

    #[test]
    fn extend_structural_detects_sm1_violations() {
        let a = translation(2);
        let f = PartialEquivariantMap::new(&a, &a, &[(0, 0), (1, 0)]).unwrap();
        match extend_structural(&f) {
            Err(ExtensionError::Sm1Violation(w)) => {
                // confirm: f(g(a1, a2)) really differs from g(f(a1), f(a2))
                let lhs = f.value_of(a.apply(w.g, w.a1, w.a2)).unwrap();
                let rhs = a.apply(w.g, f.value_of(w.a1).unwrap(), f.value_of(w.a2).unwrap());
                assert_ne!(lhs, rhs);
            }
            other => panic!("expected SM1 violation, got {other:?}"),
        }
    }

    /// Source: slot 0 swaps {0, 1}, slot 1 is the identity. Target: every
    /// slot swaps. Seeding f(0) = 0 passes SM1 (the domain is a singleton)
    /// but the propagation derives two different labels for point 0.
    fn conflicting_instance() -> (BinaryAction, BinaryAction) {
        let id = vec![vec![0, 1], vec![0, 1]];
        let sw = vec![vec![0, 1], vec![1, 0]];
        let src =
            BinaryAction::from_family(z(2), 2, &[sw.clone(), id]).unwrap();
        let tgt = BinaryAction::from_family(z(2), 2, &[sw.clone(), sw]).unwrap();
        (src, tgt)
    }

    #[test]
    fn extend_structural_reports_conflict_with_derivations() {
        let (src, tgt) = conflicting_instance();
        let f = PartialEquivariantMap::new(&src, &tgt, &[(0, 0)]).unwrap();
        assert_eq!(check_sm1(&f), None);
        match extend_structural(&f) {
            Err(ExtensionError::Conflict(report)) => {
                assert_eq!(report.point, 0);
                assert_ne!(report.first_label, report.second_label);
                // the clashing derivation must replay step by step
                for step in &report.second_derivation {
                    assert_eq!(src.apply(step.g, step.left, step.right), step.result);
                }
                let last = report.second_derivation.last().unwrap();
                assert_eq!(last.result, report.point);
                assert_eq!(last.label, report.second_label);
            }
            other => panic!("expected a conflict, got {other:?}"),
        }
        // the SM2 oracle agrees at the saturation depth
        let (_, depth) = saturate(&src, f.domain()).unwrap();
        assert!(check_sm2_bounded(&f, depth).unwrap().is_some());
    }

    #[test]
    fn sm2_depth_one_singleton_trivial() {
        let a = BinaryAction::trivial(z(2), 1);
        let t = BinaryAction::trivial(z(2), 1);
        let f = PartialEquivariantMap::new(&a, &t, &[(0, 0)]).unwrap();
        assert_eq!(check_sm2_bounded(&f, 1).unwrap(), None);
    }

    #[test]
    fn sm2_agrees_with_propagation_on_small_sweep() {
        // all value assignments on a fixed domain, across a small pool of
        // source/target actions of Z₂ — the oracle and the propagation
        // engine must agree on every single one
        let g2 = z(2);
        let swap3 = BinaryAction::from_ordinary(
            g2.clone(),
            3,
            &[vec![0, 1, 2], vec![0, 2, 1]],
        )
        .unwrap();
        let pool = vec![
            BinaryAction::trivial(g2.clone(), 2),
            translation(2),
            BinaryAction::from_ordinary(g2.clone(), 2, &[vec![0, 1], vec![1, 0]]).unwrap(),
            swap3,
        ];
        let mut successes = 0usize;
        let mut failures = 0usize;
        for source in &pool {
            for target in &pool {
                let n = source.carrier_size();
                let ny = target.carrier_size();
                for domain_mask in 1u32..(1 << n) {
                    let points: Vec<usize> =
                        (0..n).filter(|&x| domain_mask & (1 << x) != 0).collect();
                    let combos = ny.pow(points.len() as u32);
                    for combo in 0..combos {
                        let mut c = combo;
                        let pairs: Vec<(usize, usize)> = points
                            .iter()
                            .map(|&p| {
                                let v = c % ny;
                                c /= ny;
                                (p, v)
                            })
                            .collect();
                        let f = PartialEquivariantMap::new(source, target, &pairs).unwrap();
                        let domain = f.domain().clone();
                        let (_, depth) = saturate(source, &domain).unwrap();
                        let extended = extend_structural(&f).is_ok();
                        let sm2_ok = check_sm2_bounded(&f, depth).unwrap().is_none();
                        assert_eq!(extended, sm2_ok, "engines disagree on {pairs:?}");
                        if extended {
                            successes += 1;
                        } else {
                            failures += 1;
                        }
                    }
                }
            }
        }
        assert!(successes > 0 && failures > 0, "sweep must be non-vacuous");
    }

    #[test]
    fn isotropy_of_trivial_action_is_whole_group() {
        let a = BinaryAction::trivial(z(4), 3);
        for x in 0..3 {
            for xp in 0..3 {
                assert_eq!(isotropy_group(&a, x, xp).members, vec![0, 1, 2, 3]);
            }
        }
    }

    #[test]
    fn isotropy_of_self_action_is_trivial() {
        let s3 = FiniteGroup::symmetric(3);
        let a = BinaryAction::canonical_self_action(s3.clone(), SelfActionVariant::Distributive);
        for x in 0..6 {
            for xp in 0..6 {
                assert_eq!(isotropy_group(&a, x, xp).members, vec![s3.identity()]);
            }
        }
    }

    #[test]
    fn isotropy_of_fixed_point_is_full() {
        // Z₂ swaps {0, 1} and fixes 2 in every family slot
        let swap = vec![vec![0, 1, 2], vec![1, 0, 2]];
        let a = BinaryAction::from_family(z(2), 3, &[swap.clone(), swap.clone(), swap]).unwrap();
        for x in 0..3 {
            assert_eq!(isotropy_group(&a, x, 2).members, vec![0, 1]);
        }
    }

    #[test]
    fn star_condition_trivial_actions() {
        let a = BinaryAction::trivial(z(3), 3);
        let t = BinaryAction::trivial(z(3), 2);
        let f = PartialEquivariantMap::new(&a, &t, &[(0, 1), (1, 0), (2, 1)]).unwrap();
        assert_eq!(check_star_condition(&f).unwrap(), None);
    }

    #[test]
    fn star_condition_holds_for_restrictions() {
        let a = translation(4);
        let map = TotalEquivariantMap::identity(&a);
        let domain = CarrierSubset::singleton(4, 2).unwrap();
        let f = map.restrict(&domain);
        assert_eq!(check_star_condition(&f).unwrap(), None);
    }

    #[test]
    fn star_condition_rejects_non_transversal_and_non_distributive() {
        let a = translation(3);
        let f = PartialEquivariantMap::new(&a, &a, &[(0, 0), (1, 1)]).unwrap();
        assert!(matches!(
            check_star_condition(&f),
            Err(ExtensionError::NotATransversal { orbit: 0, count: 2 })
        ));

        let s3 = FiniteGroup::symmetric(3);
        let bad = BinaryAction::canonical_self_action(s3.clone(), SelfActionVariant::Conjugate);
        let tgt = BinaryAction::trivial(s3, 2);
        let g = PartialEquivariantMap::new(&bad, &tgt, &[(0, 0)]).unwrap();
        assert!(matches!(
            check_star_condition(&g),
            Err(ExtensionError::NotDistributive {
                side: ActionSide::Source,
                ..
            })
        ));
    }

    #[test]
    fn section_extension_of_identity_seed() {
        let a = translation(3);
        let f = PartialEquivariantMap::new(&a, &a, &[(0, 0)]).unwrap();
        let total = extend_from_section(&f).unwrap();
        assert!(total.is_certified());
        assert_eq!(total.values(), &[0, 1, 2]);
        // matches the propagation engine on the same data
        let ext = extend_structural(&f).unwrap();
        assert_eq!(ext.values(), total.values());
    }

    #[test]
    fn section_extension_constant_into_trivial_target() {
        let a = translation(4);
        let t = BinaryAction::trivial(z(4), 4);
        let f = PartialEquivariantMap::new(&a, &t, &[(0, 2)]).unwrap();
        let total = extend_from_section(&f).unwrap();
        assert_eq!(total.values(), &[2, 2, 2, 2]);
    }

    #[test]
    fn section_extension_trivial_both_sides_returns_seed() {
        let a = BinaryAction::trivial(z(2), 3);
        let f = PartialEquivariantMap::new(&a, &a, &[(0, 1), (1, 1), (2, 0)]).unwrap();
        let total = extend_from_section(&f).unwrap();
        assert_eq!(total.values(), &[1, 1, 0]);
    }

    #[test]
    fn isotropy_condition_cases() {
        // trivial target: target isotropy is all of G, inclusion always holds
        let a = translation(3);
        let t = BinaryAction::trivial(z(3), 2);
        let f = PartialEquivariantMap::new(&a, &t, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(check_isotropy_condition(&f), None);

        // restriction of a certified bi-equivariant map
        let id = TotalEquivariantMap::identity(&a);
        let domain = CarrierSubset::new(3, [0, 2]).unwrap();
        assert_eq!(check_isotropy_condition(&id.restrict(&domain)), None);

        // trivial source (isotropy = G) into a self-action (isotropy = {e})
        let src = BinaryAction::trivial(z(3), 3);
        let tgt = translation(3);
        let g = PartialEquivariantMap::new(&src, &tgt, &[(0, 0), (1, 2)]).unwrap();
        let w = check_isotropy_condition(&g).unwrap();
        // confirm the witness: g fixes the source pair but not the image pair
        assert_eq!(src.apply(w.g, w.a, w.a_prime), w.a_prime);
        let (ya, yp) = (g.value_of(w.a).unwrap(), g.value_of(w.a_prime).unwrap());
        assert_ne!(tgt.apply(w.g, ya, yp), yp);
    }
}
