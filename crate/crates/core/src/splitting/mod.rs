//! Splittings `M·S = G ∖ {0}`: verification, classification, search and
//! enumeration.
//!
//! Multipliers are integers and act on `G` through their residues modulo the
//! group exponent. Certificates keep the integers as given; the canonical
//! residues in `[1, N)` are derived on demand.

pub mod enumerate;
pub mod exact_cover;
pub mod search;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{gcd, residue, FiniteAbelianGroup, GroupElement};

pub use enumerate::{enumerate_all_splittings, EnumerationBudget};
pub use search::{search_splitter, SearchConfig, SearchOutcome, SearchResult, SearchStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MultiplierKind {
    /// `S(k) = {1, …, k}`.
    Interval {
        k: u64,
    },
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplierSet {
    values: Vec<i64>,
    kind: MultiplierKind,
}

impl MultiplierSet {
    /// `S(k) = {1, 2, …, k}`.
    pub fn interval(k: u64) -> Result<MultiplierSet> {
        if k == 0 || k > i64::MAX as u64 {
            return Err(Error::InvalidMultipliers(format!(
                "S(k) needs k >= 1, got {k}"
            )));
        }
        Ok(MultiplierSet {
            values: (1..=k as i64).collect(),
            kind: MultiplierKind::Interval { k },
        })
    }

    /// Any finite set of nonzero integers; sorted on construction.
    pub fn explicit(mut values: Vec<i64>) -> Result<MultiplierSet> {
        if values.is_empty() {
            return Err(Error::InvalidMultipliers("empty multiplier set".into()));
        }
        if values.contains(&0) {
            return Err(Error::InvalidMultipliers("0 is not a multiplier".into()));
        }
        values.sort_unstable();
        if values.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidMultipliers("duplicate multiplier".into()));
        }
        Ok(MultiplierSet {
            values,
            kind: MultiplierKind::Explicit,
        })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn kind(&self) -> MultiplierKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `Some(k)` when the values are exactly `{1, …, k}`, whatever the tag.
    pub fn as_interval(&self) -> Option<u64> {
        let k = self.values.len() as i64;
        (self.values.first() == Some(&1) && self.values.last() == Some(&k)).then_some(k as u64)
    }

    /// Residues modulo `modulus`, in value order (duplicates kept).
    pub fn residues(&self, modulus: u64) -> Vec<u64> {
        self.values.iter().map(|&m| residue(m, modulus)).collect()
    }

    /// Sorted distinct residues modulo `modulus`.
    pub fn canonical_residues(&self, modulus: u64) -> Vec<u64> {
        let set: BTreeSet<u64> = self.residues(modulus).into_iter().collect();
        set.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitterSet {
    elements: Vec<GroupElement>,
}

impl SplitterSet {
    pub fn new(group: &FiniteAbelianGroup, mut elements: Vec<GroupElement>) -> Result<SplitterSet> {
        if let Some(bad) = elements.iter().find(|e| !group.contains(e)) {
            return Err(Error::InvalidSplitters(format!(
                "{bad} is not an element of {group}"
            )));
        }
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSplitters(format!(
                "duplicate splitter {}",
                w[0]
            )));
        }
        Ok(SplitterSet { elements })
    }

    /// Splitters of a cyclic group given as residues.
    pub fn cyclic(group: &FiniteAbelianGroup, residues: &[u64]) -> Result<SplitterSet> {
        let elements = residues
            .iter()
            .map(|&r| group.element(vec![r]))
            .collect::<Result<Vec<_>>>()?;
        SplitterSet::new(group, elements)
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Residues of a splitter set over a cyclic group.
    pub fn residues(&self) -> Vec<u64> {
        self.elements.iter().map(GroupElement::residue).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityTag {
    Nonsingular,
    PurelySingular,
    MixedSingular,
}

impl fmt::Display for SingularityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularityTag::Nonsingular => "nonsingular",
            SingularityTag::PurelySingular => "purely_singular",
            SingularityTag::MixedSingular => "mixed_singular",
        })
    }
}

/// For one prime divisor of `|G|`: the least multiplier it divides, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeWitness {
    pub prime: u64,
    pub multiplier: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingularityClass {
    pub tag: SingularityTag,
    pub witnesses: Vec<PrimeWitness>,
}

/// Nonsingular when no prime of `|G|` divides a multiplier, purely singular
/// when every prime of `|G|` divides some multiplier, mixed otherwise. The
/// trivial group has no prime divisors and counts as purely singular.
pub fn classify_multipliers(
    group: &FiniteAbelianGroup,
    multipliers: &MultiplierSet,
) -> SingularityClass {
    let witnesses: Vec<PrimeWitness> = group
        .order_factorization()
        .primes()
        .map(|p| PrimeWitness {
            prime: p,
            multiplier: multipliers
                .values()
                .iter()
                .copied()
                .find(|&m| m.unsigned_abs() % p == 0),
        })
        .collect();
    let divided = witnesses.iter().filter(|w| w.multiplier.is_some()).count();
    let tag = if divided == witnesses.len() {
        SingularityTag::PurelySingular
    } else if divided == 0 {
        SingularityTag::Nonsingular
    } else {
        SingularityTag::MixedSingular
    };
    SingularityClass { tag, witnesses }
}

/// The products `m·s` for `m` in `M`, in multiplier order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub products: Vec<GroupElement>,
}

impl Orbit {
    pub fn distinct(&self) -> BTreeSet<GroupElement> {
        self.products.iter().cloned().collect()
    }

    pub fn multiset_size(&self) -> usize {
        self.products.len()
    }

    pub fn contains_zero(&self) -> bool {
        self.products.iter().any(GroupElement::is_zero)
    }

    pub fn has_duplicates(&self) -> bool {
        self.distinct().len() != self.products.len()
    }

    /// A clean orbit can be a block of some splitting.
    pub fn is_clean(&self) -> bool {
        !self.contains_zero() && !self.has_duplicates()
    }
}

pub fn orbit(multipliers: &MultiplierSet, s: &GroupElement, group: &FiniteAbelianGroup) -> Orbit {
    Orbit {
        products: multipliers
            .values()
            .iter()
            .map(|&m| group.scalar_mul(m, s))
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum VerificationFailure {
    ZeroHit {
        m: i64,
        s: GroupElement,
    },
    Collision {
        element: GroupElement,
        first: (i64, GroupElement),
        second: (i64, GroupElement),
    },
    Uncovered {
        element: GroupElement,
    },
    CountMismatch {
        products: u64,
        nonzero_elements: u64,
    },
}

impl fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerificationFailure::ZeroHit { m, s } => write!(f, "zero_hit: {m}*{s} = 0"),
            VerificationFailure::Collision {
                element,
                first,
                second,
            } => write!(
                f,
                "collision at {element}: {}*{} and {}*{}",
                first.0, first.1, second.0, second.1
            ),
            VerificationFailure::Uncovered { element } => write!(f, "uncovered: {element}"),
            VerificationFailure::CountMismatch {
                products,
                nonzero_elements,
            } => write!(
                f,
                "count_mismatch: |M|*|S| = {products} but |G|-1 = {nonzero_elements}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub failure: Option<VerificationFailure>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// Check that every nonzero element is `m·s` in exactly one way.
///
/// Products are generated splitter by splitter (ascending), multiplier by
/// multiplier (ascending); the first zero product or repeated product in that
/// order is reported. A count mismatch short-circuits before any product is
/// formed.
pub fn verify_splitting(
    group: &FiniteAbelianGroup,
    multipliers: &MultiplierSet,
    splitters: &SplitterSet,
) -> VerificationReport {
    let nonzero = group.order() - 1;
    let products = multipliers.len() as u64 * splitters.len() as u64;
    if products != nonzero {
        return VerificationReport {
            failure: Some(VerificationFailure::CountMismatch {
                products,
                nonzero_elements: nonzero,
            }),
        };
    }
    let mut hit: Vec<Option<(usize, usize)>> = vec![None; group.order() as usize];
    let fail = |f| VerificationReport { failure: Some(f) };
    for (si, s) in splitters.elements().iter().enumerate() {
        for (mi, &m) in multipliers.values().iter().enumerate() {
            let x = group.scalar_mul(m, s);
            if x.is_zero() {
                return fail(VerificationFailure::ZeroHit { m, s: s.clone() });
            }
            let slot = &mut hit[group.index_of(&x) as usize];
            if let Some((pm, ps)) = *slot {
                return fail(VerificationFailure::Collision {
                    element: x,
                    first: (multipliers.values()[pm], splitters.elements()[ps].clone()),
                    second: (m, s.clone()),
                });
            }
            *slot = Some((mi, si));
        }
    }
    if let Some(i) = hit.iter().skip(1).position(Option::is_none) {
        return fail(VerificationFailure::Uncovered {
            element: group.element_at(i as u64 + 1),
        });
    }
    VerificationReport { failure: None }
}

/// A verified splitting together with its singularity class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingCertificate {
    group: FiniteAbelianGroup,
    multipliers: MultiplierSet,
    splitters: SplitterSet,
    classification: SingularityClass,
}

impl SplittingCertificate {
    pub fn new(
        group: FiniteAbelianGroup,
        multipliers: MultiplierSet,
        splitters: SplitterSet,
    ) -> Result<SplittingCertificate> {
        if let Some(failure) = verify_splitting(&group, &multipliers, &splitters).failure {
            return Err(Error::NotASplitting(failure.to_string()));
        }
        let classification = classify_multipliers(&group, &multipliers);
        Ok(SplittingCertificate {
            group,
            multipliers,
            splitters,
            classification,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn multipliers(&self) -> &MultiplierSet {
        &self.multipliers
    }

    pub fn splitters(&self) -> &SplitterSet {
        &self.splitters
    }

    pub fn classification(&self) -> &SingularityClass {
        &self.classification
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrivialOrder {
    /// `(Z_{k+1}, S(k), {1})`
    KPlusOne,
    /// `(Z_{2k+1}, S(k), {1, 2k})`
    TwoKPlusOne,
}

pub fn trivial_certificate(k: u64, which: TrivialOrder) -> Result<SplittingCertificate> {
    let multipliers = MultiplierSet::interval(k)?;
    let (group, splitters) = match which {
        TrivialOrder::KPlusOne => (FiniteAbelianGroup::cyclic(k + 1)?, vec![1]),
        TrivialOrder::TwoKPlusOne => (FiniteAbelianGroup::cyclic(2 * k + 1)?, vec![1, 2 * k]),
    };
    let splitters = SplitterSet::cyclic(&group, &splitters)?;
    SplittingCertificate::new(group, multipliers, splitters)
}

/// Over `Z_{p^t}` with `p` an odd prime, either every multiplier or every
/// splitter of a splitting is prime to `p`.
pub fn s87_property_check(cert: &SplittingCertificate) -> Result<bool> {
    let n = cert.group().cyclic_order()?;
    let f = cert.group().order_factorization();
    let p = match f.pairs() {
        [(p, _)] if *p != 2 => *p,
        _ => {
            return Err(Error::Precondition(format!(
                "group order {n} is not a power of an odd prime"
            )))
        }
    };
    let m_coprime = cert
        .multipliers()
        .residues(n)
        .iter()
        .all(|&m| gcd(m, p) == 1);
    let s_coprime = cert.splitters().residues().iter().all(|&s| gcd(s, p) == 1);
    Ok(m_coprime || s_coprime)
}
