//! Symbolic period sets and the classification of circle and torus maps.
//!
//! Period sets of these maps are always a finite or cofinite adjustment of
//! one of four bases: nothing, everything, the odds, or the evens. Keeping
//! them symbolic gives exact membership for arbitrarily large periods and
//! structural equality after normalization.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::algebra::{EigenStructure, IntMat2, MinimalPoly};

/// Infinite part of a [`PeriodSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetBase {
    Empty,
    All,
    Odds,
    Evens,
}

impl SetBase {
    fn member(self, n: u64) -> bool {
        match self {
            SetBase::Empty => false,
            SetBase::All => true,
            SetBase::Odds => n % 2 == 1,
            SetBase::Evens => n % 2 == 0,
        }
    }

    fn union(self, other: SetBase) -> SetBase {
        use SetBase::*;
        match (self, other) {
            (Empty, x) | (x, Empty) => x,
            (All, _) | (_, All) => All,
            (Odds, Odds) => Odds,
            (Evens, Evens) => Evens,
            (Odds, Evens) | (Evens, Odds) => All,
        }
    }
}

/// A set of periods: a base plus finitely many additions and removals.
///
/// The representation is kept normalized (`add` disjoint from the base,
/// `remove` inside it, the two disjoint from each other), so derived
/// equality is semantic equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodSet {
    base: SetBase,
    add: BTreeSet<u64>,
    remove: BTreeSet<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PeriodSetError {
    /// Removing every multiple of `k` from this base leaves a set that the
    /// representation cannot express; reaching this is a caller bug.
    #[error("cannot remove multiples of {k} from this base")]
    UnrepresentableDifference { k: u32 },
}

impl PeriodSet {
    /// Builds the set `(base \ remove) ∪ add` and normalizes. Periods are
    /// at least 1; zeros are rejected.
    #[must_use]
    pub fn new(
        base: SetBase,
        add: impl IntoIterator<Item = u64>,
        remove: impl IntoIterator<Item = u64>,
    ) -> Self {
        let add: BTreeSet<u64> = add.into_iter().collect();
        let remove: BTreeSet<u64> = remove.into_iter().collect();
        assert!(
            !add.contains(&0) && !remove.contains(&0),
            "periods start at 1"
        );
        let norm_add: BTreeSet<u64> = add.iter().copied().filter(|&n| !base.member(n)).collect();
        let norm_remove: BTreeSet<u64> = remove
            .iter()
            .copied()
            .filter(|n| !add.contains(n) && base.member(*n))
            .collect();
        PeriodSet {
            base,
            add: norm_add,
            remove: norm_remove,
        }
    }

    #[must_use]
    pub fn empty() -> Self {
        Self::new(SetBase::Empty, [], [])
    }

    #[must_use]
    pub fn all() -> Self {
        Self::new(SetBase::All, [], [])
    }

    #[must_use]
    pub fn odds() -> Self {
        Self::new(SetBase::Odds, [], [])
    }

    #[must_use]
    pub fn finite(members: impl IntoIterator<Item = u64>) -> Self {
        Self::new(SetBase::Empty, members, [])
    }

    #[must_use]
    pub fn all_except(members: impl IntoIterator<Item = u64>) -> Self {
        Self::new(SetBase::All, [], members)
    }

    pub fn base(&self) -> SetBase {
        self.base
    }

    pub fn added(&self) -> &BTreeSet<u64> {
        &self.add
    }

    pub fn removed(&self) -> &BTreeSet<u64> {
        &self.remove
    }

    pub fn is_empty(&self) -> bool {
        self.base == SetBase::Empty && self.add.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        assert!(n >= 1, "periods start at 1");
        self.add.contains(&n) || (self.base.member(n) && !self.remove.contains(&n))
    }

    /// The members in `[1..k]`, as a concrete finite set.
    pub fn truncate(&self, k: u64) -> BTreeSet<u64> {
        (1..=k).filter(|&n| self.contains(n)).collect()
    }

    /// Union, exact. Away from the finitely many adjustments the result is
    /// the pointwise union of the two bases, which is again a base.
    #[must_use]
    pub fn union(&self, other: &PeriodSet) -> PeriodSet {
        let base = self.base.union(other.base);
        let mut add = BTreeSet::new();
        let mut remove = BTreeSet::new();
        let support: BTreeSet<u64> = self
            .add
            .iter()
            .chain(&self.remove)
            .chain(&other.add)
            .chain(&other.remove)
            .copied()
            .collect();
        for n in support {
            let want = self.contains(n) || other.contains(n);
            if want && !base.member(n) {
                add.insert(n);
            } else if !want && base.member(n) {
                remove.insert(n);
            }
        }
        PeriodSet::new(base, add, remove)
    }

    /// Removes the unity-power set: the periods at which the homotopy class
    /// stops guaranteeing an orbit. Errors only on base/stride combinations
    /// that never arise from the classifier; hitting one is internal misuse.
    pub fn minus_unity(&self, unity: &UnityPowerSet) -> Result<PeriodSet, PeriodSetError> {
        match unity {
            UnityPowerSet::Empty => Ok(self.clone()),
            UnityPowerSet::All => Ok(PeriodSet::empty()),
            UnityPowerSet::MultiplesOf(k) => {
                let k = *k;
                let base = match (self.base, k) {
                    (SetBase::Empty, _) => SetBase::Empty,
                    (SetBase::Odds, k) if k % 2 == 0 => SetBase::Odds,
                    (SetBase::Evens, 2) => SetBase::Empty,
                    (SetBase::All, 2) => SetBase::Odds,
                    _ => return Err(PeriodSetError::UnrepresentableDifference { k }),
                };
                let add = self
                    .add
                    .iter()
                    .copied()
                    .filter(|n| n % u64::from(k) != 0)
                    .collect::<Vec<_>>();
                let remove = self.remove.clone();
                Ok(PeriodSet::new(base, add, remove))
            }
        }
    }
}

impl fmt::Display for PeriodSet {
    /// Prints in the notation of the classification tables: `N`, `N\{2,3}`,
    /// `2N∪{1}`, `2N−1`, `{1,2,4}`, `∅`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn braces(f: &mut fmt::Formatter<'_>, s: &BTreeSet<u64>) -> fmt::Result {
            write!(f, "{{")?;
            for (i, n) in s.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{n}")?;
            }
            write!(f, "}}")
        }
        if self.base == SetBase::Empty {
            if self.add.is_empty() {
                return write!(f, "∅");
            }
            return braces(f, &self.add);
        }
        match self.base {
            SetBase::All => write!(f, "N")?,
            SetBase::Odds => write!(f, "2N−1")?,
            SetBase::Evens => write!(f, "2N")?,
            SetBase::Empty => unreachable!(),
        }
        if !self.add.is_empty() {
            write!(f, "∪")?;
            braces(f, &self.add)?;
        }
        if !self.remove.is_empty() {
            write!(f, "\\")?;
            braces(f, &self.remove)?;
        }
        Ok(())
    }
}

/// The set of iterates that acquire 1 as an eigenvalue: `{n : 1 eig of A^n}`.
///
/// Only the identity, a sign, or a primitive root of unity of order 3, 4 or 6
/// can contribute, so the set is empty, everything, or the multiples of a
/// stride in {2, 3, 4, 6}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnityPowerSet {
    Empty,
    All,
    MultiplesOf(u32),
}

pub fn unity_powers(eigen: &EigenStructure) -> UnityPowerSet {
    match eigen {
        EigenStructure::IntegerPair { .. } => {
            if eigen.has_integer_eigenvalue(1) {
                UnityPowerSet::All
            } else if eigen.has_integer_eigenvalue(-1) {
                UnityPowerSet::MultiplesOf(2)
            } else {
                UnityPowerSet::Empty
            }
        }
        EigenStructure::ComplexPair { trace, det } => {
            let pair = |x: i64, y: i64| *trace == BigInt::from(x) && *det == BigInt::from(y);
            if pair(-1, 1) {
                UnityPowerSet::MultiplesOf(3)
            } else if pair(0, 1) {
                UnityPowerSet::MultiplesOf(4)
            } else if pair(1, 1) {
                UnityPowerSet::MultiplesOf(6)
            } else {
                UnityPowerSet::Empty
            }
        }
        EigenStructure::RealQuadratic { .. } => UnityPowerSet::Empty,
    }
}

/// The set of multiplicative orders `ord_n(a)` over all moduli `n ≥ 2`
/// coprime to `a`.
pub fn order_set(a: &BigInt) -> PeriodSet {
    use num_traits::Zero;
    if a.is_zero() {
        return PeriodSet::empty();
    }
    match i64::try_from(a) {
        Ok(1) => PeriodSet::finite([1]),
        Ok(-1) => PeriodSet::finite([1, 2]),
        Ok(2) => PeriodSet::all_except([1]),
        Ok(-2) => PeriodSet::all_except([2]),
        _ => PeriodSet::all(),
    }
}

/// Period data for the degree-`d` circle map `x -> d·x mod 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleClassification {
    pub degree: i64,
    pub per: PeriodSet,
    pub mper: PeriodSet,
    pub automorphism: bool,
}

pub fn classify_circle(degree: i64) -> CircleClassification {
    let d = BigInt::from(degree);
    let per = PeriodSet::finite([1]).union(&order_set(&d));
    let unity = match degree {
        1 => UnityPowerSet::All,
        -1 => UnityPowerSet::MultiplesOf(2),
        _ => UnityPowerSet::Empty,
    };
    let mper = per
        .minus_unity(&unity)
        .expect("circle differences are always representable");
    CircleClassification {
        degree,
        per,
        mper,
        automorphism: degree == 1 || degree == -1,
    }
}

/// Full classification of the torus map induced by an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Which of the twenty classes fired, 1-based.
    pub row: u8,
    pub per: PeriodSet,
    pub mper: PeriodSet,
    pub eigen: EigenStructure,
    pub minimal_poly: MinimalPoly,
    pub automorphism: bool,
}

/// Periods guaranteed for the class, straight from the classification table.
fn per_of_row(row: u8) -> PeriodSet {
    match row {
        1 | 9 | 10 => PeriodSet::finite([1]),
        2 | 15 | 16 | 18 | 20 => PeriodSet::all(),
        3 | 5 | 11 => PeriodSet::finite([1, 2]),
        4 => PeriodSet::new(SetBase::Evens, [1], []),
        6 => PeriodSet::finite([1, 3]),
        7 => PeriodSet::finite([1, 2, 4]),
        8 => PeriodSet::finite([1, 2, 3, 6]),
        12 => PeriodSet::all_except([2, 3]),
        13 => PeriodSet::all_except([3]),
        14 => PeriodSet::all_except([4]),
        17 | 19 => PeriodSet::all_except([2]),
        _ => unreachable!("row ids run 1..=20"),
    }
}

/// Classifies the torus map of `a` into one of the twenty classes.
///
/// Every class guard is evaluated, and exactly one must fire: the guards
/// carry their mutual carve-outs explicitly, so disjointness and totality
/// are checked on every call instead of depending on match order.
pub fn classify(a: &IntMat2) -> Classification {
    let inv = a.invariants();
    let eigen = a.eigen();
    let scalar = a.is_scalar();
    let t = &inv.trace;
    let d = &inv.det;
    let pair = |x: i64, y: i64| *t == BigInt::from(x) && *d == BigInt::from(y);
    let tpd = t + d;
    let complex = !eigen.is_real();
    let integer = matches!(eigen, EigenStructure::IntegerPair { .. });
    let has1 = eigen.has_integer_eigenvalue(1);
    let hasm1 = eigen.has_integer_eigenvalue(-1);
    let d_small = *d == BigInt::from(-1) || *d == BigInt::from(0) || *d == BigInt::from(1);
    let tpd_zero_or_m2 = tpd == BigInt::from(0) || tpd == BigInt::from(-2);

    let guards: [bool; 20] = [
        /* 1 */ integer && pair(2, 1) && scalar,
        /* 2 */ integer && pair(2, 1) && !scalar,
        /* 3 */ integer && pair(-2, 1) && scalar,
        /* 4 */ integer && pair(-2, 1) && !scalar,
        /* 5 */ integer && pair(0, -1),
        /* 6 */ complex && pair(-1, 1),
        /* 7 */ complex && pair(0, 1),
        /* 8 */ complex && pair(1, 1),
        /* 9 */ integer && pair(0, 0),
        /* 10 */ integer && pair(1, 0),
        /* 11 */ integer && pair(-1, 0),
        /* 12 */ complex && pair(-2, 2),
        /* 13 */ complex && pair(-1, 2),
        /* 14 */ complex && pair(0, 2),
        /* 15 */
        complex
            && !pair(-1, 1)
            && !pair(0, 1)
            && !pair(1, 1)
            && !pair(-2, 2)
            && !pair(-1, 2)
            && !pair(0, 2),
        /* 16 */ eigen.is_real() && !has1 && !hasm1 && !tpd_zero_or_m2,
        /* 17 */ eigen.is_real() && !has1 && !hasm1 && tpd_zero_or_m2 && !pair(0, 0),
        /* 18 */ integer && hasm1 && !has1 && !d_small,
        /* 19 */ integer && pair(-1, -2),
        /* 20 */ integer && has1 && !pair(-1, -2) && !pair(2, 1) && !pair(1, 0) && !pair(0, -1),
    ];

    let fired: Vec<u8> = guards
        .iter()
        .enumerate()
        .filter_map(|(i, &g)| g.then_some(i as u8 + 1))
        .collect();
    assert!(
        fired.len() == 1,
        "classification must fire exactly one row, got {fired:?} for {a}"
    );
    let row = fired[0];

    let per = per_of_row(row);
    let mper = per
        .minus_unity(&unity_powers(&eigen))
        .expect("table rows always subtract to a representable set");
    Classification {
        row,
        per,
        mper,
        eigen,
        minimal_poly: a.minimal_poly(),
        automorphism: inv.det.abs() == BigInt::from(1),
    }
}
