//! Brute-force orbit structure on rational lattices.
//!
//! `L_n` is the grid of points with denominator `n`, written as residue
//! pairs `(x, y) mod n`. An integer matrix maps each `L_n` into itself, so
//! every `L_n` decomposes into a functional graph: trees hanging off
//! cycles. Cycle lengths are exactly the least periods of the periodic
//! points in `L_n`, which makes these scans an independent check on the
//! symbolic classification: no eigenvalue ever enters the computation.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::gcd;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::IntMat2;
use crate::nielsen::nielsen_number;

/// Largest admissible modulus. Entries and coordinates are reduced below
/// `n`, so every product stays under `2^62` and sums fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    /// Some iterate fixes a whole subtorus, so no finite count exists.
    #[error("the matrix has a root-of-unity eigenvalue; the fixed set of this iterate is infinite")]
    InfiniteFixedSet,
    /// Multiplicative order is only defined for units.
    #[error("{a} is not invertible mod {n}")]
    NotCoprime { a: i64, n: u64 },
}

/// Cycle census of one lattice: how many cycles of each length the map
/// produces on `L_n`, plus the total number of periodic points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleStats {
    pub n: u64,
    /// cycle length -> number of cycles of that length
    pub cycles: BTreeMap<u64, u64>,
    pub periodic_points: u64,
}

/// Walks the whole functional graph of `A` acting on `L_n`.
///
/// Memory is `n^2` bytes, time is `O(n^2)`. Panics if `n` is 0 or exceeds
/// [`MAX_MODULUS`].
pub fn lattice_cycles(a: &IntMat2, n: u64) -> CycleStats {
    assert!(n >= 1, "lattice denominator starts at 1");
    assert!(n <= MAX_MODULUS, "modulus {n} exceeds the machine-word bound");
    let e = a.reduce_mod(n);
    let size = (n as usize)
        .checked_mul(n as usize)
        .expect("lattice point count overflows usize");

    // 0 = fresh, 1 = on the path being walked, 2 = settled
    let mut state = vec![0u8; size];
    let mut cycles: BTreeMap<u64, u64> = BTreeMap::new();
    let mut periodic_points = 0u64;
    let mut path: Vec<usize> = Vec::new();

    let step = |p: usize| -> usize {
        let x = p as u64 / n;
        let y = p as u64 % n;
        let nx = (e[0] * x + e[1] * y) % n;
        let ny = (e[2] * x + e[3] * y) % n;
        (nx * n + ny) as usize
    };

    for start in 0..size {
        if state[start] != 0 {
            continue;
        }
        path.clear();
        let mut p = start;
        while state[p] == 0 {
            state[p] = 1;
            path.push(p);
            p = step(p);
        }
        if state[p] == 1 {
            // the walk bit its own tail: everything from the first visit
            // of p onward is a new cycle, the prefix is transient
            let entry = path.iter().position(|&q| q == p).unwrap();
            let len = (path.len() - entry) as u64;
            *cycles.entry(len).or_insert(0) += 1;
            periodic_points += len;
        }
        for &q in &path {
            state[q] = 2;
        }
    }

    CycleStats { n, cycles, periodic_points }
}

/// Every distinct cycle length on `L_2 ..= L_n_max`, plus 1 for the origin.
///
/// Scans every denominator, not just primes: composite lattices carry
/// periods their prime factors miss.
pub fn observed_periods(a: &IntMat2, n_max: u64) -> BTreeSet<u64> {
    let mut seen = BTreeSet::from([1]);
    for n in 2..=n_max {
        seen.extend(lattice_cycles(a, n).cycles.keys().copied());
    }
    seen
}

/// Like [`observed_periods`], but stops scanning as soon as every period
/// in `target` has been seen. The result is still sound (every element is
/// a genuine period) but only complete up to the lattice that satisfied
/// the target.
pub fn observed_periods_until(
    a: &IntMat2,
    n_max: u64,
    target: &BTreeSet<u64>,
) -> BTreeSet<u64> {
    let mut seen = BTreeSet::from([1]);
    for n in 2..=n_max {
        if target.is_subset(&seen) {
            break;
        }
        seen.extend(lattice_cycles(a, n).cycles.keys().copied());
    }
    seen
}

/// Counts the fixed points of `A^power` by enumeration.
///
/// Every fixed point of the iterate has denominator dividing
/// `m = N(A, power)`, so enumerating `L_m` sees all of them. The count is
/// produced by the enumeration alone; callers compare it against the
/// determinant formula. Errs when `m = 0` (infinite fixed set), panics if
/// `m` exceeds [`MAX_MODULUS`].
pub fn fixed_point_count(a: &IntMat2, power: u64) -> Result<u64, LatticeError> {
    let m = nielsen_number(a, power);
    if m.is_zero() {
        return Err(LatticeError::InfiniteFixedSet);
    }
    let m = m
        .to_u64()
        .filter(|&m| m <= MAX_MODULUS)
        .expect("fixed-point lattice exceeds the machine-word bound");
    let b = a.pow(power).reduce_mod(m);
    let mut found = 0u64;
    for x in 0..m {
        // march the two residues along y instead of multiplying each time
        let mut u = b[0] * x % m;
        let mut v = b[2] * x % m;
        for y in 0..m {
            if u == x && v == y {
                found += 1;
            }
            u += b[1];
            if u >= m {
                u -= m;
            }
            v += b[3];
            if v >= m {
                v -= m;
            }
        }
        debug_assert_eq!(u, b[0] * x % m);
        debug_assert_eq!(v, b[2] * x % m);
    }
    Ok(found)
}

/// Multiplicative order of `a` mod `n`. `n = 1` is the trivial group.
pub fn ord_mod(a: i64, n: u64) -> Result<u64, LatticeError> {
    assert!(n >= 1, "modulus starts at 1");
    assert!(n <= MAX_MODULUS, "modulus {n} exceeds the machine-word bound");
    if n == 1 {
        return Ok(1);
    }
    let r = a.rem_euclid(n as i64) as u64;
    if gcd(r, n) != 1 {
        return Err(LatticeError::NotCoprime { a, n });
    }
    let mut x = r;
    let mut k = 1;
    while x != 1 {
        x = x * r % n;
        k += 1;
    }
    Ok(k)
}

/// All multiplicative orders `a` attains mod `2 ..= n_max`, skipping the
/// moduli where `a` is not a unit. For `a = 0` this is empty.
pub fn observed_orders(a: i64, n_max: u64) -> BTreeSet<u64> {
    (2..=n_max).filter_map(|n| ord_mod(a, n).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> IntMat2 {
        IntMat2::new(a, b, c, d)
    }

    fn stats(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn small_lattice_censuses() {
        let order3 = lattice_cycles(&m(0, -1, 1, -1), 2);
        assert_eq!(order3.cycles, stats(&[(1, 1), (3, 1)]));
        assert_eq!(order3.periodic_points, 4);

        let doubling = lattice_cycles(&m(2, 0, 0, 2), 3);
        assert_eq!(doubling.cycles, stats(&[(1, 1), (2, 4)]));
        assert_eq!(doubling.periodic_points, 9);

        // doubling collapses the half-integer grid onto the origin
        let collapsed = lattice_cycles(&m(2, 0, 0, 2), 2);
        assert_eq!(collapsed.cycles, stats(&[(1, 1)]));
        assert_eq!(collapsed.periodic_points, 1);

        let cat5 = lattice_cycles(&m(2, 1, 1, 1), 5);
        assert_eq!(cat5.cycles, stats(&[(1, 1), (2, 2), (10, 2)]));
        assert_eq!(cat5.periodic_points, 25);

        let trivial = lattice_cycles(&m(7, -3, 4, 9), 1);
        assert_eq!(trivial.cycles, stats(&[(1, 1)]));
    }

    #[test]
    fn unit_determinant_permutes_every_lattice() {
        let cat = m(2, 1, 1, 1);
        for n in 1..=20 {
            assert_eq!(lattice_cycles(&cat, n).periodic_points, n * n);
        }
    }

    #[test]
    fn observed_periods_of_known_maps() {
        // a shear's periods on L_n divide n
        let shear = m(1, 1, 0, 1);
        assert_eq!(
            observed_periods(&shear, 6),
            BTreeSet::from([1, 2, 3, 4, 5, 6])
        );
        // the flip has period 2 and nothing else
        assert_eq!(
            observed_periods(&m(-1, 0, 0, -1), 12),
            BTreeSet::from([1, 2])
        );
        // hyperbolic: every period shows up once the lattice is large enough
        let low = observed_periods(&m(2, 1, 1, 1), 30);
        for k in 1..=8 {
            assert!(low.contains(&k), "cat map missing period {k}");
        }
    }

    #[test]
    fn capped_scan_stops_at_the_target() {
        let shear = m(1, 1, 0, 1);
        let capped = observed_periods_until(&shear, 100, &BTreeSet::from([1, 3]));
        // L_2 and L_3 suffice; L_4 and beyond were never visited
        assert_eq!(capped, BTreeSet::from([1, 2, 3]));
        assert_eq!(capped, observed_periods(&shear, 3));
    }

    #[test]
    fn fixed_point_counts() {
        assert_eq!(fixed_point_count(&m(2, 1, 1, 1), 1), Ok(1));
        assert_eq!(fixed_point_count(&m(2, 1, 1, 1), 2), Ok(5));
        assert_eq!(fixed_point_count(&m(2, 0, 0, 3), 1), Ok(2));
        assert_eq!(fixed_point_count(&m(3, 0, 0, 3), 1), Ok(4));
        assert_eq!(
            fixed_point_count(&m(1, 1, 0, 1), 3),
            Err(LatticeError::InfiniteFixedSet)
        );
        assert_eq!(
            fixed_point_count(&m(1, 0, 0, 2), 5),
            Err(LatticeError::InfiniteFixedSet)
        );
    }

    #[test]
    fn enumeration_matches_determinant_formula() {
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                for c in -2..=2i64 {
                    for d in -2..=2i64 {
                        let mat = m(a, b, c, d);
                        for power in 1..=3 {
                            match fixed_point_count(&mat, power) {
                                Ok(count) => assert_eq!(
                                    count.to_string(),
                                    nielsen_number(&mat, power).to_string(),
                                    "{mat} power {power}"
                                ),
                                Err(LatticeError::InfiniteFixedSet) => {}
                                Err(e) => panic!("unexpected error {e} for {mat}"),
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_orders() {
        assert_eq!(ord_mod(2, 7), Ok(3));
        assert_eq!(ord_mod(10, 17), Ok(16));
        assert_eq!(ord_mod(-1, 5), Ok(2));
        assert_eq!(ord_mod(-2, 3), Ok(1));
        assert_eq!(ord_mod(5, 1), Ok(1));
        assert_eq!(ord_mod(2, 4), Err(LatticeError::NotCoprime { a: 2, n: 4 }));
        assert_eq!(ord_mod(0, 9), Err(LatticeError::NotCoprime { a: 0, n: 9 }));
    }

    #[test]
    fn order_sets_match_their_symbolic_form() {
        assert_eq!(observed_orders(1, 10), BTreeSet::from([1]));
        assert_eq!(observed_orders(-1, 50), BTreeSet::from([1, 2]));
        assert_eq!(observed_orders(2, 10), BTreeSet::from([2, 3, 4, 6]));
        assert_eq!(observed_orders(0, 100), BTreeSet::new());

        // small window, sizable scan: the symbolic set and the oracle agree
        use crate::periods::order_set;
        use num_bigint::BigInt;
        for a in -4..=4i64 {
            if a == 0 {
                continue;
            }
            let symbolic = order_set(&BigInt::from(a)).truncate(7);
            let observed: BTreeSet<u64> = observed_orders(a, 1100)
                .into_iter()
                .filter(|&k| k <= 7)
                .collect();
            assert_eq!(symbolic, observed, "degree {a}");
        }
    }

    proptest! {
        #[test]
        fn census_bookkeeping_holds(
            a in -5i64..=5, b in -5i64..=5, c in -5i64..=5, d in -5i64..=5,
            n in 1u64..=24,
        ) {
            let stats = lattice_cycles(&m(a, b, c, d), n);
            let total: u64 = stats.cycles.iter().map(|(len, count)| len * count).sum();
            prop_assert_eq!(total, stats.periodic_points);
            prop_assert!(stats.periodic_points >= 1);
            prop_assert!(stats.periodic_points <= n * n);
            if gcd(IntMat2::new(a, b, c, d).det().to_i64().unwrap().unsigned_abs(), n) == 1 {
                prop_assert_eq!(stats.periodic_points, n * n);
            }
        }

        #[test]
        fn period_scans_grow_monotonically(
            a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, d in -3i64..=3,
        ) {
            let small = observed_periods(&m(a, b, c, d), 8);
            let large = observed_periods(&m(a, b, c, d), 12);
            prop_assert!(small.is_subset(&large));
        }
    }
}
