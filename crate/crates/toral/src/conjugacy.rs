//! Conjugacy of integer matrices over the residue rings `Z/n`.
//!
//! Two integer matrices are conjugate mod every `n` exactly when they
//! share trace, determinant, and the gcd invariant from
//! [`Invariants::mgcd`](crate::algebra::Invariants). The triple is cheap
//! to compare; the exhaustive witness search below is the ground truth it
//! gets tested against.

use num_bigint::BigInt;
use num_integer::{gcd, Integer};
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::IntMat2;

/// The complete invariant for conjugacy over every `Z/n` at once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConjugacyTriple {
    pub trace: BigInt,
    pub det: BigInt,
    pub mgcd: BigInt,
}

pub fn triple(a: &IntMat2) -> ConjugacyTriple {
    let inv = a.invariants();
    ConjugacyTriple { trace: inv.trace, det: inv.det, mgcd: inv.mgcd }
}

/// Conjugate over `Z/n` for every `n` at once.
pub fn locally_conjugate(a: &IntMat2, b: &IntMat2) -> bool {
    triple(a) == triple(b)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalFormError {
    /// With a zero coupling entry the off-diagonal gcd degenerates, so the
    /// eigenvalues must coincide.
    #[error("a zero coupling entry needs equal eigenvalues")]
    ZeroCoupling,
    /// The coupling must divide the eigenvalue gap or it is not the gcd.
    #[error("coupling {g} does not divide the eigenvalue gap {gap}")]
    IndivisibleGap { g: BigInt, gap: BigInt },
}

/// The upper-triangular representative `[[small, g], [0, large]]` with
/// eigenvalues `small`, `large` and gcd invariant `|g|`.
pub fn normal_form(
    small: &BigInt,
    large: &BigInt,
    g: &BigInt,
) -> Result<IntMat2, NormalFormError> {
    let gap = large - small;
    if g.is_zero() {
        if !gap.is_zero() {
            return Err(NormalFormError::ZeroCoupling);
        }
    } else if !gap.is_multiple_of(g) {
        return Err(NormalFormError::IndivisibleGap { g: g.clone(), gap });
    }
    Ok(IntMat2::from_bigints(
        small.clone(),
        g.clone(),
        BigInt::zero(),
        large.clone(),
    ))
}

fn mat_mul_mod(x: &[u64; 4], y: &[u64; 4], n: u64) -> [u64; 4] {
    [
        (x[0] * y[0] + x[1] * y[2]) % n,
        (x[0] * y[1] + x[1] * y[3]) % n,
        (x[2] * y[0] + x[3] * y[2]) % n,
        (x[2] * y[1] + x[3] * y[3]) % n,
    ]
}

/// Searches all of `M_2(Z/n)` for an invertible `P` with `PA = BP`.
///
/// Quartic in `n`, so the modulus is capped at 128. The returned witness
/// is re-verified before it leaves the function.
pub fn conjugate_mod_n(a: &IntMat2, b: &IntMat2, n: u64) -> Option<[u64; 4]> {
    assert!(n >= 1, "modulus starts at 1");
    assert!(n <= 128, "exhaustive conjugator search is quartic in the modulus");
    let ra = a.reduce_mod(n);
    let rb = b.reduce_mod(n);
    for p0 in 0..n {
        for p1 in 0..n {
            for p2 in 0..n {
                for p3 in 0..n {
                    let det = (p0 * p3 % n + n - p1 * p2 % n) % n;
                    if gcd(det, n) != 1 {
                        continue;
                    }
                    let p = [p0, p1, p2, p3];
                    if mat_mul_mod(&p, &ra, n) == mat_mul_mod(&rb, &p, n) {
                        assert!(is_conjugator(&p, a, b, n));
                        return Some(p);
                    }
                }
            }
        }
    }
    None
}

/// Checks a claimed witness: invertible mod `n` and intertwines `A`, `B`.
pub fn is_conjugator(p: &[u64; 4], a: &IntMat2, b: &IntMat2, n: u64) -> bool {
    assert!(n >= 1, "modulus starts at 1");
    if p.iter().any(|&e| e >= n.max(1)) {
        return false;
    }
    let det = (p[0] * p[3] % n + n - p[1] * p[2] % n) % n;
    gcd(det, n) == 1
        && mat_mul_mod(p, &a.reduce_mod(n), n) == mat_mul_mod(&b.reduce_mod(n), p, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> IntMat2 {
        IntMat2::new(a, b, c, d)
    }

    #[test]
    fn triples_of_small_matrices() {
        let t = triple(&m(2, 1, 1, 1));
        assert_eq!(
            (t.trace, t.det, t.mgcd),
            (BigInt::from(3), BigInt::from(1), BigInt::from(1))
        );
        let t = triple(&m(1, 2, 4, 3));
        assert_eq!(
            (t.trace, t.det, t.mgcd),
            (BigInt::from(4), BigInt::from(-5), BigInt::from(2))
        );
    }

    #[test]
    fn shared_and_distinct_triples() {
        assert!(locally_conjugate(&m(-1, 3, 0, 2), &m(2, 3, 0, -1)));
        assert!(!locally_conjugate(&m(-1, 3, 0, 2), &m(-1, 1, 0, 2)));
        // same trace and determinant, different gcd invariant
        assert!(!locally_conjugate(&m(1, 1, 0, 1), &m(1, 2, 0, 1)));
    }

    #[test]
    fn normal_forms() {
        assert_eq!(
            normal_form(&BigInt::from(-1), &BigInt::from(2), &BigInt::from(3)),
            Ok(m(-1, 3, 0, 2))
        );
        assert_eq!(
            normal_form(&BigInt::from(3), &BigInt::from(3), &BigInt::zero()),
            Ok(m(3, 0, 0, 3))
        );
        assert_eq!(
            normal_form(&BigInt::from(1), &BigInt::from(2), &BigInt::zero()),
            Err(NormalFormError::ZeroCoupling)
        );
        assert_eq!(
            normal_form(&BigInt::from(1), &BigInt::from(4), &BigInt::from(2)),
            Err(NormalFormError::IndivisibleGap {
                g: BigInt::from(2),
                gap: BigInt::from(3),
            })
        );
        // the coupling really is the gcd invariant of the output
        for (s, l, g) in [(-1i64, 2i64, 3i64), (0, 6, 2), (2, 2, 5), (4, 4, 0)] {
            let nf = normal_form(&BigInt::from(s), &BigInt::from(l), &BigInt::from(g))
                .unwrap();
            assert_eq!(nf.invariants().mgcd, BigInt::from(g.abs()));
        }
    }

    #[test]
    fn witness_search_on_an_integrally_conjugate_pair() {
        // diag(1, -1) conjugates the right shear to the left shear over Z
        let a = m(1, 1, 0, 1);
        let b = m(1, -1, 0, 1);
        for n in 2..=8 {
            let p = conjugate_mod_n(&a, &b, n).expect("witness must exist");
            assert!(is_conjugator(&p, &a, &b, n));
        }
    }

    #[test]
    fn gcd_invariant_blocks_some_modulus() {
        // equal trace and determinant, gcd invariants 1 and 2
        let a = m(1, 1, 0, 1);
        let b = m(1, 2, 0, 1);
        assert_eq!(conjugate_mod_n(&a, &b, 2), None);
        assert!((2..=8).any(|n| conjugate_mod_n(&a, &b, n).is_none()));
        // yet coarser moduli can still confuse them
        assert!(conjugate_mod_n(&a, &b, 3).is_some());
    }

    #[test]
    fn trivial_modulus_is_never_an_obstruction() {
        assert!(conjugate_mod_n(&m(2, 1, 1, 1), &m(0, 5, -3, 7), 1).is_some());
    }

    fn unimodular_conjugate(a: &IntMat2, u: &IntMat2) -> IntMat2 {
        // inverse of a unimodular matrix via the adjugate
        let det = u.det();
        let inv = IntMat2::from_bigints(
            &u.d / &det,
            -&u.b / &det,
            -&u.c / &det,
            &u.a / &det,
        );
        u.mul(a).mul(&inv)
    }

    proptest! {
        #[test]
        fn integral_conjugation_preserves_the_triple(
            a in -4i64..=4, b in -4i64..=4, c in -4i64..=4, d in -4i64..=4,
            which in 0usize..4,
        ) {
            let mat = m(a, b, c, d);
            let basis = [m(1, 1, 0, 1), m(1, 0, 1, 1), m(0, 1, 1, 0), m(2, 1, 1, 1)];
            let conj = unimodular_conjugate(&mat, &basis[which]);
            prop_assert!(locally_conjugate(&mat, &conj));
            for n in 2u64..=6 {
                prop_assert!(conjugate_mod_n(&mat, &conj, n).is_some());
            }
        }
    }
}
