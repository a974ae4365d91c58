//! Fixed-point counts of iterates: `N(A, n) = |det(id − A^n)|`.
//!
//! When nonzero, this counts the fixed points of the n-th iterate of the
//! torus map exactly. The fast path expands the determinant through the
//! trace sequence `s_n = tr(A^n)`, which obeys
//! `s_n = t·s_{n-1} − d·s_{n-2}` with `s_0 = 2`, `s_1 = t`,
//! giving `N(A, n) = |1 + d^n − s_n|` without ever forming `A^n`.
//! The direct path forms `A^n` and takes the determinant; the two are kept
//! separate so each can check the other.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::algebra::IntMat2;

/// `tr(A^k)` for `k = 0..=limit`, by the recurrence.
fn trace_sequence(a: &IntMat2, limit: u64) -> Vec<BigInt> {
    let t = a.trace();
    let d = a.det();
    let mut s = Vec::with_capacity(limit as usize + 1);
    s.push(BigInt::from(2));
    if limit >= 1 {
        s.push(t.clone());
    }
    for k in 2..=limit {
        let k = k as usize;
        let next = &t * &s[k - 1] - &d * &s[k - 2];
        s.push(next);
    }
    s
}

/// `|det(id − A^n)|` via the trace recurrence. `n ≥ 1`.
pub fn nielsen_number(a: &IntMat2, n: u64) -> BigUint {
    assert!(n >= 1, "iterate count starts at 1");
    let s = trace_sequence(a, n);
    let value = BigInt::one() + a.det().pow(n as u32) - &s[n as usize];
    value.magnitude().clone()
}

/// `|det(id − A^n)|` by forming `A^n` and expanding the determinant.
/// Slower; exists to cross-check [`nielsen_number`].
pub fn nielsen_number_direct(a: &IntMat2, n: u64) -> BigUint {
    assert!(n >= 1, "iterate count starts at 1");
    let p = a.pow(n);
    let one = BigInt::one();
    let det = (&one - &p.a) * (&one - &p.d) - &p.b * &p.c;
    det.magnitude().clone()
}

/// `[N(A, 1), ..., N(A, limit)]`. The limit is the caller's choice; values
/// grow exponentially and stay exact.
pub fn nielsen_sequence(a: &IntMat2, limit: u64) -> Vec<BigUint> {
    let s = trace_sequence(a, limit);
    let d = a.det();
    let mut out = Vec::with_capacity(limit as usize);
    let mut dpow = BigInt::one();
    for n in 1..=limit {
        dpow *= &d;
        let value = BigInt::one() + &dpow - &s[n as usize];
        let value = value.magnitude().clone();
        debug_assert!(
            n > 6 || value == nielsen_number_direct(a, n),
            "trace recurrence disagrees with direct determinant at n = {n}"
        );
        out.push(value);
    }
    out
}
