//! Exact 2x2 integer matrices and the invariants that drive classification.
//!
//! Everything here is computed in arbitrary precision: powers of hyperbolic
//! matrices grow exponentially and must never wrap.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A 2x2 integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMat2 {
    pub a: BigInt, // [0][0]
    pub b: BigInt, // [0][1]
    pub c: BigInt, // [1][0]
    pub d: BigInt, // [1][1]
}

/// Trace, determinant, discriminant and matrix gcd of a matrix.
///
/// The matrix gcd is `gcd(b, c, d - a)`, normalized nonnegative with
/// `gcd(0,0,0) = 0`; it vanishes exactly on scalar matrices and its square
/// always divides the discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub trace: BigInt,
    pub det: BigInt,
    pub discriminant: BigInt,
    pub mgcd: BigInt,
}

/// Eigenvalue structure, split exactly by the discriminant.
///
/// Rational eigenvalues of an integer matrix are integers, so the only three
/// possibilities are a conjugate complex pair, a pair of integers, or a pair
/// of conjugate real quadratic irrationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenStructure {
    /// Discriminant negative; eigenvalues are not real.
    ComplexPair { trace: BigInt, det: BigInt },
    /// Discriminant a perfect square; both eigenvalues are integers.
    IntegerPair { small: BigInt, large: BigInt },
    /// Discriminant positive and not a square; eigenvalues are irrational.
    RealQuadratic {
        trace: BigInt,
        det: BigInt,
        discriminant: BigInt,
    },
}

impl EigenStructure {
    /// True when `v` is an (integer) eigenvalue.
    pub fn has_integer_eigenvalue(&self, v: i64) -> bool {
        match self {
            EigenStructure::IntegerPair { small, large } => {
                let v = BigInt::from(v);
                *small == v || *large == v
            }
            _ => false,
        }
    }

    pub fn is_real(&self) -> bool {
        !matches!(self, EigenStructure::ComplexPair { .. })
    }
}

/// Minimal polynomial of a 2x2 integer matrix: either `x - a` for a scalar
/// matrix `a*id`, or the full characteristic polynomial `x^2 - t x + d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinimalPoly {
    Linear(BigInt),
    Quadratic { trace: BigInt, det: BigInt },
}

impl fmt::Display for MinimalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn tail(f: &mut fmt::Formatter<'_>, coeff: &BigInt) -> fmt::Result {
            if coeff.is_positive() {
                write!(f, " + {coeff}")
            } else {
                write!(f, " - {}", -coeff)
            }
        }
        match self {
            MinimalPoly::Linear(a) => {
                write!(f, "x")?;
                if !a.is_zero() {
                    tail(f, &-a)?;
                }
                Ok(())
            }
            MinimalPoly::Quadratic { trace, det } => {
                write!(f, "x^2")?;
                if !trace.is_zero() {
                    if *trace == BigInt::one() {
                        write!(f, " - x")?;
                    } else if *trace == BigInt::from(-1) {
                        write!(f, " + x")?;
                    } else if trace.is_positive() {
                        write!(f, " - {trace}x")?;
                    } else {
                        write!(f, " + {}x", -trace)?;
                    }
                }
                if !det.is_zero() {
                    tail(f, det)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixParseError {
    #[error("expected 4 whitespace-separated integers, found {0}")]
    WrongCount(usize),
    #[error("bad matrix entry {0:?}")]
    BadEntry(String),
}

impl IntMat2 {
    #[must_use]
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    #[must_use]
    pub fn from_bigints(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Self { a, b, c, d }
    }

    #[must_use]
    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    /// True for `a*id`, including the zero matrix.
    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    #[must_use]
    pub fn mul(&self, rhs: &IntMat2) -> IntMat2 {
        IntMat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    /// Exact `n`-th power by binary exponentiation; `pow(0)` is the identity.
    #[must_use]
    pub fn pow(&self, n: u64) -> IntMat2 {
        let mut result = IntMat2::identity();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn invariants(&self) -> Invariants {
        let trace = self.trace();
        let det = self.det();
        let discriminant = &trace * &trace - BigInt::from(4) * &det;
        let mgcd = self.b.gcd(&self.c).gcd(&(&self.d - &self.a));
        Invariants {
            trace,
            det,
            discriminant,
            mgcd,
        }
    }

    /// Splits the eigenvalue structure exactly. The perfect-square test uses
    /// an integer square root, never floating point.
    pub fn eigen(&self) -> EigenStructure {
        let Invariants {
            trace,
            det,
            discriminant,
            ..
        } = self.invariants();
        if discriminant.is_negative() {
            return EigenStructure::ComplexPair { trace, det };
        }
        let root = discriminant.sqrt();
        if &root * &root == discriminant {
            // root and trace share parity, so the halves below are exact
            let small = (&trace - &root) / 2;
            let large = (&trace + &root) / 2;
            EigenStructure::IntegerPair { small, large }
        } else {
            EigenStructure::RealQuadratic {
                trace,
                det,
                discriminant,
            }
        }
    }

    pub fn minimal_poly(&self) -> MinimalPoly {
        if self.is_scalar() {
            MinimalPoly::Linear(self.a.clone())
        } else {
            MinimalPoly::Quadratic {
                trace: self.trace(),
                det: self.det(),
            }
        }
    }

    /// The order of `A` in GL(2, Z) when finite. Only 1, 2, 3, 4 and 6 occur;
    /// order 2 also arises for non-scalar matrices squaring to the identity.
    pub fn finite_order(&self) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=6u32 {
            if p.is_identity() {
                return Some(k);
            }
            if k == 6 {
                break;
            }
            p = p.mul(self);
        }
        None
    }

    /// The induced torus map is invertible exactly when `det = +-1`.
    pub fn is_automorphism(&self) -> bool {
        self.det().abs().is_one()
    }

    /// Entries reduced into `[0, n)`, row major. Panics when `n = 0`.
    pub fn reduce_mod(&self, n: u64) -> [u64; 4] {
        assert!(n > 0, "modulus must be positive");
        let n = BigInt::from(n);
        let r = |v: &BigInt| -> u64 {
            use num_traits::ToPrimitive;
            v.mod_floor(&n).to_u64().expect("residue fits u64")
        };
        [r(&self.a), r(&self.b), r(&self.c), r(&self.d)]
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for IntMat2 {
    type Err = MatrixParseError;

    /// Parses `"a b c d"`: four whitespace-separated integers, row major.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens.len() != 4 {
            return Err(MatrixParseError::WrongCount(tokens.len()));
        }
        let mut entries = Vec::with_capacity(4);
        for t in &tokens {
            let v: BigInt = t
                .parse()
                .map_err(|_| MatrixParseError::BadEntry((*t).to_string()))?;
            entries.push(v);
        }
        let d = entries.pop().unwrap();
        let c = entries.pop().unwrap();
        let b = entries.pop().unwrap();
        let a = entries.pop().unwrap();
        Ok(IntMat2 { a, b, c, d })
    }
}
