//! Arbitrary-precision rationals for the classical Bernoulli suite.
//!
//! Thin wrapper over `num_rational::BigRational` (always reduced, positive
//! denominator) plus the p-adic valuation helpers the congruence checks need.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BigRat(BigRational);

impl BigRat {
    pub fn new(num: i64, den: i64) -> BigRat {
        assert!(den != 0, "zero denominator");
        BigRat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> BigRat {
        BigRat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> BigRat {
        BigRat(BigRational::from_integer(n))
    }

    pub fn from_ratio(num: BigInt, den: BigInt) -> BigRat {
        assert!(!den.is_zero(), "zero denominator");
        BigRat(BigRational::new(num, den))
    }

    pub fn zero() -> BigRat {
        BigRat(BigRational::zero())
    }

    pub fn one() -> BigRat {
        BigRat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Numerator (sign carried here).
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Denominator, always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> BigRat {
        assert!(!self.is_zero(), "reciprocal of zero");
        BigRat(self.0.recip())
    }

    pub fn pow(&self, e: i32) -> BigRat {
        BigRat(self.0.pow(e))
    }

    /// p-adic valuation; `None` for zero.
    pub fn v_p(&self, p: u32) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(int_v_p(self.numer(), p) - int_v_p(self.denom(), p))
    }

    pub fn is_p_integral(&self, p: u32) -> bool {
        self.is_zero() || self.v_p(p).unwrap() >= 0
    }
}

/// v_p of a nonzero integer.
pub fn int_v_p(n: &BigInt, p: u32) -> i64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        m = q;
    }
}

/// `a ≡ b (mod p^k)` for p-integral rationals.
pub fn congruent_mod_p_pow(a: &BigRat, b: &BigRat, p: u32, k: u32) -> bool {
    assert!(a.is_p_integral(p) && b.is_p_integral(p), "operands must be p-integral");
    let d = a - b;
    d.is_zero() || d.v_p(p).unwrap() >= k as i64
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    BigInt::from(acc)
}

/// Exact binomial coefficient.
pub fn big_binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    BigInt::from(acc)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for &BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &BigRat) -> BigRat {
                BigRat((&self.0).$method(&rhs.0))
            }
        }
        impl std::ops::$trait for BigRat {
            type Output = BigRat;
            fn $method(self, rhs: BigRat) -> BigRat {
                BigRat(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::ops::Div for &BigRat {
    type Output = BigRat;
    fn div(self, rhs: &BigRat) -> BigRat {
        assert!(!rhs.is_zero(), "division by zero");
        BigRat(&self.0 / &rhs.0)
    }
}

impl std::ops::Div<&BigRat> for BigRat {
    type Output = BigRat;
    fn div(self, rhs: &BigRat) -> BigRat {
        &self / rhs
    }
}

impl std::ops::Neg for &BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-&self.0)
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
