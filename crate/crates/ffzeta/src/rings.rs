//! The supported base rings `A` and their positive-element enumerators.
//!
//! Two rings are built in: `F_q[T]` (positive = monic), and the coordinate
//! ring of the elliptic curve `y² + y = x³ + x + 1` over `F_2`, written
//! `elliptic2`. The curve has a single rational point at infinity, trivial
//! class group and unit group `F_2^*`, so every nonzero ideal has a unique
//! positive generator and zeta sums can be taken over elements. Pole orders
//! at infinity form the numerical semigroup {0, 2, 3, 4, ...}: degree 1 is a
//! gap, and there are `2^{e-1}` positive elements of each degree `e >= 2`.
//!
//! New rings plug in by extending [`RingDesc`] and [`RingElem`]; the zeta
//! layer only consumes degrees, positivity, enumeration and arithmetic.

use std::fmt;

use crate::algebra::{Bits2, FqField, HasseRing, Poly};
use crate::{Error, Result};

/// `u(x) + v(x)·y` in `F_2[x,y]/(y² + y + x³ + x + 1)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct EllElem {
    pub u: Bits2,
    pub v: Bits2,
}

/// The reduction polynomial `x³ + x + 1`.
fn curve_r() -> Bits2 {
    Bits2::from_bits(&[1, 1, 0, 1])
}

impl EllElem {
    pub fn zero() -> EllElem {
        EllElem { u: Bits2::zero(), v: Bits2::zero() }
    }

    pub fn one() -> EllElem {
        EllElem { u: Bits2::one(), v: Bits2::zero() }
    }

    pub fn y() -> EllElem {
        EllElem { u: Bits2::zero(), v: Bits2::one() }
    }

    pub fn x_power(a: usize) -> EllElem {
        EllElem { u: Bits2::monomial(a), v: Bits2::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn add(&self, rhs: &EllElem) -> EllElem {
        EllElem { u: self.u.add(&rhs.u), v: self.v.add(&rhs.v) }
    }

    /// Multiplication with `y² -> y + x³ + x + 1`.
    pub fn mul(&self, rhs: &EllElem) -> EllElem {
        let uu = self.u.mul(&rhs.u);
        let vv = self.v.mul(&rhs.v);
        let uv = self.u.mul(&rhs.v).add(&self.v.mul(&rhs.u));
        EllElem { u: uu.add(&vv.mul(&curve_r())), v: uv.add(&vv) }
    }

    /// Squaring stays cheap: `(u + vy)² = (u² + v²(x³+x+1)) + v²y`.
    pub fn square(&self) -> EllElem {
        let u2 = self.u.square();
        let v2 = self.v.square();
        EllElem { u: u2.add(&v2.mul(&curve_r())), v: v2 }
    }

    pub fn pow(&self, mut e: u64) -> EllElem {
        let mut result = EllElem::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    /// Pole order at infinity: `max(2 deg u, 3 + 2 deg v)`; the two arms have
    /// opposite parities, so they never tie.
    pub fn deg(&self) -> Option<i64> {
        let du = self.u.deg().map(|d| 2 * d as i64);
        let dv = self.v.deg().map(|d| 3 + 2 * d as i64);
        match (du, dv) {
            (None, None) => None,
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (Some(a), Some(b)) => {
                debug_assert_ne!(a, b);
                Some(a.max(b))
            }
        }
    }
}

impl fmt::Display for EllElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        match (self.u.is_zero(), self.v.is_zero()) {
            (false, true) => write!(f, "{:?}", self.u),
            (true, false) => {
                if self.v == Bits2::one() {
                    write!(f, "y")
                } else {
                    write!(f, "({:?})y", self.v)
                }
            }
            _ => {
                if self.v == Bits2::one() {
                    write!(f, "{:?}+y", self.u)
                } else {
                    write!(f, "{:?}+({:?})y", self.u, self.v)
                }
            }
        }
    }
}

impl fmt::Debug for EllElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A supported base ring.
#[derive(Clone, PartialEq)]
pub enum RingDesc {
    PolyRing(FqField),
    Elliptic2,
}

/// An element of a [`RingDesc`].
#[derive(Clone, PartialEq)]
pub enum RingElem {
    Poly(Poly),
    Ell(EllElem),
}

impl RingDesc {
    pub fn poly(field: &FqField) -> RingDesc {
        RingDesc::PolyRing(field.clone())
    }

    /// Parse a CLI ring selector.
    pub fn parse(name: &str, q: Option<u32>) -> Result<RingDesc> {
        match name {
            "fqT" | "polyring" => {
                let q = q.ok_or_else(|| Error::Precondition("--q required for fqT".into()))?;
                Ok(RingDesc::PolyRing(FqField::new(q)?))
            }
            "elliptic2" => Ok(RingDesc::Elliptic2),
            other => Err(Error::Parse(format!("unknown ring {other:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RingDesc::PolyRing(_) => "fqT",
            RingDesc::Elliptic2 => "elliptic2",
        }
    }

    pub fn q(&self) -> u32 {
        match self {
            RingDesc::PolyRing(f) => f.q(),
            RingDesc::Elliptic2 => 2,
        }
    }

    pub fn char_p(&self) -> u32 {
        match self {
            RingDesc::PolyRing(f) => f.p(),
            RingDesc::Elliptic2 => 2,
        }
    }

    pub fn field(&self) -> Option<&FqField> {
        match self {
            RingDesc::PolyRing(f) => Some(f),
            RingDesc::Elliptic2 => None,
        }
    }

    pub fn zero(&self) -> RingElem {
        match self {
            RingDesc::PolyRing(f) => RingElem::Poly(Poly::zero(f)),
            RingDesc::Elliptic2 => RingElem::Ell(EllElem::zero()),
        }
    }

    pub fn one(&self) -> RingElem {
        match self {
            RingDesc::PolyRing(f) => RingElem::Poly(Poly::one(f)),
            RingDesc::Elliptic2 => RingElem::Ell(EllElem::one()),
        }
    }

    /// Number of positive elements of degree exactly `e`.
    pub fn monic_count(&self, e: u64) -> u64 {
        match self {
            RingDesc::PolyRing(f) => (f.q() as u64).pow(e as u32),
            RingDesc::Elliptic2 => match e {
                0 => 1,
                1 => 0,
                _ => 1u64 << (e - 1),
            },
        }
    }

    /// All positive elements of degree exactly `e`, each exactly once.
    /// Degree gaps yield empty iterators.
    pub fn monics(&self, e: u64) -> Box<dyn Iterator<Item = RingElem> + '_> {
        match self {
            RingDesc::PolyRing(f) => Box::new(
                crate::algebra::monics_of_degree(f, e as usize).map(RingElem::Poly),
            ),
            RingDesc::Elliptic2 => {
                if e == 0 {
                    return Box::new(std::iter::once(RingElem::Ell(EllElem::one())));
                }
                if e == 1 {
                    return Box::new(std::iter::empty());
                }
                // leading monomial of pole order e plus the span of the
                // monomials of pole order < e
                let lead = if e % 2 == 0 {
                    EllElem::x_power((e / 2) as usize)
                } else {
                    let mut m = EllElem::y();
                    m.v = Bits2::monomial(((e - 3) / 2) as usize);
                    m
                };
                let mut basis: Vec<EllElem> = Vec::new();
                let mut a = 0;
                while 2 * a < e {
                    basis.push(EllElem::x_power(a as usize));
                    a += 1;
                }
                let mut b = 0;
                while 3 + 2 * b < e {
                    let mut m = EllElem::y();
                    m.v = Bits2::monomial(b as usize);
                    basis.push(m);
                    b += 1;
                }
                debug_assert_eq!(basis.len() as u64, e - 1);
                let count = 1u64 << basis.len();
                Box::new((0..count).map(move |mask| {
                    let mut acc = lead.clone();
                    for (bit, m) in basis.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            acc = acc.add(m);
                        }
                    }
                    RingElem::Ell(acc)
                }))
            }
        }
    }
}

impl fmt::Debug for RingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDesc::PolyRing(fld) => write!(f, "F_{}[T]", fld.q()),
            RingDesc::Elliptic2 => write!(f, "elliptic2"),
        }
    }
}

impl RingElem {
    pub fn is_zero(&self) -> bool {
        match self {
            RingElem::Poly(p) => p.is_zero(),
            RingElem::Ell(e) => e.is_zero(),
        }
    }

    pub fn add(&self, rhs: &RingElem) -> RingElem {
        match (self, rhs) {
            (RingElem::Poly(a), RingElem::Poly(b)) => RingElem::Poly(a.add(b)),
            (RingElem::Ell(a), RingElem::Ell(b)) => RingElem::Ell(a.add(b)),
            _ => panic!("elements of different rings"),
        }
    }

    pub fn mul(&self, rhs: &RingElem) -> RingElem {
        match (self, rhs) {
            (RingElem::Poly(a), RingElem::Poly(b)) => RingElem::Poly(a.mul(b)),
            (RingElem::Ell(a), RingElem::Ell(b)) => RingElem::Ell(a.mul(b)),
            _ => panic!("elements of different rings"),
        }
    }

    /// `a^j`, via the Frobenius digit decomposition for polynomials and
    /// square-and-multiply with the curve relation otherwise.
    pub fn pow(&self, j: u64) -> RingElem {
        match self {
            RingElem::Poly(p) => RingElem::Poly(p.pow_digits(j)),
            RingElem::Ell(e) => RingElem::Ell(e.pow(j)),
        }
    }

    /// Degree at the infinite place (`None` for 0).
    pub fn deg(&self) -> Option<i64> {
        match self {
            RingElem::Poly(p) => p.deg().map(|d| d as i64),
            RingElem::Ell(e) => e.deg(),
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            RingElem::Poly(p) => Some(p),
            RingElem::Ell(_) => None,
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Poly(p) => write!(f, "{p}"),
            RingElem::Ell(e) => write!(f, "{e}"),
        }
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl HasseRing for RingElem {
    fn char_p(&self) -> u32 {
        match self {
            RingElem::Poly(p) => p.field().p(),
            RingElem::Ell(_) => 2,
        }
    }
    fn is_zero(&self) -> bool {
        RingElem::is_zero(self)
    }
    fn one_like(&self) -> Self {
        match self {
            RingElem::Poly(p) => RingElem::Poly(Poly::one(p.field())),
            RingElem::Ell(_) => RingElem::Ell(EllElem::one()),
        }
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale(&self, k: u64) -> Self {
        match self {
            RingElem::Poly(p) => {
                RingElem::Poly(p.mul_scalar(&p.field().scalar(k as i64)))
            }
            RingElem::Ell(e) => {
                if k % 2 == 0 {
                    RingElem::Ell(EllElem::zero())
                } else {
                    RingElem::Ell(e.clone())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn defining_relation() {
        let y = EllElem::y();
        let y2 = y.mul(&y);
        // y² = y + x³ + x + 1
        assert_eq!(y2.v, Bits2::one());
        assert_eq!(y2.u, curve_r());
        assert_eq!(y.square(), y2);
    }

    #[test]
    fn degree_formula_on_curve() {
        let y = EllElem::y();
        let x = EllElem::x_power(1);
        assert_eq!(y.deg(), Some(3));
        assert_eq!(x.deg(), Some(2));
        let yx = y.add(&x);
        assert_eq!(yx.deg(), Some(3));
        assert_eq!(yx.pow(4).deg(), Some(12));
    }

    #[test]
    fn monic_counts() {
        let f2 = FqField::new(2).unwrap();
        let f3 = FqField::new(3).unwrap();
        for (ring, emax) in [
            (RingDesc::poly(&f2), 14u64),
            (RingDesc::poly(&f3), 8),
            (RingDesc::Elliptic2, 14),
        ] {
            for e in 0..=emax {
                let expect = ring.monic_count(e);
                assert_eq!(ring.monics(e).count() as u64, expect, "{ring:?} e={e}");
            }
        }
    }

    #[test]
    fn elliptic_degree_one_is_a_gap() {
        assert_eq!(RingDesc::Elliptic2.monics(1).count(), 0);
        assert_eq!(RingDesc::Elliptic2.monic_count(1), 0);
    }

    #[test]
    fn elliptic_degree_three_elements() {
        let got: Vec<String> = RingDesc::Elliptic2
            .monics(3)
            .map(|e| e.to_string())
            .collect();
        // the four degree-3 elements are y, y+1, y+x, y+x+1
        assert_eq!(got.len(), 4);
        assert!(got.contains(&"y".to_string()));
        assert!(got.contains(&"1+y".to_string()));
        assert!(got.contains(&"x+y".to_string()));
        assert!(got.contains(&"x+1+y".to_string()));
    }

    #[test]
    fn monics_have_the_right_degree_and_are_distinct() {
        for e in [0u64, 2, 3, 4, 5, 6, 7] {
            let all: Vec<RingElem> = RingDesc::Elliptic2.monics(e).collect();
            for m in &all {
                assert_eq!(m.deg(), Some(e as i64), "e={e} m={m}");
            }
            for i in 0..all.len() {
                for k in 0..i {
                    assert!(all[i] != all[k]);
                }
            }
        }
    }

    #[test]
    fn degree_additivity_random_pairs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let rand_ell = |rng: &mut rand_chacha::ChaCha8Rng| {
            let e = rng.gen_range(2u64..9);
            let idx = rng.gen_range(0..RingDesc::Elliptic2.monic_count(e));
            RingDesc::Elliptic2.monics(e).nth(idx as usize).unwrap()
        };
        for _ in 0..500 {
            let a = rand_ell(&mut rng);
            let b = rand_ell(&mut rng);
            assert_eq!(a.mul(&b).deg(), Some(a.deg().unwrap() + b.deg().unwrap()));
        }
        let f3 = FqField::new(3).unwrap();
        let ring = RingDesc::poly(&f3);
        for _ in 0..500 {
            let e1 = rng.gen_range(0u64..6);
            let e2 = rng.gen_range(0u64..6);
            let a = ring.monics(e1).nth(rng.gen_range(0..ring.monic_count(e1)) as usize).unwrap();
            let b = ring.monics(e2).nth(rng.gen_range(0..ring.monic_count(e2)) as usize).unwrap();
            assert_eq!(a.mul(&b).deg(), Some((e1 + e2) as i64));
        }
    }

    #[test]
    fn elliptic_ring_axioms_random_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let rand_elem = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut u_bits = vec![0u8; rng.gen_range(0..8)];
            let mut v_bits = vec![0u8; rng.gen_range(0..8)];
            for b in u_bits.iter_mut() {
                *b = rng.gen_range(0..2);
            }
            for b in v_bits.iter_mut() {
                *b = rng.gen_range(0..2);
            }
            EllElem { u: Bits2::from_bits(&u_bits), v: Bits2::from_bits(&v_bits) }
        };
        for _ in 0..300 {
            let a = rand_elem(&mut rng);
            let b = rand_elem(&mut rng);
            let c = rand_elem(&mut rng);
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        }
    }

    #[test]
    fn ring_parse() {
        assert!(RingDesc::parse("fqT", Some(9)).is_ok());
        assert!(RingDesc::parse("fqT", None).is_err());
        assert!(RingDesc::parse("elliptic2", None).is_ok());
        assert!(RingDesc::parse("nope", None).is_err());
    }
}
