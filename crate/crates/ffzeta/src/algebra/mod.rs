//! Exact arithmetic foundations: `F_q`, dense polynomials, bit-packed
//! `F_2[x]`, rational functions, big rationals and Hasse derivatives.

pub mod bigrat;
pub mod bits2;
pub mod fq;
pub mod hasse;
pub mod poly;
pub mod ratfun;

pub use bigrat::BigRat;
pub use bits2::Bits2;
pub use fq::{FqElem, FqField};
pub use hasse::{binom_mod_p, hasse_multiplicity, HasseRing};
pub use poly::{monic_irreducibles, monics_of_degree, parse_poly, Poly};
pub use ratfun::RatFun;

impl HasseRing for FqElem {
    fn char_p(&self) -> u32 {
        self.field().p()
    }
    fn is_zero(&self) -> bool {
        FqElem::is_zero(self)
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, k: u64) -> Self {
        self * &self.field().scalar(k as i64)
    }
}

impl HasseRing for Poly {
    fn char_p(&self) -> u32 {
        self.field().p()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn one_like(&self) -> Self {
        Poly::one(self.field())
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale(&self, k: u64) -> Self {
        self.mul_scalar(&self.field().scalar(k as i64))
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly(q: u32, max_deg: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec(0u32..q, 0..=max_deg + 1).prop_map(move |cs| {
            let f = FqField::new(q).unwrap();
            let raw: Vec<u16> = cs.iter().map(|&c| c as u16).collect();
            Poly::from_raw(f, raw)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn distributivity_q9(f in arb_poly(9, 12), g in arb_poly(9, 12), h in arb_poly(9, 12)) {
            prop_assert_eq!(f.add(&g).mul(&h), f.mul(&h).add(&g.mul(&h)));
        }

        #[test]
        fn divrem_reconstructs_q4(f in arb_poly(4, 12), g in arb_poly(4, 6)) {
            prop_assume!(!g.is_zero());
            let (q, r) = f.divrem(&g).unwrap();
            prop_assert_eq!(q.mul(&g).add(&r), f);
            if !r.is_zero() {
                prop_assert!(r.deg().unwrap() < g.deg().unwrap_or(0) || g.deg() == Some(0));
            }
        }

        #[test]
        fn deg_multiplicative_q5(f in arb_poly(5, 10), g in arb_poly(5, 10)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!(f.mul(&g).deg().unwrap(), f.deg().unwrap() + g.deg().unwrap());
        }

        #[test]
        fn gcd_divides_both_q3(f in arb_poly(3, 9), g in arb_poly(3, 9)) {
            prop_assume!(!f.is_zero() || !g.is_zero());
            let d = f.gcd(&g);
            prop_assert!(d.divides(&f) && d.divides(&g));
            prop_assert!(d.is_monic());
        }
    }
}
