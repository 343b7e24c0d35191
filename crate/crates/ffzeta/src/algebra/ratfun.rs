//! Rational functions over `F_q`, kept in lowest terms with a monic
//! denominator. The canonical form makes the denominator ideal of a
//! Bernoulli-Carlitz number a direct read.

use std::fmt;

use super::fq::{FqElem, FqField};
use super::poly::Poly;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = RatFun { num, den };
        r.reduce();
        Ok(r)
    }

    pub fn from_poly(p: Poly) -> RatFun {
        let one = Poly::one(p.field());
        RatFun { num: p, den: one }
    }

    pub fn zero(field: &FqField) -> RatFun {
        RatFun { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: &FqField) -> RatFun {
        RatFun { num: Poly::one(field), den: Poly::one(field) }
    }

    pub fn constant(c: &FqElem) -> RatFun {
        RatFun::from_poly(Poly::constant(c))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one(self.num.field());
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.deg() != Some(0) {
            self.num = self.num.divrem(&g).expect("gcd nonzero").0;
            self.den = self.den.divrem(&g).expect("gcd nonzero").0;
        }
        let lead = self.den.leading().expect("den nonzero");
        if !lead.is_one() {
            let inv = lead.inv().expect("leading nonzero");
            self.num = self.num.mul_scalar(&inv);
            self.den = self.den.mul_scalar(&inv);
        }
    }

    pub fn field(&self) -> &FqField {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    /// Monic denominator in lowest terms.
    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, rhs: &RatFun) -> RatFun {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        RatFun::new(num, den).expect("den nonzero")
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, rhs: &RatFun) -> RatFun {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RatFun) -> RatFun {
        let num = self.num.mul(&rhs.num);
        let den = self.den.mul(&rhs.den);
        RatFun::new(num, den).expect("den nonzero")
    }

    pub fn mul_poly(&self, rhs: &Poly) -> RatFun {
        RatFun::new(self.num.mul(rhs), self.den.clone()).expect("den nonzero")
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFun) -> Result<RatFun> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<RatFun> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = RatFun::one(self.field());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(result)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let f3 = FqField::new(3).unwrap();
        // (2T^2 - 2) / (2T - 2) reduces to T + 1 with monic denominator
        let num = Poly::from_ints(&f3, &[-2, 0, 2]);
        let den = Poly::from_ints(&f3, &[-2, 2]);
        let r = RatFun::new(num, den).unwrap();
        assert!(r.is_poly());
        assert_eq!(r.num(), &Poly::from_ints(&f3, &[1, 1]));
    }

    #[test]
    fn arithmetic() {
        let f2 = FqField::new(2).unwrap();
        let t = RatFun::from_poly(Poly::t(&f2));
        let inv_t = t.inv().unwrap();
        assert_eq!(t.mul(&inv_t), RatFun::one(&f2));
        assert_eq!(t.add(&t), RatFun::zero(&f2));
        assert!(RatFun::zero(&f2).inv().is_err());
        assert_eq!(t.pow(-2).unwrap().mul(&t.pow(2).unwrap()), RatFun::one(&f2));
    }
}
