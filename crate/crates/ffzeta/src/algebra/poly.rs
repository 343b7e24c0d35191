//! Dense univariate polynomials over `F_q`.
//!
//! Coefficients are stored low-to-high as raw element encodings, with no
//! trailing zeros (the zero polynomial has an empty vector). The variable is
//! written `T` throughout.

use std::fmt;

use super::fq::{FqElem, FqField};
use crate::{Error, Result};

/// A polynomial in `F_q[T]`, canonical form (no trailing zero coefficient).
#[derive(Clone)]
pub struct Poly {
    field: FqField,
    coeffs: Vec<u16>,
}

impl Poly {
    pub fn zero(field: &FqField) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FqField) -> Poly {
        Poly { field: field.clone(), coeffs: vec![1] }
    }

    /// The variable `T`.
    pub fn t(field: &FqField) -> Poly {
        Poly { field: field.clone(), coeffs: vec![0, 1] }
    }

    pub fn constant(c: &FqElem) -> Poly {
        let mut p = Poly { field: c.field().clone(), coeffs: vec![c.val()] };
        p.normalize();
        p
    }

    /// `c * T^k`.
    pub fn monomial(c: &FqElem, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(c.field());
        }
        let mut coeffs = vec![0u16; k + 1];
        coeffs[k] = c.val();
        Poly { field: c.field().clone(), coeffs }
    }

    pub fn from_coeffs(field: &FqField, coeffs: Vec<FqElem>) -> Poly {
        let raw = coeffs
            .into_iter()
            .map(|c| {
                assert!(c.field() == field, "coefficient from a different field");
                c.val()
            })
            .collect();
        Poly::from_raw(field.clone(), raw)
    }

    /// Coefficients given as integers, reduced into `F_p ⊂ F_q`.
    pub fn from_ints(field: &FqField, coeffs: &[i64]) -> Poly {
        let raw = coeffs.iter().map(|&c| field.scalar(c).val()).collect();
        Poly::from_raw(field.clone(), raw)
    }

    pub(crate) fn from_raw(field: FqField, coeffs: Vec<u16>) -> Poly {
        let mut p = Poly { field, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.field.elem(*self.coeffs.get(i).unwrap_or(&0) as u32)
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<FqElem> {
        self.coeffs.last().map(|&c| self.field.elem(c as u32))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn coeffs(&self) -> Vec<FqElem> {
        self.coeffs.iter().map(|&c| self.field.elem(c as u32)).collect()
    }

    fn assert_same_field(&self, rhs: &Poly) {
        assert!(self.field == rhs.field, "polynomials over different fields");
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            out.push(self.field.add_raw(a, b));
        }
        Poly::from_raw(self.field.clone(), out)
    }

    pub fn neg(&self) -> Poly {
        let out = self.coeffs.iter().map(|&c| self.field.neg_raw(c)).collect();
        Poly { field: self.field.clone(), coeffs: out }
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![0u16; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (k, &b) in rhs.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + k] = self.field.add_raw(out[i + k], self.field.mul_raw(a, b));
                }
            }
        }
        Poly::from_raw(self.field.clone(), out)
    }

    pub fn mul_scalar(&self, c: &FqElem) -> Poly {
        let out = self.coeffs.iter().map(|&a| self.field.mul_raw(a, c.val())).collect();
        Poly::from_raw(self.field.clone(), out)
    }

    /// `self * T^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![0u16; k];
        out.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs: out }
    }

    /// Quotient and remainder; `deg r < deg g`.
    pub fn divrem(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.assert_same_field(g);
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dg = g.deg().unwrap();
        let lead_inv = self.field.inv_raw(*g.coeffs.last().unwrap())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let mut quot = vec![0u16; rem.len() - dg];
        while rem.len() > dg {
            let lead = *rem.last().unwrap();
            let pos = rem.len() - 1 - dg;
            if lead != 0 {
                let c = self.field.mul_raw(lead, lead_inv);
                quot[pos] = c;
                for (k, &gk) in g.coeffs.iter().enumerate() {
                    if gk != 0 {
                        rem[pos + k] =
                            self.field.sub_raw(rem[pos + k], self.field.mul_raw(c, gk));
                    }
                }
            }
            rem.pop();
            while rem.len() > dg && rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Ok((
            Poly::from_raw(self.field.clone(), quot),
            Poly::from_raw(self.field.clone(), rem),
        ))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        Ok(self.divrem(g)?.1)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        match other.divrem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn make_monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.mul_scalar(&l.inv().expect("leading nonzero")),
        }
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let mut acc = 0u16;
        for &c in self.coeffs.iter().rev() {
            acc = self.field.add_raw(self.field.mul_raw(acc, x.val()), c);
        }
        self.field.elem(acc as u32)
    }

    /// `f(T^m)`.
    pub fn subst_power(&self, m: usize) -> Poly {
        assert!(m >= 1);
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![0u16; (self.coeffs.len() - 1) * m + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * m] = c;
        }
        Poly { field: self.field.clone(), coeffs: out }
    }

    /// Plain square-and-multiply powering.
    pub fn pow_naive(&self, e: u64) -> Poly {
        let mut result = Poly::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Powering through the base-q digits of the exponent: `f^{q^k}` is the
    /// coefficientwise Frobenius composed with `T -> T^{q^k}`, and over `F_q`
    /// the coefficients are fixed, so `f^j = Π_k f(T^{q^k})^{c_k}` for
    /// `j = Σ c_k q^k`. Far fewer large multiplications than naive powering.
    pub fn pow_digits(&self, j: u64) -> Poly {
        if j == 0 {
            return Poly::one(&self.field);
        }
        let q = self.field.q() as u64;
        let mut result = Poly::one(&self.field);
        let mut stride = 1usize;
        let mut j = j;
        while j > 0 {
            let digit = (j % q) as u64;
            if digit > 0 {
                let part = self.subst_power(stride).pow_naive(digit);
                result = result.mul(&part);
            }
            j /= q;
            stride = stride
                .checked_mul(q as usize)
                .expect("exponent too large for dense representation");
        }
        result
    }

    /// Multiplicity of `P` in `self` (count of exact divisions).
    pub fn valuation(&self, p: &Poly) -> Result<u32> {
        if self.is_zero() || p.deg().unwrap_or(0) == 0 {
            return Err(Error::Precondition("valuation needs nonzero f and deg P >= 1".into()));
        }
        let mut v = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(p)?;
            if !r.is_zero() {
                return Ok(v);
            }
            v += 1;
            cur = q;
        }
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let prime = self.field.n0() == 1;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let ce = self.field.elem(c as u32);
            let cs = if prime { format!("{}", ce) } else { format!("({})", ce) };
            match (i, c) {
                (0, _) => write!(f, "{cs}")?,
                (1, 1) => write!(f, "T")?,
                (1, _) => write!(f, "{cs}T")?,
                (i, 1) => write!(f, "T^{i}")?,
                (i, _) => write!(f, "{cs}T^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parse `"2T^9+2T^3+2T"`-style input over the prime subfield. Accepts `-`
/// between terms and constants like `"7"`; coefficients are reduced mod p.
pub fn parse_poly(field: &FqField, s: &str) -> Result<Poly> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut acc = Poly::zero(field);
    let mut term = String::new();
    let mut sign = 1i64;
    let mut chars = s.chars().peekable();
    // leading sign
    if let Some(&c) = chars.peek() {
        if c == '-' {
            sign = -1;
            chars.next();
        } else if c == '+' {
            chars.next();
        }
    }
    let flush = |acc: &Poly, term: &str, sign: i64| -> Result<Poly> {
        if term.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let (coeff_str, power) = match term.find('T') {
            None => (term, None),
            Some(pos) => {
                let rest = &term[pos + 1..];
                let power = if rest.is_empty() {
                    1usize
                } else {
                    let rest = rest
                        .strip_prefix('^')
                        .ok_or_else(|| Error::Parse(format!("bad term {term}")))?;
                    rest.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?
                };
                (&term[..pos], Some(power))
            }
        };
        let c: i64 = if coeff_str.is_empty() {
            1
        } else {
            coeff_str.parse().map_err(|_| Error::Parse(format!("bad coefficient {coeff_str}")))?
        };
        let elem = field.scalar(sign * c);
        let t = Poly::monomial(&elem, power.unwrap_or(0));
        Ok(acc.add(&t))
    };
    for c in chars {
        if c == '+' || c == '-' {
            acc = flush(&acc, &term, sign)?;
            term.clear();
            sign = if c == '-' { -1 } else { 1 };
        } else {
            term.push(c);
        }
    }
    flush(&acc, &term, sign)
}

/// All monic irreducibles of degree exactly `d`, by sieve over monics.
pub fn monic_irreducibles(field: &FqField, d: usize) -> Vec<Poly> {
    let mut irr: Vec<Poly> = Vec::new();
    let mut by_deg: Vec<Vec<Poly>> = vec![Vec::new()];
    for deg in 1..=d {
        let mut level = Vec::new();
        for f in monics_of_degree(field, deg) {
            let composite = by_deg
                .iter()
                .skip(1)
                .take(deg / 2)
                .flatten()
                .any(|p| p.divides(&f));
            if !composite {
                level.push(f);
            }
        }
        if deg == d {
            irr = level.clone();
        }
        by_deg.push(level);
    }
    if d == 0 {
        return Vec::new();
    }
    irr
}

/// All monic polynomials of degree exactly `deg`, in lexicographic order of
/// the low coefficients.
pub fn monics_of_degree(field: &FqField, deg: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.q() as u64;
    let count = q.checked_pow(deg as u32).expect("degree too large to enumerate");
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            coeffs.push((idx % q) as u16);
            idx /= q;
        }
        coeffs.push(1);
        Poly::from_raw(field.clone(), coeffs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> FqField {
        FqField::new(q).unwrap()
    }

    #[test]
    fn char_two_squaring() {
        let f2 = f(2);
        let t1 = Poly::from_ints(&f2, &[1, 1]); // T + 1
        assert_eq!(t1.mul(&t1), Poly::from_ints(&f2, &[1, 0, 1]));
    }

    #[test]
    fn gcd_is_monic() {
        let f3 = f(3);
        let a = Poly::from_ints(&f3, &[-1, 0, 1]); // T^2 - 1
        let b = Poly::from_ints(&f3, &[-1, 1]); // T - 1
        assert_eq!(a.gcd(&b), Poly::from_ints(&f3, &[2, 1])); // T + 2, monic
    }

    #[test]
    fn long_division() {
        let f2 = f(2);
        let a = Poly::from_ints(&f2, &[0, 0, 0, 1]); // T^3
        let b = Poly::from_ints(&f2, &[0, 1, 1]); // T^2 + T
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q, Poly::from_ints(&f2, &[1, 1]));
        assert_eq!(r, Poly::from_ints(&f2, &[0, 1]));
        assert!(a.divrem(&Poly::zero(&f2)).is_err());
    }

    #[test]
    fn pow_digits_examples() {
        let f2 = f(2);
        let t1 = Poly::from_ints(&f2, &[1, 1]);
        assert_eq!(t1.pow_digits(2), Poly::from_ints(&f2, &[1, 0, 1]));
        assert_eq!(t1.pow_digits(0), Poly::one(&f2));

        let f3 = f(3);
        let g = Poly::from_ints(&f3, &[1, 1]);
        assert_eq!(g.pow_digits(13), g.pow_naive(13));
    }

    #[test]
    fn pow_digits_matches_naive_everywhere() {
        for q in [2u32, 3, 4, 5] {
            let fq = f(q);
            // a few fixed shapes of degree <= 4
            let polys = [
                Poly::from_ints(&fq, &[1, 1]),
                Poly::from_ints(&fq, &[2, 0, 1]),
                Poly::from_ints(&fq, &[1, 2, 3, 0, 1]),
                Poly::t(&fq),
            ];
            for f0 in &polys {
                for j in 0..=64u64 {
                    assert_eq!(f0.pow_digits(j), f0.pow_naive(j), "q={q} j={j}");
                }
            }
        }
    }

    #[test]
    fn parse_roundtrip() {
        let f3 = f(3);
        let p = parse_poly(&f3, "2T^9+2T^3+2T").unwrap();
        assert_eq!(format!("{p}"), "2T^9+2T^3+2T");
        let p2 = parse_poly(&f3, "T^2 - 1").unwrap();
        assert_eq!(p2, Poly::from_ints(&f3, &[-1, 0, 1]));
        assert!(parse_poly(&f3, "T^").is_err());
    }

    #[test]
    fn irreducible_sieve() {
        let f2 = f(2);
        let deg2 = monic_irreducibles(&f2, 2);
        assert_eq!(deg2.len(), 1);
        assert_eq!(deg2[0], Poly::from_ints(&f2, &[1, 1, 1]));
        // count check: #irreducibles of degree 3 over F_2 is 2
        assert_eq!(monic_irreducibles(&f2, 3).len(), 2);
        let f3 = f(3);
        assert_eq!(monic_irreducibles(&f3, 1).len(), 3);
        assert_eq!(monic_irreducibles(&f3, 2).len(), 3);
    }

    #[test]
    fn valuation_counts_divisions() {
        let f2 = f(2);
        let t = Poly::t(&f2);
        let t1 = Poly::from_ints(&f2, &[1, 1]);
        let w = t.pow_naive(3).mul(&t1.pow_naive(2));
        assert_eq!(w.valuation(&t).unwrap(), 3);
        assert_eq!(w.valuation(&t1).unwrap(), 2);
        assert_eq!(w.valuation(&Poly::from_ints(&f2, &[1, 1, 1])).unwrap(), 0);
    }
}
