//! Truncated Laurent series over `F_q` in a named uniformizer.
//!
//! A [`Laurent`] value represents `Σ_{i>=ord} c_i π^i + O(π^end)`: the
//! coefficients on `[ord, end)` are exactly known, everything from `end` on
//! is unknown. Operations propagate the window pessimistically and never
//! fabricate digits; zero-finding correctness depends on these windows being
//! honest. A value that is zero through its whole window keeps `ord == end`
//! and an empty coefficient vector.
//!
//! Parameter names are runtime tags. Mixing two parameters in one operation
//! is an error; moving between parameters goes through [`recompose`], which
//! is exactly the point where two uniformizers meet.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{FqElem, FqField, Poly};
use crate::digits::PAdic;
use crate::{Error, Result};

#[derive(Clone)]
pub struct Laurent {
    field: FqField,
    param: Arc<str>,
    /// Exponent of `coeffs[0]`; equals `end` when the value is known-zero.
    ord: i64,
    /// First unknown exponent.
    end: i64,
    coeffs: Vec<u16>,
}

impl Laurent {
    pub fn zero(field: &FqField, param: &str, end: i64) -> Laurent {
        Laurent {
            field: field.clone(),
            param: param.into(),
            ord: end,
            end,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FqField, param: &str, end: i64) -> Laurent {
        Self::monomial(&field.one(), param, 0, end)
    }

    /// `c * π^e + O(π^end)`.
    pub fn monomial(c: &FqElem, param: &str, e: i64, end: i64) -> Laurent {
        let field = c.field().clone();
        if c.is_zero() || e >= end {
            return Laurent::zero(&field, param, end);
        }
        let mut coeffs = vec![0u16; (end - e) as usize];
        coeffs[0] = c.val();
        Laurent { field, param: param.into(), ord: e, end, coeffs }
    }

    /// Build from explicit coefficients for exponents `ord, ord+1, ...`.
    pub fn from_terms(field: &FqField, param: &str, ord: i64, coeffs: &[FqElem], end: i64) -> Laurent {
        assert!(end >= ord + coeffs.len() as i64, "window must cover the terms");
        let mut raw = vec![0u16; (end - ord) as usize];
        for (i, c) in coeffs.iter().enumerate() {
            assert!(c.field() == field);
            raw[i] = c.val();
        }
        Laurent { field: field.clone(), param: param.into(), ord, end, coeffs: raw }.normalized()
    }

    /// Integer-coefficient convenience: coefficients reduced into `F_p`.
    pub fn from_ints(field: &FqField, param: &str, ord: i64, coeffs: &[i64], end: i64) -> Laurent {
        let elems: Vec<FqElem> = coeffs.iter().map(|&c| field.scalar(c)).collect();
        Laurent::from_terms(field, param, ord, &elems, end)
    }

    /// The polynomial `f(T)` viewed in `π = 1/T`: coefficient of `T^d`
    /// lands on `π^{-d}`. Exact; the window is the caller's choice.
    pub fn from_poly_inv_t(f: &Poly, param: &str, end: i64) -> Laurent {
        let field = f.field().clone();
        match f.deg() {
            None => Laurent::zero(&field, param, end),
            Some(d) => {
                let ord = -(d as i64);
                if ord >= end {
                    return Laurent::zero(&field, param, end);
                }
                let n = (end - ord) as usize;
                let mut coeffs = vec![0u16; n];
                for (k, &c) in f.raw().iter().enumerate() {
                    let e = -(k as i64) - ord;
                    if (0..n as i64).contains(&e) {
                        coeffs[e as usize] = c;
                    }
                }
                Laurent { field, param: param.into(), ord, end, coeffs }.normalized()
            }
        }
    }

    fn normalized(mut self) -> Laurent {
        while !self.coeffs.is_empty() && self.coeffs[0] == 0 {
            self.coeffs.remove(0);
            self.ord += 1;
        }
        if self.coeffs.is_empty() {
            self.ord = self.end;
        }
        self
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn param(&self) -> &str {
        &self.param
    }

    /// Order of the leading known term; `None` if zero through the window.
    pub fn ord(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.ord)
        }
    }

    /// First unknown exponent.
    pub fn end(&self) -> i64 {
        self.end
    }

    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at exponent `e`; `None` when `e` is outside the window.
    pub fn coeff(&self, e: i64) -> Option<FqElem> {
        if e >= self.end {
            return None;
        }
        if e < self.ord {
            return Some(self.field.zero());
        }
        Some(self.field.elem(self.coeffs[(e - self.ord) as usize] as u32))
    }

    pub fn leading(&self) -> Option<FqElem> {
        self.coeffs.first().map(|&c| self.field.elem(c as u32))
    }

    /// Effective order used for error bounds: `end` for a known-zero value.
    fn bound_ord(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.end
        } else {
            self.ord
        }
    }

    fn check_param(&self, rhs: &Laurent) -> Result<()> {
        if self.param != rhs.param {
            return Err(Error::ParamMismatch {
                left: self.param.to_string(),
                right: rhs.param.to_string(),
            });
        }
        assert!(self.field == rhs.field, "series over different fields");
        Ok(())
    }

    pub fn add(&self, rhs: &Laurent) -> Result<Laurent> {
        self.check_param(rhs)?;
        let end = self.end.min(rhs.end);
        let ord = self.bound_ord().min(rhs.bound_ord()).min(end);
        let mut coeffs = vec![0u16; (end - ord) as usize];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let e = ord + i as i64;
            let a = self.coeff(e).map_or(0, |x| x.val());
            let b = rhs.coeff(e).map_or(0, |x| x.val());
            *c = self.field.add_raw(a, b);
        }
        Ok(Laurent {
            field: self.field.clone(),
            param: self.param.clone(),
            ord,
            end,
            coeffs,
        }
        .normalized())
    }

    pub fn neg(&self) -> Laurent {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg_raw(c)).collect();
        Laurent { field: self.field.clone(), param: self.param.clone(), ord: self.ord, end: self.end, coeffs }
    }

    pub fn sub(&self, rhs: &Laurent) -> Result<Laurent> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Laurent) -> Result<Laurent> {
        self.check_param(rhs)?;
        // x = x0 + O(π^ex), y = y0 + O(π^ey):
        // xy = x0 y0 + O(π^{ord x0 + ey}) + O(π^{ord y0 + ex})
        let end = (self.bound_ord() + rhs.end).min(rhs.bound_ord() + self.end);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Ok(Laurent::zero(&self.field, &self.param, end));
        }
        let ord = self.ord + rhs.ord;
        if ord >= end {
            return Ok(Laurent::zero(&self.field, &self.param, end));
        }
        let n = (end - ord) as usize;
        let mut coeffs = vec![0u16; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 || i >= n {
                continue;
            }
            let lim = n - i;
            for (k, &b) in rhs.coeffs.iter().enumerate().take(lim) {
                if b != 0 {
                    coeffs[i + k] = self.field.add_raw(coeffs[i + k], self.field.mul_raw(a, b));
                }
            }
        }
        Ok(Laurent {
            field: self.field.clone(),
            param: self.param.clone(),
            ord,
            end,
            coeffs,
        }
        .normalized())
    }

    pub fn mul_scalar(&self, c: &FqElem) -> Laurent {
        if c.is_zero() {
            return Laurent::zero(&self.field, &self.param, self.end);
        }
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul_raw(a, c.val())).collect();
        Laurent { field: self.field.clone(), param: self.param.clone(), ord: self.ord, end: self.end, coeffs }
    }

    /// Multiply by `π^k` (exact).
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent {
            field: self.field.clone(),
            param: self.param.clone(),
            ord: self.ord + k,
            end: self.end + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn truncate(&self, end: i64) -> Laurent {
        if end >= self.end {
            return self.clone();
        }
        let keep = ((end - self.ord).max(0)) as usize;
        let mut out = self.clone();
        out.coeffs.truncate(keep);
        out.end = end;
        if out.coeffs.is_empty() {
            out.ord = end;
        }
        out
    }

    /// Declare that this value is exact and extend its window with zeros.
    /// Only sound for values constructed from finite data (polynomials,
    /// monomials); never call it on the result of a truncated computation.
    pub fn extend_exact(&self, end: i64) -> Laurent {
        if end <= self.end {
            return self.clone();
        }
        let mut out = self.clone();
        if out.coeffs.is_empty() {
            out.ord = end;
        } else {
            out.coeffs.resize((end - out.ord) as usize, 0);
        }
        out.end = end;
        out
    }

    /// Inverse; `x` must be nonzero through its window.
    pub fn inv(&self) -> Result<Laurent> {
        if self.coeffs.is_empty() {
            return Err(Error::ZeroInverse);
        }
        let m = self.ord;
        let rel = (self.end - m) as usize;
        let lead_inv = self.field.inv_raw(self.coeffs[0])?;
        // unit part u = x / (lead π^m); invert by the standard recurrence
        let mut inv_u = vec![0u16; rel];
        inv_u[0] = 1;
        for n in 1..rel {
            let mut sum = 0u16;
            for i in 1..=n {
                let a = self
                    .coeffs
                    .get(i)
                    .map(|&c| self.field.mul_raw(c, lead_inv))
                    .unwrap_or(0);
                if a != 0 && inv_u[n - i] != 0 {
                    sum = self.field.add_raw(sum, self.field.mul_raw(a, inv_u[n - i]));
                }
            }
            inv_u[n] = self.field.neg_raw(sum);
        }
        for c in inv_u.iter_mut() {
            *c = self.field.mul_raw(*c, lead_inv);
        }
        // 1/x = u^{-1}/lead * π^{-m}, exact through end - 2m
        Ok(Laurent {
            field: self.field.clone(),
            param: self.param.clone(),
            ord: -m,
            end: self.end - 2 * m,
            coeffs: inv_u,
        }
        .normalized())
    }

    pub fn pow(&self, n: i64) -> Result<Laurent> {
        if n == 0 {
            let end = if self.coeffs.is_empty() {
                self.end
            } else {
                self.end - self.ord
            };
            return Ok(Laurent::one(&self.field, &self.param, end.max(1)));
        }
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut result: Option<Laurent> = None;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => b.clone(),
                    Some(r) => r.mul(&b)?,
                });
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(result.expect("n != 0"))
    }

    /// Compare the known parts of two series through exponent `upto`.
    pub fn agrees_through(&self, rhs: &Laurent, upto: i64) -> bool {
        if self.param != rhs.param || upto > self.end || upto > rhs.end {
            return false;
        }
        let lo = self.bound_ord().min(rhs.bound_ord());
        (lo..upto).all(|e| self.coeff(e) == rhs.coeff(e))
    }
}

impl PartialEq for Laurent {
    /// Structural equality: same window and same known coefficients.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.param == other.param
            && self.ord == other.ord
            && self.end == other.end
            && self.coeffs == other.coeffs
    }
}
impl Eq for Laurent {}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let prime = self.field.n0() == 1;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let e = self.ord + i as i64;
            let ce = self.field.elem(c as u32);
            let cs = if prime { format!("{ce}") } else { format!("({ce})") };
            match (e, c) {
                (0, _) => write!(f, "{cs}")?,
                (1, 1) => write!(f, "{}", self.param)?,
                (1, _) => write!(f, "{cs}{}", self.param)?,
                (e, 1) => write!(f, "{}^{e}", self.param)?,
                (e, _) => write!(f, "{cs}{}^{e}", self.param)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self, self.param, self.end)
    }
}

/// Binomial coefficient `C(y, k) mod p` for a p-adic `y`, by the digitwise
/// Lucas product over base-p digits.
pub fn binom_padic(y: &PAdic, k: u64) -> u32 {
    let p = y.p() as u64;
    let mut acc = 1u64;
    let mut k_rest = k;
    let mut i = 0usize;
    while k_rest > 0 {
        let dk = k_rest % p;
        let dy = y.digit_base_p(i) as u64;
        if dk > dy {
            return 0;
        }
        // C(dy, dk) mod p, arguments below p
        let mut c = 1u64;
        for t in 0..dk {
            c = c * (dy - t) % p;
            c = c * inv_mod(t + 1, p) % p;
        }
        acc = acc * c % p;
        k_rest /= p;
        i += 1;
    }
    acc as u32
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Decompose a monic polynomial at the infinite place:
/// `f = π^{-deg f} * ⟨f⟩` with `⟨f⟩ = π^{deg f} f(1/π)` a 1-unit
/// (the coefficient-reversal of `f`). Returns `(deg f, ⟨f⟩)`.
pub fn one_unit_of(f: &Poly, param: &str, end: i64) -> Result<(i64, Laurent)> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = f.deg().unwrap() as i64;
    let u = Laurent::from_poly_inv_t(f, param, end.max(1)).shift(d).truncate(end.max(1));
    Ok((d, u))
}

/// `u^y` for a 1-unit `u` and p-adic exponent `y`, through `n` terms:
/// `Σ_k C(y,k) (u-1)^k`, which converges because `ord(u-1) >= 1`.
pub fn one_unit_pow(u: &Laurent, y: &PAdic, n: i64) -> Result<Laurent> {
    if u.ord() != Some(0) || !u.leading().map_or(false, |c| c.is_one()) {
        return Err(Error::NotOneUnit);
    }
    assert_eq!(u.field().p(), y.p(), "exponent lives over a different prime");
    let end = n.min(u.end());
    let field = u.field().clone();
    let one = Laurent::one(&field, u.param(), end);
    let v = u.truncate(end).sub(&one)?;
    let mut acc = one;
    let mut vp = Laurent::one(&field, u.param(), end);
    for k in 1..end.max(0) as u64 {
        vp = vp.mul(&v)?.truncate(end);
        if vp.is_known_zero() {
            break;
        }
        let c = binom_padic(y, k);
        if c != 0 {
            acc = acc.add(&vp.mul_scalar(&field.scalar(c as i64)))?;
        }
    }
    Ok(acc.truncate(end))
}

/// Substitute `π1 = g(π2)` into a series in `π1`, yielding a series in `π2`.
/// `g` must have order 1 and leading coefficient 1 (a positive parameter
/// expressed in another positive parameter).
pub fn recompose(x: &Laurent, g: &Laurent) -> Result<Laurent> {
    if g.ord() != Some(1) || !g.leading().map_or(false, |c| c.is_one()) {
        return Err(Error::BadSubstitution);
    }
    assert!(x.field() == g.field(), "series over different fields");
    let field = x.field().clone();
    if x.is_known_zero() {
        return Ok(Laurent::zero(&field, g.param(), x.end()));
    }
    let m = x.ord;
    // certified window: the omitted tail of x contributes O(π2^{end_x});
    // the unknown tail of g contributes O(π2^{m-1+end_g})
    let end_out = x.end.min(m - 1 + g.end());
    let work = end_out - m.min(0) + 2;
    // Horner over the known terms of x, highest exponent first
    let mut acc = Laurent::zero(&field, g.param(), work);
    for i in (0..x.coeffs.len()).rev() {
        let c = Laurent::monomial(&field.elem(x.coeffs[i] as u32), g.param(), 0, work);
        acc = acc.mul(g)?.add(&c)?.truncate(work);
    }
    let gm = g.pow(m)?;
    let out = acc.mul(&gm)?;
    Ok(out.truncate(end_out))
}

/// Compositional inverse of `g` (order 1, leading coefficient 1): the series
/// `w` in `out_param` with `g(w) = id` through the available precision.
pub fn reversion(g: &Laurent, out_param: &str) -> Result<Laurent> {
    if g.ord() != Some(1) || !g.leading().map_or(false, |c| c.is_one()) {
        return Err(Error::BadSubstitution);
    }
    let field = g.field().clone();
    let n = g.end();
    let id_out = Laurent::monomial(&field.one(), out_param, 1, n);
    // fixed point: w <- w - (g(w) - id); each pass fixes one more term
    let mut w = id_out.clone();
    for _ in 0..n.max(0) {
        let gw = recompose(g, &w)?;
        let err = gw.sub(&id_out.truncate(gw.end()))?;
        if err.is_known_zero() {
            break;
        }
        w = w.sub(&err.truncate(w.end()))?;
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FqField {
        FqField::new(2).unwrap()
    }

    fn f3() -> FqField {
        FqField::new(3).unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        let f = f2();
        // (π + π²) * π^{-1} = 1 + π
        let x = Laurent::from_ints(&f, "pi", 1, &[1, 1], 8);
        let pi_inv = Laurent::monomial(&f.one(), "pi", -1, 8);
        let prod = x.mul(&pi_inv).unwrap();
        assert_eq!(prod.coeff(0).unwrap(), f.one());
        assert_eq!(prod.coeff(1).unwrap(), f.one());
        assert_eq!(prod.coeff(2).unwrap(), f.zero());
    }

    #[test]
    fn geometric_inverse() {
        let f = f2();
        let x = Laurent::from_ints(&f, "pi", 0, &[1, 1], 4); // 1 + π
        let inv = x.inv().unwrap();
        assert_eq!(inv, Laurent::from_ints(&f, "pi", 0, &[1, 1, 1, 1], 4));
    }

    #[test]
    fn cube_of_pi_plus_pi_squared() {
        let f = f2();
        let x = Laurent::from_ints(&f, "pi", 1, &[1, 1], 10);
        let cube = x.pow(3).unwrap();
        // π³+π⁴+π⁵+π⁶; window is (3-1)·1 + 10 = 12 capped by mul chain
        for (e, c) in [(3, 1), (4, 1), (5, 1), (6, 1), (7, 0)] {
            assert_eq!(cube.coeff(e).unwrap(), f.elem(c));
        }
    }

    #[test]
    fn mixed_params_rejected() {
        let f = f2();
        let a = Laurent::one(&f, "pi1", 4);
        let b = Laurent::one(&f, "pi2", 4);
        assert!(matches!(a.add(&b), Err(Error::ParamMismatch { .. })));
        assert!(Laurent::zero(&f, "pi", 4).inv().is_err());
    }

    #[test]
    fn window_tracking_in_products() {
        let f = f2();
        // x known to O(π^3) with ord 1; y exact monomial π^{-2} + O(π^6)
        let x = Laurent::from_ints(&f, "pi", 1, &[1, 1], 3);
        let y = Laurent::monomial(&f.one(), "pi", -2, 6);
        let xy = x.mul(&y).unwrap();
        // bound: min(ord_x + end_y, ord_y + end_x) = min(1+6, -2+3) = 1
        assert_eq!(xy.end(), 1);
        assert_eq!(xy.ord(), Some(-1));
    }

    #[test]
    fn one_unit_decompositions() {
        let f = f2();
        let (d, u) = one_unit_of(&Poly::t(&f), "pi", 6).unwrap();
        assert_eq!(d, 1);
        assert_eq!(u, Laurent::one(&f, "pi", 6));

        let g = Poly::from_ints(&f, &[1, 1, 1]); // T² + T + 1
        let (d, u) = one_unit_of(&g, "pi", 6).unwrap();
        assert_eq!(d, 2);
        assert_eq!(u, Laurent::from_ints(&f, "pi", 0, &[1, 1, 1], 6));

        let f3 = f3();
        let h = Poly::from_ints(&f3, &[0, 2, 0, 1]); // T³ + 2T
        let (d, u) = one_unit_of(&h, "pi", 6).unwrap();
        assert_eq!(d, 3);
        assert_eq!(u, Laurent::from_ints(&f3, "pi", 0, &[1, 0, 2], 6));

        assert!(one_unit_of(&Poly::from_ints(&f3, &[1, 2]), "pi", 6).is_err());
    }

    #[test]
    fn binomials_of_padic_integers() {
        assert_eq!(binom_padic(&PAdic::from_int(10, 3), 2), 0); // 45 mod 3
        assert_eq!(binom_padic(&PAdic::from_int(5, 3), 2), 1); // 10 mod 3
        for k in 0..40 {
            assert_eq!(binom_padic(&PAdic::from_int(-1, 2), k), 1);
        }
    }

    #[test]
    fn binomials_match_integer_binomials() {
        // Pascal's triangle mod p as the oracle
        for p in [2u32, 3, 5] {
            let n = 201;
            let mut row = vec![1u32];
            for y in 0..n as usize {
                let yp = PAdic::from_int(y as i64, p);
                for (k, &c) in row.iter().enumerate() {
                    assert_eq!(binom_padic(&yp, k as u64), c, "p={p} y={y} k={k}");
                }
                let mut next = vec![1u32];
                for i in 1..=y {
                    next.push((row[i - 1] + row.get(i).copied().unwrap_or(0)) % p);
                }
                next.push(1);
                row = next;
            }
        }
    }

    #[test]
    fn one_unit_pow_examples() {
        let f = f2();
        let u = Laurent::from_ints(&f, "pi", 0, &[1, 1], 4); // 1 + π
        // y = 0
        let one = one_unit_pow(&u, &PAdic::from_int(0, 2), 4).unwrap();
        assert_eq!(one, Laurent::one(&f, "pi", 4));
        // y = -1 matches inversion
        let inv = one_unit_pow(&u, &PAdic::from_int(-1, 2), 4).unwrap();
        assert_eq!(inv, u.inv().unwrap());
        // y = 3 matches (1+π)³ in char 2
        let cube = one_unit_pow(&u, &PAdic::from_int(3, 2), 4).unwrap();
        assert_eq!(cube, Laurent::from_ints(&f, "pi", 0, &[1, 1, 1, 1], 4));
    }

    #[test]
    fn one_unit_pow_is_a_homomorphism_in_y() {
        let f = f3();
        let u = Laurent::from_ints(&f, "pi", 0, &[1, 2, 1, 0, 2, 1, 2, 0, 1, 1], 10);
        let cases: [(i64, i64); 4] = [(3, 5), (-4, 7), (-1, -2), (10, 14)];
        for (a, b) in cases {
            let ya = PAdic::from_int(a, 3);
            let yb = PAdic::from_int(b, 3);
            let yab = PAdic::from_int(a + b, 3);
            let lhs = one_unit_pow(&u, &yab, 10).unwrap();
            let rhs = one_unit_pow(&u, &ya, 10)
                .unwrap()
                .mul(&one_unit_pow(&u, &yb, 10).unwrap())
                .unwrap();
            assert!(lhs.agrees_through(&rhs, rhs.end().min(lhs.end())));
        }
    }

    #[test]
    fn one_unit_pow_matches_naive_powers() {
        let f = f2();
        let u = Laurent::from_ints(&f, "pi", 0, &[1, 1, 0, 1, 1, 0, 0, 1, 1, 1, 0, 1, 1, 0, 1, 0, 1, 1, 0, 1, 1, 1, 0, 1, 1], 25);
        for m in -20i64..=20 {
            let via_binom = one_unit_pow(&u, &PAdic::from_int(m, 2), 20).unwrap();
            let naive = u.pow(m).unwrap();
            let upto = via_binom.end().min(naive.end());
            assert!(via_binom.agrees_through(&naive, upto), "m={m}");
        }
    }

    #[test]
    fn recompose_identity_and_inverse_of_t() {
        let f = f2();
        // x = π1, g = π2 -> π2
        let x = Laurent::monomial(&f.one(), "pi1", 1, 8);
        let g = Laurent::monomial(&f.one(), "pi2", 1, 8);
        let y = recompose(&x, &g).unwrap();
        assert_eq!(y.ord(), Some(1));
        assert_eq!(y.coeff(1).unwrap(), f.one());

        // x = π1^{-1} = T, g = π2 + π2²: multiply back to get 1
        let t = Laurent::monomial(&f.one(), "pi1", -1, 5);
        let g = Laurent::from_ints(&f, "pi2", 1, &[1, 1], 8);
        let t2 = recompose(&t, &g).unwrap();
        assert_eq!(t2.ord(), Some(-1));
        let back = t2.mul(&g.truncate(t2.end() + 2)).unwrap();
        let upto = back.end();
        assert!(back.agrees_through(&Laurent::one(&f, "pi2", upto), upto));
    }

    #[test]
    fn recompose_roundtrip_through_reversion() {
        let f3 = f3();
        let g = Laurent::from_ints(&f3, "pi2", 1, &[1, 2, 0, 1, 1, 2, 0, 0, 1, 1], 11);
        let w = reversion(&g, "pi1").unwrap();
        // w(g) should be the identity series in pi1
        let x = Laurent::from_ints(&f3, "pi1", -2, &[1, 0, 2, 1, 1, 0, 1], 7);
        let there = recompose(&x, &g).unwrap();
        let back = recompose(&there, &w).unwrap();
        let upto = back.end().min(x.end());
        assert!(back.agrees_through(&x, upto), "{back:?} vs {x:?}");
    }

    #[test]
    fn display_forms() {
        let f = f2();
        let x = Laurent::from_ints(&f, "pi", 3, &[1], 8);
        assert_eq!(format!("{x}"), "pi^3");
        let y = Laurent::from_ints(&f, "pi", 1, &[1, 1], 8);
        assert_eq!(format!("{y}"), "pi+pi^2");
    }
}
