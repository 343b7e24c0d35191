//! The finite field `F_q`, `q = p^{n0}`, on the polynomial basis of
//! `F_p[x]/(m(x))`.
//!
//! An element is encoded as the integer whose base-p digits are its
//! coordinates, so the encodings are exactly `0..q`. Multiplication runs
//! through exp/log tables for a fixed generator; addition is digitwise mod p
//! (a plain XOR when p = 2). Everything is exact and deterministic: the same
//! `(p, n0, modulus)` always yields the same element encodings.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Largest supported field size.
pub const MAX_Q: u32 = 1 << 16;
/// Largest supported characteristic.
pub const MAX_P: u32 = 97;

#[derive(Debug)]
struct FieldData {
    p: u32,
    n0: u32,
    q: u32,
    /// Base-p coefficients of the defining polynomial, low to high,
    /// length `n0 + 1`, monic. Empty when `n0 = 1`.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`, `g` the stored generator.
    exp: Vec<u16>,
    /// `log[a]` for `1 <= a < q`; `log[0]` is a sentinel.
    log: Vec<u32>,
    /// Full addition table (`q*q` entries) when q is small and p odd.
    add_table: Vec<u16>,
}

/// A finite field `F_q`. Cheap to clone (shared handle).
#[derive(Clone)]
pub struct FqField(Arc<FieldData>);

/// An element of an [`FqField`].
#[derive(Clone)]
pub struct FqElem {
    field: FqField,
    val: u16,
}

const ADD_TABLE_MAX_Q: u32 = 512;

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- dense polynomials over F_p, used only while constructing a field ----

fn fpx_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fpx_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (k, &bk) in b.iter().enumerate() {
            out[i + k] = (out[i + k] + ai as u64 * bk as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    fpx_trim(&mut out);
    out
}

/// Remainder of `a` by the monic polynomial `m`.
fn fpx_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    fpx_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (k, &mk) in m.iter().enumerate() {
                let idx = shift + k;
                let sub = (lead as u64 * mk as u64) % p as u64;
                r[idx] = ((r[idx] as u64 + p as u64 * p as u64 - sub) % p as u64) as u32;
            }
        }
        r.pop();
        fpx_trim(&mut r);
        if r.len() <= dm {
            break;
        }
    }
    r
}

fn fpx_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fpx_trim(&mut a);
    fpx_trim(&mut b);
    while !b.is_empty() {
        // make b monic before reducing
        let lead = *b.last().unwrap();
        if lead != 1 {
            let inv = mod_inv(lead, p);
            for c in b.iter_mut() {
                *c = (*c as u64 * inv as u64 % p as u64) as u32;
            }
        }
        let r = fpx_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // Fermat; p is prime and a != 0 mod p.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// `x^e mod m` over `F_p`, exponent up to 2^127.
fn fpx_pow_x(e: u128, m: &[u32], p: u32) -> Vec<u32> {
    let mut result = vec![1u32];
    let mut base = fpx_rem(&[0, 1], m, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = fpx_rem(&fpx_mul(&result, &base, p), m, p);
        }
        base = fpx_rem(&fpx_mul(&base, &base, p), m, p);
        e >>= 1;
    }
    result
}

/// Irreducibility of a monic polynomial of degree n over F_p:
/// `x^{p^n} == x (mod m)` and `gcd(x^{p^{n/r}} - x, m) = 1` for prime r | n.
fn fpx_is_irreducible(m: &[u32], p: u32) -> bool {
    let n = m.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let pk = |k: u32| -> u128 { (p as u128).pow(k) };
    let xpn = fpx_pow_x(pk(n as u32), m, p);
    let x = fpx_rem(&[0, 1], m, p);
    let mut diff: Vec<u32> = Vec::new();
    let len = xpn.len().max(x.len());
    for i in 0..len {
        let a = xpn.get(i).copied().unwrap_or(0);
        let b = x.get(i).copied().unwrap_or(0);
        diff.push((a + p - b) % p);
    }
    fpx_trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    for r in prime_factors(n as u32) {
        let sub = fpx_pow_x(pk(n as u32 / r), m, p);
        let mut d: Vec<u32> = Vec::new();
        let len = sub.len().max(x.len());
        for i in 0..len {
            let a = sub.get(i).copied().unwrap_or(0);
            let b = x.get(i).copied().unwrap_or(0);
            d.push((a + p - b) % p);
        }
        fpx_trim(&mut d);
        let g = fpx_gcd(&d, m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Default defining polynomials for the common extension sizes; anything else
/// gets the lexicographically smallest monic irreducible.
fn default_modulus(p: u32, n0: u32) -> Vec<u32> {
    match (p, n0) {
        (2, 2) => vec![1, 1, 1],          // x^2 + x + 1
        (2, 3) => vec![1, 1, 0, 1],       // x^3 + x + 1
        (2, 4) => vec![1, 1, 0, 0, 1],    // x^4 + x + 1
        (3, 2) => vec![2, 2, 1],          // x^2 + 2x + 2
        (3, 3) => vec![1, 2, 0, 1],       // x^3 + 2x + 1
        (5, 2) => vec![2, 4, 1],          // x^2 + 4x + 2
        _ => {
            // smallest monic irreducible of degree n0, by the digit encoding
            let lower = (p as u64).pow(n0 - 1).max(1);
            for tail in 0..(p as u64).pow(n0) {
                let mut m: Vec<u32> = Vec::with_capacity(n0 as usize + 1);
                let mut t = tail;
                for _ in 0..n0 {
                    m.push((t % p as u64) as u32);
                    t /= p as u64;
                }
                m.push(1);
                let _ = lower;
                if fpx_is_irreducible(&m, p) {
                    return m;
                }
            }
            unreachable!("an irreducible polynomial of every degree exists")
        }
    }
}

fn val_to_digits(val: u16, p: u32, n0: u32) -> Vec<u32> {
    let mut v = val as u32;
    let mut out = Vec::with_capacity(n0 as usize);
    for _ in 0..n0 {
        out.push(v % p);
        v /= p;
    }
    out
}

fn digits_to_val(digits: &[u32], p: u32) -> u16 {
    let mut v = 0u32;
    for &d in digits.iter().rev() {
        v = v * p + d;
    }
    v as u16
}

impl FqField {
    /// The field with `q` elements, using the built-in modulus.
    pub fn new(q: u32) -> Result<FqField> {
        let (p, n0) = factor_prime_power(q)?;
        let modulus = if n0 == 1 { Vec::new() } else { default_modulus(p, n0) };
        Self::with_modulus(p, n0, modulus)
    }

    /// The field `F_{p^{n0}}` defined by an explicit monic irreducible
    /// `modulus` (base-p coefficients, low to high, length `n0 + 1`).
    /// The modulus is ignored (and may be empty) when `n0 = 1`.
    pub fn with_modulus(p: u32, n0: u32, modulus: Vec<u32>) -> Result<FqField> {
        if !is_prime(p) || p > MAX_P || n0 == 0 {
            return Err(Error::BadFieldSize(
                (p as u64).saturating_pow(n0.max(1)),
            ));
        }
        let q = (p as u64).checked_pow(n0).filter(|&q| q <= MAX_Q as u64).ok_or(
            Error::BadFieldSize((p as u64).saturating_pow(n0)),
        )? as u32;
        let modulus = if n0 == 1 {
            Vec::new()
        } else {
            if modulus.len() != n0 as usize + 1 {
                return Err(Error::BadModulus(format!(
                    "expected {} coefficients, got {}",
                    n0 + 1,
                    modulus.len()
                )));
            }
            if modulus.iter().any(|&c| c >= p) {
                return Err(Error::BadModulus("coefficient out of range".into()));
            }
            if *modulus.last().unwrap() != 1 {
                return Err(Error::BadModulus("not monic".into()));
            }
            if !fpx_is_irreducible(&modulus, p) {
                return Err(Error::BadModulus("not irreducible over F_p".into()));
            }
            modulus
        };

        // multiplication on digit encodings, used to bootstrap the tables
        let mul_slow = |a: u16, b: u16| -> u16 {
            if n0 == 1 {
                (a as u64 * b as u64 % p as u64) as u16
            } else {
                let pa = val_to_digits(a, p, n0);
                let pb = val_to_digits(b, p, n0);
                let prod = fpx_mul(&pa, &pb, p);
                let red = fpx_rem(&prod, &modulus, p);
                digits_to_val(&red, p)
            }
        };
        let pow_slow = |a: u16, mut e: u32| -> u16 {
            let mut result = 1u16;
            let mut base = a;
            while e > 0 {
                if e & 1 == 1 {
                    result = mul_slow(result, base);
                }
                base = mul_slow(base, base);
                e >>= 1;
            }
            result
        };

        // find a generator of the multiplicative group
        let factors = prime_factors(q - 1);
        let mut gen = 1u16;
        if q > 2 {
            'search: for cand in 2..q as u16 {
                for &r in &factors {
                    if pow_slow(cand, (q - 1) / r) == 1 {
                        continue 'search;
                    }
                }
                gen = cand;
                break;
            }
        }

        let mut exp = vec![0u16; 2 * (q as usize - 1).max(1)];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u16;
        for i in 0..(q as usize - 1).max(1) {
            exp[i] = acc;
            exp[i + (q as usize - 1).max(1)] = acc;
            log[acc as usize] = i as u32;
            acc = mul_slow(acc, gen);
        }

        let mut add_table = Vec::new();
        if p != 2 && q <= ADD_TABLE_MAX_Q {
            add_table = vec![0u16; (q * q) as usize];
            for a in 0..q as u16 {
                for b in 0..q as u16 {
                    let da = val_to_digits(a, p, n0);
                    let db = val_to_digits(b, p, n0);
                    let sum: Vec<u32> =
                        da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                    add_table[a as usize * q as usize + b as usize] =
                        digits_to_val(&sum, p);
                }
            }
        }

        Ok(FqField(Arc::new(FieldData {
            p,
            n0,
            q,
            modulus,
            exp,
            log,
            add_table,
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn n0(&self) -> u32 {
        self.0.n0
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Defining polynomial (empty for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem { field: self.clone(), val: 0 }
    }

    pub fn one(&self) -> FqElem {
        FqElem { field: self.clone(), val: 1 }
    }

    /// A fixed generator of the multiplicative group.
    pub fn generator(&self) -> FqElem {
        let val = if self.0.q == 2 { 1 } else { self.0.exp[1] };
        FqElem { field: self.clone(), val }
    }

    /// The element with the given encoding (`0 <= val < q`).
    pub fn elem(&self, val: u32) -> FqElem {
        assert!(val < self.0.q, "element encoding {val} out of range");
        FqElem { field: self.clone(), val: val as u16 }
    }

    /// Element from base-p coordinates, low to high; missing digits are 0.
    pub fn from_coords(&self, coords: &[u32]) -> Result<FqElem> {
        if coords.len() > self.0.n0 as usize || coords.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Parse(format!(
                "bad coordinates for F_{}: {:?}",
                self.0.q, coords
            )));
        }
        Ok(FqElem { field: self.clone(), val: digits_to_val(coords, self.0.p) })
    }

    /// The image of the integer `n` under `Z -> F_p ⊂ F_q`.
    pub fn scalar(&self, n: i64) -> FqElem {
        let p = self.0.p as i64;
        let r = n.rem_euclid(p) as u16;
        FqElem { field: self.clone(), val: r }
    }

    /// All `q` elements, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.0.q).map(move |v| self.elem(v))
    }

    // ---- raw operations on encodings (hot paths work on u16 directly) ----

    #[inline]
    pub fn add_raw(&self, a: u16, b: u16) -> u16 {
        let d = &*self.0;
        if d.p == 2 {
            a ^ b
        } else if !d.add_table.is_empty() {
            d.add_table[a as usize * d.q as usize + b as usize]
        } else {
            let da = val_to_digits(a, d.p, d.n0);
            let db = val_to_digits(b, d.p, d.n0);
            let sum: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % d.p).collect();
            digits_to_val(&sum, d.p)
        }
    }

    #[inline]
    pub fn neg_raw(&self, a: u16) -> u16 {
        let d = &*self.0;
        if d.p == 2 {
            return a;
        }
        let da = val_to_digits(a, d.p, d.n0);
        let neg: Vec<u32> = da.iter().map(|&x| (d.p - x) % d.p).collect();
        digits_to_val(&neg, d.p)
    }

    #[inline]
    pub fn sub_raw(&self, a: u16, b: u16) -> u16 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub fn mul_raw(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &*self.0;
        d.exp[(d.log[a as usize] + d.log[b as usize]) as usize]
    }

    pub fn inv_raw(&self, a: u16) -> Result<u16> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let d = &*self.0;
        let m = d.q - 1;
        Ok(d.exp[((m - d.log[a as usize] % m) % m) as usize])
    }

    /// `a^e`; negative exponents invert, `0^0 = 1`, `0^e` errors for `e < 0`.
    pub fn pow_raw(&self, a: u16, e: i64) -> Result<u16> {
        if a == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(0),
                std::cmp::Ordering::Equal => Ok(1),
                std::cmp::Ordering::Less => Err(Error::DivisionByZero),
            };
        }
        let d = &*self.0;
        let m = (d.q - 1) as i64;
        let k = (d.log[a as usize] as i64 * (e % m)).rem_euclid(m) as usize;
        Ok(d.exp[k])
    }
}

fn factor_prime_power(q: u32) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::BadFieldSize(q as u64));
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
        if p * p > q {
            p = q; // q itself prime
            break;
        }
    }
    let mut n0 = 0;
    let mut m = q;
    while m % p == 0 {
        m /= p;
        n0 += 1;
    }
    if m != 1 {
        return Err(Error::BadFieldSize(q as u64));
    }
    Ok((p, n0))
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.n0 == other.0.n0
                && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FqField {}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

impl FqElem {
    pub fn field(&self) -> &FqField {
        &self.field
    }

    /// Raw encoding in `0..q`.
    pub fn val(&self) -> u16 {
        self.val
    }

    /// Base-p coordinates, low to high, length `n0`.
    pub fn coords(&self) -> Vec<u32> {
        val_to_digits(self.val, self.field.p(), self.field.n0())
    }

    pub fn is_zero(&self) -> bool {
        self.val == 0
    }

    pub fn is_one(&self) -> bool {
        self.val == 1
    }

    pub fn inv(&self) -> Result<FqElem> {
        Ok(FqElem { field: self.field.clone(), val: self.field.inv_raw(self.val)? })
    }

    pub fn checked_div(&self, rhs: &FqElem) -> Result<FqElem> {
        self.assert_same_field(rhs);
        Ok(FqElem {
            field: self.field.clone(),
            val: self.field.mul_raw(self.val, self.field.inv_raw(rhs.val)?),
        })
    }

    pub fn pow(&self, e: i64) -> Result<FqElem> {
        Ok(FqElem { field: self.field.clone(), val: self.field.pow_raw(self.val, e)? })
    }

    /// `a -> a^p`, the absolute Frobenius.
    pub fn frobenius(&self) -> FqElem {
        self.pow(self.field.p() as i64).expect("positive exponent")
    }

    fn assert_same_field(&self, rhs: &FqElem) {
        assert!(
            self.field == rhs.field,
            "elements of different fields: {:?} vs {:?}",
            self.field,
            rhs.field
        );
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.val == other.val
    }
}
impl Eq for FqElem {}

impl std::hash::Hash for FqElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.q().hash(state);
        self.val.hash(state);
    }
}

impl std::ops::Add for &FqElem {
    type Output = FqElem;
    fn add(self, rhs: &FqElem) -> FqElem {
        self.assert_same_field(rhs);
        FqElem { field: self.field.clone(), val: self.field.add_raw(self.val, rhs.val) }
    }
}

impl std::ops::Sub for &FqElem {
    type Output = FqElem;
    fn sub(self, rhs: &FqElem) -> FqElem {
        self.assert_same_field(rhs);
        FqElem { field: self.field.clone(), val: self.field.sub_raw(self.val, rhs.val) }
    }
}

impl std::ops::Mul for &FqElem {
    type Output = FqElem;
    fn mul(self, rhs: &FqElem) -> FqElem {
        self.assert_same_field(rhs);
        FqElem { field: self.field.clone(), val: self.field.mul_raw(self.val, rhs.val) }
    }
}

impl std::ops::Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        FqElem { field: self.field.clone(), val: self.field.neg_raw(self.val) }
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.n0() == 1 {
            return write!(f, "{}", self.val);
        }
        let coords = self.coords();
        let mut terms: Vec<String> = Vec::new();
        for (i, &c) in coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f3_basics() {
        let f3 = FqField::new(3).unwrap();
        let two = f3.elem(2);
        assert_eq!(&two * &two, f3.one()); // 2*2 = 4 = 1
        assert_eq!(&two + &two, f3.one());
        assert_eq!(two.inv().unwrap(), two);
    }

    #[test]
    fn f4_modulus_forces_x_squared() {
        // x^2 = x + 1 under x^2 + x + 1
        let f4 = FqField::new(4).unwrap();
        let x = f4.from_coords(&[0, 1]).unwrap();
        let x1 = f4.from_coords(&[1, 1]).unwrap();
        assert_eq!(&x * &x, x1);
    }

    #[test]
    fn f5_fermat() {
        let f5 = FqField::new(5).unwrap();
        assert_eq!(f5.elem(2).pow(4).unwrap(), f5.one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f3 = FqField::new(3).unwrap();
        assert!(f3.one().checked_div(&f3.zero()).is_err());
        assert!(f3.zero().inv().is_err());
        assert!(f3.zero().pow(-1).is_err());
        assert_eq!(f3.zero().pow(0).unwrap(), f3.one());
    }

    #[test]
    fn frobenius_is_additive() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 13, 16] {
            let f = FqField::new(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let lhs = (&a + &b).frobenius();
                    let rhs = &a.frobenius() + &b.frobenius();
                    assert_eq!(lhs, rhs, "q={q}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [4u32, 8, 9, 25, 27] {
            let f = FqField::new(q).unwrap();
            let els: Vec<_> = f.elements().collect();
            for a in &els {
                // inverses
                if !a.is_zero() {
                    assert_eq!(&a.inv().unwrap() * a, f.one());
                }
                for b in &els {
                    assert_eq!(&(a + b) - b, a.clone());
                    assert_eq!(a * b, b * a);
                    for c in els.iter().step_by((q as usize / 5).max(1)) {
                        assert_eq!(&(a + b) * c, &(a * c) + &(b * c));
                        assert_eq!(&(a * b) * c, a * &(b * c));
                    }
                }
            }
        }
    }

    #[test]
    fn bad_sizes_rejected() {
        assert!(FqField::new(6).is_err());
        assert!(FqField::new(1).is_err());
        assert!(FqField::new(0).is_err());
        assert!(FqField::with_modulus(4, 2, vec![1, 1, 1]).is_err());
        // reducible modulus: x^2 + 1 = (x+1)^2 over F_2
        assert!(FqField::with_modulus(2, 2, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn user_modulus_accepted() {
        // x^2 + 1 is irreducible over F_3
        let f9 = FqField::with_modulus(3, 2, vec![1, 0, 1]).unwrap();
        let x = f9.from_coords(&[0, 1]).unwrap();
        assert_eq!(&x * &x, f9.scalar(-1));
    }
}
