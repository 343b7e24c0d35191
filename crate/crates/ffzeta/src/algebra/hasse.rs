//! Root multiplicities through Hasse (divided-power) derivatives.
//!
//! In characteristic p the ordinary derivative of `(X-a)^p` vanishes
//! identically, so it cannot see multiplicities >= p. The k-th Hasse
//! derivative `D^{(k)}W = Σ C(i,k) w_i X^{i-k}` can: the multiplicity of
//! `a` in `W` is the least k with `D^{(k)}W(a) != 0`.

use crate::{Error, Result};

/// The coefficient-ring interface the multiplicity computation needs.
pub trait HasseRing: Clone {
    fn char_p(&self) -> u32;
    fn is_zero(&self) -> bool;
    /// Multiplicative identity of the ambient ring.
    fn one_like(&self) -> Self;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    /// `k * self` for a nonnegative integer k (implementations reduce mod p).
    fn scale(&self, k: u64) -> Self;
}

/// Binomial coefficient mod p by Lucas' theorem.
pub fn binom_mod_p(n: u64, k: u64, p: u64) -> u64 {
    let mut n = n;
    let mut k = k;
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (dn, dk) = (n % p, k % p);
        if dk > dn {
            return 0;
        }
        // C(dn, dk) mod p with dn, dk < p <= 97
        let mut c = 1u64;
        for i in 0..dk {
            c = c * (dn - i) % p;
            c = c * mod_inv_u64(i + 1, p) % p;
        }
        acc = acc * c % p;
        n /= p;
        k /= p;
    }
    acc
}

fn mod_inv_u64(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Largest m with `(X - a)^m | W`, for `W = Σ coeffs[i] X^i` nonzero.
pub fn hasse_multiplicity<R: HasseRing>(coeffs: &[R], a: &R) -> Result<u32> {
    let mut w: Vec<&R> = coeffs.iter().collect();
    while w.last().map_or(false, |c| c.is_zero()) {
        w.pop();
    }
    if w.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let n = w.len() - 1;
    let p = a.char_p() as u64;
    let mut pows: Vec<R> = Vec::with_capacity(n + 1);
    let mut acc = a.one_like();
    for _ in 0..=n {
        pows.push(acc.clone());
        acc = acc.ring_mul(a);
    }
    for k in 0..=n {
        let mut d: Option<R> = None;
        for (i, wi) in w.iter().enumerate().skip(k) {
            if wi.is_zero() {
                continue;
            }
            let c = binom_mod_p(i as u64, k as u64, p);
            if c == 0 {
                continue;
            }
            let term = wi.scale(c).ring_mul(&pows[i - k]);
            d = Some(match d {
                None => term,
                Some(acc) => acc.ring_add(&term),
            });
        }
        if let Some(d) = d {
            if !d.is_zero() {
                return Ok(k as u32);
            }
        }
    }
    unreachable!("the top Hasse derivative is the leading coefficient")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::FqField;
    use crate::algebra::poly::Poly;

    #[test]
    fn char_two_double_root() {
        // W = (X-1)^2 = X^2 + 1 over F_2; the ordinary derivative is 0.
        let f2 = FqField::new(2).unwrap();
        let w = [f2.one(), f2.zero(), f2.one()];
        assert_eq!(hasse_multiplicity(&w, &f2.one()).unwrap(), 2);
    }

    #[test]
    fn simple_root_at_zero() {
        // W = X^2 + X over F_2 at a = 0
        let f2 = FqField::new(2).unwrap();
        let w = [f2.zero(), f2.one(), f2.one()];
        assert_eq!(hasse_multiplicity(&w, &f2.zero()).unwrap(), 1);
    }

    #[test]
    fn cubic_root_with_poly_coefficients() {
        // W = (X+1)^3 (X+T) over F_2[T] at a = 1; oracle below is synthetic
        // division by (X - 1).
        let f2 = FqField::new(2).unwrap();
        let one = Poly::one(&f2);
        let t = Poly::t(&f2);
        // (X+1)^3 = X^3 + 3X^2 + 3X + 1 -> X^3 + X^2 + X + 1 over F_2
        let cube = [one.clone(), one.clone(), one.clone(), one.clone()];
        // multiply by (X + T)
        let mut w = vec![Poly::zero(&f2); 5];
        for (i, c) in cube.iter().enumerate() {
            w[i] = w[i].add(&c.mul(&t));
            w[i + 1] = w[i + 1].add(c);
        }
        assert_eq!(hasse_multiplicity(&w, &one).unwrap(), 3);

        // synthetic-division oracle: divide by (X - 1) until remainder != 0
        let mut m = 0;
        let mut cur: Vec<Poly> = w.clone();
        loop {
            // divide Σ c_i X^i by (X - 1): Horner from the top
            let mut quot: Vec<Poly> = Vec::new();
            let mut carry = Poly::zero(&f2);
            for c in cur.iter().rev() {
                carry = carry.add(c);
                quot.push(carry.clone());
            }
            let rem = quot.pop().unwrap();
            if !rem.is_zero() {
                break;
            }
            quot.reverse();
            cur = quot;
            m += 1;
        }
        assert_eq!(m, 3);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let f2 = FqField::new(2).unwrap();
        let w = [f2.zero(), f2.zero()];
        assert!(matches!(hasse_multiplicity(&w, &f2.one()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn multiplying_by_linear_factor_increments() {
        // hasse(W * (X - a), a) = hasse(W, a) + 1 on random-ish W over F_3
        let f3 = FqField::new(3).unwrap();
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..100 {
            let deg = (next() % 5) as usize + 1;
            let mut w: Vec<_> = (0..=deg).map(|_| f3.elem((next() % 3) as u32)).collect();
            if w.iter().all(|c| c.is_zero()) {
                w[deg] = f3.one();
            }
            let a = f3.elem((next() % 3) as u32);
            let base = hasse_multiplicity(&w, &a).unwrap();
            // W * (X - a)
            let mut prod = vec![f3.zero(); w.len() + 1];
            for (i, c) in w.iter().enumerate() {
                prod[i] = &prod[i] + &(c * &(-&a));
                prod[i + 1] = &prod[i + 1] + c;
            }
            assert_eq!(hasse_multiplicity(&prod, &a).unwrap(), base + 1);
        }
    }

    #[test]
    fn lucas() {
        assert_eq!(binom_mod_p(10, 2, 3), 0); // 45 mod 3
        assert_eq!(binom_mod_p(5, 2, 3), 1); // 10 mod 3
        assert_eq!(binom_mod_p(13, 4, 3), 1);
        assert_eq!(binom_mod_p(7, 3, 2), 1);
        assert_eq!(binom_mod_p(6, 3, 2), 0); // 20 mod 2
    }
}
