//! The classical Bernoulli side, in exact rational arithmetic throughout:
//! von Staudt-Clausen denominators, the Adams and Kummer congruences, the
//! digit-stability window, and Euler's ratio identity reduced to an exact
//! rational statement (every power of π cancels before anything is
//! compared).

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::bigrat::{big_binomial, congruent_mod_p_pow, factorial, BigRat};
use crate::{Error, Result};

/// Exact table of `B_0 .. B_nmax` from the defining recurrence
/// `Σ_k C(n+1,k) B_k = 0`.
pub struct BernoulliCache {
    table: Vec<BigRat>,
}

impl BernoulliCache {
    pub fn new(nmax: u64) -> BernoulliCache {
        let mut table: Vec<BigRat> = Vec::with_capacity(nmax as usize + 1);
        table.push(BigRat::one());
        for n in 1..=nmax {
            let mut acc = BigRat::zero();
            for (k, bk) in table.iter().enumerate() {
                if !bk.is_zero() {
                    acc = acc + BigRat::from_bigint(big_binomial(n + 1, k as u64)) * bk.clone();
                }
            }
            let coeff = BigRat::from_bigint(big_binomial(n + 1, n)).recip();
            table.push(-&(coeff * acc));
        }
        BernoulliCache { table }
    }

    pub fn nmax(&self) -> u64 {
        self.table.len() as u64 - 1
    }

    pub fn get(&self, n: u64) -> &BigRat {
        &self.table[n as usize]
    }
}

/// Denominator predicted by von Staudt-Clausen: the product of the primes
/// `p` with `(p-1) | n`, for even `n >= 2`.
pub fn vsc_classical(n: u64) -> BigInt {
    assert!(n >= 2 && n % 2 == 0, "n must be even and >= 2");
    let mut acc = BigInt::one();
    for p in 2..=(n + 1) {
        if is_prime_u64(p) && n % (p - 1) == 0 {
            acc *= BigInt::from(p);
        }
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
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

/// Adams: for even `n` with `(p-1) ∤ n`, `v_p(B_n) >= v_p(n)`.
pub fn adams_check(cache: &BernoulliCache, n: u64, p: u32) -> Result<bool> {
    if n % 2 != 0 || n % (p as u64 - 1) == 0 {
        return Err(Error::Precondition(format!(
            "Adams needs n even with (p-1) ∤ n; got n={n}, p={p}"
        )));
    }
    let bn = cache.get(n);
    let vp_n = crate::algebra::bigrat::int_v_p(&BigInt::from(n), p);
    Ok(bn.v_p(p).map_or(true, |v| v >= vp_n))
}

/// Kummer: for even `i, j > 0` with `(p-1) ∤ i` and
/// `i ≡ j (mod p^{b-1}(p-1))`,
/// `(1 - p^{i-1}) B_i/i ≡ (1 - p^{j-1}) B_j/j (mod p^b)`.
pub fn kummer_check(cache: &BernoulliCache, i: u64, j: u64, p: u32, b: u32) -> Result<bool> {
    let pm1 = p as u64 - 1;
    let modulus = pm1 * (p as u64).pow(b - 1);
    if i == 0 || j == 0 || i % 2 != 0 || j % 2 != 0 || i % pm1 == 0 || i % modulus != j % modulus
    {
        return Err(Error::Precondition(format!(
            "Kummer needs even i,j > 0, (p-1) ∤ i, i ≡ j mod p^{{b-1}}(p-1); got i={i} j={j} p={p} b={b}"
        )));
    }
    let side = |n: u64| -> BigRat {
        let euler = BigRat::one() - BigRat::from_bigint(BigInt::from(p).pow(n as u32 - 1));
        let bn_over_n = cache.get(n) / &BigRat::from_int(n as i64);
        euler * bn_over_n
    };
    Ok(congruent_mod_p_pow(&side(i), &side(j), p, b))
}

/// Outcome of the digit-stability window for one `(n, p)`.
#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub n: u64,
    pub p: u32,
    pub t: u32,
    /// Values m ≡ n mod (p-1)p^t checked, with the common valuation.
    pub window: Vec<u64>,
    pub v_p: i64,
    pub all_equal: bool,
}

/// With `t = max(v_p(n), v_p(B_n/n)) + 1`, every `m ≡ n (mod (p-1)p^t)`
/// has `v_p(B_m) = v_p(B_n)`; verified over the cache range.
pub fn stability_check(cache: &BernoulliCache, n: u64, p: u32) -> Result<StabilityReport> {
    if p == 2 || n % 2 != 0 {
        return Err(Error::Precondition("stability needs p odd and n even".into()));
    }
    let vp_n = crate::algebra::bigrat::int_v_p(&BigInt::from(n), p);
    let bn_over_n = cache.get(n) / &BigRat::from_int(n as i64);
    let t0 = vp_n.max(bn_over_n.v_p(p).unwrap_or(0));
    let t = t0 as u32 + 1;
    let v_ref = cache.get(n).v_p(p).unwrap_or(i64::MAX);
    let step = (p as u64 - 1) * (p as u64).pow(t);
    let mut window = Vec::new();
    let mut all_equal = true;
    let mut m = n % step;
    if m == 0 {
        m = step;
    }
    while m <= cache.nmax() {
        if m != n && m % 2 == 0 {
            window.push(m);
            let v = cache.get(m).v_p(p).unwrap_or(i64::MAX);
            all_equal &= v == v_ref;
        }
        m += step;
    }
    Ok(StabilityReport { n, p, t, window, v_p: v_ref, all_equal })
}

/// Euler's ratio `ζ*(1-n)/ζ*(n)` as an exact rational identity, with
/// `ζ*(s) = (1 - 2^{1-s}) ζ(s)`, `ζ(1-n) = -B_n/n` and
/// `ζ(n) = (-1)^{n/2+1} (2π)^n B_n / (2 n!)` for even n. The π-powers on
/// both sides cancel, leaving
/// `ζ*(1-n) π^n / ζ*(n) = (-1)^{n/2+1} (2^n - 1)(n-1)! / (2^{n-1} - 1)`.
/// For odd `n >= 3` the left side is 0 because `B_n = 0`.
pub fn euler_ratio_check(cache: &BernoulliCache, n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::Precondition("need n >= 2".into()));
    }
    if n % 2 == 1 {
        // trivial-zero branch: ζ*(1-n) = (1-2^n)(-B_n/n) = 0
        return Ok(cache.get(n).is_zero());
    }
    let two = BigRat::from_int(2);
    let bn = cache.get(n).clone();
    let sign = if (n / 2 + 1) % 2 == 0 { BigRat::from_int(1) } else { BigRat::from_int(-1) };
    // lhs = ζ*(1-n) / (ζ*(n)/π^n)
    let zeta_star_1mn = (BigRat::one() - two.pow(n as i32)) * (-&(bn.clone() / &BigRat::from_int(n as i64)));
    let zeta_n_over_pi_n =
        &(&sign * &two.pow(n as i32)) * &(bn / &(BigRat::from_int(2) * BigRat::from_bigint(factorial(n))));
    let one_minus_2_pow_1mn = BigRat::one() - two.pow(1 - n as i32);
    let lhs = &zeta_star_1mn / &(one_minus_2_pow_1mn * zeta_n_over_pi_n);
    // rhs = (-1)^{n/2+1} (2^n - 1)(n-1)! / (2^{n-1} - 1)
    let rhs = &(&sign * &(two.pow(n as i32) - BigRat::one()))
        * &(BigRat::from_bigint(factorial(n - 1)) / &(two.pow(n as i32 - 1) - BigRat::one()));
    Ok(lhs == rhs)
}
