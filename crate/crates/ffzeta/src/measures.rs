//! Divided power series over `F_q` and their digit-permutation
//! automorphisms.
//!
//! A divided power series is a formal sum `Σ c_i z^i/i!` with the product
//! `(z^i/i!)(z^j/j!) = C(i+j, i) z^{i+j}/(i+j)!`; the binomial coefficient
//! is an integer, so the rule makes sense in characteristic p. Convolution
//! algebras of `F_q[[u]]`-valued measures are isomorphic to this algebra,
//! which is the form in which the digit symmetries act on measures: the
//! relabeling `z^i/i! -> z^{σ(i)}/σ(i)!` along a base-p digit permutation
//! is an algebra automorphism, because `C(i+j,i) ≡ C(σi+σj, σi) (mod p)`
//! digit by digit (p-adic carries happen for `i+j` exactly when they happen
//! for `σi + σj`).

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{FqElem, FqField};
use crate::digits::{DigitPerm, PAdic};
use crate::laurent::binom_padic;
use crate::{Error, Result};

/// `Σ c_i z^i/i!`, truncated at exponent `window` (exclusive), sparse.
#[derive(Clone, PartialEq)]
pub struct DividedPowerSeries {
    field: FqField,
    coeffs: BTreeMap<u64, u16>,
    window: u64,
}

impl DividedPowerSeries {
    pub fn zero(field: &FqField, window: u64) -> DividedPowerSeries {
        DividedPowerSeries { field: field.clone(), coeffs: BTreeMap::new(), window }
    }

    pub fn term(c: &FqElem, i: u64, window: u64) -> DividedPowerSeries {
        let mut out = DividedPowerSeries::zero(c.field(), window);
        out.set(i, c.clone());
        out
    }

    pub fn from_terms(field: &FqField, terms: &[(u64, i64)], window: u64) -> DividedPowerSeries {
        let mut out = DividedPowerSeries::zero(field, window);
        for &(i, c) in terms {
            out.set(i, field.scalar(c));
        }
        out
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn set(&mut self, i: u64, c: FqElem) {
        if i >= self.window {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, c.val());
        }
    }

    pub fn coeff(&self, i: u64) -> FqElem {
        self.field.elem(*self.coeffs.get(&i).unwrap_or(&0) as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn add(&self, rhs: &DividedPowerSeries) -> DividedPowerSeries {
        let window = self.window.min(rhs.window);
        let mut out = DividedPowerSeries::zero(&self.field, window);
        for (&i, &c) in self.coeffs.iter().chain(rhs.coeffs.iter()) {
            if i < window {
                let cur = out.coeff(i);
                out.set(i, &cur + &self.field.elem(c as u32));
            }
        }
        out
    }
}

/// Product truncated at the shared window: the divided-power rule applies
/// `C(i+j, i) mod p` termwise.
pub fn dps_mul(f: &DividedPowerSeries, g: &DividedPowerSeries, window: u64) -> DividedPowerSeries {
    let field = f.field().clone();
    let window = window.min(f.window).min(g.window);
    let p = field.p() as u64;
    let mut out = DividedPowerSeries::zero(&field, window);
    for (&i, &a) in &f.coeffs {
        for (&j, &b) in &g.coeffs {
            let e = i + j;
            if e >= window {
                continue;
            }
            let c = crate::algebra::binom_mod_p(e, i, p);
            if c == 0 {
                continue;
            }
            let term = field.mul_raw(field.mul_raw(a, b), field.scalar(c as i64).val());
            let cur = out.coeff(e);
            out.set(e, &cur + &field.elem(term as u32));
        }
    }
    out
}

/// The automorphism induced by a base-p digit permutation:
/// `z^i/i! -> z^{σ_*(i)}/σ_*(i)!`. Errors when some populated exponent maps
/// outside the window (the error names the window that would suffice).
pub fn dps_automorphism(
    sigma: &DigitPerm,
    f: &DividedPowerSeries,
    window: u64,
) -> Result<DividedPowerSeries> {
    let field = f.field().clone();
    let p = field.p();
    let window = window.min(f.window);
    let mut out = DividedPowerSeries::zero(&field, window);
    let mut required = window;
    for (&i, &c) in &f.coeffs {
        let img = sigma
            .rho_star(&PAdic::from_int(i as i64, p))
            .to_int()
            .ok_or_else(|| Error::Precondition(format!("image of exponent {i} overflows")))?
            as u64;
        if img >= window {
            required = required.max(img + 1);
            continue;
        }
        out.set(img, field.elem(c as u32));
    }
    if required > window {
        return Err(Error::WindowOverflow { required });
    }
    Ok(out)
}

impl fmt::Display for DividedPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&i, &c) in &self.coeffs {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let ce = self.field.elem(c as u32);
            if ce.is_one() {
                write!(f, "z^{i}/{i}!")?;
            } else {
                write!(f, "{ce}·z^{i}/{i}!")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DividedPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Seeded self-test used by both the test suite and the CLI: the
/// automorphism property on random pairs plus the binomial symmetries that
/// drive it. Returns (trials run, failures).
pub fn selftest(p: u32, trials: u64, window: u64, seed: u64) -> Result<(u64, u64)> {
    use rand::prelude::*;
    let field = FqField::new(p)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0u64;
    let digit_span = {
        let mut d = 0;
        while (p as u64).pow(d) < window {
            d += 1;
        }
        d.max(1)
    };
    for _ in 0..trials {
        // permutation of the digit positions that keeps images inside the
        // window: permute only positions below digit_span - 1
        let span = digit_span.saturating_sub(1).max(1);
        let mut targets: Vec<u32> = (0..span).collect();
        targets.shuffle(&mut rng);
        let sigma = DigitPerm::from_pairs(&(0..span).zip(targets).collect::<Vec<_>>()).unwrap();

        let rand_series = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut s = DividedPowerSeries::zero(&field, window);
            // keep exponents in the permutable range
            let bound = (p as u64).pow(span).min(window);
            for _ in 0..rng.gen_range(1..6) {
                let i = rng.gen_range(0..bound);
                let c = rng.gen_range(0..p);
                s.set(i, field.elem(c));
            }
            s
        };
        let a = rand_series(&mut rng);
        let b = rand_series(&mut rng);

        // Cor binom5: σ(ab) = σ(a)σ(b)
        let lhs = dps_automorphism(&sigma, &dps_mul(&a, &b, window), window)?;
        let rhs = dps_mul(
            &dps_automorphism(&sigma, &a, window)?,
            &dps_automorphism(&sigma, &b, window)?,
            window,
        );
        if lhs != rhs {
            failures += 1;
            continue;
        }

        // Prop binom1: C(y,k) ≡ C(σy, σk) (mod p)
        let y = rng.gen_range(0..(p as i64).pow(span)) as i64;
        let k = rng.gen_range(0..(p as u64).pow(span));
        let sy = sigma.rho_star(&PAdic::from_int(y, p));
        let sk = sigma.rho_star(&PAdic::from_int(k as i64, p)).to_int().unwrap() as u64;
        if binom_padic(&PAdic::from_int(y, p), k) != binom_padic(&sy, sk) {
            failures += 1;
            continue;
        }

        // Prop binom3 (carry symmetry): C(i+j,i) ≡ C(σi+σj, σi)
        let i = rng.gen_range(0..(p as u64).pow(span) / 2);
        let j = rng.gen_range(0..(p as u64).pow(span) / 2);
        let si = sigma.rho_star(&PAdic::from_int(i as i64, p)).to_int().unwrap() as u64;
        let sj = sigma.rho_star(&PAdic::from_int(j as i64, p)).to_int().unwrap() as u64;
        let c1 = crate::algebra::binom_mod_p(i + j, i, p as u64);
        let c2 = crate::algebra::binom_mod_p(si + sj, si, p as u64);
        if c1 != c2 {
            failures += 1;
        }
    }
    Ok((trials, failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> FqField {
        FqField::new(q).unwrap()
    }

    #[test]
    fn product_rule_examples() {
        // (z/1!)(z/1!) = C(2,1) z²/2! = 0 in characteristic 2
        let f2 = f(2);
        let z = DividedPowerSeries::term(&f2.one(), 1, 16);
        assert!(dps_mul(&z, &z, 16).is_zero());

        // over F_3: (z/1!)(z²/2!) = C(3,1) z³/3! = 0
        let f3 = f(3);
        let z1 = DividedPowerSeries::term(&f3.one(), 1, 27);
        let z2 = DividedPowerSeries::term(&f3.one(), 2, 27);
        assert!(dps_mul(&z1, &z2, 27).is_zero());

        // over F_2: (z/1!)(z³/3!) = C(4,1) z⁴/4! = 0,
        // but (z/1!)(z²/2!) = C(3,1) z³/3! = z³/3!
        let z1 = DividedPowerSeries::term(&f2.one(), 1, 16);
        let z3 = DividedPowerSeries::term(&f2.one(), 3, 16);
        assert!(dps_mul(&z1, &z3, 16).is_zero());
        let z2 = DividedPowerSeries::term(&f2.one(), 2, 16);
        let prod = dps_mul(&z1, &z2, 16);
        assert_eq!(prod, DividedPowerSeries::term(&f2.one(), 3, 16));
    }

    #[test]
    fn automorphism_examples() {
        let f2 = f(2);
        let a = DividedPowerSeries::from_terms(&f2, &[(1, 1), (2, 1)], 16);
        // identity
        let id = DigitPerm::identity();
        assert_eq!(dps_automorphism(&id, &a, 16).unwrap(), a);

        // σ = swap(0,1) on f = z/1!, g = z²/2!: fg = z³/3! is fixed
        let sigma = DigitPerm::swap(0, 1);
        let zf = DividedPowerSeries::term(&f2.one(), 1, 16);
        let zg = DividedPowerSeries::term(&f2.one(), 2, 16);
        let lhs = dps_automorphism(&sigma, &dps_mul(&zf, &zg, 16), 16).unwrap();
        let rhs = dps_mul(
            &dps_automorphism(&sigma, &zf, 16).unwrap(),
            &dps_automorphism(&sigma, &zg, 16).unwrap(),
            16,
        );
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, dps_mul(&zf, &zg, 16));
    }

    #[test]
    fn window_overflow_is_reported() {
        let f2 = f(2);
        let a = DividedPowerSeries::term(&f2.one(), 2, 8);
        let sigma = DigitPerm::swap(1, 4); // 2 -> 16
        match dps_automorphism(&sigma, &a, 8) {
            Err(Error::WindowOverflow { required }) => assert_eq!(required, 17),
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn automorphisms_compose() {
        let f3 = f(3);
        let a = DividedPowerSeries::from_terms(&f3, &[(1, 2), (4, 1), (7, 2)], 243);
        let s1 = DigitPerm::parse_cycles("(0 1 2)").unwrap();
        let s2 = DigitPerm::swap(1, 3);
        let composed = s1.compose(&s2);
        let lhs = dps_automorphism(&composed, &a, 243).unwrap();
        let rhs = dps_automorphism(&s1, &dps_automorphism(&s2, &a, 243).unwrap(), 243).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn automorphism_respects_addition() {
        let f2 = f(2);
        let a = DividedPowerSeries::from_terms(&f2, &[(1, 1), (5, 1)], 64);
        let b = DividedPowerSeries::from_terms(&f2, &[(2, 1), (5, 1)], 64);
        let sigma = DigitPerm::parse_cycles("(0 2)(1 3)").unwrap();
        let lhs = dps_automorphism(&sigma, &a.add(&b), 64).unwrap();
        let rhs = dps_automorphism(&sigma, &a, 64)
            .unwrap()
            .add(&dps_automorphism(&sigma, &b, 64).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn seeded_selftest_passes() {
        for p in [2u32, 3] {
            let window = (p as u64).pow(5);
            let (trials, failures) = selftest(p, 500, window, 99).unwrap();
            assert_eq!(trials, 500);
            assert_eq!(failures, 0, "p={p}");
        }
    }
}
