//! Carlitz brackets, factorials, the Carlitz exponential/logarithm, and
//! Bernoulli-Carlitz numbers with their von Staudt-Clausen denominators.
//!
//! Everything is specialized at `x = T`: `[i] = T^{q^i} - T`,
//! `D_i = [i][i-1]^q ⋯ [1]^{q^{i-1}}`, `L_i = [i][i-1] ⋯ [1]`, and the
//! factorial `Π_j = Π_e D_e^{c_e}` over the base-q digits of `j`. `D_i` is
//! the product of all monics of degree i and `L_i` their least common
//! multiple, which is what makes `Π_j` behave like `n!`.
//!
//! `BC_j` is defined here through the generating identity
//! `z / e_C(z) = Σ_j (BC_j / Π_j) z^j` for the Carlitz exponential
//! `e_C(z) = Σ e_i z^{q^i}`, `e_i = 1/D_i`. Carlitz's denominator theorems
//! then act as an independent check on the whole computation: the reduced
//! denominator of `BC_j` must be the predicted squarefree product of
//! primes, branch by branch.

use std::fmt;

use crate::algebra::{monic_irreducibles, FqField, Poly, RatFun};
use crate::digits::PAdic;
use crate::Result;

/// `[i] = T^{q^i} - T` (for `i >= 1`).
pub fn bracket(field: &FqField, i: u32) -> Poly {
    assert!(i >= 1);
    let qi = (field.q() as u64).checked_pow(i).expect("q^i fits") as usize;
    let t_qi = Poly::monomial(&field.one(), qi);
    t_qi.sub(&Poly::t(field))
}

/// `D_i = [i]·[i-1]^q ⋯ [1]^{q^{i-1}}`; `D_0 = 1`.
pub fn big_d(field: &FqField, i: u32) -> Poly {
    let mut acc = Poly::one(field);
    for k in 1..=i {
        let e = (field.q() as u64).pow(i - k);
        acc = acc.mul(&bracket(field, k).pow_digits(e));
    }
    acc
}

/// `L_i = [i]·[i-1] ⋯ [1]`; `L_0 = 1`.
pub fn big_l(field: &FqField, i: u32) -> Poly {
    let mut acc = Poly::one(field);
    for k in 1..=i {
        acc = acc.mul(&bracket(field, k));
    }
    acc
}

/// The Carlitz factorial `Π_j` together with the digit data that builds it.
#[derive(Clone, Debug)]
pub struct FactorialData {
    pub j: u64,
    pub digits: Vec<u32>,
    pub pi_j: Poly,
}

pub fn factorial(field: &FqField, j: u64) -> FactorialData {
    let q = field.q() as u64;
    let mut digits = Vec::new();
    let mut v = j;
    while v > 0 {
        digits.push((v % q) as u32);
        v /= q;
    }
    let mut pi_j = Poly::one(field);
    for (e, &c) in digits.iter().enumerate() {
        if c > 0 {
            pi_j = pi_j.mul(&big_d(field, e as u32).pow_digits(c as u64));
        }
    }
    FactorialData { j, digits, pi_j }
}

/// `v_P(Π_j) = Σ_{e>=1} ⌊j / q^{ed}⌋` for a prime of degree `d` — the
/// function-field Legendre formula.
pub fn factorial_valuation(field: &FqField, j: u64, d: u32) -> u64 {
    let q = field.q() as u64;
    let mut acc = 0;
    let mut denom = match q.checked_pow(d) {
        Some(x) => x,
        None => return 0,
    };
    while denom <= j {
        acc += j / denom;
        match denom.checked_mul(q.pow(d)) {
            Some(next) => denom = next,
            None => break,
        }
    }
    acc
}

/// Direct-division oracle for [`factorial_valuation`]: the actual valuation
/// of `Π_j` at a chosen monic irreducible of degree `d`.
pub fn factorial_valuation_oracle(field: &FqField, j: u64, p: &Poly) -> Result<u64> {
    let f = factorial(field, j);
    Ok(f.pi_j.valuation(p)? as u64)
}

/// Coefficients of the Carlitz exponential and logarithm:
/// `e(z) = Σ e_i z^{q^i}` with `e_i = 1/D_i`, and `l(z) = Σ l_i z^{q^i}`
/// its compositional inverse among F_q-linear series, via
/// `l_i = -Σ_{k=1..i} e_k l_{i-k}^{q^k}`.
pub fn carlitz_exp_log(field: &FqField, n: u32) -> (Vec<RatFun>, Vec<RatFun>) {
    let q = field.q() as i64;
    let mut exp: Vec<RatFun> = Vec::with_capacity(n as usize + 1);
    for i in 0..=n {
        exp.push(RatFun::new(Poly::one(field), big_d(field, i)).expect("D_i nonzero"));
    }
    let mut log: Vec<RatFun> = vec![RatFun::one(field)];
    for i in 1..=n as usize {
        let mut acc = RatFun::zero(field);
        for k in 1..=i {
            let lk = log[i - k].pow(q.pow(k as u32)).expect("nonzero");
            acc = acc.add(&exp[k].mul(&lk));
        }
        log.push(acc.neg());
    }
    (exp, log)
}

/// Coefficient of `z^{q^i}` in the q-linear composition `f(g(z))`.
pub fn linear_compose_coeff(field: &FqField, f: &[RatFun], g: &[RatFun], i: usize) -> RatFun {
    let q = field.q() as i64;
    let mut acc = RatFun::zero(field);
    for k in 0..=i {
        if k < f.len() && i - k < g.len() {
            let gk = g[i - k].pow(q.pow(k as u32)).expect("nonzero");
            acc = acc.add(&f[k].mul(&gk));
        }
    }
    acc
}

/// A Bernoulli-Carlitz number and its denominator ideal.
#[derive(Clone)]
pub struct BCNumber {
    pub j: u64,
    pub value: RatFun,
    /// Monic generator of the denominator ideal (1 when `BC_j` is integral
    /// or zero).
    pub denominator_ideal: Poly,
}

impl fmt::Debug for BCNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BC_{} = {}", self.j, self.value)
    }
}

/// Shared table of the `z/e_C(z)` expansion: `coeffs[n] = BC_n / Π_n`.
pub struct BCTable {
    pub field: FqField,
    coeffs: Vec<RatFun>,
}

impl BCTable {
    /// Expand `z/e_C(z)` through `z^{j_max}`. With `s(z) = e_C(z)/z =
    /// Σ e_i z^{q^i - 1}` sparse, the inverse series satisfies
    /// `c_n = -Σ_{i>=1} e_i c_{n - (q^i - 1)}`.
    pub fn build(field: &FqField, j_max: u64) -> BCTable {
        let q = field.q() as u64;
        // e_i for q^i - 1 <= j_max
        let mut eis: Vec<(u64, RatFun)> = Vec::new();
        let mut i = 1u32;
        while q.pow(i) - 1 <= j_max {
            eis.push((q.pow(i) - 1, RatFun::new(Poly::one(field), big_d(field, i)).unwrap()));
            i += 1;
        }
        let mut coeffs: Vec<RatFun> = Vec::with_capacity(j_max as usize + 1);
        coeffs.push(RatFun::one(field));
        for n in 1..=j_max {
            let mut acc = RatFun::zero(field);
            for (off, ei) in &eis {
                if *off <= n {
                    acc = acc.add(&ei.mul(&coeffs[(n - off) as usize]));
                }
            }
            coeffs.push(acc.neg());
        }
        BCTable { field: field.clone(), coeffs }
    }

    pub fn bc(&self, j: u64) -> BCNumber {
        let value = self.coeffs[j as usize].mul_poly(&factorial(&self.field, j).pi_j);
        BCNumber { j, denominator_ideal: value.den().clone(), value }
    }
}

/// Convenience single-value form of the generating-series route.
pub fn bc_number(field: &FqField, j: u64) -> BCNumber {
    BCTable::build(field, j).bc(j)
}

/// The predicted monic generator of the denominator ideal of `BC_j`.
///
/// For `q > 2`: if `h = ℓ_p(j)/((p-1) n0)` is integral and `q^h - 1`
/// divides `j`, the product of all monic irreducibles of degree h;
/// otherwise 1. For `q = 2` the `h = 2` cases are exceptional: consistent
/// even `j` gives `T²+T+1`, consistent odd `j` gives `(T²+T)(T²+T+1)`, and
/// inconsistent `j = 2^α + 1` gives `T²+T`.
pub fn vsc_predict(field: &FqField, j: u64) -> Result<Poly> {
    if j == 0 {
        return Ok(Poly::one(field));
    }
    let p = field.p();
    let n0 = field.n0();
    let q = field.q() as u64;
    let ell_p = PAdic::from_int(j as i64, p).ell_q()?;
    let m = ((p - 1) * n0) as u64;
    let prime_product = |h: u32| -> Poly {
        monic_irreducibles(field, h as usize)
            .iter()
            .fold(Poly::one(field), |acc, f| acc.mul(f))
    };
    if field.q() == 2 {
        let h = ell_p as u32;
        let consistent = j % (2u64.pow(h) - 1).max(1) == 0;
        if consistent && h != 2 {
            return Ok(prime_product(h));
        }
        if consistent && h == 2 {
            let p2 = Poly::from_ints(field, &[1, 1, 1]);
            return Ok(if j % 2 == 0 {
                p2
            } else {
                p2.mul(&Poly::from_ints(field, &[0, 1, 1]))
            });
        }
        // inconsistent: only j = 2^α + 1 keeps a denominator
        if h == 2 && (j - 1).is_power_of_two() {
            return Ok(Poly::from_ints(field, &[0, 1, 1]));
        }
        return Ok(Poly::one(field));
    }
    if ell_p % m != 0 {
        return Ok(Poly::one(field));
    }
    let h = (ell_p / m) as u32;
    if h == 0 || j % (q.pow(h) - 1) != 0 {
        return Ok(Poly::one(field));
    }
    Ok(prime_product(h))
}

/// One row of the denominator comparison table.
#[derive(Clone, Debug)]
pub struct VscRow {
    pub j: u64,
    pub predicted: Poly,
    pub computed: Poly,
    pub matches: bool,
}

/// Compare computed and predicted denominators for every `j <= j_max`
/// (skipping exponents with trivially-zero `BC_j` keeps the table honest:
/// those rows are still emitted, with value zero and denominator 1).
pub fn vsc_verify(field: &FqField, j_max: u64) -> Result<Vec<VscRow>> {
    let table = BCTable::build(field, j_max);
    let mut rows = Vec::with_capacity(j_max as usize);
    for j in 1..=j_max {
        let bc = table.bc(j);
        let predicted = vsc_predict(field, j)?;
        // zero BC: the denominator ideal is all of A, i.e. generator 1
        let computed = bc.denominator_ideal.clone();
        let matches = predicted == computed;
        rows.push(VscRow { j, predicted, computed, matches });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monics_of_degree;

    fn f(q: u32) -> FqField {
        FqField::new(q).unwrap()
    }

    #[test]
    fn brackets_and_d() {
        let f2 = f(2);
        assert_eq!(bracket(&f2, 1), Poly::from_ints(&f2, &[0, 1, 1]));
        let d2 = big_d(&f2, 2);
        let want = bracket(&f2, 2).mul(&bracket(&f2, 1).pow_naive(2));
        assert_eq!(d2, want);
    }

    #[test]
    fn d_is_product_of_monics() {
        for q in [2u32, 3] {
            let field = f(q);
            for i in 0..=3usize {
                let prod = monics_of_degree(&field, i)
                    .fold(Poly::one(&field), |acc, m| acc.mul(&m));
                assert_eq!(big_d(&field, i as u32), prod, "q={q} i={i}");
            }
        }
    }

    #[test]
    fn l_is_lcm_of_monics() {
        for q in [2u32, 3] {
            let field = f(q);
            for i in 1..=3usize {
                let lcm = monics_of_degree(&field, i).fold(Poly::one(&field), |acc, m| {
                    let g = acc.gcd(&m);
                    acc.mul(&m.divrem(&g).unwrap().0)
                });
                assert_eq!(big_l(&field, i as u32), lcm.make_monic(), "q={q} i={i}");
            }
        }
    }

    #[test]
    fn bracket_is_product_of_irreducibles_of_dividing_degree() {
        for q in [2u32, 3] {
            let field = f(q);
            for i in 1..=4usize {
                if (q as u64).pow(i as u32) > 100 {
                    continue;
                }
                let mut prod = Poly::one(&field);
                for d in 1..=i {
                    if i % d == 0 {
                        for p in monic_irreducibles(&field, d) {
                            prod = prod.mul(&p);
                        }
                    }
                }
                assert_eq!(bracket(&field, i as u32).make_monic(), prod, "q={q} i={i}");
            }
        }
    }

    #[test]
    fn factorial_valuation_examples() {
        let f2 = f(2);
        // q=2, j=5, d=1: formula gives 2+1 = 3; and v_T(Π_5) = 3
        assert_eq!(factorial_valuation(&f2, 5, 1), 3);
        let t = Poly::t(&f2);
        assert_eq!(factorial_valuation_oracle(&f2, 5, &t).unwrap(), 3);
        // j < q^d: zero
        assert_eq!(factorial_valuation(&f2, 3, 2), 0);
        let f3 = f(3);
        assert_eq!(factorial_valuation(&f3, 9, 1), 4);
        assert_eq!(
            factorial_valuation_oracle(&f3, 9, &Poly::t(&f3)).unwrap(),
            4
        );
    }

    #[test]
    fn factorial_valuation_matches_oracle_grid() {
        // moderate slice; the acceptance suite runs the full ranges
        for q in [2u32, 3] {
            let field = f(q);
            for d in 1..=2u32 {
                let p = &monic_irreducibles(&field, d as usize)[0];
                for j in [0u64, 1, 2, 3, 7, 10, 25, 60] {
                    assert_eq!(
                        factorial_valuation(&field, j, d),
                        factorial_valuation_oracle(&field, j, p).unwrap(),
                        "q={q} d={d} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn exp_log_coefficients() {
        let f2 = f(2);
        let (exp, log) = carlitz_exp_log(&f2, 4);
        // e_1 = 1/[1]
        assert_eq!(exp[1], RatFun::new(Poly::one(&f2), bracket(&f2, 1)).unwrap());
        // l_1 = -1/[1] (reversion at first order)
        assert_eq!(log[1], RatFun::new(Poly::one(&f2), bracket(&f2, 1)).unwrap().neg());
        // mutual inversion through i = 4
        for i in 1..=4usize {
            assert!(linear_compose_coeff(&f2, &exp, &log, i).is_zero(), "e∘l at {i}");
            assert!(linear_compose_coeff(&f2, &log, &exp, i).is_zero(), "l∘e at {i}");
        }
    }

    #[test]
    fn log_denominators_are_l_i() {
        // L_i l_i ∈ A; in fact l_i = ±1/L_i
        for q in [2u32, 3] {
            let field = f(q);
            let (_, log) = carlitz_exp_log(&field, 4);
            for (i, l) in log.iter().enumerate().skip(1) {
                let li = big_l(&field, i as u32);
                let prod = l.mul_poly(&li);
                assert!(prod.is_poly(), "q={q} i={i}: {prod:?}");
                assert_eq!(prod.num().deg(), Some(0), "q={q} i={i}");
            }
        }
    }

    #[test]
    fn bc_small_values() {
        // q=3: BC_2 = 2/(T³+2T), denominator T³+2T = T(T+1)(T+2)
        let f3 = f(3);
        let bc2 = bc_number(&f3, 2);
        let want_den = Poly::from_ints(&f3, &[0, 2, 0, 1]);
        assert_eq!(bc2.denominator_ideal, want_den);
        assert_eq!(bc2.value.num(), &Poly::from_ints(&f3, &[2]));
        // BC_8 = 1/((T²+1)(T²+T+2)(T²+2T+2)), the degree-2 prime product
        let bc8 = bc_number(&f3, 8);
        let p2: Poly = monic_irreducibles(&f3, 2)
            .iter()
            .fold(Poly::one(&f3), |acc, f| acc.mul(f));
        assert_eq!(bc8.denominator_ideal, p2);
        assert_eq!(bc8.value.num(), &Poly::one(&f3));
        // BC_j = 0 for j not divisible by q-1
        for j in [1u64, 3, 5, 7, 9] {
            assert!(bc_number(&f3, j).value.is_zero(), "j={j}");
        }
    }

    #[test]
    fn vsc_q2_branches() {
        let f2 = f(2);
        // j=1: h=1 consistent -> T²+T
        assert_eq!(vsc_predict(&f2, 1).unwrap(), Poly::from_ints(&f2, &[0, 1, 1]));
        // j=3: h=2 consistent odd -> (T²+T)(T²+T+1) = T⁴+T
        assert_eq!(vsc_predict(&f2, 3).unwrap(), Poly::from_ints(&f2, &[0, 1, 0, 0, 1]));
        // j=5 = 2²+1: inconsistent -> T²+T
        assert_eq!(vsc_predict(&f2, 5).unwrap(), Poly::from_ints(&f2, &[0, 1, 1]));
        // j=6: h=2 consistent even -> T²+T+1
        assert_eq!(vsc_predict(&f2, 6).unwrap(), Poly::from_ints(&f2, &[1, 1, 1]));
        // j=10: inconsistent, not 2^α+1 -> 1
        assert_eq!(vsc_predict(&f2, 10).unwrap(), Poly::one(&f2));
    }

    #[test]
    fn vsc_q3_prediction() {
        let f3 = f(3);
        assert_eq!(vsc_predict(&f3, 2).unwrap(), Poly::from_ints(&f3, &[0, 2, 0, 1]));
        // j=8: h=2
        let p2: Poly = monic_irreducibles(&f3, 2)
            .iter()
            .fold(Poly::one(&f3), |acc, f| acc.mul(f));
        assert_eq!(vsc_predict(&f3, 8).unwrap(), p2);
        // odd j: BC_j = 0, denominator 1
        assert_eq!(vsc_predict(&f3, 5).unwrap(), Poly::one(&f3));
    }

    #[test]
    fn vsc_verify_small_ranges() {
        for q in [2u32, 3] {
            let field = f(q);
            let rows = vsc_verify(&field, 30).unwrap();
            for row in &rows {
                assert!(row.matches, "q={q} j={} pred={} got={}", row.j, row.predicted, row.computed);
            }
        }
    }

    #[test]
    fn orbit_invariance_of_denominator_valuations() {
        // q=3, h=1: v_P(denominator) is constant on base-3 digit multisets
        use std::collections::BTreeMap;
        let f3 = f(3);
        let table = BCTable::build(&f3, 40);
        let p1 = Poly::t(&f3);
        let mut by_orbit: BTreeMap<Vec<u32>, Vec<u64>> = BTreeMap::new();
        for j in (2..=40u64).step_by(2) {
            let mut digits: Vec<u32> = PAdic::from_int(j as i64, 3)
                .explicit_digits()
                .iter()
                .copied()
                .filter(|&d| d != 0)
                .collect();
            digits.sort_unstable();
            let v = table.bc(j).denominator_ideal.valuation(&p1).unwrap() as u64;
            by_orbit.entry(digits).or_default().push(v);
        }
        for (orbit, vals) in by_orbit {
            assert!(vals.windows(2).all(|w| w[0] == w[1]), "orbit {orbit:?}: {vals:?}");
        }
    }
}
