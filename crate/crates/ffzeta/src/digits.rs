//! q-adic digit streams and the digit-permutation group.
//!
//! A [`PAdic`] models the elements of `Z_p` whose base-q digit stream is
//! eventually constant: finitely many explicit digits followed by a repeated
//! tail digit. That covers exactly the integers (tail 0 for nonnegative,
//! tail q-1 for negative, since `-1 = (q-1) + (q-1)q + (q-1)q^2 + ...`) plus
//! enough of `Z_p` for every computation here, while keeping all operations
//! exact.
//!
//! A [`DigitPerm`] is a finite-support permutation `ρ` of the digit
//! positions {0,1,2,...}. It acts on digit streams by `ρ_*(Σ c_i q^i) =
//! Σ c_i q^{ρ(i)}`, and through the conjugated action `ρ̂_*(x) = -ρ_*(-x)`.
//! Digit moves preserve the digit multiset, so `ρ_*` stabilizes both the
//! nonnegative and the nonpositive integers, preserves digit sums of
//! nonnegative integers, and fixes values mod q-1.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// An eventually-constant base-q digit stream.
///
/// Canonical form: explicit digits carry no trailing copies of the tail
/// digit. `q` may be any prime power >= 2 (the prime `p` is derived).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PAdic {
    q: u32,
    p: u32,
    digits: Vec<u32>,
    tail: u32,
}

fn smallest_prime_factor(q: u32) -> u32 {
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return d;
        }
        d += 1;
    }
    q
}

impl PAdic {
    pub fn new(q: u32, digits: Vec<u32>, tail: u32) -> Result<PAdic> {
        if q < 2 {
            return Err(Error::BadFieldSize(q as u64));
        }
        let p = smallest_prime_factor(q);
        let mut x = q;
        while x % p == 0 {
            x /= p;
        }
        if x != 1 {
            return Err(Error::BadFieldSize(q as u64));
        }
        if tail >= q || digits.iter().any(|&d| d >= q) {
            return Err(Error::Parse(format!("digit out of range for base {q}")));
        }
        let mut v = PAdic { q, p, digits, tail };
        v.normalize();
        Ok(v)
    }

    pub fn from_int(n: i64, q: u32) -> PAdic {
        let p = smallest_prime_factor(q);
        if n >= 0 {
            let mut digits = Vec::new();
            let mut m = n as u64;
            while m > 0 {
                digits.push((m % q as u64) as u32);
                m /= q as u64;
            }
            PAdic { q, p, digits, tail: 0 }
        } else {
            // -1 is the constant (q-1) stream; other negatives peel digits
            // until the running value reaches -1
            let mut m = n;
            let mut digits = Vec::new();
            while m != -1 {
                let d = m.rem_euclid(q as i64) as u32;
                digits.push(d);
                m = (m - d as i64) / q as i64;
            }
            let mut v = PAdic { q, p, digits, tail: q - 1 };
            v.normalize();
            v
        }
    }

    fn normalize(&mut self) {
        while self.digits.last() == Some(&self.tail) {
            self.digits.pop();
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn tail(&self) -> u32 {
        self.tail
    }

    /// Explicit digits (positions beyond return the tail).
    pub fn explicit_digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn digit(&self, i: usize) -> u32 {
        self.digits.get(i).copied().unwrap_or(self.tail)
    }

    /// Base-p digit at position i (each base-q digit expands to n0 base-p
    /// digits, and the tail expands tailwise: q-1 becomes p-1 repeated).
    pub fn digit_base_p(&self, i: usize) -> u32 {
        if self.q == self.p {
            return self.digit(i);
        }
        let n0 = {
            let mut n = 0;
            let mut x = self.q;
            while x > 1 {
                x /= self.p;
                n += 1;
            }
            n
        };
        let d = self.digit(i / n0);
        (d / self.p.pow((i % n0) as u32)) % self.p
    }

    pub fn is_nonneg_int(&self) -> bool {
        self.tail == 0
    }

    pub fn is_int(&self) -> bool {
        self.tail == 0 || self.tail == self.q - 1
    }

    pub fn is_zero(&self) -> bool {
        self.tail == 0 && self.digits.is_empty()
    }

    /// Exact integer value, if this is an integer that fits in i64.
    pub fn to_int(&self) -> Option<i64> {
        if !self.is_int() {
            return None;
        }
        if self.tail == 0 {
            let mut acc: i64 = 0;
            for &d in self.digits.iter().rev() {
                acc = acc.checked_mul(self.q as i64)?.checked_add(d as i64)?;
            }
            Some(acc)
        } else {
            // x = Σ_{i<L} d_i q^i - q^L
            let l = self.digits.len() as u32;
            let mut acc: i64 = 0;
            for &d in self.digits.iter().rev() {
                acc = acc.checked_mul(self.q as i64)?.checked_add(d as i64)?;
            }
            let ql = (self.q as i64).checked_pow(l)?;
            acc.checked_sub(ql)
        }
    }

    pub fn negate(&self) -> PAdic {
        // digitwise complement against q-1 (giving -x-1), then add 1
        let mut out = Vec::with_capacity(self.digits.len() + 1);
        let mut carry = 1u32;
        for &d in &self.digits {
            let c = self.q - 1 - d + carry;
            out.push(c % self.q);
            carry = c / self.q;
        }
        let comp_tail = self.q - 1 - self.tail;
        let tail = if carry == 1 {
            if comp_tail == self.q - 1 {
                // the +1 ripples through the entire tail: ...(q-1)(q-1)+1 = 0
                0
            } else {
                out.push(comp_tail + 1);
                comp_tail
            }
        } else {
            comp_tail
        };
        let mut v = PAdic { q: self.q, p: self.p, digits: out, tail };
        v.normalize();
        v
    }

    /// Digit sum `ℓ_q`; defined for nonnegative integers only.
    pub fn ell_q(&self) -> Result<u64> {
        if self.tail != 0 {
            return Err(Error::NotNonnegInteger { tail: self.tail });
        }
        Ok(self.digits.iter().map(|&d| d as u64).sum())
    }

    /// The q-adic collapse: nonzero digits move to positions 0,1,2,...
    /// keeping their order. Requires finite support (tail 0).
    pub fn collapse(&self) -> Result<PAdic> {
        if self.tail != 0 {
            return Err(Error::InfiniteSupport);
        }
        let digits: Vec<u32> = self.digits.iter().copied().filter(|&d| d != 0).collect();
        Ok(PAdic { q: self.q, p: self.p, digits, tail: 0 })
    }

    /// Positions of the nonzero digits, in increasing order (tail 0 only).
    pub fn support(&self) -> Result<Vec<usize>> {
        if self.tail != 0 {
            return Err(Error::InfiniteSupport);
        }
        Ok(self
            .digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, _)| i)
            .collect())
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.to_int() {
            return write!(f, "{n}");
        }
        write!(f, "(")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ",{}...)_{}", self.tail, self.q)
    }
}

impl fmt::Debug for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite-support permutation of the digit positions {0,1,2,...}.
///
/// Only the non-fixed points are stored. The full permutation group of the
/// positions has the cardinality of the continuum; the finite-support
/// subgroup is what every integer statement needs, because integers have
/// finitely many digits differing from their tail.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DigitPerm {
    map: BTreeMap<u32, u32>,
}

impl DigitPerm {
    pub fn identity() -> DigitPerm {
        DigitPerm { map: BTreeMap::new() }
    }

    /// Swap positions i and j.
    pub fn swap(i: u32, j: u32) -> DigitPerm {
        let mut map = BTreeMap::new();
        if i != j {
            map.insert(i, j);
            map.insert(j, i);
        }
        DigitPerm { map }
    }

    /// Build from (from, to) pairs; must describe a bijection.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<DigitPerm> {
        let mut map = BTreeMap::new();
        for &(a, b) in pairs {
            if map.insert(a, b).is_some() {
                return Err(Error::BadPermutation(format!("position {a} mapped twice")));
            }
        }
        let sources: std::collections::BTreeSet<u32> = map.keys().copied().collect();
        let targets: std::collections::BTreeSet<u32> = map.values().copied().collect();
        if sources != targets {
            return Err(Error::BadPermutation(
                "moved positions must map onto themselves".into(),
            ));
        }
        let mut p = DigitPerm { map };
        p.normalize();
        Ok(p)
    }

    /// Parse cycle notation: `"(0 1 2)(4 5)"`.
    pub fn parse_cycles(s: &str) -> Result<DigitPerm> {
        let s = s.trim();
        if s.is_empty() || s == "()" || s == "id" {
            return Ok(DigitPerm::identity());
        }
        let mut pairs = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parens in {s:?}")))?
                + open;
            let inner = &rest[open + 1..close];
            let xs: Vec<u32> = inner
                .split(|c: char| c == ' ' || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?;
            for w in 0..xs.len() {
                let next = xs[(w + 1) % xs.len()];
                if xs.len() > 1 {
                    pairs.push((xs[w], next));
                }
            }
            rest = &rest[close + 1..];
        }
        DigitPerm::from_pairs(&pairs)
    }

    fn normalize(&mut self) {
        self.map.retain(|k, v| k != v);
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Where position i goes.
    pub fn apply(&self, i: u32) -> u32 {
        self.map.get(&i).copied().unwrap_or(i)
    }

    /// Largest non-fixed position, if any.
    pub fn max_moved(&self) -> Option<u32> {
        self.map.keys().next_back().copied()
    }

    pub fn pairs(&self) -> Vec<(u32, u32)> {
        self.map.iter().map(|(&a, &b)| (a, b)).collect()
    }

    pub fn inverse(&self) -> DigitPerm {
        let map = self.map.iter().map(|(&a, &b)| (b, a)).collect();
        DigitPerm { map }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &DigitPerm) -> DigitPerm {
        let mut map = BTreeMap::new();
        let support: std::collections::BTreeSet<u32> =
            self.map.keys().chain(other.map.keys()).copied().collect();
        for &i in &support {
            map.insert(i, self.apply(other.apply(i)));
        }
        let mut p = DigitPerm { map };
        p.normalize();
        p
    }

    /// The action `ρ_*` on digit streams: digit c_i moves to position ρ(i).
    pub fn rho_star(&self, x: &PAdic) -> PAdic {
        let bound = self
            .max_moved()
            .map_or(x.digits.len(), |m| (m as usize + 1).max(x.digits.len()));
        let mut out = vec![x.tail; bound];
        for i in 0..bound {
            let target = self.apply(i as u32) as usize;
            debug_assert!(target < bound);
            out[target] = x.digit(i);
        }
        let mut v = PAdic { q: x.q, p: x.p, digits: out, tail: x.tail };
        v.normalize();
        v
    }

    /// The conjugated action `ρ̂_*(x) = -ρ_*(-x)`; stabilizes the nonnegative
    /// and nonpositive integers but is not itself a digit permutation.
    pub fn rho_hat_star(&self, x: &PAdic) -> PAdic {
        self.rho_star(&x.negate()).negate()
    }

    /// Apply to a nonnegative integer, when the image fits in u64.
    pub fn rho_star_int(&self, n: u64, q: u32) -> Option<u64> {
        let img = self.rho_star(&PAdic::from_int(i64::try_from(n).ok()?, q));
        img.to_int().map(|v| v as u64)
    }
}

impl fmt::Display for DigitPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        // recover disjoint cycles
        let mut seen = std::collections::BTreeSet::new();
        for &start in self.map.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cyc = vec![start];
            seen.insert(start);
            let mut cur = self.apply(start);
            while cur != start {
                cyc.push(cur);
                seen.insert(cur);
                cur = self.apply(cur);
            }
            write!(f, "(")?;
            for (i, v) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DigitPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---- orbit machinery ----

/// Multiset of nonzero digits, as (digit value, count) pairs.
fn digit_multiset(x: &PAdic) -> Result<BTreeMap<u32, u32>> {
    if x.tail != 0 {
        return Err(Error::NotNonnegInteger { tail: x.tail });
    }
    let mut m = BTreeMap::new();
    for &d in &x.digits {
        if d != 0 {
            *m.entry(d).or_insert(0) += 1;
        }
    }
    Ok(m)
}

/// Two nonnegative integers lie in the same finite-support orbit iff their
/// multisets of nonzero digits coincide.
pub fn same_orbit(a: &PAdic, b: &PAdic) -> Result<bool> {
    if a.q != b.q {
        return Ok(false);
    }
    Ok(digit_multiset(a)? == digit_multiset(b)?)
}

/// Canonical orbit representative: the nonzero digits sorted descending and
/// packed into the lowest positions.
pub fn orbit_canonical(x: &PAdic) -> Result<PAdic> {
    let mut digits: Vec<u32> = x.digits.iter().copied().filter(|&d| d != 0).collect();
    if x.tail != 0 {
        return Err(Error::NotNonnegInteger { tail: x.tail });
    }
    digits.sort_unstable_by(|a, b| b.cmp(a));
    PAdic::new(x.q, digits, 0)
}

/// A permutation ρ with `ρ_*(a) = b`, if one exists.
pub fn orbit_witness(a: &PAdic, b: &PAdic) -> Result<Option<DigitPerm>> {
    if !same_orbit(a, b)? {
        return Ok(None);
    }
    // match positions value by value, then extend to a bijection on the
    // union of the touched position ranges
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    let mut used_src = std::collections::BTreeSet::new();
    let mut used_dst = std::collections::BTreeSet::new();
    for v in digit_multiset(a)?.keys() {
        let src: Vec<u32> = (0..a.digits.len() as u32).filter(|&i| a.digit(i as usize) == *v).collect();
        let dst: Vec<u32> = (0..b.digits.len() as u32).filter(|&i| b.digit(i as usize) == *v).collect();
        for (s, d) in src.iter().zip(&dst) {
            pairs.push((*s, *d));
            used_src.insert(*s);
            used_dst.insert(*d);
        }
    }
    let bound = a.digits.len().max(b.digits.len()) as u32;
    let free_src: Vec<u32> = (0..bound).filter(|i| !used_src.contains(i)).collect();
    let free_dst: Vec<u32> = (0..bound).filter(|i| !used_dst.contains(i)).collect();
    for (s, d) in free_src.iter().zip(&free_dst) {
        pairs.push((*s, *d));
    }
    let perm = DigitPerm::from_pairs(&pairs)?;
    debug_assert_eq!(&perm.rho_star(a), b);
    Ok(Some(perm))
}

/// All members of the orbit of `n` below `bound`, ascending.
pub fn orbit_below(n: u64, q: u32, bound: u64) -> Result<Vec<u64>> {
    let x = PAdic::from_int(n as i64, q);
    let digits: Vec<u32> = x.digits.iter().copied().filter(|&d| d != 0).collect();
    if digits.is_empty() {
        return Ok(if 0 < bound { vec![0] } else { vec![] });
    }
    let mut positions_max = 0;
    while q.checked_pow(positions_max).map_or(false, |v| (v as u64) < bound) {
        positions_max += 1;
    }
    // distinct multiset permutations of the nonzero digits over position
    // subsets below positions_max
    let mut out = Vec::new();
    let mut sorted = digits.clone();
    sorted.sort_unstable();
    let mut chosen: Vec<(u32, u32)> = Vec::new(); // (position, digit)
    fn rec(
        sorted: &[u32],
        used: &mut Vec<bool>,
        chosen: &mut Vec<(u32, u32)>,
        next_pos: u32,
        positions_max: u32,
        q: u64,
        bound: u64,
        out: &mut Vec<u64>,
    ) {
        if chosen.len() == sorted.len() {
            let val: u64 = chosen.iter().map(|&(p, d)| d as u64 * q.pow(p)).sum();
            if val < bound {
                out.push(val);
            }
            return;
        }
        for pos in next_pos..positions_max {
            let mut last: Option<u32> = None;
            for i in 0..sorted.len() {
                if used[i] || last == Some(sorted[i]) {
                    continue;
                }
                last = Some(sorted[i]);
                // prune: the remaining digits need distinct higher positions;
                // even the cheapest completion must stay below bound
                used[i] = true;
                chosen.push((pos, sorted[i]));
                rec(sorted, used, chosen, pos + 1, positions_max, q, bound, out);
                chosen.pop();
                used[i] = false;
            }
        }
    }
    let mut used = vec![false; sorted.len()];
    rec(&sorted, &mut used, &mut chosen, 0, positions_max, q as u64, bound, &mut out);
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_roundtrip_and_negation() {
        for q in [2u32, 3, 4, 9] {
            for n in -300i64..=300 {
                let x = PAdic::from_int(n, q);
                assert_eq!(x.to_int(), Some(n), "q={q} n={n}");
                assert_eq!(x.negate().to_int(), Some(-n));
            }
        }
        // -1 is the all-(q-1) stream
        let m1 = PAdic::from_int(-1, 2);
        assert_eq!(m1.explicit_digits(), &[] as &[u32]);
        assert_eq!(m1.tail(), 1);
    }

    #[test]
    fn digit_sums() {
        assert_eq!(PAdic::from_int(13, 3).ell_q().unwrap(), 3);
        assert_eq!(PAdic::from_int(5, 2).ell_q().unwrap(), 2);
        assert_eq!(PAdic::from_int(6, 4).ell_q().unwrap(), 3);
        assert!(PAdic::from_int(-3, 2).ell_q().is_err());
    }

    #[test]
    fn rho_star_examples() {
        // swap(1,2) sends 3 = 1+2 to 1+4 = 5
        let rho = DigitPerm::swap(1, 2);
        assert_eq!(rho.rho_star(&PAdic::from_int(3, 2)).to_int(), Some(5));
        // identity
        let id = DigitPerm::identity();
        assert_eq!(id.rho_star(&PAdic::from_int(123, 3)).to_int(), Some(123));
        // constant stream -1 is fixed by everything
        let rho01 = DigitPerm::swap(0, 1);
        assert_eq!(rho01.rho_star(&PAdic::from_int(-1, 2)).to_int(), Some(-1));
    }

    #[test]
    fn rho_hat_examples() {
        // q=2, swap(0,1): -2 has digits (0,1,1,1,...); swapping gives
        // (1,0,1,1,...) = -3, so ρ̂(2) = 3
        let rho = DigitPerm::swap(0, 1);
        assert_eq!(rho.rho_hat_star(&PAdic::from_int(2, 2)).to_int(), Some(3));
        assert_eq!(DigitPerm::identity().rho_hat_star(&PAdic::from_int(7, 2)).to_int(), Some(7));
        // ρ̂(-j) = -ρ(j)
        let rho12 = DigitPerm::swap(1, 2);
        assert_eq!(rho12.rho_hat_star(&PAdic::from_int(-3, 2)).to_int(), Some(-5));
    }

    #[test]
    fn rho_hat_is_conjugate_negation() {
        let perms = [DigitPerm::swap(0, 1), DigitPerm::swap(1, 3), DigitPerm::parse_cycles("(0 1 2)").unwrap()];
        for q in [2u32, 3] {
            for rho in &perms {
                for j in 0..200i64 {
                    let lhs = rho.rho_hat_star(&PAdic::from_int(-j, q)).to_int().unwrap();
                    let rhs = -rho.rho_star(&PAdic::from_int(j, q)).to_int().unwrap();
                    assert_eq!(lhs, rhs, "q={q} rho={rho} j={j}");
                }
            }
        }
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(PAdic::from_int(5, 2).collapse().unwrap().to_int(), Some(3));
        assert_eq!(PAdic::from_int(3, 2).collapse().unwrap().to_int(), Some(3));
        assert_eq!(PAdic::from_int(13, 3).collapse().unwrap().to_int(), Some(13));
        assert!(PAdic::from_int(-2, 3).collapse().is_err());
    }

    #[test]
    fn orbits() {
        let q = 2;
        let a = PAdic::from_int(3, q);
        let b = PAdic::from_int(5, q);
        assert!(same_orbit(&a, &b).unwrap());
        let w = orbit_witness(&a, &b).unwrap().unwrap();
        assert_eq!(w.rho_star(&a).to_int(), Some(5));
        assert!(!same_orbit(&a, &PAdic::from_int(7, q)).unwrap());
        assert!(orbit_witness(&a, &PAdic::from_int(7, q)).unwrap().is_none());

        let orb = orbit_below(13, 3, 100).unwrap();
        assert_eq!(orb, vec![13, 31, 37, 39, 85, 91, 93]);
        assert_eq!(orbit_canonical(&PAdic::from_int(5, 2)).unwrap().to_int(), Some(3));
    }

    #[test]
    fn composition_and_inverse() {
        let a = DigitPerm::parse_cycles("(0 1 2)").unwrap();
        let b = DigitPerm::swap(2, 4);
        let x = PAdic::from_int(57, 3);
        let composed = a.compose(&b);
        assert_eq!(composed.rho_star(&x), a.rho_star(&b.rho_star(&x)));
        assert_eq!(a.inverse().rho_star(&a.rho_star(&x)), x);
        assert_eq!(a.compose(&a.inverse()), DigitPerm::identity());
    }

    #[test]
    fn cycles_parse_and_print() {
        let p = DigitPerm::parse_cycles("(0 1 2)(4 5)").unwrap();
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(2), 0);
        assert_eq!(p.apply(4), 5);
        assert_eq!(p.apply(7), 7);
        assert_eq!(format!("{p}"), "(0 1 2)(4 5)");
        assert!(DigitPerm::from_pairs(&[(0, 1)]).is_err());
    }

    #[test]
    fn mod_q_minus_one_invariant() {
        use rand::prelude::*;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for q in [2u32, 3, 4, 9] {
            for _ in 0..50 {
                // random finite-support permutation on [0, 8)
                let mut targets: Vec<u32> = (0..8).collect();
                targets.shuffle(&mut rng);
                let pairs: Vec<(u32, u32)> = (0..8).zip(targets).collect();
                let rho = DigitPerm::from_pairs(&pairs).unwrap();
                for _ in 0..40 {
                    let n = rng.gen_range(-10_000i64..=10_000);
                    let img = rho.rho_star(&PAdic::from_int(n, q)).to_int().unwrap();
                    // trivially 0 ≡ 0 when q = 2
                    assert_eq!(
                        img.rem_euclid(q as i64 - 1),
                        n.rem_euclid(q as i64 - 1),
                        "q={q} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn semi_additivity_without_carries() {
        use rand::prelude::*;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for q in [2u32, 3, 5] {
            for _ in 0..200 {
                // build x and y with disjoint digit support so x+y has no carry
                let mut xd = vec![0u32; 8];
                let mut yd = vec![0u32; 8];
                for i in 0..8 {
                    match rng.gen_range(0..3) {
                        0 => xd[i] = rng.gen_range(1..q),
                        1 => yd[i] = rng.gen_range(1..q),
                        _ => {}
                    }
                }
                let x = PAdic::new(q, xd, 0).unwrap();
                let y = PAdic::new(q, yd, 0).unwrap();
                let z = PAdic::from_int(x.to_int().unwrap() + y.to_int().unwrap(), q);
                let mut targets: Vec<u32> = (0..10).collect();
                targets.shuffle(&mut rng);
                let rho = DigitPerm::from_pairs(
                    &(0..10).zip(targets).collect::<Vec<_>>(),
                )
                .unwrap();
                let lhs = rho.rho_star(&z).to_int().unwrap();
                let rhs = rho.rho_star(&x).to_int().unwrap() + rho.rho_star(&y).to_int().unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn continuity_modulus() {
        // if x ≡ y mod q^t with t > max ρ^{-1}({0..j-1}) then ρx ≡ ρy mod q^j
        let rho = DigitPerm::parse_cycles("(0 5)(1 3 2)").unwrap();
        let q = 3u32;
        let j = 3u32;
        let phi = rho.inverse();
        let t = (0..j).map(|e| phi.apply(e)).max().unwrap() + 1;
        let qt = (q as i64).pow(t);
        let qj = (q as i64).pow(j);
        for base in [0i64, 7, 55, 200] {
            let x = PAdic::from_int(base, q);
            let y = PAdic::from_int(base + qt * 4, q);
            let ix = rho.rho_star(&x).to_int().unwrap();
            let iy = rho.rho_star(&y).to_int().unwrap();
            assert_eq!(ix.rem_euclid(qj), iy.rem_euclid(qj));
        }
    }

    #[test]
    fn base_p_digit_view() {
        // 6 in base 4 is (2,1); in base 2 it is (0,1,1)
        let x = PAdic::from_int(6, 4);
        let bits: Vec<u32> = (0..4).map(|i| x.digit_base_p(i)).collect();
        assert_eq!(bits, vec![0, 1, 1, 0]);
        // negative tails expand too: -1 base 4 = all 3s = all 1s base 2
        let m1 = PAdic::from_int(-1, 4);
        assert_eq!(m1.digit_base_p(7), 1);
    }
}
