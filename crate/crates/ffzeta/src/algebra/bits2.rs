//! Bit-packed polynomials over `F_2`, one coefficient per bit.
//!
//! This is the workhorse for the elliptic-ring power sums, where the summands
//! reach degrees in the thousands and a byte per coefficient would be an
//! order of magnitude too slow. Multiplication uses 4-bit windows; squaring
//! spreads bits.

use std::fmt;

use super::fq::FqField;
use super::poly::Poly;

/// An `F_2[x]` polynomial packed into machine words (bit k of word i is the
/// coefficient of `x^{64i+k}`). No trailing zero words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Bits2 {
    w: Vec<u64>,
}

fn spread32(x: u32) -> u64 {
    let mut v = x as u64;
    v = (v | (v << 16)) & 0x0000_FFFF_0000_FFFF;
    v = (v | (v << 8)) & 0x00FF_00FF_00FF_00FF;
    v = (v | (v << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    v = (v | (v << 2)) & 0x3333_3333_3333_3333;
    (v | (v << 1)) & 0x5555_5555_5555_5555
}

impl Bits2 {
    pub fn zero() -> Bits2 {
        Bits2 { w: Vec::new() }
    }

    pub fn one() -> Bits2 {
        Bits2 { w: vec![1] }
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Bits2 {
        let mut w = vec![0u64; k / 64 + 1];
        w[k / 64] = 1u64 << (k % 64);
        Bits2 { w }
    }

    pub fn from_bits(bits: &[u8]) -> Bits2 {
        let mut out = Bits2 { w: vec![0; bits.len() / 64 + 1] };
        for (k, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                out.w[k / 64] ^= 1u64 << (k % 64);
            }
        }
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.w.last() == Some(&0) {
            self.w.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        let last = *self.w.last()?;
        Some((self.w.len() - 1) * 64 + (63 - last.leading_zeros() as usize))
    }

    pub fn bit(&self, k: usize) -> bool {
        self.w.get(k / 64).map_or(false, |w| w >> (k % 64) & 1 == 1)
    }

    pub fn add(&self, rhs: &Bits2) -> Bits2 {
        let (long, short) = if self.w.len() >= rhs.w.len() { (self, rhs) } else { (rhs, self) };
        let mut w = long.w.clone();
        for (i, &s) in short.w.iter().enumerate() {
            w[i] ^= s;
        }
        let mut out = Bits2 { w };
        out.trim();
        out
    }

    /// `self * x^k`.
    pub fn shl(&self, k: usize) -> Bits2 {
        if self.is_zero() {
            return Bits2::zero();
        }
        let (words, bits) = (k / 64, k % 64);
        let mut w = vec![0u64; words + self.w.len() + 1];
        for (i, &v) in self.w.iter().enumerate() {
            w[words + i] ^= v << bits;
            if bits > 0 {
                w[words + i + 1] ^= v >> (64 - bits);
            }
        }
        let mut out = Bits2 { w };
        out.trim();
        out
    }

    pub fn mul(&self, rhs: &Bits2) -> Bits2 {
        if self.is_zero() || rhs.is_zero() {
            return Bits2::zero();
        }
        // 4-bit window table: table[m] = rhs * m(x) for deg m < 4
        let tw = rhs.w.len() + 1;
        let mut table = vec![0u64; 16 * tw];
        for m in 1..16usize {
            let low = m & m.wrapping_neg();
            let rest = m ^ low;
            let k = low.trailing_zeros() as usize;
            for i in 0..tw {
                let lo = if i < rhs.w.len() { rhs.w[i] << k } else { 0 };
                let hi = if k > 0 && i >= 1 && i - 1 < rhs.w.len() {
                    rhs.w[i - 1] >> (64 - k)
                } else {
                    0
                };
                table[m * tw + i] = table[rest * tw + i] ^ (lo | hi);
            }
        }
        let mut out = vec![0u64; self.w.len() + rhs.w.len() + 1];
        for (wi, &aw) in self.w.iter().enumerate() {
            if aw == 0 {
                continue;
            }
            for t in 0..16usize {
                let nib = (aw >> (4 * t)) & 15;
                if nib == 0 {
                    continue;
                }
                let sh = 4 * t;
                let row = &table[nib as usize * tw..nib as usize * tw + tw];
                if sh == 0 {
                    for (i, &v) in row.iter().enumerate() {
                        out[wi + i] ^= v;
                    }
                } else {
                    for (i, &v) in row.iter().enumerate() {
                        out[wi + i] ^= v << sh;
                        out[wi + i + 1] ^= v >> (64 - sh);
                    }
                }
            }
        }
        let mut r = Bits2 { w: out };
        r.trim();
        r
    }

    /// Squaring is linear in characteristic 2: spread the bits.
    pub fn square(&self) -> Bits2 {
        let mut w = Vec::with_capacity(self.w.len() * 2);
        for &v in &self.w {
            w.push(spread32(v as u32));
            w.push(spread32((v >> 32) as u32));
        }
        let mut out = Bits2 { w };
        out.trim();
        out
    }

    pub fn to_poly(&self, f2: &FqField) -> Poly {
        assert_eq!(f2.q(), 2);
        let n = self.deg().map_or(0, |d| d + 1);
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.bit(k) as u16);
        }
        Poly::from_raw(f2.clone(), coeffs)
    }

    pub fn from_poly(p: &Poly) -> Bits2 {
        assert_eq!(p.field().q(), 2);
        let bits: Vec<u8> = p.raw().iter().map(|&c| c as u8).collect();
        Bits2::from_bits(&bits)
    }
}

impl fmt::Debug for Bits2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.deg() {
            None => write!(f, "0"),
            Some(d) => {
                let mut first = true;
                for k in (0..=d).rev() {
                    if self.bit(k) {
                        if !first {
                            write!(f, "+")?;
                        }
                        first = false;
                        match k {
                            0 => write!(f, "1")?,
                            1 => write!(f, "x")?,
                            _ => write!(f, "x^{k}")?,
                        }
                    }
                }
                Ok(())
            }
        }
    }
}
