//! Zeroes of special polynomials in `F_q((1/T))`: Newton polygons, root
//! extraction, transport between uniformizers, and the digit-permutation
//! action on zeroes.
//!
//! Root data lives on the ⟨·⟩-normalized side: the series
//! `Σ_e S̃_e(j) x^{-e}` with `S̃_e(j) = π^{ej} S_e(j)` is the one whose
//! zeroes are the `(α, -j)` points quoted throughout (`α = π³`,
//! `α = π + π²`, ...). Concretely the roots are computed from
//! `V(x) = Σ_e S̃_e(j) x^{d-e}` (`d` the degree in `x^{-1}`), whose roots
//! have positive π-order equal to the Newton-polygon slopes.

use std::fmt;

use crate::algebra::{FqElem, FqField};
use crate::digits::{orbit_witness, DigitPerm, PAdic};
use crate::laurent::{one_unit_pow, recompose, Laurent};
use crate::rings::RingDesc;
use crate::zeta::SpecialPoly;
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;

/// Lower Newton polygon of a special polynomial, on the normalized points
/// `(e, ord_π S̃_e(j)) = (e, e·j - deg S_e(j))`.
#[derive(Clone, Debug)]
pub struct NewtonPolygon {
    /// (e, ord) for each nonzero coefficient.
    pub points: Vec<(u64, i64)>,
    /// Lower convex hull vertices, e ascending.
    pub vertices: Vec<(u64, i64)>,
    /// Hull segments as (rise, run); each accounts for `run` roots of
    /// π-order `rise/run`. Ascending order.
    pub segments: Vec<(i64, u64)>,
}

impl NewtonPolygon {
    /// Root orders, requiring every segment to be simple (`run == 1`).
    pub fn simple_root_ords(&self) -> Result<Vec<i64>> {
        self.segments
            .iter()
            .map(|&(rise, run)| if run == 1 { Ok(rise) } else { Err(Error::NonSimpleRoot) })
            .collect()
    }

    pub fn all_runs_simple(&self) -> bool {
        self.segments.iter().all(|&(_, run)| run == 1)
    }
}

/// Newton polygon of `z(x,-j)` from its coefficient data.
pub fn newton_polygon(z: &SpecialPoly) -> Result<NewtonPolygon> {
    let mut points: Vec<(u64, i64)> = Vec::new();
    for (e, c) in z.coeffs.iter().enumerate() {
        if let Some(d) = c.deg() {
            points.push((e as u64, (e as u64 * z.j) as i64 - d));
        }
    }
    if points.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    // lower hull, e ascending (points already sorted by e)
    let mut hull: Vec<(u64, i64)> = Vec::new();
    for &p in &points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // drop b if it lies on or above segment a..p
            let lhs = (b.1 - a.1) as i128 * (p.0 - a.0) as i128;
            let rhs = (p.1 - a.1) as i128 * (b.0 - a.0) as i128;
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let segments: Vec<(i64, u64)> = hull
        .windows(2)
        .map(|w| {
            let run = w[1].0 - w[0].0;
            let rise = w[1].1 - w[0].1;
            if rise % run as i64 == 0 {
                ((rise / run as i64), run)
            } else {
                (rise, run) // non-integral slope: keep the raw rational
            }
        })
        .map(|(rise, run)| if run > 1 && rise % run as i64 == 0 { (rise / run as i64, run) } else { (rise, run) })
        .collect();
    Ok(NewtonPolygon { points, vertices: hull, segments })
}

/// A computed zero `(x, y0)` of the normalized special series.
#[derive(Clone)]
pub struct ZeroRecord {
    pub j: u64,
    pub y0: PAdic,
    pub x: Laurent,
    pub ord: i64,
}

impl fmt::Debug for ZeroRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y0)
    }
}

fn tilde_coeffs(z: &SpecialPoly, window: i64) -> Result<Vec<Laurent>> {
    (0..z.coeffs.len() as u64).map(|e| z.tilde_coeff(e, "pi", window)).collect()
}

fn eval_poly_laurent(coeffs: &[Laurent], x: &Laurent) -> Result<Laurent> {
    let mut acc = coeffs.last().expect("nonempty").clone();
    for c in coeffs.iter().rev().skip(1) {
        acc = acc.mul(x)?.add(c)?;
    }
    Ok(acc)
}

/// Extract the zeroes of `z(x,-j)` inside `F_q((π))`, each refined to `n`
/// series terms by Newton iteration seeded from the polygon. Roots are
/// returned with strictly increasing π-order; a repeated polygon slope
/// (which the polynomial ring never produces) is an error.
pub fn roots_in_k(z: &SpecialPoly, n: i64) -> Result<Vec<ZeroRecord>> {
    let field = match &z.ring {
        RingDesc::PolyRing(f) => f.clone(),
        RingDesc::Elliptic2 => {
            return Err(Error::Precondition(
                "root extraction is supported for F_q[T] only; elliptic2 exposes the polygon".into(),
            ))
        }
    };
    let polygon = newton_polygon(z)?;
    let ords = polygon.simple_root_ords()?;
    let d = z.degree().ok_or(Error::ZeroPolynomial)? as usize;
    if d == 0 {
        return Ok(Vec::new());
    }
    // work on V(x) = Σ_e S̃_e x^{d-e}; its roots are the zero x-coordinates
    let window = n + 2 * z.j as i64 + 8;
    let tilde = tilde_coeffs(z, window)?;
    let mut v: Vec<Laurent> = (0..=d).map(|k| tilde[d - k].clone()).collect();
    // V'(x)
    let mut dv: Vec<Laurent> = Vec::with_capacity(d);
    for (k, c) in v.iter().enumerate().skip(1) {
        dv.push(c.mul_scalar(&field.scalar(k as i64)));
    }
    // leading coefficient of each S̃_e for the seeds
    let lead = |l: &Laurent| l.leading().expect("nonzero coefficient");
    let mut roots: Vec<ZeroRecord> = Vec::new();
    for (seg_idx, &ord_root) in ords.iter().enumerate() {
        // segment between hull vertices seg_idx and seg_idx+1 in e-order;
        // seed coefficient from the two bracketing coefficients
        let (e1, _) = polygon.vertices[seg_idx];
        let (e2, _) = polygon.vertices[seg_idx + 1];
        debug_assert_eq!(e2, e1 + 1);
        let alpha = lead(&tilde[e1 as usize]);
        let beta = lead(&tilde[e2 as usize]);
        // x ~ c π^{ord}: the two dominant terms cancel when c = -β/α...
        // orientation: in V the coefficient of x^{d-e1} is S̃_{e1}; matching
        // leading orders of S̃_{e1} x^{d-e1} + S̃_{e2} x^{d-e2} at x = cπ^s
        // gives α c^{e2'} + β c^{e1'} with e' = d-e, i.e. c = -α/β... solve
        // α c^{(d-e1)} = -β c^{(d-e2)} => c^{e2-e1} = -β/α => c = -β/α.
        let c = (-&beta).checked_div(&alpha)?;
        let mut x = Laurent::monomial(&c, "pi", ord_root, window);
        let mut converged = false;
        for _ in 0..64 {
            let val = eval_poly_laurent(&v, &x)?;
            if val.is_known_zero() {
                converged = true;
                break;
            }
            let der = eval_poly_laurent(&dv, &x)?;
            if der.is_known_zero() {
                return Err(Error::NonSimpleRoot);
            }
            let delta = val.mul(&der.inv()?)?;
            x = x.sub(&delta.truncate(x.end()))?;
        }
        if !converged {
            return Err(Error::PrecisionExhausted { needed: n, have: x.end() });
        }
        // simplicity: V'(root) must be nonzero
        let der = eval_poly_laurent(&dv, &x)?;
        if der.is_known_zero() {
            return Err(Error::NonSimpleRoot);
        }
        if x.ord() != Some(ord_root) {
            return Err(Error::Precondition(format!(
                "root drifted from its polygon slope: {:?} vs {ord_root}",
                x.ord()
            )));
        }
        roots.push(ZeroRecord {
            j: z.j,
            y0: PAdic::from_int(-(z.j as i64), field.q()),
            x: x.truncate(n),
            ord: ord_root,
        });
    }
    let _ = &mut v;
    roots.sort_by_key(|r| r.ord);
    Ok(roots)
}

/// The digit action on a zero: π-exponents of the x-coordinate move by
/// `ρ_*`, the y-coordinate by `ρ̂_*`. Returns the image with the window it
/// can certify (unknown input coefficients beyond `end` may map below the
/// nominal window, which shrinks it accordingly).
pub fn digit_act_zero(rho: &DigitPerm, z: &ZeroRecord) -> Result<ZeroRecord> {
    let x = &z.x;
    let field = x.field().clone();
    let q = z.y0.q();
    let ord_in = x.ord().ok_or(Error::ZeroPolynomial)?;
    if ord_in < 0 {
        return Err(Error::Precondition("zero x-coordinates have positive order".into()));
    }
    let map_exp = |i: i64| -> Result<i64> {
        let img = rho.rho_star(&PAdic::from_int(i, q));
        img.to_int().ok_or_else(|| Error::Precondition(format!("exponent image of {i} overflows")))
    };
    // certified output window: the least possible image of any unknown
    // exponent >= end
    let horizon = x.end() + rho.max_moved().map_or(0, |m| m as i64) + 1;
    let mut out_end = i64::MAX;
    for i in x.end()..=horizon {
        out_end = out_end.min(map_exp(i)?);
    }
    // known coefficients whose images land beyond the certifiable window
    // are dropped: they are true statements about single positions, but the
    // window cannot vouch for anything out there
    let mut pairs: Vec<(i64, FqElem)> = Vec::new();
    let mut first_lost = None;
    for i in ord_in..x.end() {
        let c = x.coeff(i).unwrap();
        if c.is_zero() {
            continue;
        }
        let img = map_exp(i)?;
        if img >= out_end {
            first_lost = Some(first_lost.unwrap_or(img).min(img));
            continue;
        }
        pairs.push((img, c));
    }
    pairs.sort_by_key(|&(e, _)| e);
    let mut out = Laurent::zero(&field, x.param(), out_end);
    for (e, c) in pairs {
        out = out.add(&Laurent::monomial(&c, x.param(), e, out_end))?;
    }
    let y_img = rho.rho_hat_star(&z.y0);
    let ord = out.ord().ok_or(Error::PrecisionExhausted {
        needed: first_lost.unwrap_or(out_end) + 1,
        have: out_end,
    })?;
    let j_img = y_img.negate().to_int().unwrap_or(-1);
    Ok(ZeroRecord {
        j: u64::try_from(j_img).unwrap_or(0),
        y0: y_img,
        x: out,
        ord,
    })
}

/// Transport a zero `(x, y0)` of the series in `π1` to the parameter `π2`,
/// where `π1 = g(π2)`: the x-coordinate becomes `u^{y0}·x` with the 1-unit
/// `u = π1/π2 = g/π2`, re-expanded in `π2`. The leading monomial never
/// changes.
pub fn gauge_transform_zero(x: &Laurent, y0: &PAdic, g: &Laurent) -> Result<Laurent> {
    let x2 = recompose(x, g)?;
    let u = g.shift(-1);
    let n = x2.end();
    let upow = one_unit_pow(&u, y0, n - x2.ord().unwrap_or(0).min(0))?;
    x2.mul(&upow)
}

/// Report from sampling the gauge orbit of one zero.
#[derive(Clone, Debug)]
pub struct InvariantPrefixReport {
    pub j: u64,
    pub zero_index: usize,
    pub ord: i64,
    /// Number of leading coefficient positions (from `ord` upward) on which
    /// every sampled re-expansion agrees.
    pub prefix_len: usize,
    /// The agreed coefficients, as small integers (element encodings).
    pub prefix: Vec<u32>,
    pub samples: u64,
    pub seed: u64,
}

/// Transport the `zero_index`-th zero of `z(x,-j)` through `samples` random
/// parameter changes `π1 = π2 + a_2 π2² + ...` (coefficients uniform) and
/// measure the longest common prefix of the re-expansions.
pub fn invariant_prefix(
    field: &FqField,
    j: u64,
    zero_index: usize,
    samples: u64,
    n: i64,
    seed: u64,
) -> Result<InvariantPrefixReport> {
    let ring = RingDesc::poly(field);
    let z = crate::zeta::special_poly(&ring, j)?;
    let roots = roots_in_k(&z, n)?;
    let root = roots
        .get(zero_index)
        .ok_or_else(|| Error::Precondition(format!("zero index {zero_index} out of range")))?;
    let y0 = PAdic::from_int(-(j as i64), field.q());
    let ord = root.ord;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    // start from the identity re-expansion (the original expansion)
    let mut prefix: Vec<u32> = (ord..root.x.end())
        .map(|e| root.x.coeff(e).unwrap().val() as u32)
        .collect();
    for _ in 0..samples {
        let mut coeffs: Vec<i64> = vec![1];
        for _ in 2..=(n + 1) {
            coeffs.push(rng.gen_range(0..field.q()) as i64);
        }
        let g = Laurent::from_ints(field, "pi2", 1, &coeffs, n + 2);
        let t = gauge_transform_zero(&root.x, &y0, &g)?;
        if t.ord() != Some(ord) {
            return Err(Error::Precondition("leading monomial moved under gauge".into()));
        }
        let avail = (t.end() - ord).max(0) as usize;
        prefix.truncate(avail);
        for (k, slot) in prefix.iter_mut().enumerate() {
            let c = t.coeff(ord + k as i64).unwrap().val() as u32;
            if *slot != c {
                // disagreement: cut the prefix here
                prefix.truncate(k);
                break;
            }
        }
    }
    Ok(InvariantPrefixReport {
        j,
        zero_index,
        ord,
        prefix_len: prefix.len(),
        prefix,
        samples,
        seed,
    })
}

/// One row of the collapse comparison: a slope of the collapsed polynomial
/// and its image slope.
#[derive(Clone, Debug)]
pub struct CollapseRow {
    pub ord_collapsed: i64,
    pub expected_image: i64,
    pub ord_original: i64,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct CollapseReport {
    pub j: u64,
    pub j_collapsed: u64,
    pub rho: DigitPerm,
    pub rows: Vec<CollapseRow>,
    pub all_match: bool,
}

/// Compare the zero orders of `z(x,-j)` with those of the collapsed
/// exponent `j_c`: the order lists (ascending) must correspond through
/// `ρ_*` for the permutation sending digit slot i to the position of the
/// i-th nonzero digit of j. Requires every base-q digit of `j` below p.
pub fn collapse_compare(field: &FqField, j: u64) -> Result<CollapseReport> {
    let q = field.q();
    let p = field.p();
    let jp = PAdic::from_int(j as i64, q);
    if jp.explicit_digits().iter().any(|&d| d >= p) {
        return Err(Error::DigitTooLarge(j));
    }
    let jc = jp.collapse()?;
    let jc_int = jc.to_int().unwrap() as u64;
    let rho = orbit_witness(&jc, &jp)?.ok_or_else(|| {
        Error::Precondition("collapse witness must exist".into())
    })?;
    let ring = RingDesc::poly(field);
    let z_orig = crate::zeta::special_poly(&ring, j)?;
    let z_coll = crate::zeta::special_poly(&ring, jc_int)?;
    let ords_orig = newton_polygon(&z_orig)?.simple_root_ords()?;
    let ords_coll = newton_polygon(&z_coll)?.simple_root_ords()?;
    let mut rows = Vec::new();
    let mut all = ords_orig.len() == ords_coll.len();
    for (i, &a) in ords_coll.iter().enumerate() {
        let expected = rho
            .rho_star(&PAdic::from_int(a, q))
            .to_int()
            .ok_or_else(|| Error::Precondition("image order overflows".into()))?;
        let got = ords_orig.get(i).copied().unwrap_or(i64::MIN);
        let ok = expected == got;
        all &= ok;
        rows.push(CollapseRow {
            ord_collapsed: a,
            expected_image: expected,
            ord_original: got,
            matches: ok,
        });
    }
    Ok(CollapseReport { j, j_collapsed: jc_int, rho, rows, all_match: all })
}

/// Evidence row for the digit action on zeroes along one orbit pair.
#[derive(Clone, Debug)]
pub struct OrbitZeroRow {
    pub source_ord: i64,
    pub mapped_ord: i64,
    pub target_found: bool,
    pub compared_terms: usize,
    pub agree: bool,
}

#[derive(Clone, Debug)]
pub struct OrbitZeroReport {
    pub j_from: u64,
    pub j_to: u64,
    pub rho: DigitPerm,
    pub rows: Vec<OrbitZeroRow>,
}

/// Transport the invariant-prefix portion of every zero of `z(x,-j_from)`
/// through a witness permutation onto `z(x,-j_to)` and compare against the
/// target's own invariant prefixes. This logs evidence; the caller decides
/// what to make of it.
pub fn orbit_zero_evidence(
    field: &FqField,
    j_from: u64,
    j_to: u64,
    samples: u64,
    n: i64,
    seed: u64,
) -> Result<OrbitZeroReport> {
    let q = field.q();
    let a = PAdic::from_int(j_from as i64, q);
    let b = PAdic::from_int(j_to as i64, q);
    let rho = orbit_witness(&a, &b)?
        .ok_or_else(|| Error::Precondition(format!("{j_from} and {j_to} are not in one orbit")))?;
    let ring = RingDesc::poly(field);
    let z_from = crate::zeta::special_poly(&ring, j_from)?;
    let z_to = crate::zeta::special_poly(&ring, j_to)?;
    let roots_from = roots_in_k(&z_from, n)?;
    let roots_to = roots_in_k(&z_to, n)?;
    let q = field.q();
    let map_exp = |i: i64| -> i64 {
        rho.rho_star(&PAdic::from_int(i, q)).to_int().expect("small exponents")
    };
    let mut rows = Vec::new();
    for (idx, r) in roots_from.iter().enumerate() {
        let pre_from = invariant_prefix(field, j_from, idx, samples, n, seed)?;
        // map the invariant-prefix pairs (i, c_i) by i -> ρ_*(i)
        let mapped_ord = (r.ord..r.ord + pre_from.prefix_len as i64)
            .filter(|&i| !r.x.coeff(i).unwrap().is_zero())
            .map(map_exp)
            .min()
            .unwrap_or(i64::MAX);
        let target = roots_to.iter().position(|t| t.ord == mapped_ord);
        match target {
            None => rows.push(OrbitZeroRow {
                source_ord: r.ord,
                mapped_ord,
                target_found: false,
                compared_terms: 0,
                agree: false,
            }),
            Some(tidx) => {
                let pre_to = invariant_prefix(field, j_to, tidx, samples, n, seed ^ 1)?;
                let t = &roots_to[tidx];
                let tgt_end = t.ord + pre_to.prefix_len as i64;
                // compare every mapped pair that lands inside the target's
                // invariant prefix window
                let mut compared = 0usize;
                let mut agree = true;
                for i in r.ord..r.ord + pre_from.prefix_len as i64 {
                    let c = r.x.coeff(i).unwrap();
                    let img = map_exp(i);
                    if img < tgt_end {
                        compared += 1;
                        agree &= t.x.coeff(img).unwrap() == c;
                    }
                }
                rows.push(OrbitZeroRow {
                    source_ord: r.ord,
                    mapped_ord,
                    target_found: true,
                    compared_terms: compared,
                    agree,
                });
            }
        }
    }
    Ok(OrbitZeroReport { j_from, j_to, rho, rows })
}
