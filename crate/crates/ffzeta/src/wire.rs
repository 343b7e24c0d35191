//! JSON wire formats for the CLI and any external consumer.
//!
//! - `FqElem`: array of base-p digits, low to high (`x+1` in F_4 is `[1,1]`)
//! - `Poly`: array of such arrays, low to high degree
//! - `Laurent`: `{"param": "pi", "ord0": -2, "prec": 32, "coeffs": [...]}`
//!   with `coeffs[k]` the element at exponent `ord0 + k`
//! - `DigitPerm`: list of `[from, to]` pairs
//!
//! The schema is documented in `docs/serialization.md`.

use serde_json::{json, Value};

use crate::algebra::{FqElem, FqField, Poly};
use crate::digits::DigitPerm;
use crate::laurent::Laurent;
use crate::rings::RingElem;
use crate::{Error, Result};

pub fn fq_elem_to_json(c: &FqElem) -> Value {
    Value::Array(c.coords().iter().map(|&d| json!(d)).collect())
}

pub fn fq_elem_from_json(field: &FqField, v: &Value) -> Result<FqElem> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("element must be a digit array".into()))?;
    let coords: Vec<u32> = arr
        .iter()
        .map(|d| {
            d.as_u64()
                .map(|x| x as u32)
                .ok_or_else(|| Error::Parse("digit must be a nonnegative integer".into()))
        })
        .collect::<Result<_>>()?;
    field.from_coords(&coords)
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array((0..p.raw().len()).map(|i| fq_elem_to_json(&p.coeff(i))).collect())
}

pub fn poly_from_json(field: &FqField, v: &Value) -> Result<Poly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("polynomial must be an array".into()))?;
    let coeffs: Vec<FqElem> = arr
        .iter()
        .map(|c| fq_elem_from_json(field, c))
        .collect::<Result<_>>()?;
    Ok(Poly::from_coeffs(field, coeffs))
}

pub fn laurent_to_json(x: &Laurent) -> Value {
    let ord0 = x.ord().unwrap_or(x.end());
    let coeffs: Vec<Value> = (ord0..x.end())
        .map(|e| fq_elem_to_json(&x.coeff(e).expect("inside window")))
        .collect();
    json!({
        "param": x.param(),
        "ord0": ord0,
        "prec": x.end() - ord0,
        "coeffs": coeffs,
    })
}

pub fn laurent_from_json(field: &FqField, v: &Value) -> Result<Laurent> {
    let param = v["param"]
        .as_str()
        .ok_or_else(|| Error::Parse("missing param".into()))?;
    let ord0 = v["ord0"].as_i64().ok_or_else(|| Error::Parse("missing ord0".into()))?;
    let prec = v["prec"].as_i64().ok_or_else(|| Error::Parse("missing prec".into()))?;
    let arr = v["coeffs"]
        .as_array()
        .ok_or_else(|| Error::Parse("missing coeffs".into()))?;
    let coeffs: Vec<FqElem> = arr
        .iter()
        .map(|c| fq_elem_from_json(field, c))
        .collect::<Result<_>>()?;
    if coeffs.len() as i64 > prec {
        return Err(Error::Parse("more coefficients than prec".into()));
    }
    Ok(Laurent::from_terms(field, param, ord0, &coeffs, ord0 + prec))
}

pub fn digit_perm_to_json(p: &DigitPerm) -> Value {
    Value::Array(p.pairs().iter().map(|&(a, b)| json!([a, b])).collect())
}

pub fn digit_perm_from_json(v: &Value) -> Result<DigitPerm> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("permutation must be a pair list".into()))?;
    let mut pairs = Vec::new();
    for pv in arr {
        let pair = pv
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse("pair must be [from, to]".into()))?;
        let a = pair[0].as_u64().ok_or_else(|| Error::Parse("bad pair".into()))? as u32;
        let b = pair[1].as_u64().ok_or_else(|| Error::Parse("bad pair".into()))? as u32;
        pairs.push((a, b));
    }
    DigitPerm::from_pairs(&pairs)
}

pub fn ring_elem_to_json(e: &RingElem) -> Value {
    match e {
        RingElem::Poly(p) => poly_to_json(p),
        RingElem::Ell(el) => {
            let bits = |b: &crate::algebra::Bits2| -> Value {
                let n = b.deg().map_or(0, |d| d + 1);
                Value::Array((0..n).map(|k| json!(b.bit(k) as u8)).collect())
            };
            json!({"u": bits(&el.u), "v": bits(&el.v)})
        }
    }
}
