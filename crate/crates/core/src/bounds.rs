//! Closed-form bounds: the valid-`z` lower bound, its sign, the probability
//! lower bound, and the involution-count bounds.

use std::cmp::Ordering;

use num_rational::Ratio;
use serde::Serialize;

use crate::gfq::prime_power;

fn d_of(q: i64) -> i64 {
    if q % 2 == 0 {
        1
    } else {
        2
    }
}

/// `q^2 - 4d^2 f q - (d+2) q - 4d^2 f - 3d^2 + 2d - 1` for `q = p^f`.
pub fn bound_numerator(p: u32, f: u32) -> i64 {
    let q = (p as i64).pow(f);
    let f = f as i64;
    let d = d_of(q);
    q * q - 4 * d * d * f * q - (d + 2) * q - 4 * d * d * f - 3 * d * d + 2 * d - 1
}

/// Lower bound on the number of valid involutions `z`, as an exact rational.
pub fn bound_b(p: u32, f: u32) -> Ratio<i64> {
    let q = (p as i64).pow(f);
    Ratio::new(bound_numerator(p, f), d_of(q))
}

/// Sign of [`bound_numerator`].
pub fn bound_numerator_sign(p: u32, f: u32) -> Ordering {
    bound_numerator(p, f).cmp(&0)
}

/// `(q^2 - (d+2) q - 3d^2 + 2d - 1) / d`: involutions outside the dihedral
/// subgroup and outside the centralizers of its swapping automorphisms.
pub fn free_involution_bound(q: u32) -> Ratio<i64> {
    let q = q as i64;
    let d = d_of(q);
    Ratio::new(q * q - (d + 2) * q - 3 * d * d + 2 * d - 1, d)
}

/// `(q^2 - 16 q log2 q - 4q - 16 log2 q - 9) / (q (q+1))` in double precision.
pub fn prob_lower(q: u32) -> f64 {
    let qf = q as f64;
    let lg = qf.log2();
    (qf * qf - 16.0 * qf * lg - 4.0 * qf - 16.0 * lg - 9.0) / (qf * (qf + 1.0))
}

/// `(q(q-1)/d, q(q+1)/d)`, the orbit-stabilizer bounds on the number of
/// involutions of PSL(2,q).
pub fn involution_bounds(q: u32) -> (u64, u64) {
    let q = q as u64;
    let d = d_of(q as i64) as u64;
    (q * (q - 1) / d, q * (q + 1) / d)
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundRecord {
    pub q: u32,
    pub p: u32,
    pub f: u32,
    pub d: u32,
    #[serde(serialize_with = "ser_ratio")]
    pub b: Ratio<i64>,
    pub prob_lower: f64,
    pub v_lower: u64,
    pub v_upper: u64,
}

pub fn bound_record(q: u32) -> Option<BoundRecord> {
    let (p, f) = prime_power(q)?;
    let (v_lower, v_upper) = involution_bounds(q);
    Some(BoundRecord {
        q,
        p,
        f,
        d: d_of(q as i64) as u32,
        b: bound_b(p, f),
        prob_lower: prob_lower(q),
        v_lower,
        v_upper,
    })
}

pub(crate) fn ser_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

pub fn ratio_string(r: &Ratio<i64>) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
