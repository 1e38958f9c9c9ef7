//! Cyclic code construction, dimension bookkeeping, the sphere-packing
//! bound, and a brute-force minimum-weight oracle for small lengths.

use crate::config::RunConfig;
use crate::error::{Gf3Error, Result};
use crate::gf3poly::Gf3Poly;
use crate::gfext::{FieldContext, ZechTable};
use crate::numthy;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

/// The cyclic code of length 3^m - 1 generated by the product of the
/// minimal polynomials of alpha and alpha^e.
#[derive(Clone, Debug)]
pub struct CyclicCode {
    pub m: usize,
    pub n: u128,
    pub e: BigUint,
    pub generator: Gf3Poly,
    pub dimension: u128,
}

impl CyclicCode {
    pub fn params(&self) -> (u128, u128) {
        (self.n, self.dimension)
    }

    /// JSON rendering with the exponent as a decimal string.
    pub fn to_json(&self, modulus: &Gf3Poly, verdict: Option<&str>) -> serde_json::Value {
        serde_json::json!({
            "m": self.m,
            "e": self.e.to_string(),
            "modulus": modulus.to_digit_string(),
            "generator": self.generator.to_digit_string(),
            "n": self.n,
            "k": self.dimension,
            "verdict": verdict,
        })
    }
}

/// Build the code for exponent e: generator = lcm(m_1, m_e), which is the
/// plain product unless e lies in the coset of 1.
pub fn build_c1e(ctx: &FieldContext, e: &BigUint) -> Result<CyclicCode> {
    let n_big = ctx.order();
    if e <= &BigUint::one() || e >= n_big {
        return Err(Gf3Error::InvalidParameters(format!(
            "exponent must satisfy 1 < e < {n_big}"
        )));
    }
    let m1 = ctx.minimal_polynomial(&BigUint::one());
    let me = ctx.minimal_polynomial(e);
    let generator = if m1 == me { m1 } else { m1.mul(&me) };
    let n = n_big.to_u128().ok_or_else(|| {
        Gf3Error::InvalidParameters("code length exceeds u128".into())
    })?;
    let dimension = n - generator.degree().expect("nonzero generator") as u128;
    Ok(CyclicCode { m: ctx.m(), n, e: e.clone(), generator, dimension })
}

/// Check deg(generator) = m + |C_e|, i.e. dimension = 3^m - 1 - m - |C_e|.
/// Only meaningful for e outside the coset of 1.
pub fn dimension_formula_check(ctx: &FieldContext, e: &BigUint) -> Result<bool> {
    let coset = numthy::coset(e, 3, ctx.m());
    assert!(
        !coset.members.contains(&BigUint::one()),
        "dimension formula requires e outside C_1"
    );
    let code = build_c1e(ctx, e)?;
    Ok(code.generator.degree() == Some(ctx.m() + coset.size()))
}

/// Largest minimum distance d not excluded for an [n, k] code over GF(q)
/// by the sphere-packing bound, capped by the Singleton bound n - k + 1
/// (the packing inequality alone never rules out d = 2).
pub fn sphere_packing_max_d(n: u128, k: u128, q: u32) -> u128 {
    assert!(k > 0 && k <= n && q >= 2);
    let nb = BigUint::from(n);
    let q1 = BigUint::from(q - 1);
    let target = BigUint::from(q).pow((n - k) as u32);
    // grow the radius while the ball of radius t still fits in q^(n-k)
    let mut ball = BigUint::one();
    let mut binom = BigUint::one();
    let mut power = BigUint::one();
    let mut t: u128 = 0;
    while t < n {
        let i = t + 1;
        binom = binom * (&nb - BigUint::from(i - 1)) / BigUint::from(i);
        power *= &q1;
        let next = &ball + &binom * &power;
        if next > target {
            break;
        }
        ball = next;
        t = i;
    }
    (2 * t + 2).min(n - k + 1)
}

/// A codeword of weight at most 3, as (position, coefficient) pairs.
pub type SparseWord = Vec<(u64, u8)>;

/// Search all words of Hamming weight 1, 2, 3 for membership in the code,
/// using syndromes over the parity-check columns (alpha^i, alpha^(e*i)).
/// Returns a witness codeword or `None`; combined with the sphere-packing
/// bound at (n, k), `None` certifies minimum distance exactly 4.
///
/// Cyclic shifts let the search fix the first support position at 0 and
/// the leading coefficient at 1; the remaining two coefficients come from
/// solving the 2x2 syndrome system over GF(3^m) instead of enumerating
/// coefficient triples.
pub fn min_weight_at_most_3(
    ctx: &FieldContext,
    code: &CyclicCode,
    cfg: &RunConfig,
) -> Result<Option<SparseWord>> {
    if code.n > cfg.oracle_cap as u128 {
        return Err(Gf3Error::OracleCapExceeded { n: code.n, cap: cfg.oracle_cap });
    }
    let table = ctx.build_zech_table(cfg)?;
    let n = table.n();
    let n2 = n / 2;
    let ee = (&code.e % ctx.order()).to_u64().expect("small field");

    // weight 1: a * alpha^i = 0 has no solution; scan anyway for honesty
    for i in 0..n {
        for a in [1u64, 2] {
            let log_a = if a == 1 { 0 } else { n2 };
            // a * alpha^i is alpha^(log_a + i), never the zero element
            debug_assert!(table.pow[((log_a + i) % n) as usize] != 0);
        }
    }

    // weight 2: 1 + b x^j with b in {1, 2}
    for j in 1..n {
        for b in [1u64, 2] {
            let log_b = if b == 1 { 0 } else { n2 };
            // 1 + b alpha^j = 0  and  1 + b alpha^(e j) = 0
            let first = (log_b + j) % n == n2;
            let second = (log_b + (j % n) * ee % n) % n == n2;
            if first && second {
                return Ok(Some(vec![(0, 1), (j, b as u8)]));
            }
        }
    }

    // weight 3: 1 + b x^j + c x^k; solve for (b, c) in the field and keep
    // solutions landing in {1, 2}
    let found = (1..n - 1).into_par_iter().find_map_first(|j| {
        weight3_row(&table, n, n2, ee, j)
    });
    Ok(found)
}

fn weight3_row(table: &ZechTable, n: u64, n2: u64, ee: u64, j: u64) -> Option<SparseWord> {
    let pe = |i: u64| table.pow[((i % n) * ee % n) as usize]; // alpha^(e i)
    let pw = |i: u64| table.pow[(i % n) as usize];
    let lg = |enc: u32| table.log[enc as usize] as u64;
    let neg = |enc: u32| {
        // negate: multiply by -1 = alpha^(n/2)
        if enc == 0 {
            0
        } else {
            table.pow[((lg(enc) + n2) % n) as usize]
        }
    };
    let add = |a: u32, b: u32| table.encoding_add(a, b);
    let one = pw(0);
    debug_assert_eq!(one, 1);
    let minus_one = neg(one);
    let aj = pw(j);
    let aej = pe(j);
    for k in (j + 1)..n {
        let ak = pw(k);
        let aek = pe(k);
        // D = alpha^(j + e k) - alpha^(k + e j)
        let d = add(pw(j + lg(aek)), neg(pw(k + lg(aej))));
        if d != 0 {
            // b = (alpha^k - alpha^(e k)) / D, c = (alpha^(e j) - alpha^j) / D
            let bn = add(ak, neg(aek));
            let cn = add(aej, neg(aj));
            let b = if bn == 0 { 0 } else { table.pow[(((lg(bn) + n) - lg(d)) % n) as usize] };
            let c = if cn == 0 { 0 } else { table.pow[(((lg(cn) + n) - lg(d)) % n) as usize] };
            if (b == 1 || b == 2) && (c == 1 || c == 2) {
                return Some(vec![(0, 1), (j, b as u8), (k, c as u8)]);
            }
        } else {
            // singular system: try the four coefficient pairs directly
            for b in [one, minus_one] {
                for c in [one, minus_one] {
                    let bd = if b == one { 1u8 } else { 2 };
                    let cd = if c == one { 1u8 } else { 2 };
                    let scale = |v: u32, s: u8| if s == 1 { v } else { neg(v) };
                    let s1 = add(add(one, scale(aj, bd)), scale(ak, cd));
                    let s2 = add(add(one, scale(aej, bd)), scale(aek, cd));
                    if s1 == 0 && s2 == 0 {
                        return Some(vec![(0, 1), (j, bd), (k, cd)]);
                    }
                }
            }
        }
    }
    None
}

/// Evaluate a sparse word at alpha^t (t = 1 gives the first syndrome,
/// t = e the second); used by tests to validate returned witnesses.
pub fn syndrome_of(ctx: &FieldContext, word: &SparseWord, t: &BigUint) -> crate::gfext::FieldElement {
    let alpha = ctx.alpha();
    let mut acc = ctx.zero();
    for (pos, coeff) in word {
        let exp = BigUint::from(*pos) * t;
        let term = ctx.pow(&alpha, &exp);
        let term = match coeff {
            1 => term,
            2 => ctx.neg(&term),
            _ => unreachable!(),
        };
        acc = ctx.add(&acc, &term);
    }
    acc
}

/// One row of the distance certificate for JSON output.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceCertificate {
    pub packing_upper_bound: u128,
    pub weight_le_3_witness: Option<Vec<(u64, u8)>>,
    pub distance_is_4: bool,
}

/// Combine the oracle and the bound: no weight <= 3 word plus a packing
/// bound of 4 at (n, k) pins d = 4.
pub fn certify_distance_4(
    ctx: &FieldContext,
    code: &CyclicCode,
    cfg: &RunConfig,
) -> Result<DistanceCertificate> {
    let bound = sphere_packing_max_d(code.n, code.dimension, 3);
    let witness = min_weight_at_most_3(ctx, code, cfg)?;
    Ok(DistanceCertificate {
        packing_upper_bound: bound,
        distance_is_4: witness.is_none() && bound == 4,
        weight_le_3_witness: witness,
    })
}
