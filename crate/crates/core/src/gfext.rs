//! GF(3^m) as residues modulo a primitive polynomial: context construction,
//! element arithmetic, the quadratic character, minimal polynomials, and
//! Zech-logarithm tables for fast exhaustive scans.

use crate::config::RunConfig;
use crate::error::{Gf3Error, Result};
use crate::gf3poly::{is_irreducible, Gf3Poly};
use crate::numthy;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// GF(3^m) described by a monic irreducible primitive modulus of degree m;
/// the residue class of x generates the multiplicative group.
#[derive(Clone, Debug)]
pub struct FieldContext {
    m: usize,
    modulus: Gf3Poly,
    order: BigUint,
    /// Prime factorization of 3^m - 1, with multiplicity, sorted.
    prime_factors: Vec<BigUint>,
}

/// Fully reduced residue (degree < m) in some [`FieldContext`].
/// All arithmetic goes through context methods.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    residue: Gf3Poly,
}

impl FieldElement {
    pub fn residue(&self) -> &Gf3Poly {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }
}

impl FieldContext {
    /// Build GF(3^m). When `modulus` is omitted, monic degree-m polynomials
    /// are searched in ascending base-3 coefficient encoding and the first
    /// irreducible primitive one wins. A supplied modulus must be monic of
    /// degree m, irreducible, and primitive.
    pub fn build(m: usize, modulus: Option<Gf3Poly>, cfg: &RunConfig) -> Result<FieldContext> {
        if m < 1 || m > cfg.context_cap {
            return Err(Gf3Error::ContextDegreeOutOfRange { m, cap: cfg.context_cap });
        }
        let order = numthy::group_order(m);
        let prime_factors = numthy::factor_biguint(&order);
        let mut distinct = prime_factors.clone();
        distinct.dedup();
        let modulus = match modulus {
            Some(f) => {
                if f.degree() != Some(m) || !f.is_monic() {
                    return Err(Gf3Error::ModulusDegreeMismatch {
                        expected: m,
                        got: f
                            .degree()
                            .map(|d| d.to_string())
                            .unwrap_or_else(|| "-inf".to_string()),
                    });
                }
                if !is_irreducible(&f)? {
                    return Err(Gf3Error::NotIrreducible);
                }
                if !Self::primitive_check(&f, &order, &distinct)? {
                    return Err(Gf3Error::NotPrimitive);
                }
                f
            }
            None => Self::search_primitive(m, &order, &distinct)?,
        };
        Ok(FieldContext { m, modulus, order, prime_factors })
    }

    fn search_primitive(
        m: usize,
        order: &BigUint,
        distinct: &[BigUint],
    ) -> Result<Gf3Poly> {
        // candidates ordered by the base-3 encoding of the low coefficients;
        // the monic leading term is shared, so this is the full-vector order
        let mut digits = vec![0u8; m + 1];
        digits[m] = 1;
        loop {
            let f = Gf3Poly::from_digits(&digits);
            if is_irreducible(&f)? && Self::primitive_check(&f, order, distinct)? {
                return Ok(f);
            }
            let mut i = 0;
            loop {
                if i == m {
                    return Err(Gf3Error::NotPrimitive); // cannot happen: primitive polynomials exist for every m
                }
                if digits[i] < 2 {
                    digits[i] += 1;
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    /// x has multiplicative order 3^m - 1 modulo f.
    fn primitive_check(f: &Gf3Poly, order: &BigUint, distinct: &[BigUint]) -> Result<bool> {
        let x = Gf3Poly::x();
        if Gf3Poly::modpow(&x, order, f)? != Gf3Poly::one() {
            return Ok(false);
        }
        for p in distinct {
            if Gf3Poly::modpow(&x, &(order / p), f)? == Gf3Poly::one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &Gf3Poly {
        &self.modulus
    }

    /// 3^m - 1.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn prime_factors_of_order(&self) -> &[BigUint] {
        &self.prime_factors
    }

    /// JSON descriptor {"m": .., "modulus": digit-string}.
    pub fn descriptor(&self) -> serde_json::Value {
        serde_json::json!({ "m": self.m, "modulus": self.modulus.to_digit_string() })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { residue: Gf3Poly::zero() }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { residue: Gf3Poly::one() }
    }

    /// The generator: the residue class of x.
    pub fn alpha(&self) -> FieldElement {
        FieldElement { residue: Gf3Poly::x().rem(&self.modulus).expect("valid modulus") }
    }

    pub fn element(&self, p: &Gf3Poly) -> FieldElement {
        FieldElement { residue: p.rem(&self.modulus).expect("valid modulus") }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement { residue: a.residue.add(&b.residue) }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement { residue: a.residue.sub(&b.residue) }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement { residue: a.residue.neg() }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            residue: a.residue.mul(&b.residue).rem(&self.modulus).expect("valid modulus"),
        }
    }

    /// a^e with 0^0 = 1; the exponent reduces mod 3^m - 1 for nonzero a.
    pub fn pow(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        if a.is_zero() {
            return if e.is_zero() { self.one() } else { self.zero() };
        }
        let reduced = e % &self.order;
        FieldElement {
            residue: Gf3Poly::modpow(&a.residue, &reduced, &self.modulus)
                .expect("valid modulus"),
        }
    }

    /// Quadratic character: 0 on zero, else +-1 via a^((3^m-1)/2).
    pub fn quadratic_character(&self, a: &FieldElement) -> i8 {
        if a.is_zero() {
            return 0;
        }
        let half = &self.order / BigUint::from(2u32);
        let s = self.pow(a, &half);
        if s == self.one() {
            1
        } else {
            debug_assert_eq!(s.residue, Gf3Poly::constant(2));
            -1
        }
    }

    /// Monic minimal polynomial of alpha^i over GF(3): the product of
    /// (x - alpha^j) over the cyclotomic coset of i, expanded and verified
    /// to have GF(3) coefficients. Its degree is the coset size.
    pub fn minimal_polynomial(&self, i: &BigUint) -> Gf3Poly {
        let coset = numthy::coset(i, 3, self.m);
        let alpha = self.alpha();
        // coefficients over the extension field, little-endian
        let mut coeffs: Vec<FieldElement> = vec![self.one()];
        for j in &coset.members {
            let root = self.pow(&alpha, j);
            let neg_root = self.neg(&root);
            let mut next: Vec<FieldElement> = Vec::with_capacity(coeffs.len() + 1);
            next.push(self.mul(&coeffs[0], &neg_root));
            for k in 1..coeffs.len() {
                next.push(self.add(&coeffs[k - 1], &self.mul(&coeffs[k], &neg_root)));
            }
            next.push(coeffs[coeffs.len() - 1].clone());
            coeffs = next;
        }
        let digits: Vec<u8> = coeffs
            .iter()
            .map(|c| {
                debug_assert!(c.residue.degree().map_or(true, |d| d == 0), "coefficient escaped GF(3)");
                c.residue.digit(0)
            })
            .collect();
        Gf3Poly::from_digits(&digits)
    }

    /// Build the discrete-log and Zech tables for this field.
    pub fn build_zech_table(&self, cfg: &RunConfig) -> Result<ZechTable> {
        if self.m > cfg.zech_cap || self.m > 16 {
            return Err(Gf3Error::ZechCapExceeded { m: self.m, cap: cfg.zech_cap.min(16) });
        }
        let n = self.order.to_u64().expect("m <= 16 fits u64");
        let field_size = 3usize.pow(self.m as u32);
        let ops = SmallField::new(self)?;
        let mut pow = vec![0u32; n as usize];
        let mut log = vec![ZechTable::SENTINEL; field_size];
        let mut cur = (1u64, 0u64); // alpha^0 = 1
        for i in 0..n as usize {
            let enc = ops.encode(cur);
            pow[i] = enc;
            log[enc as usize] = i as u32;
            cur = ops.mul_alpha(cur);
        }
        debug_assert_eq!(cur, (1, 0), "x is primitive, the cycle closes at n");
        let mut zech = vec![ZechTable::SENTINEL; n as usize];
        for i in 0..n as usize {
            let enc1 = ZechTable::encoding_plus_one(pow[i]);
            if enc1 != 0 {
                zech[i] = log[enc1 as usize];
            }
        }
        Ok(ZechTable { m: self.m, n, pow, log, zech })
    }

    pub(crate) fn small_field(&self) -> Result<SmallField> {
        SmallField::new(self)
    }
}

/// Discrete-log tables for GF(3^m): `pow[i]` is the base-3 encoding of
/// alpha^i, `log` inverts it (sentinel at the zero element), and `zech[i]`
/// is the discrete log of alpha^i + 1 (sentinel where alpha^i = -1).
pub struct ZechTable {
    m: usize,
    n: u64,
    pub pow: Vec<u32>,
    pub log: Vec<u32>,
    pub zech: Vec<u32>,
}

impl ZechTable {
    pub const SENTINEL: u32 = u32::MAX;

    pub fn m(&self) -> usize {
        self.m
    }

    /// Group order 3^m - 1.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Base-3 encoding of (element + 1): only the constant digit moves.
    #[inline]
    pub fn encoding_plus_one(enc: u32) -> u32 {
        match enc % 3 {
            2 => enc - 2,
            _ => enc + 1,
        }
    }

    /// Lane-wise mod-3 addition of two encodings.
    pub fn encoding_add(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0u32;
        let mut mul = 1u32;
        for _ in 0..self.m {
            out += ((a % 3 + b % 3) % 3) * mul;
            a /= 3;
            b /= 3;
            mul *= 3;
        }
        out
    }
}

/// Register-resident GF(3^m) arithmetic for m <= 31: residues are a single
/// pair of plane words, products fit one word before reduction.
pub(crate) struct SmallField {
    m: usize,
    mod_ones: u64,
    mod_twos: u64,
}

impl SmallField {
    pub(crate) fn new(ctx: &FieldContext) -> Result<Self> {
        if ctx.m > 31 {
            return Err(Gf3Error::ScanCapExceeded { m: ctx.m, cap: 31 });
        }
        let mut planes = (0u64, 0u64);
        for (i, d) in ctx.modulus.digits().iter().enumerate() {
            match d {
                1 => planes.0 |= 1 << i,
                2 => planes.1 |= 1 << i,
                _ => {}
            }
        }
        Ok(SmallField { m: ctx.m, mod_ones: planes.0, mod_twos: planes.1 })
    }

    #[inline]
    fn add_words(o1: u64, t1: u64, o2: u64, t2: u64) -> (u64, u64) {
        let n1 = !(o1 | t1);
        let n2 = !(o2 | t2);
        ((n1 & o2) | (o1 & n2) | (t1 & t2), (n1 & t2) | (t1 & n2) | (o1 & o2))
    }

    #[inline]
    pub(crate) fn add(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        Self::add_words(a.0, a.1, b.0, b.1)
    }

    #[inline]
    pub(crate) fn neg(&self, a: (u64, u64)) -> (u64, u64) {
        (a.1, a.0)
    }

    /// Reduce a raw product (degree <= 2m - 2) modulo the field polynomial.
    #[inline]
    fn reduce(&self, mut acc: (u64, u64)) -> (u64, u64) {
        let m = self.m;
        for pos in (m..=2 * m - 2).rev() {
            let bit = 1u64 << pos;
            let shift = pos - m;
            if acc.0 & bit != 0 {
                // subtract modulus << shift
                acc = Self::add_words(acc.0, acc.1, self.mod_twos << shift, self.mod_ones << shift);
            } else if acc.1 & bit != 0 {
                // subtract 2 * modulus << shift == add modulus << shift
                acc = Self::add_words(acc.0, acc.1, self.mod_ones << shift, self.mod_twos << shift);
            }
        }
        acc
    }

    #[inline]
    pub(crate) fn mul(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        let mut acc = (0u64, 0u64);
        let mut mask = a.0 | a.1;
        while mask != 0 {
            let i = mask.trailing_zeros();
            mask &= mask - 1;
            let (bo, bt) = if (a.0 >> i) & 1 == 1 { (b.0, b.1) } else { (b.1, b.0) };
            acc = Self::add_words(acc.0, acc.1, bo << i, bt << i);
        }
        self.reduce(acc)
    }

    #[inline]
    pub(crate) fn mul_alpha(&self, a: (u64, u64)) -> (u64, u64) {
        self.reduce((a.0 << 1, a.1 << 1))
    }

    pub(crate) fn pow(&self, a: (u64, u64), e: u64) -> (u64, u64) {
        if e == 0 {
            return (1, 0);
        }
        if a == (0, 0) {
            return (0, 0);
        }
        let mut result = (1u64, 0u64);
        for k in (0..64 - e.leading_zeros()).rev() {
            result = self.mul(result, result);
            if (e >> k) & 1 == 1 {
                result = self.mul(result, a);
            }
        }
        result
    }

    /// (element + 1): flip the constant digit upward.
    #[inline]
    pub(crate) fn add_one(&self, a: (u64, u64)) -> (u64, u64) {
        match ((a.0 & 1) << 1 | (a.1 & 1)) as u8 {
            0b10 => (a.0 & !1, a.1 | 1), // 1 -> 2
            0b01 => (a.0, a.1 & !1),     // 2 -> 0
            _ => (a.0 | 1, a.1),         // 0 -> 1
        }
    }

    pub(crate) fn encode(&self, a: (u64, u64)) -> u32 {
        let mut out = 0u32;
        for i in (0..self.m).rev() {
            out = out * 3 + (((a.0 >> i) & 1) + 2 * ((a.1 >> i) & 1)) as u32;
        }
        out
    }

    pub(crate) fn from_poly(&self, p: &Gf3Poly) -> (u64, u64) {
        let mut out = (0u64, 0u64);
        for (i, d) in p.digits().iter().enumerate() {
            debug_assert!(i < self.m);
            match d {
                1 => out.0 |= 1 << i,
                2 => out.1 |= 1 << i,
                _ => {}
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    fn p(s: &str) -> Gf3Poly {
        Gf3Poly::parse_algebraic(s).unwrap()
    }

    #[test]
    fn paper_moduli_are_primitive() {
        let c5 = FieldContext::build(5, Some(p("x^5+2x+1")), &cfg()).unwrap();
        assert_eq!(c5.order(), &BigUint::from(242u32));
        let c7 = FieldContext::build(7, Some(p("x^7+2x^2+1")), &cfg()).unwrap();
        assert_eq!(c7.order(), &BigUint::from(2186u32));
        let prod: BigUint = c7.prime_factors_of_order().iter().product();
        assert_eq!(&prod, c7.order());
    }

    #[test]
    fn default_modulus_m1() {
        let c = FieldContext::build(1, None, &cfg()).unwrap();
        assert_eq!(c.modulus(), &p("x+1"));
    }

    #[test]
    fn rejected_moduli() {
        // x^2 + 2x + 1 = (x+1)^2 is reducible
        assert!(matches!(
            FieldContext::build(2, Some(p("x^2+2x+1")), &cfg()),
            Err(Gf3Error::NotIrreducible)
        ));
        // x^2 + 1 is irreducible but x has order 4 < 8
        assert!(matches!(
            FieldContext::build(2, Some(p("x^2+1")), &cfg()),
            Err(Gf3Error::NotPrimitive)
        ));
        assert!(FieldContext::build(2, Some(p("x^3+2x+1")), &cfg()).is_err());
        assert!(FieldContext::build(0, None, &cfg()).is_err());
        assert!(FieldContext::build(99, None, &cfg()).is_err());
    }

    #[test]
    fn pow_and_lagrange() {
        let c = FieldContext::build(5, Some(p("x^5+2x+1")), &cfg()).unwrap();
        let a = c.alpha();
        assert_eq!(c.pow(&a, c.order()), c.one());
        assert_eq!(c.pow(&c.zero(), &BigUint::from(5u32)), c.zero());
        assert_eq!(c.pow(&c.zero(), &BigUint::from(0u32)), c.one());
        // pow matches repeated multiplication
        let mut acc = c.one();
        for e in 0..200u32 {
            assert_eq!(c.pow(&a, &BigUint::from(e)), acc, "e={e}");
            acc = c.mul(&acc, &a);
        }
    }

    #[test]
    fn quadratic_character_values() {
        for m in 1..=6usize {
            let c = FieldContext::build(m, None, &cfg()).unwrap();
            assert_eq!(c.quadratic_character(&c.one()), 1, "eta(1), m={m}");
            assert_eq!(c.quadratic_character(&c.alpha()), -1, "eta(alpha), m={m}");
            assert_eq!(c.quadratic_character(&c.zero()), 0);
            let minus_one = c.neg(&c.one());
            let expect = if m % 2 == 1 { -1 } else { 1 };
            assert_eq!(c.quadratic_character(&minus_one), expect, "eta(-1), m={m}");
        }
    }

    #[test]
    fn quadratic_character_multiplicative() {
        for m in 1..=5usize {
            let c = FieldContext::build(m, None, &cfg()).unwrap();
            let n = c.order_u64().unwrap();
            let a = c.alpha();
            let elems: Vec<FieldElement> =
                (0..n).map(|i| c.pow(&a, &BigUint::from(i))).collect();
            for x in elems.iter().step_by(7) {
                for y in elems.iter().step_by(11) {
                    let lhs = c.quadratic_character(&c.mul(x, y));
                    let rhs = c.quadratic_character(x) * c.quadratic_character(y);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn minimal_polynomials() {
        let c = FieldContext::build(5, Some(p("x^5+2x+1")), &cfg()).unwrap();
        // alpha is a root of its own defining polynomial
        assert_eq!(c.minimal_polynomial(&BigUint::from(1u32)), p("x^5+2x+1"));
        // alpha^0 = 1 has minimal polynomial x - 1
        assert_eq!(c.minimal_polynomial(&BigUint::from(0u32)), p("x+2"));
    }

    #[test]
    fn minimal_polynomial_degree_is_coset_size() {
        for m in 2..=6usize {
            let c = FieldContext::build(m, None, &cfg()).unwrap();
            let n = c.order_u64().unwrap();
            for i in (0..n).step_by(5) {
                let ib = BigUint::from(i);
                let mp = c.minimal_polynomial(&ib);
                assert_eq!(
                    mp.degree(),
                    Some(numthy::coset_size(&ib, 3, m)),
                    "m={m} i={i}"
                );
                assert!(is_irreducible(&mp).unwrap(), "m={m} i={i}");
                assert!(mp.is_monic());
            }
        }
    }

    #[test]
    fn minimal_polynomial_divides_xn_minus_1() {
        let c = FieldContext::build(4, None, &cfg()).unwrap();
        let n = c.order_u64().unwrap() as usize;
        // x^n - 1
        let mut digits = vec![0u8; n + 1];
        digits[0] = 2;
        digits[n] = 1;
        let xn1 = Gf3Poly::from_digits(&digits);
        for i in [0u64, 1, 2, 5, 7, 40] {
            let mp = c.minimal_polynomial(&BigUint::from(i));
            assert!(xn1.rem(&mp).unwrap().is_zero(), "i={i}");
        }
    }

    #[test]
    fn zech_table_invariant_m2() {
        let c = FieldContext::build(2, None, &cfg()).unwrap();
        let t = c.build_zech_table(&cfg()).unwrap();
        let n = t.n();
        assert_eq!(n, 8);
        for i in 0..n as usize {
            let plus = ZechTable::encoding_plus_one(t.pow[i]);
            if t.zech[i] == ZechTable::SENTINEL {
                assert_eq!(plus, 0, "sentinel must mean alpha^i = -1");
                assert_eq!(i as u64, n / 2);
            } else {
                assert_eq!(t.pow[t.zech[i] as usize], plus, "alpha^zech(i) = alpha^i + 1");
            }
        }
    }

    #[test]
    fn zech_sentinel_position() {
        for m in 1..=6usize {
            let c = FieldContext::build(m, None, &cfg()).unwrap();
            let t = c.build_zech_table(&cfg()).unwrap();
            let n = t.n();
            let sentinels: Vec<u64> = (0..n)
                .filter(|&i| t.zech[i as usize] == ZechTable::SENTINEL)
                .collect();
            assert_eq!(sentinels, vec![n / 2], "m={m}");
        }
    }

    #[test]
    fn zech_cap_enforced() {
        let c = FieldContext::build(5, None, &cfg()).unwrap();
        let tight = RunConfig { zech_cap: 4, ..RunConfig::default() };
        assert!(matches!(
            c.build_zech_table(&tight),
            Err(Gf3Error::ZechCapExceeded { .. })
        ));
    }

    #[test]
    fn small_field_matches_generic() {
        let c = FieldContext::build(6, None, &cfg()).unwrap();
        let ops = c.small_field().unwrap();
        let a = c.alpha();
        let a_small = ops.from_poly(a.residue());
        let mut x = c.one();
        let mut xs = (1u64, 0u64);
        for e in 0..100u64 {
            assert_eq!(ops.from_poly(x.residue()), xs, "e={e}");
            assert_eq!(ops.pow(a_small, e), xs);
            x = c.mul(&x, &a);
            xs = ops.mul_alpha(xs);
        }
        // addition against generic elements
        let u = c.pow(&a, &BigUint::from(17u32));
        let v = c.pow(&a, &BigUint::from(90u32));
        let w = c.add(&u, &v);
        assert_eq!(
            ops.add(ops.from_poly(u.residue()), ops.from_poly(v.residue())),
            ops.from_poly(w.residue())
        );
        assert_eq!(ops.add_one(ops.from_poly(u.residue())),
            ops.from_poly(c.add(&u, &c.one()).residue()));
    }

    #[test]
    fn field_axioms_sampled() {
        let c = FieldContext::build(4, None, &cfg()).unwrap();
        let a = c.alpha();
        let xs: Vec<FieldElement> =
            (0..20u32).map(|i| c.pow(&a, &BigUint::from(7 * i + 1))).collect();
        for t in xs.chunks(3).filter(|t| t.len() == 3) {
            let (x, y, z) = (&t[0], &t[1], &t[2]);
            assert_eq!(c.mul(x, &c.mul(y, z)), c.mul(&c.mul(x, y), z));
            assert_eq!(c.mul(x, &c.add(y, z)), c.add(&c.mul(x, y), &c.mul(x, z)));
            assert_eq!(c.add(x, y), c.add(y, x));
            assert_eq!(c.mul(x, y), c.mul(y, x));
            assert_eq!(c.add(x, &c.neg(x)), c.zero());
        }
    }
}
