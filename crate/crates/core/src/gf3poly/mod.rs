//! Dense univariate polynomial arithmetic over GF(3).
//!
//! Coefficients are base-3 digits packed two bits per digit into machine
//! words (split across two bit planes, see [`planes`]), so addition and
//! subtraction run word-parallel and negation is free. This keeps the
//! degree-30000 Frobenius chains and factorizations used elsewhere in the
//! crate at desk scale without asymptotically fast multiplication.
//!
//! The text format accepted and produced here is one polynomial per line,
//! ASCII digits in {0,1,2}, little-endian, first character the constant
//! term. Lines that are blank or start with `#` are skipped. A small parser
//! for human algebraic notation like `x^5+2x+1` is also provided.

mod factor;
mod planes;

pub use factor::{
    count_roots_in_subfield, factor, factor_degrees, factor_seeded, is_irreducible, Factorization,
};

use crate::error::{Gf3Error, Result};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use planes::{accumulate, add_words, get_digit, set_digit, top_nonzero, words_for, WORD_BITS};

/// Dense polynomial over GF(3), little-endian digits in two bit planes.
///
/// The zero polynomial has `len == 0`; otherwise the digit at `len - 1` is
/// nonzero. Values are immutable from the outside: every operation returns
/// a fresh polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf3Poly {
    ones: Vec<u64>,
    twos: Vec<u64>,
    len: usize,
}

impl Gf3Poly {
    pub fn zero() -> Self {
        Gf3Poly { ones: Vec::new(), twos: Vec::new(), len: 0 }
    }

    pub fn one() -> Self {
        Gf3Poly::constant(1)
    }

    pub fn constant(c: u8) -> Self {
        assert!(c < 3, "GF(3) digit out of range");
        if c == 0 {
            return Gf3Poly::zero();
        }
        Gf3Poly::from_digits(&[c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Gf3Poly::from_digits(&[0, 1])
    }

    /// `c * x^degree`.
    pub fn monomial(degree: usize, c: u8) -> Self {
        assert!(c < 3, "GF(3) digit out of range");
        if c == 0 {
            return Gf3Poly::zero();
        }
        let len = degree + 1;
        let mut ones = vec![0u64; words_for(len)];
        let mut twos = vec![0u64; words_for(len)];
        set_digit(&mut ones, &mut twos, degree, c);
        Gf3Poly { ones, twos, len }
    }

    /// Build from little-endian digits; trailing zeros are trimmed.
    pub fn from_digits(digits: &[u8]) -> Self {
        let mut len = digits.len();
        while len > 0 && digits[len - 1] == 0 {
            len -= 1;
        }
        let mut ones = vec![0u64; words_for(len)];
        let mut twos = vec![0u64; words_for(len)];
        for (i, &d) in digits[..len].iter().enumerate() {
            assert!(d < 3, "GF(3) digit out of range");
            set_digit(&mut ones, &mut twos, i, d);
        }
        Gf3Poly { ones, twos, len }
    }

    fn from_planes(mut ones: Vec<u64>, mut twos: Vec<u64>, bound: usize) -> Self {
        let len = if bound == 0 {
            0
        } else {
            match top_nonzero(&ones, &twos, bound - 1) {
                Some(p) => p + 1,
                None => 0,
            }
        };
        ones.truncate(words_for(len));
        twos.truncate(words_for(len));
        // clear any stale bits above len in the top word
        if len % WORD_BITS != 0 {
            let keep = (1u64 << (len % WORD_BITS)) - 1;
            if let Some(w) = ones.last_mut() {
                *w &= keep;
            }
            if let Some(w) = twos.last_mut() {
                *w &= keep;
            }
        }
        Gf3Poly { ones, twos, len }
    }

    pub fn is_zero(&self) -> bool {
        self.len == 0
    }

    /// Number of stored digits (degree + 1 for nonzero input).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.len.checked_sub(1)
    }

    pub fn digit(&self, i: usize) -> u8 {
        if i >= self.len {
            0
        } else {
            get_digit(&self.ones, &self.twos, i)
        }
    }

    pub fn leading_digit(&self) -> u8 {
        if self.len == 0 {
            0
        } else {
            self.digit(self.len - 1)
        }
    }

    pub fn digits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.digit(i)).collect()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_digit() == 1
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let bound = self.len.max(other.len);
        let nw = words_for(bound);
        let mut ones = self.ones.clone();
        let mut twos = self.twos.clone();
        ones.resize(nw, 0);
        twos.resize(nw, 0);
        let (so, st) = if negate_other {
            (&other.twos, &other.ones)
        } else {
            (&other.ones, &other.twos)
        };
        for w in 0..so.len() {
            let (o, t) = add_words(ones[w], twos[w], so[w], st[w]);
            ones[w] = o;
            twos[w] = t;
        }
        Gf3Poly::from_planes(ones, twos, bound)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Self {
        Gf3Poly { ones: self.twos.clone(), twos: self.ones.clone(), len: self.len }
    }

    pub fn mul_scalar(&self, c: u8) -> Self {
        match c {
            0 => Gf3Poly::zero(),
            1 => self.clone(),
            2 => self.neg(),
            _ => unreachable!("GF(3) digit out of range"),
        }
    }

    /// Multiply by `x^k`.
    pub fn shl_digits(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let len = self.len + k;
        let mut ones = vec![0u64; words_for(len)];
        let mut twos = vec![0u64; words_for(len)];
        accumulate(&mut ones, &mut twos, &self.ones, &self.twos, k, false);
        Gf3Poly { ones, twos, len }
    }

    /// Visit nonzero digits as `(index, digit)` pairs, low to high.
    fn for_each_nonzero(&self, mut f: impl FnMut(usize, u8)) {
        for w in 0..self.ones.len() {
            let mut mask = self.ones[w] | self.twos[w];
            while mask != 0 {
                let b = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                let i = w * WORD_BITS + b;
                let d = if (self.ones[w] >> b) & 1 == 1 { 1 } else { 2 };
                f(i, d);
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Gf3Poly::zero();
        }
        // iterate digits of the shorter operand, shift-accumulate the longer
        let (short, long) = if self.len <= other.len { (self, other) } else { (other, self) };
        let out_len = self.len + other.len - 1;
        let nw = words_for(out_len);
        let mut ones = vec![0u64; nw];
        let mut twos = vec![0u64; nw];
        short.for_each_nonzero(|i, d| {
            accumulate(&mut ones, &mut twos, &long.ones, &long.twos, i, d == 2);
        });
        // leading digits never cancel over a field
        Gf3Poly { ones, twos, len: out_len }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Quotient and remainder with `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let db = divisor.degree().ok_or(Gf3Error::DivisionByZero)?;
        let da = match self.degree() {
            Some(d) if d >= db => d,
            _ => return Ok((Gf3Poly::zero(), self.clone())),
        };
        let lb = divisor.leading_digit();
        let mut r_ones = self.ones.clone();
        let mut r_twos = self.twos.clone();
        let qlen = da - db + 1;
        let mut q_ones = vec![0u64; words_for(qlen)];
        let mut q_twos = vec![0u64; words_for(qlen)];
        let mut cursor = da;
        loop {
            let p = match top_nonzero(&r_ones, &r_twos, cursor) {
                Some(p) if p >= db => p,
                _ => break,
            };
            let c = get_digit(&r_ones, &r_twos, p);
            // in GF(3) every nonzero digit is its own inverse
            let qd = (c * lb) % 3;
            set_digit(&mut q_ones, &mut q_twos, p - db, qd);
            // subtract qd * divisor << (p - db); 2*divisor == -divisor
            accumulate(&mut r_ones, &mut r_twos, &divisor.ones, &divisor.twos, p - db, qd == 1);
            if p == 0 {
                break;
            }
            cursor = p - 1;
        }
        let q = Gf3Poly::from_planes(q_ones, q_twos, qlen);
        let r = Gf3Poly::from_planes(r_ones, r_twos, db.min(self.len));
        Ok((q, r))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Division known to be exact; panics (debug) on nonzero remainder.
    pub(crate) fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.divrem(divisor).expect("division by zero in exact division");
        debug_assert!(r.is_zero(), "division was not exact");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Gf3Error::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    pub fn make_monic(&self) -> Self {
        match self.leading_digit() {
            2 => self.neg(),
            _ => self.clone(),
        }
    }

    /// Formal derivative (exponents reduce mod 3).
    pub fn derivative(&self) -> Self {
        if self.len <= 1 {
            return Gf3Poly::zero();
        }
        let len = self.len - 1;
        let mut ones = vec![0u64; words_for(len)];
        let mut twos = vec![0u64; words_for(len)];
        self.for_each_nonzero(|i, d| {
            if i == 0 {
                return;
            }
            let c = (d as usize * (i % 3)) % 3;
            if c != 0 {
                set_digit(&mut ones, &mut twos, i - 1, c as u8);
            }
        });
        Gf3Poly::from_planes(ones, twos, len)
    }

    /// Cube via the Frobenius endomorphism: digit i moves to 3i.
    pub fn cube_spread(&self) -> Self {
        if self.is_zero() {
            return Gf3Poly::zero();
        }
        let len = 3 * (self.len - 1) + 1;
        let mut ones = vec![0u64; words_for(len)];
        let mut twos = vec![0u64; words_for(len)];
        self.for_each_nonzero(|i, d| set_digit(&mut ones, &mut twos, 3 * i, d));
        Gf3Poly { ones, twos, len }
    }

    /// Inverse of [`cube_spread`]: valid only when all digits sit at
    /// positions divisible by 3.
    pub(crate) fn cube_root(&self) -> Self {
        if self.is_zero() {
            return Gf3Poly::zero();
        }
        let len = (self.len - 1) / 3 + 1;
        let mut ones = vec![0u64; words_for(len)];
        let mut twos = vec![0u64; words_for(len)];
        self.for_each_nonzero(|i, d| {
            debug_assert!(i % 3 == 0, "not a cube");
            set_digit(&mut ones, &mut twos, i / 3, d);
        });
        Gf3Poly { ones, twos, len }
    }

    /// `base^exp mod modulus` by square-and-multiply over the exponent bits.
    pub fn modpow(base: &Self, exp: &BigUint, modulus: &Self) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Gf3Error::DivisionByZero);
        }
        if modulus.degree() == Some(0) {
            return Err(Gf3Error::InvalidModulus);
        }
        let mut result = Gf3Poly::one();
        if exp.is_zero() {
            return Ok(result);
        }
        let b = base.rem(modulus)?;
        let bits = exp.bits();
        for k in (0..bits).rev() {
            result = result.square().rem(modulus)?;
            if exp.bit(k) {
                result = result.mul(&b).rem(modulus)?;
            }
        }
        Ok(result)
    }

    /// `x^(3^k) mod modulus` by k successive Frobenius cubings.
    pub fn frobenius_power(k: usize, modulus: &Self) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Gf3Error::DivisionByZero);
        }
        if modulus.degree() == Some(0) {
            return Err(Gf3Error::InvalidModulus);
        }
        let mut h = Gf3Poly::x().rem(modulus)?;
        for _ in 0..k {
            h = h.cube_spread().rem(modulus)?;
        }
        Ok(h)
    }

    /// Evaluate at a GF(3) point.
    pub fn eval_gf3(&self, x: u8) -> u8 {
        assert!(x < 3);
        let mut acc = 0u32;
        for i in (0..self.len).rev() {
            acc = (acc * x as u32 + self.digit(i) as u32) % 3;
        }
        acc as u8
    }

    // ---- text formats ----

    /// Canonical digit-string rendering; the zero polynomial prints as "0".
    pub fn to_digit_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        (0..self.len).map(|i| char::from(b'0' + self.digit(i))).collect()
    }

    /// Parse a little-endian digit string.
    pub fn parse_digits(s: &str) -> Result<Self> {
        let mut digits = Vec::with_capacity(s.len());
        for ch in s.trim().chars() {
            match ch {
                '0' => digits.push(0),
                '1' => digits.push(1),
                '2' => digits.push(2),
                _ => return Err(Gf3Error::Parse(format!("invalid GF(3) digit '{ch}'"))),
            }
        }
        if digits.is_empty() {
            return Err(Gf3Error::Parse("empty polynomial line".into()));
        }
        Ok(Gf3Poly::from_digits(&digits))
    }

    /// Algebraic rendering like `x^10+2x^9+x+2`; zero prints as "0".
    pub fn to_algebraic(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for i in (0..self.len).rev() {
            let c = self.digit(i);
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            let var = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            parts.push(format!("{coeff}{var}"));
        }
        parts.join("+")
    }

    /// Parse algebraic notation: signed terms `[c]x[^k]`, e.g.
    /// `x^35 - x^32 + 2x + 1`. Coefficients are reduced mod 3, so `-x`
    /// means `2x`.
    pub fn parse_algebraic(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Gf3Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(usize, i64)> = Vec::new();
        let bytes = compact.as_bytes();
        let mut pos = 0usize;
        let mut sign = 1i64;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            sign = if bytes[0] == b'-' { -1 } else { 1 };
            pos = 1;
        }
        while pos < bytes.len() {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: i64 = if pos > start {
                compact[start..pos]
                    .parse()
                    .map_err(|_| Gf3Error::Parse("bad coefficient".into()))?
            } else {
                1
            };
            let exp: usize = if pos < bytes.len() && bytes[pos] == b'x' {
                pos += 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let es = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == es {
                        return Err(Gf3Error::Parse("missing exponent after '^'".into()));
                    }
                    compact[es..pos]
                        .parse()
                        .map_err(|_| Gf3Error::Parse("bad exponent".into()))?
                } else {
                    1
                }
            } else {
                if pos == start {
                    return Err(Gf3Error::Parse(format!(
                        "unexpected character '{}'",
                        compact[pos..].chars().next().unwrap()
                    )));
                }
                0
            };
            terms.push((exp, sign * coeff));
            if pos == bytes.len() {
                break;
            }
            sign = match bytes[pos] {
                b'+' => 1,
                b'-' => -1,
                other => {
                    return Err(Gf3Error::Parse(format!(
                        "expected '+' or '-', found '{}'",
                        other as char
                    )))
                }
            };
            pos += 1;
            if pos == bytes.len() {
                return Err(Gf3Error::Parse("trailing sign".into()));
            }
        }
        let deg = terms.iter().map(|&(e, _)| e).max().unwrap_or(0);
        let mut digits = vec![0i64; deg + 1];
        for (e, c) in terms {
            digits[e] += c;
        }
        let digits: Vec<u8> = digits.iter().map(|&c| (c.rem_euclid(3)) as u8).collect();
        Ok(Gf3Poly::from_digits(&digits))
    }

    /// Parse either format: pure {0,1,2} strings are read as little-endian
    /// digit strings, anything else as algebraic notation.
    pub fn parse_flexible(s: &str) -> Result<Self> {
        let t = s.trim();
        if !t.is_empty() && t.chars().all(|c| matches!(c, '0' | '1' | '2')) {
            Gf3Poly::parse_digits(t)
        } else {
            Gf3Poly::parse_algebraic(t)
        }
    }

    /// 64-bit hash of the digit content, used to seed splitting PRNGs.
    pub(crate) fn content_hash(&self) -> u64 {
        let mut h = 0xcbf2_9ce4_8422_2325u64;
        let mut eat = |v: u64| {
            for byte in v.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        eat(self.len as u64);
        for w in &self.ones {
            eat(*w);
        }
        for w in &self.twos {
            eat(*w);
        }
        h
    }
}

/// Parse a multi-line polynomial file: one digit string per line, blank
/// lines and `#` comments ignored.
pub fn parse_poly_lines(text: &str) -> Result<Vec<Gf3Poly>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(Gf3Poly::parse_digits(t)?);
    }
    Ok(out)
}

/// Expand `(x+1)^e` as an explicit dense polynomial: the coefficient of
/// x^k is the binomial C(e, k) mod 3, obtained digit-wise from the base-3
/// expansions (only digit pairs with k_i <= e_i contribute, and each
/// (e_i, k_i) = (2, 1) pair contributes a factor 2).
pub fn binomial_power_poly(e: &BigUint, cap: u64) -> Result<Gf3Poly> {
    if *e > BigUint::from(cap) {
        return Err(Gf3Error::DegreeTooLarge { degree: e.to_string(), cap });
    }
    let e_u = e.to_u64().expect("cap fits u64") as usize;
    let e_digits: Vec<u8> = {
        let mut v = Vec::new();
        let mut t = e_u;
        while t > 0 {
            v.push((t % 3) as u8);
            t /= 3;
        }
        v
    };
    let len = e_u + 1;
    let mut ones = vec![0u64; words_for(len)];
    let mut twos = vec![0u64; words_for(len)];
    // DFS over admissible base-3 digit vectors of k
    fn rec(
        e_digits: &[u8],
        pos: usize,
        k: usize,
        pow3: usize,
        coeff: u8,
        ones: &mut [u64],
        twos: &mut [u64],
    ) {
        if pos == e_digits.len() {
            set_digit(ones, twos, k, coeff);
            return;
        }
        let ed = e_digits[pos];
        for kd in 0..=ed {
            let c = if ed == 2 && kd == 1 { (coeff * 2) % 3 } else { coeff };
            rec(e_digits, pos + 1, k + kd as usize * pow3, pow3 * 3, c, ones, twos);
        }
    }
    rec(&e_digits, 0, 0, 1, 1, &mut ones, &mut twos);
    Ok(Gf3Poly { ones, twos, len })
}

impl std::cmp::Ord for Gf3Poly {
    /// Canonical order: by degree, then by the base-3 integer encoding of
    /// the coefficient vector (compared from the most significant digit).
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for i in (0..self.len).rev() {
                let o = self.digit(i).cmp(&other.digit(i));
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl std::cmp::PartialOrd for Gf3Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Gf3Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_algebraic())
    }
}

impl std::fmt::Display for Gf3Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_algebraic())
    }
}
