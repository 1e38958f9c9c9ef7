//! Word-parallel kernels for GF(3) digit vectors stored as two bit planes.
//!
//! Digit i lives at bit `i % 64` of word `i / 64` in each plane: the `ones`
//! plane marks digits equal to 1, the `twos` plane digits equal to 2. The
//! 11 bit pattern is never produced. Negation mod 3 is a plane swap, which
//! makes subtraction as cheap as addition.

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(digits: usize) -> usize {
    digits.div_ceil(WORD_BITS)
}

/// Lane-wise sum mod 3 of 64 digit pairs.
#[inline(always)]
pub(crate) fn add_words(o1: u64, t1: u64, o2: u64, t2: u64) -> (u64, u64) {
    let n1 = !(o1 | t1);
    let n2 = !(o2 | t2);
    let ones = (n1 & o2) | (o1 & n2) | (t1 & t2);
    let twos = (n1 & t2) | (t1 & n2) | (o1 & o2);
    (ones, twos)
}

/// dst += src << shift_digits (or -= when `negate`), lane-wise mod 3.
///
/// `dst` must already span `shift_digits + 64 * src_words` digits.
pub(crate) fn accumulate(
    dst_ones: &mut [u64],
    dst_twos: &mut [u64],
    src_ones: &[u64],
    src_twos: &[u64],
    shift_digits: usize,
    negate: bool,
) {
    // negation swaps the roles of the source planes
    let (src_o, src_t) = if negate {
        (src_twos, src_ones)
    } else {
        (src_ones, src_twos)
    };
    let wo = shift_digits / WORD_BITS;
    let bo = shift_digits % WORD_BITS;
    if bo == 0 {
        for w in 0..src_o.len() {
            let (o, t) = add_words(dst_ones[w + wo], dst_twos[w + wo], src_o[w], src_t[w]);
            dst_ones[w + wo] = o;
            dst_twos[w + wo] = t;
        }
    } else {
        let mut carry_o = 0u64;
        let mut carry_t = 0u64;
        for w in 0..src_o.len() {
            let so = (src_o[w] << bo) | carry_o;
            let st = (src_t[w] << bo) | carry_t;
            carry_o = src_o[w] >> (WORD_BITS - bo);
            carry_t = src_t[w] >> (WORD_BITS - bo);
            let (o, t) = add_words(dst_ones[w + wo], dst_twos[w + wo], so, st);
            dst_ones[w + wo] = o;
            dst_twos[w + wo] = t;
        }
        if carry_o | carry_t != 0 {
            let w = src_o.len() + wo;
            let (o, t) = add_words(dst_ones[w], dst_twos[w], carry_o, carry_t);
            dst_ones[w] = o;
            dst_twos[w] = t;
        }
    }
}

/// Index of the highest nonzero digit at or below `pos`, scanning downward.
pub(crate) fn top_nonzero(ones: &[u64], twos: &[u64], pos: usize) -> Option<usize> {
    let mut w = pos / WORD_BITS;
    let b = pos % WORD_BITS;
    let keep = if b == WORD_BITS - 1 {
        !0u64
    } else {
        (1u64 << (b + 1)) - 1
    };
    let mut mask = (ones[w] | twos[w]) & keep;
    loop {
        if mask != 0 {
            return Some(w * WORD_BITS + (WORD_BITS - 1 - mask.leading_zeros() as usize));
        }
        if w == 0 {
            return None;
        }
        w -= 1;
        mask = ones[w] | twos[w];
    }
}

#[inline]
pub(crate) fn get_digit(ones: &[u64], twos: &[u64], i: usize) -> u8 {
    let w = i / WORD_BITS;
    let b = i % WORD_BITS;
    (((ones[w] >> b) & 1) + 2 * ((twos[w] >> b) & 1)) as u8
}

#[inline]
pub(crate) fn set_digit(ones: &mut [u64], twos: &mut [u64], i: usize, d: u8) {
    let w = i / WORD_BITS;
    let b = i % WORD_BITS;
    let bit = 1u64 << b;
    ones[w] &= !bit;
    twos[w] &= !bit;
    match d {
        0 => {}
        1 => ones[w] |= bit,
        2 => twos[w] |= bit,
        _ => unreachable!("GF(3) digit out of range"),
    }
}
