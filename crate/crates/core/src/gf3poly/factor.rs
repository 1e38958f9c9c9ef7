//! Complete factorization over GF(3): squarefree decomposition, then
//! distinct-degree factorization, then randomized equal-degree splitting.
//!
//! Splitting randomness comes from a ChaCha stream seeded by a hash of the
//! input (optionally mixed with a caller seed), so runs are reproducible;
//! the returned factor list is canonically ordered either way.

use super::Gf3Poly;
use crate::error::{Gf3Error, Result};
use num_bigint::BigUint;
use num_traits::One;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `unit * prod(factor^multiplicity)` with monic irreducible factors,
/// pairwise distinct, sorted by (degree, base-3 coefficient encoding).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u8,
    pub factors: Vec<(Gf3Poly, usize)>,
}

impl Factorization {
    /// Re-multiply the factorization; used to validate reconstruction.
    pub fn product(&self) -> Gf3Poly {
        let mut acc = Gf3Poly::constant(self.unit);
        for (f, mult) in &self.factors {
            for _ in 0..*mult {
                acc = acc.mul(f);
            }
        }
        acc
    }

    /// Total degree including multiplicity.
    pub fn total_degree(&self) -> usize {
        self.factors.iter().map(|(f, m)| f.degree().unwrap_or(0) * m).sum()
    }

    /// Sorted (degree, multiplicity) pairs, one entry per factor.
    pub fn degree_multiset(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> =
            self.factors.iter().map(|(f, m)| (f.degree().unwrap_or(0), *m)).collect();
        v.sort_unstable();
        v
    }
}

/// Factor completely with the default input-derived seed.
pub fn factor(f: &Gf3Poly) -> Result<Factorization> {
    factor_seeded(f, 0)
}

/// Factor completely; `seed` is mixed into the input-derived PRNG seed so
/// the splitting path can be varied without losing reproducibility.
pub fn factor_seeded(f: &Gf3Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Gf3Error::ZeroPolynomial);
    }
    let unit = f.leading_digit();
    let monic = f.make_monic();
    let mut factors: Vec<(Gf3Poly, usize)> = Vec::new();
    if monic.degree() == Some(0) {
        return Ok(Factorization { unit, factors });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(f.content_hash() ^ seed);
    for (part, mult) in squarefree_decomposition(&monic) {
        for (d, prod) in distinct_degree(&part)? {
            if prod.degree() == Some(d) {
                factors.push((prod, mult));
            } else {
                for irr in equal_degree(prod, d, &mut rng)? {
                    factors.push((irr, mult));
                }
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    debug_assert!(factors.windows(2).all(|w| w[0].0 != w[1].0));
    Ok(Factorization { unit, factors })
}

/// Degree multiset of the irreducible factors, one `(degree, multiplicity)`
/// entry per factor, without performing equal-degree splitting. Cheaper
/// than [`factor`] for large inputs when only degrees are needed.
pub fn factor_degrees(f: &Gf3Poly) -> Result<Vec<(usize, usize)>> {
    if f.is_zero() {
        return Err(Gf3Error::ZeroPolynomial);
    }
    let monic = f.make_monic();
    let mut out = Vec::new();
    if monic.degree() == Some(0) {
        return Ok(out);
    }
    for (part, mult) in squarefree_decomposition(&monic) {
        for (d, prod) in distinct_degree(&part)? {
            let count = prod.degree().unwrap_or(0) / d;
            for _ in 0..count {
                out.push((d, mult));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Pairwise-coprime squarefree parts with their multiplicities.
/// Multiplicities divisible by 3 are recovered through cube roots.
fn squarefree_decomposition(g: &Gf3Poly) -> Vec<(Gf3Poly, usize)> {
    let mut out = Vec::new();
    sfd_into(g.clone(), 1, &mut out);
    out
}

fn sfd_into(f: Gf3Poly, scale: usize, out: &mut Vec<(Gf3Poly, usize)>) {
    debug_assert!(f.is_monic() && f.degree().map_or(false, |d| d >= 1));
    let df = f.derivative();
    if df.is_zero() {
        // every exponent is a multiple of 3: f is a perfect cube
        sfd_into(f.cube_root(), scale * 3, out);
        return;
    }
    let mut c = f.gcd(&df).expect("nonzero inputs");
    let mut w = f.div_exact(&c);
    let mut i = 1usize;
    while w.degree() != Some(0) {
        let y = w.gcd(&c).expect("nonzero inputs");
        let z = w.div_exact(&y);
        if z.degree() != Some(0) {
            out.push((z, i * scale));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if c.degree() != Some(0) {
        // factors whose multiplicity is divisible by 3
        sfd_into(c.cube_root(), scale * 3, out);
    }
}

/// Distinct-degree split of a monic squarefree polynomial: returns
/// `(d, product of all irreducible factors of degree d)` in increasing d.
fn distinct_degree(part: &Gf3Poly) -> Result<Vec<(usize, Gf3Poly)>> {
    let mut res = Vec::new();
    let mut fstar = part.clone();
    let mut h = Gf3Poly::x().rem(&fstar)?;
    let mut d = 0usize;
    while let Some(deg) = fstar.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            // what remains is irreducible
            res.push((deg, fstar));
            break;
        }
        h = h.cube_spread().rem(&fstar)?;
        let hx = h.sub(&Gf3Poly::x());
        let g = if hx.is_zero() { fstar.clone() } else { fstar.gcd(&hx)? };
        if g.degree() != Some(0) {
            res.push((d, g.clone()));
            fstar = fstar.div_exact(&g);
            if fstar.degree() == Some(0) {
                break;
            }
            h = h.rem(&fstar)?;
        }
    }
    Ok(res)
}

/// Cantor-Zassenhaus splitting of a product of k >= 1 irreducible factors,
/// all of degree d.
fn equal_degree(prod: Gf3Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Gf3Poly>> {
    let deg = prod.degree().expect("nonconstant");
    debug_assert!(deg % d == 0);
    if deg == d {
        return Ok(vec![prod]);
    }
    let exp = (BigUint::from(3u32).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let r = random_poly(rng, deg);
        let shared = r.gcd(&prod)?;
        let split = if shared.degree().map_or(false, |s| s > 0 && s < deg) {
            Some(shared)
        } else {
            let s = Gf3Poly::modpow(&r, &exp, &prod)?;
            let s1 = s.sub(&Gf3Poly::one());
            if s1.is_zero() {
                None
            } else {
                let t = s1.gcd(&prod)?;
                t.degree().and_then(|td| (td > 0 && td < deg).then_some(t))
            }
        };
        if let Some(t) = split {
            let other = prod.div_exact(&t);
            let mut left = equal_degree(t, d, rng)?;
            let right = equal_degree(other, d, rng)?;
            left.extend(right);
            return Ok(left);
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, below_degree: usize) -> Gf3Poly {
    loop {
        let digits: Vec<u8> = (0..below_degree).map(|_| (rng.next_u32() % 3) as u8).collect();
        let p = Gf3Poly::from_digits(&digits);
        if p.degree().map_or(false, |d| d >= 1) {
            return p;
        }
    }
}

/// Rabin irreducibility test: f of degree n is irreducible iff
/// x^(3^n) = x mod f and gcd(x^(3^(n/p)) - x, f) = 1 for every prime p | n.
pub fn is_irreducible(f: &Gf3Poly) -> Result<bool> {
    let n = match f.degree() {
        None => return Err(Gf3Error::ZeroPolynomial),
        Some(0) => return Err(Gf3Error::ConstantPolynomial),
        Some(n) => n,
    };
    let monic = f.make_monic();
    let checkpoints: Vec<usize> = prime_divisors(n).into_iter().map(|p| n / p).collect();
    let x = Gf3Poly::x();
    let x_red = x.rem(&monic)?;
    let mut h = x_red.clone();
    for k in 1..=n {
        h = h.cube_spread().rem(&monic)?;
        if checkpoints.contains(&k) {
            let diff = h.sub(&x);
            if diff.is_zero() || monic.gcd(&diff)?.degree() != Some(0) {
                return Ok(false);
            }
        }
    }
    Ok(h == x_red)
}

/// Number of distinct roots of f in GF(3^m), i.e. the degree of
/// gcd(x^(3^m) - x, f). Equals the sum of d over irreducible factors of
/// degree d dividing m (multiplicity ignored).
pub fn count_roots_in_subfield(f: &Gf3Poly, m: usize) -> Result<usize> {
    assert!(m >= 1, "subfield degree must be positive");
    match f.degree() {
        None => return Err(Gf3Error::ZeroPolynomial),
        Some(0) => return Ok(0),
        Some(_) => {}
    }
    let g = Gf3Poly::frobenius_power(m, &f.make_monic())?;
    let diff = g.sub(&Gf3Poly::x());
    if diff.is_zero() {
        // f divides x^(3^m) - x, hence is squarefree with all roots in GF(3^m)
        return Ok(f.degree().unwrap());
    }
    Ok(f.gcd(&diff)?.degree().unwrap_or(0))
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
