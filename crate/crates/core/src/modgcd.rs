//! Polynomial gcd over `K` by reduction modulo split primes.
//!
//! Each prime `P ≡ 1 (mod M)` with `q` a square mod `P` gives `[K:Q]`
//! embeddings `K → F_P`. The monic gcd is computed in every embedding,
//! recombined into coordinates mod `P`, lifted by CRT and rational
//! reconstruction, and finally checked by exact division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{FieldCtx, FieldElem};
use crate::poly::Poly;

const START: u64 = (1 << 31) - 1;
const MAX_PRIMES: usize = 400;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for d in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(d) {
            return n == d;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    // Tonelli-Shanks
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| powmod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime with its embeddings, each given as the images of the basis.
struct SplitPrime {
    p: u64,
    /// `images[e][b]`: basis element `b` under embedding `e`.
    images: Vec<Vec<u64>>,
    /// Inverse of the matrix `images`.
    inverse: Vec<Vec<u64>>,
}

fn split_prime(ctx: &FieldCtx, p: u64) -> Option<SplitPrime> {
    let m = ctx.m();
    if !(p - 1).is_multiple_of(m) {
        return None;
    }
    let s = if ctx.q_is_square() {
        None
    } else {
        Some(sqrt_mod(ctx.q(), p)?)
    };
    if s == Some(0) {
        return None;
    }
    let factors = prime_factors(m);
    let w = (2..p).map(|x| powmod(x, (p - 1) / m, p)).find(|&w| {
        factors.iter().all(|&r| powmod(w, m / r, p) != 1)
    })?;
    let phi = ctx.phi();
    let units: Vec<u64> = (0..m.max(1)).filter(|k| k.gcd(&m) == 1 || m == 1).collect();
    let signs: Vec<u64> = match s {
        None => vec![0],
        Some(s) => vec![s, p - s],
    };
    let mut images = Vec::new();
    for &sg in &signs {
        for &k in &units {
            let z = powmod(w, k, p);
            let mut row = Vec::with_capacity(ctx.degree());
            for j in 0..signs.len() {
                for i in 0..phi {
                    let sj = if j == 0 { 1 } else { sg };
                    row.push(mulmod(powmod(z, i as u64, p), sj, p));
                }
            }
            images.push(row);
        }
    }
    let inverse = invert(&images, p)?;
    Some(SplitPrime { p, images, inverse })
}

fn invert(a: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    let mut aug: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| (i == j) as u64));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| aug[r][c] != 0)?;
        aug.swap(c, piv);
        let inv = invmod(aug[c][c], p);
        for x in aug[c].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for r in 0..n {
            if r != c && aug[r][c] != 0 {
                let f = aug[r][c];
                for k in 0..2 * n {
                    let sub = mulmod(f, aug[c][k], p);
                    aug[r][k] = (aug[r][k] + p - sub) % p;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn rational_mod(x: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = x.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = x.numer().mod_floor(&pb).to_u64()?;
    Some(mulmod(n, invmod(d, p), p))
}

fn poly_mod_prime(f: &Poly, sp: &SplitPrime) -> Option<Vec<Vec<u64>>> {
    let p = sp.p;
    let mut coords: Vec<Vec<u64>> = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        coords.push(c.coeffs().iter().map(|x| rational_mod(x, p)).collect::<Option<_>>()?);
    }
    Some(
        sp.images
            .iter()
            .map(|row| {
                coords
                    .iter()
                    .map(|v| v.iter().zip(row).fold(0, |acc, (a, b)| (acc + mulmod(*a, *b, p)) % p))
                    .collect()
            })
            .collect(),
    )
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn gcd_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let inv = invmod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let c = mulmod(*a.last().unwrap(), inv, p);
            let shift = a.len() - b.len();
            for (j, y) in b.iter().enumerate() {
                let sub = mulmod(c, *y, p);
                a[shift + j] = (a[shift + j] + p - sub) % p;
            }
            a = trim(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = invmod(l, p);
        for x in a.iter_mut() {
            *x = mulmod(*x, inv, p);
        }
    }
    a
}

fn rational_reconstruct(u: &BigInt, n: &BigInt) -> Option<BigRational> {
    let bound = (n / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (n.clone(), u.mod_floor(n));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Monic gcd of two nonzero polynomials, or `None` if no suitable primes
/// were found.
pub(crate) fn modular_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let ctx = a.ctx();
    let dim = ctx.degree();
    let mut modulus = BigInt::one();
    let mut acc: Vec<Vec<BigInt>> = Vec::new();
    let mut deg = usize::MAX;
    let mut used = 0;
    let mut p = START;
    while used < MAX_PRIMES && p > 1 << 20 {
        p -= 1;
        if !is_prime_u64(p) {
            continue;
        }
        let Some(sp) = split_prime(ctx, p) else {
            continue;
        };
        let (Some(am), Some(bm)) = (poly_mod_prime(a, &sp), poly_mod_prime(b, &sp)) else {
            continue;
        };
        // leading coefficients must survive in every embedding
        if am.iter().any(|v| trim(v.clone()).len() != a.coeffs().len())
            || bm.iter().any(|v| trim(v.clone()).len() != b.coeffs().len())
        {
            continue;
        }
        used += 1;
        let gs: Vec<Vec<u64>> = am.iter().zip(&bm).map(|(x, y)| gcd_fp(x, y, p)).collect();
        let d = gs.iter().map(|g| g.len() - 1).min().unwrap();
        if d == 0 {
            return Some(Poly::one(ctx));
        }
        if gs.iter().any(|g| g.len() - 1 != d) || d > deg {
            continue;
        }
        if d < deg {
            deg = d;
            modulus = BigInt::one();
            acc = vec![vec![BigInt::zero(); dim]; d];
        }
        // coordinates of the non-leading coefficients mod p
        let pb = BigInt::from(p);
        for (t, slot) in acc.iter_mut().enumerate() {
            let y: Vec<u64> = gs.iter().map(|g| g[t]).collect();
            for (i, row) in sp.inverse.iter().enumerate() {
                let x = row.iter().zip(&y).fold(0, |s, (r, v)| (s + mulmod(*r, *v, p)) % p);
                // CRT: slot ≡ old mod modulus, ≡ x mod p
                let old = &slot[i];
                let inv = BigInt::from(invmod((&modulus % &pb).to_u64().unwrap(), p));
                let diff = (BigInt::from(x) - old).mod_floor(&pb);
                slot[i] = old + &modulus * ((diff * inv) % &pb);
            }
        }
        modulus *= &pb;
        if let Some(g) = reconstruct(ctx, &acc, &modulus) {
            if a.divrem(&g).ok()?.1.is_zero() && b.divrem(&g).ok()?.1.is_zero() {
                return Some(g);
            }
        }
    }
    None
}

fn reconstruct(ctx: &std::sync::Arc<FieldCtx>, acc: &[Vec<BigInt>], n: &BigInt) -> Option<Poly> {
    let mut coeffs = Vec::with_capacity(acc.len() + 1);
    for slot in acc {
        let v = slot
            .iter()
            .map(|u| rational_reconstruct(u, n))
            .collect::<Option<Vec<_>>>()?;
        coeffs.push(FieldElem::from_coeffs(ctx, v).ok()?);
    }
    coeffs.push(FieldElem::one(ctx));
    Some(Poly::new(ctx, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers() {
        assert!(is_prime_u64(START));
        let p = 1_000_003;
        let r = sqrt_mod(5 * 5 % p, p).unwrap();
        assert_eq!(mulmod(r, r, p), 25);
        let n = BigInt::from(1_000_003u64);
        let x = BigRational::new(BigInt::from(-7), BigInt::from(12));
        let u = BigInt::from(rational_mod(&x, 1_000_003).unwrap());
        assert_eq!(rational_reconstruct(&u, &n), Some(x));
    }

    #[test]
    fn matches_euclid() {
        for (m, q) in [(1, 2), (5, 3), (12, 5), (4, 9)] {
            let ctx = FieldCtx::new(m, q).unwrap();
            let z = FieldElem::zeta(&ctx, 1);
            let h = FieldElem::sqrt_q_pow(&ctx, 1);
            let l1 = Poly::one_minus(&(&z * &h), 1);
            let l2 = Poly::one_minus(&FieldElem::from_ratio(&ctx, 2, 3), 2);
            let l3 = Poly::one_minus(&(&h + &FieldElem::one(&ctx)), 1);
            let a = l1.mul(&l2).mul(&l3);
            let b = l2.mul(&l3).mul(&Poly::one_minus(&z, 3));
            let g = modular_gcd(&a, &b).unwrap();
            assert_eq!(g, l2.mul(&l3).monic());
            assert_eq!(modular_gcd(&l1, &l2).unwrap(), Poly::one(&ctx));
        }
    }
}
