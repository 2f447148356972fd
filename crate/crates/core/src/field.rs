//! Exact arithmetic in `K = Q(ζ_M, √q)`.
//!
//! Elements are stored on the basis `ζ^i · √q^j` with `0 <= i < φ(M)` and
//! `j ∈ {0, 1}`. When `q` is a perfect square the generator `√q` is an
//! integer and only `j = 0` is kept, so the coefficient vector has length
//! `φ(M)`; otherwise it has length `2 φ(M)`, laid out as all `j = 0`
//! coefficients followed by all `j = 1` coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field context, fixed per session by `(M, q)`.
#[derive(Debug)]
pub struct FieldCtx {
    m: u64,
    q: u64,
    p: u64,
    q_exponent: u32,
    phi: usize,
    cyclotomic: Vec<i64>,
    /// `x^k mod Φ_M(x)` for `0 <= k < max(M, 2φ - 1)`.
    pow_table: Vec<Vec<i64>>,
    int_sqrt_q: Option<u64>,
}

impl FieldCtx {
    /// Builds the context for `Q(ζ_M, √q)`. `q` must be a prime power and
    /// the residue characteristic must not divide `M`.
    pub fn new(m: u64, q: u64) -> Result<Arc<Self>> {
        if m == 0 {
            return Err(Error::InvalidContext("tame level M must be positive".into()));
        }
        let (p, q_exponent) = prime_power(q)
            .ok_or_else(|| Error::InvalidContext(format!("q = {q} is not a prime power")))?;
        if m.is_multiple_of(p) {
            return Err(Error::InvalidContext(format!(
                "residue characteristic {p} divides M = {m}"
            )));
        }
        let cyclotomic = cyclotomic_poly(m);
        let phi = cyclotomic.len() - 1;
        let table_len = (m as usize).max(2 * phi);
        let mut pow_table = Vec::with_capacity(table_len);
        let mut cur = vec![0i64; phi];
        if phi > 0 {
            cur[0] = 1;
        }
        for _ in 0..table_len {
            pow_table.push(cur.clone());
            // multiply by x and reduce
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1] - top * cyclotomic[i];
            }
            cur[0] = -top * cyclotomic[0];
        }
        let root = integer_sqrt(q);
        let int_sqrt_q = if root * root == q { Some(root) } else { None };
        Ok(Arc::new(FieldCtx {
            m,
            q,
            p,
            q_exponent,
            phi,
            cyclotomic,
            pow_table,
            int_sqrt_q,
        }))
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Residue characteristic.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// `r` with `q = p^r`.
    pub fn q_exponent(&self) -> u32 {
        self.q_exponent
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    /// Whether `√q` is rational (then it is identified with an integer).
    pub fn q_is_square(&self) -> bool {
        self.int_sqrt_q.is_some()
    }

    pub fn int_sqrt_q(&self) -> Option<u64> {
        self.int_sqrt_q
    }

    /// Dimension of `K` over `Q`.
    pub fn degree(&self) -> usize {
        if self.q_is_square() {
            self.phi
        } else {
            2 * self.phi
        }
    }

    pub fn cyclotomic_coeffs(&self) -> &[i64] {
        &self.cyclotomic
    }

    /// Order of the group of roots of unity `μ_W` used for monomials:
    /// `W = lcm(2, M)`.
    pub fn unit_order(&self) -> u64 {
        if self.m.is_multiple_of(2) {
            self.m
        } else {
            2 * self.m
        }
    }

    /// Power-basis coordinates of `ζ_M^e`.
    pub fn zeta_coords(&self, e: u64) -> &[i64] {
        &self.pow_table[(e % self.m) as usize]
    }

    pub fn same(&self, other: &FieldCtx) -> bool {
        self.m == other.m && self.q == other.q
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FieldCtx {}

/// Checks that two contexts describe the same field.
pub fn check_same_ctx(a: &FieldCtx, b: &FieldCtx) -> Result<()> {
    if a.same(b) {
        Ok(())
    } else {
        Err(Error::ContextMismatch {
            left: (a.m, a.q),
            right: (b.m, b.q),
        })
    }
}

/// An element of `K`, in canonical coordinates.
#[derive(Clone)]
pub struct FieldElem {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<BigRational>,
}

impl FieldElem {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        FieldElem {
            ctx: ctx.clone(),
            coeffs: vec![BigRational::zero(); ctx.degree()],
        }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Self::from_rational(ctx, BigRational::one())
    }

    pub fn from_int(ctx: &Arc<FieldCtx>, n: i64) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(ctx: &Arc<FieldCtx>, num: i64, den: i64) -> Self {
        Self::from_rational(ctx, BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(ctx: &Arc<FieldCtx>, r: BigRational) -> Self {
        let mut e = Self::zero(ctx);
        e.coeffs[0] = r;
        e
    }

    /// Builds an element from raw coordinates; the vector must have length
    /// [`FieldCtx::degree`].
    pub fn from_coeffs(ctx: &Arc<FieldCtx>, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != ctx.degree() {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, got {}",
                ctx.degree(),
                coeffs.len()
            )));
        }
        Ok(FieldElem {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    /// Adds `c · ζ^i · √q^j` for arbitrary `i` (reduced mod `M`) and `j >= 0`.
    pub fn add_term(&mut self, i: i64, j: u32, c: &BigRational) {
        let ctx = self.ctx.clone();
        let i = i.rem_euclid(ctx.m as i64) as usize;
        let mut scale = c.clone();
        let mut jj = j;
        while jj >= 2 {
            scale *= BigRational::from_integer(BigInt::from(ctx.q));
            jj -= 2;
        }
        let offset = if jj == 1 {
            match ctx.int_sqrt_q {
                Some(r) => {
                    scale *= BigRational::from_integer(BigInt::from(r));
                    0
                }
                None => ctx.phi,
            }
        } else {
            0
        };
        for (k, &v) in ctx.pow_table[i].iter().enumerate() {
            if v != 0 {
                self.coeffs[offset + k] += &scale * BigRational::from_integer(BigInt::from(v));
            }
        }
    }

    /// `ζ_M^e`.
    pub fn zeta(ctx: &Arc<FieldCtx>, e: i64) -> Self {
        let mut z = Self::zero(ctx);
        z.add_term(e, 0, &BigRational::one());
        z
    }

    /// `√q^h` for any integer `h`.
    pub fn sqrt_q_pow(ctx: &Arc<FieldCtx>, h: i64) -> Self {
        let q = BigRational::from_integer(BigInt::from(ctx.q));
        let half = h.div_euclid(2);
        let odd = h.rem_euclid(2) == 1;
        let mut r = pow_rational(&q, half);
        if odd {
            match ctx.int_sqrt_q {
                Some(s) => {
                    r *= BigRational::from_integer(BigInt::from(s));
                    Self::from_rational(ctx, r)
                }
                None => {
                    let mut e = Self::zero(ctx);
                    e.coeffs[ctx.phi] = r;
                    e
                }
            }
        } else {
            Self::from_rational(ctx, r)
        }
    }

    /// `q^k` as a field element.
    pub fn q_pow(ctx: &Arc<FieldCtx>, k: i64) -> Self {
        Self::sqrt_q_pow(ctx, 2 * k)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns the value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn scale(&self, r: &BigRational) -> Self {
        FieldElem {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// The `(i, j, coefficient)` entries with nonzero coefficient.
    pub fn terms(&self) -> Vec<(usize, usize, BigRational)> {
        let phi = self.ctx.phi;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k % phi, k / phi, c.clone()))
            .collect()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&self.ctx, r.recip()));
        }
        let ctx = &self.ctx;
        let phi = ctx.phi;
        if ctx.q_is_square() {
            let inv = cyclotomic_inverse(ctx, &self.coeffs)?;
            return Self::from_coeffs(ctx, inv);
        }
        let a0 = &self.coeffs[..phi];
        let a1 = &self.coeffs[phi..];
        // (a0 + a1 t)^{-1} = (a0 - a1 t) / (a0^2 - q a1^2)
        let q = BigRational::from_integer(BigInt::from(ctx.q));
        let a0sq = cyclotomic_mul(ctx, a0, a0);
        let a1sq = cyclotomic_mul(ctx, a1, a1);
        let norm: Vec<BigRational> = a0sq
            .iter()
            .zip(a1sq.iter())
            .map(|(x, y)| x - &q * y)
            .collect();
        let ninv = cyclotomic_inverse(ctx, &norm)?;
        let b0 = cyclotomic_mul(ctx, a0, &ninv);
        let b1 = cyclotomic_mul(ctx, a1, &ninv);
        let mut coeffs = b0;
        coeffs.extend(b1.into_iter().map(|c| -c));
        Self::from_coeffs(ctx, coeffs)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// The Galois automorphism `ζ ↦ ζ^k` fixing `√q`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let ctx = &self.ctx;
        let m = ctx.m as i64;
        if (k.rem_euclid(m) as u64).gcd(&ctx.m) != 1 {
            return Err(Error::NotCoprime { k, m: ctx.m });
        }
        let phi = ctx.phi;
        let mut out = Self::zero(ctx);
        let blocks = self.coeffs.len() / phi;
        for j in 0..blocks {
            for i in 0..phi {
                let c = &self.coeffs[j * phi + i];
                if c.is_zero() {
                    continue;
                }
                let img = (i as i64 * k).rem_euclid(m) as usize;
                for (t, &v) in ctx.pow_table[img].iter().enumerate() {
                    if v != 0 {
                        out.coeffs[j * phi + t] += c * BigRational::from_integer(BigInt::from(v));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Whether every coordinate is `ℓ`-integral. For `ℓ ∤ 2Mq` the basis
    /// `ζ^i √q^j` spans the `ℓ`-localized maximal order, so this is the
    /// integrality of the element at every prime above `ℓ`.
    pub fn is_ell_integral(&self, ell: u64) -> bool {
        let ell = BigInt::from(ell);
        self.coeffs
            .iter()
            .all(|c| !c.denom().is_multiple_of(&ell))
    }

    /// Whether the element is an `ℓ`-adic unit (it and its inverse are integral).
    pub fn is_ell_unit(&self, ell: u64) -> bool {
        if self.is_zero() || !self.is_ell_integral(ell) {
            return false;
        }
        match self.inv() {
            Ok(inv) => inv.is_ell_integral(ell),
            Err(_) => false,
        }
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same(&other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElem {}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(mono) = crate::monomial::Monomial::from_field(self) {
            return write!(f, "{}", mono);
        }
        let mut first = true;
        for (i, j, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut parts = Vec::new();
            if !abs.is_one() || (i == 0 && j == 0) {
                parts.push(abs.to_string());
            }
            if i > 0 {
                parts.push(if i == 1 { "ζ".to_string() } else { format!("ζ^{i}") });
            }
            if j > 0 {
                parts.push("√q".to_string());
            }
            write!(f, "{}", parts.join("·"))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn add_vecs(a: &[BigRational], b: &[BigRational], sign: bool) -> Vec<BigRational> {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| if sign { x + y } else { x - y })
        .collect()
}

/// Product in `Q[x]/Φ_M(x)` of two coordinate vectors of length `φ(M)`.
fn cyclotomic_mul(ctx: &FieldCtx, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let phi = ctx.phi;
    let mut raw = vec![BigRational::zero(); 2 * phi - 1];
    let mut any = false;
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            raw[i + j] += x * y;
            any = true;
        }
    }
    let mut out = vec![BigRational::zero(); phi];
    if !any {
        return out;
    }
    for (k, c) in raw.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k < phi {
            out[k] += c;
        } else {
            for (t, &v) in ctx.pow_table[k].iter().enumerate() {
                if v != 0 {
                    out[t] += &c * BigRational::from_integer(BigInt::from(v));
                }
            }
        }
    }
    out
}

/// Inverse in `Q[x]/Φ_M(x)` by the extended Euclidean algorithm.
fn cyclotomic_inverse(ctx: &FieldCtx, a: &[BigRational]) -> Result<Vec<BigRational>> {
    let modulus: Vec<BigRational> = ctx
        .cyclotomic
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect();
    let mut r0 = trim(modulus);
    let mut r1 = trim(a.to_vec());
    if r1.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (quot, rem) = qpoly_divrem(&r0, &r1);
        let s2 = trim(add_vecs_padded(&s0, &qpoly_mul(&quot, &s1), false));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd, a nonzero constant since Φ_M is irreducible
    if r0.len() != 1 {
        return Err(Error::DivisionByZero);
    }
    let c = r0[0].recip();
    let mut out = vec![BigRational::zero(); ctx.phi];
    for (i, v) in s0.into_iter().enumerate() {
        if i < ctx.phi {
            out[i] = v * &c;
        }
    }
    Ok(out)
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn add_vecs_padded(a: &[BigRational], b: &[BigRational], sign: bool) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            if sign {
                x + y
            } else {
                x - y
            }
        })
        .collect()
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    if a.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b.last().unwrap().recip();
    let mut quot = vec![BigRational::zero(); a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + b.len() - 1] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= &c * y;
        }
        quot[k] = c;
    }
    (trim(quot), trim(rem))
}

fn check_pair(a: &FieldElem, b: &FieldElem) {
    assert!(
        a.ctx.same(&b.ctx),
        "field elements from different contexts: (M={}, q={}) vs (M={}, q={})",
        a.ctx.m,
        a.ctx.q,
        b.ctx.m,
        b.ctx.q
    );
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        check_pair(self, rhs);
        FieldElem {
            ctx: self.ctx.clone(),
            coeffs: add_vecs(&self.coeffs, &rhs.coeffs, true),
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        check_pair(self, rhs);
        FieldElem {
            ctx: self.ctx.clone(),
            coeffs: add_vecs(&self.coeffs, &rhs.coeffs, false),
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        check_pair(self, rhs);
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        let ctx = &self.ctx;
        let phi = ctx.phi;
        if ctx.q_is_square() {
            return FieldElem {
                ctx: ctx.clone(),
                coeffs: cyclotomic_mul(ctx, &self.coeffs, &rhs.coeffs),
            };
        }
        let (a0, a1) = self.coeffs.split_at(phi);
        let (b0, b1) = rhs.coeffs.split_at(phi);
        let q = BigRational::from_integer(BigInt::from(ctx.q));
        let mut c0 = cyclotomic_mul(ctx, a0, b0);
        let c11 = cyclotomic_mul(ctx, a1, b1);
        for (x, y) in c0.iter_mut().zip(c11.iter()) {
            if !y.is_zero() {
                *x += &q * y;
            }
        }
        let c1 = add_vecs(&cyclotomic_mul(ctx, a0, b1), &cyclotomic_mul(ctx, a1, b0), true);
        c0.extend(c1);
        FieldElem {
            ctx: ctx.clone(),
            coeffs: c0,
        }
    }
}

impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = Result<FieldElem>;
    fn div(self, rhs: &FieldElem) -> Result<FieldElem> {
        Ok(self * &rhs.inv()?)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub(crate) fn pow_rational(r: &BigRational, k: i64) -> BigRational {
    let base = if k < 0 { r.recip() } else { r.clone() };
    let mut acc = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Returns `(p, r)` with `q = p^r` if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut r = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        r += 1;
    }
    if x == 1 {
        Some((p, r))
    } else {
        None
    }
}

pub fn is_prime(n: u64) -> bool {
    matches!(prime_power(n), Some((_, 1)))
}

pub(crate) fn integer_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn euler_phi(m: u64) -> u64 {
    let mut result = m;
    let mut n = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Coefficients (low to high) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_poly(m: u64) -> Vec<i64> {
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            poly = int_poly_exact_div(&poly, &div);
        }
    }
    poly
}

fn int_poly_exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![0i64; a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db];
        quot[k] = c;
        for (j, &y) in b.iter().enumerate() {
            rem[k + j] -= c * y;
        }
    }
    quot
}

pub(crate) fn rational_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// `v_ℓ` of a nonzero rational.
pub fn rational_valuation(r: &BigRational, ell: u64) -> i64 {
    fn val(n: &BigInt, ell: &BigInt) -> i64 {
        let mut n = n.abs();
        let mut k = 0;
        while !n.is_zero() && (&n % ell).is_zero() {
            n /= ell;
            k += 1;
        }
        k
    }
    let ell = BigInt::from(ell);
    val(r.numer(), &ell) - val(r.denom(), &ell)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: u64, q: u64) -> Arc<FieldCtx> {
        FieldCtx::new(m, q).unwrap()
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        for m in 1..40u64 {
            assert_eq!(cyclotomic_poly(m).len() as u64 - 1, euler_phi(m));
        }
    }

    #[test]
    fn sqrt_q_squares_to_q() {
        for (m, q) in [(1, 3), (5, 2), (12, 5), (8, 9), (3, 4)] {
            let k = ctx(m, q);
            let s = FieldElem::sqrt_q_pow(&k, 1);
            assert_eq!(&s * &s, FieldElem::from_int(&k, q as i64));
        }
    }

    #[test]
    fn zeta_has_order_m() {
        for (m, q) in [(1, 2), (5, 2), (7, 3), (12, 5), (9, 2)] {
            let k = ctx(m, q);
            let z = FieldElem::zeta(&k, 1);
            assert!(z.pow(m as i64).unwrap().is_one());
            for d in 1..m {
                if m % d == 0 && d < m {
                    assert!(!z.pow(d as i64).unwrap().is_one());
                }
            }
        }
    }

    #[test]
    fn galois_fixes_sqrt_q() {
        let k = ctx(7, 3);
        let z = FieldElem::zeta(&k, 1);
        let s = FieldElem::sqrt_q_pow(&k, 1);
        let x = &z + &s;
        let y = x.galois(-1).unwrap();
        assert_eq!(y, &FieldElem::zeta(&k, -1) + &s);
        assert!(matches!(x.galois(7), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn inverse_round_trip() {
        let k = ctx(12, 5);
        let mut x = FieldElem::zeta(&k, 1);
        x.add_term(5, 1, &BigRational::new(3.into(), 7.into()));
        x.add_term(0, 0, &BigRational::from_integer(2.into()));
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(matches!(FieldElem::zero(&k).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn square_q_identifies_sqrt() {
        let k = ctx(3, 4);
        assert_eq!(k.degree(), 2);
        assert_eq!(FieldElem::sqrt_q_pow(&k, 1), FieldElem::from_int(&k, 2));
        assert_eq!(FieldElem::sqrt_q_pow(&k, -3), FieldElem::from_ratio(&k, 1, 8));
    }

    #[test]
    fn rejects_bad_contexts() {
        assert!(FieldCtx::new(6, 3).is_err());
        assert!(FieldCtx::new(5, 6).is_err());
        assert!(FieldCtx::new(0, 3).is_err());
    }

    #[test]
    fn ell_units() {
        let k = ctx(4, 3);
        assert!(FieldElem::sqrt_q_pow(&k, -1).is_ell_unit(5));
        assert!(!FieldElem::from_int(&k, 5).is_ell_unit(5));
        assert!(FieldElem::from_int(&k, 5).is_ell_integral(5));
        let mut x = FieldElem::zeta(&k, 1);
        x.add_term(0, 0, &BigRational::one());
        // 1 + i has norm 2
        assert!(x.is_ell_unit(5));
    }
}
