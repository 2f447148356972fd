//! Point counts of the tame cocycle space `{(Φ, Σ) ∈ GL_n(F_ℓ)² :
//! Φ^{-1} Σ Φ = Σ^q, ord Σ prime to p}`.

use std::collections::HashMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power};

/// Largest `|GL_n(F_ℓ)|` enumerated exhaustively.
pub const MAX_GROUP_ORDER: u64 = 20_000;

/// `GL_n(F_ℓ)`, listed exhaustively.
pub struct FiniteGL {
    n: usize,
    ell: u32,
    elems: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

pub fn gl_order(n: u32, ell: u64) -> u64 {
    let ln = ell.saturating_pow(n);
    (0..n).fold(1u64, |acc, i| acc.saturating_mul(ln - ell.pow(i)))
}

impl FiniteGL {
    pub fn new(n: usize, ell: u64) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::InvalidInput(format!("ℓ = {ell} is not prime")));
        }
        let order = gl_order(n as u32, ell);
        if n == 0 || order > MAX_GROUP_ORDER {
            return Err(Error::BoundExceeded(format!(
                "|GL_{n}(F_{ell})| = {order} exceeds {MAX_GROUP_ORDER}"
            )));
        }
        let ell = ell as u32;
        let total = (ell as u64).pow((n * n) as u32);
        let mut elems = Vec::new();
        for code in 0..total {
            let mut c = code;
            let m: Vec<u32> = (0..n * n)
                .map(|_| {
                    let d = (c % ell as u64) as u32;
                    c /= ell as u64;
                    d
                })
                .collect();
            if det_mod(&m, n, ell) != 0 {
                elems.push(m);
            }
        }
        let index = elems.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(FiniteGL { n, ell, elems, index })
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elems
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.n;
        let l = self.ell as u64;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u64;
                for k in 0..n {
                    s += a[i * n + k] as u64 * b[k * n + j] as u64;
                }
                out[i * n + j] = (s % l) as u32;
            }
        }
        out
    }

    pub fn identity(&self) -> Vec<u32> {
        let n = self.n;
        (0..n * n).map(|i| (i / n == i % n) as u32).collect()
    }

    pub fn pow(&self, a: &[u32], mut k: u64) -> Vec<u32> {
        let mut base = a.to_vec();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &[u32]) -> Vec<u32> {
        // a^{-1} = a^{ord - 1}
        self.pow(a, self.elem_order(a) - 1)
    }

    pub fn elem_order(&self, a: &[u32]) -> u64 {
        let id = self.identity();
        let mut x = a.to_vec();
        let mut k = 1;
        while x != id {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }

    /// Conjugacy classes as sorted lists of element indices.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let inverses: Vec<Vec<u32>> = self.elems.par_iter().map(|g| self.inv(g)).collect();
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for i in 0..self.order() {
            if seen[i] {
                continue;
            }
            let x = &self.elems[i];
            let mut class: Vec<usize> = self
                .elems
                .iter()
                .zip(&inverses)
                .map(|(h, hi)| self.index[&self.mul(&self.mul(h, x), hi)])
                .collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            out.push(class);
        }
        out
    }
}

fn det_mod(m: &[u32], n: usize, ell: u32) -> u32 {
    let l = ell as i64;
    let mut a: Vec<i64> = m.iter().map(|&x| x as i64).collect();
    let mut det = 1i64;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r * n + c] % l != 0) else {
            return 0;
        };
        if p != c {
            for k in 0..n {
                a.swap(p * n + k, c * n + k);
            }
            det = -det;
        }
        let pivot = a[c * n + c];
        det = det * pivot % l;
        let inv = mod_inv(pivot, l);
        for r in c + 1..n {
            let f = a[r * n + c] * inv % l;
            for k in 0..n {
                a[r * n + k] = (a[r * n + k] - f * a[c * n + k]) % l;
            }
        }
    }
    det.rem_euclid(l) as u32
}

fn mod_inv(a: i64, l: i64) -> i64 {
    a.extended_gcd(&l).x.rem_euclid(l)
}

fn validate(q: u64, ell: u64) -> Result<u64> {
    let (p, _) = prime_power(q)
        .ok_or_else(|| Error::InvalidInput(format!("q = {q} is not a prime power")))?;
    if ell == p {
        return Err(Error::BadPrime { ell });
    }
    Ok(p)
}

fn coprime_to(k: u64, p: u64) -> bool {
    !k.is_multiple_of(p)
}

/// Counts by conjugacy classes: every class `C` of prime-to-`p` order with
/// `C^q = C` contributes `|C| · |Z(x)| = |G|` points.
pub fn count_points(n: usize, q: u64, ell: u64) -> Result<u64> {
    let p = validate(q, ell)?;
    let g = FiniteGL::new(n, ell)?;
    let classes = g.classes();
    let mut class_of = vec![0usize; g.order()];
    for (k, c) in classes.iter().enumerate() {
        for &i in c {
            class_of[i] = k;
        }
    }
    let stable = classes
        .par_iter()
        .enumerate()
        .filter(|(k, c)| {
            let x = &g.elems[c[0]];
            coprime_to(g.elem_order(x), p) && class_of[g.index[&g.pow(x, q)]] == *k
        })
        .count() as u64;
    Ok(stable * g.order() as u64)
}

/// Direct enumeration of all pairs.
pub fn count_points_naive(n: usize, q: u64, ell: u64) -> Result<u64> {
    let p = validate(q, ell)?;
    let g = FiniteGL::new(n, ell)?;
    Ok(g.elems
        .par_iter()
        .filter(|s| coprime_to(g.elem_order(s), p))
        .map(|s| {
            let sq = g.pow(s, q);
            g.elems
                .iter()
                .filter(|f| g.mul(s, f) == g.mul(f, &sq))
                .count() as u64
        })
        .sum())
}

/// All points, as `(Φ, Σ)` index pairs.
fn points(g: &FiniteGL, q: u64, p: u64) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..g.order())
        .into_par_iter()
        .filter(|&s| coprime_to(g.elem_order(&g.elems[s]), p))
        .flat_map_iter(|s| {
            let sig = &g.elems[s];
            let sq = g.pow(sig, q);
            (0..g.order())
                .filter(move |&f| g.mul(sig, &g.elems[f]) == g.mul(&g.elems[f], &sq))
                .map(move |f| (f, s))
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_unstable();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCounts {
    pub points: u64,
    pub conjugation: u64,
    pub conjugation_and_twist: u64,
}

/// Orbits under `GL_n(F_ℓ)`-conjugation, and additionally under `Φ ↦ cΦ`.
pub fn orbit_counts(n: usize, q: u64, ell: u64) -> Result<OrbitCounts> {
    let p = validate(q, ell)?;
    let g = FiniteGL::new(n, ell)?;
    let pts = points(&g, q, p);
    let index: HashMap<(usize, usize), usize> =
        pts.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let inverses: Vec<Vec<u32>> = g.elems.iter().map(|h| g.inv(h)).collect();
    let scalars: Vec<Vec<u32>> = (1..ell as u32)
        .map(|c| g.identity().iter().map(|&x| x * c).collect())
        .collect();
    let count = |twist: bool| -> u64 {
        let mut seen = vec![false; pts.len()];
        let mut orbits = 0;
        for i in 0..pts.len() {
            if seen[i] {
                continue;
            }
            orbits += 1;
            let (f, s) = pts[i];
            for (h, hi) in g.elems.iter().zip(&inverses) {
                let fc = g.mul(&g.mul(h, &g.elems[f]), hi);
                let sc = g.index[&g.mul(&g.mul(h, &g.elems[s]), hi)];
                if twist {
                    for c in &scalars {
                        let ft = g.index[&g.mul(c, &fc)];
                        seen[index[&(ft, sc)]] = true;
                    }
                } else {
                    seen[index[&(g.index[&fc], sc)]] = true;
                }
            }
        }
        orbits
    };
    Ok(OrbitCounts {
        points: pts.len() as u64,
        conjugation: count(false),
        conjugation_and_twist: count(true),
    })
}

/// `(ℓ - 1) · (prime-to-p part of gcd(q - 1, ℓ - 1))`.
pub fn closed_form_n1(q: u64, ell: u64) -> Result<u64> {
    let p = validate(q, ell)?;
    let mut g = (q - 1).gcd(&(ell - 1));
    while g.is_multiple_of(p) {
        g /= p;
    }
    Ok((ell - 1) * g)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeRow {
    pub ell: u64,
    pub count: u64,
    pub log_ell_count: f64,
    pub dim: u64,
}

/// `log_ℓ(count)` next to `n²`; informational.
pub fn dimension_probe(n: usize, q: u64, ells: &[u64]) -> Result<Vec<ProbeRow>> {
    ells.iter()
        .map(|&ell| {
            let count = count_points(n, q, ell)?;
            Ok(ProbeRow {
                ell,
                count,
                log_ell_count: (count as f64).ln() / (ell as f64).ln(),
                dim: (n * n) as u64,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(count_points(1, 3, 5).unwrap(), 8);
        assert_eq!(count_points(1, 2, 3).unwrap(), 2);
        assert_eq!(count_points_naive(1, 3, 5).unwrap(), 8);
    }

    #[test]
    fn n1_closed_form() {
        for q in [2, 3, 4, 5] {
            for ell in [3, 5, 7, 11] {
                if prime_power(q).unwrap().0 == ell {
                    continue;
                }
                let c = closed_form_n1(q, ell).unwrap();
                assert_eq!(count_points(1, q, ell).unwrap(), c, "q={q} ℓ={ell}");
                assert_eq!(count_points_naive(1, q, ell).unwrap(), c);
            }
        }
    }

    #[test]
    fn n2_oracles_agree() {
        let a = count_points(2, 2, 3).unwrap();
        assert_eq!(a, count_points_naive(2, 2, 3).unwrap());
        assert_eq!(gl_order(2, 3), 48);
        let o = orbit_counts(2, 2, 3).unwrap();
        assert_eq!(o.points, a);
        assert!(o.conjugation_and_twist <= o.conjugation);
    }

    #[test]
    fn only_q_mod_exponent_matters() {
        assert_eq!(count_points(1, 3, 5).unwrap(), count_points(1, 27, 5).unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(count_points(1, 5, 5), Err(Error::BadPrime { .. })));
        assert!(matches!(count_points(3, 2, 5), Err(Error::BoundExceeded(_))));
        assert!(count_points(1, 6, 5).is_err());
        assert!(dimension_probe(1, 3, &[]).unwrap().is_empty());
        let rows = dimension_probe(1, 3, &[5, 7]).unwrap();
        for r in rows {
            assert!(r.log_ell_count >= 1.0 - 1e-9);
            assert!(r.log_ell_count <= 1.0 + 2f64.ln() / (r.ell as f64).ln() + 1e-9);
        }
    }
}
