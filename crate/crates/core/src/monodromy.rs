//! The monodromy space `V_r`, its orbits under the centralizer of `r`, and
//! the maximal-monodromy tests.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::matrix::Matrix;
use crate::param::{IrredSummand, Realization, SemisimpleParam};
use crate::wd::{chains, check_monodromy, sl2_to_wd, SL2Param, Segment, WDParam};

pub const DEFAULT_MAX_N: usize = 6;

/// Solutions `X` of `Φ X = λ X Φ`, `Σ X = X Σ` (row-major `vec`, where
/// `vec(A X B) = (A ⊗ B^T) vec X`).
fn twisted_fixed_space(r: &Realization, lambda: &FieldElem) -> Vec<Matrix> {
    let ctx = &r.ctx;
    let n = r.dim();
    if n == 0 {
        return Vec::new();
    }
    let id = Matrix::identity(ctx, n);
    let a = r.phi.kron(&id).sub(&id.kron(&r.phi.transpose()).scale(lambda));
    let b = r.sigma.kron(&id).sub(&id.kron(&r.sigma.transpose()));
    let sys = Matrix::vstack(ctx, &[a, b]);
    sys.kernel()
        .into_iter()
        .map(|v| Matrix::from_vec(ctx, n, n, v))
        .collect()
}

/// Basis of `V_r = {X : Φ X Φ^{-1} = Q^{-1} X, Σ X Σ^{-1} = X}`.
pub fn monodromy_space(r: &SemisimpleParam) -> Vec<Matrix> {
    let real = r.realize();
    twisted_fixed_space(&real, &r.base().q_pow(r.ctx(), -1))
}

/// Basis of `E_r = {X : Φ X Φ^{-1} = Q X, Σ X Σ^{-1} = X}`.
pub fn twisted_centralizer(r: &SemisimpleParam) -> Vec<Matrix> {
    let real = r.realize();
    twisted_fixed_space(&real, &r.base().q_pow(r.ctx(), 1))
}

/// `Σ_λ m_λ · m_{λ Q^{-f}}` over each orbit, the expected `dim V_r`.
pub fn expected_monodromy_dim(r: &SemisimpleParam) -> usize {
    let mut mult: BTreeMap<(u64, u32, FieldElem), usize> = BTreeMap::new();
    for s in r.summands() {
        *mult.entry((s.zeta(), s.f(), s.alpha().clone())).or_default() += 1;
    }
    let mut total = 0;
    for ((e, f, a), m) in &mult {
        let down = a * &r.base().q_pow(r.ctx(), -(*f as i64));
        if let Some(m2) = mult.get(&(*e, *f, down)) {
            total += m * m2;
        }
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDescriptor {
    pub sl2: SL2Param,
    /// `rank N, rank N^2, …` down to the first zero (excluded).
    pub rank_seq: Vec<usize>,
    pub n: Matrix,
}

pub fn rank_sequence(n: &Matrix) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = n.clone();
    loop {
        let r = p.rank();
        if r == 0 {
            return out;
        }
        out.push(r);
        p = p.mul(n);
    }
}

/// Every way of covering the positions `0..len` (with multiplicities) by
/// intervals, as lists of `(start, end)`.
fn interval_covers(mult: &[usize]) -> Vec<Vec<(usize, usize)>> {
    fn go(
        rem: &mut Vec<usize>,
        last: Option<(usize, usize)>,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(a) = rem.iter().position(|&m| m > 0) else {
            out.push(acc.clone());
            return;
        };
        let mut b = a;
        loop {
            // canonical order: by start, then by decreasing end
            let ok = match last {
                Some((la, lb)) if la == a => b <= lb,
                _ => true,
            };
            if ok {
                for k in a..=b {
                    rem[k] -= 1;
                }
                acc.push((a, b));
                go(rem, Some((a, b)), acc, out);
                acc.pop();
                for k in a..=b {
                    rem[k] += 1;
                }
            }
            if b + 1 < rem.len() && rem[b + 1] > 0 {
                b += 1;
            } else {
                break;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut mult.to_vec(), None, &mut Vec::new(), &mut out);
    out
}

/// Per `ν`-chain of `r`: the orbit data and the positions' multiplicities.
struct Chain {
    zeta: u64,
    f: u32,
    top: FieldElem,
    mult: Vec<usize>,
}

fn chain_structure(r: &SemisimpleParam) -> Vec<Chain> {
    let base = r.base();
    let mut by_orbit: BTreeMap<(u64, u32), Vec<FieldElem>> = BTreeMap::new();
    for s in r.summands() {
        by_orbit
            .entry((s.zeta(), s.f()))
            .or_default()
            .push(s.alpha().clone());
    }
    let mut out = Vec::new();
    for ((zeta, f), alphas) in by_orbit {
        let mut distinct = alphas.clone();
        distinct.dedup();
        for ch in chains(&distinct, base, f) {
            let len = (ch.last().unwrap().0 + 1) as usize;
            let mut mult = vec![0; len];
            for (k, a) in &ch {
                mult[*k as usize] = alphas.iter().filter(|x| *x == a).count();
            }
            out.push(Chain {
                zeta,
                f,
                top: ch[0].1.clone(),
                mult,
            });
        }
    }
    out
}

/// All centralizer orbits on `V_r`, as segment decompositions.
pub fn enumerate_orbits(r: &SemisimpleParam, max_n: usize) -> Result<Vec<OrbitDescriptor>> {
    if r.dim() > max_n {
        return Err(Error::BoundExceeded(format!(
            "dimension {} exceeds the orbit enumeration bound {max_n}",
            r.dim()
        )));
    }
    let ctx = r.ctx();
    let base = r.base();
    let mut partial: Vec<Vec<Segment>> = vec![Vec::new()];
    for ch in chain_structure(r) {
        let mut next = Vec::new();
        for cover in interval_covers(&ch.mult) {
            let segs: Vec<Segment> = cover
                .iter()
                .map(|&(a, b)| {
                    let d = (b - a + 1) as i64;
                    let top = &ch.top * &base.q_pow(ctx, -(ch.f as i64) * a as i64);
                    let center = &top * &base.sqrt_q_pow(ctx, -(ch.f as i64) * (d - 1));
                    Segment {
                        sigma: IrredSummand::new(ctx, base, ch.zeta as i64, center)
                            .expect("valid summand"),
                        d: d as u32,
                    }
                })
                .collect();
            for p in &partial {
                let mut q = p.clone();
                q.extend(segs.iter().cloned());
                next.push(q);
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|segs| {
            let sl2 = SL2Param::new(ctx, base, segs)?;
            let w = sl2_to_wd(&sl2);
            debug_assert!(w.ss().is_isomorphic(r));
            Ok(OrbitDescriptor {
                rank_seq: rank_sequence(w.n()),
                n: w.n().clone(),
                sl2,
            })
        })
        .collect()
}

/// Whether `ker(ad N)` meets `E_r` only in zero.
pub fn is_open(r: &SemisimpleParam, n: &Matrix) -> Result<bool> {
    check_monodromy(&r.realize(), n)?;
    let e = twisted_centralizer(r);
    if e.is_empty() {
        return Ok(true);
    }
    let ctx = r.ctx();
    let cols: Vec<Vec<FieldElem>> = e.iter().map(|y| n.bracket(y).vec()).collect();
    let dim = r.dim();
    Ok(Matrix::from_columns(ctx, dim * dim, &cols).rank() == e.len())
}

/// Order of the pole of `L(s, Ad∘φ)` at `s = 1`: the multiplicity of the
/// eigenvalue `Q` of `Ad(Φ)` on `ker(ad N)^Σ`.
pub fn pole_order_at_1(w: &WDParam) -> Result<usize> {
    let ctx = w.ctx();
    let r = w.realize();
    let n = r.dim();
    if n == 0 {
        return Ok(0);
    }
    let id = Matrix::identity(ctx, n);
    let phi_inv_t = r.phi.inverse()?.transpose();
    let ad_phi = r.phi.kron(&phi_inv_t);
    let sig_inv_t = r.sigma.inverse()?.transpose();
    let ad_sigma = r.sigma.kron(&sig_inv_t);
    let ad_n = w.n().kron(&id).sub(&id.kron(&w.n().transpose()));
    let fixed = ad_sigma.sub(&Matrix::identity(ctx, n * n));
    let ker = Matrix::vstack(ctx, &[fixed, ad_n]).kernel();
    if ker.is_empty() {
        return Ok(0);
    }
    let basis = Matrix::from_columns(ctx, n * n, &ker);
    let a = ad_phi.restrict(&basis)?;
    let q = FieldElem::from_int(ctx, w.base().q(ctx) as i64);
    Ok(a.charpoly().root_multiplicity(&q))
}

pub fn l_holomorphic_at_1(w: &WDParam) -> Result<bool> {
    Ok(pole_order_at_1(w)? == 0)
}

/// The orbit of maximal monodromy, after checking that openness, the
/// holomorphy of `L(s, Ad)` at 1 and rank-lexicographic maximality all
/// single out the same orbit.
pub fn check_gpr_uniqueness(r: &SemisimpleParam, max_n: usize) -> Result<OrbitDescriptor> {
    let orbits = enumerate_orbits(r, max_n)?;
    let mut open = Vec::new();
    let mut holo = Vec::new();
    for (i, o) in orbits.iter().enumerate() {
        if is_open(r, &o.n)? {
            open.push(i);
        }
        let w = WDParam::new(r.clone(), o.n.clone())?;
        if l_holomorphic_at_1(&w)? {
            holo.push(i);
        }
    }
    let best = orbits
        .iter()
        .map(|o| &o.rank_seq)
        .max()
        .cloned()
        .unwrap_or_default();
    let lexmax: Vec<usize> = (0..orbits.len())
        .filter(|&i| orbits[i].rank_seq == best)
        .collect();
    if open.len() != 1 || open != holo || open != lexmax {
        let dump: Vec<String> = orbits
            .iter()
            .map(|o| format!("{} ranks {:?}", o.sl2, o.rank_seq))
            .collect();
        return Err(Error::EquivalenceFailure(format!(
            "r = {r}: open {open:?}, holomorphic {holo:?}, lex-max {lexmax:?}; orbits [{}]",
            dump.join("; ")
        )));
    }
    Ok(orbits[open[0]].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::param::Base;
    use std::sync::Arc;

    fn chars(ctx: &Arc<FieldCtx>, alphas: &[FieldElem]) -> SemisimpleParam {
        SemisimpleParam::new(
            ctx,
            Base::F,
            alphas
                .iter()
                .map(|a| IrredSummand::new(ctx, Base::F, 0, a.clone()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn monodromy_dimensions() {
        let ctx = FieldCtx::new(1, 3).unwrap();
        let h = |k| FieldElem::sqrt_q_pow(&ctx, k);
        let sp2 = chars(&ctx, &[h(-1), h(1)]);
        let v = monodromy_space(&sp2);
        assert_eq!(v.len(), 1);
        assert!(v[0].get(0, 1).is_one() || !v[0].get(0, 1).is_zero());
        let one = FieldElem::one(&ctx);
        assert!(monodromy_space(&chars(&ctx, &[one.clone(), one.clone()])).is_empty());
        let q = |k| FieldElem::q_pow(&ctx, k);
        let chain = chars(&ctx, &[q(0), q(-1), q(-2)]);
        assert_eq!(monodromy_space(&chain).len(), 2);
        assert_eq!(expected_monodromy_dim(&chain), 2);
    }

    #[test]
    fn chain_of_three() {
        let ctx = FieldCtx::new(1, 2).unwrap();
        let q = |k| FieldElem::q_pow(&ctx, k);
        let r = chars(&ctx, &[q(0), q(-1), q(-2)]);
        // (3), (2,1), (1,2), (1,1,1): the two length-(2,1) orbits differ in
        // which link carries the monodromy
        let orbits = enumerate_orbits(&r, DEFAULT_MAX_N).unwrap();
        assert_eq!(orbits.len(), 4);
        for o in &orbits {
            let ds: Vec<u32> = o.sl2.segments().iter().map(|s| s.d).collect();
            let open = is_open(&r, &o.n).unwrap();
            assert_eq!(open, ds == vec![3], "{ds:?}");
        }
        let best = check_gpr_uniqueness(&r, DEFAULT_MAX_N).unwrap();
        assert_eq!(best.rank_seq, vec![2, 1]);
    }

    #[test]
    fn steinberg_pole_orders() {
        let ctx = FieldCtx::new(1, 5).unwrap();
        let h = |k| FieldElem::sqrt_q_pow(&ctx, k);
        let r = chars(&ctx, &[h(-1), h(1)]);
        let zero = WDParam::semisimple(r.clone());
        assert_eq!(pole_order_at_1(&zero).unwrap(), 1);
        assert!(!is_open(&r, zero.n()).unwrap());
        let best = check_gpr_uniqueness(&r, DEFAULT_MAX_N).unwrap();
        let full = WDParam::new(r.clone(), best.n).unwrap();
        assert_eq!(pole_order_at_1(&full).unwrap(), 0);
        let single = chars(&ctx, &[h(3)]);
        assert_eq!(pole_order_at_1(&WDParam::semisimple(single)).unwrap(), 0);
    }

    #[test]
    fn interval_cover_counts() {
        assert_eq!(interval_covers(&[1, 1, 1]).len(), 4);
        // two chains of length two, one position doubled
        assert_eq!(interval_covers(&[2, 1]).len(), 2);
        assert_eq!(interval_covers(&[]).len(), 1);
    }
}
