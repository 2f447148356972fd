//! Weil–Deligne and SL₂ forms of a parameter and the dictionary between
//! them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{check_same_ctx, FieldCtx, FieldElem};
use crate::matrix::Matrix;
use crate::monomial::Monomial;
use crate::param::{Base, IrredSummand, Realization, SemisimpleParam};
use crate::poly::Poly;

/// `k` with `b = a · Q^{-f k}`, if any (`Q` the base residue cardinality).
pub fn nu_steps(a: &FieldElem, b: &FieldElem, base: Base, f: u32) -> Option<i64> {
    let ratio = (b / a).ok()?;
    let m = Monomial::from_field(&ratio)?;
    if m.unit() != 0 {
        return None;
    }
    let (c, h) = m.split_q_power();
    if !num_traits::One::is_one(&c) {
        return None;
    }
    let step = 2 * base.residue_power() as i64 * f as i64;
    if h % step != 0 {
        return None;
    }
    Some(-h / step)
}

/// A parameter with monodromy, stored in the realized basis of `ss`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WDParam {
    ss: SemisimpleParam,
    n: Matrix,
}

impl WDParam {
    pub fn new(ss: SemisimpleParam, n: Matrix) -> Result<Self> {
        check_same_ctx(ss.ctx(), n.ctx())?;
        let dim = ss.dim();
        if n.rows() != dim || n.cols() != dim {
            return Err(Error::InvalidInput(format!(
                "N must be {dim}×{dim}, got {}×{}",
                n.rows(),
                n.cols()
            )));
        }
        let w = WDParam { ss, n };
        w.check()?;
        Ok(w)
    }

    pub fn semisimple(ss: SemisimpleParam) -> Self {
        let dim = ss.dim();
        let n = Matrix::zeros(ss.ctx(), dim, dim);
        WDParam { ss, n }
    }

    pub fn check(&self) -> Result<()> {
        let r = self.ss.realize();
        check_monodromy(&r, &self.n)
    }

    pub fn ss(&self) -> &SemisimpleParam {
        &self.ss
    }

    pub fn n(&self) -> &Matrix {
        &self.n
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.ss.ctx()
    }

    pub fn base(&self) -> Base {
        self.ss.base()
    }

    pub fn dim(&self) -> usize {
        self.ss.dim()
    }

    pub fn realize(&self) -> Realization {
        self.ss.realize()
    }

    /// `(r, N) ↦ r`.
    pub fn semisimplify(&self) -> SemisimpleParam {
        self.ss.clone()
    }

    pub fn forget_monodromy(&self) -> WDParam {
        WDParam::semisimple(self.ss.clone())
    }

    pub fn direct_sum(&self, other: &WDParam) -> Result<WDParam> {
        // the sorted realization of the sum interleaves the two bases
        let a = self.to_sl2()?;
        let b = other.to_sl2()?;
        a.direct_sum(&b)?.to_wd()
    }

    pub fn dual(&self) -> Result<WDParam> {
        self.to_sl2()?.dual().to_wd()
    }

    pub fn galois(&self, k: i64) -> Result<WDParam> {
        self.to_sl2()?.galois(k)?.to_wd()
    }

    pub fn to_sl2(&self) -> Result<SL2Param> {
        wd_to_sl2(self)
    }

    /// Equal semisimple parts and conjugate monodromy.
    pub fn is_isomorphic(&self, other: &WDParam) -> Result<bool> {
        if !self.ss.is_isomorphic(&other.ss) {
            return Ok(false);
        }
        Ok(self.to_sl2()? == other.to_sl2()?)
    }
}

/// `Σ N = N Σ`, `Φ N = Q^{-1} N Φ`, `N` nilpotent.
pub fn check_monodromy(r: &Realization, n: &Matrix) -> Result<()> {
    let ctx = &r.ctx;
    if r.sigma.mul(n) != n.mul(&r.sigma) {
        return Err(Error::InvariantViolation("N does not commute with Σ".into()));
    }
    let qi = r.base.q_pow(ctx, -1);
    if r.phi.mul(n) != n.mul(&r.phi).scale(&qi) {
        return Err(Error::InvariantViolation("Φ N Φ^{-1} ≠ q^{-1} N".into()));
    }
    if !n.is_nilpotent() {
        return Err(Error::InvariantViolation("N is not nilpotent".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub sigma: IrredSummand,
    pub d: u32,
}

impl Segment {
    /// Summands `σ·ν^{i-(d-1)/2}`, `i = 0..d`, top (largest) first.
    pub fn pieces(&self, base: Base) -> Vec<IrredSummand> {
        let d = self.d as i64;
        (0..d)
            .map(|i| self.sigma.nu_twist_half(base, 2 * i - (d - 1)))
            .collect()
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊠Sp({})", self.sigma, self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SL2Param {
    ctx: Arc<FieldCtx>,
    base: Base,
    segments: Vec<Segment>,
}

impl SL2Param {
    pub fn new(ctx: &Arc<FieldCtx>, base: Base, mut segments: Vec<Segment>) -> Result<Self> {
        for s in &segments {
            check_same_ctx(ctx, s.sigma.ctx())?;
            if s.d == 0 {
                return Err(Error::InvalidInput("segment length must be positive".into()));
            }
        }
        segments.sort();
        Ok(SL2Param {
            ctx: ctx.clone(),
            base,
            segments,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn dim(&self) -> usize {
        self.segments
            .iter()
            .map(|s| s.sigma.f() as usize * s.d as usize)
            .sum()
    }

    pub fn semisimplify(&self) -> SemisimpleParam {
        let pieces = self
            .segments
            .iter()
            .flat_map(|s| s.pieces(self.base))
            .collect();
        SemisimpleParam::new(&self.ctx, self.base, pieces).expect("same context")
    }

    pub fn to_wd(&self) -> Result<WDParam> {
        Ok(sl2_to_wd(self))
    }

    pub fn direct_sum(&self, other: &SL2Param) -> Result<SL2Param> {
        check_same_ctx(&self.ctx, &other.ctx)?;
        let mut s = self.segments.clone();
        s.extend(other.segments.iter().cloned());
        SL2Param::new(&self.ctx, self.base, s)
    }

    pub fn dual(&self) -> SL2Param {
        let s = self
            .segments
            .iter()
            .map(|x| Segment {
                sigma: x.sigma.dual(self.base),
                d: x.d,
            })
            .collect();
        SL2Param::new(&self.ctx, self.base, s).expect("same context")
    }

    pub fn galois(&self, k: i64) -> Result<SL2Param> {
        let s = self
            .segments
            .iter()
            .map(|x| {
                Ok(Segment {
                    sigma: x.sigma.galois(self.base, k)?,
                    d: x.d,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SL2Param::new(&self.ctx, self.base, s)
    }
}

impl fmt::Display for SL2Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.segments.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Jacobson–Morozov direction: `N` shifts each piece of a segment to the
/// next one, `v_j ↦ Q^j w_j` inside the induced blocks.
pub fn sl2_to_wd(p: &SL2Param) -> WDParam {
    let ctx = &p.ctx;
    let base = p.base;
    let ss = p.semisimplify();
    let n = ss.dim();
    let starts: Vec<usize> = ss
        .summands()
        .iter()
        .scan(0usize, |acc, s| {
            let st = *acc;
            *acc += s.f() as usize;
            Some(st)
        })
        .collect();
    let mut used = vec![false; ss.summands().len()];
    let mut mat = Matrix::zeros(ctx, n, n);
    let big_q = FieldElem::from_int(ctx, base.q(ctx) as i64);
    for seg in &p.segments {
        let slots: Vec<usize> = seg
            .pieces(base)
            .iter()
            .map(|piece| {
                let i = ss
                    .summands()
                    .iter()
                    .enumerate()
                    .position(|(i, s)| !used[i] && s == piece)
                    .expect("piece present in semisimplification");
                used[i] = true;
                i
            })
            .collect();
        let f = seg.sigma.f() as usize;
        for w in slots.windows(2) {
            let (src, dst) = (starts[w[0]], starts[w[1]]);
            let mut c = FieldElem::one(ctx);
            for j in 0..f {
                mat.set(dst + j, src + j, c.clone());
                c = &c * &big_q;
            }
        }
    }
    WDParam { ss, n: mat }
}

/// Segment decomposition from the ranks of powers of `N` between the
/// eigenspaces of `Φ^f` along each `ν`-chain.
pub fn wd_to_sl2(w: &WDParam) -> Result<SL2Param> {
    let ctx = w.ctx().clone();
    let base = w.base();
    let r = w.realize();
    let dim = w.dim();
    let mut by_orbit: BTreeMap<(u64, u32), Vec<FieldElem>> = BTreeMap::new();
    for s in w.ss.summands() {
        let v = by_orbit.entry((s.zeta(), s.f())).or_default();
        if !v.contains(s.alpha()) {
            v.push(s.alpha().clone());
        }
    }
    let mut npows: Vec<Matrix> = vec![Matrix::identity(&ctx, dim)];
    let mut segments = Vec::new();
    for ((e, f), alphas) in by_orbit {
        let pf = r.phi.pow(f as u64);
        let sig_shift = r
            .sigma
            .sub(&Matrix::identity(&ctx, dim).scale(&FieldElem::zeta(&ctx, e as i64)));
        for chain in chains(&alphas, base, f) {
            // chain: (k, λ_k) with λ_k = anchor · Q^{-f k}, sorted by k
            let kmin = chain[0].0;
            let kmax = chain.last().unwrap().0;
            let len = (kmax - kmin + 1) as usize;
            let mut spaces: Vec<Option<Matrix>> = vec![None; len];
            for (k, lambda) in &chain {
                let shifted = pf.sub(&Matrix::identity(&ctx, dim).scale(lambda));
                let stacked = Matrix::vstack(&ctx, &[sig_shift.clone(), shifted]);
                let ker = stacked.kernel();
                spaces[(k - kmin) as usize] = Some(Matrix::from_columns(&ctx, dim, &ker));
            }
            while npows.len() < len {
                let next = npows.last().unwrap().mul(&w.n);
                npows.push(next);
            }
            let rank = |a: i64, b: i64| -> usize {
                if a < 0 || b >= len as i64 || a > b {
                    return 0;
                }
                match &spaces[a as usize] {
                    Some(basis) if basis.cols() > 0 => {
                        npows[(b - a) as usize].mul(basis).rank()
                    }
                    _ => 0,
                }
            };
            let mut table = vec![vec![0usize; len]; len];
            for a in 0..len {
                for b in a..len {
                    table[a][b] = rank(a as i64, b as i64);
                }
            }
            let get = |a: i64, b: i64| -> i64 {
                if a < 0 || b >= len as i64 || a > b {
                    0
                } else {
                    table[a as usize][b as usize] as i64
                }
            };
            for a in 0..len as i64 {
                for b in a..len as i64 {
                    let count = get(a, b) - get(a - 1, b) - get(a, b + 1) + get(a - 1, b + 1);
                    if count < 0 {
                        return Err(Error::ChainMismatch(format!(
                            "negative interval count on orbit ζ^{e}"
                        )));
                    }
                    if count == 0 {
                        continue;
                    }
                    let d = (b - a + 1) as u32;
                    let top = &chain[0].1 * &base.q_pow(&ctx, -(f as i64) * a);
                    let center = &top * &base.sqrt_q_pow(&ctx, -(f as i64) * (d as i64 - 1));
                    let sigma = IrredSummand::new(&ctx, base, e as i64, center)?;
                    for _ in 0..count {
                        segments.push(Segment {
                            sigma: sigma.clone(),
                            d,
                        });
                    }
                }
            }
        }
    }
    let p = SL2Param::new(&ctx, base, segments)?;
    if p.dim() != dim {
        return Err(Error::ChainMismatch(format!(
            "segments cover dimension {} of {dim}",
            p.dim()
        )));
    }
    Ok(p)
}

/// Groups eigenvalues into `ν`-chains, each as `(k, λ)` sorted by `k` with
/// `λ = λ_first · Q^{-f (k - k_first)}`.
pub fn chains(alphas: &[FieldElem], base: Base, f: u32) -> Vec<Vec<(i64, FieldElem)>> {
    let mut out: Vec<Vec<(i64, FieldElem)>> = Vec::new();
    'next: for a in alphas {
        for chain in out.iter_mut() {
            if let Some(k) = nu_steps(&chain[0].1, a, base, f) {
                chain.push((k, a.clone()));
                continue 'next;
            }
        }
        out.push(vec![(0, a.clone())]);
    }
    for chain in out.iter_mut() {
        chain.sort_by_key(|(k, _)| *k);
        let k0 = chain[0].0;
        for (k, _) in chain.iter_mut() {
            *k -= k0;
        }
    }
    out
}

/// Multiplicative Jordan decomposition `Φ = Φ_ss · u`. The semisimple part
/// comes from Newton's iteration on the squarefree part of the
/// characteristic polynomial, so no eigenvalues are needed.
pub fn frobenius_ss(base: Base, phi: &Matrix, sigma: &Matrix) -> Result<(Realization, Matrix)> {
    let p = phi.charpoly().squarefree();
    let dp = p.derivative();
    let mut s = phi.clone();
    for _ in 0..=phi.rows().max(1).ilog2() + 1 {
        let ps = poly_at(&p, &s);
        if ps.is_zero() {
            break;
        }
        let corr = ps.mul(&poly_at(&dp, &s).inverse()?);
        s = s.sub(&corr);
    }
    if !poly_at(&p, &s).is_zero() {
        return Err(Error::InvariantViolation("Newton iteration did not converge".into()));
    }
    let u = s.inverse()?.mul(phi);
    let r = Realization::new(base, s, sigma.clone())?;
    Ok((r, u))
}

fn poly_at(p: &Poly, a: &Matrix) -> Matrix {
    let ctx = a.ctx();
    let n = a.rows();
    let mut acc = Matrix::zeros(ctx, n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(a).add(&Matrix::identity(ctx, n).scale(c));
    }
    acc
}
