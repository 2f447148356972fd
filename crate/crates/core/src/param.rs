//! Tame semisimple parameters, their matrix realizations, and the tensor
//! calculus on them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{check_same_ctx, FieldCtx, FieldElem};
use crate::matrix::Matrix;
use crate::monomial::Monomial;
use crate::poly::Poly;

/// Which Weil group a parameter lives on. `E` is the unramified quadratic
/// extension: its Frobenius is `Fr_F^2`, so every `q` becomes `q^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    F,
    E,
}

impl Base {
    pub fn residue_power(self) -> u32 {
        match self {
            Base::F => 1,
            Base::E => 2,
        }
    }

    /// Residue cardinality of the base field.
    pub fn q(self, ctx: &FieldCtx) -> u64 {
        ctx.q().pow(self.residue_power())
    }

    /// `q_base^{h/2}` as a field element.
    pub fn sqrt_q_pow(self, ctx: &Arc<FieldCtx>, h: i64) -> FieldElem {
        FieldElem::sqrt_q_pow(ctx, h * self.residue_power() as i64)
    }

    pub fn q_pow(self, ctx: &Arc<FieldCtx>, k: i64) -> FieldElem {
        self.sqrt_q_pow(ctx, 2 * k)
    }
}

/// The orbit `e, eQ, eQ^2, …` in `Z/M`, in that order.
pub fn orbit(e: u64, big_q: u64, m: u64) -> Vec<u64> {
    let e = e % m;
    let mut out = vec![e];
    let mut cur = (e as u128 * big_q as u128 % m as u128) as u64;
    while cur != e {
        out.push(cur);
        cur = (cur as u128 * big_q as u128 % m as u128) as u64;
    }
    out
}

/// Canonical (minimal) representatives of all orbits on `Z/M`.
pub fn orbit_reps(big_q: u64, m: u64) -> Vec<u64> {
    (0..m)
        .filter(|&e| orbit(e, big_q, m).iter().all(|&x| x >= e))
        .collect()
}

/// A tame irreducible: the induction of the character `s ↦ ζ^e`,
/// `Fr^f ↦ α` from the degree-`f` unramified extension.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrredSummand {
    zeta: u64,
    f: u32,
    alpha: FieldElem,
}

impl IrredSummand {
    /// Canonicalizes `zeta` to its orbit minimum and derives `f`.
    pub fn new(ctx: &Arc<FieldCtx>, base: Base, zeta: i64, alpha: FieldElem) -> Result<Self> {
        check_same_ctx(ctx, alpha.ctx())?;
        if alpha.is_zero() {
            return Err(Error::InvalidInput("Frobenius eigenvalue must be nonzero".into()));
        }
        let m = ctx.m();
        let e = zeta.rem_euclid(m as i64) as u64;
        let orb = orbit(e, base.q(ctx), m);
        Ok(IrredSummand {
            zeta: *orb.iter().min().unwrap(),
            f: orb.len() as u32,
            alpha,
        })
    }

    /// Like [`IrredSummand::new`] but insists on the stated dimension.
    pub fn with_dim(
        ctx: &Arc<FieldCtx>,
        base: Base,
        zeta: i64,
        f: u32,
        alpha: FieldElem,
    ) -> Result<Self> {
        let s = Self::new(ctx, base, zeta, alpha)?;
        if s.f != f {
            return Err(Error::InvalidInput(format!(
                "orbit of ζ^{zeta} has size {}, not {f}",
                s.f
            )));
        }
        Ok(s)
    }

    pub fn zeta(&self) -> u64 {
        self.zeta
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn alpha(&self) -> &FieldElem {
        &self.alpha
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.alpha.ctx()
    }

    pub fn with_alpha(&self, alpha: FieldElem) -> Self {
        IrredSummand {
            zeta: self.zeta,
            f: self.f,
            alpha,
        }
    }

    /// Twist by `ν^k`, i.e. `α ↦ α·q^{-fk}` (half-integral `k = h/2`).
    pub fn nu_twist_half(&self, base: Base, h: i64) -> Self {
        let ctx = self.ctx();
        let c = base.sqrt_q_pow(ctx, -(self.f as i64) * h);
        self.with_alpha(&self.alpha * &c)
    }

    pub fn dual(&self, base: Base) -> Self {
        let ctx = self.ctx();
        let m = ctx.m() as i64;
        IrredSummand::new(
            ctx,
            base,
            (m - self.zeta as i64) % m,
            self.alpha.inv().expect("nonzero"),
        )
        .expect("valid summand")
    }

    pub fn galois(&self, base: Base, k: i64) -> Result<Self> {
        let ctx = self.ctx();
        let alpha = self.alpha.galois(k)?;
        IrredSummand::new(ctx, base, self.zeta as i64 * k, alpha)
    }

    pub fn orbit(&self, base: Base) -> Vec<u64> {
        let ctx = self.ctx();
        orbit(self.zeta, base.q(ctx), ctx.m())
    }
}

impl fmt::Display for IrredSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(ζ^{}, f={}, α={})", self.zeta, self.f, self.alpha)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleParam {
    ctx: Arc<FieldCtx>,
    base: Base,
    summands: Vec<IrredSummand>,
}

impl SemisimpleParam {
    pub fn new(ctx: &Arc<FieldCtx>, base: Base, mut summands: Vec<IrredSummand>) -> Result<Self> {
        for s in &summands {
            check_same_ctx(ctx, s.ctx())?;
        }
        summands.sort();
        Ok(SemisimpleParam {
            ctx: ctx.clone(),
            base,
            summands,
        })
    }

    pub fn empty(ctx: &Arc<FieldCtx>, base: Base) -> Self {
        SemisimpleParam {
            ctx: ctx.clone(),
            base,
            summands: Vec::new(),
        }
    }

    /// The unramified character with `Fr ↦ α`.
    pub fn character(ctx: &Arc<FieldCtx>, base: Base, alpha: FieldElem) -> Result<Self> {
        Self::new(ctx, base, vec![IrredSummand::new(ctx, base, 0, alpha)?])
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn summands(&self) -> &[IrredSummand] {
        &self.summands
    }

    pub fn dim(&self) -> usize {
        self.summands.iter().map(|s| s.f as usize).sum()
    }

    pub fn check_compatible(&self, other: &SemisimpleParam) -> Result<()> {
        check_same_ctx(&self.ctx, &other.ctx)?;
        if self.base != other.base {
            return Err(Error::InvalidInput(
                "parameters live on different Weil groups".into(),
            ));
        }
        Ok(())
    }

    pub fn realize(&self) -> Realization {
        let ctx = &self.ctx;
        let n = self.dim();
        let mut phi = Matrix::zeros(ctx, n, n);
        let mut sigma = Matrix::zeros(ctx, n, n);
        let mut labels = Vec::with_capacity(n);
        let mut start = 0;
        for (idx, s) in self.summands.iter().enumerate() {
            let orb = s.orbit(self.base);
            let f = orb.len();
            for (j, &e) in orb.iter().enumerate() {
                sigma.set(start + j, start + j, FieldElem::zeta(ctx, e as i64));
                labels.push(BasisLabel { summand: idx, j });
                if j + 1 < f {
                    phi.set(start + j + 1, start + j, FieldElem::one(ctx));
                } else {
                    phi.set(start, start + j, s.alpha.clone());
                }
            }
            start += f;
        }
        Realization {
            ctx: ctx.clone(),
            base: self.base,
            phi,
            sigma,
            labels,
        }
    }

    pub fn direct_sum(&self, other: &SemisimpleParam) -> Result<SemisimpleParam> {
        self.check_compatible(other)?;
        let mut s = self.summands.clone();
        s.extend(other.summands.iter().cloned());
        SemisimpleParam::new(&self.ctx, self.base, s)
    }

    pub fn dual(&self) -> SemisimpleParam {
        let s = self.summands.iter().map(|x| x.dual(self.base)).collect();
        SemisimpleParam::new(&self.ctx, self.base, s).expect("same context")
    }

    /// `(ρ^c)^∨` for a `W_E`-parameter, `c` acting by `ζ ↦ ζ^q`.
    pub fn conj_dual(&self) -> Result<SemisimpleParam> {
        Ok(self.conj()?.dual())
    }

    /// `ρ^c(w) = ρ(Fr_F w Fr_F^{-1})`.
    pub fn conj(&self) -> Result<SemisimpleParam> {
        if self.base != Base::E {
            return Err(Error::InvalidInput(
                "conjugation needs a W_E-parameter".into(),
            ));
        }
        let q = self.ctx.q() as i64;
        let s = self
            .summands
            .iter()
            .map(|x| IrredSummand::new(&self.ctx, Base::E, x.zeta as i64 * q, x.alpha.clone()))
            .collect::<Result<Vec<_>>>()?;
        SemisimpleParam::new(&self.ctx, Base::E, s)
    }

    /// Twist by the unramified character `Fr ↦ c`.
    pub fn twist_unramified(&self, c: &FieldElem) -> Result<SemisimpleParam> {
        check_same_ctx(&self.ctx, c.ctx())?;
        if c.is_zero() {
            return Err(Error::InvalidInput("twist by zero".into()));
        }
        let s = self
            .summands
            .iter()
            .map(|x| Ok(x.with_alpha(&x.alpha * &c.pow(x.f as i64)?)))
            .collect::<Result<Vec<_>>>()?;
        SemisimpleParam::new(&self.ctx, self.base, s)
    }

    /// Twist by `ν^{h/2}`.
    pub fn nu_twist_half(&self, h: i64) -> SemisimpleParam {
        let s = self
            .summands
            .iter()
            .map(|x| x.nu_twist_half(self.base, h))
            .collect();
        SemisimpleParam::new(&self.ctx, self.base, s).expect("same context")
    }

    pub fn tensor(&self, other: &SemisimpleParam) -> Result<SemisimpleParam> {
        self.check_compatible(other)?;
        self.realize().tensor(&other.realize())?.decompose(&[])
    }

    pub fn sym2_ext2(&self) -> Result<(SemisimpleParam, SemisimpleParam)> {
        let r = self.realize();
        Ok((r.sym2().decompose(&[])?, r.ext2().decompose(&[])?))
    }

    /// `As^+` (`sign = +1`) or `As^-` (`sign = -1`) of a `W_E`-parameter.
    pub fn asai(&self, sign: i32) -> Result<SemisimpleParam> {
        self.realize().asai(sign)?.decompose(&[])
    }

    /// Restriction of a `W_F`-parameter to `W_E`.
    pub fn restrict_to_e(&self) -> Result<SemisimpleParam> {
        if self.base != Base::F {
            return Err(Error::InvalidInput("already a W_E-parameter".into()));
        }
        let ctx = &self.ctx;
        let q = ctx.q() as i64;
        let mut out = Vec::new();
        for s in &self.summands {
            if s.f % 2 == 0 {
                out.push(IrredSummand::new(ctx, Base::E, s.zeta as i64, s.alpha.clone())?);
                out.push(IrredSummand::new(ctx, Base::E, s.zeta as i64 * q, s.alpha.clone())?);
            } else {
                out.push(IrredSummand::new(ctx, Base::E, s.zeta as i64, &s.alpha * &s.alpha)?);
            }
        }
        SemisimpleParam::new(ctx, Base::E, out)
    }

    pub fn galois(&self, k: i64) -> Result<SemisimpleParam> {
        let s = self
            .summands
            .iter()
            .map(|x| x.galois(self.base, k))
            .collect::<Result<Vec<_>>>()?;
        SemisimpleParam::new(&self.ctx, self.base, s)
    }

    pub fn is_isomorphic(&self, other: &SemisimpleParam) -> bool {
        self.ctx.same(&other.ctx) && self.base == other.base && self.summands == other.summands
    }

    /// `det Φ`.
    pub fn det_frobenius(&self) -> FieldElem {
        self.realize().phi.det()
    }

    /// Per orbit representative `e`, the monic characteristic polynomial of
    /// `Φ^f` on the `ζ^e`-eigenspace.
    pub fn orbit_charpolys(&self) -> BTreeMap<u64, Poly> {
        let mut out: BTreeMap<u64, Poly> = BTreeMap::new();
        for s in &self.summands {
            let lin = Poly::new(&self.ctx, vec![-&s.alpha, FieldElem::one(&self.ctx)]);
            let e = out.entry(s.zeta).or_insert_with(|| Poly::one(&self.ctx));
            *e = e.mul(&lin);
        }
        out
    }
}

impl fmt::Display for SemisimpleParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisLabel {
    pub summand: usize,
    pub j: usize,
}

/// A pair `(Φ, Σ)` with `Φ^{-1} Σ Φ = Σ^Q`, `Q` the base residue cardinality.
#[derive(Clone, Debug)]
pub struct Realization {
    pub ctx: Arc<FieldCtx>,
    pub base: Base,
    pub phi: Matrix,
    pub sigma: Matrix,
    /// Links coordinates to summands; empty for derived realizations.
    pub labels: Vec<BasisLabel>,
}

impl Realization {
    pub fn new(base: Base, phi: Matrix, sigma: Matrix) -> Result<Self> {
        let ctx = phi.ctx().clone();
        check_same_ctx(&ctx, sigma.ctx())?;
        if !phi.is_square() || !sigma.is_square() || phi.rows() != sigma.rows() {
            return Err(Error::InvalidInput("Φ and Σ must be square of equal size".into()));
        }
        let r = Realization {
            ctx,
            base,
            phi,
            sigma,
            labels: Vec::new(),
        };
        r.check_relation()?;
        Ok(r)
    }

    pub fn dim(&self) -> usize {
        self.phi.rows()
    }

    /// Checks `Σ^M = 1` and `Σ Φ = Φ Σ^Q`.
    pub fn check_relation(&self) -> Result<()> {
        let n = self.dim();
        let m = self.ctx.m();
        if self.sigma.pow(m) != Matrix::identity(&self.ctx, n) {
            return Err(Error::InvariantViolation("Σ^M ≠ 1".into()));
        }
        let sq = self.sigma.pow(self.base.q(&self.ctx) % m);
        if self.sigma.mul(&self.phi) != self.phi.mul(&sq) {
            return Err(Error::InvariantViolation("Φ^{-1} Σ Φ ≠ Σ^q".into()));
        }
        if self.phi.inverse().is_err() {
            return Err(Error::InvariantViolation("Φ is not invertible".into()));
        }
        Ok(())
    }

    pub fn tensor(&self, other: &Realization) -> Result<Realization> {
        check_same_ctx(&self.ctx, &other.ctx)?;
        if self.base != other.base {
            return Err(Error::InvalidInput("different Weil groups".into()));
        }
        Ok(Realization {
            ctx: self.ctx.clone(),
            base: self.base,
            phi: self.phi.kron(&other.phi),
            sigma: self.sigma.kron(&other.sigma),
            labels: Vec::new(),
        })
    }

    pub fn direct_sum(&self, other: &Realization) -> Realization {
        Realization {
            ctx: self.ctx.clone(),
            base: self.base,
            phi: Matrix::block_diag(&self.ctx, &[self.phi.clone(), other.phi.clone()]),
            sigma: Matrix::block_diag(&self.ctx, &[self.sigma.clone(), other.sigma.clone()]),
            labels: Vec::new(),
        }
    }

    /// `(Φ^{-T}, Σ^{-T})`.
    pub fn dual(&self) -> Realization {
        Realization {
            ctx: self.ctx.clone(),
            base: self.base,
            phi: self.phi.inverse().expect("invertible Φ").transpose(),
            sigma: self.sigma.inverse().expect("invertible Σ").transpose(),
            labels: Vec::new(),
        }
    }

    pub fn sym2(&self) -> Realization {
        Realization {
            ctx: self.ctx.clone(),
            base: self.base,
            phi: sym2_matrix(&self.phi),
            sigma: sym2_matrix(&self.sigma),
            labels: Vec::new(),
        }
    }

    pub fn ext2(&self) -> Realization {
        Realization {
            ctx: self.ctx.clone(),
            base: self.base,
            phi: ext2_matrix(&self.phi),
            sigma: ext2_matrix(&self.sigma),
            labels: Vec::new(),
        }
    }

    /// Tensor induction from `W_E` to `W_F`: `s ↦ Σ ⊗ Σ^q`,
    /// `Fr_F (v ⊗ w) = Φ_E w ⊗ v`, times `-1` for `As^-`.
    pub fn asai(&self, sign: i32) -> Result<Realization> {
        if self.base != Base::E {
            return Err(Error::InvalidInput("Asai needs a W_E-parameter".into()));
        }
        let ctx = &self.ctx;
        let n = self.dim();
        let sig_q = self.sigma.pow(ctx.q() % ctx.m());
        let sigma = self.sigma.kron(&sig_q);
        let mut fr = Matrix::zeros(ctx, n * n, n * n);
        let s = FieldElem::from_int(ctx, if sign < 0 { -1 } else { 1 });
        // image of e_i ⊗ e_j is Φ e_j ⊗ e_i
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.phi.get(k, j);
                    if !c.is_zero() {
                        fr.set(k * n + i, i * n + j, c * &s);
                    }
                }
            }
        }
        Ok(Realization {
            ctx: ctx.clone(),
            base: Base::F,
            phi: fr,
            sigma,
            labels: Vec::new(),
        })
    }

    /// Restriction to `W_E`: `(Φ^2, Σ)`.
    pub fn restrict_to_e(&self) -> Result<Realization> {
        if self.base != Base::F {
            return Err(Error::InvalidInput("already a W_E-realization".into()));
        }
        Ok(Realization {
            ctx: self.ctx.clone(),
            base: Base::E,
            phi: self.phi.mul(&self.phi),
            sigma: self.sigma.clone(),
            labels: Vec::new(),
        })
    }

    /// Exponents `e` with a nonzero `ζ^e`-eigenspace, with bases.
    pub fn sigma_eigenspaces(&self) -> BTreeMap<u64, Matrix> {
        let ctx = &self.ctx;
        let n = self.dim();
        let mut out = BTreeMap::new();
        if self.sigma.is_diagonal() {
            let table: HashMap<FieldElem, u64> = (0..ctx.m())
                .map(|e| (FieldElem::zeta(ctx, e as i64), e))
                .collect();
            let mut coords: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
            for i in 0..n {
                let e = table[self.sigma.get(i, i)];
                coords.entry(e).or_default().push(i);
            }
            for (e, idx) in coords {
                let b = Matrix::from_fn(ctx, n, idx.len(), |i, j| {
                    if i == idx[j] {
                        FieldElem::one(ctx)
                    } else {
                        FieldElem::zero(ctx)
                    }
                });
                out.insert(e, b);
            }
            return out;
        }
        for e in 0..ctx.m() {
            let z = FieldElem::zeta(ctx, e as i64);
            let shifted = self.sigma.sub(&Matrix::identity(ctx, n).scale(&z));
            let k = shifted.kernel();
            if !k.is_empty() {
                out.insert(e, Matrix::from_columns(ctx, n, &k));
            }
        }
        out
    }

    /// For each orbit representative `e` (orbit size `f`), the matrix of
    /// `Φ^f` on the `ζ^e`-eigenspace.
    pub fn orbit_blocks(&self) -> Result<BTreeMap<u64, (u32, Matrix)>> {
        let ctx = &self.ctx;
        let big_q = self.base.q(ctx);
        let spaces = self.sigma_eigenspaces();
        let mut out = BTreeMap::new();
        let mut phi_pows: HashMap<u32, Matrix> = HashMap::new();
        for (&e, basis) in &spaces {
            let orb = orbit(e, big_q, ctx.m());
            if *orb.iter().min().unwrap() != e {
                continue;
            }
            let f = orb.len() as u32;
            let pf = phi_pows
                .entry(f)
                .or_insert_with(|| self.phi.pow(f as u64))
                .clone();
            let a = if self.sigma.is_diagonal() {
                let idx: Vec<usize> = (0..basis.cols())
                    .map(|j| (0..basis.rows()).find(|&i| !basis.get(i, j).is_zero()).unwrap())
                    .collect();
                pf.submatrix(&idx, &idx)
            } else {
                pf.restrict(basis)?
            };
            out.insert(e, (f, a));
        }
        Ok(out)
    }

    /// Reads off the summands, extracting `Φ^f`-eigenvalues from
    /// `candidates` together with roots found from the block structure.
    pub fn decompose(&self, candidates: &[FieldElem]) -> Result<SemisimpleParam> {
        let ctx = &self.ctx;
        let mut summands = Vec::new();
        for (e, (_, a)) in self.orbit_blocks()? {
            let block = format!("ζ^{e}");
            for (lambda, mult) in block_eigenvalues(&a, candidates, &block)? {
                let n = a.rows();
                let shifted = a.sub(&Matrix::identity(ctx, n).scale(&lambda));
                if shifted.nullity() != mult {
                    return Err(Error::NonSemisimple { block });
                }
                for _ in 0..mult {
                    summands.push(IrredSummand::new(ctx, self.base, e as i64, lambda.clone())?);
                }
            }
        }
        SemisimpleParam::new(ctx, self.base, summands)
    }

    /// Isomorphism of semisimple realizations, decided by the characteristic
    /// polynomials of `Φ^f` on each orbit block (no root extraction).
    pub fn ss_equivalent(&self, other: &Realization) -> Result<bool> {
        if self.base != other.base || self.dim() != other.dim() {
            return Ok(false);
        }
        let a = self.orbit_blocks()?;
        let b = other.orbit_blocks()?;
        if a.len() != b.len() {
            return Ok(false);
        }
        for ((ea, (_, ma)), (eb, (_, mb))) in a.iter().zip(b.iter()) {
            if ea != eb || ma.charpoly() != mb.charpoly() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same test against a parameter.
    pub fn matches(&self, p: &SemisimpleParam) -> Result<bool> {
        if self.base != p.base || self.dim() != p.dim() {
            return Ok(false);
        }
        let blocks = self.orbit_blocks()?;
        let polys = p.orbit_charpolys();
        if blocks.len() != polys.len() {
            return Ok(false);
        }
        for ((ea, (_, ma)), (eb, pb)) in blocks.iter().zip(polys.iter()) {
            if ea != eb || &ma.charpoly() != pb {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Eigenvalues with algebraic multiplicities; the characteristic polynomial
/// must split over the candidates, the monomial roots suggested by the
/// matrix, or a final linear or binomial factor.
pub(crate) fn block_eigenvalues(
    a: &Matrix,
    candidates: &[FieldElem],
    block: &str,
) -> Result<Vec<(FieldElem, usize)>> {
    let ctx = a.ctx().clone();
    let mut rest = a.charpoly();
    let mut out: Vec<(FieldElem, usize)> = Vec::new();
    let take = |lambda: &FieldElem, rest: &mut Poly, out: &mut Vec<(FieldElem, usize)>| {
        if lambda.is_zero() || out.iter().any(|(x, _)| x == lambda) {
            return;
        }
        let k = rest.root_multiplicity(lambda);
        if k > 0 {
            let lin = Poly::new(&ctx, vec![-lambda, FieldElem::one(&ctx)]);
            *rest = rest.divrem(&lin.pow(k as u32)).expect("monic").0;
            out.push((lambda.clone(), k));
        }
    };
    for c in candidates {
        take(c, &mut rest, &mut out);
    }
    for c in monomial_cycle_roots(a) {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        take(&c, &mut rest, &mut out);
    }
    match rest.degree().unwrap_or(0) {
        0 => {}
        1 => {
            let root = -&rest.coeff(0);
            take(&root, &mut rest, &mut out);
        }
        d => {
            // T^d - c
            let binomial = (1..d).all(|i| rest.coeff(i).is_zero());
            if binomial {
                if let Some(m) = Monomial::from_field(&(-&rest.coeff(0))) {
                    for r in m.roots(d as u32) {
                        take(&r.to_field(), &mut rest, &mut out);
                    }
                }
            }
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        return Err(Error::MissingCandidate {
            block: format!("{block}: unresolved factor {rest}"),
        });
    }
    out.sort();
    Ok(out)
}

/// For a monomial matrix (one nonzero per column), all monomial roots of
/// the cycle products.
fn monomial_cycle_roots(a: &Matrix) -> Vec<FieldElem> {
    let n = a.rows();
    let mut target = vec![usize::MAX; n];
    for j in 0..n {
        let nz: Vec<usize> = (0..n).filter(|&i| !a.get(i, j).is_zero()).collect();
        if nz.len() != 1 {
            return Vec::new();
        }
        target[j] = nz[0];
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut prod = FieldElem::one(a.ctx());
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            prod = &prod * a.get(target[j], j);
            j = target[j];
            len += 1;
        }
        if j != start {
            return Vec::new();
        }
        if let Some(m) = Monomial::from_field(&prod) {
            out.extend(m.roots(len).into_iter().map(|r| r.to_field()));
        }
    }
    out
}

/// `Sym^2` in the basis `e_i e_j`, `i <= j`.
pub fn sym2_matrix(a: &Matrix) -> Matrix {
    let n = a.rows();
    let ctx = a.ctx();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    Matrix::from_fn(ctx, pairs.len(), pairs.len(), |r, c| {
        let (k, l) = pairs[r];
        let (i, j) = pairs[c];
        if k == l {
            a.get(k, i) * a.get(k, j)
        } else {
            &(a.get(k, i) * a.get(l, j)) + &(a.get(l, i) * a.get(k, j))
        }
    })
}

/// `∧^2` in the basis `e_i ∧ e_j`, `i < j`.
pub fn ext2_matrix(a: &Matrix) -> Matrix {
    let n = a.rows();
    let ctx = a.ctx();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Matrix::from_fn(ctx, pairs.len(), pairs.len(), |r, c| {
        let (k, l) = pairs[r];
        let (i, j) = pairs[c];
        &(a.get(k, i) * a.get(l, j)) - &(a.get(l, i) * a.get(k, j))
    })
}
