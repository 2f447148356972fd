//! Seeded generators for randomized checks.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldCtx, FieldElem};
use crate::matrix::Matrix;
use crate::monodromy::monodromy_space;
use crate::monomial::Monomial;
use crate::param::{orbit, orbit_reps, Base, IrredSummand, SemisimpleParam};
use crate::wd::{SL2Param, Segment, WDParam};

const DEFAULT_POOL: [(i64, i64); 4] = [(1, 1), (1, 1), (2, 1), (1, 3)];

pub struct Gen {
    rng: ChaCha8Rng,
    pool: Vec<(i64, i64)>,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: DEFAULT_POOL.to_vec(),
        }
    }

    /// Rational parts `a/b` of generated eigenvalues.
    pub fn set_pool(&mut self, pool: &[(i64, i64)]) {
        self.pool = pool.to_vec();
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn pick<T: Clone>(&mut self, xs: &[T]) -> T {
        xs.choose(&mut self.rng).expect("nonempty").clone()
    }

    /// A context with `M <= max_m` prime to `p`.
    pub fn ctx(&mut self, max_m: u64, qs: &[u64]) -> Arc<FieldCtx> {
        loop {
            let q = self.pick(qs);
            let m = self.rng.gen_range(1..=max_m);
            if let Ok(ctx) = FieldCtx::new(m, q) {
                return ctx;
            }
        }
    }

    /// `c · ζ_W^u · √q^b` with `c` drawn from `coeffs`.
    pub fn monomial_from(&mut self, ctx: &Arc<FieldCtx>, coeffs: &[(i64, i64)], max_b: i64) -> FieldElem {
        let w = ctx.unit_order() as i64;
        let (a, b) = self.pick(coeffs);
        let sign = if self.rng.gen_bool(0.2) { -1 } else { 1 };
        let c = BigRational::new(BigInt::from(sign * a), BigInt::from(b));
        let u = if self.rng.gen_bool(0.3) { self.range(0, w - 1) } else { 0 };
        let h = self.range(-max_b, max_b);
        Monomial::new(ctx, c, u, h).expect("valid monomial").to_field()
    }

    /// Eigenvalues from a small pool, so that `ν`-chains are common.
    pub fn alpha(&mut self, ctx: &Arc<FieldCtx>) -> FieldElem {
        let pool = self.pool.clone();
        self.monomial_from(ctx, &pool, 3)
    }

    pub fn summand(&mut self, ctx: &Arc<FieldCtx>, base: Base, max_f: usize) -> IrredSummand {
        let big_q = base.q(ctx);
        let reps: Vec<u64> = orbit_reps(big_q, ctx.m())
            .into_iter()
            .filter(|&e| orbit(e, big_q, ctx.m()).len() <= max_f)
            .collect();
        let e = self.pick(&reps);
        let a = self.alpha(ctx);
        IrredSummand::new(ctx, base, e as i64, a).expect("valid summand")
    }

    pub fn semisimple(&mut self, ctx: &Arc<FieldCtx>, base: Base, max_dim: usize) -> SemisimpleParam {
        let target = self.rng.gen_range(1..=max_dim.max(1));
        let mut out = Vec::new();
        let mut dim = 0;
        while dim < target {
            let s = self.summand(ctx, base, target - dim);
            dim += s.f() as usize;
            out.push(s);
        }
        SemisimpleParam::new(ctx, base, out).expect("same context")
    }

    pub fn segment(&mut self, ctx: &Arc<FieldCtx>, base: Base, max_dim: usize) -> Segment {
        let sigma = self.summand(ctx, base, max_dim);
        let d = self.rng.gen_range(1..=max_dim / sigma.f() as usize);
        Segment { sigma, d: d as u32 }
    }

    pub fn sl2(&mut self, ctx: &Arc<FieldCtx>, base: Base, max_dim: usize) -> SL2Param {
        let target = self.rng.gen_range(1..=max_dim.max(1));
        let mut segs = Vec::new();
        let mut dim = 0;
        while dim < target {
            let seg = self.segment(ctx, base, target - dim);
            dim += (seg.sigma.f() * seg.d) as usize;
            segs.push(seg);
        }
        SL2Param::new(ctx, base, segs).expect("same context")
    }

    /// Semisimple part from random segments, `N` a random element of `V_r`.
    pub fn wd(&mut self, ctx: &Arc<FieldCtx>, base: Base, max_dim: usize) -> WDParam {
        let ss = self.sl2(ctx, base, max_dim).semisimplify();
        let dim = ss.dim();
        let mut n = Matrix::zeros(ctx, dim, dim);
        for b in monodromy_space(&ss) {
            let c = self.range(-2, 2);
            n = n.add(&b.scale(&FieldElem::from_int(ctx, c)));
        }
        WDParam::new(ss, n).expect("element of V_r")
    }

    pub fn bool(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }
}
