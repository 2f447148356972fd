//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use wdparam::random::Gen;
use wdparam::{Base, FieldCtx, FieldElem, SemisimpleParam, WDParam};

pub const SEED: u64 = 0x5eed;

pub fn ctx(m: u64, q: u64) -> Arc<FieldCtx> {
    FieldCtx::new(m, q).expect("valid context")
}

/// A dense element with every basis coordinate nonzero.
pub fn dense(ctx: &Arc<FieldCtx>, salt: i64) -> FieldElem {
    let mut x = FieldElem::zero(ctx);
    for i in 0..ctx.m() as i64 {
        let z = FieldElem::zeta(ctx, i);
        let c = FieldElem::from_ratio(ctx, 2 * i + salt, i + 3);
        x = &x + &(&z * &c);
        x = &x + &(&(&z * &FieldElem::sqrt_q_pow(ctx, 1)) * &FieldElem::from_int(ctx, i - salt));
    }
    x
}

pub fn random_wd(ctx: &Arc<FieldCtx>, n: usize, seed: u64) -> WDParam {
    Gen::new(seed).wd(ctx, Base::F, n)
}

pub fn random_ss(ctx: &Arc<FieldCtx>, n: usize, seed: u64) -> SemisimpleParam {
    Gen::new(seed).semisimple(ctx, Base::F, n)
}

/// `χ_1 ⊕ χ_{q^{-1}} ⊕ … ⊕ χ_{q^{1-n}}`: one full chain.
pub fn chain(ctx: &Arc<FieldCtx>, n: usize) -> SemisimpleParam {
    let mut p = SemisimpleParam::empty(ctx, Base::F);
    for k in 0..n as i64 {
        let c = SemisimpleParam::character(ctx, Base::F, Base::F.q_pow(ctx, -k)).expect("nonzero");
        p = p.direct_sum(&c).expect("same context");
    }
    p
}
