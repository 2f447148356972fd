use std::sync::Arc;

use proptest::prelude::*;
use wdparam::factors::{big_gamma, gamma_ratio, l_factor};
use wdparam::json::{field_json, parse_field, parse_semisimple, semisimple_json, Node};
use wdparam::random::Gen;
use wdparam::wd::{sl2_to_wd, wd_to_sl2};
use wdparam::{Base, Divisor, FieldCtx, FieldElem, Place, Poly, RatFun};

fn contexts() -> impl Strategy<Value = Arc<FieldCtx>> {
    prop::sample::select(vec![(1u64, 2u64), (3, 2), (4, 3), (5, 3), (8, 5), (12, 5), (6, 7), (7, 4)])
        .prop_map(|(m, q)| FieldCtx::new(m, q).unwrap())
}

fn elem(ctx: &Arc<FieldCtx>, coords: &[(i64, i64)]) -> FieldElem {
    let mut x = FieldElem::zero(ctx);
    for (i, &(n, d)) in coords.iter().enumerate() {
        let mut t = &FieldElem::zeta(ctx, (i / 2) as i64) * &FieldElem::from_ratio(ctx, n, d);
        if i % 2 == 1 {
            t = &t * &FieldElem::sqrt_q_pow(ctx, 1);
        }
        x = &x + &t;
    }
    x
}

fn coords() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-9i64..10, 1i64..6), 0..8)
}

fn ctx_and_elems(k: usize) -> impl Strategy<Value = (Arc<FieldCtx>, Vec<FieldElem>)> {
    (contexts(), prop::collection::vec(coords(), k))
        .prop_map(|(ctx, cs)| {
            let xs = cs.iter().map(|c| elem(&ctx, c)).collect();
            (ctx, xs)
        })
}

fn coprime_k(m: u64, raw: u64) -> i64 {
    (1..=m.max(1))
        .map(|d| (raw + d) % m.max(1))
        .find(|&k| num_integer::gcd(k, m) == 1)
        .unwrap_or(1) as i64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_axioms((_, xs) in ctx_and_elems(3)) {
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(a * b, b * a);
    }

    #[test]
    fn field_inverse((ctx, xs) in ctx_and_elems(1)) {
        let a = &xs[0];
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a * &a.inv().unwrap(), FieldElem::one(&ctx));
    }

    #[test]
    fn galois_is_a_field_automorphism((ctx, xs) in ctx_and_elems(2), raw in 0u64..50) {
        let k = coprime_k(ctx.m(), raw);
        let (a, b) = (&xs[0], &xs[1]);
        prop_assert_eq!((a * b).galois(k).unwrap(), &a.galois(k).unwrap() * &b.galois(k).unwrap());
        prop_assert_eq!((a + b).galois(k).unwrap(), &a.galois(k).unwrap() + &b.galois(k).unwrap());
        prop_assert_eq!(FieldElem::sqrt_q_pow(&ctx, 1).galois(k).unwrap(), FieldElem::sqrt_q_pow(&ctx, 1));
    }

    #[test]
    fn gcd_contains_common_factor((ctx, xs) in ctx_and_elems(4)) {
        let lin = |x: &FieldElem| Poly::one_minus(x, 1);
        let common = lin(&xs[0]).mul(&lin(&xs[1]));
        let a = common.mul(&lin(&xs[2]));
        let b = common.mul(&lin(&xs[3])).add(&Poly::zero(&ctx));
        let g = a.gcd(&b);
        let (_, r) = g.divrem(&common).unwrap();
        prop_assert!(r.is_zero());
        let (_, ra) = a.divrem(&g).unwrap();
        let (_, rb) = b.divrem(&g).unwrap();
        prop_assert!(ra.is_zero() && rb.is_zero());
    }

    #[test]
    fn divisor_of_product((ctx, xs) in ctx_and_elems(3), ms in prop::collection::vec(-3i64..4, 3)) {
        let mut f = RatFun::one(&ctx);
        let mut want = Divisor::new();
        for (x, &m) in xs.iter().zip(&ms) {
            prop_assume!(!x.is_zero());
            f = f.mul(&RatFun::from_poly(Poly::one_minus(x, 1)).pow(m).unwrap());
            want.add_at(Place::point(x.inv().unwrap()), m);
        }
        let cands: Vec<_> = xs.iter().map(|x| x.inv().unwrap()).collect();
        prop_assert_eq!(f.divisor(&cands).unwrap(), want);
    }

    #[test]
    fn field_json_round_trip((ctx, xs) in ctx_and_elems(1)) {
        let v = field_json(&xs[0]);
        prop_assert_eq!(parse_field(&ctx, Node::root(&v)).unwrap(), xs[0].clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn semisimple_json_round_trip(seed in any::<u64>(), e in any::<bool>()) {
        let mut g = Gen::new(seed);
        let ctx = g.ctx(12, &[2, 3, 5]);
        let base = if e { Base::E } else { Base::F };
        let p = g.semisimple(&ctx, base, 4);
        let v = semisimple_json(&p);
        prop_assert_eq!(parse_semisimple(&ctx, Base::F, Node::root(&v)).unwrap(), p);
    }

    #[test]
    fn dual_is_an_involution(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let ctx = g.ctx(12, &[2, 3, 5]);
        let p = g.semisimple(&ctx, Base::F, 4);
        prop_assert!(p.dual().dual().is_isomorphic(&p));
    }

    #[test]
    fn gamma_is_multiplicative(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let ctx = g.ctx(8, &[2, 3, 5]);
        let w1 = g.wd(&ctx, Base::F, 2);
        let w2 = g.wd(&ctx, Base::F, 2);
        let sum = w1.direct_sum(&w2).unwrap();
        prop_assert_eq!(gamma_ratio(&sum).unwrap(), gamma_ratio(&w1).unwrap().mul(&gamma_ratio(&w2).unwrap()));
        prop_assert_eq!(l_factor(&sum).unwrap(), l_factor(&w1).unwrap().mul(&l_factor(&w2).unwrap()));
    }

    #[test]
    fn big_gamma_is_antisymmetric_under_swap(seed in any::<u64>()) {
        // Γ(φ₂, φ₁) is Γ(φ₁, φ₂) with every point inverted
        let mut g = Gen::new(seed);
        let ctx = g.ctx(8, &[2, 3, 5]);
        let a = g.semisimple(&ctx, Base::F, 3);
        let b = g.semisimple(&ctx, Base::F, 3);
        let mut flipped = Divisor::new();
        for (p, &m) in big_gamma(&a, &b).unwrap().iter() {
            flipped.add_at(Place::new(p.degree, p.point.inv().unwrap()), m);
        }
        prop_assert_eq!(big_gamma(&b, &a).unwrap(), flipped);
    }

    #[test]
    fn dictionary_round_trip(seed in any::<u64>(), e in any::<bool>()) {
        let mut g = Gen::new(seed);
        let ctx = g.ctx(12, &[2, 3, 5]);
        let base = if e { Base::E } else { Base::F };
        let p = g.sl2(&ctx, base, 5);
        prop_assert_eq!(wd_to_sl2(&sl2_to_wd(&p)).unwrap(), p);
    }
}
