use std::sync::Arc;

use h1forge::catalog::{bound, min_degree, order_divisor_product, Family, LieFamily};
use h1forge::cohomology::{coboundary, coboundary_dim, h1_full_table, h1_presentation, split_cocycle};
use h1forge::group::DEFAULT_CAP;
use h1forge::{Felt, FieldCtx, GModule, MatrixFq, MatrixGroup};
use proptest::prelude::*;

const FIELDS: [(u64, u32); 8] = [(2, 1), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 2), (13, 1)];

fn field() -> impl Strategy<Value = Arc<FieldCtx>> {
    (0..FIELDS.len()).prop_map(|i| FieldCtx::new(FIELDS[i].0, FIELDS[i].1).unwrap())
}

fn felt(ctx: &FieldCtx, raw: u32) -> Felt {
    ctx.from_raw(raw % ctx.q()).unwrap()
}

fn matrix(ctx: &Arc<FieldCtx>, rows: usize, cols: usize, raw: &[u32]) -> MatrixFq {
    MatrixFq::from_fn(ctx, rows, cols, |i, j| felt(ctx, raw[i * cols + j]))
}

fn raws(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), n)
}

/// Random subgroups of GL_2(p) for p <= 7, generated by up to three matrices.
fn small_group() -> impl Strategy<Value = Arc<MatrixGroup>> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..=3, raws(12)).prop_filter_map(
        "singular generator",
        |(p, ngens, raw)| {
            let ctx = FieldCtx::new(p, 1).unwrap();
            let gens: Vec<MatrixFq> = (0..ngens).map(|s| matrix(&ctx, 2, 2, &raw[4 * s..4 * s + 4])).collect();
            if gens.iter().any(|g| g.det().is_zero()) {
                return None;
            }
            MatrixGroup::generate(&ctx, 2, gens, DEFAULT_CAP).ok().map(Arc::new)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(ctx in field(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let (a, b, c) = (felt(&ctx, a), felt(&ctx, b), felt(&ctx, c));
        prop_assert_eq!(ctx.add(a, b), ctx.add(b, a));
        prop_assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
        prop_assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
        prop_assert_eq!(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.add(a, ctx.neg(a)), Felt::ZERO);
        prop_assert_eq!(ctx.sub(ctx.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), Felt::ONE);
            prop_assert_eq!(ctx.pow(a, ctx.q() as u64 - 1), Felt::ONE);
        }
        if let Some(r) = ctx.sqrt(a) {
            prop_assert_eq!(ctx.mul(r, r), a);
        }
    }

    #[test]
    fn frobenius_is_an_automorphism(ctx in field(), a in any::<u32>(), b in any::<u32>(), j in 0u32..4) {
        let j = j % (ctx.m() + 1);
        let (a, b) = (felt(&ctx, a), felt(&ctx, b));
        let f = |x| ctx.frobenius(x, j).unwrap();
        prop_assert_eq!(f(ctx.add(a, b)), ctx.add(f(a), f(b)));
        prop_assert_eq!(f(ctx.mul(a, b)), ctx.mul(f(a), f(b)));
        prop_assert_eq!(ctx.frobenius(a, ctx.m()).unwrap(), a);
    }

    #[test]
    fn element_text_round_trip(ctx in field(), a in any::<u32>()) {
        let a = felt(&ctx, a);
        prop_assert_eq!(ctx.parse(&ctx.format(a)).unwrap(), a);
    }

    #[test]
    fn rref_is_idempotent_and_rank_nullity(ctx in field(), r in 1usize..6, c in 1usize..6, raw in raws(36)) {
        let a = matrix(&ctx, r, c, &raw);
        let once = a.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(&once.matrix, &twice.matrix);
        let kernel = a.kernel();
        prop_assert_eq!(a.rank() + kernel.dim(), c);
        for v in kernel.basis() {
            prop_assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn solve_round_trip(ctx in field(), r in 1usize..6, c in 1usize..6, raw in raws(36), xr in raws(6)) {
        let a = matrix(&ctx, r, c, &raw);
        let x: Vec<Felt> = (0..c).map(|i| felt(&ctx, xr[i])).collect();
        let b = a.mul_vec(&x);
        let y = a.solve(&b).expect("consistent system");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn kron_mixed_product(ctx in field(), raw in raws(4 * 16)) {
        let a = matrix(&ctx, 2, 3, &raw[0..]);
        let c = matrix(&ctx, 3, 2, &raw[16..]);
        let b = matrix(&ctx, 2, 2, &raw[32..]);
        let d = matrix(&ctx, 2, 3, &raw[48..]);
        let lhs = &a.kron(&b).unwrap() * &c.kron(&d).unwrap();
        let rhs = (&a * &c).kron(&(&b * &d)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn determinant_and_inverse(ctx in field(), n in 1usize..5, raw in raws(32)) {
        let a = matrix(&ctx, n, n, &raw);
        let b = matrix(&ctx, n, n, &raw[16..]);
        prop_assert_eq!((&a * &b).det(), ctx.mul(a.det(), b.det()));
        match a.inverse() {
            Some(ai) => prop_assert!((&a * &ai).is_identity()),
            None => prop_assert!(a.det().is_zero()),
        }
    }

    #[test]
    fn matrix_text_round_trip(ctx in field(), r in 1usize..4, c in 1usize..4, raw in raws(9)) {
        let a = matrix(&ctx, r, c, &raw);
        prop_assert_eq!(MatrixFq::parse_text(&ctx, &a.to_text()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_elements_have_finite_order(g in small_group()) {
        for (i, x) in g.elements().iter().enumerate() {
            let order = g.element_order(i);
            prop_assert_eq!(g.order() as u64 % order, 0);
            prop_assert!(x.pow(order).is_identity());
        }
        for e in 0..g.order() {
            for s in 0..g.num_generators() {
                let prod = g.element(e) * &g.generators()[s];
                prop_assert_eq!(g.element(g.cayley(e, s)), &prod);
            }
        }
    }

    #[test]
    fn fingerprint_ignores_generating_set(g in small_group()) {
        let mut gens: Vec<MatrixFq> = g.generators().iter().rev().cloned().collect();
        gens.push(g.elements()[g.order() - 1].clone());
        let h = MatrixGroup::generate(g.ctx(), 2, gens, DEFAULT_CAP).unwrap();
        prop_assert_eq!(h.order(), g.order());
        prop_assert_eq!(h.fingerprint(), g.fingerprint());
    }

    #[test]
    fn sylow_subgroups_have_the_right_order(g in small_group(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let s = g.sylow_p(p).unwrap();
        prop_assert_eq!(s.order() as u64, g.order_p_part(p));
        for i in 0..s.order() {
            let mut o = s.element_order(i);
            while o % p == 0 {
                o /= p;
            }
            prop_assert_eq!(o, 1);
        }
    }

    #[test]
    fn solvers_agree(g in small_group()) {
        let m = GModule::natural(g);
        let a = h1_presentation(&m);
        let b = h1_full_table(&m).unwrap();
        prop_assert_eq!(a.dims, b.dims);
        prop_assert_eq!(a.dims.b1, coboundary_dim(&m));
        prop_assert_eq!(m.invariants().dim() + a.dims.b1, m.dim());
    }

    #[test]
    fn coboundaries_split(g in small_group(), raw in raws(2)) {
        let m = GModule::natural(g);
        let v: Vec<Felt> = raw.iter().map(|&r| felt(m.ctx(), r)).collect();
        let z = coboundary(&m, &v);
        let y = split_cocycle(&m, &z).expect("a coboundary splits");
        prop_assert_eq!(coboundary(&m, &y), z);
    }

    #[test]
    fn restriction_to_sylow_is_injective(g in small_group()) {
        let p = g.ctx().p() as u64;
        let m = GModule::natural(g.clone());
        let s = Arc::new(g.sylow_p(p).unwrap());
        let full = h1_presentation(&m).h1();
        let local = h1_presentation(&m.restrict(&s).unwrap()).h1();
        prop_assert!(full <= local);
        if g.order_p_part(p) == 1 {
            prop_assert_eq!(full, 0);
        }
    }

    #[test]
    fn direct_sums_add(g in small_group()) {
        let m = GModule::natural(g.clone());
        let t = GModule::trivial(g, 1);
        let sum = m.direct_sum(&t).unwrap();
        let dual = m.dual();
        prop_assert_eq!(h1_presentation(&sum).h1(), h1_presentation(&m).h1() + h1_presentation(&t).h1());
        prop_assert_eq!(h1_presentation(&dual).dims.b1, h1_presentation(&m).dims.b1);
    }

    #[test]
    fn coprime_modules_are_semisimple(g in small_group()) {
        let p = g.ctx().p() as u64;
        prop_assume!(g.order_p_part(p) == 1);
        let m = GModule::natural(g);
        prop_assert!(m.is_semisimple().unwrap());
    }
}

proptest! {
    #[test]
    fn catalog_formulas_are_integral(e in 1u32..4, t in 2u32..6, pi in 0usize..4) {
        let pp = [5u64, 7, 11, 13][pi];
        for family in [Family::Psl, Family::Psp, Family::Psu, Family::POmegaPlus, Family::POmegaMinus, Family::Omega] {
            let s = LieFamily::new(family, pp, e, t).unwrap();
            let product = order_divisor_product(&s).unwrap();
            prop_assert!(product > 0.into());
            if let Ok(d) = min_degree(&s) {
                prop_assert!(d > 0.into());
            }
        }
    }

    #[test]
    fn bound_is_monotone(n in 1u64..1000) {
        prop_assert!(bound(n).c < bound(n + 1).c);
        prop_assert_eq!(bound(n).c, (2 * n + 1) * (2 * n + 1));
    }
}
