use mba_core::egraph::EGraph;
use mba_core::expr::{ast_size, parse, preprocess, render, BinOp, Expr, UnOp, Width};
use mba_core::extract::{extract_best, CostModel};
use mba_core::rewrite::{default_ruleset, saturate, SaturationLimits};
use mba_core::semantics::{equiv_exhaustive, eval, Env};
use proptest::prelude::*;

fn w4() -> Width {
    Width::new(4).unwrap()
}

fn expr(max_const: u64) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0..max_const).prop_map(Expr::Const),
        prop::sample::select(vec!["a", "b", "c"]).prop_map(Expr::var),
    ];
    leaf.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            (prop::sample::select(vec![UnOp::Neg, UnOp::Not]), inner.clone()).prop_map(|(op, e)| Expr::unary(op, e)),
            (
                prop::sample::select(BinOp::ALL[..6].to_vec()),
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, l, r)| Expr::binary(op, l, r)),
            (inner, 0..4u64).prop_map(|(l, k)| Expr::binary(BinOp::Shl, l, Expr::Const(k))),
        ]
    })
}

proptest! {
    #[test]
    fn render_parse_round_trip(e in expr(16)) {
        prop_assert_eq!(parse(&render(&e), w4()).unwrap(), e);
    }

    #[test]
    fn render_parse_round_trip_wide(e in expr(u64::MAX)) {
        prop_assert_eq!(parse(&render(&e), Width::new(64).unwrap()).unwrap(), e);
    }

    #[test]
    fn preprocess_is_idempotent_and_sound(e in expr(16)) {
        let once = preprocess(&e, w4());
        prop_assert_eq!(preprocess(&once, w4()), once.clone());
        let v = equiv_exhaustive(&e, &once, w4()).unwrap();
        prop_assert!(v.holds(), "{} vs {}: {:?}", render(&e), render(&once), v.counterexample);
    }

    #[test]
    fn egraph_without_rewrites_round_trips(e in expr(16)) {
        let e = preprocess(&e, w4());
        let mut g = EGraph::new(w4());
        let root = g.add_expr(&e);
        prop_assert_eq!(g.add_expr(&e), root);
        g.rebuild();
        prop_assert!(g.check_invariants().is_ok());
        if let Some(c) = g.constant(root) {
            prop_assert!(e.is_ground());
            prop_assert_eq!(eval(&e, &Env::new(), w4()).unwrap(), c);
        }
        let best = extract_best(&g, root, &CostModel::ast_size()).unwrap();
        prop_assert!(best.cost as usize <= ast_size(&e));
        prop_assert!(equiv_exhaustive(&e, &best.expr, w4()).unwrap().holds());
    }

    #[test]
    fn short_saturation_preserves_meaning(e in expr(16)) {
        let e = preprocess(&e, w4());
        let mut g = EGraph::new(w4());
        let root = g.add_expr(&e);
        let limits = SaturationLimits { max_iterations: 3, max_nodes: 2_000, max_millis: 2_000 };
        saturate(&mut g, &default_ruleset(w4()), &limits);
        prop_assert!(g.check_invariants().is_ok());
        let best = extract_best(&g, root, &CostModel::ast_size()).unwrap();
        prop_assert!(best.cost as usize <= ast_size(&e));
        let v = equiv_exhaustive(&e, &best.expr, w4()).unwrap();
        prop_assert!(v.holds(), "{} became {}", render(&e), render(&best.expr));
    }
}
