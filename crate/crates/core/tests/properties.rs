use g3m::config::PoolConfigDoc;
use g3m::{FKind, MeanSpec, Pool, Trade, Weights, DEFAULT_REL_TOL};
use proptest::prelude::*;

fn spec() -> impl Strategy<Value = MeanSpec> {
    prop_oneof![
        (0.05f64..=1.0).prop_map(MeanSpec::Power),
        Just(MeanSpec::Geometric),
        Just(MeanSpec::FMean(FKind::Log)),
        (0.05f64..=1.0).prop_map(|p| MeanSpec::FMean(FKind::Power(p))),
    ]
}

fn pool() -> impl Strategy<Value = Pool> {
    (2usize..=4)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(0.1f64..100.0, n),
                prop::collection::vec(0.05f64..1.0, n),
                spec(),
            )
        })
        .prop_map(|(r, w, spec)| {
            let sum: f64 = w.iter().sum();
            let w = Weights::new(w.iter().map(|v| v / sum).collect()).unwrap();
            Pool::new(r, w, spec).unwrap()
        })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #[test]
    fn bought_output_round_trips(pool in pool(), share in 1e-3f64..0.9, pick in 0usize..12) {
        let n = pool.len();
        let i = pick % n;
        let j = (i + 1 + pick / n % (n - 1)) % n;
        let mut output = vec![0.0; n];
        output[j] = pool.reserves()[j] * share;
        let quote = pool.solve_input(&output, i).unwrap();
        prop_assert!(quote.invariant_residual.abs() <= 1e-9 * pool.invariant());
        let back = pool.solve_output(&quote.trade.input, j).unwrap();
        prop_assert!(rel(back.trade.output[j], output[j]) <= 1e-9);
    }

    #[test]
    fn executed_trades_hold_the_level(pool in pool(), shares in prop::collection::vec(1e-3f64..0.5, 1..20)) {
        let n = pool.len();
        let c = pool.invariant();
        let mut current = pool;
        for (step, share) in shares.iter().enumerate() {
            let (i, j) = (step % n, (step + 1) % n);
            let mut output = vec![0.0; n];
            output[j] = current.reserves()[j] * share;
            let quote = current.solve_input(&output, i).unwrap();
            let trade = Trade::new(quote.trade.input, quote.trade.output).unwrap();
            current = current.execute_trade(&trade, DEFAULT_REL_TOL).unwrap();
        }
        prop_assert_eq!(current.invariant(), c);
        prop_assert!(rel(current.recomputed_invariant().unwrap(), c) <= 1e-9);
    }

    #[test]
    fn config_documents_round_trip(pool in pool()) {
        let doc = PoolConfigDoc::from_pool(&pool);
        let parsed = PoolConfigDoc::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(&parsed, &doc);
        let rebuilt = parsed.to_pool().unwrap();
        prop_assert_eq!(rebuilt.reserves(), pool.reserves());
        prop_assert_eq!(rebuilt.spec(), pool.spec());
    }
}
