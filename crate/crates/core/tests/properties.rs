use catalan_core::mountain::{decode_dyck, encode_dyck, rank_dyck, unrank_dyck};
use catalan_core::random::draw_width;
use catalan_core::triangulation::{
    decode_traced, encode, rank_triangulation, unrank_triangulation, validate, PolygonContext,
};
use catalan_core::walker::{rank, unrank, Code};
use catalan_core::{
    ballot, catalan, uniform_below, BcTable, Natural, NodeState, ReplayBitSource, Step,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use std::sync::OnceLock;

fn table() -> &'static BcTable {
    static TABLE: OnceLock<BcTable> = OnceLock::new();
    TABLE.get_or_init(|| BcTable::build(120).unwrap())
}

/// Maps arbitrary bytes onto `[0, count)`.
fn code_below(bytes: &[u8], count: &Natural) -> Natural {
    BigUint::from_bytes_be(bytes) % count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn walker_round_trip(n in 0usize..=120, m_frac in 0.0f64..1.0, bytes in proptest::collection::vec(any::<u8>(), 40)) {
        let m = if n == 0 { 0 } else { ((n as f64) * m_frac) as usize % n };
        let root = NodeState::new(n, m).unwrap();
        let count = table().count(root).unwrap();
        let code = code_below(&bytes, count);
        let path = unrank(table(), root, &code).unwrap();
        prop_assert_eq!(path.lefts(), n);
        prop_assert!(path.len() >= n && path.len() <= 2 * n);
        prop_assert_eq!(rank(table(), root, &path).unwrap().value, code);
    }

    #[test]
    fn codeword_round_trip(n in 0usize..=120, bytes in proptest::collection::vec(any::<u8>(), 40)) {
        let root = NodeState::new(n, 0).unwrap();
        let code = Code::new(table(), root, code_below(&bytes, table().count(root).unwrap())).unwrap();
        let packed = code.to_bytes(table()).unwrap();
        prop_assert_eq!(Code::from_bytes(table(), root, &packed).unwrap(), code.clone());
        let bits = code.to_bits(table()).unwrap();
        prop_assert_eq!(bits.len() as u64, draw_width(&catalan(n as u64)));
    }

    #[test]
    fn triangulation_round_trip(vertices in 3usize..=60, m in 0usize..=58, bytes in proptest::collection::vec(any::<u8>(), 24)) {
        let m = m % (vertices - 2).max(1);
        let ctx = PolygonContext::new(vertices, m).unwrap();
        let root = ctx.root().unwrap();
        let count = table().count(root).unwrap();
        prop_assume!(count > &Natural::from(0u32));
        let code = code_below(&bytes, count);
        let t = unrank_triangulation(table(), &ctx, &code).unwrap();
        prop_assert_eq!(validate(&ctx, &t), Ok(()));
        prop_assert_eq!(rank_triangulation(table(), &ctx, &t).unwrap().value, code.clone());
        let path = unrank(table(), root, &code).unwrap();
        prop_assert_eq!(&encode(&ctx, &t).unwrap(), &path);
        let (_, stats) = decode_traced(&ctx, &path).unwrap();
        prop_assert!(stats.transitions <= 2 * (vertices - 2));
    }

    #[test]
    fn dyck_round_trip(n in 0usize..=120, bytes in proptest::collection::vec(any::<u8>(), 24)) {
        let count = table().lookup(n, 0).unwrap();
        let code = code_below(&bytes, count);
        let w = unrank_dyck(table(), n, &code).unwrap();
        prop_assert_eq!(w.semilength(), n);
        prop_assert!(w.max_height() <= n);
        let path = encode_dyck(&w);
        prop_assert_eq!(&decode_dyck(n, &path).unwrap(), &w);
        prop_assert_eq!(rank_dyck(table(), &w).unwrap().value, code);
    }

    #[test]
    fn dyck_order_is_lexicographic(n in 1usize..=60, bytes in proptest::collection::vec(any::<u8>(), 16)) {
        let count = table().lookup(n, 0).unwrap();
        let a = code_below(&bytes, count);
        let b = &a + 1u32;
        prop_assume!(&b < count);
        let wa = unrank_dyck(table(), n, &a).unwrap();
        let wb = unrank_dyck(table(), n, &b).unwrap();
        prop_assert!(wa < wb);
    }

    #[test]
    fn uniform_below_in_range(k in 1u64..10_000, bits in proptest::collection::vec(any::<bool>(), 200)) {
        let mut src = ReplayBitSource::new(bits);
        if let Ok(v) = uniform_below(&Natural::from(k), &mut src) {
            prop_assert!(v < Natural::from(k));
            prop_assert_eq!(catalan_core::BitSource::bits_consumed(&src) % draw_width(&Natural::from(k)).max(1), 0);
        }
    }
}

#[test]
fn table_matches_ballot_and_catalan_to_120() {
    let t = table();
    for n in 1..=120usize {
        assert_eq!(t.lookup(n, 0).unwrap(), &catalan(n as u64));
        for m in 0..=n {
            assert_eq!(
                t.lookup(n, m).unwrap(),
                &ballot(n as u64, n as i64 - 1 - m as i64).unwrap()
            );
        }
    }
}

#[test]
fn first_and_last_codes() {
    let t = table();
    let root = NodeState::new(50, 0).unwrap();
    let last = t.count(root).unwrap() - 1u32;
    let lo = unrank(t, root, &Natural::from(0u32)).unwrap();
    let hi = unrank(t, root, &last).unwrap();
    assert!(lo.steps().iter().all(|&s| s == Step::L));
    // m climbs to n-1 at most, so the longest path has 2n-1 steps.
    assert_eq!(hi.len(), 99);
    assert_eq!(unrank_dyck(t, 50, &last).unwrap().max_height(), 50);
}
