use std::collections::HashSet;

use catalan_core::random::{uniform_below, SeededBitSource};
use catalan_core::walker::{rank, unrank};
use catalan_core::{catalan, BcTable, Natural, NodeState};

#[test]
fn exhaustive_for_small_roots() {
    let t = BcTable::build(16).unwrap();
    let limit = Natural::from(100_000u32);
    let mut roots = 0;
    for n in 0..=16 {
        for m in 0..=n {
            let root = NodeState::new(n, m).unwrap();
            let count = t.count(root).unwrap();
            if count > &limit || !root.is_live() {
                continue;
            }
            roots += 1;
            let total: u64 = count.try_into().unwrap();
            let mut seen = HashSet::with_capacity(total as usize);
            for c in 0..total {
                let code = Natural::from(c);
                let path = unrank(&t, root, &code).unwrap();
                assert_eq!(path.lefts(), n);
                assert_eq!(rank(&t, root, &path).unwrap().value, code);
                assert!(seen.insert(path), "duplicate path at {root} code {c}");
            }
        }
    }
    assert!(roots > 100);
}

#[test]
fn spot_checks_for_large_roots() {
    let t = BcTable::build(300).unwrap();
    let mut src = SeededBitSource::new(31337);
    for i in 0..10_000u64 {
        let n = 20 + (i % 281) as usize;
        let m = (i as usize * 7) % n;
        let root = NodeState::new(n, m).unwrap();
        let code = uniform_below(t.count(root).unwrap(), &mut src).unwrap();
        let path = unrank(&t, root, &code).unwrap();
        assert_eq!(rank(&t, root, &path).unwrap().value, code);
    }
}

#[test]
fn leaf_count_is_catalan() {
    let t = BcTable::build(300).unwrap();
    for n in 0..=300u64 {
        let root = NodeState::new(n as usize, 0).unwrap();
        assert_eq!(t.count(root).unwrap(), &catalan(n));
    }
}
