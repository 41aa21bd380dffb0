use std::collections::BTreeSet;

use seshadri_core::poset::{PosetBuilder, StratPoset, Violation};
use seshadri_core::sl3::sl3_poset;

fn boolean2() -> StratPoset {
    PosetBuilder::new()
        .element("t", 1)
        .element("a", 1)
        .element("b", 1)
        .element("z", 1)
        .cover("t", "a", 1)
        .cover("t", "b", 1)
        .cover("a", "z", 1)
        .cover("b", "z", 1)
        .build()
        .unwrap()
}

fn linear() -> StratPoset {
    PosetBuilder::new()
        .element("p3", 1)
        .element("p2", 1)
        .element("p1", 1)
        .element("p0", 1)
        .cover("p3", "p2", 2)
        .cover("p2", "p1", 1)
        .cover("p1", "p0", 2)
        .build()
        .unwrap()
}

/// Maximal chains by walking the cover graph from scratch.
fn dfs_chains(p: &StratPoset) -> BTreeSet<Vec<String>> {
    fn go(p: &StratPoset, cur: &mut Vec<String>, out: &mut BTreeSet<Vec<String>>) {
        let last = p.find(cur.last().unwrap()).unwrap();
        let below: Vec<_> = p
            .covers()
            .iter()
            .filter(|(u, _)| *u == last)
            .map(|(_, l)| *l)
            .collect();
        if below.is_empty() {
            out.insert(cur.clone());
        }
        for l in below {
            cur.push(p.label(l).to_string());
            go(p, cur, out);
            cur.pop();
        }
    }
    let mut out = BTreeSet::new();
    for m in p.maximal_elements() {
        go(p, &mut vec![p.label(m).to_string()], &mut out);
    }
    out
}

fn labels(p: &StratPoset, c: &seshadri_core::poset::Chain) -> Vec<String> {
    c.elements_top_down()
        .iter()
        .map(|&e| p.label(e).to_string())
        .collect()
}

#[test]
fn sl3_poset_is_valid() {
    let p = sl3_poset().unwrap();
    assert!(p.validate().is_valid());
    assert_eq!(
        p.bond(p.find("w0").unwrap(), p.find("s2s1").unwrap()),
        Some(1)
    );
    assert_eq!(
        p.bond(p.find("s2s1").unwrap(), p.find("s1").unwrap()),
        Some(2)
    );
}

#[test]
fn single_point_is_valid() {
    let p = PosetBuilder::new().element("p", 1).build().unwrap();
    assert!(p.validate().is_valid());
    assert_eq!(p.maximal_chains().len(), 1);
}

#[test]
fn uneven_diamond_is_reported() {
    let p = PosetBuilder::new()
        .element("t", 1)
        .element("a", 1)
        .element("b", 1)
        .element("c", 1)
        .element("z", 1)
        .cover("t", "a", 1)
        .cover("a", "z", 1)
        .cover("t", "b", 1)
        .cover("b", "c", 1)
        .cover("c", "z", 1)
        .build()
        .unwrap();
    let report = p.validate();
    assert!(report
        .failures
        .iter()
        .any(|v| matches!(v, Violation::UnequalChainLengths(_))));
    assert!(report
        .failures
        .iter()
        .any(|v| v.to_string().contains("unequal maximal chain lengths")));
}

#[test]
fn sl3_chains() {
    let p = sl3_poset().unwrap();
    let chains: Vec<Vec<String>> = p.maximal_chains().iter().map(|c| labels(&p, c)).collect();
    let expected: BTreeSet<Vec<String>> = [
        ["w0", "s2s1", "s1", "id"],
        ["w0", "s1s2", "s2", "id"],
        ["w0", "s1s2", "s1", "id"],
        ["w0", "s2s1", "s2", "id"],
    ]
    .iter()
    .map(|c| c.iter().map(|s| s.to_string()).collect())
    .collect();
    assert_eq!(chains.iter().cloned().collect::<BTreeSet<_>>(), expected);
    let mut sorted = chains.clone();
    sorted.sort();
    assert_eq!(chains, sorted);
    assert_eq!(p.maximal_chains(), p.maximal_chains());
}

#[test]
fn chains_agree_with_dfs() {
    for p in [boolean2(), linear(), sl3_poset().unwrap()] {
        let ours: BTreeSet<Vec<String>> =
            p.maximal_chains().iter().map(|c| labels(&p, c)).collect();
        assert_eq!(ours, dfs_chains(&p));
    }
    assert_eq!(linear().maximal_chains().len(), 1);
    assert_eq!(boolean2().maximal_chains().len(), 2);
}

#[test]
fn canonical_linearization_of_sl3() {
    let p = sl3_poset().unwrap();
    let lin = p.canonical_linearization(&["s1s2", "s2s1", "s1", "s2"]);
    let order: Vec<&str> = lin.order().iter().map(|&e| p.label(e)).collect();
    assert_eq!(order, ["w0", "s1s2", "s2s1", "s1", "s2", "id"]);
    // lexicographic tie-break gives the same order
    assert_eq!(p.canonical_linearization(&[]), lin);
}

#[test]
fn linearization_counts() {
    let lins: Vec<_> = linear().length_preserving_linearizations().collect();
    assert_eq!(lins.len(), 1);
    let antichain = PosetBuilder::new()
        .element("t", 1)
        .element("a", 1)
        .element("b", 1)
        .element("c", 1)
        .cover("t", "a", 1)
        .cover("t", "b", 1)
        .cover("t", "c", 1)
        .build()
        .unwrap();
    let lins: Vec<_> = antichain.length_preserving_linearizations().collect();
    // 3! orders of the atoms
    assert_eq!(lins.len(), (1..=3).product::<usize>());
    let distinct: BTreeSet<Vec<usize>> = lins
        .iter()
        .map(|l| l.order().iter().map(|e| e.0).collect())
        .collect();
    assert_eq!(distinct.len(), 6);
    let sl3 = sl3_poset().unwrap();
    for l in sl3.length_preserving_linearizations() {
        assert!(l.is_length_preserving(&sl3));
    }
    assert_eq!(sl3.length_preserving_linearizations().count(), 4);
}

#[test]
fn bond_lcm() {
    assert_eq!(sl3_poset().unwrap().extended().bond_lcm(), 2);
    assert_eq!(boolean2().extended().bond_lcm(), 1);
    assert_eq!(linear().extended().bond_lcm(), 2);
}

#[test]
fn chain_lengths_equal_rank() {
    for p in [boolean2(), linear(), sl3_poset().unwrap()] {
        let top = p.top().unwrap();
        for c in p.maximal_chains() {
            assert_eq!(c.rank(), p.length(top));
        }
    }
}
