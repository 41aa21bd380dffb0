use num_integer::Integer;
use seshadri_core::gorenstein::{
    gorenstein_check, gorenstein_fano_wps, iota_embedding, wps_singular_locus, LinearBondData,
    WpsWeights,
};
use seshadri_core::{q, qr};

const WPS: [[u64; 4]; 14] = [
    [1, 1, 1, 1],
    [1, 1, 1, 3],
    [1, 1, 2, 2],
    [1, 1, 2, 4],
    [1, 1, 4, 6],
    [1, 2, 2, 5],
    [1, 2, 3, 6],
    [1, 2, 6, 9],
    [1, 3, 4, 4],
    [1, 3, 8, 12],
    [1, 4, 5, 10],
    [1, 6, 14, 21],
    [2, 3, 3, 4],
    [2, 3, 10, 15],
];

/// Direct search over weights up to `max`.
fn wps_brute_force(max: u64) -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    for a in 1..=max {
        for b in a..=max {
            for c in b..=max {
                for d in c..=max {
                    let w = [a, b, c, d];
                    let s = a + b + c + d;
                    let normalized = (0..4).all(|skip| {
                        (0..4).filter(|&i| i != skip).fold(0, |g, i| w[i].gcd(&g)) == 1
                    });
                    if normalized && w.iter().all(|x| s % x == 0) {
                        out.push(w);
                    }
                }
            }
        }
    }
    out
}

/// The criterion evaluated from scratch with integer arithmetic:
/// `b_k * sum_{j >= k} L / M_j` divisible by `L`.
fn direct(bonds: &[u64]) -> bool {
    let r = bonds.len();
    let b = |k: usize| if k == 0 || k > r { 1 } else { bonds[k - 1] };
    let m: Vec<u64> = (0..=r).map(|k| b(k).lcm(&b(k + 1))).collect();
    let l = m.iter().fold(1u64, |acc, x| acc.lcm(x));
    (0..=r).all(|k| {
        let s: u64 = (k..=r).map(|j| l / m[j]).sum();
        (b(k) * s).is_multiple_of(l)
    })
}

#[test]
fn criterion_examples() {
    assert!(gorenstein_check(
        &LinearBondData::new(vec![2, 1, 2]).unwrap()
    ));
    assert!(!gorenstein_check(&LinearBondData::new(vec![3, 1]).unwrap()));
    for r in 0..8 {
        assert!(gorenstein_check(&LinearBondData::new(vec![1; r]).unwrap()));
    }
    assert!(LinearBondData::new(vec![1, 0]).is_err());
    let d = LinearBondData::new(vec![3, 1]).unwrap();
    assert_eq!(d.criterion_sums(), vec![qr(5, 3), q(4), q(1)]);
}

#[test]
fn criterion_matches_direct_evaluation() {
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                let bonds = vec![a, b, c];
                let data = LinearBondData::new(bonds.iter().map(|&x| x as u32).collect()).unwrap();
                assert_eq!(gorenstein_check(&data), direct(&bonds), "{bonds:?}");
            }
        }
    }
}

#[test]
fn wps_list() {
    let ours: Vec<[u64; 4]> = gorenstein_fano_wps().iter().map(|w| w.0).collect();
    assert_eq!(ours, WPS);
    assert_eq!(ours, wps_brute_force(42));
}

#[test]
fn only_one_with_two_lines() {
    let hits: Vec<WpsWeights> = gorenstein_fano_wps()
        .into_iter()
        .filter(|w| wps_singular_locus(w).is_two_disjoint_lines())
        .collect();
    assert_eq!(hits, vec![WpsWeights([2, 3, 3, 4])]);
    assert_eq!(hits[0].to_string(), "(2,3,3,4)");
}

#[test]
fn iota_examples() {
    let d = LinearBondData::new(vec![2, 1, 2]).unwrap();
    // M = (2, 2, 2, 2)
    assert_eq!(
        iota_embedding(&[q(1), q(0), q(0), q(0)], &d).unwrap(),
        vec![0, 0, 0, 2]
    );
    assert_eq!(
        iota_embedding(&[q(0), q(0), qr(1, 2), qr(1, 2)], &d).unwrap(),
        vec![1, 1, 0, 0]
    );
    assert!(iota_embedding(&[q(1), q(0)], &d).is_err());
}
