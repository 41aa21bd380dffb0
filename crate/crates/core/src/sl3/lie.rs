//! Root data of type A2, the Weyl group as permutations and the adjoint
//! representation of `sl_3` with exact matrices.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::linalg::{mat_mul, mat_sub, mat_vec, Matrix};
use crate::Q;

/// Permutation of `{0, 1, 2}`; `s_i` swaps `i - 1` and `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub [u8; 3]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2]);

    pub fn simple(i: u8) -> Perm {
        match i {
            1 => Perm([1, 0, 2]),
            2 => Perm([0, 2, 1]),
            _ => panic!("simple reflections are s1 and s2"),
        }
    }

    /// `self ∘ other`.
    pub fn compose(self, other: Perm) -> Perm {
        Perm(other.0.map(|x| self.0[x as usize]))
    }

    pub fn from_word(word: &[u8]) -> Perm {
        word.iter()
            .fold(Perm::IDENTITY, |acc, &i| acc.compose(Perm::simple(i)))
    }

    /// Number of inversions.
    pub fn length(self) -> usize {
        let p = self.0;
        (0..3)
            .flat_map(|i| ((i + 1)..3).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count()
    }
}

/// Labels of the Weyl group elements and a reduced word for each.
pub const WEYL_GROUP: [(&str, &[u8]); 6] = [
    ("id", &[]),
    ("s1", &[1]),
    ("s2", &[2]),
    ("s1s2", &[1, 2]),
    ("s2s1", &[2, 1]),
    ("w0", &[1, 2, 1]),
];

/// The two reduced words of the longest element.
pub const LONGEST_WORDS: [&[u8]; 2] = [&[1, 2, 1], &[2, 1, 2]];

pub fn reduced_word(label: &str) -> Option<&'static [u8]> {
    WEYL_GROUP
        .iter()
        .find(|(l, _)| *l == label)
        .map(|(_, w)| *w)
}

pub fn weyl_element(label: &str) -> Option<Perm> {
    reduced_word(label).map(Perm::from_word)
}

pub fn weyl_label(p: Perm) -> &'static str {
    WEYL_GROUP
        .iter()
        .find(|(_, w)| Perm::from_word(w) == p)
        .map(|(l, _)| *l)
        .expect("six elements")
}

/// Roots in the coordinates `e_1, e_2, e_3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A2RootData {
    pub simple: [[i64; 3]; 2],
    pub positive: [[i64; 3]; 3],
    pub rho: [i64; 3],
}

impl Default for A2RootData {
    fn default() -> Self {
        A2RootData {
            simple: [[1, -1, 0], [0, 1, -1]],
            positive: [[1, -1, 0], [0, 1, -1], [1, 0, -1]],
            rho: [1, 0, -1],
        }
    }
}

impl A2RootData {
    /// `<lambda, alpha^vee>`; roots have squared length 2.
    pub fn pairing(lambda: [i64; 3], alpha: [i64; 3]) -> i64 {
        lambda.iter().zip(alpha).map(|(a, b)| a * b).sum()
    }

    pub fn weyl_group_order(&self) -> usize {
        WEYL_GROUP.len()
    }
}

/// Basis order of the adjoint representation.
pub const BASIS_NAMES: [&str; 8] = ["E12", "E23", "E13", "E21", "E32", "E31", "H1", "H2"];
pub const H1_SLOT: usize = 6;
pub const H2_SLOT: usize = 7;

const ROOT_SLOTS: [(usize, usize); 6] = [(0, 1), (1, 2), (0, 2), (1, 0), (2, 1), (2, 0)];

fn unit3(i: usize, j: usize) -> Matrix {
    let mut m = vec![vec![Q::zero(); 3]; 3];
    m[i][j] = Q::one();
    m
}

fn basis_matrix(k: usize) -> Matrix {
    match k {
        0..=5 => {
            let (i, j) = ROOT_SLOTS[k];
            unit3(i, j)
        }
        6 => mat_sub(&unit3(0, 0), &unit3(1, 1)),
        7 => mat_sub(&unit3(1, 1), &unit3(2, 2)),
        _ => unreachable!(),
    }
}

/// Coordinates of a traceless 3x3 matrix in the adjoint basis.
fn coords(m: &Matrix) -> Vec<Q> {
    let mut v: Vec<Q> = ROOT_SLOTS.iter().map(|&(i, j)| m[i][j].clone()).collect();
    v.push(m[0][0].clone());
    v.push(-m[2][2].clone());
    v
}

fn ad(x: &Matrix) -> Matrix {
    let cols: Vec<Vec<Q>> = (0..8)
        .map(|k| {
            let b = basis_matrix(k);
            coords(&mat_sub(&mat_mul(x, &b), &mat_mul(&b, x)))
        })
        .collect();
    (0..8)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect()
}

/// The adjoint representation, whose highest weight is `rho`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointRep {
    x_pos: [Matrix; 2],
    x_neg: [Matrix; 2],
    x_beta: Matrix,
    x_neg_beta: Matrix,
    h: [Matrix; 2],
}

impl Default for AdjointRep {
    fn default() -> Self {
        Self::new()
    }
}

impl AdjointRep {
    pub fn new() -> Self {
        AdjointRep {
            x_pos: [ad(&unit3(0, 1)), ad(&unit3(1, 2))],
            x_neg: [ad(&unit3(1, 0)), ad(&unit3(2, 1))],
            x_beta: ad(&unit3(0, 2)),
            x_neg_beta: ad(&unit3(2, 0)),
            h: [ad(&basis_matrix(6)), ad(&basis_matrix(7))],
        }
    }

    pub fn dimension(&self) -> usize {
        8
    }

    pub fn x_pos(&self, i: u8) -> &Matrix {
        &self.x_pos[usize::from(i) - 1]
    }

    pub fn x_neg(&self, i: u8) -> &Matrix {
        &self.x_neg[usize::from(i) - 1]
    }

    pub fn x_beta(&self) -> &Matrix {
        &self.x_beta
    }

    pub fn x_neg_beta(&self) -> &Matrix {
        &self.x_neg_beta
    }

    pub fn h(&self, i: u8) -> &Matrix {
        &self.h[usize::from(i) - 1]
    }

    pub fn basis_vector(k: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); 8];
        v[k] = Q::one();
        v
    }

    /// `E13`, of weight `rho`.
    pub fn highest_weight_vector(&self) -> Vec<Q> {
        Self::basis_vector(2)
    }

    /// Eigenvalues under `H1, H2` if `v` is a weight vector.
    pub fn weight(&self, v: &[Q]) -> Option<[Q; 2]> {
        let k = v.iter().position(|x| !x.is_zero())?;
        let mut out = [Q::zero(), Q::zero()];
        for (i, h) in self.h.iter().enumerate() {
            let hv = mat_vec(h, v);
            let c = &hv[k] / &v[k];
            if hv.iter().zip(v).any(|(a, b)| *a != &c * b) {
                return None;
            }
            out[i] = c;
        }
        Some(out)
    }

    /// `X_{-i_1}^{(m_1)} ... X_{-i_l}^{(m_l)} v_rho` with each `m` maximal.
    pub fn extremal_vector(&self, word: &[u8]) -> Vec<Q> {
        let mut v = self.highest_weight_vector();
        for &i in word.iter().rev() {
            let x = self.x_neg(i);
            let mut cur = v.clone();
            let mut m = 0i64;
            let mut last = v.clone();
            loop {
                let next = mat_vec(x, &cur);
                if next.iter().all(Zero::is_zero) {
                    break;
                }
                m += 1;
                last = next.iter().map(|c| c / Q::from_integer(m.into())).collect();
                cur = last.clone();
            }
            v = last;
        }
        v
    }

    /// The extremal functional `p_tau`: dual to the slot of `v_tau`,
    /// normalized to take the value one on it.
    pub fn extremal_functional(&self, word: &[u8]) -> Vec<Q> {
        let v = self.extremal_vector(word);
        let k = v
            .iter()
            .position(|x| !x.is_zero())
            .expect("extremal vectors are nonzero");
        let mut p = vec![Q::zero(); 8];
        p[k] = v[k].recip();
        p
    }
}
