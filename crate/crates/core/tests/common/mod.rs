//! Seeded generators for random models shared by the integration tests.
#![allow(dead_code)]

use dr_ktheory::linalg::IntMatrix;
use dr_ktheory::models::{FiniteMapModel, Rank2MatrixSystem, TwoGraphModel};
use rand::rngs::StdRng;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut StdRng, n: usize, lo: i64, hi: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(lo..=hi)).collect()).collect();
    IntMatrix::from_rows(&rows, n).unwrap()
}

/// `c₀ + c₁X + c₂X²`.
pub fn poly(x: &IntMatrix, c: [i64; 3]) -> IntMatrix {
    let n = x.rows();
    let scale = |m: &IntMatrix, k: i64| {
        let d = IntMatrix::diagonal(&vec![k.into(); n]);
        d.mul(m).unwrap()
    };
    let x2 = x.mul(x).unwrap();
    scale(&IntMatrix::identity(n), c[0])
        .add(&scale(x, c[1]))
        .unwrap()
        .add(&scale(&x2, c[2]))
        .unwrap()
}

/// Commuting pair: two polynomials of degree ≤ 1 in a common matrix with
/// entries in [−3, 3].
pub fn random_commuting_system(rng: &mut StdRng, max_n: usize) -> Rank2MatrixSystem {
    let n = rng.random_range(1..=max_n);
    let x = random_matrix(rng, n, -3, 3);
    let mut c = || [rng.random_range(-2..=2), rng.random_range(-1..=1), 0];
    let (c1, c2) = (c(), c());
    Rank2MatrixSystem::raw(poly(&x, c1), poly(&x, c2)).unwrap()
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&y| a[y]).collect()
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// T₁ uniform, T₂ uniform in the centraliser of T₁.
pub fn random_finite_map(rng: &mut StdRng, max_n: usize) -> FiniteMapModel {
    let n = rng.random_range(1..=max_n);
    let mut t1: Vec<usize> = (0..n).collect();
    t1.shuffle(rng);
    let commuting: Vec<Vec<usize>> = all_permutations(n)
        .into_iter()
        .filter(|p| compose(&t1, p) == compose(p, &t1))
        .collect();
    let t2 = commuting.choose(rng).unwrap().clone();
    FiniteMapModel::unlabelled(t1, t2).unwrap()
}

/// Vertex matrices that are nonnegative polynomials (constant term ≥ 1) in a
/// block upper-triangular nonnegative matrix, so hereditary blocks exist.
pub fn random_block_two_graph(rng: &mut StdRng) -> TwoGraphModel {
    let blocks: Vec<usize> = (0..rng.random_range(2..=3)).map(|_| rng.random_range(1..=2)).collect();
    let n: usize = blocks.iter().sum();
    let mut block_of = Vec::new();
    for (b, &size) in blocks.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(b, size));
    }
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if block_of[i] <= block_of[j] { rng.random_range(0..=2) } else { 0 })
                .collect()
        })
        .collect();
    let x = IntMatrix::from_rows(&rows, n).unwrap();
    let c1 = [rng.random_range(1..=2), rng.random_range(0..=1), rng.random_range(0..=1)];
    let c2 = [rng.random_range(1..=2), rng.random_range(0..=1), 0];
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    TwoGraphModel::new(labels, poly(&x, c1), poly(&x, c2)).unwrap()
}

/// TOML text for a raw-matrix model, for CLI-level tests.
pub fn raw_document(s: &Rank2MatrixSystem) -> String {
    let fmt = |m: &IntMatrix| {
        let rows: Vec<String> = m.to_strings().iter().map(|r| format!("[{}]", r.join(", "))).collect();
        format!("[{}]", rows.join(", "))
    };
    format!("model_type = \"raw_matrices\"\nm1 = {}\nm2 = {}\n", fmt(s.m1()), fmt(s.m2()))
}

pub fn finite_map_document(m: &FiniteMapModel) -> String {
    let list = |t: &[usize]| t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    format!(
        "model_type = \"finite_map\"\nt1 = [{}]\nt2 = [{}]\n",
        list(m.map(dr_ktheory::models::Which::First)),
        list(m.map(dr_ktheory::models::Which::Second))
    )
}
