#![allow(dead_code)]

use pag::{Pair, PowerVector, SignedGraph, StrategyMatrix};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every pair independently friend, adversary or absent, with at most
/// `max_adversaries` adversary pairs.
pub fn random_graph<R: Rng>(
    rng: &mut R,
    n: usize,
    p_friend: f64,
    p_adv: f64,
    max_adversaries: usize,
) -> SignedGraph {
    let mut friends = Vec::new();
    let mut adversaries = Vec::new();
    let mut pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    pairs.shuffle(rng);
    for (i, j) in pairs {
        let x: f64 = rng.gen();
        if x < p_adv && adversaries.len() < max_adversaries {
            adversaries.push((i, j));
        } else if x < p_adv + p_friend {
            friends.push((i, j));
        }
    }
    SignedGraph::new(n, friends, adversaries).unwrap()
}

pub fn integer_powers<R: Rng>(rng: &mut R, n: usize, max: u32) -> PowerVector {
    PowerVector::new((0..n).map(|_| f64::from(rng.gen_range(0..=max))).collect()).unwrap()
}

pub fn real_powers<R: Rng>(rng: &mut R, n: usize) -> PowerVector {
    PowerVector::new((0..n).map(|_| rng.gen_range(0.1..5.0)).collect()).unwrap()
}

/// Row `i` splits `p_i` into `grid` equal quanta over `i`'s allowed columns.
pub fn on_grid_matrix<R: Rng>(
    rng: &mut R,
    g: &SignedGraph,
    p: &PowerVector,
    grid: u32,
) -> StrategyMatrix {
    let n = g.n();
    let rows = (1..=n)
        .map(|i| {
            let cols: Vec<usize> = (1..=n).filter(|&j| g.may_allocate(i, j)).collect();
            let q = p.get(i) / f64::from(grid);
            let mut row = vec![0.0; n];
            for _ in 0..grid {
                let j = *cols.choose(rng).unwrap();
                row[j - 1] += q;
            }
            row
        })
        .collect();
    StrategyMatrix::new(g.clone(), p.clone(), rows).unwrap()
}

/// Row `i` spreads `p_i` over its allowed columns with random real weights.
pub fn random_matrix<R: Rng>(rng: &mut R, g: &SignedGraph, p: &PowerVector) -> StrategyMatrix {
    let n = g.n();
    let rows = (1..=n)
        .map(|i| {
            let cols: Vec<usize> = (1..=n).filter(|&j| g.may_allocate(i, j)).collect();
            let w: Vec<f64> = cols
                .iter()
                .map(|_| rng.gen_range(0.0..1.0f64).powi(2))
                .collect();
            let total: f64 = w.iter().sum();
            let mut row = vec![0.0; n];
            for (&j, wj) in cols.iter().zip(&w) {
                row[j - 1] = if total > 0.0 {
                    p.get(i) * wj / total
                } else {
                    0.0
                };
            }
            if total == 0.0 {
                row[i - 1] = p.get(i);
            }
            row
        })
        .collect();
    StrategyMatrix::new(g.clone(), p.clone(), rows).unwrap()
}

pub fn shuffled_pairs<R: Rng>(rng: &mut R, g: &SignedGraph) -> Vec<Pair> {
    let mut order = pag::lexicographic_ordering(g);
    order.shuffle(rng);
    order
}
