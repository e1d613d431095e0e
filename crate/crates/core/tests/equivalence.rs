mod common;

use pma_core::equivalence::{
    block_transpose, canonical_form, compare_classes, d_similarity, rho, same_equivalence_class, SignDiagonal,
};
use pma_core::graph::blocks;
use pma_core::minors::{random_instance, GeneratorConfig};
use pma_core::recovery::flip_construction;
use pma_core::{ChargedGraph, Matrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

const MINOR_RTOL: f64 = 1e-10;

fn instance(n: usize, d: f64, seed: u64) -> Matrix {
    let mut s = seed;
    loop {
        if let Ok(i) = random_instance(&GeneratorConfig::with_density(n, d, 0.3, 1e-5, 1e-6, s)) {
            return i.matrix;
        }
        s += 10_000;
    }
}

fn on_graph(g: &ChargedGraph, seed: u64) -> Matrix {
    random_instance(&GeneratorConfig::with_graph(g.clone(), 0.3, 1e-5, 1e-6, seed)).unwrap().matrix
}

fn bowtie() -> ChargedGraph {
    ChargedGraph::uncharged(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
}

fn random_diagonal(rng: &mut ChaCha8Rng, n: usize) -> SignDiagonal {
    SignDiagonal::from_mask(n, rng.gen_range(0..1u64 << n))
}

/// A random class member: a sign similarity and a random subset of block
/// transposes.
fn random_member(rng: &mut ChaCha8Rng, k: &Matrix) -> Matrix {
    let mut out = d_similarity(k, &random_diagonal(rng, k.n())).unwrap();
    for vs in cyclic_block_vertices(&graph_of(k)) {
        if rng.gen_bool(0.5) {
            out = block_transpose(&out, &vs).unwrap();
        }
    }
    out
}

#[test]
fn d_similarity_examples() {
    let k = instance(6, 0.5, 1);
    assert_eq!(d_similarity(&k, &SignDiagonal::identity(6)).unwrap(), k);
    assert_eq!(d_similarity(&k, &SignDiagonal::from_i64(&[-1; 6]).unwrap()).unwrap(), k);
    let d = SignDiagonal::from_i64(&[1, -1, 1, 1, -1, -1]).unwrap();
    let dk = d_similarity(&k, &d).unwrap();
    assert_eq!(dk[(0, 1)], -k[(0, 1)]);
    assert_eq!(dk[(1, 4)], k[(1, 4)]);
    assert_eq!(dk[(2, 2)], k[(2, 2)]);
    assert!(first_minor_mismatch(&k, &dk, 6, MINOR_RTOL, 0.0).is_none());
    assert!(d_similarity(&k, &SignDiagonal::identity(5)).is_err());
    assert!(SignDiagonal::from_i64(&[1, 0]).is_err());
}

#[test]
fn d_similarity_random_minors() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for seed in 0..10 {
        let k = instance(6, 0.6, 20 + seed);
        let dk = d_similarity(&k, &random_diagonal(&mut rng, 6)).unwrap();
        assert!(first_minor_mismatch(&k, &dk, 6, MINOR_RTOL, 0.0).is_none());
    }
}

#[test]
fn block_transpose_examples() {
    let mut k = Matrix::zeros(4);
    for (i, j, v) in [(0, 1, 0.5), (1, 2, -0.7), (0, 2, 0.9), (2, 3, 0.4)] {
        k[(i, j)] = v;
        k[(j, i)] = v;
    }
    assert_eq!(block_transpose(&k, &[0, 1, 2]).unwrap(), k);

    let g = ChargedGraph::uncharged(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
    let k = on_graph(&g, 3);
    assert_eq!(block_transpose(&k, &[0, 1, 2, 3]).unwrap(), k.transpose());

    let k = on_graph(&bowtie(), 4);
    let t = block_transpose(&k, &[0, 1, 2]).unwrap();
    assert_eq!(t[(0, 1)], k[(1, 0)]);
    assert_eq!(t[(2, 3)], k[(2, 3)]);
    assert_eq!(t[(3, 2)], k[(3, 2)]);
    assert_eq!(all_subsets(5).len(), 32);
    assert!(first_minor_mismatch(&k, &t, 5, MINOR_RTOL, 0.0).is_none());
    assert!(block_transpose(&k, &[0, 1, 3]).is_err());
    assert!(block_transpose(&k, &[0, 1, 2, 3, 4]).is_err());
}

#[test]
fn class_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..10 {
        let k = instance(6, 0.6, 50 + seed);
        let dk = d_similarity(&k, &random_diagonal(&mut rng, 6)).unwrap();
        assert!(same_equivalence_class(&k, &dk).unwrap());
        assert!(same_equivalence_class(&k, &k.transpose()).unwrap());
        if let Ok(f) = flip_construction(&k) {
            let c = compare_classes(&k, &f).unwrap();
            assert!(!c.same);
            assert!(c.reason.is_some());
        }
    }
    let k = instance(5, 0.7, 9);
    let mut other = k.clone();
    other[(0, 0)] += 0.5;
    assert!(!same_equivalence_class(&k, &other).unwrap());
    let mut bare = k.clone();
    let (i, j) = graph_of(&k).edge(0);
    bare[(i, j)] = 0.0;
    bare[(j, i)] = 0.0;
    let c = compare_classes(&k, &bare).unwrap();
    assert!(!c.same && c.max_diff.is_none());
    assert!(compare_classes(&k, &Matrix::zeros(4)).is_err());
}

#[test]
fn canonical_form_is_a_class_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for seed in 0..10 {
        let k = instance(7, 0.5, 60 + seed);
        let c = canonical_form(&k);
        assert!(same_equivalence_class(&k, &c).unwrap());
        let m = random_member(&mut rng, &k);
        let cm = canonical_form(&m);
        for i in 0..7 {
            for j in 0..7 {
                assert!((c[(i, j)] - cm[(i, j)]).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn relation_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for seed in 0..6 {
        let k = instance(6, 0.7, 70 + seed);
        let Ok(f) = flip_construction(&k) else { continue };
        // two classes, three members each
        let mut pool = Vec::new();
        for base in [&k, &f] {
            for _ in 0..3 {
                pool.push(random_member(&mut rng, base));
            }
        }
        let rel: Vec<Vec<bool>> =
            pool.iter().map(|a| pool.iter().map(|b| same_equivalence_class(a, b).unwrap()).collect()).collect();
        for a in 0..pool.len() {
            assert!(rel[a][a]);
            for b in 0..pool.len() {
                assert_eq!(rel[a][b], rel[b][a]);
                assert_eq!(rel[a][b], (a < 3) == (b < 3));
                for c in 0..pool.len() {
                    if rel[a][b] && rel[b][c] {
                        assert!(rel[a][c]);
                    }
                }
            }
        }
        checked += 1;
    }
    assert!(checked >= 3);
}

#[test]
fn class_generators_preserve_minors() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for seed in 0..12 {
        let n = 4 + seed as usize % 5;
        let k = instance(n, 0.5, 80 + seed);
        let m = random_member(&mut rng, &k);
        assert!(first_minor_mismatch(&k, &m, n, MINOR_RTOL, 0.0).is_none());
    }
}

#[test]
fn rho_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for seed in 0..6 {
        let k = instance(6, 0.6, 90 + seed);
        assert_eq!(rho(&k, &k).unwrap(), 0.0);
        let dk = d_similarity(&k, &random_diagonal(&mut rng, 6)).unwrap();
        assert_eq!(rho(&k, &dk).unwrap(), 0.0);
        let m = random_member(&mut rng, &k);
        assert_eq!(rho(&k, &m).unwrap(), 0.0);

        let c = canonical_form(&k);
        let (i, j) = graph_of(&c).edge(0);
        for eta in [1e-3, 1e-2] {
            let mut p = c.clone();
            p[(i, j)] += eta;
            let r = rho(&c, &p).unwrap();
            assert!(close(r, eta, 1e-9, 0.0), "{r} vs {eta}");
            assert!(close(flat_rho(&c, &p), eta, 1e-9, 0.0));
        }
    }
    assert!(rho(&Matrix::zeros(3), &Matrix::zeros(4)).is_err());
}

#[test]
fn rho_vanishes_exactly_on_the_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for seed in 0..8 {
        let k = instance(6, 0.7, 100 + seed);
        let m = random_member(&mut rng, &k);
        assert!(same_equivalence_class(&k, &m).unwrap());
        assert_eq!(rho(&k, &m).unwrap(), 0.0);
        if let Ok(f) = flip_construction(&k) {
            assert!(!same_equivalence_class(&k, &f).unwrap());
            assert!(rho(&k, &f).unwrap() > 1e-3);
        }
    }
}

#[test]
fn rho_block_cap() {
    let n = 17;
    let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut k = Matrix::identity(n);
    for (i, j) in pairs {
        k[(i, j)] = 0.5;
        k[(j, i)] = 0.5;
    }
    assert_eq!(blocks(&graph_of(&k)).blocks.len(), 1);
    assert!(rho(&k, &k).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rho_matches_flat_enumeration(n in 3usize..=7, d in 0.3f64..0.8, seed in 0u64..100_000, noise in 0.0f64..0.3) {
        let k = instance(n, d, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = random_member(&mut rng, &k);
        for i in 0..n {
            for j in 0..n {
                if rng.gen_bool(0.3) {
                    p[(i, j)] += rng.gen_range(-noise..=noise);
                }
            }
        }
        let r = rho(&k, &p).unwrap();
        let f = flat_rho(&k, &p);
        prop_assert!((r - f).abs() <= 1e-12, "{} vs {}", r, f);
    }
}
