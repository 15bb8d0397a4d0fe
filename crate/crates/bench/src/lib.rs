//! Inputs shared by the benchmarks.

use equiconf::specseq::random::{random_filtered_complex, random_pure_complex};
use equiconf::specseq::{CochainComplex, FilteredComplex};
use equiconf::Scalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `count` random filtered complexes of total dimension at most 10, with automorphisms.
pub fn filtered_complexes(seed: u64, count: usize) -> Vec<FilteredComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_filtered_complex(&mut rng, 10, 4, true)).collect()
}

/// `count` complexes pure of weight `α n` in degree `n` for `ξ`.
pub fn pure_complexes(seed: u64, count: usize, xi: &Scalar, alpha: &Scalar) -> Vec<CochainComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_pure_complex(&mut rng, xi, alpha, false).0).collect()
}

/// Every ordered word of `len` edges on `points` vertices.
pub fn all_words(points: usize, len: usize) -> Vec<Vec<(usize, usize)>> {
    let edges: Vec<(usize, usize)> =
        (1..=points).flat_map(|a| (1..=points).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                edges.iter().map(move |&e| {
                    let mut w = w.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    words
}
