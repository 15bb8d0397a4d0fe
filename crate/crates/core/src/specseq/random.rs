//! Seeded generators of filtered and pure complexes for property tests and the CLI.
//!
//! Complexes are assembled from cells in normal form (single cohomology classes and
//! acyclic pairs `u ↦ v`) and then hidden behind a random change of basis per degree.

use rand::Rng;

use super::{CochainComplex, FilteredComplex};
use crate::exactalg::{unit_vectors, Matrix, Scalar, Subspace};

struct Cell {
    degree: usize,
    level: usize,
    eigenvalue: Scalar,
}

#[derive(Default)]
struct Builder {
    cells: Vec<Cell>,
    /// `(source cell, target cell)` with `d(source) = target`.
    pairs: Vec<(usize, usize)>,
    /// `(cell, next)`: `φ(next) = λ·next + cell`, a Jordan link.
    jordan: Vec<(usize, usize)>,
}

impl Builder {
    fn push(&mut self, degree: usize, level: usize, eigenvalue: Scalar) -> usize {
        self.cells.push(Cell { degree, level, eigenvalue });
        self.cells.len() - 1
    }

    fn total(&self) -> usize {
        self.cells.len()
    }

    /// Assembles the complex in the cell basis, then conjugates each degree by a
    /// random unipotent-times-unipotent matrix.
    fn build<R: Rng>(&self, rng: &mut R, degrees: usize, with_phi: bool) -> (CochainComplex, Vec<Vec<Subspace>>) {
        let mut index = vec![0; self.cells.len()];
        let mut dims = vec![0; degrees];
        // Order cells in each degree by level so coordinate flags are the filtration.
        let mut order: Vec<usize> = (0..self.cells.len()).collect();
        order.sort_by_key(|&c| (self.cells[c].degree, self.cells[c].level));
        for &c in &order {
            let n = self.cells[c].degree;
            index[c] = dims[n];
            dims[n] += 1;
        }
        let dim = |n: usize| dims.get(n).copied().unwrap_or(0);
        let mut d: Vec<Matrix> = (0..degrees).map(|n| Matrix::zeros(dim(n + 1), dim(n))).collect();
        for &(s, t) in &self.pairs {
            d[self.cells[s].degree][(index[t], index[s])] = Scalar::one();
        }
        let mut phi: Vec<Matrix> = (0..degrees).map(|n| Matrix::zeros(dim(n), dim(n))).collect();
        for (c, cell) in self.cells.iter().enumerate() {
            phi[cell.degree][(index[c], index[c])] = cell.eigenvalue.clone();
        }
        for &(a, b) in &self.jordan {
            phi[self.cells[a].degree][(index[a], index[b])] = Scalar::one();
        }
        let g: Vec<Matrix> = dims.iter().map(|&k| random_invertible(rng, k)).collect();
        let gi: Vec<Matrix> = g.iter().map(|m| m.inverse().expect("unipotent product")).collect();
        let d: Vec<Matrix> =
            (0..degrees).map(|n| if n + 1 < degrees { &(&g[n + 1] * &d[n]) * &gi[n] } else { d[n].clone() }).collect();
        let phi = with_phi.then(|| (0..degrees).map(|n| &(&g[n] * &phi[n]) * &gi[n]).collect());
        let max_level = self.cells.iter().map(|c| c.level).max().unwrap_or(0);
        let levels = (0..degrees)
            .map(|n| {
                let basis = unit_vectors(dims[n]);
                (0..=max_level)
                    .map(|w| {
                        let vs = order
                            .iter()
                            .filter(|&&c| self.cells[c].degree == n && self.cells[c].level <= w)
                            .map(|&c| g[n].apply(&basis[index[c]]))
                            .collect();
                        Subspace::span(dims[n], vs)
                    })
                    .collect()
            })
            .collect();
        let complex = CochainComplex::new(dims, d, phi).expect("cells assemble into a complex");
        (complex, levels)
    }
}

fn small<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::from_int(rng.gen_range(-2..=2))
}

/// `L·U` with unit diagonals and small random entries.
fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = small(rng);
            u[(j, i)] = small(rng);
        }
    }
    &l * &u
}

const EIGENVALUES: [(i64, i64); 5] = [(1, 1), (2, 1), (3, 1), (-1, 1), (1, 2)];

fn random_eigenvalue<R: Rng>(rng: &mut R) -> Scalar {
    let (p, q) = EIGENVALUES[rng.gen_range(0..EIGENVALUES.len())];
    Scalar::ratio(p, q)
}

/// A filtered complex of total dimension at most `max_dim` with at most `max_levels`
/// filtration steps, with a commuting filtered automorphism when `with_phi` is set.
pub fn random_filtered_complex<R: Rng>(
    rng: &mut R,
    max_dim: usize,
    max_levels: usize,
    with_phi: bool,
) -> FilteredComplex {
    let degrees = rng.gen_range(1..=4usize);
    let target = rng.gen_range(1..=max_dim.max(1));
    let levels = max_levels.max(1);
    let mut b = Builder::default();
    while b.total() < target {
        let n = rng.gen_range(0..degrees);
        let lambda = random_eigenvalue(rng);
        if n + 1 < degrees && b.total() + 2 <= target && rng.gen_bool(0.6) {
            let wu = rng.gen_range(0..levels);
            let wv = rng.gen_range(0..=wu);
            let u = b.push(n, wu, lambda.clone());
            let v = b.push(n + 1, wv, lambda);
            b.pairs.push((u, v));
        } else {
            b.push(n, rng.gen_range(0..levels), lambda);
        }
    }
    let (complex, levels) = b.build(rng, degrees, with_phi);
    FilteredComplex::new(complex, levels).expect("cells respect the filtration")
}

/// A complex whose cohomology in degree `n` has the single eigenvalue `ξ^{αn}` (and
/// vanishes when `αn` is not an integer), with acyclic summands of arbitrary eigenvalue.
///
/// With `impure` set, one extra class of eigenvalue `2ξ^{αn}` is added in some degree
/// `n`; the returned bidegree `(n, 2n)` is where the canonical filtration exposes it.
pub fn random_pure_complex<R: Rng>(
    rng: &mut R,
    xi: &Scalar,
    alpha: &Scalar,
    impure: bool,
) -> (CochainComplex, Option<(i64, i64)>) {
    let degrees = rng.gen_range(1..=4usize);
    let weight = |n: usize| {
        let w = alpha * &Scalar::from_int(n as i64);
        w.is_integer().then(|| xi.pow(w.to_i64().expect("small weight")))
    };
    let mut b = Builder::default();
    let allowed: Vec<usize> = (0..degrees).filter(|&n| weight(n).is_some()).collect();
    let budget = if impure { 9 } else { 10 };
    for &n in &allowed {
        for _ in 0..rng.gen_range(0..=2) {
            if b.total() < budget {
                b.push(n, 0, weight(n).expect("allowed degree"));
            }
        }
    }
    while b.total() + 2 <= budget && degrees > 1 && rng.gen_bool(0.7) {
        let n = rng.gen_range(0..degrees - 1);
        let lambda = match rng.gen_range(0..4) {
            0 => Scalar::from_int(7),
            1 => Scalar::from_int(-3),
            2 => weight(n).unwrap_or_else(|| Scalar::ratio(1, 2)),
            _ => random_eigenvalue(rng),
        };
        let u = b.push(n, 0, lambda.clone());
        let v = b.push(n + 1, 0, lambda.clone());
        b.pairs.push((u, v));
        if b.total() + 2 <= budget && rng.gen_bool(0.3) {
            // A second pair with a Jordan link keeps φ non-semisimple on the acyclic part.
            let u2 = b.push(n, 0, lambda.clone());
            let v2 = b.push(n + 1, 0, lambda);
            b.pairs.push((u2, v2));
            b.jordan.push((u, u2));
            b.jordan.push((v, v2));
        }
    }
    let mut violation = None;
    if impure && !allowed.is_empty() {
        let n = allowed[rng.gen_range(0..allowed.len())];
        b.push(n, 0, &Scalar::from_int(2) * &weight(n).expect("allowed degree"));
        violation = Some((n as i64, 2 * n as i64));
    }
    let (complex, _) = b.build(rng, degrees, true);
    (complex, violation)
}
