//! Independent oracles: quotient rings computed as `ambient / ideal` by spanning the
//! degree-`k` part of the ideal, with no rewriting.
#![allow(dead_code)]

use std::collections::BTreeMap;

use equiconf::confring::ConfElement;
use equiconf::equiodd::EquiElement;
use equiconf::exactalg::Subspace;
use equiconf::Scalar;

pub fn q(x: i64) -> Scalar {
    Scalar::from_int(x)
}

fn edges(points: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=points {
        for j in i + 1..=points {
            out.push((i, j));
        }
    }
    out
}

/// Signed generator index for `x_ab` with `x_ba = (−1)^dim x_ab`.
fn oriented(edges: &[(usize, usize)], a: usize, b: usize, dim: usize) -> (usize, Scalar) {
    let (lo, hi, flip) = if a < b { (a, b, false) } else { (b, a, dim % 2 == 1) };
    let idx = edges.iter().position(|&e| e == (lo, hi)).expect("edge");
    (idx, if flip { q(-1) } else { q(1) })
}

/// Degree-`k` part of `H*(Conf_ℓ(ℝ^dim))` presented as the graded-commutative algebra on
/// `x_ij` modulo squares and the Arnold relations `x_ab x_bc + x_bc x_ca + x_ca x_ab`.
pub struct ConfOracle {
    pub points: usize,
    pub dim: usize,
    pub k: usize,
    edges: Vec<(usize, usize)>,
    /// Squarefree `k`-subsets of generator indices, sorted.
    ambient: Vec<Vec<usize>>,
    pub ideal: Subspace,
}

impl ConfOracle {
    pub fn new(points: usize, dim: usize, k: usize) -> Self {
        let edges = edges(points);
        let ambient = subsets(edges.len(), k);
        let mut oracle = ConfOracle { points, dim, k, edges, ambient, ideal: Subspace::zero(0) };
        oracle.ideal = Subspace::zero(oracle.ambient.len());
        if k < 2 {
            return oracle;
        }
        let mut gens = Vec::new();
        for a in 1..=points {
            for b in a + 1..=points {
                for c in b + 1..=points {
                    let rel = [((a, b), (b, c)), ((b, c), (c, a)), ((c, a), (a, b))];
                    for rest in subsets(oracle.edges.len(), k - 2) {
                        let mut v = vec![q(0); oracle.ambient.len()];
                        for &((p1, p2), (p3, p4)) in &rel {
                            let (i, s) = oriented(&oracle.edges, p1, p2, dim);
                            let (j, t) = oriented(&oracle.edges, p3, p4, dim);
                            let mut word = vec![i, j];
                            word.extend(rest.iter().copied());
                            if let Some((idx, sign)) = oracle.locate(&word) {
                                v[idx] += &(&(&s * &t) * &sign);
                            }
                        }
                        gens.push(v);
                    }
                }
            }
        }
        oracle.ideal = Subspace::span(oracle.ambient.len(), gens);
        oracle
    }

    /// Sorts a word of generators; zero if a generator repeats.
    fn locate(&self, word: &[usize]) -> Option<(usize, Scalar)> {
        let odd = self.dim.is_multiple_of(2);
        let mut w = word.to_vec();
        let mut swaps = 0;
        for i in 0..w.len() {
            for j in 0..w.len() - 1 - i {
                if w[j] > w[j + 1] {
                    w.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        if w.windows(2).any(|p| p[0] == p[1]) {
            return None;
        }
        let idx = self.ambient.iter().position(|m| *m == w)?;
        Some((idx, if odd && swaps % 2 == 1 { q(-1) } else { q(1) }))
    }

    pub fn quotient_dim(&self) -> usize {
        self.ambient.len() - self.ideal.dim()
    }

    /// Coordinates of an oriented word `x_{a1 b1} ⋯ x_{ak bk}` in the ambient space.
    pub fn word(&self, word: &[(usize, usize)]) -> Vec<Scalar> {
        let mut v = vec![q(0); self.ambient.len()];
        let mut sign = q(1);
        let mut idx = Vec::new();
        for &(a, b) in word {
            let (i, s) = oriented(&self.edges, a, b, self.dim);
            sign = &sign * &s;
            idx.push(i);
        }
        if let Some((i, s)) = self.locate(&idx) {
            v[i] = &sign * &s;
        }
        v
    }

    pub fn element(&self, a: &ConfElement) -> Vec<Scalar> {
        let mut v = vec![q(0); self.ambient.len()];
        for (m, c) in a.terms() {
            let w: Vec<(usize, usize)> = m.iter().map(|e| (e.i(), e.j())).collect();
            for (x, y) in v.iter_mut().zip(self.word(&w)) {
                *x += &(c * &y);
            }
        }
        v
    }

    pub fn congruent(&self, u: &[Scalar], v: &[Scalar]) -> bool {
        let diff: Vec<Scalar> = u.iter().zip(v).map(|(a, b)| a - b).collect();
        self.ideal.contains(&diff)
    }
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Monomials in `vars` variables of the given degrees summing to `degree`.
fn monomials(degrees: &[u32], degree: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, degrees: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e * degrees[i] <= left {
            cur.push(e);
            go(i + 1, degrees, left - e * degrees[i], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(0, degrees, degree, &mut Vec::new(), &mut out);
    out
}

type Poly = BTreeMap<Vec<u32>, Scalar>;

/// Degree-`degree` part of `ℚ[q_1..q_n, y_ij] / (y_ij² − p_n, y_ab y_bc − y_bc y_ac − y_ac y_ab + p_n)`
/// with `p_n = (q_1⋯q_n)²`, variables ordered `q_1..q_n` then `y_ij` lexicographically.
pub struct EquiOracle {
    pub points: usize,
    pub halfdim: usize,
    pub degree: u32,
    edges: Vec<(usize, usize)>,
    ambient: Vec<Vec<u32>>,
    pub ideal: Subspace,
}

impl EquiOracle {
    pub fn new(points: usize, halfdim: usize, degree: u32) -> Self {
        let edges = edges(points);
        let n = halfdim;
        let nv = n + edges.len();
        let var_degrees: Vec<u32> = (0..nv).map(|i| if i < n { 2 } else { 2 * n as u32 }).collect();
        let ambient = monomials(&var_degrees, degree);
        let mut oracle = EquiOracle { points, halfdim, degree, edges, ambient, ideal: Subspace::zero(0) };
        let rel_degree = 4 * n as u32;
        let mut gens = Vec::new();
        if degree >= rel_degree {
            let multipliers = monomials(&var_degrees, degree - rel_degree);
            for r in oracle.relations() {
                for m in &multipliers {
                    let prod: Poly =
                        r.iter().map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone())).collect();
                    gens.push(oracle.vector(&prod));
                }
            }
        }
        oracle.ideal = Subspace::span(oracle.ambient.len(), gens);
        oracle
    }

    fn nvars(&self) -> usize {
        self.halfdim + self.edges.len()
    }

    fn pn(&self) -> Poly {
        let mut e = vec![0; self.nvars()];
        for x in e.iter_mut().take(self.halfdim) {
            *x = 2;
        }
        BTreeMap::from([(e, q(1))])
    }

    /// `y_ab` as a signed variable, `y_ba = −y_ab`.
    fn y(&self, a: usize, b: usize) -> Poly {
        let (lo, hi, s) = if a < b { (a, b, q(1)) } else { (b, a, q(-1)) };
        let idx = self.edges.iter().position(|&e| e == (lo, hi)).expect("edge");
        let mut e = vec![0; self.nvars()];
        e[self.halfdim + idx] = 1;
        BTreeMap::from([(e, s)])
    }

    fn relations(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            let y = self.y(a, b);
            out.push(add(&mul(&y, &y), &scale(&self.pn(), &q(-1))));
        }
        for a in 1..=self.points {
            for b in a + 1..=self.points {
                for c in b + 1..=self.points {
                    let t1 = mul(&self.y(a, b), &self.y(b, c));
                    let t2 = mul(&self.y(b, c), &self.y(a, c));
                    let t3 = mul(&self.y(a, c), &self.y(a, b));
                    let r = add(&add(&t1, &scale(&t2, &q(-1))), &scale(&t3, &q(-1)));
                    out.push(add(&r, &self.pn()));
                }
            }
        }
        out
    }

    fn vector(&self, p: &Poly) -> Vec<Scalar> {
        let mut v = vec![q(0); self.ambient.len()];
        for (e, c) in p {
            let i = self.ambient.iter().position(|m| m == e).expect("monomial of the right degree");
            v[i] += c;
        }
        v
    }

    pub fn quotient_dim(&self) -> usize {
        self.ambient.len() - self.ideal.dim()
    }

    /// A library element, read as a polynomial in `q` and `y`.
    pub fn element(&self, a: &EquiElement) -> Vec<Scalar> {
        let mut total = Poly::new();
        for (m, c) in a.terms() {
            let mut p: Poly = c
                .terms()
                .map(|(e, k)| {
                    let mut full = e.clone();
                    full.resize(self.nvars(), 0);
                    (full, k.clone())
                })
                .collect();
            for edge in m {
                p = mul(&p, &self.y(edge.i(), edge.j()));
            }
            total = add(&total, &p);
        }
        self.vector(&total)
    }

    /// The word `y_{a1 b1} ⋯ y_{ak bk}` in ambient coordinates.
    pub fn word(&self, word: &[(usize, usize)]) -> Vec<Scalar> {
        let mut p: Poly = BTreeMap::from([(vec![0; self.nvars()], q(1))]);
        for &(a, b) in word {
            p = mul(&p, &self.y(a, b));
        }
        self.vector(&p)
    }

    pub fn congruent(&self, u: &[Scalar], v: &[Scalar]) -> bool {
        let diff: Vec<Scalar> = u.iter().zip(v).map(|(a, b)| a - b).collect();
        self.ideal.contains(&diff)
    }
}

fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        let s = out.get(e).cloned().unwrap_or_else(|| q(0)) + c.clone();
        if s.is_zero() {
            out.remove(e);
        } else {
            out.insert(e.clone(), s);
        }
    }
    out
}

fn scale(a: &Poly, c: &Scalar) -> Poly {
    a.iter().map(|(e, k)| (e.clone(), k * c)).collect()
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            out = add(&out, &BTreeMap::from([(e, ca * cb)]));
        }
    }
    out
}

/// `[t^d] Π_{j=1}^{k−1} (1 + j t^step)` for `d = 0..=max`.
pub fn product_series(k: usize, step: usize, max: usize) -> Vec<u64> {
    let mut s = vec![0u64; max + 1];
    s[0] = 1;
    for j in 1..k as u64 {
        for d in (step..=max).rev() {
            s[d] += j * s[d - step];
        }
    }
    s
}

/// Hilbert series of a polynomial ring on generators of the given degrees.
pub fn polynomial_ring_series(degrees: &[usize], max: usize) -> Vec<usize> {
    let mut s = vec![0usize; max + 1];
    s[0] = 1;
    for &g in degrees {
        for d in g..=max {
            s[d] += s[d - g];
        }
    }
    s
}

/// Series of `R ⊗ K` from the two series.
pub fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < out.len() {
                out[i + j] += x * y;
            }
        }
    }
    out
}
