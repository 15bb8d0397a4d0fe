//! Torus-equivariant cohomology of `Conf_ℓ(ℝ^{2n+1})` as a graph calculus over
//! `ℚ[q_1..q_n]`, with its Weyl actions and the `SO(2n+1)`/`O(2n+1)` invariants.
//!
//! Generators `y_ij` (degree `2n`, commuting, `y_ji = −y_ij`) satisfy
//! `y_ij² = p_n` and `y_ij y_jk − y_jk y_ik − y_ik y_ij + p_n = 0` where
//! `p_n = (q_1⋯q_n)²`. Normal forms are graphs in which every vertex is the larger
//! endpoint of at most one edge.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::charclasses::{weyl_action, weyl_group, GroupFamily, GroupSpec, WeylConvention, WeylElement};
use crate::confring::{self, admissible_monomials, ConfElement, Edge, EdgeMonomial, Permutation, RewriteChoice};
use crate::error::{input, Error, Result};
use crate::exactalg::{echelon_rows, Exponents, Polynomial, Scalar, VarSet};

/// A basis element of the torus-equivariant ring: an admissible graph times a `q`-monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphMonomial {
    pub edges: EdgeMonomial,
    pub q: Exponents,
}

/// Element of `H*_{𝕋ⁿ}(Conf_ℓ(ℝ^{2n+1}))`: admissible graphs with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EquiElement {
    points: usize,
    halfdim: usize,
    vars: VarSet,
    terms: BTreeMap<EdgeMonomial, Polynomial>,
}

impl EquiElement {
    pub fn zero(points: usize, halfdim: usize) -> Self {
        EquiElement { points, halfdim, vars: VarSet::torus(halfdim), terms: BTreeMap::new() }
    }

    pub fn one(points: usize, halfdim: usize) -> Self {
        let mut e = Self::zero(points, halfdim);
        let one = Polynomial::one(&e.vars);
        e.add_term(Vec::new(), &one);
        e
    }

    /// A polynomial in the `q`'s times the empty graph.
    pub fn from_poly(points: usize, halfdim: usize, p: &Polynomial) -> Result<Self> {
        let mut e = Self::zero(points, halfdim);
        if p.vars() != &e.vars {
            return input(format!("coefficient must live in q1..q{halfdim}"));
        }
        e.add_term(Vec::new(), p);
        Ok(e)
    }

    /// The generator `y_ij` (either orientation).
    pub fn generator(points: usize, halfdim: usize, i: usize, j: usize) -> Result<Self> {
        normal_form(points, halfdim, &[(i, j)])
    }

    pub fn from_basis(points: usize, halfdim: usize, m: &GraphMonomial) -> Self {
        let mut e = Self::zero(points, halfdim);
        let c = Polynomial::monomial(&e.vars, m.q.clone(), Scalar::one());
        e.add_term(m.edges.clone(), &c);
        e
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn halfdim(&self) -> usize {
        self.halfdim
    }

    pub fn coeff_vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&EdgeMonomial, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coeff(&self, edges: &[Edge]) -> Polynomial {
        self.terms.get(edges).cloned().unwrap_or_else(|| Polynomial::zero(&self.vars))
    }

    fn add_term(&mut self, edges: EdgeMonomial, c: &Polynomial) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&edges) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&edges);
        } else {
            self.terms.insert(edges, sum);
        }
    }

    fn check_compatible(&self, other: &EquiElement) -> Result<()> {
        if self.points != other.points || self.halfdim != other.halfdim {
            return Err(Error::Input(format!(
                "elements over (points {}, n {}) and (points {}, n {}) cannot be combined",
                self.points, self.halfdim, other.points, other.halfdim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &EquiElement) -> Result<EquiElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &EquiElement) -> Result<EquiElement> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> EquiElement {
        let mut out = Self::zero(self.points, self.halfdim);
        for (m, p) in &self.terms {
            out.add_term(m.clone(), &p.scale(c));
        }
        out
    }

    /// Multiplies every coefficient by `p`.
    pub fn mul_poly(&self, p: &Polynomial) -> EquiElement {
        let mut out = Self::zero(self.points, self.halfdim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &(c * p));
        }
        out
    }

    /// Total degree of each term: `2n·#edges + deg(coefficient)`, if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = Vec::new();
        for (m, c) in &self.terms {
            let base = 2 * self.halfdim as u32 * m.len() as u32;
            let d = c.homogeneous_degree()?;
            degs.push(base + d);
        }
        let first = *degs.first()?;
        degs.iter().all(|&d| d == first).then_some(first)
    }

    /// Coordinates against a list of basis monomials; `None` if a term falls outside.
    pub fn coordinates(&self, basis: &[GraphMonomial]) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); basis.len()];
        let mut hit = 0;
        let mut total = 0;
        for (edges, c) in &self.terms {
            total += c.len();
            for (exps, a) in c.terms() {
                let key = GraphMonomial { edges: edges.clone(), q: exps.clone() };
                if let Some(i) = basis.iter().position(|b| b == &key) {
                    v[i] = a.clone();
                    hit += 1;
                }
            }
        }
        (hit == total).then_some(v)
    }

    pub fn from_coordinates(points: usize, halfdim: usize, basis: &[GraphMonomial], v: &[Scalar]) -> Self {
        let mut out = Self::zero(points, halfdim);
        for (m, c) in basis.iter().zip(v) {
            if !c.is_zero() {
                let p = Polynomial::monomial(&out.vars, m.q.clone(), c.clone());
                out.add_term(m.edges.clone(), &p);
            }
        }
        out
    }

    /// `p_n = (q_1⋯q_n)²` in the coefficient ring.
    pub fn pn(&self) -> Polynomial {
        pn(&self.vars)
    }

    /// One `graph` block per monomial, coefficient as the graph label.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        for (k, (edges, c)) in self.terms.iter().enumerate() {
            out.push_str(&format!("graph m{k} {{\n  label=\"{c}\";\n"));
            for v in 1..=self.points {
                out.push_str(&format!("  {v};\n"));
            }
            for e in edges {
                out.push_str(&format!("  {} -- {};\n", e.i(), e.j()));
            }
            out.push_str("}\n");
        }
        out
    }
}

fn pn(vars: &VarSet) -> Polynomial {
    Polynomial::monomial(vars, vec![2; vars.len()], Scalar::one())
}

fn euler(vars: &VarSet) -> Polynomial {
    Polynomial::monomial(vars, vec![1; vars.len()], Scalar::one())
}

fn check_params(points: usize, halfdim: usize) -> Result<()> {
    if halfdim == 0 {
        return input("halfdim must be at least 1");
    }
    if points > 64 {
        return Err(Error::Capacity(format!("at most 64 points supported, got {points}")));
    }
    Ok(())
}

/// Reduces a commutative edge word to admissible graphs; each result carries a power of `p_n`.
fn reduce_word(word: Vec<Edge>, choice: &mut dyn RewriteChoice) -> BTreeMap<(EdgeMonomial, u32), Scalar> {
    let mut out: BTreeMap<(EdgeMonomial, u32), Scalar> = BTreeMap::new();
    let mut work = vec![(word, 0u32, Scalar::one())];
    while let Some((mut w, pw, c)) = work.pop() {
        // Candidate rewrites: (p, q, is_double).
        let mut cands = Vec::new();
        for p in 0..w.len() {
            for q in p + 1..w.len() {
                if w[p] == w[q] {
                    cands.push((p, q, true));
                } else if w[p].j() == w[q].j() {
                    cands.push((p, q, false));
                }
            }
        }
        if cands.is_empty() {
            w.sort_by_key(|e| e.key());
            *out.entry((w, pw)).or_default() += &c;
            continue;
        }
        let (p, q, double) = cands[choice.choose(cands.len())];
        let (ep, eq) = (w[p], w[q]);
        w.remove(q);
        w.remove(p);
        if double {
            work.push((w, pw + 1, c));
            continue;
        }
        // y_ac · y_bc = y_ab y_bc − y_ab y_ac + p_n for a < b < c.
        let (a, b) = if ep.i() < eq.i() { (ep.i(), eq.i()) } else { (eq.i(), ep.i()) };
        let top = ep.j();
        let mut first = w.clone();
        first.extend([Edge::new(a, b), Edge::new(b, top)]);
        let mut second = w.clone();
        second.extend([Edge::new(a, b), Edge::new(a, top)]);
        work.push((w, pw + 1, c.clone()));
        work.push((second, pw, -c.clone()));
        work.push((first, pw, c));
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Oriented word of generators `y_{ij}`, reduced with a chosen rewrite order.
pub fn normal_form_with(
    points: usize,
    halfdim: usize,
    word: &[(usize, usize)],
    choice: &mut dyn RewriteChoice,
) -> Result<EquiElement> {
    check_params(points, halfdim)?;
    let mut edges = Vec::with_capacity(word.len());
    let mut negate = false;
    for &(i, j) in word {
        if i == 0 || j == 0 || i > points || j > points || i == j {
            return input(format!("generator y_({i},{j}) invalid for {points} points"));
        }
        if i > j {
            negate = !negate;
        }
        edges.push(Edge::new(i.min(j), i.max(j)));
    }
    let mut out = EquiElement::zero(points, halfdim);
    let pn = pn(&out.vars);
    for ((m, pw), c) in reduce_word(edges, choice) {
        let c = if negate { -c } else { c };
        out.add_term(m, &pn.pow(pw).scale(&c));
    }
    Ok(out)
}

pub fn normal_form(points: usize, halfdim: usize, word: &[(usize, usize)]) -> Result<EquiElement> {
    normal_form_with(points, halfdim, word, &mut confring::FirstChoice)
}

/// Product by superposition of graphs, reduced to normal form.
pub fn graph_product(a: &EquiElement, b: &EquiElement) -> Result<EquiElement> {
    graph_product_with(a, b, &mut confring::FirstChoice)
}

pub fn graph_product_with(a: &EquiElement, b: &EquiElement, choice: &mut dyn RewriteChoice) -> Result<EquiElement> {
    a.check_compatible(b)?;
    let mut out = EquiElement::zero(a.points, a.halfdim);
    let pn = pn(&out.vars);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let coeff = ca * cb;
            let word: Vec<Edge> = ma.iter().chain(mb).copied().collect();
            for ((m, pw), c) in reduce_word(word, choice) {
                out.add_term(m, &(&coeff * &pn.pow(pw)).scale(&c));
            }
        }
    }
    Ok(out)
}

/// Basis of the torus-equivariant ring in `degree`: admissible graphs (more edges first,
/// then lexicographic) times `q`-monomials (lexicographically descending).
pub fn torus_basis(points: usize, halfdim: usize, degree: u32) -> Result<Vec<GraphMonomial>> {
    check_params(points, halfdim)?;
    let vars = VarSet::torus(halfdim);
    let step = 2 * halfdim as u32;
    let mut out = Vec::new();
    for e in (0..=(degree / step) as usize).rev() {
        let rest = degree - step * e as u32;
        let graphs = admissible_monomials(points, e);
        if graphs.is_empty() {
            continue;
        }
        let qs = vars.monomials_of_degree(rest);
        for g in &graphs {
            for q in &qs {
                out.push(GraphMonomial { edges: g.clone(), q: q.clone() });
            }
        }
    }
    Ok(out)
}

/// `[t^d] Π_{j=1}^{ℓ−1}(1 + j t^{2n}) / (1 − t²)ⁿ` for `d = 0..=max_degree`.
pub fn leray_hirsch_series(points: usize, halfdim: usize, max_degree: u32) -> Vec<u64> {
    let len = max_degree as usize + 1;
    let mut series = vec![0u64; len];
    series[0] = 1;
    let step = 2 * halfdim;
    for j in 1..points.max(1) as u64 {
        for d in (step..len).rev() {
            series[d] += j * series[d - step];
        }
    }
    for _ in 0..halfdim {
        for d in 2..len {
            series[d] += series[d - 2];
        }
    }
    series
}

/// Action of a Weyl element: signed permutation on coefficients, `y ↦ (η·det) y`.
pub fn weyl_action_equi(w: &WeylElement, a: &EquiElement, convention: WeylConvention) -> Result<EquiElement> {
    if w.rank() != a.halfdim {
        return input(format!("Weyl element of rank {} on n = {}", w.rank(), a.halfdim));
    }
    let flip = w.orientation_sign(convention) < 0;
    let mut out = EquiElement::zero(a.points, a.halfdim);
    for (m, c) in &a.terms {
        let mut img = weyl_action(w, c)?;
        if flip && m.len() % 2 == 1 {
            img = -&img;
        }
        out.add_term(m.clone(), &img);
    }
    Ok(out)
}

/// Echelonized basis of the Weyl-invariant part of the torus basis in `degree`.
pub fn fixed_point_basis(
    g: GroupSpec,
    points: usize,
    degree: u32,
    convention: WeylConvention,
) -> Result<Vec<EquiElement>> {
    if !matches!(g.family, GroupFamily::SoOdd | GroupFamily::OOdd) {
        return input(format!("{} is not an odd orthogonal group", g.family.name()));
    }
    let group = weyl_group(g, convention)?;
    let n = g.rank;
    let basis = torus_basis(points, n, degree)?;
    let index: std::collections::HashMap<&GraphMonomial, usize> =
        basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut rows = Vec::with_capacity(basis.len());
    for b in &basis {
        let mut row = vec![Scalar::zero(); basis.len()];
        for w in group.iter() {
            let (mut negate, q) = w.act_on_exponents(&b.q);
            if w.orientation_sign(convention) < 0 && b.edges.len() % 2 == 1 {
                negate = !negate;
            }
            let key = GraphMonomial { edges: b.edges.clone(), q };
            let slot = &mut row[index[&key]];
            if negate {
                *slot -= &Scalar::one();
            } else {
                *slot += &Scalar::one();
            }
        }
        rows.push(row);
    }
    Ok(echelon_rows(rows, basis.len())
        .into_iter()
        .map(|v| EquiElement::from_coordinates(points, n, &basis, &v))
        .collect())
}

/// `q_u ↦ 0`, `y_ij ↦ 2 x_ij` into `H*(Conf_ℓ(ℝ^{2n+1}))`.
pub fn nonequivariant_restriction(a: &EquiElement) -> ConfElement {
    let dim = 2 * a.halfdim + 1;
    let mut out = ConfElement::zero(a.points, dim);
    for (m, c) in &a.terms {
        let k = c.constant_term();
        if k.is_zero() {
            continue;
        }
        let factor = Scalar::from_int(2).pow(m.len() as i64);
        let term = ConfElement::from_coordinates(a.points, dim, std::slice::from_ref(m), &[&k * &factor]);
        out = out.add(&term).expect("same ring");
    }
    out
}

/// Substitutes edges through a vertex map, keeping track of orientation.
fn relabel(a: &EquiElement, images: &[usize], target_points: usize) -> Result<EquiElement> {
    let mut out = EquiElement::zero(target_points, a.halfdim);
    for (m, c) in &a.terms {
        let word: Vec<(usize, usize)> = m.iter().map(|e| (images[e.i() - 1], images[e.j() - 1])).collect();
        let nf = normal_form(target_points, a.halfdim, &word)?;
        out = out.add(&nf.mul_poly(c))?;
    }
    Ok(out)
}

/// Pullback along `π_ij : Conf_ℓ → Conf_2`, sending `y ↦ y_ij`.
pub fn projection_pullback(i: usize, j: usize, points: usize, a: &EquiElement) -> Result<EquiElement> {
    if a.points != 2 {
        return input("projection pullback expects an element over 2 points");
    }
    if !(1 <= i && i < j && j <= points) {
        return input(format!("pair ({i},{j}) invalid for {points} points"));
    }
    relabel(a, &[i, j], points)
}

/// Pullback along the section of `π_ij` adding the remaining point of three far out in
/// the positive first coordinate: `y_ij ↦ y`, `y_{a,new} ↦ q_1⋯q_n`.
pub fn section_pullback(i: usize, j: usize, a: &EquiElement) -> Result<EquiElement> {
    if a.points != 3 {
        return input("section pullback expects an element over 3 points");
    }
    if !(1 <= i && i < j && j <= 3) {
        return input(format!("pair ({i},{j}) invalid for 3 points"));
    }
    let added = 6 - i - j;
    let mut out = EquiElement::zero(2, a.halfdim);
    let q = euler(&out.vars);
    for (m, c) in &a.terms {
        let mut term = EquiElement::from_poly(2, a.halfdim, c)?;
        for e in m {
            let factor = if e.i() == i && e.j() == j {
                EquiElement::generator(2, a.halfdim, 1, 2)?
            } else if e.j() == added {
                EquiElement::from_poly(2, a.halfdim, &q)?
            } else {
                EquiElement::from_poly(2, a.halfdim, &-&q)?
            };
            term = graph_product(&term, &factor)?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Relabelling of points: `y_ij ↦ y_{σ(i)σ(j)}`, coefficients fixed.
pub fn label_action_equi(sigma: &Permutation, a: &EquiElement) -> Result<EquiElement> {
    if sigma.len() != a.points {
        return input(format!("permutation of {} letters on {} points", sigma.len(), a.points));
    }
    relabel(a, sigma.images(), a.points)
}

impl fmt::Display for EquiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let graph = confring::format_monomial(m, "y");
            let single = c.len() == 1;
            let (exps, k) = c.terms().next().expect("nonzero coefficient");
            let scalar_only = single && exps.iter().all(|&e| e == 0);
            if !first {
                write!(f, " ")?;
            }
            if scalar_only {
                let mag = k.abs();
                if first {
                    if k.is_negative() {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, "{} ", if k.is_negative() { "-" } else { "+" })?;
                }
                match (graph.is_empty(), mag.is_one()) {
                    (true, _) => write!(f, "{mag}")?,
                    (false, true) => write!(f, "{graph}")?,
                    (false, false) => write!(f, "{mag}*{graph}")?,
                }
            } else {
                if !first {
                    write!(f, "+ ")?;
                }
                if graph.is_empty() {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "({c})*{graph}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for EquiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Equi[l={}, n={}]({self})", self.points, self.halfdim)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: serde_json::Value,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct EquiJson {
    points: usize,
    halfdim: usize,
    terms: Vec<TermJson>,
}

impl Serialize for EquiElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EquiJson {
            points: self.points,
            halfdim: self.halfdim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    coeff: c.to_json_compact(),
                    edges: m.iter().map(|e| [e.i(), e.j()]).collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EquiElement {
    /// Accepts any edge words; the result is reduced to normal form.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = EquiJson::deserialize(d)?;
        check_params(raw.points, raw.halfdim).map_err(D::Error::custom)?;
        let vars = VarSet::torus(raw.halfdim);
        let mut out = EquiElement::zero(raw.points, raw.halfdim);
        for t in raw.terms {
            let c = Polynomial::from_json_in(&t.coeff, &vars).map_err(D::Error::custom)?;
            let word: Vec<(usize, usize)> = t.edges.iter().map(|e| (e[0], e[1])).collect();
            let nf = normal_form(raw.points, raw.halfdim, &word).map_err(D::Error::custom)?;
            out = out.add(&nf.mul_poly(&c)).map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}
