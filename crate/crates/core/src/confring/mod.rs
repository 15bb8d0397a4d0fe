//! `H*(Conf_k(ℝⁿ))` through the Arnold presentation.
//!
//! Generators `x_ij` have degree `n − 1` and satisfy `x_ji = (−1)ⁿ x_ij`, `x_ij² = 0`
//! and the three-term Arnold relation. Elements are kept as combinations of
//! admissible monomials: products of edges with pairwise distinct larger endpoints,
//! written in ascending order of `(max, min)`.

mod edge;
mod rewrite;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use edge::{parse_word, Edge, Permutation};
pub use rewrite::{normal_form_with, FirstChoice, RewriteChoice};

use crate::error::{input, Error, Result};
use crate::exactalg::{Polynomial, Scalar, VarSet};

/// An admissible monomial: edges sorted by `(max, min)` with distinct maxima.
pub type EdgeMonomial = Vec<Edge>;

/// A ℚ-linear combination of admissible monomials in `H*(Conf_k(ℝⁿ))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConfElement {
    points: usize,
    dim: usize,
    terms: BTreeMap<EdgeMonomial, Scalar>,
}

impl ConfElement {
    pub fn zero(points: usize, dim: usize) -> Self {
        ConfElement { points, dim, terms: BTreeMap::new() }
    }

    pub fn one(points: usize, dim: usize) -> Self {
        Self::monomial(points, dim, Vec::new(), Scalar::one())
    }

    /// A single admissible monomial; the caller guarantees admissibility.
    pub(crate) fn monomial(points: usize, dim: usize, edges: EdgeMonomial, c: Scalar) -> Self {
        let mut e = Self::zero(points, dim);
        e.add_term(edges, &c);
        e
    }

    /// The generator `x_ij` (either orientation).
    pub fn generator(points: usize, dim: usize, i: usize, j: usize) -> Result<Self> {
        normal_form(points, dim, &[(i, j)])
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&EdgeMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[Edge]) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Degree of a monomial with `edges` generators.
    pub fn monomial_degree(&self, edges: usize) -> usize {
        edges * (self.dim - 1)
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.len());
        let first = it.next()?;
        it.all(|l| l == first).then(|| self.monomial_degree(first))
    }

    pub(crate) fn add_term(&mut self, m: EdgeMonomial, c: &Scalar) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &ConfElement) -> Result<()> {
        if self.points != other.points || self.dim != other.dim {
            return Err(Error::Input(format!(
                "elements of Conf_{}(R^{}) and Conf_{}(R^{}) cannot be combined",
                self.points, self.dim, other.points, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ConfElement) -> Result<ConfElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ConfElement) -> Result<ConfElement> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> ConfElement {
        let mut out = Self::zero(self.points, self.dim);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &(a * c));
        }
        out
    }

    /// Coefficients against an ordered list of admissible monomials; `None` if a term
    /// falls outside the list.
    pub fn coordinates(&self, basis: &[EdgeMonomial]) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); basis.len()];
        let mut hit = 0;
        for (i, m) in basis.iter().enumerate() {
            if let Some(c) = self.terms.get(m) {
                v[i] = c.clone();
                hit += 1;
            }
        }
        (hit == self.terms.len()).then_some(v)
    }

    /// Linear combination of `basis` with the given coefficients.
    pub fn from_coordinates(points: usize, dim: usize, basis: &[EdgeMonomial], v: &[Scalar]) -> Self {
        let mut out = Self::zero(points, dim);
        for (m, c) in basis.iter().zip(v) {
            out.add_term(m.clone(), c);
        }
        out
    }
}

fn check_params(points: usize, dim: usize) -> Result<()> {
    if dim < 2 {
        return input(format!("ambient dimension must be at least 2, got {dim}"));
    }
    if points > edge::MAX_POINTS {
        return Err(Error::Capacity(format!("at most {} points supported, got {points}", edge::MAX_POINTS)));
    }
    Ok(())
}

/// Normal form of the ordered product of generators `x_{i j}` listed in `word`.
pub fn normal_form(points: usize, dim: usize, word: &[(usize, usize)]) -> Result<ConfElement> {
    normal_form_with(points, dim, word, &mut FirstChoice)
}

/// Admissible monomials of the given degree, in lexicographic order.
pub fn basis(points: usize, dim: usize, degree: usize) -> Result<Vec<EdgeMonomial>> {
    check_params(points, dim)?;
    if !degree.is_multiple_of(dim - 1) {
        return Ok(Vec::new());
    }
    Ok(admissible_monomials(points, degree / (dim - 1)))
}

/// All admissible monomials on `points` vertices with exactly `edges` edges.
pub fn admissible_monomials(points: usize, edges: usize) -> Vec<EdgeMonomial> {
    fn rec(j: usize, points: usize, left: usize, cur: &mut EdgeMonomial, out: &mut Vec<EdgeMonomial>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if j > points || points - j + 1 < left {
            return;
        }
        for i in 1..j {
            cur.push(Edge::new(i, j));
            rec(j + 1, points, left - 1, cur, out);
            cur.pop();
        }
        rec(j + 1, points, left, cur, out);
    }
    let mut out = Vec::new();
    rec(2, points, edges, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `Σ_d dim H^d(Conf_k(ℝⁿ)) t^d`, from basis enumeration.
pub fn poincare_polynomial(points: usize, dim: usize) -> Result<Polynomial> {
    check_params(points, dim)?;
    let vars = VarSet::series();
    let mut p = Polynomial::zero(&vars);
    for e in 0..points.max(1) {
        let count = admissible_monomials(points, e).len();
        p.add_term(vec![(e * (dim - 1)) as u32], &Scalar::from_int(count as i64));
    }
    Ok(p)
}

/// Product in the ring, reduced to normal form.
pub fn product(a: &ConfElement, b: &ConfElement) -> Result<ConfElement> {
    a.check_compatible(b)?;
    let mut out = ConfElement::zero(a.points, a.dim);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let word: Vec<(usize, usize)> = ma.iter().chain(mb).map(|e| (e.i(), e.j())).collect();
            let nf = normal_form(a.points, a.dim, &word)?;
            let c = ca * cb;
            for (m, x) in nf.terms {
                out.add_term(m, &(&x * &c));
            }
        }
    }
    Ok(out)
}

/// The automorphism induced by relabelling points: `x_ij ↦ x_{σ(i)σ(j)}`.
pub fn label_action(sigma: &Permutation, a: &ConfElement) -> Result<ConfElement> {
    if sigma.len() != a.points {
        return input(format!("permutation of {} letters acting on {} points", sigma.len(), a.points));
    }
    let mut out = ConfElement::zero(a.points, a.dim);
    for (m, c) in &a.terms {
        let word: Vec<(usize, usize)> = m.iter().map(|e| (sigma.apply(e.i()), sigma.apply(e.j()))).collect();
        for (mm, x) in normal_form(a.points, a.dim, &word)?.terms {
            out.add_term(mm, &(&x * c));
        }
    }
    Ok(out)
}

pub(crate) fn format_monomial(m: &[Edge], prefix: &str) -> String {
    m.iter().map(|e| e.label(prefix)).collect::<Vec<_>>().join("*")
}

/// Writes `Σ c·m` with the sign folded into the separator.
pub(crate) fn format_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Scalar)>,
) -> fmt::Result {
    let mut empty = true;
    for (k, (mono, c)) in terms.enumerate() {
        empty = false;
        let mag = c.abs();
        if k == 0 {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
        }
        match (mono.is_empty(), mag.is_one()) {
            (true, _) => write!(f, "{mag}")?,
            (false, true) => write!(f, "{mono}")?,
            (false, false) => write!(f, "{mag}*{mono}")?,
        }
    }
    if empty {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for ConfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, self.terms.iter().map(|(m, c)| (format_monomial(m, "x"), c)))
    }
}

impl fmt::Debug for ConfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Conf_{}(R^{})[{self}]", self.points, self.dim)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: Scalar,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct ConfJson {
    points: usize,
    dim: usize,
    terms: Vec<TermJson>,
}

impl Serialize for ConfElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConfJson {
            points: self.points,
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { coeff: c.clone(), edges: m.iter().map(|e| [e.i(), e.j()]).collect() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConfElement {
    /// Accepts any words; the result is brought to normal form.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ConfJson::deserialize(d)?;
        let mut out = ConfElement::zero(raw.points, raw.dim);
        for t in raw.terms {
            let word: Vec<(usize, usize)> = t.edges.iter().map(|e| (e[0], e[1])).collect();
            let nf = normal_form(raw.points, raw.dim, &word).map_err(D::Error::custom)?;
            out = out.add(&nf.scale(&t.coeff)).map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}
