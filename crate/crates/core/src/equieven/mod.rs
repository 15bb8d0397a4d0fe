//! The even-dimensional model: the page `H*(BG) ⊗ H*(Conf_ℓ(ℝ^{2n}))` with the
//! derivation `d(x_ij) = E`, its kernel `K`, and the resulting equivariant cohomology
//! for `SO(2n)`, `O(2n)`, `U(n)` and the maximal torus.
//!
//! For `SO(2n)` and `O(2n)` coefficients live in `H*(BSO(2n)) = ℚ[p_1..p_{n−1}, e]` and
//! `E = e`; the `O(2n)` page is the fixed part of the involution `e ↦ −e`, `x_ij ↦ −x_ij`.
//! For `U(n)` coefficients are `ℚ[c_1..c_n]` and `E = c_n`; for the torus `ℚ[q_1..q_n]`
//! and `E = q_1⋯q_n`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::charclasses::{char_class_vars, restriction_map, weyl_group, GroupFamily, GroupSpec, WeylConvention};
use crate::confring::{self, admissible_monomials, ConfElement, Edge, EdgeMonomial};
use crate::error::{input, Error, Result};
use crate::exactalg::{echelon_rows, Exponents, Matrix, Polynomial, Scalar, Subspace, VarSet};

/// Desk-scale bounds for kernel and page computations.
pub const MAX_POINTS: usize = 6;
pub const MAX_HALFDIM: usize = 3;

/// The coefficient ring and Euler-type class of a page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageSpec {
    pub group: GroupSpec,
    pub points: usize,
    vars: VarSet,
    euler: Polynomial,
    /// Index of `e` among the coefficient variables, for the `O(2n)` involution.
    euler_var: Option<usize>,
}

impl PageSpec {
    pub fn new(group: GroupSpec, points: usize) -> Result<Self> {
        group.validate()?;
        let n = group.rank;
        if points > MAX_POINTS || n > MAX_HALFDIM {
            return Err(Error::Capacity(format!(
                "page computations support at most {MAX_POINTS} points and n ≤ {MAX_HALFDIM}"
            )));
        }
        let (vars, euler, euler_var) = match group.family {
            GroupFamily::SoEven | GroupFamily::OEven => {
                let vars = char_class_vars(GroupSpec { family: GroupFamily::SoEven, rank: n });
                let e = Polynomial::var(&vars, n - 1);
                (vars, e, Some(n - 1))
            }
            GroupFamily::U => {
                let vars = char_class_vars(group);
                let c = Polynomial::var(&vars, n - 1);
                (vars, c, None)
            }
            GroupFamily::Torus => {
                let vars = VarSet::torus(n);
                let e = Polynomial::monomial(&vars, vec![1; n], Scalar::one());
                (vars, e, None)
            }
            GroupFamily::SoOdd | GroupFamily::OOdd => {
                return input(format!("{} is not an even-dimensional structure group", group.family.name()))
            }
        };
        Ok(PageSpec { group, points, vars, euler, euler_var })
    }

    pub fn halfdim(&self) -> usize {
        self.group.rank
    }

    /// Ambient dimension `2n` of the configuration space.
    pub fn dim(&self) -> usize {
        2 * self.group.rank
    }

    pub fn coeff_vars(&self) -> &VarSet {
        &self.vars
    }

    /// The class `E` with `d(x_ij) = E`.
    pub fn euler(&self) -> &Polynomial {
        &self.euler
    }

    fn is_orthogonal_quotient(&self) -> bool {
        self.group.family == GroupFamily::OEven
    }

    /// Whether `coefficient monomial ⊗ word of length k` is fixed by the `O(2n)` involution.
    fn c2_fixed(&self, exps: &[u32], edges: usize) -> bool {
        match self.euler_var {
            Some(i) if self.is_orthogonal_quotient() => (exps[i] as usize + edges).is_multiple_of(2),
            _ => true,
        }
    }

    /// Monomial basis of the page in total degree `degree`.
    pub fn basis(&self, degree: u32) -> Vec<(Exponents, EdgeMonomial)> {
        let step = (self.dim() - 1) as u32;
        let mut out = Vec::new();
        for k in 0..self.points.max(1) {
            let fiber = step * k as u32;
            if fiber > degree {
                break;
            }
            let conf = admissible_monomials(self.points, k);
            for exps in self.vars.monomials_of_degree(degree - fiber) {
                if !self.c2_fixed(&exps, k) {
                    continue;
                }
                for m in &conf {
                    out.push((exps.clone(), m.clone()));
                }
            }
        }
        out
    }

    /// Matrix of `d` from total degree `degree` to `degree + 1` in the monomial bases.
    pub fn differential_matrix(&self, degree: u32) -> Matrix {
        let src = self.basis(degree);
        let tgt = self.basis(degree + 1);
        let index: std::collections::HashMap<&(Exponents, EdgeMonomial), usize> =
            tgt.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (col, (exps, word)) in src.iter().enumerate() {
            let coeff = Polynomial::monomial(&self.vars, exps.clone(), Scalar::one());
            let image = &coeff * &self.euler;
            for (s, (rest, sign)) in boundary_terms(word).into_iter().enumerate() {
                let _ = s;
                for (e, c) in image.terms() {
                    let row = index[&(e.clone(), rest.clone())];
                    m[(row, col)] += &(c * &sign);
                }
            }
        }
        m
    }
}

/// `∂(x_{e_1}⋯x_{e_k}) = Σ_s (−1)^{s−1} x_{e_1}⋯x̂_{e_s}⋯x_{e_k}`.
fn boundary_terms(word: &[Edge]) -> Vec<(EdgeMonomial, Scalar)> {
    (0..word.len())
        .map(|s| {
            let mut rest = word.to_vec();
            rest.remove(s);
            let sign = if s % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            (rest, sign)
        })
        .collect()
}

/// An element of the page: polynomial coefficients times admissible monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct PageElement {
    group: GroupSpec,
    points: usize,
    vars: VarSet,
    terms: BTreeMap<EdgeMonomial, Polynomial>,
}

impl PageElement {
    pub fn zero(spec: &PageSpec) -> Self {
        PageElement { group: spec.group, points: spec.points, vars: spec.vars.clone(), terms: BTreeMap::new() }
    }

    /// `coeff ⊗ conf`.
    pub fn tensor(spec: &PageSpec, coeff: &Polynomial, conf: &ConfElement) -> Result<Self> {
        if coeff.vars() != &spec.vars {
            return input("coefficient does not live in the page's coefficient ring");
        }
        if conf.points() != spec.points || conf.dim() != spec.dim() {
            return input("configuration class does not match the page");
        }
        let mut out = Self::zero(spec);
        for (m, c) in conf.terms() {
            out.add_term(m.clone(), &coeff.scale(c));
        }
        Ok(out)
    }

    /// `1 ⊗ x_ij`.
    pub fn generator(spec: &PageSpec, i: usize, j: usize) -> Result<Self> {
        let x = ConfElement::generator(spec.points, spec.dim(), i, j)?;
        Self::tensor(spec, &Polynomial::one(&spec.vars), &x)
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&EdgeMonomial, &Polynomial)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: EdgeMonomial, c: &Polynomial) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    fn check_compatible(&self, other: &PageElement) -> Result<()> {
        if self.group != other.group || self.points != other.points || self.vars != other.vars {
            return input("page elements over different pages");
        }
        Ok(())
    }

    pub fn add(&self, other: &PageElement) -> Result<PageElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PageElement) -> Result<PageElement> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> PageElement {
        let mut out = self.clone();
        out.terms = self.terms.iter().filter(|_| !c.is_zero()).map(|(m, p)| (m.clone(), p.scale(c))).collect();
        out
    }

    /// Degree of each term, if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let step = (2 * self.group.rank - 1) as u32;
        let mut it = self.terms.iter().map(|(m, c)| c.homogeneous_degree().map(|d| d + step * m.len() as u32));
        let first = it.next()??;
        for d in it {
            if d? != first {
                return None;
            }
        }
        Some(first)
    }

    /// Coordinates against a monomial basis of the page.
    pub fn coordinates(&self, basis: &[(Exponents, EdgeMonomial)]) -> Option<Vec<Scalar>> {
        let index: std::collections::HashMap<&(Exponents, EdgeMonomial), usize> =
            basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut v = vec![Scalar::zero(); basis.len()];
        for (m, c) in &self.terms {
            for (e, a) in c.terms() {
                let i = *index.get(&(e.clone(), m.clone()))?;
                v[i] = a.clone();
            }
        }
        Some(v)
    }

    pub fn from_coordinates(spec: &PageSpec, basis: &[(Exponents, EdgeMonomial)], v: &[Scalar]) -> Self {
        let mut out = Self::zero(spec);
        for ((e, m), c) in basis.iter().zip(v) {
            out.add_term(m.clone(), &Polynomial::monomial(&spec.vars, e.clone(), c.clone()));
        }
        out
    }
}

/// The derivation `d_{2n}` with `d(x_ij) = E` and `d(coefficients) = 0`.
pub fn d2n(spec: &PageSpec, a: &PageElement) -> Result<PageElement> {
    if a.group != spec.group || a.points != spec.points {
        return input("element does not belong to this page");
    }
    let mut out = PageElement::zero(spec);
    for (m, c) in &a.terms {
        let ce = c * &spec.euler;
        for (rest, sign) in boundary_terms(m) {
            out.add_term(rest, &ce.scale(&sign));
        }
    }
    Ok(out)
}

/// Product in the page algebra (coefficients have even degree and are central).
pub fn page_product(a: &PageElement, b: &PageElement) -> Result<PageElement> {
    a.check_compatible(b)?;
    let dim = 2 * a.group.rank;
    let mut out = a.clone();
    out.terms.clear();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let x = ConfElement::from_coordinates(a.points, dim, std::slice::from_ref(ma), &[Scalar::one()]);
            let y = ConfElement::from_coordinates(a.points, dim, std::slice::from_ref(mb), &[Scalar::one()]);
            let c = ca * cb;
            for (m, s) in confring::product(&x, &y)?.terms() {
                out.add_term(m.clone(), &c.scale(s));
            }
        }
    }
    Ok(out)
}

/// The `O(2n)` involution `e ↦ −e`, `x_ij ↦ −x_ij`, `p_u` fixed.
pub fn c2_involution(spec: &PageSpec, a: &PageElement) -> Result<PageElement> {
    let Some(ei) = spec.euler_var else {
        return input("the involution is defined on SO(2n)/O(2n) pages only");
    };
    let mut out = PageElement::zero(spec);
    for (m, c) in &a.terms {
        for (e, k) in c.terms() {
            let negate = (e[ei] as usize + m.len()) % 2 == 1;
            let k = if negate { -k } else { k.clone() };
            out.add_term(m.clone(), &Polynomial::monomial(&spec.vars, e.clone(), k));
        }
    }
    Ok(out)
}

/// Applies the restriction to the maximal torus to every coefficient.
pub fn torus_restriction_even(spec: &PageSpec, a: &PageElement) -> Result<(PageSpec, PageElement)> {
    let n = spec.halfdim();
    let source = match spec.group.family {
        GroupFamily::SoEven | GroupFamily::OEven => GroupSpec { family: GroupFamily::SoEven, rank: n },
        GroupFamily::U => spec.group,
        _ => return input("torus restriction needs an SO(2n), O(2n) or U(n) page"),
    };
    let target = GroupSpec { family: GroupFamily::Torus, rank: n };
    let tspec = PageSpec::new(target, spec.points)?;
    let mut out = PageElement::zero(&tspec);
    for (m, c) in &a.terms {
        out.add_term(m.clone(), &restriction_map(source, target, c)?);
    }
    Ok((tspec, out))
}

/// Degreewise kernel of `d_{2n}` on `1 ⊗ H*(Conf_ℓ(ℝ^{2n}))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelSummary {
    pub points: usize,
    pub halfdim: usize,
    pub dims: BTreeMap<u32, usize>,
    pub basis: BTreeMap<u32, Vec<ConfElement>>,
}

/// Matrix of `∂ : H^{k(2n−1)} → H^{(k−1)(2n−1)}` in admissible bases.
fn boundary_matrix(points: usize, k: usize) -> (Vec<EdgeMonomial>, Vec<EdgeMonomial>, Matrix) {
    let src = admissible_monomials(points, k);
    let tgt = if k == 0 { Vec::new() } else { admissible_monomials(points, k - 1) };
    let mut m = Matrix::zeros(tgt.len(), src.len());
    for (col, w) in src.iter().enumerate() {
        for (rest, sign) in boundary_terms(w) {
            let row = tgt.iter().position(|t| t == &rest).expect("faces of admissible monomials are admissible");
            m[(row, col)] += &sign;
        }
    }
    (src, tgt, m)
}

pub fn kernel_k(points: usize, halfdim: usize, max_degree: u32) -> Result<KernelSummary> {
    if halfdim == 0 {
        return input("halfdim must be at least 1");
    }
    if points > MAX_POINTS || halfdim > MAX_HALFDIM {
        return Err(Error::Capacity(format!(
            "kernel computations support at most {MAX_POINTS} points and n ≤ {MAX_HALFDIM}"
        )));
    }
    let dim = 2 * halfdim;
    let step = (dim - 1) as u32;
    let mut dims = BTreeMap::new();
    let mut basis = BTreeMap::new();
    for k in 0..points.max(1) {
        let degree = step * k as u32;
        if degree > max_degree {
            break;
        }
        let (src, _, m) = boundary_matrix(points, k);
        let kernel: Vec<ConfElement> =
            m.kernel_basis().iter().map(|v| ConfElement::from_coordinates(points, dim, &src, v)).collect();
        if !kernel.is_empty() {
            dims.insert(degree, kernel.len());
            basis.insert(degree, kernel);
        }
    }
    Ok(KernelSummary { points, halfdim, dims, basis })
}

impl KernelSummary {
    pub fn dim(&self, degree: u32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    /// The part of `K` in even word length, `K^{C_2}`.
    pub fn c2_invariant(&self) -> KernelSummary {
        let step = (2 * self.halfdim - 1) as u32;
        let keep = |d: &u32| (d / step).is_multiple_of(2);
        KernelSummary {
            points: self.points,
            halfdim: self.halfdim,
            dims: self.dims.iter().filter(|(d, _)| keep(d)).map(|(d, n)| (*d, *n)).collect(),
            basis: self.basis.iter().filter(|(d, _)| keep(d)).map(|(d, b)| (*d, b.clone())).collect(),
        }
    }
}

/// Basis of the equivariant cohomology model in each degree, embedded into the page.
#[derive(Clone, Debug)]
pub struct EvenModel {
    pub spec: PageSpec,
    pub max_degree: u32,
    pub basis: BTreeMap<u32, Vec<PageElement>>,
}

impl EvenModel {
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.max_degree).map(|d| self.basis.get(&d).map_or(0, Vec::len)).collect()
    }
}

/// Coefficient monomials of the model: the page coefficients with the Euler-type class
/// killed when `ℓ ≥ 2`, and all of `H*(BG)` when `ℓ ≤ 1`.
fn model_coefficients(spec: &PageSpec, degree: u32) -> Vec<Polynomial> {
    let vars = &spec.vars;
    let all = vars.monomials_of_degree(degree);
    let e_idx = vars.len() - 1;
    let monos: Vec<Exponents> = match spec.group.family {
        GroupFamily::Torus => {
            // ℚ[q]/(q_1⋯q_n): monomials not divisible by the product.
            all.into_iter().filter(|e| spec.points <= 1 || e.contains(&0)).collect()
        }
        GroupFamily::OEven if spec.points <= 1 => all.into_iter().filter(|e| e[e_idx] % 2 == 0).collect(),
        _ if spec.points <= 1 => all,
        _ => all.into_iter().filter(|e| e[e_idx] == 0).collect(),
    };
    monos.into_iter().map(|e| Polynomial::monomial(vars, e, Scalar::one())).collect()
}

/// `H*_G(Conf_ℓ(ℝ^{2n}))` as `(H*(BG)/(E)) ⊗ K`, with `K^{C_2}` for `O(2n)`.
pub fn equivariant_cohomology_even(group: GroupSpec, points: usize, max_degree: u32) -> Result<EvenModel> {
    let spec = PageSpec::new(group, points)?;
    let kernel = kernel_k(points, group.rank, max_degree)?;
    let kernel = if group.family == GroupFamily::OEven { kernel.c2_invariant() } else { kernel };
    let mut basis: BTreeMap<u32, Vec<PageElement>> = BTreeMap::new();
    for (&kd, ks) in &kernel.basis {
        for cd in 0..=max_degree.saturating_sub(kd) {
            for c in model_coefficients(&spec, cd) {
                for k in ks {
                    basis.entry(kd + cd).or_default().push(PageElement::tensor(&spec, &c, k)?);
                }
            }
        }
    }
    Ok(EvenModel { spec, max_degree, basis })
}

/// Per-degree comparison of `H(page, d)` with the model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageReport {
    pub group: GroupSpec,
    pub points: usize,
    pub page_cohomology: Vec<usize>,
    pub model: Vec<usize>,
    pub matches: bool,
}

/// Dimensions of `H(page, d)` in degrees `0..=max_degree`.
pub fn page_cohomology_dims(spec: &PageSpec, max_degree: u32) -> Vec<usize> {
    let mut prev_rank = 0;
    let mut out = Vec::new();
    for deg in 0..=max_degree {
        let d = spec.differential_matrix(deg);
        let rank = d.rank();
        out.push(d.cols() - rank - prev_rank);
        prev_rank = rank;
    }
    out
}

pub fn verify_page_cohomology(group: GroupSpec, points: usize, max_degree: u32) -> Result<PageReport> {
    let model = equivariant_cohomology_even(group, points, max_degree)?;
    let page = page_cohomology_dims(&model.spec, max_degree);
    let dims = model.dims();
    Ok(PageReport { group, points, matches: page == dims, page_cohomology: page, model: dims })
}

/// Basis of the Weyl-fixed part of the torus page in `degree`, where a Weyl element
/// acts on coefficients by its signed permutation and on `x_ij` by its determinant.
pub fn weyl_fixed_torus_page(
    group: GroupSpec,
    points: usize,
    degree: u32,
    convention: WeylConvention,
) -> Result<Vec<PageElement>> {
    if !matches!(group.family, GroupFamily::SoEven | GroupFamily::OEven | GroupFamily::U) {
        return input("Weyl-fixed torus pages are defined for SO(2n), O(2n) and U(n)");
    }
    let tspec = PageSpec::new(GroupSpec { family: GroupFamily::Torus, rank: group.rank }, points)?;
    let basis = tspec.basis(degree);
    let index: std::collections::HashMap<&(Exponents, EdgeMonomial), usize> =
        basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let weyl = weyl_group(group, convention)?;
    let mut rows = Vec::with_capacity(basis.len());
    for b in &basis {
        let mut row = vec![Scalar::zero(); basis.len()];
        for w in weyl.iter() {
            let (mut negate, q) = w.act_on_exponents(&b.0);
            if w.det(convention) < 0 && b.1.len() % 2 == 1 {
                negate = !negate;
            }
            let slot = &mut row[index[&(q, b.1.clone())]];
            if negate {
                *slot -= &Scalar::one();
            } else {
                *slot += &Scalar::one();
            }
        }
        rows.push(row);
    }
    Ok(echelon_rows(rows, basis.len()).into_iter().map(|v| PageElement::from_coordinates(&tspec, &basis, &v)).collect())
}

/// Dimension of `H(page)` restricted to a subspace of the page given by a spanning set
/// closed under `d`; used for the Weyl-fixed torus page.
pub fn subpage_cohomology_dims(
    spec: &PageSpec,
    sub: impl Fn(u32) -> Vec<PageElement>,
    max_degree: u32,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for deg in 0..=max_degree {
        let here = sub(deg);
        let basis = spec.basis(deg);
        let next = spec.basis(deg + 1);
        let prev = if deg == 0 { Vec::new() } else { sub(deg - 1) };
        let coords = |els: &[PageElement], b: &[(Exponents, EdgeMonomial)]| -> Result<Vec<Vec<Scalar>>> {
            els.iter()
                .map(|e| e.coordinates(b).ok_or_else(|| Error::Verification("element outside page basis".into())))
                .collect()
        };
        let dx: Vec<PageElement> = here.iter().map(|x| d2n(spec, x)).collect::<Result<_>>()?;
        let cycles = {
            let m = Matrix::from_columns(next.len(), &coords(&dx, &next)?);
            m.kernel_basis().len()
        };
        let dprev: Vec<PageElement> = prev.iter().map(|x| d2n(spec, x)).collect::<Result<_>>()?;
        let boundaries = Subspace::span(basis.len(), coords(&dprev, &basis)?).dim();
        out.push(cycles - boundaries);
    }
    Ok(out)
}

impl fmt::Display for PageElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let x = confring::format_monomial(m, "x");
                match (x.is_empty(), c.len() == 1 && c.constant_term().is_one()) {
                    (true, _) => format!("({c})"),
                    (false, true) => x,
                    (false, false) => format!("({c})*{x}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PageElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Page[{}, l={}]({self})", self.group, self.points)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: serde_json::Value,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct PageJson {
    coeff_ring: GroupSpec,
    points: usize,
    dim: usize,
    terms: Vec<TermJson>,
}

impl Serialize for PageElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PageJson {
            coeff_ring: self.group,
            points: self.points,
            dim: 2 * self.group.rank,
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

impl<'de> Deserialize<'de> for PageElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PageJson::deserialize(d)?;
        if raw.dim != 2 * raw.coeff_ring.rank {
            return Err(D::Error::custom("dim must equal twice the group rank"));
        }
        let spec = PageSpec::new(raw.coeff_ring, raw.points).map_err(D::Error::custom)?;
        let mut out = PageElement::zero(&spec);
        for t in raw.terms {
            let c = Polynomial::from_json_in(&t.coeff, &spec.vars).map_err(D::Error::custom)?;
            let word: Vec<(usize, usize)> = t.edges.iter().map(|e| (e[0], e[1])).collect();
            let x = confring::normal_form(raw.points, raw.dim, &word).map_err(D::Error::custom)?;
            let term = PageElement::tensor(&spec, &c, &x).map_err(D::Error::custom)?;
            out = out.add(&term).map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}
