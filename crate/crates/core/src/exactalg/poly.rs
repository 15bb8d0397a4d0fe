//! Multivariate polynomials over ℚ in weight-graded variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Scalar;
use crate::error::{input, Error, Result};

/// A named generator with a positive cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    pub degree: u32,
}

impl Var {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Var { name: name.into(), degree }
    }
}

/// An ordered, shared list of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet(Arc<Vec<Var>>);

/// Exponent vector, one entry per generator of the owning [`VarSet`].
pub type Exponents = Vec<u32>;

impl VarSet {
    pub fn new(vars: Vec<Var>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if v.degree == 0 {
                return input(format!("generator {} has degree 0", v.name));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return input(format!("duplicate generator name {}", v.name));
            }
        }
        Ok(VarSet(Arc::new(vars)))
    }

    /// `q1, …, qn`, each of degree 2.
    pub fn torus(n: usize) -> Self {
        VarSet(Arc::new((1..=n).map(|i| Var::new(format!("q{i}"), 2)).collect()))
    }

    /// A single variable `t` of degree 1, for Poincaré series.
    pub fn series() -> Self {
        VarSet(Arc::new(vec![Var::new("t", 1)]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v.name == name)
    }

    pub fn degree_of(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(self.0.iter()).map(|(e, v)| e * v.degree).sum()
    }

    /// All exponent vectors of weighted degree `degree`, lexicographically descending.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Exponents> {
        fn rec(vars: &[Var], remaining: u32, prefix: &mut Exponents, out: &mut Vec<Exponents>) {
            match vars.split_first() {
                None => {
                    if remaining == 0 {
                        out.push(prefix.clone());
                    }
                }
                Some((v, rest)) => {
                    let max = remaining / v.degree;
                    for e in (0..=max).rev() {
                        prefix.push(e);
                        rec(rest, remaining - e * v.degree, prefix, out);
                        prefix.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        rec(&self.0, degree, &mut Vec::new(), &mut out);
        out
    }

    /// Number of monomials of each degree `0..=max_degree`.
    pub fn hilbert_series(&self, max_degree: u32) -> Vec<usize> {
        let mut counts = vec![0usize; max_degree as usize + 1];
        counts[0] = 1;
        for v in self.0.iter() {
            let d = v.degree as usize;
            for k in d..counts.len() {
                counts[k] += counts[k - d];
            }
        }
        counts
    }
}

/// A polynomial with exact rational coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: VarSet,
    terms: BTreeMap<Exponents, Scalar>,
}

impl Polynomial {
    pub fn zero(vars: &VarSet) -> Self {
        Polynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarSet, c: Scalar) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, Scalar::one())
    }

    /// The `i`-th generator.
    pub fn var(vars: &VarSet, i: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        Self::monomial(vars, exps, Scalar::one())
    }

    pub fn monomial(vars: &VarSet, exps: Exponents, c: Scalar) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn from_terms(vars: &VarSet, terms: impl IntoIterator<Item = (Exponents, Scalar)>) -> Self {
        let mut p = Polynomial::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, &c);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Adds `c · x^exps` in place.
    pub fn add_term(&mut self, exps: Exponents, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Polynomial::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| self.vars.degree_of(e)).max()
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| self.vars.degree_of(e));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Ring map sending generator `i` to `images[i]`.
    pub fn substitute(&self, target: &VarSet, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} generators",
                images.len(),
                self.vars.len()
            )));
        }
        if let Some(bad) = images.iter().find(|p| &p.vars != target) {
            return input(format!("image {bad} lives in a different ring"));
        }
        let mut out = Polynomial::zero(target);
        for (exps, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (img, &e) in images.iter().zip(exps.iter()) {
                if e > 0 {
                    term = &term * &img.pow(e);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Coefficient vector against a list of monomials; `None` if a term falls outside it.
    pub fn coordinates(&self, monomials: &[Exponents]) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); monomials.len()];
        let mut used = 0;
        for (i, m) in monomials.iter().enumerate() {
            if let Some(c) = self.terms.get(m) {
                v[i] = c.clone();
                used += 1;
            }
        }
        (used == self.terms.len()).then_some(v)
    }

    fn assert_same_ring(&self, other: &Polynomial) {
        assert!(self.vars == other.vars, "polynomials over different generator sets");
    }

    fn display_monomial(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .zip(self.vars.vars())
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.name.clone() } else { format!("{}^{}", v.name, e) })
            .collect();
        parts.join("*")
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let mut out = Polynomial::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Display for Polynomial {
    /// Terms by ascending degree, e.g. `1 + 3*t^2 + 2*t^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut order: Vec<(&Exponents, &Scalar)> = self.terms.iter().collect();
        order.sort_by(|(a, _), (b, _)| self.vars.degree_of(a).cmp(&self.vars.degree_of(b)).then_with(|| b.cmp(a)));
        for (k, (exps, c)) in order.into_iter().enumerate() {
            let mono = self.display_monomial(exps);
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: Scalar,
    exps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degrees: Option<Vec<u32>>,
    terms: Vec<TermJson>,
}

/// Degree implied by a conventional generator name: `q*` → 2, `p_u` → 4u, `c_u` → 2u, `t` → 1.
fn default_degree(name: &str) -> Option<u32> {
    let (head, tail) = name.split_at(1);
    let idx = || tail.parse::<u32>().ok().filter(|&u| u >= 1);
    match head {
        "q" => idx().map(|_| 2),
        "p" => idx().map(|u| 4 * u),
        "c" => idx().map(|u| 2 * u),
        "t" if tail.is_empty() => Some(1),
        _ => None,
    }
}

impl Polynomial {
    /// Builds a polynomial from its JSON form, checking it against an expected ring.
    pub fn from_json_in(value: &serde_json::Value, vars: &VarSet) -> Result<Self> {
        let raw: PolyJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Input(format!("polynomial JSON: {e}")))?;
        let names: Vec<&str> = vars.vars().iter().map(|v| v.name.as_str()).collect();
        if raw.vars != names {
            return input(format!("polynomial variables {:?} do not match expected {:?}", raw.vars, names));
        }
        Self::from_raw(raw, vars)
    }

    fn from_raw(raw: PolyJson, vars: &VarSet) -> Result<Self> {
        let mut p = Polynomial::zero(vars);
        for t in raw.terms {
            if t.exps.len() != vars.len() {
                return input("exponent vector length does not match variables");
            }
            p.add_term(t.exps, &t.coeff);
        }
        Ok(p)
    }

    fn to_raw(&self, with_degrees: bool) -> PolyJson {
        PolyJson {
            vars: self.vars.vars().iter().map(|v| v.name.clone()).collect(),
            degrees: with_degrees.then(|| self.vars.vars().iter().map(|v| v.degree).collect()),
            terms: self.terms.iter().map(|(e, c)| TermJson { coeff: c.clone(), exps: e.clone() }).collect(),
        }
    }

    /// JSON form without the degree list (used where the ring is implied by context).
    pub fn to_json_compact(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw(false)).expect("polynomial serializes")
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw(true).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(deserializer)?;
        let degrees = match &raw.degrees {
            Some(d) if d.len() == raw.vars.len() => d.clone(),
            Some(_) => return Err(D::Error::custom("degrees length does not match vars")),
            None => raw
                .vars
                .iter()
                .map(|n| default_degree(n).ok_or_else(|| D::Error::custom(format!("no default degree for {n}"))))
                .collect::<std::result::Result<_, _>>()?,
        };
        let vars = VarSet::new(raw.vars.iter().zip(degrees).map(|(n, d)| Var::new(n.clone(), d)).collect())
            .map_err(D::Error::custom)?;
        Polynomial::from_raw(raw, &vars).map_err(D::Error::custom)
    }
}
