//! Filtered cochain complexes over ℚ with an optional automorphism `φ`, their
//! spectral sequences, Deligne's décalage, purity certificates and formality witnesses.
//!
//! Pages are indexed as `E_r^{−i,j}` for an increasing filtration `W`: `i` is the
//! filtration index and `j − i` the total degree. In Leray–Serre indexing the same
//! spot is `E^{p,q}` with `p = j − 2i`, `q = i`.

mod page;
mod purity;
pub mod random;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::exactalg::{Matrix, Scalar, Subspace, Vector};

pub use page::{page, SpectralPage, Spot};
pub use purity::{
    equivariant_hom_ext, formality_witness, purity_check, purity_check_at_page, DegreeWitness, FormalityWitness,
    HomExt, PurityCertificate, PurityEntry, PurityOutcome, PurityViolation, WeightSpec, WitnessOutcome,
};

/// A bounded cochain complex `A^0 → A^1 → ⋯` with an optional commuting automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    /// `d[n] : A^n → A^{n+1}`.
    d: Vec<Matrix>,
    phi: Option<Vec<Matrix>>,
}

impl CochainComplex {
    /// `d` and `phi` may be shorter than `dims`; missing differentials are zero.
    pub fn new(dims: Vec<usize>, d: Vec<Matrix>, phi: Option<Vec<Matrix>>) -> Result<Self> {
        let top = dims.len();
        let dim = |n: usize| dims.get(n).copied().unwrap_or(0);
        if d.len() > top {
            return input("more differentials than degrees");
        }
        let mut full_d = Vec::with_capacity(top);
        for n in 0..top {
            let m = d.get(n).cloned().unwrap_or_else(|| Matrix::zeros(dim(n + 1), dim(n)));
            if m.rows() != dim(n + 1) || m.cols() != dim(n) {
                return Err(Error::DimensionMismatch(format!(
                    "d in degree {n} must be {}×{}, got {}×{}",
                    dim(n + 1),
                    dim(n),
                    m.rows(),
                    m.cols()
                )));
            }
            full_d.push(m);
        }
        for n in 1..top {
            if !(&full_d[n] * &full_d[n - 1]).is_zero() {
                return input(format!("d∘d ≠ 0 from degree {}", n - 1));
            }
        }
        if let Some(phi) = &phi {
            if phi.len() != top {
                return input("phi must be given in every degree");
            }
            for (n, p) in phi.iter().enumerate() {
                if p.rows() != dim(n) || p.cols() != dim(n) {
                    return Err(Error::DimensionMismatch(format!("phi in degree {n} has the wrong shape")));
                }
                if p.inverse().is_none() {
                    return input(format!("phi is not invertible in degree {n}"));
                }
                if n + 1 < top && &phi[n + 1] * &full_d[n] != &full_d[n] * p {
                    return input(format!("phi does not commute with d in degree {n}"));
                }
            }
        }
        Ok(CochainComplex { dims, d: full_d, phi })
    }

    /// Number of degrees; `A^n = 0` for `n ≥ len`.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d : A^n → A^{n+1}`.
    pub fn d(&self, n: usize) -> Matrix {
        self.d.get(n).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(n + 1), self.dim(n)))
    }

    /// `d : A^{n−1} → A^n`, zero for `n = 0`.
    pub fn d_into(&self, n: usize) -> Matrix {
        if n == 0 {
            Matrix::zeros(self.dim(0), 0)
        } else {
            self.d(n - 1)
        }
    }

    pub fn phi(&self, n: usize) -> Option<&Matrix> {
        self.phi.as_ref().and_then(|p| p.get(n))
    }

    pub fn has_phi(&self) -> bool {
        self.phi.is_some()
    }

    pub fn cycles(&self, n: usize) -> Subspace {
        Subspace::zero(self.dim(n + 1)).preimage(&self.d(n))
    }

    pub fn boundaries(&self, n: usize) -> Subspace {
        Subspace::full(if n == 0 { 0 } else { self.dim(n - 1) }).image(&self.d_into(n))
    }

    pub fn cohomology_dim(&self, n: usize) -> usize {
        self.cycles(n).dim() - self.boundaries(n).dim()
    }
}

/// A cochain complex with an exhaustive non-negative increasing filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    complex: CochainComplex,
    /// `levels[n][i] = W_i A^n`; the last level is all of `A^n`.
    levels: Vec<Vec<Subspace>>,
}

impl FilteredComplex {
    pub fn new(complex: CochainComplex, levels: Vec<Vec<Subspace>>) -> Result<Self> {
        let top = complex.len();
        if levels.len() > top {
            return input("filtration given in more degrees than the complex has");
        }
        let mut full = Vec::with_capacity(top);
        for n in 0..top {
            let dim = complex.dim(n);
            let mut ls = levels.get(n).cloned().unwrap_or_default();
            if ls.iter().any(|w| w.ambient() != dim) {
                return Err(Error::DimensionMismatch(format!(
                    "filtration level in degree {n} has the wrong ambient dimension"
                )));
            }
            if ls.last().is_none_or(|w| w.dim() != dim) {
                ls.push(Subspace::full(dim));
            }
            for i in 1..ls.len() {
                if !ls[i].contains_space(&ls[i - 1]) {
                    return input(format!("filtration is not increasing in degree {n} at level {i}"));
                }
            }
            full.push(ls);
        }
        let out = FilteredComplex { complex, levels: full };
        for n in 0..top {
            let d = out.complex.d(n);
            let phi = out.complex.phi(n);
            for i in 0..out.levels[n].len() {
                let w = &out.levels[n][i];
                if !out.w(n + 1, i as i64).contains_space(&w.image(&d)) {
                    return input(format!("d does not preserve W_{i} in degree {n}"));
                }
                if let Some(p) = phi {
                    if !w.contains_space(&w.image(p)) {
                        return input(format!("phi does not preserve W_{i} in degree {n}"));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Trivial filtration: `W_0 = A`.
    pub fn trivial(complex: CochainComplex) -> Self {
        let levels = (0..complex.len()).map(|n| vec![Subspace::full(complex.dim(n))]).collect();
        FilteredComplex { complex, levels }
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    /// `W_i A^n`, with `W_i = 0` for `i < 0` and `W_i = A^n` beyond the last stored level.
    pub fn w(&self, n: usize, i: i64) -> Subspace {
        let dim = self.complex.dim(n);
        if i < 0 {
            return Subspace::zero(dim);
        }
        match self.levels.get(n) {
            Some(ls) => ls.get(i as usize).cloned().unwrap_or_else(|| Subspace::full(dim)),
            None => Subspace::zero(dim),
        }
    }

    pub fn levels(&self, n: usize) -> &[Subspace] {
        self.levels.get(n).map_or(&[], Vec::as_slice)
    }

    /// Smallest `N` with `W_N = A` in every degree.
    pub fn filtration_length(&self) -> usize {
        (0..self.complex.len())
            .map(|n| {
                let ls = &self.levels[n];
                let dim = self.complex.dim(n);
                ls.iter().position(|w| w.dim() == dim).unwrap_or(ls.len())
            })
            .max()
            .unwrap_or(0)
    }
}

/// `τ_i A^n = A^n` for `n < i`, `ker d` for `n = i`, `0` for `n > i`.
pub fn canonical_filtration(complex: &CochainComplex) -> FilteredComplex {
    let levels = (0..complex.len())
        .map(|n| {
            let mut ls = vec![Subspace::zero(complex.dim(n)); n];
            ls.push(complex.cycles(n));
            ls.push(Subspace::full(complex.dim(n)));
            ls
        })
        .collect();
    FilteredComplex { complex: complex.clone(), levels }
}

/// `Dec W_i A^n = W_{i−n} A^n ∩ d^{-1}(W_{i−n−1} A^{n+1})`.
pub fn decalage(a: &FilteredComplex) -> FilteredComplex {
    let length = a.filtration_length() as i64;
    let complex = a.complex.clone();
    let levels = (0..complex.len())
        .map(|n| {
            let d = complex.d(n);
            let shift = n as i64;
            (0..=shift + length + 1)
                .map(|i| {
                    let here = a.w(n, i - shift);
                    let there = a.w(n + 1, i - shift - 1).preimage(&d);
                    here.intersection(&there)
                })
                .collect()
        })
        .collect();
    FilteredComplex { complex, levels }
}

type RowMajor = Vec<Vec<Scalar>>;

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    degrees: BTreeMap<String, usize>,
    #[serde(default)]
    d: BTreeMap<String, RowMajor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    filtration: Option<BTreeMap<String, Vec<Vec<Vector>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<BTreeMap<String, RowMajor>>,
}

fn degree_key(s: &str) -> Result<usize> {
    s.parse::<usize>().map_err(|_| Error::Input(format!("degree key {s:?} is not a non-negative integer")))
}

fn matrix_from_rows(rows: RowMajor, nrows: usize, ncols: usize, what: &str) -> Result<Matrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch(format!("{what} must be {nrows}×{ncols}")));
    }
    Matrix::from_rows(rows, ncols)
}

impl ComplexJson {
    fn into_filtered(self) -> Result<FilteredComplex> {
        let mut dims_map = BTreeMap::new();
        for (k, v) in self.degrees {
            dims_map.insert(degree_key(&k)?, v);
        }
        let len = dims_map.keys().next_back().map_or(0, |k| k + 1);
        let dims: Vec<usize> = (0..len).map(|n| dims_map.get(&n).copied().unwrap_or(0)).collect();
        let dim = |n: usize| dims_map.get(&n).copied().unwrap_or(0);
        let mut d = vec![None; len];
        for (k, rows) in self.d {
            let n = degree_key(&k)?;
            if n >= len {
                return input(format!("differential given in degree {n} beyond the complex"));
            }
            d[n] = Some(matrix_from_rows(rows, dim(n + 1), dim(n), &format!("d in degree {n}"))?);
        }
        let d: Vec<Matrix> =
            d.into_iter().enumerate().map(|(n, m)| m.unwrap_or_else(|| Matrix::zeros(dim(n + 1), dim(n)))).collect();
        let phi = match self.phi {
            None => None,
            Some(map) => {
                let mut phi: Vec<Matrix> = (0..len).map(|n| Matrix::identity(dim(n))).collect();
                for (k, rows) in map {
                    let n = degree_key(&k)?;
                    if n >= len {
                        return input(format!("phi given in degree {n} beyond the complex"));
                    }
                    phi[n] = matrix_from_rows(rows, dim(n), dim(n), &format!("phi in degree {n}"))?;
                }
                Some(phi)
            }
        };
        let complex = CochainComplex::new(dims, d, phi)?;
        match self.filtration {
            None => Ok(FilteredComplex::trivial(complex)),
            Some(map) => {
                let mut levels = vec![Vec::new(); len];
                for (k, ls) in map {
                    let n = degree_key(&k)?;
                    if n >= len {
                        return input(format!("filtration given in degree {n} beyond the complex"));
                    }
                    for cols in ls {
                        if cols.iter().any(|c| c.len() != dim(n)) {
                            return Err(Error::DimensionMismatch(format!(
                                "filtration vector in degree {n} has the wrong length"
                            )));
                        }
                        levels[n].push(Subspace::span(dim(n), cols));
                    }
                }
                FilteredComplex::new(complex, levels)
            }
        }
    }

    fn from_filtered(a: &FilteredComplex, with_filtration: bool) -> Self {
        let c = &a.complex;
        let len = c.len();
        ComplexJson {
            degrees: (0..len).map(|n| (n.to_string(), c.dim(n))).collect(),
            d: (0..len).filter(|&n| n + 1 < len).map(|n| (n.to_string(), c.d(n).to_rows())).collect(),
            filtration: with_filtration.then(|| {
                (0..len).map(|n| (n.to_string(), a.levels[n].iter().map(|w| w.basis().to_vec()).collect())).collect()
            }),
            phi: c.phi.as_ref().map(|p| p.iter().enumerate().map(|(n, m)| (n.to_string(), m.to_rows())).collect()),
        }
    }
}

impl Serialize for FilteredComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson::from_filtered(self, true).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FilteredComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ComplexJson::deserialize(d)?.into_filtered().map_err(serde::de::Error::custom)
    }
}

impl Serialize for CochainComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson::from_filtered(&FilteredComplex::trivial(self.clone()), false).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CochainComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = ComplexJson::deserialize(d)?.into_filtered().map_err(serde::de::Error::custom)?;
        Ok(f.complex)
    }
}
