use std::collections::BTreeMap;

use serde::Serialize;

use super::FilteredComplex;
use crate::exactalg::{Matrix, Quotient, Subspace};

/// One nonzero spot `E_r^{−i,j}` of a page.
#[derive(Clone, Debug)]
pub struct Spot {
    pub i: i64,
    pub j: i64,
    quotient: Quotient,
    /// `φ` on this spot, in the basis of the quotient representatives.
    pub phi: Option<Matrix>,
}

impl Spot {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn total_degree(&self) -> i64 {
        self.j - self.i
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }
}

/// The page `E_r` with its differential `d_r : E_r^{−i,j} → E_r^{−i+r, j−r+1}`.
#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub r: usize,
    spots: BTreeMap<(i64, i64), Spot>,
    differentials: BTreeMap<(i64, i64), Matrix>,
}

#[derive(Serialize)]
struct SpotJson {
    i: i64,
    j: i64,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi: Option<Vec<Vec<crate::Scalar>>>,
}

#[derive(Serialize)]
struct PageJson {
    r: usize,
    spots: Vec<SpotJson>,
    differentials: Vec<DiffJson>,
}

#[derive(Serialize)]
struct DiffJson {
    from: [i64; 2],
    to: [i64; 2],
    matrix: Vec<Vec<crate::Scalar>>,
}

impl SpectralPage {
    pub fn dim(&self, i: i64, j: i64) -> usize {
        self.spots.get(&(i, j)).map_or(0, Spot::dim)
    }

    /// Nonzero spots in `(i, j)` order.
    pub fn spots(&self) -> impl Iterator<Item = &Spot> {
        self.spots.values()
    }

    /// `(i, j) ↦ dim` for the nonzero spots.
    pub fn dims(&self) -> BTreeMap<(i64, i64), usize> {
        self.spots.iter().map(|(k, s)| (*k, s.dim())).collect()
    }

    /// Target spot of `d_r` leaving `(i, j)`.
    pub fn target(&self, i: i64, j: i64) -> (i64, i64) {
        let r = self.r as i64;
        (i - r, j - r + 1)
    }

    /// Matrix of `d_r` leaving `(i, j)`, if both ends are nonzero.
    pub fn differential(&self, i: i64, j: i64) -> Option<&Matrix> {
        self.differentials.get(&(i, j))
    }

    /// Dimensions of `H(E_r, d_r)` at every spot.
    pub fn cohomology_dims(&self) -> BTreeMap<(i64, i64), usize> {
        let r = self.r as i64;
        let mut out = BTreeMap::new();
        for (&(i, j), s) in &self.spots {
            let outgoing = self.differentials.get(&(i, j)).map_or(0, Matrix::rank);
            let incoming = self.differentials.get(&(i + r, j + r - 1)).map_or(0, Matrix::rank);
            let h = s.dim() - outgoing - incoming;
            if h > 0 {
                out.insert((i, j), h);
            }
        }
        out
    }

    /// Sum of dimensions in total degree `n`.
    pub fn total_dim(&self, n: i64) -> usize {
        self.spots.values().filter(|s| s.total_degree() == n).map(Spot::dim).sum()
    }

    /// Whether `d_r ∘ d_r = 0` on every spot.
    pub fn squares_to_zero(&self) -> bool {
        self.differentials.iter().all(|(&(i, j), m)| {
            let (ti, tj) = self.target(i, j);
            match self.differentials.get(&(ti, tj)) {
                Some(next) => (next * m).is_zero(),
                None => true,
            }
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let page = PageJson {
            r: self.r,
            spots: self
                .spots
                .values()
                .map(|s| SpotJson { i: s.i, j: s.j, dim: s.dim(), phi: s.phi.as_ref().map(Matrix::to_rows) })
                .collect(),
            differentials: self
                .differentials
                .iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(&(i, j), m)| DiffJson {
                    from: [i, j],
                    to: {
                        let (a, b) = self.target(i, j);
                        [a, b]
                    },
                    matrix: m.to_rows(),
                })
                .collect(),
        };
        serde_json::to_value(page).expect("page serializes")
    }
}

/// `Z_s^p A^n = W_p A^n ∩ d^{-1}(W_{p−s} A^{n+1})`, with `Z_s = W_p` for `s ≤ 0`.
fn z(a: &FilteredComplex, s: i64, p: i64, n: usize) -> Subspace {
    let here = a.w(n, p);
    if s <= 0 {
        return here;
    }
    here.intersection(&a.w(n + 1, p - s).preimage(&a.complex().d(n)))
}

/// `E_r^{p,n} = Z_r^p / (Z_{r−1}^{p−1} + d Z_{r−1}^{p+r−1})` in filtration `p`, total degree `n`.
fn quotient(a: &FilteredComplex, r: i64, p: i64, n: usize) -> Quotient {
    let top = z(a, r, p, n);
    let mut bottom = z(a, r - 1, p - 1, n);
    if n > 0 {
        let from = z(a, r - 1, p + r - 1, n - 1);
        bottom = bottom.sum(&from.image(&a.complex().d(n - 1)));
    }
    Quotient::new(&top, &bottom)
}

/// The `r`-th page of the spectral sequence of `a`.
pub fn page(a: &FilteredComplex, r: usize) -> SpectralPage {
    let complex = a.complex();
    let length = a.filtration_length() as i64;
    let ri = r as i64;
    let mut quotients: BTreeMap<(i64, usize), Quotient> = BTreeMap::new();
    for n in 0..complex.len() {
        for p in 0..=length {
            let q = quotient(a, ri, p, n);
            if q.dim() > 0 {
                quotients.insert((p, n), q);
            }
        }
    }
    let mut spots = BTreeMap::new();
    let mut differentials = BTreeMap::new();
    for (&(p, n), q) in &quotients {
        let key = (p, n as i64 + p);
        if let Some(target) = quotients.get(&(p - ri, n + 1)) {
            let m = q.induced(&complex.d(n), target).expect("d maps Z_r into Z_r and boundaries into boundaries");
            differentials.insert(key, m);
        }
        let phi = complex.phi(n).map(|f| q.induced(f, q).expect("phi preserves the filtration"));
        spots.insert(key, Spot { i: p, j: key.1, quotient: q.clone(), phi });
    }
    SpectralPage { r, spots, differentials }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Scalar;
    use crate::specseq::{canonical_filtration, decalage, CochainComplex};

    fn q(x: i64) -> Scalar {
        Scalar::from_int(x)
    }

    #[test]
    fn trivial_filtration_pages() {
        let c = CochainComplex::new(
            vec![1, 2, 1],
            vec![Matrix::from_ints(&[&[1], &[0]]), Matrix::from_ints(&[&[0, 1]])],
            None,
        )
        .unwrap();
        let a = FilteredComplex::trivial(c);
        let e0 = page(&a, 0);
        assert_eq!(e0.dims(), BTreeMap::from([((0, 0), 1), ((0, 1), 2), ((0, 2), 1)]));
        assert!(e0.squares_to_zero());
        assert!(page(&a, 1).dims().is_empty());
    }

    #[test]
    fn two_step_filtration_of_acyclic_line() {
        // ℚ → ℚ with d = id, W_0 A^1 = A^1, W_0 A^0 = 0.
        let c = CochainComplex::new(vec![1, 1], vec![Matrix::from_ints(&[&[1]])], None).unwrap();
        let a =
            FilteredComplex::new(c, vec![vec![Subspace::zero(1), Subspace::full(1)], vec![Subspace::full(1)]]).unwrap();
        let e1 = page(&a, 1);
        assert_eq!(e1.dims(), BTreeMap::from([((0, 1), 1), ((1, 1), 1)]));
        assert_eq!(e1.differential(1, 1).unwrap().rank(), 1);
        assert!(page(&a, 2).dims().is_empty());
    }

    #[test]
    fn phi_descends_to_pages() {
        let c = CochainComplex::new(
            vec![1, 0, 1],
            vec![],
            Some(vec![Matrix::from_ints(&[&[1]]), Matrix::zeros(0, 0), Matrix::from_ints(&[&[9]])]),
        )
        .unwrap();
        let e1 = page(&canonical_filtration(&c), 1);
        let spot = e1.spots().find(|s| s.i == 2).unwrap();
        assert_eq!(spot.j, 4);
        assert_eq!(spot.phi.as_ref().unwrap()[(0, 0)], q(9));
    }

    #[test]
    fn decalage_shifts_e2_to_e1() {
        let d0 = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        let d1 = Matrix::from_ints(&[&[0, 1]]);
        let c = CochainComplex::new(vec![2, 2, 1], vec![d0, d1], None).unwrap();
        let levels = vec![
            vec![Subspace::span(2, vec![vec![q(0), q(1)]]), Subspace::full(2)],
            vec![Subspace::span(2, vec![vec![q(1), q(0)]]), Subspace::full(2)],
            vec![Subspace::zero(1), Subspace::full(1)],
        ];
        let a = FilteredComplex::new(c, levels).unwrap();
        let dec = decalage(&a);
        let shifted: BTreeMap<(i64, i64), usize> =
            page(&dec, 1).dims().into_iter().map(|((i, j), d)| ((2 * i - j, i), d)).collect();
        assert_eq!(shifted, page(&a, 2).dims());
    }
}
