use super::matrix::{echelon_rows, Matrix, Vector};
use super::Scalar;

/// A linear subspace of ℚ^ambient stored as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, unit_vectors(ambient))
    }

    pub fn span(ambient: usize, vectors: Vec<Vector>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient");
        }
        Subspace { ambient, basis: echelon_rows(vectors, ambient) }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn as_columns(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        echelon_rows(all, self.ambient).len() == self.dim()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, all)
    }

    /// Vectors `a` with `a · w = 0` for every `w` in the subspace.
    pub fn annihilator(&self) -> Vec<Vector> {
        if self.basis.is_empty() {
            return unit_vectors(self.ambient);
        }
        Matrix::from_rows(self.basis.clone(), self.ambient).expect("basis rows").kernel_basis()
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut eqs = self.annihilator();
        eqs.extend(other.annihilator());
        if eqs.is_empty() {
            return Subspace::full(self.ambient);
        }
        let m = Matrix::from_rows(eqs, self.ambient).expect("equation rows");
        Subspace::span(self.ambient, m.kernel_basis())
    }

    /// Image under `m` (an `n × ambient` matrix).
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::span(m.rows(), self.basis.iter().map(|v| m.apply(v)).collect())
    }

    /// `{x ∈ ℚ^{m.cols} : m·x ∈ self}`.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        let eqs = self.annihilator();
        if eqs.is_empty() {
            return Subspace::full(m.cols());
        }
        let a = Matrix::from_rows(eqs, self.ambient).expect("equation rows");
        Subspace::span(m.cols(), (&a * m).kernel_basis())
    }

    /// Vectors from the basis of `within` spanning a complement of `self ∩ within` in `within`.
    pub fn complement_in(&self, within: &Subspace) -> Vec<Vector> {
        let mut acc = self.intersection(within);
        let mut out = Vec::new();
        for v in within.basis() {
            if !acc.contains(v) {
                out.push(v.clone());
                let mut b = acc.basis.clone();
                b.push(v.clone());
                acc = Subspace::span(self.ambient, b);
            }
        }
        out
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        self.as_columns().solve(v).expect("length checked")
    }
}

/// The standard basis of ℚ^n.
pub fn unit_vectors(n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            v
        })
        .collect()
}

/// A chosen basis of a quotient `top / bottom` with `bottom ⊆ top`.
#[derive(Clone, Debug)]
pub struct Quotient {
    bottom: Subspace,
    reps: Vec<Vector>,
    /// Columns: bottom basis followed by representatives.
    solver: Matrix,
}

impl Quotient {
    pub fn new(top: &Subspace, bottom: &Subspace) -> Self {
        debug_assert!(top.contains_space(bottom), "quotient of non-nested spaces");
        let reps = bottom.complement_in(top);
        let mut cols = bottom.basis.clone();
        cols.extend(reps.iter().cloned());
        Quotient { bottom: bottom.clone(), solver: Matrix::from_columns(top.ambient(), &cols), reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[Vector] {
        &self.reps
    }

    pub fn bottom(&self) -> &Subspace {
        &self.bottom
    }

    /// Class of `v ∈ top` in the representative basis; `None` if `v ∉ top`.
    pub fn class_of(&self, v: &[Scalar]) -> Option<Vector> {
        let x = self.solver.solve(v).expect("length checked")?;
        Some(x[self.bottom.dim()..].to_vec())
    }

    /// Matrix of the map induced by `m` from `self` to `target`, where `m` sends
    /// `top` into `target`'s top and `bottom` into `target`'s bottom.
    pub fn induced(&self, m: &Matrix, target: &Quotient) -> Option<Matrix> {
        let cols: Option<Vec<Vector>> = self.reps.iter().map(|r| target.class_of(&m.apply(r))).collect();
        Some(Matrix::from_columns(target.dim(), &cols?))
    }
}
