use serde::{Deserialize, Serialize};

use super::{canonical_filtration, page, CochainComplex, FilteredComplex};
use crate::error::{input, Error, Result};
use crate::exactalg::{assert_single_eigenvalue, generalized_eigenspace, Matrix, Quotient, Scalar, Subspace, Vector};

/// The unit `ξ`, the slope `α` and the page index `r` of a purity condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub xi: Scalar,
    pub alpha: Scalar,
    pub r: usize,
}

impl WeightSpec {
    pub fn new(xi: Scalar, alpha: Scalar, r: usize) -> Result<Self> {
        if xi.is_zero() || xi.abs().is_one() {
            return input(format!("xi must differ from 0, 1 and -1, got {xi}"));
        }
        Ok(WeightSpec { xi, alpha, r })
    }

    /// `α((1 − r)i + jr)`.
    pub fn weight(&self, i: i64, j: i64) -> Scalar {
        let r = self.r as i64;
        &self.alpha * &Scalar::from_int((1 - r) * i + j * r)
    }

    /// `ξ^w` when `w` is an integer.
    pub fn eigenvalue(&self, weight: &Scalar) -> Option<Scalar> {
        weight.to_i64().filter(|_| weight.is_integer()).map(|w| self.xi.pow(w))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurityEntry {
    pub i: i64,
    pub j: i64,
    pub weight: Scalar,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurityCertificate {
    pub page: usize,
    pub spec: WeightSpec,
    pub entries: Vec<PurityEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurityViolation {
    pub page: usize,
    pub i: i64,
    pub j: i64,
    pub weight: Scalar,
    pub dim: usize,
    /// `None` when the weight is not an integer and the spot should vanish.
    pub expected_eigenvalue: Option<Scalar>,
    pub factor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PurityOutcome {
    Certificate(PurityCertificate),
    Violation(PurityViolation),
}

impl PurityOutcome {
    pub fn is_pure(&self) -> bool {
        matches!(self, PurityOutcome::Certificate(_))
    }
}

/// Checks `E_{r+1}` against the weights `α((1 − r)i + jr)`.
pub fn purity_check(a: &FilteredComplex, spec: &WeightSpec) -> Result<PurityOutcome> {
    purity_check_at_page(a, spec, spec.r + 1)
}

/// Checks the weights of `spec` on an arbitrary page. Because the spots of later pages
/// are subquotients of earlier ones, passing at some page `ℓ ≤ r + 1` implies passing
/// at `E_{r+1}`.
pub fn purity_check_at_page(a: &FilteredComplex, spec: &WeightSpec, page_index: usize) -> Result<PurityOutcome> {
    if !a.complex().has_phi() {
        return input("purity needs an automorphism phi");
    }
    let e = page(a, page_index);
    let mut entries = Vec::new();
    for spot in e.spots() {
        let weight = spec.weight(spot.i, spot.j);
        let phi = spot.phi.as_ref().expect("phi present on every spot");
        let expected = spec.eigenvalue(&weight);
        // φ is invertible, so asking for eigenvalue 0 reports the whole characteristic polynomial.
        let target = expected.clone().unwrap_or_else(Scalar::zero);
        if let Err(err) = assert_single_eigenvalue(phi, &target) {
            let Error::PurityViolation { factor } = err else {
                return Err(err);
            };
            return Ok(PurityOutcome::Violation(PurityViolation {
                page: page_index,
                i: spot.i,
                j: spot.j,
                weight,
                dim: spot.dim(),
                expected_eigenvalue: expected,
                factor,
            }));
        }
        entries.push(PurityEntry { i: spot.i, j: spot.j, weight, dim: spot.dim() });
    }
    Ok(PurityOutcome::Certificate(PurityCertificate { page: page_index, spec: spec.clone(), entries }))
}

/// The inclusion of `H^n` into `A^n` for one degree, with its checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeWitness {
    pub degree: usize,
    pub cohomology_dim: usize,
    /// `A^n × H^n`, columns are cocycle representatives.
    pub inclusion: Vec<Vec<Scalar>>,
    /// `φ` on `H^n` in the basis of the columns of `inclusion`.
    pub phi_cohomology: Vec<Vec<Scalar>>,
    /// Basis of `d A^{n−1}`.
    pub boundaries: Vec<Vector>,
    /// Completes boundaries and the included cohomology to a basis of `A^n`.
    pub complement: Vec<Vector>,
    pub chain_map: bool,
    pub equivariant: bool,
    pub cohomology_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalityWitness {
    pub spec: WeightSpec,
    pub certificate: PurityCertificate,
    pub degrees: Vec<DegreeWitness>,
}

impl FormalityWitness {
    /// Every degree has a chain map inducing an isomorphism, compatible with `φ`.
    pub fn verified(&self) -> bool {
        self.degrees.iter().all(|d| d.chain_map && d.equivariant && d.cohomology_rank == d.cohomology_dim)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum WitnessOutcome {
    Witness(FormalityWitness),
    Refused(PurityViolation),
}

/// Column-major `vec` of an `r × c` unknown as a flat index.
fn kron_system(blocks: &[(Matrix, Vec<Scalar>)]) -> (Matrix, Vec<Scalar>) {
    let mut m = blocks[0].0.clone();
    let mut rhs = blocks[0].1.clone();
    for (b, r) in &blocks[1..] {
        m = m.vstack(b);
        rhs.extend(r.iter().cloned());
    }
    (m, rhs)
}

fn vec_col_major(m: &Matrix) -> Vec<Scalar> {
    (0..m.cols()).flat_map(|j| m.column(j)).collect()
}

fn unvec_col_major(v: &[Scalar], rows: usize, cols: usize) -> Matrix {
    let columns: Vec<Vector> = (0..cols).map(|j| v[j * rows..(j + 1) * rows].to_vec()).collect();
    Matrix::from_columns(rows, &columns)
}

/// A `φ`-equivariant inclusion of cohomology into `A` for complexes whose cohomology
/// `H^n` is pure of weight `αn` (canonical filtration, `r = 0`).
pub fn formality_witness(complex: &CochainComplex, spec: &WeightSpec) -> Result<WitnessOutcome> {
    if spec.r != 0 {
        return input("formality witnesses are constructed for r = 0 and the canonical filtration only");
    }
    if !complex.has_phi() {
        return input("formality witnesses need an automorphism phi");
    }
    let filtered = canonical_filtration(complex);
    let certificate = match purity_check(&filtered, spec)? {
        PurityOutcome::Violation(v) => return Ok(WitnessOutcome::Refused(v)),
        PurityOutcome::Certificate(c) => c,
    };
    let mut degrees = Vec::new();
    for n in 0..complex.len() {
        let dim = complex.dim(n);
        let phi = complex.phi(n).expect("phi present");
        let cycles = complex.cycles(n);
        let boundaries = complex.boundaries(n);
        let h = Quotient::new(&cycles, &boundaries);
        let hdim = h.dim();
        if hdim == 0 {
            degrees.push(DegreeWitness {
                degree: n,
                cohomology_dim: 0,
                inclusion: vec![Vec::new(); dim],
                phi_cohomology: Vec::new(),
                boundaries: boundaries.basis().to_vec(),
                complement: boundaries.complement_in(&Subspace::full(dim)),
                chain_map: true,
                equivariant: true,
                cohomology_rank: 0,
            });
            continue;
        }
        let lambda = spec
            .eigenvalue(&spec.weight(n as i64, 2 * n as i64))
            .expect("pure nonzero cohomology has an integral weight");
        let phi_h = h.induced(phi, &h).expect("phi preserves cycles and boundaries");

        // Cocycles in the generalized λ-eigenspace of φ.
        let fitting = Subspace::span(dim, generalized_eigenspace(phi, &lambda, dim));
        let zl = cycles.intersection(&fitting);
        let basis = zl.as_columns();
        let m = zl.dim();
        let p_cols: Vec<Vector> =
            zl.basis().iter().map(|b| zl.coordinates(&phi.apply(b)).expect("the Fitting part is φ-stable")).collect();
        let p = Matrix::from_columns(m, &p_cols);
        let c_cols: Vec<Vector> = zl.basis().iter().map(|b| h.class_of(b).expect("cocycle")).collect();
        let c = Matrix::from_columns(hdim, &c_cols);

        // Unknown X (m × h): C X = I and P X = X φ_H.
        let ih = Matrix::identity(hdim);
        let im = Matrix::identity(m);
        let class_eq = ih.kronecker(&c);
        let sylvester = &ih.kronecker(&p) - &phi_h.transpose().kronecker(&im);
        let zeros = vec![Scalar::zero(); sylvester.rows()];
        let (system, rhs) = kron_system(&[(class_eq, vec_col_major(&ih)), (sylvester, zeros)]);
        let Some(x) = system.solve(&rhs)? else {
            return Err(Error::Verification(format!("no φ-equivariant section of cohomology exists in degree {n}")));
        };
        let inclusion = &basis * &unvec_col_major(&x, m, hdim);

        let chain_map = (&complex.d(n) * &inclusion).is_zero();
        let equivariant = phi * &inclusion == &inclusion * &phi_h;
        let classes: Vec<Vector> =
            inclusion.columns().iter().map(|v| h.class_of(v).unwrap_or_else(|| vec![Scalar::zero(); hdim])).collect();
        let cohomology_rank = Matrix::from_columns(hdim, &classes).rank();
        let spanned = boundaries.sum(&Subspace::span(dim, inclusion.columns()));
        degrees.push(DegreeWitness {
            degree: n,
            cohomology_dim: hdim,
            inclusion: inclusion.to_rows(),
            phi_cohomology: phi_h.to_rows(),
            boundaries: boundaries.basis().to_vec(),
            complement: spanned.complement_in(&Subspace::full(dim)),
            chain_map,
            equivariant,
            cohomology_rank,
        });
    }
    Ok(WitnessOutcome::Witness(FormalityWitness { spec: spec.clone(), certificate, degrees }))
}

/// Dimensions of `φ`-equivariant maps `V → V′` and of the first derived term, for
/// `ℚ[φ]`-modules given by the matrices of `φ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomExt {
    pub hom_dim: usize,
    pub ext1_dim: usize,
    /// Basis of the equivariant maps as `dim V′ × dim V` row-major matrices.
    pub hom_basis: Vec<Vec<Vec<Scalar>>>,
}

/// Kernel and cokernel of `X ↦ M′X − XM` on `Hom_ℚ(V, V′)`.
pub fn equivariant_hom_ext(m: &Matrix, m_prime: &Matrix) -> Result<HomExt> {
    if !m.is_square() || !m_prime.is_square() {
        return Err(Error::DimensionMismatch("module structures must be square matrices".into()));
    }
    let (v, w) = (m.rows(), m_prime.rows());
    let op = &Matrix::identity(v).kronecker(m_prime) - &m.transpose().kronecker(&Matrix::identity(w));
    let kernel = op.kernel_basis();
    let rank = op.rank();
    Ok(HomExt {
        hom_dim: kernel.len(),
        ext1_dim: v * w - rank,
        hom_basis: kernel.iter().map(|x| unvec_col_major(x, w, v).to_rows()).collect(),
    })
}
