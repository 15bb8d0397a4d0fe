//! Characteristic polynomials and generalized eigenspaces with rational spectra.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::matrix::{Matrix, Vector};
use super::Scalar;
use crate::error::{Error, Result};

/// Dense univariate polynomial in `t`, coefficients from the constant term upward.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly(Vec<Scalar>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    /// `t - root`.
    pub fn linear(root: &Scalar) -> Self {
        UniPoly(vec![-root, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Quotient by `t - root` when it divides exactly.
    pub fn divide_root(&self, root: &Scalar) -> Option<UniPoly> {
        let n = self.0.len();
        if n == 0 {
            return None;
        }
        let mut q = vec![Scalar::zero(); n - 1];
        let mut carry = Scalar::zero();
        for k in (1..n).rev() {
            carry = &(&carry * root) + &self.0[k];
            q[k - 1] = carry.clone();
        }
        let rem = &(&carry * root) + &self.0[0];
        rem.is_zero().then(|| UniPoly::new(q))
    }

    /// Rational roots found by the rational-root test, without multiplicity.
    ///
    /// Returns `None` when a coefficient is too large to factor by trial division.
    pub fn rational_roots(&self) -> Option<Vec<Scalar>> {
        let mut p = self.clone();
        let mut roots = Vec::new();
        while p.0.first().is_some_and(Scalar::is_zero) {
            p = UniPoly::new(p.0[1..].to_vec());
            if !roots.contains(&Scalar::zero()) {
                roots.push(Scalar::zero());
            }
        }
        if p.degree().unwrap_or(0) == 0 {
            return Some(roots);
        }
        let lcm = p.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.0.iter().map(|c| (c * &Scalar::from(lcm.clone())).numer().clone()).collect();
        let num_divs = divisors(&ints[0])?;
        let den_divs = divisors(ints.last().expect("nonconstant"))?;
        for a in &num_divs {
            for b in &den_divs {
                for sign in [1i64, -1] {
                    let cand = Scalar::from(a.clone() * sign) * Scalar::from(b.clone()).inv().expect("positive");
                    if !roots.contains(&cand) && p.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }
}

const TRIAL_LIMIT: u64 = 2_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if d > TRIAL_LIMIT {
            return None;
        }
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

impl fmt::Display for UniPoly {
    /// Highest power first, e.g. `t^2 - 5*t + 6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
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

/// Characteristic polynomial `det(t·I - m)` by the Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(m: &Matrix) -> UniPoly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        let shifted = &mk + &Matrix::scalar(n, coeffs[n - k + 1].clone());
        mk = m * &shifted;
        coeffs[n - k] = -(mk.trace() * Scalar::ratio(1, k as i64));
    }
    UniPoly::new(coeffs)
}

/// Divides out `(t - λ)` as often as possible; returns the multiplicity and cofactor.
fn strip_root(p: &UniPoly, root: &Scalar) -> (usize, UniPoly) {
    let mut p = p.clone();
    let mut mult = 0;
    while let Some(q) = p.divide_root(root) {
        p = q;
        mult += 1;
    }
    (mult, p)
}

/// Describes the part of `rest` that is not accounted for, preferring a linear factor.
fn offending_factor(rest: &UniPoly) -> String {
    if let Some(roots) = rest.rational_roots() {
        if let Some(r) = roots.first() {
            return format!("({})", UniPoly::linear(r));
        }
    }
    let lead = rest.0.last().cloned().unwrap_or_else(Scalar::one);
    let monic = UniPoly::new(rest.0.iter().map(|c| c / &lead).collect());
    format!("({monic})")
}

/// Basis of the generalized eigenspace `ker (m - λ)^mult`.
pub fn generalized_eigenspace(m: &Matrix, lambda: &Scalar, mult: usize) -> Vec<Vector> {
    let shifted = m - &Matrix::scalar(m.rows(), lambda.clone());
    shifted.pow(mult as u32).kernel_basis()
}

/// Spectral projectors onto the generalized eigenspaces for the supplied eigenvalues.
///
/// Fails with [`Error::PurityViolation`] if the characteristic polynomial has a factor
/// not of the form `t - λ` for a supplied `λ`.
pub fn generalized_eigenspace_projectors(m: &Matrix, eigenvalues: &[Scalar]) -> Result<Vec<Matrix>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("projectors of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut rest = characteristic_polynomial(m);
    let mut mults = Vec::with_capacity(eigenvalues.len());
    for (i, lambda) in eigenvalues.iter().enumerate() {
        if eigenvalues[..i].contains(lambda) {
            return Err(Error::Input(format!("eigenvalue {lambda} listed twice")));
        }
        let (k, q) = strip_root(&rest, lambda);
        mults.push(k);
        rest = q;
    }
    if rest.degree().unwrap_or(0) > 0 {
        return Err(Error::PurityViolation { factor: offending_factor(&rest) });
    }
    let mut columns = Vec::with_capacity(n);
    let mut blocks = Vec::with_capacity(eigenvalues.len());
    for (lambda, &k) in eigenvalues.iter().zip(&mults) {
        let basis = generalized_eigenspace(m, lambda, k);
        debug_assert_eq!(basis.len(), k);
        blocks.push(columns.len()..columns.len() + basis.len());
        columns.extend(basis);
    }
    let s = Matrix::from_columns(n, &columns);
    let s_inv = s.inverse().expect("generalized eigenvectors form a basis");
    Ok(blocks
        .into_iter()
        .map(|range| {
            let sel: Vec<Scalar> =
                (0..n).map(|i| if range.contains(&i) { Scalar::one() } else { Scalar::zero() }).collect();
            &(&s * &Matrix::diagonal(&sel)) * &s_inv
        })
        .collect())
}

/// Checks that every eigenvalue of `m` equals `lambda`; otherwise names the offending factor.
pub fn assert_single_eigenvalue(m: &Matrix, lambda: &Scalar) -> Result<()> {
    if m.rows() == 0 {
        return Ok(());
    }
    let (_, rest) = strip_root(&characteristic_polynomial(m), lambda);
    if rest.degree().unwrap_or(0) > 0 {
        return Err(Error::PurityViolation { factor: offending_factor(&rest) });
    }
    Ok(())
}
