//! Rational cohomology of classifying spaces of tori, `SO`, `O` and `U`, their Weyl
//! groups as signed permutations, invariant subrings of `ℚ[q_1..q_n]` and restriction maps.

mod weyl;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use weyl::{reynolds, weyl_action, weyl_group, WeylElement, MAX_WEYL_RANK};

use crate::error::{input, Error, Result};
use crate::exactalg::{echelon_rows, Polynomial, Scalar, Var, VarSet};

/// Structure group families, all of rank `n` (torus rank).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupFamily {
    /// `𝕋ⁿ`.
    Torus,
    /// `SO(2n+1)`.
    SoOdd,
    /// `O(2n+1)`.
    OOdd,
    /// `SO(2n)`.
    SoEven,
    /// `O(2n)`.
    OEven,
    /// `U(n)`.
    U,
}

impl GroupFamily {
    pub fn name(self) -> &'static str {
        match self {
            GroupFamily::Torus => "torus",
            GroupFamily::SoOdd => "so_odd",
            GroupFamily::OOdd => "o_odd",
            GroupFamily::SoEven => "so_even",
            GroupFamily::OEven => "o_even",
            GroupFamily::U => "u",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: GroupFamily,
    pub rank: usize,
}

impl GroupSpec {
    pub fn new(family: GroupFamily, rank: usize) -> Result<Self> {
        let g = GroupSpec { family, rank };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 {
            return input("group rank must be at least 1");
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank;
        match self.family {
            GroupFamily::Torus => write!(f, "T^{n}"),
            GroupFamily::SoOdd => write!(f, "SO({})", 2 * n + 1),
            GroupFamily::OOdd => write!(f, "O({})", 2 * n + 1),
            GroupFamily::SoEven => write!(f, "SO({})", 2 * n),
            GroupFamily::OEven => write!(f, "O({})", 2 * n),
            GroupFamily::U => write!(f, "U({n})"),
        }
    }
}

/// Sign rule cutting the special orthogonal Weyl group out of the signed permutations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeylConvention {
    /// `ε_1⋯ε_n = 1`: block permutations have determinant one.
    #[default]
    Standard,
    /// `sign(σ)·ε_1⋯ε_n = 1`.
    Paper,
}

impl FromStr for WeylConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(WeylConvention::Standard),
            "paper" => Ok(WeylConvention::Paper),
            _ => input(format!("unknown Weyl convention {s:?}")),
        }
    }
}

/// Generators of `H*(BG)`: `q_u` (2), `p_u` (4u), `e` (2n), `c_u` (2u).
pub fn char_class_vars(g: GroupSpec) -> VarSet {
    let n = g.rank;
    let pont = |k: usize| (1..=k).map(|u| Var::new(format!("p{u}"), 4 * u as u32));
    let vars: Vec<Var> = match g.family {
        GroupFamily::Torus => return VarSet::torus(n),
        GroupFamily::SoOdd | GroupFamily::OOdd | GroupFamily::OEven => pont(n).collect(),
        GroupFamily::SoEven => pont(n - 1).chain(std::iter::once(Var::new("e", 2 * n as u32))).collect(),
        GroupFamily::U => (1..=n).map(|u| Var::new(format!("c{u}"), 2 * u as u32)).collect(),
    };
    VarSet::new(vars).expect("distinct generator names")
}

/// `e_u(xs)`, the `u`-th elementary symmetric polynomial.
pub fn elementary_symmetric(xs: &[Polynomial], u: usize, vars: &VarSet) -> Polynomial {
    // e_k of the first m inputs, updated one input at a time.
    let mut e = vec![Polynomial::zero(vars); u + 1];
    e[0] = Polynomial::one(vars);
    for x in xs {
        for k in (1..=u).rev() {
            e[k] = &e[k] + &(&e[k - 1] * x);
        }
    }
    e.swap_remove(u)
}

/// Images of the generators of `H*(BG)` in `ℚ[q_1..q_n]`.
pub fn torus_images(g: GroupSpec) -> Vec<Polynomial> {
    let torus = VarSet::torus(g.rank);
    let qs: Vec<Polynomial> = (0..g.rank).map(|i| Polynomial::var(&torus, i)).collect();
    let squares: Vec<Polynomial> = qs.iter().map(|q| q.pow(2)).collect();
    let euler = qs.iter().fold(Polynomial::one(&torus), |acc, q| &acc * q);
    let n = g.rank;
    match g.family {
        GroupFamily::Torus => qs,
        GroupFamily::SoOdd | GroupFamily::OOdd | GroupFamily::OEven => {
            (1..=n).map(|u| elementary_symmetric(&squares, u, &torus)).collect()
        }
        GroupFamily::SoEven => {
            (1..n).map(|u| elementary_symmetric(&squares, u, &torus)).chain(std::iter::once(euler)).collect()
        }
        GroupFamily::U => (1..=n).map(|u| elementary_symmetric(&qs, u, &torus)).collect(),
    }
}

/// The map `H*(B source) → H*(B target)` for the supported pairs.
pub fn restriction_map(source: GroupSpec, target: GroupSpec, f: &Polynomial) -> Result<Polynomial> {
    source.validate()?;
    target.validate()?;
    let src_vars = char_class_vars(source);
    if f.vars() != &src_vars {
        return input(format!("polynomial does not live in H*(B{source})"));
    }
    let tgt_vars = char_class_vars(target);
    let images: Vec<Polynomial> = match (source.family, target.family) {
        (_, GroupFamily::Torus) if source.rank == target.rank => torus_images(source),
        (GroupFamily::OEven, GroupFamily::SoEven) if source.rank == target.rank => {
            let n = source.rank;
            let mut imgs: Vec<Polynomial> = (0..n - 1).map(|i| Polynomial::var(&tgt_vars, i)).collect();
            imgs.push(Polynomial::var(&tgt_vars, n - 1).pow(2));
            imgs
        }
        (GroupFamily::SoEven, GroupFamily::SoOdd) if source.rank == target.rank + 1 => {
            let mut imgs: Vec<Polynomial> = (0..target.rank).map(|i| Polynomial::var(&tgt_vars, i)).collect();
            imgs.push(Polynomial::zero(&tgt_vars));
            imgs
        }
        _ => return input(format!("no restriction map from B{source} to B{target}")),
    };
    f.substitute(&tgt_vars, &images)
}

/// Echelonized basis of the Weyl invariants of `ℚ[q_1..q_n]` in `degree`.
pub fn invariant_basis(g: GroupSpec, degree: u32, convention: WeylConvention) -> Result<Vec<Polynomial>> {
    let group = weyl_group(g, convention)?;
    let vars = VarSet::torus(g.rank);
    let monomials = vars.monomials_of_degree(degree);
    let index: std::collections::HashMap<&Vec<u32>, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::with_capacity(monomials.len());
    for m in &monomials {
        let mut row = vec![Scalar::zero(); monomials.len()];
        for w in group.iter() {
            let (negate, img) = w.act_on_exponents(m);
            let slot = &mut row[index[&img]];
            if negate {
                *slot -= &Scalar::one();
            } else {
                *slot += &Scalar::one();
            }
        }
        rows.push(row);
    }
    Ok(echelon_rows(rows, monomials.len())
        .into_iter()
        .map(|v| Polynomial::from_terms(&vars, monomials.iter().cloned().zip(v)))
        .collect())
}

/// Dimensions of the invariant ring in degrees `0..=max_degree`.
pub fn invariant_hilbert_series(g: GroupSpec, max_degree: u32, convention: WeylConvention) -> Result<Vec<usize>> {
    (0..=max_degree).map(|d| invariant_basis(g, d, convention).map(|b| b.len())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(family: GroupFamily, rank: usize) -> GroupSpec {
        GroupSpec::new(family, rank).unwrap()
    }

    #[test]
    fn invariant_examples() {
        let std = WeylConvention::Standard;
        let b = invariant_basis(g(GroupFamily::SoOdd, 2), 4, std).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].to_string(), "q1^2 + q2^2");
        let b = invariant_basis(g(GroupFamily::SoEven, 2), 4, std).unwrap();
        let shown: Vec<String> = b.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["q1^2 + q2^2", "q1*q2"]);
        let b = invariant_basis(g(GroupFamily::OEven, 2), 4, std).unwrap();
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn restriction_examples() {
        let o4 = g(GroupFamily::OEven, 2);
        let so4 = g(GroupFamily::SoEven, 2);
        let so3 = g(GroupFamily::SoOdd, 1);
        let t2 = g(GroupFamily::Torus, 2);
        let p2 = Polynomial::var(&char_class_vars(o4), 1);
        assert_eq!(restriction_map(o4, so4, &p2).unwrap().to_string(), "e^2");
        let e = Polynomial::var(&char_class_vars(so4), 1);
        assert!(restriction_map(so4, so3, &e).unwrap().is_zero());
        assert_eq!(restriction_map(so4, t2, &e).unwrap().to_string(), "q1*q2");
        let p1 = Polynomial::var(&char_class_vars(so4), 0);
        assert_eq!(restriction_map(so4, t2, &p1).unwrap().to_string(), "q1^2 + q2^2");
        assert!(restriction_map(t2, so4, &Polynomial::var(&VarSet::torus(2), 0)).is_err());
    }

    #[test]
    fn torus_restriction_factors_through_so() {
        for n in 1..=3 {
            let o = g(GroupFamily::OEven, n);
            let so = g(GroupFamily::SoEven, n);
            let t = g(GroupFamily::Torus, n);
            let vars = char_class_vars(o);
            for i in 0..n {
                let x = Polynomial::var(&vars, i);
                let via = restriction_map(so, t, &restriction_map(o, so, &x).unwrap()).unwrap();
                assert_eq!(via, restriction_map(o, t, &x).unwrap());
            }
        }
    }

    #[test]
    fn chern_classes_restrict_to_elementary_symmetric() {
        let u3 = g(GroupFamily::U, 3);
        let c2 = Polynomial::var(&char_class_vars(u3), 1);
        let img = restriction_map(u3, g(GroupFamily::Torus, 3), &c2).unwrap();
        assert_eq!(img.to_string(), "q1*q2 + q1*q3 + q2*q3");
    }

    #[test]
    fn serde_forms() {
        let s = serde_json::to_string(&g(GroupFamily::SoOdd, 2)).unwrap();
        assert_eq!(s, r#"{"family":"so_odd","rank":2}"#);
        let w = WeylElement::new(vec![2, 1], vec![1, -1], 1).unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"sigma":[2,1],"eps":[1,-1],"eta":1}"#);
    }
}
