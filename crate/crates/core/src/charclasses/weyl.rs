use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{GroupFamily, GroupSpec, WeylConvention};
use crate::confring::Permutation;
use crate::error::{input, Error, Result};
use crate::exactalg::{Polynomial, Scalar, VarSet};

/// Largest rank for which Weyl groups are enumerated.
pub const MAX_WEYL_RANK: usize = 5;

/// A signed permutation `(σ, ε, η)` acting by `q_i ↦ ε_i q_{σ(i)}`.
///
/// `η` is the sign on the residual line of an odd orthogonal group; it does not
/// act on the `q_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    pub sigma: Vec<usize>,
    pub eps: Vec<i8>,
    pub eta: i8,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement { sigma: (1..=rank).collect(), eps: vec![1; rank], eta: 1 }
    }

    pub fn new(sigma: Vec<usize>, eps: Vec<i8>, eta: i8) -> Result<Self> {
        Permutation::new(sigma.clone())?;
        if eps.len() != sigma.len() {
            return input("sign vector length differs from permutation length");
        }
        if eps.iter().chain(std::iter::once(&eta)).any(|&s| s != 1 && s != -1) {
            return input("signs must be +1 or -1");
        }
        Ok(WeylElement { sigma, eps, eta })
    }

    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    fn permutation(&self) -> Permutation {
        Permutation::new(self.sigma.clone()).expect("validated permutation")
    }

    /// The product `self · other`, arranged so that acting by it is acting by
    /// `other` first and then by `self`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.rank(), other.rank(), "composing Weyl elements of different rank");
        let sigma = self.permutation().compose(&other.permutation()).images().to_vec();
        let eps = (0..self.rank()).map(|i| other.eps[i] * self.eps[other.sigma[i] - 1]).collect();
        WeylElement { sigma, eps, eta: self.eta * other.eta }
    }

    /// Determinant of the element restricted to the torus block under a convention.
    pub fn det(&self, convention: WeylConvention) -> i8 {
        let prod: i8 = self.eps.iter().product();
        match convention {
            WeylConvention::Standard => prod,
            WeylConvention::Paper => prod * self.permutation().sign() as i8,
        }
    }

    /// `η · det`: `+1` on the special orthogonal part, `-1` on its complement.
    pub fn orientation_sign(&self, convention: WeylConvention) -> i8 {
        self.eta * self.det(convention)
    }

    /// Image of the monomial `q^exps` as `(sign, exps')`.
    pub(crate) fn act_on_exponents(&self, exps: &[u32]) -> (bool, Vec<u32>) {
        let mut out = vec![0; exps.len()];
        let mut negate = false;
        for (i, &e) in exps.iter().enumerate() {
            out[self.sigma[i] - 1] = e;
            if self.eps[i] < 0 && e % 2 == 1 {
                negate = !negate;
            }
        }
        (negate, out)
    }
}

/// Ring automorphism of `ℚ[q_1..q_n]` given by `w`.
pub fn weyl_action(w: &WeylElement, f: &Polynomial) -> Result<Polynomial> {
    if f.vars() != &VarSet::torus(w.rank()) {
        return input(format!("Weyl element of rank {} acts on q1..q{} only", w.rank(), w.rank()));
    }
    let mut out = Polynomial::zero(f.vars());
    for (exps, c) in f.terms() {
        let (negate, img) = w.act_on_exponents(exps);
        out.add_term(img, &if negate { -c } else { c.clone() });
    }
    Ok(out)
}

type Cache = Mutex<HashMap<(GroupSpec, WeylConvention), Arc<Vec<WeylElement>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All elements of the Weyl group of `g`, memoized.
pub fn weyl_group(g: GroupSpec, convention: WeylConvention) -> Result<Arc<Vec<WeylElement>>> {
    g.validate()?;
    if g.rank > MAX_WEYL_RANK {
        return Err(Error::Capacity(format!("Weyl groups are enumerated up to rank {MAX_WEYL_RANK}, got {}", g.rank)));
    }
    let key = (g, convention);
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let elements = Arc::new(enumerate(g, convention));
    cache().lock().expect("cache lock").insert(key, elements.clone());
    Ok(elements)
}

fn enumerate(g: GroupSpec, convention: WeylConvention) -> Vec<WeylElement> {
    let n = g.rank;
    if g.family == GroupFamily::Torus {
        return vec![WeylElement::identity(n)];
    }
    let sign_vectors: Vec<Vec<i8>> = if g.family == GroupFamily::U {
        vec![vec![1; n]]
    } else {
        (0..1u32 << n).map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect()).collect()
    };
    let mut out = Vec::new();
    for sigma in Permutation::all(n) {
        for eps in &sign_vectors {
            let w = WeylElement { sigma: sigma.images().to_vec(), eps: eps.clone(), eta: 1 };
            let det = w.det(convention);
            match g.family {
                GroupFamily::Torus => unreachable!(),
                GroupFamily::U | GroupFamily::OEven => out.push(w),
                GroupFamily::SoEven => {
                    if det == 1 {
                        out.push(w);
                    }
                }
                GroupFamily::SoOdd => out.push(WeylElement { eta: det, ..w }),
                GroupFamily::OOdd => {
                    out.push(WeylElement { eta: -1, ..w.clone() });
                    out.push(w);
                }
            }
        }
    }
    out
}

/// Reynolds average of `f` over the Weyl group.
pub fn reynolds(g: GroupSpec, convention: WeylConvention, f: &Polynomial) -> Result<Polynomial> {
    let group = weyl_group(g, convention)?;
    let mut acc = Polynomial::zero(f.vars());
    for w in group.iter() {
        acc = &acc + &weyl_action(w, f)?;
    }
    Ok(acc.scale(&Scalar::ratio(1, group.len() as i64)))
}
