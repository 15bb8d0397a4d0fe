mod common;

use common::{convolve, polynomial_ring_series};
use equiconf::charclasses::{GroupFamily, GroupSpec, WeylConvention};
use equiconf::confring::{self, admissible_monomials};
use equiconf::equieven::{
    c2_involution, d2n, equivariant_cohomology_even, kernel_k, page_cohomology_dims, page_product,
    subpage_cohomology_dims, torus_restriction_even, verify_page_cohomology, weyl_fixed_torus_page, PageElement,
    PageSpec,
};
use equiconf::exactalg::Subspace;
use equiconf::Scalar;

fn g(family: GroupFamily, rank: usize) -> GroupSpec {
    GroupSpec::new(family, rank).unwrap()
}

#[test]
fn kernel_is_closed_under_products() {
    for points in 2..=4 {
        let k = kernel_k(points, 2, 20).unwrap();
        let all: Vec<_> = k.basis.values().flatten().cloned().collect();
        for a in &all {
            for b in &all {
                let ab = confring::product(a, b).unwrap();
                let Some(deg) = ab.homogeneous_degree() else { continue };
                let edges = deg / 3;
                let monos = admissible_monomials(points, edges);
                let span = Subspace::span(
                    monos.len(),
                    k.basis
                        .get(&(deg as u32))
                        .map_or(Vec::new(), |b| b.iter().map(|e| e.coordinates(&monos).unwrap()).collect()),
                );
                assert!(span.contains(&ab.coordinates(&monos).unwrap()), "points={points}");
            }
        }
    }
}

#[test]
fn kernel_series_is_half_the_fiber() {
    // ∂ is acyclic for ℓ ≥ 2, so dim K^{(k)} alternates out of the Poincaré coefficients.
    for points in 2..=5 {
        let k = kernel_k(points, 2, 30).unwrap();
        let poincare = common::product_series(points, 1, points);
        let mut expected = 0i64;
        for (e, &p) in poincare.iter().enumerate().take(points) {
            expected = p as i64 - expected;
            assert_eq!(k.dim(3 * e as u32) as i64, expected, "points={points} e={e}");
        }
    }
}

#[test]
fn c2_invariants_two_ways() {
    // Even word length versus fixed points of the involution on 1 ⊗ K.
    for points in 2..=4 {
        let o = PageSpec::new(g(GroupFamily::SoEven, 2), points).unwrap();
        let k = kernel_k(points, 2, 20).unwrap();
        let even = k.c2_invariant();
        for (&deg, basis) in &k.basis {
            let one = equiconf::Polynomial::one(o.coeff_vars());
            let els: Vec<PageElement> = basis.iter().map(|x| PageElement::tensor(&o, &one, x).unwrap()).collect();
            let fixed = els.iter().filter(|e| &c2_involution(&o, e).unwrap() == *e).count();
            let negated = els.iter().filter(|e| c2_involution(&o, e).unwrap() == e.scale(&-Scalar::one())).count();
            assert_eq!(fixed + negated, els.len());
            assert_eq!(fixed, even.dim(deg));
        }
    }
}

#[test]
fn models_match_page_cohomology() {
    for family in [GroupFamily::SoEven, GroupFamily::OEven, GroupFamily::U] {
        for points in 0..=4 {
            let r = verify_page_cohomology(g(family, 2), points, 12).unwrap();
            assert!(r.matches, "{family:?} l={points}: {r:?}");
        }
    }
    let r = verify_page_cohomology(g(GroupFamily::SoEven, 3), 3, 12).unwrap();
    assert!(r.matches, "{r:?}");
}

#[test]
fn model_series_are_coefficients_times_kernel() {
    let k = kernel_k(3, 2, 16).unwrap();
    let kseries: Vec<usize> = (0..=16).map(|d| k.dim(d)).collect();
    let so = equivariant_cohomology_even(g(GroupFamily::SoEven, 2), 3, 16).unwrap();
    assert_eq!(so.dims(), convolve(&polynomial_ring_series(&[4], 16), &kseries));
    let u = equivariant_cohomology_even(g(GroupFamily::U, 2), 3, 16).unwrap();
    assert_eq!(u.dims(), convolve(&polynomial_ring_series(&[2], 16), &kseries));
}

#[test]
fn model_basis_is_a_subalgebra_of_cycles() {
    let m = equivariant_cohomology_even(g(GroupFamily::SoEven, 2), 3, 10).unwrap();
    let spec = &m.spec;
    for (&da, a) in &m.basis {
        for (&db, b) in &m.basis {
            if da + db > 10 {
                continue;
            }
            for x in a {
                assert!(d2n(spec, x).unwrap().is_zero());
                for y in b {
                    let xy = page_product(x, y).unwrap();
                    let basis = spec.basis(da + db);
                    let target: Vec<_> = m
                        .basis
                        .get(&(da + db))
                        .map_or(Vec::new(), |v| v.iter().map(|e| e.coordinates(&basis).unwrap()).collect());
                    let span = Subspace::span(basis.len(), target);
                    assert!(span.contains(&xy.coordinates(&basis).unwrap()));
                }
            }
        }
    }
}

#[test]
fn torus_restriction_intertwines_the_differential() {
    let spec = PageSpec::new(g(GroupFamily::SoEven, 2), 3).unwrap();
    for deg in 0..=10 {
        let basis = spec.basis(deg);
        for (i, _) in basis.iter().enumerate() {
            let mut v = vec![Scalar::zero(); basis.len()];
            v[i] = Scalar::one();
            let a = PageElement::from_coordinates(&spec, &basis, &v);
            let (tspec, ta) = torus_restriction_even(&spec, &a).unwrap();
            let (_, tda) = torus_restriction_even(&spec, &d2n(&spec, &a).unwrap()).unwrap();
            assert_eq!(d2n(&tspec, &ta).unwrap(), tda);
        }
    }
}

#[test]
fn conf2_r4_torus_page() {
    let spec = PageSpec::new(g(GroupFamily::Torus, 2), 2).unwrap();
    let dims = page_cohomology_dims(&spec, 16);
    // ℚ[q1, q2]/(q1 q2): one class per power of q1 and of q2.
    let expected: Vec<usize> = (0..=16)
        .map(|d| {
            if d == 0 {
                1
            } else if d % 2 == 0 {
                2
            } else {
                0
            }
        })
        .collect();
    assert_eq!(dims, expected);
}

#[test]
fn o4_fixed_torus_page() {
    let o4 = g(GroupFamily::OEven, 2);
    let spec = PageSpec::new(g(GroupFamily::Torus, 2), 2).unwrap();
    let fixed = |d: u32| weyl_fixed_torus_page(o4, 2, d, WeylConvention::Standard).unwrap();
    let dims: Vec<usize> = (0..=8).map(|d| fixed(d).len()).collect();
    // q1²+q2² in degree 4, (q1²+q2²)² and q1²q2² in degree 8, q1q2·x in degree 7.
    assert_eq!(dims, vec![1, 0, 0, 0, 1, 0, 0, 1, 2]);
    for d in 0..=6 {
        for x in fixed(d) {
            assert!(d2n(&spec, &x).unwrap().is_zero());
        }
    }
    let h = subpage_cohomology_dims(&spec, fixed, 16).unwrap();
    let model = equivariant_cohomology_even(o4, 2, 16).unwrap().dims();
    assert_eq!(h, model);
}
