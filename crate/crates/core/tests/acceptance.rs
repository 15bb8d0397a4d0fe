//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;

use common::{convolve, polynomial_ring_series, product_series, q, ConfOracle, EquiOracle};
use equiconf::charclasses::{GroupFamily, GroupSpec, WeylConvention};
use equiconf::confring::poincare_polynomial;
use equiconf::equieven::{
    d2n, equivariant_cohomology_even, page_cohomology_dims, subpage_cohomology_dims, verify_page_cohomology,
    weyl_fixed_torus_page, PageElement, PageSpec,
};
use equiconf::equiodd::{fixed_point_basis, normal_form, torus_basis, EquiElement};
use equiconf::specseq::random::{random_filtered_complex, random_pure_complex};
use equiconf::specseq::{
    canonical_filtration, decalage, equivariant_hom_ext, formality_witness, page, purity_check, FilteredComplex,
    PurityOutcome, WeightSpec, WitnessOutcome,
};
use equiconf::{Matrix, Polynomial, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn g(family: GroupFamily, rank: usize) -> GroupSpec {
    GroupSpec::new(family, rank).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Compares two sparse dimension tables, treating missing spots as zero.
fn first_mismatch(
    a: &BTreeMap<(i64, i64), usize>,
    b: &BTreeMap<(i64, i64), usize>,
) -> Option<((i64, i64), usize, usize)> {
    let keys: BTreeSet<_> = a.keys().chain(b.keys()).copied().collect();
    keys.into_iter().find_map(|k| {
        let (x, y) = (a.get(&k).copied().unwrap_or(0), b.get(&k).copied().unwrap_or(0));
        (x != y).then_some((k, x, y))
    })
}

/// `(i, j) ↦ (2i − j, i)`.
fn shifted(dims: BTreeMap<(i64, i64), usize>) -> BTreeMap<(i64, i64), usize> {
    dims.into_iter().map(|((i, j), d)| ((2 * i - j, i), d)).collect()
}

fn criterion_1() -> Outcome {
    // ℚ[x, q]/x(x − q): basis q^b and x q^b, so 1 in degree 0 and 2 in every positive even degree.
    for d in 0..=12u32 {
        let got = torus_basis(2, 1, d).map_err(err)?.len();
        let expected = match d {
            0 => 1,
            _ if d % 2 == 0 => 2,
            _ => 0,
        };
        ensure(got == expected, || format!("degree {d}: {got} ≠ {expected}"))?;
        if d % 2 == 0 {
            let oracle = EquiOracle::new(2, 1, d).quotient_dim();
            ensure(oracle == expected, || format!("oracle degree {d}: {oracle} ≠ {expected}"))?;
        }
    }
    Ok("torus n=1 ℓ=2: 1,2,2,… through degree 12 (engine and ideal-span oracle)".into())
}

fn criterion_2() -> Outcome {
    let so3 = g(GroupFamily::SoOdd, 1);
    let expected = polynomial_ring_series(&[2], 12);
    for d in 0..=12u32 {
        let got = fixed_point_basis(so3, 2, d, WeylConvention::Standard).map_err(err)?.len();
        ensure(got == expected[d as usize], || format!("degree {d}: {got} ≠ {}", expected[d as usize]))?;
    }
    Ok("SO(3) fixed points: Hilbert series of ℚ[u], |u| = 2, through degree 12".into())
}

fn criterion_3() -> Outcome {
    let spec = PageSpec::new(g(GroupFamily::Torus, 2), 2).map_err(err)?;
    let x = PageElement::generator(&spec, 1, 2).map_err(err)?;
    let q1q2 = Polynomial::monomial(spec.coeff_vars(), vec![1, 1], Scalar::one());
    let one = equiconf::confring::ConfElement::one(2, 4);
    let expected_dx = PageElement::tensor(&spec, &q1q2, &one).map_err(err)?;
    ensure(d2n(&spec, &x).map_err(err)? == expected_dx, || "d(x) ≠ q1 q2".into())?;

    // ℚ[q1, q2]/(q1 q2): one class per power of each q.
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
    let dims = page_cohomology_dims(&spec, 16);
    ensure(dims == expected, || format!("page cohomology {dims:?}"))?;

    // Second route: the filtered model ℚ[q1, q2] ⊗ Λ[x] read through its spectral sequence.
    let golden: FilteredComplex =
        serde_json::from_str(include_str!("data/conf2_r4_torus.json")).map_err(|e| format!("golden: {e}"))?;
    let e5 = page(&golden, 4);
    for n in 0..=16 {
        ensure(e5.total_dim(n) == expected[n as usize], || {
            format!("spectral sequence degree {n}: {}", e5.total_dim(n))
        })?;
    }
    Ok("d(x) = q1 q2 and E5 = ℚ[q1,q2]/(q1 q2) through degree 16 (page and filtered model)".into())
}

fn criterion_4(notes: &mut Vec<String>) -> Outcome {
    let target = polynomial_ring_series(&[4], 16);
    for family in [GroupFamily::SoEven, GroupFamily::OEven] {
        let group = g(family, 2);
        let model = equivariant_cohomology_even(group, 2, 16).map_err(err)?;
        ensure(model.dims() == target, || format!("{group} model {:?}", model.dims()))?;
        let spec = PageSpec::new(group, 2).map_err(err)?;
        let page_dims = page_cohomology_dims(&spec, 16);
        ensure(page_dims == target, || format!("{group} page cohomology {page_dims:?}"))?;
        if family == GroupFamily::OEven {
            for (deg, basis) in &model.basis {
                for b in basis {
                    ensure(d2n(&spec, b).map_err(err)?.is_zero(), || {
                        format!("O(4) model class in degree {deg} is not a cycle")
                    })?;
                }
            }
        }
    }

    // Weyl fixed points of the torus page.
    let o4 = g(GroupFamily::OEven, 2);
    let tspec = PageSpec::new(g(GroupFamily::Torus, 2), 2).map_err(err)?;
    let fixed = |d: u32| weyl_fixed_torus_page(o4, 2, d, WeylConvention::Standard).unwrap();
    let h = subpage_cohomology_dims(&tspec, fixed, 16).map_err(err)?;
    ensure(h == target, || format!("cohomology of the O(4)-fixed torus page {h:?}"))?;
    let nonclosed: Vec<u32> =
        (0..=16).filter(|&d| fixed(d).iter().any(|x| !d2n(&tspec, x).unwrap().is_zero())).collect();
    let fixed_dims: Vec<usize> = (0..=8).map(|d| fixed(d).len()).collect();
    notes.push(format!(
        "O(4)-fixed torus E2 dims 0..8 = {fixed_dims:?}, not ℚ[q1²+q2²]; d4 is non-zero on it in degrees {nonclosed:?} (q1q2·x ↦ q1²q2²), its E5 is ℚ[q1²+q2²]"
    ));
    Ok("SO(4), O(4): ℚ[p1] through degree 16 via model, page and Weyl-fixed page; d4 = 0 on O(4) model classes".into())
}

fn criterion_5() -> Outcome {
    let mut oracle_checks = 0;
    for k in 2..=6 {
        for n in 2..=5 {
            let p = poincare_polynomial(k, n).map_err(err)?;
            let step = n - 1;
            let expected = product_series(k, step, step * (k - 1));
            for (d, &c) in expected.iter().enumerate() {
                ensure(p.coeff(&[d as u32]) == q(c as i64), || format!("k={k} n={n} t^{d}"))?;
            }
            if k <= 4 {
                for e in 0..k {
                    let dim = ConfOracle::new(k, n, e).quotient_dim() as u64;
                    ensure(dim == expected[e * step], || format!("oracle k={k} n={n} degree {}", e * step))?;
                    oracle_checks += 1;
                }
            }
        }
    }
    Ok(format!("Π(1 + j t^(n−1)) for 2≤k≤6, 2≤n≤5; {oracle_checks} oracle dimensions for k≤4"))
}

fn criterion_6() -> Outcome {
    for points in 1..=5 {
        for n in 1..=2 {
            let fiber: Vec<usize> = product_series(points, 2 * n, 12).into_iter().map(|c| c as usize).collect();
            let expected = convolve(&polynomial_ring_series(&vec![2; n], 12), &fiber);
            for d in 0..=12u32 {
                let got = torus_basis(points, n, d).map_err(err)?.len();
                ensure(got == expected[d as usize], || {
                    format!("ℓ={points} n={n} degree {d}: {got} ≠ {}", expected[d as usize])
                })?;
            }
        }
    }
    Ok("torus Hilbert series = Π(1 + j t^2n)/(1 − t²)^n for ℓ≤5, n≤2, degree≤12".into())
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for n in 1..=2usize {
        for points in 2..=5 {
            let oracle = EquiOracle::new(points, n, 4 * n as u32);
            let pn_el = |e: &EquiElement| EquiElement::from_poly(points, n, &e.pn()).unwrap();
            let zero = vec![Scalar::zero(); oracle.word(&[(1, 2), (1, 2)]).len()];
            for a in 1..=points {
                for b in a + 1..=points {
                    let sq = normal_form(points, n, &[(a, b), (a, b)]).map_err(err)?;
                    let pn = pn_el(&sq);
                    ensure(sq.sub(&pn).map_err(err)?.is_zero(), || {
                        format!("rewrite y_{a}{b}² ≠ p_n, ℓ={points} n={n}")
                    })?;
                    let lhs: Vec<Scalar> =
                        oracle.word(&[(a, b), (a, b)]).iter().zip(oracle.element(&pn)).map(|(x, y)| x - y).collect();
                    ensure(oracle.congruent(&lhs, &zero), || format!("oracle y_{a}{b}² ≠ p_n"))?;
                    count += 1;
                    for c in b + 1..=points {
                        let t = |w: &[(usize, usize)]| normal_form(points, n, w).unwrap();
                        let (t1, t2, t3) = (t(&[(a, b), (b, c)]), t(&[(b, c), (a, c)]), t(&[(a, c), (a, b)]));
                        let rel = t1.sub(&t2).map_err(err)?.sub(&t3).map_err(err)?.add(&pn).map_err(err)?;
                        ensure(rel.is_zero(), || format!("rewrite Arnold ({a},{b},{c}) ℓ={points} n={n}: {rel}"))?;
                        let (w1, w2, w3) = (
                            oracle.word(&[(a, b), (b, c)]),
                            oracle.word(&[(b, c), (a, c)]),
                            oracle.word(&[(a, c), (a, b)]),
                        );
                        let pv = oracle.element(&pn);
                        let v: Vec<Scalar> = (0..w1.len()).map(|i| &w1[i] - &w2[i] - &w3[i] + &pv[i]).collect();
                        ensure(oracle.congruent(&v, &zero), || {
                            format!("oracle Arnold ({a},{b},{c}) ℓ={points} n={n}")
                        })?;
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{count} double-edge and modified Arnold relations vanish for ℓ≤5, n≤2 (rewrite engine and oracle)"))
}

fn criterion_8(notes: &mut Vec<String>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8);
    let trials = 60;
    let mut literal_failures = 0;
    let mut first = None;
    let mut quasi_iso = 0;
    let mut later = 0;
    for t in 0..trials {
        let a = random_filtered_complex(&mut rng, 10, 4, false);
        let dec = decalage(&a);
        let e0 = shifted(page(&dec, 0).dims());
        let e1 = page(&a, 1).dims();
        if let Some(m) = first_mismatch(&e0, &e1) {
            literal_failures += 1;
            first.get_or_insert((t, m));
        }
        if first_mismatch(&shifted(page(&dec, 0).cohomology_dims()), &page(&a, 1).cohomology_dims()).is_none() {
            quasi_iso += 1;
        }
        if (1..=2).all(|k| first_mismatch(&shifted(page(&dec, k).dims()), &page(&a, k + 1).dims()).is_none()) {
            later += 1;
        }
    }
    notes.push(format!("H(E0(Dec A)) matches E1(A) cohomology on {quasi_iso}/{trials}; E_k(Dec A) = E_(k+1)(A), k=1,2, on {later}/{trials}"));
    match first {
        None => Ok(format!("dim E0(Dec A) = dim E1(A) spotwise on {trials} random complexes")),
        Some((t, ((i, j), x, y))) => Err(format!(
            "dim E0(Dec A) ≠ dim E1(A) on {literal_failures}/{trials} complexes; first: trial {t}, at E1 spot ({i},{j}) E0(Dec A) has {x}, E1(A) has {y}"
        )),
    }
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9);
    let mut pure = 0;
    for (xi, alpha) in [(2, (1, 1)), (3, (1, 2)), (-2, (2, 1))] {
        let spec = WeightSpec::new(Scalar::from_int(xi), Scalar::ratio(alpha.0, alpha.1), 0).map_err(err)?;
        for _ in 0..20 {
            let (c, _) = random_pure_complex(&mut rng, &spec.xi, &spec.alpha, false);
            let w = match formality_witness(&c, &spec).map_err(err)? {
                WitnessOutcome::Witness(w) => w,
                WitnessOutcome::Refused(v) => return Err(format!("pure complex refused at ({}, {})", v.i, v.j)),
            };
            ensure(w.verified(), || "witness self-check failed".into())?;
            for dw in &w.degrees {
                let n = dw.degree;
                let h = dw.cohomology_dim;
                ensure(h == c.cohomology_dim(n), || format!("degree {n}: wrong cohomology dimension"))?;
                if h == 0 {
                    continue;
                }
                let inc = Matrix::from_rows(dw.inclusion.clone(), h).map_err(err)?;
                // Chain map from (H, 0): columns are cocycles.
                ensure(c.d(n).checked_mul(&inc).map_err(err)?.is_zero(), || format!("degree {n}: not a chain map"))?;
                // Injective on cohomology: no combination of columns is a boundary.
                let b = c.boundaries(n);
                let span = b.sum(&equiconf::exactalg::Subspace::span(c.dim(n), inc.columns()));
                ensure(span.dim() == b.dim() + h, || format!("degree {n}: not an isomorphism on cohomology"))?;
                if let Some(phi) = c.phi(n) {
                    let ph = Matrix::from_rows(dw.phi_cohomology.clone(), h).map_err(err)?;
                    ensure(phi.checked_mul(&inc).map_err(err)? == inc.checked_mul(&ph).map_err(err)?, || {
                        format!("degree {n}: not φ-equivariant")
                    })?;
                }
            }
            pure += 1;
        }
    }
    let xi = Scalar::from_int(3);
    let spec = WeightSpec::new(xi.clone(), Scalar::one(), 0).map_err(err)?;
    let mut impure = 0;
    for _ in 0..20 {
        let (c, expected) = random_pure_complex(&mut rng, &xi, &Scalar::one(), true);
        match purity_check(&canonical_filtration(&c), &spec).map_err(err)? {
            PurityOutcome::Violation(v) => ensure(Some((v.i, v.j)) == expected, || {
                format!("violation at ({}, {}), expected {expected:?}", v.i, v.j)
            })?,
            PurityOutcome::Certificate(_) => return Err("impure complex certified".into()),
        }
        ensure(matches!(formality_witness(&c, &spec).map_err(err)?, WitnessOutcome::Refused(_)), || {
            "impure complex received a witness".into()
        })?;
        impure += 1;
    }
    Ok(format!("{pure} pure complexes with verified witnesses; {impure} impure inputs located and refused"))
}

/// A random invertible conjugate of a direct sum of Jordan blocks with eigenvalue `lambda`.
fn pure_module<R: Rng>(rng: &mut R, lambda: &Scalar, dim: usize) -> Matrix {
    let mut m = Matrix::scalar(dim, lambda.clone());
    let mut rows = m.to_rows();
    for i in 0..dim.saturating_sub(1) {
        if rng.gen_bool(0.5) {
            rows[i][i + 1] = Scalar::one();
        }
    }
    m = Matrix::from_rows(rows, dim).unwrap();
    let mut l = Matrix::identity(dim).to_rows();
    let mut u = Matrix::identity(dim).to_rows();
    for i in 0..dim {
        for j in 0..i {
            l[i][j] = Scalar::from_int(rng.gen_range(-2..=2));
            u[j][i] = Scalar::from_int(rng.gen_range(-2..=2));
        }
    }
    let p = Matrix::from_rows(l, dim).unwrap().checked_mul(&Matrix::from_rows(u, dim).unwrap()).unwrap();
    let pinv = p.inverse().unwrap();
    p.checked_mul(&m).unwrap().checked_mul(&pinv).unwrap()
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10);
    let xi = Scalar::from_int(3);
    let mut cases = 0;
    for _ in 0..30 {
        let (w1, w2) = (rng.gen_range(-2..=3i64), rng.gen_range(-2..=3i64));
        let (d1, d2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let m = pure_module(&mut rng, &xi.pow(w1), d1);
        let m2 = pure_module(&mut rng, &xi.pow(w2), d2);
        let r = equivariant_hom_ext(&m, &m2).map_err(err)?;
        if w1 == w2 {
            ensure(r.hom_dim > 0 && r.hom_dim == r.ext1_dim, || {
                format!("equal weights: hom {} ext {}", r.hom_dim, r.ext1_dim)
            })?;
        } else {
            ensure((r.hom_dim, r.ext1_dim) == (0, 0), || {
                format!("weights {w1}, {w2}: hom {} ext {}", r.hom_dim, r.ext1_dim)
            })?;
            cases += 1;
        }
    }
    Ok(format!("Hom and Ext¹ vanish on {cases} pairs of distinct weights (equal weights give Hom ≠ 0)"))
}

fn criterion_11() -> Outcome {
    let mut checked = 0;
    for family in [GroupFamily::SoEven, GroupFamily::OEven, GroupFamily::U] {
        for points in 0..=4 {
            let group = g(family, 2);
            let r = verify_page_cohomology(group, points, 12).map_err(err)?;
            let model = equivariant_cohomology_even(group, points, 12).map_err(err)?.dims();
            ensure(r.matches && r.page_cohomology == model, || {
                format!("{group} ℓ={points}: page {:?} model {model:?}", r.page_cohomology)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (group, ℓ) cases for SO(4), O(4), U(2), ℓ≤4, degree≤12"))
}

fn main() -> ExitCode {
    let mut notes = Vec::new();
    let results: Vec<(u32, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4(&mut notes)),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8(&mut notes)),
        (9, criterion_9()),
        (10, criterion_10()),
        (11, criterion_11()),
    ];
    let mut failed = 0;
    for (k, outcome) in &results {
        match outcome {
            Ok(msg) => println!("criterion {k:>2}: PASS  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k:>2}: FAIL  {msg}");
            }
        }
    }
    for n in &notes {
        println!("note: {n}");
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
