//! Verification batteries behind `equiconf verify`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use equiconf::charclasses::{
    char_class_vars, invariant_hilbert_series, restriction_map, reynolds, weyl_action, weyl_group, GroupFamily,
    GroupSpec, WeylConvention,
};
use equiconf::confring::{self, poincare_polynomial};
use equiconf::equieven::{
    d2n, equivariant_cohomology_even, page_cohomology_dims, subpage_cohomology_dims, verify_page_cohomology,
    weyl_fixed_torus_page, PageSpec,
};
use equiconf::equiodd::{self, fixed_point_basis, leray_hirsch_series, torus_basis, EquiElement};
use equiconf::specseq::random::{random_filtered_complex, random_pure_complex};
use equiconf::specseq::{
    canonical_filtration, decalage, equivariant_hom_ext, formality_witness, page, purity_check, PurityOutcome,
    WeightSpec, WitnessOutcome,
};
use equiconf::{Matrix, Polynomial, Scalar, VarSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::Suite;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suites: Vec<&'static str>,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{mark}  {}  {}", c.name, c.detail);
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(s, "{} checks, {failed} failed", self.checks.len());
        s
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, result: Result<String, String>) {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.0.push(Check { name: name.into(), passed, detail });
    }
}

fn name(s: Suite) -> &'static str {
    match s {
        Suite::Arnold => "arnold",
        Suite::LerayHirsch => "leray-hirsch",
        Suite::Weyl => "weyl",
        Suite::EvenPage => "even-page",
        Suite::Decalage => "decalage",
        Suite::Purity => "purity",
    }
}

pub fn run(suite: Option<Suite>, seed: u64) -> SuiteReport {
    let all = [Suite::Arnold, Suite::LerayHirsch, Suite::Weyl, Suite::EvenPage, Suite::Decalage, Suite::Purity];
    let selected: Vec<Suite> = suite.map_or(all.to_vec(), |s| vec![s]);
    let mut checks = Checks(Vec::new());
    for &s in &selected {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match s {
            Suite::Arnold => arnold(&mut checks, &mut rng),
            Suite::LerayHirsch => leray_hirsch(&mut checks),
            Suite::Weyl => weyl(&mut checks, &mut rng),
            Suite::EvenPage => even_page(&mut checks),
            Suite::Decalage => decalage_suite(&mut checks, &mut rng),
            Suite::Purity => purity(&mut checks, &mut rng),
        }
    }
    let passed = checks.0.iter().all(|c| c.passed);
    SuiteReport { suites: selected.into_iter().map(name).collect(), seed, checks: checks.0, passed }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, expected: T) -> Result<String, String> {
    if got == expected {
        Ok(format!("{what} = {got:?}"))
    } else {
        Err(format!("{what}: got {got:?}, expected {expected:?}"))
    }
}

fn random_word<R: Rng>(rng: &mut R, points: usize, len: usize) -> Vec<(usize, usize)> {
    (0..len)
        .map(|_| {
            let a = rng.gen_range(1..=points);
            let mut b = rng.gen_range(1..points);
            if b >= a {
                b += 1;
            }
            (a, b)
        })
        .collect()
}

fn arnold(c: &mut Checks, rng: &mut ChaCha8Rng) {
    c.add(
        "arnold/conf3-r3-example",
        (|| {
            let a = confring::normal_form(3, 3, &[(1, 3), (2, 3)]).map_err(e)?;
            expect_eq("x_13 x_23", a.to_string(), "-x_12*x_13 + x_12*x_23".to_string())
        })(),
    );
    c.add(
        "arnold/relations",
        (|| {
            let mut n = 0;
            for dim in 2..=5 {
                for points in 3..=5 {
                    for a in 1..=points {
                        for b in a + 1..=points {
                            for cc in b + 1..=points {
                                let t = |w: &[(usize, usize)]| confring::normal_form(points, dim, w);
                                let s = t(&[(a, b), (b, cc)])
                                    .and_then(|x| x.add(&t(&[(b, cc), (cc, a)])?))
                                    .and_then(|x| x.add(&t(&[(cc, a), (a, b)])?))
                                    .map_err(e)?;
                                if !s.is_zero() {
                                    return Err(format!("dim {dim}, triple ({a},{b},{cc}): {s}"));
                                }
                                n += 1;
                            }
                        }
                    }
                }
            }
            Ok(format!("{n} Arnold relations vanish"))
        })(),
    );
    c.add(
        "arnold/modified-relations",
        (|| {
            let mut n = 0;
            for halfdim in 1..=2 {
                for points in 2..=5 {
                    for a in 1..=points {
                        for b in a + 1..=points {
                            let t = |w: &[(usize, usize)]| equiodd::normal_form(points, halfdim, w);
                            let sq = t(&[(a, b), (a, b)]).map_err(e)?;
                            let pn = EquiElement::from_poly(points, halfdim, &sq.pn()).map_err(e)?;
                            let diff = sq.sub(&pn).map_err(e)?;
                            if !diff.is_zero() {
                                return Err(format!("n={halfdim}: y_{a}{b}^2 - p_n = {diff}"));
                            }
                            for cc in b + 1..=points {
                                let r = t(&[(a, b), (b, cc)])
                                    .and_then(|x| x.sub(&t(&[(b, cc), (a, cc)])?))
                                    .and_then(|x| x.sub(&t(&[(a, cc), (a, b)])?))
                                    .and_then(|x| x.add(&pn))
                                    .map_err(e)?;
                                if !r.is_zero() {
                                    return Err(format!("n={halfdim}, triple ({a},{b},{cc}): {r}"));
                                }
                                n += 1;
                            }
                        }
                    }
                }
            }
            Ok(format!("{n} modified Arnold relations and all double edges vanish"))
        })(),
    );
    c.add(
        "arnold/rewrite-order",
        (|| {
            for trial in 0..40 {
                let points = rng.gen_range(3..=5);
                let dim = rng.gen_range(2..=5);
                let len = rng.gen_range(1..=3);
                let word = random_word(rng, points, len);
                let picks: Vec<usize> = (0..16).map(|_| rng.gen_range(0..8)).collect();
                let mut it = picks.iter().cycle();
                let mut choice = |k: usize| it.next().unwrap() % k;
                let first = confring::normal_form(points, dim, &word).map_err(e)?;
                let other = confring::normal_form_with(points, dim, &word, &mut choice).map_err(e)?;
                if first != other {
                    return Err(format!("trial {trial}, word {word:?}: {first} vs {other}"));
                }
                let halfdim = 1 + trial % 2;
                let first = equiodd::normal_form(points, halfdim, &word).map_err(e)?;
                let mut it = picks.iter().cycle();
                let mut choice = |k: usize| it.next().unwrap() % k;
                let other = equiodd::normal_form_with(points, halfdim, &word, &mut choice).map_err(e)?;
                if first != other {
                    return Err(format!("trial {trial}, equivariant word {word:?}: {first} vs {other}"));
                }
            }
            Ok("40 random words reduce to the same normal form under random rewrite orders".into())
        })(),
    );
}

/// `[t^d] Π_{j<k} (1 + j t^step)`.
fn product_series(k: usize, step: usize, max: usize) -> Vec<u64> {
    let mut s = vec![0u64; max + 1];
    s[0] = 1;
    for j in 1..k as u64 {
        for d in (step..=max).rev() {
            s[d] += j * s[d - step];
        }
    }
    s
}

fn leray_hirsch(c: &mut Checks) {
    c.add(
        "leray-hirsch/conf2-r3-circle",
        (|| {
            let dims: Vec<usize> = (0..=12)
                .step_by(2)
                .map(|d| torus_basis(2, 1, d).map(|b| b.len()))
                .collect::<Result<_, _>>()
                .map_err(e)?;
            expect_eq("even-degree dims", dims, vec![1, 2, 2, 2, 2, 2, 2])
        })(),
    );
    c.add(
        "leray-hirsch/series",
        (|| {
            for points in 1..=5 {
                for n in 1..=2 {
                    let series = leray_hirsch_series(points, n, 12);
                    for d in 0..=12u32 {
                        let got = torus_basis(points, n, d).map_err(e)?.len() as u64;
                        if got != series[d as usize] {
                            return Err(format!(
                                "ℓ={points} n={n} degree {d}: basis {got}, series {}",
                                series[d as usize]
                            ));
                        }
                    }
                }
            }
            Ok("torus bases match Π(1 + j t^2n)/(1 − t²)^n for ℓ ≤ 5, n ≤ 2, degree ≤ 12".into())
        })(),
    );
    c.add(
        "leray-hirsch/poincare",
        (|| {
            for k in 2..=6 {
                for n in 2..=5 {
                    let p = poincare_polynomial(k, n).map_err(e)?;
                    let expected = product_series(k, n - 1, (n - 1) * (k - 1));
                    for (d, &x) in expected.iter().enumerate() {
                        let got = p.coeff(&[d as u32]);
                        if got != Scalar::from_int(x as i64) {
                            return Err(format!("k={k} n={n} t^{d}: {got} vs {x}"));
                        }
                    }
                }
            }
            Ok("Poincaré polynomials are Π(1 + j t^(n−1)) for 2 ≤ k ≤ 6, 2 ≤ n ≤ 5".into())
        })(),
    );
}

fn g(family: GroupFamily, rank: usize) -> GroupSpec {
    GroupSpec::new(family, rank).expect("valid group")
}

/// Dimensions of a polynomial ring on generators of the given degrees.
fn polynomial_series(degrees: &[usize], max: usize) -> Vec<usize> {
    let mut s = vec![0usize; max + 1];
    s[0] = 1;
    for &d in degrees {
        for k in d..=max {
            s[k] += s[k - d];
        }
    }
    s
}

fn weyl(c: &mut Checks, rng: &mut ChaCha8Rng) {
    let std = WeylConvention::Standard;
    let families = [GroupFamily::SoOdd, GroupFamily::OOdd, GroupFamily::SoEven, GroupFamily::OEven, GroupFamily::U];
    c.add(
        "weyl/invariant-rings",
        (|| {
            for n in 1..=3 {
                for family in families {
                    let group = g(family, n);
                    let degrees: Vec<usize> = char_class_vars(group).vars().iter().map(|v| v.degree as usize).collect();
                    let got = invariant_hilbert_series(group, 12, std).map_err(e)?;
                    let expected = polynomial_series(&degrees, 12);
                    if got != expected {
                        return Err(format!("{group}: {got:?} vs {expected:?}"));
                    }
                }
            }
            Ok("Weyl invariants are polynomial on the characteristic classes for rank ≤ 3".into())
        })(),
    );
    c.add(
        "weyl/restrictions",
        (|| {
            for n in 1..=3 {
                let t = g(GroupFamily::Torus, n);
                for family in families {
                    let group = g(family, n);
                    let vars = char_class_vars(group);
                    for i in 0..vars.len() {
                        let img = restriction_map(group, t, &Polynomial::var(&vars, i)).map_err(e)?;
                        if reynolds(group, std, &img).map_err(e)? != img {
                            return Err(format!("{group}: restriction of generator {i} is not invariant"));
                        }
                    }
                }
            }
            Ok("torus restrictions of characteristic classes are Weyl invariant".into())
        })(),
    );
    c.add(
        "weyl/ring-maps",
        (|| {
            let vars = VarSet::torus(3);
            let monos = vars.monomials_of_degree(4);
            let random_poly = |rng: &mut ChaCha8Rng| {
                Polynomial::from_terms(
                    &vars,
                    monos.iter().cloned().map(|m| (m, Scalar::from_int(rng.gen_range(-3..=3)))),
                )
            };
            for family in families {
                let group = weyl_group(g(family, 3), std).map_err(e)?;
                for _ in 0..4 {
                    let w = &group[rng.gen_range(0..group.len())];
                    let (f, h) = (random_poly(rng), random_poly(rng));
                    if weyl_action(w, &(&f * &h)).map_err(e)?
                        != &weyl_action(w, &f).map_err(e)? * &weyl_action(w, &h).map_err(e)?
                    {
                        return Err(format!("{family:?}: action is not multiplicative"));
                    }
                }
            }
            Ok("random Weyl elements act multiplicatively".into())
        })(),
    );
    c.add(
        "weyl/so3-fixed-points",
        (|| {
            let dims: Vec<usize> = (0..=12)
                .step_by(2)
                .map(|d| fixed_point_basis(g(GroupFamily::SoOdd, 1), 2, d, std).map(|b| b.len()))
                .collect::<Result<_, _>>()
                .map_err(e)?;
            expect_eq("SO(3) on Conf_2(ℝ³), even degrees", dims, vec![1; 7])
        })(),
    );
    c.add("weyl/o4-invariants", (|| {
        let o4 = g(GroupFamily::OEven, 2);
        let tspec = PageSpec::new(g(GroupFamily::Torus, 2), 2).map_err(e)?;
        let fixed = |d: u32| weyl_fixed_torus_page(o4, 2, d, std).expect("fixed page");
        let target = polynomial_series(&[4], 16);
        let h = subpage_cohomology_dims(&tspec, fixed, 16).map_err(e)?;
        if h != target {
            return Err(format!("E_5 of the fixed page {h:?}, expected {target:?}"));
        }
        let low: Vec<usize> = (0..=6).map(|d| fixed(d).len()).collect();
        if low != target[..=6] {
            return Err(format!("fixed E_2 in degrees ≤ 6: {low:?}"));
        }
        Ok("fixed E_5 = ℚ[q1²+q2²] through degree 16; fixed E_2 agrees with it through degree 6 (q1q2·x is fixed in degree 7)".into())
    })());
    c.add(
        "weyl/o4-d4-vanishes",
        (|| {
            let o4 = g(GroupFamily::OEven, 2);
            let model = equivariant_cohomology_even(o4, 2, 16).map_err(e)?;
            let spec = &model.spec;
            for (d, basis) in &model.basis {
                for x in basis {
                    if !d2n(spec, x).map_err(e)?.is_zero() {
                        return Err(format!("d_4 non-zero on {x} in degree {d}"));
                    }
                }
            }
            expect_eq("O(4) model dims", model.dims(), polynomial_series(&[4], 16))
        })(),
    );
}

fn even_page(c: &mut Checks) {
    c.add(
        "even-page/conf2-r4-torus",
        (|| {
            let spec = PageSpec::new(g(GroupFamily::Torus, 2), 2).map_err(e)?;
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
            expect_eq("E_5 = ℚ[q1,q2]/(q1q2) dims", page_cohomology_dims(&spec, 16), expected)
        })(),
    );
    for family in [GroupFamily::SoEven, GroupFamily::OEven, GroupFamily::U] {
        let group = g(family, 2);
        c.add(
            format!("even-page/{group}"),
            (|| {
                for points in 0..=4 {
                    let r = verify_page_cohomology(group, points, 12).map_err(e)?;
                    if !r.matches {
                        return Err(format!("ℓ={points}: page {:?}, model {:?}", r.page_cohomology, r.model));
                    }
                }
                Ok("page cohomology matches the model for ℓ ≤ 4 through degree 12".into())
            })(),
        );
    }
}

type Dims = BTreeMap<(i64, i64), usize>;

fn shifted(d: Dims) -> Dims {
    d.into_iter().filter(|&(_, v)| v > 0).map(|((i, j), v)| ((2 * i - j, i), v)).collect()
}

fn nonzero(d: Dims) -> Dims {
    d.into_iter().filter(|&(_, v)| v > 0).collect()
}

fn decalage_suite(c: &mut Checks, rng: &mut ChaCha8Rng) {
    let complexes: Vec<_> = (0..40).map(|_| random_filtered_complex(rng, 10, 4, true)).collect();
    c.add(
        "decalage/pages",
        (|| {
            for (t, a) in complexes.iter().enumerate() {
                let len = a.filtration_length();
                for r in 0..=len + 1 {
                    let e = page(a, r);
                    if !e.squares_to_zero() || e.cohomology_dims() != page(a, r + 1).dims() {
                        return Err(format!("complex {t}: E_{} is not the cohomology of E_{r}", r + 1));
                    }
                }
                let stable = page(a, len + 1);
                for n in 0..a.complex().len() {
                    if stable.total_dim(n as i64) != a.complex().cohomology_dim(n) {
                        return Err(format!("complex {t}: E_∞ differs from H^{n}"));
                    }
                }
            }
            Ok("40 random complexes: E_(r+1) = H(E_r), E_∞ = H".into())
        })(),
    );
    c.add("decalage/shift", (|| {
        for (t, a) in complexes.iter().enumerate() {
            let dec = decalage(a);
            for k in 1..=2 {
                let (l, r) = (shifted(page(&dec, k).dims()), nonzero(page(a, k + 1).dims()));
                if l != r {
                    return Err(format!("complex {t}: E_{k}(Dec A) {l:?} vs E_{}(A) {r:?}", k + 1));
                }
            }
            let (l, r) = (shifted(page(&dec, 0).cohomology_dims()), nonzero(page(a, 1).cohomology_dims()));
            if l != r {
                return Err(format!("complex {t}: H(E_0(Dec A)) {l:?} vs H(E_1(A)) {r:?}"));
            }
        }
        Ok("40 random complexes: E_k(Dec A) = E_(k+1)(A) for k = 1, 2 and E_0(Dec A) → E_1(A) is a quasi-isomorphism".into())
    })());
}

fn purity(c: &mut Checks, rng: &mut ChaCha8Rng) {
    c.add(
        "purity/witnesses",
        (|| {
            let mut n = 0;
            for (xi, alpha) in [(2, (1, 1)), (3, (1, 2)), (-2, (2, 1))] {
                let spec = WeightSpec::new(Scalar::from_int(xi), Scalar::ratio(alpha.0, alpha.1), 0).map_err(e)?;
                for _ in 0..10 {
                    let (cx, _) = random_pure_complex(rng, &spec.xi, &spec.alpha, false);
                    match formality_witness(&cx, &spec).map_err(e)? {
                        WitnessOutcome::Witness(w) if w.verified() => n += 1,
                        WitnessOutcome::Witness(_) => return Err(format!("ξ={xi}: witness does not verify")),
                        WitnessOutcome::Refused(v) => {
                            return Err(format!("ξ={xi}: pure complex refused at ({}, {})", v.i, v.j))
                        }
                    }
                }
            }
            Ok(format!("{n} pure complexes have verified formality witnesses"))
        })(),
    );
    c.add(
        "purity/impure-located",
        (|| {
            let xi = Scalar::from_int(3);
            let spec = WeightSpec::new(xi.clone(), Scalar::one(), 0).map_err(e)?;
            for t in 0..10 {
                let (cx, expected) = random_pure_complex(rng, &xi, &Scalar::one(), true);
                match purity_check(&canonical_filtration(&cx), &spec).map_err(e)? {
                    PurityOutcome::Violation(v) if Some((v.i, v.j)) == expected => {}
                    PurityOutcome::Violation(v) => {
                        return Err(format!("input {t}: violation at ({}, {}), expected {expected:?}", v.i, v.j))
                    }
                    PurityOutcome::Certificate(_) => return Err(format!("input {t}: impure complex certified")),
                }
            }
            Ok("10 impure complexes: violating bidegree located".into())
        })(),
    );
    c.add(
        "purity/hom-vanishing",
        (|| {
            let xi = Scalar::from_int(3);
            for _ in 0..10 {
                let (w1, w2) = (rng.gen_range(-2..=2i64), rng.gen_range(-2..=2i64));
                if w1 == w2 {
                    continue;
                }
                let m = Matrix::diagonal(&vec![xi.pow(w1); rng.gen_range(1..=3)]);
                let m2 = Matrix::diagonal(&vec![xi.pow(w2); rng.gen_range(1..=3)]);
                let r = equivariant_hom_ext(&m, &m2).map_err(e)?;
                if (r.hom_dim, r.ext1_dim) != (0, 0) {
                    return Err(format!("weights {w1}, {w2}: Hom {} Ext {}", r.hom_dim, r.ext1_dim));
                }
            }
            Ok("Hom and Ext¹ vanish between pure modules of distinct weights".into())
        })(),
    );
}
