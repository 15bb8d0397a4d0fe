use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use equiconf::charclasses::{GroupFamily, GroupSpec, WeylConvention};
use equiconf::confring::{self, parse_word, ConfElement};
use equiconf::equieven::{equivariant_cohomology_even, kernel_k, verify_page_cohomology, PageElement};
use equiconf::equiodd::{self, fixed_point_basis, torus_basis, EquiElement};
use equiconf::specseq::random::random_filtered_complex;
use equiconf::specseq::{
    canonical_filtration, decalage, formality_witness, page, purity_check_at_page, FilteredComplex, PurityOutcome,
    WeightSpec, WitnessOutcome,
};
use equiconf::Scalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::{dot_graphs, emit, input_error, Failure, Rendered};
use crate::{
    suites, Cli, Command, ConfCmd, ConventionArg, EquiCmd, EvenCmd, Format, GroupArg, GroupArgs, SsCmd, WeightArgs,
};

pub fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.format == Format::Dot && !draws_graphs(&cli.command) {
        return input_error(
            "--format dot is only available for conf/equi basis and normal-form, even model and render",
        );
    }
    let rendered = match &cli.command {
        Command::Conf(cmd) => conf(cmd)?,
        Command::Equi(cmd) => equi(cmd)?,
        Command::Even(cmd) => even(cmd)?,
        Command::Ss(cmd) => ss(cmd)?,
        Command::Verify { suite, seed } => {
            let report = suites::run(*suite, *seed);
            let r = Rendered::new(serde_json::to_value(&report).expect("report serializes"), report.to_text());
            if !report.passed {
                return Err(Failure::Verification(r));
            }
            r
        }
        Command::Render { input } => render(input)?,
    };
    emit(cli, &rendered).map_err(Failure::Input)
}

fn draws_graphs(cmd: &Command) -> bool {
    matches!(
        cmd,
        Command::Conf(ConfCmd::Basis { .. } | ConfCmd::NormalForm { .. })
            | Command::Equi(EquiCmd::Basis { .. } | EquiCmd::NormalForm { .. })
            | Command::Even(EvenCmd::Model { .. })
            | Command::Render { .. }
    )
}

fn edges_of(m: &[confring::Edge]) -> Vec<(usize, usize)> {
    m.iter().map(|e| (e.i(), e.j())).collect()
}

fn conf_dot(elements: &[ConfElement]) -> String {
    let mut k = 0;
    elements
        .iter()
        .map(|a| dot_graphs(a.points(), a.terms().map(|(m, c)| (edges_of(m), c.to_string())), &mut k))
        .collect()
}

fn equi_dot(elements: &[EquiElement]) -> String {
    let mut k = 0;
    elements
        .iter()
        .map(|a| dot_graphs(a.points(), a.terms().map(|(m, c)| (edges_of(m), c.to_string())), &mut k))
        .collect()
}

fn page_dot(elements: &[PageElement]) -> String {
    let mut k = 0;
    elements
        .iter()
        .map(|a| dot_graphs(a.points(), a.terms().map(|(m, c)| (edges_of(m), c.to_string())), &mut k))
        .collect()
}

fn lines<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| format!("{x}\n")).collect()
}

fn joined(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("value serializes")
}

fn conf(cmd: &ConfCmd) -> Result<Rendered, Failure> {
    match cmd {
        ConfCmd::Poincare { args } => {
            let p = confring::poincare_polynomial(args.points, args.dim)?;
            let top = args.points.saturating_sub(1) * (args.dim - 1);
            let coeffs: Vec<Scalar> = (0..=top).map(|d| p.coeff(&[d as u32])).collect();
            let json =
                json!({ "points": args.points, "dim": args.dim, "poincare": p.to_string(), "coefficients": coeffs });
            Ok(Rendered::new(json, format!("{p}\n")))
        }
        ConfCmd::Basis { args, degree } => {
            let monos = confring::basis(args.points, args.dim, *degree)?;
            let one = [Scalar::one()];
            let elements: Vec<ConfElement> = monos
                .iter()
                .map(|m| ConfElement::from_coordinates(args.points, args.dim, std::slice::from_ref(m), &one))
                .collect();
            let json = json!({ "points": args.points, "dim": args.dim, "degree": degree, "basis": elements });
            Ok(Rendered::new(json, lines(&elements)).with_dot(conf_dot(&elements)))
        }
        ConfCmd::NormalForm { args, word } => {
            let a = confring::normal_form(args.points, args.dim, &parse_word(word)?)?;
            Ok(Rendered::new(to_json(&a), format!("{a}\n")).with_dot(conf_dot(std::slice::from_ref(&a))))
        }
    }
}

fn convention(c: ConventionArg) -> WeylConvention {
    match c {
        ConventionArg::Standard => WeylConvention::Standard,
        ConventionArg::Paper => WeylConvention::Paper,
    }
}

/// The group acting on ℝ^{2n+1}.
fn odd_group(args: &GroupArgs) -> Result<GroupSpec, Failure> {
    let family = match args.group {
        GroupArg::Torus => GroupFamily::Torus,
        GroupArg::So => GroupFamily::SoOdd,
        GroupArg::O => GroupFamily::OOdd,
        GroupArg::U => return input_error("U(n) does not act on odd-dimensional space; use --group torus, so or o"),
    };
    Ok(GroupSpec::new(family, args.halfdim)?)
}

/// The group acting on ℝ^{2n}.
fn even_group(args: &GroupArgs) -> Result<GroupSpec, Failure> {
    let family = match args.group {
        GroupArg::Torus => GroupFamily::Torus,
        GroupArg::So => GroupFamily::SoEven,
        GroupArg::O => GroupFamily::OEven,
        GroupArg::U => GroupFamily::U,
    };
    Ok(GroupSpec::new(family, args.halfdim)?)
}

fn odd_basis(args: &GroupArgs, group: GroupSpec, degree: u32) -> Result<Vec<EquiElement>, Failure> {
    Ok(if group.family == GroupFamily::Torus {
        torus_basis(args.points, args.halfdim, degree)?
            .iter()
            .map(|m| EquiElement::from_basis(args.points, args.halfdim, m))
            .collect()
    } else {
        fixed_point_basis(group, args.points, degree, convention(args.weyl_convention))?
    })
}

fn equi(cmd: &EquiCmd) -> Result<Rendered, Failure> {
    match cmd {
        EquiCmd::Hilbert { args, max_degree } => {
            let group = odd_group(args)?;
            // The ring is concentrated in even degrees.
            let degrees: Vec<u32> = (0..=*max_degree).step_by(2).collect();
            let mut dims = Vec::new();
            for &d in &degrees {
                dims.push(odd_basis(args, group, d)?.len());
            }
            let json = json!({
                "group": group.to_string(),
                "points": args.points,
                "halfdim": args.halfdim,
                "degrees": degrees,
                "dims": dims,
            });
            let text = format!(
                "degrees: {}\ndims: {}\n",
                degrees.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
                joined(&dims)
            );
            Ok(Rendered::new(json, text))
        }
        EquiCmd::Basis { args, degree } => {
            let group = odd_group(args)?;
            let elements = odd_basis(args, group, *degree)?;
            let json =
                json!({ "group": group.to_string(), "points": args.points, "degree": degree, "basis": elements });
            Ok(Rendered::new(json, lines(&elements)).with_dot(equi_dot(&elements)))
        }
        EquiCmd::NormalForm { points, halfdim, word } => {
            let a = equiodd::normal_form(*points, *halfdim, &parse_word(word)?)?;
            Ok(Rendered::new(to_json(&a), format!("{a}\n")).with_dot(equi_dot(std::slice::from_ref(&a))))
        }
    }
}

fn even(cmd: &EvenCmd) -> Result<Rendered, Failure> {
    match cmd {
        EvenCmd::Model { args, max_degree } => {
            let group = even_group(args)?;
            let model = equivariant_cohomology_even(group, args.points, *max_degree)?;
            let dims = model.dims();
            let basis: BTreeMap<String, &Vec<PageElement>> =
                model.basis.iter().map(|(d, b)| (d.to_string(), b)).collect();
            let json = json!({ "group": group.to_string(), "points": args.points, "dims": dims, "basis": basis });
            let mut text = format!("dims: {}\n", joined(&dims));
            for (d, b) in &model.basis {
                for x in b {
                    let _ = writeln!(text, "{d}: {x}");
                }
            }
            let all: Vec<PageElement> = model.basis.values().flatten().cloned().collect();
            Ok(Rendered::new(json, text).with_dot(page_dot(&all)))
        }
        EvenCmd::Page { args, max_degree } => {
            let group = even_group(args)?;
            let report = verify_page_cohomology(group, args.points, *max_degree)?;
            let text = format!(
                "page cohomology: {}\nmodel: {}\nmatches: {}\n",
                joined(&report.page_cohomology),
                joined(&report.model),
                report.matches
            );
            let r = Rendered::new(to_json(&report), text);
            if report.matches {
                Ok(r)
            } else {
                Err(Failure::Verification(r))
            }
        }
        EvenCmd::Kernel { points, halfdim, max_degree } => {
            let k = kernel_k(*points, *halfdim, *max_degree)?;
            let mut text = String::new();
            for (d, b) in &k.basis {
                let _ = writeln!(text, "degree {d}: dim {}", b.len());
                for x in b {
                    let _ = writeln!(text, "  {x}");
                }
            }
            Ok(Rendered::new(to_json(&k), text))
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let raw =
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_complex(path: &Path) -> Result<FilteredComplex, Failure> {
    serde_json::from_value(read_json(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn weight_spec(w: &WeightArgs, r: usize) -> Result<WeightSpec, Failure> {
    let parse = |name: &str, s: &str| s.parse::<Scalar>().map_err(|e| Failure::Input(format!("--{name}: {e}")));
    Ok(WeightSpec::new(parse("xi", &w.xi)?, parse("alpha", &w.alpha)?, r)?)
}

fn complex_text(a: &FilteredComplex) -> String {
    let c = a.complex();
    let mut text = String::new();
    for n in 0..c.len() {
        let levels: Vec<usize> = a.levels(n).iter().map(|s| s.dim()).collect();
        let _ =
            writeln!(text, "A^{n}: dim {}, H^{n} = {}, filtration {}", c.dim(n), c.cohomology_dim(n), joined(&levels));
    }
    text
}

fn ss(cmd: &SsCmd) -> Result<Rendered, Failure> {
    match cmd {
        SsCmd::Page { input, page: r } => {
            let a = read_complex(input)?;
            let e = page(&a, *r);
            let mut text = format!("E_{r}\n");
            for ((i, j), d) in e.dims() {
                if d > 0 {
                    let _ = writeln!(text, "({},{j}) degree {}: {d}", -i, j - i);
                }
            }
            Ok(Rendered::new(e.to_json(), text))
        }
        SsCmd::Decalage { input } => {
            let dec = decalage(&read_complex(input)?);
            Ok(Rendered::new(to_json(&dec), complex_text(&dec)))
        }
        SsCmd::Purity { input, weights, page: p } => {
            if *p == 0 {
                return input_error("--page must be at least 1 for purity");
            }
            let a = read_complex(input)?;
            let spec = weight_spec(weights, p - 1)?;
            let outcome = purity_check_at_page(&a, &spec, *p)?;
            match &outcome {
                PurityOutcome::Certificate(c) => {
                    let text = format!("pure on E_{p}: {} spots certified\n", c.entries.len());
                    Ok(Rendered::new(to_json(&outcome), text))
                }
                PurityOutcome::Violation(v) => {
                    let text =
                        format!("violation on E_{} at ({},{}): offending factor {}\n", v.page, -v.i, v.j, v.factor);
                    Err(Failure::Verification(Rendered::new(to_json(&outcome), text)))
                }
            }
        }
        SsCmd::Witness { input, weights } => {
            let a = read_complex(input)?;
            let spec = weight_spec(weights, 0)?;
            let outcome = formality_witness(a.complex(), &spec)?;
            match &outcome {
                WitnessOutcome::Witness(w) => {
                    let mut text = format!("witness verified: {}\n", w.verified());
                    for d in &w.degrees {
                        let _ = writeln!(
                            text,
                            "degree {}: H = {}, chain map {}, equivariant {}",
                            d.degree, d.cohomology_dim, d.chain_map, d.equivariant
                        );
                    }
                    let r = Rendered::new(to_json(&outcome), text);
                    if w.verified() {
                        Ok(r)
                    } else {
                        Err(Failure::Verification(r))
                    }
                }
                WitnessOutcome::Refused(v) => {
                    let text = format!("refused: impure at ({},{}), offending factor {}\n", -v.i, v.j, v.factor);
                    Err(Failure::Verification(Rendered::new(to_json(&outcome), text)))
                }
            }
        }
        SsCmd::Random { seed, dim } => {
            let a = random_filtered_complex(&mut ChaCha8Rng::seed_from_u64(*seed), *dim, 4, true);
            Ok(Rendered::new(to_json(&a), complex_text(&a)))
        }
    }
}

fn render(input: &Path) -> Result<Rendered, Failure> {
    let v = read_json(input)?;
    let bad = |e: serde_json::Error| Failure::Input(format!("{}: {e}", input.display()));
    let obj = v.as_object().ok_or_else(|| Failure::Input("expected a JSON object".into()))?;
    if obj.contains_key("degrees") {
        let a: FilteredComplex = serde_json::from_value(v).map_err(bad)?;
        let mut text = complex_text(&a);
        let t = canonical_filtration(a.complex());
        let _ = writeln!(
            text,
            "canonical E_1 total dims: {}",
            joined(&(0..a.complex().len()).map(|n| page(&t, 1).total_dim(n as i64)).collect::<Vec<_>>())
        );
        return Ok(Rendered::new(to_json(&a), text));
    }
    if obj.contains_key("coeff_ring") {
        let a: PageElement = serde_json::from_value(v).map_err(bad)?;
        return Ok(Rendered::new(to_json(&a), format!("{a}\n")).with_dot(page_dot(std::slice::from_ref(&a))));
    }
    if obj.contains_key("halfdim") {
        let a: EquiElement = serde_json::from_value(v).map_err(bad)?;
        return Ok(Rendered::new(to_json(&a), format!("{a}\n")).with_dot(equi_dot(std::slice::from_ref(&a))));
    }
    if obj.contains_key("dim") {
        let a: ConfElement = serde_json::from_value(v).map_err(bad)?;
        return Ok(Rendered::new(to_json(&a), format!("{a}\n")).with_dot(conf_dot(std::slice::from_ref(&a))));
    }
    input_error("unrecognised JSON: expected a configuration, equivariant or page element, or a filtered complex")
}
