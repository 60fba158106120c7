//! Dispatch from a scenario to the library, producing a [`Report`].

use galshadow::embed::{check_extension_property, solve, EmbeddingProblem, MarkedGroup, Obstruction, SolveOutcome};
use galshadow::freeprod::{
    enumerate_quotients, joint_image, level_quotient, separate, sylow_retraction, FreeProdError, FreeProductContext,
    MarkedQuotient,
};
use galshadow::galois::{verify_construction, FiniteField, GaloisError, TwistedSetup};
use galshadow::search::{enumerate_epimorphisms, enumerate_homomorphisms, Catalog};
use galshadow::valuation::{
    check_tower, defect, inertia, ramification, splitting_report, DefectClass, NumericalExtensionData,
    RamificationDatum,
};
use galshadow::{Budget, GroupRef, Homomorphism, Subgroup};
use serde_json::{json, Value};

use crate::report::Report;
use crate::scenario::{MarkedInput, Scenario, Task};
use crate::CliError;

pub struct Context<'a> {
    pub scenario: &'a Scenario,
    pub catalog: &'a Catalog,
    pub budget: &'a Budget,
}

impl Context<'_> {
    fn group(&self, name: &str, field: &str) -> Result<GroupRef, CliError> {
        self.scenario.group(name, field, self.catalog)
    }

    fn hom(
        &self,
        domain: &GroupRef,
        codomain: &GroupRef,
        map: &[usize],
        field: &str,
    ) -> Result<Homomorphism, CliError> {
        Homomorphism::new(domain.clone(), codomain.clone(), map.to_vec())
            .map_err(|e| CliError::Input(format!("{field}: {e}")))
    }

    fn subgroup(&self, g: &GroupRef, elements: &[usize], field: &str) -> Result<Subgroup, CliError> {
        for &x in elements {
            g.check_element(x)
                .map_err(|e| CliError::Input(format!("{field}: {e}")))?;
        }
        Ok(Subgroup::generated(g, elements))
    }

    fn marked(&self, input: &MarkedInput, field: &str) -> Result<MarkedGroup, CliError> {
        let g = self.group(&input.group, &format!("{field}.group"))?;
        let marks = input
            .marks
            .iter()
            .enumerate()
            .map(|(i, m)| self.subgroup(&g, m, &format!("{field}.marks[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        MarkedGroup::new(g, marks).map_err(|e| CliError::Input(format!("{field}: {e}")))
    }

    fn factors(&self, names: &[String]) -> Result<FreeProductContext, CliError> {
        let groups = names
            .iter()
            .enumerate()
            .map(|(i, n)| self.group(n, &format!("factors[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        FreeProductContext::new(groups).map_err(|e| CliError::Input(format!("factors: {e}")))
    }
}

fn group_json(g: &GroupRef) -> Value {
    json!({ "name": g.label(), "order": g.order() })
}

fn label(g: &GroupRef) -> String {
    g.label()
        .map(str::to_owned)
        .unwrap_or_else(|| format!("group of order {}", g.order()))
}

fn maps_json(etas: &[Homomorphism]) -> Value {
    Value::from(etas.iter().map(|e| e.map().to_vec()).collect::<Vec<_>>())
}

fn quotient_json(q: &MarkedQuotient) -> Value {
    json!({
        "group": group_json(q.group()),
        "etas": maps_json(q.etas()),
        "marks": q.marks().iter().map(|m| m.elements().to_vec()).collect::<Vec<_>>(),
    })
}

pub fn run(ctx: &Context) -> Result<Report, CliError> {
    match &ctx.scenario.task {
        Task::HomEnum { source, target, epi } => hom_enum(ctx, source, target, *epi),
        Task::EpSolve {
            source,
            a,
            b,
            phi,
            psi,
            marks_b,
        } => ep_solve(ctx, source, a, b, phi, psi, marks_b),
        Task::Certify { marked, level_of } => certify(ctx, marked.as_ref(), level_of.as_deref()),
        Task::FpQuotients { factors } => fp_quotients(ctx, factors),
        Task::FpSeparate { factors, w1, w2 } => fp_separate(ctx, factors, w1, w2),
        Task::FpLevel { factors } => fp_level(ctx, factors),
        Task::FpRetraction {
            factors,
            target,
            etas,
            p,
        } => fp_retraction(ctx, factors, target, etas, *p),
        Task::Ram {
            gamma,
            delta,
            rho,
            p,
            extension,
        } => ram(ctx, gamma, delta, rho, *p, extension.as_ref().map(|x| (x.n, x.e, x.f))),
        Task::Split { gamma, delta, rho, p } => split(ctx, gamma, delta, rho, *p),
        Task::Realize {
            p,
            qdeg,
            big_m,
            poly,
            b,
            psi,
            b0,
            basis,
        } => realize(ctx, *p, *qdeg, *big_m, poly, b, psi, b0, basis.as_deref()),
    }
}

fn hom_enum(ctx: &Context, source: &str, target: &str, epi: bool) -> Result<Report, CliError> {
    let g = ctx.group(source, "source")?;
    let h = ctx.group(target, "target")?;
    let homs = if epi {
        enumerate_epimorphisms(&g, &h, ctx.budget)?
    } else {
        enumerate_homomorphisms(&g, &h, ctx.budget)?
    };
    let what = if epi { "epimorphisms" } else { "homomorphisms" };
    let mut r = Report::new(if homs.is_empty() { "none" } else { "found" }, !homs.is_empty());
    r.line(format!("{what} {} -> {}: {}", label(&g), label(&h), homs.len()));
    r.set("count", json!(homs.len()));
    r.set("maps", maps_json(&homs));
    Ok(r)
}

fn ep_solve(
    ctx: &Context,
    source: &MarkedInput,
    a: &str,
    b: &str,
    phi: &[usize],
    psi: &[usize],
    marks_b: &[Vec<usize>],
) -> Result<Report, CliError> {
    let m = ctx.marked(source, "source")?;
    let ga = ctx.group(a, "A")?;
    let gb = ctx.group(b, "B")?;
    let phi = ctx.hom(m.group(), &ga, phi, "phi")?;
    let psi = ctx.hom(&gb, &ga, psi, "psi")?;
    let marks_b = marks_b
        .iter()
        .enumerate()
        .map(|(i, x)| ctx.subgroup(&gb, x, &format!("marksB[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let ep = EmbeddingProblem::new(m, phi, psi, marks_b).map_err(|e| CliError::Input(e.to_string()))?;
    match solve(&ep).map_err(|e| CliError::Input(e.to_string()))? {
        SolveOutcome::Solved(sol) => {
            let mut r = Report::new("solved", true);
            r.line(format!("solution gamma = {:?}", sol.gamma.map()));
            r.set("gamma", json!(sol.gamma.map()));
            Ok(r)
        }
        SolveOutcome::Unsolvable(obs) => {
            let mut r = Report::new("unsolvable", false);
            let reason = match obs {
                Obstruction::OrderObstruction { g, b } if g < b => {
                    format!("no epimorphism exists (order obstruction {g} < {b})")
                }
                Obstruction::OrderObstruction { g, b } => {
                    format!("no epimorphism exists (order obstruction: {b} does not divide {g})")
                }
                Obstruction::Inconsistent { element, first, second } => format!(
                    "the forced values on the marks do not extend: element {element} would map to both {first} and {second}"
                ),
            };
            r.line(reason.clone());
            r.set("reason", json!(reason));
            Ok(r)
        }
    }
}

fn certify(ctx: &Context, marked: Option<&MarkedInput>, level_of: Option<&[String]>) -> Result<Report, CliError> {
    let m = match (marked, level_of) {
        (Some(input), None) => ctx.marked(input, "marked")?,
        (None, Some(factors)) => {
            let fp = ctx.factors(factors)?;
            level_quotient(&fp, ctx.catalog, ctx.budget)?.marked_group()
        }
        _ => {
            return Err(CliError::Input(
                "certify: give exactly one of `marked` or `level_of`".into(),
            ))
        }
    };
    let report = check_extension_property(&m, ctx.catalog, ctx.budget)?;
    let mut r = Report::new(if report.passes() { "passed" } else { "failed" }, report.passes());
    r.line(format!(
        "marked group of order {} with {} marks, catalog bound {}",
        m.group().order(),
        m.len(),
        report.bound
    ));
    r.line(format!(
        "tuples checked: {}, failures: {}",
        report.tuples_checked,
        report.failures.len()
    ));
    for f in report.failures.iter().take(10) {
        let maps: Vec<_> = f.etas.iter().map(|e| e.map().to_vec()).collect();
        r.line(format!("  no extension into {}: {:?}", label(&f.target), maps));
    }
    r.set("group_order", json!(m.group().order()));
    r.set("tuples_checked", json!(report.tuples_checked));
    r.set(
        "failures",
        Value::from(
            report
                .failures
                .iter()
                .map(|f| json!({ "target": group_json(&f.target), "etas": maps_json(&f.etas) }))
                .collect::<Vec<_>>(),
        ),
    );
    Ok(r)
}

fn fp_quotients(ctx: &Context, factors: &[String]) -> Result<Report, CliError> {
    let fp = ctx.factors(factors)?;
    let qs = enumerate_quotients(&fp, ctx.catalog, ctx.budget)?;
    let mut r = Report::new("found", true);
    r.line(format!(
        "marked quotients up to order {}: {}",
        ctx.catalog.bound(),
        qs.len()
    ));
    for q in &qs {
        r.line(format!(
            "  {}: {:?}",
            label(q.group()),
            q.etas().iter().map(|e| e.map().to_vec()).collect::<Vec<_>>()
        ));
    }
    r.set(
        "quotients",
        Value::from(qs.iter().map(quotient_json).collect::<Vec<_>>()),
    );
    Ok(r)
}

fn fp_separate(
    ctx: &Context,
    factors: &[String],
    w1: &[(usize, usize)],
    w2: &[(usize, usize)],
) -> Result<Report, CliError> {
    let fp = ctx.factors(factors)?;
    let u = fp.word(w1).map_err(|e| CliError::Input(format!("w1: {e}")))?;
    let v = fp.word(w2).map_err(|e| CliError::Input(format!("w2: {e}")))?;
    let found = match separate(&fp, &u, &v, ctx.catalog, ctx.budget) {
        Err(FreeProdError::EqualWords) => return Err(CliError::Input(format!("w1, w2: both reduce to {u}"))),
        other => other?,
    };
    let mut r = Report::new(
        if found.is_some() { "separated" } else { "not-separated" },
        found.is_some(),
    );
    r.line(format!("w1 = {u}"));
    r.line(format!("w2 = {v}"));
    r.set("w1", json!(u.syllables()));
    r.set("w2", json!(v.syllables()));
    match found {
        Some(s) => {
            r.line(format!(
                "witness in {} (order {}): values {} and {}",
                label(&s.target),
                s.target.order(),
                s.values.0,
                s.values.1
            ));
            r.set(
                "witness",
                json!({
                    "group": group_json(&s.target),
                    "etas": maps_json(&s.etas),
                    "values": [s.values.0, s.values.1],
                }),
            );
        }
        None => r.line(format!("no witness of order at most {}", ctx.catalog.bound())),
    }
    Ok(r)
}

fn fp_level(ctx: &Context, factors: &[String]) -> Result<Report, CliError> {
    let fp = ctx.factors(factors)?;
    let q = level_quotient(&fp, ctx.catalog, ctx.budget)?;
    let mut r = Report::new("built", true);
    r.line(format!(
        "level quotient at bound {}: order {}",
        ctx.catalog.bound(),
        q.group().order()
    ));
    r.set("quotient", quotient_json(&q));
    r.set("table", json!(q.group().rows()));
    Ok(r)
}

fn fp_retraction(
    ctx: &Context,
    factors: &[String],
    target: &str,
    etas: &[Vec<usize>],
    p: usize,
) -> Result<Report, CliError> {
    let fp = ctx.factors(factors)?;
    let h = ctx.group(target, "target")?;
    if etas.len() != fp.len() {
        return Err(CliError::Input(format!(
            "etas: {} maps for {} factors",
            etas.len(),
            fp.len()
        )));
    }
    let etas = etas
        .iter()
        .zip(fp.factors())
        .enumerate()
        .map(|(i, (m, g))| ctx.hom(g, &h, m, &format!("etas[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let mq = joint_image(&fp, &etas).map_err(|e| CliError::Input(e.to_string()))?;
    let ret = match sylow_retraction(&mq, p) {
        Ok(ret) => ret,
        Err(FreeProdError::NoConjugatorFound { index }) => {
            let mut r = Report::new("no-conjugator", false);
            r.line(format!("no conjugator found for mark {index}"));
            return Ok(r);
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let ok = ret.report.all_passed();
    let mut r = Report::new(if ok { "verified" } else { "check-failed" }, ok);
    r.line(format!(
        "Q of order {}, Sylow {p}-subgroup of order {}, maximal {p}-quotient of order {}",
        mq.group().order(),
        ret.sylow.order(),
        ret.quotient.order()
    ));
    r.line(format!("conjugators: {:?}", ret.conjugators));
    let rep = ret.report;
    r.set("quotient_order", json!(mq.group().order()));
    r.set("sylow", json!(ret.sylow.elements()));
    r.set("p_quotient_order", json!(ret.quotient.order()));
    r.set("alpha", json!(ret.alpha.map()));
    r.set("conjugators", json!(ret.conjugators));
    r.set(
        "checks",
        json!({
            "sylow_onto_quotient": rep.sylow_onto_quotient,
            "marks_conjugated_into_sylow": rep.marks_conjugated_into_sylow,
            "conjugators_in_kernel": rep.conjugators_in_kernel,
            "alpha_unchanged_on_marks": rep.alpha_unchanged_on_marks,
        }),
    );
    Ok(r)
}

fn datum(ctx: &Context, gamma: &str, delta: &str, rho: &[usize], p: usize) -> Result<RamificationDatum, CliError> {
    let g = ctx.group(gamma, "gamma")?;
    let d = ctx.group(delta, "delta")?;
    let rho = ctx.hom(&g, &d, rho, "rho")?;
    RamificationDatum::new(rho, p).map_err(|e| CliError::Input(format!("datum: {e}")))
}

fn ram(
    ctx: &Context,
    gamma: &str,
    delta: &str,
    rho: &[usize],
    p: usize,
    ext: Option<(usize, usize, usize)>,
) -> Result<Report, CliError> {
    let d = datum(ctx, gamma, delta, rho, p)?;
    let tower = check_tower(&d);
    let mut ok = tower.all_passed();
    let (g0, g1) = (inertia(&d), ramification(&d));
    let mut r = Report::new("", true);
    let (o1, o0, og) = tower.orders;
    r.line(format!("tower orders (|G1|, |G0|, |Gamma|) = ({o1}, {o0}, {og})"));
    for (name, pass) in &tower.checks {
        r.line(format!("  [{}] {name}", if *pass { "ok" } else { "FAIL" }));
    }
    r.set("inertia", json!(g0.elements()));
    r.set("ramification", json!(g1.elements()));
    r.set("tower_orders", json!([o1, o0, og]));
    r.set(
        "checks",
        Value::Object(tower.checks.iter().map(|(n, b)| (n.to_string(), json!(b))).collect()),
    );
    if let Some((n, e, f)) = ext {
        let v = match defect(NumericalExtensionData { n, e, f, p }) {
            Ok(DefectClass::Defectless) => {
                r.line(format!("extension ({n}, {e}, {f}): defectless"));
                json!({ "defect": 1, "class": "defectless" })
            }
            Ok(DefectClass::Defect(dd)) => {
                r.line(format!("extension ({n}, {e}, {f}): defect {dd}"));
                json!({ "defect": dd, "class": "defect" })
            }
            Err(err) => {
                ok = false;
                r.line(format!("extension ({n}, {e}, {f}): rejected, {err}"));
                json!({ "class": "rejected", "reason": err.to_string() })
            }
        };
        r.set("extension", v);
    }
    r.set_status(if ok { "passed" } else { "failed" }, ok);
    Ok(r)
}

fn split(ctx: &Context, gamma: &str, delta: &str, rho: &[usize], p: usize) -> Result<Report, CliError> {
    let d = datum(ctx, gamma, delta, rho, p)?;
    let s = splitting_report(&d, ctx.budget)?;
    let found = s.section.is_some();
    let mut r = Report::new(if found { "split" } else { "no-section" }, found);
    let show = |x: &Option<Subgroup>| x.as_ref().map(|c| c.elements().to_vec());
    match &s.section {
        Some(sec) => r.line(format!("section of rho: {:?}", sec.map())),
        None => r.line("no section of rho exists (exhaustive)".to_owned()),
    }
    for (name, c) in [
        ("complement of inertia", &s.inertia_complement),
        ("complement of ramification", &s.ramification_complement),
        ("tame complement", &s.tame_complement),
    ] {
        match c {
            Some(c) => r.line(format!("{name}: {:?}", c.elements())),
            None => r.line(format!("{name}: none")),
        }
    }
    r.set("section", json!(s.section.as_ref().map(|x| x.map().to_vec())));
    r.set("inertia_complement", json!(show(&s.inertia_complement)));
    r.set("ramification_complement", json!(show(&s.ramification_complement)));
    r.set("tame_complement", json!(show(&s.tame_complement)));
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn realize(
    ctx: &Context,
    p: u32,
    qdeg: usize,
    big_m: usize,
    poly: &[u32],
    b: &str,
    psi: &[usize],
    b0: &[usize],
    basis: Option<&[Vec<u32>]>,
) -> Result<Report, CliError> {
    let field = FiniteField::new(p, poly).map_err(|e| CliError::Input(format!("poly: {e}")))?;
    if field.degree() != qdeg * big_m {
        return Err(CliError::Input(format!(
            "poly: degree {} differs from qdeg * M = {}",
            field.degree(),
            qdeg * big_m
        )));
    }
    let gb = ctx.group(b, "B")?;
    let basis = basis.map(|w| w.iter().map(|c| field.from_coeffs(c)).collect());
    let setup =
        TwistedSetup::new(field, qdeg, gb, psi.to_vec(), b0, basis).map_err(|e| CliError::Input(e.to_string()))?;
    let report = match verify_construction(&setup) {
        Ok(rep) => rep,
        Err(GaloisError::SingularMatrix) => {
            let mut r = Report::new("singular-basis", false);
            r.line("the recovery matrix is singular: the given elements are not a basis".to_owned());
            return Ok(r);
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let ok = report.all_passed();
    let mut r = Report::new(if ok { "verified" } else { "check-failed" }, ok);
    r.line(format!(
        "field of order {}, |B| = {}, m = {}, |R| = {}, generators = {}",
        setup.field().order(),
        setup.group().order(),
        setup.m(),
        setup.representatives().len(),
        report.generators
    ));
    for (name, pass) in [
        ("invariance under B0", report.invariant),
        ("recovery matrices invertible", report.matrices_invertible),
        ("count |R|*m = |B|", report.count_matches),
        ("span bijection", report.span_bijection),
    ] {
        r.line(format!("  [{}] {name}", if pass { "ok" } else { "FAIL" }));
    }
    r.set("field_order", json!(setup.field().order()));
    r.set("representatives", json!(setup.representatives()));
    r.set("generators", json!(report.generators));
    r.set(
        "checks",
        json!({
            "invariant": report.invariant,
            "matrices_invertible": report.matrices_invertible,
            "count_matches": report.count_matches,
            "span_bijection": report.span_bijection,
        }),
    );
    Ok(r)
}
