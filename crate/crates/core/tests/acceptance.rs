//! Acceptance suite. Runs every criterion, prints one line each and exits
//! non-zero if any failed or overran its time limit.
//!
//! `cargo test -p galshadow --test acceptance`

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use galshadow::embed::{
    check_extension_property, extend_homomorphisms, solve, validate_problem, EmbeddingProblem, MarkedGroup,
    Obstruction, SolveOutcome,
};
use galshadow::freeprod::{
    enumerate_quotients, level_quotient, separate, sylow_retraction, FreeProductContext, MarkedQuotient,
};
use galshadow::galois::{invariant_generators, recovery_matrix, verify_construction, FiniteField, TwistedSetup};
use galshadow::group::{are_isomorphic, normal_subgroups};
use galshadow::search::{enumerate_epimorphisms, enumerate_homomorphisms, find_complement, Catalog};
use galshadow::valuation::{
    check_tower, defect, inertia, ramification, splitting_report, DefectClass, NumericalExtensionData,
    RamificationDatum,
};
use galshadow::{Budget, FiniteGroup, GroupRef, Homomorphism};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hom_oracle() -> Outcome {
    let cat = catalog(6);
    let budget = Budget::unlimited();
    let mut pairs = 0;
    let mut homs = 0;
    for g in cat.iter() {
        for h in cat.iter() {
            let ours: Vec<Vec<usize>> = enumerate_homomorphisms(g, h, &budget)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|f| f.map().to_vec())
                .collect();
            let naive = all_function_homs(g, h);
            let (a, b): (BTreeSet<_>, BTreeSet<_>) = (ours.iter().collect(), naive.iter().collect());
            ensure(ours.len() == naive.len() && a == b, || {
                format!(
                    "{:?} -> {:?}: {} found, oracle {}",
                    g.label(),
                    h.label(),
                    ours.len(),
                    naive.len()
                )
            })?;
            pairs += 1;
            homs += naive.len();
        }
    }
    Ok(format!("{pairs} pairs, {homs} homomorphisms agree"))
}

fn catalog_counts() -> Outcome {
    let cat = catalog(12);
    let counts = cat.counts_by_order();
    let published = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5];
    ensure(counts == published, || format!("counts {counts:?}"))?;
    let groups = cat.groups();
    for (i, g) in groups.iter().enumerate() {
        for h in &groups[i + 1..] {
            ensure(g.order() != h.order() || are_isomorphic(g, h).is_none(), || {
                format!("{:?} and {:?} are isomorphic", g.label(), h.label())
            })?;
        }
    }
    Ok(format!("counts {counts:?}, pairwise non-isomorphic"))
}

fn solutions_by_enumeration(ep: &EmbeddingProblem) -> Vec<Homomorphism> {
    let epis = enumerate_epimorphisms(ep.source().group(), ep.b(), &Budget::unlimited()).unwrap();
    epis.into_iter()
        .filter(|g| {
            ep.source()
                .group()
                .elements()
                .all(|x| ep.psi().apply(g.apply(x)) == ep.phi().apply(x))
                && ep
                    .source()
                    .marks()
                    .iter()
                    .zip(ep.marks_b())
                    .all(|(gi, bi)| g.image_of(gi) == *bi)
        })
        .collect()
}

fn uniqueness() -> Outcome {
    let problems = generated_problems(12, 12, usize::MAX);
    ensure(problems.len() >= 50, || {
        format!("only {} problems generated", problems.len())
    })?;
    let mut solved = 0;
    for (k, ep) in problems.iter().enumerate() {
        let sols = solutions_by_enumeration(ep);
        ensure(sols.len() <= 1, || format!("problem {k}: {} solutions", sols.len()))?;
        let outcome = solve(ep).map_err(|e| e.to_string())?;
        ensure(outcome.solution().map(|s| &s.gamma) == sols.first(), || {
            format!("problem {k}: solver disagrees with enumeration")
        })?;
        solved += sols.len();
    }
    let unsolved = problems.len() - solved;
    ensure(solved > 0 && unsolved > 0, || {
        format!("{solved} solvable, {unsolved} unsolvable")
    })?;
    Ok(format!(
        "{} problems, {solved} with exactly one solution, {unsolved} with none",
        problems.len()
    ))
}

fn embedding_regression() -> Outcome {
    let psi = d4_onto_klein();
    let (d4, s, r) = d4();
    let (k, u, v) = klein();
    let sr = d4.mul(s, r);
    let marks_b = vec![sub(&d4, &[s]), sub(&d4, &[sr])];

    let source = MarkedGroup::from_generators(k.clone(), &[vec![u], vec![v]]).unwrap();
    let ep = EmbeddingProblem::new(source, Homomorphism::identity(&k), psi.clone(), marks_b.clone()).unwrap();
    ensure(validate_problem(&ep).is_empty(), || {
        "D4 problem reported invalid".into()
    })?;
    let out = solve(&ep).map_err(|e| e.to_string())?;
    ensure(
        out == SolveOutcome::Unsolvable(Obstruction::OrderObstruction { g: 4, b: 8 }),
        || format!("D4 over C2xC2: {out:?}"),
    )?;
    let mut lifts = 0;
    all_maps_dfs(&k, &d4, |f| {
        lifts += usize::from(image_set(f, &(0..4).collect::<Vec<_>>()).len() == 8)
    });
    ensure(lifts == 0, || "an epimorphism onto D4 from order 4".into())?;

    let source = MarkedGroup::from_generators(d4.clone(), &[vec![s], vec![sr]]).unwrap();
    let ep = EmbeddingProblem::new(source, psi.clone(), psi.clone(), marks_b).unwrap();
    let out = solve(&ep).map_err(|e| e.to_string())?;
    ensure(
        out.solution().map(|s| s.gamma.map().to_vec()) == Some((0..8).collect()),
        || format!("D4 identity problem: {out:?}"),
    )?;

    // B = A, ψ = id, Bᵢ = φ(Gᵢ): γ must be φ
    let (s3, el) = s3();
    let c2 = FiniteGroup::cyclic(2);
    let sign: Vec<usize> = (0..6)
        .map(|x| usize::from(el(&[1, 0, 2]) == x || el(&[2, 1, 0]) == x || el(&[0, 2, 1]) == x))
        .collect();
    let cases: Vec<(MarkedGroup, Homomorphism)> = vec![
        (
            MarkedGroup::from_generators(s3.clone(), &[vec![el(&[1, 0, 2])], vec![el(&[1, 2, 0])]]).unwrap(),
            Homomorphism::new(s3.clone(), c2.clone(), sign).unwrap(),
        ),
        (
            MarkedGroup::from_generators(d4.clone(), &[vec![s], vec![r]]).unwrap(),
            psi.clone(),
        ),
        (
            MarkedGroup::from_generators(s3.clone(), &[vec![0, 1, 2, 3, 4, 5]]).unwrap(),
            Homomorphism::identity(&s3),
        ),
    ];
    for (m, phi) in cases {
        let a = phi.codomain().clone();
        let marks_b = m.marks().iter().map(|gi| phi.image_of(gi)).collect();
        let ep = EmbeddingProblem::new(m, phi.clone(), Homomorphism::identity(&a), marks_b).unwrap();
        let out = solve(&ep).map_err(|e| e.to_string())?;
        ensure(out.solution().map(|s| &s.gamma) == Some(&phi), || {
            format!("identity problem: {out:?}")
        })?;
    }
    Ok("D4 over C2xC2 unsolvable (4 < 8); identity problems give gamma = phi".into())
}

fn c2_free_square() -> FreeProductContext {
    let c2 = FiniteGroup::cyclic(2);
    FreeProductContext::new(vec![c2.clone(), c2]).unwrap()
}

fn level_universality() -> Outcome {
    let ctx = c2_free_square();
    let cat = catalog(6);
    let budget = Budget::unlimited();
    let q = level_quotient(&ctx, &cat, &budget).map_err(|e| e.to_string())?;
    let m = q.marked_group();
    let report = check_extension_property(&m, &cat, &budget).map_err(|e| e.to_string())?;
    ensure(report.passes(), || format!("{} failures", report.failures.len()))?;
    // every tuple, not only orbit representatives
    let mut tuples = 0;
    let marks: Vec<GroupRef> = m.marks().iter().map(|s| s.to_group().0).collect();
    for h in cat.iter() {
        let h0 = enumerate_homomorphisms(&marks[0], h, &budget).unwrap();
        let h1 = enumerate_homomorphisms(&marks[1], h, &budget).unwrap();
        for a in &h0 {
            for b in &h1 {
                let ext = extend_homomorphisms(&m, &[a.clone(), b.clone()]).map_err(|e| e.to_string())?;
                ensure(ext.is_some(), || format!("no extension into {:?}", h.label()))?;
                tuples += 1;
            }
        }
    }
    Ok(format!(
        "Q6 of order {} passes at bound 6 ({tuples} tuples extend)",
        q.group().order()
    ))
}

fn separation_suite() -> Outcome {
    let ctx = c2_free_square();
    let cat8 = catalog(8);
    let budget = Budget::unlimited();
    let words = ctx.words_up_to(4);
    let mut pairs = 0;
    for (i, w1) in words.iter().enumerate() {
        for w2 in &words[i + 1..] {
            let sep = separate(&ctx, w1, w2, &cat8, &budget)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{w1} / {w2} not separated"))?;
            let (x, y) = (
                ctx.evaluate(w1, &sep.etas).unwrap(),
                ctx.evaluate(w2, &sep.etas).unwrap(),
            );
            ensure(x != y && (x, y) == sep.values, || format!("{w1} / {w2}: bad witness"))?;
            pairs += 1;
        }
    }
    let stst = ctx.word(&[(0, 1), (1, 1), (0, 1), (1, 1)]).unwrap();
    let tsts = ctx.word(&[(1, 1), (0, 1), (1, 1), (0, 1)]).unwrap();
    let small = separate(&ctx, &stst, &tsts, &catalog(4), &budget).map_err(|e| e.to_string())?;
    ensure(small.is_none(), || "stst / tsts separated below order 6".into())?;
    // the same over every hom pair into groups of order at most 4
    for h in catalog(4).iter() {
        for a in all_function_homs(&FiniteGroup::cyclic(2), h) {
            for b in all_function_homs(&FiniteGroup::cyclic(2), h) {
                let (a, b) = (a[1], b[1]);
                let l = h.mul(h.mul(a, b), h.mul(a, b));
                let r = h.mul(h.mul(b, a), h.mul(b, a));
                ensure(l == r, || format!("stst / tsts differ in {:?}", h.label()))?;
            }
        }
    }
    let six = separate(&ctx, &stst, &tsts, &catalog(6), &budget)
        .map_err(|e| e.to_string())?
        .ok_or("stst / tsts not separated at bound 6")?;
    ensure(six.target.order() == 6, || {
        format!("witness of order {}", six.target.order())
    })?;
    Ok(format!(
        "{pairs} pairs separated within bound 8; stst / tsts first separated at order 6"
    ))
}

fn retraction() -> Outcome {
    let (s3, el) = s3();
    let c2 = FiniteGroup::cyclic(2);
    let ctx = c2_free_square();
    let t12 = el(&[1, 0, 2]);
    let t13 = el(&[2, 1, 0]);
    let etas = vec![
        Homomorphism::new(c2.clone(), s3.clone(), vec![0, t12]).unwrap(),
        Homomorphism::new(c2.clone(), s3.clone(), vec![0, t13]).unwrap(),
    ];
    let mq = MarkedQuotient::new(&ctx, etas).unwrap();
    let ret = sylow_retraction(&mq, 2).map_err(|e| e.to_string())?;
    ensure(
        ret.report.all_passed() && ret.quotient.order() == 2 && ret.sylow.order() == 2,
        || format!("S3 retraction: {:?}", ret.report),
    )?;
    for (mark, &c) in mq.marks().iter().zip(&ret.conjugators) {
        ensure(ret.alpha.apply(c) == ret.quotient.identity(), || {
            "conjugator outside the kernel".into()
        })?;
        for &g in mark.elements() {
            let gc = s3.conjugate(g, c);
            ensure(
                ret.sylow.contains(gc) && ret.alpha.apply(gc) == ret.alpha.apply(g),
                || "conjugate misses P".into(),
            )?;
        }
    }
    let mut trivial = 0;
    let c3 = FiniteGroup::cyclic(3);
    let cases = [
        (c2_free_square(), 8, 2),
        (FreeProductContext::new(vec![c3.clone(), c3]).unwrap(), 9, 3),
    ];
    for (ctx, bound, p) in cases {
        for mq in enumerate_quotients(&ctx, &catalog(bound), &Budget::unlimited()).map_err(|e| e.to_string())? {
            if !is_prime_power_of(mq.group().order(), p) {
                continue;
            }
            let ret = sylow_retraction(&mq, p).map_err(|e| e.to_string())?;
            let q = mq.group();
            ensure(
                ret.sylow.is_whole() && ret.conjugators.iter().all(|&c| c == q.identity()) && ret.report.all_passed(),
                || format!("{p}-group quotient {:?}", q.label()),
            )?;
            trivial += 1;
        }
    }
    Ok(format!(
        "S3 at p = 2 verified, conjugators {:?}; {trivial} p-group quotients trivial",
        ret.conjugators
    ))
}

fn ramification_shadow() -> Outcome {
    let (s3, el) = s3();
    let c2 = FiniteGroup::cyclic(2);
    let sign: Vec<usize> = (0..6)
        .map(|x| usize::from([el(&[1, 0, 2]), el(&[2, 1, 0]), el(&[0, 2, 1])].contains(&x)))
        .collect();
    let rho = Homomorphism::new(s3.clone(), c2, sign).unwrap();
    let datum = RamificationDatum::new(rho.clone(), 3).map_err(|e| e.to_string())?;
    let a3 = sub(&s3, &[el(&[1, 2, 0])]);
    ensure(inertia(&datum) == a3 && ramification(&datum) == a3, || {
        "tower is not A3 = A3".into()
    })?;
    let tower = check_tower(&datum);
    ensure(tower.all_passed() && tower.orders == (3, 3, 6), || {
        format!("{:?}", tower.checks)
    })?;
    let split = splitting_report(&datum, &Budget::unlimited()).map_err(|e| e.to_string())?;
    let section = split.section.ok_or("no section of rho")?;
    ensure((0..2).all(|x| rho.apply(section.apply(x)) == x), || {
        "rho after section is not the identity".into()
    })?;
    let ok = defect(NumericalExtensionData { n: 8, e: 2, f: 2, p: 2 });
    ensure(ok == Ok(DefectClass::Defect(2)), || format!("(8,2,2,2): {ok:?}"))?;
    let bad = defect(NumericalExtensionData { n: 6, e: 2, f: 2, p: 3 });
    ensure(bad.is_err(), || format!("(6,2,2,3): {bad:?}"))?;
    Ok("G0 = G1 = A3, tower checks pass, section found; defect 2 accepted, (6,2,2,3) rejected".into())
}

fn twisted_construction() -> Outcome {
    let gf4 = FiniteField::new(2, &[1, 1, 1]).map_err(|e| e.to_string())?;
    let gf64 = FiniteField::new(2, &[1, 1, 0, 0, 0, 0, 1]).map_err(|e| e.to_string())?;
    let setups = [
        TwistedSetup::new(gf4, 1, FiniteGroup::cyclic(2), vec![0, 1], &[0, 1], None),
        TwistedSetup::new(gf64, 1, FiniteGroup::cyclic(6), (0..6).collect(), &[0, 2, 4], None),
    ];
    let mut summary = Vec::new();
    for setup in setups {
        let setup = setup.map_err(|e| e.to_string())?;
        let report = verify_construction(&setup).map_err(|e| e.to_string())?;
        ensure(
            report.all_passed() && report.generators == setup.group().order(),
            || format!("{report:?}"),
        )?;
        // recovery: inverse times the t-block gives the unit vectors on the coset
        let f = setup.field();
        let ts = invariant_generators(&setup);
        let m = setup.m();
        let b0 = setup.b0().elements();
        for (r, &rho) in setup.representatives().iter().enumerate() {
            let rec = recovery_matrix(&setup, rho).map_err(|e| e.to_string())?;
            for (k, &beta) in b0.iter().enumerate() {
                let mut x = vec![0u32; setup.group().order()];
                for j in 0..m {
                    let c = rec.inverse.get(k, j);
                    for (pos, &t) in ts[r * m + j].coeffs.iter().enumerate() {
                        x[pos] = f.add(x[pos], f.mul(c, t));
                    }
                }
                let target = setup.group().mul(rho, beta);
                let unit = x.iter().enumerate().all(|(pos, &v)| v == u32::from(pos == target));
                ensure(unit, || format!("x^{target} not recovered"))?;
            }
        }
        summary.push(format!("|L| = {}: {} forms", f.order(), report.generators));
    }
    Ok(summary.join(", "))
}

fn schur_zassenhaus() -> Outcome {
    let cat: Catalog = catalog(12);
    let budget = Budget::unlimited();
    let mut checked = 0;
    for g in cat.iter() {
        for n in normal_subgroups(g) {
            if gcd(n.order(), n.index()) != 1 {
                continue;
            }
            let c = find_complement(g, &n, &budget)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("no complement in {:?} of order {}", g.label(), n.order()))?;
            let closed = closure(g, c.elements()) == c.elements();
            let meet = c.elements().iter().filter(|&&x| n.contains(x)).count();
            ensure(closed && meet == 1 && c.order() * n.order() == g.order(), || {
                format!("bad complement in {:?}", g.label())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} coprime normal subgroups complemented"))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("homomorphism enumerator matches all-functions oracle", 30, hom_oracle),
        ("catalog counts up to order 12", 300, catalog_counts),
        ("embedding solutions are unique", 120, uniqueness),
        ("embedding problem regression", 1, embedding_regression),
        ("level quotient at bound 6 is universal", 120, level_universality),
        ("separation of short words in C2 * C2", 120, separation_suite),
        ("Sylow retraction", 1, retraction),
        ("inertia and ramification of S3 at 3", 1, ramification_shadow),
        ("invariant generators and recovery", 5, twisted_construction),
        ("coprime normal subgroups have complements", 60, schur_zassenhaus),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let in_time = took < Duration::from_secs(*limit);
        let (tag, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over {limit} s: {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "[{tag}] {:>2}. {name} ({} ms, limit {limit} s): {detail}",
            k + 1,
            took.as_millis()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
