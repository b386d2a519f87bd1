use arglue_core::abutment::{abutments, catalan, interval_rep, linear_a, tilting_modules, Fracturing, Side};
use arglue_core::algebra::{kupisch_of, nakayama, starlike, ArmDir, KupischSeries, KupischShape};
use arglue_core::ar::{ar_quiver, ar_quiver_closure, nakayama_uniserials, DEFAULT_CAP};
use arglue_core::catalog::{
    amalgam_a, amalgam_b, amalgam_glue, double_example, double_gluing, fractured_example, fractured_example_tilde_relations,
    kupisch_example, mirrored_pair, orbit_four_example, run_fixture, run_self_glue, starlike_example, triple_example,
};
use arglue_core::corpus::{self, random_acyclic_kupisch, random_cyclic_kupisch, random_decoration, random_tree_system, starlike_shapes, TreeShape};
use arglue_core::decompose::decompose;
use arglue_core::glue::{equal_up_to_renaming, glue, glue_ar, glue_system_both_orders, structurally_equal};
use arglue_core::homology::{ext_dim, syzygy_steps};
use arglue_core::orbit::tilde;
use arglue_core::verify::{check_fractured, check_nct, fractured_candidate, nct_candidate, starlike_classify, generate_sinks_sources, Subcategory};
use arglue_core::{Algebra, Rep, Result};
use rand::Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn same_set(alg: &Arc<Algebra>, a: &[Rep], b: &[Rep]) -> bool {
    let sa = Subcategory::new(alg, a.iter().cloned());
    a.len() == b.len() && b.iter().all(|m| sa.contains(m))
}

fn amalgamation() -> Result<Outcome> {
    let g = amalgam_glue()?;
    let (b, a) = (Arc::new(amalgam_b()), Arc::new(amalgam_a()));
    let (ar_a, ar_b) = (ar_quiver(&a)?, ar_quiver(&b)?);
    let lam = ar_quiver(&g.identified.algebra)?;
    let glued = glue_ar(&ar_a, &ar_b, &g)?;
    let h = g.p.height();
    let shared = h * (h + 1) / 2;
    let ok = ar_b.len() == 24 && ar_a.len() == 9 && shared == 6 && lam.len() == 27 && glued.matches(&lam);
    outcome(ok, format!("{} + {} - {} = {}, glue_ar matches knitting: {}", ar_b.len(), ar_a.len(), shared, lam.len(), glued.matches(&lam)))
}

fn starlike_agreement(rays: &[(usize, ArmDir)], n: usize) -> Result<(bool, Option<String>)> {
    let alg = Arc::new(starlike(rays)?);
    let v = starlike_classify(&alg, n)?;
    let m = nct_candidate(&alg, n, DEFAULT_CAP)?;
    let indecs = ar_quiver(&alg)?.reps();
    let rep = check_nct(&indecs, &m, n)?;
    Ok((rep.pass, (v.pass != rep.pass).then(|| format!("{:?} n={}: classifier {} check_nct {}", rays, n, v.pass, rep.pass))))
}

fn one_direction(rays: &[(usize, ArmDir)]) -> bool {
    rays.iter().all(|r| r.1 == rays[0].1)
}

fn starlike_sweep() -> Result<Outcome> {
    let mut cases = Vec::new();
    for k in [1usize, 3, 4] {
        for rays in starlike_shapes(k, 9) {
            if k == 4 && one_direction(&rays) {
                continue;
            }
            for n in 2..=5 {
                cases.push((rays.clone(), n));
            }
        }
    }
    let verdicts: Vec<(bool, Option<String>)> = cases.par_iter().map(|(r, n)| starlike_agreement(r, *n)).collect::<Result<_>>()?;
    let passing = verdicts.iter().filter(|v| v.0).count();
    let bad: Vec<String> = verdicts.into_iter().filter_map(|v| v.1).collect();
    let st = starlike_example();
    let a = starlike_classify(&st.algebra, 4)?;
    let b = starlike_classify(&st.algebra, 2)?;
    let fig = a.pass && b.pass && a.gldim == Some(7) && b.gldim == Some(7);
    let fixture = run_fixture(&st)?.0;
    let mut detail = format!("{} cases ({} admit one), {} disagreements, figure gldim {:?}/{:?}", cases.len(), passing, bad.len(), a.gldim, b.gldim);
    if let Some(first) = bad.first() {
        detail.push_str(&format!(", first: {first}"));
    }
    outcome(bad.is_empty() && fig && fixture, detail)
}

fn kupisch_pipeline() -> Result<Outcome> {
    let k = kupisch_example();
    let (base_ok, _) = run_fixture(&k.base)?;
    let til = tilde(&k.base.algebra, &k.witness()?)?;
    let want = KupischSeries::new(vec![2, 2, 3, 3, 3, 3, 2], KupischShape::Cyclic)?.normalized();
    let series_ok = kupisch_of(&til.algebra)? == want;
    let (orbit_ok, detail) = run_self_glue(&k)?;
    outcome(base_ok && series_ok && orbit_ok, format!("acyclic n=3 {base_ok}, tilde series {series_ok}, {detail}"))
}

fn perturbations(alg: &Arc<Algebra>, m: &[Rep], indecs: &[Rep], rng: &mut corpus::CorpusRng) -> Vec<Vec<Rep>> {
    let mut out = vec![m.to_vec()];
    let sub = Subcategory::new(alg, m.iter().cloned());
    let outside: Vec<&Rep> = indecs.iter().filter(|x| !sub.contains(x)).collect();
    if !outside.is_empty() {
        let mut more = m.to_vec();
        more.push(outside[rng.gen_range(0..outside.len())].clone());
        out.push(more);
    }
    if m.len() > 1 {
        let mut less = m.to_vec();
        less.remove(rng.gen_range(0..m.len()));
        out.push(less);
    }
    out
}

fn oracle_equivalence() -> Result<Outcome> {
    let algs = corpus::oracle_corpus(0x5eed_0004, 60, 12);
    let mut rng = corpus::rng(41);
    let mut jobs = Vec::new();
    for a in &algs {
        for n in 2..=4 {
            jobs.push((a.clone(), n, rng.gen::<u64>()));
        }
    }
    let results: Vec<(usize, usize, Option<String>)> = jobs
        .par_iter()
        .map(|(alg, n, seed)| -> Result<(usize, usize, Option<String>)> {
            let fr = Fracturing::trivial(alg);
            let indecs = ar_quiver(alg)?.reps();
            let m = nct_candidate(alg, *n, DEFAULT_CAP)?;
            let fm = fractured_candidate(alg, &fr, *n, DEFAULT_CAP)?;
            if !same_set(alg, &m, &fm) {
                return Ok((0, 0, Some(format!("candidates differ on {} vertices, n={}", alg.num_vertices(), n))));
            }
            let mut r = corpus::rng(*seed);
            let (mut checks, mut passes) = (0, 0);
            for sub in perturbations(alg, &m, &indecs, &mut r) {
                let a = check_nct(&indecs, &sub, *n)?.pass;
                let b = check_fractured(alg, &fr, &sub, *n)?.pass;
                checks += 1;
                passes += a as usize;
                if a != b {
                    return Ok((checks, passes, Some(format!("verdicts differ on {} vertices, n={}", alg.num_vertices(), n))));
                }
            }
            Ok((checks, passes, None))
        })
        .collect::<Result<_>>()?;
    let checks: usize = results.iter().map(|r| r.0).sum();
    let passes: usize = results.iter().map(|r| r.1).sum();
    let bad: Vec<&String> = results.iter().filter_map(|r| r.2.as_ref()).collect();
    let mut detail = format!("{} algebras, {} comparisons ({} pass, {} fail), {} mismatches", algs.len(), checks, passes, checks - passes, bad.len());
    if let Some(b) = bad.first() {
        detail.push_str(&format!(", first: {b}"));
    }
    outcome(algs.len() >= 50 && bad.is_empty(), detail)
}

fn order_independence() -> Result<Outcome> {
    let mut rng = corpus::rng(5);
    let mut total = 0;
    let mut bad = Vec::new();
    for shape in [TreeShape::C1, TreeShape::C2, TreeShape::C3] {
        for t in 0..20 {
            let sys = random_tree_system(&mut rng, shape)?;
            let (x, y) = glue_system_both_orders(&sys)?;
            total += 1;
            if !structurally_equal(&x, &y) {
                bad.push(format!("{shape:?} trial {t}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{} systems, {} order-dependent", total, bad.len()))
}

fn trivial_gluing() -> Result<Outcome> {
    let mut rng = corpus::rng(6);
    let mut done = 0;
    let mut bad = Vec::new();
    while done < 10 {
        let b = random_decoration(&mut rng);
        let rights = abutments(&b, Side::Right);
        let lefts = abutments(&b, Side::Left);
        if rights.is_empty() || lefts.is_empty() {
            continue;
        }
        let i = &rights[rng.gen_range(0..rights.len())];
        let p = &lefts[rng.gen_range(0..lefts.len())];
        let (ha, hp) = (linear_a(i.height()), linear_a(p.height()));
        let right = glue(&b, i.anchor, &ha, 0)?;
        let left = glue(&hp, hp.num_vertices() - 1, &b, p.anchor)?;
        let ok = right.trivial
            && left.trivial
            && equal_up_to_renaming(&right.identified.algebra, &b)
            && equal_up_to_renaming(&left.identified.algebra, &b);
        if !ok {
            bad.push(format!("{} vertices, heights {}/{}", b.num_vertices(), i.height(), p.height()));
        }
        done += 1;
    }
    outcome(bad.is_empty(), format!("{} algebras glued on both sides, {} changed", done, bad.len()))
}

fn fractured_self_gluing() -> Result<Outcome> {
    let fe = fractured_example();
    let alg = &fe.base.algebra;
    let m = fe.base.modules()?;
    let n2 = check_fractured(alg, &fe.fracturing, &m, 2)?.pass;
    let s7 = Rep::simple(alg, alg.vertex("7")?);
    let mut got: Vec<Vec<usize>> = decompose(&syzygy_steps(&s7, -2))?.parts.iter().map(|p| p.dims().to_vec()).collect();
    got.sort();
    let mut want = vec![Rep::simple(alg, alg.vertex("5")?).dims().to_vec(), Rep::simple(alg, alg.vertex("2'")?).dims().to_vec()];
    want.sort();
    let cosyz = got == want;
    let til = tilde(alg, &fe.witness()?)?;
    let rels: BTreeSet<Vec<String>> = fractured_example_tilde_relations().into_iter().collect();
    let rel_ok = til.algebra.relation_names() == rels;
    let (orbit_ok, detail) = run_self_glue(&fe)?;
    let twelve = fe.tilde_members.len() == 12;
    outcome(
        n2 && cosyz && rel_ok && orbit_ok && twelve,
        format!("n=2 {n2}, cosyzygy of S(7) {cosyz}, relations {rel_ok}, {detail}"),
    )
}

fn ext1_rigid(h: usize, t: &arglue_core::abutment::IntervalSet) -> Result<bool> {
    let alg = Arc::new(linear_a(h));
    let reps: Vec<Rep> = t.intervals.iter().map(|&x| interval_rep(&alg, x)).collect();
    for x in &reps {
        for y in &reps {
            if ext_dim(x, y, 1)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn tilting_enumeration() -> Result<Outcome> {
    let mut ok = true;
    let mut counts = Vec::new();
    for h in 1..=7 {
        let ts = tilting_modules(h);
        counts.push(ts.len());
        let rigid: Vec<bool> = ts.par_iter().map(|t| ext1_rigid(h, t)).collect::<Result<_>>()?;
        let mirrored = ts.iter().any(|t| t.is_mirrored());
        ok &= ts.len() as u64 == catalan(h) && rigid.iter().all(|&r| r) && ts.iter().all(|t| t.intervals.len() == h);
        ok &= mirrored == (h % 2 == 1);
    }
    let (t1, t2) = mirrored_pair();
    let pair = t1.is_tilting() && t2.is_tilting() && t1.is_mirrored() && !t2.is_mirrored();
    outcome(ok && pair, format!("counts {counts:?}, T1 mirrored {}, T2 mirrored {}", t1.is_mirrored(), t2.is_mirrored()))
}

fn nakayama_counting() -> Result<Outcome> {
    let mut rng = corpus::rng(9);
    let mut series = Vec::new();
    for i in 0..100 {
        let len = rng.gen_range(1..=10);
        series.push(if i % 2 == 0 || len == 1 { random_acyclic_kupisch(&mut rng, len) } else { random_cyclic_kupisch(&mut rng, len, 6) });
    }
    let bad: Vec<String> = series
        .par_iter()
        .map(|k| -> Result<Option<String>> {
            let alg = Arc::new(nakayama(k)?);
            let ar = if k.shape() == KupischShape::Acyclic { ar_quiver(&alg)? } else { ar_quiver_closure(&alg, DEFAULT_CAP)? };
            let ser = nakayama_uniserials(&alg);
            let ok = ar.len() == k.sum() && ser.len() == k.sum() && ser.iter().all(|m| ar.find(m).is_some()) && ar.mesh_identity_holds();
            Ok((!ok).then(|| format!("{:?} {:?}: ar {} uniserial {}", k.shape(), k.entries(), ar.len(), ser.len())))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let cyclic = series.iter().filter(|k| k.shape() == KupischShape::Cyclic).count();
    let mut detail = format!("{} series ({} cyclic), {} failures", series.len(), cyclic, bad.len());
    if let Some(b) = bad.first() {
        detail.push_str(&format!(", first: {b}"));
    }
    outcome(bad.is_empty(), detail)
}

fn generator() -> Result<Outcome> {
    let mut cases = Vec::new();
    for s in 1..=4 {
        for t in 1..=4 {
            for n in 2..=4 {
                cases.push((s, t, n));
            }
        }
    }
    let bad: Vec<String> = cases
        .par_iter()
        .map(|&(s, t, n)| -> Result<Option<String>> {
            let g = generate_sinks_sources(s, t, n)?;
            let alg = &g.glued.algebra;
            let indecs = ar_quiver(alg)?.reps();
            let rep = check_nct(&indecs, &g.candidate, n)?;
            let ok = alg.sources().len() == s && alg.sinks().len() == t && rep.pass;
            Ok((!ok).then(|| format!("s={s} t={t} n={n}: {} sources, {} sinks, check_nct {}", alg.sources().len(), alg.sinks().len(), rep.pass)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut detail = format!("{} triples, {} failures", cases.len(), bad.len());
    if let Some(b) = bad.first() {
        detail.push_str(&format!(", first: {b}"));
    }
    outcome(bad.is_empty(), detail)
}

fn double_triple() -> Result<Outcome> {
    let d = double_example();
    let iso = arglue_core::algebra::isomorphic_presentations(&double_gluing()?.algebra, &d.algebra);
    let (double_ok, _) = run_fixture(&d)?;
    let (triple_ok, _) = run_self_glue(&triple_example())?;
    let (four_ok, _) = run_self_glue(&orbit_four_example())?;
    outcome(
        iso && double_ok && triple_ok && four_ok,
        format!("double n=3 {double_ok} (presentation {iso}), triple n=3 {triple_ok}, orbit four n=2 {four_ok}"),
    )
}

type Criterion = (usize, &'static str, u64, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "amalgamated sum of AR quivers", 5, amalgamation),
        (2, "starlike classifier against check_nct", 300, starlike_sweep),
        (3, "Kupisch pipeline", 10, kupisch_pipeline),
        (4, "trivial fracturing against check_nct", 120, oracle_equivalence),
        (5, "order-independent tree gluing", 30, order_independence),
        (6, "trivial gluing", 10, trivial_gluing),
        (7, "fractured self-gluing example", 10, fractured_self_gluing),
        (8, "tilting enumeration", 60, tilting_enumeration),
        (9, "Nakayama counting", 60, nakayama_counting),
        (10, "sources and sinks generator", 120, generator),
        (11, "double and triple gluing", 30, double_triple),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let res = run();
        let took = start.elapsed();
        let within = took <= Duration::from_secs(budget);
        let (pass, detail) = match res {
            Ok(o) => (o.pass && within, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        let budget_note = if within { String::new() } else { format!(" over budget {budget}s") };
        println!(
            "{} [{id:>2}] {name} ({:.2}s{budget_note}): {detail}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
