use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use arglue_core::algebra::{nakayama, starlike};
use arglue_core::ar::{ar_quiver_capped, ar_quiver_closure, is_representation_directed, node_ids, ARData, Directedness};
use arglue_core::catalog::run_suite;
use arglue_core::glue::{glue, glue_system_both_orders, simultaneous_glue, structurally_equal, system_from_json, PairMode};
use arglue_core::homology::global_dimension;
use arglue_core::orbit::{self_glue_witness, tilde_nct, witness_from_pairs};
use arglue_core::verify::{check_fractured, check_nct_with, fractured_candidate, nct_candidate, starlike_classify, generate_sinks_sources, CheckOptions, VerificationReport};
use arglue_core::{decompose, Algebra, KupischSeries, KupischShape, Rep};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::input::{base_dir, check_doc, parse_arm, parse_pair, InResult, InputError, Inputs};
use crate::{AlgebraCmd, BuiltAction, CheckArgs, CheckCmd, Cli, Command, GlobalOpts, GlueCmd, Mode, StarlikeAction, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Pass,
    Fail,
    Done,
}

struct Outcome {
    verdict: Verdict,
    result: Value,
}

impl Outcome {
    fn done(result: Value) -> Outcome {
        Outcome { verdict: Verdict::Done, result }
    }

    fn checked(pass: bool, result: Value) -> Outcome {
        Outcome { verdict: if pass { Verdict::Pass } else { Verdict::Fail }, result }
    }
}

struct Ctx {
    opts: GlobalOpts,
    inputs: Inputs,
    artifacts: Vec<String>,
}

impl Ctx {
    fn write(&mut self, path: &Path, text: &str) -> InResult<()> {
        fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        self.artifacts.push(path.display().to_string());
        Ok(())
    }

    fn dump(&mut self, v: &Value) -> InResult<()> {
        if let Some(p) = self.opts.dump.clone() {
            self.write(&p, &pretty(v))?;
        }
        Ok(())
    }

    fn check_options(&self) -> CheckOptions {
        CheckOptions { ext_cap: self.opts.ext_cap, ..CheckOptions::default() }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> u8 {
    if let Some(s) = cli.opts.seed {
        decompose::set_seed(s);
    }
    if let Some(j) = cli.opts.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let echo: Vec<String> = std::env::args().collect();
    let mut ctx = Ctx { opts: cli.opts.clone(), inputs: Inputs::default(), artifacts: Vec::new() };
    let res = dispatch(&cli.command, &mut ctx);
    let out = match res {
        Ok(o) => o,
        Err(e) => {
            eprintln!("arglue: {}", e.0);
            return EXIT_INPUT;
        }
    };
    let mut hasher = Sha256::new();
    hasher.update(echo[1..].join("\u{1f}").as_bytes());
    hasher.update(&ctx.inputs.bytes);
    let digest: String = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
    let verdict = match out.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Done => "ok",
    };
    let json_path = ctx.opts.json.clone();
    if let Some(p) = &json_path {
        ctx.artifacts.push(p.display().to_string());
    }
    let report = json!({
        "command": echo[1..].join(" "),
        "inputs_digest": digest,
        "verdict": verdict,
        "artifacts": ctx.artifacts,
        "result": out.result,
    });
    let text = pretty(&report);
    if let Some(p) = &json_path {
        if let Err(e) = fs::write(p, &text) {
            eprintln!("arglue: {}: {e}", p.display());
            return EXIT_INPUT;
        }
    }
    print!("{text}");
    match out.verdict {
        Verdict::Fail => EXIT_FAIL,
        _ => EXIT_PASS,
    }
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> InResult<Outcome> {
    match cmd {
        Command::Algebra(a) => algebra_cmd(a, ctx),
        Command::Check(CheckCmd::Nct(a)) | Command::CheckNct(a) => check_nct_file(a, ctx),
        Command::Check(CheckCmd::Fractured(a)) | Command::CheckFractured(a) => check_fractured_file(a, ctx),
        Command::Glue(g) => glue_cmd(g, ctx),
        Command::Selfglue(a) => selfglue(a, ctx),
        Command::Nakayama { kupisch, cyclic, action } => {
            let shape = if *cyclic { KupischShape::Cyclic } else { KupischShape::Acyclic };
            let alg = Arc::new(nakayama(&KupischSeries::new(kupisch.clone(), shape)?)?);
            match action {
                BuiltAction::Show => show(&alg, ctx),
                BuiltAction::CheckNct { n } => candidate_check(&alg, *n, ctx),
            }
        }
        Command::Starlike { arms, action } => {
            let rays = arms.iter().map(|a| parse_arm(a)).collect::<InResult<Vec<_>>>()?;
            let alg = Arc::new(starlike(&rays)?);
            match action {
                StarlikeAction::Show => show(&alg, ctx),
                StarlikeAction::CheckNct { n } => candidate_check(&alg, *n, ctx),
                StarlikeAction::Classify { n } => classify(&alg, *n, ctx),
            }
        }
        Command::Generate { sources, sinks, n } => generate(*sources, *sinks, *n, ctx),
        Command::Examples => {
            let items = run_suite();
            for it in &items {
                eprintln!("{} {}: {}", if it.pass { "PASS" } else { "FAIL" }, it.name, it.detail);
            }
            let pass = items.iter().all(|i| i.pass);
            Ok(Outcome::checked(pass, json!({ "examples": items })))
        }
    }
}

fn ar_of(alg: &Arc<Algebra>, cap: usize) -> InResult<(ARData, bool)> {
    match ar_quiver_capped(alg, cap) {
        Ok(ar) => Ok((ar, true)),
        Err(arglue_core::Error::NotDirected(_)) => Ok((ar_quiver_closure(alg, cap)?, false)),
        Err(e) => Err(e.into()),
    }
}

fn module_list(reps: &[Rep], ids: &[String], all: &[Rep]) -> Value {
    Value::Array(
        reps.iter()
            .map(|m| {
                let id = all.iter().position(|x| x.dims() == m.dims() && decompose::is_isomorphic(x, m)).map(|i| ids[i].clone());
                json!({ "id": id, "dims": m.dims() })
            })
            .collect(),
    )
}

fn summary(alg: &Algebra) -> Value {
    json!({
        "vertices": alg.num_vertices(),
        "arrows": alg.num_arrows(),
        "relations": alg.relations().len(),
        "dim": alg.dim(),
        "sources": alg.sources().iter().map(|&v| alg.vertex_name(v)).collect::<Vec<_>>(),
        "sinks": alg.sinks().iter().map(|&v| alg.vertex_name(v)).collect::<Vec<_>>(),
    })
}

fn show(alg: &Arc<Algebra>, ctx: &mut Ctx) -> InResult<Outcome> {
    ctx.dump(&alg.to_json())?;
    Ok(Outcome::done(json!({ "algebra": alg.to_json(), "summary": summary(alg) })))
}

fn algebra_cmd(cmd: &AlgebraCmd, ctx: &mut Ctx) -> InResult<Outcome> {
    match cmd {
        AlgebraCmd::Validate { file } => {
            let alg = Arc::new(ctx.inputs.algebra(file)?);
            let reparsed = arglue_core::algebra::algebra_from_json(&alg.to_json())?;
            let directed = match is_representation_directed(&alg, ctx.opts.cap) {
                Directedness::Directed(_) => json!(true),
                Directedness::NotDirected(why) => json!({ "not_directed": why }),
                Directedness::UnknownCap(c) => json!({ "cap_exceeded": c }),
            };
            ctx.dump(&alg.to_json())?;
            let mut s = summary(&alg);
            s["representation_directed"] = directed;
            s["round_trip"] = json!(structurally_equal(&alg, &reparsed));
            s["algebra"] = alg.to_json();
            Ok(Outcome::done(s))
        }
        AlgebraCmd::Indec { file } => {
            let alg = Arc::new(ctx.inputs.algebra(file)?);
            let (ar, _) = ar_of(&alg, ctx.opts.cap)?;
            let reps = ar.reps();
            ctx.dump(&Value::Array(reps.iter().map(Rep::to_json).collect()))?;
            let ids = node_ids(&reps);
            Ok(Outcome::done(json!({ "count": reps.len(), "modules": module_list(&reps, &ids, &reps) })))
        }
        AlgebraCmd::Ar { file } => {
            let alg = Arc::new(ctx.inputs.algebra(file)?);
            let (ar, directed) = ar_of(&alg, ctx.opts.cap)?;
            if let Some(p) = ctx.opts.dot.clone() {
                ctx.write(&p, &ar.to_dot())?;
            }
            ctx.dump(&Value::Array(ar.reps().iter().map(Rep::to_json).collect()))?;
            Ok(Outcome::done(json!({
                "count": ar.len(),
                "representation_directed": directed,
                "mesh_identity": ar.mesh_identity_holds(),
                "quiver": ar.to_json(),
            })))
        }
    }
}

fn report_value(rep: &VerificationReport) -> Value {
    rep.to_json()
}

fn check_nct_file(a: &CheckArgs, ctx: &mut Ctx) -> InResult<Outcome> {
    let doc = check_doc(&mut ctx.inputs, &a.file)?;
    let (ar, _) = ar_of(&doc.algebra, ctx.opts.cap)?;
    let indecs = ar.reps();
    let given = doc.modules.is_some();
    let m = match doc.modules {
        Some(m) => m,
        None => nct_candidate(&doc.algebra, a.n, ctx.opts.cap)?,
    };
    let rep = check_nct_with(&indecs, &m, a.n, ctx.check_options())?;
    let ids = node_ids(&indecs);
    Ok(Outcome::checked(
        rep.pass,
        json!({ "n": a.n, "given": given, "modules": module_list(&m, &ids, &indecs), "report": report_value(&rep) }),
    ))
}

fn check_fractured_file(a: &CheckArgs, ctx: &mut Ctx) -> InResult<Outcome> {
    let doc = check_doc(&mut ctx.inputs, &a.file)?;
    let given = doc.modules.is_some();
    let m = match doc.modules {
        Some(m) => m,
        None => fractured_candidate(&doc.algebra, &doc.fracturing, a.n, ctx.opts.cap)?,
    };
    let rep = check_fractured(&doc.algebra, &doc.fracturing, &m, a.n)?;
    let (ar, _) = ar_of(&doc.algebra, ctx.opts.cap)?;
    let indecs = ar.reps();
    let ids = node_ids(&indecs);
    Ok(Outcome::checked(
        rep.pass,
        json!({
            "n": a.n,
            "given": given,
            "fracturing": doc.fracturing.to_json(&doc.algebra),
            "modules": module_list(&m, &ids, &indecs),
            "report": report_value(&rep),
        }),
    ))
}

fn selfglue(a: &CheckArgs, ctx: &mut Ctx) -> InResult<Outcome> {
    let doc = check_doc(&mut ctx.inputs, &a.file)?;
    let alg = &doc.algebra;
    let wit = match &doc.pairs {
        Some(p) => witness_from_pairs(alg, &doc.fracturing, p)?,
        None => self_glue_witness(alg, &doc.fracturing).map_err(|why| InputError(format!("no self-gluing witness: {}", why.join("; "))))?,
    };
    let m = match doc.modules {
        Some(m) => m,
        None => fractured_candidate(alg, &doc.fracturing, a.n, ctx.opts.cap)?,
    };
    let base = check_fractured(alg, &doc.fracturing, &m, a.n)?;
    let (orb, members, rep) = tilde_nct(alg, &wit, &m, a.n)?;
    let til = &orb.tilde.algebra;
    let ids = node_ids(&orb.modules);
    ctx.dump(&til.to_json())?;
    Ok(Outcome::checked(
        base.pass && rep.pass,
        json!({
            "n": a.n,
            "witness": wit.describe(alg),
            "base_report": report_value(&base),
            "tilde": til.to_json(),
            "tilde_indecomposables": orb.modules.len(),
            "modules": module_list(&members, &ids, &orb.modules),
            "report": report_value(&rep),
        }),
    ))
}

fn candidate_check(alg: &Arc<Algebra>, n: usize, ctx: &mut Ctx) -> InResult<Outcome> {
    let (ar, _) = ar_of(alg, ctx.opts.cap)?;
    let indecs = ar.reps();
    let m = nct_candidate(alg, n, ctx.opts.cap)?;
    let rep = check_nct_with(&indecs, &m, n, ctx.check_options())?;
    let ids = node_ids(&indecs);
    ctx.dump(&json!({ "algebra": alg.to_json(), "modules": m.iter().map(Rep::to_json).collect::<Vec<_>>() }))?;
    Ok(Outcome::checked(
        rep.pass,
        json!({
            "n": n,
            "indecomposables": indecs.len(),
            "modules": module_list(&m, &ids, &indecs),
            "report": report_value(&rep),
        }),
    ))
}

fn classify(alg: &Arc<Algebra>, n: usize, ctx: &mut Ctx) -> InResult<Outcome> {
    let v = starlike_classify(alg, n)?;
    let (ar, _) = ar_of(alg, ctx.opts.cap)?;
    let m = nct_candidate(alg, n, ctx.opts.cap)?;
    let rep = check_nct_with(&ar.reps(), &m, n, ctx.check_options())?;
    let gl = global_dimension(alg, ctx.opts.ext_cap);
    let agree = v.pass == rep.pass && (!v.pass || v.gldim == gl);
    Ok(Outcome::checked(
        v.pass && agree,
        json!({
            "n": n,
            "classification": v,
            "check_nct": rep.pass,
            "global_dimension": gl,
            "agree": agree,
        }),
    ))
}

fn generate(s: usize, t: usize, n: usize, ctx: &mut Ctx) -> InResult<Outcome> {
    let g = generate_sinks_sources(s, t, n)?;
    let alg = &g.glued.algebra;
    let (ar, _) = ar_of(alg, ctx.opts.cap)?;
    let indecs = ar.reps();
    let rep = check_nct_with(&indecs, &g.candidate, n, ctx.check_options())?;
    let ids = node_ids(&indecs);
    let ok = rep.pass && alg.sources().len() == s && alg.sinks().len() == t;
    ctx.dump(&alg.to_json())?;
    Ok(Outcome::checked(
        ok,
        json!({
            "n": n,
            "algebra": alg.to_json(),
            "summary": summary(alg),
            "modules": module_list(&g.candidate, &ids, &indecs),
            "report": report_value(&rep),
        }),
    ))
}

fn glue_cmd(cmd: &GlueCmd, ctx: &mut Ctx) -> InResult<Outcome> {
    match cmd {
        GlueCmd::Pair { b, i, a, p } => {
            let bb = ctx.inputs.algebra(b)?;
            let aa = ctx.inputs.algebra(a)?;
            let g = glue(&bb, bb.vertex(i)?, &aa, aa.vertex(p)?)?;
            let lam = &g.identified.algebra;
            ctx.dump(&lam.to_json())?;
            Ok(Outcome::done(json!({
                "height": g.p.height(),
                "trivial": g.trivial,
                "algebra": lam.to_json(),
                "summary": summary(lam),
            })))
        }
        GlueCmd::System { file } => {
            let v = ctx.inputs.json(file)?;
            let base = base_dir(file);
            let loaded = std::cell::RefCell::new(Vec::<PathBuf>::new());
            let load = |s: &str| -> arglue_core::Result<Algebra> {
                let p = crate::input::resolve(&base, s);
                loaded.borrow_mut().push(p.clone());
                let text = fs::read_to_string(&p).map_err(|e| arglue_core::Error::Parse(format!("{}: {e}", p.display())))?;
                arglue_core::algebra::parse_algebra(&text)
            };
            let sys = system_from_json(&v, &load)?;
            for p in loaded.into_inner() {
                ctx.inputs.read(&p)?;
            }
            let warnings = sys.validate()?;
            let (x, y) = glue_system_both_orders(&sys)?;
            let same = structurally_equal(&x, &y);
            ctx.dump(&x.to_json())?;
            Ok(Outcome::checked(
                same,
                json!({ "warnings": warnings, "orders_agree": same, "algebra": x.to_json(), "summary": summary(&x) }),
            ))
        }
        GlueCmd::Simultaneous { a, b, pairs, mode } => {
            let aa = ctx.inputs.algebra(a)?;
            let bb = ctx.inputs.algebra(b)?;
            let mode = match mode {
                Mode::Parallel => PairMode::Parallel,
                Mode::Antiparallel => PairMode::Antiparallel,
            };
            let mut idx = Vec::new();
            for (k, s) in pairs.iter().enumerate() {
                let (x, y) = parse_pair(s)?;
                let swap = k > 0 && matches!(mode, PairMode::Antiparallel);
                let (va, vb) = if swap { (aa.vertex(&y)?, bb.vertex(&x)?) } else { (aa.vertex(&x)?, bb.vertex(&y)?) };
                idx.push((va, vb));
            }
            let g = simultaneous_glue(&aa, &bb, &idx, mode)?;
            ctx.dump(&g.algebra.to_json())?;
            Ok(Outcome::done(json!({ "algebra": g.algebra.to_json(), "summary": summary(&g.algebra) })))
        }
    }
}
