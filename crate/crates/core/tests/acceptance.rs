//! The acceptance run: ten criteria over the standard catalog, each with a
//! wall-clock limit. Prints one line per criterion and exits nonzero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lfix_core::frame::{validate, Frame};
use lfix_core::oracle::{joins_by_definition, run_sweep, BaseKind, InstanceCatalog, SweepConfig};
use lfix_core::{Report, ReportSet, Status};

type Outcome = Result<String, String>;

fn sweep(theorems: &[&str]) -> ReportSet {
    let cfg = SweepConfig {
        theorems: Some(theorems.iter().map(|t| t.to_string()).collect()),
        ..SweepConfig::default()
    };
    run_sweep(&cfg).expect("default sweep configuration is valid")
}

fn describe(r: &Report) -> String {
    let mut s = format!("{} on {}", r.theorem, r.instance);
    if let Some(law) = &r.law {
        s += &format!(": {law}");
    }
    if let Some(w) = &r.witness {
        s += &format!(" at {w}");
    }
    if let (Some(l), Some(h)) = (&r.lhs, &r.rhs) {
        s += &format!(" ({l} vs {h})");
    }
    s
}

fn no_failures(set: &ReportSet) -> Result<(), String> {
    match set.failures().next() {
        Some(r) => Err(describe(r)),
        None => Ok(()),
    }
}

fn passes(set: &ReportSet, theorem: &str, instance: &str) -> Result<u64, String> {
    let r = set
        .reports
        .iter()
        .find(|r| r.theorem == theorem && r.instance == instance)
        .ok_or_else(|| format!("{theorem} was not run on {instance}"))?;
    match r.status {
        Status::Pass => Ok(r.cases.unwrap_or(0)),
        Status::Fail => Err(describe(r)),
        Status::Skip => Err(format!(
            "{theorem} skipped on {instance}: {}",
            r.reason.as_deref().unwrap_or("")
        )),
    }
}

fn cases(set: &ReportSet, theorems: &[&str]) -> u64 {
    theorems
        .iter()
        .flat_map(|t| set.for_theorem(t))
        .filter_map(|r| r.cases)
        .sum()
}

fn frame_laws() -> Outcome {
    let set = sweep(&["frame-laws", "arrow-sup-inequality", "frame-rejection"]);
    no_failures(&set)?;
    let cat = InstanceCatalog::standard();
    for f in &cat.frames {
        passes(&set, "frame-laws", &f.name)?;
        passes(&set, "arrow-sup-inequality", &f.name)?;
    }
    for neg in &cat.negatives {
        passes(&set, "frame-rejection", &neg.name)?;
        let law = validate(&neg.lattice).failure().map(|f| f.law.clone());
        if law.as_deref() != Some("distributivity") {
            return Err(format!("{} rejected for {law:?}", neg.name));
        }
        if Frame::new(neg.lattice.clone()).is_ok() {
            return Err(format!("{} accepted as a frame", neg.name));
        }
    }
    for injected in ["m3", "n5"] {
        let cfg = SweepConfig {
            frames: Some(vec!["chain2".into(), injected.into()]),
            ..SweepConfig::default()
        };
        let r = run_sweep(&cfg).map_err(|e| e.to_string())?;
        let bad = r.reports.iter().find(|r| r.instance == injected);
        if bad.is_none_or(|r| r.status != Status::Fail) || r.reports.iter().any(|r| r.theorem != "frame-laws") {
            return Err(format!("injected {injected} did not stop the sweep"));
        }
    }
    Ok(format!(
        "{} frames, {} cases, m3 and n5 rejected",
        cat.frames.len(),
        cases(&set, &["frame-laws", "arrow-sup-inequality"])
    ))
}

fn lorder_axioms() -> Outcome {
    let set = sweep(&["lorder-axioms", "degree-residuum-identity"]);
    no_failures(&set)?;
    let cat = InstanceCatalog::standard();
    for b in &cat.bases {
        passes(&set, "lorder-axioms", &b.name)?;
        passes(&set, "degree-residuum-identity", &b.name)?;
    }
    Ok(format!("{} L-ordered sets", cat.bases.len()))
}

fn join_characterization() -> Outcome {
    let set = sweep(&["join-characterization", "principal-join"]);
    no_failures(&set)?;
    let cat = InstanceCatalog::standard();
    let mut scanned = 0;
    for b in &cat.bases {
        passes(&set, "principal-join", &b.name)?;
        let size = b.lorder.frame().len().checked_pow(b.lorder.len() as u32);
        if size.is_some_and(|s| s <= 4096) {
            passes(&set, "join-characterization", &b.name)?;
            scanned += 1;
        }
    }
    Ok(format!(
        "{scanned} bases scanned, {} join and meet comparisons",
        cases(&set, &["join-characterization"])
    ))
}

fn monotone_completion() -> Outcome {
    let set = sweep(&["monotone-completion", "hom-set-enumeration"]);
    no_failures(&set)?;
    if let Some(r) = set.for_theorem("monotone-completion").find(|r| r.status != Status::Pass) {
        return Err(format!("{} skipped: {}", r.instance, r.reason.as_deref().unwrap_or("")));
    }
    Ok(format!(
        "{} base pairs, {} cases",
        set.for_theorem("monotone-completion").count(),
        cases(&set, &["monotone-completion"])
    ))
}

fn extremal_fixpoints() -> Outcome {
    let set = sweep(&["least-greatest-fixpoint", "fixpoint-extrema", "fixpoint-set-complete"]);
    no_failures(&set)?;
    let cat = InstanceCatalog::standard();
    let complete: Vec<_> = cat.bases.iter().filter(|b| b.is_l_complete()).collect();
    for b in &complete {
        passes(&set, "least-greatest-fixpoint", &b.name)?;
        passes(&set, "fixpoint-extrema", &b.name)?;
    }
    Ok(format!(
        "{} L-complete bases, {} cases",
        complete.len(),
        cases(&set, &["least-greatest-fixpoint", "fixpoint-extrema"])
    ))
}

fn rules() -> Outcome {
    let set = sweep(&["monotonicity-rule", "rolling-rule", "fusion-rule", "exchange-rule"]);
    no_failures(&set)?;
    let cat = InstanceCatalog::standard();
    for b in cat.bases.iter().filter(|b| b.is_l_complete()) {
        passes(&set, "monotonicity-rule", &b.name)?;
    }
    for p in &cat.bases {
        for q in &cat.bases {
            if p.frame_name == q.frame_name && p.lorder.len() <= 3 && q.lorder.len() <= 3 {
                passes(&set, "rolling-rule", &format!("{}->{}", p.name, q.name))?;
            }
        }
    }
    for t in ["fusion-rule", "exchange-rule"] {
        if set.for_theorem(t).all(|r| r.status != Status::Pass) {
            return Err(format!("{t} never applied"));
        }
    }
    Ok(format!(
        "monotonicity {}, rolling {}, fusion {}, exchange {} cases",
        cases(&set, &["monotonicity-rule"]),
        cases(&set, &["rolling-rule"]),
        cases(&set, &["fusion-rule"]),
        cases(&set, &["exchange-rule"])
    ))
}

fn representation() -> Outcome {
    let set = sweep(&["representation"]);
    no_failures(&set)?;
    let mut n = 0;
    for p in ["chain1", "chain2"] {
        for l in ["chain2", "chain3"] {
            n += passes(&set, "representation", &format!("{p}@{l}"))?;
        }
    }
    Ok(format!("4 instances, {n} cases"))
}

fn negative_dcpo() -> Outcome {
    let set = sweep(&["fuzzy-dcpo-verdict"]);
    no_failures(&set)?;
    let cat = InstanceCatalog::standard();
    let fz = cat.base("fz2").ok_or("fz2 missing from catalog")?;
    let x = &fz.lorder;
    let l = x.frame();
    let w = fz.dcpo.witness.as_ref().ok_or("fz2 reported as a fuzzy dcpo")?;
    let (top, m) = (l.top(), l.element("m").ok_or("chain3 has no m")?);
    if w.values() != [top, m] {
        return Err(format!("unexpected witness {}", w.describe(x)));
    }
    // both directedness conditions recomputed from scratch
    if l.join_all(w.values().iter().copied()) != top {
        return Err("witness values do not join to top".into());
    }
    for a in x.points() {
        for b in x.points() {
            let rhs = l.join_all(x.points().map(|z| l.meet(w.get(z), l.meet(x.e(a, z), x.e(b, z)))));
            if !l.leq(l.meet(w.get(a), w.get(b)), rhs) {
                return Err("witness pair has no common refinement".into());
            }
        }
    }
    if !joins_by_definition(x, w).is_empty() {
        return Err("witness has a join".into());
    }
    let crisp: Vec<_> = cat.bases.iter().filter(|b| b.is_crisp_over_chain2()).collect();
    if let Some(b) = crisp.iter().find(|b| !b.dcpo.is_dcpo) {
        return Err(format!("{} reported not a fuzzy dcpo", b.name));
    }
    Ok(format!(
        "fz2 witness {} re-verified; {} crisp posets over chain2 are fuzzy dcpos",
        w.describe(x),
        crisp.len()
    ))
}

fn hom_dcpo() -> Outcome {
    let set = sweep(&["hom-dcpo-join", "canonical-inflation-join", "inflation-t-fixpoints"]);
    no_failures(&set)?;
    let cat = InstanceCatalog::standard();
    let (mut sampled, mut exhaustive) = (0, 0);
    for b in cat.bases.iter().filter(|b| b.dcpo.is_dcpo) {
        let n = passes(&set, "hom-dcpo-join", &b.name)?;
        passes(&set, "canonical-inflation-join", &b.name)?;
        passes(&set, "inflation-t-fixpoints", &b.name)?;
        let r = set
            .for_theorem("hom-dcpo-join")
            .find(|r| r.instance == b.name)
            .expect("checked above");
        if r.seed.is_some() {
            if n < 200 {
                return Err(format!("{} sampled only {n} directed subsets", b.name));
            }
            sampled += 1;
        } else {
            exhaustive += 1;
        }
    }
    Ok(format!(
        "{exhaustive} hom-sets scanned exhaustively, {sampled} sampled with logged seeds, {} directed subsets",
        cases(&set, &["hom-dcpo-join"])
    ))
}

fn sub_dcpo() -> Outcome {
    let set = sweep(&["fix-sub-dcpo", "crisp-cpo-strong-cover"]);
    no_failures(&set)?;
    let cat = InstanceCatalog::standard();
    let mut n = 0;
    for b in cat.bases.iter().filter(|b| b.dcpo.is_dcpo && b.zero.is_some()) {
        passes(&set, "fix-sub-dcpo", &b.name)?;
        n += 1;
    }
    let crisp: Vec<_> = cat
        .bases
        .iter()
        .filter(|b| b.is_crisp_over_chain2() && b.zero.is_some())
        .collect();
    for b in &crisp {
        passes(&set, "crisp-cpo-strong-cover", &b.name)?;
    }
    let names: Vec<&str> = crisp
        .iter()
        .filter_map(|b| match &b.kind {
            BaseKind::Crisp { poset } => Some(poset.as_str()),
            _ => None,
        })
        .collect();
    Ok(format!("{n} dcpos with zero; crisp cpos {}", names.join(", ")))
}

fn full_sweep() -> Outcome {
    let set = run_sweep(&SweepConfig::default()).map_err(|e| e.to_string())?;
    no_failures(&set)?;
    Ok(format!("{} reports, 0 failures", set.reports.len()))
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("frame laws", 5, frame_laws),
        ("L-order axioms and degree identity", 5, lorder_axioms),
        ("join characterization", 30, join_characterization),
        ("monotone completion", 60, monotone_completion),
        ("least and greatest fixpoints", 30, extremal_fixpoints),
        ("monotonicity, rolling, fusion, exchange", 120, rules),
        ("representation by principal down-sets", 10, representation),
        ("directed subset without a join", 10, negative_dcpo),
        ("hom-set dcpo joins and inflation fixpoints", 120, hom_dcpo),
        ("fixpoints form a sub-dcpo", 60, sub_dcpo),
    ];
    let mut failed = 0;
    let start = Instant::now();
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let took = t.elapsed();
        let outcome = match outcome {
            Ok(d) if took > Duration::from_secs(*limit) => Err(format!("{d}; exceeded {limit}s")),
            o => o,
        };
        match outcome {
            Ok(d) => println!("[{}] {name} ... PASS ({d}; {:.2}s)", i + 1, took.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("[{}] {name} ... FAIL ({e}; {:.2}s)", i + 1, took.as_secs_f64());
            }
        }
    }
    let t = Instant::now();
    match full_sweep() {
        Ok(d) if t.elapsed() < Duration::from_secs(300) => {
            println!("[all] default sweep ... PASS ({d}; {:.2}s)", t.elapsed().as_secs_f64())
        }
        Ok(d) => {
            failed += 1;
            println!("[all] default sweep ... FAIL ({d}; exceeded 300s)");
        }
        Err(e) => {
            failed += 1;
            println!("[all] default sweep ... FAIL ({e})");
        }
    }
    println!(
        "acceptance: {} of 10 criteria passed in {:.2}s",
        10 - failed.min(10),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
