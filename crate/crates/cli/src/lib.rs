//! Commands behind the `lfix` binary. Each returns the text to print and the
//! process exit code; errors that prevent a command from running at all
//! (unreadable files, unresolved names) come back as `Err`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use lfix_core::dcpo::{is_fuzzy_dcpo, ScanMode};
use lfix_core::fixpoint::{analyze, greatest_fixpoint, least_fixpoint, t_fixpoints, FixError};
use lfix_core::fuzzy::DirectedFailure;
use lfix_core::io::Instances;
use lfix_core::oracle::{run_sweep, InstanceCatalog, SweepConfig};
use lfix_core::{hom_set, FuzzySubset, LMap, LOrderedSet, MapError, Status};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn new(format: Format, text: String, value: Value, code: u8) -> Self {
        let text = match format {
            Format::Text => text,
            Format::Json => serde_json::to_string_pretty(&value).expect("json values serialize") + "\n",
        };
        Output { text, code }
    }
}

fn load(path: &Path) -> Result<Instances> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Instances::from_json(&text).with_context(|| format!("invalid instance file {}", path.display()))
}

fn name_of(x: &LOrderedSet, p: Option<usize>) -> Value {
    p.map_or(Value::Null, |p| json!(x.point_name(p)))
}

fn text_of(x: &LOrderedSet, p: Option<usize>) -> String {
    p.map_or("none".to_string(), |p| x.point_name(p).to_string())
}

fn subset_json(x: &LOrderedSet, s: &FuzzySubset) -> Value {
    let l = x.frame();
    x.points()
        .map(|p| (x.point_name(p).to_string(), json!(l.name(s.get(p)))))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn points_text(x: &LOrderedSet, ps: &[usize]) -> String {
    let names: Vec<&str> = ps.iter().map(|&p| x.point_name(p)).collect();
    format!("{{{}}}", names.join(", "))
}

fn map_json(f: &LMap) -> Value {
    let (p, q) = (f.domain(), f.codomain());
    p.points()
        .map(|x| (p.point_name(x).to_string(), json!(q.point_name(f.apply(x)))))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn completeness(x: &LOrderedSet, bound: usize) -> &'static str {
    match x.is_l_complete(bound) {
        Some(true) => "L-complete",
        Some(false) => "not L-complete",
        None => "L-completeness unknown",
    }
}

/// Loads and validates every structure in an instance file.
pub fn cmd_validate(path: &Path, format: Format) -> Result<Output> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let inst = match Instances::from_json(&text) {
        Ok(i) => i,
        Err(e) => {
            let msg = format!("invalid: {e}\n");
            return Ok(Output::new(format, msg, json!({"valid": false, "error": e.to_string()}), 1));
        }
    };
    let mut out = String::new();
    let mut frames = Vec::new();
    for (name, f) in &inst.frames {
        writeln!(out, "frame {name}: {} elements", f.len())?;
        frames.push(json!({"name": name, "elements": f.names()}));
    }
    let mut lorders = Vec::new();
    for (name, x) in &inst.lorders {
        let kind = if x.is_crisp() { "crisp" } else { "fuzzy" };
        let complete = completeness(x, lfix_core::dcpo::SUBSET_BOUND);
        writeln!(out, "lorder {name}: {} points, {kind}, {complete}", x.len())?;
        lorders.push(json!({"name": name, "points": x.point_names(), "crisp": x.is_crisp(),
            "l-complete": x.is_l_complete(lfix_core::dcpo::SUBSET_BOUND)}));
    }
    let mut maps = Vec::new();
    for (name, f) in &inst.maps {
        let (p, q) = (f.domain(), f.codomain());
        let (mono, witness) = match f.is_monotone() {
            Ok(()) => ("monotone".to_string(), Value::Null),
            Err((a, b)) => (
                format!("not monotone at ({}, {})", p.point_name(a), p.point_name(b)),
                json!([p.point_name(a), p.point_name(b)]),
            ),
        };
        writeln!(out, "map {name}: {} points to {} points, {mono}", p.len(), q.len())?;
        maps.push(json!({"name": name, "monotone": witness.is_null(), "violation": witness}));
    }
    for (name, (owner, s)) in &inst.subsets {
        let x = &inst.lorders[owner];
        writeln!(out, "subset {name} of {owner}: {}", s.describe(x))?;
    }
    writeln!(out, "valid")?;
    let value = json!({"valid": true, "frames": frames, "lorders": lorders, "maps": maps,
        "subsets": inst.subsets.keys().collect::<Vec<_>>()});
    Ok(Output::new(format, out, value, 0))
}

/// Join, meet, maximum, minimum and directedness of a named fuzzy subset.
pub fn cmd_join(path: &Path, subset: &str, format: Format) -> Result<Output> {
    let inst = load(path)?;
    let (owner, s) = inst.subset(subset)?;
    let x = inst.lorder(owner)?;
    let directed = match x.is_directed(s) {
        Ok(()) => ("yes".to_string(), json!({"directed": true})),
        Err(DirectedFailure::JoinNotTop) => (
            "no (values do not join to top)".to_string(),
            json!({"directed": false, "reason": "values do not join to top"}),
        ),
        Err(DirectedFailure::NoRefinement(a, b)) => (
            format!("no (no common refinement of {} and {})", x.point_name(a), x.point_name(b)),
            json!({"directed": false, "reason": "no common refinement", "pair": [x.point_name(a), x.point_name(b)]}),
        ),
    };
    let (join, meet, max, min) = (x.join(s), x.meet(s), x.max_of(s), x.min_of(s));
    let mut out = String::new();
    writeln!(out, "subset {subset} of {owner}: {}", s.describe(x))?;
    writeln!(out, "join: {}", text_of(x, join))?;
    writeln!(out, "meet: {}", text_of(x, meet))?;
    writeln!(out, "max: {}", text_of(x, max))?;
    writeln!(out, "min: {}", text_of(x, min))?;
    writeln!(out, "directed: {}", directed.0)?;
    let value = json!({
        "subset": subset, "lorder": owner, "values": subset_json(x, s),
        "join": name_of(x, join), "meet": name_of(x, meet), "max": name_of(x, max), "min": name_of(x, min),
        "directed": directed.1,
    });
    Ok(Output::new(format, out, value, 0))
}

/// Fixpoint analysis of a named monotone endomap.
pub fn cmd_fixpoint(path: &Path, map: &str, format: Format) -> Result<Output> {
    let inst = load(path)?;
    let f = inst.map(map)?;
    let p = f.domain().clone();
    let a = match analyze(f) {
        Ok(a) => a,
        Err(FixError::Map(MapError::NotMonotone { x, y })) => {
            let msg = format!("map {map} is not monotone: e({x},{y}) is not below the degree of the images\n");
            let value = json!({"map": map, "monotone": false, "violation": [x, y]});
            return Ok(Output::new(format, msg, value, 1));
        }
        Err(e) => bail!("map {map}: {e}"),
    };
    let extremal = |r: Result<usize, FixError>| match r {
        Ok(a) => (p.point_name(a).to_string(), json!(p.point_name(a))),
        Err(e) => (format!("none ({e})"), json!({"absent": e.to_string()})),
    };
    let least = extremal(least_fixpoint(f));
    let greatest = extremal(greatest_fixpoint(f));
    let l = p.frame();
    let mut out = String::new();
    writeln!(out, "map {map}: {f}")?;
    writeln!(out, "S_f: {}", a.s_f.describe(&p))?;
    writeln!(out, "T_f: {}", a.t_f.describe(&p))?;
    writeln!(out, "M_f: {}", a.m_f.describe(&p))?;
    writeln!(out, "fixpoints: {}", points_text(&p, &a.fix_set))?;
    writeln!(out, "least: {}", least.0)?;
    writeln!(out, "greatest: {}", greatest.0)?;
    let mut table = serde_json::Map::new();
    for t in l.elements() {
        let pts = t_fixpoints(f, t);
        writeln!(out, "{}-fixpoints: {}", l.name(t), points_text(&p, &pts))?;
        let names: Vec<&str> = pts.iter().map(|&x| p.point_name(x)).collect();
        table.insert(l.name(t).to_string(), json!(names));
    }
    let fix: Vec<&str> = a.fix_set.iter().map(|&x| p.point_name(x)).collect();
    let value = json!({
        "map": map, "monotone": true,
        "s-f": subset_json(&p, &a.s_f), "t-f": subset_json(&p, &a.t_f), "m-f": subset_json(&p, &a.m_f),
        "fixpoints": fix, "least": least.1, "greatest": greatest.1, "t-fixpoints": table,
    });
    Ok(Output::new(format, out, value, 0))
}

/// Monotone maps between two named L-ordered sets.
pub fn cmd_hom(path: &Path, domain: &str, codomain: &str, bound: usize, format: Format) -> Result<Output> {
    let inst = load(path)?;
    let p = inst.lorder(domain)?.clone();
    let q = inst.lorder(codomain)?.clone();
    let h = hom_set(p, q, bound).map_err(|e| anyhow!("{e}"))?;
    let mut out = String::new();
    writeln!(out, "{} monotone maps from {domain} to {codomain}", h.len())?;
    let mut maps = Vec::new();
    for f in h.maps() {
        writeln!(out, "{f}")?;
        maps.push(map_json(&f));
    }
    Ok(Output::new(format, out, json!({"domain": domain, "codomain": codomain, "maps": maps}), 0))
}

/// Whether a named L-ordered set is a fuzzy dcpo, with a witness if not.
pub fn cmd_dcpo(path: &Path, lorder: &str, bound: usize, samples: usize, seed: u64, format: Format) -> Result<Output> {
    let inst = load(path)?;
    let x = inst.lorder(lorder)?;
    let v = is_fuzzy_dcpo(x, bound, samples, seed);
    let (mode, mode_json) = match v.mode {
        ScanMode::Exhaustive => ("exhaustive".to_string(), json!({"kind": "exhaustive"})),
        ScanMode::Sampled { seed, attempts } => (
            format!("sampled, seed {seed}, {attempts} draws"),
            json!({"kind": "sampled", "seed": seed, "attempts": attempts}),
        ),
    };
    let mut out = String::new();
    writeln!(out, "lorder {lorder}: {}", if v.is_dcpo { "fuzzy dcpo" } else { "not a fuzzy dcpo" })?;
    writeln!(out, "scan: {mode}, {} directed subsets", v.directed)?;
    if let Some(w) = &v.witness {
        writeln!(out, "witness: {} is directed and has no join", w.describe(x))?;
    }
    let value = json!({
        "lorder": lorder, "dcpo": v.is_dcpo, "scan": mode_json, "directed": v.directed,
        "witness": v.witness.as_ref().map(|w| subset_json(x, w)),
    });
    Ok(Output::new(format, out, value, 0))
}

pub struct SweepArgs<'a> {
    pub config: Option<&'a Path>,
    pub seed: Option<u64>,
    pub bound: Option<usize>,
    pub theorems: Vec<String>,
    pub threads: Option<usize>,
    pub report: Option<&'a Path>,
}

/// Runs the theorem sweep; exit code 1 iff some check fails.
pub fn cmd_sweep(args: &SweepArgs, format: Format) -> Result<Output> {
    let mut cfg: SweepConfig = match args.config {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("invalid sweep config {}", p.display()))?
        }
        None => SweepConfig::default(),
    };
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(b) = args.bound {
        cfg.subset_bound = b;
    }
    if !args.theorems.is_empty() {
        cfg.theorems = Some(args.theorems.clone());
    }
    if args.threads.is_some() {
        cfg.threads = args.threads;
    }
    let set = run_sweep(&cfg)?;
    if let Some(p) = args.report {
        let file = fs::File::create(p).with_context(|| format!("cannot write {}", p.display()))?;
        set.write_json_lines(std::io::BufWriter::new(file))?;
    }
    let tallies = set.tallies();
    let mut out = String::new();
    writeln!(out, "{:<28} {:>5} {:>5} {:>5} {:>9}", "theorem", "pass", "fail", "skip", "cases")?;
    for (t, c) in &tallies {
        writeln!(out, "{t:<28} {:>5} {:>5} {:>5} {:>9}", c.pass, c.fail, c.skip, c.cases)?;
    }
    let failures: Vec<_> = set.failures().collect();
    for r in &failures {
        writeln!(
            out,
            "FAIL {} on {}: {} at {} ({} vs {})",
            r.theorem,
            r.instance,
            r.law.as_deref().unwrap_or("?"),
            r.witness.as_deref().unwrap_or("?"),
            r.lhs.as_deref().unwrap_or("-"),
            r.rhs.as_deref().unwrap_or("-"),
        )?;
    }
    let total = set.reports.len();
    let skipped = set.reports.iter().filter(|r| r.status == Status::Skip).count();
    writeln!(out, "{total} records, {} failures, {skipped} skipped, seed {}", failures.len(), cfg.seed)?;
    if let Some(p) = args.report {
        writeln!(out, "report written to {}", p.display())?;
    }
    let value = json!({
        "seed": cfg.seed, "records": total, "tallies": tallies, "failures": failures,
        "report": args.report.map(|p| p.display().to_string()),
    });
    Ok(Output::new(format, out, value, u8::from(!failures.is_empty())))
}

/// The instance file of the standard catalog, with a few named maps and
/// subsets to try the other commands on.
pub fn catalog_instances() -> Instances {
    let cat = InstanceCatalog::standard();
    let mut inst = Instances::default();
    for f in &cat.frames {
        inst.frames.insert(f.name.clone(), f.frame.clone());
    }
    for b in &cat.bases {
        inst.lorders.insert(b.name.clone(), b.lorder.clone());
    }
    let c3 = cat.base("chain3@chain2").expect("catalog has chain3").lorder.clone();
    let fz = cat.base("fz2").expect("catalog has fz2").lorder.clone();
    let map = |p: &Arc<LOrderedSet>, t: Vec<usize>| LMap::new(p.clone(), p.clone(), t).expect("valid table");
    inst.maps.insert("chain3-lift".into(), map(&c3, vec![1, 1, 2]));
    inst.maps.insert("chain3-identity".into(), map(&c3, vec![0, 1, 2]));
    inst.maps.insert("chain3-reverse".into(), map(&c3, vec![2, 1, 0]));
    inst.maps.insert("fz2-up".into(), map(&fz, vec![1, 1]));
    let l2 = c3.frame();
    inst.subsets.insert(
        "chain3-down-p1".into(),
        ("chain3@chain2".into(), c3.down_point(1)),
    );
    inst.subsets.insert(
        "chain3-empty".into(),
        ("chain3@chain2".into(), FuzzySubset::constant(3, l2.bottom())),
    );
    let l3 = fz.frame();
    let m = l3.element("m").expect("chain3 has m");
    inst.subsets.insert(
        "fz2-directed".into(),
        ("fz2".into(), FuzzySubset::new(vec![l3.top(), m])),
    );
    inst
}

/// Lists the catalog with its classification, or exports it as an instance file.
pub fn cmd_catalog(export: Option<&Path>, format: Format) -> Result<Output> {
    if let Some(p) = export {
        fs::write(p, catalog_instances().to_json() + "\n").with_context(|| format!("cannot write {}", p.display()))?;
        let msg = format!("catalog written to {}\n", p.display());
        return Ok(Output::new(format, msg, json!({"written": p.display().to_string()}), 0));
    }
    let cat = InstanceCatalog::standard();
    let mut out = String::new();
    let mut bases = Vec::new();
    writeln!(out, "frames: {}", cat.frames.iter().map(|f| f.name.as_str()).collect::<Vec<_>>().join(", "))?;
    writeln!(out, "rejected lattices: {}", cat.negatives.iter().map(|f| f.name.as_str()).collect::<Vec<_>>().join(", "))?;
    for b in &cat.bases {
        let dcpo = if b.dcpo.is_dcpo { "dcpo" } else { "not dcpo" };
        let zero = text_of(&b.lorder, b.zero);
        writeln!(
            out,
            "{:<28} {} points, {}, {dcpo}, zero {zero}",
            b.name,
            b.lorder.len(),
            completeness(&b.lorder, lfix_core::dcpo::SUBSET_BOUND)
        )?;
        bases.push(json!({"name": b.name, "frame": b.frame_name, "points": b.lorder.point_names(),
            "l-complete": b.l_complete, "dcpo": b.dcpo.is_dcpo, "zero": name_of(&b.lorder, b.zero)}));
    }
    let value = json!({
        "frames": cat.frames.iter().map(|f| &f.name).collect::<Vec<_>>(),
        "rejected": cat.negatives.iter().map(|f| &f.name).collect::<Vec<_>>(),
        "bases": bases,
    });
    Ok(Output::new(format, out, value, 0))
}
