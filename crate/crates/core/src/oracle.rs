//! Ground truth by exhaustive search, the instance catalog, and the sweep
//! that runs every law and theorem check over it.
//!
//! The search routines here re-derive joins, meets, monotone maps, extremal
//! fixpoints and adjoints straight from their definitions, sharing no code
//! with the constructive routes they are compared against.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dcpo::{
    canonical_inflation_join, check_inflation_t_fixpoints, check_hom_is_dcpo, fix_sub_dcpo, is_fuzzy_dcpo,
    sub_dcpo_hypothesis, DcpoVerdict, ScanMode,
};
use crate::fixpoint::{
    check_completion_map, check_fixpoint_extrema, check_exchange, check_fix_l_complete, check_fusion,
    check_monotonicity_rule, check_rolling, check_t_fixpoints_antitone, fix_set, greatest_fixpoint,
    least_fixpoint, representation_iso, s_f, t_f, FixError,
};
use crate::frame::{
    check_adjunction, check_heyting_identities, check_infinite_distributivity, check_arrow_sup_inequality_all_families,
    diamond_m3, pentagon_n5, validate, Frame, FrameError, Lattice, SubsetPolicy,
};
use crate::fuzzy::{
    check_full_members_bounded, check_max_join_agreement, check_subset_joins, count_subsets, function_space,
    FunctionSpace, FuzzySubset,
};
use crate::lorder::{fz2_over, validate_table, CrispPoset, LOrderedSet};
use crate::maps::{hom_set, is_galois, right_adjoint, HomSet, LMap, MapError};
use crate::report::{Failure, Report, ReportSet, Verdict};

/// Every theorem id the sweep can emit.
pub const THEOREMS: &[&str] = &[
    "frame-laws",
    "arrow-sup-inequality",
    "frame-rejection",
    "lorder-axioms",
    "degree-residuum-identity",
    "join-characterization",
    "principal-join",
    "full-members-bounded",
    "max-join-agreement",
    "subset-join-relations",
    "function-space-join",
    "fuzzy-dcpo-verdict",
    "hom-set-enumeration",
    "monotone-completion",
    "completion-map",
    "galois-crisp-equivalence",
    "right-adjoint-search",
    "least-greatest-fixpoint",
    "fixpoint-extrema",
    "fixpoint-set-complete",
    "t-fixpoints-antitone",
    "f-invariance",
    "representation",
    "monotonicity-rule",
    "rolling-rule",
    "fusion-rule",
    "exchange-rule",
    "hom-dcpo-join",
    "canonical-inflation-join",
    "inflation-t-fixpoints",
    "fix-sub-dcpo",
    "crisp-cpo-strong-cover",
];

/// Theorems that only involve frames.
pub const FRAME_THEOREMS: &[&str] = &["frame-laws", "arrow-sup-inequality", "frame-rejection"];

pub const STANDARD_FRAMES: &[&str] = &["chain2", "chain3", "chain4", "powerset2", "chain2xchain3"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("unknown frame {0:?}")]
    UnknownFrame(String),
    #[error("unknown theorem {0:?}")]
    UnknownTheorem(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("{size} fuzzy subsets exceed the bound of {bound}")]
    BoundExceeded { size: usize, bound: usize },
}

/// Sweep parameters. Every sampled stream is a function of `seed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct SweepConfig {
    pub seed: u64,
    /// Largest `|L|^|P|` scanned exhaustively over fuzzy subsets.
    pub subset_bound: usize,
    /// Largest `|Q|^|P|` enumerated over maps.
    pub map_bound: usize,
    /// Largest `|L|^|P|` built as an L-ordered function space.
    pub function_space_bound: usize,
    /// Directed subsets drawn per instance when a scan is sampled.
    pub directed_samples: usize,
    /// Number of seeded random L-ordered sets over chain(3).
    pub random_lorders: usize,
    /// Largest carrier used in the rules quantifying over map pairs.
    pub rule_size_limit: usize,
    /// Run only these theorem ids.
    pub theorems: Option<Vec<String>>,
    /// Frames to use; the names `m3` and `n5` inject non-distributive
    /// lattices, which fail validation and stop the sweep.
    pub frames: Option<Vec<String>>,
    pub threads: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: 0,
            subset_bound: crate::dcpo::SUBSET_BOUND,
            map_bound: crate::maps::MAP_BOUND,
            function_space_bound: crate::fuzzy::FUNCTION_SPACE_BOUND,
            directed_samples: crate::dcpo::DIRECTED_SAMPLES,
            random_lorders: 6,
            rule_size_limit: 3,
            theorems: None,
            frames: None,
            threads: None,
        }
    }
}

impl SweepConfig {
    pub fn enabled(&self, theorem: &str) -> bool {
        self.theorems.as_ref().is_none_or(|t| t.iter().any(|x| x == theorem))
    }

    fn check(&self) -> Result<(), OracleError> {
        for t in self.theorems.iter().flatten() {
            if !THEOREMS.contains(&t.as_str()) {
                return Err(OracleError::UnknownTheorem(t.clone()));
            }
        }
        Ok(())
    }

    /// Per-instance seed derived from the sweep seed.
    pub fn instance_seed(&self, index: usize) -> u64 {
        self.seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }
}

// ---------------------------------------------------------------------------
// Definition-level search.

/// All tables `P -> Q`, lexicographic with the first point most significant.
pub fn enumerate_maps(p: usize, q: usize, bound: usize) -> Result<Vec<Vec<usize>>, OracleError> {
    let size = count_subsets(q, p).unwrap_or(usize::MAX);
    if size > bound {
        return Err(MapError::BoundExceeded { size, bound }.into());
    }
    let mut out = Vec::with_capacity(size);
    let mut cur = Vec::with_capacity(p);
    fn go(p: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for v in 0..q {
            cur.push(v);
            go(p, q, cur, out);
            cur.pop();
        }
    }
    go(p, q, &mut cur, &mut out);
    Ok(out)
}

pub fn monotone_by_definition(p: &LOrderedSet, q: &LOrderedSet, table: &[usize]) -> bool {
    let l = p.frame();
    p.points()
        .all(|x| p.points().all(|y| l.leq(p.e(x, y), q.e(table[x], table[y]))))
}

/// Monotone maps `P -> Q` by backtracking, in lexicographic order.
pub fn enumerate_monotone_maps(
    p: Arc<LOrderedSet>,
    q: Arc<LOrderedSet>,
    bound: usize,
) -> Result<Vec<LMap>, OracleError> {
    let size = count_subsets(q.len(), p.len()).unwrap_or(usize::MAX);
    if size > bound {
        return Err(MapError::BoundExceeded { size, bound }.into());
    }
    let l = p.frame().clone();
    let mut tables = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(p.len());
    fn go(p: &LOrderedSet, q: &LOrderedSet, l: &Frame, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let x = cur.len();
        if x == p.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..q.len() {
            let ok = (0..x).all(|y| l.leq(p.e(x, y), q.e(v, cur[y])) && l.leq(p.e(y, x), q.e(cur[y], v)));
            if ok {
                cur.push(v);
                go(p, q, l, cur, out);
                cur.pop();
            }
        }
    }
    go(&p, &q, &l, &mut cur, &mut tables);
    tables
        .into_iter()
        .map(|t| LMap::new(p.clone(), q.clone(), t).map_err(OracleError::from))
        .collect()
}

pub fn enumerate_fuzzy_subsets(frame: &Frame, n: usize, bound: usize) -> Result<Vec<FuzzySubset>, OracleError> {
    let size = count_subsets(frame.len(), n).unwrap_or(usize::MAX);
    if size > bound {
        return Err(OracleError::BoundExceeded { size, bound });
    }
    Ok(enumerate_maps(n, frame.len(), usize::MAX)?
        .into_iter()
        .map(|t| FuzzySubset::new(t.into_iter().map(|i| frame.elem(i)).collect()))
        .collect())
}

/// Points `x0` with `S(x) <= e(x, x0)` and
/// `/\_y (S(y) -> e(y, x)) <= e(x0, x)` for all `x`.
pub fn joins_by_definition(p: &LOrderedSet, s: &FuzzySubset) -> Vec<usize> {
    let l = p.frame();
    p.points()
        .filter(|&x0| {
            p.points().all(|x| l.leq(s.get(x), p.e(x, x0)))
                && p.points().all(|x| {
                    let lower = l.meet_all(p.points().map(|y| l.imp(s.get(y), p.e(y, x))));
                    l.leq(lower, p.e(x0, x))
                })
        })
        .collect()
}

/// Points `x0` with `S(x) <= e(x0, x)` and
/// `/\_y (S(y) -> e(x, y)) <= e(x, x0)` for all `x`.
pub fn meets_by_definition(p: &LOrderedSet, s: &FuzzySubset) -> Vec<usize> {
    let l = p.frame();
    p.points()
        .filter(|&x0| {
            p.points().all(|x| l.leq(s.get(x), p.e(x0, x)))
                && p.points().all(|x| {
                    let upper = l.meet_all(p.points().map(|y| l.imp(s.get(y), p.e(x, y))));
                    l.leq(upper, p.e(x, x0))
                })
        })
        .collect()
}

/// The `<=_e`-least point of `Fix(f)`, found by scanning.
pub fn brute_least_fixpoint(f: &LMap) -> Option<usize> {
    let p = f.domain();
    let fix: Vec<usize> = p.points().filter(|&x| f.apply(x) == x).collect();
    fix.iter().copied().find(|&a| fix.iter().all(|&u| p.leq_e(a, u)))
}

pub fn brute_greatest_fixpoint(f: &LMap) -> Option<usize> {
    let p = f.domain();
    let fix: Vec<usize> = p.points().filter(|&x| f.apply(x) == x).collect();
    fix.iter().copied().find(|&a| fix.iter().all(|&u| p.leq_e(u, a)))
}

/// A monotone `g: Q -> P` with `e_Q(f(x), y) = e_P(x, g(y))` everywhere,
/// found among all `|P|^|Q|` maps.
pub fn right_adjoint_exhaustive(f: &LMap, bound: usize) -> Result<Option<LMap>, OracleError> {
    let (p, q) = (f.domain(), f.codomain());
    for t in enumerate_maps(q.len(), p.len(), bound)? {
        if !monotone_by_definition(q, p, &t) {
            continue;
        }
        if p.points().all(|x| q.points().all(|y| q.e(f.apply(x), y) == p.e(x, t[y]))) {
            return Ok(Some(LMap::new(q.clone(), p.clone(), t)?));
        }
    }
    Ok(None)
}

/// `f(x) <= y  <=>  x <= g(y)` in the crisp orders.
pub fn crisp_galois(f: &LMap, g: &LMap) -> bool {
    let (p, q) = (f.domain(), f.codomain());
    p.points()
        .all(|x| q.points().all(|y| q.leq_e(f.apply(x), y) == p.leq_e(x, g.apply(y))))
}

fn point_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

/// A random valid L-order on `n` points: random off-diagonal degrees, raised
/// to their transitive closure, rejected if antisymmetry then fails.
pub fn random_lorder(n: usize, frame: &Arc<Frame>, rng: &mut impl Rng) -> Option<LOrderedSet> {
    let mut e = vec![frame.bottom(); n * n];
    for x in 0..n {
        for y in 0..n {
            e[x * n + y] = if x == y {
                frame.top()
            } else {
                frame.elem(rng.random_range(0..frame.len()))
            };
        }
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let via = frame.meet(e[x * n + y], e[y * n + z]);
                    let cur = e[x * n + z];
                    let up = frame.join(cur, via);
                    if up != cur {
                        e[x * n + z] = up;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    LOrderedSet::new(frame.clone(), point_names(n), e).ok()
}

/// Valid L-orders on `n` points: every table when `|L|^(n^2)` is within
/// `budget`, otherwise up to `budget` distinct seeded random ones.
pub fn enumerate_valid_lorders(n: usize, frame: &Arc<Frame>, budget: usize, seed: u64) -> Vec<LOrderedSet> {
    let cells = n * n;
    let size = count_subsets(frame.len(), cells).unwrap_or(usize::MAX);
    if size <= budget {
        return enumerate_maps(cells, frame.len(), usize::MAX)
            .expect("unbounded")
            .into_iter()
            .filter_map(|t| {
                let e = t.into_iter().map(|i| frame.elem(i)).collect();
                LOrderedSet::new(frame.clone(), point_names(n), e).ok()
            })
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<LOrderedSet> = Vec::new();
    for _ in 0..budget.saturating_mul(4) {
        if out.len() >= budget {
            break;
        }
        if let Some(x) = random_lorder(n, frame, &mut rng) {
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Catalog.

#[derive(Clone, Debug)]
pub struct CatalogFrame {
    pub name: String,
    pub frame: Arc<Frame>,
}

#[derive(Clone, Debug)]
pub struct NegativeLattice {
    pub name: String,
    pub lattice: Lattice,
}

#[derive(Clone, Debug)]
pub struct CatalogPoset {
    pub name: String,
    pub poset: CrispPoset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseKind {
    Crisp { poset: String },
    Fz2,
    FunctionSpace { exponent: usize },
    Random { index: usize },
}

/// Name, kind, frame name, order and optional function space of a base before analysis.
type RawBase = (String, BaseKind, String, Arc<LOrderedSet>, Option<Arc<FunctionSpace>>);

/// An L-ordered set of the catalog with its classification.
#[derive(Clone, Debug)]
pub struct Base {
    pub name: String,
    pub kind: BaseKind,
    pub frame_name: String,
    pub lorder: Arc<LOrderedSet>,
    pub space: Option<Arc<FunctionSpace>>,
    /// `None` when `|L|^|P|` exceeds the subset bound.
    pub l_complete: Option<bool>,
    pub dcpo: DcpoVerdict,
    pub zero: Option<usize>,
    pub seed: u64,
}

impl Base {
    pub fn is_l_complete(&self) -> bool {
        self.l_complete == Some(true)
    }

    /// A crisp poset over the two-element frame.
    pub fn is_crisp_over_chain2(&self) -> bool {
        matches!(self.kind, BaseKind::Crisp { .. }) && self.frame_name == "chain2"
    }
}

pub struct InstanceCatalog {
    pub frames: Vec<CatalogFrame>,
    pub negatives: Vec<NegativeLattice>,
    pub posets: Vec<CatalogPoset>,
    pub bases: Vec<Arc<Base>>,
    /// Frames requested by the configuration that failed validation.
    pub rejected: Vec<(String, Failure)>,
}

/// A standard frame by catalog name.
pub fn standard_frame(name: &str) -> Option<Frame> {
    let f = match name {
        "chain2" => Frame::chain(2),
        "chain3" => Frame::chain(3),
        "chain4" => Frame::chain(4),
        "powerset2" => Frame::powerset(2),
        "chain2xchain3" => Frame::product(&Frame::chain(2).ok()?, &Frame::chain(3).ok()?),
        _ => return None,
    };
    Some(f.expect("standard frames are frames"))
}

fn negative(name: &str) -> Option<Lattice> {
    match name {
        "m3" => Some(diamond_m3()),
        "n5" => Some(pentagon_n5()),
        _ => None,
    }
}

pub fn standard_posets() -> Vec<CatalogPoset> {
    let named = |name: &str, poset: CrispPoset| CatalogPoset {
        name: name.to_string(),
        poset,
    };
    let mut out: Vec<CatalogPoset> = (1..=4).map(|n| named(&format!("chain{n}"), CrispPoset::chain(n))).collect();
    out.push(named("antichain2", CrispPoset::antichain(2)));
    out.push(named("antichain2-top", CrispPoset::antichain(2).with_top("t")));
    out.push(named("diamond", CrispPoset::diamond()));
    out.push(named("n", CrispPoset::n_shape()));
    out.push(named("vee", CrispPoset::antichain(2).with_bottom("b")));
    out
}

impl InstanceCatalog {
    pub fn standard() -> Self {
        Self::build(&SweepConfig::default()).expect("default configuration is valid")
    }

    pub fn build(cfg: &SweepConfig) -> Result<Self, OracleError> {
        let names: Vec<String> = match &cfg.frames {
            Some(v) => v.clone(),
            None => STANDARD_FRAMES.iter().map(|s| s.to_string()).collect(),
        };
        let mut frames = Vec::new();
        let mut rejected = Vec::new();
        for name in names {
            if let Some(f) = standard_frame(&name) {
                frames.push(CatalogFrame {
                    name,
                    frame: Arc::new(f),
                });
            } else if let Some(l) = negative(&name) {
                match Frame::new(l) {
                    Ok(f) => frames.push(CatalogFrame {
                        name,
                        frame: Arc::new(f),
                    }),
                    Err(FrameError::Law(f)) => rejected.push((name, f)),
                    Err(e) => rejected.push((name, Failure::new("frame", e.to_string()))),
                }
            } else {
                return Err(OracleError::UnknownFrame(name));
            }
        }
        let negatives = vec![
            NegativeLattice {
                name: "m3".into(),
                lattice: diamond_m3(),
            },
            NegativeLattice {
                name: "n5".into(),
                lattice: pentagon_n5(),
            },
        ];
        let posets = standard_posets();

        let mut raw: Vec<RawBase> = Vec::new();
        for cf in &frames {
            for cp in &posets {
                raw.push((
                    format!("{}@{}", cp.name, cf.name),
                    BaseKind::Crisp { poset: cp.name.clone() },
                    cf.name.clone(),
                    Arc::new(LOrderedSet::from_crisp_poset(&cp.poset, cf.frame.clone())),
                    None,
                ));
            }
        }
        let frame_named = |n: &str| frames.iter().find(|f| f.name == n);
        if let Some(c3) = frame_named("chain3") {
            raw.push(("fz2".into(), BaseKind::Fz2, c3.name.clone(), Arc::new(fz2_over(c3.frame.clone())), None));
        }
        for (fname, k) in [("chain2", 1), ("chain2", 2), ("chain3", 1)] {
            if let Some(cf) = frame_named(fname) {
                if let Ok(fs) = function_space(k, cf.frame.clone(), cfg.function_space_bound) {
                    raw.push((
                        format!("{fname}^{k}"),
                        BaseKind::FunctionSpace { exponent: k },
                        fname.to_string(),
                        fs.lorder().clone(),
                        Some(Arc::new(fs)),
                    ));
                }
            }
        }
        if let Some(c3) = frame_named("chain3") {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut made = 0;
            let mut tries = 0;
            while made < cfg.random_lorders && tries < 10_000 {
                tries += 1;
                let n = 2 + made % 2;
                if let Some(x) = random_lorder(n, &c3.frame, &mut rng) {
                    if x.is_crisp() {
                        continue;
                    }
                    raw.push((
                        format!("random{made}"),
                        BaseKind::Random { index: made },
                        c3.name.clone(),
                        Arc::new(x),
                        None,
                    ));
                    made += 1;
                }
            }
        }

        let bases = raw
            .into_par_iter()
            .enumerate()
            .map(|(i, (name, kind, frame_name, lorder, space))| {
                let seed = cfg.instance_seed(i);
                Arc::new(Base {
                    l_complete: lorder.is_l_complete(cfg.subset_bound),
                    dcpo: is_fuzzy_dcpo(&lorder, cfg.subset_bound, cfg.directed_samples, seed),
                    zero: lorder.zero(),
                    name,
                    kind,
                    frame_name,
                    lorder,
                    space,
                    seed,
                })
            })
            .collect();
        Ok(InstanceCatalog {
            frames,
            negatives,
            posets,
            bases,
            rejected,
        })
    }

    pub fn base(&self, name: &str) -> Option<&Arc<Base>> {
        self.bases.iter().find(|b| b.name == name)
    }

    pub fn frame(&self, name: &str) -> Option<&CatalogFrame> {
        self.frames.iter().find(|f| f.name == name)
    }
}

// ---------------------------------------------------------------------------
// Sweep.

type Job = Box<dyn Fn() -> Report + Send + Sync>;

struct Plan<'a> {
    cfg: &'a SweepConfig,
    jobs: Vec<Job>,
}

impl Plan<'_> {
    fn add(&mut self, theorem: &'static str, instance: String, check: impl Fn() -> Verdict + Send + Sync + 'static) {
        if self.cfg.enabled(theorem) {
            self.jobs.push(Box::new(move || Report::new(theorem, instance.clone(), check())));
        }
    }

    fn add_report(&mut self, theorem: &'static str, job: impl Fn() -> Report + Send + Sync + 'static) {
        if self.cfg.enabled(theorem) {
            self.jobs.push(Box::new(job));
        }
    }
}

/// Folds per-case verdicts: the first failure wins; skips are counted.
#[derive(Default)]
struct Acc {
    cases: u64,
    skips: u64,
    first_skip: Option<String>,
}

impl Acc {
    fn take(&mut self, v: Verdict) -> Result<(), Failure> {
        match v {
            Verdict::Pass { cases } => self.cases += cases,
            Verdict::Fail(f) => return Err(f),
            Verdict::Skip(r) => {
                self.skips += 1;
                self.first_skip.get_or_insert(r);
            }
        }
        Ok(())
    }

    /// Pass if anything was asserted, otherwise skip with the first reason.
    fn finish(self) -> Verdict {
        if self.cases == 0 && self.skips > 0 {
            Verdict::Skip(self.first_skip.unwrap_or_default())
        } else {
            Verdict::pass(self.cases)
        }
    }

    /// Skips are failures: used where the hypotheses guarantee existence.
    fn finish_strict(self, law: &str) -> Verdict {
        match self.first_skip {
            Some(r) => Verdict::Fail(Failure::new(law, r)),
            None => Verdict::pass(self.cases),
        }
    }
}

fn fold(it: impl IntoIterator<Item = Verdict>, strict: Option<&str>) -> Verdict {
    let mut acc = Acc::default();
    for v in it {
        if let Err(f) = acc.take(v) {
            return Verdict::Fail(f);
        }
    }
    match strict {
        Some(law) => acc.finish_strict(law),
        None => acc.finish(),
    }
}

fn frame_law_verdict(f: &Frame, seed: u64) -> Verdict {
    let policy = SubsetPolicy {
        seed,
        ..SubsetPolicy::default()
    };
    validate(f)
        .and_then(|| check_adjunction(f))
        .and_then(|| check_heyting_identities(f, &policy))
        .and_then(|| check_infinite_distributivity(f, &policy))
}

/// The lattice is rejected with a distributivity witness whose two sides
/// really differ.
fn rejection_verdict(l: &Lattice) -> Verdict {
    let Verdict::Fail(f) = validate(l) else {
        return Verdict::Fail(Failure::new("non-distributive-rejected", "lattice was accepted"));
    };
    if f.law != "distributivity" {
        return Verdict::Fail(Failure::new("non-distributive-rejected", format!("rejected for {}", f.law)));
    }
    let get = |key: &str| {
        f.witness
            .split(", ")
            .find_map(|kv| kv.strip_prefix(key))
            .and_then(|name| l.element(name))
    };
    let (Some(a), Some(b), Some(c)) = (get("a="), get("b="), get("c=")) else {
        return Verdict::Fail(Failure::new("distributivity-witness-parses", f.witness.clone()));
    };
    if l.meet(a, l.join(b, c)) == l.join(l.meet(a, b), l.meet(a, c)) {
        return Verdict::Fail(Failure::new("distributivity-witness-valid", f.witness.clone()));
    }
    Verdict::pass(1)
}

fn all_subsets(b: &Base, cfg: &SweepConfig) -> Result<Vec<FuzzySubset>, Verdict> {
    enumerate_fuzzy_subsets(b.lorder.frame(), b.lorder.len(), cfg.subset_bound)
        .map_err(|e| Verdict::Skip(e.to_string()))
}

fn join_characterization(b: &Base, cfg: &SweepConfig) -> Verdict {
    let x = &b.lorder;
    let subsets = match all_subsets(b, cfg) {
        Ok(s) => s,
        Err(v) => return v,
    };
    for s in &subsets {
        let w = || format!("S={}", s.describe(x));
        let defs = joins_by_definition(x, s);
        if defs.len() > 1 || defs.first().copied() != x.join(s) {
            let names: Vec<&str> = defs.iter().map(|&d| x.point_name(d)).collect();
            return Verdict::Fail(
                Failure::new("join-definitions-agree", w())
                    .with_sides(format!("[{}]", names.join(",")), x.join(s).map_or("none", |j| x.point_name(j))),
            );
        }
        let defs = meets_by_definition(x, s);
        if defs.len() > 1 || defs.first().copied() != x.meet(s) {
            let names: Vec<&str> = defs.iter().map(|&d| x.point_name(d)).collect();
            return Verdict::Fail(
                Failure::new("meet-definitions-agree", w())
                    .with_sides(format!("[{}]", names.join(",")), x.meet(s).map_or("none", |j| x.point_name(j))),
            );
        }
    }
    Verdict::pass(2 * subsets.len() as u64)
}

fn principal_join(x: &LOrderedSet) -> Verdict {
    for a in x.points() {
        let (down, up) = (x.down_point(a), x.up_point(a));
        let w = || format!("a={}", x.point_name(a));
        if x.join(&down) != Some(a) {
            return Verdict::Fail(Failure::new("join-of-down-set", w()));
        }
        if x.meet(&up) != Some(a) {
            return Verdict::Fail(Failure::new("meet-of-up-set", w()));
        }
        if x.down_phi(&down) != down || x.up_phi(&up) != up {
            return Verdict::Fail(Failure::new("principal-closure-idempotent", w()));
        }
    }
    Verdict::pass(4 * x.len() as u64)
}

fn per_subset(b: &Base, cfg: &SweepConfig, check: impl Fn(&LOrderedSet, &FuzzySubset) -> Verdict) -> Verdict {
    match all_subsets(b, cfg) {
        Ok(subsets) => fold(subsets.iter().map(|s| check(&b.lorder, s)), None),
        Err(v) => v,
    }
}

fn subset_join_relations(b: &Base, cfg: &SweepConfig) -> Verdict {
    let x = &b.lorder;
    let n = x.len();
    let subsets = match all_subsets(b, cfg) {
        Ok(s) => s,
        Err(v) => return v,
    };
    let parts: Vec<Vec<usize>> = (1u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    fold(
        subsets
            .iter()
            .flat_map(|s| parts.iter().map(move |part| check_subset_joins(x, s, part))),
        None,
    )
}

fn function_space_join(b: &Base, cfg: &SweepConfig) -> Verdict {
    let Some(space) = &b.space else {
        return Verdict::Skip("not a function space".into());
    };
    let x = space.lorder();
    let subsets = match all_subsets(b, cfg) {
        Ok(s) => s,
        Err(v) => return v,
    };
    for s in &subsets {
        let (j, m) = (space.pointwise_join(s), space.pointwise_meet(s));
        if x.join(s) != Some(j) || x.meet(s) != Some(m) {
            return Verdict::Fail(
                Failure::new("pointwise-join-is-join", format!("S={}", s.describe(x)))
                    .with_sides(x.point_name(j), x.join(s).map_or("none", |j| x.point_name(j))),
            );
        }
    }
    Verdict::pass(2 * subsets.len() as u64)
}

fn dcpo_verdict(b: &Base) -> Verdict {
    let x = &b.lorder;
    let v = &b.dcpo;
    if let Some(w) = &v.witness {
        if x.is_directed(w).is_err() || x.join(w).is_some() {
            return Verdict::Fail(Failure::new("dcpo-witness-reverifies", format!("D={}", w.describe(x))));
        }
    }
    if v.is_dcpo == v.witness.is_some() {
        return Verdict::Fail(Failure::new("dcpo-witness-present", b.name.clone()));
    }
    if b.is_crisp_over_chain2() && !v.is_dcpo {
        return Verdict::Fail(Failure::new("finite-crisp-poset-is-dcpo", b.name.clone()));
    }
    if b.is_l_complete() && !v.is_dcpo {
        return Verdict::Fail(Failure::new("l-complete-is-dcpo", b.name.clone()));
    }
    if b.kind == BaseKind::Fz2 {
        let l = x.frame();
        let expected = FuzzySubset::new(vec![l.top(), l.element("m").expect("chain3 has m")]);
        if v.is_dcpo || v.witness.as_ref() != Some(&expected) {
            return Verdict::Fail(Failure::new(
                "fz2-directed-without-join",
                v.witness.as_ref().map_or("none".into(), |w| w.describe(x)),
            ));
        }
    }
    Verdict::pass(v.directed.max(1))
}

fn least_greatest(b: &Base, hom: &HomSet) -> Verdict {
    let mut cases = 0;
    let mut both_absent = 0;
    for f in hom.maps() {
        let rows = [
            (least_fixpoint(&f), brute_least_fixpoint(&f), "least"),
            (greatest_fixpoint(&f), brute_greatest_fixpoint(&f), "greatest"),
        ];
        for (formula, brute, which) in rows {
            let p = &b.lorder;
            let name = |x: Option<usize>| x.map_or("none".to_string(), |x| p.point_name(x).to_string());
            let law = format!("{which}-fixpoint-formula-matches-search");
            match formula {
                Ok(a) if brute == Some(a) => cases += 1,
                Ok(a) => {
                    return Verdict::Fail(
                        Failure::new(law, format!("f={f}")).with_sides(p.point_name(a), name(brute)),
                    )
                }
                Err(FixError::Violation(v)) => return Verdict::Fail(v),
                Err(FixError::MissingMeet | FixError::MissingJoin) if brute.is_none() && !b.is_l_complete() => {
                    both_absent += 1
                }
                Err(e) => {
                    return Verdict::Fail(Failure::new(law, format!("f={f}: {e}")).with_sides("none", name(brute)))
                }
            }
        }
    }
    if cases == 0 && both_absent > 0 {
        Verdict::Skip("no extremal fixpoint exists for any map".into())
    } else {
        Verdict::pass(cases)
    }
}

fn f_invariance(x: &LOrderedSet, hom: &HomSet) -> Verdict {
    let mut cases = 0;
    for f in hom.maps() {
        let mut subsets = vec![("S_f".to_string(), s_f(&f)), ("T_f".to_string(), t_f(&f))];
        for a in fix_set(&f) {
            subsets.push((format!("down({})", x.point_name(a)), x.down_point(a)));
            subsets.push((format!("up({})", x.point_name(a)), x.up_point(a)));
        }
        for (label, s) in subsets {
            cases += 1;
            if let Err(p) = x.is_f_invariant(&s, &f) {
                return Verdict::Fail(Failure::new(
                    "f-invariant",
                    format!("f={f}, {label}, x={}", x.point_name(p)),
                ));
            }
        }
    }
    Verdict::pass(cases)
}

fn crisp_cpo_cover(hom: &HomSet, cfg: &SweepConfig) -> Verdict {
    let p = hom.domain();
    for f in hom.maps() {
        let hyp = sub_dcpo_hypothesis(&f);
        if let Some(&a) = hyp.uncovered.first() {
            return Verdict::Fail(Failure::new(
                "crisp-cpo-has-strong-covers",
                format!("f={f}, a={}", p.point_name(a)),
            ));
        }
        let v = fix_sub_dcpo(&f, cfg.subset_bound);
        if !v.is_pass() {
            return match v {
                Verdict::Fail(f) => Verdict::Fail(f),
                _ => Verdict::Fail(Failure::new("crisp-cpo-sub-dcpo-checked", format!("f={f}"))),
            };
        }
    }
    Verdict::pass(hom.len() as u64)
}

struct Pair {
    p: Arc<Base>,
    q: Arc<Base>,
}

impl Pair {
    fn name(&self) -> String {
        format!("{}->{}", self.p.name, self.q.name)
    }

    /// Missing meets are failures only when both sides are L-complete.
    fn strict<'a>(&self, law: &'a str) -> Option<&'a str> {
        (self.p.is_l_complete() && self.q.is_l_complete()).then_some(law)
    }
}

fn monotone_completion(pair: &Pair, cfg: &SweepConfig) -> Verdict {
    let (p, q) = (&pair.p.lorder, &pair.q.lorder);
    let tables = match enumerate_maps(p.len(), q.len(), cfg.map_bound) {
        Ok(t) => t,
        Err(e) => return Verdict::Skip(e.to_string()),
    };
    let mut cases = 0u64;
    for t in tables {
        let monotone = monotone_by_definition(p, q, &t);
        let f = LMap::new(p.clone(), q.clone(), t).expect("enumerated table is a map");
        match f.monotone_completion() {
            Ok(c) => {
                cases += 2;
                if let Err((x, y)) = c.is_monotone() {
                    return Verdict::Fail(Failure::new(
                        "completion-is-monotone",
                        format!("f={f}, F={c}, x={}, y={}", p.point_name(x), p.point_name(y)),
                    ));
                }
                if (c == f) != monotone {
                    return Verdict::Fail(
                        Failure::new("completion-fixes-exactly-monotone-maps", format!("f={f}"))
                            .with_sides(c.describe(), format!("monotone={monotone}")),
                    );
                }
            }
            // an absent completion differs from f, as it must for a non-monotone f
            Err(MapError::MissingJoin { .. }) if !monotone && !pair.q.is_l_complete() => cases += 1,
            Err(e) => return Verdict::Fail(Failure::new("completion-exists", format!("f={f}: {e}"))),
        }
    }
    Verdict::pass(cases)
}

fn hom_enumeration(pair: &Pair, cfg: &SweepConfig) -> Verdict {
    let (p, q) = (pair.p.lorder.clone(), pair.q.lorder.clone());
    let ours = match hom_set(p.clone(), q.clone(), cfg.map_bound) {
        Ok(h) => h,
        Err(e) => return Verdict::Skip(e.to_string()),
    };
    let brute = match enumerate_monotone_maps(p, q, cfg.map_bound) {
        Ok(v) => v,
        Err(e) => return Verdict::Skip(e.to_string()),
    };
    let a: Vec<LMap> = ours.maps().collect();
    if a != brute {
        return Verdict::Fail(
            Failure::new("hom-set-matches-search", pair.name())
                .with_sides(format!("{} maps", a.len()), format!("{} maps", brute.len())),
        );
    }
    Verdict::pass(a.len() as u64)
}

fn homs(pair: &Pair, cfg: &SweepConfig) -> Result<(HomSet, HomSet), Verdict> {
    let (p, q) = (pair.p.lorder.clone(), pair.q.lorder.clone());
    let pq = hom_set(p.clone(), q.clone(), cfg.map_bound).map_err(|e| Verdict::Skip(e.to_string()))?;
    let qp = hom_set(q, p, cfg.map_bound).map_err(|e| Verdict::Skip(e.to_string()))?;
    Ok((pq, qp))
}

fn galois_equivalence(pair: &Pair, cfg: &SweepConfig) -> Verdict {
    let (pq, qp) = match homs(pair, cfg) {
        Ok(h) => h,
        Err(v) => return v,
    };
    let mut cases = 0;
    for f in pq.maps() {
        for g in qp.maps() {
            cases += 1;
            let fuzzy = is_galois(&f, &g).expect("hom-set maps are monotone");
            if fuzzy != crisp_galois(&f, &g) {
                return Verdict::Fail(
                    Failure::new("fuzzy-galois-iff-crisp-galois", format!("f={f}, g={g}"))
                        .with_sides(format!("fuzzy={fuzzy}"), format!("crisp={}", !fuzzy)),
                );
            }
        }
    }
    Verdict::pass(cases)
}

fn adjoint_search(pair: &Pair, cfg: &SweepConfig) -> Verdict {
    let pq = match hom_set(pair.p.lorder.clone(), pair.q.lorder.clone(), cfg.map_bound) {
        Ok(h) => h,
        Err(e) => return Verdict::Skip(e.to_string()),
    };
    for f in pq.maps() {
        let brute = match right_adjoint_exhaustive(&f, cfg.map_bound) {
            Ok(g) => g,
            Err(e) => return Verdict::Skip(e.to_string()),
        };
        let ours = right_adjoint(&f);
        if ours != brute {
            return Verdict::Fail(
                Failure::new("right-adjoint-matches-search", format!("f={f}")).with_sides(
                    ours.map_or("none".into(), |g| g.describe()),
                    brute.map_or("none".into(), |g| g.describe()),
                ),
            );
        }
    }
    Verdict::pass(pq.len() as u64)
}

fn rolling(pair: &Pair, cfg: &SweepConfig) -> Verdict {
    let (pq, qp) = match homs(pair, cfg) {
        Ok(h) => h,
        Err(v) => return v,
    };
    fold(
        pq.maps().flat_map(|f| qp.maps().map(move |g| check_rolling(&f, &g))),
        pair.strict("rolling-rule-meets-exist"),
    )
}

fn endo(b: &Base, cfg: &SweepConfig) -> Result<HomSet, Verdict> {
    hom_set(b.lorder.clone(), b.lorder.clone(), cfg.map_bound).map_err(|e| Verdict::Skip(e.to_string()))
}

fn fusion(pair: &Pair, cfg: &SweepConfig) -> Verdict {
    let (pq, _) = match homs(pair, cfg) {
        Ok(h) => h,
        Err(v) => return v,
    };
    let (pp, qq) = match (endo(&pair.p, cfg), endo(&pair.q, cfg)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(v), _) | (_, Err(v)) => return v,
    };
    let adjoint: Vec<LMap> = pq.maps().filter(|f| right_adjoint(f).is_some()).collect();
    if adjoint.is_empty() {
        return Verdict::Skip("no monotone map has a right adjoint".into());
    }
    fold(
        adjoint.iter().flat_map(|f| {
            let qq = &qq;
            pp.maps().flat_map(move |g| qq.maps().map(move |h| check_fusion(f, &g, &h)))
        }),
        pair.strict("fusion-rule-meets-exist"),
    )
}

fn exchange(pair: &Pair, cfg: &SweepConfig) -> Verdict {
    let (pq, qp) = match homs(pair, cfg) {
        Ok(h) => h,
        Err(v) => return v,
    };
    let adjoint: Vec<LMap> = pq.maps().filter(|f| right_adjoint(f).is_some()).collect();
    if adjoint.is_empty() {
        return Verdict::Skip("no monotone map has a right adjoint".into());
    }
    let all: Vec<LMap> = pq.maps().collect();
    let back: Vec<LMap> = qp.maps().collect();
    fold(
        adjoint.iter().flat_map(|f| {
            let back = &back;
            all.iter()
                .flat_map(move |g| back.iter().map(move |h| check_exchange(f, g, h)))
        }),
        pair.strict("exchange-rule-meets-exist"),
    )
}

fn hom_dcpo(b: &Base, hom: &HomSet, cfg: &SweepConfig) -> Report {
    let (verdict, mode) = match check_hom_is_dcpo(hom, cfg.subset_bound, cfg.directed_samples, b.seed) {
        Ok(r) => r,
        Err(e) => (Verdict::Fail(Failure::new("hom-set-dcpo", e.to_string())), ScanMode::Exhaustive),
    };
    let r = Report::new("hom-dcpo-join", b.name.clone(), verdict);
    match mode {
        ScanMode::Sampled { seed, .. } => r.with_seed(seed),
        ScanMode::Exhaustive => r,
    }
}

fn inflation(hom: &HomSet) -> Verdict {
    match canonical_inflation_join(hom) {
        Ok((_, v)) => v,
        Err(e) => Verdict::Fail(Failure::new("canonical-inflation-join", e.to_string())),
    }
}

fn inflation_t_fixpoints(hom: &HomSet) -> Verdict {
    match canonical_inflation_join(hom) {
        Ok((beta, Verdict::Pass { .. })) => check_inflation_t_fixpoints(hom, &beta),
        Ok((_, Verdict::Fail(f))) => Verdict::Fail(f),
        Ok((_, Verdict::Skip(r))) => Verdict::Skip(r),
        Err(e) => Verdict::Fail(Failure::new("canonical-inflation-join", e.to_string())),
    }
}

fn plan_frames(plan: &mut Plan, cat: &InstanceCatalog) {
    for cf in &cat.frames {
        let (f, seed) = (cf.frame.clone(), plan.cfg.seed);
        plan.add("frame-laws", cf.name.clone(), move || frame_law_verdict(&f, seed));
        let f = cf.frame.clone();
        plan.add("arrow-sup-inequality", cf.name.clone(), move || check_arrow_sup_inequality_all_families(&f));
    }
    for neg in &cat.negatives {
        let l = neg.lattice.clone();
        plan.add("frame-rejection", neg.name.clone(), move || rejection_verdict(&l));
    }
}

fn plan_bases(plan: &mut Plan, cat: &InstanceCatalog, endos: &[Option<Arc<HomSet>>]) {
    let cfg = Arc::new(plan.cfg.clone());
    for (b, hom) in cat.bases.iter().zip(endos) {
        let name = b.name.clone();
        let bb = b.clone();
        plan.add("lorder-axioms", name.clone(), move || {
            let x = &bb.lorder;
            validate_table(x.frame(), x.point_names(), x.table())
        });
        let bb = b.clone();
        plan.add("degree-residuum-identity", name.clone(), move || bb.lorder.check_degree_identity());
        let (bb, c) = (b.clone(), cfg.clone());
        plan.add("join-characterization", name.clone(), move || join_characterization(&bb, &c));
        let bb = b.clone();
        plan.add("principal-join", name.clone(), move || principal_join(&bb.lorder));
        let (bb, c) = (b.clone(), cfg.clone());
        plan.add("full-members-bounded", name.clone(), move || {
            per_subset(&bb, &c, check_full_members_bounded)
        });
        let (bb, c) = (b.clone(), cfg.clone());
        plan.add("max-join-agreement", name.clone(), move || per_subset(&bb, &c, check_max_join_agreement));
        let (bb, c) = (b.clone(), cfg.clone());
        plan.add("subset-join-relations", name.clone(), move || subset_join_relations(&bb, &c));
        if b.space.is_some() {
            let (bb, c) = (b.clone(), cfg.clone());
            plan.add("function-space-join", name.clone(), move || function_space_join(&bb, &c));
        }
        let bb = b.clone();
        plan.add_report("fuzzy-dcpo-verdict", move || {
            let r = Report::new("fuzzy-dcpo-verdict", bb.name.clone(), dcpo_verdict(&bb));
            match bb.dcpo.mode {
                ScanMode::Sampled { seed, .. } => r.with_seed(seed),
                ScanMode::Exhaustive => r,
            }
        });
        let (bb, c) = (b.clone(), cfg.clone());
        plan.add("representation", name.clone(), move || {
            match representation_iso(&bb.lorder, c.function_space_bound) {
                Ok(v) => v,
                Err(e) => Verdict::Skip(e.to_string()),
            }
        });

        let Some(hom) = hom.clone() else {
            let reason = format!("hom-set of {name} exceeds the map bound");
            for t in [
                "least-greatest-fixpoint",
                "fixpoint-extrema",
                "fixpoint-set-complete",
                "t-fixpoints-antitone",
                "f-invariance",
                "monotonicity-rule",
                "hom-dcpo-join",
                "canonical-inflation-join",
                "inflation-t-fixpoints",
                "fix-sub-dcpo",
            ] {
                let r = reason.clone();
                plan.add(t, name.clone(), move || Verdict::Skip(r.clone()));
            }
            continue;
        };
        let (bb, h) = (b.clone(), hom.clone());
        plan.add("least-greatest-fixpoint", name.clone(), move || least_greatest(&bb, &h));
        let h = hom.clone();
        plan.add("t-fixpoints-antitone", name.clone(), move || {
            fold(h.maps().map(|f| check_t_fixpoints_antitone(&f)), None)
        });
        let (bb, h) = (b.clone(), hom.clone());
        plan.add("f-invariance", name.clone(), move || f_invariance(&bb.lorder, &h));

        let complete = b.is_l_complete();
        let not_complete = || Verdict::Skip("base is not L-complete".into());
        let h = hom.clone();
        plan.add("fixpoint-extrema", name.clone(), move || {
            if !complete {
                return not_complete();
            }
            fold(h.maps().map(|f| check_fixpoint_extrema(&f)), Some("extrema-exist-on-l-complete-base"))
        });
        let (h, c) = (hom.clone(), cfg.clone());
        plan.add("fixpoint-set-complete", name.clone(), move || {
            if !complete {
                return not_complete();
            }
            fold(h.maps().map(|f| check_fix_l_complete(&f, c.subset_bound)), None)
        });
        let h = hom.clone();
        plan.add("monotonicity-rule", name.clone(), move || {
            fold(
                h.maps().flat_map(|f| h.maps().map(move |g| check_monotonicity_rule(&f, &g))),
                complete.then_some("monotonicity-rule-meets-exist"),
            )
        });

        let dcpo = b.dcpo.is_dcpo;
        let not_dcpo = || Verdict::Skip("base is not a fuzzy dcpo".into());
        let (bb, h, c) = (b.clone(), hom.clone(), cfg.clone());
        plan.add_report("hom-dcpo-join", move || {
            if !dcpo {
                return Report::new("hom-dcpo-join", bb.name.clone(), not_dcpo());
            }
            hom_dcpo(&bb, &h, &c)
        });
        let h = hom.clone();
        plan.add("canonical-inflation-join", name.clone(), move || {
            if !dcpo {
                return not_dcpo();
            }
            inflation(&h)
        });
        let h = hom.clone();
        plan.add("inflation-t-fixpoints", name.clone(), move || {
            if !dcpo {
                return not_dcpo();
            }
            inflation_t_fixpoints(&h)
        });
        let (bb, h, c) = (b.clone(), hom.clone(), cfg.clone());
        plan.add("fix-sub-dcpo", name.clone(), move || {
            if !dcpo || bb.zero.is_none() {
                return Verdict::Skip("base is not a fuzzy dcpo with zero".into());
            }
            fold(h.maps().map(|f| fix_sub_dcpo(&f, c.subset_bound)), None)
        });
        if b.is_crisp_over_chain2() && b.zero.is_some() {
            let (h, c) = (hom.clone(), cfg.clone());
            plan.add("crisp-cpo-strong-cover", name.clone(), move || crisp_cpo_cover(&h, &c));
        }
    }
}

fn plan_pairs(plan: &mut Plan, cat: &InstanceCatalog) {
    let cfg = Arc::new(plan.cfg.clone());
    let limit = cfg.rule_size_limit;
    for p in &cat.bases {
        for q in &cat.bases {
            if p.frame_name != q.frame_name {
                continue;
            }
            let pair = Arc::new(Pair { p: p.clone(), q: q.clone() });
            let name = pair.name();
            let (pr, c) = (pair.clone(), cfg.clone());
            plan.add("monotone-completion", name.clone(), move || monotone_completion(&pr, &c));
            let (pr, c) = (pair.clone(), cfg.clone());
            plan.add("hom-set-enumeration", name.clone(), move || hom_enumeration(&pr, &c));
            if p.lorder.len() > limit || q.lorder.len() > limit {
                continue;
            }
            let (pl, ql, c) = (p.lorder.clone(), q.lorder.clone(), cfg.clone());
            plan.add("completion-map", name.clone(), move || {
                match check_completion_map(pl.clone(), ql.clone(), c.function_space_bound) {
                    Ok(v) => v,
                    Err(e) => Verdict::Skip(e.to_string()),
                }
            });
            let (pr, c) = (pair.clone(), cfg.clone());
            plan.add("galois-crisp-equivalence", name.clone(), move || galois_equivalence(&pr, &c));
            let (pr, c) = (pair.clone(), cfg.clone());
            plan.add("right-adjoint-search", name.clone(), move || adjoint_search(&pr, &c));
            let (pr, c) = (pair.clone(), cfg.clone());
            plan.add("rolling-rule", name.clone(), move || rolling(&pr, &c));
            let (pr, c) = (pair.clone(), cfg.clone());
            plan.add("fusion-rule", name.clone(), move || fusion(&pr, &c));
            let (pr, c) = (pair.clone(), cfg.clone());
            plan.add("exchange-rule", name.clone(), move || exchange(&pr, &c));
        }
    }
}

/// Runs every enabled theorem check over the catalog built from `cfg`.
/// Records are ordered by (theorem, instance) whatever the scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Result<ReportSet, OracleError> {
    cfg.check()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build()
        .expect("thread pool");
    pool.install(|| sweep_inner(cfg))
}

fn sweep_inner(cfg: &SweepConfig) -> Result<ReportSet, OracleError> {
    let cat = InstanceCatalog::build(cfg)?;
    if !cat.rejected.is_empty() {
        let mut reports: Vec<Report> = cat
            .rejected
            .iter()
            .map(|(name, f)| Report::new("frame-laws", name.clone(), Verdict::Fail(f.clone())))
            .collect();
        reports.extend(
            cat.frames
                .iter()
                .map(|cf| Report::new("frame-laws", cf.name.clone(), frame_law_verdict(&cf.frame, cfg.seed))),
        );
        return Ok(ReportSet::new(reports));
    }
    let endos: Vec<Option<Arc<HomSet>>> = cat
        .bases
        .par_iter()
        .map(|b| hom_set(b.lorder.clone(), b.lorder.clone(), cfg.map_bound).ok().map(Arc::new))
        .collect();
    let mut plan = Plan { cfg, jobs: Vec::new() };
    plan_frames(&mut plan, &cat);
    plan_bases(&mut plan, &cat, &endos);
    plan_pairs(&mut plan, &cat);
    let reports: Vec<Report> = plan.jobs.par_iter().map(|job| job()).collect();
    Ok(ReportSet::new(reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorder::fz2;

    fn chain(n: usize) -> Arc<LOrderedSet> {
        Arc::new(LOrderedSet::from_crisp_poset(
            &CrispPoset::chain(n),
            Arc::new(Frame::chain(2).unwrap()),
        ))
    }

    #[test]
    fn monotone_enumeration_counts() {
        let c3 = chain(3);
        assert_eq!(enumerate_monotone_maps(c3.clone(), c3.clone(), 10_000).unwrap().len(), 10);
        let all = enumerate_maps(3, 3, 10_000).unwrap();
        assert_eq!(all.len(), 27);
        assert_eq!(all.iter().filter(|t| monotone_by_definition(&c3, &c3, t)).count(), 10);
        let one = chain(1);
        assert_eq!(enumerate_monotone_maps(one.clone(), one, 10).unwrap().len(), 1);
        let z = Arc::new(fz2());
        let maps = enumerate_monotone_maps(z.clone(), z, 10).unwrap();
        let tables: Vec<&[usize]> = maps.iter().map(|f| f.table()).collect();
        assert_eq!(tables, vec![&[0, 0][..], &[0, 1], &[1, 1]]);
        assert!(enumerate_monotone_maps(chain(4), chain(4), 100).is_err());
    }

    #[test]
    fn brute_fixpoints() {
        let c3 = chain(3);
        assert_eq!(brute_least_fixpoint(&LMap::identity(c3.clone())), Some(0));
        let f = LMap::new(c3.clone(), c3.clone(), vec![1, 1, 2]).unwrap();
        assert_eq!(brute_least_fixpoint(&f), Some(1));
        assert_eq!(brute_greatest_fixpoint(&f), Some(2));
        let anti = Arc::new(LOrderedSet::from_crisp_poset(&CrispPoset::antichain(2), c3.frame().clone()));
        assert_eq!(brute_least_fixpoint(&LMap::identity(anti)), None);
    }

    #[test]
    fn valid_lorder_enumeration() {
        let c2 = Arc::new(Frame::chain(2).unwrap());
        assert_eq!(enumerate_valid_lorders(1, &c2, 4096, 0).len(), 1);
        assert_eq!(enumerate_valid_lorders(2, &c2, 4096, 0).len(), 3);
        let c3 = Arc::new(Frame::chain(3).unwrap());
        let all = enumerate_valid_lorders(2, &c3, 4096, 0);
        let z = fz2_over(c3.clone());
        assert!(all.iter().any(|x| x.table() == z.table()));
        let sampled = enumerate_valid_lorders(3, &c3, 20, 5);
        assert!(!sampled.is_empty() && sampled.len() <= 20);
        assert_eq!(sampled, enumerate_valid_lorders(3, &c3, 20, 5));
    }

    #[test]
    fn definitions_of_join() {
        let z = fz2();
        let l = z.frame().clone();
        let d = FuzzySubset::new(vec![l.top(), l.element("m").unwrap()]);
        assert!(joins_by_definition(&z, &d).is_empty());
        assert_eq!(joins_by_definition(&z, &z.down_point(1)), vec![1]);
        assert_eq!(meets_by_definition(&z, &z.up_point(0)), vec![0]);
    }

    #[test]
    fn adjoint_search_agrees() {
        let c3 = chain(3);
        let k = LMap::constant(c3.clone(), c3.clone(), 2);
        assert_eq!(right_adjoint_exhaustive(&k, 100).unwrap(), None);
        let id = LMap::identity(c3.clone());
        assert_eq!(right_adjoint_exhaustive(&id, 100).unwrap(), Some(id));
    }

    #[test]
    fn catalog_shape() {
        let cat = InstanceCatalog::standard();
        assert_eq!(cat.frames.len(), 5);
        assert_eq!(cat.posets.len(), 9);
        assert!(cat.rejected.is_empty());
        let fz = cat.base("fz2").unwrap();
        assert_eq!(fz.l_complete, Some(false));
        assert!(!fz.dcpo.is_dcpo);
        assert!(cat.base("chain3@chain2").unwrap().is_l_complete());
        assert!(cat.base("chain2^2").unwrap().is_l_complete());
        assert_eq!(cat.bases.iter().filter(|b| matches!(b.kind, BaseKind::Random { .. })).count(), 6);
    }

    #[test]
    fn injected_m3_stops_the_sweep() {
        let cfg = SweepConfig {
            frames: Some(vec!["chain2".into(), "m3".into()]),
            ..SweepConfig::default()
        };
        let r = run_sweep(&cfg).unwrap();
        assert!(r.reports.iter().all(|r| r.theorem == "frame-laws"));
        let m3 = r.reports.iter().find(|r| r.instance == "m3").unwrap();
        assert_eq!(m3.law.as_deref(), Some("distributivity"));
        assert!(r.has_failures());
    }

    #[test]
    fn frame_only_sweep() {
        let cfg = SweepConfig {
            theorems: Some(FRAME_THEOREMS.iter().map(|s| s.to_string()).collect()),
            ..SweepConfig::default()
        };
        let r = run_sweep(&cfg).unwrap();
        assert!(!r.has_failures());
        assert!(r.reports.iter().all(|r| FRAME_THEOREMS.contains(&r.theorem.as_str())));
        assert_eq!(r.for_theorem("frame-rejection").count(), 2);
        let bad = SweepConfig {
            theorems: Some(vec!["no-such-law".into()]),
            ..SweepConfig::default()
        };
        assert_eq!(run_sweep(&bad).unwrap_err(), OracleError::UnknownTheorem("no-such-law".into()));
    }
}
