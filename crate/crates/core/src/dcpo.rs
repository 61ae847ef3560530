//! Fuzzy dcpos: detection by scanning directed subsets, the pointwise join
//! construction on the monotone endomaps `H_P`, the canonical inflation join
//! `beta = join(alpha |-> e(Id, alpha))` with its t-fixpoint consequences, and
//! the sub-dcpo check for fixpoint sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::fixpoint::{fix_set, m_f};
use crate::fuzzy::{all_fuzzy_subsets, count_subsets, image, DirectedFailure, FuzzySubset};
use crate::lorder::LOrderedSet;
use crate::maps::{degree, HomSet, LMap, MapError};
use crate::report::{Failure, Verdict};

/// Default bound on `|L|^|X|` for exhaustive directed-subset scans.
pub const SUBSET_BOUND: usize = 4096;
/// Default number of directed subsets drawn when a scan is sampled.
pub const DIRECTED_SAMPLES: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DcpoError {
    #[error("hom-set is not a set of endomaps")]
    NotEndo,
    #[error("fuzzy subset is not directed: {0:?}")]
    NotDirected(DirectedFailure),
    #[error("join of T_{point} does not exist")]
    MissingJoin { point: String },
    #[error("{0}")]
    Violation(Failure),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum ScanMode {
    Exhaustive,
    Sampled { seed: u64, attempts: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcpoVerdict {
    pub is_dcpo: bool,
    /// A directed subset without a join, when `is_dcpo` is false.
    pub witness: Option<FuzzySubset>,
    pub mode: ScanMode,
    /// Directed subsets examined.
    pub directed: u64,
}

/// Directed fuzzy subsets of `x`: all of them when `|L|^|X| <= bound`,
/// otherwise `samples` seeded draws that passed the directedness filter.
pub fn directed_subsets(x: &LOrderedSet, bound: usize, samples: usize, seed: u64) -> (Vec<FuzzySubset>, ScanMode) {
    let total = count_subsets(x.frame().len(), x.len()).unwrap_or(usize::MAX);
    if total <= bound {
        let all = all_fuzzy_subsets(x.frame(), x.len())
            .filter(|s| x.directed_violation(s).is_none())
            .collect();
        return (all, ScanMode::Exhaustive);
    }
    let (found, attempts) = sample_directed(x, samples, seed);
    (found, ScanMode::Sampled { seed, attempts })
}

/// Draws random fuzzy subsets and keeps the directed ones. Draws mix three
/// shapes: uniform, uniform with one point forced to top, and values capped
/// by the degree to a random point.
pub fn sample_directed(x: &LOrderedSet, samples: usize, seed: u64) -> (Vec<FuzzySubset>, u64) {
    let l = x.frame();
    let n = x.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    let mut attempts = 0u64;
    let cap = (samples as u64).saturating_mul(1000).max(1000);
    while out.len() < samples && attempts < cap && n > 0 {
        attempts += 1;
        let shape = rng.random_range(0..3u8);
        let z0 = rng.random_range(0..n);
        let v = (0..n)
            .map(|p| {
                if shape > 0 && p == z0 {
                    return l.top();
                }
                if rng.random_bool(0.5) {
                    return l.bottom();
                }
                let r = l.elem(rng.random_range(0..l.len()));
                if shape == 2 {
                    l.meet(r, x.e(p, z0))
                } else {
                    r
                }
            })
            .collect();
        let s = FuzzySubset::new(v);
        if x.directed_violation(&s).is_none() {
            out.push(s);
        }
    }
    (out, attempts)
}

/// Every fuzzy directed subset has a join.
pub fn is_fuzzy_dcpo(x: &LOrderedSet, bound: usize, samples: usize, seed: u64) -> DcpoVerdict {
    let (directed, mode) = directed_subsets(x, bound, samples, seed);
    let witness = directed.iter().find(|d| x.join(d).is_none()).cloned();
    DcpoVerdict {
        is_dcpo: witness.is_none(),
        witness,
        mode,
        directed: directed.len() as u64,
    }
}

fn require_endo(h: &HomSet) -> Result<(), DcpoError> {
    if h.domain() == h.codomain() {
        Ok(())
    } else {
        Err(DcpoError::NotEndo)
    }
}

/// `T_x(y) = \/{S(h) : h(x) = y}` for a fuzzy subset `S` of `H_P`.
pub fn evaluation_subset(h: &HomSet, s: &FuzzySubset, x: usize) -> FuzzySubset {
    let p = h.domain();
    let eval = LMap::new(
        h.lorder().clone(),
        p.clone(),
        (0..h.len()).map(|i| h.map(i).apply(x)).collect(),
    )
    .expect("evaluation lands in P");
    image(&eval, s)
}

/// The join of a directed `S` in `H_P`, built pointwise as
/// `alpha0(x) = join(T_x)` and checked against the join characterization.
pub fn hom_dcpo_join(h: &HomSet, s: &FuzzySubset) -> Result<LMap, DcpoError> {
    require_endo(h)?;
    let hp = h.lorder();
    hp.is_directed(s).map_err(DcpoError::NotDirected)?;
    let p = h.domain();
    let mut table = Vec::with_capacity(p.len());
    for x in p.points() {
        let t = evaluation_subset(h, s, x);
        if let Err(w) = p.is_directed(&t) {
            return Err(DcpoError::Violation(Failure::new(
                "pointwise-subset-directed",
                format!("S={}, x={}, failure={w:?}", s.describe(hp), p.point_name(x)),
            )));
        }
        let y = p.join(&t).ok_or_else(|| DcpoError::MissingJoin {
            point: p.point_name(x).to_string(),
        })?;
        table.push(y);
    }
    let alpha = LMap::new(p.clone(), p.clone(), table)?;
    if let Err((x, y)) = alpha.is_monotone() {
        return Err(DcpoError::Violation(Failure::new(
            "pointwise-join-monotone",
            format!("S={}, alpha0={alpha}, x={}, y={}", s.describe(hp), p.point_name(x), p.point_name(y)),
        )));
    }
    let i = h.index_of(&alpha).expect("monotone map lies in the hom-set");
    let bound = hp.join_bound(s);
    if let Some(g) = hp.points().find(|&g| hp.e(i, g) != bound[g]) {
        return Err(DcpoError::Violation(
            Failure::new(
                "pointwise-join-is-join",
                format!("S={}, alpha0={alpha}, g={}", s.describe(hp), hp.point_name(g)),
            )
            .with_sides(p.frame().name(hp.e(i, g)), p.frame().name(bound[g])),
        ));
    }
    Ok(alpha)
}

/// `S(alpha) = e(Id, alpha)` on `H_P`.
pub fn inflation_subset(h: &HomSet) -> FuzzySubset {
    let id = LMap::identity(h.domain().clone());
    FuzzySubset::new(h.maps().map(|a| degree(&id, &a)).collect())
}

/// `beta = join(S)` for `S(alpha) = e(Id, alpha)`, with the checks that
/// composites refine pairs in `S`, that `S` is directed, and that
/// `S(alpha) /\ S(beta) <= e(alpha∘beta, beta) /\ e(beta, alpha∘beta)`.
pub fn canonical_inflation_join(h: &HomSet) -> Result<(LMap, Verdict), DcpoError> {
    require_endo(h)?;
    let l = h.domain().frame().clone();
    let s = inflation_subset(h);
    let hp = h.lorder();
    let mut cases = 0u64;
    for f in h.maps() {
        for g in h.maps() {
            cases += 1;
            let fg = f.after(&g);
            let lhs = l.meet(s.get(h.index_of(&f).unwrap()), s.get(h.index_of(&g).unwrap()));
            let k = h.index_of(&fg).expect("composite of monotone maps is monotone");
            let rhs = l.meet(s.get(k), l.meet(degree(&f, &fg), degree(&g, &fg)));
            if !l.leq(lhs, rhs) {
                return Ok((
                    LMap::identity(h.domain().clone()),
                    Verdict::Fail(
                        Failure::new("composite-refines-pair", format!("f={f}, g={g}"))
                            .with_sides(l.name(lhs), l.name(rhs)),
                    ),
                ));
            }
        }
    }
    if let Err(w) = hp.is_directed(&s) {
        return Err(DcpoError::Violation(Failure::new(
            "inflation-subset-directed",
            format!("S={}, failure={w:?}", s.describe(hp)),
        )));
    }
    let beta = hom_dcpo_join(h, &s)?;
    let sb = s.get(h.index_of(&beta).unwrap());
    for a in h.maps() {
        cases += 1;
        let ab = a.after(&beta);
        let lhs = l.meet(s.get(h.index_of(&a).unwrap()), sb);
        let rhs = l.meet(degree(&ab, &beta), degree(&beta, &ab));
        if !l.leq(lhs, rhs) {
            return Ok((
                beta.clone(),
                Verdict::Fail(
                    Failure::new("inflation-join-stable", format!("alpha={a}, beta={beta}"))
                        .with_sides(l.name(lhs), l.name(rhs)),
                ),
            ));
        }
    }
    Ok((beta, Verdict::pass(cases)))
}

/// For every `f` in `H_P`, with `S` and `beta` as in
/// [`canonical_inflation_join`] and `t = S(f) /\ S(beta)`: every `beta(x)`
/// is a `t`-fixpoint of `f`; `S(f) <= e(f, beta∘f)`; some point is a
/// `t`-fixpoint; and `S(f) = top` forces `f∘beta = beta`.
pub fn check_inflation_t_fixpoints(h: &HomSet, beta: &LMap) -> Verdict {
    let p = h.domain();
    let l = p.frame();
    let s = inflation_subset(h);
    let sb = s.get(h.index_of(beta).expect("beta lies in the hom-set"));
    let mut cases = 0u64;
    for (i, f) in h.maps().enumerate() {
        let t = l.meet(s.get(i), sb);
        let m = m_f(&f);
        for x in p.points() {
            cases += 1;
            if !l.leq(t, m.get(beta.apply(x))) {
                return Verdict::Fail(Failure::new(
                    "beta-values-are-t-fixpoints",
                    format!("f={f}, x={}, t={}", p.point_name(x), l.name(t)),
                ));
            }
        }
        cases += 1;
        let bf = beta.after(&f);
        if !l.leq(s.get(i), degree(&f, &bf)) {
            return Verdict::Fail(
                Failure::new("inflation-below-beta-after", format!("f={f}"))
                    .with_sides(l.name(s.get(i)), l.name(degree(&f, &bf))),
            );
        }
        cases += 1;
        if !p.points().any(|u| l.leq(t, m.get(u))) {
            return Verdict::Fail(Failure::new(
                "some-t-fixpoint-exists",
                format!("f={f}, t={}", l.name(t)),
            ));
        }
        if s.get(i) == l.top() {
            cases += 1;
            let fb = f.after(beta);
            if fb != *beta {
                return Verdict::Fail(
                    Failure::new("inflationary-map-fixes-beta", format!("f={f}"))
                        .with_sides(fb.describe(), beta.describe()),
                );
            }
        }
    }
    Verdict::pass(cases)
}

/// The sets entering the sub-dcpo hypothesis for `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubDcpoHypothesis {
    /// `{a : e(a, f(a)) = top}`.
    pub y: Vec<usize>,
    /// `Fix(f)`.
    pub m: Vec<usize>,
    /// Points of `y` with no strong cover in `m`.
    pub uncovered: Vec<usize>,
}

pub fn sub_dcpo_hypothesis(f: &LMap) -> SubDcpoHypothesis {
    let p = f.domain();
    let top = p.frame().top();
    let y: Vec<usize> = p.points().filter(|&a| p.e(a, f.apply(a)) == top).collect();
    let m = fix_set(f);
    let uncovered = y.iter().copied().filter(|&a| p.strong_cover(a, &m).is_none()).collect();
    SubDcpoHypothesis { y, m, uncovered }
}

/// When every point of `Y` has a strong cover in `Fix(f)`, every directed
/// fuzzy subset of `Fix(f)` has a join inside `Fix(f)`, and that join is
/// the strong cover of the ambient join. Skips when the hypothesis fails,
/// the base lacks a zero, or the scan exceeds `bound`.
pub fn fix_sub_dcpo(f: &LMap, bound: usize) -> Verdict {
    let p = f.domain();
    if p.zero().is_none() {
        return Verdict::Skip("base has no zero".into());
    }
    let hyp = sub_dcpo_hypothesis(f);
    if !hyp.uncovered.is_empty() {
        let names: Vec<&str> = hyp.uncovered.iter().map(|&a| p.point_name(a)).collect();
        return Verdict::Skip(format!("no strong cover in Fix(f) for {}", names.join(",")));
    }
    let m = &hyp.m;
    let l = p.frame();
    let total = count_subsets(l.len(), m.len()).unwrap_or(usize::MAX);
    if total > bound {
        return Verdict::Skip(format!("{total} fuzzy subsets of Fix(f) exceed the bound of {bound}"));
    }
    let sub = p.restrict(m);
    let mut cases = 0u64;
    for s in all_fuzzy_subsets(l, m.len()) {
        if sub.directed_violation(&s).is_some() {
            continue;
        }
        cases += 1;
        let ext = s.extend_by_bottom(l, p.len(), m);
        let w = || format!("f={f}, S={}", ext.describe(p));
        if p.directed_violation(&ext).is_some() {
            return Verdict::Fail(Failure::new("extension-by-bottom-directed", w()));
        }
        let Some(b) = p.join_in_subset(&ext, m) else {
            return Verdict::Fail(Failure::new("fixpoints-sub-dcpo", w()));
        };
        if let Some(a) = p.join(&ext) {
            if p.strong_cover(a, m) != Some(b) {
                return Verdict::Fail(Failure::new("sub-join-is-cover-of-join", w()));
            }
        }
    }
    Verdict::pass(cases)
}

/// `(H_P, e)` is a fuzzy dcpo, and each join found by the generic scan
/// equals the pointwise construction.
pub fn check_hom_is_dcpo(h: &HomSet, bound: usize, samples: usize, seed: u64) -> Result<(Verdict, ScanMode), DcpoError> {
    require_endo(h)?;
    let hp = h.lorder();
    let (directed, mode) = directed_subsets(hp, bound, samples, seed);
    if let ScanMode::Sampled { .. } = mode {
        if directed.len() < samples {
            return Ok((
                Verdict::Skip(format!("only {} of {samples} directed subsets drawn", directed.len())),
                mode,
            ));
        }
    }
    for s in &directed {
        let w = || s.describe(hp);
        let Some(j) = hp.join(s) else {
            return Ok((Verdict::Fail(Failure::new("hom-set-directed-join-exists", w())), mode));
        };
        match hom_dcpo_join(h, s) {
            Ok(alpha) if h.index_of(&alpha) == Some(j) => {}
            Ok(alpha) => {
                return Ok((
                    Verdict::Fail(
                        Failure::new("pointwise-join-equals-scan", w())
                            .with_sides(alpha.describe(), hp.point_name(j)),
                    ),
                    mode,
                ))
            }
            Err(DcpoError::Violation(f)) => return Ok((Verdict::Fail(f), mode)),
            Err(DcpoError::MissingJoin { point }) => {
                return Ok((
                    Verdict::Fail(Failure::new("pointwise-join-exists", format!("{}, x={point}", w()))),
                    mode,
                ))
            }
            Err(e) => return Err(e),
        }
    }
    Ok((Verdict::pass(directed.len() as u64), mode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use crate::lorder::{fz2, CrispPoset};
    use crate::maps::{hom_set, MAP_BOUND};
    use std::sync::Arc;

    fn crisp(q: &CrispPoset) -> Arc<LOrderedSet> {
        Arc::new(LOrderedSet::from_crisp_poset(q, Arc::new(Frame::chain(2).unwrap())))
    }

    #[test]
    fn fz2_is_not_a_dcpo() {
        let z = fz2();
        let v = is_fuzzy_dcpo(&z, SUBSET_BOUND, DIRECTED_SAMPLES, 0);
        assert!(!v.is_dcpo);
        assert_eq!(v.mode, ScanMode::Exhaustive);
        let l = z.frame();
        let w = v.witness.unwrap();
        assert_eq!(w.values(), &[l.top(), l.element("m").unwrap()]);
        assert_eq!(z.is_directed(&w), Ok(()));
        assert_eq!(z.join(&w), None);
    }

    #[test]
    fn crisp_chains_are_dcpos() {
        for n in 1..=3 {
            let v = is_fuzzy_dcpo(&crisp(&CrispPoset::chain(n)), SUBSET_BOUND, DIRECTED_SAMPLES, 0);
            assert!(v.is_dcpo);
            assert_eq!(v.mode, ScanMode::Exhaustive);
        }
        let v = is_fuzzy_dcpo(&crisp(&CrispPoset::chain(3)), SUBSET_BOUND, DIRECTED_SAMPLES, 0);
        // the three singletons, the three pairs and the full set
        assert_eq!(v.directed, 7);
    }

    #[test]
    fn pointwise_joins_on_chain() {
        let p = crisp(&CrispPoset::chain(3));
        let h = hom_set(p.clone(), p.clone(), MAP_BOUND).unwrap();
        let l = p.frame();
        let id = h.index_of(&LMap::identity(p.clone())).unwrap();
        let top = h.index_of(&LMap::constant(p.clone(), p.clone(), 2)).unwrap();
        let chi = FuzzySubset::characteristic(l, h.len(), &[id]);
        assert_eq!(hom_dcpo_join(&h, &chi).unwrap(), LMap::identity(p.clone()));
        let pair = FuzzySubset::characteristic(l, h.len(), &[id, top]);
        assert_eq!(hom_dcpo_join(&h, &pair).unwrap().table(), &[2, 2, 2]);
        let s = inflation_subset(&h);
        assert_eq!(hom_dcpo_join(&h, &s).unwrap().table(), &[2, 2, 2]);
        let zero = FuzzySubset::constant(h.len(), l.bottom());
        assert!(matches!(hom_dcpo_join(&h, &zero), Err(DcpoError::NotDirected(DirectedFailure::JoinNotTop))));
    }

    #[test]
    fn canonical_betas() {
        let one = crisp(&CrispPoset::chain(1));
        let h1 = hom_set(one.clone(), one.clone(), MAP_BOUND).unwrap();
        let (b, v) = canonical_inflation_join(&h1).unwrap();
        assert_eq!(b, LMap::identity(one));
        assert!(v.is_pass());
        for n in 2..=3 {
            let p = crisp(&CrispPoset::chain(n));
            let h = hom_set(p.clone(), p.clone(), MAP_BOUND).unwrap();
            let (b, v) = canonical_inflation_join(&h).unwrap();
            assert!(v.is_pass());
            assert_eq!(b, LMap::constant(p.clone(), p.clone(), n - 1));
            assert!(check_inflation_t_fixpoints(&h, &b).is_pass());
        }
    }

    #[test]
    fn sub_dcpo_on_chain_example() {
        let p = crisp(&CrispPoset::chain(3));
        let f = LMap::new(p.clone(), p.clone(), vec![1, 1, 2]).unwrap();
        let hyp = sub_dcpo_hypothesis(&f);
        assert_eq!(hyp.y, vec![0, 1, 2]);
        assert_eq!(hyp.m, vec![1, 2]);
        assert!(hyp.uncovered.is_empty());
        assert!(fix_sub_dcpo(&f, SUBSET_BOUND).is_pass());
        assert!(fix_sub_dcpo(&LMap::identity(p), SUBSET_BOUND).is_pass());
    }

    #[test]
    fn hom_dcpo_scans() {
        let p = crisp(&CrispPoset::chain(2));
        let h = hom_set(p.clone(), p, MAP_BOUND).unwrap();
        assert_eq!(h.len(), 3);
        let (v, mode) = check_hom_is_dcpo(&h, SUBSET_BOUND, DIRECTED_SAMPLES, 0).unwrap();
        assert!(v.is_pass());
        assert_eq!(mode, ScanMode::Exhaustive);
        let p = crisp(&CrispPoset::chain(3));
        let h = hom_set(p.clone(), p, MAP_BOUND).unwrap();
        let (v, mode) = check_hom_is_dcpo(&h, 64, DIRECTED_SAMPLES, 7).unwrap();
        assert!(v.is_pass(), "{v:?}");
        assert!(matches!(mode, ScanMode::Sampled { seed: 7, .. }));
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = crisp(&CrispPoset::diamond());
        let h = hom_set(p.clone(), p, MAP_BOUND).unwrap();
        let a = sample_directed(h.lorder(), 50, 3);
        let b = sample_directed(h.lorder(), 50, 3);
        assert_eq!(a, b);
        assert_eq!(a.0.len(), 50);
    }
}
