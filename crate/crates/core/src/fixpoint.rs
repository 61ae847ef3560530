//! Fixpoints of monotone endomaps via the fuzzy subsets
//! `S_f(x) = e(f(x), x)`, `T_f(x) = e(x, f(x))` and `M_f = S_f /\ T_f`:
//! the least fixpoint is `meet(S_f)`, the greatest is `join(T_f)`.
//!
//! The rule checks return a [`Verdict`]; a missing meet or join is a skip
//! with its reason, never a silent pass.

use std::sync::Arc;

use thiserror::Error;

use crate::frame::Elem;
use crate::fuzzy::{all_fuzzy_subsets, count_subsets, function_space, image, FuzzyError, FuzzySubset};
use crate::lorder::LOrderedSet;
use crate::maps::{map_space, right_adjoint, LMap, MapError};
use crate::report::{Failure, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixError {
    #[error("map is not an endomap")]
    NotEndo,
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
    #[error("meet of S_f does not exist")]
    MissingMeet,
    #[error("join of T_f does not exist")]
    MissingJoin,
    #[error("{0}")]
    Violation(Failure),
}

/// The fuzzy subsets and fixpoints attached to a monotone endomap.
#[derive(Clone, Debug)]
pub struct FixAnalysis {
    pub f: LMap,
    pub s_f: FuzzySubset,
    pub t_f: FuzzySubset,
    pub m_f: FuzzySubset,
    pub fix_set: Vec<usize>,
    /// `meet(S_f)` when it exists.
    pub least: Option<usize>,
    /// `join(T_f)` when it exists.
    pub greatest: Option<usize>,
}

impl FixAnalysis {
    pub fn base(&self) -> &Arc<LOrderedSet> {
        self.f.domain()
    }
}

pub fn s_f(f: &LMap) -> FuzzySubset {
    let p = f.domain();
    FuzzySubset::new(p.points().map(|x| p.e(f.apply(x), x)).collect())
}

pub fn t_f(f: &LMap) -> FuzzySubset {
    let p = f.domain();
    FuzzySubset::new(p.points().map(|x| p.e(x, f.apply(x))).collect())
}

pub fn m_f(f: &LMap) -> FuzzySubset {
    let p = f.domain();
    let l = p.frame();
    FuzzySubset::new(
        p.points()
            .map(|x| l.meet(p.e(f.apply(x), x), p.e(x, f.apply(x))))
            .collect(),
    )
}

pub fn fix_set(f: &LMap) -> Vec<usize> {
    f.domain().points().filter(|&x| f.apply(x) == x).collect()
}

fn require_endo_monotone(f: &LMap) -> Result<(), FixError> {
    if !f.is_endo() {
        return Err(FixError::NotEndo);
    }
    f.require_monotone()?;
    Ok(())
}

pub fn analyze(f: &LMap) -> Result<FixAnalysis, FixError> {
    require_endo_monotone(f)?;
    let p = f.domain();
    let (s, t) = (s_f(f), t_f(f));
    let least = p.meet(&s);
    let greatest = p.join(&t);
    Ok(FixAnalysis {
        f: f.clone(),
        m_f: m_f(f),
        s_f: s,
        t_f: t,
        fix_set: fix_set(f),
        least,
        greatest,
    })
}

fn extremal_violation(f: &LMap, a: usize, least: bool) -> Option<Failure> {
    let p = f.domain();
    let (law, which) = if least {
        ("meet-of-s-is-least-fixpoint", "meet(S_f)")
    } else {
        ("join-of-t-is-greatest-fixpoint", "join(T_f)")
    };
    if f.apply(a) != a {
        return Some(
            Failure::new(law, format!("f={f}, {which}={} is not fixed", p.point_name(a)))
                .with_sides(p.point_name(f.apply(a)), p.point_name(a)),
        );
    }
    let bad = fix_set(f)
        .into_iter()
        .find(|&u| if least { !p.leq_e(a, u) } else { !p.leq_e(u, a) })?;
    Some(Failure::new(
        law,
        format!("f={f}, {which}={}, fixpoint {} not bounded", p.point_name(a), p.point_name(bad)),
    ))
}

/// `meet(S_f)`, checked to be a fixpoint below every fixpoint.
pub fn least_fixpoint(f: &LMap) -> Result<usize, FixError> {
    require_endo_monotone(f)?;
    let a = f.domain().meet(&s_f(f)).ok_or(FixError::MissingMeet)?;
    match extremal_violation(f, a, true) {
        None => Ok(a),
        Some(v) => Err(FixError::Violation(v)),
    }
}

/// `join(T_f)`, checked to be a fixpoint above every fixpoint.
pub fn greatest_fixpoint(f: &LMap) -> Result<usize, FixError> {
    require_endo_monotone(f)?;
    let a = f.domain().join(&t_f(f)).ok_or(FixError::MissingJoin)?;
    match extremal_violation(f, a, false) {
        None => Ok(a),
        Some(v) => Err(FixError::Violation(v)),
    }
}

/// Points `x` with `t <= M_f(x)`.
pub fn t_fixpoints(f: &LMap, t: Elem) -> Vec<usize> {
    let m = m_f(f);
    let l = f.domain().frame();
    f.domain().points().filter(|&x| l.leq(t, m.get(x))).collect()
}

fn name(p: &LOrderedSet, x: Option<usize>) -> String {
    x.map_or_else(|| "none".into(), |x| p.point_name(x).to_string())
}

fn skip_missing(what: &str, f: &LMap) -> Verdict {
    Verdict::Skip(format!("{what} does not exist for f={f}"))
}

/// `max T_f = join T_f = join M_f` and `min S_f = meet S_f = meet M_f`.
pub fn check_fixpoint_extrema(f: &LMap) -> Verdict {
    let a = match analyze(f) {
        Ok(a) => a,
        Err(e) => return Verdict::Skip(e.to_string()),
    };
    let p = a.base();
    let (Some(least), Some(greatest)) = (a.least, a.greatest) else {
        return skip_missing("meet(S_f) or join(T_f)", f);
    };
    let checks = [
        ("max-t-equals-join-t", p.max_of(&a.t_f), Some(greatest)),
        ("join-m-equals-join-t", p.join(&a.m_f), Some(greatest)),
        ("min-s-equals-meet-s", p.min_of(&a.s_f), Some(least)),
        ("meet-m-equals-meet-s", p.meet(&a.m_f), Some(least)),
    ];
    for (law, got, want) in checks {
        if got != want {
            return Verdict::Fail(
                Failure::new(law, format!("f={f}")).with_sides(name(p, got), name(p, want)),
            );
        }
    }
    Verdict::pass(checks.len() as u64)
}

/// `/\_y e(f(y), g(y)) <= e(meet S_f, meet S_g)`.
pub fn check_monotonicity_rule(f: &LMap, g: &LMap) -> Verdict {
    let p = f.domain();
    let l = p.frame();
    let (Some(a), Some(b)) = (p.meet(&s_f(f)), p.meet(&s_f(g))) else {
        return skip_missing("meet(S_f) or meet(S_g)", f);
    };
    let lhs = l.meet_all(p.points().map(|y| p.e(f.apply(y), g.apply(y))));
    let rhs = p.e(a, b);
    if l.leq(lhs, rhs) {
        Verdict::pass(1)
    } else {
        Verdict::Fail(
            Failure::new("monotonicity-rule", format!("f={f}, g={g}")).with_sides(l.name(lhs), l.name(rhs)),
        )
    }
}

/// For `f: P -> Q` and `g: Q -> P`:
/// `g(meet S_{f∘g}) = meet S_{g∘f}` and
/// `meet(g[S_{f∘g}]) = meet S_{g∘f}`, with `g[-]` the fuzzy image.
pub fn check_rolling(f: &LMap, g: &LMap) -> Verdict {
    let (p, q) = (f.domain(), f.codomain());
    let fg = f.after(g);
    let gf = g.after(f);
    let s_fg = s_f(&fg);
    let (Some(c), Some(a)) = (q.meet(&s_fg), p.meet(&s_f(&gf))) else {
        return Verdict::Skip(format!("meet(S_fg) or meet(S_gf) does not exist for f={f}, g={g}"));
    };
    if g.apply(c) != a {
        return Verdict::Fail(
            Failure::new("rolling-rule-image-of-meet", format!("f={f}, g={g}"))
                .with_sides(p.point_name(g.apply(c)), p.point_name(a)),
        );
    }
    let b = p.meet(&image(g, &s_fg));
    if b != Some(a) {
        return Verdict::Fail(
            Failure::new("rolling-rule-meet-of-image", format!("f={f}, g={g}"))
                .with_sides(name(p, b), p.point_name(a)),
        );
    }
    Verdict::pass(2)
}

/// For `f: P -> Q` with right adjoint and endomaps `g` on `P`, `h` on `Q`,
/// the two fusion inequalities plus the intermediate bound
/// `e'(f g f'(meet S_h), h f f'(meet S_h)) <= e'(f(meet S_g), meet S_h)`.
pub fn check_fusion(f: &LMap, g: &LMap, h: &LMap) -> Verdict {
    let Some(fr) = right_adjoint(f) else {
        return Verdict::Skip(format!("f={f} has no right adjoint"));
    };
    let (p, q) = (f.domain(), f.codomain());
    let l = p.frame();
    let (Some(mg), Some(mh)) = (p.meet(&s_f(g)), q.meet(&s_f(h))) else {
        return Verdict::Skip(format!("meet(S_g) or meet(S_h) does not exist for g={g}, h={h}"));
    };
    let witness = || format!("f={f}, g={g}, h={h}");
    let fmg = f.apply(mg);
    let bound = q.e(fmg, mh);

    let lhs1 = l.meet_all(p.points().map(|y| q.e(f.apply(g.apply(y)), h.apply(f.apply(y)))));
    if !l.leq(lhs1, bound) {
        return Verdict::Fail(Failure::new("fusion-rule", witness()).with_sides(l.name(lhs1), l.name(bound)));
    }
    let lhs2 = q.e(h.apply(fmg), f.apply(g.apply(mg)));
    let rhs2 = q.e(mh, fmg);
    if !l.leq(lhs2, rhs2) {
        return Verdict::Fail(
            Failure::new("fusion-rule-at-meet", witness()).with_sides(l.name(lhs2), l.name(rhs2)),
        );
    }
    let u = fr.apply(mh);
    let lhs3 = q.e(f.apply(g.apply(u)), h.apply(f.apply(u)));
    if !l.leq(lhs3, bound) {
        return Verdict::Fail(
            Failure::new("fusion-rule-through-adjoint", witness()).with_sides(l.name(lhs3), l.name(bound)),
        );
    }
    Verdict::pass(3)
}

/// For `f, g: P -> Q` and `h: Q -> P` with `f` right-adjoint-possessing:
/// `e'(f h g f'(u), g h f f'(u)) <= e'(meet S_{f∘h}, meet S_{g∘h})` where
/// `u = meet S_{g∘h}`.
pub fn check_exchange(f: &LMap, g: &LMap, h: &LMap) -> Verdict {
    let Some(fr) = right_adjoint(f) else {
        return Verdict::Skip(format!("f={f} has no right adjoint"));
    };
    let q = f.codomain();
    let l = q.frame();
    let (fh, gh) = (f.after(h), g.after(h));
    let (Some(a), Some(u)) = (q.meet(&s_f(&fh)), q.meet(&s_f(&gh))) else {
        return Verdict::Skip(format!("meet(S_fh) or meet(S_gh) does not exist for f={f}, g={g}, h={h}"));
    };
    let v = fr.apply(u);
    let lhs = q.e(f.apply(h.apply(g.apply(v))), g.apply(h.apply(f.apply(v))));
    let rhs = q.e(a, u);
    if l.leq(lhs, rhs) {
        Verdict::pass(1)
    } else {
        Verdict::Fail(
            Failure::new("exchange-rule", format!("f={f}, g={g}, h={h}")).with_sides(l.name(lhs), l.name(rhs)),
        )
    }
}

/// Every fuzzy subset of `Fix(f)` has a join and a meet inside `Fix(f)`.
/// Skips when `|L|^|Fix(f)|` exceeds `bound`.
pub fn check_fix_l_complete(f: &LMap, bound: usize) -> Verdict {
    let fix = fix_set(f);
    let p = f.domain();
    let total = count_subsets(p.frame().len(), fix.len()).unwrap_or(usize::MAX);
    if total > bound {
        return Verdict::Skip(format!("{total} fuzzy subsets of Fix(f) exceed the bound of {bound}"));
    }
    for s in all_fuzzy_subsets(p.frame(), fix.len()) {
        let ext = s.extend_by_bottom(p.frame(), p.len(), &fix);
        if p.join_in_subset(&ext, &fix).is_none() || p.meet_in_subset(&ext, &fix).is_none() {
            return Verdict::Fail(Failure::new(
                "fixpoint-set-l-complete",
                format!("f={f}, S={}", ext.describe(p)),
            ));
        }
    }
    Verdict::pass(total as u64)
}

/// `t1 <= t2` implies the `t2`-fixpoints are among the `t1`-fixpoints, and
/// the top-fixpoints are exactly the fixpoints.
pub fn check_t_fixpoints_antitone(f: &LMap) -> Verdict {
    let l = f.domain().frame();
    let sets: Vec<Vec<usize>> = l.elements().map(|t| t_fixpoints(f, t)).collect();
    let mut cases = 0;
    for t1 in l.elements() {
        for t2 in l.elements().filter(|&t2| l.leq(t1, t2)) {
            cases += 1;
            if !sets[t2.index()].iter().all(|x| sets[t1.index()].contains(x)) {
                return Verdict::Fail(Failure::new(
                    "t-fixpoints-antitone",
                    format!("f={f}, t1={}, t2={}", l.name(t1), l.name(t2)),
                ));
            }
        }
    }
    if sets[l.top().index()] != fix_set(f) || sets[l.bottom().index()].len() != f.domain().len() {
        return Verdict::Fail(Failure::new("t-fixpoints-extremes", format!("f={f}")));
    }
    Verdict::pass(cases + 2)
}

/// On `L^P`, the map `S |-> down(join S)` is monotone and `x |-> down(x)` is
/// a degree-preserving bijection from `P` onto its fixpoints.
pub fn representation_iso(p: &LOrderedSet, bound: usize) -> Result<Verdict, FixError> {
    let l = p.frame().clone();
    let space = function_space(p.len(), l.clone(), bound)?;
    let lp = space.lorder().clone();
    let mut table = Vec::with_capacity(space.len());
    for i in 0..space.len() {
        let s = FuzzySubset::new(space.function(i).to_vec());
        let Some(a) = p.join(&s) else {
            return Ok(Verdict::Skip(format!("join of {} does not exist", s.describe(p))));
        };
        table.push(space.index_of(p.down_point(a).values()).expect("down-set lies in L^P"));
    }
    let phi = LMap::new(lp.clone(), lp.clone(), table)?;
    if let Err((s, t)) = phi.is_monotone() {
        return Ok(Verdict::Fail(Failure::new(
            "down-of-join-monotone",
            format!("S={}, T={}", lp.point_name(s), lp.point_name(t)),
        )));
    }
    let fix = fix_set(&phi);
    let alpha: Vec<usize> = p
        .points()
        .map(|x| space.index_of(p.down_point(x).values()).expect("down-set lies in L^P"))
        .collect();
    let mut sorted = alpha.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted != fix {
        let stray = fix.iter().find(|s| !alpha.contains(s)).copied();
        return Ok(Verdict::Fail(
            Failure::new("down-sets-are-the-fixpoints", format!("P={}", p.describe())).with_sides(
                format!("{} down-sets", sorted.len()),
                format!("{} fixpoints{}", fix.len(), stray.map_or(String::new(), |s| format!(", e.g. {}", lp.point_name(s)))),
            ),
        ));
    }
    for a in p.points() {
        for b in p.points() {
            if lp.e(alpha[a], alpha[b]) != p.e(a, b) {
                return Ok(Verdict::Fail(
                    Failure::new("down-preserves-degree", format!("a={}, b={}", p.point_name(a), p.point_name(b)))
                        .with_sides(l.name(lp.e(alpha[a], alpha[b])), l.name(p.e(a, b))),
                ));
            }
        }
    }
    Ok(Verdict::pass((space.len() + p.len() * p.len()) as u64))
}

/// The completion `f |-> F` as a self-map of all maps `P -> Q` is monotone
/// and its fixpoints are exactly the monotone maps.
pub fn check_completion_map(p: Arc<LOrderedSet>, q: Arc<LOrderedSet>, bound: usize) -> Result<Verdict, FixError> {
    let all = map_space(p, q, bound)?;
    let mut table = Vec::with_capacity(all.len());
    for f in all.maps() {
        match f.monotone_completion() {
            Ok(c) => table.push(all.index_of(&c).expect("completion is a map P -> Q")),
            Err(MapError::MissingJoin { point }) => {
                return Ok(Verdict::Skip(format!("completion of {f} needs a missing join at {point}")))
            }
            Err(e) => return Err(e.into()),
        }
    }
    let sp = all.lorder().clone();
    let phi = LMap::new(sp.clone(), sp.clone(), table)?;
    if let Err((a, b)) = phi.is_monotone() {
        return Ok(Verdict::Fail(Failure::new(
            "completion-map-monotone",
            format!("f={}, g={}", sp.point_name(a), sp.point_name(b)),
        )));
    }
    for (i, f) in all.maps().enumerate() {
        if (phi.apply(i) == i) != f.is_monotone().is_ok() {
            return Ok(Verdict::Fail(Failure::new("completion-fixes-monotone-maps", format!("f={f}"))));
        }
    }
    Ok(Verdict::pass(2 * all.len() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use crate::lorder::{fz2, CrispPoset};
    use crate::maps::{hom_set, MAP_BOUND};

    fn c3() -> Arc<LOrderedSet> {
        Arc::new(LOrderedSet::from_crisp_poset(
            &CrispPoset::chain(3),
            Arc::new(Frame::chain(2).unwrap()),
        ))
    }

    fn example(p: &Arc<LOrderedSet>) -> LMap {
        LMap::new(p.clone(), p.clone(), vec![1, 1, 2]).unwrap()
    }

    #[test]
    fn analysis_of_chain_example() {
        let p = c3();
        let l = p.frame();
        let a = analyze(&example(&p)).unwrap();
        assert_eq!(a.s_f.values(), &[l.bottom(), l.top(), l.top()]);
        assert_eq!(a.t_f.values(), &[l.top(), l.top(), l.top()]);
        assert_eq!(a.fix_set, vec![1, 2]);
        assert_eq!((a.least, a.greatest), (Some(1), Some(2)));
        assert_eq!(least_fixpoint(&example(&p)), Ok(1));
        assert_eq!(greatest_fixpoint(&example(&p)), Ok(2));
        assert_eq!(check_fixpoint_extrema(&example(&p)), Verdict::pass(4));
    }

    #[test]
    fn identity_and_constants() {
        let p = c3();
        let id = LMap::identity(p.clone());
        let a = analyze(&id).unwrap();
        assert_eq!(a.fix_set, vec![0, 1, 2]);
        assert_eq!((a.least, a.greatest), (Some(0), Some(2)));
        for c in 0..3 {
            let k = LMap::constant(p.clone(), p.clone(), c);
            assert_eq!(fix_set(&k), vec![c]);
            assert_eq!(least_fixpoint(&k), Ok(c));
            assert_eq!(greatest_fixpoint(&k), Ok(c));
        }
    }

    #[test]
    fn rejects_bad_maps() {
        let p = c3();
        let swap = LMap::new(p.clone(), p.clone(), vec![2, 1, 0]).unwrap();
        assert!(matches!(analyze(&swap), Err(FixError::Map(MapError::NotMonotone { .. }))));
        let two = Arc::new(LOrderedSet::from_crisp_poset(&CrispPoset::chain(2), p.frame().clone()));
        let f = LMap::new(p, two, vec![0, 0, 1]).unwrap();
        assert_eq!(analyze(&f).unwrap_err(), FixError::NotEndo);
    }

    #[test]
    fn fz2_identity_has_no_extremal_fixpoint() {
        let z = Arc::new(fz2());
        let id = LMap::identity(z);
        assert_eq!(least_fixpoint(&id), Err(FixError::MissingMeet));
        assert_eq!(greatest_fixpoint(&id), Err(FixError::MissingJoin));
        assert!(matches!(check_fixpoint_extrema(&id), Verdict::Skip(_)));
    }

    #[test]
    fn t_fixpoints_on_fz2() {
        let z = Arc::new(fz2());
        let l = z.frame().clone();
        let f = LMap::new(z.clone(), z, vec![1, 1]).unwrap();
        let m = l.element("m").unwrap();
        assert_eq!(t_fixpoints(&f, m), vec![1]);
        assert_eq!(t_fixpoints(&f, l.bottom()), vec![0, 1]);
        assert_eq!(t_fixpoints(&f, l.top()), fix_set(&f));
        assert!(check_t_fixpoints_antitone(&f).is_pass());
    }

    #[test]
    fn rules_on_chain() {
        let p = c3();
        let h = hom_set(p.clone(), p.clone(), MAP_BOUND).unwrap();
        let k0 = LMap::constant(p.clone(), p.clone(), 0);
        let k1 = LMap::constant(p.clone(), p.clone(), 1);
        assert_eq!(check_monotonicity_rule(&k0, &k1), Verdict::pass(1));
        let id = LMap::identity(p.clone());
        assert_eq!(check_rolling(&id, &id), Verdict::pass(2));
        assert_eq!(check_rolling(&example(&p), &id), Verdict::pass(2));
        assert_eq!(check_fusion(&id, &id, &id), Verdict::pass(3));
        assert_eq!(check_exchange(&id, &id, &id), Verdict::pass(1));
        for f in h.maps() {
            for g in h.maps() {
                assert!(check_monotonicity_rule(&f, &g).is_pass());
                assert!(check_rolling(&f, &g).is_pass());
            }
        }
        assert!(matches!(check_fusion(&LMap::constant(p.clone(), p.clone(), 2), &id, &id), Verdict::Skip(_)));
    }

    #[test]
    fn fixpoint_sets_are_complete() {
        let p = c3();
        for f in hom_set(p.clone(), p.clone(), MAP_BOUND).unwrap().maps() {
            assert!(check_fix_l_complete(&f, 4096).is_pass());
        }
    }

    #[test]
    fn representation_small() {
        for n in 1..=2 {
            for k in 2..=3 {
                let p = LOrderedSet::from_crisp_poset(&CrispPoset::chain(n), Arc::new(Frame::chain(k).unwrap()));
                assert!(representation_iso(&p, 256).unwrap().is_pass());
            }
        }
        assert!(matches!(representation_iso(&fz2(), 256).unwrap(), Verdict::Skip(_)));
    }

    #[test]
    fn completion_map() {
        let p = c3();
        assert!(check_completion_map(p.clone(), p, MAP_BOUND).unwrap().is_pass());
    }
}
