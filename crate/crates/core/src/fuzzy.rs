//! Fuzzy subsets of an L-ordered set and the order-theoretic constructions
//! over them: joins and meets, maximal and minimal elements, directedness,
//! images under maps, the function space `L^X`, joins inside a subset and
//! strong covers.
//!
//! A join of `S` is the point `x0` with
//! `e(x0, x) = /\_y (S(y) -> e(y, x))` for every `x`; it is found by scanning
//! every candidate. Absence is an ordinary answer, not an error.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::frame::{Elem, Frame};
use crate::lorder::{LOrderError, LOrderedSet};
use crate::maps::LMap;
use crate::report::{Failure, Verdict};

/// Default bound on `|L|^|X|` for [`function_space`].
pub const FUNCTION_SPACE_BOUND: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FuzzyError {
    #[error("carrier of {size} functions exceeds the bound of {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error(transparent)]
    LOrder(#[from] LOrderError),
}

/// A membership function from the points of an L-ordered set into its frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FuzzySubset(Vec<Elem>);

impl FuzzySubset {
    pub fn new(values: Vec<Elem>) -> Self {
        FuzzySubset(values)
    }

    pub fn constant(n: usize, v: Elem) -> Self {
        FuzzySubset(vec![v; n])
    }

    /// Top on `members`, bottom elsewhere.
    pub fn characteristic(frame: &Frame, n: usize, members: &[usize]) -> Self {
        let mut v = vec![frame.bottom(); n];
        for &m in members {
            v[m] = frame.top();
        }
        FuzzySubset(v)
    }

    #[inline]
    pub fn get(&self, x: usize) -> Elem {
        self.0[x]
    }

    pub fn set(&mut self, x: usize, v: Elem) {
        self.0[x] = v;
    }

    pub fn values(&self) -> &[Elem] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Points with a nonbottom value.
    pub fn support(&self, frame: &Frame) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.0[x] != frame.bottom()).collect()
    }

    /// Extends a fuzzy subset of `subset` (indexed like `subset`) to the
    /// whole carrier of `n` points, bottom outside.
    pub fn extend_by_bottom(&self, frame: &Frame, n: usize, subset: &[usize]) -> Self {
        let mut v = vec![frame.bottom(); n];
        for (i, &p) in subset.iter().enumerate() {
            v[p] = self.0[i];
        }
        FuzzySubset(v)
    }

    pub fn restrict(&self, subset: &[usize]) -> Self {
        FuzzySubset(subset.iter().map(|&p| self.0[p]).collect())
    }

    /// `(x->1, y->m)` with point and element names.
    pub fn describe(&self, base: &LOrderedSet) -> String {
        let f = base.frame();
        let parts: Vec<String> = base
            .points()
            .map(|x| format!("{}->{}", base.point_name(x), f.name(self.0[x])))
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// Why a fuzzy subset is not directed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectedFailure {
    /// The values do not join to top.
    JoinNotTop,
    /// The pair is not dominated by a common refiner.
    NoRefinement(usize, usize),
}

fn unique(mut it: impl Iterator<Item = usize>, what: &str) -> Option<usize> {
    let first = it.next()?;
    if let Some(second) = it.next() {
        panic!("two distinct {what}s {first} and {second}: antisymmetry of the L-order is broken");
    }
    Some(first)
}

impl LOrderedSet {
    /// `x |-> /\_y (S(y) -> e(y, x))`, the degree table row a join must have.
    pub fn join_bound(&self, s: &FuzzySubset) -> Vec<Elem> {
        self.check_subset(s);
        let f = self.frame();
        self.points()
            .map(|x| f.meet_all(self.points().map(|y| f.imp(s.get(y), self.e(y, x)))))
            .collect()
    }

    /// `x |-> /\_y (S(y) -> e(x, y))`, the degree column a meet must have.
    pub fn meet_bound(&self, s: &FuzzySubset) -> Vec<Elem> {
        self.check_subset(s);
        let f = self.frame();
        self.points()
            .map(|x| f.meet_all(self.points().map(|y| f.imp(s.get(y), self.e(x, y)))))
            .collect()
    }

    pub fn join(&self, s: &FuzzySubset) -> Option<usize> {
        let b = self.join_bound(s);
        unique(
            self.points().filter(|&c| self.points().all(|x| self.e(c, x) == b[x])),
            "join",
        )
    }

    pub fn meet(&self, s: &FuzzySubset) -> Option<usize> {
        let b = self.meet_bound(s);
        unique(
            self.points().filter(|&c| self.points().all(|x| self.e(x, c) == b[x])),
            "meet",
        )
    }

    /// The point `a` with `S(a) = top` and `S(y) <= e(y, a)` for all `y`.
    pub fn max_of(&self, s: &FuzzySubset) -> Option<usize> {
        self.check_subset(s);
        let f = self.frame();
        unique(
            self.points()
                .filter(|&a| s.get(a) == f.top() && self.points().all(|y| f.leq(s.get(y), self.e(y, a)))),
            "maximum",
        )
    }

    pub fn min_of(&self, s: &FuzzySubset) -> Option<usize> {
        self.check_subset(s);
        let f = self.frame();
        unique(
            self.points()
                .filter(|&a| s.get(a) == f.top() && self.points().all(|y| f.leq(s.get(y), self.e(a, y)))),
            "minimum",
        )
    }

    pub fn directed_violation(&self, d: &FuzzySubset) -> Option<DirectedFailure> {
        self.check_subset(d);
        let f = self.frame();
        if f.join_all(d.values().iter().copied()) != f.top() {
            return Some(DirectedFailure::JoinNotTop);
        }
        for x in self.points() {
            for y in x..self.len() {
                let lhs = f.meet(d.get(x), d.get(y));
                if lhs == f.bottom() {
                    continue;
                }
                let rhs = f.join_all(
                    self.points()
                        .map(|z| f.meet(d.get(z), f.meet(self.e(x, z), self.e(y, z)))),
                );
                if !f.leq(lhs, rhs) {
                    return Some(DirectedFailure::NoRefinement(x, y));
                }
            }
        }
        None
    }

    pub fn is_directed(&self, d: &FuzzySubset) -> Result<(), DirectedFailure> {
        match self.directed_violation(d) {
            None => Ok(()),
            Some(w) => Err(w),
        }
    }

    /// `b` in `subset` with `e(b, x) = /\_{y in subset} (S(y) -> e(y, x))`
    /// for every `x` in `subset`.
    pub fn join_in_subset(&self, s: &FuzzySubset, subset: &[usize]) -> Option<usize> {
        self.check_subset(s);
        let f = self.frame();
        let bound: Vec<Elem> = subset
            .iter()
            .map(|&x| f.meet_all(subset.iter().map(|&y| f.imp(s.get(y), self.e(y, x)))))
            .collect();
        unique(
            subset
                .iter()
                .copied()
                .filter(|&b| subset.iter().zip(&bound).all(|(&x, &v)| self.e(b, x) == v)),
            "join in subset",
        )
    }

    pub fn meet_in_subset(&self, s: &FuzzySubset, subset: &[usize]) -> Option<usize> {
        self.check_subset(s);
        let f = self.frame();
        let bound: Vec<Elem> = subset
            .iter()
            .map(|&x| f.meet_all(subset.iter().map(|&y| f.imp(s.get(y), self.e(x, y)))))
            .collect();
        unique(
            subset
                .iter()
                .copied()
                .filter(|&b| subset.iter().zip(&bound).all(|(&x, &v)| self.e(x, b) == v)),
            "meet in subset",
        )
    }

    /// The point `b` of `subset` seeing `subset` exactly as `a` does:
    /// `e(a, x) = e(b, x)` for every `x` in `subset`.
    pub fn strong_cover(&self, a: usize, subset: &[usize]) -> Option<usize> {
        unique(
            subset
                .iter()
                .copied()
                .filter(|&b| subset.iter().all(|&x| self.e(a, x) == self.e(b, x))),
            "strong cover",
        )
    }

    /// `S(x) <= S(f(x))` for all `x`; on failure returns the offending `x`.
    pub fn is_f_invariant(&self, s: &FuzzySubset, f: &LMap) -> Result<(), usize> {
        self.check_subset(s);
        assert!(f.is_endo_on(self), "map is not an endomap of this L-ordered set");
        let l = self.frame();
        match self.points().find(|&x| !l.leq(s.get(x), s.get(f.apply(x)))) {
            None => Ok(()),
            Some(x) => Err(x),
        }
    }

    /// True when every fuzzy subset has a join and a meet, decided by
    /// scanning all `|L|^|P|` of them; `None` when that exceeds `bound`.
    pub fn is_l_complete(&self, bound: usize) -> Option<bool> {
        let total = count_subsets(self.frame().len(), self.len())?;
        if total > bound {
            return None;
        }
        Some(all_fuzzy_subsets(self.frame(), self.len()).all(|s| self.join(&s).is_some() && self.meet(&s).is_some()))
    }
}

/// `|L|^n`, or `None` on overflow.
pub fn count_subsets(frame_size: usize, n: usize) -> Option<usize> {
    let mut total = 1usize;
    for _ in 0..n {
        total = total.checked_mul(frame_size)?;
    }
    Some(total)
}

/// Every fuzzy subset of an `n`-point carrier, in lexicographic order of
/// element indices (first point most significant).
pub fn all_fuzzy_subsets(frame: &Frame, n: usize) -> impl Iterator<Item = FuzzySubset> + '_ {
    let k = frame.len();
    let mut digits = vec![0usize; n];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = FuzzySubset(digits.iter().map(|&d| frame.elem(d)).collect());
        // odometer step, last digit fastest
        let mut i = n;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
        }
        Some(out)
    })
}

/// The fuzzy image `f(A)(y) = \/{A(x) : f(x) = y}` over `f`'s codomain.
pub fn image(f: &LMap, a: &FuzzySubset) -> FuzzySubset {
    f.domain().check_subset(a);
    let l = f.codomain().frame();
    let mut v = vec![l.bottom(); f.codomain().len()];
    for x in f.domain().points() {
        let y = f.apply(x);
        v[y] = l.join(v[y], a.get(x));
    }
    FuzzySubset(v)
}

/// The L-ordered set of all maps `X -> L` with
/// `e(f, g) = /\_x (f(x) -> g(x))`.
#[derive(Clone, Debug)]
pub struct FunctionSpace {
    lorder: Arc<LOrderedSet>,
    functions: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, usize>,
}

impl FunctionSpace {
    pub fn lorder(&self) -> &Arc<LOrderedSet> {
        &self.lorder
    }

    pub fn function(&self, i: usize) -> &[Elem] {
        &self.functions[i]
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn domain_size(&self) -> usize {
        self.functions.first().map_or(0, Vec::len)
    }

    pub fn index_of(&self, values: &[Elem]) -> Option<usize> {
        self.index.get(values).copied()
    }

    /// `(\/S)(x) = \/_f S(f) /\ f(x)`, computed pointwise.
    pub fn pointwise_join(&self, s: &FuzzySubset) -> usize {
        let l = self.lorder.frame();
        let v: Vec<Elem> = (0..self.domain_size())
            .map(|x| l.join_all((0..self.len()).map(|f| l.meet(s.get(f), self.functions[f][x]))))
            .collect();
        self.index[&v]
    }

    /// `(/\S)(x) = /\_f (S(f) -> f(x))`, computed pointwise.
    pub fn pointwise_meet(&self, s: &FuzzySubset) -> usize {
        let l = self.lorder.frame();
        let v: Vec<Elem> = (0..self.domain_size())
            .map(|x| l.meet_all((0..self.len()).map(|f| l.imp(s.get(f), self.functions[f][x]))))
            .collect();
        self.index[&v]
    }
}

/// Builds `L^X` for an `x_size`-point set `X`.
pub fn function_space(x_size: usize, frame: Arc<Frame>, bound: usize) -> Result<FunctionSpace, FuzzyError> {
    let size = count_subsets(frame.len(), x_size).unwrap_or(usize::MAX);
    if size > bound {
        return Err(FuzzyError::BoundExceeded { size, bound });
    }
    let functions: Vec<Vec<Elem>> = all_fuzzy_subsets(&frame, x_size).map(|s| s.0).collect();
    let names = functions
        .iter()
        .map(|f| {
            let v: Vec<&str> = f.iter().map(|&e| frame.name(e)).collect();
            format!("[{}]", v.join(","))
        })
        .collect();
    let lorder = LOrderedSet::from_fn(frame.clone(), names, |a, b| {
        frame.meet_all((0..x_size).map(|x| frame.imp(functions[a][x], functions[b][x])))
    })?;
    let index = functions.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    Ok(FunctionSpace {
        lorder: Arc::new(lorder),
        functions,
        index,
    })
}

fn name_opt(x: &LOrderedSet, p: Option<usize>) -> String {
    p.map_or_else(|| "none".to_string(), |p| x.point_name(p).to_string())
}

/// Points of full membership lie below the join (and above the meet) in
/// the crisp order.
pub fn check_full_members_bounded(x: &LOrderedSet, s: &FuzzySubset) -> Verdict {
    let top = x.frame().top();
    let mut cases = 0;
    if let Some(a) = x.join(s) {
        for u in x.points().filter(|&u| s.get(u) == top) {
            cases += 1;
            if !x.leq_e(u, a) {
                return Verdict::Fail(Failure::new(
                    "full-member-below-join",
                    format!("S={}, u={}, join={}", s.describe(x), x.point_name(u), x.point_name(a)),
                ));
            }
        }
    }
    if let Some(a) = x.meet(s) {
        for u in x.points().filter(|&u| s.get(u) == top) {
            cases += 1;
            if !x.leq_e(a, u) {
                return Verdict::Fail(Failure::new(
                    "full-member-above-meet",
                    format!("S={}, u={}, meet={}", s.describe(x), x.point_name(u), x.point_name(a)),
                ));
            }
        }
    }
    Verdict::pass(cases)
}

/// When the join exists, the maximum exists exactly when the join has full
/// membership, and then they coincide; dually for minimum and meet.
pub fn check_max_join_agreement(x: &LOrderedSet, s: &FuzzySubset) -> Verdict {
    let top = x.frame().top();
    let mut cases = 0;
    if let Some(a) = x.join(s) {
        cases += 1;
        let expected = (s.get(a) == top).then_some(a);
        let got = x.max_of(s);
        if got != expected {
            return Verdict::Fail(
                Failure::new("max-equals-full-join", format!("S={}", s.describe(x)))
                    .with_sides(name_opt(x, got), name_opt(x, expected)),
            );
        }
    }
    if let Some(a) = x.meet(s) {
        cases += 1;
        let expected = (s.get(a) == top).then_some(a);
        let got = x.min_of(s);
        if got != expected {
            return Verdict::Fail(
                Failure::new("min-equals-full-meet", format!("S={}", s.describe(x)))
                    .with_sides(name_opt(x, got), name_opt(x, expected)),
            );
        }
    }
    Verdict::pass(cases)
}

/// Relations between the global join `a` of `S` and joins inside `subset`:
/// a join `b` in the subset lies above `a`; when the support of `S` is in
/// the subset, `b` sees the subset as `a` does, and `b` exists exactly when
/// `a` has a strong cover there, the two coinciding. Meets dually for the
/// first relation.
pub fn check_subset_joins(x: &LOrderedSet, s: &FuzzySubset, subset: &[usize]) -> Verdict {
    let f = x.frame();
    let mut cases = 0;
    let w = || {
        let pts: Vec<&str> = subset.iter().map(|&p| x.point_name(p)).collect();
        format!("S={}, X={{{}}}", s.describe(x), pts.join(","))
    };
    let a = x.join(s);
    let b = x.join_in_subset(s, subset);
    // e(a,x) <= e(b,x) on X; a <=_e b itself needs Supp(S) inside X
    if let (Some(a), Some(b)) = (a, b) {
        cases += 1;
        if let Some(&p) = subset.iter().find(|&&p| !f.leq(x.e(a, p), x.e(b, p))) {
            return Verdict::Fail(
                Failure::new("subset-join-dominates-on-subset", w())
                    .with_sides(format!("e({},{})", x.point_name(a), x.point_name(p)), format!("e({},{})", x.point_name(b), x.point_name(p))),
            );
        }
    }
    if let (Some(a), Some(b)) = (x.meet(s), x.meet_in_subset(s, subset)) {
        cases += 1;
        if let Some(&p) = subset.iter().find(|&&p| !f.leq(x.e(p, a), x.e(p, b))) {
            return Verdict::Fail(
                Failure::new("subset-meet-dominates-on-subset", w())
                    .with_sides(format!("e({},{})", x.point_name(p), x.point_name(a)), format!("e({},{})", x.point_name(p), x.point_name(b))),
            );
        }
    }
    let supported = s.support(f).iter().all(|p| subset.contains(p));
    if let (true, Some(a)) = (supported, a) {
        if let Some(b) = b {
            cases += 1;
            if subset.iter().any(|&p| x.e(a, p) != x.e(b, p)) {
                return Verdict::Fail(Failure::new("supported-subset-join-agrees", w()));
            }
            if !x.leq_e(a, b) {
                return Verdict::Fail(Failure::new("supported-join-below-subset-join", w()));
            }
        }
        cases += 1;
        let cover = x.strong_cover(a, subset);
        if cover != b {
            return Verdict::Fail(
                Failure::new("strong-cover-is-subset-join", w()).with_sides(name_opt(x, cover), name_opt(x, b)),
            );
        }
    }
    Verdict::pass(cases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorder::{fz2, CrispPoset};

    fn c3() -> LOrderedSet {
        LOrderedSet::from_crisp_poset(&CrispPoset::chain(3), Arc::new(Frame::chain(2).unwrap()))
    }

    #[test]
    fn principal_joins() {
        for x in [c3(), fz2()] {
            for a in x.points() {
                assert_eq!(x.join(&x.down_point(a)), Some(a));
                assert_eq!(x.meet(&x.up_point(a)), Some(a));
                assert_eq!(x.max_of(&x.down_point(a)), Some(a));
                assert_eq!(x.min_of(&x.up_point(a)), Some(a));
            }
        }
    }

    #[test]
    fn join_on_c3() {
        let x = c3();
        let l = x.frame().clone();
        let s = FuzzySubset::new(vec![l.top(), l.top(), l.bottom()]);
        assert_eq!(x.join(&s), Some(1));
    }

    #[test]
    fn fz2_directed_without_join() {
        let x = fz2();
        let l = x.frame().clone();
        let m = l.element("m").unwrap();
        let d = FuzzySubset::new(vec![l.top(), m]);
        assert_eq!(x.is_directed(&d), Ok(()));
        assert_eq!(x.join(&d), None);
        // bound row is (0, m); no row of e equals it
        assert_eq!(x.join_bound(&d), vec![l.bottom(), m]);
    }

    #[test]
    fn empty_subset() {
        let x = c3();
        let l = x.frame().clone();
        let zero = FuzzySubset::constant(3, l.bottom());
        assert_eq!(x.max_of(&zero), None);
        assert_eq!(x.join(&zero), Some(0));
        assert_eq!(x.meet(&zero), Some(2));
        assert_eq!(x.is_directed(&zero), Err(DirectedFailure::JoinNotTop));
    }

    #[test]
    fn directedness() {
        let x = c3();
        let l = x.frame().clone();
        for p in x.points() {
            let chi = FuzzySubset::characteristic(&l, 3, &[p]);
            assert_eq!(x.is_directed(&chi), Ok(()));
        }
        let anti = LOrderedSet::from_crisp_poset(&CrispPoset::antichain(2), l.clone());
        let both = FuzzySubset::characteristic(&l, 2, &[0, 1]);
        assert_eq!(anti.is_directed(&both), Err(DirectedFailure::NoRefinement(0, 1)));
    }

    #[test]
    fn images() {
        let x = Arc::new(c3());
        let l = x.frame().clone();
        let a = FuzzySubset::characteristic(&l, 3, &[0, 2]);
        let id = LMap::identity(x.clone());
        assert_eq!(image(&id, &a), a);
        let f = LMap::new(x.clone(), x.clone(), vec![1, 1, 2]).unwrap();
        assert_eq!(image(&f, &a), FuzzySubset::characteristic(&l, 3, &[1, 2]));
        let c = LMap::constant(x.clone(), x.clone(), 2);
        let m = FuzzySubset::new(vec![l.bottom(), l.top(), l.bottom()]);
        assert_eq!(image(&c, &m), FuzzySubset::characteristic(&l, 3, &[2]));
    }

    #[test]
    fn function_spaces() {
        let l3 = Arc::new(Frame::chain(3).unwrap());
        let fs = function_space(1, l3.clone(), FUNCTION_SPACE_BOUND).unwrap();
        assert_eq!(fs.len(), 3);
        for a in fs.lorder().points() {
            for b in fs.lorder().points() {
                assert_eq!(fs.lorder().e(a, b), l3.imp(fs.function(a)[0], fs.function(b)[0]));
            }
        }
        let l2 = Arc::new(Frame::chain(2).unwrap());
        let fs2 = function_space(2, l2, FUNCTION_SPACE_BOUND).unwrap();
        assert_eq!(fs2.len(), 4);
        assert_eq!(fs2.lorder().is_l_complete(4096), Some(true));
        for s in all_fuzzy_subsets(fs2.lorder().frame(), 4) {
            assert_eq!(fs2.lorder().join(&s), Some(fs2.pointwise_join(&s)));
            assert_eq!(fs2.lorder().meet(&s), Some(fs2.pointwise_meet(&s)));
        }
        assert!(matches!(
            function_space(6, l3, FUNCTION_SPACE_BOUND),
            Err(FuzzyError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn strong_covers() {
        let x = c3();
        assert_eq!(x.strong_cover(0, &[1, 2]), Some(1));
        assert_eq!(x.strong_cover(2, &[0, 2]), Some(2));
        let z = fz2();
        assert_eq!(z.strong_cover(0, &[1]), None);
    }

    #[test]
    fn join_in_full_subset_is_join() {
        let x = fz2();
        for s in all_fuzzy_subsets(x.frame(), 2) {
            assert_eq!(x.join_in_subset(&s, &[0, 1]), x.join(&s));
            assert_eq!(x.meet_in_subset(&s, &[0, 1]), x.meet(&s));
        }
    }

    #[test]
    fn invariance() {
        let x = Arc::new(c3());
        let l = x.frame().clone();
        let f = LMap::new(x.clone(), x.clone(), vec![1, 1, 2]).unwrap();
        let s = FuzzySubset::characteristic(&l, 3, &[0]);
        assert_eq!(x.is_f_invariant(&s, &f), Err(0));
        assert_eq!(x.is_f_invariant(&x.down_point(1), &f), Ok(()));
        assert_eq!(x.is_f_invariant(&x.up_point(2), &f), Ok(()));
    }

    #[test]
    fn subset_enumeration_order() {
        let l = Frame::chain(2).unwrap();
        let all: Vec<_> = all_fuzzy_subsets(&l, 2).map(|s| s.values().iter().map(|e| e.index()).collect::<Vec<_>>()).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(all_fuzzy_subsets(&l, 0).count(), 1);
    }

    #[test]
    fn subset_join_can_lie_below_join() {
        let x = LOrderedSet::from_crisp_poset(&CrispPoset::chain(2), Arc::new(Frame::chain(2).unwrap()));
        let s = FuzzySubset::characteristic(x.frame(), 2, &[1]);
        assert_eq!(x.join(&s), Some(1));
        assert_eq!(x.join_in_subset(&s, &[0]), Some(0));
        assert!(!x.leq_e(1, 0));
        assert!(check_subset_joins(&x, &s, &[0]).is_pass());
    }
}
