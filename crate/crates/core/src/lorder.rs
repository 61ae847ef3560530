//! L-ordered sets and crisp posets.
//!
//! An L-ordered set is a finite carrier with a degree table `e(x, y)` in a
//! frame, read as "the degree to which x is below y". Construction always
//! validates reflexivity, the composition law and antisymmetry, so no
//! unvalidated table reaches the rest of the crate.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::frame::{check_partial_order, check_unique, reflexive_transitive_closure, Elem, Frame, FrameError};
use crate::fuzzy::FuzzySubset;
use crate::report::{Failure, Verdict};

/// Default bound on the carrier of hand-built L-ordered sets.
pub const MAX_POINTS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LOrderError {
    #[error("degree table has {got} entries, expected {expected}")]
    WrongSize { got: usize, expected: usize },
    #[error("degree value does not belong to the declared frame")]
    ForeignElement,
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("{0}")]
    Axiom(Failure),
}

/// A classical finite poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrispPoset {
    names: Vec<String>,
    leq: Vec<bool>,
}

impl CrispPoset {
    pub fn new(names: Vec<String>, leq: Vec<bool>) -> Result<Self, LOrderError> {
        let n = names.len();
        if leq.len() != n * n {
            return Err(LOrderError::WrongSize {
                got: leq.len(),
                expected: n * n,
            });
        }
        check_unique(&names)?;
        check_partial_order(n, |a, b| leq[a * n + b]).map_err(|(law, w)| {
            let pts: Vec<&str> = w.iter().map(|&i| names[i].as_str()).collect();
            LOrderError::NotPartialOrder(format!("{law} fails at {}", pts.join(", ")))
        })?;
        Ok(CrispPoset { names, leq })
    }

    /// Reflexive-transitive closure of the given pairs.
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, LOrderError> {
        let leq = reflexive_transitive_closure(names.len(), pairs);
        Self::new(names, leq)
    }

    /// `p0 < p1 < ... < p(n-1)`.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| format!("p{i}")).collect();
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_pairs(names, &pairs).expect("a chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        const LETTERS: [&str; 6] = ["u", "v", "w", "x", "y", "z"];
        let names = (0..n)
            .map(|i| LETTERS.get(i).map_or_else(|| format!("a{i}"), |s| s.to_string()))
            .collect();
        Self::from_pairs(names, &[]).expect("an antichain is a poset")
    }

    /// Adds a new greatest element named `name`.
    pub fn with_top(&self, name: &str) -> Self {
        let n = self.len();
        let mut names = self.names.clone();
        names.push(name.to_string());
        let mut pairs = self.pairs();
        pairs.extend((0..n).map(|i| (i, n)));
        Self::from_pairs(names, &pairs).expect("adding a top keeps a poset")
    }

    /// Adds a new least element named `name`, placed first.
    pub fn with_bottom(&self, name: &str) -> Self {
        let n = self.len();
        let mut names = vec![name.to_string()];
        names.extend(self.names.iter().cloned());
        let mut pairs: Vec<_> = self.pairs().into_iter().map(|(a, b)| (a + 1, b + 1)).collect();
        pairs.extend((1..=n).map(|i| (0, i)));
        Self::from_pairs(names, &pairs).expect("adding a bottom keeps a poset")
    }

    /// The four-element "N": `a < c`, `b < c`, `b < d`.
    pub fn n_shape() -> Self {
        let names = ["a", "b", "c", "d"].map(String::from).to_vec();
        Self::from_pairs(names, &[(0, 2), (1, 2), (1, 3)]).expect("N is a poset")
    }

    /// Bottom, two incomparable atoms, top.
    pub fn diamond() -> Self {
        Self::antichain(2).with_top("t").with_bottom("b")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    /// All strict pairs `a < b`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn has_bottom(&self) -> bool {
        (0..self.len()).any(|b| (0..self.len()).all(|x| self.leq(b, x)))
    }
}

/// A finite set with an L-valued order.
#[derive(Clone, Debug)]
pub struct LOrderedSet {
    frame: Arc<Frame>,
    points: Vec<String>,
    e: Vec<Elem>,
}

impl PartialEq for LOrderedSet {
    fn eq(&self, other: &Self) -> bool {
        self.frame == other.frame && self.points == other.points && self.e == other.e
    }
}

impl Eq for LOrderedSet {}

impl LOrderedSet {
    /// Validates the row-major degree table `e[x * n + y]`.
    pub fn new(frame: Arc<Frame>, points: Vec<String>, e: Vec<Elem>) -> Result<Self, LOrderError> {
        let n = points.len();
        if e.len() != n * n {
            return Err(LOrderError::WrongSize {
                got: e.len(),
                expected: n * n,
            });
        }
        if e.iter().any(|&v| !frame.owns(v)) {
            return Err(LOrderError::ForeignElement);
        }
        check_unique(&points)?;
        if let Verdict::Fail(f) = validate_table(&frame, &points, &e) {
            return Err(LOrderError::Axiom(f));
        }
        Ok(LOrderedSet { frame, points, e })
    }

    pub fn from_fn(
        frame: Arc<Frame>,
        points: Vec<String>,
        degree: impl Fn(usize, usize) -> Elem,
    ) -> Result<Self, LOrderError> {
        let n = points.len();
        let e = (0..n * n).map(|k| degree(k / n, k % n)).collect();
        Self::new(frame, points, e)
    }

    /// The characteristic L-order of a crisp poset: top where `x <= y`,
    /// bottom elsewhere.
    pub fn from_crisp_poset(q: &CrispPoset, frame: Arc<Frame>) -> Self {
        let (top, bot) = (frame.top(), frame.bottom());
        Self::from_fn(frame, q.names().to_vec(), |x, y| if q.leq(x, y) { top } else { bot })
            .expect("characteristic order of a poset is an L-order")
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.points.len()
    }

    pub fn point_names(&self) -> &[String] {
        &self.points
    }

    pub fn point_name(&self, x: usize) -> &str {
        &self.points[x]
    }

    pub fn point(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }

    /// Degree to which `x` is below `y`.
    #[inline]
    pub fn e(&self, x: usize, y: usize) -> Elem {
        self.e[x * self.points.len() + y]
    }

    pub fn table(&self) -> &[Elem] {
        &self.e
    }

    /// The crisp order: `e(x, y) = top`.
    #[inline]
    pub fn leq_e(&self, x: usize, y: usize) -> bool {
        self.e(x, y) == self.frame.top()
    }

    pub fn crisp_order(&self) -> CrispPoset {
        let n = self.len();
        let leq = (0..n * n).map(|k| self.leq_e(k / n, k % n)).collect();
        CrispPoset::new(self.points.clone(), leq).expect("the crisp part of an L-order is a poset")
    }

    /// True when every degree is bottom or top.
    pub fn is_crisp(&self) -> bool {
        self.e.iter().all(|&v| v == self.frame.top() || v == self.frame.bottom())
    }

    /// A point below everything to degree top.
    pub fn zero(&self) -> Option<usize> {
        self.points().find(|&z| self.points().all(|x| self.leq_e(z, x)))
    }

    /// The sub-L-ordered set on `subset`, in the given order.
    pub fn restrict(&self, subset: &[usize]) -> LOrderedSet {
        let points = subset.iter().map(|&i| self.points[i].clone()).collect();
        LOrderedSet::from_fn(self.frame.clone(), points, |a, b| self.e(subset[a], subset[b]))
            .expect("a restriction of an L-order is an L-order")
    }

    /// `x |-> e(x, a)`.
    pub fn down_point(&self, a: usize) -> FuzzySubset {
        FuzzySubset::new(self.points().map(|x| self.e(x, a)).collect())
    }

    /// `x |-> e(a, x)`.
    pub fn up_point(&self, a: usize) -> FuzzySubset {
        FuzzySubset::new(self.points().map(|x| self.e(a, x)).collect())
    }

    /// `x |-> \/_{x'} phi(x') /\ e(x, x')`.
    pub fn down_phi(&self, phi: &FuzzySubset) -> FuzzySubset {
        self.check_subset(phi);
        let f = &self.frame;
        FuzzySubset::new(
            self.points()
                .map(|x| f.join_all(self.points().map(|y| f.meet(phi.get(y), self.e(x, y)))))
                .collect(),
        )
    }

    /// `x |-> \/_{x'} phi(x') /\ e(x', x)`.
    pub fn up_phi(&self, phi: &FuzzySubset) -> FuzzySubset {
        self.check_subset(phi);
        let f = &self.frame;
        FuzzySubset::new(
            self.points()
                .map(|x| f.join_all(self.points().map(|y| f.meet(phi.get(y), self.e(y, x)))))
                .collect(),
        )
    }

    pub(crate) fn check_subset(&self, s: &FuzzySubset) {
        assert_eq!(s.len(), self.len(), "fuzzy subset over a different carrier");
    }

    /// Both residuum characterizations of the degree table:
    /// `e(x,y) = /\_z (e(z,x) -> e(z,y)) = /\_z (e(y,z) -> e(x,z))`.
    pub fn check_degree_identity(&self) -> Verdict {
        let f = &self.frame;
        let mut cases = 0;
        for x in self.points() {
            for y in self.points() {
                cases += 2;
                let from_below = f.meet_all(self.points().map(|z| f.imp(self.e(z, x), self.e(z, y))));
                let from_above = f.meet_all(self.points().map(|z| f.imp(self.e(y, z), self.e(x, z))));
                let exy = self.e(x, y);
                for (law, got) in [("degree-from-below", from_below), ("degree-from-above", from_above)] {
                    if got != exy {
                        return Verdict::Fail(
                            Failure::new(law, format!("x={}, y={}", self.points[x], self.points[y]))
                                .with_sides(f.name(exy), f.name(got)),
                        );
                    }
                }
            }
        }
        Verdict::pass(cases)
    }

    pub fn describe(&self) -> String {
        let f = &self.frame;
        let mut s = String::new();
        for x in self.points() {
            let row: Vec<&str> = self.points().map(|y| f.name(self.e(x, y))).collect();
            s.push_str(&format!("{}: {}\n", self.points[x], row.join(" ")));
        }
        s
    }
}

impl fmt::Display for LOrderedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L-ordered set on {{{}}}", self.points.join(", "))
    }
}

/// Checks reflexivity, the composition law `e(x,y) /\ e(y,z) <= e(x,z)`,
/// and antisymmetry on a row-major degree table.
pub fn validate_table(frame: &Frame, points: &[String], e: &[Elem]) -> Verdict {
    let n = points.len();
    if e.len() != n * n {
        return Verdict::Fail(Failure::new("table-size", format!("{} entries for {n} points", e.len())));
    }
    if e.iter().any(|&v| !frame.owns(v)) {
        return Verdict::Fail(Failure::new("membership", "degree value from another frame"));
    }
    let at = |x: usize, y: usize| e[x * n + y];
    let top = frame.top();
    let mut cases = 0;
    for (x, px) in points.iter().enumerate() {
        cases += 1;
        if at(x, x) != top {
            return Verdict::Fail(
                Failure::new("reflexivity", format!("x={px}")).with_sides(frame.name(at(x, x)), frame.name(top)),
            );
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = at(x, y);
            for z in 0..n {
                cases += 1;
                let lhs = frame.meet(xy, at(y, z));
                if !frame.leq(lhs, at(x, z)) {
                    return Verdict::Fail(
                        Failure::new("composition", format!("x={}, y={}, z={}", points[x], points[y], points[z]))
                            .with_sides(frame.name(lhs), frame.name(at(x, z))),
                    );
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            cases += 1;
            if x != y && at(x, y) == top && at(y, x) == top {
                return Verdict::Fail(Failure::new("antisymmetry", format!("x={}, y={}", points[x], points[y])));
            }
        }
    }
    Verdict::pass(cases)
}

/// Validates a candidate L-order; the spelled-out entry point for tables
/// that have not been wrapped in an [`LOrderedSet`].
pub fn validate_lorder(frame: &Frame, points: &[String], e: &[Elem]) -> Verdict {
    validate_table(frame, points, e)
}

/// The two-point fuzzy order over the three-element chain: `e(x,y) = m`,
/// `e(y,x) = 0`. Its directed subset `(x |-> 1, y |-> m)` has no join.
pub fn fz2() -> LOrderedSet {
    let frame = Arc::new(Frame::chain(3).expect("chain(3)"));
    fz2_over(frame)
}

pub fn fz2_over(frame: Arc<Frame>) -> LOrderedSet {
    let m = frame.element("m").expect("chain(3) has m");
    let (top, bot) = (frame.top(), frame.bottom());
    let e = vec![top, m, bot, top];
    LOrderedSet::new(frame, vec!["x".into(), "y".into()], e).expect("FZ2 is an L-order")
}
