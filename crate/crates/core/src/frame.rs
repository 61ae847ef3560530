//! Finite frames.
//!
//! A finite lattice is complete, so a finite frame is exactly a finite
//! distributive lattice. [`Lattice`] is an arbitrary finite lattice built from
//! an order relation; [`Frame`] is a lattice that passed [`validate`] and
//! carries a precomputed residuum table.

use std::fmt;
use std::ops::Deref;
use std::sync::atomic::{AtomicU32, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lorder::CrispPoset;
use crate::report::{Failure, Verdict};

/// Largest carrier a lattice may have.
pub const MAX_FRAME_SIZE: usize = 64;
/// Default bound on the number of atoms accepted by [`Frame::powerset`].
pub const MAX_POWERSET_ATOMS: usize = 4;

static NEXT_FRAME_ID: AtomicU32 = AtomicU32::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrameId(u32);

impl FrameId {
    fn fresh() -> Self {
        FrameId(NEXT_FRAME_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// An element of one particular lattice.
///
/// Elements remember which lattice they came from; passing one to another
/// lattice's operations panics, and [`Frame::residuum`] reports it as an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Elem {
    frame: FrameId,
    index: u16,
}

impl Elem {
    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn frame(self) -> FrameId {
        self.frame
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("{size} elements exceed the bound of {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("`{a}` and `{b}` have no {which}")]
    NotLattice {
        a: String,
        b: String,
        which: &'static str,
    },
    #[error("element does not belong to this frame")]
    ForeignElement,
    #[error("{0}")]
    Law(Failure),
}

/// A finite lattice given by its order; meets and joins are tabulated.
#[derive(Clone, Debug)]
pub struct Lattice {
    id: FrameId,
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<u16>,
    join: Vec<u16>,
    bottom: u16,
    top: u16,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Lattice {}

impl Lattice {
    /// Builds a lattice from a full order table (`leq[a * n + b]` iff `a <= b`).
    pub fn from_order(names: Vec<String>, leq: Vec<bool>) -> Result<Self, FrameError> {
        let n = names.len();
        if n == 0 {
            return Err(FrameError::Empty);
        }
        if n > MAX_FRAME_SIZE {
            return Err(FrameError::TooLarge {
                size: n,
                bound: MAX_FRAME_SIZE,
            });
        }
        assert_eq!(leq.len(), n * n, "order table has the wrong size");
        check_unique(&names)?;
        check_partial_order(n, |a, b| leq[a * n + b])
            .map_err(|(law, w)| FrameError::NotPartialOrder(format!("{law} fails at {}", name_list(&names, &w))))?;

        let bound = |pick_lower: bool| -> Result<Vec<u16>, FrameError> {
            let mut table = vec![0u16; n * n];
            for a in 0..n {
                for b in 0..n {
                    // Candidates are the common lower (upper) bounds; the
                    // answer is the one above (below) all of them.
                    let rel = |x: usize, y: usize| if pick_lower { leq[x * n + y] } else { leq[y * n + x] };
                    let cands: Vec<usize> = (0..n).filter(|&c| rel(c, a) && rel(c, b)).collect();
                    let best = cands.iter().copied().find(|&c| cands.iter().all(|&d| rel(d, c)));
                    match best {
                        Some(c) => table[a * n + b] = c as u16,
                        None => {
                            return Err(FrameError::NotLattice {
                                a: names[a].clone(),
                                b: names[b].clone(),
                                which: if pick_lower { "meet" } else { "join" },
                            })
                        }
                    }
                }
            }
            Ok(table)
        };
        let meet = bound(true)?;
        let join = bound(false)?;
        let bottom = (0..n).find(|&b| (0..n).all(|x| leq[b * n + x]));
        let top = (0..n).find(|&t| (0..n).all(|x| leq[x * n + t]));
        // A finite nonempty lattice always has both bounds.
        let (bottom, top) = (bottom.expect("finite lattice has a bottom"), top.expect("finite lattice has a top"));
        Ok(Lattice {
            id: FrameId::fresh(),
            names,
            leq,
            meet,
            join,
            bottom: bottom as u16,
            top: top as u16,
        })
    }

    /// Builds a lattice from generating pairs `a <= b`, taking the
    /// reflexive-transitive closure.
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, FrameError> {
        let n = names.len();
        if n > MAX_FRAME_SIZE {
            return Err(FrameError::TooLarge {
                size: n,
                bound: MAX_FRAME_SIZE,
            });
        }
        let leq = reflexive_transitive_closure(n, pairs);
        Self::from_order(names, leq)
    }

    pub fn id(&self) -> FrameId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elem(&self, index: usize) -> Elem {
        assert!(index < self.len(), "element index {index} out of range");
        Elem {
            frame: self.id,
            index: index as u16,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.len()).map(move |i| self.elem(i))
    }

    pub fn element(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name).map(|i| self.elem(i))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[self.own(e)]
    }

    pub fn owns(&self, e: Elem) -> bool {
        e.frame == self.id && e.index() < self.len()
    }

    #[inline]
    fn own(&self, e: Elem) -> usize {
        assert!(e.frame == self.id, "element from a different frame");
        e.index()
    }

    pub fn bottom(&self) -> Elem {
        self.elem(self.bottom as usize)
    }

    pub fn top(&self) -> Elem {
        self.elem(self.top as usize)
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[self.own(a) * self.len() + self.own(b)]
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        let i = self.meet[self.own(a) * self.len() + self.own(b)];
        Elem { frame: self.id, index: i }
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        let i = self.join[self.own(a) * self.len() + self.own(b)];
        Elem { frame: self.id, index: i }
    }

    /// Meet of any finite family; the empty meet is top.
    pub fn meet_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Join of any finite family; the empty join is bottom.
    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    /// `a -> b` as the join of all `x` with `a /\ x <= b`. Only a true
    /// residuum when the lattice is distributive.
    pub fn candidate_residuum(&self, a: Elem, b: Elem) -> Elem {
        self.join_all(self.elements().filter(|&x| self.leq(self.meet(a, x), b)))
    }

    /// Pairs `(a, b)` with `b` covering `a`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.leq[a * n + b];
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// A validated finite frame with its residuum table.
#[derive(Clone, Debug)]
pub struct Frame {
    lattice: Lattice,
    imp: Vec<u16>,
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice
    }
}

impl Eq for Frame {}

impl Deref for Frame {
    type Target = Lattice;

    fn deref(&self) -> &Lattice {
        &self.lattice
    }
}

impl Frame {
    /// Accepts a lattice that passes [`validate`].
    pub fn new(lattice: Lattice) -> Result<Self, FrameError> {
        if let Verdict::Fail(f) = validate(&lattice) {
            return Err(FrameError::Law(f));
        }
        let imp = tabulate_residuum(&lattice);
        Ok(Frame { lattice, imp })
    }

    pub fn from_order(names: Vec<String>, leq: Vec<bool>) -> Result<Self, FrameError> {
        Frame::new(Lattice::from_order(names, leq)?)
    }

    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, FrameError> {
        Frame::new(Lattice::from_pairs(names, pairs)?)
    }

    /// Linear order `0 < ... < 1` of `n` elements.
    pub fn chain(n: usize) -> Result<Self, FrameError> {
        if n == 0 {
            return Err(FrameError::Empty);
        }
        let names = chain_names(n);
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Frame::from_pairs(names, &pairs)
    }

    /// Boolean lattice of all subsets of an `n`-set.
    pub fn powerset(n: usize) -> Result<Self, FrameError> {
        if n > MAX_POWERSET_ATOMS {
            return Err(FrameError::TooLarge {
                size: 1 << n.min(31),
                bound: 1 << MAX_POWERSET_ATOMS,
            });
        }
        let size = 1usize << n;
        let names = (0..size)
            .map(|m| {
                let atoms: Vec<String> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| i.to_string()).collect();
                format!("{{{}}}", atoms.join(","))
            })
            .collect();
        let leq = (0..size * size).map(|k| (k / size) & !(k % size) == 0).collect();
        Frame::from_order(names, leq)
    }

    /// Down-closed subsets of a finite poset under inclusion.
    pub fn downsets(poset: &CrispPoset) -> Result<Self, FrameError> {
        let p = poset.len();
        if p >= 16 {
            return Err(FrameError::TooLarge {
                size: 1 << p.min(31),
                bound: MAX_FRAME_SIZE,
            });
        }
        let downsets: Vec<u32> = (0u32..1 << p)
            .filter(|&m| {
                (0..p).all(|y| m >> y & 1 == 0 || (0..p).all(|x| !poset.leq(x, y) || m >> x & 1 == 1))
            })
            .collect();
        let n = downsets.len();
        if n > MAX_FRAME_SIZE {
            return Err(FrameError::TooLarge {
                size: n,
                bound: MAX_FRAME_SIZE,
            });
        }
        let names = downsets
            .iter()
            .map(|&m| {
                let pts: Vec<&str> = (0..p).filter(|i| m >> i & 1 == 1).map(|i| poset.name(i)).collect();
                format!("{{{}}}", pts.join(","))
            })
            .collect();
        let leq = (0..n * n)
            .map(|k| downsets[k / n] & !downsets[k % n] == 0)
            .collect();
        Frame::from_order(names, leq)
    }

    /// Componentwise product.
    pub fn product(a: &Frame, b: &Frame) -> Result<Self, FrameError> {
        let (na, nb) = (a.len(), b.len());
        let n = na * nb;
        if n > MAX_FRAME_SIZE {
            return Err(FrameError::TooLarge {
                size: n,
                bound: MAX_FRAME_SIZE,
            });
        }
        let names = (0..n)
            .map(|k| format!("({},{})", a.names()[k / nb], b.names()[k % nb]))
            .collect();
        let leq = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                a.leq(a.elem(x / nb), a.elem(y / nb)) && b.leq(b.elem(x % nb), b.elem(y % nb))
            })
            .collect();
        Frame::from_order(names, leq)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// The residuum `a -> b`: the largest `x` with `a /\ x <= b`.
    #[inline]
    pub fn imp(&self, a: Elem, b: Elem) -> Elem {
        let n = self.len();
        let i = self.imp[self.own(a) * n + self.own(b)];
        Elem { frame: self.id(), index: i }
    }

    /// Checked form of [`Frame::imp`].
    pub fn residuum(&self, a: Elem, b: Elem) -> Result<Elem, FrameError> {
        if !self.owns(a) || !self.owns(b) {
            return Err(FrameError::ForeignElement);
        }
        Ok(self.imp(a, b))
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "frame[{}]", self.names().join(", "))
    }
}

fn chain_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["0".into()],
        2 => vec!["0".into(), "1".into()],
        3 => vec!["0".into(), "m".into(), "1".into()],
        _ => std::iter::once("0".to_string())
            .chain((1..n - 1).map(|i| format!("c{i}")))
            .chain(std::iter::once("1".to_string()))
            .collect(),
    }
}

fn tabulate_residuum(l: &Lattice) -> Vec<u16> {
    let n = l.len();
    let mut imp = vec![0u16; n * n];
    for a in l.elements() {
        for b in l.elements() {
            imp[a.index() * n + b.index()] = l.candidate_residuum(a, b).index;
        }
    }
    imp
}

pub(crate) fn check_unique(names: &[String]) -> Result<(), FrameError> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(FrameError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

fn name_list(names: &[String], idx: &[usize]) -> String {
    idx.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(", ")
}

/// Checks reflexivity, antisymmetry and transitivity; on failure returns the
/// law name and the offending indices.
pub(crate) fn check_partial_order(
    n: usize,
    leq: impl Fn(usize, usize) -> bool,
) -> Result<(), (&'static str, Vec<usize>)> {
    for a in 0..n {
        if !leq(a, a) {
            return Err(("reflexivity", vec![a]));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && leq(a, b) && leq(b, a) {
                return Err(("antisymmetry", vec![a, b]));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !leq(a, b) {
                continue;
            }
            for c in 0..n {
                if leq(b, c) && !leq(a, c) {
                    return Err(("transitivity", vec![a, b, c]));
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn reflexive_transitive_closure(n: usize, pairs: &[(usize, usize)]) -> Vec<bool> {
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for &(a, b) in pairs {
        leq[a * n + b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
    leq
}

/// Checks that `l` is a frame: its order is a partial order, its tables are
/// the greatest lower / least upper bounds, it is distributive, and the
/// candidate residuum is right adjoint to meeting.
pub fn validate(l: &Lattice) -> Verdict {
    let n = l.len();
    let mut cases = 0u64;
    if let Err((law, w)) = check_partial_order(n, |a, b| l.leq[a * n + b]) {
        return Verdict::Fail(Failure::new(law, name_list(&l.names, &w)));
    }
    let els: Vec<Elem> = l.elements().collect();
    for &a in &els {
        if !l.leq(l.bottom(), a) || !l.leq(a, l.top()) {
            return Verdict::Fail(Failure::new("bounds", l.name(a)));
        }
        for &b in &els {
            let m = l.meet(a, b);
            let j = l.join(a, b);
            for &c in &els {
                cases += 1;
                let glb = l.leq(m, a) && l.leq(m, b) && (!(l.leq(c, a) && l.leq(c, b)) || l.leq(c, m));
                if !glb {
                    return Verdict::Fail(Failure::new("meet-table", format!("a={}, b={}", l.name(a), l.name(b))));
                }
                let lub = l.leq(a, j) && l.leq(b, j) && (!(l.leq(a, c) && l.leq(b, c)) || l.leq(j, c));
                if !lub {
                    return Verdict::Fail(Failure::new("join-table", format!("a={}, b={}", l.name(a), l.name(b))));
                }
            }
        }
    }
    for &a in &els {
        for &b in &els {
            for &c in &els {
                cases += 1;
                let lhs = l.meet(a, l.join(b, c));
                let rhs = l.join(l.meet(a, b), l.meet(a, c));
                if lhs != rhs {
                    return Verdict::Fail(
                        Failure::new(
                            "distributivity",
                            format!("a={}, b={}, c={}", l.name(a), l.name(b), l.name(c)),
                        )
                        .with_sides(l.name(lhs), l.name(rhs)),
                    );
                }
            }
        }
    }
    for &a in &els {
        for &b in &els {
            let r = l.candidate_residuum(a, b);
            for &c in &els {
                cases += 1;
                if l.leq(l.meet(a, c), b) != l.leq(c, r) {
                    return Verdict::Fail(Failure::new(
                        "adjunction",
                        format!("a={}, b={}, c={}", l.name(a), l.name(b), l.name(c)),
                    ));
                }
            }
        }
    }
    Verdict::pass(cases)
}

/// How identities quantified over subsets of a frame are checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetPolicy {
    /// Enumerate all `2^|L|` subsets when `|L|` is at most this.
    pub exhaustive_max_elems: usize,
    /// Otherwise, the number of seeded random subsets.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SubsetPolicy {
    fn default() -> Self {
        SubsetPolicy {
            exhaustive_max_elems: 12,
            samples: 4096,
            seed: 0,
        }
    }
}

impl SubsetPolicy {
    /// Subsets of an `n`-element carrier as bitmasks.
    fn subsets(&self, n: usize) -> Vec<u64> {
        if n <= self.exhaustive_max_elems {
            (0..1u64 << n).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            let mask = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
            let mut out = vec![0, mask];
            out.extend((0..self.samples).map(|_| rng.random::<u64>() & mask));
            out
        }
    }
}

fn members(f: &Frame, mask: u64) -> impl Iterator<Item = Elem> + '_ {
    f.elements().filter(move |e| mask >> e.index() & 1 == 1)
}

fn subset_names(f: &Frame, mask: u64) -> String {
    let v: Vec<&str> = members(f, mask).map(|e| f.name(e)).collect();
    format!("{{{}}}", v.join(","))
}

/// Checks `a /\ c <= b  <=>  c <= a -> b` and `a -> b = top <=> a <= b`.
pub fn check_adjunction(f: &Frame) -> Verdict {
    let mut cases = 0;
    for a in f.elements() {
        for b in f.elements() {
            let r = f.imp(a, b);
            cases += 1;
            if (r == f.top()) != f.leq(a, b) {
                return Verdict::Fail(Failure::new(
                    "residuum-top",
                    format!("a={}, b={}", f.name(a), f.name(b)),
                ));
            }
            for c in f.elements() {
                cases += 1;
                if f.leq(f.meet(a, c), b) != f.leq(c, r) {
                    return Verdict::Fail(Failure::new(
                        "adjunction",
                        format!("a={}, b={}, c={}", f.name(a), f.name(b), f.name(c)),
                    ));
                }
            }
        }
    }
    Verdict::pass(cases)
}

/// The three Heyting identities: currying, residuum into a meet, and
/// residuum out of a join (the last two over subsets chosen by `policy`).
pub fn check_heyting_identities(f: &Frame, policy: &SubsetPolicy) -> Verdict {
    let mut cases = 0;
    for x in f.elements() {
        for y in f.elements() {
            for z in f.elements() {
                cases += 1;
                let lhs = f.imp(f.meet(x, y), z);
                let rhs = f.imp(x, f.imp(y, z));
                if lhs != rhs {
                    return Verdict::Fail(
                        Failure::new("currying", format!("x={}, y={}, z={}", f.name(x), f.name(y), f.name(z)))
                            .with_sides(f.name(lhs), f.name(rhs)),
                    );
                }
            }
        }
    }
    for mask in policy.subsets(f.len()) {
        let meet_y = f.meet_all(members(f, mask));
        let join_y = f.join_all(members(f, mask));
        for x in f.elements() {
            cases += 2;
            let lhs = f.imp(x, meet_y);
            let rhs = f.meet_all(members(f, mask).map(|y| f.imp(x, y)));
            if lhs != rhs {
                return Verdict::Fail(
                    Failure::new("residuum-into-meet", format!("x={}, Y={}", f.name(x), subset_names(f, mask)))
                        .with_sides(f.name(lhs), f.name(rhs)),
                );
            }
            let z = x;
            let lhs = f.imp(join_y, z);
            let rhs = f.meet_all(members(f, mask).map(|y| f.imp(y, z)));
            if lhs != rhs {
                return Verdict::Fail(
                    Failure::new("residuum-out-of-join", format!("z={}, Y={}", f.name(z), subset_names(f, mask)))
                        .with_sides(f.name(lhs), f.name(rhs)),
                );
            }
        }
    }
    Verdict::pass(cases)
}

/// `a /\ \/S = \/{a /\ s : s in S}` for every `a` and every subset `S`
/// chosen by `policy`.
pub fn check_infinite_distributivity(f: &Frame, policy: &SubsetPolicy) -> Verdict {
    let mut cases = 0;
    for mask in policy.subsets(f.len()) {
        let j = f.join_all(members(f, mask));
        for a in f.elements() {
            cases += 1;
            let lhs = f.meet(a, j);
            let rhs = f.join_all(members(f, mask).map(|s| f.meet(a, s)));
            if lhs != rhs {
                return Verdict::Fail(
                    Failure::new("infinite-distributivity", format!("a={}, S={}", f.name(a), subset_names(f, mask)))
                        .with_sides(f.name(lhs), f.name(rhs)),
                );
            }
        }
    }
    Verdict::pass(cases)
}

/// `/\(a_i -> b_i) <= (\/a_i) -> (\/b_i)` for one family of pairs.
pub fn check_arrow_sup_inequality(f: &Frame, pairs: &[(Elem, Elem)]) -> Verdict {
    for &(a, b) in pairs {
        if !f.owns(a) || !f.owns(b) {
            return Verdict::Fail(Failure::new("membership", "pair element from another frame"));
        }
    }
    let lhs = f.meet_all(pairs.iter().map(|&(a, b)| f.imp(a, b)));
    let rhs = f.imp(
        f.join_all(pairs.iter().map(|p| p.0)),
        f.join_all(pairs.iter().map(|p| p.1)),
    );
    if f.leq(lhs, rhs) {
        Verdict::pass(1)
    } else {
        let w: Vec<String> = pairs.iter().map(|&(a, b)| format!("({},{})", f.name(a), f.name(b))).collect();
        Verdict::Fail(Failure::new("arrow-sup-inequality", w.join(" ")).with_sides(f.name(lhs), f.name(rhs)))
    }
}

/// The arrow/sup inequality over every finite family of pairs.
///
/// Both sides depend on a family only through the triple
/// `(/\(a_i -> b_i), \/a_i, \/b_i)`, so it suffices to visit every triple
/// reachable by adding pairs one at a time from the empty family.
pub fn check_arrow_sup_inequality_all_families(f: &Frame) -> Verdict {
    let n = f.len();
    let key = |u: Elem, a: Elem, b: Elem| (u.index() * n + a.index()) * n + b.index();
    let mut seen = vec![false; n * n * n];
    let start = (f.top(), f.bottom(), f.bottom());
    seen[key(start.0, start.1, start.2)] = true;
    let mut stack = vec![start];
    let mut cases = 0;
    while let Some((u, ja, jb)) = stack.pop() {
        cases += 1;
        if !f.leq(u, f.imp(ja, jb)) {
            return Verdict::Fail(
                Failure::new(
                    "arrow-sup-inequality",
                    format!("family with joins a={}, b={}", f.name(ja), f.name(jb)),
                )
                .with_sides(f.name(u), f.name(f.imp(ja, jb))),
            );
        }
        for a in f.elements() {
            for b in f.elements() {
                let next = (f.meet(u, f.imp(a, b)), f.join(ja, a), f.join(jb, b));
                let k = key(next.0, next.1, next.2);
                if !seen[k] {
                    seen[k] = true;
                    stack.push(next);
                }
            }
        }
    }
    Verdict::pass(cases)
}

/// Searches for an order isomorphism between two lattices; returns the
/// image index of every element of `a`.
pub fn isomorphism(a: &Lattice, b: &Lattice) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(a: &Lattice, b: &Lattice, i: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = a.len();
        if i == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            let ok = (0..i).all(|j| {
                a.leq(a.elem(i), a.elem(j)) == b.leq(b.elem(cand), b.elem(map[j]))
                    && a.leq(a.elem(j), a.elem(i)) == b.leq(b.elem(map[j]), b.elem(cand))
            });
            if ok {
                map[i] = cand;
                used[cand] = true;
                if go(a, b, i + 1, map, used) {
                    return true;
                }
                used[cand] = false;
            }
        }
        false
    }
    go(a, b, 0, &mut map, &mut used).then_some(map)
}

/// The five-element lattice with three pairwise incomparable atoms.
pub fn diamond_m3() -> Lattice {
    let names = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    Lattice::from_pairs(names, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).expect("M3 is a lattice")
}

/// The pentagon `0 < a < c < 1`, `0 < b < 1`.
pub fn pentagon_n5() -> Lattice {
    let names = ["0", "a", "c", "b", "1"].map(String::from).to_vec();
    Lattice::from_pairs(names, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).expect("N5 is a lattice")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(f: &Frame, name: &str) -> Elem {
        f.element(name).unwrap()
    }

    #[test]
    fn chains() {
        let c2 = Frame::chain(2).unwrap();
        assert_eq!(c2.names(), ["0", "1"]);
        assert_eq!(c2.imp(e(&c2, "1"), e(&c2, "0")), e(&c2, "0"));
        let c3 = Frame::chain(3).unwrap();
        assert!(c3.leq(e(&c3, "0"), e(&c3, "m")) && c3.leq(e(&c3, "m"), e(&c3, "1")));
        let c1 = Frame::chain(1).unwrap();
        assert_eq!(c1.bottom(), c1.top());
        assert_eq!(Frame::chain(0).unwrap_err(), FrameError::Empty);
    }

    #[test]
    fn residuum_on_chain3() {
        // Hand scan of {x : m /\ x <= 0} = {0} and {x : 1 /\ x <= m} = {0, m}.
        let c3 = Frame::chain(3).unwrap();
        let (z, m, o) = (e(&c3, "0"), e(&c3, "m"), e(&c3, "1"));
        assert_eq!(c3.residuum(m, z).unwrap(), z);
        assert_eq!(c3.residuum(o, m).unwrap(), m);
        assert_eq!(c3.residuum(m, o).unwrap(), o);
    }

    #[test]
    fn residuum_on_powerset2_is_complement_union() {
        let p = Frame::powerset(2).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.residuum(e(&p, "{0}"), e(&p, "{1}")).unwrap(), e(&p, "{1}"));
        assert_eq!(p.residuum(e(&p, "{0,1}"), e(&p, "{}")).unwrap(), e(&p, "{}"));
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let a = Frame::chain(2).unwrap();
        let b = Frame::chain(2).unwrap();
        assert_eq!(a.residuum(a.top(), b.top()), Err(FrameError::ForeignElement));
        assert!(!a.owns(b.bottom()));
        let r = std::panic::catch_unwind(|| a.meet(a.top(), b.top()));
        assert!(r.is_err());
    }

    #[test]
    fn powerset_bounds() {
        assert_eq!(Frame::powerset(0).unwrap().len(), 1);
        let p1 = Frame::powerset(1).unwrap();
        assert!(isomorphism(&p1, &Frame::chain(2).unwrap()).is_some());
        assert!(matches!(Frame::powerset(5), Err(FrameError::TooLarge { .. })));
    }

    #[test]
    fn downsets_birkhoff() {
        let anti = CrispPoset::antichain(2);
        let d = Frame::downsets(&anti).unwrap();
        assert!(isomorphism(&d, &Frame::powerset(2).unwrap()).is_some());
        let ch = CrispPoset::chain(2);
        let d = Frame::downsets(&ch).unwrap();
        assert!(isomorphism(&d, &Frame::chain(3).unwrap()).is_some());
        let empty = CrispPoset::chain(0);
        assert_eq!(Frame::downsets(&empty).unwrap().len(), 1);
    }

    #[test]
    fn products() {
        let c2 = Frame::chain(2).unwrap();
        let c3 = Frame::chain(3).unwrap();
        let sq = Frame::product(&c2, &c2).unwrap();
        assert!(isomorphism(&sq, &Frame::powerset(2).unwrap()).is_some());
        let one = Frame::chain(1).unwrap();
        assert!(isomorphism(&Frame::product(&c3, &one).unwrap(), &c3).is_some());
        let six = Frame::product(&c2, &c3).unwrap();
        assert_eq!(six.len(), 6);
        assert!(validate(&six).is_pass());
        let big = Frame::chain(9).unwrap();
        assert!(matches!(Frame::product(&big, &big), Err(FrameError::TooLarge { .. })));
    }

    #[test]
    fn m3_and_n5_fail_distributivity() {
        for l in [diamond_m3(), pentagon_n5()] {
            let v = validate(&l);
            let f = v.failure().expect("must fail");
            assert_eq!(f.law, "distributivity");
            assert_ne!(f.lhs, f.rhs);
            assert!(matches!(Frame::new(l), Err(FrameError::Law(_))));
        }
    }

    #[test]
    fn m3_witness_is_genuine() {
        // Independent scan for a triple breaking distributivity.
        let l = diamond_m3();
        let mut found = None;
        'outer: for a in l.elements() {
            for b in l.elements() {
                for c in l.elements() {
                    if l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)) {
                        found = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        let (a, b, c) = found.unwrap();
        let f = validate(&l).failure().cloned().unwrap();
        assert_eq!(f.witness, format!("a={}, b={}, c={}", l.name(a), l.name(b), l.name(c)));
    }

    #[test]
    fn non_orders_and_non_lattices_are_rejected() {
        let names = ["a", "b"].map(String::from).to_vec();
        assert!(matches!(
            Lattice::from_pairs(names.clone(), &[(0, 1), (1, 0)]),
            Err(FrameError::NotPartialOrder(_))
        ));
        assert!(matches!(Lattice::from_pairs(names, &[]), Err(FrameError::NotLattice { .. })));
        let dup = ["a", "a"].map(String::from).to_vec();
        assert!(matches!(Lattice::from_pairs(dup, &[(0, 1)]), Err(FrameError::DuplicateName(_))));
    }

    #[test]
    fn identities_hold_on_small_frames() {
        let policy = SubsetPolicy::default();
        for f in [
            Frame::chain(1).unwrap(),
            Frame::chain(3).unwrap(),
            Frame::powerset(2).unwrap(),
            Frame::powerset(4).unwrap(),
        ] {
            assert!(check_adjunction(&f).is_pass());
            assert!(check_heyting_identities(&f, &policy).is_pass());
            assert!(check_infinite_distributivity(&f, &policy).is_pass());
            assert!(check_arrow_sup_inequality_all_families(&f).is_pass());
        }
    }

    #[test]
    fn sampled_mode_beyond_bound() {
        let f = Frame::powerset(4).unwrap();
        let policy = SubsetPolicy {
            exhaustive_max_elems: 4,
            samples: 100,
            seed: 9,
        };
        assert_eq!(policy.subsets(f.len()).len(), 102);
        assert!(check_heyting_identities(&f, &policy).is_pass());
    }

    #[test]
    fn empty_family_conventions() {
        let c3 = Frame::chain(3).unwrap();
        assert_eq!(c3.imp(c3.top(), c3.meet_all([])), c3.top());
        assert_eq!(c3.imp(c3.join_all([]), c3.bottom()), c3.top());
        assert!(check_arrow_sup_inequality(&c3, &[]).is_pass());
    }

    #[test]
    fn arrow_sup_examples() {
        let c3 = Frame::chain(3).unwrap();
        let (z, m, o) = (e(&c3, "0"), e(&c3, "m"), e(&c3, "1"));
        assert!(check_arrow_sup_inequality(&c3, &[(m, z)]).is_pass());
        // (m -> 0) /\ (1 -> m) = 0 /\ m = 0.
        assert_eq!(c3.meet(c3.imp(m, z), c3.imp(o, m)), z);
        assert!(check_arrow_sup_inequality(&c3, &[(m, z), (o, m)]).is_pass());
    }
}
