//! Maps between L-ordered sets: monotonicity, monotone completion, hom-sets
//! with the pointwise degree, fuzzy Galois connections and isomorphisms.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::frame::Elem;
use crate::fuzzy::FuzzySubset;
use crate::lorder::{LOrderError, LOrderedSet};

/// Default bound on the number of candidate maps `|Q|^|P|`.
pub const MAP_BOUND: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("map table has {got} entries, domain has {expected} points")]
    WrongSize { got: usize, expected: usize },
    #[error("point {point} is sent to {value}, outside the codomain")]
    OutOfRange { point: usize, value: usize },
    #[error("domain and codomain use different frames")]
    FrameMismatch,
    #[error("the join needed at point {point} does not exist")]
    MissingJoin { point: String },
    #[error("map is not monotone at ({x}, {y})")]
    NotMonotone { x: String, y: String },
    #[error("{size} candidate maps exceed the bound of {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error(transparent)]
    LOrder(#[from] LOrderError),
}

/// A total map `P -> Q` stored as a table of codomain indices.
#[derive(Clone, Debug)]
pub struct LMap {
    domain: Arc<LOrderedSet>,
    codomain: Arc<LOrderedSet>,
    table: Vec<usize>,
}

impl PartialEq for LMap {
    fn eq(&self, other: &Self) -> bool {
        same(&self.domain, &other.domain) && same(&self.codomain, &other.codomain) && self.table == other.table
    }
}

impl Eq for LMap {}

fn same(a: &Arc<LOrderedSet>, b: &Arc<LOrderedSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl LMap {
    pub fn new(domain: Arc<LOrderedSet>, codomain: Arc<LOrderedSet>, table: Vec<usize>) -> Result<Self, MapError> {
        if table.len() != domain.len() {
            return Err(MapError::WrongSize {
                got: table.len(),
                expected: domain.len(),
            });
        }
        if domain.frame() != codomain.frame() {
            return Err(MapError::FrameMismatch);
        }
        if let Some((point, &value)) = table.iter().enumerate().find(|(_, &v)| v >= codomain.len()) {
            return Err(MapError::OutOfRange { point, value });
        }
        Ok(LMap {
            domain,
            codomain,
            table,
        })
    }

    pub fn identity(p: Arc<LOrderedSet>) -> Self {
        let table = p.points().collect();
        LMap {
            domain: p.clone(),
            codomain: p,
            table,
        }
    }

    pub fn constant(domain: Arc<LOrderedSet>, codomain: Arc<LOrderedSet>, c: usize) -> Self {
        assert!(c < codomain.len(), "constant outside the codomain");
        let table = vec![c; domain.len()];
        LMap {
            domain,
            codomain,
            table,
        }
    }

    pub fn domain(&self) -> &Arc<LOrderedSet> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<LOrderedSet> {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ g`: apply `g` first.
    pub fn after(&self, g: &LMap) -> LMap {
        assert!(same(&g.codomain, &self.domain), "composition of non-composable maps");
        LMap {
            domain: g.domain.clone(),
            codomain: self.codomain.clone(),
            table: g.table.iter().map(|&y| self.table[y]).collect(),
        }
    }

    pub fn is_endo(&self) -> bool {
        same(&self.domain, &self.codomain)
    }

    pub fn is_endo_on(&self, p: &LOrderedSet) -> bool {
        *self.domain == *p && *self.codomain == *p
    }

    /// First pair with `e_P(x, y) not<= e_Q(f(x), f(y))`, in row-major order.
    pub fn monotone_violation(&self) -> Option<(usize, usize)> {
        let l = self.domain.frame();
        let (p, q) = (&self.domain, &self.codomain);
        p.points()
            .flat_map(|x| p.points().map(move |y| (x, y)))
            .find(|&(x, y)| !l.leq(p.e(x, y), q.e(self.apply(x), self.apply(y))))
    }

    pub fn is_monotone(&self) -> Result<(), (usize, usize)> {
        match self.monotone_violation() {
            None => Ok(()),
            Some(w) => Err(w),
        }
    }

    pub(crate) fn require_monotone(&self) -> Result<(), MapError> {
        self.is_monotone().map_err(|(x, y)| MapError::NotMonotone {
            x: self.domain.point_name(x).to_string(),
            y: self.domain.point_name(y).to_string(),
        })
    }

    /// `S_a(y) = \/{e(z, a) : f(z) = y}` over the codomain.
    pub fn completion_subset(&self, a: usize) -> FuzzySubset {
        let l = self.codomain.frame();
        let mut v = vec![l.bottom(); self.codomain.len()];
        for z in self.domain.points() {
            let y = self.apply(z);
            v[y] = l.join(v[y], self.domain.e(z, a));
        }
        FuzzySubset::new(v)
    }

    /// `F(a) = join(S_a)`; equal to `self` exactly when `self` is monotone.
    pub fn monotone_completion(&self) -> Result<LMap, MapError> {
        let table = self
            .domain
            .points()
            .map(|a| {
                self.codomain
                    .join(&self.completion_subset(a))
                    .ok_or_else(|| MapError::MissingJoin {
                        point: self.domain.point_name(a).to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            table,
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        let n = self.codomain.len();
        if self.domain.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &y in &self.table {
            if std::mem::replace(&mut hit[y], true) {
                return false;
            }
        }
        let p = &self.domain;
        p.points()
            .all(|x| p.points().all(|y| p.e(x, y) == self.codomain.e(self.apply(x), self.apply(y))))
    }

    /// `[p1,p1,p2]`, codomain point names in domain order.
    pub fn describe(&self) -> String {
        let v: Vec<&str> = self.table.iter().map(|&y| self.codomain.point_name(y)).collect();
        format!("[{}]", v.join(","))
    }
}

impl fmt::Display for LMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .domain
            .points()
            .map(|x| format!("{}->{}", self.domain.point_name(x), self.codomain.point_name(self.apply(x))))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `/\_x e_Q(f(x), g(x))`.
pub fn degree(f: &LMap, g: &LMap) -> Elem {
    assert!(same(&f.domain, &g.domain) && same(&f.codomain, &g.codomain));
    let q = &f.codomain;
    q.frame().meet_all(f.domain.points().map(|x| q.e(f.apply(x), g.apply(x))))
}

/// First `(x, y)` with `e_Q(f(x), y) != e_P(x, g(y))`, or `None` when the
/// pair is a fuzzy Galois connection.
pub fn galois_violation(f: &LMap, g: &LMap) -> Result<Option<(usize, usize)>, MapError> {
    assert!(same(&f.domain, &g.codomain) && same(&f.codomain, &g.domain), "maps are not opposite");
    f.require_monotone()?;
    g.require_monotone()?;
    let (p, q) = (&f.domain, &f.codomain);
    Ok(p.points()
        .flat_map(|x| q.points().map(move |y| (x, y)))
        .find(|&(x, y)| q.e(f.apply(x), y) != p.e(x, g.apply(y))))
}

pub fn is_galois(f: &LMap, g: &LMap) -> Result<bool, MapError> {
    Ok(galois_violation(f, g)?.is_none())
}

/// `g(y) = join(x |-> e_Q(f(x), y))`, returned only if it exists everywhere
/// and forms a Galois connection with `f`.
pub fn right_adjoint(f: &LMap) -> Option<LMap> {
    f.is_monotone().ok()?;
    let (p, q) = (&f.domain, &f.codomain);
    let table = q
        .points()
        .map(|y| p.join(&FuzzySubset::new(p.points().map(|x| q.e(f.apply(x), y)).collect())))
        .collect::<Option<Vec<_>>>()?;
    let g = LMap {
        domain: q.clone(),
        codomain: p.clone(),
        table,
    };
    match galois_violation(f, &g) {
        Ok(None) => Some(g),
        _ => None,
    }
}

/// An L-ordered set whose points are maps `P -> Q`, with degree
/// `e(a, b) = /\_x e_Q(a(x), b(x))`.
#[derive(Clone, Debug)]
pub struct HomSet {
    domain: Arc<LOrderedSet>,
    codomain: Arc<LOrderedSet>,
    tables: Vec<Vec<usize>>,
    lorder: Arc<LOrderedSet>,
    index: HashMap<Vec<usize>, usize>,
}

impl HomSet {
    pub fn lorder(&self) -> &Arc<LOrderedSet> {
        &self.lorder
    }

    pub fn domain(&self) -> &Arc<LOrderedSet> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<LOrderedSet> {
        &self.codomain
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn map(&self, i: usize) -> LMap {
        LMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            table: self.tables[i].clone(),
        }
    }

    pub fn maps(&self) -> impl Iterator<Item = LMap> + '_ {
        (0..self.len()).map(|i| self.map(i))
    }

    pub fn index_of(&self, f: &LMap) -> Option<usize> {
        self.index.get(f.table()).copied()
    }
}

/// Every table `P -> Q` in lexicographic order (first point most
/// significant).
pub fn all_tables(p: usize, q: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut digits = vec![0usize; p];
    let mut done = q == 0 && p > 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = digits.clone();
        let mut i = p;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
        }
        Some(out)
    })
}

fn candidate_count(p: &LOrderedSet, q: &LOrderedSet, bound: usize) -> Result<usize, MapError> {
    let size = crate::fuzzy::count_subsets(q.len(), p.len()).unwrap_or(usize::MAX);
    if size > bound {
        Err(MapError::BoundExceeded { size, bound })
    } else {
        Ok(size)
    }
}

fn build(p: Arc<LOrderedSet>, q: Arc<LOrderedSet>, tables: Vec<Vec<usize>>) -> Result<HomSet, MapError> {
    if p.frame() != q.frame() {
        return Err(MapError::FrameMismatch);
    }
    let l = q.frame().clone();
    let names = tables
        .iter()
        .map(|t| {
            let v: Vec<&str> = t.iter().map(|&y| q.point_name(y)).collect();
            format!("[{}]", v.join(","))
        })
        .collect();
    let lorder = LOrderedSet::from_fn(l.clone(), names, |a, b| {
        l.meet_all(p.points().map(|x| q.e(tables[a][x], tables[b][x])))
    })?;
    let index = tables.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    Ok(HomSet {
        domain: p,
        codomain: q,
        tables,
        lorder: Arc::new(lorder),
        index,
    })
}

/// All monotone maps `P -> Q` with the pointwise degree.
pub fn hom_set(p: Arc<LOrderedSet>, q: Arc<LOrderedSet>, bound: usize) -> Result<HomSet, MapError> {
    candidate_count(&p, &q, bound)?;
    if p.frame() != q.frame() {
        return Err(MapError::FrameMismatch);
    }
    let candidates: Vec<Vec<usize>> = all_tables(p.len(), q.len()).collect();
    let tables = candidates
        .into_par_iter()
        .filter(|t| {
            let f = LMap {
                domain: p.clone(),
                codomain: q.clone(),
                table: t.clone(),
            };
            f.monotone_violation().is_none()
        })
        .collect();
    build(p, q, tables)
}

/// All maps `P -> Q`, monotone or not, with the pointwise degree.
pub fn map_space(p: Arc<LOrderedSet>, q: Arc<LOrderedSet>, bound: usize) -> Result<HomSet, MapError> {
    candidate_count(&p, &q, bound)?;
    let tables = all_tables(p.len(), q.len()).collect();
    build(p, q, tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use crate::lorder::{fz2, CrispPoset};

    fn chain(n: usize) -> Arc<LOrderedSet> {
        Arc::new(LOrderedSet::from_crisp_poset(
            &CrispPoset::chain(n),
            Arc::new(Frame::chain(2).unwrap()),
        ))
    }

    /// Powerset of two atoms as a crisp L-ordered set, points in frame order.
    fn powerset2() -> (Arc<LOrderedSet>, Arc<Frame>) {
        let l = Arc::new(Frame::powerset(2).unwrap());
        let c2 = Arc::new(Frame::chain(2).unwrap());
        let names: Vec<String> = l.names().to_vec();
        let p = LOrderedSet::from_fn(c2.clone(), names, |a, b| {
            if l.leq(l.elem(a), l.elem(b)) {
                c2.top()
            } else {
                c2.bottom()
            }
        })
        .unwrap();
        (Arc::new(p), l)
    }

    #[test]
    fn construction_errors() {
        let c = chain(2);
        assert!(matches!(LMap::new(c.clone(), c.clone(), vec![0]), Err(MapError::WrongSize { .. })));
        assert!(matches!(
            LMap::new(c.clone(), c.clone(), vec![0, 2]),
            Err(MapError::OutOfRange { point: 1, value: 2 })
        ));
        let z = Arc::new(fz2());
        assert_eq!(LMap::new(c, z, vec![0, 0]).unwrap_err(), MapError::FrameMismatch);
    }

    #[test]
    fn monotonicity() {
        let z = Arc::new(fz2());
        assert!(LMap::identity(z.clone()).is_monotone().is_ok());
        assert!(LMap::constant(z.clone(), z.clone(), 1).is_monotone().is_ok());
        let swap = LMap::new(z.clone(), z.clone(), vec![1, 0]).unwrap();
        assert_eq!(swap.is_monotone(), Err((0, 1)));
        assert!(!swap.is_isomorphism());
        assert!(LMap::identity(z).is_isomorphism());
    }

    #[test]
    fn completion_of_swap_is_top_constant() {
        let c = chain(2);
        let swap = LMap::new(c.clone(), c.clone(), vec![1, 0]).unwrap();
        let l = c.frame();
        assert_eq!(swap.completion_subset(0).values(), &[l.bottom(), l.top()]);
        assert_eq!(swap.completion_subset(1).values(), &[l.top(), l.top()]);
        assert_eq!(swap.monotone_completion().unwrap().table(), &[1, 1]);
        let k = LMap::constant(c.clone(), c, 0);
        assert_eq!(k.monotone_completion().unwrap(), k);
    }

    #[test]
    fn completion_fixes_exactly_monotone_maps() {
        let c = chain(3);
        for t in all_tables(3, 3) {
            let f = LMap::new(c.clone(), c.clone(), t).unwrap();
            let g = f.monotone_completion().unwrap();
            assert!(g.is_monotone().is_ok());
            assert_eq!(g == f, f.is_monotone().is_ok());
        }
    }

    #[test]
    fn missing_join_is_reported() {
        let z = Arc::new(fz2());
        let c = Arc::new(LOrderedSet::from_crisp_poset(&CrispPoset::chain(2), z.frame().clone()));
        let f = LMap::new(c, z.clone(), vec![0, 1]).unwrap();
        assert_eq!(f.is_monotone(), Err((0, 1)));
        // S_p1 = (x->1, y->1) has no join in fz2
        assert_eq!(f.monotone_completion(), Err(MapError::MissingJoin { point: "p1".into() }));
        let d = LMap::new(z.clone(), z.clone(), vec![0, 0]).unwrap();
        assert!(d.monotone_completion().is_ok());
    }

    #[test]
    fn hom_counts() {
        let one = chain(1);
        assert_eq!(hom_set(one.clone(), one, MAP_BOUND).unwrap().len(), 1);
        let c3 = chain(3);
        let h = hom_set(c3.clone(), c3.clone(), MAP_BOUND).unwrap();
        assert_eq!(h.len(), 10);
        let brute = all_tables(3, 3)
            .filter(|t| t.windows(2).all(|w| w[0] <= w[1]))
            .count();
        assert_eq!(brute, 10);
        assert_eq!(h.map(0).table(), &[0, 0, 0]);
        assert_eq!(h.map(9).table(), &[2, 2, 2]);
        let z = Arc::new(fz2());
        let hz = hom_set(z.clone(), z, MAP_BOUND).unwrap();
        let tables: Vec<_> = hz.maps().map(|f| f.table().to_vec()).collect();
        assert_eq!(tables, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert!(matches!(
            hom_set(chain(4), chain(4), 100),
            Err(MapError::BoundExceeded { size: 256, bound: 100 })
        ));
    }

    #[test]
    fn galois_pairs() {
        let c3 = chain(3);
        let id = LMap::identity(c3.clone());
        assert!(is_galois(&id, &id).unwrap());
        assert_eq!(right_adjoint(&id), Some(id.clone()));
        let k = LMap::constant(c3.clone(), c3.clone(), 2);
        assert_eq!(right_adjoint(&k), None);
        for t in all_tables(3, 3) {
            let g = LMap::new(c3.clone(), c3.clone(), t).unwrap();
            if g.is_monotone().is_ok() {
                assert!(!is_galois(&k, &g).unwrap());
            }
        }
        let swap = LMap::new(c3.clone(), c3.clone(), vec![2, 1, 0]).unwrap();
        assert!(matches!(is_galois(&swap, &id), Err(MapError::NotMonotone { .. })));
    }

    #[test]
    fn powerset_residuation_is_galois() {
        let (p, l) = powerset2();
        let a = l.element("{0}").unwrap();
        let f = LMap::new(p.clone(), p.clone(), l.elements().map(|x| l.meet(x, a).index()).collect()).unwrap();
        let g = LMap::new(p.clone(), p.clone(), l.elements().map(|x| l.imp(a, x).index()).collect()).unwrap();
        assert!(is_galois(&f, &g).unwrap());
        assert_eq!(right_adjoint(&f), Some(g));
    }

    #[test]
    fn degrees_and_composition() {
        let c3 = chain(3);
        let f = LMap::new(c3.clone(), c3.clone(), vec![1, 1, 2]).unwrap();
        let id = LMap::identity(c3.clone());
        let l = c3.frame();
        assert_eq!(degree(&id, &f), l.top());
        assert_eq!(degree(&f, &id), l.bottom());
        assert_eq!(f.after(&f), f);
        let k = LMap::constant(c3.clone(), c3.clone(), 0);
        assert_eq!(f.after(&k).table(), &[1, 1, 1]);
        assert_eq!(k.after(&f), k);
        assert_eq!(f.to_string(), "(p0->p1, p1->p1, p2->p2)");
        assert_eq!(f.describe(), "[p1,p1,p2]");
    }

    #[test]
    fn map_space_contains_hom_set() {
        let c = chain(2);
        let all = map_space(c.clone(), c.clone(), MAP_BOUND).unwrap();
        assert_eq!(all.len(), 4);
        let hom = hom_set(c.clone(), c, MAP_BOUND).unwrap();
        for f in hom.maps() {
            assert!(all.index_of(&f).is_some());
        }
    }
}
