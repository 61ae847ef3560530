//! JSON instance files: named frames, L-ordered sets, maps and fuzzy
//! subsets, resolved by name and fully re-validated on load.
//!
//! ```json
//! {
//!   "format-version": "1",
//!   "frames":  { "three": { "elements": ["0", "m", "1"], "leq": [["0", "m"], ["m", "1"]] } },
//!   "lorders": { "fz2": { "frame": "three", "points": ["x", "y"], "e": [["x", "y", "m"]] } },
//!   "maps":    { "up": { "domain": "fz2", "codomain": "fz2", "table": { "x": "y", "y": "y" } } },
//!   "subsets": { "d": { "lorder": "fz2", "values": { "x": "1", "y": "m" } } }
//! }
//! ```
//!
//! Frame `leq` pairs generate the order by reflexive-transitive closure. A
//! frame name not defined in the file resolves to a standard frame
//! (`chain2`, `chain3`, `chain4`, `powerset2`, `chain2xchain3`). Omitted
//! degrees are top on the diagonal and bottom elsewhere; omitted subset
//! values are bottom.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{Elem, Frame, FrameError};
use crate::fuzzy::FuzzySubset;
use crate::lorder::{LOrderError, LOrderedSet, MAX_POINTS};
use crate::maps::{LMap, MapError};
use crate::oracle::standard_frame;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed instance file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format-version {0:?}")]
    Version(String),
    #[error("{kind} {name:?} is not defined")]
    Unknown { kind: &'static str, name: String },
    #[error("{kind} {owner:?} mentions unknown element {name:?}")]
    UnknownMember {
        kind: &'static str,
        owner: String,
        name: String,
    },
    #[error("frame {name:?}: {source}")]
    Frame { name: String, source: Box<FrameError> },
    #[error("lorder {name:?}: {source}")]
    LOrder { name: String, source: Box<LOrderError> },
    #[error("lorder {name:?} has {size} points, more than {bound}")]
    TooManyPoints { name: String, size: usize, bound: usize },
    #[error("map {name:?}: {source}")]
    Map { name: String, source: Box<MapError> },
    #[error("map {name:?} leaves {point:?} unassigned")]
    Partial { name: String, point: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct InstanceFile {
    pub format_version: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub frames: BTreeMap<String, FrameDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lorders: BTreeMap<String, LOrderDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subsets: BTreeMap<String, SubsetDef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDef {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LOrderDef {
    pub frame: String,
    pub points: Vec<String>,
    #[serde(default)]
    pub e: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDef {
    pub domain: String,
    pub codomain: String,
    pub table: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsetDef {
    pub lorder: String,
    #[serde(default)]
    pub values: BTreeMap<String, String>,
}

/// A loaded and validated instance file.
#[derive(Clone, Debug, Default)]
pub struct Instances {
    pub frames: BTreeMap<String, Arc<Frame>>,
    pub lorders: BTreeMap<String, Arc<LOrderedSet>>,
    pub maps: BTreeMap<String, LMap>,
    /// Each subset with the name of its L-ordered set.
    pub subsets: BTreeMap<String, (String, FuzzySubset)>,
}

fn elem_of(frame: &Frame, owner: &str, name: &str) -> Result<Elem, IoError> {
    frame.element(name).ok_or_else(|| IoError::UnknownMember {
        kind: "frame",
        owner: owner.to_string(),
        name: name.to_string(),
    })
}

fn point_of(x: &LOrderedSet, owner: &str, name: &str) -> Result<usize, IoError> {
    x.point(name).ok_or_else(|| IoError::UnknownMember {
        kind: "lorder",
        owner: owner.to_string(),
        name: name.to_string(),
    })
}

impl Instances {
    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    pub fn from_file(file: &InstanceFile) -> Result<Self, IoError> {
        if file.format_version != FORMAT_VERSION {
            return Err(IoError::Version(file.format_version.clone()));
        }
        let mut out = Instances::default();
        for (name, def) in &file.frames {
            let index = |e: &str| {
                def.elements.iter().position(|x| x == e).ok_or_else(|| IoError::UnknownMember {
                    kind: "frame",
                    owner: name.clone(),
                    name: e.to_string(),
                })
            };
            let pairs = def
                .leq
                .iter()
                .map(|(a, b)| Ok((index(a)?, index(b)?)))
                .collect::<Result<Vec<_>, IoError>>()?;
            let frame = Frame::from_pairs(def.elements.clone(), &pairs).map_err(|source| IoError::Frame {
                name: name.clone(),
                source: Box::new(source),
            })?;
            out.frames.insert(name.clone(), Arc::new(frame));
        }
        for (name, def) in &file.lorders {
            let frame = out.resolve_frame(&def.frame)?;
            let n = def.points.len();
            if n > MAX_POINTS {
                return Err(IoError::TooManyPoints {
                    name: name.clone(),
                    size: n,
                    bound: MAX_POINTS,
                });
            }
            let mut e: Vec<Elem> = (0..n * n)
                .map(|k| if k / n == k % n { frame.top() } else { frame.bottom() })
                .collect();
            let index = |p: &str| {
                def.points.iter().position(|x| x == p).ok_or_else(|| IoError::UnknownMember {
                    kind: "lorder",
                    owner: name.clone(),
                    name: p.to_string(),
                })
            };
            for (x, y, v) in &def.e {
                e[index(x)? * n + index(y)?] = elem_of(&frame, &def.frame, v)?;
            }
            let x = LOrderedSet::new(frame, def.points.clone(), e).map_err(|source| IoError::LOrder {
                name: name.clone(),
                source: Box::new(source),
            })?;
            out.lorders.insert(name.clone(), Arc::new(x));
        }
        for (name, def) in &file.maps {
            let p = out.lorder(&def.domain)?.clone();
            let q = out.lorder(&def.codomain)?.clone();
            let mut table = Vec::with_capacity(p.len());
            for x in p.points() {
                let target = def.table.get(p.point_name(x)).ok_or_else(|| IoError::Partial {
                    name: name.clone(),
                    point: p.point_name(x).to_string(),
                })?;
                table.push(point_of(&q, &def.codomain, target)?);
            }
            for key in def.table.keys() {
                point_of(&p, &def.domain, key)?;
            }
            let f = LMap::new(p, q, table).map_err(|source| IoError::Map {
                name: name.clone(),
                source: Box::new(source),
            })?;
            out.maps.insert(name.clone(), f);
        }
        for (name, def) in &file.subsets {
            let x = out.lorder(&def.lorder)?;
            let l = x.frame();
            let mut values = vec![l.bottom(); x.len()];
            for (p, v) in &def.values {
                values[point_of(x, &def.lorder, p)?] = elem_of(l, &def.lorder, v)?;
            }
            out.subsets
                .insert(name.clone(), (def.lorder.clone(), FuzzySubset::new(values)));
        }
        Ok(out)
    }

    fn resolve_frame(&mut self, name: &str) -> Result<Arc<Frame>, IoError> {
        if let Some(f) = self.frames.get(name) {
            return Ok(f.clone());
        }
        let f = Arc::new(standard_frame(name).ok_or_else(|| IoError::Unknown {
            kind: "frame",
            name: name.to_string(),
        })?);
        self.frames.insert(name.to_string(), f.clone());
        Ok(f)
    }

    pub fn lorder(&self, name: &str) -> Result<&Arc<LOrderedSet>, IoError> {
        self.lorders.get(name).ok_or_else(|| IoError::Unknown {
            kind: "lorder",
            name: name.to_string(),
        })
    }

    pub fn map(&self, name: &str) -> Result<&LMap, IoError> {
        self.maps.get(name).ok_or_else(|| IoError::Unknown {
            kind: "map",
            name: name.to_string(),
        })
    }

    pub fn subset(&self, name: &str) -> Result<&(String, FuzzySubset), IoError> {
        self.subsets.get(name).ok_or_else(|| IoError::Unknown {
            kind: "subset",
            name: name.to_string(),
        })
    }

    fn frame_name(&self, frame: &Frame) -> String {
        self.frames
            .iter()
            .find(|(_, f)| ***f == *frame)
            .map(|(n, _)| n.clone())
            .expect("every lorder frame is registered")
    }

    fn lorder_name(&self, x: &Arc<LOrderedSet>) -> String {
        self.lorders
            .iter()
            .find(|(_, y)| Arc::ptr_eq(x, y) || ***y == **x)
            .map(|(n, _)| n.clone())
            .expect("every map endpoint is registered")
    }

    /// The file form: frames as covering pairs, degrees and values only
    /// where they differ from the defaults.
    pub fn to_file(&self) -> InstanceFile {
        let frames = self
            .frames
            .iter()
            .map(|(name, f)| {
                let names = f.names();
                let leq = f
                    .covers()
                    .into_iter()
                    .map(|(a, b)| (names[a].clone(), names[b].clone()))
                    .collect();
                (
                    name.clone(),
                    FrameDef {
                        elements: names.to_vec(),
                        leq,
                    },
                )
            })
            .collect();
        let lorders = self
            .lorders
            .iter()
            .map(|(name, x)| {
                let l = x.frame();
                let mut e = Vec::new();
                for p in x.points() {
                    for q in x.points() {
                        let default = if p == q { l.top() } else { l.bottom() };
                        if x.e(p, q) != default {
                            e.push((
                                x.point_name(p).to_string(),
                                x.point_name(q).to_string(),
                                l.name(x.e(p, q)).to_string(),
                            ));
                        }
                    }
                }
                (
                    name.clone(),
                    LOrderDef {
                        frame: self.frame_name(l),
                        points: x.point_names().to_vec(),
                        e,
                    },
                )
            })
            .collect();
        let maps = self
            .maps
            .iter()
            .map(|(name, f)| {
                let (p, q) = (f.domain(), f.codomain());
                let table = p
                    .points()
                    .map(|x| (p.point_name(x).to_string(), q.point_name(f.apply(x)).to_string()))
                    .collect();
                (
                    name.clone(),
                    MapDef {
                        domain: self.lorder_name(p),
                        codomain: self.lorder_name(q),
                        table,
                    },
                )
            })
            .collect();
        let subsets = self
            .subsets
            .iter()
            .map(|(name, (owner, s))| {
                let x = &self.lorders[owner];
                let l = x.frame();
                let values = x
                    .points()
                    .filter(|&p| s.get(p) != l.bottom())
                    .map(|p| (x.point_name(p).to_string(), l.name(s.get(p)).to_string()))
                    .collect();
                (
                    name.clone(),
                    SubsetDef {
                        lorder: owner.clone(),
                        values,
                    },
                )
            })
            .collect();
        InstanceFile {
            format_version: FORMAT_VERSION.to_string(),
            frames,
            lorders,
            maps,
            subsets,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("instance files serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FZ2: &str = r#"{
        "format-version": "1",
        "frames": { "three": { "elements": ["0", "m", "1"], "leq": [["0", "m"], ["m", "1"]] } },
        "lorders": {
            "fz2": { "frame": "three", "points": ["x", "y"], "e": [["x", "y", "m"]] },
            "c2": { "frame": "chain2", "points": ["a", "b"], "e": [["a", "b", "1"]] }
        },
        "maps": { "up": { "domain": "fz2", "codomain": "fz2", "table": { "x": "y", "y": "y" } } },
        "subsets": { "d": { "lorder": "fz2", "values": { "x": "1", "y": "m" } } }
    }"#;

    #[test]
    fn loads_fz2() {
        let inst = Instances::from_json(FZ2).unwrap();
        let z = inst.lorder("fz2").unwrap();
        let idx = |x: &LOrderedSet| x.table().iter().map(|e| e.index()).collect::<Vec<_>>();
        assert_eq!(idx(z), idx(&crate::lorder::fz2()));
        assert_eq!(inst.map("up").unwrap().table(), &[1, 1]);
        let (owner, d) = inst.subset("d").unwrap();
        assert_eq!(owner, "fz2");
        assert!(z.is_directed(d).is_ok());
        assert_eq!(z.join(d), None);
        assert!(inst.frames.contains_key("chain2"));
    }

    #[test]
    fn round_trip() {
        let inst = Instances::from_json(FZ2).unwrap();
        let file = inst.to_file();
        let again = Instances::from_file(&file).unwrap();
        assert_eq!(again.to_file(), file);
        let text = inst.to_json();
        assert_eq!(Instances::from_json(&text).unwrap().to_file(), file);
    }

    #[test]
    fn rejects_bad_files() {
        let bad = |s: &str| Instances::from_json(s).unwrap_err();
        assert!(matches!(bad(r#"{"format-version": "2"}"#), IoError::Version(_)));
        assert!(matches!(bad(r#"{"format-version": "1", "extra": 0}"#), IoError::Json(_)));
        let m3 = r#"{"format-version": "1", "frames": {"m3": {"elements": ["0","a","b","c","1"],
            "leq": [["0","a"],["0","b"],["0","c"],["a","1"],["b","1"],["c","1"]]}}}"#;
        assert!(matches!(bad(m3), IoError::Frame { .. }));
        let asym = r#"{"format-version": "1", "lorders": {"p": {"frame": "chain2", "points": ["a","b"],
            "e": [["a","b","1"],["b","a","1"]]}}}"#;
        assert!(matches!(bad(asym), IoError::LOrder { .. }));
        let big: Vec<String> = (0..9).map(|i| format!("\"p{i}\"")).collect();
        let big = format!(r#"{{"format-version": "1", "lorders": {{"p": {{"frame": "chain2", "points": [{}]}}}}}}"#, big.join(","));
        assert!(matches!(bad(&big), IoError::TooManyPoints { size: 9, .. }));
        let partial = r#"{"format-version": "1", "lorders": {"p": {"frame": "chain2", "points": ["a","b"]}},
            "maps": {"f": {"domain": "p", "codomain": "p", "table": {"a": "b"}}}}"#;
        assert!(matches!(bad(partial), IoError::Partial { .. }));
        let unknown = r#"{"format-version": "1", "lorders": {"p": {"frame": "chain9", "points": ["a"]}}}"#;
        assert!(matches!(bad(unknown), IoError::Unknown { kind: "frame", .. }));
    }
}
