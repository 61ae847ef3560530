//! Finite frames, L-ordered sets over them, and executable checks of the
//! fixpoint calculus for monotone maps on L-complete L-ordered sets and fuzzy
//! dcpos.
//!
//! Everything is exact finite lattice arithmetic: a [`Frame`] precomputes
//! its meet, join and residuum tables, an [`LOrderedSet`] stores a dense
//! degree table validated at construction, and joins of fuzzy subsets are
//! found by scanning candidates against the equational characterization.

pub mod dcpo;
pub mod fixpoint;
pub mod frame;
pub mod fuzzy;
pub mod io;
pub mod lorder;
pub mod maps;
pub mod oracle;
pub mod report;

pub use dcpo::{is_fuzzy_dcpo, DcpoVerdict, ScanMode};
pub use fixpoint::{analyze, greatest_fixpoint, least_fixpoint, t_fixpoints, FixAnalysis};
pub use frame::{Elem, Frame, FrameError, Lattice};
pub use fuzzy::{DirectedFailure, FunctionSpace, FuzzySubset};
pub use lorder::{CrispPoset, LOrderError, LOrderedSet};
pub use maps::{hom_set, HomSet, LMap, MapError};
pub use report::{Failure, Report, ReportSet, Status, Verdict};
