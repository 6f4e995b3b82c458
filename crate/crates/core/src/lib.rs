//! Enumeration of 2-dimensional CW complexes with triangle faces and
//! prescribed vertex links.
//!
//! Complexes are described by *wired faces* over an arrangement of link
//! graphs ([`wired`]); [`enumerate`] finds every complete complex by an
//! exact-cover style backtracking search and [`iso`] reduces them to
//! isomorphism classes. [`presentation`] converts to presentation complexes
//! and checks links and orientability.

pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod iso;
pub mod presentation;
pub mod wired;

pub use enumerate::{enumerate, generate_potential_faces, Enumeration, FacePattern, SearchConfig, SearchStats};
pub use error::{FormatError, GraphError, IsoError, PresentationError, SearchError, WiredError};
pub use graph::{graphs_isomorphic, Girth, Graph, Permutation};
pub use iso::{canonical_key, complexes_isomorphic, dedup_classes, CanonicalKey, ClassRecord, DedupStrategy, IsoGroup};
pub use presentation::{
    positively_orientable, typed_triangles_to_presentation, wired_to_presentation, PresentationComplex,
    TypedTriangle,
};
pub use wired::{wires_compatible, LinkArrangement, PartialWiredComplex, Wire, WiredComplex, WiredFace};
