//! Wired complexes: prescribed links glued together by wires.
//!
//! All link vertices of an arrangement share one global numbering. A
//! [`Wire`] `(a, b)` is a CW edge seen from its two ends, and a
//! [`WiredFace`] is a triangle given by its three sides. The corner between
//! side `i` and side `i + 1` is the link edge `{b_i, a_{i+1}}`.

use std::fmt;
use std::sync::Arc;

use crate::error::WiredError;
use crate::graph::Graph;

/// The prescribed links of a would-be complex, one per CW vertex, with their
/// vertices numbered consecutively link after link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkArrangement {
    names: Vec<String>,
    links: Vec<Graph>,
    offsets: Vec<u32>,
    owner: Vec<u32>,
    edge_offsets: Vec<u32>,
}

impl LinkArrangement {
    pub fn new(links: Vec<(String, Graph)>) -> Self {
        let (names, links): (Vec<_>, Vec<_>) = links.into_iter().unzip();
        let mut offsets = vec![0u32];
        let mut edge_offsets = vec![0u32];
        let mut owner = Vec::new();
        for (i, g) in links.iter().enumerate() {
            offsets.push(offsets[i] + g.n() as u32);
            edge_offsets.push(edge_offsets[i] + g.edge_count() as u32);
            owner.extend(std::iter::repeat_n(i as u32, g.n()));
        }
        LinkArrangement { names, links, offsets, owner, edge_offsets }
    }

    /// Arrangement of builtin links, e.g. `["mk16"]`.
    pub fn builtin(names: &[&str]) -> Result<Self, crate::error::GraphError> {
        let links = names
            .iter()
            .map(|&n| Graph::builtin(n).map(|g| (n.to_string(), g)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(links))
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn link(&self, i: usize) -> &Graph {
        &self.links[i]
    }

    pub fn links(&self) -> &[Graph] {
        &self.links
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Global index range start of link `i`.
    pub fn offset(&self, i: usize) -> u32 {
        self.offsets[i]
    }

    /// Number of global link vertices.
    pub fn total(&self) -> u32 {
        *self.offsets.last().unwrap()
    }

    pub fn edge_total(&self) -> u32 {
        *self.edge_offsets.last().unwrap()
    }

    /// `(link index, local vertex)` of a global link vertex.
    #[inline]
    pub fn locate(&self, v: u32) -> Option<(usize, u32)> {
        let link = *self.owner.get(v as usize)? as usize;
        Some((link, v - self.offsets[link]))
    }

    /// Global id of the link edge `{a, b}`, if both lie in one link and are
    /// adjacent there. Ids are ordered by link, then by sorted local pair.
    #[inline]
    pub fn edge_id(&self, a: u32, b: u32) -> Option<u32> {
        let (la, xa) = self.locate(a)?;
        let (lb, xb) = self.locate(b)?;
        if la != lb {
            return None;
        }
        let idx = self.links[la].edge_index(xa, xb)?;
        Some(self.edge_offsets[la] + idx as u32)
    }

    /// Link index and global endpoints of an edge id.
    pub fn edge(&self, id: u32) -> (usize, u32, u32) {
        let link = self.edge_offsets.partition_point(|&o| o <= id) - 1;
        let (a, b) = self.links[link].edges()[(id - self.edge_offsets[link]) as usize];
        (link, a + self.offsets[link], b + self.offsets[link])
    }

    pub fn link_of_edge(&self, id: u32) -> usize {
        self.edge_offsets.partition_point(|&o| o <= id) - 1
    }

    /// Checks the corner condition and intra-face compatibility, returning
    /// the three corner edge ids.
    pub fn face_edges(&self, f: &WiredFace) -> Result<[u32; 3], WiredError> {
        for w in f.wires() {
            for v in [w.a, w.b] {
                if v >= self.total() {
                    return Err(WiredError::VertexOutOfRange { vertex: v, total: self.total() });
                }
            }
        }
        let corners = f.corners();
        let mut ids = [0u32; 3];
        for (k, &(x, y)) in corners.iter().enumerate() {
            ids[k] = self.edge_id(x, y).ok_or(WiredError::CornerNotAnEdge(x, y))?;
        }
        for i in 0..3 {
            for j in i + 1..3 {
                if ids[i] == ids[j] {
                    let (x, y) = corners[i];
                    return Err(WiredError::RepeatedCorner(x, y));
                }
                let (u, v) = (f.0[i], f.0[j]);
                if !u.compatible(&v) {
                    return Err(WiredError::IncompatibleWires(u.a, u.b, v.a, v.b));
                }
            }
        }
        Ok(ids)
    }
}

/// One CW edge, seen as a pair of distinct edge-ends (global link vertices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Wire {
    a: u32,
    b: u32,
}

impl Wire {
    pub fn new(a: u32, b: u32) -> Result<Self, WiredError> {
        if a == b {
            return Err(WiredError::DegenerateWire(a));
        }
        Ok(Wire { a, b })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn reversed(self) -> Wire {
        Wire { a: self.b, b: self.a }
    }

    /// The unordered class `{a, b}` as `(min, max)`.
    pub fn class(&self) -> (u32, u32) {
        (self.a.min(self.b), self.a.max(self.b))
    }

    /// Equal, mutually inverse, or vertex-disjoint.
    pub fn compatible(&self, other: &Wire) -> bool {
        self == other
            || *self == other.reversed()
            || (self.a != other.a && self.a != other.b && self.b != other.a && self.b != other.b)
    }

    pub(crate) fn map(self, f: impl Fn(u32) -> u32) -> Wire {
        Wire { a: f(self.a), b: f(self.b) }
    }
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Free-function form of [`Wire::compatible`].
pub fn wires_compatible(u: &Wire, v: &Wire) -> bool {
    u.compatible(v)
}

/// A triangle given by its three sides `(w1, w2, w3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WiredFace([Wire; 3]);

impl WiredFace {
    pub fn new(w1: Wire, w2: Wire, w3: Wire) -> Self {
        WiredFace([w1, w2, w3])
    }

    pub fn from_pairs(pairs: [(u32, u32); 3]) -> Result<Self, WiredError> {
        Ok(WiredFace([
            Wire::new(pairs[0].0, pairs[0].1)?,
            Wire::new(pairs[1].0, pairs[1].1)?,
            Wire::new(pairs[2].0, pairs[2].1)?,
        ]))
    }

    pub fn wires(&self) -> &[Wire; 3] {
        &self.0
    }

    /// `({b1,a2}, {b2,a3}, {b3,a1})`, each as `(min, max)`.
    pub fn corners(&self) -> [(u32, u32); 3] {
        let w = &self.0;
        let pair = |x: u32, y: u32| (x.min(y), x.max(y));
        [pair(w[0].b, w[1].a), pair(w[1].b, w[2].a), pair(w[2].b, w[0].a)]
    }

    /// The same boundary read backwards: `((b3,a3), (b2,a2), (b1,a1))`.
    pub fn reflected(&self) -> WiredFace {
        let w = &self.0;
        WiredFace([w[2].reversed(), w[1].reversed(), w[0].reversed()])
    }

    pub fn rotated(&self, k: usize) -> WiredFace {
        let w = &self.0;
        WiredFace([w[k % 3], w[(k + 1) % 3], w[(k + 2) % 3]])
    }

    pub fn as_tuple(&self) -> [u32; 6] {
        let w = &self.0;
        [w[0].a, w[0].b, w[1].a, w[1].b, w[2].a, w[2].b]
    }

    /// Least of the three rotations of the face and of its reflection,
    /// compared as 6-tuples.
    pub fn normalized(&self) -> WiredFace {
        let r = self.reflected();
        (0..3)
            .flat_map(|k| [self.rotated(k), r.rotated(k)])
            .min_by_key(|f| f.as_tuple())
            .unwrap()
    }

    pub(crate) fn map(&self, f: impl Fn(u32) -> u32 + Copy) -> WiredFace {
        WiredFace([self.0[0].map(f), self.0[1].map(f), self.0[2].map(f)])
    }
}

impl fmt::Display for WiredFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

/// Which face corner covers a link edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CornerRef {
    pub face: u32,
    pub corner: u8,
}

/// Links plus a set of pairwise compatible faces, each link edge covered at
/// most once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialWiredComplex {
    arrangement: Arc<LinkArrangement>,
    faces: Vec<WiredFace>,
    face_edges: Vec<[u32; 3]>,
    coverage: Vec<Option<CornerRef>>,
    /// Wire class registry: the other end of the class containing `v`.
    partner: Vec<Option<u32>>,
    /// Number of face sides touching each link vertex.
    sides: Vec<u32>,
    covered: usize,
}

impl PartialWiredComplex {
    pub fn new(arrangement: Arc<LinkArrangement>) -> Self {
        let total = arrangement.total() as usize;
        let edges = arrangement.edge_total() as usize;
        PartialWiredComplex {
            arrangement,
            faces: Vec::new(),
            face_edges: Vec::new(),
            coverage: vec![None; edges],
            partner: vec![None; total],
            sides: vec![0; total],
            covered: 0,
        }
    }

    pub fn arrangement(&self) -> &Arc<LinkArrangement> {
        &self.arrangement
    }

    /// Faces in the order they were added.
    pub fn faces(&self) -> &[WiredFace] {
        &self.faces
    }

    pub fn coverage(&self, edge_id: u32) -> Option<CornerRef> {
        self.coverage[edge_id as usize]
    }

    /// The wire class of `v`, as the partner end, or `None` if unassigned.
    pub fn registry(&self, v: u32) -> Option<u32> {
        self.partner[v as usize]
    }

    /// Registered wire classes as sorted `(min, max)` pairs.
    pub fn wire_classes(&self) -> Vec<(u32, u32)> {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.filter(|&p| (v as u32) < p).map(|p| (v as u32, p)))
            .collect()
    }

    /// Number of face sides (with multiplicity) lying on the class of `v`.
    pub fn class_occurrences(&self, v: u32) -> u32 {
        self.sides[v as usize]
    }

    pub fn uncovered_count(&self) -> usize {
        self.coverage.len() - self.covered
    }

    /// Least uncovered link edge id.
    pub fn first_uncovered(&self) -> Option<u32> {
        self.coverage.iter().position(Option::is_none).map(|i| i as u32)
    }

    pub fn is_complete(&self) -> bool {
        self.covered == self.coverage.len()
    }

    #[inline]
    fn wire_fits(&self, w: &Wire) -> bool {
        self.partner[w.a as usize].is_none_or(|p| p == w.b) && self.partner[w.b as usize].is_none_or(|p| p == w.a)
    }

    /// Compatibility test for a face already known to be well formed.
    #[inline]
    pub(crate) fn fits(&self, f: &WiredFace, edges: &[u32; 3]) -> bool {
        edges.iter().all(|&e| self.coverage[e as usize].is_none()) && f.wires().iter().all(|w| self.wire_fits(w))
    }

    /// True iff `f` is well formed, its corners are uncovered, and its wires
    /// agree with every registered wire.
    pub fn face_compatible(&self, f: &WiredFace) -> bool {
        match self.arrangement.face_edges(f) {
            Ok(edges) => self.fits(f, &edges),
            Err(_) => false,
        }
    }

    pub fn add_face(&mut self, f: WiredFace) -> Result<(), WiredError> {
        let edges = self.arrangement.face_edges(&f)?;
        if !self.fits(&f, &edges) {
            return Err(WiredError::IncompatibleFace(f.to_string()));
        }
        self.push(f, edges);
        Ok(())
    }

    pub(crate) fn push(&mut self, f: WiredFace, edges: [u32; 3]) {
        let face = self.faces.len() as u32;
        for (corner, &e) in edges.iter().enumerate() {
            self.coverage[e as usize] = Some(CornerRef { face, corner: corner as u8 });
        }
        self.covered += 3;
        for w in f.wires() {
            self.partner[w.a as usize] = Some(w.b);
            self.partner[w.b as usize] = Some(w.a);
            self.sides[w.a as usize] += 1;
            self.sides[w.b as usize] += 1;
        }
        self.faces.push(f);
        self.face_edges.push(edges);
    }

    pub fn remove_last_face(&mut self) -> Result<WiredFace, WiredError> {
        let f = self.faces.pop().ok_or(WiredError::Empty)?;
        let edges = self.face_edges.pop().unwrap();
        for &e in &edges {
            self.coverage[e as usize] = None;
        }
        self.covered -= 3;
        for w in f.wires() {
            for v in [w.a, w.b] {
                self.sides[v as usize] -= 1;
                if self.sides[v as usize] == 0 {
                    self.partner[v as usize] = None;
                }
            }
        }
        Ok(f)
    }

    /// Freezes a complete complex, keeping the face order.
    pub fn to_complete(&self) -> Result<WiredComplex, WiredError> {
        if !self.is_complete() {
            return Err(WiredError::Incomplete { uncovered: self.uncovered_count() });
        }
        Ok(WiredComplex { arrangement: self.arrangement.clone(), faces: self.faces.clone() })
    }
}

/// A complete wired complex: every link edge covered exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiredComplex {
    arrangement: Arc<LinkArrangement>,
    faces: Vec<WiredFace>,
}

impl WiredComplex {
    /// Validates `faces` (in order) and checks completeness.
    pub fn new(arrangement: Arc<LinkArrangement>, faces: Vec<WiredFace>) -> Result<Self, WiredError> {
        let mut p = PartialWiredComplex::new(arrangement);
        for f in faces {
            p.add_face(f)?;
        }
        p.to_complete()
    }

    pub fn arrangement(&self) -> &Arc<LinkArrangement> {
        &self.arrangement
    }

    pub fn faces(&self) -> &[WiredFace] {
        &self.faces
    }

    /// Normalized faces in sorted order; two complexes over one arrangement
    /// are equal as cell complexes iff these agree.
    pub fn normalized_faces(&self) -> Vec<WiredFace> {
        let mut faces: Vec<_> = self.faces.iter().map(WiredFace::normalized).collect();
        faces.sort_unstable();
        faces
    }

    /// Faces relabeled by a global vertex map, normalized and sorted.
    pub fn relabeled_normalized(&self, map: &[u32]) -> Vec<WiredFace> {
        let mut faces: Vec<_> = self.faces.iter().map(|f| f.map(|v| map[v as usize]).normalized()).collect();
        faces.sort_unstable();
        faces
    }

    /// Complex with every link vertex `v` renamed to `map[v]`. The map must
    /// send each link onto a link isomorphically (not checked here; the
    /// result is revalidated).
    pub fn relabeled(&self, map: &[u32]) -> Result<WiredComplex, WiredError> {
        let faces = self.faces.iter().map(|f| f.map(|v| map[v as usize])).collect();
        WiredComplex::new(self.arrangement.clone(), faces)
    }

    /// Wire classes in order of first occurrence (faces in order, sides
    /// `w1, w2, w3`), each with the direction it is first met in.
    pub fn wire_classes_by_occurrence(&self) -> Vec<Wire> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for f in &self.faces {
            for w in f.wires() {
                if seen.insert(w.class()) {
                    out.push(*w);
                }
            }
        }
        out
    }

    /// Side count per wire class, keyed by `(min, max)`.
    pub fn class_occurrences(&self) -> std::collections::BTreeMap<(u32, u32), usize> {
        let mut counts = std::collections::BTreeMap::new();
        for f in &self.faces {
            for w in f.wires() {
                *counts.entry(w.class()).or_insert(0) += 1;
            }
        }
        counts
    }

    pub(crate) fn from_parts_unchecked(arrangement: Arc<LinkArrangement>, faces: Vec<WiredFace>) -> Self {
        WiredComplex { arrangement, faces }
    }
}
