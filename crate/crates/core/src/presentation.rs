//! Presentation complexes: triangles as cyclic words in signed edge labels.
//!
//! Edge labels run from 1 to `edge_count`; `-l` traverses edge `l` against
//! its chosen direction. Each label has two edge-ends ("slots"): the
//! initial and the terminal one. The link of a CW vertex has the slots at
//! that vertex as its vertices and the face corners as its edges.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::error::PresentationError;
use crate::graph::Graph;
use crate::wired::WiredComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Initial,
    Terminal,
}

impl End {
    fn tag(self) -> char {
        match self {
            End::Initial => 'i',
            End::Terminal => 't',
        }
    }
}

/// An edge-end: a label together with one of its two ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub label: u32,
    pub end: End,
}

impl Slot {
    fn index(self) -> usize {
        2 * (self.label as usize - 1) + (self.end == End::Terminal) as usize
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, self.end.tag())
    }
}

/// Slot where traversal of a signed side starts.
fn start_slot(side: i32) -> Slot {
    let label = side.unsigned_abs();
    Slot { label, end: if side > 0 { End::Initial } else { End::Terminal } }
}

/// Slot where traversal of a signed side finishes.
fn finish_slot(side: i32) -> Slot {
    let label = side.unsigned_abs();
    Slot { label, end: if side > 0 { End::Terminal } else { End::Initial } }
}

/// Endpoint vertices `(initial, terminal)` of one edge label.
pub type EdgeEnds = (u32, u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationComplex {
    edge_count: u32,
    faces: Vec<[i32; 3]>,
    vertices: Option<Vec<EdgeEnds>>,
}

impl PresentationComplex {
    /// Validates labels and, when given, the vertex assignment (indexed by
    /// `label - 1`).
    pub fn new(
        edge_count: u32,
        faces: Vec<[i32; 3]>,
        vertices: Option<Vec<EdgeEnds>>,
    ) -> Result<Self, PresentationError> {
        let mut used = vec![false; edge_count as usize];
        for (k, f) in faces.iter().enumerate() {
            for &s in f {
                if s == 0 {
                    return Err(PresentationError::ZeroLabel { face: k });
                }
                let l = s.unsigned_abs();
                if l > edge_count {
                    return Err(PresentationError::LabelOutOfRange { label: l, edges: edge_count });
                }
                used[l as usize - 1] = true;
            }
        }
        if let Some(l) = used.iter().position(|u| !u) {
            return Err(PresentationError::UnusedLabel(l as u32 + 1));
        }
        let p = PresentationComplex { edge_count, faces, vertices };
        if let Some(v) = &p.vertices {
            assert_eq!(v.len(), edge_count as usize, "one vertex pair per label");
            for (k, f) in p.faces.iter().enumerate() {
                for i in 0..3 {
                    let (s, t) = (f[i], f[(i + 1) % 3]);
                    let end = p.slot_vertex(finish_slot(s)).unwrap();
                    let start = p.slot_vertex(start_slot(t)).unwrap();
                    if end != start {
                        return Err(PresentationError::VertexMismatch { face: k, side: i, end, start });
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn edge_count(&self) -> u32 {
        self.edge_count
    }

    pub fn faces(&self) -> &[[i32; 3]] {
        &self.faces
    }

    pub fn vertices(&self) -> Option<&[EdgeEnds]> {
        self.vertices.as_deref()
    }

    pub fn vertex_count(&self) -> Option<usize> {
        self.vertices.as_ref().map(|v| v.iter().map(|&(a, b)| a.max(b) as usize + 1).max().unwrap_or(0))
    }

    fn slot_vertex(&self, s: Slot) -> Option<u32> {
        let (i, t) = self.vertices.as_ref()?[s.label as usize - 1];
        Some(if s.end == End::Initial { i } else { t })
    }

    /// Face words in the bracketed list form `[[1,1,2],[3,1,4]]`.
    pub fn words_bracketed(&self) -> String {
        let words: Vec<String> =
            self.faces.iter().map(|f| format!("[{},{},{}]", f[0], f[1], f[2])).collect();
        format!("[{}]", words.join(","))
    }

    /// Vertex classes from merging, at every corner, the slot where one side
    /// finishes with the slot where the next side starts. Vertices are
    /// numbered by their least slot.
    pub fn infer_vertices(&self) -> Vec<EdgeEnds> {
        let slots = 2 * self.edge_count as usize;
        let mut uf = UnionFind::<usize>::new(slots);
        for f in &self.faces {
            for i in 0..3 {
                uf.union(finish_slot(f[i]).index(), start_slot(f[(i + 1) % 3]).index());
            }
        }
        let mut ids = HashMap::new();
        let mut vertex = vec![0u32; slots];
        for (s, v) in vertex.iter_mut().enumerate() {
            let next = ids.len() as u32;
            *v = *ids.entry(uf.find(s)).or_insert(next);
        }
        (0..self.edge_count as usize).map(|l| (vertex[2 * l], vertex[2 * l + 1])).collect()
    }

    /// The same complex with vertices replaced by [`Self::infer_vertices`].
    pub fn with_inferred_vertices(&self) -> PresentationComplex {
        PresentationComplex {
            edge_count: self.edge_count,
            faces: self.faces.clone(),
            vertices: Some(self.infer_vertices()),
        }
    }

    /// Computes the link at every vertex (vertices must be present).
    pub fn links(&self) -> Result<LinkComputation, PresentationError> {
        let vertices = self.vertices.as_ref().ok_or(PresentationError::MissingVertices)?;
        let count = self.vertex_count().unwrap();
        let mut slots: Vec<Vec<Slot>> = vec![Vec::new(); count];
        for (l, &(i, t)) in vertices.iter().enumerate() {
            let label = l as u32 + 1;
            slots[i as usize].push(Slot { label, end: End::Initial });
            slots[t as usize].push(Slot { label, end: End::Terminal });
        }
        for s in &mut slots {
            s.sort_unstable();
        }
        let mut corners: Vec<Vec<(Slot, Slot)>> = vec![Vec::new(); count];
        for (k, f) in self.faces.iter().enumerate() {
            for i in 0..3 {
                let (x, y) = (finish_slot(f[i]), start_slot(f[(i + 1) % 3]));
                if x == y {
                    return Err(PresentationError::CornerLoop {
                        face: k,
                        side: i,
                        next: (i + 1) % 3,
                        label: x.label,
                        end: x.end.tag(),
                    });
                }
                let v = self.slot_vertex(x).unwrap();
                corners[v as usize].push((x.min(y), x.max(y)));
            }
        }
        let links = slots
            .into_iter()
            .zip(corners)
            .enumerate()
            .map(|(v, (slots, mut pairs))| {
                let local = |s: &Slot| slots.binary_search(s).unwrap() as u32;
                let corner_count = pairs.len();
                pairs.sort_unstable();
                let mut duplicates = Vec::new();
                pairs.dedup_by(|a, b| {
                    let dup = a == b;
                    if dup {
                        duplicates.push(*a);
                    }
                    dup
                });
                let edges: Vec<_> = pairs.iter().map(|(x, y)| (local(x), local(y))).collect();
                let graph = Graph::new(slots.len(), edges).expect("corners are distinct non-loop slot pairs");
                VertexLink { vertex: v as u32, slots, graph, corner_count, duplicate_corners: duplicates }
            })
            .collect();
        Ok(LinkComputation { links })
    }

    /// Matches every vertex link against the named targets.
    pub fn verify_links(&self, targets: &[(String, Graph)]) -> Result<LinkVerification, PresentationError> {
        let links = self.links()?;
        let verdicts = links
            .links
            .iter()
            .map(|vl| {
                let matched = if vl.duplicate_corners.is_empty() {
                    targets.iter().position(|(_, g)| vl.graph.isomorphism_to(g).is_some())
                } else {
                    None
                };
                LinkVerdict { vertex: vl.vertex, matched }
            })
            .collect();
        Ok(LinkVerification { names: targets.iter().map(|(n, _)| n.clone()).collect(), verdicts })
    }

    /// Solves for label flips and per-face readings making every word
    /// positive. With `allow_reflection` false, faces must be read as given.
    pub fn positive_orientation(&self, allow_reflection: bool) -> Option<Orientation> {
        // nodes: faces 0..F, labels F..F+L, plus an anchor pinned to 0.
        // each side s of face f asks flip(label) ^ reversed(f) == [s < 0].
        let nf = self.faces.len();
        let anchor = nf + self.edge_count as usize;
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); anchor + 1];
        let mut link = |x: usize, y: usize, parity: bool| {
            adj[x].push((y, parity));
            adj[y].push((x, parity));
        };
        for (k, f) in self.faces.iter().enumerate() {
            for &s in f {
                link(k, nf + s.unsigned_abs() as usize - 1, s < 0);
            }
            if !allow_reflection {
                link(k, anchor, false);
            }
        }
        let mut value: Vec<Option<bool>> = vec![None; anchor + 1];
        let roots = std::iter::once(anchor).chain(0..anchor);
        for root in roots {
            if value[root].is_some() {
                continue;
            }
            value[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                let vx = value[x].unwrap();
                for &(y, parity) in &adj[x] {
                    match value[y] {
                        None => {
                            value[y] = Some(vx ^ parity);
                            queue.push_back(y);
                        }
                        Some(vy) if vy != vx ^ parity => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(Orientation {
            reversed: value[..nf].iter().map(|v| v.unwrap()).collect(),
            flipped: value[nf..anchor].iter().map(|v| v.unwrap()).collect(),
        })
    }

    /// Applies label flips and face reversals.
    pub fn reoriented(&self, o: &Orientation) -> PresentationComplex {
        let sign = |s: i32| if o.flipped[s.unsigned_abs() as usize - 1] { -s } else { s };
        let faces = self
            .faces
            .iter()
            .zip(&o.reversed)
            .map(|(f, &rev)| {
                let f = [sign(f[0]), sign(f[1]), sign(f[2])];
                if rev {
                    [-f[2], -f[1], -f[0]]
                } else {
                    f
                }
            })
            .collect();
        let vertices = self.vertices.as_ref().map(|v| {
            v.iter().zip(&o.flipped).map(|(&(i, t), &fl)| if fl { (t, i) } else { (i, t) }).collect()
        });
        PresentationComplex { edge_count: self.edge_count, faces, vertices }
    }
}

/// A solution of the positivity system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    /// Per face: read the boundary backwards.
    pub reversed: Vec<bool>,
    /// Per label (index `label - 1`): reverse the edge direction.
    pub flipped: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct VertexLink {
    pub vertex: u32,
    /// Edge-ends at this vertex; graph vertex `i` is `slots[i]`.
    pub slots: Vec<Slot>,
    pub graph: Graph,
    pub corner_count: usize,
    /// Corners that repeat an earlier corner (the link would be a multigraph).
    pub duplicate_corners: Vec<(Slot, Slot)>,
}

#[derive(Clone, Debug)]
pub struct LinkComputation {
    pub links: Vec<VertexLink>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinkVerdict {
    pub vertex: u32,
    /// Index of the first matching target.
    pub matched: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct LinkVerification {
    pub names: Vec<String>,
    pub verdicts: Vec<LinkVerdict>,
}

impl LinkVerification {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.matched.is_some())
    }

    /// Number of vertices matched by each target name, plus `none` for
    /// failures.
    pub fn tally(&self) -> BTreeMap<String, usize> {
        let mut t = BTreeMap::new();
        for v in &self.verdicts {
            let name = v.matched.map_or("none", |i| self.names[i].as_str());
            *t.entry(name.to_string()).or_insert(0) += 1;
        }
        t
    }
}

/// Labels wire classes by first occurrence (faces in order, sides
/// `w1, w2, w3`); the first-met direction of a class is its positive one.
pub fn wired_to_presentation(w: &WiredComplex) -> PresentationComplex {
    let arr = w.arrangement();
    let mut label_of: HashMap<(u32, u32), (u32, u32)> = HashMap::new();
    let mut vertices = Vec::new();
    let faces = w
        .faces()
        .iter()
        .map(|f| {
            let mut word = [0i32; 3];
            for (k, wire) in f.wires().iter().enumerate() {
                let next = label_of.len() as u32 + 1;
                let &mut (label, from) = label_of.entry(wire.class()).or_insert_with(|| {
                    let link = |v| arr.locate(v).unwrap().0 as u32;
                    vertices.push((link(wire.a()), link(wire.b())));
                    (next, wire.a())
                });
                word[k] = if wire.a() == from { label as i32 } else { -(label as i32) };
            }
            word
        })
        .collect();
    PresentationComplex { edge_count: vertices.len() as u32, faces, vertices: Some(vertices) }
}

/// Whether some choice of class directions and per-face readings makes
/// every face traverse all its wires positively.
pub fn positively_orientable(w: &WiredComplex) -> bool {
    wired_to_presentation(w).positive_orientation(true).is_some()
}

/// Like [`positively_orientable`] but faces must be read as stored.
pub fn positively_orientable_strict(w: &WiredComplex) -> bool {
    wired_to_presentation(w).positive_orientation(false).is_some()
}

/// A triangle with edge `edges[i]` joining `vertices[i]` to `vertices[i+1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypedTriangle {
    pub edges: [u32; 3],
    pub vertices: [u32; 3],
}

/// Directs each edge from its lower-numbered endpoint to the higher one and
/// walks every triangle in the given order.
pub fn typed_triangles_to_presentation(tris: &[TypedTriangle]) -> Result<PresentationComplex, PresentationError> {
    let edge_count = tris.iter().flat_map(|t| t.edges).max().unwrap_or(0);
    let mut ends: Vec<Option<(u32, u32)>> = vec![None; edge_count as usize];
    let mut faces = Vec::with_capacity(tris.len());
    for (k, t) in tris.iter().enumerate() {
        let mut word = [0i32; 3];
        for (i, slot) in word.iter_mut().enumerate() {
            let (label, x, y) = (t.edges[i], t.vertices[i], t.vertices[(i + 1) % 3]);
            if label == 0 {
                return Err(PresentationError::ZeroLabel { face: k });
            }
            if x == y {
                return Err(PresentationError::LoopLabel { triangle: k, label, vertex: x });
            }
            let pair = (x.min(y), x.max(y));
            match ends[label as usize - 1] {
                None => ends[label as usize - 1] = Some(pair),
                Some(p) if p != pair => {
                    return Err(PresentationError::InconsistentEndpoints { label, first: p, second: pair })
                }
                Some(_) => {}
            }
            *slot = if x < y { label as i32 } else { -(label as i32) };
        }
        faces.push(word);
    }
    if let Some(l) = ends.iter().position(Option::is_none) {
        return Err(PresentationError::UnusedLabel(l as u32 + 1));
    }
    let vertices = ends.into_iter().map(Option::unwrap).collect();
    PresentationComplex::new(edge_count, faces, Some(vertices))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_triangle_has_three_vertices() {
        let p = PresentationComplex::new(3, vec![[1, 2, 3]], None).unwrap();
        let v = p.infer_vertices();
        let distinct: std::collections::BTreeSet<u32> = v.iter().flat_map(|&(a, b)| [a, b]).collect();
        assert_eq!(distinct.len(), 3);
    }

    #[test]
    fn label_validation() {
        assert_eq!(
            PresentationComplex::new(2, vec![[1, 0, 2]], None),
            Err(PresentationError::ZeroLabel { face: 0 })
        );
        assert_eq!(PresentationComplex::new(3, vec![[1, 1, 2]], None), Err(PresentationError::UnusedLabel(3)));
        assert!(matches!(
            PresentationComplex::new(2, vec![[1, 1, 3]], None),
            Err(PresentationError::LabelOutOfRange { label: 3, .. })
        ));
    }

    #[test]
    fn mismatched_explicit_vertices_rejected() {
        // edge 1: 0 -> 1, edge 2: 1 -> 2, edge 3: 0 -> 2 would need 2 -> 0
        let r = PresentationComplex::new(3, vec![[1, 2, 3]], Some(vec![(0, 1), (1, 2), (0, 2)]));
        assert!(matches!(r, Err(PresentationError::VertexMismatch { .. })));
        let ok = PresentationComplex::new(3, vec![[1, 2, -3]], Some(vec![(0, 1), (1, 2), (0, 2)]));
        assert!(ok.is_ok());
    }

    #[test]
    fn corner_loop_reported() {
        // side 1 followed by -1 joins the terminal end of 1 to itself
        let p = PresentationComplex::new(2, vec![[1, -1, 2]], None).unwrap().with_inferred_vertices();
        assert!(matches!(p.links(), Err(PresentationError::CornerLoop { .. })));
    }

    #[test]
    fn links_need_vertices() {
        let p = PresentationComplex::new(1, vec![[1, 1, 1]], None).unwrap();
        assert!(matches!(p.links(), Err(PresentationError::MissingVertices)));
    }

    #[test]
    fn torus_like_words_orientation() {
        // [1,2,3] and [-1,-2,-3]: flipping the second face's reading makes
        // it [3,2,1], all positive.
        let p = PresentationComplex::new(3, vec![[1, 2, 3], [-1, -2, -3]], None).unwrap();
        assert!(p.positive_orientation(true).is_some());
        assert!(p.positive_orientation(false).is_none());
        // a face using label 1 in both directions can never be positive
        let q = PresentationComplex::new(2, vec![[1, -1, 2]], None).unwrap();
        assert!(q.positive_orientation(true).is_none());
    }

    #[test]
    fn reoriented_words_are_positive() {
        let p = PresentationComplex::new(3, vec![[1, -2, 3], [-3, 2, -1]], None).unwrap();
        let o = p.positive_orientation(true).unwrap();
        let q = p.reoriented(&o);
        assert!(q.faces().iter().flatten().all(|&s| s > 0), "{:?}", q.faces());
    }

    #[test]
    fn typed_triangle_rules() {
        let t = |e: [u32; 3], v: [u32; 3]| TypedTriangle { edges: e, vertices: v };
        let p = typed_triangles_to_presentation(&[t([1, 2, 3], [0, 1, 2])]).unwrap();
        // 0->1 forward, 1->2 forward, 2->0 against 0->2
        assert_eq!(p.faces(), &[[1, 2, -3]]);
        assert_eq!(p.vertices().unwrap(), &[(0, 1), (1, 2), (0, 2)]);
        let shared_ok = [t([1, 2, 3], [0, 1, 2]), t([4, 5, 3], [0, 1, 2])];
        assert!(typed_triangles_to_presentation(&shared_ok).is_ok());
        let shared_bad = [t([1, 2, 3], [0, 1, 2]), t([4, 5, 3], [0, 1, 3])];
        assert!(matches!(
            typed_triangles_to_presentation(&shared_bad),
            Err(PresentationError::InconsistentEndpoints { label: 3, .. })
        ));
        assert!(matches!(
            typed_triangles_to_presentation(&[t([1, 2, 3], [0, 0, 2])]),
            Err(PresentationError::LoopLabel { .. })
        ));
    }
}
