//! Finite simple graphs used as prescribed vertex links.
//!
//! Besides the [`Graph`] container this module provides the builtin link
//! types (Möbius–Kantor, `K_{3,3}`, the generalized quadrangle `GQ(2,2)`,
//! cycles), girth, and backtracking automorphism / isomorphism search.

use std::collections::VecDeque;
use std::fmt;
use std::ops::ControlFlow;

use itertools::Itertools;

use crate::error::GraphError;

/// Default cap on the number of automorphisms materialized for one graph.
pub const DEFAULT_AUT_BOUND: usize = 1_000_000;

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// Sorted, each pair stored as `(min, max)`.
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    matrix: Vec<bool>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::Loop(a));
            }
            if a as usize >= n || b as usize >= n {
                return Err(GraphError::EndpointOutOfRange { a, b, n });
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(&(a, b)) = list.iter().tuple_windows().find(|(x, y)| x == y).map(|(x, _)| x) {
            return Err(GraphError::DuplicateEdge(a, b));
        }
        let mut adj = vec![Vec::new(); n];
        let mut matrix = vec![false; n * n];
        for &(a, b) in &list {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
            matrix[a as usize * n + b as usize] = true;
            matrix[b as usize * n + a as usize] = true;
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj, matrix })
    }

    /// Resolves one of the builtin names: `mk16`, `k33`, `gq22` or `cycle:<n>`.
    pub fn builtin(name: &str) -> Result<Self, GraphError> {
        match name {
            "mk16" => Ok(Self::mobius_kantor()),
            "k33" => Ok(Self::complete_bipartite(3, 3)),
            "gq22" => Ok(Self::gq22_incidence()),
            _ => {
                if let Some(n) = name.strip_prefix("cycle:") {
                    let n: usize = n.parse().map_err(|_| GraphError::UnknownBuiltin(name.into()))?;
                    if n < 3 {
                        return Err(GraphError::UnknownBuiltin(name.into()));
                    }
                    Ok(Self::cycle(n))
                } else {
                    Err(GraphError::UnknownBuiltin(name.into()))
                }
            }
        }
    }

    /// Names accepted by [`Graph::builtin`] (cycles excluded).
    pub fn builtin_names() -> &'static [&'static str] {
        &["mk16", "k33", "gq22"]
    }

    pub fn cycle(n: usize) -> Self {
        let n32 = n as u32;
        Self::new(n, (0..n32).map(|i| (i, (i + 1) % n32))).expect("cycle is simple for n >= 3")
    }

    /// The Möbius–Kantor graph: LCF `[5,-5]^8` on the 16-cycle.
    pub fn mobius_kantor() -> Self {
        Self::from_lcf(16, &[5, -5])
    }

    /// Hamiltonian graph from LCF notation: the `n`-cycle plus chords
    /// `i -- i + shifts[i mod len]`.
    pub fn from_lcf(n: usize, shifts: &[i64]) -> Self {
        let nn = n as i64;
        let mut edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        for i in 0..nn {
            let j = (i + shifts[(i as usize) % shifts.len()]).rem_euclid(nn);
            edges.push((i.min(j) as u32, i.max(j) as u32));
        }
        let edges: Vec<_> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).sorted().dedup().collect();
        Self::new(n, edges).expect("LCF chords form a simple graph")
    }

    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let edges = (0..p as u32).cartesian_product(p as u32..(p + q) as u32);
        Self::new(p + q, edges).expect("complete bipartite graph is simple")
    }

    /// Incidence graph of `GQ(2,2)`: points are the 2-subsets of a 6-set,
    /// lines are its perfect matchings; points are numbered first, each
    /// side in lexicographic order.
    pub fn gq22_incidence() -> Self {
        let points: Vec<(u32, u32)> = (0..6u32).tuple_combinations().collect();
        let mut lines: Vec<[(u32, u32); 3]> = Vec::new();
        for &p in &points {
            for &q in &points {
                for &r in &points {
                    let mut m = [p, q, r];
                    m.sort_unstable();
                    let mut used = [m[0].0, m[0].1, m[1].0, m[1].1, m[2].0, m[2].1];
                    used.sort_unstable();
                    if used == [0, 1, 2, 3, 4, 5] && !lines.contains(&m) {
                        lines.push(m);
                    }
                }
            }
        }
        lines.sort_unstable();
        let np = points.len() as u32;
        let mut edges = Vec::new();
        for (li, line) in lines.iter().enumerate() {
            for pair in line {
                let pi = points.iter().position(|p| p == pair).unwrap() as u32;
                edges.push((pi, np + li as u32));
            }
        }
        Self::new(points.len() + lines.len(), edges).expect("incidence graph is simple")
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted order, each as `(min, max)`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    #[inline]
    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        (a as usize) < self.n && (b as usize) < self.n && self.matrix[a as usize * self.n + b as usize]
    }

    /// Index of edge `{a, b}` in [`Graph::edges`].
    pub fn edge_index(&self, a: u32, b: u32) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    /// The common degree if the graph is regular (and nonempty).
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|nb| nb.len() == d).then_some(d)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for root in 0..self.n {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            let mut queue = VecDeque::from([root as u32]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if side[w as usize] == u8::MAX {
                        side[w as usize] = 1 - side[u as usize];
                        queue.push_back(w);
                    } else if side[w as usize] == side[u as usize] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The graph obtained by renaming each vertex `v` to `perm[v]`.
    pub fn relabeled(&self, perm: &Permutation) -> Graph {
        let edges = self.edges.iter().map(|&(a, b)| (perm.apply(a), perm.apply(b)));
        Graph::new(self.n, edges).expect("relabeling preserves simplicity")
    }

    /// Length of the shortest cycle.
    pub fn girth(&self) -> Girth {
        let mut best = usize::MAX;
        let mut dist = vec![u32::MAX; self.n];
        let mut parent = vec![u32::MAX; self.n];
        for root in 0..self.n as u32 {
            dist.fill(u32::MAX);
            parent.fill(u32::MAX);
            dist[root as usize] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let du = dist[u as usize];
                if 2 * du as usize + 1 >= best {
                    break;
                }
                for &w in self.neighbors(u) {
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = du + 1;
                        parent[w as usize] = u;
                        queue.push_back(w);
                    } else if parent[u as usize] != w {
                        best = best.min((du + dist[w as usize] + 1) as usize);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// The full automorphism group, sorted lexicographically by image array
    /// (so the identity comes first). Fails once more than `bound` elements
    /// have been found.
    pub fn automorphisms(&self, bound: usize) -> Result<Vec<Permutation>, GraphError> {
        let mut found = Vec::new();
        let mut overflow = false;
        search_isomorphisms(self, self, |map| {
            if found.len() == bound {
                overflow = true;
                return ControlFlow::Break(());
            }
            found.push(Permutation(map.to_vec()));
            ControlFlow::Continue(())
        });
        if overflow {
            return Err(GraphError::TooManyAutomorphisms { bound });
        }
        found.sort_unstable();
        Ok(found)
    }

    /// A vertex bijection `p` with `{a,b}` an edge of `self` iff `{p(a),p(b)}`
    /// is an edge of `other`.
    pub fn isomorphism_to(&self, other: &Graph) -> Option<Permutation> {
        if self.n != other.n || self.edges.len() != other.edges.len() {
            return None;
        }
        let degrees = |g: &Graph| (0..g.n as u32).map(|v| g.degree(v)).sorted().collect::<Vec<_>>();
        if degrees(self) != degrees(other) {
            return None;
        }
        let mut witness = None;
        search_isomorphisms(self, other, |map| {
            witness = Some(Permutation(map.to_vec()));
            ControlFlow::Break(())
        });
        witness
    }

    /// Checks that `p` carries the edge set of `self` exactly onto that of `other`.
    pub fn is_isomorphism(&self, other: &Graph, p: &Permutation) -> bool {
        p.len() == self.n
            && self.n == other.n
            && self.edges.len() == other.edges.len()
            && self.edges.iter().all(|&(a, b)| other.has_edge(p.apply(a), p.apply(b)))
    }
}

/// Convenience wrapper over [`Graph::isomorphism_to`].
pub fn graphs_isomorphic(g: &Graph, h: &Graph) -> Option<Permutation> {
    g.isomorphism_to(h)
}

/// Girth of a graph; forests have infinite girth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

/// A bijection on `0..n`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    pub fn from_images(image: Vec<u32>) -> Result<Self, GraphError> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            if x as usize >= image.len() || std::mem::replace(&mut seen[x as usize], true) {
                return Err(GraphError::NotAPermutation);
            }
        }
        Ok(Permutation(image))
    }

    #[inline]
    pub fn apply(&self, v: u32) -> u32 {
        self.0[v as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.apply(x)).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation(inv)
    }
}

/// Visits every isomorphism `g -> h` (as an image array indexed by vertices
/// of `g`). Vertices of `g` are assigned in BFS order so that, within a
/// connected component, every vertex after the first has an already-mapped
/// neighbour and its candidates are restricted to that neighbour's image's
/// neighbourhood.
pub(crate) fn search_isomorphisms<F>(g: &Graph, h: &Graph, mut visit: F)
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    if g.n != h.n || g.edges.len() != h.edges.len() {
        return;
    }
    let n = g.n;
    let mut order = Vec::with_capacity(n);
    let mut anchor = vec![u32::MAX; n];
    let mut seen = vec![false; n];
    for root in 0..n as u32 {
        if seen[root as usize] {
            continue;
        }
        seen[root as usize] = true;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            for &w in g.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    anchor[w as usize] = u;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];
    let _ = extend(g, h, &order, &anchor, 0, &mut map, &mut used, &mut visit);
}

#[allow(clippy::too_many_arguments)]
fn extend<F>(
    g: &Graph,
    h: &Graph,
    order: &[u32],
    anchor: &[u32],
    depth: usize,
    map: &mut [u32],
    used: &mut [bool],
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    if depth == order.len() {
        return visit(map);
    }
    let v = order[depth];
    let all: Vec<u32>;
    let candidates: &[u32] = if anchor[v as usize] == u32::MAX {
        all = (0..h.n as u32).collect();
        &all
    } else {
        h.neighbors(map[anchor[v as usize] as usize])
    };
    'cand: for &w in candidates {
        if used[w as usize] || g.degree(v) != h.degree(w) {
            continue;
        }
        for &u in &order[..depth] {
            if g.has_edge(u, v) != h.has_edge(map[u as usize], w) {
                continue 'cand;
            }
        }
        map[v as usize] = w;
        used[w as usize] = true;
        let flow = extend(g, h, order, anchor, depth + 1, map, used, visit);
        used[w as usize] = false;
        map[v as usize] = u32::MAX;
        flow?;
    }
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive shortest cycle: smallest `k` such that some sequence of
    /// `k` distinct vertices closes up into a cycle.
    fn brute_girth(g: &Graph) -> Girth {
        fn walk(g: &Graph, path: &mut Vec<u32>, k: usize) -> bool {
            let last = *path.last().unwrap();
            if path.len() == k {
                return g.has_edge(last, path[0]);
            }
            for &w in g.neighbors(last) {
                if w > path[0] && !path.contains(&w) {
                    path.push(w);
                    if walk(g, path, k) {
                        return true;
                    }
                    path.pop();
                }
            }
            false
        }
        for k in 3..=g.n() {
            for v in 0..g.n() as u32 {
                if walk(g, &mut vec![v], k) {
                    return Girth::Finite(k);
                }
            }
        }
        Girth::Infinite
    }

    /// Counts automorphisms by trying every degree-preserving map, vertex by
    /// vertex in index order, without the BFS anchoring.
    fn brute_aut_count(g: &Graph) -> usize {
        fn go(g: &Graph, v: usize, map: &mut Vec<u32>, used: &mut Vec<bool>) -> usize {
            if v == g.n() {
                return 1;
            }
            let mut total = 0;
            for w in 0..g.n() as u32 {
                if used[w as usize] || g.degree(v as u32) != g.degree(w) {
                    continue;
                }
                if (0..v).any(|u| g.has_edge(u as u32, v as u32) != g.has_edge(map[u], w)) {
                    continue;
                }
                map.push(w);
                used[w as usize] = true;
                total += go(g, v + 1, map, used);
                used[w as usize] = false;
                map.pop();
            }
            total
        }
        go(g, 0, &mut Vec::new(), &mut vec![false; g.n()])
    }

    #[test]
    fn mk16_shape() {
        let g = Graph::builtin("mk16").unwrap();
        assert_eq!(g.n(), 16);
        assert_eq!(g.edge_count(), 24);
        assert_eq!(g.regular_degree(), Some(3));
        for (a, b) in [(0, 5), (1, 2), (0, 1), (14, 3)] {
            assert!(g.has_edge(a, b), "{a}-{b}");
        }
        assert!(g.is_bipartite());
    }

    #[test]
    fn gq22_shape() {
        let g = Graph::builtin("gq22").unwrap();
        assert_eq!((g.n(), g.edge_count()), (30, 45));
        assert_eq!(g.regular_degree(), Some(3));
        assert!(g.is_bipartite());
        // points first: vertex 0 is {0,1}, which lies on the matchings
        // {01,23,45}, {01,24,35}, {01,25,34}
        assert_eq!(g.neighbors(0), &[15, 16, 17]);
    }

    #[test]
    fn girth_values() {
        assert_eq!(Graph::builtin("mk16").unwrap().girth(), Girth::Finite(6));
        assert_eq!(Graph::builtin("k33").unwrap().girth(), Girth::Finite(4));
        assert_eq!(Graph::builtin("cycle:7").unwrap().girth(), Girth::Finite(7));
        assert_eq!(Graph::builtin("gq22").unwrap().girth(), Girth::Finite(8));
        let path = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.girth(), Girth::Infinite);
        assert_eq!(Graph::new(0, []).unwrap().girth(), Girth::Infinite);
    }

    #[test]
    fn girth_matches_brute_force_on_builtins() {
        for name in ["mk16", "k33", "cycle:5", "cycle:9"] {
            let g = Graph::builtin(name).unwrap();
            assert_eq!(g.girth(), brute_girth(&g), "{name}");
        }
    }

    #[test]
    fn automorphism_group_orders() {
        let mk = Graph::builtin("mk16").unwrap();
        let k33 = Graph::builtin("k33").unwrap();
        assert_eq!(brute_aut_count(&mk), 96);
        assert_eq!(brute_aut_count(&k33), 72);
        assert_eq!(mk.automorphisms(DEFAULT_AUT_BOUND).unwrap().len(), 96);
        assert_eq!(k33.automorphisms(DEFAULT_AUT_BOUND).unwrap().len(), 72);
        assert_eq!(Graph::builtin("gq22").unwrap().automorphisms(DEFAULT_AUT_BOUND).unwrap().len(), 1440);
        assert_eq!(Graph::cycle(6).automorphisms(DEFAULT_AUT_BOUND).unwrap().len(), 12);
    }

    #[test]
    fn automorphisms_sorted_identity_first() {
        for name in ["mk16", "k33", "cycle:4"] {
            let g = Graph::builtin(name).unwrap();
            let auts = g.automorphisms(DEFAULT_AUT_BOUND).unwrap();
            assert_eq!(auts[0], Permutation::identity(g.n()));
            assert!(auts.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn automorphism_bound_is_reported() {
        let g = Graph::builtin("k33").unwrap();
        assert_eq!(g.automorphisms(10), Err(GraphError::TooManyAutomorphisms { bound: 10 }));
    }

    #[test]
    fn shift_by_two_is_an_mk16_automorphism() {
        let g = Graph::builtin("mk16").unwrap();
        let shift = Permutation::from_images((0..16).map(|i| (i + 2) % 16).collect()).unwrap();
        assert!(g.is_isomorphism(&g, &shift));
    }

    #[test]
    fn isomorphism_basics() {
        let mk = Graph::builtin("mk16").unwrap();
        let k33 = Graph::builtin("k33").unwrap();
        let p = graphs_isomorphic(&mk, &mk).unwrap();
        assert!(mk.is_isomorphism(&mk, &p));
        assert!(graphs_isomorphic(&mk, &k33).is_none());
        // same size, different girth
        let c6 = Graph::cycle(6);
        let two_triangles = Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(graphs_isomorphic(&c6, &two_triangles).is_none());
        assert!(graphs_isomorphic(&two_triangles, &c6).is_none());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::new(3, [(0, 3)]), Err(GraphError::EndpointOutOfRange { .. })));
        assert!(matches!(Graph::builtin("petersen"), Err(GraphError::UnknownBuiltin(_))));
        assert!(Graph::builtin("cycle:2").is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }
}
