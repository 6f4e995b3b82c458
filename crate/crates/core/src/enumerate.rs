//! Exhaustive search for complete wired complexes.
//!
//! The search is an exact cover over link edges: at every node the least
//! uncovered link edge is chosen and the search branches over the
//! remaining candidate faces covering it. Each complete face set is
//! therefore reached along exactly one path. Candidate lists are inherited
//! from the parent and re-filtered after every added face.
//!
//! With the `parallel` feature, subtrees below a fixed split depth run as
//! independent rayon tasks. Their results are concatenated in DFS order, so
//! the emitted sequence is the same as in sequential mode.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::SearchError;
use crate::iso::{CanonicalKey, ClassRecord, ClassRegistry, DedupStrategy, DEFAULT_GROUP_BOUND};
use crate::wired::{LinkArrangement, PartialWiredComplex, WiredComplex, WiredFace};

/// Which links the three corners of a face must lie in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacePattern {
    pub corner_links: [usize; 3],
}

impl FacePattern {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        FacePattern { corner_links: [a, b, c] }
    }

    /// Every ordered triple of link indices.
    pub fn all(links: usize) -> Vec<FacePattern> {
        let mut out = Vec::new();
        for a in 0..links {
            for b in 0..links {
                for c in 0..links {
                    out.push(FacePattern::new(a, b, c));
                }
            }
        }
        out
    }
}

/// A potential face with its corner edge ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub face: WiredFace,
    pub edges: [u32; 3],
}

/// All normalized well-formed faces matching one of `patterns`, sorted.
/// An empty pattern list means every ordered triple of links.
///
/// Faces are built corner by corner: corner `i` is an oriented edge
/// `(b_i, a_{i+1})` of link `corner_links[i]`. Rotated or reflected
/// variants of a pattern are matched implicitly through normalization.
pub fn generate_potential_faces(
    arr: &LinkArrangement,
    patterns: &[FacePattern],
) -> Result<Vec<Candidate>, SearchError> {
    for p in patterns {
        if let Some(&link) = p.corner_links.iter().find(|&&l| l >= arr.link_count()) {
            return Err(SearchError::BadPattern { pattern: p.corner_links, link, links: arr.link_count() });
        }
    }
    let oriented: Vec<Vec<(u32, u32)>> = (0..arr.link_count())
        .map(|i| {
            let off = arr.offset(i);
            arr.link(i).edges().iter().flat_map(|&(x, y)| [(x + off, y + off), (y + off, x + off)]).collect()
        })
        .collect();
    let mut faces = BTreeSet::new();
    let patterns: BTreeSet<_> = if patterns.is_empty() {
        FacePattern::all(arr.link_count()).into_iter().collect()
    } else {
        patterns.iter().copied().collect()
    };
    for p in patterns {
        let [l1, l2, l3] = p.corner_links;
        // corner 1 = (b1, a2), corner 2 = (b2, a3), corner 3 = (b3, a1)
        for &(b1, a2) in &oriented[l1] {
            for &(b2, a3) in &oriented[l2] {
                if a2 == b2 {
                    continue;
                }
                for &(b3, a1) in &oriented[l3] {
                    if a1 == b1 || a3 == b3 {
                        continue;
                    }
                    let Ok(f) = WiredFace::from_pairs([(a1, b1), (a2, b2), (a3, b3)]) else { continue };
                    if arr.face_edges(&f).is_ok() {
                        faces.insert(f.normalized().as_tuple());
                    }
                }
            }
        }
    }
    Ok(faces
        .into_iter()
        .map(|t| {
            let face = WiredFace::from_pairs([(t[0], t[1]), (t[2], t[3]), (t[4], t[5])]).unwrap();
            let edges = arr.face_edges(&face).unwrap();
            Candidate { face, edges }
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Face patterns; empty means every ordered triple of links.
    pub patterns: Vec<FacePattern>,
    pub seed_faces: Vec<WiredFace>,
    /// Stop after this many raw solutions.
    pub max_solutions: Option<usize>,
    pub dedup: bool,
    pub dedup_strategy: DedupStrategy,
    pub group_bound: u128,
    /// Worker threads; 1 runs the sequential search.
    pub jobs: usize,
    /// Branching levels expanded sequentially before subtrees are farmed out.
    pub split_depth: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            patterns: Vec::new(),
            seed_faces: Vec::new(),
            max_solutions: None,
            dedup: true,
            dedup_strategy: DedupStrategy::Auto,
            group_bound: DEFAULT_GROUP_BOUND,
            jobs: 1,
            split_depth: 2,
        }
    }
}

/// Run summary. Everything except `wall_time` is reproducible in
/// sequential mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub faces_generated: usize,
    pub solutions: usize,
    pub classes: Option<usize>,
    pub truncated: bool,
    pub jobs: usize,
    pub wall_time: Duration,
}

impl SearchStats {
    /// `key=value` lines.
    pub fn to_key_values(&self) -> String {
        let classes = self.classes.map_or("-".to_string(), |c| c.to_string());
        format!(
            "nodes={}\nfaces_generated={}\nsolutions={}\nclasses={}\ntruncated={}\njobs={}\nwall_ms={}\n",
            self.nodes,
            self.faces_generated,
            self.solutions,
            classes,
            self.truncated,
            self.jobs,
            self.wall_time.as_millis()
        )
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Isomorphism classes (dedup on) in first-found order.
    pub classes: Vec<ClassRecord>,
    /// Raw solutions in emission order (dedup off).
    pub solutions: Vec<WiredComplex>,
    pub stats: SearchStats,
}

/// Prepared search: arrangement, candidate faces and seeded root state.
pub struct Search {
    arrangement: Arc<LinkArrangement>,
    candidates: Vec<Candidate>,
    root: PartialWiredComplex,
    root_candidates: Vec<u32>,
}

impl Search {
    pub fn new(arrangement: Arc<LinkArrangement>, cfg: &SearchConfig) -> Result<Self, SearchError> {
        let candidates = generate_potential_faces(&arrangement, &cfg.patterns)?;
        let mut root = PartialWiredComplex::new(arrangement.clone());
        for (index, f) in cfg.seed_faces.iter().enumerate() {
            root.add_face(*f).map_err(|source| SearchError::BadSeed { index, source })?;
        }
        let root_candidates = (0..candidates.len() as u32)
            .filter(|&i| {
                let c = &candidates[i as usize];
                root.fits(&c.face, &c.edges)
            })
            .collect();
        Ok(Search { arrangement, candidates, root, root_candidates })
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn arrangement(&self) -> &Arc<LinkArrangement> {
        &self.arrangement
    }

    /// Sequential depth-first search, visiting complete complexes in a
    /// deterministic order. Returns the number of nodes expanded.
    pub fn for_each_solution<F>(&self, mut visit: F) -> u64
    where
        F: FnMut(&PartialWiredComplex) -> ControlFlow<()>,
    {
        let mut state = self.root.clone();
        let mut nodes = 0;
        let _ = self.dfs(&mut state, &self.root_candidates, &mut nodes, &mut visit);
        nodes
    }

    fn children(&self, state: &PartialWiredComplex, cands: &[u32]) -> Vec<u32> {
        cands
            .iter()
            .copied()
            .filter(|&i| {
                let c = &self.candidates[i as usize];
                state.fits(&c.face, &c.edges)
            })
            .collect()
    }

    /// Candidates covering the least uncovered edge.
    fn branches<'a>(&'a self, edge: u32, cands: &'a [u32]) -> impl Iterator<Item = u32> + 'a {
        cands.iter().copied().filter(move |&i| self.candidates[i as usize].edges.contains(&edge))
    }

    fn dfs<F>(
        &self,
        state: &mut PartialWiredComplex,
        cands: &[u32],
        nodes: &mut u64,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&PartialWiredComplex) -> ControlFlow<()>,
    {
        *nodes += 1;
        let Some(edge) = state.first_uncovered() else {
            return visit(state);
        };
        for i in self.branches(edge, cands) {
            let c = &self.candidates[i as usize];
            state.push(c.face, c.edges);
            let next = self.children(state, cands);
            let flow = self.dfs(state, &next, nodes, visit);
            state.remove_last_face().expect("face was just pushed");
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Expands the first `depth` levels, returning frontier items in DFS order.
    fn frontier(&self, depth: usize) -> (Vec<Frontier>, u64) {
        let mut out = Vec::new();
        let mut nodes = 0;
        let mut state = self.root.clone();
        self.expand(&mut state, &self.root_candidates, depth, &mut nodes, &mut out);
        (out, nodes)
    }

    fn expand(
        &self,
        state: &mut PartialWiredComplex,
        cands: &[u32],
        depth: usize,
        nodes: &mut u64,
        out: &mut Vec<Frontier>,
    ) {
        let Some(edge) = state.first_uncovered() else {
            *nodes += 1;
            out.push(Frontier::Solution(state.faces().to_vec()));
            return;
        };
        if depth == 0 {
            out.push(Frontier::Subtree { faces: state.faces()[self.root.faces().len()..].to_vec(), cands: cands.to_vec() });
            return;
        }
        *nodes += 1;
        for i in self.branches(edge, cands).collect::<Vec<_>>() {
            let c = &self.candidates[i as usize];
            state.push(c.face, c.edges);
            let next = self.children(state, cands);
            self.expand(state, &next, depth - 1, nodes, out);
            state.remove_last_face().expect("face was just pushed");
        }
    }

    fn run_subtree(&self, item: &Frontier, cap: &Cap) -> (Vec<Vec<WiredFace>>, u64) {
        match item {
            Frontier::Solution(faces) => {
                if cap.take() {
                    (vec![faces.clone()], 0)
                } else {
                    (Vec::new(), 0)
                }
            }
            Frontier::Subtree { faces, cands } => {
                let mut state = self.root.clone();
                for f in faces {
                    state.add_face(*f).expect("frontier faces are compatible");
                }
                let mut found = Vec::new();
                let mut nodes = 0;
                let _ = self.dfs(&mut state, cands, &mut nodes, &mut |s: &PartialWiredComplex| {
                    if !cap.take() {
                        return ControlFlow::Break(());
                    }
                    found.push(s.faces().to_vec());
                    ControlFlow::Continue(())
                });
                (found, nodes)
            }
        }
    }
}

enum Frontier {
    Solution(Vec<WiredFace>),
    /// Faces added below the seed, plus the trimmed candidate list.
    Subtree { faces: Vec<WiredFace>, cands: Vec<u32> },
}

/// Shared solution budget.
struct Cap {
    limit: Option<usize>,
    taken: AtomicUsize,
    hit: AtomicBool,
}

impl Cap {
    fn new(limit: Option<usize>) -> Self {
        Cap { limit, taken: AtomicUsize::new(0), hit: AtomicBool::new(false) }
    }

    fn take(&self) -> bool {
        match self.limit {
            None => true,
            Some(limit) => {
                let ok = self.taken.fetch_add(1, Ordering::Relaxed) < limit;
                if !ok {
                    self.hit.store(true, Ordering::Relaxed);
                }
                ok
            }
        }
    }
}

/// Runs the search and (optionally) reduces solutions to isomorphism classes.
pub fn enumerate(arrangement: Arc<LinkArrangement>, cfg: &SearchConfig) -> Result<Enumeration, SearchError> {
    let start = Instant::now();
    let search = Search::new(arrangement.clone(), cfg)?;
    let registry = if cfg.dedup {
        Some(ClassRegistry::new(arrangement.clone(), cfg.dedup_strategy, cfg.group_bound)?)
    } else {
        None
    };
    let jobs = effective_jobs(cfg.jobs);
    let cap = Cap::new(cfg.max_solutions);

    let (raw, nodes) = if jobs <= 1 {
        let mut raw = Vec::new();
        let nodes = search.for_each_solution(|s| {
            if !cap.take() {
                return ControlFlow::Break(());
            }
            raw.push(s.faces().to_vec());
            ControlFlow::Continue(())
        });
        (raw, nodes)
    } else {
        run_parallel(&search, cfg.split_depth, jobs, &cap)?
    };

    let solutions: Vec<WiredComplex> =
        raw.into_iter().map(|faces| WiredComplex::from_parts_unchecked(arrangement.clone(), faces)).collect();
    let solution_count = solutions.len();
    let (classes, solutions) = match registry {
        Some(mut reg) => {
            let keys = compute_keys(&reg, &solutions, jobs)?;
            for (c, k) in solutions.into_iter().zip(keys) {
                reg.insert_with_key(c, k);
            }
            (reg.into_classes(), Vec::new())
        }
        None => (Vec::new(), solutions),
    };
    let stats = SearchStats {
        nodes,
        faces_generated: search.candidates.len(),
        solutions: solution_count,
        classes: cfg.dedup.then_some(classes.len()),
        truncated: cap.hit.load(Ordering::Relaxed),
        jobs,
        wall_time: start.elapsed(),
    };
    Ok(Enumeration { classes, solutions, stats })
}

fn effective_jobs(jobs: usize) -> usize {
    if cfg!(feature = "parallel") {
        jobs.max(1)
    } else {
        1
    }
}

#[cfg(feature = "parallel")]
fn run_parallel(
    search: &Search,
    split_depth: usize,
    jobs: usize,
    cap: &Cap,
) -> Result<(Vec<Vec<WiredFace>>, u64), SearchError> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
    let (frontier, top_nodes) = search.frontier(split_depth);
    let parts: Vec<_> = pool.install(|| frontier.par_iter().map(|item| search.run_subtree(item, cap)).collect());
    let mut raw = Vec::new();
    let mut nodes = top_nodes;
    for (found, n) in parts {
        raw.extend(found);
        nodes += n;
    }
    if let Some(limit) = cap.limit {
        raw.truncate(limit);
    }
    Ok((raw, nodes))
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(
    search: &Search,
    split_depth: usize,
    _jobs: usize,
    cap: &Cap,
) -> Result<(Vec<Vec<WiredFace>>, u64), SearchError> {
    let (frontier, top_nodes) = search.frontier(split_depth);
    let mut raw = Vec::new();
    let mut nodes = top_nodes;
    for item in &frontier {
        let (found, n) = search.run_subtree(item, cap);
        raw.extend(found);
        nodes += n;
    }
    Ok((raw, nodes))
}

fn compute_keys(
    reg: &ClassRegistry,
    solutions: &[WiredComplex],
    jobs: usize,
) -> Result<Vec<Option<CanonicalKey>>, SearchError> {
    if !reg.uses_keys() {
        return Ok(vec![None; solutions.len()]);
    }
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
        return Ok(pool.install(|| solutions.par_iter().map(|c| reg.key_of(c)).collect()));
    }
    let _ = jobs;
    Ok(solutions.iter().map(|c| reg.key_of(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(names: &[&str]) -> Arc<LinkArrangement> {
        Arc::new(LinkArrangement::builtin(names).unwrap())
    }

    #[test]
    fn triangle_link_admits_no_face() {
        // any two wires inside a 3-vertex link meet without being equal or
        // inverse, and a single wire class covers only one edge
        let a = arr(&["cycle:3"]);
        assert!(generate_potential_faces(&a, &[FacePattern::new(0, 0, 0)]).unwrap().is_empty());
        let e = enumerate(a, &SearchConfig::default()).unwrap();
        assert_eq!(e.stats.solutions, 0);
    }

    #[test]
    fn hexagon_link_has_the_alternating_face() {
        let a = arr(&["cycle:6"]);
        let faces = generate_potential_faces(&a, &[FacePattern::new(0, 0, 0)]).unwrap();
        let f = WiredFace::from_pairs([(0, 1), (2, 3), (4, 5)]).unwrap().normalized();
        assert!(faces.iter().any(|c| c.face == f));
        assert!(faces.windows(2).all(|w| w[0].face.as_tuple() < w[1].face.as_tuple()));
    }

    #[test]
    fn bad_pattern_rejected() {
        let a = arr(&["cycle:3"]);
        assert!(matches!(
            generate_potential_faces(&a, &[FacePattern::new(0, 1, 0)]),
            Err(SearchError::BadPattern { link: 1, .. })
        ));
    }

    #[test]
    fn empty_arrangement_has_one_solution() {
        let e = enumerate(arr(&[]), &SearchConfig::default()).unwrap();
        assert_eq!(e.classes.len(), 1);
        assert_eq!(e.stats.nodes, 1);
        assert_eq!(e.stats.solutions, 1);
    }

    #[test]
    fn cap_truncates() {
        let cfg = SearchConfig { dedup: false, max_solutions: Some(2), ..Default::default() };
        let e = enumerate(arr(&["cycle:6"]), &cfg).unwrap();
        assert_eq!(e.solutions.len(), 2);
        assert!(e.stats.truncated);
    }

    #[test]
    fn bad_seed_rejected() {
        let f = WiredFace::from_pairs([(0, 1), (3, 2), (4, 5)]).unwrap();
        let cfg = SearchConfig { seed_faces: vec![f], ..Default::default() };
        assert!(matches!(enumerate(arr(&["cycle:6"]), &cfg), Err(SearchError::BadSeed { index: 0, .. })));
    }
}
