//! Isomorphism of wired complexes.
//!
//! Two complexes are isomorphic when some relabeling of link vertices,
//! sending each link isomorphically onto a link of the same type, carries
//! one normalized face set onto the other. Face rotation and reflection are
//! already absorbed by [`WiredFace::normalized`], so the group here acts on
//! vertex labels only.
//!
//! Two engines are provided. For small groups, [`canonical_key`] minimizes
//! the sorted face list over every group element. For large groups,
//! [`complexes_isomorphic`] backtracks over vertex assignments, propagating
//! along wires and link edges.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::IsoError;
use crate::graph::{Permutation, DEFAULT_AUT_BOUND};
use crate::wired::{LinkArrangement, WiredComplex, WiredFace};

/// Largest group for which keys are computed by exhaustive minimization.
pub const DEFAULT_GROUP_BOUND: u128 = 1_000_000;

#[derive(Clone, Debug)]
struct LinkType {
    members: Vec<usize>,
    auts: Vec<Permutation>,
}

/// Relabeling group of an arrangement: automorphisms of each link combined
/// with permutations of links of the same isomorphism type.
#[derive(Clone, Debug)]
pub struct IsoGroup {
    arrangement: Arc<LinkArrangement>,
    types: Vec<LinkType>,
    type_of: Vec<usize>,
    /// For link `i`, an isomorphism onto its type representative.
    to_rep: Vec<Permutation>,
    from_rep: Vec<Permutation>,
    order: u128,
}

impl IsoGroup {
    pub fn new(arrangement: Arc<LinkArrangement>) -> Result<Self, IsoError> {
        Self::with_aut_bound(arrangement, DEFAULT_AUT_BOUND)
    }

    pub fn with_aut_bound(arrangement: Arc<LinkArrangement>, aut_bound: usize) -> Result<Self, IsoError> {
        let mut types: Vec<LinkType> = Vec::new();
        let mut type_of = Vec::new();
        let mut to_rep = Vec::new();
        for (i, g) in arrangement.links().iter().enumerate() {
            let found = types.iter().enumerate().find_map(|(t, ty)| {
                let rep = arrangement.link(ty.members[0]);
                g.isomorphism_to(rep).map(|p| (t, p))
            });
            match found {
                Some((t, p)) => {
                    types[t].members.push(i);
                    type_of.push(t);
                    to_rep.push(p);
                }
                None => {
                    types.push(LinkType { members: vec![i], auts: g.automorphisms(aut_bound)? });
                    type_of.push(types.len() - 1);
                    to_rep.push(Permutation::identity(g.n()));
                }
            }
        }
        let from_rep = to_rep.iter().map(Permutation::inverse).collect();
        let mut order: u128 = 1;
        for ty in &types {
            let m = ty.members.len() as u128;
            for k in 1..=m {
                order = order.saturating_mul(k);
            }
            for _ in 0..m {
                order = order.saturating_mul(ty.auts.len() as u128);
            }
        }
        Ok(IsoGroup { arrangement, types, type_of, to_rep, from_rep, order })
    }

    pub fn arrangement(&self) -> &Arc<LinkArrangement> {
        &self.arrangement
    }

    /// Group order, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.order
    }

    /// Partition of link indices into isomorphism types.
    pub fn type_classes(&self) -> Vec<Vec<usize>> {
        self.types.iter().map(|t| t.members.clone()).collect()
    }

    /// Visits every group element as a global vertex map. Refuses groups
    /// larger than `bound`.
    pub fn for_each_element<F>(&self, bound: u128, mut visit: F) -> Result<(), IsoError>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        if self.order > bound {
            return Err(IsoError::GroupTooLarge { order: self.order, bound });
        }
        let arr = &self.arrangement;
        let link_perms: Vec<Vec<Vec<usize>>> = self
            .types
            .iter()
            .map(|t| (0..t.members.len()).permutations(t.members.len()).collect())
            .collect();
        // mixed radix digits: one link permutation per type, then one
        // automorphism per link
        let mut radix: Vec<usize> = link_perms.iter().map(Vec::len).collect();
        radix.extend(self.type_of.iter().map(|&t| self.types[t].auts.len()));
        let ntypes = self.types.len();
        let mut digits = vec![0usize; radix.len()];
        let mut map = vec![0u32; arr.total() as usize];
        let mut position = vec![0usize; arr.link_count()];
        for t in &self.types {
            for (p, &i) in t.members.iter().enumerate() {
                position[i] = p;
            }
        }
        loop {
            for i in 0..arr.link_count() {
                let t = self.type_of[i];
                let members = &self.types[t].members;
                let j = members[link_perms[t][digits[t]][position[i]]];
                let aut = &self.types[t].auts[digits[ntypes + i]];
                let (src, dst) = (arr.offset(i), arr.offset(j));
                for x in 0..arr.link(i).n() as u32 {
                    let y = self.from_rep[j].apply(aut.apply(self.to_rep[i].apply(x)));
                    map[(src + x) as usize] = dst + y;
                }
            }
            if visit(&map).is_break() {
                return Ok(());
            }
            let mut k = 0;
            loop {
                if k == digits.len() {
                    return Ok(());
                }
                digits[k] += 1;
                if digits[k] < radix[k] {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
        }
    }
}

/// Byte encoding of the least relabeled face list of a complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    fn encode(faces: &[WiredFace]) -> Self {
        let mut bytes = Vec::with_capacity(faces.len() * 24);
        for f in faces {
            for v in f.as_tuple() {
                bytes.extend_from_slice(&v.to_be_bytes());
            }
        }
        CanonicalKey(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Lexicographically least sorted normalized face list over all group
/// elements, encoded as big-endian `u32`s.
pub fn canonical_key(c: &WiredComplex, group: &IsoGroup, bound: u128) -> Result<CanonicalKey, IsoError> {
    debug_assert_eq!(**c.arrangement(), **group.arrangement());
    let mut best: Option<Vec<WiredFace>> = None;
    group.for_each_element(bound, |map| {
        let faces = c.relabeled_normalized(map);
        if best.as_ref().is_none_or(|b| faces < *b) {
            best = Some(faces);
        }
        ControlFlow::Continue(())
    })?;
    Ok(CanonicalKey::encode(&best.unwrap_or_default()))
}

/// Checks that `map` sends each link of `a` isomorphically onto a link of
/// `b` and carries the normalized faces of `a` exactly onto those of `b`.
pub fn verify_witness(a: &WiredComplex, b: &WiredComplex, map: &[u32]) -> bool {
    let (aa, ab) = (a.arrangement(), b.arrangement());
    if map.len() != aa.total() as usize || aa.total() != ab.total() {
        return false;
    }
    let mut hit = vec![false; map.len()];
    for &w in map {
        if w as usize >= hit.len() || std::mem::replace(&mut hit[w as usize], true) {
            return false;
        }
    }
    for i in 0..aa.link_count() {
        let g = aa.link(i);
        if g.n() == 0 {
            continue;
        }
        let Some((j, _)) = ab.locate(map[aa.offset(i) as usize]) else { return false };
        let h = ab.link(j);
        if h.n() != g.n() || h.edge_count() != g.edge_count() {
            return false;
        }
        for x in 0..g.n() as u32 {
            if ab.locate(map[(aa.offset(i) + x) as usize]).map(|l| l.0) != Some(j) {
                return false;
            }
        }
        let local = |x: u32| map[(aa.offset(i) + x) as usize] - ab.offset(j);
        if !g.edges().iter().all(|&(x, y)| h.has_edge(local(x), local(y))) {
            return false;
        }
    }
    a.relabeled_normalized(map) == b.normalized_faces()
}

/// Decides isomorphism, returning a verified global vertex bijection.
///
/// When both complexes live on the same arrangement and its group has at
/// most `bound` elements, the group is searched exhaustively; otherwise a
/// backtracking search over vertex assignments is used. Both are exact.
pub fn complexes_isomorphic(a: &WiredComplex, b: &WiredComplex, bound: u128) -> Option<Vec<u32>> {
    if !same_link_profile(a, b) || a.faces().len() != b.faces().len() {
        return None;
    }
    let witness = if a.arrangement() == b.arrangement() {
        match IsoGroup::new(a.arrangement().clone()) {
            Ok(group) if group.order() <= bound => {
                let target = b.normalized_faces();
                let mut found = None;
                group
                    .for_each_element(bound, |map| {
                        if a.relabeled_normalized(map) == target {
                            found = Some(map.to_vec());
                            return ControlFlow::Break(());
                        }
                        ControlFlow::Continue(())
                    })
                    .expect("order checked");
                found
            }
            _ => backtrack_isomorphism(a, b),
        }
    } else {
        backtrack_isomorphism(a, b)
    };
    let witness = witness?;
    assert!(verify_witness(a, b, &witness), "isomorphism witness failed verification");
    Some(witness)
}

fn same_link_profile(a: &WiredComplex, b: &WiredComplex) -> bool {
    let profile = |c: &WiredComplex| {
        c.arrangement()
            .links()
            .iter()
            .map(|g| {
                let mut deg: Vec<_> = (0..g.n() as u32).map(|v| g.degree(v)).collect();
                deg.sort_unstable();
                (g.n(), g.edge_count(), deg)
            })
            .sorted()
            .collect::<Vec<_>>()
    };
    profile(a) == profile(b)
}

/// Exact isomorphism search by extending a partial vertex map in BFS order
/// over the graph of link edges and wires, so every vertex after the first
/// of its component has at most a link-degree's worth of candidates.
pub fn backtrack_isomorphism(a: &WiredComplex, b: &WiredComplex) -> Option<Vec<u32>> {
    Matcher::new(a, b)?.run()
}

struct Side<'a> {
    c: &'a WiredComplex,
    partner: Vec<u32>,
    /// Face indices touching each vertex.
    incident: Vec<Vec<u32>>,
}

impl<'a> Side<'a> {
    /// Vertices on no wire (isolated in their link) keep `u32::MAX` as partner.
    fn new(c: &'a WiredComplex) -> Option<Self> {
        let total = c.arrangement().total() as usize;
        let mut partner = vec![u32::MAX; total];
        let mut incident = vec![Vec::new(); total];
        for (k, f) in c.faces().iter().enumerate() {
            for w in f.wires() {
                partner[w.a() as usize] = w.b();
                partner[w.b() as usize] = w.a();
                for v in [w.a(), w.b()] {
                    if incident[v as usize].last() != Some(&(k as u32)) {
                        incident[v as usize].push(k as u32);
                    }
                }
            }
        }
        Some(Side { c, partner, incident })
    }

    fn link(&self, v: u32) -> usize {
        self.c.arrangement().locate(v).unwrap().0
    }

    fn link_neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        let arr = self.c.arrangement();
        let (l, x) = arr.locate(v).unwrap();
        let off = arr.offset(l);
        arr.link(l).neighbors(x).iter().map(move |&y| y + off)
    }
}

enum Anchor {
    Root,
    Partner(u32),
    LinkNeighbor(u32),
}

struct Matcher<'a> {
    a: Side<'a>,
    b: Side<'a>,
    order: Vec<(u32, Anchor)>,
    target: HashSet<WiredFace>,
    map: Vec<u32>,
    inv: Vec<u32>,
    link_map: Vec<usize>,
    link_inv: Vec<usize>,
    mapped_in_link: Vec<Vec<u32>>,
}

impl<'a> Matcher<'a> {
    fn new(a: &'a WiredComplex, b: &'a WiredComplex) -> Option<Self> {
        let (sa, sb) = (Side::new(a)?, Side::new(b)?);
        let total = a.arrangement().total() as usize;
        let mut seen = vec![false; total];
        let mut order = Vec::with_capacity(total);
        for root in 0..total as u32 {
            if seen[root as usize] {
                continue;
            }
            seen[root as usize] = true;
            let start = order.len();
            order.push((root, Anchor::Root));
            let mut i = start;
            while i < order.len() {
                let u = order[i].0;
                let p = sa.partner[u as usize];
                if p != u32::MAX && !seen[p as usize] {
                    seen[p as usize] = true;
                    order.push((p, Anchor::Partner(u)));
                }
                for w in sa.link_neighbors(u).collect::<Vec<_>>() {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        order.push((w, Anchor::LinkNeighbor(u)));
                    }
                }
                i += 1;
            }
        }
        let links = a.arrangement().link_count();
        Some(Matcher {
            target: b.faces().iter().map(WiredFace::normalized).collect(),
            a: sa,
            b: sb,
            order,
            map: vec![u32::MAX; total],
            inv: vec![u32::MAX; total],
            link_map: vec![usize::MAX; links],
            link_inv: vec![usize::MAX; links],
            mapped_in_link: vec![Vec::new(); links],
        })
    }

    fn run(mut self) -> Option<Vec<u32>> {
        if self.extend(0) {
            Some(self.map)
        } else {
            None
        }
    }

    fn candidates(&self, anchor: &Anchor) -> Vec<u32> {
        match *anchor {
            Anchor::Root => (0..self.map.len() as u32).collect(),
            Anchor::Partner(u) => vec![self.b.partner[self.map[u as usize] as usize]],
            Anchor::LinkNeighbor(u) => self.b.link_neighbors(self.map[u as usize]).collect(),
        }
    }

    fn admissible(&self, v: u32, w: u32) -> bool {
        if self.inv[w as usize] != u32::MAX {
            return false;
        }
        let (la, lb) = (self.a.link(v), self.b.link(w));
        let (ga, gb) = (self.a.c.arrangement().link(la), self.b.c.arrangement().link(lb));
        match self.link_map[la] {
            usize::MAX => {
                if self.link_inv[lb] != usize::MAX || ga.n() != gb.n() || ga.edge_count() != gb.edge_count() {
                    return false;
                }
            }
            m if m != lb => return false,
            _ => {}
        }
        let (oa, ob) = (self.a.c.arrangement().offset(la), self.b.c.arrangement().offset(lb));
        if ga.degree(v - oa) != gb.degree(w - ob) {
            return false;
        }
        for &u in &self.mapped_in_link[la] {
            if ga.has_edge(u - oa, v - oa) != gb.has_edge(self.map[u as usize] - ob, w - ob) {
                return false;
            }
        }
        let (pa, pb) = (self.a.partner[v as usize], self.b.partner[w as usize]);
        if (pa == u32::MAX) != (pb == u32::MAX) {
            return false;
        }
        if pa == u32::MAX {
            return true;
        }
        if self.map[pa as usize] != u32::MAX && self.map[pa as usize] != pb {
            return false;
        }
        if self.inv[pb as usize] != u32::MAX && self.inv[pb as usize] != pa {
            return false;
        }
        true
    }

    fn faces_ok(&self, v: u32) -> bool {
        self.a.incident[v as usize].iter().all(|&k| {
            let f = &self.a.c.faces()[k as usize];
            let t = f.as_tuple();
            if t.iter().any(|&x| self.map[x as usize] == u32::MAX) {
                return true;
            }
            self.target.contains(&f.map(|x| self.map[x as usize]).normalized())
        })
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth].0;
        let cands = self.candidates(&self.order[depth].1);
        for w in cands {
            if !self.admissible(v, w) {
                continue;
            }
            let la = self.a.link(v);
            let lb = self.b.link(w);
            let fresh_link = self.link_map[la] == usize::MAX;
            if fresh_link {
                self.link_map[la] = lb;
                self.link_inv[lb] = la;
            }
            self.map[v as usize] = w;
            self.inv[w as usize] = v;
            self.mapped_in_link[la].push(v);
            if self.faces_ok(v) && self.extend(depth + 1) {
                return true;
            }
            self.mapped_in_link[la].pop();
            self.map[v as usize] = u32::MAX;
            self.inv[w as usize] = u32::MAX;
            if fresh_link {
                self.link_map[la] = usize::MAX;
                self.link_inv[lb] = usize::MAX;
            }
        }
        false
    }
}

/// How classes are told apart.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DedupStrategy {
    /// Canonical keys when the group is within bound, pairwise otherwise.
    #[default]
    Auto,
    Keys,
    Pairwise,
}

/// One isomorphism class: its first-found representative and how many
/// inputs fell into it.
#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub representative: WiredComplex,
    pub multiplicity: usize,
    pub key: Option<CanonicalKey>,
}

enum Engine {
    Keys { group: IsoGroup, index: HashMap<CanonicalKey, usize> },
    Pairwise,
}

/// Online class registry over complexes sharing one arrangement.
pub struct ClassRegistry {
    engine: Engine,
    bound: u128,
    classes: Vec<ClassRecord>,
}

impl ClassRegistry {
    pub fn new(arrangement: Arc<LinkArrangement>, strategy: DedupStrategy, bound: u128) -> Result<Self, IsoError> {
        let group = match strategy {
            DedupStrategy::Pairwise => None,
            DedupStrategy::Keys => {
                let g = IsoGroup::new(arrangement)?;
                if g.order() > bound {
                    return Err(IsoError::GroupTooLarge { order: g.order(), bound });
                }
                Some(g)
            }
            DedupStrategy::Auto => IsoGroup::new(arrangement).ok().filter(|g| g.order() <= bound),
        };
        let engine = match group {
            Some(group) => Engine::Keys { group, index: HashMap::new() },
            None => Engine::Pairwise,
        };
        Ok(ClassRegistry { engine, bound, classes: Vec::new() })
    }

    pub fn uses_keys(&self) -> bool {
        matches!(self.engine, Engine::Keys { .. })
    }

    /// The group backing the key engine, if any.
    pub fn group(&self) -> Option<&IsoGroup> {
        match &self.engine {
            Engine::Keys { group, .. } => Some(group),
            Engine::Pairwise => None,
        }
    }

    /// Computes the key this registry would use for `c`.
    pub fn key_of(&self, c: &WiredComplex) -> Option<CanonicalKey> {
        self.group().map(|g| canonical_key(c, g, self.bound).expect("order checked at construction"))
    }

    /// Adds a complex; returns its class index and whether the class is new.
    pub fn insert(&mut self, c: WiredComplex) -> (usize, bool) {
        let key = self.key_of(&c);
        self.insert_with_key(c, key)
    }

    /// Like [`ClassRegistry::insert`] with a key precomputed by
    /// [`ClassRegistry::key_of`].
    pub fn insert_with_key(&mut self, c: WiredComplex, key: Option<CanonicalKey>) -> (usize, bool) {
        match &mut self.engine {
            Engine::Keys { index, .. } => {
                let key = key.expect("key engine needs a key");
                if let Some(&i) = index.get(&key) {
                    self.classes[i].multiplicity += 1;
                    return (i, false);
                }
                index.insert(key.clone(), self.classes.len());
                self.classes.push(ClassRecord { representative: c, multiplicity: 1, key: Some(key) });
            }
            Engine::Pairwise => {
                let bound = self.bound;
                if let Some(i) =
                    self.classes.iter().position(|r| complexes_isomorphic(&r.representative, &c, bound).is_some())
                {
                    self.classes[i].multiplicity += 1;
                    return (i, false);
                }
                self.classes.push(ClassRecord { representative: c, multiplicity: 1, key: None });
            }
        }
        (self.classes.len() - 1, true)
    }

    pub fn classes(&self) -> &[ClassRecord] {
        &self.classes
    }

    pub fn into_classes(self) -> Vec<ClassRecord> {
        self.classes
    }
}

/// One representative per isomorphism class (first found), with
/// multiplicities. All inputs must share one arrangement.
pub fn dedup_classes<I>(complexes: I, strategy: DedupStrategy, bound: u128) -> Result<Vec<ClassRecord>, IsoError>
where
    I: IntoIterator<Item = WiredComplex>,
{
    let mut iter = complexes.into_iter().peekable();
    let Some(first) = iter.peek() else { return Ok(Vec::new()) };
    let mut registry = ClassRegistry::new(first.arrangement().clone(), strategy, bound)?;
    for c in iter {
        registry.insert(c);
    }
    Ok(registry.into_classes())
}
