//! Brute-force reference implementations. Deliberately naive and written
//! against raw vertex tuples, without using the library's search, face
//! normalization or isomorphism code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// A face as `(a1, b1, a2, b2, a3, b3)`.
pub type Tuple = [u32; 6];

/// Global link graph: the disjoint union of the given edge lists.
pub struct Links {
    pub sizes: Vec<u32>,
    pub edges: Vec<Vec<(u32, u32)>>,
    pub total: u32,
    adj: Vec<Vec<bool>>,
}

impl Links {
    pub fn new(graphs: &[(u32, Vec<(u32, u32)>)]) -> Self {
        let total: u32 = graphs.iter().map(|g| g.0).sum();
        let mut adj = vec![vec![false; total as usize]; total as usize];
        let mut off = 0;
        for (n, es) in graphs {
            for &(a, b) in es {
                adj[(off + a) as usize][(off + b) as usize] = true;
                adj[(off + b) as usize][(off + a) as usize] = true;
            }
            off += n;
        }
        Links { sizes: graphs.iter().map(|g| g.0).collect(), edges: graphs.iter().map(|g| g.1.clone()).collect(), total, adj }
    }

    pub fn edge(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize][b as usize]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    fn link_of(&self, v: u32) -> usize {
        let mut off = 0;
        for (i, &n) in self.sizes.iter().enumerate() {
            if v < off + n {
                return i;
            }
            off += n;
        }
        panic!("vertex out of range")
    }
}

pub fn cycle_edges(n: u32) -> Vec<(u32, u32)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

/// LCF [5,-5]^8 written out by hand.
pub fn mobius_kantor_edges() -> Vec<(u32, u32)> {
    let mut es = cycle_edges(16);
    for i in 0..16i32 {
        let j = (i + if i % 2 == 0 { 5 } else { -5 }).rem_euclid(16);
        if i < j {
            es.push((i as u32, j as u32));
        }
    }
    es
}

pub fn compatible(u: (u32, u32), v: (u32, u32)) -> bool {
    u == v || (u.0 == v.1 && u.1 == v.0) || (u.0 != v.0 && u.0 != v.1 && u.1 != v.0 && u.1 != v.1)
}

fn wires(t: &Tuple) -> [(u32, u32); 3] {
    [(t[0], t[1]), (t[2], t[3]), (t[4], t[5])]
}

fn corners(t: &Tuple) -> [(u32, u32); 3] {
    let c = |x: u32, y: u32| (x.min(y), x.max(y));
    [c(t[1], t[2]), c(t[3], t[4]), c(t[5], t[0])]
}

pub fn valid_face(l: &Links, t: &Tuple) -> bool {
    let w = wires(t);
    if w.iter().any(|&(a, b)| a == b) {
        return false;
    }
    let c = corners(t);
    if !c.iter().all(|&(x, y)| l.edge(x, y)) || c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
        return false;
    }
    compatible(w[0], w[1]) && compatible(w[1], w[2]) && compatible(w[0], w[2])
}

/// Least tuple among the 3 rotations of the face and of its reverse.
pub fn normalize(t: &Tuple) -> Tuple {
    let rev = [t[5], t[4], t[3], t[2], t[1], t[0]];
    let mut best = *t;
    for s in [*t, rev] {
        for k in 0..3 {
            let mut r = [0; 6];
            for i in 0..6 {
                r[i] = s[(i + 2 * k) % 6];
            }
            best = best.min(r);
        }
    }
    best
}

/// Every valid face up to rotation and reflection, by scanning all 6-tuples.
pub fn potential_faces(l: &Links) -> Vec<Tuple> {
    let n = l.total;
    let mut out = BTreeSet::new();
    for a1 in 0..n {
        for b1 in 0..n {
            for a2 in 0..n {
                if !l.edge(b1, a2) {
                    continue;
                }
                for b2 in 0..n {
                    for a3 in 0..n {
                        if !l.edge(b2, a3) {
                            continue;
                        }
                        for b3 in 0..n {
                            let t = [a1, b1, a2, b2, a3, b3];
                            if valid_face(l, &t) {
                                out.insert(normalize(&t));
                            }
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

fn complete(l: &Links, faces: &[Tuple]) -> bool {
    let mut seen = BTreeSet::new();
    for t in faces {
        for c in corners(t) {
            if !seen.insert(c) {
                return false;
            }
        }
    }
    if seen.len() != l.edge_count() {
        return false;
    }
    let all: Vec<(u32, u32)> = faces.iter().flat_map(wires).collect();
    all.iter().all(|&u| all.iter().all(|&v| compatible(u, v)))
}

/// Every complete complex, as a sorted list of normalized faces, by trying
/// every subset of potential faces of size `|E| / 3`. Subsets are grown in
/// index order and abandoned as soon as two corners coincide.
pub fn complete_complexes(l: &Links) -> BTreeSet<Vec<Tuple>> {
    let mut out = BTreeSet::new();
    if !l.edge_count().is_multiple_of(3) {
        return out;
    }
    let pf = potential_faces(l);
    let k = l.edge_count() / 3;
    grow(l, &pf, k, 0, &mut Vec::new(), &mut BTreeSet::new(), &mut out);
    out
}

fn grow(
    l: &Links,
    pf: &[Tuple],
    k: usize,
    start: usize,
    cur: &mut Vec<Tuple>,
    used: &mut BTreeSet<(u32, u32)>,
    out: &mut BTreeSet<Vec<Tuple>>,
) {
    if cur.len() == k {
        if complete(l, cur) {
            out.insert(cur.clone());
        }
        return;
    }
    for i in start..pf.len() {
        let cs = corners(&pf[i]);
        if cs.iter().any(|c| used.contains(c)) {
            continue;
        }
        used.extend(cs);
        cur.push(pf[i]);
        grow(l, pf, k, i + 1, cur, used, out);
        cur.pop();
        for c in cs {
            used.remove(&c);
        }
    }
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// All vertex bijections from link `i` onto link `j` that carry edges to
/// edges, by assigning vertices `0, 1, ...` in turn.
fn link_isos(l: &Links, i: usize, j: usize) -> Vec<Vec<u32>> {
    let n = l.sizes[i] as usize;
    if n != l.sizes[j] as usize || l.edges[i].len() != l.edges[j].len() {
        return Vec::new();
    }
    let adj = |es: &[(u32, u32)]| {
        let mut m = vec![vec![false; n]; n];
        for &(a, b) in es {
            m[a as usize][b as usize] = true;
            m[b as usize][a as usize] = true;
        }
        m
    };
    let (g, h) = (adj(&l.edges[i]), adj(&l.edges[j]));
    let mut out = Vec::new();
    let mut map = Vec::new();
    let mut used = vec![false; n];
    fn go(g: &[Vec<bool>], h: &[Vec<bool>], map: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        let x = map.len();
        if x == g.len() {
            out.push(map.clone());
            return;
        }
        for y in 0..g.len() {
            if used[y] || (0..x).any(|u| g[x][u] != h[y][map[u] as usize]) {
                continue;
            }
            used[y] = true;
            map.push(y as u32);
            go(g, h, map, used, out);
            map.pop();
            used[y] = false;
        }
    }
    go(&g, &h, &mut map, &mut used, &mut out);
    out
}

/// Every global relabeling: a permutation of the links sending each link
/// to an isomorphic one, combined with an isomorphism per link.
pub fn group(l: &Links) -> Vec<Vec<u32>> {
    let k = l.sizes.len();
    let offsets: Vec<u32> = (0..k).map(|i| l.sizes[..i].iter().sum()).collect();
    let mut out = Vec::new();
    for sigma in permutations(k as u32) {
        let per_link: Vec<Vec<Vec<u32>>> = (0..k).map(|i| link_isos(l, i, sigma[i] as usize)).collect();
        if per_link.iter().any(Vec::is_empty) {
            continue;
        }
        let mut partial: Vec<Vec<u32>> = vec![vec![0; l.total as usize]];
        for i in 0..k {
            let mut next = Vec::new();
            for m in &partial {
                for iso in &per_link[i] {
                    let mut m = m.clone();
                    for x in 0..l.sizes[i] {
                        m[(offsets[i] + x) as usize] = offsets[sigma[i] as usize] + iso[x as usize];
                    }
                    next.push(m);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

pub fn relabel(faces: &[Tuple], map: &[u32]) -> Vec<Tuple> {
    let mut out: Vec<Tuple> = faces.iter().map(|t| normalize(&t.map(|v| map[v as usize]))).collect();
    out.sort();
    out
}

/// Pairwise isomorphism test by trying every group element.
pub fn isomorphic(group: &[Vec<u32>], a: &[Tuple], b: &[Tuple]) -> bool {
    let mut b = b.to_vec();
    b.sort();
    group.iter().any(|g| relabel(a, g) == b)
}

/// Number of classes by quadratic comparison against class representatives.
pub fn class_count(group: &[Vec<u32>], complexes: &[Vec<Tuple>]) -> usize {
    let mut reps: Vec<&Vec<Tuple>> = Vec::new();
    for c in complexes {
        if !reps.iter().any(|r| isomorphic(group, r, c)) {
            reps.push(c);
        }
    }
    reps.len()
}

/// Tries all `2^classes * 2^faces` choices of class directions and face
/// reading directions. With `reflect == false` faces are read as given.
pub fn positively_orientable(faces: &[Tuple], reflect: bool) -> bool {
    let mut classes = BTreeMap::new();
    for t in faces {
        for (a, b) in wires(t) {
            let key = (a.min(b), a.max(b));
            let n = classes.len();
            classes.entry(key).or_insert(n);
        }
    }
    let (c, f) = (classes.len(), faces.len());
    let fmax: u64 = if reflect { 1 << f } else { 1 };
    for dirs in 0u64..(1 << c) {
        'reading: for reading in 0..fmax {
            for (i, t) in faces.iter().enumerate() {
                let backwards = reading >> i & 1 == 1;
                for (a, b) in wires(t) {
                    let (a, b) = if backwards { (b, a) } else { (a, b) };
                    let key = (a.min(b), a.max(b));
                    let forward = dirs >> classes[&key] & 1 == 0;
                    if (a < b) != forward {
                        continue 'reading;
                    }
                }
            }
            return true;
        }
    }
    false
}
