//! Bundled reference complexes and their expected properties.
//!
//! * `V1`..`V27`: the single-vertex Möbius–Kantor complexes, wired form.
//! * `conv-8`: a single-vertex complex whose first-occurrence presentation
//!   is known word for word.
//! * `b2-45`: a 7-vertex, 45-face complex with `K_{3,3}` and `GQ(2,2)`
//!   links, as typed triangles.
//! * `mk-192`: a 24-vertex Möbius–Kantor complex as bare face words.
//!
//! File contents are pinned by `fixtures/SHA256SUMS`.

use std::collections::BTreeMap;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::format::{parse_presentation, parse_typed_triangles, parse_wired, ComplexFile};
use crate::graph::Graph;
use crate::presentation::{typed_triangles_to_presentation, wired_to_presentation, PresentationComplex};
use crate::wired::{LinkArrangement, WiredComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureFormat {
    Wired,
    TypedTriangles,
    Presentation,
}

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub id: &'static str,
    pub format: FixtureFormat,
    pub text: &'static str,
}

macro_rules! fixture {
    ($id:literal, $fmt:ident) => {
        Fixture { id: $id, format: FixtureFormat::$fmt, text: include_str!(concat!("../../../fixtures/", $id)) }
    };
}

const MANIFEST: &str = include_str!("../../../fixtures/SHA256SUMS");

/// Presentation words of `conv-8` under first-occurrence labeling.
pub const CONV8_WORDS: &str = "[[1,1,2],[3,1,4],[2,5,4],[2,6,7],[3,3,8],[6,4,5],[6,5,8],[7,7,8]]";

pub fn all() -> Vec<Fixture> {
    vec![
        fixture!("V1", Wired),
        fixture!("V2", Wired),
        fixture!("V3", Wired),
        fixture!("V4", Wired),
        fixture!("V5", Wired),
        fixture!("V6", Wired),
        fixture!("V7", Wired),
        fixture!("V8", Wired),
        fixture!("V9", Wired),
        fixture!("V10", Wired),
        fixture!("V11", Wired),
        fixture!("V12", Wired),
        fixture!("V13", Wired),
        fixture!("V14", Wired),
        fixture!("V15", Wired),
        fixture!("V16", Wired),
        fixture!("V17", Wired),
        fixture!("V18", Wired),
        fixture!("V19", Wired),
        fixture!("V20", Wired),
        fixture!("V21", Wired),
        fixture!("V22", Wired),
        fixture!("V23", Wired),
        fixture!("V24", Wired),
        fixture!("V25", Wired),
        fixture!("V26", Wired),
        fixture!("V27", Wired),
        fixture!("conv-8", Wired),
        fixture!("b2-45", TypedTriangles),
        fixture!("mk-192", Presentation),
    ]
}

pub fn get(id: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.id == id)
}

fn mk16_arrangement() -> Arc<LinkArrangement> {
    Arc::new(LinkArrangement::builtin(&["mk16"]).expect("builtin"))
}

/// Fixture `V<k>`, `1 <= k <= 27`, as a complete complex.
pub fn v_complex(k: usize) -> WiredComplex {
    wired(&format!("V{k}"))
}

/// All 27 single-vertex fixtures in order.
pub fn v_complexes() -> Vec<WiredComplex> {
    (1..=27).map(v_complex).collect()
}

/// A bundled wired fixture over builtin links.
pub fn wired(id: &str) -> WiredComplex {
    let f = get(id).unwrap_or_else(|| panic!("no fixture {id}"));
    let w = parse_wired(f.text).expect("bundled wired fixture parses");
    let arr = if w.links == ["mk16"] {
        mk16_arrangement()
    } else {
        Arc::new(w.arrangement(None).expect("bundled fixture uses builtin links"))
    };
    WiredComplex::new(arr, w.faces).expect("bundled wired fixture is complete")
}

pub fn b2_presentation() -> PresentationComplex {
    let tris = parse_typed_triangles(get("b2-45").unwrap().text).expect("b2-45 parses");
    typed_triangles_to_presentation(&tris).expect("b2-45 is consistent")
}

/// The 192-face list, without vertex data.
pub fn mk192_presentation() -> PresentationComplex {
    parse_presentation(get("mk-192").unwrap().text).expect("mk-192 parses")
}

fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Checksums from the manifest, keyed by fixture id.
pub fn manifest() -> BTreeMap<&'static str, &'static str> {
    MANIFEST
        .lines()
        .filter_map(|l| {
            let mut it = l.split_whitespace();
            let hash = it.next()?;
            let id = it.next()?;
            Some((id, hash))
        })
        .collect()
}

/// One line of a fixture check.
#[derive(Clone, Debug)]
pub struct FixtureReport {
    pub id: &'static str,
    pub result: Result<String, String>,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn link_tally(p: &PresentationComplex, targets: &[&str]) -> Result<BTreeMap<String, usize>, String> {
    let targets: Vec<(String, Graph)> =
        targets.iter().map(|&n| (n.to_string(), Graph::builtin(n).unwrap())).collect();
    Ok(p.verify_links(&targets).map_err(|e| e.to_string())?.tally())
}

fn check_single_vertex(c: &WiredComplex) -> Result<(), String> {
    ensure(c.faces().len() == 8, || format!("{} faces, expected 8", c.faces().len()))?;
    ensure(c.class_occurrences().values().all(|&n| n == 3), || "a wire class does not occur 3 times".into())?;
    let p = wired_to_presentation(c);
    ensure(p.edge_count() == 8, || format!("{} edge labels, expected 8", p.edge_count()))?;
    ensure(p.with_inferred_vertices().vertex_count() == Some(1), || "inferred vertex count is not 1".into())?;
    let tally = link_tally(&p, &["mk16"])?;
    ensure(tally.get("mk16") == Some(&1) && tally.len() == 1, || format!("link tally {tally:?}"))
}

/// Runs the expected-properties record of one fixture.
pub fn check(f: &Fixture) -> Result<String, String> {
    let expected = manifest().get(f.id).copied().ok_or("missing from manifest")?;
    ensure(sha256_hex(f.text) == expected, || "checksum mismatch".into())?;
    ComplexFile::parse(f.text).map_err(|e| e.to_string())?;
    match f.id {
        "b2-45" => {
            let p = b2_presentation();
            ensure(p.faces().len() == 45, || format!("{} faces", p.faces().len()))?;
            ensure(p.vertex_count() == Some(7), || format!("{:?} vertices", p.vertex_count()))?;
            let tally = link_tally(&p, &["k33", "gq22"])?;
            ensure(tally.get("k33") == Some(&5) && tally.get("gq22") == Some(&2) && tally.len() == 2, || {
                format!("link tally {tally:?}")
            })?;
            Ok("faces=45 vertices=7 links=k33:5,gq22:2".into())
        }
        "mk-192" => {
            let p = mk192_presentation().with_inferred_vertices();
            ensure(p.faces().len() == 192, || format!("{} faces", p.faces().len()))?;
            ensure(p.vertex_count() == Some(24), || format!("{:?} vertices", p.vertex_count()))?;
            let tally = link_tally(&p, &["mk16"])?;
            ensure(tally.get("mk16") == Some(&24), || format!("link tally {tally:?}"))?;
            Ok("faces=192 vertices=24 links=mk16:24".into())
        }
        "conv-8" => {
            let c = wired(f.id);
            check_single_vertex(&c)?;
            let words = wired_to_presentation(&c).words_bracketed();
            ensure(words == CONV8_WORDS, || format!("words {words}"))?;
            ensure(crate::presentation::positively_orientable(&c), || "not positively orientable".into())?;
            Ok(format!("words={words}"))
        }
        id => {
            let c = wired(id);
            check_single_vertex(&c)?;
            Ok("faces=8 vertices=1 links=mk16:1".into())
        }
    }
}

/// Checks every bundled fixture.
pub fn check_all() -> Vec<FixtureReport> {
    all().iter().map(|f| FixtureReport { id: f.id, result: check(f) }).collect()
}
