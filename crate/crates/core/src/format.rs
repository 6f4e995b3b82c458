//! Line-oriented text formats.
//!
//! | format            | header               | body lines                         |
//! |-------------------|----------------------|------------------------------------|
//! | graph             | `graph <name> <n>`   | `edge <a> <b>`                     |
//! | wired complex     | `links <spec> ...`   | `(a1,b1)(a2,b2)(a3,b3)`            |
//! | presentation      | `edges <m>`          | `s1 s2 s3`, `vertex <l> <i> <t>`   |
//! | typed triangles   | (none)               | `tri <e1> <e2> <e3> <v1> <v2> <v3>`|
//!
//! `#` starts a comment everywhere; blank lines are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;

use crate::error::{FormatError, GraphError, PresentationError, WiredError};
use crate::graph::Graph;
use crate::presentation::{typed_triangles_to_presentation, wired_to_presentation, PresentationComplex, TypedTriangle};
use crate::wired::{LinkArrangement, WiredComplex, WiredFace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Graph,
    Wired,
    Presentation,
    TypedTriangles,
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap().trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Classifies a file by the keyword of its first content line.
pub fn detect_kind(text: &str) -> Result<FileKind, FormatError> {
    let (line, first) = content_lines(text).next().ok_or_else(|| FormatError::new(0, "empty file"))?;
    match first.split_whitespace().next().unwrap() {
        "graph" => Ok(FileKind::Graph),
        "links" => Ok(FileKind::Wired),
        "edges" => Ok(FileKind::Presentation),
        "tri" => Ok(FileKind::TypedTriangles),
        other => Err(FormatError::new(line, format!("unrecognized header `{other}`"))),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, FormatError> {
    let tok = tok.ok_or_else(|| FormatError::new(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| FormatError::new(line, format!("bad {what} `{tok}`")))
}

fn expect_end<'a>(line: usize, mut toks: impl Iterator<Item = &'a str>) -> Result<(), FormatError> {
    match toks.next() {
        Some(t) => Err(FormatError::new(line, format!("unexpected token `{t}`"))),
        None => Ok(()),
    }
}

pub fn parse_graph(text: &str) -> Result<(String, Graph), FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| FormatError::new(0, "empty graph file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("graph") {
        return Err(FormatError::new(hl, "expected `graph <name> <n>`"));
    }
    let name = toks.next().ok_or_else(|| FormatError::new(hl, "missing graph name"))?.to_string();
    let n: usize = parse_num(hl, toks.next(), "vertex count")?;
    expect_end(hl, toks)?;
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        if toks.next() != Some("edge") {
            return Err(FormatError::new(ln, "expected `edge <a> <b>`"));
        }
        let a = parse_num(ln, toks.next(), "endpoint")?;
        let b = parse_num(ln, toks.next(), "endpoint")?;
        expect_end(ln, toks)?;
        edges.push((a, b));
    }
    let g = Graph::new(n, edges).map_err(|e| FormatError::new(hl, e.to_string()))?;
    Ok((name, g))
}

pub fn write_graph(name: &str, g: &Graph) -> String {
    let mut s = format!("graph {name} {}\n", g.n());
    for &(a, b) in g.edges() {
        writeln!(s, "edge {a} {b}").unwrap();
    }
    s
}

/// A parsed wired-complex file; faces keep their file order and orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiredFile {
    pub links: Vec<String>,
    pub faces: Vec<WiredFace>,
}

fn parse_face(line: usize, text: &str) -> Result<WiredFace, FormatError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || FormatError::new(line, format!("expected `(a1,b1)(a2,b2)(a3,b3)`, got `{text}`"));
    let body = compact.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let parts: Vec<&str> = body.split(")(").collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut pairs = [(0u32, 0u32); 3];
    for (k, p) in parts.iter().enumerate() {
        let (a, b) = p.split_once(',').ok_or_else(bad)?;
        pairs[k] = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    }
    WiredFace::from_pairs(pairs).map_err(|e| FormatError::new(line, e.to_string()))
}

pub fn parse_wired(text: &str) -> Result<WiredFile, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| FormatError::new(0, "empty wired file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("links") {
        return Err(FormatError::new(hl, "expected `links <spec> ...`"));
    }
    let links: Vec<String> = toks.map(str::to_string).collect();
    let faces = lines.map(|(ln, l)| parse_face(ln, l)).collect::<Result<_, _>>()?;
    Ok(WiredFile { links, faces })
}

pub fn write_wired(links: &[String], faces: &[WiredFace]) -> String {
    let mut s = format!("links {}\n", links.join(" "));
    for f in faces {
        writeln!(s, "{f}").unwrap();
    }
    s
}

pub fn parse_presentation(text: &str) -> Result<PresentationComplex, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| FormatError::new(0, "empty presentation file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("edges") {
        return Err(FormatError::new(hl, "expected `edges <m>`"));
    }
    let m: u32 = parse_num(hl, toks.next(), "edge count")?;
    expect_end(hl, toks)?;
    let mut faces = Vec::new();
    let mut vertices: Vec<Option<(u32, u32)>> = vec![None; m as usize];
    let mut any_vertex = None;
    for (ln, l) in lines {
        let mut toks = l.split_whitespace().peekable();
        if toks.peek() == Some(&"vertex") {
            toks.next();
            let label: u32 = parse_num(ln, toks.next(), "label")?;
            let i = parse_num(ln, toks.next(), "initial vertex")?;
            let t = parse_num(ln, toks.next(), "terminal vertex")?;
            expect_end(ln, toks)?;
            if label == 0 || label > m {
                return Err(FormatError::new(ln, format!("vertex line for label {label} outside 1..={m}")));
            }
            if vertices[label as usize - 1].replace((i, t)).is_some() {
                return Err(FormatError::new(ln, format!("duplicate vertex line for label {label}")));
            }
            any_vertex.get_or_insert(ln);
        } else {
            let s1 = parse_num(ln, toks.next(), "signed label")?;
            let s2 = parse_num(ln, toks.next(), "signed label")?;
            let s3 = parse_num(ln, toks.next(), "signed label")?;
            expect_end(ln, toks)?;
            faces.push([s1, s2, s3]);
        }
    }
    let vertices = match any_vertex {
        None => None,
        Some(ln) => Some(
            vertices
                .into_iter()
                .enumerate()
                .map(|(l, v)| v.ok_or_else(|| FormatError::new(ln, format!("no vertex line for label {}", l + 1))))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    PresentationComplex::new(m, faces, vertices).map_err(|e| FormatError::new(hl, e.to_string()))
}

pub fn write_presentation(p: &PresentationComplex) -> String {
    let mut s = format!("edges {}\n", p.edge_count());
    for f in p.faces() {
        writeln!(s, "{} {} {}", f[0], f[1], f[2]).unwrap();
    }
    if let Some(v) = p.vertices() {
        for (l, (i, t)) in v.iter().enumerate() {
            writeln!(s, "vertex {} {i} {t}", l + 1).unwrap();
        }
    }
    s
}

pub fn parse_typed_triangles(text: &str) -> Result<Vec<TypedTriangle>, FormatError> {
    content_lines(text)
        .map(|(ln, l)| {
            let mut toks = l.split_whitespace();
            if toks.next() != Some("tri") {
                return Err(FormatError::new(ln, "expected `tri <e1> <e2> <e3> <v1> <v2> <v3>`"));
            }
            let mut vals = [0u32; 6];
            for v in &mut vals {
                *v = parse_num(ln, toks.next(), "value")?;
            }
            expect_end(ln, toks)?;
            Ok(TypedTriangle { edges: [vals[0], vals[1], vals[2]], vertices: [vals[3], vals[4], vals[5]] })
        })
        .collect()
}

pub fn write_typed_triangles(tris: &[TypedTriangle]) -> String {
    let mut s = String::new();
    for t in tris {
        let [e1, e2, e3] = t.edges;
        let [v1, v2, v3] = t.vertices;
        writeln!(s, "tri {e1} {e2} {e3} {v1} {v2} {v3}").unwrap();
    }
    s
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Wired(#[from] WiredError),
    #[error("{0}")]
    Presentation(#[from] PresentationError),
    #[error("{path}: expected a {expected} file")]
    WrongKind { path: PathBuf, expected: &'static str },
}

pub fn read_text(path: &Path) -> Result<String, LoadError> {
    fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.to_path_buf(), source })
}

/// Builtin graph name, or path to a graph file (relative to `base`).
pub fn resolve_link(spec: &str, base: Option<&Path>) -> Result<(String, Graph), LoadError> {
    match Graph::builtin(spec) {
        Ok(g) => Ok((spec.to_string(), g)),
        Err(GraphError::UnknownBuiltin(_)) => {
            let candidates = [Some(PathBuf::from(spec)), base.map(|b| b.join(spec))];
            let path = candidates.into_iter().flatten().find(|p| p.is_file());
            let path = path.ok_or_else(|| GraphError::UnknownBuiltin(spec.to_string()))?;
            let text = read_text(&path)?;
            let (_, g) = parse_graph(&text).map_err(|source| LoadError::Format { path: path.clone(), source })?;
            Ok((spec.to_string(), g))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn arrangement_from_specs(specs: &[String], base: Option<&Path>) -> Result<LinkArrangement, LoadError> {
    let links = specs.iter().map(|s| resolve_link(s, base)).collect::<Result<Vec<_>, _>>()?;
    Ok(LinkArrangement::new(links))
}

impl WiredFile {
    pub fn arrangement(&self, base: Option<&Path>) -> Result<LinkArrangement, LoadError> {
        arrangement_from_specs(&self.links, base)
    }

    /// Validates the faces into a complete complex over the named links.
    pub fn complex(&self, base: Option<&Path>) -> Result<WiredComplex, LoadError> {
        let arr = Arc::new(self.arrangement(base)?);
        Ok(WiredComplex::new(arr, self.faces.clone())?)
    }
}

/// Any complex-bearing file.
#[derive(Clone, Debug)]
pub enum ComplexFile {
    Wired(WiredFile),
    Presentation(PresentationComplex),
    TypedTriangles(Vec<TypedTriangle>),
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        match detect_kind(text)? {
            FileKind::Wired => parse_wired(text).map(ComplexFile::Wired),
            FileKind::Presentation => parse_presentation(text).map(ComplexFile::Presentation),
            FileKind::TypedTriangles => parse_typed_triangles(text).map(ComplexFile::TypedTriangles),
            FileKind::Graph => Err(FormatError::new(1, "expected a complex, found a graph file")),
        }
    }

    pub fn load(path: &Path) -> Result<Self, LoadError> {
        let text = read_text(path)?;
        Self::parse(&text).map_err(|source| LoadError::Format { path: path.to_path_buf(), source })
    }

    /// Presentation with vertices: explicit where the format carries them,
    /// inferred otherwise.
    pub fn presentation(&self, base: Option<&Path>) -> Result<PresentationComplex, LoadError> {
        Ok(match self {
            ComplexFile::Wired(w) => wired_to_presentation(&w.complex(base)?),
            ComplexFile::Presentation(p) if p.vertices().is_some() => p.clone(),
            ComplexFile::Presentation(p) => p.with_inferred_vertices(),
            ComplexFile::TypedTriangles(t) => typed_triangles_to_presentation(t)?,
        })
    }
}

/// Loads a wired complex file into a complete complex.
pub fn load_wired(path: &Path) -> Result<WiredComplex, LoadError> {
    match ComplexFile::load(path)? {
        ComplexFile::Wired(w) => w.complex(path.parent()),
        _ => Err(LoadError::WrongKind { path: path.to_path_buf(), expected: "wired complex" }),
    }
}
