//! Undirected article graph with disjoint area labels.
//!
//! Vertices are numbered area-major: the members of area `a` occupy the
//! contiguous range [`ArticleGraph::area_range`]. Adjacency is stored in
//! CSR form with sorted neighbour lists.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::ops::Range;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::AreaAssignment;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArticleGraph {
    area_names: Vec<String>,
    area_offsets: Vec<usize>,
    area_of: Vec<u32>,
    titles: Vec<String>,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

impl ArticleGraph {
    /// Build from area sizes and an edge list over area-major vertex ids.
    ///
    /// Self-loops and repeated pairs are discarded; out-of-range endpoints
    /// are an error. Titles default to `"{area}#{i}"`.
    pub fn from_edges<I>(
        area_names: Vec<String>,
        area_sizes: &[usize],
        titles: Option<Vec<String>>,
        edges: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        if area_names.len() != area_sizes.len() {
            return Err(Error::Invariant("area names and sizes differ in length".into()));
        }
        let mut area_offsets = Vec::with_capacity(area_sizes.len() + 1);
        area_offsets.push(0);
        let mut area_of = Vec::new();
        for (a, &size) in area_sizes.iter().enumerate() {
            area_of.extend(std::iter::repeat_n(a as u32, size));
            area_offsets.push(area_of.len());
        }
        let n = area_of.len();
        if n > u32::MAX as usize {
            return Err(Error::Invariant("too many vertices".into()));
        }

        let titles = match titles {
            Some(t) if t.len() == n => t,
            Some(t) => {
                return Err(Error::Invariant(format!("{} titles for {n} vertices", t.len())));
            }
            None => (0..n)
                .map(|v| {
                    format!(
                        "{}#{}",
                        area_names[area_of[v] as usize],
                        v - area_offsets[area_of[v] as usize]
                    )
                })
                .collect(),
        };

        let mut edge_list = Vec::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Invariant(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u != v {
                edge_list.push((u.min(v), u.max(v)));
            }
        }
        edge_list.sort_unstable();
        edge_list.dedup();

        let mut degree = vec![0usize; n];
        for &(u, v) in &edge_list {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; offsets[n]];
        for &(u, v) in &edge_list {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }

        Ok(ArticleGraph {
            area_names,
            area_offsets,
            area_of,
            titles,
            offsets,
            neighbors,
            edges: edge_list,
        })
    }

    pub fn n(&self) -> usize {
        self.area_of.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn n_areas(&self) -> usize {
        self.area_names.len()
    }

    pub fn area_names(&self) -> &[String] {
        &self.area_names
    }

    pub fn area_of(&self, v: u32) -> usize {
        self.area_of[v as usize] as usize
    }

    pub fn area_range(&self, area: usize) -> Range<usize> {
        self.area_offsets[area]..self.area_offsets[area + 1]
    }

    pub fn area_size(&self, area: usize) -> usize {
        self.area_offsets[area + 1] - self.area_offsets[area]
    }

    pub fn area_sizes(&self) -> Vec<usize> {
        (0..self.n_areas()).map(|a| self.area_size(a)).collect()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn title(&self, v: u32) -> &str {
        &self.titles[v as usize]
    }

    pub fn titles(&self) -> &[String] {
        &self.titles
    }
}

/// Link bookkeeping from [`build_graph`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildReport {
    pub links_read: usize,
    pub self_links: usize,
    /// Links with an endpoint outside the assigned articles.
    pub dropped_external: usize,
    /// Links collapsing onto an already present undirected edge.
    pub duplicates: usize,
    pub vertices: usize,
    pub edges: usize,
}

/// Build the article graph from assigned articles and title-pair links.
pub fn build_graph<S: AsRef<str>>(
    assignment: &AreaAssignment,
    links: &[(S, S)],
) -> Result<(ArticleGraph, BuildReport)> {
    if assignment.is_empty() {
        return Err(Error::Config("empty area assignment".into()));
    }
    let mut order: Vec<usize> = (0..assignment.articles.len()).collect();
    order.sort_by_key(|&i| assignment.articles[i].area);

    let mut vertex_of: HashMap<&str, u32> = HashMap::with_capacity(order.len());
    let mut titles = Vec::with_capacity(order.len());
    for (v, &i) in order.iter().enumerate() {
        let title = assignment.articles[i].title.as_str();
        vertex_of.insert(title, v as u32);
        titles.push(title.to_owned());
    }
    let sizes: Vec<usize> = assignment.areas.iter().map(|a| a.count).collect();

    let mut report = BuildReport {
        links_read: links.len(),
        ..Default::default()
    };
    let mut pairs = Vec::with_capacity(links.len());
    for (src, dst) in links {
        let (src, dst) = (src.as_ref(), dst.as_ref());
        match (vertex_of.get(src), vertex_of.get(dst)) {
            (Some(&u), Some(&v)) if u == v => report.self_links += 1,
            (Some(&u), Some(&v)) => pairs.push((u, v)),
            _ if src == dst => report.self_links += 1,
            _ => report.dropped_external += 1,
        }
    }
    let kept = pairs.len();
    let g = ArticleGraph::from_edges(assignment.area_names(), &sizes, Some(titles), pairs)?;
    report.duplicates = kept - g.edge_count();
    report.vertices = g.n();
    report.edges = g.edge_count();
    Ok((g, report))
}

/// Parse a `source<TAB>target` links file.
pub fn parse_links_str(text: &str, origin: &Path) -> Result<Vec<(String, String)>> {
    let mut links = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        match (fields.next(), fields.next(), fields.next()) {
            (Some(s), Some(t), None) if !s.trim().is_empty() && !t.trim().is_empty() => {
                links.push((s.trim().to_owned(), t.trim().to_owned()))
            }
            _ => return Err(Error::parse(origin, i + 1, "expected `source<TAB>target`")),
        }
    }
    Ok(links)
}

pub fn parse_links(path: &Path) -> Result<Vec<(String, String)>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_links_str(&text, path)
}

/// Raw per-area counts: internal edges per area and external edges per
/// unordered area pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AreaCounts {
    n_areas: usize,
    pub internal: Vec<u64>,
    /// Upper-triangular, row-major over pairs `a < b`.
    pub external: Vec<u64>,
}

/// Position of the unordered pair `{a, b}` (`a != b`) in a row-major upper
/// triangle over `m` areas.
pub fn pair_index(a: usize, b: usize, m: usize) -> usize {
    debug_assert!(a != b && a < m && b < m);
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * m - a * (a + 1) / 2 + (b - a - 1)
}

pub fn pair_count(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// All unordered pairs `a < b` in [`pair_index`] order.
pub fn pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |a| (a + 1..m).map(move |b| (a, b)))
}

impl AreaCounts {
    pub fn zeros(n_areas: usize) -> Self {
        AreaCounts {
            n_areas,
            internal: vec![0; n_areas],
            external: vec![0; pair_count(n_areas)],
        }
    }

    pub fn n_areas(&self) -> usize {
        self.n_areas
    }

    pub fn external(&self, a: usize, b: usize) -> u64 {
        self.external[pair_index(a, b, self.n_areas)]
    }

    pub fn record(&mut self, a: usize, b: usize) {
        if a == b {
            self.internal[a] += 1;
        } else {
            self.external[pair_index(a, b, self.n_areas)] += 1;
        }
    }

    pub fn total(&self) -> u64 {
        self.internal.iter().sum::<u64>() + self.external.iter().sum::<u64>()
    }
}

/// Exact full-graph collapse of edges onto area pairs.
pub fn edge_census(g: &ArticleGraph) -> AreaCounts {
    let mut counts = AreaCounts::zeros(g.n_areas());
    for &(u, v) in g.edges() {
        counts.record(g.area_of(u), g.area_of(v));
    }
    counts
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

pub(crate) fn graphml_escape(s: &str) -> String {
    xml_escape(s)
}

/// GraphML with `title` and `area` vertex attributes.
pub fn to_graphml(g: &ArticleGraph) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    out.push_str("  <key id=\"title\" for=\"node\" attr.name=\"title\" attr.type=\"string\"/>\n");
    out.push_str("  <key id=\"area\" for=\"node\" attr.name=\"area\" attr.type=\"string\"/>\n");
    out.push_str("  <graph id=\"articles\" edgedefault=\"undirected\">\n");
    for v in 0..g.n() as u32 {
        let _ = writeln!(
            out,
            "    <node id=\"n{v}\"><data key=\"title\">{}</data><data key=\"area\">{}</data></node>",
            xml_escape(g.title(v)),
            xml_escape(&g.area_names()[g.area_of(v)])
        );
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "    <edge source=\"n{u}\" target=\"n{v}\"/>");
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

/// Binary adjacency format, little-endian:
///
/// ```text
/// magic    b"KNAG"
/// version  u32 = 1
/// areas    u32, then per area: name (u32 len + UTF-8), size u32
/// vertices u64, then per vertex: title (u32 len + UTF-8)
/// edges    u64, then per edge: u32 u, u32 v   (u < v, sorted)
/// ```
pub const BINARY_MAGIC: &[u8; 4] = b"KNAG";
pub const BINARY_VERSION: u32 = 1;

fn put_str(buf: &mut Vec<u8>, s: &str) {
    buf.extend_from_slice(&(s.len() as u32).to_le_bytes());
    buf.extend_from_slice(s.as_bytes());
}

pub fn to_binary(g: &ArticleGraph) -> Vec<u8> {
    let mut buf = Vec::new();
    buf.extend_from_slice(BINARY_MAGIC);
    buf.extend_from_slice(&BINARY_VERSION.to_le_bytes());
    buf.extend_from_slice(&(g.n_areas() as u32).to_le_bytes());
    for (a, name) in g.area_names().iter().enumerate() {
        put_str(&mut buf, name);
        buf.extend_from_slice(&(g.area_size(a) as u32).to_le_bytes());
    }
    buf.extend_from_slice(&(g.n() as u64).to_le_bytes());
    for t in g.titles() {
        put_str(&mut buf, t);
    }
    buf.extend_from_slice(&(g.edge_count() as u64).to_le_bytes());
    for &(u, v) in g.edges() {
        buf.extend_from_slice(&u.to_le_bytes());
        buf.extend_from_slice(&v.to_le_bytes());
    }
    buf
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.buf.len() - self.pos < n {
            return Err(Error::BadBinary(format!("truncated at byte {}", self.pos)));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn string(&mut self) -> Result<String> {
        let len = self.u32()? as usize;
        let bytes = self.take(len)?;
        String::from_utf8(bytes.to_vec()).map_err(|_| Error::BadBinary("string is not UTF-8".into()))
    }
}

pub fn from_binary(buf: &[u8]) -> Result<ArticleGraph> {
    let mut r = Reader { buf, pos: 0 };
    if r.take(4)? != BINARY_MAGIC {
        return Err(Error::BadBinary("bad magic".into()));
    }
    let version = r.u32()?;
    if version != BINARY_VERSION {
        return Err(Error::BadBinary(format!("unsupported version {version}")));
    }
    let n_areas = r.u32()? as usize;
    let mut names = Vec::with_capacity(n_areas);
    let mut sizes = Vec::with_capacity(n_areas);
    for _ in 0..n_areas {
        names.push(r.string()?);
        sizes.push(r.u32()? as usize);
    }
    let n = r.u64()? as usize;
    if n != sizes.iter().sum::<usize>() {
        return Err(Error::BadBinary("vertex count disagrees with area sizes".into()));
    }
    let titles = (0..n).map(|_| r.string()).collect::<Result<Vec<_>>>()?;
    let m = r.u64()? as usize;
    let mut edges = Vec::with_capacity(m.min(buf.len() / 8));
    for _ in 0..m {
        edges.push((r.u32()?, r.u32()?));
    }
    if r.pos != buf.len() {
        return Err(Error::BadBinary("trailing bytes".into()));
    }
    let unique: BTreeSet<_> = edges.iter().collect();
    if unique.len() != m || edges.iter().any(|&(u, v)| u >= v) {
        return Err(Error::BadBinary("edges must be unique with u < v".into()));
    }
    ArticleGraph::from_edges(names, &sizes, Some(titles), edges)
}
