//! Analyses over a [`KnowledgeNetwork`]: the strongest-edge backbone, each
//! area's external shares, and internal/external proportions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampler::{csv_field, KnowledgeNetwork};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackboneEdge {
    pub a: String,
    pub b: String,
    pub weight: f64,
}

/// Maximum-weight spanning tree of the positive-weight edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Backbone {
    pub edges: Vec<BackboneEdge>,
    pub total_weight: f64,
}

impl Backbone {
    pub fn contains(&self, a: &str, b: &str) -> bool {
        self.edges
            .iter()
            .any(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
    }
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            Ordering::Less => self.parent[ra] = rb,
            Ordering::Greater => self.parent[rb] = ra,
            Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

fn name_pair(net: &KnowledgeNetwork, a: usize, b: usize) -> (&str, &str) {
    let (x, y) = (net.areas()[a].as_str(), net.areas()[b].as_str());
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Kruskal over descending weight; equal weights are taken in lexicographic
/// order of the area-name pair.
pub fn backbone_mst(net: &KnowledgeNetwork) -> Result<Backbone> {
    let m = net.n_areas();
    let mut candidates: Vec<(usize, usize, f64)> = net.edges().filter(|&(_, _, w)| w > 0.0).collect();
    candidates.sort_by(|x, y| {
        y.2.total_cmp(&x.2)
            .then_with(|| name_pair(net, x.0, x.1).cmp(&name_pair(net, y.0, y.1)))
    });

    let mut ds = DisjointSet::new(m);
    let mut edges = Vec::with_capacity(m.saturating_sub(1));
    for (a, b, w) in candidates {
        if ds.union(a, b) {
            edges.push(BackboneEdge {
                a: net.areas()[a].clone(),
                b: net.areas()[b].clone(),
                weight: w,
            });
            if edges.len() + 1 == m {
                break;
            }
        }
    }

    if m > 0 && edges.len() + 1 != m {
        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for a in 0..m {
            groups.entry(ds.find(a)).or_default().push(net.areas()[a].clone());
        }
        let mut components: Vec<Vec<String>> = groups.into_values().collect();
        for c in &mut components {
            c.sort();
        }
        components.sort();
        return Err(Error::Disconnected(components));
    }

    let total_weight = edges.iter().map(|e| e.weight).sum();
    Ok(Backbone { edges, total_weight })
}

/// DOT rendering of the network; backbone edges carry `backbone=true` and an
/// orange colour.
pub fn backbone_dot(net: &KnowledgeNetwork, backbone: &Backbone) -> String {
    let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
    let mut out = String::from("graph knowledge {\n");
    for (a, name) in net.areas().iter().enumerate() {
        let _ = writeln!(out, "  {} [weight={}];", quote(name), net.node_weight(a));
    }
    for (a, b, w) in net.edges() {
        if w <= 0.0 {
            continue;
        }
        let (na, nb) = (&net.areas()[a], &net.areas()[b]);
        if backbone.contains(na, nb) {
            let _ = writeln!(
                out,
                "  {} -- {} [weight={w}, backbone=true, color=orange];",
                quote(na),
                quote(nb)
            );
        } else {
            let _ = writeln!(out, "  {} -- {} [weight={w}, backbone=false];", quote(na), quote(nb));
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Share {
    pub area: String,
    pub percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShareRow {
    pub area: String,
    pub shares: Vec<Share>,
}

impl ShareRow {
    pub fn share_to(&self, other: &str) -> Option<f64> {
        self.shares.iter().find(|s| s.area == other).map(|s| s.percent)
    }
}

fn shares_of(net: &KnowledgeNetwork, a: usize) -> Result<Vec<Share>> {
    let total = net.external_weight(a);
    if total <= 0.0 {
        return Err(Error::ZeroExternalWeight(net.areas()[a].clone()));
    }
    Ok((0..net.n_areas())
        .filter(|&b| b != a)
        .map(|b| Share {
            area: net.areas()[b].clone(),
            percent: 100.0 * net.edge_weight(a, b) / total,
        })
        .collect())
}

/// Percentage of each focus area's external weight going to every other
/// area. Rows follow `focus` order.
pub fn external_shares(net: &KnowledgeNetwork, focus: &[String]) -> Result<Vec<ShareRow>> {
    focus
        .iter()
        .map(|name| {
            let a = net.area_index(name).ok_or_else(|| Error::UnknownArea(name.clone()))?;
            Ok(ShareRow {
                area: name.clone(),
                shares: shares_of(net, a)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaMetrics {
    pub area: String,
    pub internal_weight: f64,
    pub external_weight: f64,
    /// `internal / (internal + external)`.
    pub internal_fraction: f64,
    /// Empty when the area has no external weight.
    pub external_share: Vec<Share>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub areas: Vec<AreaMetrics>,
}

impl MetricsReport {
    pub fn get(&self, area: &str) -> Option<&AreaMetrics> {
        self.areas.iter().find(|m| m.area == area)
    }

    pub fn internal_fraction(&self, area: &str) -> Option<f64> {
        self.get(area).map(|m| m.internal_fraction)
    }

    /// One row per area metric and per area pair share:
    /// `kind,area,other,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,area,other,value\n");
        for m in &self.areas {
            let area = csv_field(&m.area);
            let _ = writeln!(out, "internal_weight,{area},,{}", m.internal_weight);
            let _ = writeln!(out, "external_weight,{area},,{}", m.external_weight);
            let _ = writeln!(out, "internal_fraction,{area},,{}", m.internal_fraction);
            for s in &m.external_share {
                let _ = writeln!(out, "external_share,{area},{},{}", csv_field(&s.area), s.percent);
            }
        }
        out
    }
}

/// Internal fraction and external shares for every area, from unnormalized
/// averaged counts.
pub fn internal_external_proportions(raw: &KnowledgeNetwork) -> Result<MetricsReport> {
    if raw.is_normalized() {
        return Err(Error::ExpectedRawCounts);
    }
    let mut areas = Vec::with_capacity(raw.n_areas());
    for (a, name) in raw.areas().iter().enumerate() {
        let internal = raw.node_weight(a);
        let external = raw.external_weight(a);
        if internal + external <= 0.0 {
            return Err(Error::ZeroTotalAreaWeight(name.clone()));
        }
        areas.push(AreaMetrics {
            area: name.clone(),
            internal_weight: internal,
            external_weight: external,
            internal_fraction: internal / (internal + external),
            external_share: if external > 0.0 { shares_of(raw, a)? } else { Vec::new() },
        });
    }
    Ok(MetricsReport { areas })
}

/// Connected components of a backbone over `areas` after dropping the edge
/// at `skip`.
pub fn backbone_components(areas: &[String], backbone: &Backbone, skip: Option<usize>) -> usize {
    let index: BTreeMap<&str, usize> = areas.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
    let mut ds = DisjointSet::new(areas.len());
    for (i, e) in backbone.edges.iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        if let (Some(&a), Some(&b)) = (index.get(e.a.as_str()), index.get(e.b.as_str())) {
            ds.union(a, b);
        }
    }
    (0..areas.len()).map(|a| ds.find(a)).collect::<BTreeSet<_>>().len()
}
