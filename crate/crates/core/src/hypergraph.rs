//! Literature-review table, the bipartite hypergraph derived from it, and
//! agreement scoring against a [`KnowledgeNetwork`].
//!
//! The review table is CSV: the first column names the interdisciplinary
//! area, every other header is a discipline, and each cell lists citation
//! keys separated by `;`. The physical/biological split of the disciplines
//! comes from a sidecar JSON `{"physical": [...], "biological": [...]}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampler::KnowledgeNetwork;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisciplinePartition {
    pub physical: Vec<String>,
    pub biological: Vec<String>,
}

impl DisciplinePartition {
    pub fn parse_str(text: &str) -> Result<Self> {
        let p: DisciplinePartition = serde_json::from_str(text)?;
        let mut seen = BTreeSet::new();
        for d in p.physical.iter().chain(&p.biological) {
            if !seen.insert(d) {
                return Err(Error::Config(format!("discipline {d:?} listed twice in partition")));
            }
        }
        Ok(p)
    }

    pub fn parse(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_str(&text)
    }

    pub fn disciplines(&self) -> impl Iterator<Item = &String> {
        self.physical.iter().chain(&self.biological)
    }

    pub fn is_physical(&self, d: &str) -> bool {
        self.physical.iter().any(|p| p == d)
    }

    pub fn contains(&self, d: &str) -> bool {
        self.disciplines().any(|x| x == d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReviewRow {
    pub area: String,
    /// Citation keys per discipline, parallel to [`ReviewTable::disciplines`].
    pub cells: Vec<BTreeSet<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReviewTable {
    pub partition: DisciplinePartition,
    /// Physical then biological disciplines.
    disciplines: Vec<String>,
    pub rows: Vec<ReviewRow>,
}

impl ReviewTable {
    pub fn empty(partition: DisciplinePartition) -> Self {
        let disciplines = partition.disciplines().cloned().collect();
        ReviewTable {
            partition,
            disciplines,
            rows: Vec::new(),
        }
    }

    pub fn disciplines(&self) -> &[String] {
        &self.disciplines
    }

    fn column(&self, discipline: &str) -> Option<usize> {
        self.disciplines.iter().position(|d| d == discipline)
    }

    pub fn row(&self, area: &str) -> Option<&ReviewRow> {
        self.rows.iter().find(|r| r.area == area)
    }

    pub fn count(&self, area: &str, discipline: &str) -> usize {
        match (self.row(area), self.column(discipline)) {
            (Some(r), Some(c)) => r.cells[c].len(),
            _ => 0,
        }
    }

    /// Number of distinct citations in the row.
    pub fn row_total(&self, area: &str) -> usize {
        self.row(area)
            .map(|r| r.cells.iter().flatten().collect::<BTreeSet<_>>().len())
            .unwrap_or(0)
    }

    /// Sum of the column's cell counts.
    pub fn column_total(&self, discipline: &str) -> usize {
        self.column(discipline)
            .map(|c| self.rows.iter().map(|r| r.cells[c].len()).sum())
            .unwrap_or(0)
    }

    pub fn cell_sum(&self) -> usize {
        self.rows.iter().flat_map(|r| &r.cells).map(BTreeSet::len).sum()
    }

    /// Add one citation key to a cell, creating the row if needed.
    pub fn cite(&mut self, area: &str, discipline: &str, key: &str) -> Result<()> {
        let c = self
            .column(discipline)
            .ok_or_else(|| Error::UnknownDiscipline(discipline.to_owned()))?;
        let n = self.disciplines.len();
        let row = match self.rows.iter().position(|r| r.area == area) {
            Some(i) => &mut self.rows[i],
            None => {
                self.rows.push(ReviewRow {
                    area: area.to_owned(),
                    cells: vec![BTreeSet::new(); n],
                });
                self.rows.last_mut().unwrap()
            }
        };
        row.cells[c].insert(key.to_owned());
        Ok(())
    }

    pub fn parse_str(text: &str, partition: DisciplinePartition, origin: &Path) -> Result<Self> {
        let mut table = ReviewTable::empty(partition);
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());

        let csv_err = |e: csv::Error| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            Error::parse(origin, line, e.to_string())
        };
        let headers = reader.headers().map_err(csv_err)?.clone();
        let mut columns = Vec::new();
        for h in headers.iter().skip(1) {
            columns.push(table.column(h).ok_or_else(|| Error::UnknownDiscipline(h.to_owned()))?);
        }
        if columns.iter().collect::<BTreeSet<_>>().len() != columns.len() {
            return Err(Error::parse(origin, 1, "duplicate discipline column"));
        }

        let n = table.disciplines.len();
        let mut seen = BTreeSet::new();
        for record in reader.records() {
            let record = record.map_err(csv_err)?;
            let area = record.get(0).unwrap_or_default().to_owned();
            if area.is_empty() {
                let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
                return Err(Error::parse(origin, line, "empty area name"));
            }
            if !seen.insert(area.clone()) {
                return Err(Error::DuplicateRow(area));
            }
            let mut cells = vec![BTreeSet::new(); n];
            for (field, &c) in record.iter().skip(1).zip(&columns) {
                cells[c] = field
                    .split(';')
                    .map(str::trim)
                    .filter(|k| !k.is_empty())
                    .map(str::to_owned)
                    .collect();
            }
            table.rows.push(ReviewRow { area, cells });
        }
        Ok(table)
    }
}

pub fn parse_review_table(path: &Path, partition_path: &Path) -> Result<ReviewTable> {
    let partition = DisciplinePartition::parse(partition_path)?;
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ReviewTable::parse_str(&text, partition, path)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperedge {
    pub area: String,
    /// Member disciplines in table column order.
    pub members: Vec<String>,
}

impl Hyperedge {
    pub fn contains(&self, d: &str) -> bool {
        self.members.iter().any(|m| m == d)
    }

    pub fn member_set(&self) -> BTreeSet<&str> {
        self.members.iter().map(String::as_str).collect()
    }
}

/// Interdisciplinary areas as hyperedges over discipline vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    pub physical: Vec<String>,
    pub biological: Vec<String>,
    pub hyperedges: Vec<Hyperedge>,
}

impl Hypergraph {
    pub fn vertices(&self) -> impl Iterator<Item = &String> {
        self.physical.iter().chain(&self.biological)
    }

    pub fn hyperedge(&self, area: &str) -> Option<&Hyperedge> {
        self.hyperedges.iter().find(|h| h.area == area)
    }

    /// Number of hyperedges containing `d`.
    pub fn degree(&self, d: &str) -> usize {
        self.hyperedges.iter().filter(|h| h.contains(d)).count()
    }
}

/// Presence/absence hypergraph: each row becomes the set of its nonzero
/// cells.
pub fn build_hypergraph(t: &ReviewTable) -> Result<Hypergraph> {
    let mut hyperedges = Vec::with_capacity(t.rows.len());
    for row in &t.rows {
        let members: Vec<String> = t
            .disciplines()
            .iter()
            .zip(&row.cells)
            .filter(|(_, keys)| !keys.is_empty())
            .map(|(d, _)| d.clone())
            .collect();
        if members.is_empty() {
            return Err(Error::EmptyHyperedge(row.area.clone()));
        }
        hyperedges.push(Hyperedge {
            area: row.area.clone(),
            members,
        });
    }
    Ok(Hypergraph {
        physical: t.partition.physical.clone(),
        biological: t.partition.biological.clone(),
        hyperedges,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaAgreement {
    pub area: String,
    /// The area's `m` strongest discipline neighbours in the network.
    pub predicted: Vec<String>,
    pub reference: Vec<String>,
    pub precision: f64,
    pub recall: f64,
    pub jaccard: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnreviewedPair {
    pub area: String,
    pub discipline: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnreviewedDiscipline {
    pub discipline: String,
    /// Focus areas whose strongest neighbours include it.
    pub strong_with: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub areas: Vec<AreaAgreement>,
    pub mean_precision: f64,
    pub mean_recall: f64,
    pub mean_jaccard: f64,
    /// Network-strong pairs the reviews do not record.
    pub unreviewed_pairs: Vec<UnreviewedPair>,
    /// Disciplines absent from every hyperedge yet network-strong for some
    /// focus area.
    pub unreviewed_disciplines: Vec<UnreviewedDiscipline>,
}

impl AgreementReport {
    pub fn get(&self, area: &str) -> Option<&AreaAgreement> {
        self.areas.iter().find(|a| a.area == area)
    }

    pub fn lists_unreviewed(&self, discipline: &str) -> bool {
        self.unreviewed_pairs.iter().any(|p| p.discipline == discipline)
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Agreement between knowledge network and review hypergraph");
        let _ = writeln!(
            out,
            "mean precision {:.3}  mean recall {:.3}  mean jaccard {:.3}",
            self.mean_precision, self.mean_recall, self.mean_jaccard
        );
        for a in &self.areas {
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "{}  (precision {:.3}, jaccard {:.3})",
                a.area, a.precision, a.jaccard
            );
            let _ = writeln!(out, "  network:   {}", a.predicted.join(", "));
            let _ = writeln!(out, "  reviews:   {}", a.reference.join(", "));
        }
        if !self.unreviewed_pairs.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "Strong in the network, absent from the reviews:");
            for p in &self.unreviewed_pairs {
                let _ = writeln!(out, "  {} -- {} ({:.6})", p.area, p.discipline, p.weight);
            }
        }
        for d in &self.unreviewed_disciplines {
            let _ = writeln!(
                out,
                "{} is cited by no review but is strong for {}",
                d.discipline,
                d.strong_with.join(", ")
            );
        }
        out
    }
}

/// Score each focus area's hyperedge against its `m` strongest discipline
/// neighbours in the network, `m` being the hyperedge size. Equal weights
/// rank by discipline name.
pub fn compare_with_network(hg: &Hypergraph, net: &KnowledgeNetwork, focus: &[String]) -> Result<AgreementReport> {
    let mut areas = Vec::with_capacity(focus.len());
    let mut unreviewed_pairs = Vec::new();
    for h in focus {
        let edge = hg.hyperedge(h).ok_or_else(|| Error::UnknownArea(h.clone()))?;
        let hi = net.area_index(h).ok_or_else(|| Error::UnknownArea(h.clone()))?;
        for d in &edge.members {
            if net.area_index(d).is_none() {
                return Err(Error::UnknownArea(d.clone()));
            }
        }
        let mut candidates: Vec<(&str, f64)> = hg
            .vertices()
            .filter(|d| *d != h)
            .filter_map(|d| net.area_index(d).map(|i| (d.as_str(), net.edge_weight(hi, i))))
            .collect();
        let m = edge.members.len();
        if candidates.len() < m {
            return Err(Error::NotEnoughNeighbours {
                area: h.clone(),
                needed: m,
                available: candidates.len(),
            });
        }
        candidates.sort_by(|x, y| y.1.total_cmp(&x.1).then_with(|| x.0.cmp(y.0)));
        candidates.truncate(m);

        let reference = edge.member_set();
        let overlap = candidates.iter().filter(|(d, _)| reference.contains(d)).count();
        let score = overlap as f64 / m as f64;
        for &(d, w) in &candidates {
            if !reference.contains(d) {
                unreviewed_pairs.push(UnreviewedPair {
                    area: h.clone(),
                    discipline: d.to_owned(),
                    weight: w,
                });
            }
        }
        areas.push(AreaAgreement {
            area: h.clone(),
            predicted: candidates.iter().map(|(d, _)| d.to_string()).collect(),
            reference: edge.members.clone(),
            precision: score,
            recall: score,
            jaccard: overlap as f64 / (2 * m - overlap) as f64,
        });
    }

    let mut strong: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for p in &unreviewed_pairs {
        if hg.degree(&p.discipline) == 0 {
            strong.entry(p.discipline.as_str()).or_default().push(p.area.clone());
        }
    }
    let unreviewed_disciplines = hg
        .vertices()
        .filter_map(|d| {
            strong.get(d.as_str()).map(|with| UnreviewedDiscipline {
                discipline: d.clone(),
                strong_with: with.clone(),
            })
        })
        .collect();

    let mean = |f: fn(&AreaAgreement) -> f64| {
        if areas.is_empty() {
            0.0
        } else {
            areas.iter().map(f).sum::<f64>() / areas.len() as f64
        }
    };
    Ok(AgreementReport {
        mean_precision: mean(|a| a.precision),
        mean_recall: mean(|a| a.recall),
        mean_jaccard: mean(|a| a.jaccard),
        areas,
        unreviewed_pairs,
        unreviewed_disciplines,
    })
}
