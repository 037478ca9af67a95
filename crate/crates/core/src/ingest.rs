//! Corpus ingestion: article files, the category tree, and disjoint area
//! assignment.
//!
//! Articles file formats:
//!
//! * TSV: `title<TAB>category1;category2;...`
//! * JSONL: `{"title": ..., "categories": [...], "id": optional u64}`
//!
//! Both are UTF-8, and lines starting with `#` are comments. The category tree
//! file is TSV `parent<TAB>child`; a line holding a single name declares a
//! category with no children.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArticleId(pub u32);

impl ArticleId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Article {
    pub id: ArticleId,
    pub title: String,
    pub raw_categories: BTreeSet<String>,
    /// Identifier carried by the source record, if any.
    pub source_id: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArticleFormat {
    Tsv,
    Jsonl,
}

impl ArticleFormat {
    /// Guess the format from a file extension, defaulting to TSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("json") | Some("ndjson") => ArticleFormat::Jsonl,
            _ => ArticleFormat::Tsv,
        }
    }
}

impl FromStr for ArticleFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tsv" => Ok(ArticleFormat::Tsv),
            "jsonl" => Ok(ArticleFormat::Jsonl),
            other => Err(Error::Config(format!("unknown articles format {other:?}"))),
        }
    }
}

impl fmt::Display for ArticleFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArticleFormat::Tsv => "tsv",
            ArticleFormat::Jsonl => "jsonl",
        })
    }
}

/// Interned article collection. Ids are dense `0..len()` in first-seen order.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    articles: Vec<Article>,
    by_title: HashMap<String, ArticleId>,
}

impl Corpus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.articles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.articles.is_empty()
    }

    pub fn articles(&self) -> &[Article] {
        &self.articles
    }

    pub fn get(&self, id: ArticleId) -> Option<&Article> {
        self.articles.get(id.index())
    }

    pub fn lookup(&self, title: &str) -> Option<ArticleId> {
        self.by_title.get(title).copied()
    }

    /// Insert a record, merging categories into an existing article with the
    /// same title.
    pub fn insert<I, S>(&mut self, title: &str, categories: I, source_id: Option<u64>) -> Result<ArticleId>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let id = match self.by_title.get(title) {
            Some(&id) => {
                let article = &mut self.articles[id.index()];
                match (article.source_id, source_id) {
                    (Some(first), Some(second)) if first != second => {
                        return Err(Error::ConflictingId {
                            title: title.to_owned(),
                            first,
                            second,
                        })
                    }
                    (None, Some(second)) => article.source_id = Some(second),
                    _ => {}
                }
                id
            }
            None => {
                let id = ArticleId(self.articles.len() as u32);
                self.articles.push(Article {
                    id,
                    title: title.to_owned(),
                    raw_categories: BTreeSet::new(),
                    source_id,
                });
                self.by_title.insert(title.to_owned(), id);
                id
            }
        };
        let article = &mut self.articles[id.index()];
        article.raw_categories.extend(categories.into_iter().map(Into::into));
        Ok(id)
    }
}

#[derive(Deserialize)]
struct JsonRecord {
    title: String,
    #[serde(default)]
    categories: Vec<String>,
    #[serde(default)]
    id: Option<u64>,
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

pub fn parse_articles(path: &Path, format: ArticleFormat) -> Result<Corpus> {
    let text = read_text(path)?;
    parse_articles_str(&text, format, path)
}

/// Parse article records from memory; `origin` only labels error messages.
pub fn parse_articles_str(text: &str, format: ArticleFormat, origin: &Path) -> Result<Corpus> {
    let mut corpus = Corpus::new();
    for (line_no, line) in content_lines(text) {
        let (title, categories, source_id) = match format {
            ArticleFormat::Tsv => {
                let mut fields = line.split('\t');
                let title = fields.next().unwrap_or_default().trim().to_owned();
                let cats: Vec<String> = fields
                    .next()
                    .map(|f| {
                        f.split(';')
                            .map(str::trim)
                            .filter(|c| !c.is_empty())
                            .map(str::to_owned)
                            .collect()
                    })
                    .unwrap_or_default();
                if fields.next().is_some() {
                    return Err(Error::parse(origin, line_no, "expected at most 2 tab-separated fields"));
                }
                (title, cats, None)
            }
            ArticleFormat::Jsonl => {
                let rec: JsonRecord =
                    serde_json::from_str(line).map_err(|e| Error::parse(origin, line_no, e.to_string()))?;
                let cats = rec
                    .categories
                    .into_iter()
                    .map(|c| c.trim().to_owned())
                    .filter(|c| !c.is_empty())
                    .collect();
                (rec.title.trim().to_owned(), cats, rec.id)
            }
        };
        if title.is_empty() {
            return Err(Error::parse(origin, line_no, "empty title"));
        }
        corpus.insert(&title, categories, source_id)?;
    }
    Ok(corpus)
}

/// Parent → child category relation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategoryTree {
    children: BTreeMap<String, BTreeSet<String>>,
}

impl CategoryTree {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declare a category without children.
    pub fn add_category(&mut self, name: &str) {
        self.children.entry(name.to_owned()).or_default();
    }

    pub fn add_edge(&mut self, parent: &str, child: &str) -> Result<()> {
        if parent == child {
            return Err(Error::Invariant(format!("category {parent:?} lists itself as a child")));
        }
        self.children
            .entry(parent.to_owned())
            .or_default()
            .insert(child.to_owned());
        self.children.entry(child.to_owned()).or_default();
        Ok(())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.children.contains_key(name)
    }

    pub fn children(&self, name: &str) -> impl Iterator<Item = &str> {
        self.children.get(name).into_iter().flatten().map(String::as_str)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.children
            .iter()
            .flat_map(|(p, cs)| cs.iter().map(move |c| (p.as_str(), c.as_str())))
    }

    pub fn parse_str(text: &str, origin: &Path) -> Result<Self> {
        let mut tree = CategoryTree::new();
        for (line_no, line) in content_lines(text) {
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            match fields.as_slice() {
                [name] => tree.add_category(name),
                [parent, child] if !parent.is_empty() && !child.is_empty() => {
                    if parent == child {
                        return Err(Error::parse(
                            origin,
                            line_no,
                            format!("self-parenting category {parent:?}"),
                        ));
                    }
                    tree.add_edge(parent, child)?;
                }
                _ => return Err(Error::parse(origin, line_no, "expected `parent<TAB>child`")),
            }
        }
        Ok(tree)
    }

    pub fn parse(path: &Path) -> Result<Self> {
        let text = read_text(path)?;
        Self::parse_str(&text, path)
    }
}

/// Category → area mapping produced by [`expand_categories`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryMap {
    /// Area names in configured priority order.
    pub areas: Vec<String>,
    /// Category name → index into `areas`.
    pub map: BTreeMap<String, usize>,
}

impl CategoryMap {
    pub fn area_of(&self, category: &str) -> Option<usize> {
        self.map.get(category).copied()
    }

    pub fn area_name_of(&self, category: &str) -> Option<&str> {
        self.area_of(category).map(|i| self.areas[i].as_str())
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Map every category within `depth` child-steps of a root onto that root.
///
/// Roots always map to themselves. Any other category reachable from several
/// roots goes to the earliest root in `roots`.
pub fn expand_categories(tree: &CategoryTree, roots: &[String], depth: usize) -> Result<CategoryMap> {
    if roots.is_empty() {
        return Err(Error::Config("no root categories configured".into()));
    }
    let mut map = BTreeMap::new();
    for (i, root) in roots.iter().enumerate() {
        if !tree.contains(root) {
            return Err(Error::UnknownRoot(root.clone()));
        }
        if map.insert(root.clone(), i).is_some() {
            return Err(Error::Config(format!("root {root:?} listed twice")));
        }
    }

    for (i, root) in roots.iter().enumerate() {
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        seen.insert(root.as_str());
        let mut queue = VecDeque::from([(root.as_str(), 0usize)]);
        while let Some((cat, d)) = queue.pop_front() {
            if d == depth {
                continue;
            }
            for child in tree.children(cat) {
                if seen.insert(child) {
                    map.entry(child.to_owned()).or_insert(i);
                    queue.push_back((child, d + 1));
                }
            }
        }
    }

    Ok(CategoryMap {
        areas: roots.to_vec(),
        map,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AreaCount {
    pub name: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignedArticle {
    pub title: String,
    /// Index into [`AreaAssignment::areas`].
    pub area: usize,
}

/// Disjoint article → area assignment over the retained areas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AreaAssignment {
    pub areas: Vec<AreaCount>,
    pub excluded: Vec<AreaCount>,
    pub unassigned: usize,
    /// Articles whose categories hit more than one area.
    pub conflicts: usize,
    /// Assigned articles in corpus id order.
    pub articles: Vec<AssignedArticle>,
}

/// The census subset of an [`AreaAssignment`], written as `census.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub areas: Vec<AreaCount>,
    pub excluded: Vec<AreaCount>,
    pub unassigned: usize,
    pub conflicts: usize,
}

impl AreaAssignment {
    pub fn census(&self) -> CensusReport {
        CensusReport {
            areas: self.areas.clone(),
            excluded: self.excluded.clone(),
            unassigned: self.unassigned,
            conflicts: self.conflicts,
        }
    }

    pub fn area_names(&self) -> Vec<String> {
        self.areas.iter().map(|a| a.name.clone()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.articles.is_empty()
    }

    /// Check the partition property: counts match memberships.
    pub fn validate(&self) -> Result<()> {
        let mut counts = vec![0usize; self.areas.len()];
        let mut titles = BTreeSet::new();
        for a in &self.articles {
            let slot = counts
                .get_mut(a.area)
                .ok_or_else(|| Error::Invariant(format!("article {:?} has out-of-range area", a.title)))?;
            *slot += 1;
            if !titles.insert(a.title.as_str()) {
                return Err(Error::Invariant(format!("article {:?} assigned twice", a.title)));
            }
        }
        for (area, &c) in self.areas.iter().zip(&counts) {
            if area.count != c || c == 0 {
                return Err(Error::Invariant(format!(
                    "area {:?} reports {} members but holds {c}",
                    area.name, area.count
                )));
            }
        }
        Ok(())
    }
}

/// Assign each article to one area, dropping areas smaller than
/// `min_area_size`.
///
/// An article hitting several areas goes to the earliest in `catmap.areas`.
/// Area sizes are measured under that rule; an article whose chosen area is
/// then excluded falls back to its earliest retained area, if any.
pub fn assign_areas(corpus: &Corpus, catmap: &CategoryMap, min_area_size: usize) -> Result<AreaAssignment> {
    if min_area_size == 0 {
        return Err(Error::Config("min_area_size must be positive".into()));
    }
    if catmap.is_empty() {
        return Err(Error::Config("empty category map".into()));
    }
    let n_areas = catmap.areas.len();

    let mut hits: Vec<Vec<usize>> = Vec::with_capacity(corpus.len());
    let mut primary_counts = vec![0usize; n_areas];
    let mut unassigned = 0;
    let mut conflicts = 0;
    for article in corpus.articles() {
        let set: BTreeSet<usize> = article
            .raw_categories
            .iter()
            .filter_map(|c| catmap.area_of(c))
            .collect();
        match set.first() {
            Some(&first) => primary_counts[first] += 1,
            None => unassigned += 1,
        }
        if set.len() > 1 {
            conflicts += 1;
        }
        hits.push(set.into_iter().collect());
    }

    let retained: Vec<bool> = primary_counts.iter().map(|&c| c >= min_area_size).collect();
    let mut new_index = vec![usize::MAX; n_areas];
    let mut next = 0;
    for (i, &keep) in retained.iter().enumerate() {
        if keep {
            new_index[i] = next;
            next += 1;
        }
    }

    let mut counts = vec![0usize; next];
    let mut articles = Vec::new();
    for (article, areas) in corpus.articles().iter().zip(&hits) {
        if let Some(&area) = areas.iter().find(|&&a| retained[a]) {
            let idx = new_index[area];
            counts[idx] += 1;
            articles.push(AssignedArticle {
                title: article.title.clone(),
                area: idx,
            });
        }
    }

    let mut areas = Vec::new();
    let mut excluded = Vec::new();
    for (i, name) in catmap.areas.iter().enumerate() {
        if retained[i] {
            areas.push(AreaCount {
                name: name.clone(),
                count: counts[new_index[i]],
            });
        } else {
            excluded.push(AreaCount {
                name: name.clone(),
                count: primary_counts[i],
            });
        }
    }

    let assignment = AreaAssignment {
        areas,
        excluded,
        unassigned,
        conflicts,
        articles,
    };
    assignment.validate()?;
    Ok(assignment)
}
