//! Regenerates `fixtures/toy/`, the small bundled corpus used by the CLI
//! tests and the README walkthrough.
//!
//! Areas follow a physical / biological / interdisciplinary block layout.
//! On top of the block model the corpus gets the usual mess of real
//! extracts: articles filed under subcategories, articles carrying several
//! area categories, articles in no area, links to unknown pages, reciprocal
//! links and self links.
//!
//! ```text
//! cargo run --example gen_toy_corpus -- crates/core/fixtures/toy
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use knowledge_net::synth::{generate_sbm, SbmSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const AREAS: &[(&str, usize, char)] = &[
    ("Chemistry", 110, 'x'),
    ("Mathematics", 120, 'p'),
    ("Applied Mathematics", 70, 'p'),
    ("Dynamical Systems", 45, 'p'),
    ("Computer Science", 140, 'p'),
    ("Statistics", 12, 'p'),
    ("Engineering", 90, 'p'),
    ("Biomedical Engineering", 9, 'i'),
    ("Biology", 150, 'b'),
    ("Ecology", 60, 'b'),
    ("Medicine", 130, 'b'),
    ("Health Sciences", 55, 'b'),
    ("Molecular Biology", 80, 'b'),
    ("Bioinformatics", 50, 'i'),
    ("Biochemistry", 65, 'i'),
    ("Computational Ecology", 6, 'i'),
    ("Biotechnology", 75, 'b'),
    ("Systems Biology", 10, 'i'),
    ("Computational Biology", 14, 'i'),
];

const BOOSTS: &[(&str, &str, f64)] = &[
    ("Bioinformatics", "Computer Science", 0.020),
    ("Bioinformatics", "Applied Mathematics", 0.018),
    ("Bioinformatics", "Molecular Biology", 0.022),
    ("Bioinformatics", "Biotechnology", 0.019),
    ("Bioinformatics", "Biology", 0.010),
    ("Biochemistry", "Chemistry", 0.030),
    ("Biochemistry", "Molecular Biology", 0.024),
    ("Biochemistry", "Biotechnology", 0.020),
    ("Biochemistry", "Ecology", 0.012),
    ("Biochemistry", "Biology", 0.011),
    ("Chemistry", "Biology", 0.010),
    ("Chemistry", "Engineering", 0.006),
    ("Mathematics", "Applied Mathematics", 0.020),
    ("Applied Mathematics", "Dynamical Systems", 0.018),
    ("Computer Science", "Engineering", 0.012),
    ("Medicine", "Health Sciences", 0.020),
    ("Biology", "Ecology", 0.015),
    ("Biology", "Molecular Biology", 0.016),
];

fn main() {
    let dir: PathBuf = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "crates/core/fixtures/toy".into())
        .into();
    fs::create_dir_all(&dir).unwrap();

    let m = AREAS.len();
    let index: BTreeMap<&str, usize> = AREAS.iter().enumerate().map(|(i, a)| (a.0, i)).collect();
    let mut p = vec![vec![0.0; m]; m];
    for a in 0..m {
        for b in 0..m {
            let (ga, gb) = (AREAS[a].2, AREAS[b].2);
            p[a][b] = if a == b {
                0.30
            } else if ga == gb && ga != 'i' {
                0.004
            } else if (ga == 'x' && gb == 'b') || (ga == 'b' && gb == 'x') {
                0.003
            } else {
                0.0008
            };
        }
    }
    for &(a, b, w) in BOOSTS {
        let (ia, ib) = (index[a], index[b]);
        p[ia][ib] = w;
        p[ib][ia] = w;
    }
    let spec = SbmSpec {
        sizes: AREAS.iter().map(|a| a.1).collect(),
        p,
        seed: 20190404,
        names: Some(AREAS.iter().map(|a| a.0.to_owned()).collect()),
    };
    let g = generate_sbm(&spec).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let titles: Vec<String> = (0..g.n() as u32)
        .map(|v| {
            let area = &g.area_names()[g.area_of(v)];
            format!("{area} topic {}", v as usize - g.area_range(g.area_of(v)).start)
        })
        .collect();

    // category tree: each root has two subcategories, one of which has a
    // grandchild that lies beyond the default depth
    let mut tree = String::from("# parent\tchild\n");
    for (name, _, _) in AREAS {
        let _ = writeln!(tree, "{name}\t{name} (methods)");
        let _ = writeln!(tree, "{name}\t{name} (history)");
        let _ = writeln!(tree, "{name} (history)\t{name} (people)");
    }
    // shared subcategory; lands in the earlier root
    let _ = writeln!(tree, "Biochemistry\tProtein structure");
    let _ = writeln!(tree, "Molecular Biology\tProtein structure");
    let _ = writeln!(tree, "Medicine (people)\tMedicine");

    let mut articles = String::from("# title\tcategories\n");
    let mut self_linked = Vec::new();
    for v in 0..g.n() as u32 {
        let area = g.area_names()[g.area_of(v)].as_str();
        let mut cats = vec![match rng.gen_range(0..10) {
            0..=5 => area.to_owned(),
            6 | 7 => format!("{area} (methods)"),
            _ => format!("{area} (history)"),
        }];
        if area == "Biochemistry" && rng.gen_bool(0.1) {
            cats.push("Protein structure".into());
        }
        if rng.gen_bool(0.03) {
            // a second, later area: the article keeps its own area
            let later: Vec<&str> = AREAS[g.area_of(v) + 1..].iter().map(|a| a.0).collect();
            if let Some(other) = later.choose(&mut rng) {
                cats.push((*other).to_owned());
            }
        }
        cats.push("Living people".into());
        let _ = writeln!(articles, "{}\t{}", titles[v as usize], cats.join(";"));
        if rng.gen_bool(0.02) {
            self_linked.push(v);
        }
    }
    for (i, (name, _, _)) in AREAS.iter().enumerate().step_by(3) {
        let _ = writeln!(articles, "{name} biography {i}\t{name} (people)");
        let _ = writeln!(articles, "Unfiled page {i}\tStub articles");
    }

    let mut link_rows: Vec<(String, String)> = Vec::new();
    for &(u, v) in g.edges() {
        let (a, b) = (titles[u as usize].clone(), titles[v as usize].clone());
        if rng.gen_bool(0.5) {
            link_rows.push((a.clone(), b.clone()));
        } else {
            link_rows.push((b.clone(), a.clone()));
        }
        if rng.gen_bool(0.2) {
            link_rows.push((b, a));
        }
    }
    for v in self_linked {
        link_rows.push((titles[v as usize].clone(), titles[v as usize].clone()));
    }
    for i in 0..150 {
        let v = rng.gen_range(0..g.n());
        link_rows.push((titles[v].clone(), format!("External page {i}")));
    }
    link_rows.shuffle(&mut rng);
    let mut links = String::from("# source\ttarget\n");
    for (a, b) in &link_rows {
        let _ = writeln!(links, "{a}\t{b}");
    }

    fs::write(dir.join("articles.tsv"), articles).unwrap();
    fs::write(dir.join("categories.tsv"), tree).unwrap();
    fs::write(dir.join("links.tsv"), links).unwrap();
    eprintln!(
        "wrote {} articles, {} links to {}",
        g.n(),
        link_rows.len(),
        dir.display()
    );
}
