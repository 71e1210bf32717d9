//! Quivers with monomial relations and their path bases.
//!
//! Vertices are labeled `1..=n`. A path is stored as its start vertex plus
//! the arrow indices in traversal order, so `a1 a2` means "a1, then a2".

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{is_prime, Matrix};
use crate::rep::Representation;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidQuiver("a quiver needs at least one vertex".into()));
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow name {}", a.name)));
            }
            for v in [a.source, a.target] {
                if v == 0 || v > vertex_count {
                    return Err(Error::InvalidQuiver(format!(
                        "arrow {} touches vertex {v} outside 1..={vertex_count}",
                        a.name
                    )));
                }
            }
        }
        Ok(Self { vertex_count, arrows })
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].target == v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Self {
            start: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrows[a].target)
    }

    /// Vertices visited in order, including both endpoints.
    pub fn vertices(&self, q: &Quiver) -> Vec<usize> {
        let mut out = vec![self.start];
        out.extend(self.arrows.iter().map(|&a| q.arrows[a].target));
        out
    }

    pub fn extend(&self, arrow: usize) -> Self {
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        Self {
            start: self.start,
            arrows,
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.start)
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("·")
        }
    }
}

/// All nonzero paths of a bound quiver algebra, ordered by length, then by
/// arrow names, with trivial paths ordered by vertex.
#[derive(Debug, Clone)]
pub struct PathBasis {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    by_pair: HashMap<(usize, usize), Vec<usize>>,
}

impl PathBasis {
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.index.contains_key(p)
    }

    /// Nonzero paths from `u` to `v`.
    pub fn between(&self, u: usize, v: usize) -> Vec<&Path> {
        self.by_pair
            .get(&(u, v))
            .map(|ix| ix.iter().map(|&i| &self.paths[i]).collect())
            .unwrap_or_default()
    }

    /// Nonzero paths starting at `u`, in basis order.
    pub fn starting_at(&self, u: usize) -> Vec<&Path> {
        self.paths.iter().filter(|p| p.start == u).collect()
    }
}

#[derive(Debug, Clone)]
pub struct BoundQuiverAlgebra {
    name: String,
    quiver: Quiver,
    relations: Vec<Path>,
    p: u32,
    basis: PathBasis,
}

impl PartialEq for BoundQuiverAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.relations == other.relations && self.p == other.p
    }
}

impl Eq for BoundQuiverAlgebra {}

impl BoundQuiverAlgebra {
    /// Validates and builds an algebra. Relations are given as arrow-name
    /// sequences in traversal order.
    pub fn new(name: &str, quiver: Quiver, relations: &[Vec<String>], p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut rels = Vec::new();
        for r in relations {
            let shown = r.join(" ");
            let mut arrows = Vec::new();
            for n in r {
                arrows.push(quiver.arrow_index(n).ok_or_else(|| Error::UnknownName(n.clone()))?);
            }
            if arrows.len() < 2 {
                return Err(Error::RelationTooShort(shown));
            }
            for w in arrows.windows(2) {
                if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                    return Err(Error::NonComposableRelation(shown));
                }
            }
            let path = Path {
                start: quiver.arrows[arrows[0]].source,
                arrows,
            };
            if !rels.contains(&path) {
                rels.push(path);
            }
        }
        let basis = enumerate_paths(&quiver, &rels)?;
        Ok(Self {
            name: name.to_string(),
            quiver,
            relations: rels,
            p,
            basis,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn field_char(&self) -> u32 {
        self.p
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows.len()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn path_basis(&self) -> &PathBasis {
        &self.basis
    }

    /// Same algebra over a different prime field.
    pub fn with_field(&self, p: u32) -> Result<Self> {
        let rels: Vec<Vec<String>> = self
            .relations
            .iter()
            .map(|r| r.arrows.iter().map(|&a| self.quiver.arrows[a].name.clone()).collect())
            .collect();
        Self::new(&self.name, self.quiver.clone(), &rels, p)
    }

    /// Relation names as arrow-name sequences.
    pub fn relation_names(&self) -> Vec<Vec<String>> {
        self.relations
            .iter()
            .map(|r| r.arrows.iter().map(|&a| self.quiver.arrows[a].name.clone()).collect())
            .collect()
    }
}

pub fn path_basis(alg: &BoundQuiverAlgebra) -> &PathBasis {
    alg.path_basis()
}

fn has_relation_suffix(path: &Path, rels: &[Path]) -> bool {
    rels.iter().any(|r| path.arrows.ends_with(&r.arrows))
}

fn enumerate_paths(q: &Quiver, rels: &[Path]) -> Result<PathBasis> {
    // Nonzero paths are closed under subpaths, so extending one arrow at a
    // time and testing suffixes finds all of them. Long paths are decided by
    // windows of length `window + 1`; a nonzero path longer than `window` plus
    // the number of nonzero `window`-paths revisits a window and can be pumped.
    let max_rel = rels.iter().map(|r| r.len()).max().unwrap_or(2);
    let window = max_rel.saturating_sub(1).max(1);
    let mut levels: Vec<Vec<Path>> = vec![(1..=q.vertex_count).map(Path::trivial).collect()];
    let mut window_count = None;
    loop {
        let last = levels.last().unwrap();
        let mut next = Vec::new();
        for path in last {
            let end = path.end(q);
            for a in q.arrows_from(end) {
                let ext = path.extend(a);
                if !has_relation_suffix(&ext, rels) {
                    next.push(ext);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        let len = levels.len();
        if len == window {
            window_count = Some(next.len());
        }
        if let Some(c) = window_count {
            if len > window + c {
                return Err(Error::InfiniteDimensional);
            }
        }
        levels.push(next);
    }
    let mut paths: Vec<Path> = levels.into_iter().flatten().collect();
    paths.sort_by(|a, b| {
        a.len().cmp(&b.len()).then_with(|| {
            let na: Vec<&str> = a.arrows.iter().map(|&i| q.arrows[i].name.as_str()).collect();
            let nb: Vec<&str> = b.arrows.iter().map(|&i| q.arrows[i].name.as_str()).collect();
            na.cmp(&nb).then(a.start.cmp(&b.start))
        })
    });
    let mut index = HashMap::new();
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, p) in paths.iter().enumerate() {
        index.insert(p.clone(), i);
        by_pair.entry((p.start, p.end(q))).or_default().push(i);
    }
    Ok(PathBasis { paths, index, by_pair })
}

/// Parses the line-oriented algebra format.
pub fn parse_algebra_spec(text: &str) -> Result<BoundQuiverAlgebra> {
    let mut name = String::from("algebra");
    let mut vertices: Option<usize> = None;
    let mut arrows = Vec::new();
    let mut relations: Vec<Vec<String>> = Vec::new();
    let mut p = 2u32;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let syntax = |msg: &str| Error::Syntax {
            line,
            msg: msg.to_string(),
        };
        match toks[0] {
            "algebra" => {
                if toks.len() != 2 {
                    return Err(syntax("expected `algebra <name>`"));
                }
                name = toks[1].to_string();
            }
            "vertices" => {
                let n = toks
                    .get(1)
                    .and_then(|t| t.parse::<usize>().ok())
                    .filter(|_| toks.len() == 2)
                    .ok_or_else(|| syntax("expected `vertices <n>`"))?;
                vertices = Some(n);
            }
            "arrow" => {
                if toks.len() != 4 {
                    return Err(syntax("expected `arrow <name> <src> <tgt>`"));
                }
                let s = toks[2].parse::<usize>().map_err(|_| syntax("bad source vertex"))?;
                let t = toks[3].parse::<usize>().map_err(|_| syntax("bad target vertex"))?;
                arrows.push(Arrow {
                    name: toks[1].to_string(),
                    source: s,
                    target: t,
                });
            }
            "relation" => {
                if toks.len() < 2 {
                    return Err(syntax("expected `relation <arrow> ...`"));
                }
                relations.push(toks[1..].iter().map(|s| s.to_string()).collect());
            }
            "field" => {
                p = toks
                    .get(1)
                    .and_then(|t| t.parse::<u32>().ok())
                    .filter(|_| toks.len() == 2)
                    .ok_or_else(|| syntax("expected `field <p>`"))?;
            }
            other => return Err(syntax(&format!("unknown directive `{other}`"))),
        }
    }
    let n = vertices.ok_or(Error::Syntax {
        line: 0,
        msg: "missing `vertices` line".into(),
    })?;
    let quiver = Quiver::new(n, arrows)?;
    BoundQuiverAlgebra::new(&name, quiver, &relations, p)
}

/// The indecomposable projective at `v`: basis the nonzero paths leaving `v`,
/// arrows acting by extension.
pub fn projective_module(alg: &Arc<BoundQuiverAlgebra>, v: usize) -> Representation {
    let q = alg.quiver();
    let basis = alg.path_basis();
    let spaces: Vec<Vec<&Path>> = (1..=q.vertex_count).map(|w| basis.between(v, w)).collect();
    let dims: Vec<usize> = spaces.iter().map(|s| s.len()).collect();
    let p = alg.field_char();
    let maps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let src = &spaces[a.source - 1];
            let tgt = &spaces[a.target - 1];
            let mut m = Matrix::zeros(p, tgt.len(), src.len());
            for (j, path) in src.iter().enumerate() {
                let ext = path.extend(ai);
                if let Some(i) = tgt.iter().position(|t| **t == ext) {
                    m.set(i, j, 1);
                }
            }
            m
        })
        .collect();
    Representation::new(alg.clone(), dims, maps).expect("projective modules satisfy all relations")
}
