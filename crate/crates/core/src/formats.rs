//! Line-oriented text formats for modules, chains, group actions and named
//! subcategories, plus a document type holding several of them.
//!
//! A document is a sequence of blocks; each block starts at a line `algebra`,
//! `module`, `chain`, `action` or `subcategory`. `#` starts a comment.

use std::sync::Arc;

use num_rational::Rational64;

use crate::chain::{format_rational, Class, StepChain};
use crate::covering::GroupAction;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{parse_algebra_spec, BoundQuiverAlgebra};
use crate::rep::Representation;
use crate::torsion::Ambient;

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Algebra,
    Module,
    Chain,
    Action,
    Subcategory,
}

/// Raw lines of one block, each with its 1-based line number.
#[derive(Clone, Debug)]
pub struct Block {
    pub kind: BlockKind,
    pub name: String,
    pub lines: Vec<(usize, String)>,
}

impl Block {
    fn text(&self) -> String {
        self.lines.iter().map(|(_, l)| format!("{l}\n")).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub blocks: Vec<Block>,
}

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        let mut blocks: Vec<Block> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip(raw);
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let head = words.next().unwrap();
            let kind = match head {
                "algebra" => Some(BlockKind::Algebra),
                "module" => Some(BlockKind::Module),
                "chain" => Some(BlockKind::Chain),
                "action" => Some(BlockKind::Action),
                "subcategory" => Some(BlockKind::Subcategory),
                _ => None,
            };
            match kind {
                Some(kind) => {
                    let name = words.next().unwrap_or("").to_string();
                    blocks.push(Block {
                        kind,
                        name,
                        lines: vec![(i + 1, line.to_string())],
                    });
                }
                None => match blocks.last_mut() {
                    Some(b) => b.lines.push((i + 1, line.to_string())),
                    // a bare algebra file need not start with `algebra`
                    None => blocks.push(Block {
                        kind: BlockKind::Algebra,
                        name: String::new(),
                        lines: vec![(i + 1, line.to_string())],
                    }),
                },
            }
        }
        Ok(Self { blocks })
    }

    pub fn of_kind(&self, kind: BlockKind) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(move |b| b.kind == kind)
    }

    pub fn algebra(&self) -> Result<Option<BoundQuiverAlgebra>> {
        let mut it = self.of_kind(BlockKind::Algebra);
        let Some(b) = it.next() else {
            return Ok(None);
        };
        if it.next().is_some() {
            return Err(syntax(b.lines[0].0, "more than one algebra"));
        }
        parse_algebra_spec(&b.text())
            .map(Some)
            .map_err(|e| shift_line(e, b.lines[0].0 - 1))
    }
}

fn shift_line(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { line, msg } => Error::Syntax { line: line + by, msg },
        other => other,
    }
}

/// `module <name>` / `dim d1 ... dn` / `map <arrow> [[row],...]`; omitted maps
/// are zero.
pub fn parse_module(block: &Block, alg: &Arc<BoundQuiverAlgebra>) -> Result<(String, Representation)> {
    let q = alg.quiver();
    let p = alg.field_char();
    let mut dims: Option<Vec<usize>> = None;
    let mut given: Vec<Option<Matrix>> = vec![None; q.arrows.len()];
    for (ln, line) in &block.lines[1..] {
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match head {
            "dim" => {
                let d = rest
                    .split_whitespace()
                    .map(|w| {
                        w.parse::<usize>()
                            .map_err(|_| syntax(*ln, format!("bad dimension {w}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if d.len() != q.vertex_count {
                    return Err(syntax(*ln, format!("expected {} dimensions", q.vertex_count)));
                }
                dims = Some(d);
            }
            "map" => {
                let dims = dims.as_ref().ok_or_else(|| syntax(*ln, "map before dim"))?;
                let (arrow, json) = rest
                    .trim()
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| syntax(*ln, "map needs an arrow and rows"))?;
                let a = q
                    .arrow_index(arrow)
                    .ok_or_else(|| Error::UnknownName(arrow.to_string()))?;
                let rows: Vec<Vec<i64>> =
                    serde_json::from_str(json.trim()).map_err(|e| syntax(*ln, format!("bad matrix: {e}")))?;
                let (r, c) = (dims[q.arrows[a].target - 1], dims[q.arrows[a].source - 1]);
                if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    return Err(syntax(*ln, format!("map {arrow} must be {r}x{c}")));
                }
                given[a] = Some(Matrix::from_rows(p, c, &rows));
            }
            _ => return Err(syntax(*ln, format!("unknown module directive {head}"))),
        }
    }
    let dims = dims.ok_or_else(|| syntax(block.lines[0].0, "module without dim"))?;
    let maps = given
        .into_iter()
        .zip(&q.arrows)
        .map(|(m, a)| m.unwrap_or_else(|| Matrix::zeros(p, dims[a.target - 1], dims[a.source - 1])))
        .collect();
    Ok((block.name.clone(), Representation::new(alg.clone(), dims, maps)?))
}

pub fn write_module(name: &str, m: &Representation) -> String {
    let q = m.algebra().quiver();
    let mut out = format!("module {name}\ndim");
    for d in m.dims() {
        out += &format!(" {d}");
    }
    out.push('\n');
    for (a, arrow) in q.arrows.iter().enumerate() {
        let mat = m.map(a);
        if mat.rows() == 0 || mat.cols() == 0 || mat.is_zero() {
            continue;
        }
        let rows = serde_json::to_string(&mat.to_rows()).expect("matrix rows serialize");
        out += &format!("map {} {rows}\n", arrow.name);
    }
    out
}

/// Comma-separated module names; `-` or `0` is the zero subcategory.
pub fn parse_names(text: &str) -> Vec<String> {
    let t = text.trim();
    if t.is_empty() || t == "-" || t == "0" {
        return Vec::new();
    }
    t.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

pub fn resolve_names(amb: &Ambient, names: &[String]) -> Result<Class> {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    amb.class_from_names(&refs)
}

/// `subcategory <name> <m1>,<m2>,...`, possibly continued on later lines.
pub fn parse_subcategory(block: &Block) -> (String, Vec<String>) {
    let mut names = Vec::new();
    let first = &block.lines[0].1;
    let rest = first.split_whitespace().skip(2).collect::<Vec<_>>().join(" ");
    names.extend(parse_names(&rest));
    for (_, l) in &block.lines[1..] {
        names.extend(parse_names(l));
    }
    (block.name.clone(), names)
}

pub fn write_subcategory(name: &str, amb: &Ambient, c: &Class) -> String {
    let names = amb.names(c);
    format!(
        "subcategory {name} {}\n",
        if names.is_empty() {
            "-".to_string()
        } else {
            names.join(",")
        }
    )
}

pub fn parse_rational(text: &str) -> Option<Rational64> {
    match text.split_once('/') {
        Some((a, b)) => {
            let (a, b) = (a.parse::<i64>().ok()?, b.parse::<i64>().ok()?);
            (b != 0).then(|| Rational64::new(a, b))
        }
        None => text.parse::<i64>().ok().map(Rational64::from_integer),
    }
}

/// A chain with unresolved member names: `(start, names)` per interval.
#[derive(Clone, Debug)]
pub struct ChainSpec {
    pub name: String,
    pub entries: Vec<(Rational64, Vec<String>)>,
}

/// `chain <name>` / `at <rational> <names>|-`; a final `at 1 -` is accepted
/// and dropped since the value at 1 is always zero.
pub fn parse_chain(block: &Block) -> Result<ChainSpec> {
    let mut entries = Vec::new();
    for (ln, line) in &block.lines[1..] {
        let mut words = line.splitn(3, char::is_whitespace);
        if words.next() != Some("at") {
            return Err(syntax(*ln, "chain lines start with `at`"));
        }
        let r = words.next().unwrap_or("");
        let s = parse_rational(r).ok_or_else(|| syntax(*ln, format!("bad rational {r}")))?;
        let names = parse_names(words.next().unwrap_or(""));
        if s == Rational64::from_integer(1) {
            if !names.is_empty() {
                return Err(syntax(*ln, "the value at 1 must be `-`"));
            }
            continue;
        }
        entries.push((s, names));
    }
    if entries.is_empty() {
        return Err(syntax(block.lines[0].0, "empty chain"));
    }
    Ok(ChainSpec {
        name: block.name.clone(),
        entries,
    })
}

impl ChainSpec {
    pub fn resolve(&self, amb: &Ambient) -> Result<StepChain> {
        let mut starts = Vec::new();
        let mut values = Vec::new();
        for (s, names) in &self.entries {
            starts.push(*s);
            values.push(resolve_names(amb, names)?);
        }
        StepChain::new(starts, values)
    }
}

pub fn write_chain(name: &str, amb: &Ambient, chain: &StepChain) -> String {
    let mut out = format!("chain {name}\n");
    for (s, v) in chain.starts().iter().zip(chain.values()) {
        let names = amb.names(v);
        out += &format!(
            "at {} {}\n",
            format_rational(*s),
            if names.is_empty() {
                "-".to_string()
            } else {
                names.join(",")
            }
        );
    }
    out += "at 1 -\n";
    out
}

/// `action <name>` / `order <k>` / `vertex <i> -> <j>` / `arrowmap <a> -> <b>`.
pub fn parse_action(block: &Block, alg: &BoundQuiverAlgebra) -> Result<GroupAction> {
    let q = alg.quiver();
    let mut order = None;
    let mut vertex_perm: Vec<Option<usize>> = vec![None; q.vertex_count];
    let mut arrow_perm: Vec<Option<usize>> = vec![None; q.arrows.len()];
    for (ln, line) in &block.lines[1..] {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["order", k] => order = Some(k.parse::<usize>().map_err(|_| syntax(*ln, format!("bad order {k}")))?),
            ["vertex", i, "->", j] => {
                let parse = |w: &str| -> Result<usize> {
                    w.parse::<usize>()
                        .ok()
                        .filter(|&v| (1..=q.vertex_count).contains(&v))
                        .ok_or_else(|| syntax(*ln, format!("bad vertex {w}")))
                };
                vertex_perm[parse(i)? - 1] = Some(parse(j)?);
            }
            ["arrowmap", a, "->", b] => {
                let ia = q.arrow_index(a).ok_or_else(|| Error::UnknownName(a.to_string()))?;
                let ib = q.arrow_index(b).ok_or_else(|| Error::UnknownName(b.to_string()))?;
                arrow_perm[ia] = Some(ib);
            }
            _ => return Err(syntax(*ln, format!("unknown action directive: {line}"))),
        }
    }
    let head = block.lines[0].0;
    let order = order.ok_or_else(|| syntax(head, "action without order"))?;
    let vertex_perm = vertex_perm
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| syntax(head, format!("no image for vertex {}", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let arrow_perm = arrow_perm
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| syntax(head, format!("no image for arrow {}", q.arrows[i].name))))
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupAction {
        name: block.name.clone(),
        order,
        vertex_perm,
        arrow_perm,
    })
}

pub fn write_action(action: &GroupAction, alg: &BoundQuiverAlgebra) -> String {
    let q = alg.quiver();
    let mut out = format!("action {}\norder {}\n", action.name, action.order);
    for (i, v) in action.vertex_perm.iter().enumerate() {
        out += &format!("vertex {} -> {v}\n", i + 1);
    }
    for (a, &b) in action.arrow_perm.iter().enumerate() {
        out += &format!("arrowmap {} -> {}\n", q.arrows[a].name, q.arrows[b].name);
    }
    out
}

pub fn write_algebra(alg: &BoundQuiverAlgebra) -> String {
    let q = alg.quiver();
    let mut out = String::new();
    if !alg.name().is_empty() {
        out += &format!("algebra {}\n", alg.name());
    }
    out += &format!("vertices {}\n", q.vertex_count);
    for a in &q.arrows {
        out += &format!("arrow {} {} {}\n", a.name, a.source, a.target);
    }
    for r in alg.relation_names() {
        out += &format!("relation {}\n", r.join(" "));
    }
    if alg.field_char() != 2 {
        out += &format!("field {}\n", alg.field_char());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::nakayama_model;

    const A: &str = "algebra A\nvertices 3\narrow alpha 1 2\narrow beta 2 3\nrelation alpha beta\n";

    fn amb() -> Ambient {
        let alg = Arc::new(parse_algebra_spec(A).unwrap());
        Ambient::new(Arc::new(nakayama_model(&alg).unwrap()))
    }

    #[test]
    fn module_round_trip() {
        let a = amb();
        for (i, x) in a.model().indecs().iter().enumerate() {
            let text = write_module(a.model().name(i), x);
            let doc = Document::parse(&text).unwrap();
            let (name, y) = parse_module(&doc.blocks[0], a.model().algebra()).unwrap();
            assert_eq!(name, a.model().name(i));
            assert_eq!(&y, x);
        }
    }

    #[test]
    fn module_errors() {
        let a = amb();
        let alg = a.model().algebra();
        let doc = Document::parse("module m\ndim 1 1 0\nmap alpha [[1,1]]\n").unwrap();
        assert!(matches!(
            parse_module(&doc.blocks[0], alg),
            Err(Error::Syntax { line: 3, .. })
        ));
        let doc = Document::parse("module m\ndim 1 1 1\nmap alpha [[1]]\nmap beta [[1]]\n").unwrap();
        assert!(parse_module(&doc.blocks[0], alg).is_err());
    }

    #[test]
    fn chain_round_trip() {
        let a = amb();
        let text = "chain delta\nat 0 3,2\\3,1\\2,1\nat 1/3 3\nat 2/3 -\nat 1 -\n";
        let doc = Document::parse(text).unwrap();
        let chain = parse_chain(&doc.blocks[0]).unwrap().resolve(&a).unwrap();
        assert_eq!(chain.starts().len(), 3);
        let again = write_chain("delta", &a, &chain);
        let doc = Document::parse(&again).unwrap();
        assert_eq!(parse_chain(&doc.blocks[0]).unwrap().resolve(&a).unwrap(), chain);
    }

    #[test]
    fn documents_with_several_blocks() {
        let text = format!("{A}subcategory M 3,2\\3,1\\2,1\nchain d\nat 0 -\n");
        let doc = Document::parse(&text).unwrap();
        assert_eq!(doc.blocks.len(), 3);
        assert!(doc.algebra().unwrap().is_some());
        let (name, names) = parse_subcategory(&doc.blocks[1]);
        assert_eq!(name, "M");
        assert_eq!(names.len(), 4);
        let alg = doc.algebra().unwrap().unwrap();
        assert_eq!(parse_algebra_spec(&write_algebra(&alg)).unwrap(), alg);
    }

    #[test]
    fn action_round_trip() {
        let mut s = String::from("vertices 4\n");
        for i in 1..=4 {
            s += &format!("arrow c{i} {i} {}\nrelation c{i} c{}\n", i % 4 + 1, i % 4 + 1);
        }
        let alg = parse_algebra_spec(&s).unwrap();
        let g = GroupAction::rotation(&alg, 2).unwrap();
        let doc = Document::parse(&write_action(&g, &alg)).unwrap();
        assert_eq!(parse_action(&doc.blocks[0], &alg).unwrap(), g);
    }
}
