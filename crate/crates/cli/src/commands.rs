//! Listing commands: model, tors, ntors, hn, pushdown.

use std::sync::Arc;

use ntors::chain::format_rational;
use ntors::covering::{orbit_algebra, Covering, OrbitAlgebraMap};
use ntors::formats::write_algebra;
use ntors::highertors::enumerate_n_torsion_classes;
use ntors::hn_higher::{compare_hn, induced_chain, ChainOfNTorsionClasses};
use ntors::torsion::{hn_filtration_abelian, ChainOfTorsionClasses, HNFiltration};
use ntors::{nakayama_model, Ambient, Error, Result};

use crate::output::Printer;
use crate::workspace::Workspace;

/// What a command produced; `passed` is false when a check failed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    pub fn ok(p: Printer) -> Self {
        Self {
            text: p.finish(),
            passed: true,
        }
    }
}

pub fn model(ws: &Workspace, mut p: Printer) -> Result<Outcome> {
    let m = ws.amb.model();
    let alg = &ws.alg;
    p.note(format!(
        "algebra {}: {} vertices, {} arrows, dimension {}, field F_{}",
        alg.name(),
        alg.vertex_count(),
        alg.arrow_count(),
        alg.dimension(),
        alg.field_char()
    ));
    p.note(format!("{} indecomposables", m.len()));
    for i in 0..m.len() {
        let dims: Vec<String> = m.indec(i).dims().iter().map(|d| d.to_string()).collect();
        p.record(&[
            "indec".to_string(),
            i.to_string(),
            m.name(i).to_string(),
            dims.join(" "),
        ]);
    }
    for i in 0..m.len() {
        let row: Vec<String> = m.hom_matrix()[i].iter().map(|d| d.to_string()).collect();
        p.record(&["hom".to_string(), m.name(i).to_string(), row.join(" ")]);
    }
    Ok(Outcome::ok(p))
}

pub fn tors(ws: &Workspace, mut p: Printer) -> Result<Outcome> {
    let classes = ws.amb.enumerate_torsion_classes()?;
    p.note(format!("{} torsion classes", classes.len()));
    for c in &classes {
        p.record(&["tors".to_string(), ws.amb.describe(c)]);
    }
    Ok(Outcome::ok(p))
}

/// Orbit algebra, its model and the covering data for an action.
pub struct Downstairs {
    pub map: OrbitAlgebraMap,
    pub amb: Ambient,
}

pub fn downstairs(ws: &Workspace, action: Option<&str>) -> Result<Downstairs> {
    let g = ws.action(action)?;
    let map = orbit_algebra(&ws.alg, &g)?;
    let amb = Ambient::with_config(Arc::new(nakayama_model(&map.algebra)?), ws.amb.config);
    Ok(Downstairs { map, amb })
}

pub fn ntors(
    ws: &Workspace,
    n: usize,
    cluster: Option<&str>,
    equivariant: Option<Option<&str>>,
    mut p: Printer,
) -> Result<Outcome> {
    let mcat = ws.cluster(cluster)?;
    match equivariant {
        None => {
            let classes = enumerate_n_torsion_classes(&ws.amb, &mcat, n)?;
            p.note(format!("{} {n}-torsion classes", classes.len()));
            for u in &classes {
                p.record(&["ntors".to_string(), ws.amb.describe(u)]);
            }
            Ok(Outcome::ok(p))
        }
        Some(action) => {
            let d = downstairs(ws, action)?;
            let cov = Covering::new(&ws.amb, &d.amb, &d.map, &mcat, n)?;
            let classes = cov.equivariant_n_torsion_classes()?;
            p.note(format!("{} equivariant {n}-torsion classes", classes.len()));
            let mut passed = true;
            for u in &classes {
                let row = cov.row(u)?;
                passed &= row.ok();
                p.record(&[
                    "ntors".to_string(),
                    ws.amb.describe(u),
                    d.amb.describe(&row.image),
                    verdict(row.ok()).to_string(),
                ]);
            }
            Ok(Outcome {
                text: p.finish(),
                passed,
            })
        }
    }
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn describe_filtration(amb: &Ambient, f: &HNFiltration) -> Result<(String, String)> {
    let steps = f
        .steps
        .iter()
        .map(|s| amb.model().describe_object(s))
        .collect::<Result<Vec<_>>>()?;
    let labels: Vec<String> = f.labels.iter().map(|s| format_rational(*s)).collect();
    Ok((steps.join(" ⊂ "), format!("s={}", labels.join(","))))
}

pub struct HnArgs<'a> {
    pub object: &'a str,
    pub chain: &'a str,
    pub n: usize,
    pub cluster: Option<&'a str>,
    pub compare: bool,
    pub pushdown: Option<Option<&'a str>>,
}

pub fn hn(ws: &Workspace, args: &HnArgs, mut p: Printer) -> Result<Outcome> {
    let (parts, m) = ws.object(args.object)?;
    if parts.is_empty() {
        return Err(Error::Precondition("the zero object has no filtration".into()));
    }
    let chain = ws.chain(args.chain)?;
    let mcat = ws.cluster(args.cluster)?;
    let mut passed = true;
    p.note("label of a step: left end of the first interval whose class excludes it");
    if chain.values()[0] == ws.amb.all() && mcat != ws.amb.all() {
        let eta = ChainOfTorsionClasses::new(&ws.amb, chain)?;
        let f = hn_filtration_abelian(&ws.amb, &m, &eta)?;
        let (steps, labels) = describe_filtration(&ws.amb, &f)?;
        p.record(&["hn", &steps, &labels]);
        return Ok(Outcome::ok(p));
    }
    let delta = ChainOfNTorsionClasses::new(&ws.amb, chain, &mcat, args.n)?;
    let f = ntors::hn_higher::n_hn_filtration(&ws.amb, &m, &delta)?;
    let (steps, labels) = describe_filtration(&ws.amb, &f)?;
    p.record(&["hn", &steps, &labels]);
    if args.compare {
        let eta = induced_chain(&ws.amb, &delta)?;
        let values: Vec<String> = eta.chain.values().iter().map(|v| ws.amb.describe(v)).collect();
        p.note(format!("induced chain: {}", values.join(" ⊇ ")));
        let cmp = compare_hn(&ws.amb, &m, &delta)?;
        let (steps, labels) = describe_filtration(&ws.amb, &cmp.abelian)?;
        p.record(&["ambient", &steps, &labels]);
        p.record(&["compare", if cmp.agree { "match" } else { "mismatch" }]);
        passed &= cmp.agree;
    }
    if let Some(action) = args.pushdown {
        let d = downstairs(ws, action)?;
        let cov = Covering::new(&ws.amb, &d.amb, &d.map, &mcat, args.n)?;
        let t = cov.hn_transport(&m, &delta)?;
        let pushed: Vec<String> = t.pushed_steps.iter().map(|s| d.amb.model().describe(s)).collect();
        let below: Vec<String> = t.downstairs_steps.iter().map(|s| d.amb.model().describe(s)).collect();
        let labels: Vec<String> = t.downstairs_labels.iter().map(|s| format_rational(*s)).collect();
        p.record(&["pushed".to_string(), pushed.join(" ⊂ ")]);
        p.record(&[
            "orbit".to_string(),
            below.join(" ⊂ "),
            format!("s={}", labels.join(",")),
        ]);
        p.record(&["transport", if t.agree { "match" } else { "mismatch" }]);
        for note in &t.notes {
            p.note(format!("multiplicity: {note}; add-closure notation hides it"));
        }
        passed &= t.agree;
    }
    Ok(Outcome {
        text: p.finish(),
        passed,
    })
}

pub fn pushdown(
    ws: &Workspace,
    action: Option<&str>,
    object: Option<&str>,
    cluster: Option<&str>,
    mut p: Printer,
) -> Result<Outcome> {
    let d = downstairs(ws, action)?;
    for line in write_algebra(&d.map.algebra).lines() {
        p.note(line);
    }
    if let Some(obj) = object {
        let (parts, m) = ws.object(obj)?;
        let img = d.amb.decompose(&d.map.push_down(&m)?)?;
        p.record(&[
            "object",
            &ws.amb.model().describe(&parts),
            &d.amb.model().describe(&img),
        ]);
    }
    if let Some(name) = cluster {
        let c = ws.cluster(Some(name))?;
        let img = d.map.push_down_subcategory(&ws.amb, &d.amb, &c)?;
        p.record(&["subcategory", &ws.amb.describe(&c), &d.amb.describe(&img)]);
    }
    Ok(Outcome::ok(p))
}
