//! Invariant suites run by `verify`.

use clap::ValueEnum;

use ntors::covering::{is_equivariant, twist_permutation, verify_precovering_dims, Covering};
use ntors::highertors::{
    embed_t, enumerate_n_torsion_classes, is_n_torsion_class_criterion, is_n_torsion_class_direct,
};
use ntors::hn_higher::{compare_hn, ChainOfNTorsionClasses};
use ntors::model::Multiset;
use ntors::torsion::{multisets_up_to, sort_classes};
use ntors::{Class, Result};

use crate::commands::{downstairs, verdict, Outcome};
use crate::output::Printer;
use crate::workspace::Workspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    TorsionAxioms,
    NtorsEquivalence,
    EmbedPoset,
    HnComparison,
    Covering,
}

pub struct VerifyArgs<'a> {
    pub n: usize,
    pub cluster: Option<&'a str>,
    pub action: Option<&'a str>,
    pub max_dim: usize,
}

struct Tally {
    p: Printer,
    passed: bool,
}

impl Tally {
    fn check(&mut self, name: &str, ok: bool, detail: String) {
        self.passed &= ok;
        self.p.record(&[verdict(ok), name, &detail]);
    }
}

pub fn run(ws: &Workspace, suite: Suite, args: &VerifyArgs, p: Printer) -> Result<Outcome> {
    let mut t = Tally { p, passed: true };
    match suite {
        Suite::TorsionAxioms => torsion_axioms(ws, &mut t)?,
        Suite::NtorsEquivalence => ntors_equivalence(ws, args, &mut t)?,
        Suite::EmbedPoset => embed_poset(ws, args, &mut t)?,
        Suite::HnComparison => hn_comparison(ws, args, &mut t)?,
        Suite::Covering => covering(ws, args, &mut t)?,
    }
    let passed = t.passed;
    t.p.record(&["suite", verdict(passed)]);
    Ok(Outcome {
        text: t.p.finish(),
        passed,
    })
}

fn torsion_axioms(ws: &Workspace, t: &mut Tally) -> Result<()> {
    let amb = &ws.amb;
    let hom = amb.model().hom_matrix();
    let classes = amb.enumerate_torsion_classes()?;
    for c in &classes {
        let f = amb.torsion_free_class(c);
        let orthogonal = c.iter().all(|&x| f.iter().all(|&y| hom[x][y] == 0));
        let closed = amb.fac_closure(c)? == *c && amb.filt_closure(c)? == *c;
        let mut split = true;
        for i in 0..amb.model().len() {
            let (tm, fm) = amb.torsion_parts(c, i)?;
            split &= tm.keys().all(|k| c.contains(k)) && fm.keys().all(|k| f.contains(k));
        }
        t.check("torsion-pair", orthogonal && closed && split, amb.describe(c));
    }
    let n = amb.model().len();
    if n <= 10 {
        let mut slow = Vec::new();
        for mask in 0u32..(1 << n) {
            let c: Class = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if amb.is_torsion_class(&c)? {
                slow.push(c);
            }
        }
        sort_classes(&mut slow);
        t.check(
            "closure-route",
            slow == classes,
            format!("{} torsion classes", classes.len()),
        );
    } else {
        t.p.note(format!(
            "{} torsion classes; closure-route cross-check skipped above 10 indecomposables",
            classes.len()
        ));
    }
    Ok(())
}

fn ntors_equivalence(ws: &Workspace, args: &VerifyArgs, t: &mut Tally) -> Result<()> {
    let amb = &ws.amb;
    let mcat = ws.cluster(args.cluster)?;
    let members: Vec<usize> = mcat.iter().copied().collect();
    let mut subjects: Vec<Class> = Vec::new();
    if members.len() <= 8 {
        for mask in 0u32..(1 << members.len()) {
            subjects.push(
                (0..members.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| members[i])
                    .collect(),
            );
        }
    } else {
        // every n-torsion class and its neighbours one member away
        for u in enumerate_n_torsion_classes(amb, &mcat, args.n)? {
            for &m in &members {
                let mut v = u.clone();
                if !v.remove(&m) {
                    v.insert(m);
                }
                subjects.push(v);
            }
            subjects.push(u);
        }
        sort_classes(&mut subjects);
        subjects.dedup();
    }
    let mut agree = 0;
    let mut positive = 0;
    for u in &subjects {
        let a = is_n_torsion_class_criterion(amb, u, &mcat, args.n)?.is_n_torsion;
        let b = is_n_torsion_class_direct(amb, u, &mcat, args.n)?;
        if a == b {
            agree += 1;
        } else {
            t.check("criterion-vs-direct", false, amb.describe(u));
        }
        positive += a as usize;
    }
    t.check(
        "criterion-vs-direct",
        agree == subjects.len(),
        format!(
            "{agree}/{} subsets agree, {positive} are {}-torsion",
            subjects.len(),
            args.n
        ),
    );
    Ok(())
}

fn embed_poset(ws: &Workspace, args: &VerifyArgs, t: &mut Tally) -> Result<()> {
    let amb = &ws.amb;
    let mcat = ws.cluster(args.cluster)?;
    let classes = enumerate_n_torsion_classes(amb, &mcat, args.n)?;
    let mut images = Vec::new();
    for u in &classes {
        let img = embed_t(amb, u, &mcat, args.n)?;
        let back: Class = img.intersection(&mcat).copied().collect();
        let objects = is_n_torsion_class_criterion(amb, u, &mcat, args.n)?.torsion_objects();
        t.check(
            "recovery",
            back == *u && objects == *u,
            format!("{} -> {}", amb.describe(u), amb.describe(&img)),
        );
        images.push(img);
    }
    let mut distinct = images.clone();
    sort_classes(&mut distinct);
    distinct.dedup();
    t.check(
        "injective",
        distinct.len() == images.len(),
        format!("{} classes", classes.len()),
    );
    let mut order = true;
    for (i, u) in classes.iter().enumerate() {
        for (j, v) in classes.iter().enumerate() {
            order &= u.is_subset(v) == images[i].is_subset(&images[j]);
        }
    }
    t.check("order", order, "inclusions preserved and reflected".to_string());
    Ok(())
}

fn objects_up_to(ws: &Workspace, mcat: &Class, max_dim: usize) -> Vec<Multiset> {
    let dims: Vec<usize> = ws.amb.model().indecs().iter().map(|x| x.total_dim()).collect();
    let members: Vec<usize> = mcat.iter().copied().collect();
    let mut v = multisets_up_to(&members, &dims, max_dim);
    v.sort();
    v
}

fn n_chains(ws: &Workspace, mcat: &Class, n: usize) -> Result<Vec<(String, ChainOfNTorsionClasses)>> {
    let mut out = Vec::new();
    for name in ws.chains.keys() {
        let chain = ws.chain(name)?;
        if chain.values()[0] == *mcat {
            out.push((name.clone(), ChainOfNTorsionClasses::new(&ws.amb, chain, mcat, n)?));
        }
    }
    if out.is_empty() {
        return Err(ntors::Error::Precondition("no loaded chain starts at ℳ".into()));
    }
    Ok(out)
}

fn hn_comparison(ws: &Workspace, args: &VerifyArgs, t: &mut Tally) -> Result<()> {
    let mcat = ws.cluster(args.cluster)?;
    let objects = objects_up_to(ws, &mcat, args.max_dim);
    for (name, delta) in n_chains(ws, &mcat, args.n)? {
        let mut agree = 0;
        for parts in &objects {
            let m = ws.amb.model().realize(parts);
            if compare_hn(&ws.amb, &m, &delta)?.agree {
                agree += 1;
            } else {
                t.check("compare", false, format!("{name}: {}", ws.amb.model().describe(parts)));
            }
        }
        t.check(
            "compare",
            agree == objects.len(),
            format!(
                "{name}: {agree}/{} objects of dimension ≤ {}",
                objects.len(),
                args.max_dim
            ),
        );
    }
    Ok(())
}

fn covering(ws: &Workspace, args: &VerifyArgs, t: &mut Tally) -> Result<()> {
    let (up, mcat) = (&ws.amb, ws.cluster(args.cluster)?);
    let d = downstairs(ws, args.action)?;
    let cov = Covering::new(up, &d.amb, &d.map, &mcat, args.n)?;
    for u in &cov.equivariant_n_torsion_classes()? {
        let row = cov.row(u)?;
        t.check(
            "row",
            row.ok(),
            format!("{} -> {}", up.describe(u), d.amb.describe(&row.image)),
        );
    }
    let mut pairs = 0;
    let mut good = 0;
    for &x in &mcat {
        for &y in &mcat {
            pairs += 1;
            good += verify_precovering_dims(&d.map, up.model().indec(x), up.model().indec(y))?.ok as usize;
        }
    }
    t.check("precovering", good == pairs, format!("{good}/{pairs} pairs"));
    let perm = twist_permutation(up, &d.map.action)?;
    for (name, delta) in n_chains(ws, &mcat, args.n)? {
        if !delta.chain.values().iter().try_fold(true, |acc, v| {
            Ok::<_, ntors::Error>(acc && is_equivariant(up, &d.map.action, v)?)
        })? {
            continue;
        }
        let mut agree = 0;
        let mut total = 0;
        for &x in &mcat {
            for parts in [Multiset::from([(x, 1)]), Multiset::from([(x, 1), (perm[x], 1)])] {
                let tr = cov.hn_transport(&up.model().realize(&parts), &delta)?;
                total += 1;
                agree += tr.agree as usize;
            }
        }
        t.check(
            "hn-transport",
            agree == total,
            format!("{name}: {agree}/{total} objects"),
        );
    }
    Ok(())
}
