//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use num_rational::Rational64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use ntors::covering::{bound_quiver_isomorphism, push_down_preserves, verify_precovering_dims, Covering};
use ntors::highertors::{
    check_torsion_class, embed_t, enumerate_n_torsion_classes, is_n_cluster_tilting, is_n_torsion_class_criterion,
    is_n_torsion_class_direct, minimal_n_torsion_class_containing, CriterionFailure,
};
use ntors::hn_higher::{compare_hn, induced_chain, n_hn_filtration, ChainOfNTorsionClasses};
use ntors::model::Multiset;
use ntors::rep::{hom_dim, morphism_factorization};
use ntors::torsion::{multisets_up_to, sort_classes};
use ntors::{direct_sum, Ambient, Class};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn r(a: i64, b: i64) -> Rational64 {
    Rational64::new(a, b)
}

fn a_setup() -> (Ambient, Class) {
    let a = ambient("A.alg");
    let m = subcategory(&a, "A.cluster");
    (a, m)
}

fn cluster_tilting() -> Outcome {
    let (a, m) = a_setup();
    let rep = is_n_cluster_tilting(&a, &m, 2).map_err(|e| e.to_string())?;
    ensure(rep.ok, || rep.failures.join("; "))?;
    Ok(format!("{} is 2-cluster tilting", a.describe(&m)))
}

fn criterion_examples() -> Outcome {
    let (a, m) = a_setup();
    let e = |e: ntors::Error| e.to_string();
    let t1 = class(&a, &["2\\3", "2", "1\\2", "1"]);
    let v1 = check_torsion_class(&a, &t1, &m, 2).map_err(e)?;
    ensure(
        v1.is_n_torsion && v1.subject == class(&a, &["2\\3", "1\\2", "1"]),
        || format!("T1 gave {:?} with subject {}", v1.failure, a.describe(&v1.subject)),
    )?;
    let t2 = class(&a, &["2", "1\\2", "1"]);
    let v2 = check_torsion_class(&a, &t2, &m, 2).map_err(e)?;
    ensure(v2.failure.as_ref().map(|f| f.condition()) == Some(2), || {
        format!("T2 gave {:?}", v2.failure)
    })?;
    ensure(v2.torsion_objects() == class(&a, &["1\\2", "1"]), || {
        format!("T2 torsion objects {}", a.describe(&v2.torsion_objects()))
    })?;
    let u2 = class(&a, &["1\\2", "1"]);
    ensure(v2.subject == u2, || format!("T2 ∩ ℳ = {}", a.describe(&v2.subject)))?;
    ensure(
        is_n_torsion_class_criterion(&a, &u2, &m, 2).map_err(e)?.is_n_torsion,
        || "T2 ∩ ℳ rejected".into(),
    )?;
    let t3 = class(&a, &["1", "3"]);
    let v3 = check_torsion_class(&a, &t3, &m, 2).map_err(e)?;
    let (s1, s2) = (a.model().index_of("1").unwrap(), a.model().index_of("2").unwrap());
    ensure(
        v3.failure == Some(CriterionFailure::ExtNonzero { x: s1, y: s2 }),
        || format!("T3 gave {:?}", v3.failure),
    )?;
    ensure(a.ext_indec(1, s1, s2) == 1, || "Ext¹(S1,S2) ≠ 1".into())?;
    let least = minimal_n_torsion_class_containing(&a, &t3, &m, 2).map_err(e)?;
    ensure(least == m, || {
        format!("least class over {{1,3}} is {}", a.describe(&least))
    })?;
    Ok("T1 accepted, T2 fails (2), T2 ∩ ℳ accepted, T3 fails (3), least class over {1,3} is ℳ".into())
}

fn hn_table() -> Outcome {
    let (a, m) = a_setup();
    let delta = ChainOfNTorsionClasses::new(&a, chain(&a, "delta.chain"), &m, 2).map_err(|e| e.to_string())?;
    ensure(delta.chain.starts() == [r(0, 1), r(1, 3), r(2, 3)], || {
        "breakpoints".into()
    })?;
    let rows: [(&str, &[&str], &[Rational64]); 4] = [
        ("1", &["0", "1"], &[r(1, 3)]),
        ("1\\2", &["0", "1\\2"], &[r(1, 3)]),
        ("2\\3", &["0", "3", "2\\3"], &[r(2, 3), r(1, 3)]),
        ("3", &["0", "3"], &[r(2, 3)]),
    ];
    for (obj, steps, labels) in rows {
        let x = a.model().indec(a.model().index_of(obj).unwrap());
        let f = n_hn_filtration(&a, x, &delta).map_err(|e| e.to_string())?;
        let got: Vec<String> = f.steps.iter().map(|s| a.model().describe_object(s).unwrap()).collect();
        ensure(got == steps && f.labels == labels, || {
            format!("{obj}: {got:?} {:?}", f.labels)
        })?;
    }
    Ok("4 rows reproduced".into())
}

fn induced_chain_example() -> Outcome {
    let (a, m) = a_setup();
    let delta = ChainOfNTorsionClasses::new(&a, chain(&a, "delta5.chain"), &m, 2).map_err(|e| e.to_string())?;
    let eta = induced_chain(&a, &delta).map_err(|e| e.to_string())?;
    let middle = eta.chain.value_at(r(1, 3)).unwrap();
    ensure(middle == class(&a, &["1", "1\\2", "2\\3", "2"]), || {
        format!("middle value {}", a.describe(&middle))
    })?;
    ensure(eta.chain.values()[0] == a.all(), || "first value is not mod-A".into())?;
    let dims: Vec<usize> = a.model().indecs().iter().map(|x| x.total_dim()).collect();
    let members: Vec<usize> = m.iter().copied().collect();
    let objects = multisets_up_to(&members, &dims, 6);
    let mut checked = 0;
    for d in [
        &delta,
        &ChainOfNTorsionClasses::new(&a, chain(&a, "delta.chain"), &m, 2).unwrap(),
    ] {
        for parts in &objects {
            let cmp = compare_hn(&a, &a.model().realize(parts), d).map_err(|e| e.to_string())?;
            ensure(cmp.agree, || format!("mismatch on {}", a.model().describe(parts)))?;
            checked += 1;
        }
    }
    Ok(format!(
        "middle value {}, {checked} comparisons agree",
        a.describe(&middle)
    ))
}

fn covering_table() -> Outcome {
    let fx = covering_fixture();
    let c = algebra("C.alg");
    ensure(bound_quiver_isomorphism(&fx.map.algebra, &c).is_some(), || {
        "orbit algebra is not C".into()
    })?;
    let cov = Covering::new(&fx.up, &fx.down, &fx.map, &fx.mcat, 2).map_err(|e| e.to_string())?;
    let table: [(&[&str], &[&str]); 8] = [
        (
            &[
                "1", "3", "5", "7", "1\\2", "2\\3", "3\\4", "4\\5", "5\\6", "6\\7", "7\\8", "8\\1",
            ],
            &["1", "3", "1\\2", "2\\3", "3\\4", "4\\1"],
        ),
        (&["6\\7", "5\\6", "5", "2\\3", "1\\2", "1"], &["2\\3", "1\\2", "1"]),
        (&["8\\1", "7\\8", "7", "4\\5", "3\\4", "3"], &["4\\1", "3\\4", "3"]),
        (&["5\\6", "5", "1\\2", "1"], &["1\\2", "1"]),
        (&["7\\8", "7", "3\\4", "3"], &["3\\4", "3"]),
        (&["5", "1"], &["1"]),
        (&["7", "3"], &["3"]),
        (&[], &[]),
    ];
    let mut expected: Vec<Class> = table.iter().map(|(u, _)| class(&fx.up, u)).collect();
    sort_classes(&mut expected);
    let found = cov.equivariant_n_torsion_classes().map_err(|e| e.to_string())?;
    ensure(found == expected, || {
        format!("{} equivariant classes found", found.len())
    })?;
    for (u, img) in table {
        let row = cov.row(&class(&fx.up, u)).map_err(|e| e.to_string())?;
        ensure(row.ok() && row.image == class(&fx.down, img), || {
            format!("{} -> {}", fx.up.describe(&row.upstairs), fx.down.describe(&row.image))
        })?;
    }
    Ok("orbit algebra ≅ C, 8 rows with their images".into())
}

fn covering_hn_example() -> Outcome {
    let fx = covering_fixture();
    let cov = Covering::new(&fx.up, &fx.down, &fx.map, &fx.mcat, 2).map_err(|e| e.to_string())?;
    let delta =
        ChainOfNTorsionClasses::new(&fx.up, chain(&fx.up, "delta6.chain"), &fx.mcat, 2).map_err(|e| e.to_string())?;
    let pushed = cov.push_chain(&delta).map_err(|e| e.to_string())?;
    ensure(
        pushed.chain.values()[1] == class(&fx.down, &["2\\3", "1\\2", "1"]),
        || "pushed chain".into(),
    )?;
    let parts = fx.up.model().parse_object("8\\1+4\\5").unwrap();
    let t = cov
        .hn_transport(&fx.up.model().realize(&parts), &delta)
        .map_err(|e| e.to_string())?;
    let up: Vec<String> = {
        let f = n_hn_filtration(&fx.up, &fx.up.model().realize(&parts), &delta).unwrap();
        f.steps
            .iter()
            .map(|s| fx.up.model().describe_object(s).unwrap())
            .collect()
    };
    let down: Vec<String> = t.downstairs_steps.iter().map(|s| fx.down.model().describe(s)).collect();
    ensure(up == ["0", "1+5", "4\\5+8\\1"], || format!("upstairs {up:?}"))?;
    ensure(down == ["0", "1^2", "4\\1^2"], || format!("downstairs {down:?}"))?;
    ensure(t.agree, || {
        "push-down of the steps differs from the orbit-side filtration".into()
    })?;
    ensure(!t.notes.is_empty(), || "no multiplicity note".into())?;
    Ok(format!(
        "{} / {}; note: {}",
        up.join(" ⊂ "),
        down.join(" ⊂ "),
        t.notes.join("; ")
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for p in [2, 3] {
        let alg = Arc::new(algebra("A.alg").with_field(p).unwrap());
        let a = ambient_of(&alg);
        let m = subcategory(&a, "A.cluster");
        let members: Vec<usize> = m.iter().copied().collect();
        for mask in 0u32..16 {
            let u: Class = (0..4).filter(|&i| mask >> i & 1 == 1).map(|i| members[i]).collect();
            let x = is_n_torsion_class_criterion(&a, &u, &m, 2)
                .map_err(|e| e.to_string())?
                .is_n_torsion;
            let y = is_n_torsion_class_direct(&a, &u, &m, 2).map_err(|e| e.to_string())?;
            ensure(x == y, || format!("p={p}: disagree on {}", a.describe(&u)))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} subsets agree"))
}

fn theorem_properties() -> Outcome {
    let fx = covering_fixture();
    let (a, ma) = a_setup();
    let mut count = 0;
    for (amb, m) in [(&a, &ma), (&fx.up, &fx.mcat)] {
        let classes = enumerate_n_torsion_classes(amb, m, 2).map_err(|e| e.to_string())?;
        let mut images = Vec::new();
        for u in &classes {
            let t = embed_t(amb, u, m, 2).map_err(|e| e.to_string())?;
            let back: Class = t.intersection(m).copied().collect();
            let v = is_n_torsion_class_criterion(amb, u, m, 2).map_err(|e| e.to_string())?;
            ensure(back == *u && v.torsion_objects() == *u, || {
                format!("recovery fails on {}", amb.describe(u))
            })?;
            images.push(t);
        }
        for i in 0..classes.len() {
            for j in 0..classes.len() {
                ensure(
                    (images[i] == images[j]) == (i == j)
                        && classes[i].is_subset(&classes[j]) == images[i].is_subset(&images[j]),
                    || {
                        format!(
                            "order fails at {} / {}",
                            amb.describe(&classes[i]),
                            amb.describe(&classes[j])
                        )
                    },
                )?;
            }
        }
        count += classes.len();
    }
    let mut rng = StdRng::seed_from_u64(7);
    let mut sequences = 0;
    let model = fx.up.model();
    while sequences < 50 {
        let parts: Vec<_> = (0..rng.gen_range(1..=2))
            .map(|_| model.indec(rng.gen_range(0..model.len())).clone())
            .collect();
        let x = direct_sum(model.algebra(), &parts).unwrap();
        let subs = ntors::submodule_list(&x, 8).map_err(|e| e.to_string())?;
        let sub = &subs[rng.gen_range(0..subs.len())];
        let q = morphism_factorization(&sub.mono).cokernel;
        ensure(
            push_down_preserves(&fx.map, &sub.mono, &q.epi).map_err(|e| e.to_string())?,
            || {
                format!(
                    "push-down of a sequence over {} is not exact",
                    model.describe_object(&x).unwrap()
                )
            },
        )?;
        sequences += 1;
    }
    let mut pairs = 0;
    for &x in &fx.mcat {
        for &y in &fx.mcat {
            let rep = verify_precovering_dims(&fx.map, model.indec(x), model.indec(y)).map_err(|e| e.to_string())?;
            ensure(rep.ok, || {
                format!("Hom dimensions differ for {} / {}", model.name(x), model.name(y))
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{count} n-torsion classes, {sequences} exact push-downs, {pairs} precovering pairs"
    ))
}

fn decomposition_roundtrip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    for name in ["A.alg", "B.alg", "C.alg", "trivial.alg"] {
        let amb = ambient(name);
        let model = amb.model();
        let hom = model.hom_matrix();
        let random = |rng: &mut StdRng| -> Multiset {
            let mut ms = Multiset::new();
            for _ in 0..rng.gen_range(1..=5) {
                *ms.entry(rng.gen_range(0..model.len())).or_insert(0) += 1;
            }
            ms
        };
        for _ in 0..100 {
            let (x, y) = (random(&mut rng), random(&mut rng));
            let mx = model.realize(&x);
            ensure(amb.decompose(&mx).map_err(|e| e.to_string())? == x, || {
                format!("{name}: {} does not decompose back", model.describe(&x))
            })?;
            let expected: usize = x
                .iter()
                .flat_map(|(&i, &a)| y.iter().map(move |(&j, &b)| a * b * hom[i][j]))
                .sum();
            let got = hom_dim(&mx, &model.realize(&y)).map_err(|e| e.to_string())?;
            ensure(got == expected, || {
                format!("{name}: Hom({}, {})", model.describe(&x), model.describe(&y))
            })?;
        }
    }
    Ok("100 sums per algebra".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("2-cluster tilting over A", cluster_tilting),
        ("n-torsion criterion examples", criterion_examples),
        ("HN table", hn_table),
        ("induced chain and HN comparison", induced_chain_example),
        ("equivariant covering table", covering_table),
        ("HN push-down example", covering_hn_example),
        ("criterion against direct oracle", oracle_equivalence),
        ("theorem properties", theorem_properties),
        ("decomposition roundtrip", decomposition_roundtrip),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match res {
            Ok(detail) => println!("criterion {}: pass  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1)
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
