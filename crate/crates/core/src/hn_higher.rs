//! Chains of n-torsion classes, their slicings, n-HN filtrations and the
//! induced chain of torsion classes.

use num_rational::Rational64;
use num_traits::One;

use crate::chain::{Class, StepChain};
use crate::error::{Error, Result};
use crate::highertors::{is_n_torsion_class_criterion, m_coresolution};
use crate::model::Multiset;
use crate::rep::Representation;
use crate::torsion::{hn_by_peeling, hn_filtration_abelian, reachable, Ambient, ChainOfTorsionClasses, HNFiltration};

/// A chain of n-torsion classes of ℳ: starts at ℳ, ends at 0.
#[derive(Clone, Debug)]
pub struct ChainOfNTorsionClasses {
    pub chain: StepChain,
    pub mcat: Class,
    pub n: usize,
}

impl ChainOfNTorsionClasses {
    pub fn new(amb: &Ambient, chain: StepChain, mcat: &Class, n: usize) -> Result<Self> {
        if chain.values()[0] != *mcat {
            return Err(Error::Precondition("a chain of n-torsion classes starts at ℳ".into()));
        }
        for v in chain.values() {
            if !is_n_torsion_class_criterion(amb, v, mcat, n)?.is_n_torsion {
                return Err(Error::Precondition(format!(
                    "{} is not an n-torsion class",
                    amb.describe(v)
                )));
            }
        }
        Ok(Self {
            chain,
            mcat: mcat.clone(),
            n,
        })
    }

    pub fn cut_union(&self, s: Rational64) -> Result<Class> {
        self.chain.cut_union(s)
    }

    pub fn cut_intersection(&self, s: Rational64) -> Result<Class> {
        self.chain.cut_intersection(s, &self.mcat)
    }
}

/// n-cokernel shapes are tuples of summand lists; this flattens one into a
/// single multiset keyed by `(position, index)`.
fn flatten_tuple(tuple: &[Multiset], width: usize) -> Multiset {
    let mut out = Multiset::new();
    for (pos, ms) in tuple.iter().enumerate() {
        for (&k, &c) in ms {
            out.insert(pos * width + k, c);
        }
    }
    out
}

/// The slice at `t`: n-cokernels of `M -> M/U^M` for `M` in
/// `⋂_{s<t} U_s \ ⋃_{s>t} U_s`, recorded by the shapes of their coresolutions.
#[derive(Clone, Debug)]
pub struct SlicingQ {
    pub t: Rational64,
    /// Indecomposables of ℳ in the difference.
    pub sources: Class,
    /// One n-cokernel shape per source.
    pub shapes: Vec<Vec<Multiset>>,
    width: usize,
}

impl SlicingQ {
    /// Whether the n-cokernel with the given shape is a sum of generators.
    pub fn contains(&self, shape: &[Multiset]) -> bool {
        let target = flatten_tuple(shape, self.width);
        if target.is_empty() {
            return false;
        }
        let gens: Vec<Multiset> = self.shapes.iter().map(|s| flatten_tuple(s, self.width)).collect();
        reachable(&target, &gens)
    }

    /// An object `X` of ℳ, read as the n-cokernel `X -> 0 -> ...`.
    pub fn contains_object(&self, parts: &Multiset) -> bool {
        self.contains(std::slice::from_ref(parts))
    }
}

pub fn slicing_q(amb: &Ambient, delta: &ChainOfNTorsionClasses, t: Rational64) -> Result<SlicingQ> {
    let below = delta.cut_intersection(t)?;
    let above = if t == Rational64::one() {
        Class::new()
    } else {
        delta.cut_union(t)?
    };
    let t_above = amb.torsion_class_generated(&above);
    let sources: Class = below.difference(&above).copied().collect();
    let mut shapes = Vec::new();
    for &m in &sources {
        let d = amb.torsion_subobject(&t_above, amb.model().indec(m))?;
        shapes.push(m_coresolution(amb, &d.fm.obj, &delta.mcat, delta.n)?.summands);
    }
    Ok(SlicingQ {
        t,
        sources,
        shapes,
        width: amb.model().len(),
    })
}

/// Filtration of an object of ℳ by the chain, with each step's n-cokernel in
/// the slice at its label.
pub fn n_hn_filtration(amb: &Ambient, m: &Representation, delta: &ChainOfNTorsionClasses) -> Result<HNFiltration> {
    let parts = amb.decompose(m)?;
    if !parts.keys().all(|i| delta.mcat.contains(i)) {
        return Err(Error::Precondition(format!(
            "{} is not in ℳ",
            amb.model().describe(&parts)
        )));
    }
    let f = hn_by_peeling(amb, m, &delta.chain, |c| amb.torsion_class_generated(c))?;
    for (k, &s) in f.labels.iter().enumerate() {
        if k > 0 {
            let above = delta.cut_union(s)?;
            if !amb.decompose(&f.steps[k])?.keys().all(|i| above.contains(i)) {
                return Err(Error::Consistency(format!(
                    "a filtration step is not in the n-torsion class above {s}"
                )));
            }
        }
        let q = crate::rep::morphism_factorization(&f.inclusions[k]).cokernel.obj;
        let shape = m_coresolution(amb, &q, &delta.mcat, delta.n)?.summands;
        if !slicing_q(amb, delta, s)?.contains(&shape) {
            return Err(Error::Consistency(format!(
                "a filtration factor is not in the slice at {s}"
            )));
        }
    }
    Ok(f)
}

/// `s ↦ T(U_s)`, checked against the cuts of the original chain at every
/// probe point.
pub fn induced_chain(amb: &Ambient, delta: &ChainOfNTorsionClasses) -> Result<ChainOfTorsionClasses> {
    let eta = ChainOfTorsionClasses::new(amb, delta.chain.map(|v| Ok(amb.torsion_class_generated(v)))?)?;
    let all = amb.all();
    for s in delta.chain.probe_points() {
        let restricted: Class = eta.chain.value_at(s)?.intersection(&delta.mcat).copied().collect();
        if restricted != delta.chain.value_at(s)? {
            return Err(Error::Consistency(format!(
                "the induced chain does not restrict back at {s}"
            )));
        }
        if eta.chain.cut_union(s)? != amb.torsion_class_generated(&delta.cut_union(s)?) {
            return Err(Error::Consistency(format!("unions do not commute with T at {s}")));
        }
        let meet: Class = eta
            .chain
            .cut_intersection(s, &all)?
            .intersection(&delta.mcat)
            .copied()
            .collect();
        if meet != delta.cut_intersection(s)? {
            return Err(Error::Consistency(format!("intersections do not restrict at {s}")));
        }
    }
    Ok(eta)
}

#[derive(Clone, Debug)]
pub struct HnComparison {
    pub higher: HNFiltration,
    pub abelian: HNFiltration,
    pub agree: bool,
}

/// Both filtrations of `m`, and whether they have the same labels and the
/// same steps up to isomorphism.
pub fn compare_hn(amb: &Ambient, m: &Representation, delta: &ChainOfNTorsionClasses) -> Result<HnComparison> {
    let eta = induced_chain(amb, delta)?;
    let higher = n_hn_filtration(amb, m, delta)?;
    let abelian = hn_filtration_abelian(amb, m, &eta)?;
    let mut agree = higher.labels == abelian.labels;
    if agree {
        for (x, y) in higher.steps.iter().zip(&abelian.steps) {
            if amb.decompose(x)? != amb.decompose(y)? {
                agree = false;
                break;
            }
        }
    }
    Ok(HnComparison { higher, abelian, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::nakayama_model;
    use crate::quiver::parse_algebra_spec;
    use std::sync::Arc;

    fn amb_a() -> Ambient {
        let alg = parse_algebra_spec("vertices 3\narrow alpha 1 2\narrow beta 2 3\nrelation alpha beta\n").unwrap();
        Ambient::new(Arc::new(nakayama_model(&Arc::new(alg)).unwrap()))
    }

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    fn delta(a: &Ambient) -> ChainOfNTorsionClasses {
        let m = a.class_from_names(&["3", "2\\3", "1\\2", "1"]).unwrap();
        let chain = StepChain::new(
            vec![r(0, 1), r(1, 3), r(2, 3)],
            vec![m.clone(), a.class_from_names(&["3"]).unwrap(), Class::new()],
        )
        .unwrap();
        ChainOfNTorsionClasses::new(a, chain, &m, 2).unwrap()
    }

    fn describe_steps(a: &Ambient, f: &HNFiltration) -> Vec<String> {
        f.steps.iter().map(|s| a.model().describe_object(s).unwrap()).collect()
    }

    #[test]
    fn hn_table() {
        let a = amb_a();
        let d = delta(&a);
        let obj = |n: &str| a.model().indec(a.model().index_of(n).unwrap()).clone();
        let f = n_hn_filtration(&a, &obj("2\\3"), &d).unwrap();
        assert_eq!(describe_steps(&a, &f), ["0", "3", "2\\3"]);
        assert_eq!(f.labels, [r(2, 3), r(1, 3)]);
        let f = n_hn_filtration(&a, &obj("1"), &d).unwrap();
        assert_eq!(f.labels, [r(1, 3)]);
        let f = n_hn_filtration(&a, &obj("3"), &d).unwrap();
        assert_eq!(f.labels, [r(2, 3)]);
        assert!(n_hn_filtration(&a, &obj("2"), &d).is_err());
    }

    #[test]
    fn slices() {
        let a = amb_a();
        let d = delta(&a);
        let q = slicing_q(&a, &d, r(2, 3)).unwrap();
        assert!(q.contains_object(&a.decompose(a.model().indec(a.model().index_of("3").unwrap())).unwrap()));
        let q = slicing_q(&a, &d, r(1, 2)).unwrap();
        assert!(q.sources.is_empty());
        let q = slicing_q(&a, &d, r(1, 3)).unwrap();
        assert_eq!(q.sources.len(), 3);
    }

    #[test]
    fn chain_validation() {
        let a = amb_a();
        let m = a.class_from_names(&["3", "2\\3", "1\\2", "1"]).unwrap();
        let bad = StepChain::new(
            vec![r(0, 1), r(1, 2)],
            vec![m.clone(), a.class_from_names(&["1", "3"]).unwrap()],
        )
        .unwrap();
        assert!(ChainOfNTorsionClasses::new(&a, bad, &m, 2).is_err());
    }

    #[test]
    fn induced_chain_and_comparison() {
        let a = amb_a();
        let d = delta(&a);
        let eta = induced_chain(&a, &d).unwrap();
        assert_eq!(eta.chain.values()[0], a.all());
        for &i in &d.mcat {
            let cmp = compare_hn(&a, a.model().indec(i), &d).unwrap();
            assert!(cmp.agree, "{}", a.model().name(i));
        }
    }
}
