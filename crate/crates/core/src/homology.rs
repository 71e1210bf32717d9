//! Projective covers, minimal projective resolutions, Ext dimensions and
//! middle terms of extensions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::model::{ModuleCategoryModel, Multiset};
use crate::quiver::projective_module;
use crate::rep::{
    direct_sum, direct_sum_with_maps, hom_basis, morphism_factorization, morphism_from_sum, morphism_into_sum,
    quotient, subrepresentation, Morphism, Quotient, Representation, Sub,
};

pub struct RadicalTop {
    pub rad: Sub,
    pub top: Quotient,
}

/// `rad M` at `v` is the sum of the images of the arrows ending at `v`.
pub fn radical_and_top(m: &Representation) -> RadicalTop {
    let alg = m.algebra();
    let q = alg.quiver();
    let p = m.p();
    let bases: Vec<Matrix> = (1..=q.vertex_count)
        .map(|v| {
            let imgs: Vec<&Matrix> = q.arrows_into(v).map(|a| m.map(a)).collect();
            Matrix::hstack(p, m.dim(v), &imgs).column_space()
        })
        .collect();
    let rad = subrepresentation(m, bases.clone()).expect("the radical is a subrepresentation");
    let top = quotient(m, &bases).expect("the radical is a subrepresentation");
    RadicalTop { rad, top }
}

pub struct ProjectiveCover {
    /// Vertex of each indecomposable projective summand, in order.
    pub generators: Vec<usize>,
    pub epi: Morphism,
}

/// Map `P(v) -> M` sending the trivial path to `x ∈ M_v`.
fn map_from_projective(proj: &Representation, v: usize, x: &Matrix, m: &Representation) -> Morphism {
    let alg = m.algebra();
    let basis = alg.path_basis();
    let p = m.p();
    let maps = (1..=alg.vertex_count())
        .map(|w| {
            let paths = basis.between(v, w);
            let cols: Vec<Matrix> = paths.iter().map(|path| m.path_matrix(path).mul(x)).collect();
            let refs: Vec<&Matrix> = cols.iter().collect();
            Matrix::hstack(p, m.dim(w), &refs)
        })
        .collect();
    Morphism::new(proj.clone(), m.clone(), maps).expect("paths act compatibly")
}

pub fn projective_cover(m: &Representation) -> ProjectiveCover {
    let alg = m.algebra();
    let rt = radical_and_top(m);
    let mut generators = Vec::new();
    let mut parts = Vec::new();
    let mut components = Vec::new();
    for v in 1..=alg.vertex_count() {
        let rad_v = rt.rad.mono.vertex_map(v);
        let comp = rad_v.complement_columns();
        for c in 0..comp.cols() {
            let x = comp.select_columns(&[c]);
            let pv = projective_module(alg, v);
            components.push(map_from_projective(&pv, v, &x, m));
            parts.push(pv);
            generators.push(v);
        }
    }
    let proj = direct_sum(alg, &parts).expect("same algebra");
    let epi = morphism_from_sum(&proj, m, &components);
    debug_assert!(epi.is_epi());
    ProjectiveCover { generators, epi }
}

/// `P_len -> ... -> P_0 -> M -> 0`. `differentials[0]` is the augmentation
/// and `differentials[i]` maps `P_i` to `P_{i-1}`.
#[derive(Clone)]
pub struct ProjectiveResolution {
    pub target: Representation,
    pub generators: Vec<Vec<usize>>,
    pub terms: Vec<Representation>,
    pub differentials: Vec<Morphism>,
    /// `syzygies[i]` is the kernel of `differentials[i]`.
    pub syzygies: Vec<Sub>,
}

impl ProjectiveResolution {
    pub fn new(m: &Representation) -> Self {
        let cover = projective_cover(m);
        let ker = morphism_factorization(&cover.epi).kernel;
        Self {
            target: m.clone(),
            generators: vec![cover.generators],
            terms: vec![cover.epi.source.clone()],
            differentials: vec![cover.epi],
            syzygies: vec![ker],
        }
    }

    /// Index of the last computed term.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    /// Extends the resolution so that `P_len` exists.
    pub fn extend_to(&mut self, len: usize) {
        while self.length() < len {
            let omega = self.syzygies.last().unwrap().clone();
            let cover = projective_cover(&omega.obj);
            let d = cover.epi.then(&omega.mono);
            let ker = morphism_factorization(&d).kernel;
            self.generators.push(cover.generators);
            self.terms.push(d.source.clone());
            self.differentials.push(d);
            self.syzygies.push(ker);
        }
    }

    pub fn syzygy(&self, i: usize) -> &Sub {
        &self.syzygies[i]
    }

    /// Inserts a contractible piece `P(v) --id--> P(v)` in degrees `i+1, i`.
    /// The result is exact but no longer minimal.
    pub fn padded(&self, i: usize, v: usize) -> Self {
        assert!(i < self.length());
        let alg = self.target.algebra();
        let pv = projective_module(alg, v);
        let mut out = self.clone();
        for deg in [i, i + 1] {
            let sum = direct_sum_with_maps(alg, &[self.terms[deg].clone(), pv.clone()]).unwrap();
            out.terms[deg] = sum.obj;
            out.generators[deg].push(v);
        }
        // d_i: P_i ⊕ P(v) -> P_{i-1}, zero on the new summand
        let d_i = &self.differentials[i];
        let new_src = &out.terms[i];
        let old_tgt = if i == 0 { &self.target } else { &out.terms[i - 1] };
        out.differentials[i] = morphism_from_sum(new_src, old_tgt, &[d_i.clone(), Morphism::zero(&pv, &d_i.target)]);
        // d_{i+1}: P_{i+1} ⊕ P(v) -> P_i ⊕ P(v) as diag(d_{i+1}, id)
        let d = &self.differentials[i + 1];
        let top = morphism_into_sum(&d.source, new_src, &[d.clone(), Morphism::zero(&d.source, &pv)]);
        let bottom = morphism_into_sum(&pv, new_src, &[Morphism::zero(&pv, &d.target), Morphism::identity(&pv)]);
        out.differentials[i + 1] = morphism_from_sum(&out.terms[i + 1], new_src, &[top, bottom]);
        // d_{i+2} gains a zero component into the new summand
        if i + 2 <= self.length() {
            let d2 = &self.differentials[i + 2];
            out.differentials[i + 2] = morphism_into_sum(
                &d2.source,
                &out.terms[i + 1],
                &[d2.clone(), Morphism::zero(&d2.source, &pv)],
            );
        }
        out
    }

    /// Matrix of `Hom(P_{i-1}, N) -> Hom(P_i, N)` for `i >= 1`, using
    /// `Hom(P(v), N) = N_v`.
    pub fn cochain_matrix(&self, i: usize, n: &Representation) -> Matrix {
        let alg = n.algebra();
        let basis = alg.path_basis();
        let p = n.p();
        let src_gens = &self.generators[i];
        let tgt_gens = &self.generators[i - 1];
        let d = &self.differentials[i];
        let row_off = offsets(src_gens.iter().map(|&v| n.dim(v)));
        let col_off = offsets(tgt_gens.iter().map(|&v| n.dim(v)));
        let mut out = Matrix::zeros(p, *row_off.last().unwrap(), *col_off.last().unwrap());
        for (j, &vj) in src_gens.iter().enumerate() {
            // column of the generator of summand j inside (P_i)_{vj}
            let gen_col: usize = src_gens[..j].iter().map(|&u| basis.between(u, vj).len()).sum();
            let image = d.vertex_map(vj).col(gen_col);
            let mut pos = 0;
            for (k, &vk) in tgt_gens.iter().enumerate() {
                for path in basis.between(vk, vj) {
                    let c = image[pos];
                    pos += 1;
                    if c == 0 {
                        continue;
                    }
                    let block = n.path_matrix(path).scale(c);
                    for r in 0..block.rows() {
                        for s in 0..block.cols() {
                            let (rr, cc) = (row_off[j] + r, col_off[k] + s);
                            out.set(rr, cc, (out.get(rr, cc) + block.get(r, s)) % p);
                        }
                    }
                }
            }
        }
        out
    }

    fn hom_dim_term(&self, i: usize, n: &Representation) -> usize {
        self.generators[i].iter().map(|&v| n.dim(v)).sum()
    }

    /// `dim Ext^i(target, N)`; the resolution must reach `P_{i+1}`.
    pub fn ext_dim(&self, i: usize, n: &Representation) -> usize {
        assert!(self.length() > i, "resolution too short");
        let outgoing = self.cochain_matrix(i + 1, n).rank();
        let incoming = if i == 0 { 0 } else { self.cochain_matrix(i, n).rank() };
        self.hom_dim_term(i, n) - outgoing - incoming
    }
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for s in sizes {
        out.push(out.last().unwrap() + s);
    }
    out
}

pub fn projective_resolution(m: &Representation, len: usize) -> ProjectiveResolution {
    let mut r = ProjectiveResolution::new(m);
    r.extend_to(len);
    r
}

pub fn ext_dim(i: usize, m: &Representation, n: &Representation) -> Result<usize> {
    m.check_same_algebra(n)?;
    Ok(projective_resolution(m, i + 1).ext_dim(i, n))
}

/// Resolutions shared across calls, extended on demand.
#[derive(Default)]
pub struct ResolutionCache {
    inner: Mutex<HashMap<Representation, Arc<ProjectiveResolution>>>,
}

impl ResolutionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn resolution(&self, m: &Representation, len: usize) -> Arc<ProjectiveResolution> {
        if let Some(r) = self.inner.lock().unwrap().get(m) {
            if r.length() >= len {
                return r.clone();
            }
        }
        let mut r = match self.inner.lock().unwrap().get(m) {
            Some(r) => (**r).clone(),
            None => ProjectiveResolution::new(m),
        };
        r.extend_to(len);
        let r = Arc::new(r);
        self.inner.lock().unwrap().insert(m.clone(), r.clone());
        r
    }

    pub fn ext_dim(&self, i: usize, m: &Representation, n: &Representation) -> usize {
        self.resolution(m, i + 1).ext_dim(i, n)
    }
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub middle: Representation,
    pub inclusion: Morphism,
    pub projection: Morphism,
    pub summands: Multiset,
}

/// Extensions `0 -> A -> E -> B -> 0`, one per isomorphism class of middle
/// term. `dim` is `dim Ext¹(B, A)`.
#[derive(Clone, Debug)]
pub struct ExtensionClassSet {
    pub dim: usize,
    pub middle_terms: Vec<Extension>,
}

pub fn extension_middle_terms(
    a: &Representation,
    b: &Representation,
    model: &ModuleCategoryModel,
    bound: usize,
) -> Result<ExtensionClassSet> {
    a.check_same_algebra(b)?;
    let alg = a.algebra();
    let p = a.p();
    let res = ProjectiveResolution::new(b);
    let omega = res.syzygy(0);
    let aug = &res.differentials[0];
    let cocycles = hom_basis(&omega.obj, a)?;
    let flat = |f: &Morphism| -> Matrix { Matrix::column(p, &f.flatten()) };
    let len = cocycles.first().map_or(0, |f| f.flatten().len());
    let h_cols: Vec<Matrix> = cocycles.iter().map(flat).collect();
    let h = Matrix::hstack(p, len, &h_cols.iter().collect::<Vec<_>>());
    let mut coords = Vec::new();
    for phi in hom_basis(&res.terms[0], a)? {
        let restricted = omega.mono.then(&phi);
        coords.push(h.solve(&flat(&restricted)).expect("restrictions are cocycles"));
    }
    let r = Matrix::hstack(p, cocycles.len(), &coords.iter().collect::<Vec<_>>());
    let comp = r.complement_columns();
    let d = comp.cols();
    if d > bound {
        return Err(Error::BoundExceeded {
            what: "dimension of Ext¹ for extension enumeration",
            value: d,
            limit: bound,
        });
    }
    let chosen: Vec<usize> = (0..d)
        .map(|c| (0..comp.rows()).find(|&i| comp.get(i, c) == 1).unwrap())
        .collect();
    let sum = direct_sum_with_maps(alg, &[a.clone(), res.terms[0].clone()])?;
    let neg_iota = omega.mono.scale(p - 1);
    let to_b = morphism_from_sum(&sum.obj, b, &[Morphism::zero(a, b), aug.clone()]);
    let mut seen: Vec<Multiset> = Vec::new();
    let mut out = Vec::new();
    let total = (p as u64).pow(d as u32);
    for code in 0..total {
        let mut c = Morphism::zero(&omega.obj, a);
        let mut rest = code;
        for &idx in &chosen {
            let lam = (rest % p as u64) as u32;
            rest /= p as u64;
            if lam != 0 {
                c = c.add(&cocycles[idx].scale(lam));
            }
        }
        let psi = morphism_into_sum(&omega.obj, &sum.obj, &[c, neg_iota.clone()]);
        let coker = morphism_factorization(&psi).cokernel;
        let inclusion = sum.inclusions[0].then(&coker.epi);
        let projection = coker.descend(&to_b);
        let middle = coker.obj.clone();
        debug_assert!(inclusion.is_mono() && projection.is_epi() && inclusion.then(&projection).is_zero());
        let summands = model.decompose(&middle)?.parts;
        if seen.contains(&summands) {
            continue;
        }
        seen.push(summands.clone());
        out.push(Extension {
            middle,
            inclusion,
            projection,
            summands,
        });
    }
    Ok(ExtensionClassSet {
        dim: d,
        middle_terms: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::nakayama_model;
    use crate::quiver::parse_algebra_spec;
    use crate::rep::hom_dim;

    fn model_a() -> ModuleCategoryModel {
        let alg = parse_algebra_spec("vertices 3\narrow alpha 1 2\narrow beta 2 3\nrelation alpha beta\n").unwrap();
        nakayama_model(&Arc::new(alg)).unwrap()
    }

    #[test]
    fn radical_and_top_of_interval() {
        let m = model_a();
        let rt = radical_and_top(m.indec(3));
        assert_eq!(rt.rad.obj.dims(), &[0, 1, 0]);
        assert_eq!(rt.top.obj.dims(), &[1, 0, 0]);
        let rt = radical_and_top(m.indec(0));
        assert!(rt.rad.obj.is_zero());
    }

    #[test]
    fn covers_over_a() {
        let m = model_a();
        let c = projective_cover(m.indec(2));
        assert!(c.epi.is_iso());
        let c = projective_cover(m.indec(0));
        assert_eq!(c.generators, vec![1]);
        let omega = morphism_factorization(&c.epi).kernel.obj;
        assert_eq!(m.identify(&omega).unwrap(), Some(1));
        let c = projective_cover(m.indec(1));
        assert_eq!(m.describe_object(&c.epi.source).unwrap(), "2\\3");
    }

    #[test]
    fn ext_values_over_a() {
        let m = model_a();
        let (s1, s2, s3) = (m.indec(0), m.indec(1), m.indec(2));
        assert_eq!(ext_dim(1, s1, s2).unwrap(), 1);
        assert_eq!(ext_dim(2, s1, s3).unwrap(), 1);
        assert_eq!(ext_dim(0, s1, s1).unwrap(), 1);
        for n in m.indecs() {
            for k in 1..4 {
                assert_eq!(ext_dim(k, s3, n).unwrap(), 0);
            }
        }
    }

    #[test]
    fn ext_one_matches_dimension_shift() {
        let m = model_a();
        for x in m.indecs() {
            let res = projective_resolution(x, 2);
            let omega = &res.syzygy(0).obj;
            for n in m.indecs() {
                let shifted = hom_dim(omega, n).unwrap() + hom_dim(x, n).unwrap() - hom_dim(&res.terms[0], n).unwrap();
                assert_eq!(res.ext_dim(1, n), shifted);
            }
        }
    }

    #[test]
    fn padding_leaves_ext_unchanged() {
        let m = model_a();
        let res = projective_resolution(m.indec(0), 3);
        for i in 0..2 {
            for v in 1..=3 {
                let padded = res.padded(i, v);
                for n in m.indecs() {
                    for k in 0..2 {
                        assert_eq!(padded.ext_dim(k, n), res.ext_dim(k, n));
                    }
                }
            }
        }
    }

    #[test]
    fn extensions_over_a() {
        let m = model_a();
        let (s1, s2, s3) = (m.indec(0), m.indec(1), m.indec(2));
        let e = extension_middle_terms(s3, s2, &m, 6).unwrap();
        assert_eq!(e.dim, 1);
        let names: Vec<String> = e.middle_terms.iter().map(|x| m.describe(&x.summands)).collect();
        assert_eq!(names, ["2+3", "2\\3"]);
        let e = extension_middle_terms(s2, s1, &m, 6).unwrap();
        let names: Vec<String> = e.middle_terms.iter().map(|x| m.describe(&x.summands)).collect();
        assert_eq!(names, ["1+2", "1\\2"]);
        let e = extension_middle_terms(s1, m.indec(4), &m, 6).unwrap();
        assert_eq!(e.middle_terms.len(), 1);
        for x in &e.middle_terms {
            let f = morphism_factorization(&x.projection);
            assert!(m.is_isomorphic(&f.kernel.obj, s1).unwrap());
        }
    }
}
