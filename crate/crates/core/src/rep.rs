//! Representations, morphisms and the exact linear algebra between them.

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{all_subspaces, Matrix};
use crate::quiver::{BoundQuiverAlgebra, Path};

/// A finite-dimensional representation. Arrow `a: u -> w` carries a matrix of
/// shape `dims[w] x dims[u]` acting on column vectors.
#[derive(Clone)]
pub struct Representation {
    alg: Arc<BoundQuiverAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.maps == other.maps && same_algebra(&self.alg, &other.alg)
    }
}

impl Eq for Representation {}

impl Hash for Representation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dims.hash(state);
        self.maps.hash(state);
    }
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Rep{:?}", self.dims)
    }
}

fn same_algebra(a: &Arc<BoundQuiverAlgebra>, b: &Arc<BoundQuiverAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Representation {
    pub fn new(alg: Arc<BoundQuiverAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count {
            return Err(Error::InvalidRepresentation(format!(
                "expected {} dimensions, got {}",
                q.vertex_count,
                dims.len()
            )));
        }
        if maps.len() != q.arrows.len() {
            return Err(Error::InvalidRepresentation(format!(
                "expected {} arrow maps, got {}",
                q.arrows.len(),
                maps.len()
            )));
        }
        for (a, m) in q.arrows.iter().zip(&maps) {
            if m.rows() != dims[a.target - 1] || m.cols() != dims[a.source - 1] {
                return Err(Error::InvalidRepresentation(format!(
                    "map for {} has shape {}x{}, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    dims[a.target - 1],
                    dims[a.source - 1]
                )));
            }
            if m.p() != alg.field_char() {
                return Err(Error::InvalidRepresentation(format!(
                    "map for {} over wrong field",
                    a.name
                )));
            }
        }
        let rep = Self { alg, dims, maps };
        for r in rep.alg.relations() {
            if !rep.path_matrix(r).is_zero() {
                return Err(Error::InvalidRepresentation(format!(
                    "relation {} does not vanish",
                    r.display(rep.alg.quiver())
                )));
            }
        }
        Ok(rep)
    }

    pub fn zero(alg: &Arc<BoundQuiverAlgebra>) -> Self {
        let q = alg.quiver();
        let p = alg.field_char();
        Self {
            alg: alg.clone(),
            dims: vec![0; q.vertex_count],
            maps: q.arrows.iter().map(|_| Matrix::zeros(p, 0, 0)).collect(),
        }
    }

    pub fn simple(alg: &Arc<BoundQuiverAlgebra>, v: usize) -> Self {
        let q = alg.quiver();
        let p = alg.field_char();
        let mut dims = vec![0; q.vertex_count];
        dims[v - 1] = 1;
        let maps = q
            .arrows
            .iter()
            .map(|a| Matrix::zeros(p, dims[a.target - 1], dims[a.source - 1]))
            .collect();
        Self {
            alg: alg.clone(),
            dims,
            maps,
        }
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.alg
    }

    pub fn p(&self) -> u32 {
        self.alg.field_char()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v - 1]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Action of a path: `M(a_L) ... M(a_1)`.
    pub fn path_matrix(&self, path: &Path) -> Matrix {
        let mut m = Matrix::identity(self.p(), self.dim(path.start));
        for &a in &path.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    pub fn check_same_algebra(&self, other: &Representation) -> Result<()> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Morphism {
    pub source: Representation,
    pub target: Representation,
    maps: Vec<Matrix>,
}

impl Morphism {
    pub fn new(source: Representation, target: Representation, maps: Vec<Matrix>) -> Result<Self> {
        source.check_same_algebra(&target)?;
        let n = source.dims.len();
        if maps.len() != n {
            return Err(Error::InvalidRepresentation("wrong number of vertex maps".into()));
        }
        for v in 0..n {
            if maps[v].rows() != target.dims[v] || maps[v].cols() != source.dims[v] {
                return Err(Error::InvalidRepresentation(format!(
                    "vertex map {} has wrong shape",
                    v + 1
                )));
            }
        }
        for (ai, a) in source.alg.quiver().arrows.iter().enumerate() {
            let lhs = maps[a.target - 1].mul(&source.maps[ai]);
            let rhs = target.maps[ai].mul(&maps[a.source - 1]);
            if lhs != rhs {
                return Err(Error::InvalidRepresentation(format!(
                    "map does not intertwine {}",
                    a.name
                )));
            }
        }
        Ok(Self { source, target, maps })
    }

    fn new_unchecked(source: Representation, target: Representation, maps: Vec<Matrix>) -> Self {
        debug_assert!(Morphism::new(source.clone(), target.clone(), maps.clone()).is_ok());
        Self { source, target, maps }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let p = source.p();
        let maps = (0..source.dims.len())
            .map(|v| Matrix::zeros(p, target.dims[v], source.dims[v]))
            .collect();
        Self {
            source: source.clone(),
            target: target.clone(),
            maps,
        }
    }

    pub fn identity(m: &Representation) -> Self {
        let maps = m.dims.iter().map(|&d| Matrix::identity(m.p(), d)).collect();
        Self {
            source: m.clone(),
            target: m.clone(),
            maps,
        }
    }

    pub fn vertex_map(&self, v: usize) -> &Matrix {
        &self.maps[v - 1]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// `self` followed by `next`, i.e. `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Morphism {
        assert_eq!(self.target.dims, next.source.dims, "composing incompatible morphisms");
        let maps = next.maps.iter().zip(&self.maps).map(|(g, f)| g.mul(f)).collect();
        Morphism {
            source: self.source.clone(),
            target: next.target.clone(),
            maps,
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect();
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps,
        }
    }

    pub fn scale(&self, c: u32) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero())
    }

    pub fn is_mono(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// All vertex matrices concatenated row-major, as a vector.
    pub fn flatten(&self) -> Vec<u32> {
        self.maps.iter().flat_map(|m| m.entries().iter().copied()).collect()
    }
}

/// A subrepresentation given by a basis per vertex.
#[derive(Clone, Debug)]
pub struct Sub {
    pub obj: Representation,
    pub mono: Morphism,
}

impl Sub {
    /// Factors `h: X -> M` through the inclusion, if its image lies inside.
    pub fn lift(&self, h: &Morphism) -> Option<Morphism> {
        let mut maps = Vec::new();
        for (b, hv) in self.mono.maps.iter().zip(&h.maps) {
            maps.push(b.solve(hv)?);
        }
        Some(Morphism::new_unchecked(h.source.clone(), self.obj.clone(), maps))
    }
}

/// A quotient representation with the standard complement used as its basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub obj: Representation,
    pub epi: Morphism,
    sections: Vec<Matrix>,
}

impl Quotient {
    /// Descends `g: M -> X` vanishing on the kernel of the projection.
    pub fn descend(&self, g: &Morphism) -> Morphism {
        let maps = g.maps.iter().zip(&self.sections).map(|(gv, c)| gv.mul(c)).collect();
        let out = Morphism {
            source: self.obj.clone(),
            target: g.target.clone(),
            maps,
        };
        debug_assert!(self.epi.then(&out).maps == g.maps, "map does not vanish on the kernel");
        out
    }
}

fn check_bases(m: &Representation, bases: &[Matrix]) -> Result<()> {
    for (v, b) in bases.iter().enumerate() {
        if b.rows() != m.dims[v] || b.rank() != b.cols() {
            return Err(Error::InvalidRepresentation(format!(
                "bad subspace basis at vertex {}",
                v + 1
            )));
        }
    }
    Ok(())
}

/// Subrepresentation spanned by the given independent columns at each vertex.
pub fn subrepresentation(m: &Representation, bases: Vec<Matrix>) -> Result<Sub> {
    check_bases(m, &bases)?;
    let q = m.alg.quiver();
    let mut maps = Vec::new();
    for (ai, a) in q.arrows.iter().enumerate() {
        let img = m.maps[ai].mul(&bases[a.source - 1]);
        let x = bases[a.target - 1]
            .solve(&img)
            .ok_or_else(|| Error::InvalidRepresentation(format!("subspace not closed under {}", a.name)))?;
        maps.push(x);
    }
    let dims = bases.iter().map(|b| b.cols()).collect();
    let obj = Representation {
        alg: m.alg.clone(),
        dims,
        maps,
    };
    let mono = Morphism::new_unchecked(obj.clone(), m.clone(), bases);
    Ok(Sub { obj, mono })
}

/// Quotient of `m` by the subrepresentation spanned by `bases`.
pub fn quotient(m: &Representation, bases: &[Matrix]) -> Result<Quotient> {
    check_bases(m, bases)?;
    let p = m.p();
    let q = m.alg.quiver();
    let mut sections = Vec::new();
    let mut projections = Vec::new();
    for (v, b) in bases.iter().enumerate() {
        let c = b.complement_columns();
        let full = Matrix::hstack(p, m.dims[v], &[b, &c]);
        let inv = full.inverse().expect("basis plus complement is invertible");
        let rows: Vec<usize> = (b.cols()..m.dims[v]).collect();
        projections.push(inv.select_rows(&rows));
        sections.push(c);
    }
    let mut maps = Vec::new();
    for (ai, a) in q.arrows.iter().enumerate() {
        let src_img = m.maps[ai].mul(&bases[a.source - 1]);
        if !bases[a.target - 1].spans(&src_img) {
            return Err(Error::InvalidRepresentation(format!(
                "subspace not closed under {}",
                a.name
            )));
        }
        maps.push(projections[a.target - 1].mul(&m.maps[ai]).mul(&sections[a.source - 1]));
    }
    let dims = sections.iter().map(|c| c.cols()).collect();
    let obj = Representation {
        alg: m.alg.clone(),
        dims,
        maps,
    };
    let epi = Morphism::new_unchecked(m.clone(), obj.clone(), projections);
    Ok(Quotient { obj, epi, sections })
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub kernel: Sub,
    pub image: Sub,
    /// The corestriction `source -> image`.
    pub coimage: Morphism,
    pub cokernel: Quotient,
}

/// Kernel, image and cokernel of a morphism, computed vertexwise.
pub fn morphism_factorization(f: &Morphism) -> Factorization {
    let kernel_bases: Vec<Matrix> = f.maps.iter().map(|m| m.kernel()).collect();
    let image_bases: Vec<Matrix> = f.maps.iter().map(|m| m.column_space()).collect();
    let kernel = subrepresentation(&f.source, kernel_bases).expect("kernels are subrepresentations");
    let image = subrepresentation(&f.target, image_bases.clone()).expect("images are subrepresentations");
    let coimage = image.lift(f).expect("a map factors through its image");
    let cokernel = quotient(&f.target, &image_bases).expect("images are subrepresentations");
    Factorization {
        kernel,
        image,
        coimage,
        cokernel,
    }
}

/// Direct sum with its canonical inclusions and projections.
pub struct DirectSum {
    pub obj: Representation,
    pub inclusions: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

pub fn direct_sum_with_maps(alg: &Arc<BoundQuiverAlgebra>, parts: &[Representation]) -> Result<DirectSum> {
    for part in parts {
        if !same_algebra(alg, &part.alg) {
            return Err(Error::AlgebraMismatch);
        }
    }
    let p = alg.field_char();
    let q = alg.quiver();
    let n = q.vertex_count;
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
    let maps = (0..q.arrows.len())
        .map(|ai| {
            let blocks: Vec<&Matrix> = parts.iter().map(|m| &m.maps[ai]).collect();
            Matrix::block_diag(p, &blocks)
        })
        .collect();
    let obj = Representation {
        alg: alg.clone(),
        dims: dims.clone(),
        maps,
    };
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut offsets = vec![0usize; n];
    for part in parts {
        let mut inc = Vec::new();
        let mut proj = Vec::new();
        for v in 0..n {
            let mut i = Matrix::zeros(p, dims[v], part.dims[v]);
            i.paste(offsets[v], 0, &Matrix::identity(p, part.dims[v]));
            proj.push(i.transpose());
            inc.push(i);
            offsets[v] += part.dims[v];
        }
        inclusions.push(Morphism::new_unchecked(part.clone(), obj.clone(), inc));
        projections.push(Morphism::new_unchecked(obj.clone(), part.clone(), proj));
    }
    Ok(DirectSum {
        obj,
        inclusions,
        projections,
    })
}

pub fn direct_sum(alg: &Arc<BoundQuiverAlgebra>, parts: &[Representation]) -> Result<Representation> {
    Ok(direct_sum_with_maps(alg, parts)?.obj)
}

/// Direct sum of morphisms as a block-diagonal map.
pub fn morphism_sum(alg: &Arc<BoundQuiverAlgebra>, parts: &[Morphism]) -> Result<Morphism> {
    let srcs: Vec<Representation> = parts.iter().map(|f| f.source.clone()).collect();
    let tgts: Vec<Representation> = parts.iter().map(|f| f.target.clone()).collect();
    let s = direct_sum(alg, &srcs)?;
    let t = direct_sum(alg, &tgts)?;
    let p = alg.field_char();
    let maps = (0..alg.vertex_count())
        .map(|v| {
            let blocks: Vec<&Matrix> = parts.iter().map(|f| &f.maps[v]).collect();
            Matrix::block_diag(p, &blocks)
        })
        .collect();
    Ok(Morphism::new_unchecked(s, t, maps))
}

/// The map `X -> ⊕ Y_i` with the given components.
pub fn morphism_into_sum(x: &Representation, target: &Representation, components: &[Morphism]) -> Morphism {
    let p = x.p();
    let maps = (0..x.dims.len())
        .map(|v| {
            let blocks: Vec<&Matrix> = components.iter().map(|f| &f.maps[v]).collect();
            Matrix::vstack(p, x.dims[v], &blocks)
        })
        .collect();
    Morphism::new_unchecked(x.clone(), target.clone(), maps)
}

/// The map `⊕ X_i -> Y` with the given components.
pub fn morphism_from_sum(source: &Representation, y: &Representation, components: &[Morphism]) -> Morphism {
    let p = y.p();
    let maps = (0..y.dims.len())
        .map(|v| {
            let blocks: Vec<&Matrix> = components.iter().map(|f| &f.maps[v]).collect();
            Matrix::hstack(p, y.dims[v], &blocks)
        })
        .collect();
    Morphism::new_unchecked(source.clone(), y.clone(), maps)
}

/// Linear system whose null space is `Hom(M, N)`. Unknowns are the entries of
/// the vertex maps, vertex by vertex, each row-major.
fn intertwining_system(m: &Representation, n: &Representation) -> (Matrix, Vec<usize>) {
    let q = m.alg.quiver();
    let p = m.p();
    let mut offsets = Vec::new();
    let mut total = 0;
    for v in 0..q.vertex_count {
        offsets.push(total);
        total += n.dims[v] * m.dims[v];
    }
    let eq_count: usize = q
        .arrows
        .iter()
        .map(|a| n.dims[a.target - 1] * m.dims[a.source - 1])
        .sum();
    let mut sys = Matrix::zeros(p, eq_count, total);
    let mut row = 0;
    for (ai, a) in q.arrows.iter().enumerate() {
        let (u, w) = (a.source - 1, a.target - 1);
        let ma = &m.maps[ai];
        let na = &n.maps[ai];
        // (f_w M(a) - N(a) f_u)[i][j] = 0
        for i in 0..n.dims[w] {
            for j in 0..m.dims[u] {
                for k in 0..m.dims[w] {
                    let c = ma.get(k, j);
                    if c != 0 {
                        let col = offsets[w] + i * m.dims[w] + k;
                        sys.set(row, col, (sys.get(row, col) + c) % p);
                    }
                }
                for k in 0..n.dims[u] {
                    let c = na.get(i, k);
                    if c != 0 {
                        let col = offsets[u] + k * m.dims[u] + j;
                        sys.set(row, col, (sys.get(row, col) + p - c) % p);
                    }
                }
                row += 1;
            }
        }
    }
    (sys, offsets)
}

/// A basis of `Hom(M, N)`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>> {
    m.check_same_algebra(n)?;
    let (sys, offsets) = intertwining_system(m, n);
    let k = sys.kernel();
    let p = m.p();
    let mut out = Vec::with_capacity(k.cols());
    for c in 0..k.cols() {
        let maps = (0..m.dims.len())
            .map(|v| {
                let mut f = Matrix::zeros(p, n.dims[v], m.dims[v]);
                for i in 0..n.dims[v] {
                    for j in 0..m.dims[v] {
                        f.set(i, j, k.get(offsets[v] + i * m.dims[v] + j, c));
                    }
                }
                f
            })
            .collect();
        out.push(Morphism::new_unchecked(m.clone(), n.clone(), maps));
    }
    Ok(out)
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    m.check_same_algebra(n)?;
    let (sys, _) = intertwining_system(m, n);
    Ok(sys.cols() - sys.rank())
}

/// Every subrepresentation of `m`, each once, with its inclusion.
pub fn submodule_list(m: &Representation, bound: usize) -> Result<Vec<Sub>> {
    let total = m.total_dim();
    if total > bound {
        return Err(Error::BoundExceeded {
            what: "total dimension for submodule enumeration",
            value: total,
            limit: bound,
        });
    }
    let p = m.p();
    let options: Vec<Vec<Matrix>> = m.dims.iter().map(|&d| all_subspaces(p, d)).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Matrix> = Vec::new();
    enumerate_closed(m, &options, &mut chosen, &mut out);
    Ok(out)
}

fn enumerate_closed(m: &Representation, options: &[Vec<Matrix>], chosen: &mut Vec<Matrix>, out: &mut Vec<Sub>) {
    let v = chosen.len();
    if v == options.len() {
        out.push(subrepresentation(m, chosen.clone()).expect("closed subspaces form a subrepresentation"));
        return;
    }
    let q = m.alg.quiver();
    for s in &options[v] {
        chosen.push(s.clone());
        let vertex = v + 1;
        let ok = q.arrows.iter().enumerate().all(|(ai, a)| {
            let touches = a.source == vertex || a.target == vertex;
            if !touches || a.source > vertex || a.target > vertex {
                return true;
            }
            let img = m.maps[ai].mul(&chosen[a.source - 1]);
            chosen[a.target - 1].spans(&img)
        });
        if ok {
            enumerate_closed(m, options, chosen, out);
        }
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{parse_algebra_spec, projective_module};

    fn alg_a() -> Arc<BoundQuiverAlgebra> {
        Arc::new(parse_algebra_spec("vertices 3\narrow alpha 1 2\narrow beta 2 3\nrelation alpha beta\n").unwrap())
    }

    #[test]
    fn hom_dimensions_over_a() {
        let a = alg_a();
        let s1 = Representation::simple(&a, 1);
        let s2 = Representation::simple(&a, 2);
        let p1 = projective_module(&a, 1);
        assert_eq!(hom_basis(&s1, &s1).unwrap().len(), 1);
        assert_eq!(hom_basis(&p1, &s2).unwrap().len(), 0);
        assert_eq!(hom_basis(&s2, &p1).unwrap().len(), 1);
        assert_eq!(hom_dim(&p1, &s1).unwrap(), 1);
    }

    #[test]
    fn socle_inclusion_has_simple_cokernel() {
        let a = alg_a();
        let s2 = Representation::simple(&a, 2);
        let p1 = projective_module(&a, 1);
        let f = &hom_basis(&s2, &p1).unwrap()[0];
        assert!(f.is_mono());
        let fac = morphism_factorization(f);
        assert!(fac.kernel.obj.is_zero());
        assert_eq!(fac.cokernel.obj.dims(), &[1, 0, 0]);
        assert!(f.then(&fac.cokernel.epi).is_zero());
    }

    #[test]
    fn identity_and_zero_factorizations() {
        let a = alg_a();
        let s1 = Representation::simple(&a, 1);
        let fac = morphism_factorization(&Morphism::identity(&s1));
        assert!(fac.kernel.obj.is_zero() && fac.cokernel.obj.is_zero());
        assert_eq!(fac.image.obj.dims(), s1.dims());
        let p2 = projective_module(&a, 2);
        let fac = morphism_factorization(&Morphism::zero(&p2, &s1));
        assert_eq!(fac.kernel.obj.dims(), p2.dims());
        assert_eq!(fac.cokernel.obj.dims(), s1.dims());
    }

    #[test]
    fn submodules_of_small_modules() {
        let a = alg_a();
        assert_eq!(submodule_list(&Representation::simple(&a, 1), 8).unwrap().len(), 2);
        let subs = submodule_list(&projective_module(&a, 1), 8).unwrap();
        let dims: Vec<Vec<usize>> = subs.iter().map(|s| s.obj.dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![0, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]);
        let subs = submodule_list(&projective_module(&a, 2), 8).unwrap();
        assert_eq!(subs.len(), 3);
    }

    #[test]
    fn submodule_bound_is_enforced() {
        let a = alg_a();
        let big = direct_sum(&a, &vec![projective_module(&a, 1); 5]).unwrap();
        assert!(matches!(submodule_list(&big, 8), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn relations_are_checked() {
        let a = alg_a();
        let one = Matrix::identity(2, 1);
        assert!(Representation::new(a.clone(), vec![1, 1, 1], vec![one.clone(), one]).is_err());
    }

    #[test]
    fn empty_direct_sum_is_zero() {
        let a = alg_a();
        assert!(direct_sum(&a, &[]).unwrap().is_zero());
    }
}
