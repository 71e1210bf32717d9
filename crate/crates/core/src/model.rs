//! A complete list of indecomposables with its Hom-dimension matrix.
//!
//! Modules over a representation-finite algebra are determined up to
//! isomorphism by their Hom dimensions into every indecomposable, so the
//! matrix `H[i][j] = dim Hom(X_i, X_j)` is invertible and decomposition reduces
//! to solving `Hᵀ m = fingerprint`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::BoundQuiverAlgebra;
use crate::rep::{direct_sum, hom_basis, hom_dim, Morphism, Representation};

/// Multiplicities of indecomposable summands, keyed by model index.
pub type Multiset = BTreeMap<usize, usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    pub parts: Multiset,
}

impl DecompositionResult {
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn summand_count(&self) -> usize {
        self.parts.values().sum()
    }
}

pub struct ModuleCategoryModel {
    alg: Arc<BoundQuiverAlgebra>,
    indecs: Vec<Representation>,
    names: Vec<String>,
    hom: Vec<Vec<usize>>,
    hom_bases: Vec<Vec<Vec<Morphism>>>,
    inv_t: Vec<Vec<BigRational>>,
}

impl std::fmt::Debug for ModuleCategoryModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModuleCategoryModel")
            .field("names", &self.names)
            .finish()
    }
}

impl ModuleCategoryModel {
    /// Builds a model from a list asserted to contain every indecomposable
    /// exactly once up to isomorphism.
    pub fn from_indecomposables(
        alg: Arc<BoundQuiverAlgebra>,
        indecs: Vec<Representation>,
        names: Vec<String>,
    ) -> Result<Self> {
        assert_eq!(indecs.len(), names.len());
        for x in &indecs {
            if !Arc::ptr_eq(x.algebra(), &alg) && **x.algebra() != *alg {
                return Err(Error::AlgebraMismatch);
            }
        }
        let n = indecs.len();
        let mut hom_bases = Vec::with_capacity(n);
        for x in &indecs {
            let mut row = Vec::with_capacity(n);
            for y in &indecs {
                row.push(hom_basis(x, y)?);
            }
            hom_bases.push(row);
        }
        let hom: Vec<Vec<usize>> = hom_bases
            .iter()
            .map(|row| row.iter().map(|b| b.len()).collect())
            .collect();
        if let Some(i) = (0..n).find(|&i| hom[i][i] == 0) {
            return Err(Error::IncompleteModel(format!("{} has no identity", names[i])));
        }
        let ht: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_integer(BigInt::from(hom[j][i])))
                    .collect()
            })
            .collect();
        let inv_t = rational_inverse(ht).ok_or_else(|| {
            Error::IncompleteModel("Hom matrix is singular; the list has repeats or misses objects".into())
        })?;
        Ok(Self {
            alg,
            indecs,
            names,
            hom,
            hom_bases,
            inv_t,
        })
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.indecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indecs.is_empty()
    }

    pub fn indec(&self, i: usize) -> &Representation {
        &self.indecs[i]
    }

    pub fn indecs(&self) -> &[Representation] {
        &self.indecs
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn hom_matrix(&self) -> &[Vec<usize>] {
        &self.hom
    }

    /// Cached basis of `Hom(X_i, X_j)`.
    pub fn hom_basis_between(&self, i: usize, j: usize) -> &[Morphism] {
        &self.hom_bases[i][j]
    }

    pub fn fingerprint(&self, m: &Representation) -> Result<Vec<usize>> {
        self.indecs.iter().map(|x| hom_dim(m, x)).collect()
    }

    pub fn decompose(&self, m: &Representation) -> Result<DecompositionResult> {
        let fp = self.fingerprint(m)?;
        let mut parts = Multiset::new();
        for (i, row) in self.inv_t.iter().enumerate() {
            let mut acc = BigRational::zero();
            for (c, &f) in row.iter().zip(&fp) {
                if f != 0 {
                    acc += c * BigRational::from_integer(BigInt::from(f));
                }
            }
            if !acc.is_integer() || acc.is_negative() {
                return Err(Error::IncompleteModel(format!(
                    "object with dimension vector {:?} has multiplicity {} at {}",
                    m.dims(),
                    acc,
                    self.names[i]
                )));
            }
            let k = acc.to_integer().to_usize().expect("multiplicity fits in usize");
            if k > 0 {
                parts.insert(i, k);
            }
        }
        let mut dims = vec![0usize; m.dims().len()];
        for (&i, &k) in &parts {
            for (d, x) in dims.iter_mut().zip(self.indecs[i].dims()) {
                *d += k * x;
            }
        }
        if dims != m.dims() {
            return Err(Error::IncompleteModel(format!(
                "object with dimension vector {:?} decomposes to dimension vector {:?}",
                m.dims(),
                dims
            )));
        }
        Ok(DecompositionResult { parts })
    }

    pub fn is_isomorphic(&self, m: &Representation, n: &Representation) -> Result<bool> {
        Ok(m.dims() == n.dims() && self.fingerprint(m)? == self.fingerprint(n)?)
    }

    /// Index of an indecomposable object, if it is one.
    pub fn identify(&self, m: &Representation) -> Result<Option<usize>> {
        let d = self.decompose(m)?;
        Ok(match d.parts.iter().next() {
            Some((&i, &1)) if d.parts.len() == 1 => Some(i),
            _ => None,
        })
    }

    pub fn realize(&self, parts: &Multiset) -> Representation {
        let list: Vec<Representation> = parts
            .iter()
            .flat_map(|(&i, &k)| std::iter::repeat_n(self.indecs[i].clone(), k))
            .collect();
        direct_sum(&self.alg, &list).expect("model objects share the algebra")
    }

    /// Human-readable name of a multiset, e.g. `8\1+4\5` or `0`.
    pub fn describe(&self, parts: &Multiset) -> String {
        if parts.is_empty() {
            return "0".into();
        }
        parts
            .iter()
            .map(|(&i, &k)| {
                if k == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], k)
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn describe_object(&self, m: &Representation) -> Result<String> {
        Ok(self.describe(&self.decompose(m)?.parts))
    }

    /// Parses `name+name^2+...` into a multiset; `0` is the zero object.
    pub fn parse_object(&self, text: &str) -> Result<Multiset> {
        let mut parts = Multiset::new();
        let text = text.trim();
        if text == "0" {
            return Ok(parts);
        }
        for term in text.split('+') {
            let term = term.trim();
            let (name, k) = match term.rsplit_once('^') {
                Some((n, k)) => (n, k.parse::<usize>().map_err(|_| Error::UnknownName(term.into()))?),
                None => (term, 1),
            };
            let i = self.index_of(name).ok_or_else(|| Error::UnknownName(name.into()))?;
            *parts.entry(i).or_insert(0) += k;
        }
        Ok(parts)
    }
}

fn rational_inverse(mut a: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, piv);
        inv.swap(c, piv);
        let f = a[c][c].clone();
        for j in 0..n {
            a[c][j] = &a[c][j] / &f;
            inv[c][j] = &inv[c][j] / &f;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let g = a[r][c].clone();
                for j in 0..n {
                    let t = &g * &a[c][j];
                    a[r][j] = &a[r][j] - t;
                    let t = &g * &inv[c][j];
                    inv[r][j] = &inv[r][j] - t;
                }
            }
        }
    }
    Some(inv)
}

/// Checks the quiver is a single vertex, a linearly oriented line, or a single
/// oriented cycle.
fn check_nakayama_shape(alg: &BoundQuiverAlgebra) -> Result<()> {
    let q = alg.quiver();
    let n = q.vertex_count;
    for v in 1..=n {
        if q.arrows_from(v).count() > 1 || q.arrows_into(v).count() > 1 {
            return Err(Error::UnsupportedShape(format!(
                "vertex {v} has more than one arrow in or out"
            )));
        }
    }
    // connectivity along the underlying graph
    let mut seen = vec![false; n + 1];
    let mut stack = vec![1];
    seen[1] = true;
    while let Some(v) = stack.pop() {
        for a in &q.arrows {
            for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    if seen[1..].iter().any(|s| !s) {
        return Err(Error::UnsupportedShape("quiver is disconnected".into()));
    }
    Ok(())
}

/// The uniserial module supported along a nonzero path.
pub fn uniserial(alg: &Arc<BoundQuiverAlgebra>, path: &crate::quiver::Path) -> Representation {
    let q = alg.quiver();
    let p = alg.field_char();
    let verts = path.vertices(q);
    let mut dims = vec![0usize; q.vertex_count];
    // position of each path basis element within its vertex space
    let mut slot = Vec::with_capacity(verts.len());
    for &v in &verts {
        slot.push(dims[v - 1]);
        dims[v - 1] += 1;
    }
    let mut maps: Vec<Matrix> = q
        .arrows
        .iter()
        .map(|a| Matrix::zeros(p, dims[a.target - 1], dims[a.source - 1]))
        .collect();
    for (k, &a) in path.arrows.iter().enumerate() {
        maps[a].set(slot[k + 1], slot[k], 1);
    }
    Representation::new(alg.clone(), dims, maps).expect("uniserial along a nonzero path")
}

/// Name of the uniserial along a path: its vertices joined by `\`.
pub fn uniserial_name(alg: &BoundQuiverAlgebra, path: &crate::quiver::Path) -> String {
    path.vertices(alg.quiver())
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("\\")
}

/// Every indecomposable of a Nakayama algebra with a line or cycle quiver:
/// one uniserial per nonzero path, in path-basis order.
pub fn nakayama_model(alg: &Arc<BoundQuiverAlgebra>) -> Result<ModuleCategoryModel> {
    check_nakayama_shape(alg)?;
    let paths = alg.path_basis().paths();
    let indecs = paths.iter().map(|p| uniserial(alg, p)).collect();
    let names = paths.iter().map(|p| uniserial_name(alg, p)).collect();
    ModuleCategoryModel::from_indecomposables(alg.clone(), indecs, names)
}
