//! Free cyclic group actions on bound quivers, orbit algebras, twists and the
//! push-down functor, with checks of the covering theorems.

use std::sync::Arc;

use num_rational::Rational64;

use crate::chain::{Class, StepChain};
use crate::error::{Error, Result};
use crate::highertors::{enumerate_n_torsion_classes, is_n_torsion_class_criterion};
use crate::hn_higher::{n_hn_filtration, ChainOfNTorsionClasses};
use crate::matrix::Matrix;
use crate::model::Multiset;
use crate::quiver::{Arrow, BoundQuiverAlgebra, Quiver};
use crate::rep::{hom_dim, morphism_factorization, Morphism, Representation};
use crate::torsion::Ambient;

/// A cyclic group acting through a generator `g`. `vertex_perm[v - 1]` is
/// `g(v)` and `arrow_perm[a]` is the index of `g(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub name: String,
    pub order: usize,
    pub vertex_perm: Vec<usize>,
    pub arrow_perm: Vec<usize>,
}

impl GroupAction {
    pub fn identity(alg: &BoundQuiverAlgebra) -> Self {
        Self {
            name: "identity".into(),
            order: 1,
            vertex_perm: (1..=alg.vertex_count()).collect(),
            arrow_perm: (0..alg.arrow_count()).collect(),
        }
    }

    /// Rotation of a cycle with `n` vertices and arrows `i -> i+1` by `k` steps.
    pub fn rotation(alg: &BoundQuiverAlgebra, k: usize) -> Result<Self> {
        let n = alg.vertex_count();
        if k == 0 || !n.is_multiple_of(k) {
            return Err(Error::InvalidAction(format!("rotation by {k} does not divide {n}")));
        }
        let q = alg.quiver();
        let vertex_perm: Vec<usize> = (1..=n).map(|v| (v - 1 + k) % n + 1).collect();
        let mut arrow_perm = Vec::with_capacity(q.arrows.len());
        for a in &q.arrows {
            let (s, t) = (vertex_perm[a.source - 1], vertex_perm[a.target - 1]);
            let b = q
                .arrows
                .iter()
                .position(|b| b.source == s && b.target == t)
                .ok_or_else(|| Error::InvalidAction(format!("no arrow {s} -> {t}")))?;
            arrow_perm.push(b);
        }
        Ok(Self {
            name: format!("shift-{k}"),
            order: n / k,
            vertex_perm,
            arrow_perm,
        })
    }

    /// `g^k(v)` for a 1-based vertex and any integer `k`.
    pub fn vertex_power(&self, v: usize, k: i64) -> usize {
        let mut x = v;
        for _ in 0..k.rem_euclid(self.order as i64) {
            x = self.vertex_perm[x - 1];
        }
        x
    }

    pub fn arrow_power(&self, a: usize, k: i64) -> usize {
        let mut x = a;
        for _ in 0..k.rem_euclid(self.order as i64) {
            x = self.arrow_perm[x];
        }
        x
    }
}

fn is_permutation(v: &[usize], offset: usize) -> bool {
    let mut seen = vec![false; v.len()];
    for &x in v {
        if x < offset || x - offset >= v.len() || seen[x - offset] {
            return false;
        }
        seen[x - offset] = true;
    }
    true
}

/// Checks the permutations are a free action of the stated order on the bound
/// quiver.
pub fn validate_action(alg: &BoundQuiverAlgebra, action: &GroupAction) -> Result<()> {
    let q = alg.quiver();
    if action.order == 0 {
        return Err(Error::InvalidAction("order must be positive".into()));
    }
    if action.vertex_perm.len() != q.vertex_count || !is_permutation(&action.vertex_perm, 1) {
        return Err(Error::InvalidAction("vertex map is not a permutation".into()));
    }
    if action.arrow_perm.len() != q.arrows.len() || !is_permutation(&action.arrow_perm, 0) {
        return Err(Error::InvalidAction("arrow map is not a permutation".into()));
    }
    for (i, a) in q.arrows.iter().enumerate() {
        let b = &q.arrows[action.arrow_perm[i]];
        if b.source != action.vertex_perm[a.source - 1] || b.target != action.vertex_perm[a.target - 1] {
            return Err(Error::InvalidAction(format!(
                "{} is not sent to an arrow between the images",
                a.name
            )));
        }
    }
    for v in 1..=q.vertex_count {
        if action.vertex_power(v, action.order as i64) != v {
            return Err(Error::InvalidAction(format!("g^{} moves vertex {v}", action.order)));
        }
        for k in 1..action.order {
            if action.vertex_power(v, k as i64) == v {
                return Err(Error::InvalidAction(format!("g^{k} fixes vertex {v}")));
            }
        }
    }
    for a in 0..q.arrows.len() {
        if action.arrow_power(a, action.order as i64) != a {
            return Err(Error::InvalidAction(format!(
                "g^{} moves arrow {}",
                action.order, q.arrows[a].name
            )));
        }
        for k in 1..action.order {
            if action.arrow_power(a, k as i64) == a {
                return Err(Error::InvalidAction(format!("g^{k} fixes arrow {}", q.arrows[a].name)));
            }
        }
    }
    for r in alg.relations() {
        let image: Vec<usize> = r.arrows.iter().map(|&a| action.arrow_perm[a]).collect();
        if !alg.relations().iter().any(|s| s.arrows == image) {
            return Err(Error::InvalidAction(
                "relations are not permuted among themselves".into(),
            ));
        }
    }
    Ok(())
}

/// `M ↦ M ∘ g^{-k}`: the space at `v` is the old space at `g^{-k}(v)`.
pub fn g_twist(m: &Representation, action: &GroupAction, k: i64) -> Result<Representation> {
    let alg = m.algebra();
    let dims: Vec<usize> = (1..=alg.vertex_count())
        .map(|v| m.dim(action.vertex_power(v, -k)))
        .collect();
    let maps: Vec<Matrix> = (0..alg.arrow_count())
        .map(|a| m.map(action.arrow_power(a, -k)).clone())
        .collect();
    Representation::new(alg.clone(), dims, maps)
}

pub fn g_twist_morphism(f: &Morphism, action: &GroupAction, k: i64) -> Result<Morphism> {
    let n = f.source.algebra().vertex_count();
    let maps = (1..=n)
        .map(|v| f.vertex_map(action.vertex_power(v, -k)).clone())
        .collect();
    Morphism::new(g_twist(&f.source, action, k)?, g_twist(&f.target, action, k)?, maps)
}

/// Index of the twist of each model indecomposable by `g`.
pub fn twist_permutation(amb: &Ambient, action: &GroupAction) -> Result<Vec<usize>> {
    let model = amb.model();
    let mut out = Vec::with_capacity(model.len());
    for x in model.indecs() {
        let t = g_twist(x, action, 1)?;
        out.push(
            model
                .identify(&t)?
                .ok_or_else(|| Error::Consistency("a twist is not indecomposable".into()))?,
        );
    }
    if !is_permutation(&out, 0) {
        return Err(Error::Consistency(
            "twisting does not permute the indecomposables".into(),
        ));
    }
    Ok(out)
}

/// `g X ≇ X` for every indecomposable and every `g ≠ 1`.
pub fn check_admissible(amb: &Ambient, action: &GroupAction) -> Result<()> {
    let perm = twist_permutation(amb, action)?;
    for i in 0..perm.len() {
        let mut j = i;
        for k in 1..action.order {
            j = perm[j];
            if j == i {
                return Err(Error::InvalidAction(format!(
                    "g^{k} fixes the indecomposable {}",
                    amb.model().name(i)
                )));
            }
        }
    }
    Ok(())
}

pub fn twist_class(amb: &Ambient, action: &GroupAction, c: &Class) -> Result<Class> {
    let perm = twist_permutation(amb, action)?;
    Ok(c.iter().map(|&i| perm[i]).collect())
}

pub fn is_equivariant(amb: &Ambient, action: &GroupAction, c: &Class) -> Result<bool> {
    Ok(twist_class(amb, action, c)? == *c)
}

/// The orbit algebra with the projections onto vertex and arrow orbits.
/// Orbits are numbered in order of their least member and named after it.
#[derive(Clone, Debug)]
pub struct OrbitAlgebraMap {
    pub algebra: Arc<BoundQuiverAlgebra>,
    pub action: GroupAction,
    /// 1-based orbit of each 1-based vertex, stored at `v - 1`.
    pub vertex_orbit: Vec<usize>,
    pub arrow_orbit: Vec<usize>,
    /// Least vertex of each orbit.
    pub vertex_reps: Vec<usize>,
    /// Least arrow index of each orbit.
    pub arrow_reps: Vec<usize>,
}

pub fn orbit_algebra(alg: &BoundQuiverAlgebra, action: &GroupAction) -> Result<OrbitAlgebraMap> {
    validate_action(alg, action)?;
    let q = alg.quiver();
    let mut vertex_orbit = vec![0usize; q.vertex_count];
    let mut vertex_reps = Vec::new();
    for v in 1..=q.vertex_count {
        if vertex_orbit[v - 1] == 0 {
            vertex_reps.push(v);
            for k in 0..action.order {
                vertex_orbit[action.vertex_power(v, k as i64) - 1] = vertex_reps.len();
            }
        }
    }
    let mut arrow_orbit = vec![usize::MAX; q.arrows.len()];
    let mut arrow_reps = Vec::new();
    for a in 0..q.arrows.len() {
        if arrow_orbit[a] == usize::MAX {
            arrow_reps.push(a);
            for k in 0..action.order {
                arrow_orbit[action.arrow_power(a, k as i64)] = arrow_reps.len() - 1;
            }
        }
    }
    let arrows: Vec<Arrow> = arrow_reps
        .iter()
        .map(|&a| Arrow {
            name: q.arrows[a].name.clone(),
            source: vertex_orbit[q.arrows[a].source - 1],
            target: vertex_orbit[q.arrows[a].target - 1],
        })
        .collect();
    let quiver = Quiver::new(vertex_reps.len(), arrows)?;
    let rels: Vec<Vec<String>> = alg
        .relations()
        .iter()
        .map(|r| {
            r.arrows
                .iter()
                .map(|&a| q.arrows[arrow_reps[arrow_orbit[a]]].name.clone())
                .collect()
        })
        .collect();
    let name = format!("{}/{}", alg.name(), action.name);
    let algebra = Arc::new(BoundQuiverAlgebra::new(&name, quiver, &rels, alg.field_char())?);
    Ok(OrbitAlgebraMap {
        algebra,
        action: action.clone(),
        vertex_orbit,
        arrow_orbit,
        vertex_reps,
        arrow_reps,
    })
}

/// A vertex bijection and arrow bijection carrying one bound quiver onto the
/// other, found by exhaustive search.
pub fn bound_quiver_isomorphism(x: &BoundQuiverAlgebra, y: &BoundQuiverAlgebra) -> Option<(Vec<usize>, Vec<usize>)> {
    let (qx, qy) = (x.quiver(), y.quiver());
    if qx.vertex_count != qy.vertex_count
        || qx.arrows.len() != qy.arrows.len()
        || x.relations().len() != y.relations().len()
    {
        return None;
    }
    let n = qx.vertex_count;
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        if let Some(arrows) = match_arrows(x, y, &perm) {
            return Some((perm, arrows));
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn match_arrows(x: &BoundQuiverAlgebra, y: &BoundQuiverAlgebra, vperm: &[usize]) -> Option<Vec<usize>> {
    fn go(
        x: &BoundQuiverAlgebra,
        y: &BoundQuiverAlgebra,
        vperm: &[usize],
        assigned: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let (qx, qy) = (x.quiver(), y.quiver());
        let a = assigned.len();
        if a == qx.arrows.len() {
            let mapped: Vec<Vec<usize>> = x
                .relations()
                .iter()
                .map(|r| r.arrows.iter().map(|&b| assigned[b]).collect())
                .collect();
            return mapped.iter().all(|m| y.relations().iter().any(|s| s.arrows == *m));
        }
        let (s, t) = (vperm[qx.arrows[a].source - 1], vperm[qx.arrows[a].target - 1]);
        for (b, arr) in qy.arrows.iter().enumerate() {
            if !used[b] && arr.source == s && arr.target == t {
                used[b] = true;
                assigned.push(b);
                if go(x, y, vperm, assigned, used) {
                    return true;
                }
                assigned.pop();
                used[b] = false;
            }
        }
        false
    }
    let mut assigned = Vec::new();
    let mut used = vec![false; y.quiver().arrows.len()];
    go(x, y, vperm, &mut assigned, &mut used).then_some(assigned)
}

impl OrbitAlgebraMap {
    /// Position of vertex `v` in its orbit: the `j` with `g^j(rep) = v`.
    fn slot(&self, v: usize) -> usize {
        let rep = self.vertex_reps[self.vertex_orbit[v - 1] - 1];
        (0..self.action.order)
            .find(|&j| self.action.vertex_power(rep, j as i64) == v)
            .unwrap()
    }

    /// Offsets of the summands `M(g^j rep)` inside the space at an orbit.
    fn offsets(&self, m: &Representation, orbit: usize) -> Vec<usize> {
        let rep = self.vertex_reps[orbit - 1];
        let mut out = Vec::with_capacity(self.action.order + 1);
        let mut acc = 0;
        for j in 0..self.action.order {
            out.push(acc);
            acc += m.dim(self.action.vertex_power(rep, j as i64));
        }
        out.push(acc);
        out
    }

    /// The space at `[v]` is `⊕_j M(g^j v)`, and the map of an arrow orbit
    /// collects the blocks `M(g^j a)`.
    pub fn push_down(&self, m: &Representation) -> Result<Representation> {
        let p = m.p();
        let q = m.algebra().quiver();
        let offs: Vec<Vec<usize>> = (1..=self.vertex_reps.len()).map(|o| self.offsets(m, o)).collect();
        let dims: Vec<usize> = offs.iter().map(|o| *o.last().unwrap()).collect();
        let mut maps = Vec::with_capacity(self.arrow_reps.len());
        for &a in &self.arrow_reps {
            let (u, w) = (
                self.vertex_orbit[q.arrows[a].source - 1],
                self.vertex_orbit[q.arrows[a].target - 1],
            );
            let mut mat = Matrix::zeros(p, dims[w - 1], dims[u - 1]);
            for j in 0..self.action.order {
                let b = self.action.arrow_power(a, j as i64);
                let (s, t) = (q.arrows[b].source, q.arrows[b].target);
                mat.paste(offs[w - 1][self.slot(t)], offs[u - 1][self.slot(s)], m.map(b));
            }
            maps.push(mat);
        }
        Representation::new(self.algebra.clone(), dims, maps)
    }

    pub fn push_down_morphism(&self, f: &Morphism) -> Result<Morphism> {
        let p = f.source.p();
        let (src, tgt) = (self.push_down(&f.source)?, self.push_down(&f.target)?);
        let maps = self
            .vertex_reps
            .iter()
            .map(|&rep| {
                let blocks: Vec<&Matrix> = (0..self.action.order)
                    .map(|j| f.vertex_map(self.action.vertex_power(rep, j as i64)))
                    .collect();
                Matrix::block_diag(p, &blocks)
            })
            .collect();
        Morphism::new(src, tgt, maps)
    }

    /// Indecomposables downstairs occurring in push-downs of the members.
    pub fn push_down_subcategory(&self, up: &Ambient, down: &Ambient, u: &Class) -> Result<Class> {
        if !is_equivariant(up, &self.action, u)? {
            return Err(Error::Precondition(format!("{} is not equivariant", up.describe(u))));
        }
        self.push_down_members(up, down, u)
    }

    fn push_down_members(&self, up: &Ambient, down: &Ambient, u: &Class) -> Result<Class> {
        let mut out = Class::new();
        for &i in u {
            out.extend(down.decompose(&self.push_down(up.model().indec(i))?)?.keys().copied());
        }
        Ok(out)
    }
}

/// Whether `0 -> X -f-> Y -g-> Z -> 0` is exact.
pub fn is_short_exact(f: &Morphism, g: &Morphism) -> bool {
    if !f.is_mono() || !g.is_epi() || !f.then(g).is_zero() {
        return false;
    }
    f.source.total_dim() + g.target.total_dim() == f.target.total_dim()
}

/// Pushes a short exact sequence down and checks it stays exact.
pub fn push_down_preserves(map: &OrbitAlgebraMap, f: &Morphism, g: &Morphism) -> Result<bool> {
    if !is_short_exact(f, g) {
        return Err(Error::Precondition("the sequence upstairs is not short exact".into()));
    }
    let (pf, pg) = (map.push_down_morphism(f)?, map.push_down_morphism(g)?);
    let fac = morphism_factorization(&pg);
    Ok(is_short_exact(&pf, &pg) && fac.kernel.obj.total_dim() == pf.source.total_dim())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecoveringReport {
    pub pushed: usize,
    /// `dim Hom(g^k X, Y)` for `k = 0..order`.
    pub terms: Vec<usize>,
    pub ok: bool,
}

pub fn verify_precovering_dims(
    map: &OrbitAlgebraMap,
    x: &Representation,
    y: &Representation,
) -> Result<PrecoveringReport> {
    let pushed = hom_dim(&map.push_down(x)?, &map.push_down(y)?)?;
    let terms = (0..map.action.order)
        .map(|k| hom_dim(&g_twist(x, &map.action, k as i64)?, y))
        .collect::<Result<Vec<_>>>()?;
    let ok = pushed == terms.iter().sum::<usize>();
    Ok(PrecoveringReport { pushed, terms, ok })
}

/// One equivariant n-torsion class upstairs and its image.
#[derive(Clone, Debug)]
pub struct CoveringRow {
    pub upstairs: Class,
    pub image: Class,
    /// The image passes the n-torsion criterion downstairs.
    pub image_is_n_torsion: bool,
    /// `T(P U) = P(T U)`, when `T U` is equivariant.
    pub square_commutes: Option<bool>,
    /// `P(U^M)` is the torsion object of `P M` for every `M` in ℳ.
    pub transport: bool,
}

impl CoveringRow {
    pub fn ok(&self) -> bool {
        self.image_is_n_torsion && self.square_commutes != Some(false) && self.transport
    }
}

/// The filtration of an object upstairs, pushed down, next to the filtration
/// of its push-down.
#[derive(Clone, Debug)]
pub struct HnTransport {
    pub object: Multiset,
    pub labels: Vec<Rational64>,
    pub pushed_steps: Vec<Multiset>,
    pub downstairs_labels: Vec<Rational64>,
    pub downstairs_steps: Vec<Multiset>,
    pub agree: bool,
    /// Push-downs of indecomposables that come out with multiplicity.
    pub notes: Vec<String>,
}

pub struct Covering<'a> {
    pub up: &'a Ambient,
    pub down: &'a Ambient,
    pub map: &'a OrbitAlgebraMap,
    pub mcat: Class,
    pub n: usize,
}

impl<'a> Covering<'a> {
    pub fn new(up: &'a Ambient, down: &'a Ambient, map: &'a OrbitAlgebraMap, mcat: &Class, n: usize) -> Result<Self> {
        if !is_equivariant(up, &map.action, mcat)? {
            return Err(Error::Precondition("ℳ is not equivariant".into()));
        }
        check_admissible(up, &map.action)?;
        Ok(Self {
            up,
            down,
            map,
            mcat: mcat.clone(),
            n,
        })
    }

    pub fn mcat_down(&self) -> Result<Class> {
        self.map.push_down_subcategory(self.up, self.down, &self.mcat)
    }

    pub fn equivariant_n_torsion_classes(&self) -> Result<Vec<Class>> {
        let mut out = Vec::new();
        for u in enumerate_n_torsion_classes(self.up, &self.mcat, self.n)? {
            if is_equivariant(self.up, &self.map.action, &u)? {
                out.push(u);
            }
        }
        Ok(out)
    }

    pub fn row(&self, u: &Class) -> Result<CoveringRow> {
        let (up, down) = (self.up, self.down);
        let mdown = self.mcat_down()?;
        let image = self.map.push_down_subcategory(up, down, u)?;
        let image_is_n_torsion = is_n_torsion_class_criterion(down, &image, &mdown, self.n)?.is_n_torsion;
        let t_up = up.torsion_class_generated(u);
        let t_down = down.torsion_class_generated(&image);
        let square_commutes = if is_equivariant(up, &self.map.action, &t_up)? {
            Some(self.map.push_down_members(up, down, &t_up)? == t_down)
        } else {
            None
        };
        let mut transport = true;
        for &m in &self.mcat {
            let x = up.model().indec(m);
            let tm = up.torsion_subobject(&t_up, x)?.tm.obj;
            let pushed = down.decompose(&self.map.push_down(&tm)?)?;
            let below = down.decompose(&down.torsion_subobject(&t_down, &self.map.push_down(x)?)?.tm.obj)?;
            if pushed != below {
                transport = false;
            }
        }
        Ok(CoveringRow {
            upstairs: u.clone(),
            image,
            image_is_n_torsion,
            square_commutes,
            transport,
        })
    }

    pub fn push_chain(&self, delta: &ChainOfNTorsionClasses) -> Result<ChainOfNTorsionClasses> {
        let chain: StepChain = delta
            .chain
            .map(|v| self.map.push_down_subcategory(self.up, self.down, v))?;
        ChainOfNTorsionClasses::new(self.down, chain, &self.mcat_down()?, self.n)
    }

    pub fn hn_transport(&self, m: &Representation, delta: &ChainOfNTorsionClasses) -> Result<HnTransport> {
        let (up, down) = (self.up, self.down);
        let pushed_chain = self.push_chain(delta)?;
        let f = n_hn_filtration(up, m, delta)?;
        let pm = self.map.push_down(m)?;
        let g = n_hn_filtration(down, &pm, &pushed_chain)?;
        let pushed_steps = f
            .steps
            .iter()
            .map(|s| down.decompose(&self.map.push_down(s)?))
            .collect::<Result<Vec<_>>>()?;
        let downstairs_steps = g.steps.iter().map(|s| down.decompose(s)).collect::<Result<Vec<_>>>()?;
        let agree = f.labels == g.labels && pushed_steps == downstairs_steps;
        let object = up.decompose(m)?;
        let mut notes = Vec::new();
        for &i in object.keys() {
            let img = down.decompose(&self.map.push_down(up.model().indec(i))?)?;
            if img.values().any(|&c| c > 1) {
                notes.push(format!(
                    "{} pushes down to {}",
                    up.model().name(i),
                    down.model().describe(&img)
                ));
            }
        }
        let total = down.decompose(&pm)?;
        if total.values().any(|&c| c > 1) {
            notes.push(format!(
                "{} pushes down to {}, with multiplicity",
                up.model().describe(&object),
                down.model().describe(&total)
            ));
        }
        Ok(HnTransport {
            object,
            labels: f.labels,
            pushed_steps,
            downstairs_labels: g.labels,
            downstairs_steps,
            agree,
            notes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::nakayama_model;
    use crate::quiver::parse_algebra_spec;

    fn cycle(n: usize, prefix: &str) -> Arc<BoundQuiverAlgebra> {
        let mut s = format!("vertices {n}\n");
        for i in 1..=n {
            let j = i % n + 1;
            s += &format!("arrow {prefix}{i} {i} {j}\nrelation {prefix}{i} {prefix}{j}\n");
        }
        Arc::new(parse_algebra_spec(&s).unwrap())
    }

    fn ambient(alg: &Arc<BoundQuiverAlgebra>) -> Ambient {
        Ambient::new(Arc::new(nakayama_model(alg).unwrap()))
    }

    #[test]
    fn orbit_algebras() {
        let b = cycle(8, "a");
        let g = GroupAction::rotation(&b, 4).unwrap();
        validate_action(&b, &g).unwrap();
        let map = orbit_algebra(&b, &g).unwrap();
        assert!(bound_quiver_isomorphism(&map.algebra, &cycle(4, "c")).is_some());
        let map4 = orbit_algebra(&b, &GroupAction::rotation(&b, 2).unwrap()).unwrap();
        assert!(bound_quiver_isomorphism(&map4.algebra, &cycle(2, "d")).is_some());
        let id = orbit_algebra(&b, &GroupAction::identity(&b)).unwrap();
        assert!(bound_quiver_isomorphism(&id.algebra, &b).is_some());
        assert!(bound_quiver_isomorphism(&map.algebra, &cycle(5, "c")).is_none());
    }

    #[test]
    fn invalid_actions() {
        let a =
            Arc::new(parse_algebra_spec("vertices 3\narrow alpha 1 2\narrow beta 2 3\nrelation alpha beta\n").unwrap());
        let swap = GroupAction {
            name: "swap".into(),
            order: 2,
            vertex_perm: vec![3, 2, 1],
            arrow_perm: vec![1, 0],
        };
        assert!(validate_action(&a, &swap).is_err());
        let b = cycle(8, "a");
        let mut g = GroupAction::rotation(&b, 4).unwrap();
        g.order = 4;
        assert!(validate_action(&b, &g).is_err());
    }

    #[test]
    fn twists_and_push_downs() {
        let b = cycle(8, "a");
        let up = ambient(&b);
        let g = GroupAction::rotation(&b, 4).unwrap();
        let map = orbit_algebra(&b, &g).unwrap();
        let down = ambient(&map.algebra);
        let obj = |a: &Ambient, n: &str| a.model().indec(a.model().index_of(n).unwrap()).clone();
        assert_eq!(g_twist(&obj(&up, "1"), &g, 1).unwrap(), obj(&up, "5"));
        assert_eq!(
            up.model()
                .describe_object(&g_twist(&obj(&up, "8\\1"), &g, 1).unwrap())
                .unwrap(),
            "4\\5"
        );
        assert_eq!(g_twist(&obj(&up, "8\\1"), &g, 2).unwrap(), obj(&up, "8\\1"));
        check_admissible(&up, &g).unwrap();
        let p = map.push_down(&obj(&up, "8\\1")).unwrap();
        assert_eq!(down.model().describe_object(&p).unwrap(), "4\\1");
        let p = map.push_down(&obj(&up, "1")).unwrap();
        assert_eq!(down.model().describe_object(&p).unwrap(), "1");
        let r = verify_precovering_dims(&map, &obj(&up, "8\\1"), &obj(&up, "1")).unwrap();
        assert!(r.ok && r.pushed == 0);
        let r = verify_precovering_dims(&map, &obj(&up, "1"), &obj(&up, "8\\1")).unwrap();
        assert!(r.ok && r.pushed == 1);
        assert_eq!(r.terms, [1, 0]);
    }

    #[test]
    fn morphisms_push_down() {
        let b = cycle(8, "a");
        let up = ambient(&b);
        let map = orbit_algebra(&b, &GroupAction::rotation(&b, 4).unwrap()).unwrap();
        let m = up.model().indec(up.model().index_of("8\\1").unwrap()).clone();
        let sub = up.trace(&up.class_from_names(&["1"]).unwrap(), &m).unwrap();
        let q = morphism_factorization(&sub.mono).cokernel;
        assert!(push_down_preserves(&map, &sub.mono, &q.epi).unwrap());
    }
}
