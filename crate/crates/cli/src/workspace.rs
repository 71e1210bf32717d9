//! Loaded algebra, model and named objects.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use ntors::covering::{validate_action, GroupAction};
use ntors::formats::{
    parse_action, parse_chain, parse_module, parse_subcategory, resolve_names, BlockKind, ChainSpec, Document,
};
use ntors::model::Multiset;
use ntors::torsion::Config;
use ntors::{nakayama_model, Ambient, BoundQuiverAlgebra, Class, Error, Representation, Result};

pub struct Workspace {
    pub alg: Arc<BoundQuiverAlgebra>,
    pub amb: Ambient,
    pub modules: BTreeMap<String, Representation>,
    pub subcategories: BTreeMap<String, Class>,
    pub chains: BTreeMap<String, ChainSpec>,
    pub actions: BTreeMap<String, GroupAction>,
}

fn read(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    Document::parse(&text)
}

fn insert_unique<T>(map: &mut BTreeMap<String, T>, name: String, value: T, what: &str) -> Result<()> {
    if map.contains_key(&name) {
        return Err(Error::Precondition(format!("{what} {name} defined twice")));
    }
    map.insert(name, value);
    Ok(())
}

impl Workspace {
    pub fn load(algebra: &Path, extra: &[impl AsRef<Path>], field: Option<u32>, config: Config) -> Result<Self> {
        let main = read(algebra)?;
        let mut alg = main
            .algebra()?
            .ok_or_else(|| Error::Precondition(format!("{} defines no algebra", algebra.display())))?;
        if let Some(p) = field {
            alg = alg.with_field(p)?;
        }
        let alg = Arc::new(alg);
        let amb = Ambient::with_config(Arc::new(nakayama_model(&alg)?), config);
        let mut ws = Self {
            alg,
            amb,
            modules: BTreeMap::new(),
            subcategories: BTreeMap::new(),
            chains: BTreeMap::new(),
            actions: BTreeMap::new(),
        };
        ws.absorb(&main)?;
        for path in extra {
            let doc = read(path.as_ref())?;
            if doc.of_kind(BlockKind::Algebra).next().is_some() {
                return Err(Error::Precondition(format!(
                    "{} defines a second algebra",
                    path.as_ref().display()
                )));
            }
            ws.absorb(&doc)?;
        }
        Ok(ws)
    }

    fn absorb(&mut self, doc: &Document) -> Result<()> {
        for b in &doc.blocks {
            match b.kind {
                BlockKind::Algebra => {}
                BlockKind::Module => {
                    let (name, m) = parse_module(b, &self.alg)?;
                    insert_unique(&mut self.modules, name, m, "module")?;
                }
                BlockKind::Subcategory => {
                    let (name, names) = parse_subcategory(b);
                    let c = resolve_names(&self.amb, &names)?;
                    insert_unique(&mut self.subcategories, name, c, "subcategory")?;
                }
                BlockKind::Chain => {
                    let spec = parse_chain(b)?;
                    spec.resolve(&self.amb)?;
                    insert_unique(&mut self.chains, spec.name.clone(), spec, "chain")?;
                }
                BlockKind::Action => {
                    let g = parse_action(b, &self.alg)?;
                    validate_action(&self.alg, &g)?;
                    insert_unique(&mut self.actions, g.name.clone(), g, "action")?;
                }
            }
        }
        Ok(())
    }

    /// A named subcategory, or the one called `M`, or the whole model.
    pub fn cluster(&self, name: Option<&str>) -> Result<Class> {
        match name {
            Some(n) => self
                .subcategories
                .get(n)
                .cloned()
                .ok_or_else(|| Error::UnknownName(n.to_string())),
            None => Ok(self.subcategories.get("M").cloned().unwrap_or_else(|| self.amb.all())),
        }
    }

    /// A loaded module name, or a sum of model names like `8\1+4\5`.
    pub fn object(&self, text: &str) -> Result<(Multiset, Representation)> {
        if let Some(m) = self.modules.get(text) {
            return Ok((self.amb.decompose(m)?, m.clone()));
        }
        let parts = self.amb.model().parse_object(text)?;
        Ok((parts.clone(), self.amb.model().realize(&parts)))
    }

    pub fn chain(&self, name: &str) -> Result<ntors::StepChain> {
        self.chains
            .get(name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))?
            .resolve(&self.amb)
    }

    /// A named action, or the only loaded one.
    pub fn action(&self, name: Option<&str>) -> Result<GroupAction> {
        match name {
            Some(n) => self
                .actions
                .get(n)
                .cloned()
                .ok_or_else(|| Error::UnknownName(n.to_string())),
            None if self.actions.len() == 1 => Ok(self.actions.values().next().unwrap().clone()),
            None => Err(Error::Precondition("name the group action to use".into())),
        }
    }
}
