#![allow(dead_code)]

use std::sync::Arc;

use ntors::covering::{orbit_algebra, GroupAction, OrbitAlgebraMap};
use ntors::formats::{parse_action, parse_chain, parse_subcategory, resolve_names, BlockKind, Document};
use ntors::{nakayama_model, parse_algebra_spec, Ambient, BoundQuiverAlgebra, Class, StepChain};

pub fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn algebra(name: &str) -> Arc<BoundQuiverAlgebra> {
    Arc::new(parse_algebra_spec(&fixture(name)).unwrap())
}

pub fn ambient_of(alg: &Arc<BoundQuiverAlgebra>) -> Ambient {
    Ambient::new(Arc::new(nakayama_model(alg).unwrap()))
}

pub fn ambient(name: &str) -> Ambient {
    ambient_of(&algebra(name))
}

pub fn class(amb: &Ambient, names: &[&str]) -> Class {
    amb.class_from_names(names).unwrap()
}

pub fn subcategory(amb: &Ambient, file: &str) -> Class {
    let doc = Document::parse(&fixture(file)).unwrap();
    let block = doc.of_kind(BlockKind::Subcategory).next().unwrap();
    resolve_names(amb, &parse_subcategory(block).1).unwrap()
}

pub fn chain(amb: &Ambient, file: &str) -> StepChain {
    let doc = Document::parse(&fixture(file)).unwrap();
    let block = doc.of_kind(BlockKind::Chain).next().unwrap();
    parse_chain(block).unwrap().resolve(amb).unwrap()
}

pub fn action(alg: &BoundQuiverAlgebra, file: &str) -> GroupAction {
    let doc = Document::parse(&fixture(file)).unwrap();
    let block = doc.of_kind(BlockKind::Action).next().unwrap();
    parse_action(block, alg).unwrap()
}

/// B, its orbit algebra under the Z2 fixture action, and both ambients.
pub struct CoveringFixture {
    pub up: Ambient,
    pub down: Ambient,
    pub map: OrbitAlgebraMap,
    pub mcat: Class,
}

pub fn covering_fixture() -> CoveringFixture {
    let b = algebra("B.alg");
    let up = ambient_of(&b);
    let map = orbit_algebra(&b, &action(&b, "B.action")).unwrap();
    let down = ambient_of(&map.algebra);
    let mcat = subcategory(&up, "B.cluster");
    CoveringFixture { up, down, map, mcat }
}
