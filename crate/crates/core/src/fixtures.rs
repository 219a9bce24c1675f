//! The standard example algebras and modules used by tests, the acceptance
//! suite and the CLI goldens.
//!
//! * `e1`: `A = k`, `B = Λ(e)` with `|e| = 1`.
//! * `e2`: `A = k`, `B = k[x]` with `|x| = 2`.
//! * `e3`: `A = k[y]` with `|y| = 2`, `B = A⟨e⟩` with `|e| = 3`, `d e = y`.

use crate::algebra::{DGAlgebra, Generator};
use crate::field::Field;
use crate::module::SemifreeModule;

pub fn e1(field: Field) -> DGAlgebra {
    DGAlgebra::new(field, vec![], vec![Generator::new("e", 1)]).unwrap()
}

pub fn e2(field: Field) -> DGAlgebra {
    DGAlgebra::new(field, vec![], vec![Generator::new("x", 2)]).unwrap()
}

pub fn e3(field: Field) -> DGAlgebra {
    let alg = DGAlgebra::new(field, vec![Generator::new("y", 2)], vec![Generator::new("e", 3)]).unwrap();
    let y = alg.generator("y").unwrap();
    alg.with_differential("e", y).unwrap()
}

/// The three example algebras over `Q` and over `F_101`, with labels.
pub fn all_algebras() -> Vec<(String, DGAlgebra)> {
    let mut out = Vec::new();
    for field in [Field::Rationals, Field::Prime(101)] {
        let suffix = if field == Field::Rationals { String::new() } else { format!("/{field}") };
        out.push((format!("E1{suffix}"), e1(field)));
        out.push((format!("E2{suffix}"), e2(field)));
        out.push((format!("E3{suffix}"), e3(field)));
    }
    out
}

/// `B` as a module over itself, on one generator of degree 0.
pub fn free_module(_alg: &DGAlgebra) -> SemifreeModule {
    SemifreeModule::new("B", vec![("1".into(), 0)], vec![]).unwrap()
}

/// Over `e2`: `e0` in degree 0, `e1` in degree 3, `∂e1 = e0·x`.
pub fn koszul_module(alg: &DGAlgebra) -> SemifreeModule {
    let x = alg.generator("x").unwrap();
    SemifreeModule::new("K", vec![("e0".into(), 0), ("e1".into(), 3)], vec![(0, 1, x)]).unwrap()
}

/// Over `e1`: `f1, f2, f3` in degrees 0, 2, 4 with `∂f2 = f1·e`, `∂f3 = f2·e`.
pub fn chain_module(alg: &DGAlgebra) -> SemifreeModule {
    let e = alg.generator("e").unwrap();
    SemifreeModule::new(
        "N3",
        vec![("f1".into(), 0), ("f2".into(), 2), ("f3".into(), 4)],
        vec![(0, 1, e.clone()), (1, 2, e)],
    )
    .unwrap()
}

/// `C⊗_A B` for the DG `A`-module `C` on `c0`, `c1` with `∂c1 = c0·a`, where
/// `a` is the first base generator, or `a = 1` when `A` is the ground field.
pub fn extended_module(alg: &DGAlgebra) -> SemifreeModule {
    let (a, deg) = match alg.base_generators().first() {
        Some(g) => (alg.generator(&g.name).unwrap(), g.degree + 1),
        None => (alg.one(), 1),
    };
    SemifreeModule::new("CB", vec![("c0".into(), 0), ("c1".into(), deg)], vec![(0, 1, a)]).unwrap()
}

/// Every module fixture together with the algebra it lives over.
pub fn module_fixtures(field: Field) -> Vec<(DGAlgebra, SemifreeModule)> {
    let mut out = Vec::new();
    for alg in [e1(field), e2(field), e3(field)] {
        out.push((alg.clone(), free_module(&alg)));
        out.push((alg.clone(), extended_module(&alg)));
    }
    let a2 = e2(field);
    out.push((a2.clone(), koszul_module(&a2)));
    let a1 = e1(field);
    out.push((a1.clone(), chain_module(&a1)));
    out
}
