//! The resolution checks on an algebra larger than the fixtures, tensor
//! slice sizes against a counting oracle, and homology values that can be
//! worked out by hand.

use dgres_core::algebra::{DGAlgebra, Generator, Which};
use dgres_core::bar::{bar_differential, check_classical_bar, check_reduced_exactness};
use dgres_core::derivation::check_derivations;
use dgres_core::field::Field;
use dgres_core::fixtures;
use dgres_core::homology::{homology_dims, HomologyObject};
use dgres_core::identities::{check_algebra_identities, check_kappa};
use dgres_core::module::{check_bar_n, check_beta, lift_consistency, naive_lift_solve, SemifreeModule};
use dgres_core::report::ValidationReport;
use dgres_core::semifree::check_semifree;
use dgres_core::tensor::{tensor_basis, TensorElement};
use proptest::prelude::*;

/// `A = Q[y]`, `B = A⟨a, e, f⟩` with `|a| = 1`, `|e| = 3`, `|f| = 5`,
/// `da = 0`, `de = y`, `df = y^2`.
fn wide(field: Field) -> DGAlgebra {
    let alg = DGAlgebra::new(
        field,
        vec![Generator::new("y", 2)],
        vec![Generator::new("a", 1), Generator::new("e", 3), Generator::new("f", 5)],
    )
    .unwrap();
    let y = alg.generator("y").unwrap();
    let y2 = alg.multiply(&y, &y);
    alg.with_differential("e", y).unwrap().with_differential("f", y2).unwrap()
}

fn assert_passes(label: &str, r: &ValidationReport) {
    let bad: Vec<_> = r.failures().collect();
    assert!(bad.is_empty(), "{label}: {bad:#?}");
}

#[test]
fn wide_algebra_is_dg() {
    assert_passes("dg", &wide(Field::Rationals).validate_dg(10));
}

#[test]
fn wide_algebra_identities() {
    let alg = wide(Field::Rationals);
    assert_passes("identities", &check_algebra_identities(&alg, 8, 300, 3));
    assert_passes("kappa", &check_kappa(&alg, 2, 6));
}

#[test]
fn wide_algebra_bar_resolutions() {
    for field in [Field::Rationals, Field::Prime(101)] {
        let alg = wide(field);
        assert_passes("classical", &check_classical_bar(&alg, 3, 6));
        assert_passes("reduced", &check_reduced_exactness(&alg, 6));
    }
}

#[test]
fn wide_algebra_semifree_resolution() {
    let alg = wide(Field::Rationals);
    assert_passes("semifree", &check_semifree(&alg, 6, 20, 5));
}

#[test]
fn wide_algebra_derivations() {
    let alg = wide(Field::Rationals);
    assert_passes("derivations", &check_derivations(&alg, 5, 10, 9));
}

#[test]
fn wide_algebra_modules() {
    let alg = wide(Field::Rationals);
    let a = alg.generator("a").unwrap();
    let y = alg.generator("y").unwrap();
    let n = SemifreeModule::new("M", vec![("m0".into(), 0), ("m1".into(), 2), ("m2".into(), 3)], vec![(0, 1, a), (0, 2, y)])
        .unwrap();
    assert_passes("beta", &check_beta(&alg, &n));
    assert_passes("bar_n", &check_bar_n(&alg, &n, 2, 6));
    let outcome = naive_lift_solve(&alg, &n).unwrap();
    assert_passes("lift", &lift_consistency(&alg, &n, &outcome, 3, 6));
}

/// `dim (B^{⊗_A m})_d`: one factor of `B`, then `m - 1` factors of the
/// extension monomials, convolved.
fn expected_tensor_dim(alg: &DGAlgebra, m: usize, d: u32) -> usize {
    let b: Vec<usize> = (0..=d).map(|k| alg.basis_enumerate(Which::B, k).len()).collect();
    let e: Vec<usize> = (0..=d).map(|k| alg.basis_enumerate(Which::Ext, k).len()).collect();
    let mut acc = b;
    for _ in 1..m {
        let mut next = vec![0; d as usize + 1];
        for (i, x) in acc.iter().enumerate() {
            for (j, y) in e.iter().enumerate() {
                if i + j <= d as usize {
                    next[i + j] += x * y;
                }
            }
        }
        acc = next;
    }
    acc[d as usize]
}

#[test]
fn tensor_slices_have_expected_size() {
    for (name, alg) in fixtures::all_algebras().into_iter().chain([("wide".to_string(), wide(Field::Rationals))]) {
        for m in 1..=4 {
            for d in 0..=8 {
                assert_eq!(tensor_basis(&alg, m, d).len(), expected_tensor_dim(&alg, m, d), "{name} m={m} d={d}");
            }
        }
    }
}

#[test]
fn homology_by_hand() {
    let e1 = fixtures::e1(Field::Rationals);
    let e2 = fixtures::e2(Field::Rationals);
    let e3 = fixtures::e3(Field::Rationals);
    let h = homology_dims(&e3, &HomologyObject::B, 9).unwrap();
    assert_eq!((0..9).map(|m| h.homology(m).unwrap()).collect::<Vec<_>>(), [1, 0, 0, 0, 0, 0, 0, 0, 0]);
    let h = homology_dims(&e1, &HomologyObject::B, 6).unwrap();
    assert_eq!((0..6).map(|m| h.homology(m).unwrap()).collect::<Vec<_>>(), [1, 1, 0, 0, 0, 0]);
    let h = homology_dims(&e2, &HomologyObject::B, 8).unwrap();
    assert_eq!((0..8).map(|m| h.homology(m).unwrap()).collect::<Vec<_>>(), [1, 0, 1, 0, 1, 0, 1, 0]);
    for (name, alg) in fixtures::all_algebras() {
        let hb = homology_dims(&alg, &HomologyObject::B, 8).unwrap();
        let hbb = homology_dims(&alg, &HomologyObject::SemifreeBB, 8).unwrap();
        assert_eq!(hb.rows.iter().map(|r| r.homology).collect::<Vec<_>>(), hbb.rows.iter().map(|r| r.homology).collect::<Vec<_>>(), "{name}");
        assert_eq!(homology_dims(&alg, &HomologyObject::ReducedBar, 8).unwrap().total_homology(), 0, "{name}");
    }
}

fn random_tensor(alg: &DGAlgebra, arity: usize, picks: &[(u32, usize, i64)]) -> TensorElement {
    let mut t = TensorElement::zero(arity);
    for &(d, i, c) in picks {
        let basis = tensor_basis(alg, arity, d);
        if !basis.is_empty() {
            t.add_term(basis[i % basis.len()].clone(), alg.field().int(c));
        }
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bar_differential_squares_to_zero(arity in 3usize..6, picks in prop::collection::vec((0u32..8, 0usize..1000, -3i64..4), 1..5)) {
        let alg = wide(Field::Rationals);
        let t = random_tensor(&alg, arity, &picks);
        let dt = bar_differential(&alg, &t).unwrap();
        prop_assert!(bar_differential(&alg, &dt).unwrap().is_zero());
    }
}
