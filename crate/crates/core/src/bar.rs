//! The classical bar resolution `B⊗_A B^{⊗_A n}⊗_A B → B`, its contracting
//! homotopy, the kernels `^nJ`, and the reduced bar resolution
//! `B⊗_A J^{⊗_B n} → B`.
//!
//! A bar element of word length `n` is a tensor of arity `n + 2`; arity one
//! stands for the augmentation target `B`.

use rayon::prelude::*;

use crate::algebra::{AlgElement, DGAlgebra, Which};
use crate::error::{Error, Result};
use crate::homology::{span_rank, KeyIndex};
use crate::linalg::SliceMatrix;
use crate::report::{Check, ValidationReport};
use crate::tensor::{
    self, bimodule_act, contract, delta, fmt_tensor, jn_basis, jn_decompose, tensor_basis, tensor_differential,
    tensor_of, word, TensorElement, TensorWord,
};

/// `𝐝(b_0⊗…⊗b_{n+1}) = Σ_{i=0}^{n} (-1)^i b_0⊗…⊗b_i b_{i+1}⊗…⊗b_{n+1}`.
/// On arity two this is the augmentation `π_B`, returned with arity one.
pub fn bar_differential(alg: &DGAlgebra, t: &TensorElement) -> Result<TensorElement> {
    let m = t.arity();
    if m < 2 {
        return Err(Error::LengthMismatch { expected: 2, found: m });
    }
    let mut out = TensorElement::zero(m - 1);
    for i in 0..m - 1 {
        out.add_assign(&contract(alg, t, i).signed(i % 2 == 1));
    }
    Ok(out)
}

/// `𝐡(b_0⊗…) = 1⊗b_0⊗…`; on arity one this is `𝐡_{-1}(b) = 1⊗b`.
pub fn bar_homotopy(alg: &DGAlgebra, t: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(t.arity() + 1);
    for (w, c) in t.terms() {
        let mut slots: tensor::Slots = std::iter::once(alg.one_monomial()).collect();
        slots.extend(w.slots().iter().cloned());
        tensor::add_raw(alg, &mut out, slots, c.clone());
    }
    out
}

/// The signed right `B^e`-action on bar elements.
pub fn bar_action(alg: &DGAlgebra, t: &TensorElement, s: &TensorElement) -> Result<TensorElement> {
    bimodule_act(alg, t, s)
}

/// `ν(b) = −(1⊗b⊗1)`.
pub fn nu(alg: &DGAlgebra, b: &AlgElement) -> TensorElement {
    let one = alg.one();
    tensor_of(alg, &[one.clone(), b.clone(), one]).neg()
}

fn column(t: &TensorElement) -> Vec<(TensorWord, crate::field::Scalar)> {
    t.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
}

/// Matrix of `𝐝` from arity `m` to arity `m - 1` at internal degree `d`,
/// on the flat word bases.
pub fn bar_differential_matrix(alg: &DGAlgebra, m: usize, d: u32) -> SliceMatrix {
    let src = tensor_basis(alg, m, d);
    let mut idx = KeyIndex::from_keys(tensor_basis(alg, m - 1, d).iter().cloned());
    let cols: Vec<_> = src
        .iter()
        .map(|w| column(&bar_differential(alg, &word(alg, w.slots())).unwrap()))
        .collect();
    crate::homology::assemble(alg.field(), &cols, &mut idx)
}

/// A basis of the degree-`d` slice of `^nJ = ker 𝐝_{n-2}`, where `^1J = J`
/// is the kernel of `π_B`. Elements have arity `n + 1`.
pub fn nj_kernel_basis(alg: &DGAlgebra, n: usize, d: u32) -> Vec<TensorElement> {
    assert!(n >= 1, "^nJ is defined for n >= 1");
    let src = tensor_basis(alg, n + 1, d);
    let m = bar_differential_matrix(alg, n + 1, d);
    m.nullspace()
        .into_iter()
        .map(|v| {
            let mut t = TensorElement::zero(n + 1);
            for (w, c) in src.iter().zip(v) {
                t.add_term(w.clone(), c);
            }
            t
        })
        .collect()
}

/// `d̄_n` on `B⊗_A J^{⊗_B n}` in flat coordinates: the `B`-prefix is
/// multiplied into the first `J` factor. `d̄_0 = π_B`.
pub fn reduced_bar_differential(alg: &DGAlgebra, t: &TensorElement, n: usize) -> Result<TensorElement> {
    if t.arity() != n + 2 {
        return Err(Error::LengthMismatch { expected: n + 2, found: t.arity() });
    }
    jn_decompose(alg, t, n, 2).map_err(|e| Error::NotInDomain(e.to_string()))?;
    Ok(contract(alg, t, 0))
}

/// Checks, through `max_degree`, the identities of the classical bar
/// resolution for word lengths up to `max_n`.
pub fn check_classical_bar(alg: &DGAlgebra, max_n: usize, max_degree: u32) -> ValidationReport {
    let window = format!("n<={max_n},degree<={max_degree}");
    let degrees: Vec<u32> = (0..=max_degree).collect();
    let per_degree: Vec<[Vec<String>; 6]> = degrees.par_iter().map(|&d| classical_degree(alg, max_n, d)).collect();
    let names = [
        "bar.d_squared_zero",
        "bar.homotopy_identity",
        "bar.commutes_with_internal_d",
        "bar.right_action_linear",
        "bar.nu_lifts_delta",
        "bar.kernel_equals_image",
    ];
    let mut report = ValidationReport::default();
    for (k, name) in names.iter().enumerate() {
        let fails: Vec<String> = per_degree.iter().flat_map(|f| f[k].iter().cloned()).collect();
        report.push(Check::from_failures(*name, &window, fails));
    }
    report
}

fn classical_degree(alg: &DGAlgebra, max_n: usize, d: u32) -> [Vec<String>; 6] {
    let mut f: [Vec<String>; 6] = Default::default();
    let gens = action_generators(alg);
    // 𝐝_{-1}𝐡_{-1} = id on B
    for m in alg.basis_enumerate(Which::B, d).iter() {
        let b = tensor::from_alg(&AlgElement::from_monomial(m.clone(), alg.field().one()));
        let back = bar_differential(alg, &bar_homotopy(alg, &b)).unwrap();
        if back != b {
            f[1].push(format!("d_-1 h_-1 != id on {}", alg.fmt_monomial(m)));
        }
        let bm = AlgElement::from_monomial(m.clone(), alg.field().one());
        let lhs = bar_differential(alg, &nu(alg, &bm)).unwrap();
        if lhs != delta(alg, &bm) {
            f[4].push(format!("d_0 nu != delta on {}", alg.fmt_monomial(m)));
        }
    }
    for n in 0..=max_n {
        let arity = n + 2;
        for w in tensor_basis(alg, arity, d).iter() {
            let t = word(alg, w.slots());
            let dt = bar_differential(alg, &t).unwrap();
            if arity >= 3 {
                let ddt = bar_differential(alg, &dt).unwrap();
                if !ddt.is_zero() {
                    f[0].push(format!("d^2({}) = {}", tensor::fmt_word(alg, w), fmt_tensor(alg, &ddt)));
                }
            }
            // 𝐝_n𝐡_n + 𝐡_{n-1}𝐝_{n-1} = id
            let lhs = bar_differential(alg, &bar_homotopy(alg, &t)).unwrap().add(&bar_homotopy(alg, &dt));
            if lhs != t {
                f[1].push(format!("(dh + hd)({}) = {}", tensor::fmt_word(alg, w), fmt_tensor(alg, &lhs)));
            }
            let a = bar_differential(alg, &tensor_differential(alg, &t)).unwrap();
            let b = tensor_differential(alg, &dt);
            if a != b {
                f[2].push(format!("d(del {}) != del(d {})", tensor::fmt_word(alg, w), tensor::fmt_word(alg, w)));
            }
            if arity >= 3 {
                for s in &gens {
                    let a = bar_differential(alg, &bar_action(alg, &t, s).unwrap()).unwrap();
                    let b = bar_action(alg, &dt, s).unwrap();
                    if a != b {
                        f[3].push(format!("d(t.s) != d(t).s for t = {}, s = {}", tensor::fmt_word(alg, w), fmt_tensor(alg, s)));
                    }
                }
            }
        }
        // dim ^{n+1}J_d = dim ker 𝐝_{n-1} = rank 𝐝_n
        let ker = bar_differential_matrix(alg, arity, d);
        let kdim = tensor_basis(alg, arity, d).len() - ker.rank();
        let im = bar_differential_matrix(alg, arity + 1, d).rank();
        if kdim != im {
            f[5].push(format!("n={}, degree {d}: dim ker = {kdim}, rank of next = {im}", n + 1));
        }
    }
    f
}

/// The elements `g⊗1` and `1⊗g` for each generator `g`; they generate `B^e`
/// as an algebra.
pub fn action_generators(alg: &DGAlgebra) -> Vec<TensorElement> {
    let one = alg.one();
    let mut out = Vec::new();
    for g in alg.generators() {
        let ge = alg.generator(&g.name).unwrap();
        out.push(tensor_of(alg, &[ge.clone(), one.clone()]));
        out.push(tensor_of(alg, &[one.clone(), ge]));
    }
    out
}

/// Checks that the reduced bar complex is a resolution of `B` through
/// internal degree `max_degree`: `d̄` squares to zero, commutes with the
/// internal differential, lands in the right subspace, and each degree
/// slice is exact with `d̄_0` onto `B`.
pub fn check_reduced_exactness(alg: &DGAlgebra, max_degree: u32) -> ValidationReport {
    let window = format!("degree<={max_degree}");
    let degrees: Vec<u32> = (0..=max_degree).collect();
    let per_degree: Vec<[Vec<String>; 4]> = degrees.par_iter().map(|&d| reduced_degree(alg, d)).collect();
    let names = [
        "reduced_bar.d_squared_zero",
        "reduced_bar.commutes_with_internal_d",
        "reduced_bar.image_in_subcomplex",
        "reduced_bar.exact",
    ];
    let mut report = ValidationReport::default();
    for (k, name) in names.iter().enumerate() {
        let fails: Vec<String> = per_degree.iter().flat_map(|f| f[k].iter().cloned()).collect();
        report.push(Check::from_failures(*name, &window, fails));
    }
    report
}

/// Ranks of `d̄_n` at internal degree `d` for `n = 0..=d+1`, and dimensions
/// of the chain spaces `B⊗_A J^{⊗_B n}` (index `n + 1`; index 0 is `B_d`).
pub fn reduced_ranks(alg: &DGAlgebra, d: u32) -> (Vec<usize>, Vec<usize>) {
    let mut dims = vec![alg.basis_enumerate(Which::B, d).len()];
    let mut ranks = Vec::new();
    for n in 0..=(d as usize + 1) {
        let basis = jn_basis(alg, n, 2, d);
        dims.push(basis.len());
        let cols: Vec<_> = basis.iter().map(|e| column(&contract(alg, &e.flat(alg), 0))).collect();
        ranks.push(span_rank(alg.field(), &cols));
    }
    (dims, ranks)
}

fn reduced_degree(alg: &DGAlgebra, d: u32) -> [Vec<String>; 4] {
    let mut f: [Vec<String>; 4] = Default::default();
    for n in 0..=(d as usize) {
        for e in jn_basis(alg, n, 2, d).iter() {
            let x = e.flat(alg);
            let y = reduced_bar_differential(alg, &x, n).unwrap();
            let label = || format!("n={n}, {}", fmt_tensor(alg, &x));
            if n >= 1 {
                if let Err(err) = jn_decompose(alg, &y, n - 1, 2) {
                    f[2].push(format!("{}: {err}", label()));
                    continue;
                }
                let yy = reduced_bar_differential(alg, &y, n - 1).unwrap();
                if !yy.is_zero() {
                    f[0].push(format!("d^2 != 0 on {}", label()));
                }
            }
            let a = contract(alg, &tensor_differential(alg, &x), 0);
            let b = tensor_differential(alg, &y);
            if a != b {
                f[1].push(label());
            }
        }
    }
    let (dims, ranks) = reduced_ranks(alg, d);
    // exactness at B: d̄_0 onto B_d
    if ranks[0] != dims[0] {
        f[3].push(format!("degree {d}: augmentation rank {} < dim B = {}", ranks[0], dims[0]));
    }
    for n in 0..=(d as usize) {
        let kernel = dims[n + 1] - ranks[n];
        if kernel != ranks[n + 1] {
            f[3].push(format!("degree {d}, n={n}: dim ker = {kernel}, dim im = {}", ranks[n + 1]));
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;
    use crate::field::Field;
    use crate::fixtures;

    fn w(alg: &DGAlgebra, parts: &[&str]) -> TensorElement {
        let els: Vec<AlgElement> = parts.iter().map(|p| parse_element(alg, p).unwrap()).collect();
        tensor_of(alg, &els)
    }

    #[test]
    fn differential_examples() {
        let b = fixtures::e1(Field::Rationals);
        let d = bar_differential(&b, &w(&b, &["1", "e", "1"])).unwrap();
        assert_eq!(d, w(&b, &["e", "1"]).sub(&w(&b, &["1", "e"])));
        let d = bar_differential(&b, &w(&b, &["1", "e", "e", "1"])).unwrap();
        assert_eq!(d, w(&b, &["e", "e", "1"]).add(&w(&b, &["1", "e", "e"])));
        let b2 = fixtures::e2(Field::Rationals);
        let d = bar_differential(&b2, &w(&b2, &["x", "x"])).unwrap();
        assert_eq!(d, w(&b2, &["x^2"]));
    }

    #[test]
    fn homotopy_examples() {
        let b = fixtures::e1(Field::Rationals);
        assert_eq!(bar_homotopy(&b, &w(&b, &["e"])), w(&b, &["1", "e"]));
        let t = w(&b, &["e", "1"]);
        let lhs = bar_differential(&b, &bar_homotopy(&b, &t))
            .unwrap()
            .add(&bar_homotopy(&b, &bar_differential(&b, &t).unwrap()));
        assert_eq!(lhs, t);
        assert_eq!(bar_homotopy(&b, &w(&b, &["1", "1"])), w(&b, &["1", "1", "1"]));
    }

    #[test]
    fn action_and_nu() {
        let b = fixtures::e1(Field::Rationals);
        let e = parse_element(&b, "e").unwrap();
        assert_eq!(nu(&b, &e), w(&b, &["1", "e", "1"]).neg());
        assert_eq!(bar_differential(&b, &nu(&b, &e)).unwrap(), delta(&b, &e));
        assert!(nu(&b, &AlgElement::zero()).is_zero());
        let r = bar_action(&b, &w(&b, &["1", "e", "1"]), &w(&b, &["e", "1"])).unwrap();
        assert_eq!(r, w(&b, &["e", "e", "1"]).neg());
    }

    #[test]
    fn kernel_examples() {
        let b = fixtures::e1(Field::Rationals);
        let k = nj_kernel_basis(&b, 1, 1);
        assert_eq!(k.len(), 1);
        // spans δ(e)
        let de = delta(&b, &parse_element(&b, "e").unwrap());
        let (w0, c0) = de.terms().next().unwrap();
        let ratio = k[0].coefficient(w0).unwrap() / c0;
        assert_eq!(k[0], de.scale(&ratio));
        for alg in [fixtures::e2(Field::Rationals), fixtures::e3(Field::Rationals)] {
            assert!(nj_kernel_basis(&alg, 1, 0).is_empty());
        }
    }

    #[test]
    fn reduced_examples() {
        let b = fixtures::e1(Field::Rationals);
        let de = delta(&b, &parse_element(&b, "e").unwrap());
        let x = tensor::glue(&b, &w(&b, &["1", "1"]), &de);
        assert_eq!(reduced_bar_differential(&b, &x, 1).unwrap(), de);
        let b2 = fixtures::e2(Field::Rationals);
        let dx = delta(&b2, &parse_element(&b2, "x").unwrap());
        let x = tensor::glue(&b2, &w(&b2, &["1", "1"]), &tensor::glue(&b2, &dx, &dx));
        let expect = w(&b2, &["1", "x", "x"])
            .sub(&w(&b2, &["1", "x^2", "1"]))
            .sub(&w(&b2, &["x", "1", "x"]))
            .add(&w(&b2, &["x", "x", "1"]));
        assert_eq!(reduced_bar_differential(&b2, &x, 2).unwrap(), expect);
        assert!(reduced_bar_differential(&b2, &TensorElement::zero(3), 1).unwrap().is_zero());
        assert!(matches!(
            reduced_bar_differential(&b2, &w(&b2, &["1", "1", "1"]), 1),
            Err(Error::NotInDomain(_))
        ));
    }

    #[test]
    fn reduced_exactness_small() {
        for alg in [fixtures::e1(Field::Rationals), fixtures::e2(Field::Rationals), fixtures::e3(Field::Rationals)] {
            let r = check_reduced_exactness(&alg, 5);
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn classical_small() {
        for alg in [fixtures::e1(Field::Rationals), fixtures::e3(Field::Rationals)] {
            let r = check_classical_bar(&alg, 2, 4);
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
