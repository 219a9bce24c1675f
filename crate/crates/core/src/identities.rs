//! Seeded sampling of the algebra identities, and the round trip through the
//! basis isomorphism `κ_n` of `J^{⊗_B n}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgElement, DGAlgebra, Which};
use crate::homology::span_rank;
use crate::report::{Check, ValidationReport};
use crate::tensor::{delta, from_alg, glue, jn_basis, kappa_n, kappa_n_inverse, TensorElement};

/// A random homogeneous element of `B` of a degree `≤ max_degree` whose
/// slice is nonzero.
pub fn random_homogeneous(alg: &DGAlgebra, max_degree: u32, rng: &mut ChaCha8Rng) -> AlgElement {
    let degrees: Vec<u32> = (0..=max_degree).filter(|&d| !alg.basis_enumerate(Which::B, d).is_empty()).collect();
    let d = degrees[rng.gen_range(0..degrees.len())];
    let basis = alg.basis_enumerate(Which::B, d);
    let mut u = AlgElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let m = &basis[rng.gen_range(0..basis.len())];
        let c = alg.field().int(rng.gen_range(-5..=5));
        u.add_term(m.clone(), c);
    }
    u
}

/// Strong commutativity, associativity and the Leibniz rule on `samples`
/// seeded random homogeneous pairs (and triples for associativity).
pub fn check_algebra_identities(alg: &DGAlgebra, max_degree: u32, samples: usize, seed: u64) -> ValidationReport {
    let window = format!("degree<={max_degree},samples={samples},seed={seed}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut comm = Vec::new();
    let mut squares = Vec::new();
    let mut assoc = Vec::new();
    let mut leibniz = Vec::new();
    for _ in 0..samples {
        let u = random_homogeneous(alg, max_degree, &mut rng);
        let v = random_homogeneous(alg, max_degree, &mut rng);
        let w = random_homogeneous(alg, max_degree, &mut rng);
        let du = u.homogeneous_degree().unwrap_or(0);
        let dv = v.homogeneous_degree().unwrap_or(0);
        let label = || format!("u = {}, v = {}", alg.fmt_element(&u), alg.fmt_element(&v));
        let uv = alg.multiply(&u, &v);
        let vu = alg.multiply(&v, &u);
        if uv != vu.scale(&alg.field().one().signed((du * dv) % 2 == 1)) {
            comm.push(label());
        }
        if du % 2 == 1 && !alg.multiply(&u, &u).is_zero() {
            squares.push(format!("u = {}", alg.fmt_element(&u)));
        }
        if alg.multiply(&uv, &w) != alg.multiply(&u, &alg.multiply(&v, &w)) {
            assoc.push(format!("{}, w = {}", label(), alg.fmt_element(&w)));
        }
        let lhs = alg.differential(&uv);
        let rhs = alg
            .multiply(&alg.differential(&u), &v)
            .add(&alg.multiply(&u, &alg.differential(&v)).scale(&alg.field().one().signed(du % 2 == 1)));
        if lhs != rhs {
            leibniz.push(label());
        }
    }
    let mut r = ValidationReport::default();
    r.push(Check::from_failures("algebra.graded_commutative", &window, comm));
    r.push(Check::from_failures("algebra.odd_squares_zero", &window, squares));
    r.push(Check::from_failures("algebra.associative", &window, assoc));
    r.push(Check::from_failures("algebra.leibniz", &window, leibniz));
    r
}

/// For `n ≤ max_n` and degree `≤ max_degree`: `κ_n^{-1}κ_n = id` on every
/// basis element and `κ_nκ_n^{-1} = id` on its image, and the basis has as
/// many elements as `J^{⊗_B n}` has dimension, the latter computed as the
/// rank of all products `c·δ(b_1)⊗_B…⊗_Bδ(b_n)` over arbitrary monomials.
pub fn check_kappa(alg: &DGAlgebra, max_n: usize, max_degree: u32) -> ValidationReport {
    let window = format!("n<={max_n},degree<={max_degree}");
    let mut round = Vec::new();
    let mut dim = Vec::new();
    for n in 0..=max_n {
        for d in 0..=max_degree {
            let basis = jn_basis(alg, n, 1, d);
            for e in basis.iter() {
                let flat = e.flat(alg);
                match kappa_n_inverse(alg, &flat, n) {
                    Ok(view) => {
                        if kappa_n(alg, &view) != flat {
                            round.push(format!("n={n}, degree {d}: kappa(kappa^-1(x)) != x"));
                        }
                        let single = view.coords.len() == 1
                            && view.left_coord(&e.ws) == AlgElement::from_monomial(e.coef.slots()[0].clone(), alg.field().one());
                        if !single {
                            round.push(format!("n={n}, degree {d}: kappa^-1 of a basis element is not that element"));
                        }
                    }
                    Err(err) => round.push(format!("n={n}, degree {d}: {err}")),
                }
            }
            let spanning: Vec<Vec<_>> = products(alg, n, d)
                .iter()
                .map(|t| t.terms().map(|(w, c)| (w.clone(), c.clone())).collect())
                .collect();
            let r = span_rank(alg.field(), &spanning);
            if r != basis.len() {
                dim.push(format!("n={n}, degree {d}: basis has {} elements, J^n has dimension {r}", basis.len()));
            }
        }
    }
    let mut r = ValidationReport::default();
    r.push(Check::from_failures("kappa.round_trip", &window, round));
    r.push(Check::from_failures("kappa.basis_dimension", &window, dim));
    r
}

/// All `c·δ(b_1)⊗_B…⊗_Bδ(b_n)` of degree `d` with `c, b_i` monomials.
fn products(alg: &DGAlgebra, n: usize, d: u32) -> Vec<TensorElement> {
    let one = alg.field().one();
    let mut partial: Vec<(u32, TensorElement)> = Vec::new();
    for dc in 0..=d {
        for c in alg.basis_enumerate(Which::B, dc).iter() {
            partial.push((dc, from_alg(&AlgElement::from_monomial(c.clone(), one.clone()))));
        }
    }
    for _ in 0..n {
        let mut next = Vec::new();
        for (dp, t) in &partial {
            for db in 0..=(d - dp) {
                for b in alg.basis_enumerate(Which::B, db).iter().filter(|b| !b.is_one()) {
                    let db_el = delta(alg, &AlgElement::from_monomial(b.clone(), one.clone()));
                    next.push((dp + db, glue(alg, t, &db_el)));
                }
            }
        }
        partial = next;
    }
    partial.into_iter().filter(|(dp, _)| *dp == d).map(|(_, t)| t).collect()
}
