//! The multiplication and differential of `DGAlgebra` against a naive model:
//! a monomial is a word of generator indices, products concatenate and
//! bubble-sort the word, picking up a sign whenever two odd generators pass
//! each other, and a repeated odd generator kills the word.

use dgres_core::algebra::{AlgElement, DGAlgebra, Generator, Monomial};
use dgres_core::field::{Field, Scalar};
use dgres_core::fixtures;
use proptest::prelude::*;

/// `A = Q[y]`, `B = A⟨a, e, f, x⟩` with `|a| = 1`, `|e| = 3`, `|f| = 5`,
/// `|x| = 2`, `de = y`, `df = y^2`, `dx = 0`, `da = 0`.
fn big() -> DGAlgebra {
    let alg = DGAlgebra::new(
        Field::Rationals,
        vec![Generator::new("y", 2)],
        vec![Generator::new("a", 1), Generator::new("e", 3), Generator::new("f", 5), Generator::new("x", 2)],
    )
    .unwrap();
    let y = alg.generator("y").unwrap();
    let y2 = alg.multiply(&y, &y);
    alg.with_differential("e", y).unwrap().with_differential("f", y2).unwrap()
}

type Word = Vec<usize>;

fn word_of(m: &Monomial) -> Word {
    let mut w = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        w.extend(std::iter::repeat_n(i, e as usize));
    }
    w
}

/// Sorts `w`, returning the sign, or `None` if an odd generator repeats.
fn normalize(alg: &DGAlgebra, mut w: Word) -> Option<(bool, Word)> {
    let odd = |i: usize| alg.generators()[i].degree % 2 == 1;
    let mut negative = false;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] > w[j + 1] {
                if odd(w[j]) && odd(w[j + 1]) {
                    negative = !negative;
                }
                w.swap(j, j + 1);
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1] && odd(p[0])) {
        return None;
    }
    Some((negative, w))
}

fn monomial_of(alg: &DGAlgebra, w: &Word) -> Monomial {
    let mut exps = vec![0u32; alg.num_gens()];
    for &i in w {
        exps[i] += 1;
    }
    alg.monomial(&exps).unwrap().unwrap()
}

fn signed(alg: &DGAlgebra, negative: bool) -> Scalar {
    if negative {
        alg.field().int(-1)
    } else {
        alg.field().one()
    }
}

fn oracle_word(alg: &DGAlgebra, w: Word) -> AlgElement {
    match normalize(alg, w) {
        None => AlgElement::zero(),
        Some((neg, w)) => AlgElement::from_monomial(monomial_of(alg, &w), signed(alg, neg)),
    }
}

fn oracle_multiply(alg: &DGAlgebra, u: &AlgElement, v: &AlgElement) -> AlgElement {
    let mut out = AlgElement::zero();
    for (m1, c1) in u.terms() {
        for (m2, c2) in v.terms() {
            let mut w = word_of(m1);
            w.extend(word_of(m2));
            out.add_assign(&oracle_word(alg, w).scale(&(c1 * c2)));
        }
    }
    out
}

/// `d(g_1…g_k) = Σ_i (-1)^{|g_1|+…+|g_{i-1}|} g_1…d(g_i)…g_k`.
fn oracle_differential(alg: &DGAlgebra, m: &Monomial) -> AlgElement {
    let w = word_of(m);
    let mut out = AlgElement::zero();
    let mut before = 0u32;
    for (i, &g) in w.iter().enumerate() {
        let left = w[..i].iter().fold(alg.one(), |acc, &h| {
            oracle_multiply(alg, &acc, &AlgElement::from_monomial(alg.gen_monomial(h), alg.field().one()))
        });
        let right = w[i + 1..].iter().fold(alg.one(), |acc, &h| {
            oracle_multiply(alg, &acc, &AlgElement::from_monomial(alg.gen_monomial(h), alg.field().one()))
        });
        let term = oracle_multiply(alg, &oracle_multiply(alg, &left, alg.differential_of(g)), &right);
        out.add_assign(&term.scale(&signed(alg, before % 2 == 1)));
        before += alg.generators()[g].degree;
    }
    out
}

fn element(alg: &DGAlgebra, spec: &[(Vec<u32>, i64)]) -> AlgElement {
    let mut u = AlgElement::zero();
    for (exps, c) in spec {
        let mut exps = exps.clone();
        for (i, g) in alg.generators().iter().enumerate() {
            if g.degree % 2 == 1 {
                exps[i] = exps[i].min(1);
            }
        }
        let m = alg.monomial(&exps).unwrap().unwrap();
        u.add_term(m, alg.field().int(*c));
    }
    u
}

fn spec(n: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..3, n), -4i64..5), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_matches_oracle(u in spec(5), v in spec(5)) {
        let alg = big();
        let (u, v) = (element(&alg, &u), element(&alg, &v));
        prop_assert_eq!(alg.multiply(&u, &v), oracle_multiply(&alg, &u, &v));
    }

    #[test]
    fn differential_matches_oracle(u in spec(5)) {
        let alg = big();
        for (m, _) in element(&alg, &u).terms() {
            prop_assert_eq!(alg.differential_monomial(m), oracle_differential(&alg, m));
        }
    }

    #[test]
    fn associative(u in spec(5), v in spec(5), w in spec(5)) {
        let alg = big();
        let (u, v, w) = (element(&alg, &u), element(&alg, &v), element(&alg, &w));
        prop_assert_eq!(alg.multiply(&alg.multiply(&u, &v), &w), alg.multiply(&u, &alg.multiply(&v, &w)));
    }

    #[test]
    fn graded_commutative_and_leibniz(u in (prop::collection::vec(0u32..3, 5), 1i64..5), v in (prop::collection::vec(0u32..3, 5), -4i64..0)) {
        let alg = big();
        let (u, v) = (element(&alg, &[u]), element(&alg, &[v]));
        let du = u.homogeneous_degree().unwrap();
        let dv = v.homogeneous_degree().unwrap();
        let uv = alg.multiply(&u, &v);
        prop_assert_eq!(&uv, &alg.multiply(&v, &u).scale(&signed(&alg, du * dv % 2 == 1)));
        let rhs = alg.multiply(&alg.differential(&u), &v)
            .add(&alg.multiply(&u, &alg.differential(&v)).scale(&signed(&alg, du % 2 == 1)));
        prop_assert_eq!(alg.differential(&uv), rhs);
        prop_assert!(alg.differential(&alg.differential(&u)).is_zero());
    }
}

#[test]
fn fixtures_match_oracle_exhaustively() {
    for (name, alg) in fixtures::all_algebras() {
        for d1 in 0..=8 {
            for m1 in alg.basis_enumerate(dgres_core::algebra::Which::B, d1).iter() {
                assert_eq!(alg.differential_monomial(m1), oracle_differential(&alg, m1), "{name}");
                for d2 in 0..=8 - d1 {
                    for m2 in alg.basis_enumerate(dgres_core::algebra::Which::B, d2).iter() {
                        let u = AlgElement::from_monomial(m1.clone(), alg.field().one());
                        let v = AlgElement::from_monomial(m2.clone(), alg.field().one());
                        assert_eq!(alg.multiply(&u, &v), oracle_multiply(&alg, &u, &v), "{name}");
                    }
                }
            }
        }
    }
}

/// Counts monomials of degree `d` by brute force over bounded exponents.
fn count_monomials(degrees: &[(u32, bool)], d: u32) -> usize {
    fn rec(degrees: &[(u32, bool)], left: u32) -> usize {
        match degrees.split_first() {
            None => (left == 0) as usize,
            Some((&(g, odd), rest)) => {
                let max = if odd { 1 } else { left / g };
                (0..=max.min(left / g)).map(|e| rec(rest, left - e * g)).sum()
            }
        }
    }
    rec(degrees, d)
}

#[test]
fn basis_sizes_match_counting() {
    let alg = big();
    let degrees: Vec<(u32, bool)> = alg.generators().iter().map(|g| (g.degree, g.degree % 2 == 1)).collect();
    for d in 0..=12 {
        assert_eq!(alg.basis_enumerate(dgres_core::algebra::Which::B, d).len(), count_monomials(&degrees, d), "degree {d}");
    }
}
