//! The tensor algebra `T = ⊕_n (ΣJ)^{⊗_B n}`, the semifree DG `B^e`-module
//! `𝔹 = B⊗_A T` with differential `𝔻 = ∂^𝔹 + 𝔇`, and the augmentation
//! `α: 𝔹 → B`.
//!
//! An element of the `n`-th component of `𝔹` is stored unsuspended, as the
//! element `X = ψ_n^{-1}(β)` of `B⊗_A J^{⊗_B n} ⊆ B^{⊗_A (n+2)}`; components
//! of `T` likewise as elements of `J^{⊗_B n} ⊆ B^{⊗_A (n+1)}`. Here
//!
//! ```text
//! ψ_n(b ⊗ τ_1 ⊗_B … ⊗_B τ_n) = (-1)^{n|b| + Σ_{i<n} (n-i)|τ_i|} b ⊗ Στ_1 ⊗_B … ⊗_B Στ_n
//! ```
//!
//! and the suspension has `∂^{ΣM}(Σm) = -Σ∂^M(m)`. With these conventions
//! the sign bookkeeping collapses in stored coordinates:
//!
//! * `𝔇` is `d̄_n`, the contraction of the first two slots;
//! * `∂^𝔹` and `∂^T` are `(-1)^n` times the flat tensor differential;
//! * the right `B^e`-action is the flat one;
//! * the left `B`-action by `c` carries `(-1)^{n|c|}`;
//! * the right `T`-action of a stored word `Y` of length `k` on `X` is
//!   `(-1)^{k|X|} X ⊗_B Y`, with `|X|` the internal degree.
//!
//! Total degree is internal degree plus `n`. Every `ΣJ` factor has total
//! degree at least two, so total degree `t` only meets components `n ≤ t/2`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{AlgElement, DGAlgebra, Which};
use crate::field::Scalar;
use crate::homology::{assemble, span_rank, HomologyTable, KeyIndex};
use crate::linalg::{SliceMatrix, Solve};
use crate::report::{Check, ValidationReport};
use crate::tensor::{
    self, bimodule_act, contract, fmt_tensor, glue, jn_basis, jn_decompose, pi_b, tensor_differential, tensor_of,
    JBasisElement, TensorElement, TensorWord,
};

/// A finite sum of components indexed by word length `n`, each stored as a
/// flat tensor of arity `n + P`. `P = 2` gives `𝔹`, `P = 1` gives `T`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graded<const P: usize> {
    comps: BTreeMap<usize, TensorElement>,
}

pub type BBElement = Graded<2>;
pub type TElement = Graded<1>;

impl<const P: usize> Graded<P> {
    pub fn zero() -> Self {
        Graded { comps: BTreeMap::new() }
    }

    /// The element with a single component `n`, given in stored coordinates.
    pub fn from_component(n: usize, t: TensorElement) -> Self {
        assert_eq!(t.arity(), n + P, "component {n} needs arity {}", n + P);
        let mut g = Graded::zero();
        g.add_component(n, &t);
        g
    }

    pub fn component(&self, n: usize) -> Option<&TensorElement> {
        self.comps.get(&n)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &TensorElement)> {
        self.comps.iter().map(|(n, t)| (*n, t))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add_component(&mut self, n: usize, t: &TensorElement) {
        if t.is_zero() {
            return;
        }
        let e = self.comps.entry(n).or_insert_with(|| TensorElement::zero(n + P));
        e.add_assign(t);
        if e.is_zero() {
            self.comps.remove(&n);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (n, t) in &other.comps {
            self.add_component(*n, t);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Graded { comps: self.comps.iter().map(|(n, t)| (*n, t.neg())).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut r = Graded::zero();
        for (n, t) in &self.comps {
            r.add_component(*n, &t.scale(c));
        }
        r
    }

    pub fn signed(self, odd: bool) -> Self {
        if odd {
            self.neg()
        } else {
            self
        }
    }

    /// The common total degree, if homogeneous.
    pub fn total_degree(&self) -> Option<u32> {
        let mut out = None;
        for (n, t) in &self.comps {
            for (w, _) in t.terms() {
                let d = w.degree() + *n as u32;
                match out {
                    None => out = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        out
    }

    /// Flat coordinates keyed by (component, word).
    pub fn column(&self) -> Vec<((usize, TensorWord), Scalar)> {
        self.comps
            .iter()
            .flat_map(|(n, t)| t.terms().map(move |(w, c)| ((*n, w.clone()), c.clone())))
            .collect()
    }

    pub fn fmt(&self, alg: &DGAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self.comps.iter().map(|(n, t)| format!("[n={n}] {}", fmt_tensor(alg, t))).collect();
        parts.join(" ; ")
    }
}

/// `(-1)^{n|b| + Σ_{i=1}^{n-1} (n-i)|τ_i|}`.
pub fn psi_sign(n: usize, b_degree: u32, tau_degrees: &[u32]) -> bool {
    assert_eq!(tau_degrees.len(), n);
    let mut e = n as u64 * b_degree as u64;
    for (i, d) in tau_degrees.iter().enumerate() {
        e += (n - i - 1) as u64 * *d as u64;
    }
    e % 2 == 1
}

pub fn psi_sign_scalar(alg: &DGAlgebra, n: usize, b_degree: u32, tau_degrees: &[u32]) -> Scalar {
    alg.field().one().signed(psi_sign(n, b_degree, tau_degrees))
}

/// `b ⊗_A Στ_1 ⊗_B … ⊗_B Στ_n` for `τ_i ∈ J`, in stored coordinates.
/// Inhomogeneous arguments are expanded into homogeneous parts.
pub fn bb_from_pure(alg: &DGAlgebra, b: &AlgElement, taus: &[TensorElement]) -> BBElement {
    let n = taus.len();
    let mut out = TensorElement::zero(n + 2);
    for (bd, bpart) in b.homogeneous_parts() {
        let head = tensor_of(alg, &[bpart, alg.one()]);
        pure_rec(alg, head, bd, taus, &mut Vec::new(), &mut out);
    }
    BBElement::from_component(n, out)
}

/// `Στ_1 ⊗_B … ⊗_B Στ_n ∈ T`, in stored coordinates. The empty word is `1`.
pub fn t_from_pure(alg: &DGAlgebra, taus: &[TensorElement]) -> TElement {
    let n = taus.len();
    let mut out = TensorElement::zero(n + 1);
    pure_rec(alg, tensor::one_tensor(alg, 1), 0, taus, &mut Vec::new(), &mut out);
    TElement::from_component(n, out)
}

fn pure_rec(
    alg: &DGAlgebra,
    acc: TensorElement,
    b_degree: u32,
    rest: &[TensorElement],
    degs: &mut Vec<u32>,
    out: &mut TensorElement,
) {
    if rest.is_empty() {
        let n = degs.len();
        out.add_assign(&acc.signed(psi_sign(n, b_degree, degs)));
        return;
    }
    for (d, part) in rest[0].homogeneous_parts() {
        degs.push(d);
        pure_rec(alg, glue(alg, &acc, &part), b_degree, &rest[1..], degs, out);
        degs.pop();
    }
}

/// `∂^T`.
pub fn d_t(alg: &DGAlgebra, t: &TElement) -> TElement {
    let mut out = TElement::zero();
    for (n, x) in &t.comps {
        out.add_component(*n, &tensor_differential(alg, x).signed(n % 2 == 1));
    }
    out
}

/// Sign convention for the differential of a suspension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suspension {
    /// `∂^{ΣM}(Σm) = -Σ∂^M(m)`, the convention used throughout.
    Negative,
    /// `∂^{ΣM}(Σm) = Σ∂^M(m)`, kept only so the other choice can be tested.
    Positive,
}

impl std::fmt::Display for Suspension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Suspension::Negative => "d(Sm) = -S(dm)",
            Suspension::Positive => "d(Sm) = +S(dm)",
        })
    }
}

/// `∂^𝔹(b⊗τ) = d(b)⊗τ + (-1)^{|b|} b⊗∂^T(τ)`.
pub fn d_bb(alg: &DGAlgebra, beta: &BBElement) -> BBElement {
    d_bb_with(alg, beta, Suspension::Negative)
}

pub fn d_bb_with(alg: &DGAlgebra, beta: &BBElement, conv: Suspension) -> BBElement {
    let mut out = BBElement::zero();
    for (n, x) in &beta.comps {
        let full = tensor_differential(alg, x);
        let y = match conv {
            Suspension::Negative => full,
            Suspension::Positive => {
                let head = tensor::slot_differential(alg, x, 0);
                head.add(&head).sub(&full)
            }
        };
        out.add_component(*n, &y.signed(n % 2 == 1));
    }
    out
}

/// `𝔇`, induced by the reduced bar differential: component `n` goes to
/// component `n - 1`, and component 0 to zero.
pub fn frak_d(alg: &DGAlgebra, beta: &BBElement) -> BBElement {
    let mut out = BBElement::zero();
    for (n, x) in &beta.comps {
        if *n > 0 {
            out.add_component(n - 1, &contract(alg, x, 0));
        }
    }
    out
}

/// `𝔻 = ∂^𝔹 + 𝔇`.
pub fn dd(alg: &DGAlgebra, beta: &BBElement) -> BBElement {
    dd_with(alg, beta, Suspension::Negative)
}

pub fn dd_with(alg: &DGAlgebra, beta: &BBElement, conv: Suspension) -> BBElement {
    d_bb_with(alg, beta, conv).add(&frak_d(alg, beta))
}

/// Runs `𝔻² = 0` and `𝔇∂^𝔹 = -∂^𝔹𝔇` on every basis element of total
/// degree `≤ max_degree` under each suspension convention and returns the
/// conventions under which both hold.
pub fn suspension_arbiter(alg: &DGAlgebra, max_degree: u32) -> Vec<Suspension> {
    [Suspension::Negative, Suspension::Positive]
        .into_iter()
        .filter(|&conv| {
            (0..=max_degree).into_par_iter().all(|t| {
                bb_basis(alg, t).iter().all(|(n, e)| {
                    let b = bb_basis_element(alg, *n, e);
                    let anti = frak_d(alg, &d_bb_with(alg, &b, conv)) == d_bb_with(alg, &frak_d(alg, &b), conv).neg();
                    anti && dd_with(alg, &dd_with(alg, &b, conv), conv).is_zero()
                })
            })
        })
        .collect()
}

/// `α`: the multiplication map on component 0, zero elsewhere.
pub fn alpha(alg: &DGAlgebra, beta: &BBElement) -> AlgElement {
    beta.component(0).map_or_else(AlgElement::zero, |x| pi_b(alg, x).unwrap())
}

/// The right action of `T` on `𝔹` by concatenation of words.
pub fn t_action(alg: &DGAlgebra, beta: &BBElement, s: &TElement) -> BBElement {
    let mut out = BBElement::zero();
    for (n, x) in &beta.comps {
        for (k, y) in &s.comps {
            for (xd, xp) in x.homogeneous_parts() {
                let odd = (*k as u64 * xd as u64) % 2 == 1;
                out.add_component(n + k, &glue(alg, &xp, y).signed(odd));
            }
        }
    }
    out
}

/// Product in `T`, the same concatenation rule.
pub fn t_multiply(alg: &DGAlgebra, s: &TElement, t: &TElement) -> TElement {
    let mut out = TElement::zero();
    for (n, x) in &s.comps {
        for (k, y) in &t.comps {
            for (xd, xp) in x.homogeneous_parts() {
                let odd = (*k as u64 * xd as u64) % 2 == 1;
                out.add_component(n + k, &glue(alg, &xp, y).signed(odd));
            }
        }
    }
    out
}

/// The right `B^e`-action on `𝔹`.
pub fn bb_act(alg: &DGAlgebra, beta: &BBElement, s: &TensorElement) -> BBElement {
    let mut out = BBElement::zero();
    for (n, x) in &beta.comps {
        out.add_component(*n, &bimodule_act(alg, x, s).unwrap());
    }
    out
}

/// The left `B`-action on `𝔹`: `c·(b⊗τ) = cb⊗τ`.
pub fn bb_left_mul(alg: &DGAlgebra, c: &AlgElement, beta: &BBElement) -> BBElement {
    let mut out = BBElement::zero();
    for (n, x) in &beta.comps {
        for (cd, cp) in c.homogeneous_parts() {
            let odd = (*n as u64 * cd as u64) % 2 == 1;
            out.add_component(*n, &tensor::left_mul(alg, &cp, x).signed(odd));
        }
    }
    out
}

/// The k-basis of `𝔹` in total degree `t`: pairs (component, basis element
/// of `B⊗_A J^{⊗_B n}` at internal degree `t - n`).
pub fn bb_basis(alg: &DGAlgebra, t: u32) -> Vec<(usize, JBasisElement)> {
    graded_basis(alg, t, 2)
}

pub fn t_basis(alg: &DGAlgebra, t: u32) -> Vec<(usize, JBasisElement)> {
    graded_basis(alg, t, 1)
}

fn graded_basis(alg: &DGAlgebra, t: u32, prefix: usize) -> Vec<(usize, JBasisElement)> {
    let mut out = Vec::new();
    for n in 0..=(t as usize / 2) {
        for e in jn_basis(alg, n, prefix, t - n as u32).iter() {
            out.push((n, e.clone()));
        }
    }
    out
}

pub fn bb_basis_element(alg: &DGAlgebra, n: usize, e: &JBasisElement) -> BBElement {
    BBElement::from_component(n, e.flat(alg))
}

pub fn t_basis_element(alg: &DGAlgebra, n: usize, e: &JBasisElement) -> TElement {
    TElement::from_component(n, e.flat(alg))
}

/// Matrix of `𝔻` from total degree `t` to `t - 1` in flat coordinates.
pub fn dd_matrix(alg: &DGAlgebra, t: u32) -> (SliceMatrix, Vec<BBElement>) {
    let src: Vec<BBElement> = bb_basis(alg, t).iter().map(|(n, e)| bb_basis_element(alg, *n, e)).collect();
    let cols: Vec<_> = src.iter().map(|b| dd(alg, b).column()).collect();
    let mut idx = KeyIndex::default();
    (assemble(alg.field(), &cols, &mut idx), src)
}

/// Homology of `(𝔹, 𝔻)` by total degree, reported for degrees `< max_degree`.
pub fn bb_homology(alg: &DGAlgebra, max_degree: u32) -> HomologyTable {
    let (dims, ranks) = bb_dims_ranks(alg, max_degree);
    HomologyTable::from_ranks(&dims, &ranks)
}

fn bb_dims_ranks(alg: &DGAlgebra, max_degree: u32) -> (Vec<usize>, Vec<usize>) {
    let degrees: Vec<u32> = (0..=max_degree).collect();
    let v: Vec<(usize, usize)> = degrees
        .par_iter()
        .map(|&t| {
            let (m, src) = dd_matrix(alg, t);
            (src.len(), m.rank())
        })
        .collect();
    v.into_iter().unzip()
}

/// Homology of `B` by degree, reported for degrees `< max_degree`.
pub fn b_homology(alg: &DGAlgebra, max_degree: u32) -> HomologyTable {
    let mut dims = Vec::new();
    let mut ranks = Vec::new();
    for m in 0..=max_degree {
        let basis = alg.basis_enumerate(Which::B, m);
        dims.push(basis.len());
        let cols: Vec<_> = basis
            .iter()
            .map(|mono| {
                alg.differential_monomial(mono).terms().map(|(k, c)| (k.clone(), c.clone())).collect::<Vec<_>>()
            })
            .collect();
        ranks.push(span_rank(alg.field(), &cols));
    }
    HomologyTable::from_ranks(&dims, &ranks)
}

/// Compares `H(𝔹, 𝔻)` with `H(B)` degree by degree and checks that `α`
/// maps cycles onto homology. Degrees `< max_degree` are decided.
pub fn quasi_iso_check(alg: &DGAlgebra, max_degree: u32) -> (Check, HomologyTable, HomologyTable) {
    let hb = bb_homology(alg, max_degree);
    let h = b_homology(alg, max_degree);
    let mut fails = Vec::new();
    for (rb, r) in hb.rows.iter().zip(&h.rows) {
        if rb.homology != r.homology {
            fails.push(format!("degree {}: dim H(BB) = {}, dim H(B) = {}", r.degree, rb.homology, r.homology));
        }
    }
    for m in 0..max_degree {
        let surj = alpha_image_rank(alg, m);
        let hm = h.homology(m).unwrap();
        if surj != hm {
            fails.push(format!("degree {m}: alpha hits {surj} of {hm} homology classes"));
        }
    }
    let label = format!("degree<={}", max_degree.saturating_sub(1));
    (Check::from_failures("semifree.quasi_isomorphism", label, fails), hb, h)
}

/// The dimension of the image of `α_*: H_m(𝔹) → H_m(B)`.
fn alpha_image_rank(alg: &DGAlgebra, m: u32) -> usize {
    let (dm, src) = dd_matrix(alg, m);
    let cycles = dm.nullspace();
    let alpha_cols: Vec<Vec<_>> = cycles
        .iter()
        .map(|v| {
            let mut z = BBElement::zero();
            for (c, b) in v.iter().zip(&src) {
                if !c.is_zero() {
                    z.add_assign(&b.scale(c));
                }
            }
            alpha(alg, &z).terms().map(|(k, c)| (k.clone(), c.clone())).collect()
        })
        .collect();
    let bd_cols: Vec<Vec<_>> = alg
        .basis_enumerate(Which::B, m + 1)
        .iter()
        .map(|mono| alg.differential_monomial(mono).terms().map(|(k, c)| (k.clone(), c.clone())).collect())
        .collect();
    let mut all = bd_cols.clone();
    all.extend(alpha_cols);
    span_rank(alg.field(), &all) - span_rank(alg.field(), &bd_cols)
}

/// Runs the structural identities of `(𝔹, 𝔻)` on every basis element of
/// total degree `≤ max_degree`, plus sampled action identities.
pub fn check_semifree(alg: &DGAlgebra, max_degree: u32, samples: usize, seed: u64) -> ValidationReport {
    let window = format!("total_degree<={max_degree}");
    let degrees: Vec<u32> = (0..=max_degree).collect();
    let per: Vec<[Vec<String>; 6]> = degrees.par_iter().map(|&t| basis_identities(alg, t)).collect();
    let names = [
        "semifree.dd_squared_zero",
        "semifree.frak_d_anticommutes_with_d_bb",
        "semifree.d_bb_squared_zero",
        "semifree.components_in_subspace",
        "semifree.alpha_chain_map",
        "semifree.frak_d_matches_reduced_bar",
    ];
    let mut report = ValidationReport::default();
    for (k, name) in names.iter().enumerate() {
        let fails: Vec<String> = per.iter().flat_map(|f| f[k].iter().cloned()).collect();
        report.push(Check::from_failures(*name, &window, fails));
    }
    report.push(check_bigrade_e1(alg, max_degree));
    report.push(check_triangular(alg, max_degree));
    report.extend(check_actions(alg, max_degree, samples, seed));
    let (q, _, _) = quasi_iso_check(alg, max_degree);
    report.push(q);
    report
}

fn basis_identities(alg: &DGAlgebra, t: u32) -> [Vec<String>; 6] {
    let mut f: [Vec<String>; 6] = Default::default();
    for (n, e) in bb_basis(alg, t) {
        let b = bb_basis_element(alg, n, &e);
        let label = || b.fmt(alg);
        let d1 = dd(alg, &b);
        if !dd(alg, &d1).is_zero() {
            f[0].push(format!("DD^2({}) != 0", label()));
        }
        let lhs = frak_d(alg, &d_bb(alg, &b));
        let rhs = d_bb(alg, &frak_d(alg, &b)).neg();
        if lhs != rhs {
            f[1].push(label());
        }
        if !d_bb(alg, &d_bb(alg, &b)).is_zero() {
            f[2].push(label());
        }
        for (k, x) in d1.components() {
            if let Err(err) = jn_decompose(alg, x, k, 2) {
                f[3].push(format!("{}: {err}", label()));
            }
        }
        if alpha(alg, &d1) != alg.differential(&alpha(alg, &b)) {
            f[4].push(label());
        }
        // 𝔇 on the pure form b0 ⊗ Σ(c·δ(w_1)) ⊗_B Σδ(w_2) … against d̄_n
        if n >= 1 {
            let slots = e.coef.slots();
            let b0 = AlgElement::from_monomial(slots[0].clone(), alg.field().one());
            let c = AlgElement::from_monomial(slots[1].clone(), alg.field().one());
            let mut taus: Vec<TensorElement> = e
                .ws
                .iter()
                .map(|w| tensor::delta(alg, &AlgElement::from_monomial(w.clone(), alg.field().one())))
                .collect();
            taus[0] = tensor::left_mul(alg, &c, &taus[0]);
            let pure = bb_from_pure(alg, &b0, &taus);
            let degs: Vec<u32> = std::iter::once(slots[1].degree() + e.ws[0].degree())
                .chain(e.ws[1..].iter().map(|w| w.degree()))
                .collect();
            let sign = psi_sign(n, slots[0].degree(), &degs);
            // ψ^{-1} of the pure element is the flat basis element
            if pure != b.clone().signed(sign) {
                f[5].push(format!("psi relabeling mismatch on {}", label()));
            }
            let flat = e.flat(alg);
            let via_bar = crate::bar::reduced_bar_differential(alg, &flat, n).unwrap();
            let got = frak_d(alg, &pure).signed(sign);
            if got != BBElement::from_component(n - 1, via_bar) {
                f[5].push(label());
            }
        }
    }
    f
}

/// The page-one homology of the `n`-filtration: `(𝔹, 𝔇)` has homology `B`
/// in component 0 and none elsewhere.
fn check_bigrade_e1(alg: &DGAlgebra, max_degree: u32) -> Check {
    let mut fails = Vec::new();
    for m in 0..=max_degree {
        let (dims, ranks) = crate::bar::reduced_ranks(alg, m);
        // dims[n+1] = dim of component n at internal degree m
        for n in 0..=(m as usize) {
            let expect = if n == 0 { dims[0] } else { 0 };
            let got = if n == 0 { dims[1] - ranks[1] } else { dims[n + 1] - ranks[n] - ranks[n + 1] };
            if got != expect {
                fails.push(format!("(n,m)=({n},{m}): dim = {got}, expected {expect}"));
            }
        }
    }
    Check::from_failures("semifree.frak_d_homology_is_b", format!("degree<={max_degree}"), fails)
}

/// The free `B^e`-generators `1 ⊗ Σδ(w_1) ⊗_B … ⊗_B Σδ(w_n)` of `𝔹`.
pub fn semifree_generators(alg: &DGAlgebra, t: u32) -> Vec<(usize, BBElement)> {
    let mut out = Vec::new();
    for n in 0..=(t as usize / 2) {
        for e in jn_basis(alg, n, 1, t - n as u32).iter() {
            if !e.coef.slots()[0].is_one() {
                continue;
            }
            let taus: Vec<TensorElement> = e
                .ws
                .iter()
                .map(|w| tensor::delta(alg, &AlgElement::from_monomial(w.clone(), alg.field().one())))
                .collect();
            out.push((n, bb_from_pure(alg, &alg.one(), &taus)));
        }
    }
    out
}

/// Each generator's `𝔻` lies in the `B^e`-span of generators of lower
/// total degree, checked by an exact solve.
fn check_triangular(alg: &DGAlgebra, max_degree: u32) -> Check {
    let mut fails = Vec::new();
    for t in 1..=max_degree {
        let target_cols = lower_span(alg, t - 1);
        for (_, g) in semifree_generators(alg, t) {
            let dg = dd(alg, &g);
            if dg.is_zero() {
                continue;
            }
            let mut idx = KeyIndex::default();
            let m = assemble(alg.field(), &target_cols, &mut idx);
            let rhs_col = dg.column();
            let before = idx.len();
            let mut rhs = vec![alg.field().zero(); before];
            let mut outside = false;
            for (k, c) in rhs_col {
                match idx.get(&k) {
                    Some(i) => rhs[i] = c,
                    None => outside = true,
                }
            }
            if outside || matches!(m.solve(&rhs), Solve::Inconsistent(_)) {
                fails.push(format!("DD({}) not in span of earlier generators", g.fmt(alg)));
            }
        }
    }
    Check::from_failures("semifree.basis_triangular", format!("total_degree<={max_degree}"), fails)
}

/// `g'·(b⊗c)` for generators `g'` of total degree `≤ t` and monomials with
/// total degree exactly `t`.
fn lower_span(alg: &DGAlgebra, t: u32) -> Vec<Vec<((usize, TensorWord), Scalar)>> {
    let mut cols = Vec::new();
    for tg in 0..=t {
        for (_, g) in semifree_generators(alg, tg) {
            for s in tensor::tensor_basis(alg, 2, t - tg).iter() {
                let st = TensorElement::from_word(s.clone(), alg.field().one());
                cols.push(bb_act(alg, &g, &st).column());
            }
        }
    }
    cols
}

/// A random combination of basis elements of total degree `t` drawn from
/// components accepted by `keep`.
fn random_element<const P: usize>(
    alg: &DGAlgebra,
    basis: &[(usize, JBasisElement)],
    rng: &mut ChaCha8Rng,
    keep: impl Fn(usize) -> bool,
) -> Graded<P> {
    let mut out = Graded::<P>::zero();
    let pool: Vec<&(usize, JBasisElement)> = basis.iter().filter(|(n, _)| keep(*n)).collect();
    if pool.is_empty() {
        return out;
    }
    for _ in 0..3 {
        let (n, e) = pool[rng.gen_range(0..pool.len())];
        let c = alg.field().int(rng.gen_range(-3..=3));
        out.add_component(*n, &e.flat(alg).scale(&c));
    }
    out
}

/// Sampled identities for the `B^e`- and `T`-actions:
/// `𝔻(β·s) = 𝔻(β)·s + (-1)^{|β|} β·∂(s)` for `s ∈ B^e` and `s ∈ T`, and
/// `𝔇(β·s) = 𝔇(β)·s` for `s ∈ T`. The `T` identities are sampled on `β`
/// without a component of word length 0: there `𝔇` vanishes while
/// `𝔇(β·s)` need not.
pub fn check_actions(alg: &DGAlgebra, max_degree: u32, samples: usize, seed: u64) -> ValidationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let window = format!("total_degree<={max_degree},samples={samples},seed={seed}");
    let mut f_be = Vec::new();
    let mut f_t = Vec::new();
    let mut f_lin = Vec::new();
    let gens = crate::bar::action_generators(alg);
    for _ in 0..samples {
        // B^e-action
        let tb = rng.gen_range(0..=max_degree);
        let beta: BBElement = random_element(alg, &bb_basis(alg, tb), &mut rng, |_| true);
        let s = &gens[rng.gen_range(0..gens.len())];
        let sd = s.homogeneous_degree().unwrap();
        if tb + sd <= max_degree + 1 {
            let lhs = dd(alg, &bb_act(alg, &beta, s));
            let rhs = bb_act(alg, &dd(alg, &beta), s)
                .add(&bb_act(alg, &beta, &tensor_differential(alg, s)).signed(tb % 2 == 1));
            if lhs != rhs {
                f_be.push(format!("beta = {}, s = {}", beta.fmt(alg), fmt_tensor(alg, s)));
            }
        }
        // T-action, β without a length-0 component
        if max_degree < 4 {
            continue;
        }
        let tb = rng.gen_range(2..=max_degree - 2);
        let ts = rng.gen_range(2..=max_degree - tb);
        let beta: BBElement = random_element(alg, &bb_basis(alg, tb), &mut rng, |n| n >= 1);
        let s: TElement = random_element(alg, &t_basis(alg, ts), &mut rng, |_| true);
        let prod = t_action(alg, &beta, &s);
        let lhs = dd(alg, &prod);
        let rhs = t_action(alg, &dd(alg, &beta), &s).add(&t_action(alg, &beta, &d_t(alg, &s)).signed(tb % 2 == 1));
        if lhs != rhs {
            f_t.push(format!("beta = {}, s = {}", beta.fmt(alg), s.fmt(alg)));
        }
        if frak_d(alg, &prod) != t_action(alg, &frak_d(alg, &beta), &s) {
            f_lin.push(format!("beta = {}, s = {}", beta.fmt(alg), s.fmt(alg)));
        }
    }
    let mut r = ValidationReport::default();
    r.push(Check::from_failures("semifree.leibniz_be_action", &window, f_be));
    r.push(Check::from_failures("semifree.leibniz_t_action", &window, f_t));
    r.push(Check::from_failures("semifree.frak_d_t_linear", &window, f_lin));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;
    use crate::field::Field;
    use crate::fixtures;

    fn el(alg: &DGAlgebra, s: &str) -> AlgElement {
        parse_element(alg, s).unwrap()
    }

    #[test]
    fn psi_examples() {
        assert!(!psi_sign(0, 5, &[]));
        assert!(psi_sign(1, 1, &[7]));
        assert!(psi_sign(2, 0, &[1, 4]));
    }

    #[test]
    fn d_t_examples() {
        let b1 = fixtures::e1(Field::Rationals);
        let de = tensor::delta(&b1, &el(&b1, "e"));
        assert!(d_t(&b1, &t_from_pure(&b1, &[de.clone()])).is_zero());
        let b3 = fixtures::e3(Field::Rationals);
        let de3 = tensor::delta(&b3, &el(&b3, "e"));
        let dy3 = tensor::delta(&b3, &el(&b3, "y"));
        assert_eq!(d_t(&b3, &t_from_pure(&b3, &[de3.clone()])), t_from_pure(&b3, &[dy3.clone()]).neg());
        assert!(d_t(&b1, &t_from_pure(&b1, &[de.clone(), de])).is_zero());
    }

    #[test]
    fn d_bb_examples() {
        let b3 = fixtures::e3(Field::Rationals);
        let x = bb_from_pure(&b3, &el(&b3, "e"), &[]);
        assert_eq!(d_bb(&b3, &x), bb_from_pure(&b3, &el(&b3, "y"), &[]));
        let de3 = tensor::delta(&b3, &el(&b3, "e"));
        let dy3 = tensor::delta(&b3, &el(&b3, "y"));
        let one = b3.one();
        assert_eq!(d_bb(&b3, &bb_from_pure(&b3, &one, &[de3])), bb_from_pure(&b3, &one, &[dy3]).neg());
        let b1 = fixtures::e1(Field::Rationals);
        let de = tensor::delta(&b1, &el(&b1, "e"));
        assert!(d_bb(&b1, &bb_from_pure(&b1, &el(&b1, "e"), &[de])).is_zero());
    }

    #[test]
    fn frak_d_examples() {
        let b1 = fixtures::e1(Field::Rationals);
        let e = el(&b1, "e");
        let de = tensor::delta(&b1, &e);
        let r = frak_d(&b1, &bb_from_pure(&b1, &b1.one(), &[de.clone()]));
        assert_eq!(r, BBElement::from_component(0, de.clone()));
        assert!(frak_d(&b1, &bb_from_pure(&b1, &e, &[])).is_zero());
        let r = frak_d(&b1, &bb_from_pure(&b1, &e, &[de.clone()]));
        let ee = tensor_of(&b1, &[e.clone(), e.clone()]);
        assert_eq!(r, BBElement::from_component(0, ee.neg()));
        let r = dd(&b1, &bb_from_pure(&b1, &b1.one(), &[de.clone()]));
        assert_eq!(r, BBElement::from_component(0, de.clone()));
        assert!(dd(&b1, &bb_from_pure(&b1, &b1.one(), &[])).is_zero());
    }

    #[test]
    fn alpha_examples() {
        let b1 = fixtures::e1(Field::Rationals);
        let e = el(&b1, "e");
        let de = tensor::delta(&b1, &e);
        assert_eq!(alpha(&b1, &bb_from_pure(&b1, &e, &[])), e);
        let g = bb_from_pure(&b1, &b1.one(), &[de]);
        assert!(alpha(&b1, &g).is_zero());
        assert!(alpha(&b1, &dd(&b1, &g)).is_zero());
    }

    #[test]
    fn t_action_examples() {
        let b1 = fixtures::e1(Field::Rationals);
        let de = tensor::delta(&b1, &el(&b1, "e"));
        let one_t = t_from_pure(&b1, &[]);
        let beta = bb_from_pure(&b1, &el(&b1, "e"), &[de.clone()]);
        assert_eq!(t_action(&b1, &beta, &one_t), beta);
        let unit = bb_from_pure(&b1, &b1.one(), &[]);
        let s = t_from_pure(&b1, &[de.clone()]);
        assert_eq!(t_action(&b1, &unit, &s), bb_from_pure(&b1, &b1.one(), &[de]));
    }

    #[test]
    fn t_action_concatenates_pure_words() {
        let b3 = fixtures::e3(Field::Rationals);
        let de = tensor::delta(&b3, &el(&b3, "e"));
        let dy = tensor::delta(&b3, &el(&b3, "y*e"));
        let b = el(&b3, "e");
        let beta = bb_from_pure(&b3, &b, &[de.clone()]);
        let s = t_from_pure(&b3, &[dy.clone(), de.clone()]);
        assert_eq!(t_action(&b3, &beta, &s), bb_from_pure(&b3, &b, &[de.clone(), dy, de]));
    }

    #[test]
    fn small_structure_checks() {
        for alg in [fixtures::e1(Field::Rationals), fixtures::e2(Field::Rationals), fixtures::e3(Field::Rationals)] {
            let r = check_semifree(&alg, 5, 20, 7);
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn t_linearity_fails_on_length_zero() {
        let b1 = fixtures::e1(Field::Rationals);
        let de = tensor::delta(&b1, &el(&b1, "e"));
        let beta = bb_from_pure(&b1, &b1.one(), &[]);
        let s = t_from_pure(&b1, &[de]);
        assert!(frak_d(&b1, &beta).is_zero());
        assert!(!frak_d(&b1, &t_action(&b1, &beta, &s)).is_zero());
    }

    #[test]
    fn only_negative_suspension_works_with_a_differential() {
        let b3 = fixtures::e3(Field::Rationals);
        assert_eq!(suspension_arbiter(&b3, 6), vec![Suspension::Negative]);
        // with d = 0 the sign is invisible
        let b1 = fixtures::e1(Field::Rationals);
        assert_eq!(suspension_arbiter(&b1, 6).len(), 2);
    }

    #[test]
    fn homology_of_b() {
        let h = b_homology(&fixtures::e3(Field::Rationals), 9);
        assert_eq!(h.homology(0), Some(1));
        assert!((1..=8).all(|m| h.homology(m) == Some(0)));
        let h = b_homology(&fixtures::e1(Field::Rationals), 6);
        assert_eq!((0..6).map(|m| h.homology(m).unwrap()).collect::<Vec<_>>(), [1, 1, 0, 0, 0, 0]);
        let h = b_homology(&fixtures::e2(Field::Rationals), 8);
        assert!((0..8).all(|m| h.homology(m) == Some(if m % 2 == 0 { 1 } else { 0 })));
    }
}
