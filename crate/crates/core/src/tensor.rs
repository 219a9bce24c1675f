//! Elements of `B^{⊗_A m}`, the enveloping algebra `B^e`, the diagonal
//! ideal `J` and the universal derivation `δ`.
//!
//! Since `B` is free over `A` on the extension monomials, `B^{⊗_A m}` has the
//! k-basis of words `u_1⊗…⊗u_m` with `u_1` any monomial and `u_2,…,u_m`
//! monomials in the extension generators only. Every word is brought to
//! this normal form by sliding base factors to the left; no Koszul sign
//! arises because the tensor symbol has degree zero.
//!
//! `J^{⊗_B n}` sits inside `B^{⊗_A (n+1)}` and is free as a left `B`-module
//! on the words `δ(w_1)⊗_B…⊗_B δ(w_n)` with `w_i` nontrivial extension
//! monomials. Expanding such a word, the only term whose last `n` slots are
//! all nontrivial is `1⊗w_1⊗…⊗w_n`, so left coordinates can be read off
//! directly from the flat coordinates.

use std::collections::BTreeMap;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::algebra::{fmt_sum, AlgElement, DGAlgebra, Monomial, Sign, Which};
use crate::error::{Error, Result};
use crate::field::Scalar;

pub type Slots = SmallVec<[Monomial; 4]>;

/// A normalized word `u_1⊗…⊗u_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorWord {
    slots: Slots,
}

impl TensorWord {
    pub fn slots(&self) -> &[Monomial] {
        &self.slots
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    pub fn degree(&self) -> u32 {
        self.slots.iter().map(Monomial::degree).sum()
    }
}

/// A finite linear combination of normalized words of a fixed arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<TensorWord, Scalar>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement { arity, terms: BTreeMap::new() }
    }

    pub fn from_word(word: TensorWord, c: Scalar) -> Self {
        let mut t = TensorElement::zero(word.arity());
        t.add_term(word, c);
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &TensorWord) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn add_term(&mut self, w: TensorWord, c: Scalar) {
        debug_assert_eq!(w.arity(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &TensorElement) {
        assert_eq!(self.arity, other.arity, "adding tensors of different arity");
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &Scalar) {
        assert_eq!(self.arity, other.arity, "adding tensors of different arity");
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.arity, other.arity, "subtracting tensors of different arity");
        let mut r = self.clone();
        for (w, c) in &other.terms {
            r.add_term(w.clone(), -c);
        }
        r
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut r = TensorElement::zero(self.arity);
        for (w, a) in &self.terms {
            r.add_term(w.clone(), a * c);
        }
        r
    }

    pub fn neg(&self) -> TensorElement {
        let mut r = self.clone();
        for c in r.terms.values_mut() {
            *c = -c.clone();
        }
        r
    }

    pub fn signed(self, odd: bool) -> TensorElement {
        if odd {
            self.neg()
        } else {
            self
        }
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(TensorWord::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<u32, TensorElement> {
        let mut out: BTreeMap<u32, TensorElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.degree())
                .or_insert_with(|| TensorElement::zero(self.arity))
                .add_term(w.clone(), c.clone());
        }
        out
    }
}

/// Brings a raw word to normal form, returning the sign picked up by the base
/// factor products, or `None` if the word vanishes.
pub fn normalize(alg: &DGAlgebra, mut slots: Slots) -> Option<(Sign, TensorWord)> {
    let mut odd = false;
    for i in (1..slots.len()).rev() {
        if alg.is_ext_monomial(&slots[i]) {
            continue;
        }
        let (a, x) = alg.split_base(&slots[i]);
        slots[i] = x;
        let (s, m) = alg.mono_mul(&slots[i - 1], &a)?;
        odd ^= s.is_minus();
        slots[i - 1] = m;
    }
    Some((Sign::from_odd(odd), TensorWord { slots }))
}

/// Adds `c` times the raw word `slots` to `t`.
pub fn add_raw(alg: &DGAlgebra, t: &mut TensorElement, slots: Slots, c: Scalar) {
    if let Some((s, w)) = normalize(alg, slots) {
        t.add_term(w, c.signed(s.is_minus()));
    }
}

pub fn word(alg: &DGAlgebra, slots: &[Monomial]) -> TensorElement {
    let mut t = TensorElement::zero(slots.len());
    add_raw(alg, &mut t, slots.into(), alg.field().one());
    t
}

/// `u_1⊗…⊗u_m` for algebra elements, expanded multilinearly.
pub fn tensor_of(alg: &DGAlgebra, factors: &[AlgElement]) -> TensorElement {
    let mut out = TensorElement::zero(factors.len());
    let mut stack: Vec<(Slots, Scalar)> = vec![(Slots::new(), alg.field().one())];
    for f in factors {
        let mut next = Vec::new();
        for (slots, c) in &stack {
            for (m, a) in f.terms() {
                let mut s = slots.clone();
                s.push(m.clone());
                next.push((s, c * a));
            }
        }
        stack = next;
    }
    for (slots, c) in stack {
        add_raw(alg, &mut out, slots, c);
    }
    out
}

pub fn one_tensor(alg: &DGAlgebra, arity: usize) -> TensorElement {
    word(alg, &vec![alg.one_monomial(); arity])
}

/// Slotwise product with sign `(-1)^{Σ_{i<j} |v_i||u_j|}`.
pub fn tensor_multiply(alg: &DGAlgebra, s: &TensorElement, t: &TensorElement) -> Result<TensorElement> {
    if s.arity != t.arity {
        return Err(Error::LengthMismatch { expected: s.arity, found: t.arity });
    }
    let mut out = TensorElement::zero(s.arity);
    for (u, a) in &s.terms {
        for (v, b) in &t.terms {
            if let Some((odd, slots)) = word_product(alg, u, v) {
                add_raw(alg, &mut out, slots, (a * b).signed(odd));
            }
        }
    }
    Ok(out)
}

fn word_product(alg: &DGAlgebra, u: &TensorWord, v: &TensorWord) -> Option<(bool, Slots)> {
    let mut odd = false;
    let mut v_before = false;
    let mut slots = Slots::with_capacity(u.arity());
    for j in 0..u.arity() {
        if v_before && u.slots[j].is_odd() {
            odd = !odd;
        }
        let (s, m) = alg.mono_mul(&u.slots[j], &v.slots[j])?;
        odd ^= s.is_minus();
        slots.push(m);
        v_before ^= v.slots[j].is_odd();
    }
    Some((odd, slots))
}

/// `∂(u_1⊗…⊗u_m) = Σ_i (-1)^{|u_1|+…+|u_{i-1}|} u_1⊗…⊗d(u_i)⊗…⊗u_m`.
pub fn tensor_differential(alg: &DGAlgebra, t: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(t.arity);
    for (w, c) in &t.terms {
        let mut odd = false;
        for i in 0..w.arity() {
            let du = alg.differential_monomial(&w.slots[i]);
            for (m, a) in du.terms() {
                let mut slots = w.slots.clone();
                slots[i] = m.clone();
                add_raw(alg, &mut out, slots, (c * a).signed(odd));
            }
            odd ^= w.slots[i].is_odd();
        }
    }
    out
}

/// The summand of the tensor differential that differentiates slot `i`.
pub fn slot_differential(alg: &DGAlgebra, t: &TensorElement, i: usize) -> TensorElement {
    let mut out = TensorElement::zero(t.arity);
    for (w, c) in &t.terms {
        let odd = w.slots[..i].iter().filter(|m| m.is_odd()).count() % 2 == 1;
        for (m, a) in alg.differential_monomial(&w.slots[i]).terms() {
            let mut slots = w.slots.clone();
            slots[i] = m.clone();
            add_raw(alg, &mut out, slots, (c * a).signed(odd));
        }
    }
    out
}

/// `b·t`: multiplication into the first slot.
pub fn left_mul(alg: &DGAlgebra, b: &AlgElement, t: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(t.arity);
    for (m, a) in b.terms() {
        for (w, c) in &t.terms {
            if let Some((s, p)) = alg.mono_mul(m, &w.slots[0]) {
                let mut slots = w.slots.clone();
                slots[0] = p;
                add_raw(alg, &mut out, slots, (a * c).signed(s.is_minus()));
            }
        }
    }
    out
}

/// `t·b`: multiplication into the last slot.
pub fn right_mul(alg: &DGAlgebra, t: &TensorElement, b: &AlgElement) -> TensorElement {
    let mut out = TensorElement::zero(t.arity);
    let last = t.arity - 1;
    for (w, c) in &t.terms {
        for (m, a) in b.terms() {
            if let Some((s, p)) = alg.mono_mul(&w.slots[last], m) {
                let mut slots = w.slots.clone();
                slots[last] = p;
                add_raw(alg, &mut out, slots, (a * c).signed(s.is_minus()));
            }
        }
    }
    out
}

/// The right `B^e`-action on `B^{⊗_A m}`: `t·(b⊗b')` multiplies `b` into the
/// first slot with sign `(-1)^{|b|(|u_2|+…+|u_m|)}` and `b'` into the last.
pub fn bimodule_act(alg: &DGAlgebra, t: &TensorElement, s: &TensorElement) -> Result<TensorElement> {
    if s.arity != 2 {
        return Err(Error::LengthMismatch { expected: 2, found: s.arity });
    }
    if t.arity < 2 {
        return Err(Error::LengthMismatch { expected: 2, found: t.arity });
    }
    let mut wide = TensorElement::zero(t.arity);
    for (w, c) in &s.terms {
        let mut slots: Slots = SmallVec::from_elem(alg.one_monomial(), t.arity);
        slots[0] = w.slots[0].clone();
        slots[t.arity - 1] = w.slots[1].clone();
        add_raw(alg, &mut wide, slots, c.clone());
    }
    tensor_multiply(alg, t, &wide)
}

/// Merges slots `i` and `i+1` by multiplication.
pub fn contract(alg: &DGAlgebra, t: &TensorElement, i: usize) -> TensorElement {
    assert!(i + 1 < t.arity, "contracting past the last slot");
    let mut out = TensorElement::zero(t.arity - 1);
    for (w, c) in &t.terms {
        if let Some((s, p)) = alg.mono_mul(&w.slots[i], &w.slots[i + 1]) {
            let mut slots = w.slots.clone();
            slots.remove(i + 1);
            slots[i] = p;
            add_raw(alg, &mut out, slots, c.clone().signed(s.is_minus()));
        }
    }
    out
}

/// The multiplication map `B^e → B`.
pub fn pi_b(alg: &DGAlgebra, t: &TensorElement) -> Result<AlgElement> {
    if t.arity != 2 {
        return Err(Error::LengthMismatch { expected: 2, found: t.arity });
    }
    Ok(to_alg(&contract(alg, t, 0)))
}

/// Reads an arity-one tensor as an algebra element.
pub fn to_alg(t: &TensorElement) -> AlgElement {
    assert_eq!(t.arity, 1);
    let mut out = AlgElement::zero();
    for (w, c) in &t.terms {
        out.add_term(w.slots[0].clone(), c.clone());
    }
    out
}

pub fn from_alg(b: &AlgElement) -> TensorElement {
    let mut out = TensorElement::zero(1);
    for (m, c) in b.terms() {
        out.add_term(TensorWord { slots: SmallVec::from_elem(m.clone(), 1) }, c.clone());
    }
    out
}

/// The universal derivation `δ(b) = 1⊗b − b⊗1`.
pub fn delta(alg: &DGAlgebra, b: &AlgElement) -> TensorElement {
    let one = alg.one();
    tensor_of(alg, &[one.clone(), b.clone()]).sub(&tensor_of(alg, &[b.clone(), one]))
}

/// `x ⊗_B y`: the last slot of `x` is multiplied with the first slot of `y`.
pub fn glue(alg: &DGAlgebra, x: &TensorElement, y: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(x.arity + y.arity - 1);
    let last = x.arity - 1;
    for (u, a) in &x.terms {
        for (v, b) in &y.terms {
            if let Some((s, p)) = alg.mono_mul(&u.slots[last], &v.slots[0]) {
                let mut slots: Slots = u.slots[..last].iter().cloned().collect();
                slots.push(p);
                slots.extend(v.slots[1..].iter().cloned());
                add_raw(alg, &mut out, slots, (a * b).signed(s.is_minus()));
            }
        }
    }
    out
}

/// `δ(w_1)⊗_B…⊗_B δ(w_n)` for extension monomials `w_i`; `1` when `n = 0`.
pub fn delta_word(alg: &DGAlgebra, ws: &[Monomial]) -> Arc<TensorElement> {
    alg.caches.delta_word.get_or_insert_with(&ws.to_vec(), || {
        let mut acc = one_tensor(alg, 1);
        for w in ws {
            let d = delta(alg, &AlgElement::from_monomial(w.clone(), alg.field().one()));
            acc = glue(alg, &acc, &d);
        }
        acc
    })
}

/// Coordinates of an element of `P ⊗_B J^{⊗_B n}` for `P = B^{⊗_A p}`, in
/// the basis `δ(w_1)⊗_B…⊗_B δ(w_n)`. For `p = 1` these are the left
/// `B`-coordinates of an element of `J^{⊗_B n}`; for `p = 2` the
/// `B⊗_A B`-coordinates of an element of `B⊗_A J^{⊗_B n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JnView {
    pub n: usize,
    pub prefix: usize,
    pub coords: BTreeMap<Vec<Monomial>, TensorElement>,
}

impl JnView {
    /// The left coefficient at `ws`, for `prefix = 1`.
    pub fn left_coord(&self, ws: &[Monomial]) -> AlgElement {
        assert_eq!(self.prefix, 1);
        self.coords.get(ws).map(to_alg).unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Reads off the δ-coordinates of `t` without checking membership.
pub fn jn_coords(alg: &DGAlgebra, t: &TensorElement, n: usize, prefix: usize) -> Result<JnView> {
    if t.arity != n + prefix {
        return Err(Error::LengthMismatch { expected: n + prefix, found: t.arity });
    }
    let mut coords: BTreeMap<Vec<Monomial>, TensorElement> = BTreeMap::new();
    for (w, c) in &t.terms {
        let tail = &w.slots[prefix..];
        if tail.iter().any(Monomial::is_one) {
            continue;
        }
        let head = TensorWord { slots: w.slots[..prefix].iter().cloned().collect() };
        coords
            .entry(tail.to_vec())
            .or_insert_with(|| TensorElement::zero(prefix))
            .add_term(head, c.clone());
    }
    let _ = alg;
    Ok(JnView { n, prefix, coords })
}

/// `Σ coeff ⊗_B δ(w_1)⊗_B…⊗_B δ(w_n)` in flat coordinates.
pub fn jn_reconstruct(alg: &DGAlgebra, view: &JnView) -> TensorElement {
    let mut out = TensorElement::zero(view.n + view.prefix);
    for (ws, coeff) in &view.coords {
        out.add_assign(&glue(alg, coeff, &delta_word(alg, ws)));
    }
    out
}

/// Decomposes `t` into δ-coordinates, failing with `NotInJn` when `t` is not
/// in `P ⊗_B J^{⊗_B n}`.
pub fn jn_decompose(alg: &DGAlgebra, t: &TensorElement, n: usize, prefix: usize) -> Result<JnView> {
    let view = jn_coords(alg, t, n, prefix)?;
    let back = jn_reconstruct(alg, &view);
    let diff = t.sub(&back);
    if let Some((w, c)) = diff.terms().next() {
        return Err(Error::NotInJn {
            n,
            detail: format!("residual term {} * {}", c, fmt_word(alg, w)),
        });
    }
    Ok(view)
}

/// `κ_n`: left coordinates to flat coordinates.
pub fn kappa_n(alg: &DGAlgebra, view: &JnView) -> TensorElement {
    assert_eq!(view.prefix, 1);
    jn_reconstruct(alg, view)
}

pub fn kappa_n_inverse(alg: &DGAlgebra, t: &TensorElement, n: usize) -> Result<JnView> {
    jn_decompose(alg, t, n, 1)
}

/// Membership in `J^{⊗_B n}`, with the coordinates as certificate.
pub fn jn_membership(alg: &DGAlgebra, t: &TensorElement, n: usize) -> (bool, Option<JnView>) {
    match jn_decompose(alg, t, n, 1) {
        Ok(v) => (true, Some(v)),
        Err(_) => (false, None),
    }
}

/// The k-basis of normalized words of arity `m` and degree `d`.
pub fn tensor_basis(alg: &DGAlgebra, m: usize, d: u32) -> Arc<Vec<TensorWord>> {
    alg.caches.tensor_basis.get_or_insert_with(&(m, d), || {
        let mut out = Vec::new();
        let mut slots = Slots::new();
        tensor_basis_rec(alg, m, d, &mut slots, &mut out);
        out.sort();
        out
    })
}

fn tensor_basis_rec(alg: &DGAlgebra, m: usize, left: u32, slots: &mut Slots, out: &mut Vec<TensorWord>) {
    if slots.len() == m {
        if left == 0 {
            out.push(TensorWord { slots: slots.clone() });
        }
        return;
    }
    let which = if slots.is_empty() { Which::B } else { Which::Ext };
    for d in 0..=left {
        for mono in alg.basis_enumerate(which, d).iter() {
            slots.push(mono.clone());
            tensor_basis_rec(alg, m, left - d, slots, out);
            slots.pop();
        }
    }
}

/// A basis element `coef ⊗_B δ(w_1)⊗_B…⊗_B δ(w_n)` of `P ⊗_B J^{⊗_B n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JBasisElement {
    pub coef: TensorWord,
    pub ws: Vec<Monomial>,
}

impl JBasisElement {
    pub fn flat(&self, alg: &DGAlgebra) -> TensorElement {
        let c = TensorElement::from_word(self.coef.clone(), alg.field().one());
        glue(alg, &c, &delta_word(alg, &self.ws))
    }

    /// The unique term of the expansion with all δ-slots nontrivial.
    pub fn leading_word(&self) -> TensorWord {
        let mut slots = self.coef.slots.clone();
        slots.extend(self.ws.iter().cloned());
        TensorWord { slots }
    }
}

/// The k-basis of the degree-`d` part of `B^{⊗_A p} ⊗_B J^{⊗_B n}`.
pub fn jn_basis(alg: &DGAlgebra, n: usize, prefix: usize, d: u32) -> Arc<Vec<JBasisElement>> {
    alg.caches.jn_basis.get_or_insert_with(&(n, prefix, d), || {
        let mut out = Vec::new();
        for word in tensor_basis(alg, prefix + n, d).iter() {
            let tail = &word.slots[prefix..];
            if tail.iter().any(Monomial::is_one) {
                continue;
            }
            out.push(JBasisElement {
                coef: TensorWord { slots: word.slots[..prefix].iter().cloned().collect() },
                ws: tail.to_vec(),
            });
        }
        out
    })
}

pub fn fmt_word(alg: &DGAlgebra, w: &TensorWord) -> String {
    let parts: Vec<String> = w.slots.iter().map(|m| alg.fmt_monomial(m)).collect();
    parts.join("|")
}

pub fn fmt_tensor(alg: &DGAlgebra, t: &TensorElement) -> String {
    fmt_sum(t.terms.iter().map(|(w, c)| (c, fmt_word(alg, w))))
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

    fn t2(alg: &DGAlgebra, a: &str, b: &str) -> TensorElement {
        tensor_of(alg, &[el(alg, a), el(alg, b)])
    }

    #[test]
    fn multiply_examples() {
        let b = fixtures::e1(Field::Rationals);
        let p = tensor_multiply(&b, &t2(&b, "e", "1"), &t2(&b, "1", "e")).unwrap();
        assert_eq!(p, t2(&b, "e", "e"));
        let p = tensor_multiply(&b, &t2(&b, "1", "e"), &t2(&b, "e", "1")).unwrap();
        assert_eq!(p, t2(&b, "e", "e").neg());
        let b2 = fixtures::e2(Field::Rationals);
        let p = tensor_multiply(&b2, &t2(&b2, "1", "x"), &t2(&b2, "x", "1")).unwrap();
        assert_eq!(p, t2(&b2, "x", "x"));
        let three = one_tensor(&b, 3);
        assert_eq!(
            tensor_multiply(&b, &three, &t2(&b, "1", "1")),
            Err(Error::LengthMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn differential_examples() {
        let b = fixtures::e3(Field::Rationals);
        assert_eq!(tensor_differential(&b, &t2(&b, "e", "1")), t2(&b, "y", "1"));
        let expect = t2(&b, "y", "e").sub(&t2(&b, "e", "y"));
        assert_eq!(tensor_differential(&b, &t2(&b, "e", "e")), expect);
        assert!(tensor_differential(&b, &one_tensor(&b, 2)).is_zero());
    }

    #[test]
    fn base_factors_slide_left() {
        let b = fixtures::e3(Field::Rationals);
        // e ⊗_A y = e*y ⊗ 1 = y*e ⊗ 1
        assert_eq!(t2(&b, "e", "y"), t2(&b, "y*e", "1"));
        assert_eq!(fmt_tensor(&b, &t2(&b, "1", "y*e")), "y|e");
    }

    #[test]
    fn pi_b_and_delta() {
        let b = fixtures::e1(Field::Rationals);
        assert_eq!(pi_b(&b, &t2(&b, "e", "1")).unwrap(), el(&b, "e"));
        let de = delta(&b, &el(&b, "e"));
        assert_eq!(de, t2(&b, "1", "e").sub(&t2(&b, "e", "1")));
        assert!(pi_b(&b, &de).unwrap().is_zero());
        assert!(delta(&b, &b.one()).is_zero());
        let b2 = fixtures::e2(Field::Rationals);
        assert_eq!(pi_b(&b2, &t2(&b2, "x", "x")).unwrap(), el(&b2, "x^2"));
        let x = el(&b2, "x");
        let dx = delta(&b2, &x);
        let lhs = delta(&b2, &el(&b2, "x^2"));
        let rhs = right_mul(&b2, &dx, &x).add(&left_mul(&b2, &x, &dx));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kappa_examples() {
        let b = fixtures::e1(Field::Rationals);
        let e = b.basis_enumerate(Which::ExtBar, 1)[0].clone();
        let mut view = JnView { n: 1, prefix: 1, coords: BTreeMap::new() };
        view.coords.insert(vec![e.clone()], one_tensor(&b, 1));
        assert_eq!(kappa_n(&b, &view), delta(&b, &el(&b, "e")));

        let b2 = fixtures::e2(Field::Rationals);
        let x = b2.basis_enumerate(Which::ExtBar, 2)[0].clone();
        let dx = delta(&b2, &el(&b2, "x"));
        let t = glue(&b2, &dx, &dx);
        let v = kappa_n_inverse(&b2, &t, 2).unwrap();
        assert_eq!(v.coords.len(), 1);
        assert_eq!(v.left_coord(&[x.clone(), x]), b2.one());

        let u = el(&b2, "x^2 + 1");
        let v0 = kappa_n_inverse(&b2, &from_alg(&u), 0).unwrap();
        assert_eq!(v0.left_coord(&[]), u);
    }

    #[test]
    fn membership() {
        let b = fixtures::e1(Field::Rationals);
        assert!(jn_membership(&b, &delta(&b, &el(&b, "e")), 1).0);
        assert!(!jn_membership(&b, &one_tensor(&b, 2), 1).0);
        let b3 = fixtures::e3(Field::Rationals);
        assert!(!jn_membership(&b3, &t2(&b3, "1", "e"), 1).0);
    }

    #[test]
    fn bimodule_action_sign() {
        let b = fixtures::e1(Field::Rationals);
        let t = word(&b, &[b.one_monomial(), b.gen_monomial(0), b.one_monomial()]);
        let r = bimodule_act(&b, &t, &one_tensor(&b, 2)).unwrap();
        assert_eq!(r, t);
        let r = bimodule_act(&b, &t, &t2(&b, "e", "1")).unwrap();
        let ee1 = word(&b, &[b.gen_monomial(0), b.gen_monomial(0), b.one_monomial()]);
        assert_eq!(r, ee1.neg());
        let b2 = fixtures::e2(Field::Rationals);
        let x = b2.gen_monomial(0);
        let one = b2.one_monomial();
        let t = word(&b2, &[one.clone(), x.clone(), one.clone()]);
        let r = bimodule_act(&b2, &t, &t2(&b2, "1", "x")).unwrap();
        assert_eq!(r, word(&b2, &[one, x.clone(), x]));
    }
}
