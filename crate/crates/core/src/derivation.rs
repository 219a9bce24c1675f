//! `A`-derivations `B → L` and `B^e`-linear maps `J → L`, and the
//! correspondence `η(f) = f∘δ` between them.
//!
//! The target `L` is always `B^{⊗_A k}` for some `k ≥ 2`, with `B` acting on
//! the left through the first slot and on the right through the last. Both
//! kinds of map have degree 0 and are stored as tables up to a degree
//! cutoff: a derivation by its values on the monomial basis of `B`, a
//! `J`-linear map by its values on the basis `c·δ(w)` of `J`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgElement, DGAlgebra, Monomial, Which};
use crate::bar::nj_kernel_basis;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::homology::{assemble, KeyIndex};
use crate::report::{Check, ValidationReport};
use crate::tensor::{self, fmt_tensor, jn_basis, jn_decompose, left_mul, right_mul, tensor_basis, TensorElement, TensorWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTable {
    pub arity: usize,
    pub max_degree: u32,
    pub images: BTreeMap<Monomial, TensorElement>,
}

impl DerivationTable {
    pub fn zero(alg: &DGAlgebra, arity: usize, max_degree: u32) -> Self {
        let mut images = BTreeMap::new();
        for d in 0..=max_degree {
            for m in alg.basis_enumerate(Which::B, d).iter() {
                images.insert(m.clone(), TensorElement::zero(arity));
            }
        }
        DerivationTable { arity, max_degree, images }
    }

    /// The universal derivation `δ: B → J ⊆ B^e`.
    pub fn universal(alg: &DGAlgebra, max_degree: u32) -> Self {
        let mut t = DerivationTable::zero(alg, 2, max_degree);
        for (m, v) in t.images.iter_mut() {
            *v = tensor::delta(alg, &AlgElement::from_monomial(m.clone(), alg.field().one()));
        }
        t
    }

    pub fn apply(&self, b: &AlgElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero(self.arity);
        for (m, c) in b.terms() {
            let v = self
                .images
                .get(m)
                .ok_or(Error::WindowIncomplete { requested: m.degree() as i64, window: self.max_degree as i64 })?;
            out.add_scaled(v, c);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.images.values().all(TensorElement::is_zero)
    }

    /// `D(a) = 0` on the base generators and `D(m·g) = D(m)·g + m·D(g)` for
    /// every monomial `m` and generator `g` inside the cutoff. Together these
    /// give `A`-linearity and the derivation law on all products in range.
    pub fn validate(&self, alg: &DGAlgebra) -> Check {
        let window = format!("degree<={}", self.max_degree);
        let fails: Vec<String> = leibniz_residuals(alg, self.max_degree)
            .into_iter()
            .filter_map(|r| {
                let v = r.eval(alg, self.arity, |m| self.images[m].clone());
                (!v.is_zero()).then(|| format!("{}: residual {}", r.label(alg), fmt_tensor(alg, &v)))
            })
            .collect();
        Check::from_failures("derivation.leibniz", window, fails)
    }

    /// Extends values on the generators by `D(m·g) = D(m)·g + m·D(g)`,
    /// peeling off the last generator of each monomial. Generators missing
    /// from `gens` map to zero. No consistency is enforced; a table built
    /// from incompatible values fails [`DerivationTable::validate`].
    pub fn from_generators(
        alg: &DGAlgebra,
        arity: usize,
        max_degree: u32,
        gens: &BTreeMap<usize, TensorElement>,
    ) -> Self {
        let mut t = DerivationTable::zero(alg, arity, max_degree);
        let one = alg.field().one();
        for d in 1..=max_degree {
            for m in alg.basis_enumerate(Which::B, d).iter() {
                let i = m.exponents().iter().rposition(|&e| e > 0).unwrap();
                let g = alg.gen_monomial(i);
                let mut exps = m.exponents().to_vec();
                exps[i] -= 1;
                let rest = alg.monomial(&exps).unwrap().unwrap();
                let (s, p) = alg.mono_mul(&rest, &g).unwrap();
                debug_assert_eq!(&p, m);
                let dg = gens.get(&i).cloned().unwrap_or_else(|| TensorElement::zero(arity));
                let ge = AlgElement::from_monomial(g, one.clone());
                let re = AlgElement::from_monomial(rest.clone(), one.clone());
                let v = right_mul(alg, &t.images[&rest], &ge).add(&left_mul(alg, &re, &dg));
                t.images.insert(m.clone(), v.scale(&s.to_scalar(alg.field())));
            }
        }
        t
    }

    pub fn scale_add(&mut self, other: &DerivationTable, c: &Scalar) {
        for (m, v) in other.images.iter() {
            self.images.get_mut(m).unwrap().add_scaled(v, c);
        }
    }
}

/// One instance of the derivation law: `D(m·g) - D(m)·g - m·D(g)`, or
/// `D(a)` for a base generator `a` (and `D(1)`).
struct Residual {
    m: Monomial,
    g: Option<Monomial>,
}

impl Residual {
    fn eval(&self, alg: &DGAlgebra, arity: usize, d: impl Fn(&Monomial) -> TensorElement) -> TensorElement {
        let Some(g) = &self.g else { return d(&self.m) };
        let mut out = TensorElement::zero(arity);
        if let Some((s, p)) = alg.mono_mul(&self.m, g) {
            out.add_scaled(&d(&p), &s.to_scalar(alg.field()));
        }
        let ge = AlgElement::from_monomial(g.clone(), alg.field().one());
        let me = AlgElement::from_monomial(self.m.clone(), alg.field().one());
        out.sub(&right_mul(alg, &d(&self.m), &ge)).sub(&left_mul(alg, &me, &d(g)))
    }

    fn label(&self, alg: &DGAlgebra) -> String {
        match &self.g {
            None => format!("D({})", alg.fmt_monomial(&self.m)),
            Some(g) => format!("D({}*{})", alg.fmt_monomial(&self.m), alg.fmt_monomial(g)),
        }
    }
}

fn leibniz_residuals(alg: &DGAlgebra, max_degree: u32) -> Vec<Residual> {
    let mut out = vec![Residual { m: alg.one_monomial(), g: None }];
    for i in 0..alg.num_base() {
        if alg.generators()[i].degree <= max_degree {
            out.push(Residual { m: alg.gen_monomial(i), g: None });
        }
    }
    for d in 0..=max_degree {
        for m in alg.basis_enumerate(Which::B, d).iter() {
            for (i, gen) in alg.generators().iter().enumerate() {
                if d + gen.degree <= max_degree {
                    out.push(Residual { m: m.clone(), g: Some(alg.gen_monomial(i)) });
                }
            }
        }
    }
    out
}

/// A basis of the space of derivations `B → B^{⊗_A arity}` truncated at
/// `max_degree`, as the nullspace of the derivation law.
pub fn derivation_space(alg: &DGAlgebra, arity: usize, max_degree: u32) -> Vec<DerivationTable> {
    let mut unknowns: Vec<(Monomial, TensorWord)> = Vec::new();
    for d in 0..=max_degree {
        for m in alg.basis_enumerate(Which::B, d).iter() {
            for w in tensor_basis(alg, arity, d).iter() {
                unknowns.push((m.clone(), w.clone()));
            }
        }
    }
    let residuals = leibniz_residuals(alg, max_degree);
    let cols: Vec<Vec<((usize, TensorWord), Scalar)>> = unknowns
        .iter()
        .map(|(um, uw)| {
            let unit = TensorElement::from_word(uw.clone(), alg.field().one());
            let mut col = Vec::new();
            for (r, res) in residuals.iter().enumerate() {
                let involved = &res.m == um || res.g.as_ref() == Some(um) || {
                    res.g.as_ref().is_some_and(|g| alg.mono_mul(&res.m, g).is_some_and(|(_, p)| &p == um))
                };
                if !involved {
                    continue;
                }
                let v = res.eval(alg, arity, |m| if m == um { unit.clone() } else { TensorElement::zero(arity) });
                col.extend(v.terms().map(|(w, c)| ((r, w.clone()), c.clone())));
            }
            col
        })
        .collect();
    let mut idx = KeyIndex::default();
    let m = assemble(alg.field(), &cols, &mut idx);
    m.nullspace()
        .into_iter()
        .map(|v| {
            let mut t = DerivationTable::zero(alg, arity, max_degree);
            for ((um, uw), c) in unknowns.iter().zip(v) {
                if !c.is_zero() {
                    t.images.get_mut(um).unwrap().add_term(uw.clone(), c);
                }
            }
            t
        })
        .collect()
}

/// Key of the basis element `c·δ(w)` of `J`.
type JKey = (Monomial, Monomial);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JLinearMap {
    pub arity: usize,
    pub max_degree: u32,
    pub images: BTreeMap<JKey, TensorElement>,
}

fn j_keys(alg: &DGAlgebra, max_degree: u32) -> Vec<(JKey, TensorElement)> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        for e in jn_basis(alg, 1, 1, d).iter() {
            out.push(((e.coef.slots()[0].clone(), e.ws[0].clone()), e.flat(alg)));
        }
    }
    out
}

impl JLinearMap {
    pub fn zero(alg: &DGAlgebra, arity: usize, max_degree: u32) -> Self {
        let images = j_keys(alg, max_degree).into_iter().map(|(k, _)| (k, TensorElement::zero(arity))).collect();
        JLinearMap { arity, max_degree, images }
    }

    /// Tabulates a map given on all of `J`, e.g. the inclusion `J → B^e`.
    pub fn from_fn(
        alg: &DGAlgebra,
        arity: usize,
        max_degree: u32,
        f: impl Fn(&TensorElement) -> TensorElement,
    ) -> Self {
        let images = j_keys(alg, max_degree).into_iter().map(|(k, t)| (k, f(&t))).collect();
        JLinearMap { arity, max_degree, images }
    }

    pub fn inclusion(alg: &DGAlgebra, max_degree: u32) -> Self {
        JLinearMap::from_fn(alg, 2, max_degree, Clone::clone)
    }

    pub fn apply(&self, alg: &DGAlgebra, t: &TensorElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero(self.arity);
        let view = jn_decompose(alg, t, 1, 1)?;
        for (ws, coef) in &view.coords {
            for (cw, c) in coef.terms() {
                let key = (cw.slots()[0].clone(), ws[0].clone());
                let v = self.images.get(&key).ok_or(Error::WindowIncomplete {
                    requested: (key.0.degree() + key.1.degree()) as i64,
                    window: self.max_degree as i64,
                })?;
                out.add_scaled(v, c);
            }
        }
        Ok(out)
    }

    /// Spot-checks `f(g·j) = g·f(j)` and `f(j·g) = f(j)·g` for every
    /// generator `g` and basis element `j` inside the cutoff.
    pub fn check_linearity(&self, alg: &DGAlgebra) -> Result<()> {
        for ((c, w), img) in &self.images {
            let j = self.basis_element(alg, c, w);
            let deg = c.degree() + w.degree();
            for (i, gen) in alg.generators().iter().enumerate() {
                if deg + gen.degree > self.max_degree {
                    continue;
                }
                let g = AlgElement::from_monomial(alg.gen_monomial(i), alg.field().one());
                let left = self.apply(alg, &left_mul(alg, &g, &j))?;
                let right = self.apply(alg, &right_mul(alg, &j, &g))?;
                if left != left_mul(alg, &g, img) {
                    return Err(Error::NotLinear(format!("f({}*j) != {}*f(j) for j = {}", gen.name, gen.name, fmt_tensor(alg, &j))));
                }
                if right != right_mul(alg, img, &g) {
                    return Err(Error::NotLinear(format!("f(j*{}) != f(j)*{} for j = {}", gen.name, gen.name, fmt_tensor(alg, &j))));
                }
            }
        }
        Ok(())
    }

    fn basis_element(&self, alg: &DGAlgebra, c: &Monomial, w: &Monomial) -> TensorElement {
        let one = alg.field().one();
        left_mul(
            alg,
            &AlgElement::from_monomial(c.clone(), one.clone()),
            &tensor::delta(alg, &AlgElement::from_monomial(w.clone(), one)),
        )
    }

    pub fn scale_add(&mut self, other: &JLinearMap, c: &Scalar) {
        for (k, v) in other.images.iter() {
            self.images.get_mut(k).unwrap().add_scaled(v, c);
        }
    }
}

/// A basis of the truncated space of `B^e`-linear maps `J → B^{⊗_A arity}`.
pub fn hom_space(alg: &DGAlgebra, arity: usize, max_degree: u32) -> Vec<JLinearMap> {
    let keys = j_keys(alg, max_degree);
    let key_pos: BTreeMap<&JKey, usize> = keys.iter().enumerate().map(|(i, (k, _))| (k, i)).collect();
    let mut unknowns: Vec<(usize, TensorWord)> = Vec::new();
    let mut unknown_of: BTreeMap<(usize, TensorWord), usize> = BTreeMap::new();
    for (i, ((c, w), _)) in keys.iter().enumerate() {
        for word in tensor_basis(alg, arity, c.degree() + w.degree()).iter() {
            unknown_of.insert((i, word.clone()), unknowns.len());
            unknowns.push((i, word.clone()));
        }
    }
    // each constraint: f(x) - y = 0 with x ∈ J and y a unknown-dependent image
    let mut cols: Vec<Vec<((usize, bool, usize, TensorWord), Scalar)>> = vec![Vec::new(); unknowns.len()];
    for (i, ((c, w), j)) in keys.iter().enumerate() {
        let deg = c.degree() + w.degree();
        for (gi, gen) in alg.generators().iter().enumerate() {
            if deg + gen.degree > max_degree {
                continue;
            }
            let g = AlgElement::from_monomial(alg.gen_monomial(gi), alg.field().one());
            for side in [false, true] {
                let x = if side { right_mul(alg, j, &g) } else { left_mul(alg, &g, j) };
                let view = jn_decompose(alg, &x, 1, 1).expect("J is closed under the action");
                for (ws, coef) in &view.coords {
                    for (cw, a) in coef.terms() {
                        let k = key_pos[&(cw.slots()[0].clone(), ws[0].clone())];
                        for word in tensor_basis(alg, arity, deg + gen.degree).iter() {
                            let u = unknown_of[&(k, word.clone())];
                            cols[u].push(((i, side, gi, word.clone()), a.clone()));
                        }
                    }
                }
                for word in tensor_basis(alg, arity, deg).iter() {
                    let u = unknown_of[&(i, word.clone())];
                    let unit = TensorElement::from_word(word.clone(), alg.field().one());
                    let y = if side { right_mul(alg, &unit, &g) } else { left_mul(alg, &g, &unit) };
                    for (yw, yc) in y.terms() {
                        cols[u].push(((i, side, gi, yw.clone()), -yc.clone()));
                    }
                }
            }
        }
    }
    let mut idx = KeyIndex::default();
    let m = assemble(alg.field(), &cols, &mut idx);
    m.nullspace()
        .into_iter()
        .map(|v| {
            let mut f = JLinearMap::zero(alg, arity, max_degree);
            for ((i, word), c) in unknowns.iter().zip(v) {
                if !c.is_zero() {
                    f.images.get_mut(&keys[*i].0).unwrap().add_term(word.clone(), c);
                }
            }
            f
        })
        .collect()
}

/// `η(f) = f∘δ`, after checking that `f` is `B^e`-linear.
pub fn eta(alg: &DGAlgebra, f: &JLinearMap) -> Result<DerivationTable> {
    f.check_linearity(alg)?;
    let mut t = DerivationTable::zero(alg, f.arity, f.max_degree);
    for (m, v) in t.images.iter_mut() {
        *v = f.apply(alg, &tensor::delta(alg, &AlgElement::from_monomial(m.clone(), alg.field().one())))?;
    }
    Ok(t)
}

/// `g(b_0⊗b_1⊗b_2) = b_0·D(b_1)·b_2` on `B^{⊗_A 3}`.
fn g_map(alg: &DGAlgebra, d: &DerivationTable, t: &TensorElement) -> Result<TensorElement> {
    let one = alg.field().one();
    let mut out = TensorElement::zero(d.arity);
    for (w, c) in t.terms() {
        let s = w.slots();
        let mid = d.apply(&AlgElement::from_monomial(s[1].clone(), one.clone()))?;
        let b0 = AlgElement::from_monomial(s[0].clone(), one.clone());
        let b2 = AlgElement::from_monomial(s[2].clone(), one.clone());
        out.add_scaled(&right_mul(alg, &left_mul(alg, &b0, &mid), &b2), c);
    }
    Ok(out)
}

/// The inverse correspondence `D ↦ -ḡ`, where `ḡ(j) = g(1⊗j)` is the map
/// induced on `J ≅ B^{⊗_A 3}/{}^2J`. Fails if `g` does not vanish on `^2J`.
pub fn eta_inverse(alg: &DGAlgebra, d: &DerivationTable) -> Result<JLinearMap> {
    for deg in 0..=d.max_degree {
        for k in nj_kernel_basis(alg, 2, deg) {
            let v = g_map(alg, d, &k)?;
            if !v.is_zero() {
                return Err(Error::ObstructionNonzero(format!("g({}) = {}", fmt_tensor(alg, &k), fmt_tensor(alg, &v))));
            }
        }
    }
    let mut f = JLinearMap::zero(alg, d.arity, d.max_degree);
    let keys: Vec<JKey> = f.images.keys().cloned().collect();
    for (c, w) in keys {
        let j = f.basis_element(alg, &c, &w);
        let v = g_map(alg, d, &crate::bar::bar_homotopy(alg, &j))?.neg();
        f.images.insert((c, w), v);
    }
    Ok(f)
}

fn random_combination<T: Clone>(
    alg: &DGAlgebra,
    basis: &[T],
    zero: T,
    rng: &mut ChaCha8Rng,
    add: impl Fn(&mut T, &T, &Scalar),
) -> T {
    let mut out = zero;
    for b in basis {
        let c = alg.field().int(rng.gen_range(-3..=3));
        if !c.is_zero() {
            add(&mut out, b, &c);
        }
    }
    out
}

/// Round trips `η⁻¹∘η = id` and `η∘η⁻¹ = id` on seeded random elements of
/// the two truncated spaces, with targets `B^e` and `B^{⊗_A 3}`.
pub fn check_derivations(alg: &DGAlgebra, max_degree: u32, samples: usize, seed: u64) -> ValidationReport {
    let window = format!("degree<={max_degree},samples={samples},seed={seed}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spaces: Vec<(usize, Vec<DerivationTable>, Vec<JLinearMap>)> =
        [2, 3].into_iter().map(|k| (k, derivation_space(alg, k, max_degree), hom_space(alg, k, max_degree))).collect();
    let mut f_der = Vec::new();
    let mut f_hom = Vec::new();
    let mut f_law = Vec::new();
    for s in 0..samples {
        let (k, ders, homs) = &spaces[s % 2];
        let d = random_combination(alg, ders, DerivationTable::zero(alg, *k, max_degree), &mut rng, |a, b, c| {
            a.scale_add(b, c)
        });
        let law = d.validate(alg);
        if !law.passed() {
            f_law.push(format!("sample {s}: {}", law.counterexample.unwrap_or_default()));
        }
        match eta_inverse(alg, &d).and_then(|f| eta(alg, &f)) {
            Ok(back) if back == d => {}
            Ok(_) => f_der.push(format!("sample {s} (L = B^{k}): eta(eta_inverse(D)) != D")),
            Err(e) => f_der.push(format!("sample {s} (L = B^{k}): {e}")),
        }
        let f = random_combination(alg, homs, JLinearMap::zero(alg, *k, max_degree), &mut rng, |a, b, c| {
            a.scale_add(b, c)
        });
        match eta(alg, &f).and_then(|d| eta_inverse(alg, &d)) {
            Ok(back) if back == f => {}
            Ok(_) => f_hom.push(format!("sample {s} (L = B^{k}): eta_inverse(eta(f)) != f")),
            Err(e) => f_hom.push(format!("sample {s} (L = B^{k}): {e}")),
        }
    }
    let dim_fails: Vec<String> = spaces
        .iter()
        .filter(|(_, ders, homs)| ders.len() != homs.len())
        .map(|(k, ders, homs)| format!("L = B^{k}: dim Der = {}, dim Hom(J, L) = {}", ders.len(), homs.len()))
        .collect();
    let mut r = ValidationReport::default();
    r.push(Check::from_failures("derivation.space_dimensions_match", &window, dim_fails));
    r.push(Check::from_failures("derivation.sampled_satisfy_leibniz", &window, f_law));
    r.push(Check::from_failures("derivation.eta_after_eta_inverse", &window, f_der));
    r.push(Check::from_failures("derivation.eta_inverse_after_eta", &window, f_hom));
    r
}

/// Dimensions of the two truncated spaces for a target `B^{⊗_A arity}`.
pub fn space_dimensions(alg: &DGAlgebra, arity: usize, max_degree: u32) -> (usize, usize) {
    (derivation_space(alg, arity, max_degree).len(), hom_space(alg, arity, max_degree).len())
}
