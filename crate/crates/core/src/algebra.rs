//! Free strictly graded-commutative DG algebras `A ⊆ B = A[X]` over a field.
//!
//! Generators are split into base generators (those of `A`) and extension
//! generators (those only in `B`). Even generators are polynomial, odd ones
//! exterior; odd squares vanish in every characteristic. All generator
//! degrees are at least one, so every graded piece is finite dimensional.
//!
//! Generators are kept in a canonical order: base generators sorted by name,
//! then extension generators sorted by name. Monomials are ordered by total
//! degree and then lexicographically on their exponent vectors, which makes
//! every enumerated basis deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::cache::SliceCache;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::report::{Check, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator { name: name.into(), degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Koszul sign of a reordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_scalar(self, field: Field) -> Scalar {
        match self {
            Sign::Plus => field.one(),
            Sign::Minus => -field.one(),
        }
    }
}

/// A monomial, as an exponent vector over the algebra's generators in
/// canonical order. Odd generators have exponent 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 4]>,
    degree: u32,
}

impl Monomial {
    pub fn one(num_gens: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, num_gens), degree: 0 }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Degree first, then larger exponents of earlier generators first.
        self.degree.cmp(&other.degree).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite sum of scalar multiples of monomials. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl AlgElement {
    pub fn zero() -> Self {
        AlgElement::default()
    }

    pub fn from_monomial(m: Monomial, c: Scalar) -> Self {
        let mut e = AlgElement::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add_assign(&mut self, other: &AlgElement) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &AlgElement) -> AlgElement {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn sub(&self, other: &AlgElement) -> AlgElement {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn scale(&self, c: &Scalar) -> AlgElement {
        let mut r = AlgElement::zero();
        for (m, a) in &self.terms {
            r.add_term(m.clone(), a * c);
        }
        r
    }

    pub fn neg(&self) -> AlgElement {
        let mut r = self.clone();
        for c in r.terms.values_mut() {
            *c = -c.clone();
        }
        r
    }

    /// The common degree of all terms, if there is one. Zero has no degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Splits into homogeneous components, keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, AlgElement> {
        let mut out: BTreeMap<u32, AlgElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree).or_default().add_term(m.clone(), c.clone());
        }
        out
    }
}

/// Which graded space to enumerate a monomial basis of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    /// Monomials in the base generators only.
    A,
    /// All monomials.
    B,
    /// Monomials involving at least one extension generator (a basis of `B/A`).
    Bbar,
    /// Monomials in the extension generators only, including 1: a basis of
    /// `B` as a free `A`-module.
    Ext,
    /// `Ext` without 1: a basis of `B/A` as a free `A`-module.
    ExtBar,
}

#[derive(Default)]
pub(crate) struct Caches {
    pub basis: SliceCache<(Which, u32), Vec<Monomial>>,
    pub tensor_basis: SliceCache<(usize, u32), Vec<crate::tensor::TensorWord>>,
    pub delta_word: SliceCache<Vec<Monomial>, crate::tensor::TensorElement>,
    pub jn_basis: SliceCache<(usize, usize, u32), Vec<crate::tensor::JBasisElement>>,
}

/// A DG algebra `B = A[X]` together with its subalgebra `A`.
pub struct DGAlgebra {
    field: Field,
    gens: Vec<Generator>,
    num_base: usize,
    diff: Vec<AlgElement>,
    pub(crate) caches: Caches,
}

impl Clone for DGAlgebra {
    fn clone(&self) -> Self {
        DGAlgebra {
            field: self.field,
            gens: self.gens.clone(),
            num_base: self.num_base,
            diff: self.diff.clone(),
            caches: Caches::default(),
        }
    }
}

impl fmt::Debug for DGAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DGAlgebra")
            .field("field", &self.field)
            .field("gens", &self.gens)
            .field("num_base", &self.num_base)
            .finish()
    }
}

impl DGAlgebra {
    /// Creates the algebra with all differentials zero. Generator names must
    /// be unique and degrees positive.
    pub fn new(field: Field, base: Vec<Generator>, ext: Vec<Generator>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in base.iter().chain(&ext) {
            if g.degree == 0 {
                return Err(Error::InvalidAlgebra(format!(
                    "generator {} has degree 0; all generators need degree >= 1",
                    g.name
                )));
            }
            if g.name.is_empty() || !seen.insert(g.name.clone()) {
                return Err(Error::InvalidAlgebra(format!("duplicate or empty generator name {:?}", g.name)));
            }
        }
        let mut base = base;
        let mut ext = ext;
        base.sort_by(|a, b| a.name.cmp(&b.name));
        ext.sort_by(|a, b| a.name.cmp(&b.name));
        let num_base = base.len();
        let gens: Vec<Generator> = base.into_iter().chain(ext).collect();
        let diff = vec![AlgElement::zero(); gens.len()];
        Ok(DGAlgebra { field, gens, num_base, diff, caches: Caches::default() })
    }

    /// Sets `d(name) = image`. The image is not checked here; see
    /// [`DGAlgebra::validate_dg`].
    pub fn with_differential(mut self, name: &str, image: AlgElement) -> Result<Self> {
        let i = self.gen_index(name)?;
        for m in image.terms.keys() {
            if m.exps.len() != self.gens.len() {
                return Err(Error::MismatchedAlgebra);
            }
        }
        self.diff[i] = image;
        Ok(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn base_generators(&self) -> &[Generator] {
        &self.gens[..self.num_base]
    }

    pub fn ext_generators(&self) -> &[Generator] {
        &self.gens[self.num_base..]
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn num_base(&self) -> usize {
        self.num_base
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn differential_of(&self, gen: usize) -> &AlgElement {
        &self.diff[gen]
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.gens.len())
    }

    pub fn one(&self) -> AlgElement {
        AlgElement::from_monomial(self.one_monomial(), self.field.one())
    }

    pub fn scalar(&self, c: Scalar) -> AlgElement {
        AlgElement::from_monomial(self.one_monomial(), c)
    }

    pub fn gen_monomial(&self, i: usize) -> Monomial {
        let mut m = self.one_monomial();
        m.exps[i] = 1;
        m.degree = self.gens[i].degree;
        m
    }

    /// The element `name` of the algebra.
    pub fn generator(&self, name: &str) -> Result<AlgElement> {
        let i = self.gen_index(name)?;
        Ok(AlgElement::from_monomial(self.gen_monomial(i), self.field.one()))
    }

    /// Builds a monomial from an exponent vector, or `None` if an odd
    /// generator has exponent above one.
    pub fn monomial(&self, exps: &[u32]) -> Result<Option<Monomial>> {
        if exps.len() != self.gens.len() {
            return Err(Error::MismatchedAlgebra);
        }
        let mut degree = 0;
        for (e, g) in exps.iter().zip(&self.gens) {
            if g.is_odd() && *e > 1 {
                return Ok(None);
            }
            degree += e * g.degree;
        }
        Ok(Some(Monomial { exps: exps.into(), degree }))
    }

    pub fn is_base_monomial(&self, m: &Monomial) -> bool {
        m.exps[self.num_base..].iter().all(|&e| e == 0)
    }

    pub fn is_ext_monomial(&self, m: &Monomial) -> bool {
        m.exps[..self.num_base].iter().all(|&e| e == 0)
    }

    /// Splits `m = a * x` into its base part `a` and extension part `x`. No
    /// sign arises since base generators precede extension generators.
    pub fn split_base(&self, m: &Monomial) -> (Monomial, Monomial) {
        let mut a = self.one_monomial();
        let mut x = self.one_monomial();
        for (i, &e) in m.exps.iter().enumerate() {
            if i < self.num_base {
                a.exps[i] = e;
                a.degree += e * self.gens[i].degree;
            } else {
                x.exps[i] = e;
                x.degree += e * self.gens[i].degree;
            }
        }
        (a, x)
    }

    /// Product of monomials with its Koszul sign, or `None` when an odd
    /// generator occurs in both factors.
    pub fn monomial_multiply(&self, m1: &Monomial, m2: &Monomial) -> Result<Option<(Sign, Monomial)>> {
        let n = self.gens.len();
        if m1.exps.len() != n || m2.exps.len() != n {
            return Err(Error::MismatchedAlgebra);
        }
        Ok(self.mono_mul(m1, m2))
    }

    pub(crate) fn mono_mul(&self, m1: &Monomial, m2: &Monomial) -> Option<(Sign, Monomial)> {
        if m1.degree == 0 {
            return Some((Sign::Plus, m2.clone()));
        }
        if m2.degree == 0 {
            return Some((Sign::Plus, m1.clone()));
        }
        let mut odd = false;
        // number of odd generators of m1 with index greater than the current one
        let mut odd_after: u32 = m1
            .exps
            .iter()
            .zip(&self.gens)
            .filter(|(e, g)| g.is_odd() && **e > 0)
            .count() as u32;
        let mut exps: SmallVec<[u32; 4]> = SmallVec::with_capacity(self.gens.len());
        for (i, g) in self.gens.iter().enumerate() {
            let (a, b) = (m1.exps[i], m2.exps[i]);
            if g.is_odd() {
                if a > 0 && b > 0 {
                    return None;
                }
                if a > 0 {
                    odd_after -= 1;
                }
                if b > 0 && odd_after % 2 == 1 {
                    odd = !odd;
                }
            }
            exps.push(a + b);
        }
        Some((Sign::from_odd(odd), Monomial { exps, degree: m1.degree + m2.degree }))
    }

    pub fn multiply(&self, u: &AlgElement, v: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for (m1, c1) in &u.terms {
            for (m2, c2) in &v.terms {
                if let Some((s, m)) = self.mono_mul(m1, m2) {
                    out.add_term(m, (c1 * c2).signed(s.is_minus()));
                }
            }
        }
        out
    }

    /// Checked product; fails if either operand uses another generator set.
    pub fn alg_multiply(&self, u: &AlgElement, v: &AlgElement) -> Result<AlgElement> {
        let n = self.gens.len();
        if u.terms.keys().chain(v.terms.keys()).any(|m| m.exps.len() != n) {
            return Err(Error::MismatchedAlgebra);
        }
        Ok(self.multiply(u, v))
    }

    pub fn multiply_monomial_element(&self, m: &Monomial, v: &AlgElement) -> AlgElement {
        self.multiply(&AlgElement::from_monomial(m.clone(), self.field.one()), v)
    }

    /// `d` on a monomial, expanded by the Leibniz rule over its factors in
    /// canonical order.
    pub fn differential_monomial(&self, m: &Monomial) -> AlgElement {
        let mut out = AlgElement::zero();
        let mut prefix = self.one_monomial();
        for (i, g) in self.gens.iter().enumerate() {
            let a = m.exps[i];
            if a == 0 {
                continue;
            }
            if !self.diff[i].is_zero() {
                // prefix * (a * dg * g^(a-1)) * suffix
                let mut rest = m.clone();
                for j in 0..=i {
                    rest.degree -= rest.exps[j] * self.gens[j].degree;
                    rest.exps[j] = 0;
                }
                let mut lower = self.one_monomial();
                lower.exps[i] = a - 1;
                lower.degree = (a - 1) * g.degree;
                let coeff = self.field.int(a as i64).signed(prefix.is_odd());
                let pre = AlgElement::from_monomial(prefix.clone(), coeff);
                let t = self.multiply(&pre, &self.diff[i]);
                let t = self.multiply(&t, &AlgElement::from_monomial(lower, self.field.one()));
                let t = self.multiply(&t, &AlgElement::from_monomial(rest, self.field.one()));
                out.add_assign(&t);
            }
            prefix.exps[i] = a;
            prefix.degree += a * g.degree;
        }
        out
    }

    pub fn differential(&self, u: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for (m, c) in &u.terms {
            out.add_assign(&self.differential_monomial(m).scale(c));
        }
        out
    }

    /// All monomials of exactly `degree` in the requested space, in
    /// canonical order.
    pub fn basis_enumerate(&self, which: Which, degree: u32) -> Arc<Vec<Monomial>> {
        self.caches.basis.get_or_insert_with(&(which, degree), || self.enumerate(which, degree))
    }

    fn enumerate(&self, which: Which, degree: u32) -> Vec<Monomial> {
        let range = match which {
            Which::A => 0..self.num_base,
            Which::Ext | Which::ExtBar => self.num_base..self.gens.len(),
            Which::B | Which::Bbar => 0..self.gens.len(),
        };
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.gens.len()];
        self.enumerate_rec(range.start, range.end, degree, &mut exps, &mut out);
        match which {
            Which::Bbar => out.retain(|m| !self.is_base_monomial(m)),
            Which::ExtBar => out.retain(|m| !m.is_one()),
            _ => {}
        }
        out.sort();
        out
    }

    fn enumerate_rec(&self, i: usize, end: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == end {
            if left == 0 {
                let degree = exps.iter().zip(&self.gens).map(|(e, g)| e * g.degree).sum();
                out.push(Monomial { exps: exps.as_slice().into(), degree });
            }
            return;
        }
        let g = &self.gens[i];
        let max = if g.is_odd() { 1.min(left / g.degree) } else { left / g.degree };
        for e in 0..=max {
            exps[i] = e;
            self.enumerate_rec(i + 1, end, left - e * g.degree, exps, out);
        }
        exps[i] = 0;
    }

    /// Checks the DG axioms through `max_degree`.
    pub fn validate_dg(&self, max_degree: u32) -> ValidationReport {
        let mut report = ValidationReport::default();
        let window = format!("degree<={max_degree}");

        let bad_deg: Vec<String> = self.gens.iter().filter(|g| g.degree == 0).map(|g| g.name.clone()).collect();
        report.push(Check::from_failures("dg.generator_degrees_positive", &window, bad_deg));

        let mut bad = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            let d = &self.diff[i];
            if d.is_zero() {
                continue;
            }
            match d.homogeneous_degree() {
                Some(k) if k + 1 == g.degree => {}
                Some(k) => bad.push(format!("d({}) has degree {k}, expected {}", g.name, g.degree - 1)),
                None => bad.push(format!("d({}) is not homogeneous", g.name)),
            }
        }
        report.push(Check::from_failures("dg.differential_degree_minus_one", &window, bad));

        let mut bad = Vec::new();
        for (i, g) in self.base_generators().iter().enumerate() {
            if self.diff[i].terms.keys().any(|m| !self.is_base_monomial(m)) {
                bad.push(format!("d({}) leaves the base algebra", g.name));
            }
        }
        report.push(Check::from_failures("dg.base_closed_under_d", &window, bad));

        let mut bad = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            if !g.is_odd() {
                continue;
            }
            let gm = AlgElement::from_monomial(self.gen_monomial(i), self.field.one());
            let dg = &self.diff[i];
            let lhs = self.multiply(dg, &gm);
            let rhs = self.multiply(&gm, dg);
            // d(g^2) = dg*g - g*dg must vanish since g^2 = 0
            if !lhs.sub(&rhs).is_zero() {
                bad.push(format!("d({0})*{0} - {0}*d({0}) != 0", g.name));
            }
        }
        report.push(Check::from_failures("dg.odd_square_compatibility", &window, bad));

        let mut bad = Vec::new();
        for deg in 0..=max_degree {
            for m in self.basis_enumerate(Which::B, deg).iter() {
                let dd = self.differential(&self.differential_monomial(m));
                if !dd.is_zero() {
                    bad.push(format!("d^2({}) = {}", self.fmt_monomial(m), self.fmt_element(&dd)));
                }
            }
        }
        report.push(Check::from_failures("dg.d_squared_zero", &window, bad));
        report
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = m
            .exps
            .iter()
            .zip(&self.gens)
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| if *e == 1 { g.name.clone() } else { format!("{}^{}", g.name, e) })
            .collect();
        parts.join("*")
    }

    pub fn fmt_element(&self, u: &AlgElement) -> String {
        fmt_sum(u.terms.iter().map(|(m, c)| (c, self.fmt_monomial(m))))
    }
}

/// Renders `Σ c·label` as `a - 2*b + 1/2*c`, or `0`.
pub fn fmt_sum<'a>(terms: impl Iterator<Item = (&'a Scalar, String)>) -> String {
    let mut s = String::new();
    for (c, label) in terms {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if abs.is_one() {
            s.push_str(&label);
        } else if label == "1" {
            s.push_str(&abs.to_string());
        } else {
            s.push_str(&format!("{abs}*{label}"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn odd_square_vanishes() {
        let b = fixtures::e1(Field::Rationals);
        let e = b.gen_monomial(0);
        assert_eq!(b.monomial_multiply(&e, &e).unwrap(), None);
    }

    #[test]
    fn even_square() {
        let b = fixtures::e2(Field::Rationals);
        let x = b.gen_monomial(0);
        let (s, m) = b.monomial_multiply(&x, &x).unwrap().unwrap();
        assert_eq!(s, Sign::Plus);
        assert_eq!(m.exponents(), &[2]);
    }

    #[test]
    fn mismatched_generator_sets() {
        let b1 = fixtures::e1(Field::Rationals);
        let b3 = fixtures::e3(Field::Rationals);
        let e = b1.gen_monomial(0);
        let y = b3.gen_monomial(0);
        assert_eq!(b3.monomial_multiply(&e, &y), Err(Error::MismatchedAlgebra));
    }

    #[test]
    fn differential_examples() {
        let b = fixtures::e3(Field::Rationals);
        let e = b.generator("e").unwrap();
        let y = b.generator("y").unwrap();
        assert_eq!(b.differential(&e), y);
        let ye = b.multiply(&y, &e);
        assert_eq!(b.differential(&ye), b.multiply(&y, &y));
        assert!(b.differential(&b.one()).is_zero());
    }

    #[test]
    fn basis_examples() {
        let b1 = fixtures::e1(Field::Rationals);
        let v = b1.basis_enumerate(Which::Bbar, 1);
        assert_eq!(v.len(), 1);
        assert_eq!(b1.fmt_monomial(&v[0]), "e");
        assert!(b1.basis_enumerate(Which::Bbar, 0).is_empty());
        let b2 = fixtures::e2(Field::Rationals);
        let v = b2.basis_enumerate(Which::B, 4);
        assert_eq!(v.iter().map(|m| b2.fmt_monomial(m)).collect::<Vec<_>>(), ["x^2"]);
        let b3 = fixtures::e3(Field::Rationals);
        let v = b3.basis_enumerate(Which::B, 5);
        assert_eq!(v.iter().map(|m| b3.fmt_monomial(m)).collect::<Vec<_>>(), ["y*e"]);
    }

    #[test]
    fn validate_rejects_bad_degrees() {
        let f = Field::Rationals;
        let alg = DGAlgebra::new(f, vec![Generator::new("y", 2)], vec![Generator::new("e", 2)]).unwrap();
        let y = alg.generator("y").unwrap();
        let alg = alg.with_differential("e", y).unwrap();
        assert!(!alg.validate_dg(6).passed());

        let alg = DGAlgebra::new(f, vec![], vec![Generator::new("x", 2)]).unwrap();
        let x = alg.generator("x").unwrap();
        let alg = alg.with_differential("x", x).unwrap();
        let r = alg.validate_dg(6);
        assert!(!r.passed());
        assert!(r.failures().any(|c| c.name == "dg.differential_degree_minus_one"));
    }

    #[test]
    fn rejects_degree_zero_generators() {
        let r = DGAlgebra::new(Field::Rationals, vec![], vec![Generator::new("t", 0)]);
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn e3_validates() {
        assert!(fixtures::e3(Field::Rationals).validate_dg(10).passed());
    }
}
