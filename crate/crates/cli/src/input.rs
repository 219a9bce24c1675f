//! The problem file: a TOML document describing the field, the algebra,
//! optional modules and derivations, and default options.
//!
//! ```toml
//! field = "Q"                      # or "F101"
//!
//! [algebra]
//! base = [{ name = "y", degree = 2 }]
//! extension = [{ name = "e", degree = 3 }]
//! differential = { e = "y" }
//!
//! [[modules]]
//! name = "CB"
//! basis = [{ name = "c0", degree = 0 }, { name = "c1", degree = 3 }]
//! differential = { c1 = "c0*y" }
//!
//! [[derivations]]
//! name = "universal"
//! arity = 2
//! images = { e = "1|e - e|1" }
//!
//! [options]
//! max_degree = 8
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use dgres_core::algebra::{AlgElement, DGAlgebra, Generator, Monomial};
use dgres_core::derivation::DerivationTable;
use dgres_core::error::Error as CoreError;
use dgres_core::expr::{eval_slot, parse_element, parse_tensor, parse_terms, term_coefficient};
use dgres_core::field::Field;
use dgres_core::module::SemifreeModule;
use dgres_core::tensor::TensorElement;
use serde::Deserialize;
use toml::Spanned;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for InputError {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    field: Spanned<String>,
    algebra: RawAlgebra,
    #[serde(default)]
    modules: Vec<RawModule>,
    #[serde(default)]
    derivations: Vec<RawDerivation>,
    #[serde(default)]
    options: Options,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    #[serde(default)]
    base: Vec<RawGen>,
    #[serde(default)]
    extension: Vec<RawGen>,
    #[serde(default)]
    differential: BTreeMap<Spanned<String>, Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGen {
    name: Spanned<String>,
    degree: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    name: Spanned<String>,
    basis: Vec<RawGen>,
    #[serde(default)]
    differential: BTreeMap<Spanned<String>, Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDerivation {
    name: Spanned<String>,
    arity: usize,
    #[serde(default)]
    images: BTreeMap<Spanned<String>, Spanned<String>>,
}

/// Defaults for the command-line flags.
#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub max_degree: Option<u32>,
    pub max_n: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

/// A derivation given by its values on generators; `overrides` replace the
/// values on individual monomials after the Leibniz extension.
#[derive(Clone, Debug)]
pub struct DerivationSpec {
    pub name: String,
    pub arity: usize,
    pub generators: BTreeMap<usize, TensorElement>,
    pub overrides: Vec<(Monomial, TensorElement)>,
}

impl DerivationSpec {
    pub fn table(&self, alg: &DGAlgebra, max_degree: u32) -> DerivationTable {
        let mut t = DerivationTable::from_generators(alg, self.arity, max_degree, &self.generators);
        for (m, v) in &self.overrides {
            if m.degree() <= max_degree {
                t.images.insert(m.clone(), v.clone());
            }
        }
        t
    }
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub algebra: DGAlgebra,
    pub modules: Vec<SemifreeModule>,
    pub derivations: Vec<DerivationSpec>,
    pub options: Options,
}

struct Locator<'a> {
    src: &'a str,
}

impl Locator<'_> {
    fn at(&self, offset: usize, message: impl Into<String>) -> InputError {
        let before = &self.src[..offset.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        InputError { line, column, message: message.into() }
    }

    fn span(&self, span: Range<usize>, message: impl Into<String>) -> InputError {
        self.at(span.start, message)
    }

    /// Maps an error inside a quoted string value back to the file.
    fn inside(&self, value: &Spanned<String>, err: CoreError) -> InputError {
        match err {
            CoreError::Parse { column, message } => {
                let quote = self.src[value.span()].starts_with(['"', '\'']) as usize;
                self.at(value.span().start + quote, "").shifted(column - 1, message)
            }
            other => self.span(value.span(), other.to_string()),
        }
    }
}

impl InputError {
    fn shifted(mut self, by: usize, message: String) -> Self {
        self.column += by;
        self.message = message;
        self
    }
}

fn parse_field(loc: &Locator, s: &Spanned<String>) -> Result<Field, InputError> {
    let v = s.get_ref().trim();
    if v == "Q" {
        return Ok(Field::Rationals);
    }
    let p = v
        .strip_prefix('F')
        .map(|r| r.trim_start_matches('_'))
        .and_then(|r| r.parse::<u32>().ok())
        .ok_or_else(|| loc.span(s.span(), format!("unknown field {v:?}; expected \"Q\" or \"F<p>\"")))?;
    Field::prime(p).map_err(|e| loc.span(s.span(), e.to_string()))
}

fn generators(gens: &[RawGen]) -> Vec<Generator> {
    gens.iter().map(|g| Generator::new(g.name.get_ref().clone(), g.degree)).collect()
}

/// A single monomial written as an expression with coefficient 1.
fn parse_monomial(loc: &Locator, alg: &DGAlgebra, s: &Spanned<String>) -> Result<Monomial, InputError> {
    let u = parse_element(alg, s.get_ref()).map_err(|e| loc.inside(s, e))?;
    let mut terms = u.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if c.is_one() => Ok(m.clone()),
        _ => Err(loc.span(s.span(), format!("{:?} is not a monomial", s.get_ref()))),
    }
}

fn build_module(loc: &Locator, alg: &DGAlgebra, raw: &RawModule) -> Result<SemifreeModule, InputError> {
    let basis: Vec<(String, u32)> = raw.basis.iter().map(|g| (g.name.get_ref().clone(), g.degree)).collect();
    let index = |name: &str| basis.iter().position(|(n, _)| n == name);
    let mut entries: BTreeMap<(usize, usize), AlgElement> = BTreeMap::new();
    for (key, value) in &raw.differential {
        let lambda = index(key.get_ref())
            .ok_or_else(|| loc.span(key.span(), format!("unknown basis element {:?}", key.get_ref())))?;
        for term in parse_terms(value.get_ref()).map_err(|e| loc.inside(value, e))? {
            let c = term_coefficient(alg, &term).map_err(|e| loc.inside(value, e))?;
            if c.is_zero() {
                continue;
            }
            let slot = &term.slots[0];
            let bad = |column: usize, msg: &str| {
                loc.inside(value, CoreError::Parse { column, message: msg.to_string() })
            };
            if term.slots.len() != 1 {
                return Err(bad(term.slots[1].first().map_or(1, |f| f.column), "tensor separator in a module differential"));
            }
            let first = slot.first().ok_or_else(|| bad(1, "each term needs a basis element"))?;
            let mu = index(&first.name)
                .filter(|_| first.exp == 1)
                .ok_or_else(|| bad(first.column, "each term must start with a basis element"))?;
            let b = eval_slot(alg, &slot[1..]).map_err(|e| loc.inside(value, e))?.scale(&c);
            entries.entry((mu, lambda)).or_insert_with(AlgElement::zero).add_assign(&b);
        }
    }
    let entries = entries.into_iter().map(|((mu, lambda), b)| (mu, lambda, b)).collect();
    SemifreeModule::new(raw.name.get_ref().clone(), basis, entries).map_err(|e| loc.span(raw.name.span(), e.to_string()))
}

fn build_derivation(loc: &Locator, alg: &DGAlgebra, raw: &RawDerivation) -> Result<DerivationSpec, InputError> {
    if raw.arity < 2 {
        return Err(loc.span(raw.name.span(), "derivation arity must be at least 2"));
    }
    let mut spec = DerivationSpec {
        name: raw.name.get_ref().clone(),
        arity: raw.arity,
        generators: BTreeMap::new(),
        overrides: Vec::new(),
    };
    for (key, value) in &raw.images {
        let m = parse_monomial(loc, alg, key)?;
        let v = parse_tensor(alg, value.get_ref(), raw.arity).map_err(|e| loc.inside(value, e))?;
        match (0..alg.num_gens()).find(|&i| alg.gen_monomial(i) == m) {
            Some(i) => {
                spec.generators.insert(i, v);
            }
            None => spec.overrides.push((m, v)),
        }
    }
    Ok(spec)
}

/// Parses and builds a problem. Semantic errors (unknown names, malformed
/// expressions) are located like syntax errors; the DG axioms themselves
/// are not checked here.
pub fn parse_problem(src: &str) -> Result<Problem, InputError> {
    let loc = Locator { src };
    let raw: RawProblem = toml::from_str(src).map_err(|e| {
        let message = e.message().to_string();
        match e.span() {
            Some(span) => loc.span(span, message),
            None => InputError { line: 1, column: 1, message },
        }
    })?;
    let field = parse_field(&loc, &raw.field)?;
    let mut alg = DGAlgebra::new(field, generators(&raw.algebra.base), generators(&raw.algebra.extension))
        .map_err(|e| loc.at(0, e.to_string()))?;
    let mut images = Vec::new();
    for (key, value) in &raw.algebra.differential {
        alg.gen_index(key.get_ref())
            .map_err(|_| loc.span(key.span(), format!("unknown generator {:?}", key.get_ref())))?;
        images.push((key.get_ref().clone(), parse_element(&alg, value.get_ref()).map_err(|e| loc.inside(value, e))?));
    }
    for (name, image) in images {
        alg = alg.with_differential(&name, image).map_err(|e| loc.at(0, e.to_string()))?;
    }
    let mut modules = Vec::new();
    for m in &raw.modules {
        if modules.iter().any(|n: &SemifreeModule| n.name == *m.name.get_ref()) {
            return Err(loc.span(m.name.span(), format!("duplicate module {:?}", m.name.get_ref())));
        }
        modules.push(build_module(&loc, &alg, m)?);
    }
    let derivations =
        raw.derivations.iter().map(|d| build_derivation(&loc, &alg, d)).collect::<Result<Vec<_>, _>>()?;
    Ok(Problem { algebra: alg, modules, derivations, options: raw.options })
}

#[cfg(test)]
mod tests {
    use super::*;

    const E3: &str = r#"field = "Q"

[algebra]
base = [{ name = "y", degree = 2 }]
extension = [{ name = "e", degree = 3 }]
differential = { e = "y" }

[[modules]]
name = "CB"
basis = [{ name = "c0", degree = 0 }, { name = "c1", degree = 3 }]
differential = { c1 = "c0*y" }
"#;

    #[test]
    fn parses_e3() {
        let p = parse_problem(E3).unwrap();
        assert_eq!(p.algebra.num_gens(), 2);
        assert_eq!(p.algebra.fmt_element(p.algebra.differential_of(1)), "y");
        assert_eq!(p.modules[0].rank(), 2);
        let y = p.algebra.generator("y").unwrap();
        assert_eq!(p.modules[0].entry(0, 1), y);
    }

    #[test]
    fn expression_errors_point_into_the_file() {
        let src = E3.replace("differential = { e = \"y\" }", "differential = { e = \"y^^2\" }");
        let err = parse_problem(&src).unwrap_err();
        assert_eq!((err.line, err.column), (6, 25));
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_problem("field = \"Q\"\n[algebra\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_problem("field = \"Q2\"\n[algebra]\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 9));
    }

    #[test]
    fn unknown_names_are_located() {
        let src = E3.replace("c1 = \"c0*y\"", "c1 = \"c9*y\"");
        let err = parse_problem(&src).unwrap_err();
        assert_eq!(err.line, 11);
        assert!(err.message.contains("basis element"), "{err}");
    }
}
