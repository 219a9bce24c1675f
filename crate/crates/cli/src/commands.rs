use std::fmt;

use clap::ValueEnum;
use dgres_core::algebra::DGAlgebra;
use dgres_core::bar::{check_classical_bar, check_reduced_exactness};
use dgres_core::derivation::{check_derivations, eta, eta_inverse};
use dgres_core::error::Error as CoreError;
use dgres_core::homology::{homology_dims, HomologyObject};
use dgres_core::module::{
    beta_n, check_bar_n, check_beta, lemma_sign_check, lift_consistency, naive_lift_solve, validate_module,
    LiftOutcome, SemifreeModule,
};
use dgres_core::report::{Check, ValidationReport};
use dgres_core::semifree::{check_semifree, quasi_iso_check, suspension_arbiter, Suspension};

use crate::input::Problem;
use crate::report::{Report, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Bar,
    Semifree,
    Homology,
    Lift,
    Derivations,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().unwrap().get_name())
    }
}

/// Effective parameters after merging flags, file options and defaults.
#[derive(Clone, Debug)]
pub struct Settings {
    pub command: Command,
    pub file_name: String,
    pub max_degree: u32,
    pub max_n: Option<usize>,
    pub reduced: bool,
    pub module: Option<String>,
    pub samples: usize,
    pub seed: u64,
}

impl Settings {
    pub fn echo(&self) -> String {
        let mut s = format!("dgres {} {} --max-degree {}", self.command, self.file_name, self.max_degree);
        if let Some(n) = self.max_n {
            s += &format!(" --max-n {n}");
        }
        if self.reduced {
            s += " --reduced";
        }
        if let Some(m) = &self.module {
            s += &format!(" --module {m}");
        }
        s + &format!(" --samples {} --seed {}", self.samples, self.seed)
    }
}

/// Errors that are the caller's fault rather than check failures.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn usage(e: impl fmt::Display) -> UsageError {
    UsageError(e.to_string())
}

/// Tags module-specific checks with the module name.
fn for_module(n: &SemifreeModule, mut r: ValidationReport) -> ValidationReport {
    let tag = format!("module={}", n.name);
    for c in &mut r.checks {
        if !c.window.contains(&tag) {
            c.window = if c.window.is_empty() { tag.clone() } else { format!("{tag},{}", c.window) };
        }
    }
    r
}

fn selected<'a>(p: &'a Problem, s: &Settings) -> Result<Vec<&'a SemifreeModule>, UsageError> {
    match &s.module {
        None => Ok(p.modules.iter().collect()),
        Some(name) => match p.modules.iter().find(|m| &m.name == name) {
            Some(m) => Ok(vec![m]),
            None => Err(usage(format!("no module named {name:?} in the input"))),
        },
    }
}

pub fn run(p: &Problem, s: &Settings, report: &mut Report) -> Result<(), UsageError> {
    if s.max_degree == 0 && matches!(s.command, Command::Homology | Command::Semifree) {
        return Err(usage("--max-degree must be at least 1 for homology"));
    }
    if s.command == Command::Bar && !s.reduced && s.max_n.is_none() {
        return Err(usage("the classical bar resolution needs --max-n (or pass --reduced)"));
    }
    let modules = selected(p, s)?;
    let alg = &p.algebra;
    let dg = alg.validate_dg(s.max_degree);
    report.extend(&dg);
    if s.command == Command::Validate {
        for n in &p.modules {
            report.extend(&for_module(n, validate_module(alg, n)));
        }
        return Ok(());
    }
    if !dg.passed() {
        return Ok(());
    }
    match s.command {
        Command::Validate => unreachable!(),
        Command::Bar => bar(alg, s, report),
        Command::Semifree => semifree(alg, s, report),
        Command::Homology => homology(alg, &modules, s, report)?,
        Command::Lift => {
            for n in modules {
                lift(alg, n, s, report);
            }
        }
        Command::Derivations => derivations(p, s, report),
    }
    Ok(())
}

fn bar(alg: &DGAlgebra, s: &Settings, report: &mut Report) {
    if s.reduced {
        report.extend(&check_reduced_exactness(alg, s.max_degree));
        if s.max_degree > 0 {
            let h = homology_dims(alg, &HomologyObject::ReducedBar, s.max_degree).unwrap();
            report.tables.push(Table::homology("homology of the augmented reduced bar resolution", &h));
        }
    } else {
        report.extend(&check_classical_bar(alg, s.max_n.unwrap(), s.max_degree));
    }
}

fn semifree(alg: &DGAlgebra, s: &Settings, report: &mut Report) {
    report.extend(&check_semifree(alg, s.max_degree, s.samples, s.seed));
    let passing = suspension_arbiter(alg, s.max_degree);
    let mut t = Table::new("suspension convention", &["convention", "invariants"]);
    for conv in [Suspension::Negative, Suspension::Positive] {
        let verdict = if passing.contains(&conv) { "hold" } else { "fail" };
        t.row(vec![conv.to_string(), verdict.into()]);
    }
    report.tables.push(t);
    let (_, hbb, hb) = quasi_iso_check(alg, s.max_degree);
    report.tables.push(Table::homology("homology of B", &hb));
    report.tables.push(Table::homology("homology of the semifree resolution (total degree)", &hbb));
}

fn homology(alg: &DGAlgebra, modules: &[&SemifreeModule], s: &Settings, report: &mut Report) -> Result<(), UsageError> {
    let table = |obj: &HomologyObject| homology_dims(alg, obj, s.max_degree).map_err(usage);
    report.tables.push(Table::homology("homology of B", &table(&HomologyObject::B)?));
    report.tables.push(Table::homology("homology of the augmented reduced bar resolution", &table(&HomologyObject::ReducedBar)?));
    report.tables.push(Table::homology("homology of the semifree resolution (total degree)", &table(&HomologyObject::SemifreeBB)?));
    let max_n = s.max_n.unwrap_or(3);
    for n in modules {
        if !validate_module(alg, n).passed() {
            report.extend(&for_module(n, validate_module(alg, n)));
            continue;
        }
        let obj = HomologyObject::BarN { module: (*n).clone(), max_n };
        report.tables.push(Table::homology(format!("homology of {} (x)_B bar resolution, n<={max_n}", n.name), &table(&obj)?));
    }
    Ok(())
}

fn lift(alg: &DGAlgebra, n: &SemifreeModule, s: &Settings, report: &mut Report) {
    let valid = validate_module(alg, n);
    report.extend(&for_module(n, valid.clone()));
    if !valid.passed() {
        return;
    }
    let max_k = s.max_n.unwrap_or(3);
    let outcome = naive_lift_solve(alg, n).expect("validated module");
    report.extend(&for_module(n, lift_consistency(alg, n, &outcome, max_k, s.max_degree)));
    report.extend(&for_module(n, check_beta(alg, n)));
    report.extend(&for_module(n, check_bar_n(alg, n, max_k, s.max_degree)));
    report.extend(&for_module(n, lemma_sign_check(alg, n, s.samples, s.seed)));

    let size = outcome.system();
    let mut t = Table::new(format!("lifting system for {}", n.name), &["unknowns", "equations", "rank", "verdict"]);
    let verdict = if outcome.is_liftable() { "liftable" } else { "not liftable" };
    t.row(vec![size.unknowns.to_string(), size.equations.to_string(), size.rank.to_string(), verdict.into()]);
    report.tables.push(t);
    match &outcome {
        LiftOutcome::Liftable { rho, .. } => {
            let mut t = Table::new(format!("section rho for {}", n.name), &["basis", "rho"]);
            for (l, r) in rho.iter().enumerate() {
                t.row(vec![n.basis_name(l).to_string(), r.fmt(alg, n)]);
            }
            report.tables.push(t);
        }
        LiftOutcome::NotLiftable { certificate, .. } => {
            let mut t = Table::new(format!("infeasibility certificate for {}", n.name), &["equation", "coefficient"]);
            for (eq, c) in certificate {
                t.row(vec![eq.clone(), c.to_string()]);
            }
            report.tables.push(t);
        }
    }
    let mut t = Table::new(format!("beta for {}", n.name), &["basis", "beta"]);
    for (l, b) in beta_n(alg, n).iter().enumerate() {
        t.row(vec![n.basis_name(l).to_string(), b.fmt(alg, n)]);
    }
    report.tables.push(t);
}

fn derivations(p: &Problem, s: &Settings, report: &mut Report) {
    let alg = &p.algebra;
    report.extend(&check_derivations(alg, s.max_degree, s.samples, s.seed));
    for spec in &p.derivations {
        let d = spec.table(alg, s.max_degree);
        let window = format!("derivation={},arity={},degree<={}", spec.name, spec.arity, s.max_degree);
        let mut leibniz = d.validate(alg);
        leibniz.window = window.clone();
        report.push_check(&leibniz);
        let check = match eta_inverse(alg, &d) {
            Ok(f) => match eta(alg, &f) {
                Ok(back) if back == d => Check::pass("derivation.declared_round_trip", &window),
                Ok(_) => Check::fail("derivation.declared_round_trip", &window, "eta(eta^-1(D)) != D"),
                Err(e) => Check::fail("derivation.declared_round_trip", &window, e.to_string()),
            },
            Err(e @ CoreError::ObstructionNonzero(_)) => {
                Check::fail("derivation.declared_round_trip", &window, format!("ObstructionNonzero: {e}"))
            }
            Err(e) => Check::fail("derivation.declared_round_trip", &window, e.to_string()),
        };
        report.push_check(&check);
    }
}
