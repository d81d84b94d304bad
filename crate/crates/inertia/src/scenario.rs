//! Scenario files and their execution: a declarative JSON document selects
//! an action (finite group generators or circle weights), bounds, and a task
//! list; the runner writes dimension tables and verification verdicts and
//! maps failures onto exit codes (0 pass, 1 verification failure, 2 input
//! error, 3 guard violation).

use std::fs;
use std::path::{Path, PathBuf};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::forms::{graded_basis, CoordinateSpace, PolyForm, PolyVectorField};
use crate::groups::{
    close_generators, fixed_subspace, pullback_matrix, reynolds_projector,
    CircleAction, FiniteGroup, Matrix,
};
use crate::hochschild::{
    bar_differential_twisted, brute_crossed_hh0, brute_twisted_hh_table,
    chain_basis, crossed_product_hh_finite, SizeGuard, TensorChain,
};
use crate::koszul::{
    build_twisted_koszul, circle_stalk_homology, euler_koszul_check,
    fixed_space_form_dim, fixed_projection, koszul_homotopy, twisted_field,
};
use crate::relforms::{
    basic_forms_table, finite_group_basic_table, horizontal_matches_stalk,
    theta_injectivity_check, vanishing_ideal_check, CheckReport, CheckRow,
};
use crate::report;
use crate::scalar::Scalar;
use crate::text::{form_string, parse_scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Koszul,
    BarOracle,
    HkrFinite,
    CircleStrata,
    BasicForms,
    VanishingIdeal,
    ThetaCheck,
    VerifyAll,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    pub kmax: usize,
    pub nmax: usize,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    Real(usize),
    ComplexPairs(usize),
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionSpec {
    FiniteGroup {
        space: SpaceSpec,
        generators: Vec<Vec<Vec<String>>>,
        #[serde(default)]
        bound: Option<usize>,
    },
    Circle { weights: Vec<i64> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub action: ActionSpec,
    pub bounds: Bounds,
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub enum Action {
    Finite(FiniteGroup),
    Circle(CircleAction),
}

/// Command-line overrides applied on top of the scenario file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub verify_only: bool,
}

/// Absolute ceiling on scenario bounds, independent of the bar-complex
/// guard; exceeding it is a guard violation.
const GLOBAL_KMAX: usize = 6;
const GLOBAL_NMAX: usize = 12;
/// Default cap on group closure size; override with INERTIA_GROUP_BOUND.
const DEFAULT_GROUP_BOUND: usize = 64;

fn env_usize(name: &str) -> Option<usize> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

pub fn effective_guard() -> SizeGuard {
    let mut guard = SizeGuard::default();
    if let Some(k) = env_usize("INERTIA_BAR_KMAX") {
        guard.kmax = k;
    }
    if let Some(n) = env_usize("INERTIA_BAR_NMAX") {
        guard.nmax = n;
    }
    guard
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<Matrix> {
    rows.iter()
        .map(|r| r.iter().map(|s| parse_scalar(s)).collect())
        .collect()
}

struct Engine {
    action: Action,
    kmax: usize,
    nmax: usize,
    guard: SizeGuard,
    format: Format,
    out: PathBuf,
    seed: u64,
}

impl Engine {
    fn from_file(file: ScenarioFile, ov: &Overrides) -> Result<Engine> {
        let Bounds { kmax, nmax } = file.bounds;
        if kmax > GLOBAL_KMAX || nmax > GLOBAL_NMAX {
            return Err(Error::SizeGuardExceeded {
                k: kmax,
                n: nmax,
                dim: 0,
            });
        }
        if file.tasks.is_empty() {
            return Err(Error::Scenario("task list is empty".into()));
        }
        let action = match file.action {
            ActionSpec::Circle { weights } => Action::Circle(CircleAction::new(weights)?),
            ActionSpec::FiniteGroup {
                space,
                generators,
                bound,
            } => {
                let space = match space {
                    SpaceSpec::Real(d) => CoordinateSpace::Real(d),
                    SpaceSpec::ComplexPairs(m) => CoordinateSpace::ComplexPairs(m),
                };
                if space.num_vars() == 0 {
                    return Err(Error::Scenario("empty coordinate space".into()));
                }
                let gens: Vec<Matrix> = generators
                    .iter()
                    .map(|g| parse_matrix(g))
                    .collect::<Result<_>>()?;
                let bound = bound
                    .or_else(|| env_usize("INERTIA_GROUP_BOUND"))
                    .unwrap_or(DEFAULT_GROUP_BOUND);
                Action::Finite(close_generators(space, &gens, bound)?)
            }
        };
        let format = ov.format.or(file.format).unwrap_or(Format::Json);
        let out = ov
            .out
            .clone()
            .or_else(|| file.out.as_ref().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        let seed = ov.seed.or(file.seed).unwrap_or(0x1ECC);
        Ok(Engine {
            action,
            kmax,
            nmax,
            guard: effective_guard(),
            format,
            out,
            seed,
        })
    }

    fn ext(&self) -> &'static str {
        match self.format {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }

    fn write(&self, name: &str, content: &str) -> Result<()> {
        fs::create_dir_all(&self.out)
            .map_err(|e| Error::Scenario(format!("cannot create output dir: {}", e)))?;
        let path = self.out.join(format!("{}.{}", name, self.ext()));
        fs::write(&path, content)
            .map_err(|e| Error::Scenario(format!("cannot write {}: {}", path.display(), e)))
    }

    fn homology_artifact(&self, r: &crate::koszul::HomologyReport) -> String {
        match self.format {
            Format::Json => report::homology_to_json(r),
            Format::Csv => report::homology_to_csv(r),
        }
    }

    fn check_artifact(&self, r: &CheckReport) -> String {
        match self.format {
            Format::Json => report::check_report_to_json(r),
            Format::Csv => report::check_report_to_csv(r),
        }
    }

    fn finite(&self) -> Result<&FiniteGroup> {
        match &self.action {
            Action::Finite(g) => Ok(g),
            Action::Circle(_) => Err(Error::Scenario(
                "task requires a finite group action".into(),
            )),
        }
    }

    fn circle(&self) -> Result<&CircleAction> {
        match &self.action {
            Action::Circle(a) => Ok(a),
            Action::Finite(_) => Err(Error::Scenario(
                "task requires a circle action".into(),
            )),
        }
    }

    fn run_task(&self, task: Task) -> Result<CheckReport> {
        match task {
            Task::Koszul => {
                let g = self.finite()?;
                for (i, h) in g.elements.iter().enumerate() {
                    let c = build_twisted_koszul(g.space, h, self.nmax)?;
                    let mut rep = c.homology(self.kmax, self.nmax);
                    rep.stratum = format!("gamma{}", i);
                    self.write(&format!("koszul-gamma{}", i), &self.homology_artifact(&rep))?;
                }
                Ok(CheckReport::default())
            }
            Task::BarOracle => {
                let g = self.finite()?;
                self.check_bar_bounds()?;
                for (i, h) in g.elements.iter().enumerate() {
                    let mut rep = brute_twisted_hh_table(
                        g.space, h, self.kmax, self.nmax, self.guard,
                    )?;
                    rep.stratum = format!("gamma{}", i);
                    self.write(
                        &format!("bar-oracle-gamma{}", i),
                        &self.homology_artifact(&rep),
                    )?;
                }
                Ok(CheckReport::default())
            }
            Task::HkrFinite => {
                let g = self.finite()?;
                let rep = crossed_product_hh_finite(g, self.kmax, self.nmax)?;
                self.write("hkr-finite-total", &self.homology_artifact(&rep.total))?;
                Ok(CheckReport::default())
            }
            Task::CircleStrata => {
                let a = self.circle()?;
                for j in 0..a.w {
                    let rep = circle_stalk_homology(a, j, self.kmax, self.nmax)?;
                    self.write(
                        &format!("circle-stalk-j{}", j),
                        &self.homology_artifact(&rep),
                    )?;
                }
                Ok(CheckReport::default())
            }
            Task::BasicForms => {
                match &self.action {
                    Action::Circle(a) => {
                        let table = basic_forms_table(a, self.kmax, self.nmax)?;
                        let content = match self.format {
                            Format::Json => report::basic_table_to_json(&table),
                            Format::Csv => report::basic_table_to_csv(&table),
                        };
                        self.write("basic-forms", &content)?;
                    }
                    Action::Finite(g) => {
                        let rep = finite_group_basic_table(g, self.kmax, self.nmax)?;
                        self.write("basic-forms", &self.homology_artifact(&rep))?;
                    }
                }
                Ok(CheckReport::default())
            }
            Task::VanishingIdeal => {
                let a = self.circle()?;
                let mut all = CheckReport::default();
                for j in 0..a.w {
                    let rep = vanishing_ideal_check(a, j, self.nmax)?;
                    self.write(&format!("vanishing-ideal-j{}", j), &self.check_artifact(&rep))?;
                    all.rows.extend(rep.rows.into_iter().map(|mut r| {
                        r.label = format!("ideal j={} {}", j, r.label);
                        r
                    }));
                }
                Ok(all)
            }
            Task::ThetaCheck => {
                let a = self.circle()?;
                let mut all = CheckReport::default();
                for j in 0..a.w {
                    for k in 0..=self.kmax {
                        let rep = theta_injectivity_check(a, j, k, self.nmax)?;
                        self.write(
                            &format!("theta-j{}-k{}", j, k),
                            &self.check_artifact(&rep),
                        )?;
                        all.rows.extend(rep.rows.into_iter().map(|mut r| {
                            r.label = format!("theta j={} {}", j, r.label);
                            r
                        }));
                    }
                }
                Ok(all)
            }
            Task::VerifyAll => self.verify_all(),
        }
    }

    fn check_bar_bounds(&self) -> Result<()> {
        if self.kmax > self.guard.kmax || self.nmax > self.guard.nmax {
            return Err(Error::SizeGuardExceeded {
                k: self.kmax,
                n: self.nmax,
                dim: 0,
            });
        }
        Ok(())
    }

    fn verify_all(&self) -> Result<CheckReport> {
        let mut rows = Vec::new();
        match &self.action {
            Action::Finite(g) => rows.extend(self.verify_finite(g)?),
            Action::Circle(a) => rows.extend(self.verify_circle(a)?),
        }
        rows.extend(self.verify_structural()?);
        let report = CheckReport { rows };
        self.write("verify-all", &self.check_artifact(&report))?;
        Ok(report)
    }

    /// Koszul = bar oracle = fixed-space dimension, per group element;
    /// crossed product vs brute HH₀; homotopy identity on diagonal elements.
    fn verify_finite(&self, g: &FiniteGroup) -> Result<Vec<CheckRow>> {
        self.check_bar_bounds()?;
        let mut rows = Vec::new();
        for (i, h) in g.elements.iter().enumerate() {
            let complex = build_twisted_koszul(g.space, h, self.nmax)?;
            let koszul = complex.homology(self.kmax, self.nmax);
            let bar = brute_twisted_hh_table(g.space, h, self.kmax, self.nmax, self.guard)?;
            let f = fixed_subspace(g.space, h)?.len();
            for k in 0..=self.kmax {
                for n in 0..=self.nmax {
                    let expect = fixed_space_form_dim(f, k, n);
                    rows.push(CheckRow {
                        label: format!("koszul=expected gamma{} k={}", i, k),
                        degree: n,
                        lhs: koszul.table[&(k, n)],
                        rhs: expect,
                    });
                    rows.push(CheckRow {
                        label: format!("bar=expected gamma{} k={}", i, k),
                        degree: n,
                        lhs: bar.table[&(k, n)],
                        rhs: expect,
                    });
                }
            }
        }
        let crossed = crossed_product_hh_finite(g, self.kmax, self.nmax)?;
        for n in 0..=self.nmax {
            rows.push(CheckRow {
                label: "crossed-product=brute-HH0".into(),
                degree: n,
                lhs: crossed.total.table[&(0, n)],
                rhs: brute_crossed_hh0(g, n)?,
            });
        }
        rows.extend(self.verify_homotopy(g)?);
        Ok(rows)
    }

    /// Homotopy identity on every monomial basis form, for diagonal
    /// elements (the identity holds in eigencoordinates).
    fn verify_homotopy(&self, g: &FiniteGroup) -> Result<Vec<CheckRow>> {
        let mut rows = Vec::new();
        for (i, h) in g.elements.iter().enumerate() {
            let full = crate::forms::expand_block_matrix(g.space, h)?;
            let diagonal = full
                .iter()
                .enumerate()
                .all(|(r, row)| {
                    row.iter().enumerate().all(|(c, v)| r == c || v.is_zero())
                });
            if !diagonal {
                continue;
            }
            let field = twisted_field(g.space, h)?;
            let mut failures = 0usize;
            let mut total = 0usize;
            for k in 0..=self.kmax {
                for n in k..=self.nmax.min(5) {
                    for omega in graded_basis(g.space, k, n) {
                        total += 1;
                        let s = koszul_homotopy(g.space, h, &omega)?;
                        let lhs = s
                            .contract(&field)?
                            .add(&koszul_homotopy(g.space, h, &omega.contract(&field)?)?)?;
                        let rhs = omega.sub(&fixed_projection(g.space, h, &omega)?)?;
                        if lhs != rhs {
                            failures += 1;
                            eprintln!(
                                "homotopy witness gamma{}: omega = {}",
                                i,
                                form_string(&omega)
                            );
                        }
                    }
                }
            }
            rows.push(CheckRow {
                label: format!("homotopy-identity gamma{}", i),
                degree: total,
                lhs: failures,
                rhs: 0,
            });
        }
        Ok(rows)
    }

    fn verify_circle(&self, a: &CircleAction) -> Result<Vec<CheckRow>> {
        let mut rows = Vec::new();
        rows.extend(horizontal_matches_stalk(a, self.kmax, self.nmax)?.rows);
        for j in 0..a.w {
            let rep = vanishing_ideal_check(a, j, self.nmax)?;
            rows.extend(rep.rows.into_iter().map(|mut r| {
                r.label = format!("ideal j={} {}", j, r.label);
                r
            }));
            for k in 0..=self.kmax {
                let rep = theta_injectivity_check(a, j, k, self.nmax)?;
                rows.extend(rep.rows.into_iter().map(|mut r| {
                    r.label = format!("theta j={} {}", j, r.label);
                    r
                }));
            }
        }
        // Table invariants: basic ≤ horizontal ≤ relative and j ↔ w−j.
        let table = basic_forms_table(a, self.kmax, self.nmax)?;
        let monotone = table
            .rows
            .iter()
            .filter(|r| r.dim_basic > r.dim_horizontal || r.dim_horizontal > r.dim_relative)
            .count();
        rows.push(CheckRow {
            label: "basic<=horizontal<=relative violations".into(),
            degree: table.rows.len(),
            lhs: monotone,
            rhs: 0,
        });
        let rows_at = |label: &str| -> Vec<(usize, usize, usize, usize, usize)> {
            table
                .rows
                .iter()
                .filter(|r| r.stratum == label)
                .map(|r| (r.k, r.n, r.dim_relative, r.dim_horizontal, r.dim_basic))
                .collect()
        };
        let mut asym = 0usize;
        for j in 1..a.w {
            if rows_at(&format!("j={}/{}", j, a.w))
                != rows_at(&format!("j={}/{}", a.w - j, a.w))
            {
                asym += 1;
            }
        }
        rows.push(CheckRow {
            label: "conjugate-strata symmetry violations".into(),
            degree: a.w as usize,
            lhs: asym,
            rhs: 0,
        });
        Ok(rows)
    }

    /// Seeded structural invariants: d² = 0, i_Y² = 0, b² = 0 (twisted),
    /// Reynolds idempotence, Euler exactness, and byte-determinism.
    fn verify_structural(&self) -> Result<Vec<CheckRow>> {
        let mut rng = StdRng::seed_from_u64(self.seed);
        let space = match &self.action {
            Action::Finite(g) => g.space,
            Action::Circle(a) => a.space(),
        };
        let d = space.num_vars();
        let mut rows = Vec::new();

        let random_form = |rng: &mut StdRng, k: usize, n: usize| -> PolyForm {
            let mut f = PolyForm::zero(space);
            for b in graded_basis(space, k, n) {
                let c: i64 = rng.gen_range(-3..=3);
                if c != 0 {
                    f = f.add(&b.scale(&Scalar::from_int(c))).expect("same space");
                }
            }
            f
        };
        let random_matrix = |rng: &mut StdRng| -> Vec<Vec<Scalar>> {
            (0..d)
                .map(|_| {
                    (0..d)
                        .map(|_| Scalar::from_int(rng.gen_range(-2..=2)))
                        .collect()
                })
                .collect()
        };

        let mut failures = 0usize;
        let trials = 8usize;
        for _ in 0..trials {
            let k = rng.gen_range(0..=self.kmax.min(d));
            let n = rng.gen_range(k..=self.nmax.min(4).max(k));
            let omega = random_form(&mut rng, k, n);
            if !omega.d_rel().d_rel().is_zero() {
                failures += 1;
                eprintln!("d² witness: {}", form_string(&omega));
            }
            let y = PolyVectorField::linear(space, &random_matrix(&mut rng))?;
            if !omega.contract(&y)?.contract(&y)?.is_zero() {
                failures += 1;
                eprintln!("i_Y² witness: {}", form_string(&omega));
            }
        }
        rows.push(CheckRow {
            label: "d^2=0 and i_Y^2=0 random trials".into(),
            degree: trials,
            lhs: failures,
            rhs: 0,
        });

        // Twisted bar differential squares to zero on random chains.
        let h: Matrix = match &self.action {
            Action::Finite(g) => {
                let i = rng.gen_range(0..g.order());
                g.elements[i].clone()
            }
            Action::Circle(_) => {
                // Any unitary diagonal twist exercises the same identity.
                let block = match space {
                    CoordinateSpace::Real(d) => d,
                    CoordinateSpace::ComplexPairs(m) => m,
                };
                let mut m = crate::groups::mat_identity(block);
                for r in 0..block {
                    if rng.gen_bool(0.5) {
                        m[r][r] = Scalar::from_int(-1);
                    }
                }
                m
            }
        };
        let mut bar_failures = 0usize;
        let mut bar_total = 0usize;
        for k in 1..=2usize {
            for n in 0..=self.nmax.min(3) {
                let basis = chain_basis(space, k, n);
                if basis.is_empty() {
                    continue;
                }
                let mut chain = TensorChain::zero(space, k);
                for t in &basis {
                    let c: i64 = rng.gen_range(-2..=2);
                    if c != 0 {
                        chain.add_term(t.clone(), Scalar::from_int(c));
                    }
                }
                bar_total += 1;
                let bb = bar_differential_twisted(
                    &bar_differential_twisted(&chain, &h)?,
                    &h,
                )?;
                if !bb.is_zero() {
                    bar_failures += 1;
                }
            }
        }
        rows.push(CheckRow {
            label: "b^2=0 random trials".into(),
            degree: bar_total,
            lhs: bar_failures,
            rhs: 0,
        });

        if let Action::Finite(g) = &self.action {
            let mut rey_failures = 0usize;
            let mut rey_total = 0usize;
            for k in 0..=self.kmax.min(2) {
                for n in 0..=self.nmax.min(3) {
                    rey_total += 1;
                    let p = reynolds_projector(g, k, n)?;
                    if p.mat_mul(&p) != p {
                        rey_failures += 1;
                    }
                    for el in &g.elements {
                        let pg = pullback_matrix(g.space, el, k, n)?;
                        if pg.mat_mul(&p) != p {
                            rey_failures += 1;
                        }
                    }
                }
            }
            rows.push(CheckRow {
                label: "reynolds idempotence and invariance".into(),
                degree: rey_total,
                lhs: rey_failures,
                rhs: 0,
            });
        }

        // Euler-like exactness on 1–3 non-fixed variables.
        let mut euler_failures = 0usize;
        for v in 1..=3usize {
            let rep = euler_koszul_check(CoordinateSpace::Real(v), &[], v, self.nmax.min(4))?;
            for (&(k, n), &dim) in &rep.table {
                let expect = if (k, n) == (0, 0) { 1 } else { 0 };
                if dim != expect {
                    euler_failures += 1;
                }
            }
        }
        rows.push(CheckRow {
            label: "euler exactness".into(),
            degree: 3,
            lhs: euler_failures,
            rhs: 0,
        });

        // Determinism: recompute a representative artifact and compare bytes.
        let (a1, a2) = match &self.action {
            Action::Finite(g) => (
                self.homology_artifact(&finite_group_basic_table(g, self.kmax, self.nmax)?),
                self.homology_artifact(&finite_group_basic_table(g, self.kmax, self.nmax)?),
            ),
            Action::Circle(a) => {
                let t1 = basic_forms_table(a, self.kmax, self.nmax)?;
                let t2 = basic_forms_table(a, self.kmax, self.nmax)?;
                (
                    report::basic_table_to_json(&t1),
                    report::basic_table_to_json(&t2),
                )
            }
        };
        rows.push(CheckRow {
            label: "deterministic output bytes".into(),
            degree: a1.len(),
            lhs: usize::from(a1 != a2),
            rhs: 0,
        });
        Ok(rows)
    }
}

fn classify(e: &Error) -> i32 {
    match e {
        Error::SizeGuardExceeded { .. } | Error::NotClosedWithinBound(_) => 3,
        _ => 2,
    }
}

/// Load, validate, and execute a scenario; returns the process exit code.
pub fn execute(path: &Path, ov: &Overrides) -> i32 {
    match run_inner(path, ov) {
        Ok(report) => {
            let failing: Vec<&CheckRow> =
                report.rows.iter().filter(|r| r.lhs != r.rhs).collect();
            if failing.is_empty() {
                0
            } else {
                for r in failing {
                    eprintln!(
                        "verification failure: {} (degree {}): {} != {}",
                        r.label, r.degree, r.lhs, r.rhs
                    );
                }
                1
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            classify(&e)
        }
    }
}

fn run_inner(path: &Path, ov: &Overrides) -> Result<CheckReport> {
    let raw = fs::read_to_string(path)
        .map_err(|e| Error::Scenario(format!("cannot read {}: {}", path.display(), e)))?;
    let file: ScenarioFile = serde_json::from_str(&raw)
        .map_err(|e| Error::Scenario(format!("invalid scenario: {}", e)))?;
    let tasks: Vec<Task> = if ov.verify_only {
        vec![Task::VerifyAll]
    } else {
        file.tasks.clone()
    };
    let engine = Engine::from_file(file, ov)?;
    let mut all = CheckReport::default();
    for task in tasks {
        let rep = engine.run_task(task)?;
        all.rows.extend(rep.rows);
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_parses() {
        let doc = r#"{
            "action": {"finite_group": {"space": {"real": 2},
                        "generators": [[["-1","0"],["0","-1"]]]}},
            "bounds": {"kmax": 1, "nmax": 2},
            "tasks": ["koszul", "verify-all"],
            "format": "csv",
            "seed": 7
        }"#;
        let f: ScenarioFile = serde_json::from_str(doc).unwrap();
        assert_eq!(f.tasks, vec![Task::Koszul, Task::VerifyAll]);
        assert_eq!(f.format, Some(Format::Csv));
    }

    #[test]
    fn zero_weight_rejected() {
        let doc = r#"{
            "action": {"circle": {"weights": [0, 1]}},
            "bounds": {"kmax": 1, "nmax": 2},
            "tasks": ["circle-strata"]
        }"#;
        let f: ScenarioFile = serde_json::from_str(doc).unwrap();
        let err = match Engine::from_file(f, &Overrides::default()) {
            Err(e) => e,
            Ok(_) => panic!("expected an error"),
        };
        assert!(matches!(err, Error::Scenario(_)));
        assert_eq!(classify(&err), 2);
    }

    #[test]
    fn oversized_bounds_hit_guard() {
        let doc = r#"{
            "action": {"circle": {"weights": [1]}},
            "bounds": {"kmax": 2, "nmax": 50},
            "tasks": ["bar-oracle"]
        }"#;
        let f: ScenarioFile = serde_json::from_str(doc).unwrap();
        let err = match Engine::from_file(f, &Overrides::default()) {
            Err(e) => e,
            Ok(_) => panic!("expected an error"),
        };
        assert_eq!(classify(&err), 3);
    }
}
