//! JSON front end for the `tenfold` classifier: input documents, reports
//! and the mapping from pipeline errors to process exit codes.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use tenfold::azclass::{build_path, homotopy_equivalent, Pi0Value};
use tenfold::coset::Linearity;
use tenfold::dirac::{classify_mass, DiracSystem};
use tenfold::group::{FiniteGroup, GroupAction, Parity};
use tenfold::linalg::{CMat, Mat};
use tenfold::nambu::{check_gap, fock_to_nambu, FockQuadratic, NambuHamiltonian};
use tenfold::{Error, Settings, SymmetryAnalysis};

pub const SCHEMA_VERSION: &str = "1";

/// Exit codes of the `tenfold` binary.
pub mod exit {
    pub const OK: i32 = 0;
    /// Internal numerical failure (a bug signal rather than bad input).
    pub const INTERNAL: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const SYMMETRY: i32 = 3;
    pub const GAPLESS: i32 = 4;
}

/// Exit code for a pipeline error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Validation(_) | Error::Precondition(_) => exit::VALIDATION,
        Error::Symmetry { .. } => exit::SYMMETRY,
        Error::Gapless { .. } => exit::GAPLESS,
        Error::Numerical(_)
        | Error::Flattening(_)
        | Error::Classification(_)
        | Error::Dimension(_)
        | Error::PathConstruction(_) => exit::INTERNAL,
    }
}

type Rows = Vec<Vec<f64>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityFlag {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub order: usize,
    pub mult: Vec<Vec<usize>>,
    pub parity: Vec<ParityFlag>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase", deny_unknown_fields)]
pub enum HamiltonianSection {
    /// Real antisymmetric matrix in the Majorana basis.
    Nambu { matrix: Rows },
    /// Hermitian `A` and antisymmetric `B`, entries as `[re, im]`.
    Fock {
        a: Vec<Vec<[f64; 2]>>,
        b: Vec<Vec<[f64; 2]>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiracSection {
    pub d: usize,
    pub gammas: Vec<Rows>,
    pub mass: Rows,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub schema_version: String,
    pub group: GroupSection,
    pub action: Vec<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian: Option<HamiltonianSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dirac: Option<DiracSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    /// Overrides the document tolerance when set.
    pub tol: Option<f64>,
    pub seed: u64,
    pub steps: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            tol: None,
            seed: 0,
            steps: 64,
        }
    }
}

impl Options {
    fn settings(&self, doc: &InputDocument) -> Settings {
        Settings {
            tol: self.tol.or(doc.tolerance).unwrap_or(Settings::default().tol),
            seed: self.seed,
        }
    }
}

pub fn parse_document(text: &str) -> Result<InputDocument, Error> {
    let doc: InputDocument =
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("cannot parse input document: {e}")))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::Validation(format!(
            "unsupported schema_version {:?} (expected {SCHEMA_VERSION:?})",
            doc.schema_version
        )));
    }
    if let Some(t) = doc.tolerance {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Validation(format!("tolerance must be positive, got {t}")));
        }
    }
    Ok(doc)
}

fn matrix(rows: &Rows, what: &str) -> Result<Mat, Error> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Validation(format!("{what} must be a nonempty square matrix")));
    }
    if rows.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Validation(format!("{what} has non-finite entries")));
    }
    Ok(DMatrix::from_fn(n, n, |r, c| rows[r][c]))
}

fn cmatrix(rows: &[Vec<[f64; 2]>], what: &str) -> Result<CMat, Error> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Validation(format!("{what} must be a nonempty square matrix")));
    }
    Ok(DMatrix::from_fn(n, n, |r, c| {
        let [re, im] = rows[r][c];
        nalgebra::Complex::new(re, im)
    }))
}

pub fn build_action(doc: &InputDocument, tol: f64) -> Result<GroupAction, Error> {
    let g = &doc.group;
    if g.mult.len() != g.order || g.parity.len() != g.order || doc.action.len() != g.order {
        return Err(Error::Validation(format!(
            "group order {} disagrees with the table ({} rows), parity flags ({}) or action ({} matrices)",
            g.order,
            g.mult.len(),
            g.parity.len(),
            doc.action.len()
        )));
    }
    let group = FiniteGroup::from_table(g.mult.clone())?;
    let mats = doc
        .action
        .iter()
        .enumerate()
        .map(|(i, m)| matrix(m, &format!("action matrix {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let parity = g
        .parity
        .iter()
        .map(|p| match p {
            ParityFlag::Even => Parity::Even,
            ParityFlag::Odd => Parity::Odd,
        })
        .collect();
    GroupAction::new(group, mats, parity, tol.max(1e-9))
}

pub fn build_hamiltonian(doc: &InputDocument, tol: f64) -> Result<Mat, Error> {
    match &doc.hamiltonian {
        None => Err(Error::Validation("the document has no hamiltonian section".into())),
        Some(HamiltonianSection::Nambu { matrix: rows }) => {
            Ok(NambuHamiltonian::new(matrix(rows, "nambu matrix")?, tol)?.into_matrix())
        }
        Some(HamiltonianSection::Fock { a, b }) => {
            let fq = FockQuadratic::new(cmatrix(a, "fock A")?, cmatrix(b, "fock B")?, tol)?;
            Ok(fock_to_nambu(&fq).into_matrix())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Pi0Json {
    Trivial,
    Sign(i8),
    Splitting(usize),
}

impl From<Pi0Value> for Pi0Json {
    fn from(v: Pi0Value) -> Self {
        match v {
            Pi0Value::Trivial => Pi0Json::Trivial,
            Pi0Value::Sign(s) => Pi0Json::Sign(s),
            Pi0Value::Splitting(m) => Pi0Json::Splitting(m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitRecord {
    pub lambda: Vec<usize>,
    pub f_type: String,
    pub cartan: String,
    pub extension: String,
    pub class_index_n: u32,
    pub ktheory_index: u32,
    pub space: String,
    pub k: usize,
    pub phi_sq_sign: Option<i8>,
    pub linearity: Option<String>,
    pub pi0: Pi0Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flags {
    pub time_reversal: bool,
    pub normal_system: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifyReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub dimension: usize,
    pub group_order: usize,
    pub gap: f64,
    pub flags: Flags,
    pub orbits: Vec<OrbitRecord>,
    pub component_count: usize,
}

fn flags(an: &SymmetryAnalysis) -> Flags {
    Flags {
        time_reversal: an.flags.time_reversal,
        normal_system: an.flags.normal_system,
    }
}

pub fn classify(doc: &InputDocument, opts: &Options) -> Result<ClassifyReport, Error> {
    let settings = opts.settings(doc);
    let act = build_action(doc, settings.tol)?;
    let h = build_hamiltonian(doc, settings.tol)?;
    let an = SymmetryAnalysis::new(act, settings)?;
    let cls = an.classify(&h)?;
    let orbits = cls
        .orbits
        .iter()
        .map(|o| {
            let a = &o.assignment;
            OrbitRecord {
                lambda: a.orbit.clone(),
                f_type: a.algebra.symbol().to_string(),
                cartan: a.cartan.to_string(),
                extension: a.extension.to_string(),
                class_index_n: a.class_index_n,
                ktheory_index: a.ktheory_index,
                space: a.space.clone(),
                k: a.k,
                phi_sq_sign: a.phi_sq_sign,
                linearity: a.linearity.map(|l| match l {
                    Linearity::FLinear => "F-linear".to_string(),
                    Linearity::CAntilinear => "C-antilinear".to_string(),
                }),
                pi0: o.pi0.value.into(),
            }
        })
        .collect();
    Ok(ClassifyReport {
        schema_version: SCHEMA_VERSION,
        command: "classify",
        dimension: h.nrows(),
        group_order: an.action.group().order(),
        gap: cls.gap,
        flags: flags(&an),
        orbits,
        component_count: cls.component_count(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitDiff {
    pub lambda: Vec<usize>,
    pub cartan: String,
    pub first: Pi0Json,
    pub second: Pi0Json,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathReport {
    pub steps: usize,
    pub gaps: Vec<f64>,
    pub samples: Vec<Rows>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub equivalent: bool,
    pub orbits: Vec<OrbitDiff>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathReport>,
}

fn rows(m: &Mat) -> Rows {
    (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect()
}

/// Compares two documents that share one group and action.
pub fn compare(
    first: &InputDocument,
    second: &InputDocument,
    with_path: bool,
    opts: &Options,
) -> Result<CompareReport, Error> {
    if first.group != second.group || first.action != second.action {
        return Err(Error::Validation(
            "the two inputs must share an identical group and action section".into(),
        ));
    }
    let settings = opts.settings(first);
    let act = build_action(first, settings.tol)?;
    let h1 = build_hamiltonian(first, settings.tol)?;
    let h2 = build_hamiltonian(second, settings.tol)?;
    let an = SymmetryAnalysis::new(act, settings)?;
    let eq = homotopy_equivalent(&an, &h1, &h2)?;
    let orbits = eq
        .certificate
        .iter()
        .map(|c| OrbitDiff {
            lambda: c.orbit.clone(),
            cartan: c.cartan.to_string(),
            first: c.first.into(),
            second: c.second.into(),
            agrees: c.agrees(),
        })
        .collect();
    let path = if with_path && eq.equivalent {
        let samples = build_path(&an, &h1, &h2, opts.steps)?;
        Some(PathReport {
            steps: opts.steps,
            gaps: samples.iter().map(|s| check_gap(s, settings.tol).gap).collect(),
            samples: samples.iter().map(rows).collect(),
        })
    } else {
        None
    };
    Ok(CompareReport {
        schema_version: SCHEMA_VERSION,
        command: "compare",
        equivalent: eq.equivalent,
        orbits,
        path,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassRecord {
    pub lambda: Vec<usize>,
    pub cartan: String,
    pub class_index_n: u32,
    pub d: usize,
    pub extension: String,
    pub n_minus_d_mod: u32,
    pub case: u8,
    pub n_lambda: usize,
    pub k: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiracReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub d: usize,
    pub flags: Flags,
    pub orbits: Vec<MassRecord>,
    pub total: usize,
}

pub fn dirac(doc: &InputDocument, opts: &Options) -> Result<DiracReport, Error> {
    let settings = opts.settings(doc);
    let section = doc
        .dirac
        .as_ref()
        .ok_or_else(|| Error::Validation("the document has no dirac section".into()))?;
    if section.gammas.len() != section.d {
        return Err(Error::Validation(format!(
            "dirac section declares d = {} but lists {} gamma matrices",
            section.d,
            section.gammas.len()
        )));
    }
    let act = build_action(doc, settings.tol)?;
    let gammas = section
        .gammas
        .iter()
        .enumerate()
        .map(|(i, g)| matrix(g, &format!("gamma {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let mass = matrix(&section.mass, "mass")?;
    let an = SymmetryAnalysis::new(act.clone(), settings)?;
    let ds = DiracSystem::new(gammas, mass, act);
    let mc = classify_mass(&ds, &an)?;
    Ok(DiracReport {
        schema_version: SCHEMA_VERSION,
        command: "dirac",
        d: section.d,
        flags: flags(&an),
        orbits: mc
            .orbits
            .iter()
            .map(|o| MassRecord {
                lambda: o.orbit.clone(),
                cartan: o.cartan.to_string(),
                class_index_n: o.class_index_n,
                d: o.d,
                extension: o.extension.to_string(),
                n_minus_d_mod: o.n_minus_d_mod,
                case: o.case.number(),
                n_lambda: o.count,
                k: o.k,
            })
            .collect(),
        total: mc.total,
    })
}

fn pi0_text(p: &Pi0Json) -> String {
    match p {
        Pi0Json::Trivial => "trivial".into(),
        Pi0Json::Sign(s) => format!("sign {s:+}"),
        Pi0Json::Splitting(m) => format!("m={m}"),
    }
}

impl ClassifyReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "dimension {} | group order {} | gap {:.6} | time reversal {} | normal system {}\n",
            self.dimension, self.group_order, self.gap, self.flags.time_reversal, self.flags.normal_system
        );
        for o in &self.orbits {
            out += &format!(
                "orbit {:?}: F={} class {} (n={}) {} space {} k={} pi0 {}\n",
                o.lambda,
                o.f_type,
                o.cartan,
                o.class_index_n,
                o.extension,
                o.space,
                o.k,
                pi0_text(&o.pi0)
            );
        }
        out += &format!("components: {}\n", self.component_count);
        out
    }
}

impl CompareReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("equivalent: {}\n", self.equivalent);
        for o in &self.orbits {
            out += &format!(
                "orbit {:?}: class {} {} vs {}{}\n",
                o.lambda,
                o.cartan,
                pi0_text(&o.first),
                pi0_text(&o.second),
                if o.agrees { "" } else { "  <- differs" }
            );
        }
        if let Some(p) = &self.path {
            let min = p.gaps.iter().copied().fold(f64::INFINITY, f64::min);
            out += &format!("path: {} steps, minimum gap {min:.6}\n", p.steps);
        }
        out
    }
}

impl DiracReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("d = {}\n", self.d);
        for o in &self.orbits {
            out += &format!(
                "orbit {:?}: class {} {} n-d={} case {} N={}{}\n",
                o.lambda,
                o.cartan,
                o.extension,
                o.n_minus_d_mod,
                o.case,
                o.n_lambda,
                o.k.map(|k| format!(" (k={k})")).unwrap_or_default()
            );
        }
        out += &format!("total N = {}\n", self.total);
        out
    }
}
