//! The embedded classification database.
//!
//! Everything is read from a data directory laid out as
//!
//! ```text
//! catalog/type13/*.alg   catalog/type22/*.alg   catalog/type31/*.alg
//! catalog/typeXY/components.txt
//! catalog/lowdim/*.alg
//! catalog/graphs/dim{1,2,3}.edges   catalog/graphs/dim{1,2,3}.adj
//! witnesses/*.wit   closedsets/*.cs   errata.txt
//! ```
//!
//! The directory shipped with this crate is used unless the environment
//! variable named by [`DATA_ROOT_ENV`] points elsewhere.

mod decomposition;
mod errata;
mod graph;
mod lowdim;

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::exactmath::{Expr, Rational};
use crate::invariants::orbit_dimension;
use crate::superalg::{parse_alg_file, AlgRecord, LoadError, SuperAlgebra};

pub use decomposition::{check_decomposition, DecompositionCheck};
pub use errata::Errata;
pub use graph::ReferenceGraph;
pub use lowdim::{direct_sum, summands, LowDim, LowDimEntry};

pub const DATA_ROOT_ENV: &str = "JSUPER_DATA";

/// The four-dimensional types in catalog order.
pub const TYPES: [(usize, usize); 3] = [(1, 3), (2, 2), (3, 1)];

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown algebra `{0}`")]
    UnknownName(String),
    #[error("`{0}` is a family and needs a parameter value")]
    MissingParameter(String),
    #[error("`{0}` is not a family")]
    UnexpectedParameter(String),
    #[error("unknown graph node `{0}`")]
    UnknownNode(String),
    #[error("`{name}` fails the super-Jordan check: {detail}")]
    IdentityFailure { name: String, detail: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Load { path: PathBuf, source: LoadError },
    #[error("format error: {0}")]
    Format(String),
    #[error("duplicate algebra name `{0}`")]
    DuplicateName(String),
    #[error("no catalog data for type ({0},{1})")]
    UnknownType(usize, usize),
}

pub fn default_data_root() -> PathBuf {
    match std::env::var_os(DATA_ROOT_ENV) {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("data"),
    }
}

pub fn type_dir(m: usize, n: usize) -> String {
    format!("type{m}{n}")
}

/// Parses `13`, `1,3` or `(1,3)` into a type.
pub fn parse_type(s: &str) -> Option<(usize, usize)> {
    let t: String = s.chars().filter(char::is_ascii_digit).collect();
    let mut it = t.chars().map(|c| c.to_digit(10).map(|d| d as usize));
    match (it.next()??, it.next()??, it.next()) {
        (m, n, None) => Some((m, n)),
        _ => None,
    }
}

fn read(path: &Path) -> Result<String, CatalogError> {
    fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn alg_files(dir: &Path) -> Result<Vec<PathBuf>, CatalogError> {
    let rd = fs::read_dir(dir).map_err(|source| CatalogError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "alg"))
        .collect();
    files.sort();
    Ok(files)
}

fn read_records(dir: &Path) -> Result<Vec<AlgRecord>, CatalogError> {
    let mut out = Vec::new();
    for path in alg_files(dir)? {
        let src = read(&path)?;
        out.extend(parse_alg_file(&src).map_err(|source| CatalogError::Load {
            path: path.clone(),
            source,
        })?);
    }
    Ok(out)
}

/// One classification row.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub record: AlgRecord,
    pub declared_orbit: usize,
    pub decomposition: String,
    pub even_part: String,
}

impl CatalogEntry {
    fn from_record(record: AlgRecord) -> Result<Self, CatalogError> {
        let meta = |k: &str| {
            record.meta.get(k).cloned().ok_or_else(|| {
                CatalogError::Format(format!("`{}` lacks the `{k}` key", record.name))
            })
        };
        let declared_orbit = meta("orbit")?
            .parse()
            .map_err(|_| CatalogError::Format(format!("`{}` has a bad orbit", record.name)))?;
        Ok(CatalogEntry {
            declared_orbit,
            decomposition: meta("decomposition")?,
            even_part: meta("even_part")?,
            record,
        })
    }

    pub fn name(&self) -> &str {
        &self.record.name
    }

    pub fn kind(&self) -> (usize, usize) {
        (self.record.m(), self.record.n())
    }

    pub fn is_family(&self) -> bool {
        self.record.is_family()
    }

    /// Loads the algebra without running the identity check.
    pub fn instantiate(
        &self,
        param: Option<&Rational>,
    ) -> Result<SuperAlgebra<Rational>, CatalogError> {
        self.record.instantiate(param).map_err(|e| match e {
            LoadError::MissingParameter(n) => CatalogError::MissingParameter(n),
            LoadError::UnexpectedParameter(n) => CatalogError::UnexpectedParameter(n),
            source => CatalogError::Load {
                path: PathBuf::from(self.name()),
                source,
            },
        })
    }
}

/// Published component data of one type.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Components {
    pub dimension: usize,
    pub count: usize,
    pub rigid: Vec<String>,
    pub families: Vec<String>,
}

impl Components {
    pub fn parse(src: &str) -> Result<Self, CatalogError> {
        let mut c = Components::default();
        for raw in src.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || CatalogError::Format(format!("components: `{line}`"));
            if let Some(rest) = line.strip_prefix("rigid:") {
                c.rigid.extend(rest.split_whitespace().map(str::to_string));
            } else if let Some(rest) = line.strip_prefix("family:") {
                c.families
                    .extend(rest.split_whitespace().map(str::to_string));
            } else {
                let (k, v) = line.split_once('=').ok_or_else(bad)?;
                let v: usize = v.trim().parse().map_err(|_| bad())?;
                match k.trim() {
                    "dimension" => c.dimension = v,
                    "count" => c.count = v,
                    _ => return Err(bad()),
                }
            }
        }
        Ok(c)
    }

    pub fn representatives(&self) -> impl Iterator<Item = &str> {
        self.rigid.iter().chain(&self.families).map(String::as_str)
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    root: PathBuf,
    entries: Vec<CatalogEntry>,
    index: HashMap<String, usize>,
    lowdim: LowDim,
    components: BTreeMap<(usize, usize), Components>,
    errata: Errata,
}

impl Catalog {
    pub fn load_default() -> Result<Self, CatalogError> {
        Self::load(&default_data_root())
    }

    pub fn load(root: &Path) -> Result<Self, CatalogError> {
        let cat = root.join("catalog");
        let mut entries = Vec::new();
        let mut index = HashMap::new();
        let mut components = BTreeMap::new();
        for (m, n) in TYPES {
            let dir = cat.join(type_dir(m, n));
            for rec in read_records(&dir)? {
                if (rec.m(), rec.n()) != (m, n) {
                    return Err(CatalogError::Format(format!(
                        "`{}` is filed under type ({m},{n})",
                        rec.name
                    )));
                }
                if index.insert(rec.name.clone(), entries.len()).is_some() {
                    return Err(CatalogError::DuplicateName(rec.name));
                }
                entries.push(CatalogEntry::from_record(rec)?);
            }
            components.insert(
                (m, n),
                Components::parse(&read(&dir.join("components.txt"))?)?,
            );
        }
        let mut lowdim = LowDim::default();
        for rec in read_records(&cat.join("lowdim"))? {
            let alg = rec
                .instantiate::<Rational>(None)
                .map_err(|source| CatalogError::Load {
                    path: cat.join("lowdim"),
                    source,
                })?;
            let unresolved = rec.meta.get("status").is_some_and(|s| s == "unresolved");
            if lowdim
                .algebras
                .insert(rec.name.clone(), LowDimEntry { alg, unresolved })
                .is_some()
            {
                return Err(CatalogError::DuplicateName(rec.name));
            }
        }
        for d in 1..=3 {
            let g = cat.join("graphs");
            lowdim.graphs.push(ReferenceGraph::parse_edges(&read(
                &g.join(format!("dim{d}.edges")),
            )?)?);
        }
        let errata_path = root.join("errata.txt");
        let errata = if errata_path.exists() {
            Errata::parse(&read(&errata_path)?)
        } else {
            Errata::default()
        };
        Ok(Catalog {
            root: root.to_path_buf(),
            entries,
            index,
            lowdim,
            components,
            errata,
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entries_of_type(&self, m: usize, n: usize) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.kind() == (m, n))
    }

    pub fn entry(&self, name: &str) -> Result<&CatalogEntry, CatalogError> {
        self.index
            .get(name)
            .map(|&i| &self.entries[i])
            .ok_or_else(|| CatalogError::UnknownName(name.to_string()))
    }

    pub fn lowdim(&self) -> &LowDim {
        &self.lowdim
    }

    pub fn errata(&self) -> &Errata {
        &self.errata
    }

    pub fn components(&self, m: usize, n: usize) -> Result<&Components, CatalogError> {
        self.components
            .get(&(m, n))
            .ok_or(CatalogError::UnknownType(m, n))
    }

    /// A loaded and identity-checked algebra.
    pub fn lookup(
        &self,
        name: &str,
        param: Option<&Rational>,
    ) -> Result<SuperAlgebra<Rational>, CatalogError> {
        let alg = self.entry(name)?.instantiate(param)?;
        let report = alg.check_super_jordan();
        match report.failure {
            None => Ok(alg),
            Some(f) => Err(CatalogError::IdentityFailure {
                name: name.to_string(),
                detail: f.to_string(),
            }),
        }
    }

    /// Looks up `name` or `name^value` with a rational value.
    pub fn lookup_spec(&self, spec: &str) -> Result<SuperAlgebra<Rational>, CatalogError> {
        match spec.split_once('^') {
            Some((name, v)) => {
                let q = Expr::parse(v)
                    .and_then(|e| e.const_rational())
                    .map_err(|_| CatalogError::Format(format!("bad parameter `{}`", v.trim())))?;
                self.lookup(name.trim(), Some(&q))
            }
            None => self.lookup(spec.trim(), None),
        }
    }

    /// Declared even-part label checked against the reference graphs.
    pub fn even_label(&self, name: &str) -> Option<&str> {
        let e = self.entry(name).ok()?;
        self.lowdim
            .resolves(&e.even_part)
            .then_some(e.even_part.as_str())
    }

    /// Identity and orbit checks for every entry. Families are checked at
    /// each of `params`.
    pub fn verify(&self, params: &[Rational]) -> CatalogReport {
        let jobs: Vec<(&CatalogEntry, Option<Rational>)> = self
            .entries
            .iter()
            .flat_map(|e| -> Vec<(&CatalogEntry, Option<Rational>)> {
                if e.is_family() {
                    params.iter().map(|p| (e, Some(p.clone()))).collect()
                } else {
                    vec![(e, None)]
                }
            })
            .collect();
        let checks = jobs
            .par_iter()
            .map(|(e, p)| EntryCheck::run(e, p.as_ref()))
            .collect();
        CatalogReport { checks }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryCheck {
    pub name: String,
    pub param: Option<Rational>,
    /// `None` when the identity holds, otherwise the first failure.
    pub identity_failure: Option<String>,
    pub computed_orbit: Option<usize>,
    pub declared_orbit: usize,
}

impl EntryCheck {
    fn run(e: &CatalogEntry, p: Option<&Rational>) -> Self {
        let mut out = EntryCheck {
            name: e.name().to_string(),
            param: p.cloned(),
            identity_failure: None,
            computed_orbit: None,
            declared_orbit: e.declared_orbit,
        };
        match e.instantiate(p) {
            Ok(alg) => {
                out.identity_failure = alg.check_super_jordan().failure.map(|f| f.to_string());
                out.computed_orbit = Some(orbit_dimension(&alg));
            }
            Err(err) => out.identity_failure = Some(err.to_string()),
        }
        out
    }

    /// `Jc16@2` for family members, the plain name otherwise.
    pub fn id(&self) -> String {
        match &self.param {
            Some(p) => format!("{}@{}", self.name, p),
            None => self.name.clone(),
        }
    }

    pub fn identity_ok(&self) -> bool {
        self.identity_failure.is_none()
    }

    pub fn orbit_ok(&self) -> bool {
        self.computed_orbit == Some(self.declared_orbit)
    }
}

#[derive(Clone, Debug)]
pub struct CatalogReport {
    pub checks: Vec<EntryCheck>,
}

impl CatalogReport {
    pub fn identity_passes(&self) -> usize {
        self.checks.iter().filter(|c| c.identity_ok()).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &EntryCheck> {
        self.checks
            .iter()
            .filter(|c| !c.identity_ok() || !c.orbit_ok())
    }
}
