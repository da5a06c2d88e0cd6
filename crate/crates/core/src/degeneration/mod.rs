//! Basis changes, parametric degeneration witnesses and closed-set
//! certificates.
//!
//! A witness `λ → μ` is a basis `E_1(t), …, E_n(t)` of the source whose
//! structure constants tend to those of the target as `t → 0`. Fractional
//! powers of `t` are handled by substituting `t = s^N` and working with
//! rational functions in `s`.
//!
//! A closed set `ℛ` is a list of conditions on structure constants that
//! holds for the source in some basis and is stable under upper-triangular
//! basis changes, while failing for the target in every basis.

mod action;
mod closedset;
mod witness;

use std::path::PathBuf;

use thiserror::Error;

use crate::catalog::CatalogError;
use crate::exactmath::ExprError;
use crate::superalg::LoadError;

pub use action::{
    apply_basis_change, graded_basis_change, preserves_parity, transform_table,
    transform_with_inverse, ActionMode,
};
pub use closedset::{
    check_certificate, closed_set_eval, closed_set_failure, separation_count, separation_test,
    stability_count, CertificateReport, ClosedSet, Condition, Group, SeparationConfig,
    SeparationReport, Space, FAMILY_SAMPLES,
};
pub use witness::{
    parametric_constants, source_algebra, specialize, verify_degeneration, Mismatch, Parametric,
    Verdict, VerdictStatus, Witness, WitnessMode,
};

#[derive(Debug, Error)]
pub enum DegenerationError {
    #[error("basis matrix is singular")]
    SingularMatrix,
    #[error("graded mode requested but the basis mixes parities")]
    NonGradedWitness,
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("source has type ({0},{1}) but target has type ({2},{3})")]
    TypeMismatch(usize, usize, usize, usize),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("expression error: {0}")]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl PartialEq for DegenerationError {
    fn eq(&self, other: &Self) -> bool {
        use DegenerationError::*;
        match (self, other) {
            (SingularMatrix, SingularMatrix) | (NonGradedWitness, NonGradedWitness) => true,
            (BasisMismatch(a), BasisMismatch(b)) => a == b,
            (TypeMismatch(a, b, c, d), TypeMismatch(e, f, g, h)) => (a, b, c, d) == (e, f, g, h),
            (Format { line: a, msg: b }, Format { line: c, msg: d }) => a == c && b == d,
            (Expr(a), Expr(b)) => a == b,
            _ => false,
        }
    }
}

fn read_file(path: &std::path::Path) -> Result<String, DegenerationError> {
    std::fs::read_to_string(path).map_err(|source| DegenerationError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn file_stem(path: &std::path::Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Lists files with extension `ext` in `dir`, sorted by name.
pub fn files_with_extension(
    dir: &std::path::Path,
    ext: &str,
) -> Result<Vec<PathBuf>, DegenerationError> {
    let rd = std::fs::read_dir(dir).map_err(|source| DegenerationError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut out: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == ext))
        .collect();
    out.sort();
    Ok(out)
}
