//! Derived and lower central series, and the solvability predicates built on them.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::subspace::{Subspace, SubspaceJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    Derived,
    LowerCentral,
}

/// Terms `L_0 = S, L_1, ..` of a series, stopped at the first zero term or the
/// first term whose dimension equals its predecessor's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    /// The series reached a nonzero term equal to its successor.
    pub stabilized: bool,
    /// Index of the first zero term.
    pub vanishing_index: Option<usize>,
}

impl SeriesReport {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn vanishes(&self) -> bool {
        self.vanishing_index.is_some()
    }

    pub fn last(&self) -> &Subspace {
        self.terms.last().expect("series has at least one term")
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            kind: self.kind,
            dims: self.dims(),
            terms: self.terms.iter().map(Subspace::to_json).collect(),
            stabilized: self.stabilized,
            vanishing_index: self.vanishing_index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub kind: SeriesKind,
    pub dims: Vec<usize>,
    pub terms: Vec<SubspaceJson>,
    pub stabilized: bool,
    pub vanishing_index: Option<usize>,
}

fn run_series(s: &Subspace, kind: SeriesKind) -> SeriesReport {
    let cap = s.params().witt_dim();
    let mut terms = vec![s.clone()];
    loop {
        let last = terms.last().expect("nonempty");
        if last.is_zero() {
            let idx = terms.len() - 1;
            return SeriesReport { kind, terms, stabilized: false, vanishing_index: Some(idx) };
        }
        if terms.len() > cap + 1 {
            return SeriesReport { kind, terms, stabilized: true, vanishing_index: None };
        }
        let next = match kind {
            SeriesKind::Derived => last.bracket_space(last),
            SeriesKind::LowerCentral => s.bracket_space(last),
        }
        .expect("same params");
        if next.dim() == last.dim() {
            return SeriesReport { kind, terms, stabilized: true, vanishing_index: None };
        }
        terms.push(next);
    }
}

/// `S^(0) = S`, `S^(k+1) = [S^(k), S^(k)]`.
pub fn derived_series(s: &Subspace) -> Result<SeriesReport> {
    s.require_subalgebra()?;
    Ok(run_series(s, SeriesKind::Derived))
}

/// `S^[0] = S`, `S^[k+1] = [S, S^[k]]`.
pub fn lower_central_series(s: &Subspace) -> Result<SeriesReport> {
    s.require_subalgebra()?;
    Ok(run_series(s, SeriesKind::LowerCentral))
}

pub fn is_solvable(s: &Subspace) -> Result<bool> {
    Ok(derived_series(s)?.vanishes())
}

pub fn is_nilpotent(s: &Subspace) -> Result<bool> {
    Ok(lower_central_series(s)?.vanishes())
}

/// Lower central series of the derived subalgebra `[S, S]`.
pub fn derived_lower_central(s: &Subspace) -> Result<SeriesReport> {
    s.require_subalgebra()?;
    let derived = s.bracket_space(s)?;
    Ok(run_series(&derived, SeriesKind::LowerCentral))
}

/// `[S, S]` is nilpotent.
pub fn is_completely_solvable(s: &Subspace) -> Result<bool> {
    Ok(derived_lower_central(s)?.vanishes())
}
