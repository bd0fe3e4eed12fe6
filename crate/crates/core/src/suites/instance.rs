//! Check instances: the named parts a check consumes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::matfun::{NormalMatrix, PsdMatrix};
use crate::posmap::KrausMap;
use crate::suites::gen::Profile;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Part {
    Matrix(ComplexMatrix),
    Matrices(Vec<ComplexMatrix>),
    Map(KrausMap),
    Scalar(f64),
    Vector(Vec<f64>),
}

impl Part {
    fn kind(&self) -> &'static str {
        match self {
            Part::Matrix(_) => "matrix",
            Part::Matrices(_) => "matrices",
            Part::Map(_) => "map",
            Part::Scalar(_) => "scalar",
            Part::Vector(_) => "vector",
        }
    }
}

/// How a part may move under search perturbations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    Psd,
    /// PSD with `lambda_min >= 1e-3 lambda_max`.
    PsdInvertible,
    Hermitian,
    Normal,
    /// `||Z|| <= 1`.
    Contraction,
    /// `Z*Z >= I`.
    Expansive,
    /// PSD with diagonal entries at most one.
    DiagBoundedPsd,
    SubUnitalMap,
    /// Any matrix or tuple of positive reals.
    Free,
    /// Not perturbed.
    Fixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub check_id: String,
    pub seed: u64,
    pub dim: usize,
    pub profile: Profile,
    pub parts: BTreeMap<String, Part>,
}

impl Instance {
    pub fn new(check_id: &str, seed: u64, dim: usize, profile: Profile) -> Self {
        Instance {
            check_id: check_id.to_string(),
            seed,
            dim,
            profile,
            parts: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, part: Part) -> Self {
        self.parts.insert(name.to_string(), part);
        self
    }

    pub fn set(&mut self, name: &str, part: Part) {
        self.parts.insert(name.to_string(), part);
    }

    fn get(&self, name: &str) -> Result<&Part> {
        self.parts
            .get(name)
            .ok_or_else(|| Error::SignatureMismatch(format!("{}: missing part `{name}`", self.check_id)))
    }

    fn wrong(&self, name: &str, want: &str, got: &Part) -> Error {
        Error::SignatureMismatch(format!(
            "{}: part `{name}` should be a {want}, found a {}",
            self.check_id,
            got.kind()
        ))
    }

    pub fn matrix(&self, name: &str) -> Result<&ComplexMatrix> {
        match self.get(name)? {
            Part::Matrix(m) => Ok(m),
            other => Err(self.wrong(name, "matrix", other)),
        }
    }

    /// A square matrix of the instance dimension.
    pub fn square(&self, name: &str) -> Result<&ComplexMatrix> {
        let m = self.matrix(name)?;
        if m.shape() != (self.dim, self.dim) {
            return Err(Error::SignatureMismatch(format!(
                "{}: part `{name}` is {}x{}, expected {}x{}",
                self.check_id,
                m.rows(),
                m.cols(),
                self.dim,
                self.dim
            )));
        }
        Ok(m)
    }

    pub fn psd(&self, name: &str) -> Result<PsdMatrix> {
        PsdMatrix::new(self.square(name)?)
    }

    pub fn hermitian(&self, name: &str) -> Result<ComplexMatrix> {
        let m = self.square(name)?;
        if !m.is_hermitian(1e-10) {
            return Err(Error::NotHermitian {
                asymmetry: m.hermitian_defect(),
            });
        }
        Ok(m.hermitian_part())
    }

    pub fn normal(&self, name: &str) -> Result<NormalMatrix> {
        NormalMatrix::new(self.square(name)?)
    }

    pub fn matrices(&self, name: &str) -> Result<&[ComplexMatrix]> {
        match self.get(name)? {
            Part::Matrices(m) => Ok(m),
            other => Err(self.wrong(name, "list of matrices", other)),
        }
    }

    pub fn map(&self, name: &str) -> Result<&KrausMap> {
        match self.get(name)? {
            Part::Map(m) => Ok(m),
            other => Err(self.wrong(name, "Kraus map", other)),
        }
    }

    pub fn scalar(&self, name: &str) -> Result<f64> {
        match self.get(name)? {
            Part::Scalar(x) => Ok(*x),
            other => Err(self.wrong(name, "scalar", other)),
        }
    }

    pub fn vector(&self, name: &str) -> Result<&[f64]> {
        match self.get(name)? {
            Part::Vector(v) => Ok(v),
            other => Err(self.wrong(name, "vector", other)),
        }
    }

    /// Exponent `p >= 1` (or any positive value where the check allows it).
    pub fn exponent(&self, name: &str) -> Result<f64> {
        let p = self.scalar(name)?;
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::BadDomain(format!("{}: {name} = {p}", self.check_id)));
        }
        Ok(p)
    }
}
