//! Named determinant strategies.
//!
//! Every method answers the same question, "what is the determinant of the
//! `kind` matrix built on these nodes", and is looked up by name in a
//! [`MethodRegistry`]. `closed` uses the product formulas; `laplace` and
//! `bareiss` build the matrix and run an oracle.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::calculus::{jacobian_det_closed, jacobian_matrix, nodal_basis, wronskian_closed, wronskian_matrix};
use crate::exactdet::{det_bareiss, det_laplace_with_limit, DetError, LAPLACE_DEFAULT_MAX};
use crate::matrix::ExactMatrix;
use crate::rational::Rational;
use crate::structmat::{build_vandermonde, build_vieta, vandermonde_det_closed, vieta_det_closed};
use crate::sympoly::NodeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixKind {
    Vieta,
    Vandermonde,
    /// Wronskian of the nodal polynomials evaluated at `at`.
    Wronskian { at: Rational },
    Jacobian,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown matrix kind {0:?} (expected vieta, vandermonde, wronskian or jacobian)")]
pub struct UnknownKind(pub String);

impl MatrixKind {
    pub const NAMES: [&'static str; 4] = ["vieta", "vandermonde", "wronskian", "jacobian"];

    pub fn name(&self) -> &'static str {
        match self {
            MatrixKind::Vieta => "vieta",
            MatrixKind::Vandermonde => "vandermonde",
            MatrixKind::Wronskian { .. } => "wronskian",
            MatrixKind::Jacobian => "jacobian",
        }
    }

    pub fn build(&self, ns: &NodeSet) -> ExactMatrix {
        match self {
            MatrixKind::Vieta => build_vieta(ns),
            MatrixKind::Vandermonde => build_vandermonde(ns),
            MatrixKind::Wronskian { at } => wronskian_matrix(&nodal_basis(ns), at),
            MatrixKind::Jacobian => jacobian_matrix(ns),
        }
    }

    pub fn closed_form(&self, ns: &NodeSet) -> Rational {
        match self {
            MatrixKind::Vieta => vieta_det_closed(ns),
            MatrixKind::Vandermonde => vandermonde_det_closed(ns),
            MatrixKind::Wronskian { .. } => wronskian_closed(ns),
            MatrixKind::Jacobian => jacobian_det_closed(ns),
        }
    }
}

impl FromStr for MatrixKind {
    type Err = UnknownKind;

    /// Wronskian kinds parse with `at = 0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "vieta" => Ok(MatrixKind::Vieta),
            "vandermonde" => Ok(MatrixKind::Vandermonde),
            "wronskian" => Ok(MatrixKind::Wronskian { at: Rational::zero() }),
            "jacobian" => Ok(MatrixKind::Jacobian),
            other => Err(UnknownKind(other.to_string())),
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub trait DeterminantMethod: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Largest `n` this method will take, if bounded.
    fn max_size(&self) -> Option<usize> {
        None
    }

    fn determinant(&self, kind: &MatrixKind, ns: &NodeSet) -> Result<Rational, DetError>;
}

pub struct ClosedForm;

impl DeterminantMethod for ClosedForm {
    fn name(&self) -> &'static str {
        "closed"
    }

    fn description(&self) -> &'static str {
        "product formula over node differences"
    }

    fn determinant(&self, kind: &MatrixKind, ns: &NodeSet) -> Result<Rational, DetError> {
        Ok(kind.closed_form(ns))
    }
}

pub struct Laplace {
    pub limit: usize,
}

impl Default for Laplace {
    fn default() -> Self {
        Laplace { limit: LAPLACE_DEFAULT_MAX }
    }
}

impl DeterminantMethod for Laplace {
    fn name(&self) -> &'static str {
        "laplace"
    }

    fn description(&self) -> &'static str {
        "cofactor expansion along the first row"
    }

    fn max_size(&self) -> Option<usize> {
        Some(self.limit)
    }

    fn determinant(&self, kind: &MatrixKind, ns: &NodeSet) -> Result<Rational, DetError> {
        if ns.len() > self.limit {
            return Err(DetError::TooLarge { n: ns.len(), limit: self.limit });
        }
        det_laplace_with_limit(&kind.build(ns), self.limit)
    }
}

pub struct Bareiss;

impl DeterminantMethod for Bareiss {
    fn name(&self) -> &'static str {
        "bareiss"
    }

    fn description(&self) -> &'static str {
        "fraction-free elimination"
    }

    fn determinant(&self, kind: &MatrixKind, ns: &NodeSet) -> Result<Rational, DetError> {
        det_bareiss(&kind.build(ns))
    }
}

pub struct MethodRegistry {
    methods: Vec<Box<dyn DeterminantMethod>>,
}

impl MethodRegistry {
    pub fn empty() -> Self {
        MethodRegistry { methods: Vec::new() }
    }

    /// `closed`, `laplace` (default guard) and `bareiss`.
    pub fn builtin() -> Self {
        Self::with_laplace_limit(LAPLACE_DEFAULT_MAX)
    }

    pub fn with_laplace_limit(limit: usize) -> Self {
        let mut registry = MethodRegistry::empty();
        registry.register(Box::new(ClosedForm));
        registry.register(Box::new(Laplace { limit }));
        registry.register(Box::new(Bareiss));
        registry
    }

    /// Adds a method, replacing any existing one with the same name.
    pub fn register(&mut self, method: Box<dyn DeterminantMethod>) {
        self.methods.retain(|m| m.name() != method.name());
        self.methods.push(method);
    }

    pub fn get(&self, name: &str) -> Option<&dyn DeterminantMethod> {
        self.methods.iter().find(|m| m.name() == name).map(|m| m.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn DeterminantMethod> {
        self.methods.iter().map(|m| m.as_ref())
    }
}

impl Default for MethodRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}
